//! Construction of the normal tree-like refutation `⊢ α_G → ⊥` for a
//! non-Hamiltonian graph.
//!
//! The proof is a case tree: position `j` is split by an `∨`-elimination
//! over the `j`-th conjunct of `C`, so that each leaf knows a full vertex
//! sequence `p` (as discharged assumptions `X_{i,p[i]}`). Every such `p`
//! violates a Hamiltonian-path condition, and the leaf derives `⊥` from the
//! matching conjunct of `B` (repeated vertex) or `E` (missing edge).

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::encoding::{encode_alpha, AlphaParts, Component, Side};
use crate::formula::Formula;
use crate::graph::{find_violation, is_hamiltonian, Graph, NodeSeq, Violation};
use crate::kernel::{check_tree, KernelError, Metrics, ProofTree, Rule};

/// Largest `n` for which [`Mode::default_for`] picks faithful mode.
pub const FAITHFUL_DEFAULT_MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Split every position; exactly `n^n` leaves.
    Faithful,
    /// Stop splitting once the determined prefix already has a violation.
    Pruned,
}

impl Mode {
    pub fn default_for(n: usize) -> Mode {
        if n <= FAITHFUL_DEFAULT_MAX_N {
            Mode::Faithful
        } else {
            Mode::Pruned
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("sequence {0} is a Hamiltonian path")]
    NoViolation(NodeSeq),
    #[error("graph is Hamiltonian, witness {witness}")]
    GraphIsHamiltonian { witness: NodeSeq },
    #[error("∨-elimination premise is not a right-nested disjunction of arity {arity}")]
    ShapeMismatch { arity: usize },
    #[error("expected the open assumptions to be exactly alpha, found {0:?}")]
    WrongOpenSet(Vec<String>),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Extracts conjuncts of `α_G` by `∧`-elimination chains. Chains are cached
/// and physically shared between the leaves that use them.
pub struct Extractor<'a> {
    parts: &'a AlphaParts,
    cache: HashMap<Component, ProofTree>,
}

impl<'a> Extractor<'a> {
    pub fn new(parts: &'a AlphaParts) -> Self {
        Extractor { parts, cache: HashMap::new() }
    }

    pub fn extract(&mut self, c: Component) -> ProofTree {
        if let Some(t) = self.cache.get(&c) {
            return t.clone();
        }
        let path = self.parts.path(&c).unwrap_or_else(|| panic!("{c:?} is not a conjunct of alpha"));
        let mut t = ProofTree::hyp(self.parts.alpha().clone());
        for side in path {
            t = ProofTree::and_elim(t, *side == Side::Left);
        }
        self.cache.insert(c, t.clone());
        t
    }
}

/// The leaf refutation for a (possibly partial) vertex sequence: `⊥` from
/// two `X` assumptions and the conjunct of `α_G` that forbids them together.
pub fn build_leaf(p: &[usize], g: &Graph, parts: &AlphaParts) -> Result<ProofTree, BuildError> {
    build_leaf_with(p, g, &mut Extractor::new(parts))
}

fn build_leaf_with(p: &[usize], g: &Graph, ex: &mut Extractor<'_>) -> Result<ProofTree, BuildError> {
    let (component, first, second) = match find_violation(p, g) {
        None => return Err(BuildError::NoViolation(NodeSeq(p.to_vec()))),
        Some(Violation::Repeat { i, j, v }) => (Component::B { v, i, j }, Formula::x(i, v), Formula::x(j, v)),
        Some(Violation::MissingEdge { i, v, w }) => {
            (Component::E { v, w, i }, Formula::x(i, v), Formula::x(i + 1, w))
        }
    };
    let forbid = ex.extract(component);
    let step = ProofTree::imp_elim(forbid, ProofTree::hyp(first));
    Ok(ProofTree::imp_elim(step, ProofTree::hyp(second)))
}

/// The case tower: `⊥` with `α_G` as the only open assumption, using n-ary
/// `∨`-eliminations. Returns the proof and its number of leaves.
pub fn build_case_tower(g: &Graph, parts: &AlphaParts, mode: Mode) -> Result<(ProofTree, usize), BuildError> {
    if let Some(witness) = is_hamiltonian(g) {
        return Err(BuildError::GraphIsHamiltonian { witness });
    }
    let mut ex = Extractor::new(parts);
    let mut leaves = 0;
    let mut prefix = Vec::with_capacity(g.n());
    let proof = tower(g, mode, &mut ex, &mut prefix, &mut leaves)?;
    Ok((proof, leaves))
}

fn tower(
    g: &Graph,
    mode: Mode,
    ex: &mut Extractor<'_>,
    prefix: &mut Vec<usize>,
    leaves: &mut usize,
) -> Result<ProofTree, BuildError> {
    let n = g.n();
    let done = prefix.len() == n || (mode == Mode::Pruned && find_violation(prefix, g).is_some());
    if done {
        *leaves += 1;
        return build_leaf_with(prefix, g, ex);
    }
    let step = prefix.len() + 1;
    let major = ex.extract(Component::C { i: step });
    let mut cases = Vec::with_capacity(n);
    for v in 1..=n {
        prefix.push(v);
        cases.push(tower(g, mode, ex, prefix, leaves)?);
        prefix.pop();
    }
    Ok(ProofTree::or_elim(major, cases))
}

/// Replaces every n-ary `∨`-elimination (`n > 2`) by a chain of binary ones
/// along the right spine of its disjunction.
pub fn unfold_nary(p: &ProofTree) -> Result<ProofTree, BuildError> {
    let premises = p.premises().iter().map(unfold_nary).collect::<Result<Vec<_>, _>>()?;
    match p.rule() {
        Rule::OrElim { arity } if arity > 2 => {
            let disjuncts = premises[0]
                .conclusion()
                .split_or_chain(arity)
                .ok_or(BuildError::ShapeMismatch { arity })?;
            let mut it = premises.into_iter();
            let major = it.next().expect("major premise");
            Ok(binary_chain(major, &disjuncts, it.collect()))
        }
        _ => {
            if premises.iter().zip(p.premises()).all(|(a, b)| a.ptr_eq(b)) {
                Ok(p.clone())
            } else {
                Ok(ProofTree::new(p.conclusion().clone(), p.rule(), premises, p.discharge().to_vec()))
            }
        }
    }
}

fn binary_chain(major: ProofTree, disjuncts: &[Formula], mut cases: Vec<ProofTree>) -> ProofTree {
    if cases.len() == 2 {
        return ProofTree::or_elim(major, cases);
    }
    let rest = cases.split_off(1);
    let tail = Formula::or_chain(&disjuncts[1..]);
    let inner = binary_chain(ProofTree::hyp(tail), &disjuncts[1..], rest);
    cases.push(inner);
    ProofTree::or_elim(major, cases)
}

/// Closes `α_G` with a final `→`-introduction.
pub fn finalize_negation(p: &ProofTree, parts: &AlphaParts) -> Result<ProofTree, BuildError> {
    let m = check_tree(p)?;
    let want: BTreeSet<Formula> = BTreeSet::from([parts.alpha().clone()]);
    if m.open_assumptions != want || !p.conclusion().is_bot() {
        return Err(BuildError::WrongOpenSet(m.open_assumptions.iter().map(|f| f.to_string()).collect()));
    }
    Ok(ProofTree::imp_intro(parts.alpha().clone(), p.clone()))
}

/// Every intermediate stage of one refutation.
#[derive(Clone, Debug)]
pub struct Refutation {
    pub parts: AlphaParts,
    /// Case tower with n-ary eliminations.
    pub tower: ProofTree,
    /// Tower after unfolding into binary eliminations.
    pub unfolded: ProofTree,
    /// Closed proof of `α_G → ⊥`.
    pub proof: ProofTree,
    pub leaf_count: usize,
    pub mode: Mode,
}

pub fn build_stages(g: &Graph, mode: Mode) -> Result<Refutation, BuildError> {
    let parts = encode_alpha(g);
    let (tower, leaf_count) = build_case_tower(g, &parts, mode)?;
    let unfolded = unfold_nary(&tower)?;
    let proof = finalize_negation(&unfolded, &parts)?;
    Ok(Refutation { parts, tower, unfolded, proof, leaf_count, mode })
}

#[derive(Clone, Debug)]
pub struct BuildReport {
    pub proof: ProofTree,
    pub leaf_count: usize,
    pub faithful: bool,
    pub metrics: Metrics,
}

#[derive(Serialize)]
struct ReportJson {
    leaf_count: usize,
    faithful: bool,
    height: usize,
    weight: u64,
    distinct_formula_weight: u64,
}

impl BuildReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportJson {
            leaf_count: self.leaf_count,
            faithful: self.faithful,
            height: self.metrics.height,
            weight: self.metrics.weight,
            distinct_formula_weight: self.metrics.distinct_formula_weight,
        })
        .expect("plain struct")
    }
}

/// Full pipeline encode → tower → unfold → finalize, in the default mode for `n`.
pub fn build_refutation(g: &Graph) -> Result<BuildReport, BuildError> {
    build_refutation_with(g, Mode::default_for(g.n()))
}

pub fn build_refutation_with(g: &Graph, mode: Mode) -> Result<BuildReport, BuildError> {
    let r = build_stages(g, mode)?;
    let metrics = check_tree(&r.proof)?;
    Ok(BuildReport { proof: r.proof, leaf_count: r.leaf_count, faithful: mode == Mode::Faithful, metrics })
}
