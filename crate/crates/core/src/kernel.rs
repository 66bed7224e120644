//! Trusted checker for tree-like natural deduction over `{∧, ∨, →, ⊥}`.
//!
//! There is no ex falso rule. Assumptions are discharged by formula: an
//! `→`-introduction concluding `φ → ψ` closes every open occurrence of `φ`
//! above it, and an `∨`-elimination case closes its own disjunct.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Hyp,
    ImpIntro,
    /// Premises: major `β → γ`, minor `β`.
    ImpElim,
    AndElimL,
    AndElimR,
    /// n-ary `∨`-elimination over a right-nested disjunction: the major
    /// premise followed by `arity` case premises.
    OrElim { arity: usize },
    AndIntro,
    OrIntroL,
    OrIntroR,
}

impl Rule {
    pub fn premise_count(&self) -> usize {
        match self {
            Rule::Hyp => 0,
            Rule::ImpIntro | Rule::AndElimL | Rule::AndElimR | Rule::OrIntroL | Rule::OrIntroR => 1,
            Rule::ImpElim | Rule::AndIntro => 2,
            Rule::OrElim { arity } => arity + 1,
        }
    }

    pub fn is_intro(&self) -> bool {
        matches!(self, Rule::ImpIntro | Rule::AndIntro | Rule::OrIntroL | Rule::OrIntroR)
    }

    pub fn name(&self) -> String {
        match self {
            Rule::Hyp => "Hyp".into(),
            Rule::ImpIntro => "ImpIntro".into(),
            Rule::ImpElim => "ImpElim".into(),
            Rule::AndElimL => "AndElimL".into(),
            Rule::AndElimR => "AndElimR".into(),
            Rule::OrElim { arity } => format!("OrElimN:{arity}"),
            Rule::AndIntro => "AndIntro".into(),
            Rule::OrIntroL => "OrIntroL".into(),
            Rule::OrIntroR => "OrIntroR".into(),
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Some(match s {
            "Hyp" => Rule::Hyp,
            "ImpIntro" => Rule::ImpIntro,
            "ImpElim" => Rule::ImpElim,
            "AndElimL" => Rule::AndElimL,
            "AndElimR" => Rule::AndElimR,
            "AndIntro" => Rule::AndIntro,
            "OrIntroL" => Rule::OrIntroL,
            "OrIntroR" => Rule::OrIntroR,
            _ => {
                let arity = s.strip_prefix("OrElimN:")?.parse().ok()?;
                Rule::OrElim { arity }
            }
        })
    }
}

#[derive(Debug)]
pub struct ProofNode {
    pub conclusion: Formula,
    pub rule: Rule,
    pub premises: Vec<ProofTree>,
    /// Assumptions closed at this node: `[φ]` for `ImpIntro`, the disjuncts
    /// `[δ₁, …, δ_k]` for `OrElim`, empty otherwise.
    pub discharge: Vec<Formula>,
}

/// Immutable tree-like derivation. Subtrees may be physically shared; all
/// metrics count occurrences, i.e. the logical tree.
#[derive(Clone)]
pub struct ProofTree(Arc<ProofNode>);

impl ProofTree {
    /// Raw constructor; nothing is checked.
    pub fn new(conclusion: Formula, rule: Rule, premises: Vec<ProofTree>, discharge: Vec<Formula>) -> ProofTree {
        ProofTree(Arc::new(ProofNode { conclusion, rule, premises, discharge }))
    }

    pub fn hyp(f: Formula) -> ProofTree {
        ProofTree::new(f, Rule::Hyp, vec![], vec![])
    }

    /// `→I` closing `assumption` over `body`.
    pub fn imp_intro(assumption: Formula, body: ProofTree) -> ProofTree {
        let concl = Formula::imp(assumption.clone(), body.conclusion().clone());
        ProofTree::new(concl, Rule::ImpIntro, vec![body], vec![assumption])
    }

    /// `→E`. Panics unless `major` concludes an implication.
    pub fn imp_elim(major: ProofTree, minor: ProofTree) -> ProofTree {
        let (_, b) = major.conclusion().as_imp().expect("major premise of →E must be an implication");
        ProofTree::new(b.clone(), Rule::ImpElim, vec![major, minor], vec![])
    }

    /// `∧E` keeping the left or right conjunct. Panics unless `p` concludes a conjunction.
    pub fn and_elim(p: ProofTree, left: bool) -> ProofTree {
        let (a, b) = p.conclusion().as_and().expect("premise of ∧E must be a conjunction");
        if left {
            ProofTree::new(a.clone(), Rule::AndElimL, vec![p], vec![])
        } else {
            ProofTree::new(b.clone(), Rule::AndElimR, vec![p], vec![])
        }
    }

    /// n-ary `∨E` with `cases.len()` cases over the right-nested major premise.
    /// Panics if the major premise does not split into that many disjuncts
    /// or if `cases` is empty.
    pub fn or_elim(major: ProofTree, cases: Vec<ProofTree>) -> ProofTree {
        let arity = cases.len();
        let disjuncts = major.conclusion().split_or_chain(arity).expect("major premise of ∨E must be a disjunction");
        let concl = cases[0].conclusion().clone();
        let mut premises = Vec::with_capacity(arity + 1);
        premises.push(major);
        premises.extend(cases);
        ProofTree::new(concl, Rule::OrElim { arity }, premises, disjuncts)
    }

    pub fn node(&self) -> &ProofNode {
        &self.0
    }

    pub fn conclusion(&self) -> &Formula {
        &self.0.conclusion
    }

    pub fn rule(&self) -> Rule {
        self.0.rule
    }

    pub fn premises(&self) -> &[ProofTree] {
        &self.0.premises
    }

    pub fn discharge(&self) -> &[Formula] {
        &self.0.discharge
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        1 + self.premises().iter().map(ProofTree::height).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises().iter().map(ProofTree::node_count).sum::<usize>()
    }

    /// Sum of conclusion weights over all node occurrences.
    pub fn weight(&self) -> u64 {
        self.conclusion().weight() + self.premises().iter().map(ProofTree::weight).sum::<u64>()
    }

    /// Calls `f` on every node occurrence in preorder.
    pub fn visit<F: FnMut(&ProofTree)>(&self, f: &mut F) {
        f(self);
        for p in self.premises() {
            p.visit(f);
        }
    }

    pub fn ptr_eq(&self, other: &ProofTree) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl fmt::Debug for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.conclusion(), self.rule().name())?;
        if !self.premises().is_empty() {
            f.debug_list().entries(self.premises()).finish()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub height: usize,
    pub weight: u64,
    pub distinct_formula_weight: u64,
    pub node_count: usize,
    pub open_assumptions: BTreeSet<Formula>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    /// `path` lists premise indices from the root down to the offending node.
    #[error("ill-formed node at {path:?}: {reason}")]
    IllFormed { path: Vec<usize>, reason: String },
}

fn ill(path: &[usize], reason: impl Into<String>) -> KernelError {
    KernelError::IllFormed { path: path.to_vec(), reason: reason.into() }
}

/// Checks one inference in isolation (premise conclusions only).
pub fn check_local(p: &ProofTree) -> Result<(), String> {
    let node = p.node();
    let concl = &node.conclusion;
    let prem: Vec<&Formula> = node.premises.iter().map(ProofTree::conclusion).collect();
    if prem.len() != node.rule.premise_count() {
        return Err(format!("{} expects {} premises, found {}", node.rule.name(), node.rule.premise_count(), prem.len()));
    }
    let expect_discharge = |want: &[Formula]| -> Result<(), String> {
        if node.discharge.as_slice() == want {
            Ok(())
        } else {
            Err(format!("discharge {:?} does not match {:?}", node.discharge, want))
        }
    };
    match node.rule {
        Rule::Hyp => expect_discharge(&[]),
        Rule::ImpIntro => {
            let (a, b) = concl.as_imp().ok_or("→I must conclude an implication")?;
            if b != prem[0] {
                return Err("→I premise is not the consequent".into());
            }
            expect_discharge(std::slice::from_ref(a))
        }
        Rule::ImpElim => {
            let (a, b) = prem[0].as_imp().ok_or("→E major premise is not an implication")?;
            if a != prem[1] {
                return Err("→E minor premise does not match the antecedent".into());
            }
            if b != concl {
                return Err("→E conclusion does not match the consequent".into());
            }
            expect_discharge(&[])
        }
        Rule::AndElimL | Rule::AndElimR => {
            let (a, b) = prem[0].as_and().ok_or("∧E premise is not a conjunction")?;
            let want = if node.rule == Rule::AndElimL { a } else { b };
            if want != concl {
                return Err("∧E conclusion does not match the conjunct".into());
            }
            expect_discharge(&[])
        }
        Rule::OrElim { arity } => {
            if arity < 2 {
                return Err("∨E arity must be at least 2".into());
            }
            let ds = prem[0].split_or_chain(arity).ok_or("∨E major premise is not a right-nested disjunction of that arity")?;
            if prem[1..].iter().any(|c| *c != concl) {
                return Err("∨E case does not conclude the node formula".into());
            }
            expect_discharge(&ds)
        }
        Rule::AndIntro => {
            if Formula::and(prem[0].clone(), prem[1].clone()) != *concl {
                return Err("∧I conclusion mismatch".into());
            }
            expect_discharge(&[])
        }
        Rule::OrIntroL | Rule::OrIntroR => {
            let (a, b) = concl.as_or().ok_or("∨I must conclude a disjunction")?;
            let want = if node.rule == Rule::OrIntroL { a } else { b };
            if want != prem[0] {
                return Err("∨I premise mismatch".into());
            }
            expect_discharge(&[])
        }
    }
}

struct Walk {
    distinct: HashSet<Formula>,
    weight: u64,
    nodes: usize,
}

fn check_rec(p: &ProofTree, path: &mut Vec<usize>, w: &mut Walk) -> Result<(HashSet<Formula>, usize), KernelError> {
    check_local(p).map_err(|r| ill(path, r))?;
    w.weight += p.conclusion().weight();
    w.nodes += 1;
    w.distinct.insert(p.conclusion().clone());
    let node = p.node();
    let mut open: HashSet<Formula> = HashSet::new();
    let mut height = 0;
    for (k, prem) in node.premises.iter().enumerate() {
        path.push(k);
        let (mut sub, h) = check_rec(prem, path, w)?;
        path.pop();
        height = height.max(h);
        match node.rule {
            Rule::ImpIntro => {
                sub.remove(&node.discharge[0]);
            }
            Rule::OrElim { .. } if k > 0 => {
                sub.remove(&node.discharge[k - 1]);
            }
            _ => {}
        }
        if open.len() < sub.len() {
            std::mem::swap(&mut open, &mut sub);
        }
        open.extend(sub);
    }
    if node.rule == Rule::Hyp {
        open.insert(node.conclusion.clone());
    }
    Ok((open, height + 1))
}

/// Verifies every inference and computes the metrics, including the set of
/// assumptions left open at the root.
pub fn check_tree(p: &ProofTree) -> Result<Metrics, KernelError> {
    let mut w = Walk { distinct: HashSet::new(), weight: 0, nodes: 0 };
    let (open, height) = check_rec(p, &mut Vec::new(), &mut w)?;
    Ok(Metrics {
        height,
        weight: w.weight,
        distinct_formula_weight: w.distinct.iter().map(Formula::weight).sum(),
        node_count: w.nodes,
        open_assumptions: open.into_iter().collect(),
    })
}

/// True iff no major premise of an elimination is the conclusion of an
/// introduction.
pub fn is_normal(p: &ProofTree) -> bool {
    let major_is_intro = match p.rule() {
        Rule::ImpElim | Rule::AndElimL | Rule::AndElimR | Rule::OrElim { .. } => {
            p.premises().first().is_some_and(|m| m.rule().is_intro())
        }
        _ => false,
    };
    !major_is_intro && p.premises().iter().all(is_normal)
}

/// True iff every formula in `p` is a subformula of the conclusion or of an
/// assumption (open or discharged).
pub fn subformula_ok(p: &ProofTree) -> bool {
    let mut allowed = HashSet::new();
    p.conclusion().collect_subformulas(&mut allowed);
    p.visit(&mut |q| {
        if q.rule() == Rule::Hyp {
            q.conclusion().collect_subformulas(&mut allowed);
        }
        for d in q.discharge() {
            d.collect_subformulas(&mut allowed);
        }
    });
    let mut ok = true;
    p.visit(&mut |q| ok &= allowed.contains(q.conclusion()));
    ok
}
