//! Seeded random inputs: graphs, formulas, valid proofs and single-node
//! corruptions of proofs. Everything here is reproducible from a `u64` seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::graph::Graph;
use crate::kernel::{ProofTree, Rule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each of the `n(n−1)` possible edges present independently with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are in range and distinct")
}

const ATOMS: usize = 3;

pub fn random_formula<R: Rng>(rng: &mut R, depth: u32, implicational: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return if !implicational && rng.gen_bool(0.1) { Formula::bot() } else { Formula::x(1, rng.gen_range(1..=ATOMS)) };
    }
    let a = random_formula(rng, depth - 1, implicational);
    let b = random_formula(rng, depth - 1, implicational);
    match if implicational { 0 } else { rng.gen_range(0..3) } {
        0 => Formula::imp(a, b),
        1 => Formula::and(a, b),
        _ => Formula::or(a, b),
    }
}

fn distinct_from<R: Rng>(rng: &mut R, f: &Formula, implicational: bool) -> Formula {
    loop {
        let g = random_formula(rng, 2, implicational);
        if g != *f {
            return g;
        }
    }
}

fn hyps(p: &ProofTree) -> Vec<Formula> {
    let mut out = Vec::new();
    p.visit(&mut |q| {
        if q.rule() == Rule::Hyp {
            out.push(q.conclusion().clone());
        }
    });
    out
}

/// A kernel-valid proof of bounded height, possibly with open assumptions
/// and possibly not normal. With `implicational` set only `Hyp`, `→I` and
/// `→E` occur and every formula is purely implicational. Conjunction and
/// disjunction rules always get two different sides, so that exchanging
/// left and right is a visible change.
pub fn random_proof<R: Rng>(rng: &mut R, depth: u32, implicational: bool) -> ProofTree {
    if depth == 0 || rng.gen_bool(0.15) {
        return ProofTree::hyp(random_formula(rng, 2, implicational));
    }
    let kinds: &[u8] = if implicational { &[0, 1] } else { &[0, 1, 2, 3, 4, 5] };
    match *kinds.choose(rng).expect("nonempty") {
        0 => {
            let body = random_proof(rng, depth - 1, implicational);
            let candidates = hyps(&body);
            let a = match candidates.choose(rng) {
                Some(h) if rng.gen_bool(0.8) => h.clone(),
                _ => random_formula(rng, 2, implicational),
            };
            ProofTree::imp_intro(a, body)
        }
        1 => {
            let minor = random_proof(rng, depth - 1, implicational);
            let beta = minor.conclusion().clone();
            let major = if rng.gen_bool(0.5) {
                ProofTree::imp_intro(beta, random_proof(rng, depth - 1, implicational))
            } else {
                ProofTree::hyp(Formula::imp(beta, random_formula(rng, 2, implicational)))
            };
            ProofTree::imp_elim(major, minor)
        }
        2 => {
            let (l, r) = distinct_pair(rng, depth);
            ProofTree::and_elim(ProofTree::new(Formula::and(l.conclusion().clone(), r.conclusion().clone()), Rule::AndIntro, vec![l, r], vec![]), rng.gen_bool(0.5))
        }
        3 => {
            let (l, r) = distinct_pair(rng, depth);
            ProofTree::new(Formula::and(l.conclusion().clone(), r.conclusion().clone()), Rule::AndIntro, vec![l, r], vec![])
        }
        4 => {
            let p = random_proof(rng, depth - 1, false);
            let other = distinct_from(rng, p.conclusion(), false);
            let (a, b, rule) = if rng.gen_bool(0.5) {
                (p.conclusion().clone(), other, Rule::OrIntroL)
            } else {
                (other, p.conclusion().clone(), Rule::OrIntroR)
            };
            ProofTree::new(Formula::or(a, b), rule, vec![p], vec![])
        }
        _ => {
            let a = random_formula(rng, 2, false);
            let b = distinct_from(rng, &a, false);
            let gamma = random_formula(rng, 2, false);
            let case = |d: &Formula| ProofTree::imp_elim(ProofTree::hyp(Formula::imp(d.clone(), gamma.clone())), ProofTree::hyp(d.clone()));
            let major = ProofTree::hyp(Formula::or(a.clone(), b.clone()));
            ProofTree::or_elim(major, vec![case(&a), case(&b)])
        }
    }
}

fn distinct_pair<R: Rng>(rng: &mut R, depth: u32) -> (ProofTree, ProofTree) {
    let l = random_proof(rng, depth - 1, false);
    let mut r = random_proof(rng, depth - 1, false);
    if r.conclusion() == l.conclusion() {
        r = ProofTree::hyp(distinct_from(rng, l.conclusion(), false));
    }
    (l, r)
}

/// A single-node corruption, addressed by preorder position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    Formula { at: usize, to: Formula },
    Rule { at: usize, to: Rule },
    Discharge { at: usize, to: Vec<Formula> },
    SwapPremises { at: usize },
    DropPremise { at: usize },
}

impl Mutation {
    pub fn at(&self) -> usize {
        match self {
            Mutation::Formula { at, .. }
            | Mutation::Rule { at, .. }
            | Mutation::Discharge { at, .. }
            | Mutation::SwapPremises { at }
            | Mutation::DropPremise { at } => *at,
        }
    }
}

const ALL_RULES: [Rule; 9] = [
    Rule::Hyp,
    Rule::ImpIntro,
    Rule::ImpElim,
    Rule::AndElimL,
    Rule::AndElimR,
    Rule::OrElim { arity: 2 },
    Rule::AndIntro,
    Rule::OrIntroL,
    Rule::OrIntroR,
];

fn nth(p: &ProofTree, at: usize) -> ProofTree {
    let mut k = 0;
    let mut found = None;
    p.visit(&mut |q| {
        if k == at {
            found = Some(q.clone());
        }
        k += 1;
    });
    found.expect("position within tree")
}

/// Picks a mutation that really changes the node at a random position.
pub fn random_mutation<R: Rng>(rng: &mut R, p: &ProofTree) -> Mutation {
    let at = rng.gen_range(0..p.node_count());
    let node = nth(p, at);
    let implicational = node.conclusion().is_implicational();
    loop {
        let m = match rng.gen_range(0..5) {
            0 => Mutation::Formula { at, to: distinct_from(rng, node.conclusion(), implicational) },
            1 => {
                let to = *ALL_RULES.choose(rng).expect("nonempty");
                if to == node.rule() {
                    continue;
                }
                Mutation::Rule { at, to }
            }
            2 => {
                let to = match node.discharge().len() {
                    0 => vec![random_formula(rng, 2, implicational)],
                    _ if rng.gen_bool(0.3) => Vec::new(),
                    k => {
                        let mut d = node.discharge().to_vec();
                        let i = rng.gen_range(0..k);
                        d[i] = distinct_from(rng, &d[i], implicational);
                        d
                    }
                };
                Mutation::Discharge { at, to }
            }
            3 => {
                let ps = node.premises();
                if ps.len() < 2 || ps[0].conclusion() == ps[1].conclusion() {
                    continue;
                }
                Mutation::SwapPremises { at }
            }
            _ => {
                if node.premises().is_empty() {
                    continue;
                }
                Mutation::DropPremise { at }
            }
        };
        return m;
    }
}

/// Rebuilds `p` with the mutation applied; the rest of the tree is shared.
pub fn apply_mutation(p: &ProofTree, m: &Mutation) -> ProofTree {
    fn go(p: &ProofTree, m: &Mutation, next: &mut usize) -> ProofTree {
        let me = *next;
        *next += 1;
        if me == m.at() {
            // skip over the subtree so later positions are not consumed
            *next += p.node_count() - 1;
            let (mut concl, mut rule) = (p.conclusion().clone(), p.rule());
            let (mut premises, mut discharge) = (p.premises().to_vec(), p.discharge().to_vec());
            match m {
                Mutation::Formula { to, .. } => concl = to.clone(),
                Mutation::Rule { to, .. } => rule = *to,
                Mutation::Discharge { to, .. } => discharge = to.clone(),
                Mutation::SwapPremises { .. } => premises.swap(0, 1),
                Mutation::DropPremise { .. } => {
                    premises.pop();
                }
            }
            return ProofTree::new(concl, rule, premises, discharge);
        }
        if me + p.node_count() <= m.at() {
            *next += p.node_count() - 1;
            return p.clone();
        }
        let premises = p.premises().iter().map(|q| go(q, m, next)).collect();
        ProofTree::new(p.conclusion().clone(), p.rule(), premises, p.discharge().to_vec())
    }
    go(p, m, &mut 0)
}
