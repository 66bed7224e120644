//! The propositional encoding `α_G = A ∧ B ∧ C ∧ D ∧ E` of "G has a
//! Hamiltonian path" and a satisfiability oracle tailored to it.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::{eval, Formula, VarName};
use crate::graph::Graph;

/// Largest vertex count [`sat_alpha`] accepts by default.
pub const DEFAULT_SAT_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    A,
    B,
    C,
    D,
    E,
}

impl Part {
    pub const ALL: [Part; 5] = [Part::A, Part::B, Part::C, Part::D, Part::E];
}

/// Parameters of a single conjunct of one of the parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// `X_{1,v} ∨ … ∨ X_{n,v}`
    A { v: usize },
    /// `X_{i,v} → (X_{j,v} → ⊥)`, `i ≠ j`
    B { v: usize, i: usize, j: usize },
    /// `X_{i,1} ∨ … ∨ X_{i,n}`
    C { i: usize },
    /// `X_{i,v} → (X_{i,w} → ⊥)`, `v ≠ w`
    D { v: usize, w: usize, i: usize },
    /// `X_{i,v} → (X_{i+1,w} → ⊥)` for a missing edge `(v, w)`
    E { v: usize, w: usize, i: usize },
}

impl Component {
    pub fn part(&self) -> Part {
        match self {
            Component::A { .. } => Part::A,
            Component::B { .. } => Part::B,
            Component::C { .. } => Part::C,
            Component::D { .. } => Part::D,
            Component::E { .. } => Part::E,
        }
    }
}

/// Which conjunct an `∧`-elimination keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One part of `α_G`: its conjuncts and their balanced conjunction.
#[derive(Clone, Debug)]
pub struct PartFormula {
    pub formula: Formula,
    pub conjuncts: Vec<(Component, Formula)>,
}

/// The encoding of a graph, with enough bookkeeping to extract any conjunct
/// from `alpha` by a chain of `∧`-eliminations.
#[derive(Clone, Debug)]
pub struct AlphaParts {
    n: usize,
    parts: [Option<PartFormula>; 5],
    alpha: Formula,
    index: HashMap<Component, Vec<Side>>,
}

/// Balanced conjunction; also records the path from the root to each item.
fn balanced_and(items: &[Formula], paths: &mut [Vec<Side>]) -> Formula {
    debug_assert_eq!(items.len(), paths.len());
    if items.len() == 1 {
        return items[0].clone();
    }
    let mid = items.len().div_ceil(2);
    let (lp, rp) = paths.split_at_mut(mid);
    for p in lp.iter_mut() {
        p.push(Side::Left);
    }
    for p in rp.iter_mut() {
        p.push(Side::Right);
    }
    let l = balanced_and(&items[..mid], lp);
    let r = balanced_and(&items[mid..], rp);
    Formula::and(l, r)
}

fn no_both(a: Formula, b: Formula) -> Formula {
    Formula::imp(a, Formula::neg(b))
}

/// Builds `α_G`. Conjunctions inside each part are balanced binary trees,
/// disjunctions are right-nested, and the parts are combined left-associated
/// as `(((A ∧ B) ∧ C) ∧ D) ∧ E` with empty parts dropped.
pub fn encode_alpha(g: &Graph) -> AlphaParts {
    let n = g.n();
    let x = Formula::x;
    let mut lists: [Vec<(Component, Formula)>; 5] = Default::default();

    for v in 1..=n {
        let ds: Vec<_> = (1..=n).map(|i| x(i, v)).collect();
        lists[0].push((Component::A { v }, Formula::or_chain(&ds)));
    }
    for v in 1..=n {
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                lists[1].push((Component::B { v, i, j }, no_both(x(i, v), x(j, v))));
            }
        }
    }
    for i in 1..=n {
        let ds: Vec<_> = (1..=n).map(|v| x(i, v)).collect();
        lists[2].push((Component::C { i }, Formula::or_chain(&ds)));
    }
    for v in 1..=n {
        for w in (1..=n).filter(|&w| w != v) {
            for i in 1..=n {
                lists[3].push((Component::D { v, w, i }, no_both(x(i, v), x(i, w))));
            }
        }
    }
    for (v, w) in g.missing_edges() {
        for i in 1..n {
            lists[4].push((Component::E { v, w, i }, no_both(x(i, v), x(i + 1, w))));
        }
    }

    let mut index = HashMap::new();
    let mut parts: [Option<PartFormula>; 5] = Default::default();
    let mut present: Vec<(usize, Formula)> = Vec::new();
    for (k, conjuncts) in lists.into_iter().enumerate() {
        if conjuncts.is_empty() {
            continue;
        }
        let items: Vec<Formula> = conjuncts.iter().map(|(_, f)| f.clone()).collect();
        let mut paths = vec![Vec::new(); items.len()];
        let formula = balanced_and(&items, &mut paths);
        for ((c, _), p) in conjuncts.iter().zip(paths) {
            index.insert(*c, p);
        }
        present.push((k, formula.clone()));
        parts[k] = Some(PartFormula { formula, conjuncts });
    }

    // Prefix each in-part path with the route from alpha down to that part.
    let count = present.len();
    let alpha = present
        .iter()
        .map(|(_, f)| f.clone())
        .reduce(Formula::and)
        .expect("parts A and C are never empty");
    for (pos, (k, _)) in present.iter().enumerate() {
        // left-associated: part 0 is count-1 left steps down, part k > 0 is
        // count-1-k left steps then one right step
        let mut prefix = vec![Side::Left; count - 1 - pos];
        if pos > 0 {
            prefix.push(Side::Right);
        }
        let part = parts[*k].as_ref().expect("present");
        for (c, _) in &part.conjuncts {
            let p = index.get_mut(c).expect("indexed");
            let mut full = prefix.clone();
            full.append(p);
            *p = full;
        }
    }

    AlphaParts { n, parts, alpha, index }
}

impl AlphaParts {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Formula {
        &self.alpha
    }

    pub fn part(&self, part: Part) -> Option<&PartFormula> {
        self.parts[part as usize].as_ref()
    }

    pub fn conjunct_count(&self, part: Part) -> usize {
        self.part(part).map_or(0, |p| p.conjuncts.len())
    }

    /// `∧`-elimination route from `alpha` to the conjunct `c`.
    pub fn path(&self, c: &Component) -> Option<&[Side]> {
        self.index.get(c).map(Vec::as_slice)
    }

    /// Every indexed component with its formula, in part order.
    pub fn components(&self) -> impl Iterator<Item = &(Component, Formula)> {
        self.parts.iter().flatten().flat_map(|p| p.conjuncts.iter())
    }

    /// Follows `path` from `alpha`, returning each intermediate formula
    /// (excluding `alpha` itself).
    pub fn walk(&self, path: &[Side]) -> Vec<Formula> {
        let mut cur = self.alpha.clone();
        let mut out = Vec::with_capacity(path.len());
        for side in path {
            let (l, r) = cur.as_and().expect("path follows conjunctions");
            cur = match side {
                Side::Left => l.clone(),
                Side::Right => r.clone(),
            };
            out.push(cur.clone());
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("satisfiability oracle limited to n <= {cap}, got {n}")]
    CapExceeded { n: usize, cap: usize },
}

/// Classical satisfiability of `α_G`.
///
/// Only functional assignments (exactly one `X_{i,·}` true per step) are
/// enumerated: any model of `C ∧ D` is functional, so nothing is missed.
pub fn sat_alpha(g: &Graph) -> Result<bool, SatError> {
    sat_alpha_capped(g, DEFAULT_SAT_CAP)
}

pub fn sat_alpha_capped(g: &Graph, cap: usize) -> Result<bool, SatError> {
    let n = g.n();
    if n > cap {
        return Err(SatError::CapExceeded { n, cap });
    }
    let alpha = encode_alpha(g).alpha().clone();
    let mut p = vec![1usize; n];
    loop {
        if eval(&alpha, &assignment_for(&p)).expect("alpha only mentions X_{i,v} with i,v <= n") {
            return Ok(true);
        }
        // odometer increment over [1..n]^n
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(false);
            }
            k -= 1;
            if p[k] < n {
                p[k] += 1;
                break;
            }
            p[k] = 1;
        }
    }
}

/// The assignment making `X_{i,v}` true iff `p[i] = v`.
pub fn assignment_for(p: &[usize]) -> impl Fn(&VarName) -> Option<bool> + '_ {
    move |v: &VarName| match *v {
        VarName::X { step, vertex } => {
            let i = step as usize;
            (i >= 1 && i <= p.len()).then(|| p[i - 1] == vertex as usize)
        }
        VarName::Q(_) => None,
    }
}
