//! Horizontal compression of implicational tree proofs into dag-like proofs,
//! and an independent checker for the result.
//!
//! Compression runs in two steps. [`compress_horizontal`] merges all
//! occurrences of the same formula on the same level (distance from the
//! root) into one node. When the merged occurrences were derived in
//! different ways, the node becomes a separation node `S` whose premises are
//! the distinct derivations ("alternatives"); alternatives sit on the same
//! level as their `S` node. [`cleanse`] then keeps one alternative per `S`
//! node, turning it into a repetition `R`, and drops everything unreachable.
//! Nothing about the cleansed dag is trusted: [`verify_dag`] rechecks it.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::formula::Formula;
use crate::kernel::{ProofTree, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DagRule {
    Hyp,
    ImpIntro,
    ImpElim,
    /// Premises are alternative derivations of the node's formula; one suffices.
    S { arity: usize },
    /// Repeats its single premise.
    R,
}

impl DagRule {
    pub fn name(&self) -> String {
        match self {
            DagRule::Hyp => "Hyp".into(),
            DagRule::ImpIntro => "ImpIntro".into(),
            DagRule::ImpElim => "ImpElim".into(),
            DagRule::S { arity } => format!("S:{arity}"),
            DagRule::R => "R".into(),
        }
    }

    pub fn from_name(s: &str) -> Option<DagRule> {
        Some(match s {
            "Hyp" => DagRule::Hyp,
            "ImpIntro" => DagRule::ImpIntro,
            "ImpElim" => DagRule::ImpElim,
            "R" => DagRule::R,
            _ => DagRule::S { arity: s.strip_prefix("S:")?.parse().ok()? },
        })
    }

    fn from_tree_rule(r: Rule) -> Option<DagRule> {
        match r {
            Rule::Hyp => Some(DagRule::Hyp),
            Rule::ImpIntro => Some(DagRule::ImpIntro),
            Rule::ImpElim => Some(DagRule::ImpElim),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagNode {
    pub formula: Formula,
    pub rule: DagRule,
    /// Indices of premise nodes; always smaller than this node's index.
    pub premises: Vec<usize>,
    pub level: usize,
}

/// Dag-like derivation stored in topological order: premises before
/// conclusions, root last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagProof {
    pub nodes: Vec<DagNode>,
}

impl DagProof {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn conclusion(&self) -> &Formula {
        &self.nodes[self.root()].formula
    }

    /// Node-summed formula weight.
    pub fn weight(&self) -> u64 {
        self.nodes.iter().map(|n| n.formula.weight()).sum()
    }

    pub fn has_separation(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n.rule, DagRule::S { .. }))
    }

    /// Embeds an implicational tree proof one node per occurrence, level =
    /// depth. `None` if the tree uses a non-implicational rule or carries a
    /// discharge list the dag cannot express (dag `→I` always closes its
    /// antecedent, other rules close nothing).
    pub fn from_tree(p: &ProofTree) -> Option<DagProof> {
        fn go(p: &ProofTree, level: usize, out: &mut Vec<DagNode>) -> Option<usize> {
            let rule = DagRule::from_tree_rule(p.rule())?;
            let implied: Vec<Formula> = match rule {
                DagRule::ImpIntro => vec![p.conclusion().as_imp().map(|(a, _)| a.clone())?],
                _ => Vec::new(),
            };
            if p.discharge() != implied.as_slice() {
                return None;
            }
            let premises = p.premises().iter().map(|q| go(q, level + 1, out)).collect::<Option<Vec<_>>>()?;
            out.push(DagNode { formula: p.conclusion().clone(), rule, premises, level });
            Some(out.len() - 1)
        }
        let mut nodes = Vec::new();
        go(p, 0, &mut nodes)?;
        Some(DagProof { nodes })
    }
}

/// Where each occurrence of the source tree (numbered in preorder) went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OriginMap {
    /// Node standing for the occurrence's (level, formula) class. This is
    /// the `S` node when the class has several alternatives.
    pub class: Vec<usize>,
    /// For occurrences in an `S` class: the alternative node that carries
    /// this occurrence's own inference.
    pub alternative: Vec<Option<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DagError {
    #[error("source proof is not purely implicational (rule {0})")]
    NotImplicational(String),
    #[error("no surviving source thread passes through separation node {node}")]
    NoCoherentChoice { node: usize },
    #[error("ill-formed dag node {node}: {reason}")]
    IllFormed { node: usize, reason: String },
    #[error("root has open assumptions {0:?}")]
    OpenAssumptions(Vec<String>),
}

struct Occurrence {
    tree: ProofTree,
    level: usize,
    children: Vec<usize>,
}

fn occurrences(p: &ProofTree) -> Vec<Occurrence> {
    fn go(p: &ProofTree, level: usize, out: &mut Vec<Occurrence>) -> usize {
        let me = out.len();
        out.push(Occurrence { tree: p.clone(), level, children: Vec::new() });
        let children = p.premises().iter().map(|q| go(q, level + 1, out)).collect();
        out[me].children = children;
        me
    }
    let mut out = Vec::new();
    go(p, 0, &mut out);
    out
}

/// Merges equal formulas on equal levels, inserting `S` nodes where merged
/// occurrences disagree on how they were derived.
pub fn compress_horizontal(p: &ProofTree) -> Result<(DagProof, OriginMap), DagError> {
    let occ = occurrences(p);
    if let Some(o) = occ.iter().find(|o| DagRule::from_tree_rule(o.tree.rule()).is_none()) {
        return Err(DagError::NotImplicational(o.tree.rule().name()));
    }

    // classes numbered breadth-first, ties by preorder position
    let mut bfs: Vec<usize> = (0..occ.len()).collect();
    bfs.sort_by_key(|&i| (occ[i].level, i));
    let mut class_of = vec![0usize; occ.len()];
    let mut class_ids: HashMap<(usize, Formula), usize> = HashMap::new();
    let mut class_first: Vec<usize> = Vec::new();
    for &i in &bfs {
        let key = (occ[i].level, occ[i].tree.conclusion().clone());
        let next = class_first.len();
        let c = *class_ids.entry(key).or_insert(next);
        if c == next {
            class_first.push(i);
        }
        class_of[i] = c;
    }

    // distinct derivations (rule + premise classes) per class, in BFS order
    type Group = (DagRule, Vec<usize>);
    let mut groups: Vec<Vec<Group>> = vec![Vec::new(); class_first.len()];
    let mut group_of = vec![0usize; occ.len()];
    for &i in &bfs {
        let rule = DagRule::from_tree_rule(occ[i].tree.rule()).expect("checked above");
        let g: Group = (rule, occ[i].children.iter().map(|&c| class_of[c]).collect());
        let list = &mut groups[class_of[i]];
        group_of[i] = match list.iter().position(|x| *x == g) {
            Some(k) => k,
            None => {
                list.push(g);
                list.len() - 1
            }
        };
    }

    // node ids in BFS order: class node, then its alternatives if any
    let mut class_node = vec![0usize; class_first.len()];
    let mut alt_nodes: Vec<Vec<usize>> = vec![Vec::new(); class_first.len()];
    let mut next = 0;
    for c in 0..class_first.len() {
        class_node[c] = next;
        next += 1;
        if groups[c].len() > 1 {
            alt_nodes[c] = (next..next + groups[c].len()).collect();
            next += groups[c].len();
        }
    }
    let total = next;
    let flip = |id: usize| total - 1 - id;

    let mut nodes: Vec<Option<DagNode>> = vec![None; total];
    for c in 0..class_first.len() {
        let first = &occ[class_first[c]];
        let formula = first.tree.conclusion().clone();
        let level = first.level;
        let make = |(rule, prem): &Group| DagNode {
            formula: formula.clone(),
            rule: *rule,
            premises: prem.iter().map(|&pc| flip(class_node[pc])).collect(),
            level,
        };
        if groups[c].len() == 1 {
            nodes[flip(class_node[c])] = Some(make(&groups[c][0]));
        } else {
            nodes[flip(class_node[c])] = Some(DagNode {
                formula: formula.clone(),
                rule: DagRule::S { arity: groups[c].len() },
                premises: alt_nodes[c].iter().map(|&a| flip(a)).collect(),
                level,
            });
            for (g, &a) in groups[c].iter().zip(&alt_nodes[c]) {
                nodes[flip(a)] = Some(make(g));
            }
        }
    }
    let dag = DagProof { nodes: nodes.into_iter().map(|n| n.expect("every id assigned")).collect() };
    let om = OriginMap {
        class: class_of.iter().map(|&c| flip(class_node[c])).collect(),
        alternative: (0..occ.len())
            .map(|i| {
                let c = class_of[i];
                (groups[c].len() > 1).then(|| flip(alt_nodes[c][group_of[i]]))
            })
            .collect(),
    };
    Ok((dag, om))
}

/// Collapses every `S` node to an `R` node over one alternative.
///
/// The source tree is walked in preorder. An occurrence survives when every
/// `S` node on its path kept that occurrence's alternative; each `S` node
/// keeps the alternative of its first (leftmost) surviving occurrence.
pub fn cleanse(d: &DagProof, om: &OriginMap, source: &ProofTree) -> Result<DagProof, DagError> {
    let occ = occurrences(source);
    let mut choice: HashMap<usize, usize> = HashMap::new();
    let mut stack: Vec<usize> = vec![0];
    while let Some(i) = stack.pop() {
        let k = om.class[i];
        let survives = match om.alternative[i] {
            None => true,
            Some(alt) => *choice.entry(k).or_insert(alt) == alt,
        };
        if survives {
            stack.extend(occ[i].children.iter().rev());
        }
    }

    let mut rewritten: Vec<DagNode> = d.nodes.clone();
    for (id, node) in rewritten.iter_mut().enumerate() {
        if let DagRule::S { .. } = node.rule {
            node.rule = DagRule::R;
            node.premises = choice.get(&id).map(|&a| vec![a]).unwrap_or_default();
        }
    }

    // keep what the root still reaches
    let mut live = vec![false; rewritten.len()];
    let root = d.root();
    live[root] = true;
    for id in (0..rewritten.len()).rev() {
        if !live[id] {
            continue;
        }
        if rewritten[id].rule == DagRule::R && rewritten[id].premises.is_empty() {
            return Err(DagError::NoCoherentChoice { node: id });
        }
        for &p in &rewritten[id].premises {
            live[p] = true;
        }
    }
    let mut renumber = vec![usize::MAX; rewritten.len()];
    let mut nodes = Vec::new();
    for (id, node) in rewritten.into_iter().enumerate() {
        if live[id] {
            renumber[id] = nodes.len();
            nodes.push(node);
        }
    }
    for node in &mut nodes {
        for p in &mut node.premises {
            *p = renumber[*p];
        }
    }
    Ok(DagProof { nodes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagMetrics {
    pub weight: u64,
    pub height: usize,
    pub node_count: usize,
    pub conclusion_weight: u64,
}

/// Local checks for one node, given its premises.
fn check_dag_local(d: &DagProof, id: usize) -> Result<(), String> {
    let node = &d.nodes[id];
    if let Some(&p) = node.premises.iter().find(|&&p| p >= id) {
        return Err(format!("premise {p} does not precede its conclusion"));
    }
    let prem: Vec<&DagNode> = node.premises.iter().map(|&p| &d.nodes[p]).collect();
    let same_level = matches!(node.rule, DagRule::R | DagRule::S { .. });
    let want_level = if same_level { node.level } else { node.level + 1 };
    if prem.iter().any(|p| p.level != want_level) {
        return Err(format!("premise level must be {want_level}"));
    }
    let arity = |k: usize| {
        if prem.len() == k {
            Ok(())
        } else {
            Err(format!("{} expects {k} premises, found {}", node.rule.name(), prem.len()))
        }
    };
    match node.rule {
        DagRule::Hyp => arity(0),
        DagRule::ImpIntro => {
            arity(1)?;
            let (_, b) = node.formula.as_imp().ok_or("→I must conclude an implication")?;
            if *b != prem[0].formula {
                return Err("→I premise is not the consequent".into());
            }
            Ok(())
        }
        DagRule::ImpElim => {
            arity(2)?;
            let (a, b) = prem[0].formula.as_imp().ok_or("→E major premise is not an implication")?;
            if *a != prem[1].formula || *b != node.formula {
                return Err("→E premises do not match".into());
            }
            Ok(())
        }
        DagRule::R => {
            arity(1)?;
            if prem[0].formula != node.formula {
                return Err("R premise differs from conclusion".into());
            }
            Ok(())
        }
        DagRule::S { .. } => Err("separation node in a dag that should be cleansed".into()),
    }
}

/// Checks every node and accepts iff the root has no open assumptions.
/// Open sets are computed once per node (union over premises, `→I`
/// removes its antecedent, `R` passes its premise's set through).
pub fn verify_dag(d: &DagProof) -> Result<DagMetrics, DagError> {
    let open = open_sets(d)?;
    let root = d.root();
    if !open[root].is_empty() {
        let set: BTreeSet<&Formula> = open[root].iter().collect();
        return Err(DagError::OpenAssumptions(set.into_iter().map(Formula::to_string).collect()));
    }
    Ok(dag_shape(d))
}

/// Per-node open assumption sets after checking local correctness.
pub fn open_sets(d: &DagProof) -> Result<Vec<HashSet<Formula>>, DagError> {
    if d.nodes.is_empty() {
        return Err(DagError::IllFormed { node: 0, reason: "empty dag".into() });
    }
    let mut open: Vec<HashSet<Formula>> = Vec::with_capacity(d.nodes.len());
    for id in 0..d.nodes.len() {
        check_dag_local(d, id).map_err(|reason| DagError::IllFormed { node: id, reason })?;
        let node = &d.nodes[id];
        let mut set: HashSet<Formula> = HashSet::new();
        for &p in &node.premises {
            set.extend(open[p].iter().cloned());
        }
        match node.rule {
            DagRule::Hyp => {
                set.insert(node.formula.clone());
            }
            DagRule::ImpIntro => {
                let (a, _) = node.formula.as_imp().expect("checked");
                set.remove(a);
            }
            _ => {}
        }
        open.push(set);
    }
    Ok(open)
}

fn dag_shape(d: &DagProof) -> DagMetrics {
    let mut height = vec![0usize; d.nodes.len()];
    for (id, n) in d.nodes.iter().enumerate() {
        height[id] = 1 + n.premises.iter().map(|&p| height[p]).max().unwrap_or(0);
    }
    DagMetrics {
        weight: d.weight(),
        height: height[d.root()],
        node_count: d.nodes.len(),
        conclusion_weight: d.conclusion().weight(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DagReport {
    pub weight: u64,
    pub height: usize,
    pub node_count: usize,
    pub conclusion_weight: u64,
    pub compression_ratio: f64,
}

/// Size measures of `d` relative to the tree proof it was compressed from.
pub fn dag_metrics(d: &DagProof, source: &ProofTree) -> DagReport {
    let m = dag_shape(d);
    DagReport {
        weight: m.weight,
        height: m.height,
        node_count: m.node_count,
        conclusion_weight: m.conclusion_weight,
        compression_ratio: source.weight() as f64 / m.weight as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check_tree;

    fn x(k: usize) -> Formula {
        Formula::x(1, k)
    }

    /// `(a → b) → (a → b)` spelled out so that `a` appears twice on one level.
    fn no_duplicates() -> ProofTree {
        let ab = Formula::imp(x(1), x(2));
        ProofTree::imp_intro(
            ab.clone(),
            ProofTree::imp_intro(x(1), ProofTree::imp_elim(ProofTree::hyp(ab), ProofTree::hyp(x(1)))),
        )
    }

    /// Two identical derivations of `b` at the same level, under different parents.
    fn shared_subproof() -> ProofTree {
        let (a, b, c) = (x(1), x(2), x(3));
        let ab = Formula::imp(a.clone(), b.clone());
        let bbc = Formula::imp(b.clone(), Formula::imp(b.clone(), c.clone()));
        let derive_b = || ProofTree::imp_elim(ProofTree::hyp(ab.clone()), ProofTree::hyp(a.clone()));
        let body = ProofTree::imp_elim(ProofTree::imp_elim(ProofTree::hyp(bbc.clone()), derive_b()), derive_b());
        ProofTree::imp_intro(bbc, ProofTree::imp_intro(ab, ProofTree::imp_intro(a, body)))
    }

    #[test]
    fn no_duplicates_is_isomorphic() {
        let p = no_duplicates();
        let (d, om) = compress_horizontal(&p).unwrap();
        assert_eq!(d.nodes.len(), p.node_count());
        assert!(!d.has_separation());
        assert_eq!(d.weight(), p.weight());
        assert!(om.alternative.iter().all(Option::is_none));
        assert_eq!(dag_metrics(&d, &p).compression_ratio, 1.0);
        let star = cleanse(&d, &om, &p).unwrap();
        assert_eq!(star, d);
        assert!(verify_dag(&star).is_ok());
    }

    #[test]
    fn identical_subproofs_at_different_levels_stay_apart() {
        let p = shared_subproof();
        let (d, _) = compress_horizontal(&p).unwrap();
        // the two copies of b sit at depths 4 and 5, so nothing merges
        assert_eq!(d.nodes.len(), p.node_count());
    }

    /// `b` derived on level 2 under both premises of the root `→E`, by
    /// `left` and by `right`, then every hypothesis closed.
    fn twin(left: ProofTree, right: ProofTree, closing: &[Formula]) -> ProofTree {
        let b = x(2);
        let bbb = Formula::imp(b.clone(), Formula::imp(b.clone(), b.clone()));
        let bb = Formula::imp(b.clone(), b.clone());
        let major = ProofTree::imp_elim(ProofTree::hyp(bbb.clone()), left);
        let minor = ProofTree::imp_elim(ProofTree::hyp(bb.clone()), right);
        let mut p = ProofTree::imp_elim(major, minor);
        for f in closing.iter().rev().chain([&bb, &bbb]) {
            p = ProofTree::imp_intro(f.clone(), p);
        }
        p
    }

    fn via(a: &Formula) -> ProofTree {
        ProofTree::imp_elim(ProofTree::hyp(Formula::imp(a.clone(), x(2))), ProofTree::hyp(a.clone()))
    }

    #[test]
    fn identical_subproofs_on_one_level_merge() {
        let a = x(1);
        let p = twin(via(&a), via(&a), &[Formula::imp(a.clone(), x(2)), a.clone()]);
        assert!(check_tree(&p).unwrap().open_assumptions.is_empty());
        let (d, om) = compress_horizontal(&p).unwrap();
        assert!(!d.has_separation());
        assert_eq!(d.nodes.len(), p.node_count() - 3);
        assert!(d.weight() < p.weight());
        let star = cleanse(&d, &om, &p).unwrap();
        assert_eq!(star, d);
        assert_eq!(star.conclusion(), p.conclusion());
        assert!(verify_dag(&star).is_ok());
    }

    #[test]
    fn separation_collapses_to_leftmost() {
        let (a, c) = (x(1), x(3));
        let closing = [Formula::imp(a.clone(), x(2)), a.clone(), Formula::imp(c.clone(), x(2)), c.clone()];
        let p = twin(via(&a), via(&c), &closing);
        let (d, om) = compress_horizontal(&p).unwrap();
        let s: Vec<_> = d.nodes.iter().filter(|n| matches!(n.rule, DagRule::S { .. })).collect();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].rule, DagRule::S { arity: 2 });
        assert!(s[0].premises.iter().all(|&q| d.nodes[q].level == s[0].level));
        // every occurrence in the S class points at an alternative
        for (i, alt) in om.alternative.iter().enumerate() {
            assert_eq!(alt.is_some(), matches!(d.nodes[om.class[i]].rule, DagRule::S { .. }));
        }
        let star = cleanse(&d, &om, &p).unwrap();
        assert!(!star.has_separation());
        let r = star.nodes.iter().position(|n| n.rule == DagRule::R).unwrap();
        let kept = &star.nodes[star.nodes[r].premises[0]];
        let major = &star.nodes[kept.premises[0]];
        assert_eq!(major.formula, Formula::imp(a.clone(), x(2)), "leftmost derivation kept");
        // c→b and c are still discharged at the root, just no longer used
        assert!(verify_dag(&star).is_ok());
        assert!(star.weight() < d.weight());
    }

    #[test]
    fn leftmost_choice_can_leak_an_assumption() {
        // left thread derives b from a hypothesis a that only the left side discharges
        let (a, c) = (x(1), x(3));
        let ab = Formula::imp(a.clone(), x(2));
        let b = x(2);
        let bbb = Formula::imp(b.clone(), Formula::imp(b.clone(), b.clone()));
        let bb = Formula::imp(b.clone(), b.clone());
        // level 1: (a→b→b) applied to a, and (c→b)→b ... keep both b's at level 3
        let left = ProofTree::imp_elim(
            ProofTree::imp_intro(a.clone(), ProofTree::imp_elim(ProofTree::hyp(bbb.clone()), via(&a))),
            ProofTree::hyp(a.clone()),
        );
        let right = ProofTree::imp_elim(
            ProofTree::imp_intro(c.clone(), ProofTree::imp_elim(ProofTree::hyp(bb.clone()), via(&c))),
            ProofTree::hyp(c.clone()),
        );
        let mut p = ProofTree::imp_elim(left, right);
        for f in [&bb, &bbb, &Formula::imp(c.clone(), x(2)), &ab] {
            p = ProofTree::imp_intro(f.clone(), p);
        }
        let mut closed = p.clone();
        for f in [&c, &a] {
            closed = ProofTree::imp_intro(f.clone(), closed);
        }
        assert!(check_tree(&p).unwrap().open_assumptions.iter().all(|f| *f == a || *f == c));
        let (d, om) = compress_horizontal(&closed).unwrap();
        assert!(d.has_separation());
        let star = cleanse(&d, &om, &closed).unwrap();
        assert!(verify_dag(&star).is_ok(), "outer discharge still covers the leak");
        let (d, om) = compress_horizontal(&p).unwrap();
        let star = cleanse(&d, &om, &p).unwrap();
        assert!(matches!(verify_dag(&star), Err(DagError::OpenAssumptions(_))));
    }
    #[test]
    fn tree_embedding_agrees_with_kernel() {
        let p = no_duplicates();
        let d = DagProof::from_tree(&p).unwrap();
        assert!(verify_dag(&d).is_ok());
        let open_hyp = ProofTree::hyp(x(1));
        let d = DagProof::from_tree(&open_hyp).unwrap();
        assert_eq!(verify_dag(&d), Err(DagError::OpenAssumptions(vec!["X_1_1".into()])));
    }

    #[test]
    fn embedding_refuses_foreign_discharge() {
        let id = ProofTree::imp_intro(x(1), ProofTree::hyp(x(1)));
        let relabelled = ProofTree::new(id.conclusion().clone(), Rule::ImpIntro, id.premises().to_vec(), vec![x(2)]);
        assert!(DagProof::from_tree(&relabelled).is_none());
        let and_elim = ProofTree::and_elim(ProofTree::hyp(Formula::and(x(1), x(2))), true);
        assert!(DagProof::from_tree(&and_elim).is_none());
    }

    #[test]
    fn rejects_separation_and_bad_order() {
        let d = DagProof {
            nodes: vec![
                DagNode { formula: x(1), rule: DagRule::Hyp, premises: vec![], level: 0 },
                DagNode { formula: x(1), rule: DagRule::S { arity: 1 }, premises: vec![0], level: 0 },
            ],
        };
        assert!(matches!(verify_dag(&d), Err(DagError::IllFormed { node: 1, .. })));
        let d = DagProof {
            nodes: vec![
                DagNode { formula: x(1), rule: DagRule::R, premises: vec![1], level: 0 },
                DagNode { formula: x(1), rule: DagRule::Hyp, premises: vec![], level: 0 },
            ],
        };
        assert!(matches!(verify_dag(&d), Err(DagError::IllFormed { node: 0, .. })));
    }

    #[test]
    fn rule_names_round_trip() {
        for r in [DagRule::Hyp, DagRule::ImpIntro, DagRule::ImpElim, DagRule::R, DagRule::S { arity: 3 }] {
            assert_eq!(DagRule::from_name(&r.name()), Some(r));
        }
    }
}
