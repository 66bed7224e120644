//! JSON forms of tree and dag proofs.
//!
//! Both are flat node arrays in topological order with the root last, so a
//! reader can rebuild them in one pass. Formulas use the textual syntax of
//! [`crate::formula`]. Writing then reading then writing is byte-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dag::{DagNode, DagProof, DagRule};
use crate::formula::{Formula, ParseFormulaError};
use crate::kernel::{ProofTree, Rule};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("node {id}: {source}")]
    Formula { id: usize, source: ParseFormulaError },
    #[error("node {id}: unknown rule {rule:?}")]
    Rule { id: usize, rule: String },
    #[error("node {id}: {reason}")]
    Shape { id: usize, reason: String },
    #[error("empty node array")]
    Empty,
}

#[derive(Serialize, Deserialize)]
struct ProofNodeJson {
    id: usize,
    rule: String,
    formula: String,
    premises: Vec<usize>,
    discharge: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DagNodeJson {
    id: usize,
    rule: String,
    formula: String,
    premises: Vec<usize>,
    level: usize,
}

/// One array entry per occurrence in postorder. Physically shared subtrees
/// are written out once per use.
pub fn proof_to_json(p: &ProofTree) -> String {
    fn go(p: &ProofTree, out: &mut Vec<ProofNodeJson>) -> usize {
        let premises = p.premises().iter().map(|q| go(q, out)).collect();
        out.push(ProofNodeJson {
            id: out.len(),
            rule: p.rule().name(),
            formula: p.conclusion().to_string(),
            premises,
            discharge: p.discharge().iter().map(Formula::to_string).collect(),
        });
        out.len() - 1
    }
    let mut out = Vec::with_capacity(p.node_count());
    go(p, &mut out);
    serde_json::to_string(&out).expect("plain struct")
}

fn formula(id: usize, s: &str) -> Result<Formula, IoError> {
    s.parse().map_err(|source| IoError::Formula { id, source })
}

fn check_id(pos: usize, id: usize) -> Result<(), IoError> {
    if pos != id {
        return Err(IoError::Shape { id, reason: format!("id found at position {pos}") });
    }
    Ok(())
}

/// Reads a proof tree. Rejects forward references and any node used as a
/// premise more than once (a dag is not a tree). The proof itself is not
/// checked; run the kernel on the result.
pub fn proof_from_json(s: &str) -> Result<ProofTree, IoError> {
    let raw: Vec<ProofNodeJson> = serde_json::from_str(s)?;
    let mut built: Vec<Option<ProofTree>> = Vec::with_capacity(raw.len());
    for (pos, n) in raw.iter().enumerate() {
        check_id(pos, n.id)?;
        let rule = Rule::from_name(&n.rule).ok_or_else(|| IoError::Rule { id: n.id, rule: n.rule.clone() })?;
        let mut premises = Vec::with_capacity(n.premises.len());
        for &q in &n.premises {
            if q >= pos {
                return Err(IoError::Shape { id: n.id, reason: format!("premise {q} is not an earlier node") });
            }
            let sub = built[q].take().ok_or_else(|| IoError::Shape { id: n.id, reason: format!("premise {q} already used") })?;
            premises.push(sub);
        }
        let discharge = n.discharge.iter().map(|d| formula(n.id, d)).collect::<Result<_, _>>()?;
        built.push(Some(ProofTree::new(formula(n.id, &n.formula)?, rule, premises, discharge)));
    }
    let root = built.pop().ok_or(IoError::Empty)?.expect("root is never a premise");
    if let Some(id) = built.iter().position(Option::is_some) {
        return Err(IoError::Shape { id, reason: "node is not connected to the root".into() });
    }
    Ok(root)
}

pub fn dag_to_json(d: &DagProof) -> String {
    let nodes: Vec<DagNodeJson> = d
        .nodes
        .iter()
        .enumerate()
        .map(|(id, n)| DagNodeJson {
            id,
            rule: n.rule.name(),
            formula: n.formula.to_string(),
            premises: n.premises.clone(),
            level: n.level,
        })
        .collect();
    serde_json::to_string(&nodes).expect("plain struct")
}

/// Reads a dag proof. Only the array shape is checked here; premise order
/// and everything else is left to [`crate::dag::verify_dag`].
pub fn dag_from_json(s: &str) -> Result<DagProof, IoError> {
    let raw: Vec<DagNodeJson> = serde_json::from_str(s)?;
    if raw.is_empty() {
        return Err(IoError::Empty);
    }
    let mut nodes = Vec::with_capacity(raw.len());
    for (pos, n) in raw.into_iter().enumerate() {
        check_id(pos, n.id)?;
        let rule = DagRule::from_name(&n.rule).ok_or_else(|| IoError::Rule { id: n.id, rule: n.rule.clone() })?;
        if let Some(&q) = n.premises.iter().find(|&&q| q >= pos) {
            return Err(IoError::Shape { id: n.id, reason: format!("premise {q} is not an earlier node") });
        }
        nodes.push(DagNode { formula: formula(n.id, &n.formula)?, rule, premises: n.premises, level: n.level });
    }
    Ok(DagProof { nodes })
}

/// Either kind of serialized proof, told apart by the per-node fields.
pub enum Artifact {
    Tree(ProofTree),
    Dag(DagProof),
}

pub fn artifact_from_json(s: &str) -> Result<Artifact, IoError> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    let is_dag = v.as_array().and_then(|a| a.first()).is_some_and(|n| n.get("level").is_some());
    if is_dag {
        dag_from_json(s).map(Artifact::Dag)
    } else {
        proof_from_json(s).map(Artifact::Tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_refutation_with, Mode};
    use crate::dag::compress_horizontal;
    use crate::graph::Graph;
    use crate::kernel::check_tree;

    fn sample() -> ProofTree {
        build_refutation_with(&Graph::empty(2).unwrap(), Mode::Faithful).unwrap().proof
    }

    #[test]
    fn proof_round_trip_is_byte_exact() {
        let p = sample();
        let s = proof_to_json(&p);
        let q = proof_from_json(&s).unwrap();
        assert_eq!(proof_to_json(&q), s);
        assert_eq!(check_tree(&q).unwrap(), check_tree(&p).unwrap());
    }

    #[test]
    fn root_is_last() {
        let v: serde_json::Value = serde_json::from_str(&proof_to_json(&sample())).unwrap();
        let last = v.as_array().unwrap().last().unwrap();
        assert_eq!(last["rule"], "ImpIntro");
        assert!(last["formula"].as_str().unwrap().ends_with("-> false)"));
    }

    #[test]
    fn rejects_shared_premise() {
        let s = r#"[{"id":0,"rule":"Hyp","formula":"X_1_1","premises":[],"discharge":[]},
                    {"id":1,"rule":"AndIntro","formula":"(X_1_1 & X_1_1)","premises":[0,0],"discharge":[]}]"#;
        assert!(matches!(proof_from_json(s), Err(IoError::Shape { id: 1, .. })));
    }

    #[test]
    fn rejects_forward_reference_and_orphans() {
        let fwd = r#"[{"id":0,"rule":"ImpIntro","formula":"(X_1_1 -> X_1_1)","premises":[1],"discharge":["X_1_1"]},
                      {"id":1,"rule":"Hyp","formula":"X_1_1","premises":[],"discharge":[]}]"#;
        assert!(matches!(proof_from_json(fwd), Err(IoError::Shape { id: 0, .. })));
        let orphan = r#"[{"id":0,"rule":"Hyp","formula":"X_1_1","premises":[],"discharge":[]},
                         {"id":1,"rule":"Hyp","formula":"X_1_2","premises":[],"discharge":[]}]"#;
        assert!(matches!(proof_from_json(orphan), Err(IoError::Shape { id: 0, .. })));
    }

    #[test]
    fn rejects_bad_formula_and_rule() {
        let s = r#"[{"id":0,"rule":"Hyp","formula":"X_1_","premises":[],"discharge":[]}]"#;
        assert!(matches!(proof_from_json(s), Err(IoError::Formula { id: 0, .. })));
        let s = r#"[{"id":0,"rule":"Cut","formula":"X_1_1","premises":[],"discharge":[]}]"#;
        assert!(matches!(proof_from_json(s), Err(IoError::Rule { id: 0, .. })));
        assert!(matches!(proof_from_json("[]"), Err(IoError::Empty)));
    }

    #[test]
    fn dag_round_trip_and_detection() {
        let t = ProofTree::imp_intro(Formula::x(1, 1), ProofTree::hyp(Formula::x(1, 1)));
        let (d, _) = compress_horizontal(&t).unwrap();
        let s = dag_to_json(&d);
        assert_eq!(dag_from_json(&s).unwrap(), d);
        assert_eq!(dag_to_json(&dag_from_json(&s).unwrap()), s);
        assert!(matches!(artifact_from_json(&s).unwrap(), Artifact::Dag(_)));
        assert!(matches!(artifact_from_json(&proof_to_json(&t)).unwrap(), Artifact::Tree(_)));
    }
}
