//! Translation of full propositional formulas and of the builder's proofs
//! into purely implicational minimal logic.
//!
//! Every conjunction, disjunction and `⊥` gets a fresh variable `q`, tied to
//! its meaning by implicational axioms:
//!
//! * `α ∧ β`: `q → α*`, `q → β*`, `α* → (β* → q)`
//! * `α ∨ β`: `α* → q`, `β* → q`, and for each elimination target `δ`
//!   `(α* → δ*) → ((β* → δ*) → (q → δ*))`
//! * `⊥`: a bare variable, no axioms
//!
//! and `(α → β)* = α* → β*`. The closed deliverable is
//! `ρ* = a₁ → (a₂ → … → (a_k → γ*))`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Formula, Kind, VarName};
use crate::kernel::{ProofTree, Rule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatmanError {
    #[error("rule {0} cannot be translated")]
    UnsupportedRule(String),
    #[error("formula {0} is not covered by the translation")]
    NotInTranslation(String),
    #[error("no case axiom for eliminating {disjunction} into {target}")]
    MissingCaseAxiom { disjunction: String, target: String },
}

#[derive(Clone, Debug)]
pub struct Translation {
    source: Formula,
    star: Formula,
    axioms: Vec<Formula>,
    qmap: Vec<(Formula, Formula)>,
    stars: HashMap<Formula, Formula>,
    and_axioms: HashMap<Formula, [Formula; 3]>,
    or_axioms: HashMap<Formula, [Formula; 2]>,
    case_axioms: HashMap<(Formula, Formula), Formula>,
}

struct Translator {
    next_q: u32,
    t: Translation,
}

impl Translator {
    fn star(&mut self, f: &Formula) -> Formula {
        if let Some(s) = self.t.stars.get(f) {
            return s.clone();
        }
        let s = match f.kind() {
            Kind::Var(_) => f.clone(),
            Kind::Imp(a, b) => {
                let (a, b) = (self.star(a), self.star(b));
                Formula::imp(a, b)
            }
            Kind::Bot => self.fresh(f),
            Kind::And(a, b) => {
                let (a, b) = (self.star(a), self.star(b));
                let q = self.fresh(f);
                let ax = [
                    Formula::imp(q.clone(), a.clone()),
                    Formula::imp(q.clone(), b.clone()),
                    Formula::imp_chain(&[a, b], q.clone()),
                ];
                self.t.axioms.extend(ax.iter().cloned());
                self.t.and_axioms.insert(f.clone(), ax);
                q
            }
            Kind::Or(a, b) => {
                let (a, b) = (self.star(a), self.star(b));
                let q = self.fresh(f);
                let ax = [Formula::imp(a, q.clone()), Formula::imp(b, q.clone())];
                self.t.axioms.extend(ax.iter().cloned());
                self.t.or_axioms.insert(f.clone(), ax);
                q
            }
        };
        self.t.stars.insert(f.clone(), s.clone());
        s
    }

    fn fresh(&mut self, f: &Formula) -> Formula {
        let q = Formula::q(self.next_q);
        self.next_q += 1;
        self.t.qmap.push((f.clone(), q.clone()));
        q
    }

    fn case_axiom(&mut self, disjunction: &Formula, target: &Formula) {
        let (a, b) = disjunction.as_or().expect("disjunction");
        let (a, b) = (self.star(a), self.star(b));
        let q = self.star(disjunction);
        let d = self.star(target);
        let ax = Formula::imp_chain(
            &[Formula::imp(a, d.clone()), Formula::imp(b, d.clone()), q],
            d,
        );
        self.t.axioms.push(ax.clone());
        self.t.case_axioms.insert((disjunction.clone(), target.clone()), ax);
    }
}

/// Translates `gamma`, instantiating disjunction case axioms for `⊥` as the
/// only elimination target (when `gamma` mentions `⊥`).
pub fn translate_formula(gamma: &Formula) -> Translation {
    let has_bot = gamma.subformulas().iter().any(Formula::is_bot);
    if has_bot {
        translate_formula_with_targets(gamma, &[Formula::bot()])
    } else {
        translate_formula_with_targets(gamma, &[])
    }
}

/// Translates `gamma` with case axioms for every disjunction of `gamma` and
/// every target in `targets`.
pub fn translate_formula_with_targets(gamma: &Formula, targets: &[Formula]) -> Translation {
    let first_q = gamma
        .variables()
        .iter()
        .filter_map(|v| match v {
            VarName::Q(k) => Some(k + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let mut tr = Translator {
        next_q: first_q,
        t: Translation {
            source: gamma.clone(),
            star: gamma.clone(),
            axioms: Vec::new(),
            qmap: Vec::new(),
            stars: HashMap::new(),
            and_axioms: HashMap::new(),
            or_axioms: HashMap::new(),
            case_axioms: HashMap::new(),
        },
    };
    let star = tr.star(gamma);
    for t in targets {
        tr.star(t);
    }
    // disjunctions in creation order, so axiom order stays deterministic
    let disjunctions: Vec<Formula> =
        tr.t.qmap.iter().map(|(f, _)| f.clone()).filter(|f| f.as_or().is_some()).collect();
    for d in &disjunctions {
        for t in targets {
            tr.case_axiom(d, t);
        }
    }
    tr.t.star = star;
    tr.t
}

impl Translation {
    pub fn source(&self) -> &Formula {
        &self.source
    }

    /// `γ*`, without the axioms.
    pub fn star(&self) -> &Formula {
        &self.star
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    /// Source subformula ↦ its `Q` variable, in creation order.
    pub fn qmap(&self) -> &[(Formula, Formula)] {
        &self.qmap
    }

    /// `ρ*` over the full axiom list.
    pub fn rho(&self) -> Formula {
        Formula::imp_chain(&self.axioms, self.star.clone())
    }

    pub fn star_of(&self, f: &Formula) -> Result<Formula, StatmanError> {
        if let Some(s) = self.stars.get(f) {
            return Ok(s.clone());
        }
        match f.kind() {
            Kind::Var(_) => Ok(f.clone()),
            Kind::Imp(a, b) => Ok(Formula::imp(self.star_of(a)?, self.star_of(b)?)),
            _ => Err(StatmanError::NotInTranslation(f.to_string())),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out {
            star: String,
            axioms: Vec<String>,
            qmap: Vec<[String; 2]>,
        }
        serde_json::to_string(&Out {
            star: self.star.to_string(),
            axioms: self.axioms.iter().map(Formula::to_string).collect(),
            qmap: self.qmap.iter().map(|(f, q)| [f.to_string(), q.to_string()]).collect(),
        })
        .expect("plain struct")
    }
}

/// Result of translating a proof.
#[derive(Clone, Debug)]
pub struct TranslatedProof {
    /// Proof of `γ*` whose open assumptions are exactly `axioms`.
    pub body: ProofTree,
    /// Closed proof of `rho`: `body` followed by one `→I` per axiom.
    pub proof: ProofTree,
    /// Axioms used by `body`, in order of first use.
    pub axioms: Vec<Formula>,
    /// `a₁ → … → a_k → γ*` over `axioms`.
    pub rho: Formula,
}

struct ProofCtx<'t> {
    t: &'t Translation,
    used: Vec<Formula>,
    seen: HashSet<Formula>,
}

impl ProofCtx<'_> {
    fn axiom(&mut self, ax: &Formula) -> ProofTree {
        if self.seen.insert(ax.clone()) {
            self.used.push(ax.clone());
        }
        ProofTree::hyp(ax.clone())
    }

    fn go(&mut self, p: &ProofTree) -> Result<ProofTree, StatmanError> {
        let t = self.t;
        match p.rule() {
            Rule::Hyp => Ok(ProofTree::hyp(t.star_of(p.conclusion())?)),
            Rule::ImpIntro => {
                let a = t.star_of(&p.discharge()[0])?;
                Ok(ProofTree::imp_intro(a, self.go(&p.premises()[0])?))
            }
            Rule::ImpElim => {
                let major = self.go(&p.premises()[0])?;
                let minor = self.go(&p.premises()[1])?;
                Ok(ProofTree::imp_elim(major, minor))
            }
            Rule::AndElimL | Rule::AndElimR => {
                let conj = p.premises()[0].conclusion();
                let axs = t.and_axioms.get(conj).ok_or_else(|| StatmanError::NotInTranslation(conj.to_string()))?;
                let ax = self.axiom(if p.rule() == Rule::AndElimL { &axs[0] } else { &axs[1] });
                Ok(ProofTree::imp_elim(ax, self.go(&p.premises()[0])?))
            }
            Rule::OrElim { arity: 2 } => {
                let disj = p.premises()[0].conclusion();
                let target = p.conclusion();
                let ax = t.case_axioms.get(&(disj.clone(), target.clone())).ok_or_else(|| {
                    StatmanError::MissingCaseAxiom { disjunction: disj.to_string(), target: target.to_string() }
                })?;
                let ax = self.axiom(ax);
                let left = ProofTree::imp_intro(t.star_of(&p.discharge()[0])?, self.go(&p.premises()[1])?);
                let right = ProofTree::imp_intro(t.star_of(&p.discharge()[1])?, self.go(&p.premises()[2])?);
                let major = self.go(&p.premises()[0])?;
                let step = ProofTree::imp_elim(ProofTree::imp_elim(ax, left), right);
                Ok(ProofTree::imp_elim(step, major))
            }
            r => Err(StatmanError::UnsupportedRule(r.name())),
        }
    }
}

/// Translates a normal proof built from `Hyp`, `→I`, `→E`, `∧E` and binary
/// `∨E` into a purely implicational proof of `ρ*`.
pub fn translate_proof(p: &ProofTree, t: &Translation) -> Result<TranslatedProof, StatmanError> {
    let mut ctx = ProofCtx { t, used: Vec::new(), seen: HashSet::new() };
    let body = ctx.go(p)?;
    let goal_star = t.star_of(p.conclusion())?;
    let proof = ctx.used.iter().rev().fold(body.clone(), |acc, ax| ProofTree::imp_intro(ax.clone(), acc));
    let rho = Formula::imp_chain(&ctx.used, goal_star);
    debug_assert_eq!(proof.conclusion(), &rho);
    Ok(TranslatedProof { body, proof, axioms: ctx.used, rho })
}

/// True iff every node formula is implicational and only `Hyp`, `→I`, `→E`
/// occur.
pub fn is_purely_implicational(p: &ProofTree) -> bool {
    let mut ok = true;
    p.visit(&mut |q| {
        ok &= q.conclusion().is_implicational() && matches!(q.rule(), Rule::Hyp | Rule::ImpIntro | Rule::ImpElim);
    });
    ok
}
