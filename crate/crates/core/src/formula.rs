//! Hash-consed propositional formulas over `⊥`, `∧`, `∨`, `→`.
//!
//! Every [`Formula`] is interned in a process-wide table, so two formulas
//! are structurally equal exactly when they share the same allocation and
//! equality is a pointer comparison. The table is guarded by a mutex and may
//! be used from several threads; it only grows.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use thiserror::Error;

/// Propositional variable names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarName {
    /// `X_{step,vertex}`: vertex is visited at the given step (both 1-based).
    X { step: u32, vertex: u32 },
    /// Fresh variable standing for a complex subformula (or `⊥`) under the
    /// implicational translation. The key is local to one translation.
    Q(u32),
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::X { step, vertex } => write!(f, "X_{step}_{vertex}"),
            VarName::Q(k) => write!(f, "Q_{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Bot,
    Var(VarName),
    And(Formula, Formula),
    Or(Formula, Formula),
    Imp(Formula, Formula),
}

#[derive(Debug)]
struct Node {
    kind: Kind,
    weight: u64,
    depth: u32,
    implicational: bool,
    shash: u64,
}

/// An interned formula. Cloning is a reference-count bump.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

static INTERNER: Lazy<Mutex<HashMap<Kind, Formula>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn mix(a: u64, b: u64) -> u64 {
    // splitmix64 finalizer over a simple combination
    let mut z = a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Formula {
    fn intern(kind: Kind) -> Formula {
        let mut table = INTERNER.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = table.get(&kind) {
            return f.clone();
        }
        let (weight, depth, implicational, shash) = match &kind {
            Kind::Bot => (1, 1, false, mix(1, 0)),
            Kind::Var(VarName::X { step, vertex }) => {
                (1, 1, true, mix(2, ((*step as u64) << 32) | *vertex as u64))
            }
            Kind::Var(VarName::Q(k)) => (1, 1, true, mix(3, *k as u64)),
            Kind::And(a, b) | Kind::Or(a, b) | Kind::Imp(a, b) => {
                let tag = match &kind {
                    Kind::And(..) => 4,
                    Kind::Or(..) => 5,
                    _ => 6,
                };
                (
                    1 + a.weight() + b.weight(),
                    1 + a.depth().max(b.depth()),
                    tag == 6 && a.0.implicational && b.0.implicational,
                    mix(mix(tag, a.0.shash), b.0.shash),
                )
            }
        };
        let f = Formula(Arc::new(Node { kind: kind.clone(), weight, depth, implicational, shash }));
        table.insert(kind, f.clone());
        f
    }

    pub fn bot() -> Formula {
        Formula::intern(Kind::Bot)
    }

    pub fn var(name: VarName) -> Formula {
        Formula::intern(Kind::Var(name))
    }

    /// `X_{step,vertex}`.
    pub fn x(step: usize, vertex: usize) -> Formula {
        Formula::var(VarName::X { step: step as u32, vertex: vertex as u32 })
    }

    pub fn q(key: u32) -> Formula {
        Formula::var(VarName::Q(key))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::intern(Kind::And(a, b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::intern(Kind::Or(a, b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::intern(Kind::Imp(a, b))
    }

    /// `a → ⊥`.
    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::bot())
    }

    /// Right-nested disjunction `d₁ ∨ (d₂ ∨ (… ∨ d_k))`. Panics on an empty list.
    pub fn or_chain(items: &[Formula]) -> Formula {
        let (last, init) = items.split_last().expect("empty disjunction");
        init.iter().rev().fold(last.clone(), |acc, d| Formula::or(d.clone(), acc))
    }

    /// Right-nested implication `a₁ → (a₂ → (… → head))`.
    pub fn imp_chain(antecedents: &[Formula], head: Formula) -> Formula {
        antecedents.iter().rev().fold(head, |acc, a| Formula::imp(a.clone(), acc))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Total number of symbols (variables, `⊥`, connectives).
    pub fn weight(&self) -> u64 {
        self.0.weight
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    /// True iff the formula is built from variables and `→` only.
    pub fn is_implicational(&self) -> bool {
        self.0.implicational
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.kind(), Kind::Bot)
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self.kind() {
            Kind::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self.kind() {
            Kind::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self.kind() {
            Kind::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Splits a right-nested disjunction into exactly `arity` disjuncts. The
    /// last disjunct may itself be a disjunction.
    pub fn split_or_chain(&self, arity: usize) -> Option<Vec<Formula>> {
        if arity < 2 {
            return None;
        }
        let mut out = Vec::with_capacity(arity);
        let mut cur = self.clone();
        for _ in 0..arity - 1 {
            let (l, r) = cur.as_or()?;
            out.push(l.clone());
            let next = r.clone();
            cur = next;
        }
        out.push(cur);
        Some(out)
    }

    /// All distinct subformulas, including `self`.
    pub fn subformulas(&self) -> HashSet<Formula> {
        let mut seen = HashSet::new();
        self.collect_subformulas(&mut seen);
        seen
    }

    pub fn collect_subformulas(&self, seen: &mut HashSet<Formula>) {
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.clone()) {
                continue;
            }
            match f.kind() {
                Kind::And(a, b) | Kind::Or(a, b) | Kind::Imp(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                _ => {}
            }
        }
    }

    /// Distinct variables in first-occurrence order (left to right).
    pub fn variables(&self) -> Vec<VarName> {
        fn go(f: &Formula, seen: &mut HashSet<Formula>, out: &mut Vec<VarName>) {
            if !seen.insert(f.clone()) {
                return;
            }
            match f.kind() {
                Kind::Var(v) => out.push(*v),
                Kind::Bot => {}
                Kind::And(a, b) | Kind::Or(a, b) | Kind::Imp(a, b) => {
                    go(a, seen, out);
                    go(b, seen, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut HashSet::new(), &mut out);
        out
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.shash);
    }
}

fn tag(k: &Kind) -> u8 {
    match k {
        Kind::Bot => 0,
        Kind::Var(_) => 1,
        Kind::And(..) => 2,
        Kind::Or(..) => 3,
        Kind::Imp(..) => 4,
    }
}

impl Ord for Formula {
    /// Structural order: weight first, then connective, then children.
    /// Independent of interning order, so sorted output is reproducible.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.weight()
            .cmp(&other.weight())
            .then_with(|| tag(self.kind()).cmp(&tag(other.kind())))
            .then_with(|| match (self.kind(), other.kind()) {
                (Kind::Var(a), Kind::Var(b)) => a.cmp(b),
                (Kind::And(a1, b1), Kind::And(a2, b2))
                | (Kind::Or(a1, b1), Kind::Or(a2, b2))
                | (Kind::Imp(a1, b1), Kind::Imp(a2, b2)) => a1.cmp(a2).then_with(|| b1.cmp(b2)),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Bot => f.write_str("false"),
            Kind::Var(v) => write!(f, "{v}"),
            Kind::And(a, b) => write!(f, "({a} & {b})"),
            Kind::Or(a, b) => write!(f, "({a} | {b})"),
            Kind::Imp(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseFormulaError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected token at byte {0}")]
    Unexpected(usize),
    #[error("trailing input at byte {0}")]
    Trailing(usize),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32, ParseFormulaError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or(ParseFormulaError::Unexpected(start))
    }

    fn formula(&mut self) -> Result<Formula, ParseFormulaError> {
        self.skip_ws();
        if self.pos >= self.s.len() {
            return Err(ParseFormulaError::Eof);
        }
        if self.eat("false") {
            return Ok(Formula::bot());
        }
        if self.eat("X_") {
            let step = self.number()?;
            if !self.eat("_") {
                return Err(ParseFormulaError::Unexpected(self.pos));
            }
            let vertex = self.number()?;
            return Ok(Formula::var(VarName::X { step, vertex }));
        }
        if self.eat("Q_") {
            return Ok(Formula::q(self.number()?));
        }
        if self.eat("(") {
            let left = self.formula()?;
            let ctor: fn(Formula, Formula) -> Formula = if self.eat("&") {
                Formula::and
            } else if self.eat("|") {
                Formula::or
            } else if self.eat("->") {
                Formula::imp
            } else {
                return Err(ParseFormulaError::Unexpected(self.pos));
            };
            let right = self.formula()?;
            if !self.eat(")") {
                return Err(ParseFormulaError::Unexpected(self.pos));
            }
            return Ok(ctor(left, right));
        }
        Err(ParseFormulaError::Unexpected(self.pos))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseFormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let f = p.formula()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(ParseFormulaError::Trailing(p.pos));
        }
        Ok(f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable {0}")]
    Unbound(VarName),
}

/// Classical truth value of `f` under `assignment`.
pub fn eval<A>(f: &Formula, assignment: &A) -> Result<bool, EvalError>
where
    A: Fn(&VarName) -> Option<bool>,
{
    Ok(match f.kind() {
        Kind::Bot => false,
        Kind::Var(v) => assignment(v).ok_or(EvalError::Unbound(*v))?,
        Kind::And(a, b) => eval(a, assignment)? && eval(b, assignment)?,
        Kind::Or(a, b) => eval(a, assignment)? || eval(b, assignment)?,
        Kind::Imp(a, b) => !eval(a, assignment)? || eval(b, assignment)?,
    })
}

/// Sum of weights over the structurally distinct members of `fs`.
pub fn distinct_weight<'a, I>(fs: I) -> u64
where
    I: IntoIterator<Item = &'a Formula>,
{
    let set: HashSet<&Formula> = fs.into_iter().collect();
    set.into_iter().map(Formula::weight).sum()
}

/// Exhaustive classical truth-table check: true iff `f` holds under every
/// assignment to its variables. Branches are cut as soon as a partial
/// assignment already decides `f`.
pub fn is_tautology(f: &Formula) -> bool {
    let mut vars = f.variables();
    vars.sort();
    let slot: HashMap<VarName, usize> = vars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
    let mut values: Vec<Option<bool>> = vec![None; vars.len()];
    tautology_search(f, &slot, &mut values, 0)
}

fn tautology_search(f: &Formula, slot: &HashMap<VarName, usize>, values: &mut Vec<Option<bool>>, next: usize) -> bool {
    match partial_eval(f, slot, values) {
        Some(v) => v,
        None => {
            let mut ok = true;
            for b in [false, true] {
                values[next] = Some(b);
                ok = tautology_search(f, slot, values, next + 1);
                if !ok {
                    break;
                }
            }
            values[next] = None;
            ok
        }
    }
}

/// Three-valued (Kleene) evaluation under a partial assignment.
fn partial_eval(f: &Formula, slot: &HashMap<VarName, usize>, values: &[Option<bool>]) -> Option<bool> {
    match f.kind() {
        Kind::Bot => Some(false),
        Kind::Var(v) => values[slot[v]],
        Kind::And(a, b) => match (partial_eval(a, slot, values), partial_eval(b, slot, values)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        Kind::Or(a, b) => match (partial_eval(a, slot, values), partial_eval(b, slot, values)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
        Kind::Imp(a, b) => match partial_eval(a, slot, values) {
            Some(false) => Some(true),
            pa => match (pa, partial_eval(b, slot, values)) {
                (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Formula {
        Formula::x(1, 1)
    }

    #[test]
    fn interning_gives_pointer_equality() {
        let a = Formula::imp(Formula::x(1, 2), Formula::bot());
        let b = Formula::neg(Formula::x(1, 2));
        assert_eq!(a, b);
        assert!(Arc::ptr_eq(&a.0, &b.0));
        assert_ne!(a, Formula::neg(Formula::x(2, 1)));
    }

    #[test]
    fn weights() {
        assert_eq!(Formula::bot().weight(), 1);
        let y = Formula::x(2, 1);
        assert_eq!(Formula::imp(x(), Formula::imp(y, Formula::bot())).weight(), 5);
        let nx = Formula::neg(x());
        assert_eq!(distinct_weight([&nx, &nx, &Formula::bot()]), 4);
    }

    #[test]
    fn eval_basics() {
        assert!(!eval(&Formula::bot(), &|_: &VarName| Some(true)).unwrap());
        assert!(eval(&Formula::neg(x()), &|_: &VarName| Some(false)).unwrap());
        assert_eq!(
            eval(&x(), &|_: &VarName| None),
            Err(EvalError::Unbound(VarName::X { step: 1, vertex: 1 }))
        );
    }

    #[test]
    fn print_and_parse() {
        let f = Formula::and(Formula::or(x(), Formula::q(3)), Formula::neg(Formula::x(2, 4)));
        let s = f.to_string();
        assert_eq!(s, "((X_1_1 | Q_3) & (X_2_4 -> false))");
        assert_eq!(s.parse::<Formula>().unwrap(), f);
        assert!("(X_1_1 & )".parse::<Formula>().is_err());
        assert!("X_1_1 X_1_2".parse::<Formula>().is_err());
        assert!("X_1".parse::<Formula>().is_err());
    }

    #[test]
    fn or_chain_splits() {
        let ds: Vec<_> = (1..=3).map(|v| Formula::x(1, v)).collect();
        let c = Formula::or_chain(&ds);
        assert_eq!(c.to_string(), "(X_1_1 | (X_1_2 | X_1_3))");
        assert_eq!(c.split_or_chain(3).unwrap(), ds);
        let two = c.split_or_chain(2).unwrap();
        assert_eq!(two[1], Formula::or_chain(&ds[1..]));
        assert!(c.split_or_chain(4).is_none());
    }

    fn naive_tautology(f: &Formula) -> bool {
        let vars = f.variables();
        (0u32..1 << vars.len()).all(|bits| {
            let val = |v: &VarName| vars.iter().position(|w| w == v).map(|k| bits >> k & 1 == 1);
            eval(f, &val).unwrap()
        })
    }

    #[test]
    fn tautology_examples() {
        let (a, b) = (Formula::x(1, 1), Formula::x(1, 2));
        assert!(is_tautology(&Formula::imp(a.clone(), a.clone())));
        assert!(!is_tautology(&a));
        assert!(!is_tautology(&Formula::bot()));
        let peirce = Formula::imp(Formula::imp(Formula::imp(a.clone(), b.clone()), a.clone()), a.clone());
        assert!(is_tautology(&peirce));
        let lem = Formula::or(a.clone(), Formula::neg(a.clone()));
        assert!(is_tautology(&lem));
        assert!(!is_tautology(&Formula::and(a.clone(), Formula::or(b.clone(), Formula::neg(a)))));
    }

    fn arb_formula() -> impl proptest::strategy::Strategy<Value = Formula> {
        use proptest::prelude::*;
        let leaf = prop_oneof![Just(Formula::bot()), (1usize..4).prop_map(|v| Formula::x(1, v))];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
            ]
        })
    }

    proptest::proptest! {
        #[test]
        fn pruned_tautology_matches_truth_table(f in arb_formula()) {
            proptest::prop_assert_eq!(is_tautology(&f), naive_tautology(&f));
        }

        #[test]
        fn display_parse_round_trip(f in arb_formula()) {
            proptest::prop_assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
        }
    }

    #[test]
    fn ordering_is_structural() {
        let a = Formula::x(1, 1);
        let b = Formula::x(1, 2);
        assert!(a < b);
        assert!(Formula::bot() < a);
        assert!(a < Formula::neg(a.clone()));
    }
}
