//! Equality of expressions modulo the theory, decided by evaluating both
//! sides in the free idag model and comparing canonical forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

use crate::canon::{canonical_labelling, DEFAULT_BUDGET};
use crate::expr::Expr;
use crate::idag::{End, Idag, IdagError, Label};
use crate::json::idag_to_value;
use crate::model::{eval, EvalError, FreeModel};
use crate::quotient::{prune_dangling, transitive_closure};
use crate::weight::{Weight, WeightKind};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("arity mismatch: {left:?} vs {right:?}")]
    ArityMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("quotients require bool weights, found {0}")]
    QuotientNeedsBool(WeightKind),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Idag(#[from] IdagError),
}

/// Extra equations on top of the degenerate bialgebra theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quotient {
    /// `node = delta ; (node * id(1)) ; nabla`: idags up to transitive closure.
    Transitive,
    /// `eta ; node = eta` and `node ; eps = eps`: no dangling nodes.
    NoDangling,
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quotient::Transitive => "transitive",
            Quotient::NoDangling => "nodangling",
        })
    }
}

impl FromStr for Quotient {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "transitive" => Ok(Quotient::Transitive),
            "nodangling" => Ok(Quotient::NoDangling),
            other => Err(format!("unknown quotient `{other}` (expected transitive or nodangling)")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quotients(BTreeSet<Quotient>);

impl Quotients {
    pub fn none() -> Self {
        Quotients::default()
    }

    pub fn with(mut self, q: Quotient) -> Self {
        self.0.insert(q);
        self
    }

    pub fn contains(&self, q: Quotient) -> bool {
        self.0.contains(&q)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Quotient> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Quotient> for Quotients {
    fn from_iter<I: IntoIterator<Item = Quotient>>(iter: I) -> Self {
        Quotients(iter.into_iter().collect())
    }
}

/// The theory selected by a weight system and a set of quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryMode {
    pub weights: WeightKind,
    pub quotients: Quotients,
}

impl TheoryMode {
    pub fn new(weights: WeightKind, quotients: Quotients) -> Result<Self, EquivError> {
        if !quotients.is_empty() && weights != WeightKind::Bool {
            return Err(EquivError::QuotientNeedsBool(weights));
        }
        Ok(TheoryMode { weights, quotients })
    }

    pub fn antipode_enabled(&self) -> bool {
        self.weights.has_antipode()
    }
}

/// Applies the active quotients: a single closure or prune, or when both
/// are active prune, close and prune again until nothing changes.
pub fn apply_quotients<W: Weight>(d: &Idag<W>, quotients: &Quotients) -> Result<Idag<W>, EquivError> {
    if !quotients.is_empty() && W::KIND != WeightKind::Bool {
        return Err(EquivError::QuotientNeedsBool(W::KIND));
    }
    let close = quotients.contains(Quotient::Transitive);
    let prune = quotients.contains(Quotient::NoDangling);
    Ok(match (close, prune) {
        (false, false) => d.clone(),
        (true, false) => transitive_closure(d)?,
        (false, true) => prune_dangling(d)?,
        (true, true) => {
            let mut current = prune_dangling(d)?;
            loop {
                let next = prune_dangling(&transitive_closure(&current)?)?;
                if next == current {
                    break current;
                }
                current = next;
            }
        }
    })
}

/// The free-model image of `e` after quotients, not yet canonicalised.
pub fn evaluate_mod<W: Weight>(e: &Expr, quotients: &Quotients) -> Result<Idag<W>, EquivError> {
    if !quotients.is_empty() && W::KIND != WeightKind::Bool {
        return Err(EquivError::QuotientNeedsBool(W::KIND));
    }
    let d = eval(e, &FreeModel::<W>::new())?;
    apply_quotients(&d, quotients)
}

fn canonicalise<W: Weight>(d: &Idag<W>) -> Result<(Idag<W>, Vec<usize>), EquivError> {
    let labelling = canonical_labelling(d, DEFAULT_BUDGET)?;
    let mut order = vec![0; labelling.len()];
    for (k, &c) in labelling.iter().enumerate() {
        order[c] = k;
    }
    let ids: Vec<String> = (0..order.len()).map(|k| k.to_string()).collect();
    Ok((d.reorder(&order).rename(&ids)?, labelling))
}

/// Canonical normal form of `e` in the theory.
pub fn normalize<W: Weight>(e: &Expr, quotients: &Quotients) -> Result<Idag<W>, EquivError> {
    Ok(canonicalise(&evaluate_mod::<W>(e, quotients)?)?.0)
}

/// Cheap isomorphism invariants of a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub nodes: usize,
    pub per_label: BTreeMap<Label, usize>,
    /// Sum of the weights of all edges into outputs.
    pub into_outputs: i64,
}

impl Invariants {
    pub fn of<W: Weight>(d: &Idag<W>) -> Self {
        let mut per_label = BTreeMap::new();
        for node in d.nodes() {
            *per_label.entry(node.label.clone()).or_insert(0) += 1;
        }
        let into_outputs = d
            .edges()
            .filter(|(_, t, _)| matches!(t, End::Out(_)))
            .map(|(_, _, w)| w.to_count())
            .sum();
        Invariants {
            nodes: d.node_count(),
            per_label,
            into_outputs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqReport<W: Weight> {
    pub equal: bool,
    pub lhs: Idag<W>,
    pub rhs: Idag<W>,
    /// When equal: node `k` of the left quotient image corresponds to node
    /// `witness[k]` of the right one.
    pub witness: Option<Vec<usize>>,
}

impl<W: Weight> EqReport<W> {
    pub fn to_value(&self) -> serde_json::Value {
        json!({
            "equal": self.equal,
            "lhs": idag_to_value(&self.lhs),
            "rhs": idag_to_value(&self.rhs),
        })
    }
}

/// Decides `e1 = e2` in the theory given by `W` and the quotients.
pub fn equal_mod_theory<W: Weight>(
    e1: &Expr,
    e2: &Expr,
    quotients: &Quotients,
) -> Result<EqReport<W>, EquivError> {
    let a1 = e1.arity().map_err(EvalError::from)?;
    let a2 = e2.arity().map_err(EvalError::from)?;
    if a1 != a2 {
        return Err(EquivError::ArityMismatch { left: a1, right: a2 });
    }
    let d1 = evaluate_mod::<W>(e1, quotients)?;
    let d2 = evaluate_mod::<W>(e2, quotients)?;
    let (lhs, l1) = canonicalise(&d1)?;
    let (rhs, l2) = canonicalise(&d2)?;
    let equal = lhs == rhs;
    debug_assert!(!equal || Invariants::of(&d1) == Invariants::of(&d2));
    let witness = equal.then(|| {
        let mut inverse = vec![0; l2.len()];
        for (k, &c) in l2.iter().enumerate() {
            inverse[c] = k;
        }
        l1.iter().map(|&c| inverse[c]).collect()
    });
    Ok(EqReport {
        equal,
        lhs,
        rhs,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::weight::Boolean;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn degenerate_law() {
        let d = normalize::<Boolean>(&p("delta ; nabla"), &Quotients::none()).unwrap();
        assert_eq!(d, Idag::identity(1));
        let nat = normalize::<u64>(&p("delta ; nabla"), &Quotients::none()).unwrap();
        assert_eq!(nat.weight(End::In(0), End::Out(0)), 2);
        assert_eq!(nat.edge_count(), 1);
    }

    #[test]
    fn unit_copied() {
        let lhs = normalize::<u64>(&p("eta ; delta"), &Quotients::none()).unwrap();
        assert_eq!(lhs, normalize::<u64>(&p("eta * eta"), &Quotients::none()).unwrap());
        assert_eq!(lhs.arity(), (0, 2));
        assert_eq!(lhs.edge_count(), 0);
    }

    #[test]
    fn transitive_quotient() {
        let lhs = p("delta ; (node * id(1)) ; nabla");
        let rhs = p("node");
        let plain = equal_mod_theory::<Boolean>(&lhs, &rhs, &Quotients::none()).unwrap();
        assert!(!plain.equal);
        assert!(plain.witness.is_none());
        let q = Quotients::none().with(Quotient::Transitive);
        let closed = equal_mod_theory::<Boolean>(&lhs, &rhs, &q).unwrap();
        assert!(closed.equal);
        assert_eq!(closed.witness, Some(vec![0]));
    }

    #[test]
    fn hopf_law() {
        let r = equal_mod_theory::<i64>(
            &p("delta ; (anti * id(1)) ; nabla"),
            &p("eps ; eta"),
            &Quotients::none(),
        )
        .unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs.edge_count(), 0);
    }

    #[test]
    fn nodes_have_no_equations() {
        let r = equal_mod_theory::<Boolean>(
            &p("nabla ; node"),
            &p("(node * node) ; nabla"),
            &Quotients::none(),
        )
        .unwrap();
        assert!(!r.equal);
        assert_ne!(Invariants::of(&r.lhs), Invariants::of(&r.rhs));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            equal_mod_theory::<Boolean>(&p("nabla"), &p("delta"), &Quotients::none()),
            Err(EquivError::ArityMismatch { left: (2, 1), right: (1, 2) })
        ));
        assert!(matches!(
            equal_mod_theory::<u64>(&p("anti"), &p("id(1)"), &Quotients::none()),
            Err(EquivError::Eval(EvalError::UnsupportedGenerator { .. }))
        ));
        let q = Quotients::none().with(Quotient::NoDangling);
        assert_eq!(
            normalize::<u64>(&p("node"), &q),
            Err(EquivError::QuotientNeedsBool(WeightKind::Nat))
        );
        assert!(TheoryMode::new(WeightKind::Int, q.clone()).is_err());
        let mode = TheoryMode::new(WeightKind::Bool, q).unwrap();
        assert!(!mode.antipode_enabled());
    }

    #[test]
    fn dangling_quotient() {
        let q = Quotients::none().with(Quotient::NoDangling);
        let r = equal_mod_theory::<Boolean>(&p("eta ; node"), &p("eta"), &q).unwrap();
        assert!(r.equal);
        let r = equal_mod_theory::<Boolean>(&p("node ; eps"), &p("eps"), &q).unwrap();
        assert!(r.equal);
        let r = equal_mod_theory::<Boolean>(&p("node ; eps"), &p("eps"), &Quotients::none()).unwrap();
        assert!(!r.equal);
    }

    #[test]
    fn report_json_shape() {
        let r = equal_mod_theory::<Boolean>(&p("delta ; nabla"), &p("id(1)"), &Quotients::none()).unwrap();
        let v = r.to_value();
        assert_eq!(v["equal"], true);
        assert_eq!(v["lhs"], v["rhs"]);
        assert_eq!(v["lhs"]["mode"], "bool");
    }
}
