//! The rule set of the labelled calculus.
//!
//! Formula rules decompose a labelled formula; pair rules propagate `~`
//! (same middle value) and `!~` (different middle values) constraints.
//! Symmetry is built into the representation: pairs are stored in a
//! canonical orientation and every pair rule is tried in both.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Item, Label, Relation, TableauConfig};
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleKind {
    #[serde(rename = "t-and")]
    TAnd,
    #[serde(rename = "t-or")]
    TOr,
    #[serde(rename = "t-neg")]
    TNeg,
    #[serde(rename = "m-and")]
    MAnd,
    #[serde(rename = "m-or")]
    MOr,
    #[serde(rename = "m-neg")]
    MNeg,
    #[serde(rename = "f-and")]
    FAnd,
    #[serde(rename = "f-or")]
    FOr,
    #[serde(rename = "f-neg")]
    FNeg,
    #[serde(rename = "same-sym")]
    SameSym,
    #[serde(rename = "diff-sym")]
    DiffSym,
    #[serde(rename = "same-trans")]
    SameTrans,
    #[serde(rename = "diff-trans")]
    DiffTrans,
    #[serde(rename = "neg-same")]
    NegSame,
    #[serde(rename = "neg-diff")]
    NegDiff,
    #[serde(rename = "op-same")]
    OpSame,
    #[serde(rename = "op-diff")]
    OpDiff,
    #[serde(rename = "same-tr")]
    SameTr,
    #[serde(rename = "diff-tr")]
    DiffTr,
}

impl RuleKind {
    pub const ALL: [RuleKind; 19] = [
        RuleKind::TAnd,
        RuleKind::TOr,
        RuleKind::TNeg,
        RuleKind::MAnd,
        RuleKind::MOr,
        RuleKind::MNeg,
        RuleKind::FAnd,
        RuleKind::FOr,
        RuleKind::FNeg,
        RuleKind::SameSym,
        RuleKind::DiffSym,
        RuleKind::SameTrans,
        RuleKind::DiffTrans,
        RuleKind::NegSame,
        RuleKind::NegDiff,
        RuleKind::OpSame,
        RuleKind::OpDiff,
        RuleKind::SameTr,
        RuleKind::DiffTr,
    ];

    /// Position in the rule table; splitting rules are tried in this order.
    pub fn index(self) -> usize {
        RuleKind::ALL.iter().position(|&r| r == self).expect("listed")
    }

    pub fn is_splitting(self) -> bool {
        matches!(self, RuleKind::TOr | RuleKind::MAnd | RuleKind::MOr | RuleKind::FAnd)
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::TAnd => "t-and",
            RuleKind::TOr => "t-or",
            RuleKind::TNeg => "t-neg",
            RuleKind::MAnd => "m-and",
            RuleKind::MOr => "m-or",
            RuleKind::MNeg => "m-neg",
            RuleKind::FAnd => "f-and",
            RuleKind::FOr => "f-or",
            RuleKind::FNeg => "f-neg",
            RuleKind::SameSym => "same-sym",
            RuleKind::DiffSym => "diff-sym",
            RuleKind::SameTrans => "same-trans",
            RuleKind::DiffTrans => "diff-trans",
            RuleKind::NegSame => "neg-same",
            RuleKind::NegDiff => "neg-diff",
            RuleKind::OpSame => "op-same",
            RuleKind::OpDiff => "op-diff",
            RuleKind::SameTr => "same-tr",
            RuleKind::DiffTr => "diff-tr",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Printable description of one rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleDescriptor {
    pub kind: RuleKind,
    pub premises: &'static str,
    /// One entry per branch; a single entry means the rule does not split.
    pub alternatives: Vec<&'static str>,
    pub guard: Option<&'static str>,
    pub enabled: bool,
}

pub fn rule_table(config: &TableauConfig) -> Vec<RuleDescriptor> {
    use RuleKind::*;
    let d = |kind, premises, alternatives: &[&'static str], guard| RuleDescriptor {
        kind,
        premises,
        alternatives: alternatives.to_vec(),
        guard,
        enabled: match kind {
            NegSame | NegDiff => config.neg_pair_rules,
            SameTr | DiffTr => config.tr_rules,
            _ => true,
        },
    };
    vec![
        d(TAnd, "t[A & B]", &["t[A], t[B]"], None),
        d(TOr, "t[A | B]", &["t[A]", "t[B]", "m[A], m[B], A !~ B"], None),
        d(TNeg, "t[~A]", &["f[A]"], None),
        d(MAnd, "m[A & B]", &["t[A], m[B]", "m[A], t[B]", "m[A], m[B], A ~ B"], None),
        d(MOr, "m[A | B]", &["f[A], m[B]", "m[A], f[B]", "m[A], m[B], A ~ B"], None),
        d(MNeg, "m[~A]", &["m[A], A ~ ~A"], None),
        d(FAnd, "f[A & B]", &["f[A]", "f[B]", "m[A], m[B], A !~ B"], None),
        d(FOr, "f[A | B]", &["f[A], f[B]"], None),
        d(FNeg, "f[~A]", &["t[A]"], None),
        d(SameSym, "A ~ B", &["B ~ A"], Some("implicit: pairs are unordered")),
        d(DiffSym, "A !~ B", &["B !~ A"], Some("implicit: pairs are unordered")),
        d(SameTrans, "p ~ q, q ~ r", &["p ~ r"], Some("p, q, r are variables")),
        d(DiffTrans, "p !~ q, q ~ r", &["p !~ r"], Some("p, q, r are variables")),
        d(NegSame, "~A ~ B", &["A ~ B"], None),
        d(NegDiff, "~A !~ B", &["A !~ B"], None),
        d(OpSame, "A ~ B1 o B2, m[Bi]", &["A ~ Bi"], Some("o is & or |; m[Bi] on the branch")),
        d(OpDiff, "A !~ B1 o B2, m[Bi]", &["A !~ Bi"], Some("o is & or |; m[Bi] on the branch")),
        d(SameTr, "A ~ B, B ~ C", &["A ~ C"], Some("any formulas; opt-in")),
        d(DiffTr, "A !~ B, B ~ C", &["A !~ C"], Some("any formulas; opt-in")),
    ]
}

/// Immediate structure of a formula, with children as handles of type `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape<F> {
    Var,
    Neg(F),
    And(F, F),
    Or(F, F),
}

/// The formula rule for a labelled formula, if any: the rule and its
/// alternatives (one alternative when the rule does not split).
pub fn formula_rule<H: Clone>(label: Label, this: &H, shape: &Shape<H>) -> Option<(RuleKind, Vec<Vec<Item<H>>>)> {
    use Label::*;
    let lab = |l: Label, f: &H| Item::Labelled {
        label: l,
        formula: f.clone(),
    };
    let pair = |r: Relation, a: &H, b: &H| Item::Pair {
        relation: r,
        left: a.clone(),
        right: b.clone(),
    };
    Some(match (label, shape) {
        (_, Shape::Var) => return None,
        (T, Shape::And(a, b)) => (RuleKind::TAnd, vec![vec![lab(T, a), lab(T, b)]]),
        (T, Shape::Or(a, b)) => (
            RuleKind::TOr,
            vec![vec![lab(T, a)], vec![lab(T, b)], vec![lab(M, a), lab(M, b), pair(Relation::Diff, a, b)]],
        ),
        (T, Shape::Neg(a)) => (RuleKind::TNeg, vec![vec![lab(F, a)]]),
        (M, Shape::And(a, b)) => (
            RuleKind::MAnd,
            vec![
                vec![lab(T, a), lab(M, b)],
                vec![lab(M, a), lab(T, b)],
                vec![lab(M, a), lab(M, b), pair(Relation::Same, a, b)],
            ],
        ),
        (M, Shape::Or(a, b)) => (
            RuleKind::MOr,
            vec![
                vec![lab(F, a), lab(M, b)],
                vec![lab(M, a), lab(F, b)],
                vec![lab(M, a), lab(M, b), pair(Relation::Same, a, b)],
            ],
        ),
        (M, Shape::Neg(a)) => (RuleKind::MNeg, vec![vec![lab(M, a), pair(Relation::Same, a, this)]]),
        (F, Shape::And(a, b)) => (
            RuleKind::FAnd,
            vec![vec![lab(F, a)], vec![lab(F, b)], vec![lab(M, a), lab(M, b), pair(Relation::Diff, a, b)]],
        ),
        (F, Shape::Or(a, b)) => (RuleKind::FOr, vec![vec![lab(F, a), lab(F, b)]]),
        (F, Shape::Neg(a)) => (RuleKind::FNeg, vec![vec![lab(T, a)]]),
    })
}

pub(crate) fn shape_of(f: &Formula) -> Shape<Formula> {
    match f {
        Formula::Var(_) => Shape::Var,
        Formula::Neg(a) => Shape::Neg((**a).clone()),
        Formula::And(a, b) => Shape::And((**a).clone(), (**b).clone()),
        Formula::Or(a, b) => Shape::Or((**a).clone(), (**b).clone()),
    }
}

/// Applies `rule` to explicit premises, returning its alternatives, or
/// `None` when the premises do not match the rule (including its guard).
///
/// Pair premises are read up to symmetry. Two-premise rules take the pair
/// first: `[A ~ B1 o B2, m[Bi]]`, `[A ~ B, B ~ C]`.
pub fn apply_rule(rule: RuleKind, premises: &[Item<Formula>]) -> Option<Vec<Vec<Item<Formula>>>> {
    use RuleKind::*;
    let orientations = |item: &Item<Formula>| -> Vec<(Relation, Formula, Formula)> {
        match item {
            Item::Pair { relation, left, right } => vec![
                (*relation, left.clone(), right.clone()),
                (*relation, right.clone(), left.clone()),
            ],
            _ => Vec::new(),
        }
    };
    match (rule, premises) {
        (TAnd | TOr | TNeg | MAnd | MOr | MNeg | FAnd | FOr | FNeg, [Item::Labelled { label, formula }]) => {
            let (kind, alts) = formula_rule(*label, formula, &shape_of(formula))?;
            (kind == rule).then_some(alts)
        }
        (SameSym | DiffSym, [item @ Item::Pair { relation, left, right }]) => {
            let wanted = if rule == SameSym { Relation::Same } else { Relation::Diff };
            (*relation == wanted).then(|| vec![vec![item.clone(), Item::pair(*relation, right.clone(), left.clone())]])
        }
        (NegSame | NegDiff, [p]) => {
            let wanted = if rule == NegSame { Relation::Same } else { Relation::Diff };
            orientations(p).into_iter().find_map(|(rel, x, y)| match y {
                Formula::Neg(inner) if rel == wanted => Some(vec![vec![Item::pair(rel, x, *inner)]]),
                _ => None,
            })
        }
        (OpSame | OpDiff, [p, Item::Labelled { label: Label::M, formula: child }]) => {
            let wanted = if rule == OpSame { Relation::Same } else { Relation::Diff };
            orientations(p).into_iter().find_map(|(rel, x, y)| match &y {
                Formula::And(a, b) | Formula::Or(a, b) if rel == wanted && (**a == *child || **b == *child) => {
                    Some(vec![vec![Item::pair(rel, x, child.clone())]])
                }
                _ => None,
            })
        }
        (SameTrans | DiffTrans | SameTr | DiffTr, [first, second]) => {
            let first_rel = if matches!(rule, SameTrans | SameTr) { Relation::Same } else { Relation::Diff };
            let vars_only = matches!(rule, SameTrans | DiffTrans);
            for (r1, x, y) in orientations(first) {
                for (r2, y2, z) in orientations(second) {
                    if r1 != first_rel || r2 != Relation::Same || y != y2 {
                        continue;
                    }
                    if vars_only && !(x.is_var() && y.is_var() && z.is_var()) {
                        continue;
                    }
                    return Some(vec![vec![Item::pair(first_rel, x, z)]]);
                }
            }
            None
        }
        _ => None,
    }
}
