use serde::Serialize;

use super::{Element, LatticeError, Logic, Matrix};
use crate::formula::Sequent;
use crate::oracle::Oracle;

/// Outcome of one condition, with a human-readable witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub item: u8,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LikeReport {
    pub matrix: String,
    pub items: Vec<ConditionResult>,
}

impl LikeReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|c| c.passed)
    }

    pub fn item(&self, n: u8) -> Option<&ConditionResult> {
        self.items.iter().find(|c| c.item == n)
    }
}

fn seq(text: &str) -> Sequent {
    text.parse().expect("schema instances are well-formed")
}

/// Checks the five ETL-/NFL-likeness conditions on a finite matrix.
///
/// Items 1 and 2 are checked as element identities over the carrier;
/// items 3 to 5 are checked on the instances with variables `p`, `q`, taking
/// the half of each item that concerns the matrix's own logic.
pub fn check_like_conditions(m: &Matrix) -> Result<LikeReport, LatticeError> {
    let l = &m.lattice;
    let carrier = l.carrier()?.to_vec();
    let name = |e: Element| l.name(e);
    let mut items = Vec::new();

    let mut failure = None;
    'outer: for &a in &carrier {
        if l.neg(l.neg(a)?)? != a {
            failure = Some(format!("~~{} != {}", name(a), name(a)));
            break;
        }
        for &b in &carrier {
            let lhs = l.neg(l.meet(a, b)?)?;
            let rhs = l.join(l.neg(a)?, l.neg(b)?)?;
            if lhs != rhs {
                failure = Some(format!("~({0} & {1}) != ~{0} | ~{1}", name(a), name(b)));
                break 'outer;
            }
            let lhs = l.neg(l.join(a, b)?)?;
            let rhs = l.meet(l.neg(a)?, l.neg(b)?)?;
            if lhs != rhs {
                failure = Some(format!("~({0} | {1}) != ~{0} & ~{1}", name(a), name(b)));
                break 'outer;
            }
        }
    }
    items.push(ConditionResult {
        item: 1,
        passed: failure.is_none(),
        detail: failure.unwrap_or_else(|| "De Morgan and double negation hold".into()),
    });

    let mut failure = None;
    for &a in &carrier {
        if l.join(a, l.neg(a)?)? == Element::Top && a != Element::Top && a != Element::Bot {
            failure = Some(format!("{0} | ~{0} = top for middle element {0}", name(a)));
            break;
        }
    }
    items.push(ConditionResult {
        item: 2,
        passed: failure.is_none(),
        detail: failure.unwrap_or_else(|| "a | ~a = top only for top and bottom".into()),
    });

    let oracle = Oracle::default();
    let schemas: [(u8, &str, bool); 3] = match m.logic {
        Logic::Etl => [(3, "p & ~p |- q", true), (4, "p |- q | ~q", false), (5, "~p & (p | q) |- q", true)],
        Logic::Nfl => [(3, "p |- q | ~q", true), (4, "p & ~p |- q", false), (5, "p |- ~q | q & p", true)],
    };
    for (item, text, expect_valid) in schemas {
        let verdict = oracle.entails(m, &seq(text)).map_err(|e| match e {
            crate::oracle::OracleError::Lattice(le) => le,
            _ => LatticeError::Symbolic(l.id().into()),
        })?;
        let passed = verdict.valid == expect_valid;
        let detail = match (&verdict.countermodel, expect_valid) {
            (Some(cm), true) => format!("{text} fails at {}", cm.display_in(l)),
            (Some(cm), false) => format!("{text} refuted at {}", cm.display_in(l)),
            (None, true) => format!("{text} valid"),
            (None, false) => format!("{text} unexpectedly valid"),
        };
        items.push(ConditionResult { item, passed, detail });
    }

    Ok(LikeReport {
        matrix: m.name(),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{find_demorgan_negations, Lattice};

    #[test]
    fn m3_etl_and_m4_nfl_are_like() {
        let r = check_like_conditions(&Matrix::new(Lattice::mn(3).unwrap(), Logic::Etl).unwrap()).unwrap();
        assert!(r.all_passed(), "{r:?}");
        let r = check_like_conditions(&Matrix::new(Lattice::mn(4).unwrap(), Logic::Nfl).unwrap()).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn n5_items_one_and_two() {
        let n5 = Lattice::n5();
        let negs = find_demorgan_negations(&n5).unwrap();
        let l = n5.with_negation(&negs[0]).unwrap();
        let r = check_like_conditions(&Matrix::new(l, Logic::Etl).unwrap()).unwrap();
        assert!(r.item(1).unwrap().passed);
        assert!(r.item(2).unwrap().passed);
    }

    #[test]
    fn omega_rejected() {
        let m = Matrix::new(Lattice::m_omega(), Logic::Etl).unwrap();
        assert!(check_like_conditions(&m).is_err());
    }
}
