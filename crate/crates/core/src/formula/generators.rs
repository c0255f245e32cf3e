use thiserror::Error;

use super::{Formula, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("the separation family is defined for n >= 2, got {0}")]
pub struct DnError(pub usize);

fn p(i: usize) -> Formula {
    Formula::var(format!("p{i}"))
}

/// The sequent separating the `Mn` and `M(n+1)` logics:
///
/// `(p1|p2) & ... & (p1|p(n+1)) |- p1 | (pi&pj | ...)`
///
/// where the inner disjunction ranges over the 2-subsets `{i, j}` of
/// `{2, ..., n+1}` in lexicographic order. Both big operators are
/// left-associated.
pub fn gen_dn(n: usize) -> Result<Sequent, DnError> {
    if n < 2 {
        return Err(DnError(n));
    }
    let premise = Formula::conjunction((2..=n + 1).map(|i| Formula::or(p(1), p(i))))
        .expect("n >= 2 gives at least one conjunct");
    let pairs = (2..=n + 1).flat_map(|i| (i + 1..=n + 1).map(move |j| Formula::and(p(i), p(j))));
    let body = Formula::disjunction(pairs).expect("n >= 2 gives at least one pair");
    Ok(Sequent::new(premise, Formula::or(p(1), body)))
}

/// The four-variable sequent valid over `M3` but not over `M4`.
pub fn gen_eq3() -> Sequent {
    let v = Formula::var;
    let premise = Formula::or(
        v("p"),
        Formula::and(
            Formula::or(Formula::or(v("p"), v("q")), Formula::and(v("r"), v("s"))),
            Formula::and(v("r"), Formula::or(v("q"), v("s"))),
        ),
    );
    let conclusion = Formula::or(
        v("p"),
        Formula::and(
            Formula::or(v("q"), Formula::and(v("r"), v("s"))),
            Formula::or(v("r"), Formula::and(v("p"), v("s"))),
        ),
    );
    Sequent::new(premise, conclusion)
}
