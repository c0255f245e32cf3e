//! Valuations read off complete open branches.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{Condition, Item, Label, Relation, Strategy};
use crate::formula::Formula;
use crate::lattice::{Capacity, Element};
use crate::oracle::Valuation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("branch is closed by condition {0}")]
    Closed(Condition),
    #[error("branch is not complete")]
    Incomplete,
    #[error("greedy assignment needs more than {capacity} middle values")]
    PaletteExhausted { capacity: Capacity },
    #[error("no assignment of at most {capacity} middle values meets the branch constraints")]
    Infeasible { capacity: Capacity },
}

/// Variable-level constraints of a branch.
struct Constraints {
    fixed: BTreeMap<String, Element>,
    /// `m`-labelled variables in alphabetical order.
    middle: Vec<String>,
    same: Vec<(usize, usize)>,
    diff: Vec<(usize, usize)>,
}

fn var_name(f: &Formula) -> Option<&str> {
    match f {
        Formula::Var(name) => Some(name),
        _ => None,
    }
}

fn constraints(items: &[Item<Formula>]) -> Constraints {
    let mut fixed = BTreeMap::new();
    let mut middle = BTreeSet::new();
    for item in items {
        match item {
            Item::Labelled { label, formula } => {
                let Some(name) = var_name(formula) else { continue };
                match label {
                    Label::T => {
                        fixed.insert(name.to_string(), Element::Top);
                    }
                    Label::F => {
                        fixed.insert(name.to_string(), Element::Bot);
                    }
                    Label::M => {
                        middle.insert(name.to_string());
                    }
                }
            }
            Item::Pair { left, right, .. } => {
                if let (Some(a), Some(b)) = (var_name(left), var_name(right)) {
                    for v in [a, b] {
                        if !fixed.contains_key(v) {
                            middle.insert(v.to_string());
                        }
                    }
                }
            }
        }
    }
    let middle: Vec<String> = middle.into_iter().filter(|v| !fixed.contains_key(v)).collect();
    let pos = |name: &str| middle.binary_search_by(|m| m.as_str().cmp(name)).ok();
    let mut same = Vec::new();
    let mut diff = Vec::new();
    for item in items {
        if let Item::Pair { relation, left, right } = item {
            let (Some(a), Some(b)) = (var_name(left).and_then(pos), var_name(right).and_then(pos)) else {
                continue;
            };
            match relation {
                Relation::Same => same.push((a, b)),
                Relation::Diff => diff.push((a, b)),
            }
        }
    }
    Constraints {
        fixed,
        middle,
        same,
        diff,
    }
}

fn greedy(c: &Constraints, capacity: Capacity) -> Result<Vec<u32>, ExtractError> {
    let n = c.middle.len();
    let apart = |a: usize, b: usize| c.diff.iter().any(|&(x, y)| (x == a && y == b) || (x == b && y == a));
    let mut colour = vec![0u32; n];
    let mut next = 0u32;
    while let Some(leader) = colour.iter().position(|&k| k == 0) {
        next += 1;
        if !capacity.admits(next as usize) {
            return Err(ExtractError::PaletteExhausted { capacity });
        }
        colour[leader] = next;
        for q in leader + 1..n {
            if colour[q] == 0 && !apart(q, leader) {
                colour[q] = next;
            }
        }
    }
    Ok(colour)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Colours the `~`-classes so that `!~` classes differ, using at most the
/// capacity's number of colours; first-fit backtracking in class order.
fn exact(c: &Constraints, capacity: Capacity) -> Option<Vec<u32>> {
    let n = c.middle.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in &c.same {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut classes: Vec<usize> = roots.clone();
    classes.sort_unstable();
    classes.dedup();
    let class_of: Vec<usize> = roots.iter().map(|r| classes.binary_search(r).expect("root listed")).collect();
    let k = classes.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &c.diff {
        let (x, y) = (class_of[a], class_of[b]);
        if x == y {
            return None;
        }
        adj[x].push(y);
        adj[y].push(x);
    }
    let limit = match capacity {
        Capacity::Finite(m) => m as usize,
        Capacity::Omega => k.max(1),
    };
    let mut colour = vec![0u32; k];
    fn go(i: usize, adj: &[Vec<usize>], colour: &mut [u32], limit: usize) -> bool {
        if i == colour.len() {
            return true;
        }
        for k in 1..=limit as u32 {
            if adj[i].iter().all(|&j| colour[j] != k) {
                colour[i] = k;
                if go(i + 1, adj, colour, limit) {
                    return true;
                }
            }
        }
        colour[i] = 0;
        false
    }
    if !go(0, &adj, &mut colour, limit) {
        return None;
    }
    Some(class_of.iter().map(|&cl| colour[cl]).collect())
}

/// Whether the variable constraints of `items` can be met within `capacity`.
pub(crate) fn colourable(items: &[Item<Formula>], capacity: Capacity) -> bool {
    exact(&constraints(items), capacity).is_some()
}

pub(crate) fn extract(
    items: &[Item<Formula>],
    vars: &BTreeSet<String>,
    capacity: Capacity,
    strategy: Strategy,
) -> Result<Valuation, ExtractError> {
    let c = constraints(items);
    let colours = match strategy {
        Strategy::Greedy => greedy(&c, capacity)?,
        Strategy::Exact => exact(&c, capacity).ok_or(ExtractError::Infeasible { capacity })?,
    };
    let mut v = Valuation::new();
    for name in vars {
        v.insert(name.clone(), Element::Top);
    }
    for (name, &e) in &c.fixed {
        v.insert(name.clone(), e);
    }
    for (name, &k) in c.middle.iter().zip(&colours) {
        v.insert(name.clone(), Element::Mid(k));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(t: &str) -> Formula {
        t.parse().unwrap()
    }

    fn five_cycle() -> Vec<Item<Formula>> {
        let vs = ["p", "q", "r", "s", "t"];
        let mut items: Vec<Item<Formula>> = vs.iter().map(|v| Item::labelled(Label::M, f(v))).collect();
        for i in 0..5 {
            items.push(Item::pair(Relation::Diff, f(vs[i]), f(vs[(i + 1) % 5])));
        }
        items
    }

    #[test]
    fn odd_cycle_not_two_colourable() {
        let items = five_cycle();
        assert!(!colourable(&items, Capacity::Finite(2)));
        assert!(colourable(&items, Capacity::Finite(3)));
        let vars = BTreeSet::new();
        assert_eq!(
            extract(&items, &vars, Capacity::Finite(2), Strategy::Exact),
            Err(ExtractError::Infeasible {
                capacity: Capacity::Finite(2)
            })
        );
    }

    #[test]
    fn greedy_ignores_same_but_respects_leader() {
        let items = vec![
            Item::labelled(Label::T, f("a")),
            Item::labelled(Label::F, f("b")),
            Item::labelled(Label::M, f("p")),
            Item::labelled(Label::M, f("q")),
            Item::pair(Relation::Diff, f("p"), f("q")),
        ];
        let vars: BTreeSet<String> = ["a", "b", "p", "q", "z"].iter().map(|s| s.to_string()).collect();
        let v = extract(&items, &vars, Capacity::Finite(2), Strategy::Greedy).unwrap();
        assert_eq!(v.to_string(), "a=Top, b=Bot, p=Mid-1, q=Mid-2, z=Top");
        assert_eq!(
            extract(&items, &vars, Capacity::Finite(1), Strategy::Greedy),
            Err(ExtractError::PaletteExhausted {
                capacity: Capacity::Finite(1)
            })
        );
    }

    #[test]
    fn exact_merges_same_classes() {
        let items = vec![
            Item::labelled(Label::M, f("p")),
            Item::labelled(Label::M, f("q")),
            Item::labelled(Label::M, f("r")),
            Item::pair(Relation::Same, f("p"), f("r")),
            Item::pair(Relation::Diff, f("p"), f("q")),
        ];
        let v = extract(&items, &BTreeSet::new(), Capacity::Omega, Strategy::Exact).unwrap();
        assert_eq!(v.to_string(), "p=Mid-1, q=Mid-2, r=Mid-1");
    }
}
