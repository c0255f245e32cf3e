//! Propositional formulas over `~`, `&` and `|`, single-premise sequents,
//! and the named formula families used throughout the crate.

mod generators;
mod parser;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use generators::{gen_dn, gen_eq3, DnError};
pub use parser::{parse, parse_formula, parse_sequent, ParseError, Parsed};

/// A propositional formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn neg(inner: Formula) -> Self {
        Formula::Neg(Box::new(inner))
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right))
    }

    /// Left-associated conjunction of a nonempty sequence.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Formula::and)
    }

    /// Left-associated disjunction of a nonempty sequence.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Formula::or)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }

    /// Number of connectives.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Variable names in alphabetical order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::Neg(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// All subformulas including `self`, in post-order with repeats dropped.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.collect_subformulas(&mut seen, &mut out);
        out
    }

    fn collect_subformulas<'a>(&'a self, seen: &mut HashSet<&'a Formula>, out: &mut Vec<Formula>) {
        match self {
            Formula::Var(_) => {}
            Formula::Neg(a) => a.collect_subformulas(seen, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_subformulas(seen, out);
                b.collect_subformulas(seen, out);
            }
        }
        if seen.insert(self) {
            out.push(self.clone());
        }
    }

    /// Swaps every `&` with `|` and vice versa.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Var(_) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.dual()),
            Formula::And(a, b) => Formula::or(a.dual(), b.dual()),
            Formula::Or(a, b) => Formula::and(a.dual(), b.dual()),
        }
    }

    /// Minimal-parenthesis rendering with spaces around binary connectives.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write_to(&mut out, true);
        out
    }

    /// Rendering without spaces that also brackets a conjunction directly
    /// under a disjunction (and vice versa), e.g. `p1|(p2&p3)`.
    pub fn render_compact(&self) -> String {
        let mut out = String::new();
        self.write_to(&mut out, false);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Neg(_) => 3,
            Formula::Var(_) => 4,
        }
    }

    fn write_to(&self, out: &mut String, spaced: bool) {
        match self {
            Formula::Var(name) => out.push_str(name),
            Formula::Neg(a) => {
                out.push('~');
                a.write_child(out, spaced, a.precedence() < 3);
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let prec = self.precedence();
                let mixed = |c: &Formula| !spaced && matches!(c.precedence(), 1 | 2) && c.precedence() != prec;
                a.write_child(out, spaced, a.precedence() < prec || mixed(a));
                let op = if prec == 2 { '&' } else { '|' };
                if spaced {
                    out.push(' ');
                    out.push(op);
                    out.push(' ');
                } else {
                    out.push(op);
                }
                // binary connectives are left-associative
                b.write_child(out, spaced, b.precedence() <= prec || mixed(b));
            }
        }
    }

    fn write_child(&self, out: &mut String, spaced: bool, parens: bool) {
        if parens {
            out.push('(');
            self.write_to(out, spaced);
            out.push(')');
        } else {
            self.write_to(out, spaced);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

/// A formula-formula consequence `premise |- conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub premise: Formula,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(premise: Formula, conclusion: Formula) -> Self {
        Sequent { premise, conclusion }
    }

    /// `dual(conclusion) |- dual(premise)`.
    pub fn dual(&self) -> Sequent {
        Sequent::new(self.conclusion.dual(), self.premise.dual())
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = self.premise.variables();
        vars.extend(self.conclusion.variables());
        vars
    }

    pub fn size(&self) -> usize {
        self.premise.size() + self.conclusion.size()
    }

    pub fn render(&self) -> String {
        format!("{} |- {}", self.premise.render(), self.conclusion.render())
    }

    pub fn render_compact(&self) -> String {
        format!(
            "{} |- {}",
            self.premise.render_compact(),
            self.conclusion.render_compact()
        )
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Sequent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_sequent(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Formula {
        Formula::var(name)
    }

    #[test]
    fn render_minimal_parens() {
        assert_eq!(Formula::or(Formula::and(v("p"), v("q")), v("r")).render(), "p & q | r");
        assert_eq!(Formula::neg(Formula::or(v("p"), v("q"))).render(), "~(p | q)");
        assert_eq!(
            Formula::and(v("p"), Formula::and(v("q"), v("r"))).render(),
            "p & (q & r)"
        );
        assert_eq!(
            Formula::and(Formula::and(v("p"), v("q")), v("r")).render(),
            "p & q & r"
        );
        assert_eq!(Formula::neg(Formula::neg(v("p"))).render(), "~~p");
    }

    #[test]
    fn subformulas_post_order() {
        assert_eq!(v("p").subformulas(), vec![v("p")]);
        let f = Formula::and(v("p"), Formula::neg(v("p")));
        assert_eq!(f.subformulas(), vec![v("p"), Formula::neg(v("p")), f.clone()]);
        let g = Formula::or(v("p"), v("p"));
        assert_eq!(g.subformulas(), vec![v("p"), g.clone()]);
    }

    #[test]
    fn dual_swaps_connectives() {
        let f = Formula::and(v("p"), Formula::or(v("q"), v("r")));
        assert_eq!(f.dual(), Formula::or(v("p"), Formula::and(v("q"), v("r"))));
        assert_eq!(Formula::neg(v("p")).dual(), Formula::neg(v("p")));
    }

    #[test]
    fn dual_sequent_of_ds_is_dds_shape() {
        let ds: Sequent = "~p & (p | q) |- q".parse().unwrap();
        let expected: Sequent = "q |- ~p | p & q".parse().unwrap();
        assert_eq!(ds.dual(), expected);
        let id: Sequent = "p |- p".parse().unwrap();
        assert_eq!(id.dual(), id);
        assert_eq!(ds.dual().dual(), ds);
    }

    #[test]
    fn serde_as_text() {
        let s: Sequent = "p & q |- q".parse().unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"p & q |- q\"");
        let back: Sequent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
