//! Labelled analytic tableaux for ETL and NFL over `Mn` and `Mω`.
//!
//! A branch is a set of items: formulas labelled `t` (value top), `m` (some
//! middle value) or `f` (value bottom), and pairs `A ~ B` / `A !~ B` saying
//! two middle-valued formulas take the same or different middle values.

mod engine;
mod extract;
mod output;
pub mod rules;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Sequent};
use crate::lattice::{Capacity, Lattice, Logic, Matrix};
use crate::oracle::{self, Valuation};

pub use extract::ExtractError;
pub use output::{proof_json, to_dot, to_proof_json};
pub use rules::{apply_rule, rule_table, RuleDescriptor, RuleKind};

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    T,
    M,
    F,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::T => "t",
            Label::M => "m",
            Label::F => "f",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Same,
    Diff,
}

impl Relation {
    pub fn opposite(self) -> Relation {
        match self {
            Relation::Same => Relation::Diff,
            Relation::Diff => Relation::Same,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Same => "~",
            Relation::Diff => "!~",
        }
    }
}

/// One branch item, generic over the formula handle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Item<F> {
    Labelled { label: Label, formula: F },
    Pair { relation: Relation, left: F, right: F },
}

impl<F> Item<F> {
    pub fn labelled(label: Label, formula: F) -> Self {
        Item::Labelled { label, formula }
    }

    pub fn map<G>(&self, mut f: impl FnMut(&F) -> G) -> Item<G> {
        match self {
            Item::Labelled { label, formula } => Item::Labelled {
                label: *label,
                formula: f(formula),
            },
            Item::Pair { relation, left, right } => Item::Pair {
                relation: *relation,
                left: f(left),
                right: f(right),
            },
        }
    }

    pub fn formulas(&self) -> Vec<&F> {
        match self {
            Item::Labelled { formula, .. } => vec![formula],
            Item::Pair { left, right, .. } => vec![left, right],
        }
    }
}

impl Item<Formula> {
    /// A pair in canonical orientation: sides ordered by rendering.
    pub fn pair(relation: Relation, a: Formula, b: Formula) -> Self {
        let (left, right) = if a.render() <= b.render() { (a, b) } else { (b, a) };
        Item::Pair { relation, left, right }
    }

    /// Whether `v` realises this item in `l`.
    pub fn realised_by(&self, l: &Lattice, v: &Valuation) -> Result<bool, oracle::OracleError> {
        Ok(match self {
            Item::Labelled { label, formula } => {
                let e = oracle::eval(l, v, formula)?;
                match label {
                    Label::T => e == crate::Element::Top,
                    Label::F => e == crate::Element::Bot,
                    Label::M => e.is_middle(),
                }
            }
            Item::Pair { relation, left, right } => {
                let a = oracle::eval(l, v, left)?;
                let b = oracle::eval(l, v, right)?;
                a.is_middle() && b.is_middle() && ((a == b) == (*relation == Relation::Same))
            }
        })
    }
}

fn side(f: &Formula) -> String {
    if f.is_var() || matches!(f, Formula::Neg(_)) {
        f.render()
    } else {
        format!("({})", f.render())
    }
}

impl fmt::Display for Item<Formula> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Labelled { label, formula } => write!(f, "{label}[{formula}]"),
            Item::Pair { relation, left, right } => {
                write!(f, "{} {} {}", side(left), relation.symbol(), side(right))
            }
        }
    }
}

/// Whether every item of `branch` is realised by `v` in `l`.
pub fn realises(l: &Lattice, v: &Valuation, branch: &[Item<Formula>]) -> Result<bool, oracle::OracleError> {
    for item in branch {
        if !item.realised_by(l, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureMode {
    /// Closure conditions 1, 2, 3 and the clique condition 4'.
    #[default]
    Paper,
    /// Additionally closes complete branches whose variable constraints
    /// admit no colouring within the middle capacity.
    Semantic,
}

impl fmt::Display for ClosureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureMode::Paper => "paper",
            ClosureMode::Semantic => "semantic",
        })
    }
}

impl std::str::FromStr for ClosureMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(ClosureMode::Paper),
            "semantic" => Ok(ClosureMode::Semantic),
            _ => Err(format!("unknown closure mode `{s}` (expected paper or semantic)")),
        }
    }
}

/// How middle values are chosen for `m`-labelled variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Alphabetical first-fit: the first unassigned variable takes a fresh
    /// value, and so does every unassigned variable not `!~` to it.
    #[default]
    Greedy,
    /// Backtracking colouring of the `~`-classes.
    Exact,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Greedy => "greedy",
            Strategy::Exact => "exact",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(Strategy::Greedy),
            "exact" => Ok(Strategy::Exact),
            _ => Err(format!("unknown strategy `{s}` (expected greedy or exact)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosureConfig {
    pub mode: ClosureMode,
    pub capacity: Capacity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauConfig {
    pub closure: ClosureConfig,
    pub strategy: Strategy,
    /// Generalised transitivity over arbitrary formulas.
    pub tr_rules: bool,
    /// The rules taking `~A ~ B` to `A ~ B` and `~A !~ B` to `A !~ B`.
    pub neg_pair_rules: bool,
    /// Maximum number of items added over one proof attempt.
    pub node_cap: usize,
}

impl TableauConfig {
    pub fn new(capacity: Capacity) -> Self {
        TableauConfig {
            closure: ClosureConfig {
                mode: ClosureMode::Paper,
                capacity,
            },
            strategy: Strategy::Greedy,
            tr_rules: false,
            neg_pair_rules: true,
            node_cap: DEFAULT_NODE_CAP,
        }
    }

    pub fn mode(mut self, mode: ClosureMode) -> Self {
        self.closure.mode = mode;
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn tr_rules(mut self, on: bool) -> Self {
        self.tr_rules = on;
        self
    }

    pub fn neg_pair_rules(mut self, on: bool) -> Self {
        self.neg_pair_rules = on;
        self
    }

    pub fn node_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }

    /// The lattice the closure capacity describes.
    pub fn lattice(&self) -> Lattice {
        match self.closure.capacity {
            Capacity::Finite(n) => Lattice::mn(n.max(1)).expect("n >= 1"),
            Capacity::Omega => Lattice::m_omega(),
        }
    }
}

impl Default for TableauConfig {
    /// Paper mode over `M3`.
    fn default() -> Self {
        TableauConfig::new(Capacity::Finite(3))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "1")]
    LabelClash,
    #[serde(rename = "2")]
    PairClash,
    #[serde(rename = "3")]
    SelfDiff,
    #[serde(rename = "4'")]
    Clique,
    #[serde(rename = "semantic")]
    Semantic,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::LabelClash => "1",
            Condition::PairClash => "2",
            Condition::SelfDiff => "3",
            Condition::Clique => "4'",
            Condition::Semantic => "semantic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureWitness {
    pub condition: Condition,
    pub items: Vec<Item<Formula>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: RuleKind,
    pub premises: Vec<Item<Formula>>,
    pub added: Vec<Item<Formula>>,
}

/// A stretch of branch followed either by a leaf or by one split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauNode {
    /// Items placed here by the splitting rule of the parent (roots for the
    /// top node).
    pub entry: Vec<Item<Formula>>,
    pub steps: Vec<Step>,
    /// The splitting rule whose alternatives are `children`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Step>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TableauNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureWitness>,
    /// Full item set of a complete open branch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_branch: Option<Vec<Item<Formula>>>,
}

impl TableauNode {
    pub fn is_closed(&self) -> bool {
        match (&self.closure, self.children.is_empty()) {
            (Some(_), _) => true,
            (None, true) => false,
            (None, false) => self.children.iter().all(TableauNode::is_closed),
        }
    }

    /// Complete open branches, left to right.
    pub fn open_branches(&self) -> Vec<&[Item<Formula>]> {
        let mut out = Vec::new();
        self.walk(&mut |n| {
            if let Some(b) = &n.open_branch {
                out.push(b.as_slice());
            }
        });
        out
    }

    pub fn closures(&self) -> Vec<&ClosureWitness> {
        let mut out = Vec::new();
        self.walk(&mut |n| {
            if let Some(c) = &n.closure {
                out.push(c);
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a TableauNode)) {
        visit(self);
        for c in &self.children {
            c.walk(visit);
        }
    }

    /// Every item mentioned anywhere in the subtree.
    pub fn all_items(&self) -> Vec<&Item<Formula>> {
        let mut out = Vec::new();
        self.walk(&mut |n| {
            out.extend(n.entry.iter());
            for s in n.steps.iter().chain(n.split.iter()) {
                out.extend(s.premises.iter());
                out.extend(s.added.iter());
            }
            if let Some(c) = &n.closure {
                out.extend(c.items.iter());
            }
        });
        out
    }

    pub fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(TableauNode::leaves).sum()
        }
    }

    pub fn rule_applications(&self) -> usize {
        let mut count = 0;
        self.walk(&mut |n| count += n.steps.len() + usize::from(n.split.is_some()));
        count
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauTree {
    pub roots: Vec<Item<Formula>>,
    pub root: TableauNode,
}

impl TableauTree {
    pub fn is_closed(&self) -> bool {
        self.root.is_closed()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Outcome {
    Proved,
    Refuted {
        branch: Vec<Item<Formula>>,
        countermodel: Valuation,
    },
    /// Some branch stays open but no open branch yields a refuting
    /// valuation; only possible in paper mode.
    Unrealised { branch: Vec<Item<Formula>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofResult {
    pub sequent: Sequent,
    pub logic: Logic,
    pub config: TableauConfig,
    pub trees: Vec<TableauTree>,
    pub outcome: Outcome,
}

impl ProofResult {
    pub fn is_proved(&self) -> bool {
        matches!(self.outcome, Outcome::Proved)
    }

    pub fn countermodel(&self) -> Option<&Valuation> {
        match &self.outcome {
            Outcome::Refuted { countermodel, .. } => Some(countermodel),
            _ => None,
        }
    }

    pub fn result_name(&self) -> &'static str {
        match self.outcome {
            Outcome::Proved => "proved",
            Outcome::Refuted { .. } => "refuted",
            Outcome::Unrealised { .. } => "unrealised",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("tableau exceeded the node cap of {cap} items (raise --node-cap to continue)")]
    NodeCap { cap: usize },
    #[error(transparent)]
    Extract(#[from] ExtractError),
}

/// Root item sets of the two tableaux deciding `s` in `logic`.
pub fn root_sets(s: &Sequent, logic: Logic) -> [Vec<Item<Formula>>; 2] {
    let p = || s.premise.clone();
    let c = || s.conclusion.clone();
    match logic {
        Logic::Etl => [
            vec![Item::labelled(Label::T, p()), Item::labelled(Label::M, c())],
            vec![Item::labelled(Label::T, p()), Item::labelled(Label::F, c())],
        ],
        Logic::Nfl => [
            vec![Item::labelled(Label::M, p()), Item::labelled(Label::F, c())],
            vec![Item::labelled(Label::T, p()), Item::labelled(Label::F, c())],
        ],
    }
}

/// First closure condition met by `items`, if any. In semantic mode a
/// branch that is complete and passes the paper conditions is also checked
/// for colourability.
pub fn is_closed(items: &[Item<Formula>], config: &TableauConfig) -> Option<ClosureWitness> {
    engine::closure_of(items, config)
}

/// Whether every applicable rule instance already has a conclusion set on
/// the branch.
pub fn is_complete(items: &[Item<Formula>], config: &TableauConfig) -> bool {
    engine::is_complete(items, config)
}

/// Expands `roots` until every branch is closed or complete.
pub fn saturate(roots: &[Item<Formula>], config: &TableauConfig) -> Result<TableauTree, TableauError> {
    let mut budget = engine::Budget::new(config.node_cap);
    engine::saturate(roots, config, &mut budget)
}

/// Reads a valuation off a complete open branch. Variables in `vars` that
/// the branch does not mention default to top.
pub fn extract_countermodel(
    branch: &[Item<Formula>],
    vars: &BTreeSet<String>,
    config: &TableauConfig,
) -> Result<Valuation, ExtractError> {
    if let Some(w) = engine::paper_closure_of(branch, config) {
        return Err(ExtractError::Closed(w.condition));
    }
    if !engine::is_complete(branch, config) {
        return Err(ExtractError::Incomplete);
    }
    extract::extract(branch, vars, config.closure.capacity, config.strategy)
}

/// Decides `s` in `logic` over the capacity in `config`.
pub fn prove(s: &Sequent, logic: Logic, config: &TableauConfig) -> Result<ProofResult, TableauError> {
    let mut budget = engine::Budget::new(config.node_cap);
    let trees = root_sets(s, logic)
        .iter()
        .map(|roots| engine::saturate(roots, config, &mut budget))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = Matrix::new(config.lattice(), logic).expect("Mn and Mω carry negation");
    let vars = s.variables();
    let mut first_open = None;
    for tree in &trees {
        for branch in tree.root.open_branches() {
            first_open.get_or_insert_with(|| branch.to_vec());
            let Ok(v) = extract::extract(branch, &vars, config.closure.capacity, config.strategy) else {
                continue;
            };
            if oracle::refutes(&matrix, &v, s).unwrap_or(false) {
                let outcome = Outcome::Refuted {
                    branch: branch.to_vec(),
                    countermodel: v,
                };
                return Ok(ProofResult {
                    sequent: s.clone(),
                    logic,
                    config: *config,
                    trees,
                    outcome,
                });
            }
        }
    }
    let outcome = match first_open {
        None => Outcome::Proved,
        Some(branch) => Outcome::Unrealised { branch },
    };
    Ok(ProofResult {
        sequent: s.clone(),
        logic,
        config: *config,
        trees,
        outcome,
    })
}
