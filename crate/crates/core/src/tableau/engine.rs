//! Saturation over interned formulas.

use std::collections::{HashMap, HashSet, VecDeque};

use super::rules::{formula_rule, RuleKind, Shape};
use super::{
    extract, ClosureMode, ClosureWitness, Condition, Item, Label, Relation, Step, TableauConfig, TableauError,
    TableauNode, TableauTree,
};
use crate::formula::Formula;
use crate::lattice::Capacity;

pub(crate) type Fid = u32;

/// Subformula closure of the root items, with every formula interned once.
pub(crate) struct Universe {
    formulas: Vec<Formula>,
    shapes: Vec<Shape<Fid>>,
    /// Position of each formula in alphabetical order of renderings.
    rank: Vec<u32>,
    index: HashMap<Formula, Fid>,
    /// Conjunctions and disjunctions having the formula as a direct child.
    parents: Vec<Vec<Fid>>,
}

impl Universe {
    pub(crate) fn build<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Self {
        let mut u = Universe {
            formulas: Vec::new(),
            shapes: Vec::new(),
            rank: Vec::new(),
            index: HashMap::new(),
            parents: Vec::new(),
        };
        for f in formulas {
            u.intern(f);
        }
        let mut order: Vec<(String, Fid)> = u.formulas.iter().enumerate().map(|(i, f)| (f.render(), i as Fid)).collect();
        order.sort();
        u.rank = vec![0; u.formulas.len()];
        for (pos, (_, id)) in order.into_iter().enumerate() {
            u.rank[id as usize] = pos as u32;
        }
        u
    }

    fn intern(&mut self, f: &Formula) -> Fid {
        if let Some(&id) = self.index.get(f) {
            return id;
        }
        let shape = match f {
            Formula::Var(_) => Shape::Var,
            Formula::Neg(a) => Shape::Neg(self.intern(a)),
            Formula::And(a, b) => Shape::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Shape::Or(self.intern(a), self.intern(b)),
        };
        let id = self.formulas.len() as Fid;
        self.formulas.push(f.clone());
        self.parents.push(Vec::new());
        if let Shape::And(a, b) | Shape::Or(a, b) = shape {
            self.parents[a as usize].push(id);
            if b != a {
                self.parents[b as usize].push(id);
            }
        }
        self.shapes.push(shape);
        self.index.insert(f.clone(), id);
        id
    }

    fn len(&self) -> usize {
        self.formulas.len()
    }

    fn is_var(&self, id: Fid) -> bool {
        matches!(self.shapes[id as usize], Shape::Var)
    }

    fn pair(&self, relation: Relation, a: Fid, b: Fid) -> Item<Fid> {
        let (left, right) = if self.rank[a as usize] <= self.rank[b as usize] { (a, b) } else { (b, a) };
        Item::Pair { relation, left, right }
    }

    fn canon(&self, item: Item<Fid>) -> Item<Fid> {
        match item {
            Item::Pair { relation, left, right } => self.pair(relation, left, right),
            other => other,
        }
    }

    fn intern_item(&self, item: &Item<Formula>) -> Item<Fid> {
        self.canon(item.map(|f| self.index[f]))
    }

    fn export(&self, item: &Item<Fid>) -> Item<Formula> {
        item.map(|&id| self.formulas[id as usize].clone())
    }

    fn export_all(&self, items: &[Item<Fid>]) -> Vec<Item<Formula>> {
        items.iter().map(|i| self.export(i)).collect()
    }
}

pub(crate) struct Budget {
    cap: usize,
    used: usize,
}

impl Budget {
    pub(crate) fn new(cap: usize) -> Self {
        Budget { cap, used: 0 }
    }

    fn spend(&mut self, n: usize) -> Result<(), TableauError> {
        self.used += n;
        if self.used > self.cap {
            Err(TableauError::NodeCap { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

struct RawWitness {
    condition: Condition,
    items: Vec<Item<Fid>>,
}

#[derive(Clone)]
struct Branch {
    items: Vec<Item<Fid>>,
    present: HashSet<Item<Fid>>,
    label: Vec<Option<Label>>,
    same: Vec<Vec<Fid>>,
    diff: Vec<Vec<Fid>>,
}

impl Branch {
    fn new(u: &Universe) -> Self {
        Branch {
            items: Vec::new(),
            present: HashSet::new(),
            label: vec![None; u.len()],
            same: vec![Vec::new(); u.len()],
            diff: vec![Vec::new(); u.len()],
        }
    }

    fn has(&self, item: &Item<Fid>) -> bool {
        match item {
            Item::Labelled { label, formula } => self.label[*formula as usize] == Some(*label),
            pair => self.present.contains(pair),
        }
    }

    fn has_diff(&self, u: &Universe, a: Fid, b: Fid) -> bool {
        self.present.contains(&u.pair(Relation::Diff, a, b))
    }

    /// Adds a canonical item that is not yet present and reports the first
    /// closure condition it triggers.
    fn add(&mut self, u: &Universe, item: Item<Fid>, capacity: Capacity) -> Option<RawWitness> {
        debug_assert!(!self.has(&item));
        self.items.push(item.clone());
        self.present.insert(item.clone());
        match item {
            Item::Labelled { label, formula } => {
                let slot = &mut self.label[formula as usize];
                match *slot {
                    Some(old) => Some(RawWitness {
                        condition: Condition::LabelClash,
                        items: vec![Item::labelled(old, formula), item],
                    }),
                    None => {
                        *slot = Some(label);
                        None
                    }
                }
            }
            Item::Pair { relation, left, right } => {
                if relation == Relation::Diff && left == right {
                    return Some(RawWitness {
                        condition: Condition::SelfDiff,
                        items: vec![item],
                    });
                }
                let opposite = u.pair(relation.opposite(), left, right);
                if self.present.contains(&opposite) {
                    let (s, d) = if relation == Relation::Same { (item, opposite) } else { (opposite, item) };
                    return Some(RawWitness {
                        condition: Condition::PairClash,
                        items: vec![s, d],
                    });
                }
                let adj = if relation == Relation::Same { &mut self.same } else { &mut self.diff };
                adj[left as usize].push(right);
                if left != right {
                    adj[right as usize].push(left);
                }
                match (relation, capacity) {
                    (Relation::Diff, Capacity::Finite(n)) => self.clique(u, left, right, n as usize),
                    _ => None,
                }
            }
        }
    }

    /// Looks for `n + 1` pairwise `!~` formulas including `a` and `b`.
    fn clique(&self, u: &Universe, a: Fid, b: Fid, n: usize) -> Option<RawWitness> {
        let need = n.saturating_sub(1);
        let mut common: Vec<Fid> = self.diff[a as usize]
            .iter()
            .copied()
            .filter(|&c| c != a && c != b && self.has_diff(u, c, b))
            .collect();
        common.sort_unstable();
        common.dedup();
        let mut chosen = Vec::new();
        if !self.extend_clique(u, &common, need, &mut chosen) {
            return None;
        }
        let mut members = vec![a, b];
        members.extend(chosen);
        let mut items = Vec::new();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                items.push(u.pair(Relation::Diff, x, y));
            }
        }
        Some(RawWitness {
            condition: Condition::Clique,
            items,
        })
    }

    fn extend_clique(&self, u: &Universe, cands: &[Fid], need: usize, chosen: &mut Vec<Fid>) -> bool {
        if need == 0 {
            return true;
        }
        for (i, &c) in cands.iter().enumerate() {
            if cands.len() - i < need {
                return false;
            }
            let rest: Vec<Fid> = cands[i + 1..].iter().copied().filter(|&d| self.has_diff(u, c, d)).collect();
            chosen.push(c);
            if self.extend_clique(u, &rest, need - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Variable-level items, which fix the middle-value constraints.
    fn variable_items(&self, u: &Universe) -> Vec<Item<Formula>> {
        self.items
            .iter()
            .filter(|i| i.formulas().iter().all(|&&f| u.is_var(f)))
            .map(|i| u.export(i))
            .collect()
    }
}

struct Instance {
    rule: RuleKind,
    premises: Vec<Item<Fid>>,
    conclusions: Vec<Item<Fid>>,
}

struct Engine<'a> {
    u: &'a Universe,
    config: &'a TableauConfig,
}

impl Engine<'_> {
    /// Non-splitting rule instances having `x` among their premises.
    fn alpha_instances(&self, b: &Branch, x: &Item<Fid>, out: &mut Vec<Instance>) {
        let u = self.u;
        match *x {
            Item::Labelled { label, formula } => {
                if let Some((rule, alts)) = formula_rule(label, &formula, &u.shapes[formula as usize]) {
                    if !rule.is_splitting() {
                        out.push(Instance {
                            rule,
                            premises: vec![x.clone()],
                            conclusions: alts.into_iter().next().unwrap_or_default().into_iter().map(|i| u.canon(i)).collect(),
                        });
                    }
                }
                if label == Label::M {
                    for &parent in &u.parents[formula as usize] {
                        for (rel, adj, rule) in [
                            (Relation::Same, &b.same, RuleKind::OpSame),
                            (Relation::Diff, &b.diff, RuleKind::OpDiff),
                        ] {
                            for &y in &adj[parent as usize] {
                                out.push(Instance {
                                    rule,
                                    premises: vec![u.pair(rel, y, parent), x.clone()],
                                    conclusions: vec![u.pair(rel, y, formula)],
                                });
                            }
                        }
                    }
                }
            }
            Item::Pair { relation, left, right } => {
                let orientations: &[(Fid, Fid)] = if left == right { &[(left, right)] } else { &[(left, right), (right, left)] };
                for &(p, q) in orientations {
                    self.pair_instances(b, x, relation, p, q, out);
                }
            }
        }
    }

    fn pair_instances(&self, b: &Branch, x: &Item<Fid>, rel: Relation, p: Fid, q: Fid, out: &mut Vec<Instance>) {
        let u = self.u;
        match u.shapes[q as usize] {
            Shape::Neg(inner) if self.config.neg_pair_rules => out.push(Instance {
                rule: if rel == Relation::Same { RuleKind::NegSame } else { RuleKind::NegDiff },
                premises: vec![x.clone()],
                conclusions: vec![u.pair(rel, p, inner)],
            }),
            Shape::And(c1, c2) | Shape::Or(c1, c2) => {
                for c in [c1, c2] {
                    if b.label[c as usize] == Some(Label::M) {
                        out.push(Instance {
                            rule: if rel == Relation::Same { RuleKind::OpSame } else { RuleKind::OpDiff },
                            premises: vec![x.clone(), Item::labelled(Label::M, c)],
                            conclusions: vec![u.pair(rel, p, c)],
                        });
                    }
                }
            }
            _ => {}
        }
        // x read as `p rel q` followed by `q ~ z`
        for &z in &b.same[q as usize] {
            if let Some(rule) = self.trans_rule(rel, [p, q, z]) {
                out.push(Instance {
                    rule,
                    premises: vec![x.clone(), u.pair(Relation::Same, q, z)],
                    conclusions: vec![u.pair(rel, p, z)],
                });
            }
        }
        // x read as the `p ~ q` second premise after `w rel p`
        if rel == Relation::Same {
            for (first, adj) in [(Relation::Same, &b.same), (Relation::Diff, &b.diff)] {
                for &w in &adj[p as usize] {
                    if let Some(rule) = self.trans_rule(first, [w, p, q]) {
                        out.push(Instance {
                            rule,
                            premises: vec![u.pair(first, w, p), x.clone()],
                            conclusions: vec![u.pair(first, w, q)],
                        });
                    }
                }
            }
        }
    }

    fn trans_rule(&self, first: Relation, ids: [Fid; 3]) -> Option<RuleKind> {
        let vars = ids.iter().all(|&i| self.u.is_var(i));
        match (first, vars, self.config.tr_rules) {
            (Relation::Same, true, _) => Some(RuleKind::SameTrans),
            (Relation::Diff, true, _) => Some(RuleKind::DiffTrans),
            (Relation::Same, false, true) => Some(RuleKind::SameTr),
            (Relation::Diff, false, true) => Some(RuleKind::DiffTr),
            (_, false, false) => None,
        }
    }

    /// Whether adding `alt` would clash with the branch at once.
    fn clashes(&self, b: &Branch, alt: &[Item<Fid>]) -> bool {
        alt.iter().any(|i| match *i {
            Item::Labelled { label, formula } => b.label[formula as usize].is_some_and(|l| l != label),
            Item::Pair { relation, left, right } => {
                (relation == Relation::Diff && left == right)
                    || b.present.contains(&self.u.pair(relation.opposite(), left, right))
            }
        })
    }

    /// The splitting instance to apply next: fewest alternatives surviving
    /// an immediate clash, then lowest rule index, then the alphabetically
    /// least principal formula.
    fn next_split(&self, b: &Branch) -> Option<(RuleKind, Item<Fid>, Vec<Vec<Item<Fid>>>)> {
        let u = self.u;
        let mut best: Option<((usize, usize, u32), RuleKind, Item<Fid>, Vec<Vec<Item<Fid>>>)> = None;
        for item in &b.items {
            let Item::Labelled { label, formula } = *item else { continue };
            let Some((rule, alts)) = formula_rule(label, &formula, &u.shapes[formula as usize]) else {
                continue;
            };
            if !rule.is_splitting() {
                continue;
            }
            let alts: Vec<Vec<Item<Fid>>> = alts.into_iter().map(|a| a.into_iter().map(|i| u.canon(i)).collect()).collect();
            if alts.iter().any(|a| a.iter().all(|i| b.has(i))) {
                continue;
            }
            let survivors = alts.iter().filter(|a| !self.clashes(b, a)).count();
            let key = (survivors, rule.index(), u.rank[formula as usize]);
            if best.as_ref().is_some_and(|(k, ..)| *k <= key) {
                continue;
            }
            best = Some((key, rule, item.clone(), alts));
        }
        best.map(|(_, rule, item, alts)| (rule, item, alts))
    }

    fn witness(&self, w: RawWitness) -> ClosureWitness {
        ClosureWitness {
            condition: w.condition,
            items: self.u.export_all(&w.items),
        }
    }

    /// Semantic closure of a complete branch that passed the paper conditions.
    fn semantic_witness(&self, b: &Branch) -> Option<ClosureWitness> {
        if self.config.closure.mode != ClosureMode::Semantic {
            return None;
        }
        let items = b.variable_items(self.u);
        if extract::colourable(&items, self.config.closure.capacity) {
            return None;
        }
        let items = items.into_iter().filter(|i| matches!(i, Item::Pair { .. }) || matches!(i, Item::Labelled { label: Label::M, .. })).collect();
        Some(ClosureWitness {
            condition: Condition::Semantic,
            items,
        })
    }

    fn expand(
        &self,
        mut b: Branch,
        entry: Vec<Item<Fid>>,
        mut queue: VecDeque<Item<Fid>>,
        budget: &mut Budget,
    ) -> Result<TableauNode, TableauError> {
        let u = self.u;
        let mut node = TableauNode {
            entry: u.export_all(&entry),
            steps: Vec::new(),
            split: None,
            children: Vec::new(),
            closure: None,
            open_branch: None,
        };
        let capacity = self.config.closure.capacity;
        let mut instances = Vec::new();
        while let Some(x) = queue.pop_front() {
            instances.clear();
            self.alpha_instances(&b, &x, &mut instances);
            for inst in instances.drain(..) {
                let mut fresh: Vec<Item<Fid>> = Vec::new();
                for c in inst.conclusions {
                    if !b.has(&c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
                if fresh.is_empty() {
                    continue;
                }
                budget.spend(fresh.len())?;
                let mut added = Vec::new();
                let mut closed = None;
                for c in fresh {
                    added.push(c.clone());
                    if let Some(w) = b.add(u, c.clone(), capacity) {
                        closed = Some(w);
                        break;
                    }
                    queue.push_back(c);
                }
                node.steps.push(Step {
                    rule: inst.rule,
                    premises: u.export_all(&inst.premises),
                    added: u.export_all(&added),
                });
                if let Some(w) = closed {
                    node.closure = Some(self.witness(w));
                    return Ok(node);
                }
            }
        }

        let Some((rule, principal, alts)) = self.next_split(&b) else {
            if let Some(w) = self.semantic_witness(&b) {
                node.closure = Some(w);
            } else {
                node.open_branch = Some(u.export_all(&b.items));
            }
            return Ok(node);
        };
        node.split = Some(Step {
            rule,
            premises: vec![u.export(&principal)],
            added: Vec::new(),
        });
        for alt in alts {
            let mut child = b.clone();
            let mut entry = Vec::new();
            let mut queue = VecDeque::new();
            let mut closed = None;
            let fresh: Vec<Item<Fid>> = alt.into_iter().filter(|i| !child.has(i)).collect();
            budget.spend(fresh.len())?;
            for item in fresh {
                if child.has(&item) {
                    continue;
                }
                entry.push(item.clone());
                if let Some(w) = child.add(u, item.clone(), capacity) {
                    closed = Some(w);
                    break;
                }
                queue.push_back(item);
            }
            let sub = match closed {
                Some(w) => TableauNode {
                    entry: u.export_all(&entry),
                    steps: Vec::new(),
                    split: None,
                    children: Vec::new(),
                    closure: Some(self.witness(w)),
                    open_branch: None,
                },
                None => self.expand(child, entry, queue, budget)?,
            };
            node.children.push(sub);
        }
        Ok(node)
    }
}

pub(crate) fn saturate(
    roots: &[Item<Formula>],
    config: &TableauConfig,
    budget: &mut Budget,
) -> Result<TableauTree, TableauError> {
    let u = Universe::build(roots.iter().flat_map(|i| i.formulas()));
    let engine = Engine { u: &u, config };
    let mut b = Branch::new(&u);
    let mut entry = Vec::new();
    let mut queue = VecDeque::new();
    for r in roots {
        let item = u.intern_item(r);
        if b.has(&item) {
            continue;
        }
        budget.spend(1)?;
        entry.push(item.clone());
        if let Some(w) = b.add(&u, item.clone(), config.closure.capacity) {
            let root = TableauNode {
                entry: u.export_all(&entry),
                steps: Vec::new(),
                split: None,
                children: Vec::new(),
                closure: Some(engine.witness(w)),
                open_branch: None,
            };
            return Ok(TableauTree {
                roots: roots.to_vec(),
                root,
            });
        }
        queue.push_back(item);
    }
    let root = engine.expand(b, entry, queue, budget)?;
    Ok(TableauTree {
        roots: roots.to_vec(),
        root,
    })
}

fn load(items: &[Item<Formula>], config: &TableauConfig) -> (Universe, Branch, Option<RawWitness>) {
    let u = Universe::build(items.iter().flat_map(|i| i.formulas()));
    let mut b = Branch::new(&u);
    let mut first = None;
    for item in items {
        let item = u.intern_item(item);
        if b.has(&item) {
            continue;
        }
        if let Some(w) = b.add(&u, item, config.closure.capacity) {
            first.get_or_insert(w);
        }
    }
    (u, b, first)
}

pub(crate) fn paper_closure_of(items: &[Item<Formula>], config: &TableauConfig) -> Option<ClosureWitness> {
    let (u, b, w) = load(items, config);
    let engine = Engine { u: &u, config };
    drop(b);
    w.map(|w| engine.witness(w))
}

pub(crate) fn closure_of(items: &[Item<Formula>], config: &TableauConfig) -> Option<ClosureWitness> {
    let (u, b, w) = load(items, config);
    let engine = Engine { u: &u, config };
    if let Some(w) = w {
        return Some(engine.witness(w));
    }
    if engine.complete(&b) {
        engine.semantic_witness(&b)
    } else {
        None
    }
}

pub(crate) fn is_complete(items: &[Item<Formula>], config: &TableauConfig) -> bool {
    let (u, b, _) = load(items, config);
    Engine { u: &u, config }.complete(&b)
}

impl Engine<'_> {
    fn complete(&self, b: &Branch) -> bool {
        let mut instances = Vec::new();
        for x in &b.items {
            self.alpha_instances(b, x, &mut instances);
        }
        instances.iter().all(|i| i.conclusions.iter().all(|c| b.has(c))) && self.next_split(b).is_none()
    }
}
