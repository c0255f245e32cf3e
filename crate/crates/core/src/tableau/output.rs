use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{Outcome, ProofResult, TableauNode, TableauTree};
use crate::lattice::Capacity;

/// The tree as JSON; `serde_json::from_value` reads it back.
pub fn to_proof_json(tree: &TableauTree) -> Value {
    serde_json::to_value(tree).expect("trees serialize")
}

/// Full proof document: `{sequent, logic, lattice, mode, result, trees,
/// countermodel?}`.
pub fn proof_json(r: &ProofResult) -> Value {
    let lattice = r.config.lattice();
    let mut doc = json!({
        "sequent": r.sequent.render(),
        "logic": r.logic,
        "lattice": lattice_id(r.config.closure.capacity),
        "mode": r.config.closure.mode,
        "result": r.result_name(),
        "trees": r.trees.iter().map(to_proof_json).collect::<Vec<_>>(),
    });
    if let Outcome::Refuted { countermodel, .. } = &r.outcome {
        doc["countermodel"] = json!(countermodel.named(&lattice));
    }
    if let Outcome::Unrealised { branch } = &r.outcome {
        doc["open_branch"] = json!(branch.iter().map(|i| i.to_string()).collect::<Vec<_>>());
    }
    doc
}

fn lattice_id(c: Capacity) -> String {
    match c {
        Capacity::Finite(n) => format!("m{n}"),
        Capacity::Omega => "momega".into(),
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: one node per branch segment, split edges labelled
/// with the rule, closed leaves marked with their condition.
pub fn to_dot(tree: &TableauTree) -> String {
    let mut out = String::from("digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n");
    let mut counter = 0usize;
    emit(&tree.root, &mut out, &mut counter);
    out.push_str("}\n");
    out
}

fn emit(node: &TableauNode, out: &mut String, counter: &mut usize) -> usize {
    let id = *counter;
    *counter += 1;
    let mut lines: Vec<String> = node.entry.iter().map(|i| i.to_string()).collect();
    for s in &node.steps {
        for a in &s.added {
            lines.push(format!("{a}  ({})", s.rule));
        }
    }
    if let Some(c) = &node.closure {
        lines.push(format!("closed: {}", c.condition));
    } else if node.open_branch.is_some() {
        lines.push("open".into());
    }
    let label: String = lines.iter().map(|l| format!("{}\\l", escape(l))).collect();
    let style = match (&node.closure, &node.open_branch) {
        (Some(_), _) => ", color=gray40",
        (None, Some(_)) => ", color=red, penwidth=2",
        _ => "",
    };
    let _ = writeln!(out, "  n{id} [label=\"{label}\"{style}];");
    let rule = node.split.as_ref().map(|s| s.rule.to_string()).unwrap_or_default();
    for child in &node.children {
        let cid = emit(child, out, counter);
        let _ = writeln!(out, "  n{id} -> n{cid} [label=\"{rule}\"];");
    }
    id
}
