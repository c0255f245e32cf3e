use std::fmt::Write as _;

use serde::Serialize;

use super::{find_demorgan_negations, Element, Lattice};

/// Structural dump of a lattice for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInfo {
    pub id: String,
    pub symbolic: bool,
    pub elements: Vec<String>,
    /// Strict order pairs `(a, b)` with `a < b`.
    pub order: Vec<(String, String)>,
    /// Installed negation as `(a, neg a)`, if any.
    pub negation: Option<Vec<(String, String)>>,
    /// Whether the installed negation is a De Morgan involution.
    pub installed_is_demorgan: Option<bool>,
    pub demorgan_negations: Vec<Vec<(String, String)>>,
}

impl LatticeInfo {
    pub fn of(l: &Lattice) -> Self {
        let Some(t) = l.table() else {
            return LatticeInfo {
                id: l.id().into(),
                symbolic: true,
                elements: vec!["Bot".into(), "Mid-k (k >= 1)".into(), "Top".into()],
                order: vec![
                    ("Bot".into(), "Mid-k".into()),
                    ("Mid-k".into(), "Top".into()),
                    ("Bot".into(), "Top".into()),
                ],
                negation: Some(vec![
                    ("Bot".into(), "Top".into()),
                    ("Mid-k".into(), "Mid-k".into()),
                    ("Top".into(), "Bot".into()),
                ]),
                installed_is_demorgan: Some(true),
                demorgan_negations: Vec::new(),
            };
        };
        let name = |e: Element| l.name(e);
        let elements: Vec<String> = t.elements.iter().map(|&e| name(e)).collect();
        let mut order = Vec::new();
        for (i, &a) in t.elements.iter().enumerate() {
            for (j, &b) in t.elements.iter().enumerate() {
                if i != j && t.leq[i][j] {
                    order.push((name(a), name(b)));
                }
            }
        }
        let negation = t.neg.as_ref().map(|neg| {
            neg.iter()
                .enumerate()
                .map(|(i, &j)| (name(t.elements[i]), name(t.elements[j])))
                .collect::<Vec<_>>()
        });
        let found = find_demorgan_negations(l).expect("finite lattice");
        let installed_is_demorgan = t.neg.as_ref().map(|neg| {
            let images: Vec<Element> = neg.iter().map(|&j| t.elements[j]).collect();
            found.iter().any(|m| m.images == images)
        });
        let demorgan_negations = found
            .iter()
            .map(|m| {
                t.elements
                    .iter()
                    .zip(&m.images)
                    .map(|(&a, &b)| (name(a), name(b)))
                    .collect()
            })
            .collect();
        LatticeInfo {
            id: l.id().into(),
            symbolic: false,
            elements,
            order,
            negation,
            installed_is_demorgan,
            demorgan_negations,
        }
    }

    pub fn render(&self) -> String {
        let map = |pairs: &[(String, String)], sep: &str| {
            pairs
                .iter()
                .map(|(a, b)| format!("{a}{sep}{b}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        let _ = writeln!(out, "lattice: {}", self.id);
        let _ = writeln!(out, "elements: {}", self.elements.join(", "));
        let _ = writeln!(out, "order: {}", map(&self.order, " < "));
        match &self.negation {
            Some(n) => {
                let _ = writeln!(out, "negation: {}", map(n, " -> "));
            }
            None => {
                let _ = writeln!(out, "negation: none installed");
            }
        }
        if let Some(ok) = self.installed_is_demorgan {
            let _ = writeln!(out, "De Morgan check: {}", if ok { "pass" } else { "fail" });
        }
        if self.symbolic {
            let _ = writeln!(out, "De Morgan negations: not enumerable (symbolic carrier)");
        } else if self.demorgan_negations.is_empty() {
            let _ = writeln!(out, "De Morgan negations: none");
        } else {
            let _ = writeln!(out, "De Morgan negations: {}", self.demorgan_negations.len());
            for m in &self.demorgan_negations {
                let _ = writeln!(out, "  {}", map(m, " -> "));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder5_reports_none() {
        let text = LatticeInfo::of(&Lattice::ladder5()).render();
        assert!(text.contains("De Morgan negations: none"));
        assert!(text.contains("negation: none installed"));
    }

    #[test]
    fn m2_dump() {
        let info = LatticeInfo::of(&Lattice::mn(2).unwrap());
        assert_eq!(info.elements, ["F", "B", "N", "T"]);
        assert_eq!(info.installed_is_demorgan, Some(true));
        assert_eq!(info.order.len(), 5);
    }
}
