//! Differential harness: tableau verdicts (both closure modes) against the
//! oracle on seeded random sequents, the corpus and the five-cycle sequent.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{c5_sequent, corpus};
use crate::formula::Sequent;
use crate::lattice::{Capacity, Lattice, Logic, Matrix};
use crate::oracle::{self, Oracle};
use crate::sample::sample_sequents;
use crate::tableau::{self, ClosureMode, Outcome, TableauConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableauVerdict {
    Proved,
    Refuted,
    Unrealised,
    Error,
}

impl TableauVerdict {
    /// Whether this verdict matches an oracle validity flag.
    pub fn agrees(self, valid: bool) -> bool {
        match self {
            TableauVerdict::Proved => valid,
            TableauVerdict::Refuted => !valid,
            TableauVerdict::Unrealised | TableauVerdict::Error => false,
        }
    }
}

impl fmt::Display for TableauVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableauVerdict::Proved => "proved",
            TableauVerdict::Refuted => "refuted",
            TableauVerdict::Unrealised => "unrealised",
            TableauVerdict::Error => "error",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DiffConfig {
    pub logic: Logic,
    pub n: u32,
    pub samples: usize,
    pub seed: u64,
    /// Settings shared by both runs; the closure mode is overridden.
    pub tableau: TableauConfig,
    pub oracle: Oracle,
    pub include_corpus: bool,
}

impl DiffConfig {
    pub fn new(logic: Logic, n: u32) -> Self {
        DiffConfig {
            logic,
            n,
            samples: 1000,
            seed: 0,
            tableau: TableauConfig::new(Capacity::Finite(n)),
            oracle: Oracle::default(),
            include_corpus: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub source: String,
    pub sequent: Sequent,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub source: String,
    pub sequent: Sequent,
    pub oracle_valid: Option<bool>,
    pub paper: TableauVerdict,
    pub semantic: TableauVerdict,
    /// A tableau countermodel that failed to refute under the oracle.
    pub bad_countermodel: bool,
}

impl CaseResult {
    pub fn paper_agrees(&self) -> bool {
        self.oracle_valid.is_some_and(|v| self.paper.agrees(v))
    }

    pub fn semantic_agrees(&self) -> bool {
        self.oracle_valid.is_some_and(|v| self.semantic.agrees(v))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffReport {
    pub matrix: String,
    pub samples: usize,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

/// Seeded samples, then the corpus, then the five-cycle sequent.
pub fn cases(samples: usize, seed: u64, include_corpus: bool) -> Vec<Case> {
    let mut out: Vec<Case> = sample_sequents(seed, samples)
        .into_iter()
        .enumerate()
        .map(|(i, s)| Case {
            source: format!("sample#{i}"),
            sequent: s,
        })
        .collect();
    if include_corpus {
        out.extend(corpus().into_iter().map(|e| Case {
            source: e.name,
            sequent: e.sequent,
        }));
    }
    out.push(Case {
        source: "C5".into(),
        sequent: c5_sequent(),
    });
    out
}

fn verdict(r: &Result<tableau::ProofResult, tableau::TableauError>, m: &Matrix) -> (TableauVerdict, bool) {
    match r {
        Err(_) => (TableauVerdict::Error, false),
        Ok(p) => match &p.outcome {
            Outcome::Proved => (TableauVerdict::Proved, false),
            Outcome::Unrealised { .. } => (TableauVerdict::Unrealised, false),
            Outcome::Refuted { countermodel, .. } => {
                let genuine = oracle::refutes(m, countermodel, &p.sequent).unwrap_or(false);
                (TableauVerdict::Refuted, !genuine)
            }
        },
    }
}

/// Runs one sequent through the oracle and both closure modes.
pub fn run_case(case: &Case, config: &DiffConfig, matrix: &Matrix) -> CaseResult {
    let oracle_valid = config.oracle.entails(matrix, &case.sequent).ok().map(|v| v.valid);
    let paper = tableau::prove(&case.sequent, config.logic, &config.tableau.mode(ClosureMode::Paper));
    let semantic = tableau::prove(&case.sequent, config.logic, &config.tableau.mode(ClosureMode::Semantic));
    let (paper, bad_p) = verdict(&paper, matrix);
    let (semantic, bad_s) = verdict(&semantic, matrix);
    CaseResult {
        source: case.source.clone(),
        sequent: case.sequent.clone(),
        oracle_valid,
        paper,
        semantic,
        bad_countermodel: bad_p || bad_s,
    }
}

/// Runs every case; the result order follows [`cases`] regardless of the
/// thread count.
pub fn run(config: &DiffConfig) -> DiffReport {
    let lattice = Lattice::mn(config.n.max(1)).expect("n >= 1");
    let matrix = Matrix::new(lattice, config.logic).expect("Mn carries negation");
    let all = cases(config.samples, config.seed, config.include_corpus);
    let results = all.par_iter().map(|c| run_case(c, config, &matrix)).collect();
    DiffReport {
        matrix: matrix.name(),
        samples: config.samples,
        seed: config.seed,
        cases: results,
    }
}

impl DiffReport {
    pub fn semantic_agreement(&self) -> usize {
        self.cases.iter().filter(|c| c.semantic_agrees()).count()
    }

    pub fn paper_agreement(&self) -> usize {
        self.cases.iter().filter(|c| c.paper_agrees()).count()
    }

    pub fn fully_agrees(&self) -> bool {
        self.semantic_agreement() == self.cases.len() && !self.cases.iter().any(|c| c.bad_countermodel)
    }

    pub fn c5(&self) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.source == "C5")
    }

    /// Divergent cases for one mode, smallest sequents first, one per
    /// distinct sequent.
    pub fn witnesses(&self, mode: ClosureMode) -> Vec<&CaseResult> {
        let mut out: Vec<&CaseResult> = self
            .cases
            .iter()
            .filter(|c| match mode {
                ClosureMode::Paper => !c.paper_agrees(),
                ClosureMode::Semantic => !c.semantic_agrees(),
            })
            .collect();
        out.sort_by_key(|c| (c.sequent.size(), c.sequent.render()));
        out.dedup_by(|a, b| a.sequent == b.sequent);
        out
    }

    pub fn render(&self) -> String {
        let total = self.cases.len();
        let pct = |k: usize| 100.0 * k as f64 / total.max(1) as f64;
        let mut out = String::new();
        let _ = writeln!(out, "matrix: {}", self.matrix);
        let _ = writeln!(out, "cases: {} ({} samples, seed {}, corpus, C5)", total, self.samples, self.seed);
        let valid = self.cases.iter().filter(|c| c.oracle_valid == Some(true)).count();
        let _ = writeln!(out, "oracle valid: {valid}");
        let s = self.semantic_agreement();
        let p = self.paper_agreement();
        let _ = writeln!(out, "semantic agreement: {s}/{total} ({:.2}%)", pct(s));
        let _ = writeln!(out, "paper agreement: {p}/{total} ({:.2}%)", pct(p));
        let bad = self.cases.iter().filter(|c| c.bad_countermodel).count();
        let _ = writeln!(out, "countermodels failing re-evaluation: {bad}");
        if let Some(c) = self.c5() {
            let oracle = match c.oracle_valid {
                Some(true) => "valid",
                Some(false) => "invalid",
                None => "n/a",
            };
            let _ = writeln!(out, "C5: oracle {oracle}, paper {}, semantic {}", c.paper, c.semantic);
        }
        for mode in [ClosureMode::Semantic, ClosureMode::Paper] {
            let w = self.witnesses(mode);
            if w.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{mode} divergences: {}", w.len());
            for c in w {
                let got = if mode == ClosureMode::Paper { c.paper } else { c.semantic };
                let oracle = match c.oracle_valid {
                    Some(true) => "valid",
                    Some(false) => "invalid",
                    None => "n/a",
                };
                let _ = writeln!(out, "  [{}] {}  oracle {oracle}, tableau {got}", c.source, c.sequent);
            }
        }
        out
    }
}
