//! Ground-truth matrix semantics: evaluation and brute-force entailment.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Sequent};
use crate::lattice::{Element, Lattice, LatticeError, Matrix};

pub const DEFAULT_VAR_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("valuation has no binding for variable `{0}`")]
    MissingVariable(String),
    #[error("sequent has {count} variables, above the cap of {cap} (raise --var-cap to override)")]
    VarCap { count: usize, cap: usize },
    #[error("{0} has a symbolic carrier; use the tableau prover instead")]
    Symbolic(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Assignment of lattice elements to variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(BTreeMap<String, Element>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, var: impl Into<String>, value: Element) {
        self.0.insert(var.into(), value);
    }

    pub fn get(&self, var: &str) -> Option<Element> {
        self.0.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Element)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `p=B, q=0` using the lattice's element names.
    pub fn display_in(&self, l: &Lattice) -> String {
        self.0
            .iter()
            .map(|(var, &e)| format!("{var}={}", l.name(e)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Element names keyed by variable, for JSON output.
    pub fn named(&self, l: &Lattice) -> BTreeMap<String, String> {
        self.0.iter().map(|(var, &e)| (var.clone(), l.name(e))).collect()
    }
}

impl FromIterator<(String, Element)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, Element)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, e)| format!("{v}={e}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Homomorphic evaluation of `f` under `v`.
pub fn eval(l: &Lattice, v: &Valuation, f: &Formula) -> Result<Element, OracleError> {
    Ok(match f {
        Formula::Var(name) => {
            let e = v.get(name).ok_or_else(|| OracleError::MissingVariable(name.clone()))?;
            if !l.contains(e) {
                return Err(LatticeError::UnknownElement {
                    lattice: l.id().into(),
                    element: e.to_string(),
                }
                .into());
            }
            e
        }
        Formula::Neg(a) => l.neg(eval(l, v, a)?)?,
        Formula::And(a, b) => l.meet(eval(l, v, a)?, eval(l, v, b)?)?,
        Formula::Or(a, b) => l.join(eval(l, v, a)?, eval(l, v, b)?)?,
    })
}

/// Whether `v` designates the premise but not the conclusion.
pub fn refutes(m: &Matrix, v: &Valuation, s: &Sequent) -> Result<bool, OracleError> {
    Ok(m.designated(eval(&m.lattice, v, &s.premise)?) && !m.designated(eval(&m.lattice, v, &s.conclusion)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    pub countermodel: Option<Valuation>,
    /// Number of valuations examined before the verdict was reached.
    pub examined: u64,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Neg,
    And,
    Or,
}

fn compile(f: &Formula, vars: &[String], out: &mut Vec<Op>) {
    match f {
        Formula::Var(name) => out.push(Op::Var(
            vars.binary_search(name).expect("variables collected from the sequent"),
        )),
        Formula::Neg(a) => {
            compile(a, vars, out);
            out.push(Op::Neg);
        }
        Formula::And(a, b) => {
            compile(a, vars, out);
            compile(b, vars, out);
            out.push(Op::And);
        }
        Formula::Or(a, b) => {
            compile(a, vars, out);
            compile(b, vars, out);
            out.push(Op::Or);
        }
    }
}

fn run(ops: &[Op], assignment: &[usize], meet: &[Vec<usize>], join: &[Vec<usize>], neg: &[usize], stack: &mut Vec<usize>) -> usize {
    stack.clear();
    for op in ops {
        match *op {
            Op::Var(i) => stack.push(assignment[i]),
            Op::Neg => {
                let a = stack.pop().expect("well-formed program");
                stack.push(neg[a]);
            }
            Op::And | Op::Or => {
                let b = stack.pop().expect("well-formed program");
                let a = stack.pop().expect("well-formed program");
                let table = if matches!(op, Op::And) { meet } else { join };
                stack.push(table[a][b]);
            }
        }
    }
    stack.pop().expect("well-formed program")
}

/// Exhaustive entailment checker over finite matrices.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub var_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            var_cap: DEFAULT_VAR_CAP,
        }
    }
}

impl Oracle {
    pub fn with_var_cap(var_cap: usize) -> Self {
        Oracle { var_cap }
    }

    /// Enumerates every valuation of the sequent's variables (alphabetical,
    /// first variable most significant, elements in carrier order) and
    /// returns the first refutation found.
    pub fn entails(&self, m: &Matrix, s: &Sequent) -> Result<Verdict, OracleError> {
        let table = m
            .lattice
            .table()
            .ok_or_else(|| OracleError::Symbolic(m.lattice.id().into()))?;
        let neg = table
            .neg
            .as_ref()
            .ok_or_else(|| LatticeError::NoNegation(m.lattice.id().into()))?;
        let vars: Vec<String> = s.variables().into_iter().collect();
        if vars.len() > self.var_cap {
            return Err(OracleError::VarCap {
                count: vars.len(),
                cap: self.var_cap,
            });
        }
        let mut premise = Vec::new();
        compile(&s.premise, &vars, &mut premise);
        let mut conclusion = Vec::new();
        compile(&s.conclusion, &vars, &mut conclusion);
        let designated: Vec<bool> = table.elements.iter().map(|&e| m.designated(e)).collect();

        let size = table.elements.len();
        let mut assignment = vec![0usize; vars.len()];
        let mut stack = Vec::new();
        let mut examined = 0u64;
        loop {
            examined += 1;
            let p = run(&premise, &assignment, &table.meet, &table.join, neg, &mut stack);
            if designated[p] {
                let c = run(&conclusion, &assignment, &table.meet, &table.join, neg, &mut stack);
                if !designated[c] {
                    let countermodel = vars
                        .iter()
                        .zip(&assignment)
                        .map(|(v, &i)| (v.clone(), table.elements[i]))
                        .collect::<Valuation>();
                    debug_assert!(refutes(m, &countermodel, s).unwrap_or(false));
                    return Ok(Verdict {
                        valid: false,
                        countermodel: Some(countermodel),
                        examined,
                    });
                }
            }
            // odometer, last variable fastest
            let mut pos = vars.len();
            loop {
                if pos == 0 {
                    return Ok(Verdict {
                        valid: true,
                        countermodel: None,
                        examined,
                    });
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < size {
                    break;
                }
                assignment[pos] = 0;
            }
        }
    }

    /// Runs [`Oracle::entails`] on every matrix; results keep the input order.
    pub fn entails_all(&self, matrices: &[Matrix], s: &Sequent) -> Vec<Result<Verdict, OracleError>> {
        matrices.par_iter().map(|m| self.entails(m, s)).collect()
    }
}
