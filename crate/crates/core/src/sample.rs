//! Seeded random formulas and sequents for property and differential tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Sequent};

/// Random formula generator with fixed connective weights
/// (`~`: 2, `&`: 2, `|`: 2, variable: 3).
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    vars: Vec<String>,
    max_depth: usize,
}

impl Sampler {
    /// Depth at most 3 over `p`, `q`, `r`.
    pub fn new(seed: u64) -> Self {
        Sampler::with(seed, &["p", "q", "r"], 3)
    }

    pub fn with(seed: u64, vars: &[&str], max_depth: usize) -> Self {
        assert!(!vars.is_empty(), "sampler needs at least one variable");
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            vars: vars.iter().map(|v| v.to_string()).collect(),
            max_depth,
        }
    }

    pub fn formula(&mut self) -> Formula {
        self.formula_at(self.max_depth)
    }

    fn formula_at(&mut self, depth: usize) -> Formula {
        let pick = if depth == 0 { 6 } else { self.rng.random_range(0..9) };
        match pick {
            0 | 1 => Formula::neg(self.formula_at(depth - 1)),
            2 | 3 => Formula::and(self.formula_at(depth - 1), self.formula_at(depth - 1)),
            4 | 5 => Formula::or(self.formula_at(depth - 1), self.formula_at(depth - 1)),
            _ => {
                let i = self.rng.random_range(0..self.vars.len());
                Formula::var(self.vars[i].clone())
            }
        }
    }

    pub fn sequent(&mut self) -> Sequent {
        let premise = self.formula();
        let conclusion = self.formula();
        Sequent::new(premise, conclusion)
    }

    pub fn sequents(&mut self, count: usize) -> Vec<Sequent> {
        (0..count).map(|_| self.sequent()).collect()
    }
}

/// `count` sequents from a fresh default sampler.
pub fn sample_sequents(seed: u64, count: usize) -> Vec<Sequent> {
    Sampler::new(seed).sequents(count)
}
