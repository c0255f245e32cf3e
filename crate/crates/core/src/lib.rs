//! Decision procedures for ETL- and NFL-like logics over the flat lattices
//! `Mn` and `Mω`: a brute-force matrix oracle, a labelled analytic tableau
//! prover with countermodel extraction, and a differential harness that
//! checks one against the other.

pub mod corpus;
pub mod diff;
pub mod formula;
pub mod lattice;
pub mod oracle;
pub mod sample;
pub mod tableau;

pub use formula::{Formula, Sequent};
pub use lattice::{Capacity, Element, Lattice, Logic, Matrix};
pub use oracle::{Oracle, Valuation, Verdict};
