//! Painleve analysis, divisor curves and Prym period matrices for
//! algebraically completely integrable Hamiltonian systems.
//!
//! The modules follow the pipeline order: [`algebra`] provides the exact
//! arithmetic, [`painleve`] grows Laurent families, [`divisor`] extracts the
//! curves along which they blow up, [`riemann`] computes period matrices of
//! hyperelliptic models, [`prym`] splits them along an involution and
//! [`dynamics`] holds the concrete systems and their flows. [`pipeline`] runs
//! all of it on one system and [`cli`] is the command line.

pub mod algebra;
pub mod cli;
pub mod divisor;
pub mod dynamics;
pub mod error;
pub mod painleve;
pub mod pipeline;
pub mod prym;
pub mod riemann;

pub use error::{Error, Result};
