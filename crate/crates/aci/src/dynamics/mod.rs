//! The worked systems, their flows and the end-to-end pipeline.

pub mod flow;
pub mod registry;
pub mod seed;

pub use flow::{canonical_matrix, hamiltonian_vector_field, integrate, integrate_between, poisson_bracket, real_state, IntegratorOptions, Trajectory};
pub use registry::{lookup, SystemDefinition, SYSTEMS};
pub use seed::{laurent_seed, seed_check, SeedCheck};
