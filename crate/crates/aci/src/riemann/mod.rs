//! Branch points, homology and period matrices of hyperelliptic curves.

pub mod cycles;
pub mod elliptic;
pub mod model;
pub mod periods;
pub mod quadrature;

pub use cycles::{build_cycles, symplectic_basis, CycleSet, Edge};
pub use elliptic::{agm, complete_k, same_modulus, sl2z_reduce};
pub use model::{branch_points, hurwitz_genus, CoverData, DifferentialBasis, HyperellipticModel};
pub use periods::{period_matrix, PeriodJson, PeriodMatrix, PeriodOptions};
pub use quadrature::{integrate_adaptive, GaussLegendre, Quadrature};
