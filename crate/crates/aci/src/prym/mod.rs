//! Involutions on homology and the splitting of a Jacobian period matrix
//! into its invariant part and the Prym variety.

pub mod involution;
pub mod lattice;
pub mod split;

pub use involution::{involution_on_homology, normal_form_basis, normal_form_matrix, InvolutionData, VariableAction};
pub use split::{
    adapt_basis, canonical_form, lattice_intersection_count, polarization_from_divisor, reduction_matrix, split_periods, AdaptedPeriods,
    BlockResiduals, PrymSplit,
};
