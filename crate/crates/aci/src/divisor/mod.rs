//! Divisor curves: level constraints on Laurent families, sampled points and
//! fitted plane relations.

pub mod fit;
pub mod levels;
pub mod samples;

pub use fit::{fit_curve, lift_quotient, quotient_curve, snap_coefficient, verify_membership, Basis, CurveReport, DivisorSample, FittedCurve};
pub use levels::{impose_levels, ImposedLevels};
pub use samples::{circle_points, read_samples_csv, relation_roots, samples_along_branch, samples_at, univariate, write_samples_csv};
