//! Weight homogeneity, leading balances, Kowalewski exponents and Laurent
//! families of polynomial vector fields.

pub mod balance;
pub mod family;
pub mod spectrum;
pub mod system;
pub mod weights;

pub use balance::{branches, continue_balance, exact_branch_point, solve_balances, Balance, BalanceMap, BalanceOptions};
pub use family::{exact_families, expand_family, expand_family_float, poly_negligible, FamilyReport, FoundFamily, LaurentFamily};
pub use spectrum::{kowalewski_spectrum, KowalewskiSpectrum, Resonance};
pub use system::{FamilyHints, HamiltonianSystem, SystemJson};
pub use weights::{check_weights, detect_weights, top_field, weighted_degree, weighted_part};

use nalgebra::DMatrix;
use serde::ser::{SerializeSeq, Serializer};

use crate::algebra::{Complex64, Qi};

pub(crate) fn ser_cvec<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

pub(crate) fn ser_qvec_opt<S: Serializer>(v: &Option<Vec<Qi>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(v) => {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&q.to_string())?;
            }
            seq.end()
        }
    }
}

pub(crate) fn ser_cmat<S: Serializer>(m: &DMatrix<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for i in 0..m.nrows() {
        let row: Vec<[f64; 2]> = (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}
