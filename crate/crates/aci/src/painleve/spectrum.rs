use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{linalg, Complex64, Field, Qi};
use crate::error::{Error, Result};

use super::balance::{Balance, BalanceMap};
use super::system::HamiltonianSystem;
use super::weights::{weighted_degree, weighted_part};

const INTEGER_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct Resonance {
    pub k: i64,
    pub multiplicity: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantDegree {
    pub name: String,
    pub degree: i64,
    /// False when the leading gradient vanishes at the balance, in which
    /// case the degree need not be an eigenvalue.
    pub applies: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KowalewskiSpectrum {
    #[serde(serialize_with = "crate::painleve::ser_cmat")]
    pub matrix: DMatrix<Complex64>,
    #[serde(skip)]
    pub exact_matrix: Option<linalg::Mat<Qi>>,
    #[serde(serialize_with = "crate::painleve::ser_cvec")]
    pub eigenvalues: Vec<Complex64>,
    pub resonances: Vec<Resonance>,
    pub free_parameter_count: usize,
    pub invariant_degrees: Vec<InvariantDegree>,
}

impl KowalewskiSpectrum {
    pub fn resonance(&self, k: i64) -> Option<&Resonance> {
        self.resonances.iter().find(|r| r.k == k)
    }

    pub fn max_resonance(&self) -> i64 {
        self.resonances.iter().map(|r| r.k).max().unwrap_or(0)
    }

    /// Eigenvalues rounded to integers where they are integers.
    pub fn integer_eigenvalues(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.eigenvalues.iter().filter_map(|&z| as_integer(z)).collect();
        v.sort();
        v
    }
}

fn as_integer(z: Complex64) -> Option<i64> {
    let r = z.re.round();
    ((z.re - r).abs() <= INTEGER_TOL && z.im.abs() <= INTEGER_TOL).then_some(r as i64)
}

fn shifted<T: Clone + std::ops::Sub<Output = T>>(a: &[Vec<T>], k: T) -> Vec<Vec<T>> {
    a.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, v)| if i == j { v.clone() - k.clone() } else { v.clone() }).collect())
        .collect()
}

/// Spectrum of `L = d f_top(x0) + diag(nu)` with resonance bookkeeping.
pub fn kowalewski_spectrum(system: &HamiltonianSystem, balance: &Balance) -> Result<KowalewskiSpectrum> {
    if balance.residual > 1e-10 {
        return Err(Error::NoBalance(format!("balance residual {:e} above 1e-10", balance.residual)));
    }
    let nu = &balance.weights;
    let map = BalanceMap::new(system, nu);
    let matrix = map.jacobian(&balance.x0);
    let exact_matrix = match &balance.exact {
        Some(q) => Some(map.jacobian_exact(q)?),
        None => None,
    };
    let eigenvalues = linalg::eigenvalues(&matrix)?;
    let mut ints: Vec<i64> = eigenvalues.iter().filter_map(|&z| as_integer(z)).collect();
    ints.sort();
    if !ints.contains(&-1) {
        return Err(Error::Numerical("-1 is not an eigenvalue of the Kowalewski matrix".into()));
    }
    let m = matrix.nrows();
    let mut resonances = Vec::new();
    let mut ks: Vec<i64> = ints.iter().copied().filter(|&k| k >= 0).collect();
    ks.dedup();
    for k in ks {
        let multiplicity = ints.iter().filter(|&&v| v == k).count();
        let kernel_dim = match &exact_matrix {
            Some(l) => m - linalg::rank(&shifted(l, Qi::from_i64(k))),
            None => {
                let shifted = &matrix - DMatrix::<Complex64>::identity(m, m) * Complex64::new(k as f64, 0.0);
                linalg::svd_null_space(&shifted, 1e-8).0.len()
            }
        };
        if kernel_dim < multiplicity {
            return Err(Error::DefectiveResonance { k, geometric: kernel_dim, algebraic: multiplicity });
        }
        resonances.push(Resonance { k, multiplicity, kernel_dim });
    }
    let mut invariant_degrees = Vec::new();
    for (idx, h) in system.invariants.iter().enumerate() {
        let name = system.invariant_names.get(idx).cloned().unwrap_or_else(|| format!("H{}", idx + 1));
        let Some(degree) = weighted_degree(h, nu) else { continue };
        let lead = weighted_part(h, nu, degree).to_float();
        let grad: f64 = lead.gradient().iter().map(|d| d.eval_c64(&balance.x0).norm()).fold(0.0, f64::max);
        let applies = grad > 1e-8;
        if applies && !ints.contains(&degree) {
            return Err(Error::Numerical(format!("{name} has weighted degree {degree}, which is not an eigenvalue")));
        }
        invariant_degrees.push(InvariantDegree { name, degree, applies });
    }
    let free_parameter_count = resonances.iter().map(|r| r.kernel_dim).sum();
    Ok(KowalewskiSpectrum { matrix, exact_matrix, eigenvalues, resonances, free_parameter_count, invariant_degrees })
}
