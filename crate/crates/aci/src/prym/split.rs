use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::Complex64;
use crate::error::{Error, Result};
use crate::painleve::ser_cmat;

use super::involution::{normal_form_basis, InvolutionData};
use super::lattice::{index_in_full, integer_kernel, IMat};

const BLOCK_TOL: f64 = 1e-8;

/// Periods over the adapted basis, rows reordered so that the
/// anti-invariant differentials come first.
#[derive(Clone, Debug, Serialize)]
pub struct AdaptedPeriods {
    #[serde(serialize_with = "ser_cmat")]
    pub omega: DMatrix<Complex64>,
    /// Symplectic change of basis (columns are new cycles in old ones).
    pub t: IMat,
    /// For each row of `omega`, the index of the original differential.
    pub row_order: Vec<usize>,
    pub g0: usize,
    pub n: usize,
}

pub fn adapt_basis(inv: &InvolutionData, om: &DMatrix<Complex64>) -> Result<AdaptedPeriods> {
    let t = normal_form_basis(&inv.m, inv.g0)?;
    let g = inv.g;
    let mut row_order: Vec<usize> = (0..g).filter(|&i| inv.s[i] == -1).collect();
    row_order.extend((0..g).filter(|&i| inv.s[i] == 1));
    let omega = DMatrix::from_fn(g, 2 * g, |i, c| (0..2 * g).map(|k| om[(row_order[i], k)] * t[k][c] as f64).sum());
    Ok(AdaptedPeriods { omega, t, row_order, g0: inv.g0, n: inv.n })
}

/// Residuals of the six block identities `C = -A, F = -D, H = 0, I = G,
/// K = 0, L = J`, in that order.
#[derive(Clone, Debug, Serialize)]
pub struct BlockResiduals {
    pub c_plus_a: f64,
    pub f_plus_d: f64,
    pub h: f64,
    pub i_minus_g: f64,
    pub k: f64,
    pub l_minus_j: f64,
}

impl BlockResiduals {
    pub fn max(&self) -> f64 {
        [self.c_plus_a, self.f_plus_d, self.h, self.i_minus_g, self.k, self.l_minus_j].into_iter().fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrymSplit {
    #[serde(serialize_with = "ser_cmat")]
    pub delta: DMatrix<Complex64>,
    #[serde(serialize_with = "ser_cmat")]
    pub gamma: DMatrix<Complex64>,
    #[serde(serialize_with = "ser_cmat")]
    pub gamma_star: DMatrix<Complex64>,
    /// Polarization type of the Prym lattice, ascending.
    pub delta_delta: Vec<i64>,
    #[serde(serialize_with = "ser_cmat")]
    pub z: DMatrix<Complex64>,
    pub z_symmetry: f64,
    pub z_min_imaginary_eigenvalue: f64,
    /// `(g, g0, dim Prym)`.
    pub dims: (usize, usize, usize),
    pub blocks: BlockResiduals,
    /// Index of the lattice of the reduced matrix `(Gamma 0; 0 2 Delta)` in the
    /// period lattice.
    pub reduced_lattice_index: u64,
    pub intersection_count: u64,
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Reads the blocks of the adapted period matrix and builds `Delta = (G J)`,
/// `Gamma = (2A B 2D E)` and `Gamma* = (A B D E)`.
pub fn split_periods(adapted: &AdaptedPeriods, inv: &InvolutionData) -> Result<PrymSplit> {
    let (g0, n) = (adapted.g0, adapted.n);
    let g = 2 * g0 + n - 1;
    let p = g0 + n - 1;
    let om = &adapted.omega;
    let scale = max_abs(om).max(1e-300);
    let blk = |r0: usize, nr: usize, c0: usize, nc: usize| om.view((r0, c0), (nr, nc)).into_owned();
    let (a, b, c) = (blk(0, p, 0, g0), blk(0, p, g0, n - 1), blk(0, p, g0 + n - 1, g0));
    let (d, e, f) = (blk(0, p, g, g0), blk(0, p, g + g0, n - 1), blk(0, p, g + g0 + n - 1, g0));
    let (gm, h, i) = (blk(p, g0, 0, g0), blk(p, g0, g0, n - 1), blk(p, g0, g0 + n - 1, g0));
    let (j, k, l) = (blk(p, g0, g, g0), blk(p, g0, g + g0, n - 1), blk(p, g0, g + g0 + n - 1, g0));
    let blocks = BlockResiduals {
        c_plus_a: max_abs(&(&c + &a)) / scale,
        f_plus_d: max_abs(&(&f + &d)) / scale,
        h: max_abs(&h) / scale,
        i_minus_g: max_abs(&(&i - &gm)) / scale,
        k: max_abs(&k) / scale,
        l_minus_j: max_abs(&(&l - &j)) / scale,
    };
    if blocks.max() > BLOCK_TOL {
        return Err(Error::Split(format!("block identities fail by {:e}", blocks.max())));
    }
    let mut delta = DMatrix::zeros(g0, 2 * g0);
    delta.view_mut((0, 0), (g0, g0)).copy_from(&gm);
    delta.view_mut((0, g0), (g0, g0)).copy_from(&j);
    let mut gamma_star = DMatrix::zeros(p, 2 * p);
    gamma_star.view_mut((0, 0), (p, g0)).copy_from(&a);
    gamma_star.view_mut((0, g0), (p, n - 1)).copy_from(&b);
    gamma_star.view_mut((0, p), (p, g0)).copy_from(&d);
    gamma_star.view_mut((0, p + g0), (p, n - 1)).copy_from(&e);
    let mut gamma = gamma_star.clone();
    for col in (0..g0).chain(p..p + g0) {
        for r in 0..p {
            gamma[(r, col)] *= 2.0;
        }
    }
    let (delta_delta, z) = canonical_form(&gamma, g0, n)?;
    let z_symmetry = max_abs(&(&z - z.transpose()));
    let z_min_imaginary_eigenvalue = min_im_eigen(&z);
    Ok(PrymSplit {
        delta,
        gamma,
        gamma_star,
        delta_delta,
        z,
        z_symmetry,
        z_min_imaginary_eigenvalue,
        dims: (g, g0, p),
        blocks,
        reduced_lattice_index: reduced_lattice_index(g0, n)?,
        intersection_count: lattice_intersection_count(inv)?,
    })
}

fn min_im_eigen(z: &DMatrix<Complex64>) -> f64 {
    let n = z.nrows();
    if n == 0 {
        return f64::INFINITY;
    }
    let im = DMatrix::<f64>::from_fn(n, n, |i, j| (z[(i, j)].im + z[(j, i)].im) / 2.0);
    im.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Normalizes `Gamma = (2A B 2D E)` to `(Delta_delta, Z)`.
///
/// On the cycles behind the columns of `Gamma` the intersection form pairs
/// `a_i - s(a_i)` with `b_i - s(b_i)` to 2 and the anti-invariant pairs to 1.
/// The columns are ordered by ascending type, `U` and `V` are the a- and
/// b-halves and `Z = Delta_delta U^-1 V`.
pub fn canonical_form(gamma: &DMatrix<Complex64>, g0: usize, n: usize) -> Result<(Vec<i64>, DMatrix<Complex64>)> {
    let p = g0 + n - 1;
    if gamma.nrows() != p || gamma.ncols() != 2 * p {
        return Err(Error::Dimension(format!("Gamma should be {p} x {}", 2 * p)));
    }
    let order: Vec<usize> = (g0..p).chain(0..g0).collect();
    let delta_delta: Vec<i64> = order.iter().map(|&c| if c < g0 { 2 } else { 1 }).collect();
    let u = DMatrix::from_fn(p, p, |r, c| gamma[(r, order[c])]);
    let v = DMatrix::from_fn(p, p, |r, c| gamma[(r, p + order[c])]);
    let inv = u.try_inverse().ok_or_else(|| Error::Split("Gamma is not of full rank".into()))?;
    let dd = DMatrix::from_fn(p, p, |r, c| if r == c { Complex64::new(delta_delta[r] as f64, 0.0) } else { Complex64::new(0.0, 0.0) });
    let z = dd * inv * v;
    let sym = max_abs(&(&z - z.transpose()));
    if sym > 1e-8 * max_abs(&z).max(1.0) {
        return Err(Error::Split(format!("Z is not symmetric ({sym:e})")));
    }
    Ok((delta_delta, z))
}

/// The column operations taking `Omega` to `(Gamma 0; 0 2 Delta)`, given
/// as an integer matrix; its determinant is the lattice index.
pub fn reduction_matrix(g0: usize, n: usize) -> IMat {
    let g = 2 * g0 + n - 1;
    let mut t = vec![vec![0i64; 2 * g]; 2 * g];
    let mut col = 0;
    let mut put = |entries: &[(usize, i64)], col: &mut usize| {
        for &(r, v) in entries {
            t[r][*col] = v;
        }
        *col += 1;
    };
    let (s1, s2, s3) = (0, g0, g0 + n - 1);
    for off in [0, g] {
        for i in 0..g0 {
            put(&[(off + s1 + i, 1), (off + s3 + i, -1)], &mut col);
        }
        for i in 0..n - 1 {
            put(&[(off + s2 + i, 1)], &mut col);
        }
    }
    for off in [0, g] {
        for i in 0..g0 {
            put(&[(off + s1 + i, 1), (off + s3 + i, 1)], &mut col);
        }
    }
    t
}

fn reduced_lattice_index(g0: usize, n: usize) -> Result<u64> {
    let t = reduction_matrix(g0, n);
    let cols: Vec<Vec<i64>> = (0..t.len()).map(|c| t.iter().map(|r| r[c]).collect()).collect();
    index_in_full(&cols, t.len())
}

/// Number of points in which the invariant and anti-invariant subtori of
/// the Jacobian meet: the index of `ker(M - 1) + ker(M + 1)` in `H_1`.
pub fn lattice_intersection_count(inv: &InvolutionData) -> Result<u64> {
    let dim = inv.m.len();
    let shifted = |s: i64| -> IMat { (0..dim).map(|i| (0..dim).map(|j| inv.m[i][j] - if i == j { s } else { 0 }).collect()).collect() };
    let mut gens = integer_kernel(&shifted(1));
    let minus = integer_kernel(&shifted(-1));
    if gens.len() != 2 * inv.g0 || minus.len() != dim - 2 * inv.g0 {
        return Err(Error::Split("eigenlattices have the wrong ranks".into()));
    }
    gens.extend(minus);
    index_in_full(&gens, dim)
}

/// Polarization type `(d1, d2)` with `d1 d2 = g - 1` and `d1 | d2`, taking the
/// largest admissible `d1`. An upstream type with the right product wins.
pub fn polarization_from_divisor(genus: u64, upstream: Option<(u64, u64)>) -> Result<(u64, u64)> {
    if genus <= 1 {
        return Err(Error::Parameters(format!("a divisor of genus {genus} does not polarize an abelian surface")));
    }
    let p = genus - 1;
    if let Some((a, b)) = upstream {
        if a * b == p && b % a == 0 {
            return Ok((a, b));
        }
    }
    let d1 = (1..=p).filter(|d| d * d <= p && p.is_multiple_of(*d) && (p / d).is_multiple_of(*d)).max().unwrap_or(1);
    Ok((d1, p / d1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prym::involution::normal_form_matrix;

    #[test]
    fn polarization_types() {
        assert_eq!(polarization_from_divisor(3, None).unwrap(), (1, 2));
        assert_eq!(polarization_from_divisor(9, None).unwrap(), (2, 4));
        assert_eq!(polarization_from_divisor(2, None).unwrap(), (1, 1));
        assert!(polarization_from_divisor(1, None).is_err());
    }

    #[test]
    fn intersection_counts() {
        for (g0, n, want) in [(1, 2, 4), (0, 3, 1), (2, 1, 16)] {
            let inv = InvolutionData::from_matrix(normal_form_matrix(g0, n), vec![]).unwrap();
            assert_eq!(lattice_intersection_count(&inv).unwrap(), want);
        }
    }

    #[test]
    fn reduced_lattice_has_index_four_for_one_swap() {
        assert_eq!(reduced_lattice_index(1, 2).unwrap(), 4);
    }
}

#[cfg(test)]
mod chain {
    use super::*;
    use crate::prym::involution::{involution_on_homology, normal_form_matrix, VariableAction};
    use crate::prym::lattice::{matmul, standard_form, transpose};
    use crate::riemann::{period_matrix, same_modulus, DifferentialBasis, HyperellipticModel, PeriodOptions};
    use rand::{Rng, SeedableRng};

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn henon_heiles_curve_splits() {
        let p8 = [1.0 / 36.0, 0.0, 1.0 / 18.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0 / 576.0];
        let model = HyperellipticModel::new(&c(&p8)).unwrap();
        let act = VariableAction::parse("x->-x").unwrap();
        act.check(&model).unwrap();
        let basis = DifferentialBasis::ordered(&[2, 0, 1]);
        let s: Vec<i64> = basis.exponents.iter().map(|&j| act.sign_on(j)).collect();
        assert_eq!(s, vec![-1, -1, 1]);
        let periods = period_matrix(&model, &basis, &PeriodOptions::default()).unwrap();
        let inv = involution_on_homology(&periods.omega, &s).unwrap();
        assert_eq!((inv.g0, inv.n), (1, 2));
        let adapted = adapt_basis(&inv, &periods.omega).unwrap();
        let split = split_periods(&adapted, &inv).unwrap();
        assert!(split.blocks.max() < 1e-9, "{:?}", split.blocks);
        assert_eq!(split.delta_delta, vec![1, 2]);
        assert!(split.z_min_imaginary_eigenvalue > 0.0);
        assert_eq!(split.intersection_count, 4);
        // the quotient curve y^2 = P4(z) with z = x^2
        let p4 = [p8[0], p8[2], p8[4], p8[6], p8[8]];
        let e = HyperellipticModel::new(&c(&p4)).unwrap();
        let pe = period_matrix(&e, &DifferentialBasis::standard(1), &PeriodOptions::default()).unwrap();
        let tau_e = pe.omega[(0, 1)] / pe.omega[(0, 0)];
        let tau_d = split.delta[(0, 1)] / split.delta[(0, 0)];
        assert!(same_modulus(tau_d, tau_e, 1e-8), "{tau_d} vs {tau_e}");
    }

    #[test]
    fn genus_two_quotient() {
        let model = HyperellipticModel::new(&c(&[-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        let periods = period_matrix(&model, &DifferentialBasis::standard(2), &PeriodOptions::default()).unwrap();
        let inv = involution_on_homology(&periods.omega, &[-1, 1]).unwrap();
        assert_eq!(inv.g0, 1);
    }

    fn random_symplectic(g: usize, rng: &mut impl Rng) -> IMat {
        let j = standard_form(g);
        let mut p = crate::prym::lattice::identity(2 * g);
        for _ in 0..4 {
            // transvection v -> v + k <v, u> u
            let u: Vec<i64> = (0..2 * g).map(|_| rng.random_range(-1..=1)).collect();
            let k = rng.random_range(-1..=1);
            let mut t = crate::prym::lattice::identity(2 * g);
            for r in 0..2 * g {
                for cc in 0..2 * g {
                    let ju: i64 = (0..2 * g).map(|q| u[q] * j[q][cc]).sum();
                    t[r][cc] += k * u[r] * ju;
                }
            }
            p = matmul(&t, &p);
        }
        assert_eq!(matmul(&matmul(&transpose(&p), &j), &p), j);
        p
    }

    #[test]
    fn conjugates_recover_normal_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let nf = normal_form_matrix(1, 2);
        let j = standard_form(3);
        for _ in 0..25 {
            let p = random_symplectic(3, &mut rng);
            // P^-1 = -J P^T J
            let pinv: IMat = matmul(&matmul(&j, &transpose(&p)), &j).iter().map(|r| r.iter().map(|v| -v).collect()).collect();
            let m = matmul(&matmul(&p, &nf), &pinv);
            let t = normal_form_basis(&m, 1).unwrap();
            assert_eq!(matmul(&m, &t), matmul(&t, &nf));
        }
    }
}
