//! Dense linear algebra over any [`Field`], exact or float.

use nalgebra::DMatrix;

use super::field::{Complex64, Field};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

pub type Mat<C> = Vec<Vec<C>>;

pub fn identity<C: Field>(n: usize) -> Mat<C> {
    (0..n).map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect()).collect()
}

pub fn transpose<C: Field>(a: &Mat<C>) -> Mat<C> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_scale<C: Field>(a: &Mat<C>) -> f64 {
    a.iter().flatten().map(|c| c.magnitude()).fold(0.0, f64::max)
}

/// Reduced row echelon form in place; returns pivot columns.
///
/// Column order is taken from `order` (a permutation of column indices), so
/// callers can bias which columns become pivots.
pub fn rref_ordered<C: Field>(a: &mut Mat<C>, order: &[usize]) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let scale = mat_scale(a);
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            break;
        }
        let best = (r..rows).max_by(|&i, &j| a[i][c].magnitude().partial_cmp(&a[j][c].magnitude()).unwrap());
        let Some(p) = best else { break };
        if a[p][c].negligible(scale) {
            continue;
        }
        a.swap(r, p);
        let inv = C::one() / a[r][c].clone();
        for v in a[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..a[i].len() {
                    let s = a[r][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - s;
                }
            }
        }
        if !C::EXACT {
            for i in 0..rows {
                if i != r {
                    a[i][c] = C::zero();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if !C::EXACT {
        for row in a.iter_mut().skip(r) {
            for v in row.iter_mut() {
                if v.negligible(scale) {
                    *v = C::zero();
                }
            }
        }
    }
    pivots
}

pub fn rref<C: Field>(a: &mut Mat<C>) -> Vec<usize> {
    let n = a.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..n).collect();
    rref_ordered(a, &order)
}

pub fn rank<C: Field>(a: &Mat<C>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of the right kernel. Each basis vector has a distinguished pivot
/// coordinate where it equals one and the others vanish; pivots are chosen in
/// order of `preference`, then by lowest index.
pub fn kernel_with_pivots<C: Field>(a: &Mat<C>, ncols: usize, preference: &[usize]) -> (Mat<C>, Vec<usize>) {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Mat<C> = Vec::new();
    for &f in &free {
        let mut v = vec![C::zero(); ncols];
        v[f] = C::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][f].clone();
        }
        basis.push(v);
    }
    if basis.is_empty() {
        return (basis, Vec::new());
    }
    // Re-pivot: row-reduce the basis with the preferred column order.
    let mut order: Vec<usize> = preference.iter().copied().filter(|&c| c < ncols).collect();
    for c in 0..ncols {
        if !order.contains(&c) {
            order.push(c);
        }
    }
    let mut b = basis;
    let piv = rref_ordered(&mut b, &order);
    b.truncate(piv.len());
    (b, piv)
}

pub fn kernel<C: Field>(a: &Mat<C>, ncols: usize) -> Mat<C> {
    kernel_with_pivots(a, ncols, &[]).0
}

/// Solver for an overdetermined full-column-rank system `A z = b`:
/// `z = X b` whenever the compatibility rows `W b` vanish.
#[derive(Clone, Debug)]
pub struct Solver<C> {
    pub x: Mat<C>,
    pub w: Mat<C>,
    pub scale: f64,
}

impl<C: Field> Solver<C> {
    pub fn new(a: &Mat<C>) -> Result<Self> {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut aug: Mat<C> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..rows).map(|j| if i == j { C::one() } else { C::zero() }));
                row
            })
            .collect();
        let order: Vec<usize> = (0..cols).collect();
        let scale = mat_scale(a);
        let pivots = rref_ordered(&mut aug, &order);
        if pivots.len() < cols {
            return Err(Error::Numerical(format!("system has rank {} < {} unknowns", pivots.len(), cols)));
        }
        let mut x = vec![vec![C::zero(); rows]; cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[r][cols..].to_vec();
        }
        let w = aug[pivots.len()..].iter().map(|r| r[cols..].to_vec()).collect();
        Ok(Solver { x, w, scale })
    }

    pub fn apply(&self, b: &[C]) -> Vec<C> {
        mat_vec(&self.x, b)
    }

    pub fn apply_poly(&self, b: &[MultiPoly<C>]) -> Vec<MultiPoly<C>> {
        combine_polys(&self.x, b)
    }

    pub fn compatibility_poly(&self, b: &[MultiPoly<C>]) -> Vec<MultiPoly<C>> {
        combine_polys(&self.w, b)
    }
}

pub fn mat_vec<C: Field>(a: &Mat<C>, v: &[C]) -> Vec<C> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(C::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
        .collect()
}

pub fn mat_mul<C: Field>(a: &Mat<C>, b: &Mat<C>) -> Mat<C> {
    let bt = transpose(b);
    a.iter().map(|r| bt.iter().map(|c| r.iter().zip(c).fold(C::zero(), |acc, (x, y)| acc + x.clone() * y.clone())).collect()).collect()
}

fn combine_polys<C: Field>(a: &Mat<C>, b: &[MultiPoly<C>]) -> Vec<MultiPoly<C>> {
    let vars = b[0].vars().to_vec();
    a.iter()
        .map(|row| {
            let mut acc = MultiPoly::zero(&vars);
            for (c, p) in row.iter().zip(b) {
                if !c.is_zero() && !p.is_zero() {
                    acc = &acc + &p.scale(c);
                }
            }
            acc
        })
        .collect()
}

/// Solves a square nonsingular system.
pub fn solve<C: Field>(a: &Mat<C>, b: &[C]) -> Result<Vec<C>> {
    let s = Solver::new(a)?;
    Ok(s.apply(b))
}

pub fn to_dmatrix<C: Field>(a: &Mat<C>) -> DMatrix<Complex64> {
    let r = a.len();
    let c = a.first().map_or(0, |x| x.len());
    DMatrix::from_fn(r, c, |i, j| a[i][j].to_c64())
}

/// Eigenvalues of a complex square matrix via the Schur form.
pub fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = nalgebra::linalg::Schur::try_new(a.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Null space of a complex matrix from its SVD; returns singular values too.
pub fn svd_null_space(a: &DMatrix<Complex64>, rel_tol: f64) -> (Vec<nalgebra::DVector<Complex64>>, Vec<f64>) {
    let (r, c) = a.shape();
    // Pad to at least as many rows as columns so V is complete.
    let m = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let mut null = Vec::new();
    for (k, &s) in sv.iter().enumerate() {
        if s <= rel_tol * smax.max(f64::MIN_POSITIVE) {
            null.push(v_t.row(k).adjoint());
        }
    }
    (null, sv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Qi;

    fn q(n: i64) -> Qi {
        Qi::from_i64(n)
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        let (k, piv) = kernel_with_pivots(&a, 2, &[1]);
        assert_eq!(piv, vec![1]);
        assert_eq!(k[0], vec![Qi::ratio(-2, 1), q(1)]);
        let (k0, piv0) = kernel_with_pivots(&a, 2, &[]);
        assert_eq!(piv0, vec![0]);
        assert_eq!(k0[0], vec![q(1), Qi::ratio(-1, 2)]);
    }

    #[test]
    fn solver_reports_compatibility() {
        let a = vec![vec![q(1)], vec![q(2)]];
        let s = Solver::new(&a).unwrap();
        assert_eq!(s.apply(&[q(3), q(6)]), vec![q(3)]);
        assert_eq!(mat_vec(&s.w, &[q(3), q(6)]), vec![q(0)]);
        assert_ne!(mat_vec(&s.w, &[q(3), q(7)]), vec![q(0)]);
    }

    #[test]
    fn eigenvalues_of_triangular() {
        let a = DMatrix::from_row_slice(2, 2, &[Complex64::new(1.0, 0.0), Complex64::new(5.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let mut ev: Vec<f64> = eigenvalues(&a).unwrap().iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }
}
