use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::Complex64;
use crate::error::{Error, Result};
use crate::riemann::HyperellipticModel;

use super::lattice::{form, matmul, matvec, row_basis, solve_integer, standard_form, symplectic_reduce, transpose, IMat};

/// `x -> sx x, y -> sy y` on `y^2 = P(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VariableAction {
    pub x: i64,
    pub y: i64,
}

impl VariableAction {
    /// Reads `x->-x`, `y->-y` or both, comma separated.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut act = VariableAction { x: 1, y: 1 };
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let compact: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            match compact.as_str() {
                "x->-x" | "alpha->-alpha" => act.x = -1,
                "y->-y" | "beta->-beta" => act.y = -1,
                "x->x" | "y->y" => {}
                _ => return Err(Error::Involution(format!("cannot read '{part}', expected e.g. 'x->-x'"))),
            }
        }
        if act == (VariableAction { x: 1, y: 1 }) {
            return Err(Error::Involution("identity is not an involution of interest".into()));
        }
        Ok(act)
    }

    /// Checks that the action maps the curve to itself.
    pub fn check(&self, model: &HyperellipticModel) -> Result<()> {
        if self.x == -1 {
            let scale = model.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if model.coeffs.iter().skip(1).step_by(2).any(|z| z.norm() > 1e-12 * scale) {
                return Err(Error::Involution("x -> -x needs an even polynomial".into()));
            }
        }
        Ok(())
    }

    /// Sign of the pullback of `x^j dx / y`.
    pub fn sign_on(&self, exponent: u32) -> i64 {
        let sx = if exponent.is_multiple_of(2) { self.x } else { 1 };
        sx * self.y
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionData {
    pub action: Option<VariableAction>,
    /// Diagonal of the pullback on the differential basis.
    pub s: Vec<i64>,
    /// Action on the cycles: column `c` holds the image of cycle `c`.
    pub m: IMat,
    pub g: usize,
    pub g0: usize,
    pub n: usize,
    pub residual: f64,
    pub rounding: f64,
}

impl InvolutionData {
    pub fn prym_dim(&self) -> usize {
        self.g - self.g0
    }

    /// Wraps an integer involution matrix, checking that it is a symplectic
    /// involution, and reads off `g0` and `n` from its trace.
    pub fn from_matrix(m: IMat, s: Vec<i64>) -> Result<Self> {
        let g = m.len() / 2;
        let id = super::lattice::identity(2 * g);
        if matmul(&m, &m) != id {
            return Err(Error::Involution("M^2 is not the identity".into()));
        }
        let j = standard_form(g);
        if matmul(&matmul(&transpose(&m), &j), &m) != j {
            return Err(Error::Involution("M does not preserve the intersection form".into()));
        }
        let trace: i64 = (0..2 * g).map(|i| m[i][i]).sum();
        if (trace + 2 * g as i64) % 4 != 0 {
            return Err(Error::Involution(format!("trace {trace} is not that of a double cover")));
        }
        let g0 = ((trace + 2 * g as i64) / 4) as usize;
        if 2 * g0 > g + 1 {
            return Err(Error::Involution("invariant part too large for a ramified cover".into()));
        }
        let n = g + 1 - 2 * g0;
        if !s.is_empty() && s.iter().filter(|&&v| v == 1).count() != g0 {
            return Err(Error::Involution(format!("S has {} invariant differentials, M says {g0}", s.iter().filter(|&&v| v == 1).count())));
        }
        Ok(InvolutionData { action: None, s, m, g, g0, n, residual: 0.0, rounding: 0.0 })
    }
}

/// Solves `S Omega = Omega M` for an integer `M` from the real and imaginary
/// parts of the period matrix.
pub fn involution_on_homology(om: &DMatrix<Complex64>, s: &[i64]) -> Result<InvolutionData> {
    let g = om.nrows();
    if om.ncols() != 2 * g {
        return Err(Error::Dimension("period matrix must be g x 2g".into()));
    }
    if s.len() != g || s.iter().any(|&v| v != 1 && v != -1) {
        return Err(Error::Involution("S must be a diagonal of +-1 of length g".into()));
    }
    let so = DMatrix::from_fn(g, 2 * g, |i, j| om[(i, j)] * s[i] as f64);
    let stack = |m: &DMatrix<Complex64>| DMatrix::<f64>::from_fn(2 * g, 2 * g, |i, j| if i < g { m[(i, j)].re } else { m[(i - g, j)].im });
    let r = stack(om);
    let rhs = stack(&so);
    let real = r.clone().lu().solve(&rhs).ok_or_else(|| Error::Involution("periods do not span a lattice".into()))?;
    let mut rounding: f64 = 0.0;
    let m: IMat = (0..2 * g)
        .map(|i| {
            (0..2 * g)
                .map(|j| {
                    let v = real[(i, j)];
                    rounding = rounding.max((v - v.round()).abs());
                    v.round() as i64
                })
                .collect()
        })
        .collect();
    if rounding > 1e-4 {
        return Err(Error::Involution(format!("involution not defined over this lattice (rounding distance {rounding:e})")));
    }
    let scale = om.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mi = DMatrix::from_fn(2 * g, 2 * g, |i, j| Complex64::new(m[i][j] as f64, 0.0));
    let residual = (om * mi - &so).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
    if residual > 1e-6 {
        return Err(Error::Involution(format!("S Omega - Omega M = {residual:e}")));
    }
    let mut data = InvolutionData::from_matrix(m, s.to_vec())?;
    data.residual = residual;
    data.rounding = rounding;
    Ok(data)
}

/// The normal-form involution: on each of the a- and b-blocks it swaps the
/// first `g0` cycles with the last `g0` and negates the middle `n - 1`.
pub fn normal_form_matrix(g0: usize, n: usize) -> IMat {
    let g = 2 * g0 + n - 1;
    let mut m = vec![vec![0; 2 * g]; 2 * g];
    for off in [0, g] {
        for i in 0..g0 {
            m[off + g0 + n - 1 + i][off + i] = 1;
            m[off + i][off + g0 + n - 1 + i] = 1;
        }
        for i in g0..g0 + n - 1 {
            m[off + i][off + i] = -1;
        }
    }
    m
}

/// An integer symplectic `T` (columns are the new cycles in the old ones)
/// with `T^-1 M T` in normal form.
pub fn normal_form_basis(m: &IMat, g0: usize) -> Result<IMat> {
    let dim = m.len();
    let g = dim / 2;
    let n = g + 1 - 2 * g0;
    if *m == normal_form_matrix(g0, n) {
        return Ok(super::lattice::identity(dim));
    }
    let j = standard_form(g);
    let mut w: Vec<Vec<i64>> = super::lattice::identity(dim);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for step in 0..g0 {
        let (x, y) = swap_pair(m, &j, &w).ok_or_else(|| Error::NormalForm(format!("no swap pair found at step {}", step + 1)))?;
        let (mx, my) = (matvec(m, &x), matvec(m, &y));
        let projected: Vec<Vec<i64>> = w
            .iter()
            .map(|v| {
                let (vy, vx, vmy, vmx) = (form(&j, v, &y), form(&j, v, &x), form(&j, v, &my), form(&j, v, &mx));
                (0..dim).map(|k| v[k] - vy * x[k] + vx * y[k] - vmy * mx[k] + vmx * my[k]).collect()
            })
            .collect();
        w = row_basis(&projected);
        xs.push(x);
        ys.push(y);
    }
    for v in &w {
        if matvec(m, v).iter().zip(v).any(|(a, b)| *a != -b) {
            return Err(Error::NormalForm("the complement of the swap blocks is not anti-invariant".into()));
        }
    }
    let (es, fs) = symplectic_reduce(&w, &j)?;
    if 2 * g0 + es.len() != g {
        return Err(Error::NormalForm(format!("basis has {} pairs, expected {g}", 2 * g0 + es.len())));
    }
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(dim);
    cols.extend(xs.iter().cloned());
    cols.extend(es.iter().cloned());
    cols.extend(xs.iter().map(|x| matvec(m, x)));
    cols.extend(ys.iter().cloned());
    cols.extend(fs.iter().cloned());
    cols.extend(ys.iter().map(|y| matvec(m, y)));
    let t = transpose(&cols);
    if matmul(&matmul(&transpose(&t), &j), &t) != j {
        return Err(Error::NormalForm("adapted basis is not symplectic".into()));
    }
    if matmul(m, &t) != matmul(&t, &normal_form_matrix(g0, n)) {
        return Err(Error::NormalForm("adapted basis does not conjugate M to normal form".into()));
    }
    Ok(t)
}

/// Looks for `x, y` in the lattice spanned by `w` with `<x, y> = 1` and
/// `<M x, y> = 0`, trying coefficient vectors of small support first.
fn swap_pair(m: &IMat, j: &IMat, w: &[Vec<i64>]) -> Option<(Vec<i64>, Vec<i64>)> {
    let r = w.len();
    let dim = m.len();
    let combine = |c: &[i64]| -> Vec<i64> { (0..dim).map(|k| w.iter().zip(c).map(|(v, ci)| ci * v[k]).sum()).collect() };
    let bounds: &[i64] = if r <= 8 { &[1, 2] } else { &[1] };
    for &bound in bounds {
        for c in coefficient_vectors(r, bound) {
            let x = combine(&c);
            let mx = matvec(m, &x);
            let rows = vec![w.iter().map(|v| form(j, &x, v)).collect::<Vec<_>>(), w.iter().map(|v| form(j, &mx, v)).collect()];
            if let Some(coef) = solve_integer(&rows, &[1, 0]) {
                return Some((x, combine(&coef)));
            }
        }
    }
    None
}

/// Nonzero vectors in `[-bound, bound]^r`, by increasing l1 norm.
fn coefficient_vectors(r: usize, bound: i64) -> Vec<Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    let total = side.checked_pow(r as u32).unwrap_or(usize::MAX).min(2_000_000);
    let mut out: Vec<Vec<i64>> = (1..total)
        .map(|mut code| {
            (0..r)
                .map(|_| {
                    let d = (code % side) as i64;
                    code /= side;
                    // 0, 1, -1, 2, -2, ...
                    if d % 2 == 1 { d / 2 + 1 } else { -(d / 2) }
                })
                .collect()
        })
        .collect();
    out.sort_by_key(|c| (c.iter().map(|v| v.abs()).sum::<i64>(), c.iter().filter(|&&v| v < 0).count()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prym::lattice::identity;

    #[test]
    fn normal_form_is_fixed() {
        let m = normal_form_matrix(1, 2);
        let data = InvolutionData::from_matrix(m.clone(), vec![]).unwrap();
        assert_eq!((data.g0, data.n), (1, 2));
        assert_eq!(normal_form_basis(&m, 1).unwrap(), identity(6));
    }
}
