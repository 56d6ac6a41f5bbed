use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{linalg, Complex64, Field, MultiPoly, Qi};
use crate::error::{Error, Result};

use super::system::HamiltonianSystem;
use super::weights::top_field;

/// A solution of `f_top(x) + diag(nu) x = 0`.
///
/// `directions` spans the kernel of the Kowalewski matrix at `x0`; it is
/// nonempty exactly when the balance sits on a continuous family.
#[derive(Clone, Debug, Serialize)]
pub struct Balance {
    #[serde(serialize_with = "crate::painleve::ser_cvec")]
    pub x0: Vec<Complex64>,
    #[serde(serialize_with = "crate::painleve::ser_qvec_opt")]
    pub exact: Option<Vec<Qi>>,
    pub weights: Vec<i64>,
    pub residual: f64,
    pub family_dim: usize,
    #[serde(skip)]
    pub directions: Vec<Vec<Complex64>>,
    pub slice: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct BalanceOptions {
    pub random_starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub tol: f64,
    pub dedup: f64,
}

impl Default for BalanceOptions {
    fn default() -> Self {
        BalanceOptions { random_starts: 200, seed: 0x5eed, max_iter: 100, tol: 1e-10, dedup: 1e-6 }
    }
}

/// The balance map and its Jacobian, prepared once per system.
pub struct BalanceMap {
    pub weights: Vec<i64>,
    exact: Vec<MultiPoly<Qi>>,
    g: Vec<MultiPoly<Complex64>>,
    jac: Vec<Vec<MultiPoly<Complex64>>>,
}

impl BalanceMap {
    pub fn new(system: &HamiltonianSystem, nu: &[i64]) -> Self {
        let top = top_field(&system.field, nu);
        let exact: Vec<MultiPoly<Qi>> = top
            .iter()
            .enumerate()
            .map(|(i, f)| f + &MultiPoly::var(&system.vars, i).scale(&Qi::from_i64(nu[i])))
            .collect();
        let g: Vec<MultiPoly<Complex64>> = exact.iter().map(|p| p.to_float()).collect();
        let jac = g.iter().map(|p| p.gradient()).collect();
        BalanceMap { weights: nu.to_vec(), exact, g, jac }
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn residual(&self, x: &[Complex64]) -> f64 {
        self.g.iter().map(|p| p.eval_c64(x).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kowalewski matrix of the balance map, float.
    pub fn jacobian(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        let m = self.dim();
        DMatrix::from_fn(m, m, |i, j| self.jac[i][j].eval_c64(x))
    }

    /// Exact Kowalewski matrix at a Q(i) point.
    pub fn jacobian_exact(&self, x: &[Qi]) -> Result<linalg::Mat<Qi>> {
        self.exact.iter().map(|p| p.gradient().iter().map(|d| d.eval(x)).collect()).collect()
    }

    pub fn vanishes_exactly(&self, x: &[Qi]) -> bool {
        self.exact.iter().all(|p| p.eval(x).map(|v| v.is_zero()).unwrap_or(false))
    }

    /// Gauss-Newton with minimum-norm steps; coordinate `fixed` is frozen.
    pub fn newton(&self, start: &[Complex64], fixed: Option<usize>, opts: &BalanceOptions) -> Option<Vec<Complex64>> {
        let m = self.dim();
        let mut x = start.to_vec();
        for _ in 0..opts.max_iter {
            let r = DVector::from_iterator(m, self.g.iter().map(|p| p.eval_c64(&x)));
            let mut j = self.jacobian(&x);
            if let Some(p) = fixed {
                j.column_mut(p).fill(Complex64::new(0.0, 0.0));
            }
            let step = j.svd(true, true).solve(&r, 1e-12).ok()?;
            let size = step.norm();
            for (xi, s) in x.iter_mut().zip(step.iter()) {
                *xi -= s;
            }
            let xn = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if !xn.is_finite() || xn > 1e8 {
                return None;
            }
            if size <= 1e-15 * (1.0 + xn) {
                break;
            }
        }
        let xn = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        (self.residual(&x) <= opts.tol * xn.max(1.0)).then_some(x)
    }

    /// Snaps a float solution to Q(i) and keeps it only if it is exact.
    pub fn snap(&self, x: &[Complex64]) -> Option<Vec<Qi>> {
        let q: Vec<Qi> = x.iter().map(|&z| Qi::approximate(z, 10_000, 1e-9)).collect::<Option<_>>()?;
        self.vanishes_exactly(&q).then_some(q)
    }

    fn describe(&self, x: Vec<Complex64>, exact: Option<Vec<Qi>>, slice: Option<usize>) -> Balance {
        let l = self.jacobian(&x);
        let (null, _) = linalg::svd_null_space(&l, 1e-8);
        let residual = if exact.is_some() { 0.0 } else { self.residual(&x) };
        Balance {
            x0: x,
            exact,
            weights: self.weights.clone(),
            residual,
            family_dim: null.len(),
            directions: null.iter().map(|v| v.iter().copied().collect()).collect(),
            slice,
        }
    }
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn random_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|_| {
            let r: f64 = rng.random::<f64>().sqrt();
            let th: f64 = rng.random::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, th)
        })
        .collect()
}

/// All distinct nonzero balances reachable by Newton from `seeds` and from
/// `opts.random_starts` points drawn uniformly in the unit polydisk.
pub fn solve_balances(system: &HamiltonianSystem, nu: &[i64], seeds: &[Vec<Complex64>], opts: &BalanceOptions) -> Result<Vec<Balance>> {
    let map = BalanceMap::new(system, nu);
    let m = map.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts: Vec<Vec<Complex64>> = seeds.to_vec();
    if starts.iter().any(|s| s.len() != m) {
        return Err(Error::Dimension(format!("seeds must have {m} coordinates")));
    }
    starts.extend((0..opts.random_starts).map(|_| random_point(&mut rng, m)));
    let mut found: Vec<Vec<Complex64>> = Vec::new();
    for s in &starts {
        let Some(x) = map.newton(s, None, opts) else { continue };
        if x.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-6 {
            continue;
        }
        if found.iter().all(|f| distance(f, &x) > opts.dedup) {
            found.push(x);
        }
    }
    if found.is_empty() {
        return Err(Error::NoBalance(format!("{} Newton starts, none converged to a nonzero balance", starts.len())));
    }
    Ok(found
        .into_iter()
        .map(|x| {
            let exact = map.snap(&x);
            let x = exact.as_ref().map_or(x, |q| q.iter().map(|c| c.to_c64()).collect());
            map.describe(x, exact, None)
        })
        .collect())
}

/// Moves a balance along its family until coordinate `p` equals `value`,
/// by Newton continuation on a straight segment.
pub fn continue_balance(map: &BalanceMap, from: &Balance, p: usize, value: Complex64, opts: &BalanceOptions) -> Option<Vec<Complex64>> {
    let start = from.x0[p];
    for steps in [16usize, 64, 256] {
        let mut x = from.x0.clone();
        let mut ok = true;
        for s in 1..=steps {
            x[p] = start + (value - start) * (s as f64 / steps as f64);
            match map.newton(&x, Some(p), opts) {
                Some(y) => x = y,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(x);
        }
    }
    None
}

/// Coordinate along which a family is sliced: the hint if given, otherwise
/// the coordinate with the largest tangent component.
pub fn slice_coordinate(balance: &Balance, hint: Option<usize>) -> Option<usize> {
    if balance.family_dim == 0 {
        return None;
    }
    if let Some(h) = hint {
        return Some(h);
    }
    let d = &balance.directions[0];
    (0..d.len()).max_by(|&a, &b| d[a].norm().partial_cmp(&d[b].norm()).unwrap())
}

/// One representative per branch over the slice `x_p = value`.
///
/// Isolated balances are passed through. Every balance on a one-parameter
/// family is continued to the slice; the distinct end points are the
/// branches, snapped to Q(i) when they verify exactly.
pub fn branches(
    system: &HamiltonianSystem,
    balances: &[Balance],
    slice_hint: Option<usize>,
    value: &Qi,
    opts: &BalanceOptions,
) -> Result<Vec<Balance>> {
    let Some(first) = balances.first() else {
        return Err(Error::NoBalance("empty balance list".into()));
    };
    let map = BalanceMap::new(system, &first.weights);
    let target = value.to_c64();
    let mut out: Vec<Balance> = Vec::new();
    for b in balances {
        let candidate = match slice_coordinate(b, slice_hint) {
            None => Some((b.x0.clone(), None)),
            Some(p) => continue_balance(&map, b, p, target, opts).map(|x| (x, Some(p))),
        };
        let Some((x, p)) = candidate else { continue };
        if out.iter().any(|o| distance(&o.x0, &x) <= opts.dedup) {
            continue;
        }
        let exact = map.snap(&x);
        let x = exact.as_ref().map_or(x, |q| q.iter().map(|c| c.to_c64()).collect());
        out.push(map.describe(x, exact, p));
    }
    out.sort_by(|a, b| b.exact.is_some().cmp(&a.exact.is_some()));
    Ok(out)
}

/// Exact balance on the branch through `from` at `x_p = value`.
pub fn exact_branch_point(system: &HamiltonianSystem, from: &Balance, p: usize, value: &Qi, opts: &BalanceOptions) -> Result<Balance> {
    let map = BalanceMap::new(system, &from.weights);
    let x = continue_balance(&map, from, p, value.to_c64(), opts)
        .ok_or_else(|| Error::NoBalance(format!("continuation to x_{p} = {value} failed")))?;
    let exact = map.snap(&x);
    let x = exact.as_ref().map_or(x, |q| q.iter().map(|c| c.to_c64()).collect());
    Ok(map.describe(x, exact, Some(p)))
}
