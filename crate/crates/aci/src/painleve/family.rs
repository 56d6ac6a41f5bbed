use serde::Serialize;
use serde_json::Value;

use crate::algebra::{linalg, substitute_series, Complex64, Field, FromQi, JsonCoeff, MultiPoly, Qi, Series};
use crate::error::{Error, Result};

use super::balance::{branches, solve_balances, Balance, BalanceOptions};
use super::weights::detect_weights;
use super::spectrum::{kowalewski_spectrum, KowalewskiSpectrum};
use super::system::{FamilyHints, HamiltonianSystem};

/// `x_i(t) = sum_{j=0..N} x_i^(j) t^(j - nu_i)` with coefficients polynomial
/// in the free parameters injected at the resonances.
#[derive(Clone, Debug)]
pub struct LaurentFamily<C: Field> {
    pub phase_vars: Vec<String>,
    pub weights: Vec<i64>,
    pub params: Vec<String>,
    /// `(k, names)` for every resonance that injected parameters.
    pub injected: Vec<(i64, Vec<String>)>,
    /// Coordinate and value of the balance slice, if the balance lies on a
    /// continuous family.
    pub slice: Option<(usize, String, C)>,
    pub coeffs: Vec<Vec<MultiPoly<C>>>,
    pub order: usize,
}

/// Default name of the `j`-th parameter injected at resonance `k`.
fn default_name(k: i64, j: usize, d: usize) -> String {
    if d == 1 {
        format!("r{k}")
    } else {
        format!("r{k}_{}", j + 1)
    }
}

fn param_names(spectrum: &KowalewskiSpectrum, hints: &FamilyHints) -> Vec<(i64, Vec<String>)> {
    spectrum
        .resonances
        .iter()
        .filter(|r| r.k > 0 && r.kernel_dim > 0)
        .map(|r| {
            let given = hints.resonance_names.get(&r.k);
            let names = (0..r.kernel_dim)
                .map(|j| given.and_then(|g| g.get(j).cloned()).unwrap_or_else(|| default_name(r.k, j, r.kernel_dim)))
                .collect();
            (r.k, names)
        })
        .collect()
}

impl<C: FromQi> LaurentFamily<C> {
    pub fn series(&self, i: usize) -> Series<C> {
        let col: Vec<MultiPoly<C>> = self.coeffs.iter().map(|c| c[i].clone()).collect();
        let start = -(self.weights[i] as i32);
        Series::new(&self.params, start, col, Some(self.order as i32 + start))
    }

    pub fn all_series(&self) -> Vec<Series<C>> {
        (0..self.phase_vars.len()).map(|i| self.series(i)).collect()
    }

    /// `x^(j)` as polynomials.
    pub fn coefficient(&self, j: usize) -> &[MultiPoly<C>] {
        &self.coeffs[j]
    }

    /// `H(x(t))` as a truncated series in `t`.
    pub fn compose(&self, h: &MultiPoly<C>) -> Result<Series<C>> {
        substitute_series(h, &self.all_series(), None)
    }

    /// State `x(t)` at numerical parameter values.
    pub fn state(&self, params: &[Complex64], t: Complex64) -> Vec<Complex64> {
        self.all_series().iter().map(|s| s.eval(params, t)).collect()
    }

    /// Every known coefficient `t^k`, `k != 0`, of `H(x(t))` that is not zero.
    pub fn invariance_defects(&self, h: &MultiPoly<C>) -> Result<Vec<(i32, MultiPoly<C>)>> {
        let s = self.compose(h)?;
        Ok(s.nonzero_terms().filter(|(k, c)| *k != 0 && !poly_negligible(c, 1.0)).map(|(k, c)| (k, c.clone())).collect())
    }

    /// Highest exponent of `H(x(t))` that the truncation determines.
    pub fn known_through(&self, h: &MultiPoly<C>) -> Result<Option<i32>> {
        Ok(self.compose(h)?.order())
    }

    /// Coefficients of `x' - f(x)` that fail to vanish.
    pub fn ode_defects(&self, field: &[MultiPoly<C>]) -> Result<Vec<(usize, i32)>> {
        let xs = self.all_series();
        let mut bad = Vec::new();
        for (i, f) in field.iter().enumerate() {
            let r = xs[i].derivative().sub(&substitute_series(f, &xs, None)?);
            for (k, c) in r.nonzero_terms() {
                if !poly_negligible(c, 1.0) {
                    bad.push((i, k));
                }
            }
        }
        Ok(bad)
    }

    pub fn report(&self) -> FamilyReport
    where
        C: JsonCoeff,
    {
        FamilyReport {
            phase_vars: self.phase_vars.clone(),
            leading_exponents: self.weights.iter().map(|w| -w).collect(),
            params: self.params.clone(),
            injected: self.injected.iter().map(|(k, n)| Injected { k: *k, params: n.clone() }).collect(),
            slice: self.slice.as_ref().map(|(i, n, v)| SliceReport { coordinate: *i, name: n.clone(), value: v.to_json() }),
            order: self.order,
            coefficients: self.coeffs.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect(),
        }
    }
}

/// Zero test for a coefficient polynomial; the float mirror compares
/// against `1e-9 * max(1, scale)`.
pub fn poly_negligible<C: Field>(p: &MultiPoly<C>, scale: f64) -> bool {
    if C::EXACT {
        p.is_zero()
    } else {
        p.max_abs_coeff() <= 1e-9 * scale.max(1.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Injected {
    pub k: i64,
    pub params: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    pub coordinate: usize,
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub phase_vars: Vec<String>,
    pub leading_exponents: Vec<i64>,
    pub params: Vec<String>,
    pub injected: Vec<Injected>,
    pub slice: Option<SliceReport>,
    pub order: usize,
    pub coefficients: Vec<Vec<String>>,
}

/// Exact expansion; requires a balance with Q(i) coordinates.
pub fn expand_family(system: &HamiltonianSystem, balance: &Balance, spectrum: &KowalewskiSpectrum, order: usize) -> Result<LaurentFamily<Qi>> {
    let x0 = balance
        .exact
        .clone()
        .ok_or_else(|| Error::Numerical("exact expansion needs a balance in Q(i)".into()))?;
    let l = spectrum.exact_matrix.clone().ok_or_else(|| Error::Numerical("exact Kowalewski matrix missing".into()))?;
    expand_generic(system, &system.field, balance, x0, l, spectrum, order)
}

/// Float expansion at a numerical balance; compatibility holds to 1e-9.
pub fn expand_family_float(
    system: &HamiltonianSystem,
    balance: &Balance,
    spectrum: &KowalewskiSpectrum,
    order: usize,
) -> Result<LaurentFamily<Complex64>> {
    let m = system.dim();
    let l: linalg::Mat<Complex64> = (0..m).map(|i| (0..m).map(|j| spectrum.matrix[(i, j)]).collect()).collect();
    expand_generic(system, &system.float_field(), balance, balance.x0.clone(), l, spectrum, order)
}

fn expand_generic<C: FromQi>(
    system: &HamiltonianSystem,
    field: &[MultiPoly<C>],
    balance: &Balance,
    x0: Vec<C>,
    l: linalg::Mat<C>,
    spectrum: &KowalewskiSpectrum,
    order: usize,
) -> Result<LaurentFamily<C>> {
    let m = system.dim();
    let nu = &balance.weights;
    if (order as i64) < spectrum.max_resonance() {
        return Err(Error::Truncation(format!("order {order} is below the largest resonance {}", spectrum.max_resonance())));
    }
    let injected = param_names(spectrum, &system.hints);
    let params: Vec<String> = injected.iter().flat_map(|(_, n)| n.clone()).collect();
    let mut coeffs: Vec<Vec<MultiPoly<C>>> = vec![x0.iter().map(|c| MultiPoly::constant(&params, c.clone())).collect()];
    for k in 1..=order as i64 {
        // Laurent polynomials through x^(k-1); exact, so no truncation bookkeeping
        let xs: Vec<Series<C>> = (0..m)
            .map(|i| Series::new(&params, -(nu[i] as i32), coeffs.iter().map(|c| c[i].clone()).collect(), None))
            .collect();
        let mut rhs = Vec::with_capacity(m);
        for (i, f) in field.iter().enumerate() {
            let e = (k - nu[i] - 1) as i32;
            let s = substitute_series(f, &xs, Some(e))?;
            rhs.push(-s.coeff(e)?);
        }
        let shifted: linalg::Mat<C> = l
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, v)| if i == j { v.clone() - C::from_i64(k) } else { v.clone() }).collect())
            .collect();
        let names = injected.iter().find(|(kk, _)| *kk == k).map(|(_, n)| n.clone());
        let z = match names {
            None => linalg::Solver::new(&shifted)?.apply_poly(&rhs),
            Some(names) => {
                let pref = system.hints.resonance_pivots.get(&k).cloned().unwrap_or_default();
                let (kernel, pivots) = linalg::kernel_with_pivots(&shifted, m, &pref);
                let keep: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
                let reduced: linalg::Mat<C> = shifted.iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect();
                let solver = linalg::Solver::new(&reduced)?;
                let compat = solver.compatibility_poly(&rhs);
                let worst = compat.iter().map(|p| p.max_abs_coeff()).fold(0.0, f64::max);
                let scale = rhs.iter().map(|p| p.max_abs_coeff()).fold(0.0, f64::max);
                if compat.iter().any(|p| !poly_negligible(p, scale)) {
                    return Err(Error::Incoherent { k, residual: worst });
                }
                let part = solver.apply_poly(&rhs);
                let mut z = vec![MultiPoly::zero(&params); m];
                for (idx, &c) in keep.iter().enumerate() {
                    z[c] = part[idx].clone();
                }
                for (b, name) in kernel.iter().zip(&names) {
                    let p = MultiPoly::var(&params, params.iter().position(|n| n == name).unwrap());
                    for (c, v) in b.iter().enumerate() {
                        if !v.is_zero() {
                            z[c] = &z[c] + &p.scale(v);
                        }
                    }
                }
                z
            }
        };
        coeffs.push(if C::EXACT { z } else { z.iter().map(|p| p.prune(1e-14)).collect() });
    }
    let slice = balance.slice.map(|p| {
        let name = system.hints.slice_name.clone().unwrap_or_else(|| format!("{}0", system.vars[p]));
        (p, name, x0[p].clone())
    });
    Ok(LaurentFamily { phase_vars: system.vars.clone(), weights: nu.clone(), params, injected, slice, coeffs, order })
}

/// A family found by the balance sweep.
#[derive(Clone, Debug)]
pub struct FoundFamily {
    pub balance: Balance,
    pub spectrum: KowalewskiSpectrum,
    pub family: LaurentFamily<Qi>,
}

impl FoundFamily {
    /// Depends on `dim - 1` free parameters, counting the slice.
    pub fn is_principal(&self) -> bool {
        self.spectrum.free_parameter_count + 1 == self.family.phase_vars.len()
    }
}

/// Sweeps for balances, continues them to the slice value and expands every
/// branch that lands on an exact point.
pub fn exact_families(system: &HamiltonianSystem, slice_value: &Qi, order: usize, opts: &BalanceOptions) -> Result<Vec<FoundFamily>> {
    let nu = detect_weights(system)?;
    let all = solve_balances(system, &nu, &[], opts)?;
    let br = branches(system, &all, system.hints.slice, slice_value, opts)?;
    let mut out = Vec::new();
    for b in br.into_iter().filter(|b| b.exact.is_some()) {
        let spectrum = kowalewski_spectrum(system, &b)?;
        let family = expand_family(system, &b, &spectrum, order)?;
        out.push(FoundFamily { balance: b, spectrum, family });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::dynamics::registry;

    fn exact_families(name: &str, order: usize) -> Vec<(KowalewskiSpectrum, LaurentFamily<Qi>)> {
        let def = registry::lookup(name, &BTreeMap::new()).unwrap();
        super::exact_families(&def.system, &def.slice_value, order, &BalanceOptions::default())
            .unwrap()
            .into_iter()
            .map(|f| (f.spectrum, f.family))
            .collect()
    }

    #[test]
    fn henon_heiles_family_is_coherent() {
        let def = registry::lookup("henon-heiles", &BTreeMap::new()).unwrap();
        let fams = exact_families("henon-heiles", 8);
        assert_eq!(fams.len(), 1);
        let (sp, fam) = &fams[0];
        assert_eq!(sp.integer_eigenvalues(), vec![-1, 0, 3, 6]);
        assert_eq!(sp.free_parameter_count, 3);
        assert_eq!(fam.params, vec!["beta", "gamma"]);
        for h in &def.system.invariants {
            assert!(fam.invariance_defects(h).unwrap().is_empty());
        }
        assert!(fam.ode_defects(&def.system.field).unwrap().is_empty());
        // q2 = -1/t^2 + alpha^2/12 + ... at alpha = 3/2, A = B = 0
        assert_eq!(fam.coeffs[2][1].as_constant().unwrap(), Qi::ratio(3, 16));
    }

    #[test]
    fn kowalewski_has_two_five_parameter_families() {
        let fams = exact_families("kowalewski", 6);
        // the sweep also finds lower balances with fewer parameters
        let principal: Vec<_> = fams.iter().filter(|(sp, _)| sp.free_parameter_count == 5).collect();
        assert_eq!(principal.len(), 2);
        assert!(fams.iter().all(|(sp, _)| sp.free_parameter_count <= 5));
        let def = registry::lookup("kowalewski", &BTreeMap::new()).unwrap();
        for (_, fam) in principal {
            assert_eq!(fam.params.len(), 4);
            for h in &def.system.invariants {
                assert!(fam.invariance_defects(h).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn clebsch_family_has_five_parameters() {
        let def = registry::lookup("clebsch", &BTreeMap::new()).unwrap();
        let fams = exact_families("clebsch", 5);
        let (sp, fam) = fams.iter().find(|(sp, _)| sp.free_parameter_count == 5).unwrap();
        assert_eq!(sp.integer_eigenvalues(), vec![-1, 0, 1, 2, 2, 2]);
        for h in &def.system.invariants {
            assert!(fam.invariance_defects(h).unwrap().is_empty());
        }
    }
}
