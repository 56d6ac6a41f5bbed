use serde::Serialize;

use crate::algebra::{Complex64, FromQi};
use crate::error::{Error, Result};
use crate::painleve::{HamiltonianSystem, LaurentFamily};

use super::flow::{integrate_between, IntegratorOptions};

/// Truncated Laurent series at `t0`. Errors when the last terms are not
/// small against the leading ones.
pub fn laurent_seed<C: FromQi>(family: &LaurentFamily<C>, params: &[Complex64], t0: f64) -> Result<Vec<Complex64>> {
    if params.len() != family.params.len() {
        return Err(Error::Dimension(format!("family has {} parameters", family.params.len())));
    }
    let t = Complex64::new(t0, 0.0);
    for i in 0..family.phase_vars.len() {
        let terms: Vec<f64> = family.coeffs.iter().enumerate().map(|(k, c)| c[i].eval_c64(params).norm() * t0.abs().powi(k as i32)).collect();
        let head = terms.iter().take(2).copied().fold(0.0, f64::max);
        let tail = terms.iter().rev().take(2).copied().fold(0.0, f64::max);
        if tail > head.max(1e-300) {
            return Err(Error::Divergent(t0));
        }
    }
    Ok(family.state(params, t))
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedCheck {
    pub t0: f64,
    pub rel_error: f64,
    #[serde(skip)]
    pub seed: Vec<Complex64>,
    #[serde(skip)]
    pub series: Vec<Complex64>,
    #[serde(skip)]
    pub integrated: Vec<Complex64>,
}

/// Integrates from the seed at `t0` to `2 t0` and compares with the series.
pub fn seed_check<C: FromQi>(system: &HamiltonianSystem, family: &LaurentFamily<C>, params: &[Complex64], t0: f64) -> Result<SeedCheck> {
    let seed = laurent_seed(family, params, t0)?;
    let series = laurent_seed(family, params, 2.0 * t0)?;
    let opts = IntegratorOptions { step: t0 * 1e-3, ..Default::default() };
    let traj = integrate_between(system, &seed, t0, 2.0 * t0, &opts)?;
    if traj.blow_up.is_some() {
        return Err(Error::Numerical("seed trajectory blew up before 2 t0".into()));
    }
    let integrated = traj.last().to_vec();
    let scale = series.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let rel_error = series.iter().zip(&integrated).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
    Ok(SeedCheck { t0, rel_error, seed, series, integrated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Qi};
    use crate::dynamics::registry::lookup;
    use crate::painleve::{exact_families, BalanceOptions};

    #[test]
    fn henon_heiles_seed_leading_terms() {
        let def = lookup("hh", &Default::default()).unwrap();
        let fams = exact_families(&def.system, &Qi::from_i64(1), 8, &BalanceOptions::default()).unwrap();
        let fam = &fams[0].family;
        let zero = [Complex64::new(0.0, 0.0); 2];
        let x = laurent_seed(fam, &zero, 0.01).unwrap();
        assert!((x[1].re - (-1e4 + 1.0 / 12.0)).abs() < 1e-3, "{}", x[1]);
        let check = seed_check(&def.system, fam, &[Complex64::new(0.3, 0.0), Complex64::new(-0.2, 0.0)], 0.01).unwrap();
        assert!(check.rel_error < 1e-6, "{}", check.rel_error);
    }
}
