use serde::Serialize;

use crate::algebra::{Complex64, MultiPoly, Qi};
use crate::error::{Error, Result};
use crate::painleve::HamiltonianSystem;

/// `<dF, J dH>`.
pub fn poisson_bracket(f: &MultiPoly<Qi>, h: &MultiPoly<Qi>, j: &[Vec<MultiPoly<Qi>>]) -> Result<MultiPoly<Qi>> {
    let m = f.nvars();
    if j.len() != m || j.iter().any(|r| r.len() != m) || h.nvars() != m {
        return Err(Error::Dimension(format!("bracket needs an {m} x {m} matrix")));
    }
    let (df, dh) = (f.gradient(), h.gradient());
    let mut acc = MultiPoly::zero(f.vars());
    for (i, row) in j.iter().enumerate() {
        for (k, jik) in row.iter().enumerate() {
            if !jik.is_zero() && !df[i].is_zero() && !dh[k].is_zero() {
                acc = &acc + &(&(&df[i] * jik) * &dh[k]);
            }
        }
    }
    Ok(acc)
}

/// `J grad H`.
pub fn hamiltonian_vector_field(h: &MultiPoly<Qi>, j: &[Vec<MultiPoly<Qi>>]) -> Vec<MultiPoly<Qi>> {
    let dh = h.gradient();
    j.iter()
        .map(|row| row.iter().zip(&dh).fold(MultiPoly::zero(h.vars()), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

/// Canonical `[[0, I], [-I, 0]]` on `(q, p)`.
pub fn canonical_matrix(vars: &[String]) -> Vec<Vec<MultiPoly<Qi>>> {
    let m = vars.len();
    let n = m / 2;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|k| match (i < n, k == (i + n) % m) {
                    (true, true) => MultiPoly::one(vars),
                    (false, true) => -MultiPoly::one(vars),
                    _ => MultiPoly::zero(vars),
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct IntegratorOptions {
    /// Initial step, or the step itself when `adaptive` is false.
    pub step: f64,
    pub adaptive: bool,
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub blow_up: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions { step: 1e-3, adaptive: true, rtol: 1e-13, atol: 1e-13, max_steps: 2_000_000, blow_up: 1e12 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    #[serde(skip)]
    pub states: Vec<Vec<Complex64>>,
    /// `drift[i][s]` for invariant `i` at step `s`.
    pub drift: Vec<Vec<f64>>,
    pub blow_up: Option<f64>,
}

impl Trajectory {
    pub fn max_drift(&self) -> f64 {
        self.drift.iter().flatten().copied().fold(0.0, f64::max)
    }

    pub fn last(&self) -> &[Complex64] {
        self.states.last().map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Rows `t, x_1.., drift_1..` (real parts).
    pub fn to_csv<W: std::io::Write>(&self, vars: &[String], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        header.extend(vars.iter().cloned());
        header.extend((0..self.drift.len()).map(|i| format!("drift_H{}", i + 1)));
        w.write_record(&header)?;
        for (s, t) in self.times.iter().enumerate() {
            let mut row = vec![t.to_string()];
            row.extend(self.states[s].iter().map(|z| if z.im == 0.0 { z.re.to_string() } else { z.to_string() }));
            row.extend(self.drift.iter().map(|d| d[s].to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

// Dormand-Prince 5(4)
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

fn dp_step(f: &dyn Fn(&[Complex64]) -> Vec<Complex64>, x: &[Complex64], h: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let m = x.len();
    let mut k: Vec<Vec<Complex64>> = Vec::with_capacity(7);
    for s in 0..7 {
        let xs: Vec<Complex64> = (0..m).map(|i| x[i] + (0..s).map(|r| k[r][i] * (A[s][r] * h)).sum::<Complex64>()).collect();
        k.push(f(&xs));
    }
    let x5: Vec<Complex64> = (0..m).map(|i| x[i] + (0..7).map(|s| k[s][i] * (B5[s] * h)).sum::<Complex64>()).collect();
    let err: Vec<Complex64> = (0..m).map(|i| (0..7).map(|s| k[s][i] * ((B5[s] - B4[s]) * h)).sum()).collect();
    (x5, err)
}

/// Integrates the field of `system` from `t0` to `t1` (either direction).
pub fn integrate_between(system: &HamiltonianSystem, x0: &[Complex64], t0: f64, t1: f64, opts: &IntegratorOptions) -> Result<Trajectory> {
    if x0.len() != system.dim() {
        return Err(Error::Dimension(format!("{} needs {} initial values", system.name, system.dim())));
    }
    if x0.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || opts.step <= 0.0 {
        return Err(Error::Numerical("initial data must be finite and the step positive".into()));
    }
    let field = system.float_field();
    let invariants: Vec<MultiPoly<Complex64>> = system.invariants.iter().map(|p| p.to_float()).collect();
    let f = |x: &[Complex64]| -> Vec<Complex64> { field.iter().map(|p| p.eval_c64(x)).collect() };
    let h0: Vec<Complex64> = invariants.iter().map(|p| p.eval_c64(x0)).collect();
    let drift = |x: &[Complex64]| -> Vec<f64> { invariants.iter().zip(&h0).map(|(p, v)| (p.eval_c64(x) - v).norm() / v.norm().max(1.0)).collect() };
    let dir = (t1 - t0).signum();
    let mut traj = Trajectory { times: vec![t0], states: vec![x0.to_vec()], drift: vec![vec![0.0]; invariants.len()], blow_up: None };
    let (mut t, mut x, mut h) = (t0, x0.to_vec(), opts.step.min((t1 - t0).abs()));
    for _ in 0..opts.max_steps {
        if (t1 - t) * dir <= 1e-15 * t1.abs().max(1.0) {
            return Ok(traj);
        }
        h = h.min((t1 - t).abs());
        let (xn, err) = dp_step(&f, &x, dir * h);
        let next = if opts.adaptive {
            let e = (0..x.len()).map(|i| err[i].norm() / (opts.atol + opts.rtol * x[i].norm().max(xn[i].norm()))).fold(0.0, f64::max);
            let ok = e <= 1.0;
            let factor = if e == 0.0 { 5.0 } else { (0.9 * e.powf(-0.2)).clamp(0.2, 5.0) };
            let next = h * factor;
            if !ok {
                h = next;
                if h < 1e-14 * t.abs().max(1.0) {
                    return Err(Error::Numerical(format!("step size underflow at t = {t}")));
                }
                continue;
            }
            next
        } else {
            h
        };
        t += dir * h;
        h = next;
        x = xn;
        let norm = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        traj.times.push(t);
        for (d, v) in traj.drift.iter_mut().zip(drift(&x)) {
            d.push(v);
        }
        traj.states.push(x.clone());
        if !norm.is_finite() || norm > opts.blow_up {
            // for x ~ c (t* - t)^(-1), |x| / |x'| = |t* - t|
            let speed = f(&x).iter().map(|z| z.norm()).fold(0.0, f64::max);
            traj.blow_up = Some(t + dir * if speed.is_finite() && speed > 0.0 { norm / speed } else { 0.0 });
            return Ok(traj);
        }
    }
    Err(Error::Numerical(format!("more than {} steps", opts.max_steps)))
}

/// Integrates over `[0, t_end]`.
pub fn integrate(system: &HamiltonianSystem, x0: &[Complex64], t_end: f64, opts: &IntegratorOptions) -> Result<Trajectory> {
    integrate_between(system, x0, 0.0, t_end, opts)
}

pub fn real_state(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::names;
    use crate::dynamics::registry::lookup;

    #[test]
    fn canonical_pair_brackets_to_one() {
        let v = names(&["q1", "q2", "p1", "p2"]);
        let j = canonical_matrix(&v);
        let b = poisson_bracket(&MultiPoly::var(&v, 0), &MultiPoly::var(&v, 2), &j).unwrap();
        assert_eq!(b, MultiPoly::one(&v));
        assert!(hamiltonian_vector_field(&MultiPoly::zero(&v), &j).iter().all(|p| p.is_zero()));
    }

    #[test]
    fn henon_heiles_conserves_invariants() {
        let def = lookup("hh", &Default::default()).unwrap();
        let tr = integrate(&def.system, &real_state(&[0.05, 0.02, 0.0, 0.03]), 5.0, &IntegratorOptions::default()).unwrap();
        assert!(tr.max_drift() < 1e-8, "{}", tr.max_drift());
        assert!((tr.times.last().unwrap() - 5.0).abs() < 1e-12);
        let rest = integrate(&def.system, &real_state(&[0.0; 4]), 5.0, &IntegratorOptions::default()).unwrap();
        assert!(rest.last().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn fixed_step_order_is_at_least_four() {
        let def = lookup("hh", &Default::default()).unwrap();
        let x0 = real_state(&[0.1, -0.2, 0.3, 0.25]);
        let reference = integrate(&def.system, &x0, 1.0, &IntegratorOptions::default()).unwrap();
        let err = |h: f64| {
            let o = IntegratorOptions { step: h, adaptive: false, ..Default::default() };
            let tr = integrate(&def.system, &x0, 1.0, &o).unwrap();
            tr.last().iter().zip(reference.last()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
        };
        let ratio = err(0.1) / err(0.05);
        assert!(ratio.log2() >= 4.0, "observed order {}", ratio.log2());
    }

    #[test]
    fn detects_blow_up() {
        let def = lookup("hh", &Default::default()).unwrap();
        let tr = integrate(&def.system, &real_state(&[0.0, -10.0, 0.0, 0.0]), 5.0, &IntegratorOptions::default()).unwrap();
        let tb = tr.blow_up.expect("q2 runs off to -infinity");
        assert!(tb > 0.0 && tb < 5.0);
    }
}
