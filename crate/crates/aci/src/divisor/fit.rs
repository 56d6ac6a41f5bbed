use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{linalg, rationalize, Complex64, Field, MultiPoly, Qi};
use crate::error::{Error, Result};

/// A point on a divisor curve together with the level it was sampled on.
#[derive(Clone, Debug, Serialize)]
pub struct DivisorSample {
    pub vars: Vec<String>,
    #[serde(serialize_with = "crate::painleve::ser_cvec")]
    pub point: Vec<Complex64>,
    pub level: Vec<String>,
}

/// Monomial sets for fitting.
#[derive(Clone, Debug)]
pub enum Basis {
    /// All monomials of total degree at most `d`.
    TotalDegree(u32),
    /// Monomials with `sum w_j e_j <= bound`.
    Weighted { weights: Vec<u32>, bound: u32 },
    Explicit(Vec<Vec<u32>>),
}

impl Basis {
    pub fn monomials(&self, nvars: usize) -> Vec<Vec<u32>> {
        match self {
            Basis::Explicit(m) => m.clone(),
            Basis::TotalDegree(d) => weighted_monomials(&vec![1; nvars], *d),
            Basis::Weighted { weights, bound } => weighted_monomials(weights, *bound),
        }
    }
}

fn weighted_monomials(w: &[u32], bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; w.len()];
    fn rec(i: usize, left: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0;
        while k * w[i] <= left {
            cur[i] = k;
            rec(i + 1, left - k * w[i], w, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    rec(0, bound, w, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct FittedCurve {
    pub vars: Vec<String>,
    pub basis: Vec<Vec<u32>>,
    /// Normalized float coefficients, before snapping.
    pub relation: MultiPoly<Complex64>,
    /// The relation with every coefficient snapped to Q(i), if all snapped.
    pub rational: Option<MultiPoly<Qi>>,
    pub residual: f64,
    /// Smallest over second-smallest singular value of the scaled sample matrix.
    pub conditioning: f64,
}

impl FittedCurve {
    pub fn report(&self) -> CurveReport {
        CurveReport {
            vars: self.vars.clone(),
            relation: self.rational.as_ref().map(|p| p.to_string()),
            coefficients: self
                .relation
                .terms()
                .map(|(e, c)| CoefficientReport {
                    monomial: e.clone(),
                    value: [c.re, c.im],
                    rational: snap_coefficient(*c).map(|q| q.to_string()),
                })
                .collect(),
            residual: self.residual,
            conditioning: self.conditioning,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    pub monomial: Vec<u32>,
    pub value: [f64; 2],
    pub rational: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub vars: Vec<String>,
    pub relation: Option<String>,
    pub coefficients: Vec<CoefficientReport>,
    pub residual: f64,
    pub conditioning: f64,
}

/// Continued-fraction snap with denominators up to 1e6, accepted within
/// `1e-8 * max(1, |c|)` in each of the real and imaginary parts.
pub fn snap_coefficient(c: Complex64) -> Option<Qi> {
    Some(Qi::new(rationalize(c.re, 1_000_000, 1e-8)?, rationalize(c.im, 1_000_000, 1e-8)?))
}

/// Null vector of the sample Vandermonde matrix, normalized so that the
/// coefficient of `normalize` is one (or the largest coefficient if absent).
pub fn fit_curve(samples: &[DivisorSample], vars: &[String], basis: &Basis, normalize: Option<&[u32]>) -> Result<FittedCurve> {
    let mons = basis.monomials(vars.len());
    if samples.len() < 2 * mons.len() {
        return Err(Error::TooFewSamples { have: samples.len(), need: 2 * mons.len() });
    }
    let eval = |x: &[Complex64], e: &[u32]| e.iter().zip(x).fold(Complex64::new(1.0, 0.0), |acc, (&k, &v)| acc * v.powu(k));
    let mut v = DMatrix::from_fn(samples.len(), mons.len(), |i, j| eval(&samples[i].point, &mons[j]));
    let mut col_scale = vec![1.0; mons.len()];
    for (j, s) in col_scale.iter_mut().enumerate() {
        *s = v.column(j).norm().max(f64::MIN_POSITIVE);
        v.column_mut(j).unscale_mut(*s);
    }
    let (null, sv) = linalg::svd_null_space(&v, 1e-9);
    if null.len() != 1 {
        return Err(Error::AmbiguousFit(null.len()));
    }
    let mut sorted = sv.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let conditioning = if sorted.len() > 1 { sorted[0] / sorted[1] } else { 0.0 };
    let raw: Vec<Complex64> = null[0].iter().zip(&col_scale).map(|(c, s)| c / *s).collect();
    let pivot = match normalize.and_then(|n| mons.iter().position(|m| m.as_slice() == n)) {
        Some(p) => p,
        None => (0..raw.len()).max_by(|&a, &b| raw[a].norm().partial_cmp(&raw[b].norm()).unwrap()).unwrap(),
    };
    if raw[pivot].norm() <= 1e-12 * raw.iter().map(|c| c.norm()).fold(0.0, f64::max) {
        return Err(Error::Numerical("normalizing monomial has a vanishing coefficient".into()));
    }
    let coeffs: Vec<Complex64> = raw.iter().map(|c| c / raw[pivot]).collect();
    let relation = MultiPoly::from_terms(vars, mons.iter().cloned().zip(coeffs.iter().copied()))
        .prune(1e-11);
    let residual = verify_membership(&relation, samples);
    let snapped: Option<Vec<Qi>> = relation.terms().map(|(_, c)| snap_coefficient(*c)).collect();
    let rational = snapped.map(|qs| MultiPoly::from_terms(vars, relation.terms().map(|(e, _)| e.clone()).zip(qs)));
    Ok(FittedCurve { vars: vars.to_vec(), basis: mons, relation, rational, residual, conditioning })
}

/// Largest `|curve(sample)|` over the samples, in the float mirror.
pub fn verify_membership<C: Field>(curve: &MultiPoly<C>, samples: &[DivisorSample]) -> f64 {
    samples.iter().map(|s| curve.eval_c64(&s.point).norm()).fold(0.0, f64::max)
}

/// Rewrites a curve even in variable `var` in `zeta = var^2`.
pub fn quotient_curve(curve: &MultiPoly<Qi>, var: usize, zeta: &str) -> Result<MultiPoly<Qi>> {
    if curve.terms().any(|(e, _)| e[var] % 2 == 1) {
        return Err(Error::Involution(format!("curve is not invariant under {} -> -{}", curve.vars()[var], curve.vars()[var])));
    }
    let mut vars = curve.vars().to_vec();
    vars[var] = zeta.to_string();
    Ok(MultiPoly::from_terms(
        &vars,
        curve.terms().map(|(e, c)| {
            let mut e2 = e.clone();
            e2[var] /= 2;
            (e2, c.clone())
        }),
    ))
}

/// Substitutes `zeta = var^2` back, inverting [`quotient_curve`].
pub fn lift_quotient(quotient: &MultiPoly<Qi>, var: usize, name: &str) -> MultiPoly<Qi> {
    let mut vars = quotient.vars().to_vec();
    vars[var] = name.to_string();
    MultiPoly::from_terms(
        &vars,
        quotient.terms().map(|(e, c)| {
            let mut e2 = e.clone();
            e2[var] *= 2;
            (e2, c.clone())
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::names;

    fn planted_samples(p: &MultiPoly<Qi>, n: usize) -> Vec<DivisorSample> {
        // points (x, y) with y solving p(x, y) = 0 for y^2 - q(x) = 0 shapes
        let pf = p.to_float();
        (0..n)
            .map(|k| {
                let x = Complex64::new(0.3 + 0.05 * k as f64, 0.1 * ((k % 3) as f64 - 1.0));
                // y^2 = -p(x, 0), since p = y^2 + r(x)
                let r = pf.eval_c64(&[x, Complex64::new(0.0, 0.0)]);
                let y = (-r).sqrt() * if k % 2 == 0 { 1.0 } else { -1.0 };
                DivisorSample { vars: p.vars().to_vec(), point: vec![x, y], level: Vec::new() }
            })
            .collect()
    }

    #[test]
    fn plant_and_recover() {
        let v = names(&["a", "b"]);
        let p = crate::algebra::parse_poly("b^2 + 7/15552 a^8 - 2/3 a^2 - 1", &v, &Default::default()).unwrap();
        let samples = planted_samples(&p, 40);
        let basis = Basis::Weighted { weights: vec![1, 4], bound: 8 };
        let fit = fit_curve(&samples, &v, &basis, Some(&[0, 2])).unwrap();
        assert_eq!(fit.rational.unwrap(), p);
        assert!(fit.residual < 1e-10);
    }

    #[test]
    fn quotient_roundtrip() {
        let v = names(&["a", "b"]);
        let p = crate::algebra::parse_poly("b^2 - a^8 + 3 a^2 - 1", &v, &Default::default()).unwrap();
        let q = quotient_curve(&p, 0, "z").unwrap();
        assert_eq!(q.degree_in(0), 4);
        assert_eq!(lift_quotient(&q, 0, "a"), p);
        let odd = crate::algebra::parse_poly("b^2 - a^3", &v, &Default::default()).unwrap();
        assert!(quotient_curve(&odd, 0, "z").is_err());
    }

    #[test]
    fn too_few_samples() {
        let v = names(&["a", "b"]);
        assert!(matches!(fit_curve(&[], &v, &Basis::TotalDegree(2), None), Err(Error::TooFewSamples { .. })));
    }
}
