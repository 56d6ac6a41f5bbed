use serde::{Deserialize, Serialize};

use crate::algebra::{horner, poly_roots, Complex64, Field, MultiPoly};
use crate::error::{Error, Result};

/// The plane model `y^2 = P(x)`.
#[derive(Clone, Debug, Serialize)]
pub struct HyperellipticModel {
    /// Coefficients of `P`, low to high.
    #[serde(serialize_with = "crate::painleve::ser_cvec")]
    pub coeffs: Vec<Complex64>,
    pub degree: usize,
    #[serde(serialize_with = "crate::painleve::ser_cvec")]
    pub branch_points: Vec<Complex64>,
    pub genus: usize,
    pub branch_at_infinity: bool,
}

impl HyperellipticModel {
    pub fn new(coeffs: &[Complex64]) -> Result<Self> {
        let roots = branch_points(coeffs)?;
        let degree = roots.len();
        if degree < 1 {
            return Err(Error::Parameters("P must be nonconstant".into()));
        }
        let mut c = coeffs.to_vec();
        c.truncate(degree + 1);
        Ok(HyperellipticModel {
            coeffs: c,
            degree,
            branch_points: roots,
            genus: (degree - 1) / 2,
            branch_at_infinity: degree % 2 == 1,
        })
    }

    /// From a polynomial in one variable, exact or float.
    pub fn from_poly<C: Field>(p: &MultiPoly<C>) -> Result<Self> {
        if p.nvars() != 1 {
            return Err(Error::Dimension("P must be univariate".into()));
        }
        let d = p.degree_in(0) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); d + 1];
        for (e, a) in p.terms() {
            c[e[0] as usize] += a.to_c64();
        }
        Self::new(&c)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        horner(&self.coeffs, x).0
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree]
    }
}

/// Roots of `P`, Newton-polished, rejecting near-multiple roots.
pub fn branch_points(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let roots = poly_roots(coeffs)?;
    let norm = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for r in &roots {
        let v = horner(coeffs, *r).0.norm();
        let scale = norm * r.norm().max(1.0).powi(coeffs.len() as i32 - 1);
        if v > 1e-12 * scale {
            return Err(Error::Numerical(format!("root {r} polished only to |P| = {v:e}")));
        }
    }
    for (i, a) in roots.iter().enumerate() {
        for b in roots.iter().skip(i + 1) {
            if (a - b).norm() <= 1e-8 {
                return Err(Error::SingularCurve(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(roots)
}

/// Genus and branch count of a double cover of a genus `g0` curve with `2n`
/// branch points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverData {
    pub g0: usize,
    pub n: usize,
    pub g: usize,
}

impl CoverData {
    pub fn new(g0: usize, n: usize) -> Result<Self> {
        Ok(CoverData { g0, n, g: hurwitz_genus(g0, n)? })
    }

    pub fn prym_dim(&self) -> usize {
        self.g - self.g0
    }

    pub fn branch_points(&self) -> usize {
        2 * self.n
    }
}

/// Riemann-Hurwitz for a double cover: `g = 2 g0 + n - 1`.
pub fn hurwitz_genus(g0: usize, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Parameters("a ramified double cover needs n >= 1".into()));
    }
    Ok(2 * g0 + n - 1)
}

/// Differentials `x^j dx / y` in a chosen order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DifferentialBasis {
    pub exponents: Vec<u32>,
    pub labels: Vec<String>,
}

impl DifferentialBasis {
    /// `dx/y, x dx/y, ..., x^(g-1) dx/y`.
    pub fn standard(genus: usize) -> Self {
        Self::ordered(&(0..genus as u32).collect::<Vec<_>>())
    }

    pub fn ordered(exponents: &[u32]) -> Self {
        let labels = exponents
            .iter()
            .map(|&j| match j {
                0 => "dx/y".to_string(),
                1 => "x dx/y".to_string(),
                _ => format!("x^{j} dx/y"),
            })
            .collect();
        DifferentialBasis { exponents: exponents.to_vec(), labels }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// Checks that this is a basis of holomorphic differentials on `model`.
    pub fn validate(&self, model: &HyperellipticModel) -> Result<()> {
        let mut e = self.exponents.clone();
        e.sort();
        if e != (0..model.genus as u32).collect::<Vec<_>>() {
            return Err(Error::Dimension(format!("need exponents 0..{} in some order", model.genus)));
        }
        Ok(())
    }
}
