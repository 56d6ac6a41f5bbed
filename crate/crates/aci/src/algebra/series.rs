//! Truncated Laurent series in one variable `t` with polynomial coefficients.

use super::field::{Complex64, Field};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// `sum_{j} coeffs[j] t^(start + j)`, exact through exponent `order`
/// (`None` means the series is an exact Laurent polynomial).
#[derive(Clone, PartialEq)]
pub struct Series<C> {
    vars: Vec<String>,
    start: i32,
    coeffs: Vec<MultiPoly<C>>,
    order: Option<i32>,
}

impl<C: Field> std::fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Series(t^{} .. through {:?}: {:?})", self.start, self.order, self.coeffs)
    }
}

fn min_order(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<C: Field> Series<C> {
    pub fn new(vars: &[String], start: i32, coeffs: Vec<MultiPoly<C>>, order: Option<i32>) -> Self {
        let mut s = Series { vars: vars.to_vec(), start, coeffs, order };
        s.normalize();
        s
    }

    pub fn zero(vars: &[String]) -> Self {
        Series { vars: vars.to_vec(), start: 0, coeffs: Vec::new(), order: None }
    }

    pub fn constant(p: MultiPoly<C>) -> Self {
        let vars = p.vars().to_vec();
        Series::new(&vars, 0, vec![p], None)
    }

    /// The monomial `c t^k`.
    pub fn monomial(vars: &[String], k: i32, c: MultiPoly<C>) -> Self {
        Series::new(vars, k, vec![c], None)
    }

    fn normalize(&mut self) {
        if let Some(o) = self.order {
            let keep = (o - self.start + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.start = self.order.map_or(0, |o| o + 1);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// First exponent carrying a nonzero coefficient.
    pub fn start(&self) -> i32 {
        self.start
    }

    /// Largest exponent known exactly.
    pub fn order(&self) -> Option<i32> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Coefficient of `t^k`; errors when `k` lies beyond the truncation order.
    pub fn coeff(&self, k: i32) -> Result<MultiPoly<C>> {
        if let Some(o) = self.order {
            if k > o {
                return Err(Error::Truncation(format!("coefficient t^{k} requested, series known through t^{o}")));
            }
        }
        let idx = k - self.start;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            return Ok(MultiPoly::zero(&self.vars));
        }
        Ok(self.coeffs[idx as usize].clone())
    }

    /// Nonzero coefficients as `(exponent, coefficient)` pairs.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i32, &MultiPoly<C>)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| (self.start + j as i32, c))
    }

    pub fn truncate(&self, order: i32) -> Self {
        Series::new(&self.vars, self.start, self.coeffs.clone(), min_order(self.order, Some(order)))
    }

    pub fn add(&self, o: &Series<C>) -> Self {
        let order = min_order(self.order, o.order);
        let lo = self.start.min(o.start);
        let hi_a = self.start + self.coeffs.len() as i32;
        let hi_b = o.start + o.coeffs.len() as i32;
        let mut hi = hi_a.max(hi_b);
        if let Some(ord) = order {
            hi = hi.min(ord + 1);
        }
        let mut coeffs = Vec::new();
        for k in lo..hi.max(lo) {
            let a = self.coeff_raw(k);
            let b = o.coeff_raw(k);
            coeffs.push(&a + &b);
        }
        Series::new(&self.vars, lo, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Series::new(&self.vars, self.start, self.coeffs.iter().map(|c| -c).collect(), self.order)
    }

    pub fn sub(&self, o: &Series<C>) -> Self {
        self.add(&o.neg())
    }

    fn coeff_raw(&self, k: i32) -> MultiPoly<C> {
        let idx = k - self.start;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            MultiPoly::zero(&self.vars)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn scale(&self, c: &MultiPoly<C>) -> Self {
        Series::new(&self.vars, self.start, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    /// Product, optionally discarding exponents above `cap`.
    pub fn mul_capped(&self, o: &Series<C>, cap: Option<i32>) -> Self {
        let mut order = match (self.order, o.order) {
            (None, None) => None,
            (Some(a), None) => Some(a + o.start),
            (None, Some(b)) => Some(b + self.start),
            (Some(a), Some(b)) => Some((a + o.start).min(b + self.start)),
        };
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            // An exact zero factor makes the product exactly zero.
            if (self.coeffs.is_empty() && self.order.is_none()) || (o.coeffs.is_empty() && o.order.is_none()) {
                return Series::zero(&self.vars);
            }
        }
        order = min_order(order, cap);
        let start = self.start + o.start;
        let full = self.coeffs.len() + o.coeffs.len();
        let len = match order {
            Some(ord) => ((ord - start + 1).max(0) as usize).min(full),
            None => full,
        };
        let mut coeffs = vec![MultiPoly::zero(&self.vars); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Series::new(&self.vars, start, coeffs, order)
    }

    pub fn mul(&self, o: &Series<C>) -> Self {
        self.mul_capped(o, None)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.scale(&C::from_i64((self.start + j as i32) as i64)))
            .collect();
        Series::new(&self.vars, self.start - 1, coeffs, self.order.map(|o| o - 1))
    }

    /// Numerical value at parameter point `params` and time `t`.
    pub fn eval(&self, params: &[Complex64], t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            acc += c.eval_c64(params) * t.powi(self.start + j as i32);
        }
        acc
    }

    /// Magnitudes of the individual terms at a point, used for divergence checks.
    pub fn term_magnitudes(&self, params: &[Complex64], t: f64) -> Vec<f64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.eval_c64(params).norm() * t.abs().powi(self.start + j as i32))
            .collect()
    }
}

/// Substitutes a vector of series into a polynomial in the phase variables.
///
/// Terms above `cap` are not computed. The result knows its own truncation
/// order; an error is raised when no exponent of the result is known.
pub fn substitute_series<C: Field>(p: &MultiPoly<C>, series: &[Series<C>], cap: Option<i32>) -> Result<Series<C>> {
    if p.nvars() != series.len() {
        return Err(Error::Dimension(format!("polynomial has {} variables, {} series given", p.nvars(), series.len())));
    }
    let vars = match series.first() {
        Some(s) => s.vars().to_vec(),
        None => Vec::new(),
    };
    let mut powers: Vec<Vec<Series<C>>> =
        series.iter().map(|s| vec![Series::constant(MultiPoly::one(&vars)), s.clone()]).collect();
    let min_start: i32 = series.iter().map(|s| s.start().min(0)).sum::<i32>() * p.total_degree().unwrap_or(0) as i32;
    let mut acc = Series::zero(&vars);
    for (e, c) in p.terms() {
        let mut t = Series::constant(MultiPoly::constant(&vars, c.clone()));
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                // Powers are capped loosely; the product order is tracked exactly.
                let loose = cap.map(|c| c - min_start);
                let next = powers[i].last().unwrap().mul_capped(&powers[i][1], loose);
                powers[i].push(next);
            }
            let loose = cap.map(|c| c - min_start);
            t = t.mul_capped(&powers[i][k as usize], loose);
        }
        acc = acc.add(&t);
    }
    if let Some(c) = cap {
        // a requested cap is not an underflow
        return Ok(acc.truncate(c));
    }
    if let Some(o) = acc.order() {
        let lowest = p
            .terms()
            .map(|(e, _)| e.iter().zip(series).map(|(&k, s)| k as i32 * s.start()).sum::<i32>())
            .min()
            .unwrap_or(0);
        if o < lowest {
            return Err(Error::Truncation(format!("result known only through t^{o}, below its leading exponent t^{lowest}")));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Qi;
    use crate::algebra::poly::names;

    fn a_vars() -> Vec<String> {
        names(&["a"])
    }

    #[test]
    fn inverse_t_squared() {
        let v = a_vars();
        let inv = Series::<Qi>::monomial(&v, -1, MultiPoly::one(&v));
        let sq = inv.mul(&inv);
        assert_eq!(sq.start(), -2);
        assert_eq!(sq.coeff(-2).unwrap(), MultiPoly::one(&v));
    }

    #[test]
    fn difference_of_squares() {
        let v = a_vars();
        let a = MultiPoly::<Qi>::var(&v, 0);
        let one = MultiPoly::one(&v);
        let p = Series::new(&v, -1, vec![one.clone(), MultiPoly::zero(&v), a.clone()], Some(2));
        let m = Series::new(&v, -1, vec![one.clone(), MultiPoly::zero(&v), -&a], Some(2));
        let prod = p.mul(&m);
        assert_eq!(prod.coeff(-2).unwrap(), one);
        assert_eq!(prod.coeff(0).unwrap(), MultiPoly::zero(&v));
        assert_eq!(prod.coeff(1).unwrap(), MultiPoly::zero(&v));
        assert!(prod.coeff(2).is_err() || prod.coeff(2).unwrap() == -&a.pow(2));
    }

    #[test]
    fn product_order_tracks_principal_parts() {
        let v = a_vars();
        let one = MultiPoly::<Qi>::one(&v);
        let s = Series::new(&v, -2, vec![one.clone(), one.clone(), one.clone()], Some(0));
        let sq = s.mul(&s);
        assert_eq!(sq.order(), Some(-2));
    }

    #[test]
    fn substitution_of_identity() {
        let v = a_vars();
        let x = names(&["x"]);
        let p = MultiPoly::<Qi>::var(&x, 0);
        let s = Series::new(&v, -1, vec![MultiPoly::var(&v, 0), MultiPoly::one(&v)], Some(3));
        assert_eq!(substitute_series(&p, std::slice::from_ref(&s), None).unwrap(), s);
    }
}
