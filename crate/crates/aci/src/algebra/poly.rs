//! Sparse multivariate polynomials with dense exponent vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::field::{Complex64, Field, FromQi, Qi};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Field> MultiPoly<C> {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, C::one());
        p
    }

    pub fn monomial(vars: &[String], e: Vec<u32>, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(e, c);
        p
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * x^e`, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        assert_eq!(e.len(), self.vars.len(), "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Weighted degree of every term, `sum e_j w_j`.
    pub fn term_weights<'a>(&'a self, w: &'a [i64]) -> impl Iterator<Item = i64> + 'a {
        self.terms.keys().map(move |e| e.iter().zip(w).map(|(&k, &wj)| k as i64 * wj).sum())
    }

    /// Terms of maximal weighted degree.
    pub fn leading_part(&self, w: &[i64]) -> Self {
        let Some(top) = self.term_weights(w).max() else {
            return self.clone();
        };
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let we: i64 = e.iter().zip(w).map(|(&k, &wj)| k as i64 * wj).sum();
            if we == top {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut p = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let s = v.clone() * c.clone();
            if !s.is_zero() {
                p.terms.insert(e.clone(), s);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, c.clone() * C::from_i64(e[i] as i64));
            }
        }
        p
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars() {
            return Err(Error::Dimension(format!(
                "point has {} entries, polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Float evaluation regardless of the coefficient field.
    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        debug_assert_eq!(point.len(), self.nvars());
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_c64();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of coefficient magnitudes, used as a scale for float tolerances.
    pub fn norm1(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).sum()
    }

    /// Replaces every variable by a polynomial over `new_vars`.
    pub fn compose(&self, images: &[MultiPoly<C>], new_vars: &[String]) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::Dimension("compose: wrong number of images".into()));
        }
        let mut powers: Vec<Vec<MultiPoly<C>>> = images.iter().map(|p| vec![MultiPoly::one(new_vars), p.clone()]).collect();
        let mut acc = MultiPoly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(new_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &powers[i][1];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Sets variable `i` to `value`, keeping the variable list.
    pub fn substitute_value(&self, i: usize, value: &C) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            p.add_term(e2, c.clone() * value.pow(k));
        }
        p
    }

    /// Splits `p = a x_i + b` when `p` has degree at most one in `x_i`.
    pub fn linear_in(&self, i: usize) -> Option<(Self, Self)> {
        if self.degree_in(i) > 1 {
            return None;
        }
        let a = self.derivative(i);
        let b = self.substitute_value(i, &C::zero());
        Some((a, b))
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut p = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    pub fn to_float(&self) -> MultiPoly<Complex64> {
        self.map_coeffs(|c| c.to_c64())
    }

    /// Drops terms negligible relative to the largest coefficient (float mirror cleanup).
    pub fn prune(&self, rel: f64) -> Self {
        let scale = self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max);
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if C::EXACT || c.magnitude() > rel * scale {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    /// Re-expresses the polynomial over a superset (or reordering) of its variables.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).ok_or_else(|| Error::Dimension(format!("variable {v} missing"))))
            .collect::<Result<_>>()?;
        let mut p = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (k, &j) in map.iter().enumerate() {
                e2[j] = e[k];
            }
            p.add_term(e2, c.clone());
        }
        Ok(p)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

impl<C: Field + FromQi> MultiPoly<C> {
    pub fn from_exact(p: &MultiPoly<Qi>) -> Self {
        p.map_coeffs(|c| C::from_qi(c))
    }
}

fn check_vars<C>(a: &MultiPoly<C>, b: &MultiPoly<C>) {
    assert_eq!(a.vars, b.vars, "polynomials over different variable lists");
}

impl<C: Field> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        check_vars(self, o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<C: Field> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        check_vars(self, o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl<C: Field> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        check_vars(self, o);
        let mut p = MultiPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<C: Field> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, o: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Field> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

impl<C: Field> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Wire format: `{"vars": [...], "terms": [{"e": [...], "c": "p/q" | [re, im]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: Value,
}

/// Coefficients that can be written to and read from the JSON wire format.
pub trait JsonCoeff: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonCoeff for Qi {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) => n
                .as_i64()
                .map(Qi::from_i64)
                .ok_or_else(|| Error::Parse(format!("non-integer number {n} in exact polynomial"))),
            _ => Err(Error::Parse(format!("exact coefficient must be a string, got {v}"))),
        }
    }
}

impl JsonCoeff for Complex64 {
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(a) if a.len() == 2 => {
                let re = a[0].as_f64().ok_or_else(|| Error::Parse("bad real part".into()))?;
                let im = a[1].as_f64().ok_or_else(|| Error::Parse("bad imaginary part".into()))?;
                Ok(Complex64::new(re, im))
            }
            Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
            Value::String(s) => Ok(s.parse::<Qi>()?.to_c64()),
            _ => Err(Error::Parse(format!("bad float coefficient {v}"))),
        }
    }
}

impl<C: JsonCoeff> MultiPoly<C> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| TermJson { e: e.clone(), c: c.to_json() }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let mut p = Self::zero(&j.vars);
        for t in &j.terms {
            if t.e.len() != j.vars.len() {
                return Err(Error::Dimension(format!("term exponent {:?} vs {} variables", t.e, j.vars.len())));
            }
            p.add_term(t.e.clone(), C::from_json(&t.c)?);
        }
        Ok(p)
    }
}

/// Convenience for building variable lists.
pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vec<String> {
        names(&["x", "y"])
    }

    #[test]
    fn evaluates_simple_polynomial() {
        let v = xy();
        let p = &MultiPoly::<Qi>::var(&v, 0).pow(2) + &MultiPoly::var(&v, 1);
        assert_eq!(p.eval(&[Qi::from_i64(2), Qi::from_i64(3)]).unwrap(), Qi::from_i64(7));
        assert_eq!(MultiPoly::<Qi>::zero(&v).eval(&[Qi::one(), Qi::one()]).unwrap(), Qi::zero());
        assert!(p.eval(&[Qi::one()]).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let v = xy();
        let x = MultiPoly::<Qi>::var(&v, 0);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn derivative_and_linear_split() {
        let v = xy();
        let x = MultiPoly::<Qi>::var(&v, 0);
        let y = MultiPoly::<Qi>::var(&v, 1);
        let p = &(&x * &y) + &y.pow(3);
        assert_eq!(p.derivative(1), &x + &y.pow(2).scale(&Qi::from_i64(3)));
        let (a, b) = p.linear_in(0).unwrap();
        assert_eq!(a, y.clone());
        assert_eq!(b, y.pow(3));
        assert!(p.linear_in(1).is_none());
    }

    #[test]
    fn json_round_trip() {
        let v = xy();
        let p = MultiPoly::<Qi>::from_terms(&v, [(vec![2, 0], Qi::ratio(-7, 15552)), (vec![0, 1], Qi::gaussian((1, 2), (1, 1)))]);
        let s = serde_json::to_string(&p.to_json()).unwrap();
        let back = MultiPoly::<Qi>::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn compose_substitutes_images() {
        let v = xy();
        let x = MultiPoly::<Qi>::var(&v, 0);
        let y = MultiPoly::<Qi>::var(&v, 1);
        let p = &x * &y;
        let q = p.compose(&[&x + &y, &x - &y], &v).unwrap();
        assert_eq!(q, &x.pow(2) - &y.pow(2));
    }
}
