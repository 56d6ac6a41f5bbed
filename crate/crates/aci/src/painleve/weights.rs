use crate::algebra::{Field, MultiPoly};
use crate::error::{Error, Result};

use super::system::HamiltonianSystem;

const MAX_WEIGHT: i64 = 4;

/// Smallest positive weights `nu` for which every component `f_i` has
/// weighted degree exactly `nu_i + 1`.
///
/// Terms of lower weight are allowed: they drop out of the leading balance
/// and only enter the higher coefficients of a Laurent solution. Ties in
/// the weight sum are broken lexicographically. A stored weight vector is
/// checked and returned as is.
pub fn detect_weights(system: &HamiltonianSystem) -> Result<Vec<i64>> {
    if let Some(w) = &system.weights {
        check_weights(&system.field, w)?;
        return Ok(w.clone());
    }
    let m = system.dim();
    let mut best: Option<Vec<i64>> = None;
    let mut nu = vec![1i64; m];
    loop {
        if check_weights(&system.field, &nu).is_ok() {
            let better = match &best {
                None => true,
                Some(b) => nu.iter().sum::<i64>() < b.iter().sum::<i64>(),
            };
            if better {
                best = Some(nu.clone());
            }
        }
        // odometer over {1..MAX_WEIGHT}^m, lexicographic from the left
        let mut i = m;
        loop {
            if i == 0 {
                return best.ok_or_else(|| {
                    Error::NotHomogeneous(format!("no weights in 1..={MAX_WEIGHT} balance the field of {}", system.name))
                });
            }
            i -= 1;
            if nu[i] < MAX_WEIGHT {
                nu[i] += 1;
                for v in nu.iter_mut().skip(i + 1) {
                    *v = 1;
                }
                break;
            }
        }
    }
}

/// Errors unless every nonzero `f_i` has top weighted degree `nu_i + 1`.
pub fn check_weights<C: Field>(field: &[MultiPoly<C>], nu: &[i64]) -> Result<()> {
    if field.len() != nu.len() {
        return Err(Error::Dimension("one weight per component".into()));
    }
    if nu.iter().any(|&w| w <= 0) {
        return Err(Error::NotHomogeneous("weights must be positive".into()));
    }
    for (i, f) in field.iter().enumerate() {
        if let Some(top) = f.term_weights(nu).max() {
            if top != nu[i] + 1 {
                return Err(Error::NotHomogeneous(format!("component {i} has weighted degree {top}, expected {}", nu[i] + 1)));
            }
        }
    }
    Ok(())
}

/// The terms of each `f_i` of weight exactly `nu_i + 1`.
pub fn top_field<C: Field>(field: &[MultiPoly<C>], nu: &[i64]) -> Vec<MultiPoly<C>> {
    field
        .iter()
        .zip(nu)
        .map(|(f, &w)| weighted_part(f, nu, w + 1))
        .collect()
}

/// Terms of `p` whose weighted degree is exactly `w`.
pub fn weighted_part<C: Field>(p: &MultiPoly<C>, nu: &[i64], w: i64) -> MultiPoly<C> {
    let keep = p.terms().filter(|(e, _)| e.iter().zip(nu).map(|(&k, &v)| k as i64 * v).sum::<i64>() == w);
    MultiPoly::from_terms(p.vars(), keep.map(|(e, c)| (e.clone(), c.clone())))
}

/// Top weighted degree of a polynomial.
pub fn weighted_degree<C: Field>(p: &MultiPoly<C>, nu: &[i64]) -> Option<i64> {
    p.term_weights(nu).max()
}
