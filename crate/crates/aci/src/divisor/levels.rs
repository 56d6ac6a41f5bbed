use crate::algebra::{FromQi, MultiPoly};
use crate::error::Result;
use crate::painleve::{poly_negligible, LaurentFamily};

/// The `t^0` constraints of a family on a level set, after linear eliminations.
#[derive(Clone, Debug)]
pub struct ImposedLevels<C: FromQi> {
    pub params: Vec<String>,
    /// `t^0` coefficient of each invariant along the family.
    pub t0: Vec<MultiPoly<C>>,
    /// Parameters solved out, in order, as expressions in the later ones.
    pub eliminated: Vec<(String, MultiPoly<C>)>,
    /// Remaining relations among the surviving parameters.
    pub relations: Vec<MultiPoly<C>>,
    /// True when every invariant is constant along the family, so the level
    /// set imposes nothing.
    pub degenerate: bool,
}

impl<C: FromQi> ImposedLevels<C> {
    /// Parameters not eliminated.
    pub fn surviving(&self) -> Vec<usize> {
        (0..self.params.len()).filter(|&i| !self.eliminated.iter().any(|(n, _)| *n == self.params[i])).collect()
    }
}

/// Sets the `t^0` coefficients of the invariants to `levels` and solves out
/// parameters that enter linearly with constant coefficient, latest first.
pub fn impose_levels<C: FromQi>(family: &LaurentFamily<C>, invariants: &[MultiPoly<C>], levels: &[C]) -> Result<ImposedLevels<C>> {
    let params = family.params.clone();
    let mut t0 = Vec::new();
    for h in invariants {
        t0.push(family.compose(h)?.coeff(0)?);
    }
    let degenerate = t0.iter().all(|p| p.as_constant().is_some());
    let mut relations: Vec<MultiPoly<C>> = t0
        .iter()
        .zip(levels)
        .map(|(p, c)| p - &MultiPoly::constant(&params, c.clone()))
        .filter(|r| !poly_negligible(r, 1.0))
        .collect();
    let mut eliminated: Vec<(String, MultiPoly<C>)> = Vec::new();
    if degenerate {
        return Ok(ImposedLevels { params, t0, eliminated, relations: Vec::new(), degenerate });
    }
    loop {
        let mut pick = None;
        'search: for v in (0..params.len()).rev() {
            if eliminated.iter().any(|(n, _)| *n == params[v]) {
                continue;
            }
            for (ri, r) in relations.iter().enumerate() {
                if let Some((a, b)) = r.linear_in(v) {
                    if let Some(a) = a.as_constant() {
                        if !a.negligible(r.max_abs_coeff()) {
                            pick = Some((v, ri, (-&b).scale(&(C::one() / a))));
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, ri, expr)) = pick else { break };
        relations.remove(ri);
        let images: Vec<MultiPoly<C>> =
            (0..params.len()).map(|j| if j == v { expr.clone() } else { MultiPoly::var(&params, j) }).collect();
        relations = relations
            .iter()
            .map(|r| r.compose(&images, &params))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .map(|r| if C::EXACT { r } else { r.prune(1e-13) })
            .filter(|r| !poly_negligible(r, 1.0))
            .collect();
        for (_, e) in eliminated.iter_mut() {
            *e = e.compose(&images, &params)?;
        }
        eliminated.push((params[v].clone(), expr));
    }
    Ok(ImposedLevels { params, t0, eliminated, relations, degenerate })
}
