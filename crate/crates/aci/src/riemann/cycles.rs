use serde::Serialize;

use crate::algebra::Complex64;
use crate::error::{Error, Result};

use super::model::HyperellipticModel;

/// A segment `[start, end]` of the branch chain, parametrized as
/// `x = m + h cos(theta)` with `theta` running from 0 (at `end`) to pi (at
/// `start`).
#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    #[serde(serialize_with = "ser_c")]
    pub start: Complex64,
    #[serde(serialize_with = "ser_c")]
    pub end: Complex64,
    #[serde(skip)]
    others: Vec<(Complex64, Complex64)>,
    #[serde(skip)]
    lead_sqrt: Complex64,
}

fn ser_c<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    [z.re, z.im].serialize(s)
}

impl Edge {
    pub fn mid(&self) -> Complex64 {
        (self.start + self.end) / 2.0
    }

    pub fn half(&self) -> Complex64 {
        (self.end - self.start) / 2.0
    }

    pub fn x(&self, theta: f64) -> Complex64 {
        self.mid() + self.half() * theta.cos()
    }

    /// The branch of `sqrt(P(x) / ((x - start)(x - end)))` along the edge.
    /// Each remaining factor sees the segment under an angle below pi, so
    /// its root is continued from the midpoint by the principal branch.
    pub fn q(&self, theta: f64) -> Complex64 {
        let x = self.x(theta);
        let mut acc = self.lead_sqrt;
        for (e, root_mid) in &self.others {
            let w = x - e;
            let w_mid = root_mid * root_mid;
            acc *= root_mid * (w / w_mid).sqrt();
        }
        acc
    }

    /// Sheet value `y` on the outgoing leg close to `theta`, up to a positive factor.
    fn direction(&self, theta: f64) -> Complex64 {
        Complex64::new(0.0, 1.0) * self.half() * self.q(theta)
    }
}

/// Edge cycles around consecutive branch points of an x-monotone chain and
/// a symplectic basis built from them.
#[derive(Clone, Debug, Serialize)]
pub struct CycleSet {
    pub edges: Vec<Edge>,
    /// Intersection numbers of the edge cycles.
    pub intersection: Vec<Vec<i64>>,
    /// Rows `a_1..a_g, b_1..b_g` as integer combinations of edge cycles.
    pub symplectic: Vec<Vec<i64>>,
    /// Edge combinations that pair trivially with everything.
    pub radical: Vec<Vec<i64>>,
    pub genus: usize,
}

impl CycleSet {
    pub fn a(&self, i: usize) -> &[i64] {
        &self.symplectic[i]
    }

    pub fn b(&self, i: usize) -> &[i64] {
        &self.symplectic[self.genus + i]
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.genus).map(|i| format!("a{}", i + 1)).chain((0..self.genus).map(|i| format!("b{}", i + 1))).collect()
    }

    /// Intersection form restricted to the symplectic basis.
    pub fn symplectic_form(&self) -> Vec<Vec<i64>> {
        let s = &self.symplectic;
        s.iter().map(|u| s.iter().map(|v| pair(&self.intersection, u, v)).collect()).collect()
    }

    /// Flips the pair `(a_i, b_i)`.
    pub fn flip(&mut self, i: usize) {
        let g = self.genus;
        for r in [i, g + i] {
            for v in self.symplectic[r].iter_mut() {
                *v = -*v;
            }
        }
    }
}

pub(crate) fn pair(k: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let mut s = 0;
    for (i, ui) in u.iter().enumerate() {
        if *ui == 0 {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            s += ui * k[i][j] * vj;
        }
    }
    s
}

fn grid(v: f64) -> i64 {
    (v * 1e9).round() as i64
}

/// Sorts the branch points by real then imaginary part and builds the edge
/// cycles with their intersection numbers and a symplectic basis.
pub fn build_cycles(model: &HyperellipticModel) -> Result<CycleSet> {
    let mut pts = model.branch_points.clone();
    if pts.len() < 3 {
        return Err(Error::Routing("genus zero: no cycles to build".into()));
    }
    pts.sort_by_key(|z| (grid(z.re), grid(z.im)));
    let lead_sqrt = model.leading().sqrt();
    let mut edges = Vec::new();
    for w in pts.windows(2) {
        let (start, end) = (w[0], w[1]);
        let len = (end - start).norm();
        let mut others = Vec::new();
        for e in pts.iter().filter(|&&e| e != start && e != end) {
            if segment_distance(*e, start, end) <= 1e-6 * len {
                return Err(Error::Routing(format!("branch point {e} lies on the edge [{start}, {end}]")));
            }
            let mid = (start + end) / 2.0;
            others.push((*e, (mid - e).sqrt()));
        }
        edges.push(Edge { start, end, others, lead_sqrt });
    }
    let n = edges.len();
    let mut intersection = vec![vec![0i64; n]; n];
    for i in 0..n.saturating_sub(1) {
        let u = edges[i].direction(0.0);
        let v = edges[i + 1].direction(std::f64::consts::PI);
        let s = (-(u.conj() * v)).im;
        if s.abs() <= 1e-12 * u.norm() * v.norm() {
            return Err(Error::Routing(format!("edges {i} and {} meet tangentially", i + 1)));
        }
        let s = s.signum() as i64;
        intersection[i][i + 1] = s;
        intersection[i + 1][i] = -s;
    }
    let (symplectic, radical) = symplectic_basis(&intersection)?;
    let genus = symplectic.len() / 2;
    if genus != model.genus {
        return Err(Error::Routing(format!("found {genus} symplectic pairs, expected {}", model.genus)));
    }
    Ok(CycleSet { edges, intersection, symplectic, radical, genus })
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let t = ((p - a) * d.conj()).re / d.norm_sqr();
    (p - (a + d * t.clamp(0.0, 1.0))).norm()
}

/// Symplectic Gram-Schmidt over the integers. Odd-indexed edges (the second,
/// fourth, ...) are tried first as a-cycles.
pub fn symplectic_basis(k: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let n = k.len();
    let order: Vec<usize> = (1..n).step_by(2).chain((0..n).step_by(2)).collect();
    let mut pool: Vec<Vec<i64>> = order
        .iter()
        .map(|&i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let (mut a_list, mut b_list) = (Vec::new(), Vec::new());
    loop {
        let mut found = None;
        'outer: for i in 0..pool.len() {
            for j in 0..pool.len() {
                if i != j && pair(k, &pool[i], &pool[j]).abs() == 1 {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = found else { break };
        let a = pool[i].clone();
        let mut b = pool[j].clone();
        if pair(k, &a, &b) == -1 {
            b.iter_mut().for_each(|v| *v = -*v);
        }
        let (hi, lo) = (i.max(j), i.min(j));
        pool.remove(hi);
        pool.remove(lo);
        for w in pool.iter_mut() {
            let (wb, wa) = (pair(k, w, &b), pair(k, w, &a));
            for t in 0..n {
                w[t] += -wb * a[t] + wa * b[t];
            }
        }
        a_list.push(a);
        b_list.push(b);
    }
    for w in &pool {
        if pool.iter().any(|v| pair(k, w, v) != 0) {
            return Err(Error::Canonical("intersection form is not unimodular on its nondegenerate part".into()));
        }
    }
    a_list.extend(b_list);
    Ok((a_list, pool))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_basis_is_symplectic() {
        let n = 5;
        let mut k = vec![vec![0i64; n]; n];
        for i in 0..n - 1 {
            k[i][i + 1] = 1;
            k[i + 1][i] = -1;
        }
        let (s, rad) = symplectic_basis(&k).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(rad.len(), 1);
        for (i, u) in s.iter().enumerate() {
            for (j, v) in s.iter().enumerate() {
                let want = if j == i + 2 && i < 2 { 1 } else if i == j + 2 && j < 2 { -1 } else { 0 };
                assert_eq!(pair(&k, u, v), want);
            }
        }
    }
}
