//! Integer linear algebra on small dense matrices.

use crate::error::{Error, Result};

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn matmul(a: &IMat, b: &IMat) -> IMat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

pub fn matvec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn transpose(a: &IMat) -> IMat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// The standard symplectic form `[[0, I], [-I, 0]]` of size `2g`.
pub fn standard_form(g: usize) -> IMat {
    let mut j = vec![vec![0; 2 * g]; 2 * g];
    for i in 0..g {
        j[i][g + i] = 1;
        j[g + i][i] = -1;
    }
    j
}

pub fn form(j: &IMat, u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(j).map(|(ui, row)| ui * row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>()).sum()
}

/// Smith normal form `U A V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IMat,
    pub v: IMat,
    /// Nonzero invariant factors, each dividing the next.
    pub invariants: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

pub fn smith(a: &IMat) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for r in d.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = d[i][t] / d[t][t];
            if q != 0 {
                for j in 0..cols {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
            clean &= d[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = d[t][j] / d[t][t];
            if q != 0 {
                for i in 0..rows {
                    d[i][j] -= q * d[i][t];
                }
                for i in 0..cols {
                    v[i][j] -= q * v[i][t];
                }
            }
            clean &= d[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % d[t][t] != 0)) {
            for j in 0..cols {
                d[t][j] += d[i][j];
            }
            for j in 0..rows {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if d[t][t] < 0 {
            for j in 0..cols {
                d[t][j] = -d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let invariants = (0..rows.min(cols)).map(|i| d[i][i]).take_while(|&x| x != 0).collect();
    Smith { u, v, invariants, rows, cols }
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IMat, b: &[i64]) -> Option<Vec<i64>> {
    let s = smith(a);
    let ub = matvec(&s.u, b);
    let mut y = vec![0; s.cols];
    for (i, &c) in ub.iter().enumerate() {
        match s.invariants.get(i) {
            Some(&dv) if c % dv == 0 => y[i] = c / dv,
            Some(_) => return None,
            None if c != 0 => return None,
            None => {}
        }
    }
    Some(matvec(&s.v, &y))
}

/// A basis of the integer kernel `{x : A x = 0}`.
pub fn integer_kernel(a: &IMat) -> Vec<Vec<i64>> {
    let s = smith(a);
    (s.rank()..s.cols).map(|j| s.v.iter().map(|r| r[j]).collect()).collect()
}

/// A basis of the lattice spanned by `gens`, by integer row reduction.
pub fn row_basis(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = gens.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let n = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..n {
        loop {
            let piv = (r..rows.len()).filter(|&i| rows[i][col] != 0).min_by_key(|&i| rows[i][col].abs());
            let Some(p) = piv else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                let q = rows[i][col] / rows[r][col];
                if q != 0 {
                    for j in 0..n {
                        rows[i][j] -= q * rows[r][j];
                    }
                }
                done &= rows[i][col] == 0;
            }
            if done {
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Index of the lattice spanned by `gens` inside `Z^n`; errors when it has
/// lower rank.
pub fn index_in_full(gens: &[Vec<i64>], n: usize) -> Result<u64> {
    let s = smith(&gens.to_vec());
    if s.rank() != n {
        return Err(Error::Split(format!("sublattice has rank {}, not {n}", s.rank())));
    }
    Ok(s.invariants.iter().map(|d| d.unsigned_abs()).product())
}

/// `x` with `sum x_i p_i = gcd(p)`.
pub fn extended_gcd(p: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coef = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        let (d, s, t) = egcd(g, v);
        for c in coef.iter_mut().take(i) {
            *c *= s;
        }
        coef[i] = t;
        g = d;
    }
    if g < 0 {
        g = -g;
        coef.iter_mut().for_each(|c| *c = -*c);
    }
    (g, coef)
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (d, s, t) = egcd(b, a % b);
        (d, t, s - (a / b) * t)
    }
}

/// A symplectic basis `(e_1..e_r, f_1..f_r)` of the lattice spanned by
/// `gens`, for the form `j`. Errors unless the restricted form is unimodular.
pub fn symplectic_reduce(gens: &[Vec<i64>], j: &IMat) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let mut pool = row_basis(gens);
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while !pool.is_empty() {
        let e = pool.remove(0);
        let pairings: Vec<i64> = pool.iter().map(|w| form(j, &e, w)).collect();
        let (g, c) = extended_gcd(&pairings);
        if g != 1 {
            return Err(Error::NormalForm(format!("restricted form is not unimodular: pairing gcd {g}")));
        }
        let n = e.len();
        let f: Vec<i64> = (0..n).map(|k| pool.iter().zip(&c).map(|(w, ci)| ci * w[k]).sum()).collect();
        let projected: Vec<Vec<i64>> = pool
            .iter()
            .map(|w| {
                let (wf, we) = (form(j, w, &f), form(j, w, &e));
                (0..n).map(|k| w[k] - wf * e[k] + we * f[k]).collect()
            })
            .collect();
        pool = row_basis(&projected);
        es.push(e);
        fs.push(f);
    }
    Ok((es, fs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a);
        assert_eq!(s.invariants, vec![2, 6, 12]);
        let d = matmul(&matmul(&s.u, &a), &s.v);
        for i in 0..3 {
            for k in 0..3 {
                assert_eq!(d[i][k], if i == k { s.invariants[i] } else { 0 });
            }
        }
    }

    #[test]
    fn solves_and_rejects() {
        let a = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve_integer(&a, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&a, &[1, 0]), None);
        assert_eq!(integer_kernel(&vec![vec![1, 1]]).len(), 1);
    }
}
