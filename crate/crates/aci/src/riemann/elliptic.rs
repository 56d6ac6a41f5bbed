use std::f64::consts::PI;

use crate::algebra::Complex64;

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a.abs() {
            break;
        }
        (a, b) = ((a + b) / 2.0, (a * b).sqrt());
    }
    a
}

/// Complete elliptic integral of the first kind, `K(k) = pi / (2 agm(1, k'))`.
pub fn complete_k(k: f64) -> f64 {
    PI / (2.0 * agm(1.0, (1.0 - k * k).sqrt()))
}

/// Reduces `tau` in the upper half plane to the standard fundamental domain
/// of SL(2, Z).
pub fn sl2z_reduce(mut tau: Complex64) -> Complex64 {
    for _ in 0..1000 {
        tau.re -= tau.re.round();
        if tau.norm_sqr() < 1.0 - 1e-14 {
            tau = -tau.inv();
        } else {
            break;
        }
    }
    tau
}

/// Whether two moduli describe the same lattice shape, allowing for the
/// boundary identifications of the fundamental domain.
pub fn same_modulus(t1: Complex64, t2: Complex64, tol: f64) -> bool {
    let (r1, r2) = (sl2z_reduce(t1), sl2z_reduce(t2));
    let one = Complex64::new(1.0, 0.0);
    [r2, r2 + one, r2 - one, -r2.inv()].iter().any(|c| (r1 - c).norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_at_one_half() {
        // K(1/2) from tables
        assert!((complete_k(0.5) - 1.685_750_354_812_596).abs() < 1e-14);
        assert!((complete_k(0.0) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn reduction_is_invariant() {
        let t = Complex64::new(0.3, 1.1);
        let moved = (t * 2.0 + 1.0) / (t + 1.0);
        assert!(same_modulus(t, moved, 1e-12));
    }
}
