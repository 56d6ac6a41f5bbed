use std::collections::BTreeMap;

use proptest::prelude::*;

use aci::algebra::{names, parse_poly, poly_roots, Complex64, Field, MultiPoly, Qi};
use aci::divisor::{fit_curve, read_samples_csv, write_samples_csv, Basis, DivisorSample};
use aci::dynamics::{integrate, lookup, real_state, IntegratorOptions};
use aci::prym::lattice::{matmul, smith, standard_form, transpose, IMat};
use aci::prym::{normal_form_basis, normal_form_matrix};
use aci::riemann::{hurwitz_genus, same_modulus, sl2z_reduce, CoverData};

fn qi() -> impl Strategy<Value = Qi> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| Qi::gaussian((a, b), (c, d)))
}

fn poly2() -> impl Strategy<Value = MultiPoly<Qi>> {
    prop::collection::vec(((0u32..4, 0u32..4), qi()), 0..6).prop_map(|terms| {
        let v = names(&["x", "y"]);
        MultiPoly::from_terms(&v, terms.into_iter().map(|((a, b), c)| (vec![a, b], c)))
    })
}

fn symplectic(g: usize, moves: &[(Vec<i64>, i64)]) -> IMat {
    // products of transvections v -> v + k <v, u> u
    let j = standard_form(g);
    let mut p = aci::prym::lattice::identity(2 * g);
    for (u, k) in moves {
        let mut t = aci::prym::lattice::identity(2 * g);
        for r in 0..2 * g {
            for c in 0..2 * g {
                let ju: i64 = (0..2 * g).map(|q| u[q] * j[q][c]).sum();
                t[r][c] += k * u[r] * ju;
            }
        }
        p = matmul(&t, &p);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in qi(), b in qi(), c in qi()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Qi::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv(), Qi::one());
        }
    }

    #[test]
    fn ring_laws(p in poly2(), q in poly2(), r in poly2()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn product_rule(p in poly2(), q in poly2()) {
        let lhs = (&p * &q).derivative(0);
        let rhs = &(&p.derivative(0) * &q) + &(&p * &q.derivative(0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_parses_back(p in poly2()) {
        let v = names(&["x", "y"]);
        let back = parse_poly(&p.to_string(), &v, &BTreeMap::new()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly2(), q in poly2(), x in qi(), y in qi()) {
        let at = [x, y];
        prop_assert_eq!((&p * &q).eval(&at).unwrap(), p.eval(&at).unwrap() * q.eval(&at).unwrap());
        prop_assert_eq!((&p + &q).eval(&at).unwrap(), p.eval(&at).unwrap() + q.eval(&at).unwrap());
    }

    #[test]
    fn roots_reconstruct(roots in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..7)) {
        let zs: Vec<Complex64> = roots.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        prop_assume!(zs.iter().enumerate().all(|(i, a)| zs[..i].iter().all(|b| (a - b).norm() > 0.1)));
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for z in &zs {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * z;
            }
            c = next;
        }
        let found = poly_roots(&c).unwrap();
        for z in &zs {
            let nearest = found.iter().map(|r| (r - z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest < 1e-8, "{} missing, nearest {}", z, nearest);
        }
    }

    #[test]
    fn planted_relation_is_recovered(c0 in 1i64..9, c2 in -9i64..9, c4 in 1i64..9, d in 1i64..5) {
        // y^2 = c4/d x^4 + c2/d x^2 + c0
        let p = [Qi::from_i64(c0), Qi::ratio(c2, d), Qi::ratio(c4, d)];
        let vars = names(&["x", "y"]);
        let mut samples = Vec::new();
        for k in 0..24 {
            let x = Complex64::from_polar(0.7 + 0.02 * k as f64, 0.37 * k as f64);
            let y2 = p[0].to_c64() + p[1].to_c64() * x * x + p[2].to_c64() * x.powu(4);
            for y in [y2.sqrt(), -y2.sqrt()] {
                samples.push(DivisorSample { vars: vars.clone(), point: vec![x, y], level: vec![] });
            }
        }
        let basis = Basis::Weighted { weights: vec![1, 2], bound: 4 };
        let fit = fit_curve(&samples, &vars, &basis, Some(&[0, 2])).unwrap();
        let exact = fit.rational.clone().unwrap();
        prop_assert_eq!(exact.coeff(&[0, 2]), Qi::one());
        for (k, pk) in p.iter().enumerate() {
            prop_assert_eq!(exact.coeff(&[2 * k as u32, 0]), -pk.clone());
        }
        let again = fit_curve(&samples, &vars, &basis, Some(&[0, 2])).unwrap();
        prop_assert_eq!(again.rational, fit.rational);
    }

    #[test]
    fn samples_csv_roundtrip(pts in prop::collection::vec(prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 3), 1..10)) {
        let vars = names(&["a", "b", "c"]);
        let samples: Vec<DivisorSample> = pts
            .iter()
            .map(|p| DivisorSample { vars: vars.clone(), point: p.iter().map(|&(r, i)| Complex64::new(r, i)).collect(), level: vec!["1/2".into(), "3".into()] })
            .collect();
        let mut buf = Vec::new();
        write_samples_csv(&samples, &mut buf).unwrap();
        let back = read_samples_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.len(), samples.len());
        for (a, b) in back.iter().zip(&samples) {
            prop_assert_eq!(&a.vars, &b.vars);
            prop_assert_eq!(&a.point, &b.point);
            prop_assert_eq!(&a.level, &b.level);
        }
    }

    #[test]
    fn hurwitz_bookkeeping(g0 in 0usize..6, n in 1usize..10) {
        let g = hurwitz_genus(g0, n).unwrap();
        prop_assert_eq!(g, 2 * g0 + n - 1);
        let c = CoverData::new(g0, n).unwrap();
        prop_assert_eq!(c.prym_dim(), g - g0);
        prop_assert_eq!(c.branch_points(), 2 * n);
    }

    #[test]
    fn modulus_is_sl2z_invariant(re in -2.0f64..2.0, im in 0.2f64..3.0, a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        // complete (a b; c d) to SL(2, Z) when gcd(a, c) = 1
        prop_assume!(num::integer::gcd(a, c) == 1);
        let found = (-20..=20).flat_map(|x| (-20..=20).map(move |y| (x, y))).find(|&(x, y)| a * x - y * c == 1);
        prop_assume!(found.is_some());
        let (d, bb) = found.map(|(x, y)| (x + c * b, y + a * b)).unwrap();
        prop_assert_eq!(a * d - bb * c, 1);
        let tau = Complex64::new(re, im);
        let moved = (tau * a as f64 + bb as f64) / (tau * c as f64 + d as f64);
        prop_assert!(same_modulus(tau, moved, 1e-8), "{} {}", sl2z_reduce(tau), sl2z_reduce(moved));
    }

    #[test]
    fn smith_diagonalizes(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 3)) {
        let s = smith(&rows);
        let d = matmul(&matmul(&s.u, &rows), &s.v);
        for (r, row) in d.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                let want = if r == c && r < s.invariants.len() { s.invariants[r] } else { 0 };
                prop_assert_eq!(x, want);
            }
        }
        for w in s.invariants.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn conjugated_involutions_reach_normal_form(moves in prop::collection::vec((prop::collection::vec(-1i64..=1, 6), -1i64..=1), 1..5)) {
        let p = symplectic(3, &moves);
        let j = standard_form(3);
        prop_assert_eq!(matmul(&matmul(&transpose(&p), &j), &p), j.clone());
        // P^-1 = -J P^T J
        let pinv: IMat = matmul(&matmul(&j, &transpose(&p)), &j).iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        let nf = normal_form_matrix(1, 2);
        let m = matmul(&matmul(&p, &nf), &pinv);
        let t = normal_form_basis(&m, 1).unwrap();
        prop_assert_eq!(matmul(&m, &t), matmul(&t, &nf));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn short_orbits_conserve_invariants(x in prop::collection::vec(-0.05f64..0.05, 4)) {
        // without a quadratic term small data can still escape by t = 5
        let def = lookup("henon-heiles", &BTreeMap::new()).unwrap();
        let traj = integrate(&def.system, &real_state(&x), 1.0, &IntegratorOptions::default()).unwrap();
        prop_assert!(traj.blow_up.is_none());
        prop_assert!(traj.max_drift() <= 1e-8, "drift {}", traj.max_drift());
    }
}
