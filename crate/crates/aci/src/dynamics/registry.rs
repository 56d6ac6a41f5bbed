//! The three worked systems with their default parameters.

use std::collections::BTreeMap;

use crate::algebra::{names, parse_poly, Complex64, Field, MultiPoly, Qi};
use crate::error::{Error, Result};
use crate::painleve::{FamilyHints, HamiltonianSystem};

pub const SYSTEMS: [&str; 3] = ["henon-heiles", "kowalewski", "clebsch"];

/// A registry system with its parameter values and default invariant levels.
#[derive(Clone, Debug)]
pub struct SystemDefinition {
    pub system: HamiltonianSystem,
    pub params: BTreeMap<String, Qi>,
    pub levels: Vec<Qi>,
    /// Value of the slice coordinate at which families are expanded.
    pub slice_value: Qi,
    /// Constants of the elliptic curve attached to the divisor, if any.
    pub elliptic: Option<(Complex64, Complex64)>,
    /// Real initial condition for flow checks.
    pub sample_point: Vec<f64>,
}

fn parse_all(exprs: &[&str], vars: &[String], consts: &BTreeMap<String, Qi>) -> Result<Vec<MultiPoly<Qi>>> {
    exprs.iter().map(|e| parse_poly(e, vars, consts)).collect()
}

fn merge(defaults: &[(&str, &str)], overrides: &BTreeMap<String, String>) -> Result<BTreeMap<String, Qi>> {
    let mut out = BTreeMap::new();
    for (k, v) in defaults {
        out.insert(k.to_string(), v.parse::<Qi>()?);
    }
    for (k, v) in overrides {
        if !out.contains_key(k) {
            return Err(Error::Parameters(format!("unknown parameter '{k}'")));
        }
        out.insert(k.clone(), v.parse::<Qi>()?);
    }
    Ok(out)
}

fn get(p: &BTreeMap<String, Qi>, k: &str) -> Qi {
    p[k].clone()
}

/// Looks a system up by name, applying parameter overrides given as strings.
pub fn lookup(name: &str, overrides: &BTreeMap<String, String>) -> Result<SystemDefinition> {
    match name {
        "henon-heiles" | "hh" => henon_heiles(overrides),
        "kowalewski" => kowalewski(overrides),
        "clebsch" | "kirchhoff" => clebsch(overrides),
        other => Err(Error::UnknownSystem(other.to_string())),
    }
}

pub fn henon_heiles(overrides: &BTreeMap<String, String>) -> Result<SystemDefinition> {
    let p = merge(&[("A", "0"), ("B", "0"), ("c1", "1"), ("c2", "1")], overrides)?;
    let vars = names(&["q1", "q2", "p1", "p2"]);
    let h = parse_all(
        &[
            "(p1^2 + p2^2 + A q1^2 + B q2^2)/2 + q1^2 q2 + 2 q2^3",
            "q1^4 + 4 q1^2 q2^2 - 4 p1 (p1 q2 - p2 q1) + 4 A q1^2 q2 + (4 A - B)(p1^2 + A q1^2)",
        ],
        &vars,
        &p,
    )?;
    let o = MultiPoly::zero(&vars);
    let one = MultiPoly::one(&vars);
    let j = vec![
        vec![o.clone(), o.clone(), one.clone(), o.clone()],
        vec![o.clone(), o.clone(), o.clone(), one.clone()],
        vec![-&one, o.clone(), o.clone(), o.clone()],
        vec![o.clone(), -&one, o.clone(), o.clone()],
    ];
    let field = hamiltonian_field(&h[0], &j);
    let mut hints = FamilyHints { slice: Some(0), slice_name: Some("alpha".into()), ..Default::default() };
    hints.resonance_pivots.insert(3, vec![0]);
    hints.resonance_pivots.insert(6, vec![1]);
    hints.resonance_names.insert(3, vec!["beta".into()]);
    hints.resonance_names.insert(6, vec!["gamma".into()]);
    let system = HamiltonianSystem {
        name: "henon-heiles".into(),
        vars,
        field,
        invariants: h,
        invariant_names: vec!["H1".into(), "H2".into()],
        poisson: Some(j),
        weights: None,
        hints,
    };
    Ok(SystemDefinition {
        system,
        levels: vec![get(&p, "c1"), get(&p, "c2")],
        params: p,
        slice_value: Qi::ratio(3, 2),
        elliptic: None,
        // small enough to stay in the bounded well when A = B = 0
        sample_point: vec![0.05, 0.02, 0.0, 0.03],
    })
}

pub fn kowalewski(overrides: &BTreeMap<String, String>) -> Result<SystemDefinition> {
    let p = merge(&[("c1", "1"), ("c2", "1/2"), ("c3", "1"), ("c4", "2")], overrides)?;
    let vars = names(&["m1", "m2", "m3", "g1", "g2", "g3"]);
    let field = parse_all(
        &["m2 m3", "-m1 m3 + 2 g3", "-2 g2", "2 m3 g2 - m2 g3", "m1 g3 - 2 m3 g1", "m2 g1 - m1 g2"],
        &vars,
        &p,
    )?;
    let h = parse_all(
        &[
            "(m1^2 + m2^2)/2 + m3^2 + 2 g1",
            "m1 g1 + m2 g2 + m3 g3",
            "g1^2 + g2^2 + g3^2",
            "(((m1 + i m2)/2)^2 - (g1 + i g2)) (((m1 - i m2)/2)^2 - (g1 - i g2))",
        ],
        &vars,
        &p,
    )?;
    let mut hints = FamilyHints { slice: Some(0), slice_name: Some("alpha1".into()), ..Default::default() };
    for (k, piv) in [(1, 5), (2, 4), (3, 5), (4, 5)] {
        hints.resonance_pivots.insert(k, vec![piv]);
        hints.resonance_names.insert(k, vec![format!("alpha{}", k + 1)]);
    }
    let system = HamiltonianSystem {
        name: "kowalewski".into(),
        vars,
        field,
        invariants: h,
        invariant_names: (1..=4).map(|i| format!("H{i}")).collect(),
        poisson: None,
        weights: None,
        hints,
    };
    Ok(SystemDefinition {
        system,
        levels: ["c1", "c2", "c3", "c4"].iter().map(|k| get(&p, k)).collect(),
        params: p,
        slice_value: Qi::ratio(3, 2),
        elliptic: None,
        sample_point: vec![0.3, -0.2, 0.1, 0.5, 0.4, -0.3],
    })
}

/// Checks the Clebsch conditions on `a`, `b` and `rho`.
pub fn validate_clebsch(a: &[Qi; 3], b: &[Qi; 3], rho: &Qi) -> Result<()> {
    let s = (a[1].clone() - a[2].clone()) / b[0].clone()
        + (a[2].clone() - a[0].clone()) / b[1].clone()
        + (a[0].clone() - a[1].clone()) / b[2].clone();
    if !s.is_zero() {
        return Err(Error::Parameters(format!("(a2-a3)/b1 + (a3-a1)/b2 + (a1-a2)/b3 = {s}, must vanish")));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let den = a[j].clone() - a[k].clone();
        if den.is_zero() {
            return Err(Error::Parameters(format!("a{} = a{}: rho is undefined", j + 1, k + 1)));
        }
        let r = b[i].clone() * (b[j].clone() - b[k].clone()) / den;
        if r != *rho {
            return Err(Error::Parameters(format!(
                "rho = {rho} disagrees with b{0}(b{1}-b{2})/(a{1}-a{2}) = {r}",
                i + 1,
                j + 1,
                k + 1
            )));
        }
    }
    Ok(())
}

pub fn clebsch(overrides: &BTreeMap<String, String>) -> Result<SystemDefinition> {
    let p = merge(
        &[
            ("a1", "3"),
            ("a2", "3/2"),
            ("a3", "1"),
            ("b1", "1"),
            ("b2", "2"),
            ("b3", "3"),
            ("rho", "-2"),
            ("c1", "1"),
            ("c2", "1"),
            ("c3", "1/2"),
            ("c4", "1"),
            ("d1sq", "1"),
            ("d2sq", "-2"),
        ],
        overrides,
    )?;
    let a = [get(&p, "a1"), get(&p, "a2"), get(&p, "a3")];
    let b = [get(&p, "b1"), get(&p, "b2"), get(&p, "b3")];
    validate_clebsch(&a, &b, &get(&p, "rho"))?;
    let (d1sq, d2sq) = (get(&p, "d1sq"), get(&p, "d2sq"));
    if !(d1sq.clone() + d2sq.clone() + Qi::one()).is_zero() {
        return Err(Error::Parameters(format!("d1^2 + d2^2 + 1 = {} must vanish", d1sq.clone() + d2sq.clone() + Qi::one())));
    }
    let vars = names(&["p1", "p2", "p3", "l1", "l2", "l3"]);
    let h = parse_all(
        &[
            "(a1 p1^2 + a2 p2^2 + a3 p3^2 + b1 l1^2 + b2 l2^2 + b3 l3^2)/2",
            "p1^2 + p2^2 + p3^2",
            "p1 l1 + p2 l2 + p3 l3",
            "(b1 p1^2 + b2 p2^2 + b3 p3^2 + rho (l1^2 + l2^2 + l3^2))/2",
        ],
        &vars,
        &p,
    )?;
    let x = |i: usize| MultiPoly::var(&vars, i);
    let o = MultiPoly::<Qi>::zero(&vars);
    let cross = |v: [usize; 3]| {
        vec![
            vec![o.clone(), -&x(v[2]), x(v[1])],
            vec![x(v[2]), o.clone(), -&x(v[0])],
            vec![-&x(v[1]), x(v[0]), o.clone()],
        ]
    };
    let pm = cross([0, 1, 2]);
    let lm = cross([3, 4, 5]);
    let mut j = vec![vec![o.clone(); 6]; 6];
    for r in 0..3 {
        for c in 0..3 {
            j[r][c + 3] = pm[r][c].clone();
            j[r + 3][c] = pm[r][c].clone();
            j[r + 3][c + 3] = lm[r][c].clone();
        }
    }
    let field = hamiltonian_field(&h[0], &j);
    let mut hints = FamilyHints { slice: Some(3), slice_name: Some("l1_0".into()), ..Default::default() };
    hints.resonance_pivots.insert(1, vec![1]);
    hints.resonance_pivots.insert(2, vec![2, 4, 5]);
    hints.resonance_names.insert(1, vec!["theta".into()]);
    hints.resonance_names.insert(2, vec!["s1".into(), "s2".into(), "s3".into()]);
    let system = HamiltonianSystem {
        name: "clebsch".into(),
        vars,
        field,
        invariants: h,
        invariant_names: (1..=4).map(|i| format!("H{i}")).collect(),
        poisson: Some(j),
        weights: None,
        hints,
    };
    let (d1, d2) = (d1sq.to_c64().sqrt(), d2sq.to_c64().sqrt());
    Ok(SystemDefinition {
        system,
        levels: ["c1", "c2", "c3", "c4"].iter().map(|k| get(&p, k)).collect(),
        params: p,
        slice_value: Qi::from_i64(0),
        elliptic: Some((d1, d2)),
        sample_point: vec![0.3, -0.2, 0.4, 0.1, 0.5, -0.3],
    })
}

/// `J grad H` as polynomials.
pub fn hamiltonian_field(h: &MultiPoly<Qi>, j: &[Vec<MultiPoly<Qi>>]) -> Vec<MultiPoly<Qi>> {
    let grad = h.gradient();
    j.iter()
        .map(|row| row.iter().zip(&grad).fold(MultiPoly::zero(h.vars()), |acc, (a, g)| &acc + &(a * g)))
        .collect()
}
