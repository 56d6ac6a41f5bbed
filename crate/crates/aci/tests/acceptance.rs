// Acceptance criteria, one PASS or FAIL line each. Exits non-zero when any
// criterion fails.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aci::algebra::{names, parse_poly, Complex64, Field, Qi};
use aci::divisor::{circle_points, fit_curve, samples_along_branch, Basis, FittedCurve};
use aci::dynamics::{lookup, SYSTEMS};
use aci::painleve::{detect_weights, exact_families, BalanceOptions, FoundFamily};
use aci::pipeline::reference::HENON_HEILES_P8;
use aci::pipeline::{run_pipeline, PipelineConfig, PipelineReport};
use aci::prym::polarization_from_divisor;
use aci::riemann::{complete_k, hurwitz_genus, period_matrix, DifferentialBasis, HyperellipticModel, PeriodOptions};
use aci::Result;

const Q1_4: &str = "alpha A B/24 - alpha^5/72 + 11 alpha^3 B/720 - 11 alpha^3 A/120 - alpha B^2/720 - alpha A^2/8";
const Q1_5: &str = "-beta alpha^2/12 + beta B/60 - A beta/10";
const Q1_6: &str = "-alpha gamma/9 - alpha^7/15552 - alpha^5 A/2160 + alpha^5 B/12960 + alpha^3 B^2/25920 \
    + alpha^3 A^2/1440 - alpha^3 A B/4320 + alpha A B^2/1440 - alpha B^3/19440 - alpha A^2 B/288 + alpha A^3/144";

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

struct Fixture {
    families: BTreeMap<&'static str, Vec<FoundFamily>>,
    reports: BTreeMap<&'static str, PipelineReport>,
}

impl Fixture {
    fn build() -> Result<Self> {
        let mut families = BTreeMap::new();
        let mut reports = BTreeMap::new();
        for name in SYSTEMS {
            let def = lookup(name, &BTreeMap::new())?;
            families.insert(name, exact_families(&def.system, &def.slice_value, 8, &BalanceOptions::default())?);
            reports.insert(name, run_pipeline(name, &PipelineConfig::default())?.report);
        }
        Ok(Fixture { families, reports })
    }

    fn principal(&self, name: &str) -> impl Iterator<Item = &FoundFamily> {
        self.families[name].iter().filter(|f| f.is_principal())
    }

    fn passed(&self, name: &str, stage: &str, check: &str) -> bool {
        self.reports[name].check(stage, check).is_some_and(|c| c.passed)
    }

    fn value(&self, name: &str, stage: &str, check: &str) -> String {
        self.reports[name].check(stage, check).map_or("missing".into(), |c| c.value.to_string())
    }
}

fn ac1(_: &Fixture) -> Result<Outcome> {
    let want: [(&str, Vec<i64>); 3] = [("henon-heiles", vec![1, 2, 2, 3]), ("kowalewski", vec![1, 1, 1, 2, 2, 2]), ("clebsch", vec![1; 6])];
    let mut ok = true;
    let mut got = Vec::new();
    for (name, w) in want {
        let nu = detect_weights(&lookup(name, &BTreeMap::new())?.system)?;
        ok &= nu == w;
        got.push(format!("{name} {nu:?}"));
    }
    outcome(ok, got.join(", "))
}

fn ac2(fx: &Fixture) -> Result<Outcome> {
    let want = [("henon-heiles", 3, 1), ("kowalewski", 5, 2), ("clebsch", 5, 1)];
    let mut ok = true;
    let mut got = Vec::new();
    for (name, count, min_families) in want {
        let counts: Vec<usize> = fx.principal(name).map(|f| f.spectrum.free_parameter_count).collect();
        ok &= counts.len() >= min_families && counts.iter().all(|&c| c == count);
        got.push(format!("{name} {counts:?}"));
    }
    outcome(ok, got.join(", "))
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Qi {
    loop {
        let n = rng.random_range(-9..=9);
        if n != 0 || !nonzero {
            return Qi::ratio(n, rng.random_range(1..=7));
        }
    }
}

fn ac3(_: &Fixture) -> Result<Outcome> {
    let v = names(&["alpha", "beta", "gamma", "A", "B"]);
    let printed = [(4, parse_poly(Q1_4, &v, &BTreeMap::new())?), (5, parse_poly(Q1_5, &v, &BTreeMap::new())?), (6, parse_poly(Q1_6, &v, &BTreeMap::new())?)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xac3);
    let mut mismatches = Vec::new();
    let points = 20;
    for _ in 0..points {
        let (alpha, beta, gamma) = (random_rational(&mut rng, true), random_rational(&mut rng, false), random_rational(&mut rng, false));
        let (a, b) = (random_rational(&mut rng, false), random_rational(&mut rng, false));
        let overrides = BTreeMap::from([("A".to_string(), a.to_string()), ("B".to_string(), b.to_string())]);
        let def = lookup("henon-heiles", &overrides)?;
        let found = exact_families(&def.system, &alpha, 6, &BalanceOptions::default())?;
        let Some(f) = found.iter().find(|f| f.is_principal()) else {
            mismatches.push(format!("no family at alpha = {alpha}"));
            continue;
        };
        let at: Vec<Qi> = f.family.params.iter().map(|p| if p == "beta" { beta.clone() } else { gamma.clone() }).collect();
        let point = [alpha.clone(), beta.clone(), gamma.clone(), a.clone(), b.clone()];
        for (j, p) in &printed {
            let derived = f.family.coefficient(*j)[0].eval(&at)?;
            if derived != p.eval(&point)? {
                mismatches.push(format!("q1^({j}) at alpha={alpha} A={a} B={b}"));
            }
        }
    }
    outcome(mismatches.is_empty(), format!("{points} points, {} mismatches {mismatches:?}", mismatches.len()))
}

fn ac4(fx: &Fixture) -> Result<Outcome> {
    let mut defects = 0;
    let mut families = 0;
    for name in SYSTEMS {
        let sys = lookup(name, &BTreeMap::new())?.system;
        for f in &fx.families[name] {
            families += 1;
            for h in &sys.invariants {
                defects += f.family.invariance_defects(h)?.len();
            }
        }
    }
    outcome(defects == 0 && families > 0, format!("{families} families at order 8, {defects} nonzero t^k coefficients"))
}

fn henon_heiles_fit(overrides: &BTreeMap<String, String>) -> Result<(BTreeMap<String, Qi>, FittedCurve)> {
    let def = lookup("henon-heiles", overrides)?;
    let opts = BalanceOptions::default();
    let found = exact_families(&def.system, &def.slice_value, 8, &opts)?;
    let b = &found.iter().find(|f| f.is_principal()).expect("principal family").balance;
    let samples = samples_along_branch(&def.system, &def.levels, b, &circle_points(20, 1.2, 32), &opts)?;
    let fit = fit_curve(&samples, &names(&["alpha", "beta"]), &Basis::Weighted { weights: vec![1, 4], bound: 8 }, Some(&[0, 2]))?;
    Ok((def.params, fit))
}

fn ac5(fx: &Fixture) -> Result<Outcome> {
    let v = names(&["alpha", "beta"]);
    let mut ok = true;
    let mut parts = Vec::new();
    let points = [BTreeMap::new(), BTreeMap::from([("A".to_string(), "1/3".to_string()), ("B".to_string(), "2/7".to_string())])];
    for overrides in &points {
        let (params, fit) = henon_heiles_fit(overrides)?;
        let printed = parse_poly(HENON_HEILES_P8, &v, &params)?;
        let diffs: Vec<f64> = (0..=4u32).map(|k| (-fit.relation.coeff(&[2 * k, 0]) - printed.coeff(&[2 * k, 0]).to_c64()).norm()).collect();
        let worst = diffs.iter().cloned().fold(0.0, f64::max);
        ok &= worst <= 1e-8;
        let shown: Vec<String> = diffs.iter().enumerate().map(|(k, d)| format!("a^{}:{d:.1e}", 2 * k)).collect();
        parts.push(format!("P8 at A={} B={} [{}]", params["A"], params["B"], shown.join(" ")));
    }
    for (name, comparison) in [("henon-heiles", "divisor membership"), ("kowalewski", "divisor membership"), ("clebsch", "divisor membership at the levels")] {
        let c = fx.reports[name].reference_comparisons.iter().find(|c| c.name == comparison);
        let r = c.map_or(f64::INFINITY, |c| c.residual);
        ok &= r <= 1e-8;
        parts.push(format!("{name} membership {r:.2e}"));
    }
    ok &= fx.passed("henon-heiles", "divisor", "fit residual");
    outcome(ok, parts.join("; "))
}

fn ac6(fx: &Fixture) -> Result<Outcome> {
    let c: Vec<Complex64> = [1.0, 0.0, -1.25, 0.0, 0.25].iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let p = period_matrix(&HyperellipticModel::new(&c)?, &DifferentialBasis::standard(1), &PeriodOptions::default())?;
    let gap = (p.omega[(0, 0)] - Complex64::new(4.0 * complete_k(0.5), 0.0)).norm();
    let bilinear = fx.passed("henon-heiles", "periods", "Riemann bilinear relation");
    let positive = fx.passed("henon-heiles", "periods", "Im Z positive definite");
    outcome(
        gap <= 1e-10 && bilinear && positive,
        format!(
            "|a - 4K(1/2)| = {gap:.1e}; HH genus 3 bilinear {}, min eig Im Z {}",
            fx.value("henon-heiles", "periods", "Riemann bilinear relation"),
            fx.value("henon-heiles", "periods", "Im Z positive definite")
        ),
    )
}

fn ac7(fx: &Fixture) -> Result<Outcome> {
    let checks = [
        ("prym", "M^2 = I"),
        ("prym", "M^T J M = J"),
        ("prym", "adapted blocks C=-A, F=-D, H=0, I=G, K=0, L=J"),
        ("prym", "Gamma = Gamma* with doubled invariant columns"),
        ("cross-checks", "Delta and the quotient curve have the same modulus"),
    ];
    let ok = checks.iter().all(|(s, c)| fx.passed("henon-heiles", s, c));
    let values: Vec<String> = checks.iter().map(|(s, c)| fx.value("henon-heiles", s, c)).collect();
    outcome(ok, format!("M^2=I {}, symplectic {}, blocks {}, Gamma/Gamma* {}, modulus gap {}", values[0], values[1], values[2], values[3], values[4]))
}

fn ac8(fx: &Fixture) -> Result<Outcome> {
    let covers = [hurwitz_genus(1, 2)?, hurwitz_genus(1, 8)?];
    let pols = [polarization_from_divisor(3, None)?, polarization_from_divisor(9, None)?];
    let count = fx.value("henon-heiles", "cross-checks", "intersection count is the squared type product");
    let ledgers = fx.passed("henon-heiles", "ledger", "hurwitz genus (1, 2)")
        && fx.passed("kowalewski", "ledger", "components D_eps: hurwitz genus (1, 2) -> 3")
        && fx.passed("clebsch", "ledger", "hurwitz genus (1, 8)");
    let ok = covers == [3, 9] && pols == [(1, 2), (2, 4)] && count == "4" && ledgers;
    outcome(ok, format!("hurwitz (1,2)->{} (1,8)->{}, polarization g=3 {:?} g=9 {:?}, HH intersection count {count}", covers[0], covers[1], pols[0], pols[1]))
}

fn ac9(fx: &Fixture) -> Result<Outcome> {
    let mut ok = fx.passed("henon-heiles", "dynamics", "{H1, H2} = 0");
    let mut parts = vec![format!("HH {{H1, H2}} = {}", fx.value("henon-heiles", "dynamics", "{H1, H2} = 0"))];
    for name in SYSTEMS {
        let sys = lookup(name, &BTreeMap::new())?.system;
        let conserved = sys.invariant_names.iter().all(|h| fx.passed(name, "dynamics", &format!("grad {h} . f = 0")));
        let drift = fx.passed(name, "dynamics", "invariant drift over [0, 5]");
        let seed = fx.passed(name, "dynamics", "Laurent seed agrees with the flow at 2 t0");
        ok &= conserved && drift && seed;
        parts.push(format!(
            "{name} conserved {conserved}, drift {}, seed {}",
            fx.value(name, "dynamics", "invariant drift over [0, 5]"),
            fx.value(name, "dynamics", "Laurent seed agrees with the flow at 2 t0")
        ));
    }
    outcome(ok, parts.join("; "))
}

fn main() {
    let fx = match Fixture::build() {
        Ok(f) => f,
        Err(e) => {
            println!("FAIL setup {e}");
            std::process::exit(1);
        }
    };
    let criteria: [(&str, fn(&Fixture) -> Result<Outcome>); 9] =
        [("AC1", ac1), ("AC2", ac2), ("AC3", ac3), ("AC4", ac4), ("AC5", ac5), ("AC6", ac6), ("AC7", ac7), ("AC8", ac8), ("AC9", ac9)];
    let mut passed = BTreeMap::new();
    for (id, f) in criteria {
        let o = f(&fx).unwrap_or_else(|e| Outcome { passed: false, detail: format!("error: {e}") });
        println!("{} {id} {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        passed.insert(id, o.passed);
    }
    let partial = ["AC4", "AC5", "AC6", "AC7", "AC8"];
    let all = partial.iter().all(|id| passed[id]);
    let red: Vec<&str> = partial.iter().filter(|id| !passed[*id]).cloned().collect();
    println!("{} AC10 partial verification: conjunction of AC4-AC8, failing {red:?}", if all { "PASS" } else { "FAIL" });
    passed.insert("AC10", all);
    if passed.values().any(|p| !p) {
        std::process::exit(1);
    }
}
