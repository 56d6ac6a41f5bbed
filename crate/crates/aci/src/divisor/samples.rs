use crate::algebra::{poly_roots, Complex64, Field, FromQi, MultiPoly, Qi};
use crate::error::{Error, Result};
use crate::painleve::{
    exact_branch_point, expand_family, expand_family_float, kowalewski_spectrum, Balance, BalanceOptions, HamiltonianSystem,
};

use super::fit::DivisorSample;
use super::levels::{impose_levels, ImposedLevels};

/// Coefficients (low to high) of a relation that depends on parameter `v` only.
pub fn univariate<C: FromQi>(p: &MultiPoly<C>, v: usize) -> Result<Vec<Complex64>> {
    let mut c = vec![Complex64::new(0.0, 0.0); p.degree_in(v) as usize + 1];
    for (e, a) in p.terms() {
        if e.iter().enumerate().any(|(j, &k)| j != v && k != 0) {
            return Err(Error::Numerical(format!("relation {p} involves more than one parameter")));
        }
        c[e[v] as usize] += a.to_c64();
    }
    Ok(c)
}

/// Roots of the single relation left by [`impose_levels`], with its variable.
pub fn relation_roots<C: FromQi>(imposed: &ImposedLevels<C>) -> Result<(usize, Vec<Complex64>)> {
    if imposed.relations.len() != 1 {
        return Err(Error::Numerical(format!("expected one residual relation, found {}", imposed.relations.len())));
    }
    let r = &imposed.relations[0];
    let vars: Vec<usize> = imposed.surviving().into_iter().filter(|&v| r.degree_in(v) > 0).collect();
    let [v] = vars.as_slice() else {
        return Err(Error::Numerical("residual relation must involve exactly one parameter".into()));
    };
    Ok((*v, poly_roots(&univariate(r, *v)?)?))
}

/// Divisor points above one balance: the balance coordinates `coords`
/// followed by each root of the residual relation.
///
/// Roots closer than `1e-3` signal the discriminant locus and the balance is
/// skipped.
pub fn samples_at(system: &HamiltonianSystem, levels: &[Qi], balance: &Balance, coords: &[usize]) -> Result<Vec<DivisorSample>> {
    let spectrum = kowalewski_spectrum(system, balance)?;
    let order = spectrum.max_resonance() as usize;
    let label: Vec<String> = levels.iter().map(|c| c.to_string()).collect();
    let (names, roots) = match &balance.exact {
        Some(_) => {
            let fam = expand_family(system, balance, &spectrum, order)?;
            let imposed = impose_levels(&fam, &system.invariants, levels)?;
            let (v, r) = relation_roots(&imposed)?;
            (imposed.params[v].clone(), r)
        }
        None => {
            let fam = expand_family_float(system, balance, &spectrum, order)?;
            let inv: Vec<MultiPoly<Complex64>> = system.invariants.iter().map(|h| h.to_float()).collect();
            let lv: Vec<Complex64> = levels.iter().map(|c| c.to_c64()).collect();
            let imposed = impose_levels(&fam, &inv, &lv)?;
            let (v, r) = relation_roots(&imposed)?;
            (imposed.params[v].clone(), r)
        }
    };
    let separated = roots.iter().enumerate().all(|(i, a)| roots.iter().skip(i + 1).all(|b| (a - b).norm() > 1e-3));
    if !separated {
        return Ok(Vec::new());
    }
    let mut vars: Vec<String> = coords.iter().map(|&i| format!("{}0", system.vars[i])).collect();
    vars.push(names);
    Ok(roots
        .into_iter()
        .map(|r| {
            let mut point: Vec<Complex64> = coords.iter().map(|&i| balance.x0[i]).collect();
            point.push(r);
            DivisorSample { vars: vars.clone(), point, level: label.clone() }
        })
        .collect())
}

/// Samples along one branch at exact slice values of its slice coordinate.
pub fn samples_along_branch(
    system: &HamiltonianSystem,
    levels: &[Qi],
    branch: &Balance,
    values: &[Qi],
    opts: &BalanceOptions,
) -> Result<Vec<DivisorSample>> {
    let p = branch.slice.ok_or_else(|| Error::NoBalance("branch has no slice coordinate".into()))?;
    let mut out = Vec::new();
    for v in values {
        let b = exact_branch_point(system, branch, p, v, opts)?;
        out.extend(samples_at(system, levels, &b, &[p])?);
    }
    Ok(out)
}

/// `n` Gaussian rationals with denominator `den` near the circle of the
/// given radius, at angles offset from the real axis.
pub fn circle_points(n: usize, radius: f64, den: i64) -> Vec<Qi> {
    (0..n)
        .map(|k| {
            let th = std::f64::consts::TAU * (k as f64 + 0.37) / n as f64;
            let re = (radius * th.cos() * den as f64).round() as i64;
            let im = (radius * th.sin() * den as f64).round() as i64;
            Qi::gaussian((re, den), (im, den))
        })
        .collect()
}

/// Writes samples as CSV, one `name_re,name_im` pair per coordinate and a
/// final `level` column.
pub fn write_samples_csv<W: std::io::Write>(samples: &[DivisorSample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let Some(first) = samples.first() else {
        w.flush()?;
        return Ok(());
    };
    let mut header: Vec<String> = first.vars.iter().flat_map(|v| [format!("{v}_re"), format!("{v}_im")]).collect();
    header.push("level".into());
    w.write_record(&header)?;
    for s in samples {
        let mut row: Vec<String> = s.point.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
        row.push(s.level.join(";"));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads samples written by [`write_samples_csv`]. A column `name` without
/// an `_im` partner is read as a real coordinate; `level` is optional.
pub fn read_samples_csv<R: std::io::Read>(input: R) -> Result<Vec<DivisorSample>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let level_col = header.iter().position(|h| h == "level");
    // (name, re column, im column)
    let mut coords: Vec<(String, usize, Option<usize>)> = Vec::new();
    for (k, h) in header.iter().enumerate() {
        if Some(k) == level_col || h.ends_with("_im") {
            continue;
        }
        let name = h.strip_suffix("_re").unwrap_or(h).to_string();
        let im = header.iter().position(|o| *o == format!("{name}_im"));
        coords.push((name, k, im));
    }
    if coords.is_empty() {
        return Err(Error::Parse("sample file has no coordinate columns".into()));
    }
    let vars: Vec<String> = coords.iter().map(|c| c.0.clone()).collect();
    let num = |rec: &csv::StringRecord, k: usize| -> Result<f64> {
        let f = rec.get(k).unwrap_or("").trim();
        f.parse::<f64>().map_err(|_| Error::Parse(format!("'{f}' in column {} is not a number", header[k])))
    };
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let mut point = Vec::with_capacity(coords.len());
        for (_, re, im) in &coords {
            let im = match im {
                Some(k) => num(&rec, *k)?,
                None => 0.0,
            };
            point.push(Complex64::new(num(&rec, *re)?, im));
        }
        let level = level_col
            .and_then(|k| rec.get(k))
            .map(|l| l.split(';').filter(|s| !s.is_empty()).map(String::from).collect())
            .unwrap_or_default();
        out.push(DivisorSample { vars: vars.clone(), point, level });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::divisor::{fit_curve, Basis};
    use crate::dynamics::registry;
    use crate::painleve::{branches, detect_weights, solve_balances};

    fn principal_branches(def: &registry::SystemDefinition) -> Vec<Balance> {
        let sys = &def.system;
        let nu = detect_weights(sys).unwrap();
        let opts = BalanceOptions::default();
        let all = solve_balances(sys, &nu, &[], &opts).unwrap();
        branches(sys, &all, sys.hints.slice, &def.slice_value, &opts)
            .unwrap()
            .into_iter()
            .filter(|b| b.exact.is_some() && kowalewski_spectrum(sys, b).unwrap().free_parameter_count == sys.dim() - 1)
            .collect()
    }

    #[test]
    fn henon_heiles_constant_term() {
        let mut o = BTreeMap::new();
        o.insert("c1".to_string(), "0".to_string());
        o.insert("c2".to_string(), "36".to_string());
        let def = registry::lookup("henon-heiles", &o).unwrap();
        let br = principal_branches(&def);
        let samples = samples_along_branch(&def.system, &def.levels, &br[0], &circle_points(20, 1.2, 32), &BalanceOptions::default()).unwrap();
        assert_eq!(samples.len(), 40);
        let vars = samples[0].vars.clone();
        let fit = fit_curve(&samples, &vars, &Basis::Weighted { weights: vec![1, 4], bound: 8 }, Some(&[0, 2])).unwrap();
        let p = fit.rational.expect("all coefficients snap");
        assert_eq!(p.coeff(&[0, 0]), Qi::from_i64(-1));
        assert_eq!(p.coeff(&[8, 0]), Qi::ratio(1, 576));
    }

    #[test]
    fn csv_roundtrip() {
        let s = vec![DivisorSample {
            vars: vec!["alpha".into(), "beta".into()],
            point: vec![Complex64::new(0.5, -0.25), Complex64::new(1.0 / 3.0, 2.0)],
            level: vec!["1".into(), "1/2".into()],
        }];
        let mut buf = Vec::new();
        write_samples_csv(&s, &mut buf).unwrap();
        let back = read_samples_csv(buf.as_slice()).unwrap();
        assert_eq!(back[0].vars, s[0].vars);
        assert_eq!(back[0].point, s[0].point);
        assert_eq!(back[0].level, s[0].level);
        let real = read_samples_csv("x,y\n1,2\n".as_bytes()).unwrap();
        assert_eq!(real[0].point, vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
    }

    #[test]
    fn kowalewski_relation_is_quartic_in_alpha2() {
        let def = registry::lookup("kowalewski", &BTreeMap::new()).unwrap();
        for br in principal_branches(&def) {
            let sp = kowalewski_spectrum(&def.system, &br).unwrap();
            let fam = expand_family(&def.system, &br, &sp, 4).unwrap();
            let imp = impose_levels(&fam, &def.system.invariants, &def.levels).unwrap();
            assert_eq!(imp.eliminated.len(), 3);
            let (v, roots) = relation_roots(&imp).unwrap();
            assert_eq!(imp.params[v], "alpha2");
            assert_eq!(roots.len(), 4);
        }
    }
}
