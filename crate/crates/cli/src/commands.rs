use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use num_rational::BigRational;
use serde_json::{json, Value};

use siegel_kr::selfcheck;
use siegel_kr::trace::FlagMultiplicities;
use siegel_kr::{
    admissible::coset_cover_relations, admissible_image, lie_n_cohomology, multiplicities,
    stratification_atlas, z_mu, AffineWeylElement, Gamma0, IsotropicFlag, KlTable, ParabolicData,
    ParahoricType, TraceValue, Weight,
};

use crate::{Basis, Command, HeckeCommand, TraceArgs, TypeArgs};

pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn text(text: String) -> Self {
        Self { text, ok: true }
    }

    fn json(value: Value) -> Self {
        let mut text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        text.push('\n');
        Self { text, ok: true }
    }
}

pub fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Adm(ty) => adm(ty),
        Command::Strata { ty, dot } => strata(ty, *dot),
        Command::Hecke {
            command: HeckeCommand::Zmu { g, basis, json },
        } => zmu(*g, *basis, *json),
        Command::Kostant {
            g,
            flag,
            highest,
            json,
        } => kostant(*g, flag, highest, *json),
        Command::Trace(args) => trace(args),
        Command::Selftest { g } => Ok(selftest(*g as usize)),
    }
}

fn check_rank(g: usize) -> Result<()> {
    if !(1..=4).contains(&g) {
        bail!("--g must be between 1 and 4, got {g}");
    }
    Ok(())
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("bad entry `{s}` in {what}"))
        })
        .collect()
}

fn parahoric(ty: &TypeArgs) -> Result<ParahoricType> {
    check_rank(ty.g)?;
    match &ty.parahoric {
        None => Ok(ParahoricType::iwahori(ty.g)),
        Some(text) => Ok(ParahoricType::new(ty.g, parse_list(text, "--parahoric")?)?),
    }
}

fn weight(g: usize, text: &str) -> Result<Weight> {
    if text.trim().is_empty() {
        return Ok(Weight::zero(g));
    }
    let w: Weight = text.parse()?;
    if w.rank() != g {
        bail!("highest weight {w} has {} entries, expected {g}", w.rank());
    }
    if !w.is_dominant() {
        bail!("highest weight {w} is not dominant");
    }
    Ok(w)
}

fn adm(ty: &TypeArgs) -> Result<Outcome> {
    let parahoric = parahoric(ty)?;
    let cosets = admissible_image(&parahoric);
    let covers = coset_cover_relations(&cosets);
    let below = |i: usize| -> Vec<usize> { covers.iter().filter(|&&(_, b)| b == i).map(|&(a, _)| a).collect() };
    if ty.json {
        let rows: Vec<Value> = cosets
            .iter()
            .enumerate()
            .map(|(i, w)| {
                json!({
                    "index": i,
                    "coset": w.to_string(),
                    "min_rep": w.min_rep().to_string(),
                    "length": w.length(),
                    "dimension": w.dimension(),
                    "covers": below(i),
                })
            })
            .collect();
        return Ok(Outcome::json(json!({
            "schema": 1,
            "command": "adm",
            "g": ty.g,
            "parahoric": parahoric.to_string(),
            "count": cosets.len(),
            "rows": rows,
        })));
    }
    let mut out = format!("# g={} parahoric={} cosets={}\n", ty.g, parahoric, cosets.len());
    for (i, w) in cosets.iter().enumerate() {
        let covered: Vec<String> = below(i).iter().map(|j| j.to_string()).collect();
        writeln!(
            out,
            "{i:>3}  len={} dim={}  {}  covers=[{}]",
            w.length(),
            w.dimension(),
            w,
            covered.join(",")
        )?;
    }
    Ok(Outcome::text(out))
}

fn strata(ty: &TypeArgs, dot: bool) -> Result<Outcome> {
    let parahoric = parahoric(ty)?;
    let atlas = stratification_atlas(&parahoric)?;
    let target = |i: usize| atlas.edges.iter().find(|&&(b, _)| b == i).map(|&(_, j)| j);
    if dot {
        let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
        for (i, s) in atlas.strata.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{s}\"];")?;
        }
        let interior: Vec<usize> = (0..atlas.strata.len())
            .filter(|&i| atlas.strata[i].boundary.dim() == 0)
            .collect();
        let cosets: Vec<_> = interior.iter().map(|&i| atlas.strata[i].kr.clone()).collect();
        for (a, b) in coset_cover_relations(&cosets) {
            writeln!(out, "  n{} -> n{};", interior[a], interior[b])?;
        }
        for &(b, j) in &atlas.edges {
            writeln!(out, "  n{b} -> n{j} [style=dashed];")?;
        }
        out.push_str("}\n");
        return Ok(Outcome::text(out));
    }
    if ty.json {
        let rows: Vec<Value> = atlas
            .strata
            .iter()
            .enumerate()
            .map(|(i, s)| {
                json!({
                    "index": i,
                    "boundary_dim": s.boundary.dim(),
                    "kr": s.kr.to_string(),
                    "length": s.kr.length(),
                    "interior": target(i),
                })
            })
            .collect();
        return Ok(Outcome::json(json!({
            "schema": 1,
            "command": "strata",
            "g": ty.g,
            "parahoric": parahoric.to_string(),
            "strata": rows,
        })));
    }
    let mut out = format!(
        "# g={} parahoric={} strata={} incidences={}\n",
        ty.g,
        parahoric,
        atlas.strata.len(),
        atlas.edges.len()
    );
    for (i, s) in atlas.strata.iter().enumerate() {
        let arrow = target(i).map(|j| format!("  -> {j}")).unwrap_or_default();
        writeln!(out, "{i:>3}  {s}  len={}{arrow}", s.kr.length())?;
    }
    Ok(Outcome::text(out))
}

fn zmu(g: usize, basis: Basis, as_json: bool) -> Result<Outcome> {
    check_rank(g)?;
    let z = z_mu(g);
    let mut rows: Vec<(AffineWeylElement, Vec<(&str, String)>)> = Vec::new();
    match basis {
        Basis::T => {
            for (w, c) in z.terms() {
                rows.push((w.clone(), vec![("coefficient", c.to_string())]));
            }
        }
        Basis::Kl => {
            let support = z.support();
            let table = KlTable::for_set(&support);
            let m = multiplicities(&ParahoricType::iwahori(g))?;
            for (w, c) in table.expand(&z) {
                let mult = m
                    .iter()
                    .find(|(coset, _)| coset.min_rep() == &w)
                    .map(|(_, p)| p.to_string())
                    .unwrap_or_else(|| "0".into());
                rows.push((w, vec![("coefficient", c.to_string()), ("multiplicity", mult)]));
            }
        }
    }
    rows.sort_by(|a, b| (b.0.length(), &a.0).cmp(&(a.0.length(), &b.0)));
    let basis_name = match basis {
        Basis::T => "t",
        Basis::Kl => "kl",
    };
    if as_json {
        let terms: Vec<Value> = rows
            .iter()
            .map(|(w, fields)| {
                let mut obj = serde_json::Map::new();
                obj.insert("element".into(), json!(w.to_string()));
                obj.insert("length".into(), json!(w.length()));
                for (k, v) in fields {
                    obj.insert((*k).into(), json!(v));
                }
                Value::Object(obj)
            })
            .collect();
        return Ok(Outcome::json(json!({
            "schema": 1,
            "command": "hecke zmu",
            "g": g,
            "basis": basis_name,
            "terms": terms,
        })));
    }
    let mut out = format!("# z_mu g={g} basis={basis_name} terms={}\n", rows.len());
    for (w, fields) in &rows {
        let values: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "len={}  {w}  {}", w.length(), values.join("  "))?;
    }
    Ok(Outcome::text(out))
}

fn kostant(g: usize, flag: &str, highest: &str, as_json: bool) -> Result<Outcome> {
    check_rank(g)?;
    let flag = IsotropicFlag::new(g, parse_list(flag, "--flag")?)?;
    let highest = weight(g, highest)?;
    let parabolic = ParabolicData::new(&flag);
    let h = lie_n_cohomology(&parabolic, &highest)?;
    if as_json {
        let degrees: Vec<Value> = h
            .graded
            .iter()
            .map(|(n, ws)| {
                let weights: Vec<Value> = ws
                    .iter()
                    .map(|(w, m)| json!({"weight": w.to_string(), "multiplicity": m}))
                    .collect();
                json!({"degree": n, "dimension": h.dimension(*n), "weights": weights})
            })
            .collect();
        return Ok(Outcome::json(json!({
            "schema": 1,
            "command": "kostant",
            "g": g,
            "flag": flag.to_string(),
            "highest": highest.to_string(),
            "total_dimension": h.total_dimension(),
            "degrees": degrees,
        })));
    }
    let mut out = format!(
        "# H^*(Lie N, V{highest}) flag={flag} total_dimension={}\n",
        h.total_dimension()
    );
    for (n, ws) in &h.graded {
        let parts: Vec<String> = ws
            .iter()
            .map(|(w, m)| if *m == 1 { w.to_string() } else { format!("{m}x{w}") })
            .collect();
        writeln!(out, "H^{n} dim={}: {}", h.dimension(*n), parts.join(" "))?;
    }
    Ok(Outcome::text(out))
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

fn gamma0(g: usize, text: Option<&str>) -> Result<Gamma0> {
    let Some(text) = text else {
        return Ok(Gamma0::identity(g));
    };
    let (entries, nu) = text
        .split_once(';')
        .context("--gamma0 must look like `t1,..,t2g;nu`")?;
    let rational = |s: &str| -> Result<BigRational> {
        s.trim()
            .parse::<BigRational>()
            .with_context(|| format!("bad rational `{s}` in --gamma0"))
    };
    let entries: Vec<BigRational> = entries.split(',').map(rational).collect::<Result<_>>()?;
    if entries.len() != 2 * g {
        bail!("--gamma0 needs {} entries, got {}", 2 * g, entries.len());
    }
    Ok(Gamma0::new(entries, rational(nu)?)?)
}

fn flag_multiplicities(specs: &[String]) -> Result<FlagMultiplicities> {
    let mut out = FlagMultiplicities::default();
    for entry in specs {
        let (dims, m) = entry
            .split_once('=')
            .with_context(|| format!("--flag-mult `{entry}` must look like `1,2=3`"))?;
        let m: i64 = m.trim().parse().with_context(|| format!("bad multiplicity in `{entry}`"))?;
        out.set(parse_list(dims, "--flag-mult")?, m);
    }
    Ok(out)
}

fn trace(args: &TraceArgs) -> Result<Outcome> {
    let ty = &args.ty;
    let parahoric = parahoric(ty)?;
    let g = ty.g;
    if args.q < 2 || smallest_prime_factor(args.q) != args.q {
        bail!("--q must be a prime, got {}", args.q);
    }
    if args.level < 3 {
        bail!("--level must be at least 3, got {}", args.level);
    }
    if args.level.is_multiple_of(args.q) {
        eprintln!("warning: p = {} divides the level {}", args.q, args.level);
    }
    let highest = weight(g, &args.highest)?;
    let gamma = gamma0(g, args.gamma0.as_deref())?;
    let mults = flag_multiplicities(&args.flag_mult)?;
    let cells = siegel_kr::trace::trace_table_with(g, &parahoric, &highest, args.weight, args.r, &mults)?;
    let p = BigRational::from_integer(args.q.into());
    let mut rows = Vec::new();
    for cell in &cells {
        let value = cell.evaluate_at(&p, &gamma)?;
        rows.push((cell, value));
    }
    if ty.json {
        let out: Vec<Value> = rows
            .iter()
            .map(|(cell, value)| {
                json!({
                    "stratum": cell.stratum.to_string(),
                    "boundary_dim": cell.stratum.boundary.dim(),
                    "kr": cell.stratum.kr.to_string(),
                    "bernstein": cell.bernstein_value.to_string(),
                    "value": value.to_string(),
                    "exact": matches!(value, TraceValue::Exact(_)),
                })
            })
            .collect();
        return Ok(Outcome::json(json!({
            "schema": 1,
            "command": "trace",
            "g": g,
            "parahoric": parahoric.to_string(),
            "highest": highest.to_string(),
            "weight": args.weight,
            "p": args.q,
            "r": args.r,
            "cells": out,
        })));
    }
    let mut out = format!(
        "# trace g={g} parahoric={parahoric} highest={highest} a={} p={} r={} cells={}\n",
        args.weight,
        args.q,
        args.r,
        rows.len()
    );
    for (cell, value) in &rows {
        writeln!(out, "{}  B={}  value={}", cell.stratum, cell.bernstein_value, value)?;
    }
    Ok(Outcome::text(out))
}

fn selftest(g: usize) -> Outcome {
    let checks = selfcheck::checks_up_to(g);
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{c}");
    }
    let ok = checks.iter().all(|c| c.passed);
    let passed = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(text, "selftest g={g}: {passed}/{} checks pass", checks.len());
    Outcome { text, ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(smallest_prime_factor(7), 7);
        assert_eq!(smallest_prime_factor(9), 3);
        assert_eq!(smallest_prime_factor(2), 2);
    }

    #[test]
    fn gamma0_text() {
        assert!(gamma0(1, Some("2,3;6")).is_ok());
        assert!(gamma0(1, Some("1/2,12;6")).is_ok());
        assert!(gamma0(1, Some("2,2;6")).is_err());
        assert!(gamma0(1, Some("2,3")).is_err());
    }

    #[test]
    fn flag_multiplicity_specs() {
        assert!(flag_multiplicities(&["1,2=3".into()]).is_ok());
        assert!(flag_multiplicities(&["1,2".into()]).is_err());
    }
}
