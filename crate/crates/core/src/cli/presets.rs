//! Named experiments. Each writes its tables to the output directory, prints a
//! summary and reports whether every declared check passed.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use num::BigUint;
use serde_json::json;

use super::formats::write_survey_csv;
use super::suites::standard_suites;
use crate::analytic::{identity_grid, lemma_4_8_values, PairingElement};
use crate::arith;
use crate::enumerate::{survey, Enumerator, GExtensionQ, Leaf, SurveyRow, Visitor};
use crate::error::{Error, Result};
use crate::groups::{Character, FinAbGroup, GroupElement, Subgroup};
use crate::hnp::{biquadratic_extension, biquadratic_legendre_test, hasse_norm_test};
use crate::localdata::LocalConditionSet;

pub const PRESETS: [&str; 8] = [
    "thm1.1-biquadratic",
    "thm1.4-fourfour",
    "thm1.4-sixthree",
    "thm1.5-wa",
    "thm5.1-avoidance",
    "eq1.1-crosscheck",
    "identities",
    "analytic",
];

struct Checks<'a> {
    out: &'a mut dyn Write,
    failed: Vec<String>,
}

impl Checks<'_> {
    fn check(&mut self, name: &str, ok: bool) -> Result<()> {
        writeln!(self.out, "{} {name}", if ok { "ok  " } else { "FAIL" })?;
        if !ok {
            self.failed.push(name.to_string());
        }
        Ok(())
    }

    fn note(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "     {text}")?;
        Ok(())
    }
}

fn pow10(k: u32) -> BigUint {
    BigUint::from(10u32).pow(k)
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn write_rows(dir: &Path, name: &str, rows: &[SurveyRow]) -> Result<()> {
    write_survey_csv(File::create(dir.join(format!("{name}.csv")))?, rows)
}

/// Runs a preset; `Ok(false)` if some check failed.
pub fn run_preset(name: &str, dir: &Path, threads: usize, out: &mut dyn Write) -> Result<bool> {
    if !PRESETS.contains(&name) {
        return Err(Error::UnknownPreset(name.to_string()));
    }
    std::fs::create_dir_all(dir)?;
    let mut c = Checks { out, failed: Vec::new() };
    match name {
        "thm1.1-biquadratic" => biquadratic_trend(&mut c, dir, threads)?,
        "thm1.4-fourfour" => positive_proportion(&mut c, dir, threads, name, "4,4", 22)?,
        "thm1.4-sixthree" => positive_proportion(&mut c, dir, threads, name, "6,3", 26)?,
        "thm1.5-wa" => weak_approximation(&mut c, dir, threads)?,
        "thm5.1-avoidance" => avoidance(&mut c, dir, threads)?,
        "eq1.1-crosscheck" => crosscheck(&mut c, dir)?,
        "identities" => identities(&mut c)?,
        "analytic" => analytic(&mut c)?,
        _ => unreachable!(),
    }
    if c.failed.is_empty() {
        writeln!(c.out, "{name}: all checks passed")?;
    } else {
        writeln!(c.out, "{name}: failed: {}", c.failed.join(", "))?;
    }
    Ok(c.failed.is_empty())
}

fn biquadratic_trend(c: &mut Checks, dir: &Path, threads: usize) -> Result<()> {
    let g: FinAbGroup = "2,2".parse()?;
    let bounds = [pow10(4), pow10(6), pow10(8)];
    let rows = survey(&g, &bounds, &LocalConditionSet::any(), threads)?;
    write_rows(dir, "thm1.1-biquadratic", &rows)?;
    for r in &rows {
        c.note(&format!(
            "B = {}: N = {}, fail HNP {:.4}, all D_v cyclic {:.4}",
            r.bound,
            r.n,
            r.fail_hnp_fraction(),
            r.all_cyclic_fraction()
        ))?;
    }
    let fail: Vec<f64> = rows.iter().map(SurveyRow::fail_hnp_fraction).collect();
    c.check("HNP failure fraction strictly decreasing", strictly_decreasing(&fail))?;
    c.check(
        "HNP failure coincides with all decomposition groups cyclic",
        rows.iter().all(|r| r.n_fail_hnp == r.n_all_decomposition_cyclic),
    )
}

fn positive_proportion(c: &mut Checks, dir: &Path, threads: usize, name: &str, gs: &str, k: u32) -> Result<()> {
    let g: FinAbGroup = gs.parse()?;
    let rows = survey(&g, &[pow10(k)], &LocalConditionSet::any(), threads)?;
    write_rows(dir, name, &rows)?;
    let r = &rows[0];
    c.note(&format!(
        "G = {g}, B = 10^{k}: N = {}, fail HNP {}, criterion applies {}, criterion violated {}",
        r.n, r.n_fail_hnp, r.n_criterion, r.n_criterion_violations
    ))?;
    let zero = BigUint::from(0u32);
    c.check("at least one extension fails the HNP", r.n_fail_hnp > zero)?;
    c.check("at least one extension satisfies the HNP", r.n_fail_hnp < r.n)?;
    c.check("sufficient failure criterion has no exceptions", r.n_criterion_violations == zero)
}

fn trend_note(xs: &[f64]) -> &'static str {
    if strictly_decreasing(xs) {
        "strictly decreasing"
    } else {
        "not monotone at these bounds"
    }
}

fn weak_approximation(c: &mut Checks, dir: &Path, threads: usize) -> Result<()> {
    // non-cyclic 2-Sylow: the proportion satisfying WA should decay
    let v4: FinAbGroup = "2,2".parse()?;
    let rows = survey(&v4, &[pow10(4), pow10(6), pow10(8)], &LocalConditionSet::any(), threads)?;
    write_rows(dir, "thm1.5-wa-2,2", &rows)?;
    let wa: Vec<f64> = rows.iter().map(|r| 1.0 - r.fail_wa_fraction()).collect();
    c.note(&format!("G = 2,2: WA fractions {wa:?}, {}", trend_note(&wa)))?;
    c.check(
        "WA holds for 2,2 exactly when the HNP fails",
        rows.iter().all(|r| &r.n - &r.n_fail_wa == r.n_fail_hnp),
    )?;
    // cyclic 2-Sylow: some tori satisfy WA
    let g: FinAbGroup = "6,3".parse()?;
    let rows = survey(&g, &[pow10(36)], &LocalConditionSet::any(), threads)?;
    write_rows(dir, "thm1.5-wa-6,3", &rows)?;
    let r = &rows[0];
    c.note(&format!("G = 6,3, B = 10^36: N = {}, WA holds for {}", r.n, &r.n - &r.n_fail_wa))?;
    c.check("some 6,3-extension satisfies WA", r.n_fail_wa < r.n)
}

struct Avoidance {
    target: Subgroup,
    bounds: Vec<u128>,
    n: Vec<u64>,
    avoid: Vec<u64>,
}

impl Visitor for Avoidance {
    fn visit(&mut self, leaf: &Leaf<'_>) {
        let k = self.bounds.partition_point(|&b| b < leaf.discriminant());
        let e = leaf.extension();
        let d = e.decomposition_data().expect("surjective");
        let hit = d.primes.iter().any(|x| x.decomposition == self.target) || d.infinity == self.target;
        self.n[k] += 1;
        self.avoid[k] += !hit as u64;
    }

    fn merge(&mut self, o: Self) {
        for k in 0..self.n.len() {
            self.n[k] += o.n[k];
            self.avoid[k] += o.avoid[k];
        }
    }
}

/// Fraction of extensions in which no decomposition group equals `target`,
/// cumulative over increasing bounds.
pub fn avoidance_fractions(g: &FinAbGroup, target: &Subgroup, bounds: &[u128], threads: usize) -> Result<Vec<(u64, u64)>> {
    let max = BigUint::from(*bounds.last().expect("bounds"));
    let e = Enumerator::new(g, &max, &LocalConditionSet::any())?;
    let k = bounds.len();
    let v = e.run_parallel(threads, || Avoidance {
        target: target.clone(),
        bounds: bounds.to_vec(),
        n: vec![0; k],
        avoid: vec![0; k],
    });
    let mut acc = (0, 0);
    Ok((0..k)
        .map(|i| {
            acc.0 += v.n[i];
            acc.1 += v.avoid[i];
            acc
        })
        .collect())
}

fn avoidance(c: &mut Checks, dir: &Path, threads: usize) -> Result<()> {
    let cases: [(&str, Vec<Vec<u64>>, [u128; 3]); 2] = [
        ("2,2", vec![vec![1, 0], vec![0, 1]], [10_000, 1_000_000, 100_000_000]),
        ("4,2", vec![vec![2, 0], vec![0, 1]], [10u128.pow(10), 10u128.pow(14), 10u128.pow(18)]),
    ];
    let mut table = Vec::new();
    for (gs, gens, bounds) in cases {
        let g: FinAbGroup = gs.parse()?;
        let gens: Vec<GroupElement> = gens.into_iter().map(GroupElement::new).collect();
        let a = Subgroup::generated(&g, &gens);
        let counts = avoidance_fractions(&g, &a, &bounds, threads)?;
        let fr: Vec<f64> = counts.iter().map(|&(n, k)| k as f64 / n as f64).collect();
        c.note(&format!("G = {gs}: avoidance fractions {fr:?} at {bounds:?}, {}", trend_note(&fr)))?;
        c.check(&format!("some {gs}-extension avoids the target"), counts.iter().all(|&(_, k)| k > 0))?;
        if a.is_whole() {
            // avoiding G itself is the same as every decomposition group cyclic
            let big: Vec<BigUint> = bounds.iter().map(|&b| BigUint::from(b)).collect();
            let rows = survey(&g, &big, &LocalConditionSet::any(), threads)?;
            c.check(
                &format!("avoidance of {gs} equals all decomposition groups cyclic"),
                rows.iter().zip(&counts).all(|(r, &(n, k))| r.n == BigUint::from(n) && r.n_all_decomposition_cyclic == BigUint::from(k)),
            )?;
        }
        for (b, (n, k)) in bounds.iter().zip(&counts) {
            table.push(json!({"group": gs, "B": b.to_string(), "N": n.to_string(), "N_avoid": k.to_string()}));
        }
    }
    std::fs::write(dir.join("thm5.1-avoidance.json"), serde_json::to_string_pretty(&table)?)?;
    Ok(())
}

/// `(a, b)` when both coordinate quadratic subfields are unramified at 2 and
/// have coprime discriminants.
pub fn quadratic_pair(e: &GExtensionQ) -> Option<(i64, i64)> {
    let mut d = [1i64, 1];
    for comp in e.components() {
        if comp.p() == 2 {
            return None;
        }
        let gamma = comp.gamma().expect("odd prime");
        let star = if comp.p() % 4 == 1 { comp.p() as i64 } else { -(comp.p() as i64) };
        let hit: Vec<usize> = (0..2).filter(|&i| gamma.coords[i] != 0).collect();
        if hit.len() != 1 {
            return None;
        }
        d[hit[0]] *= star;
    }
    Some((d[0], d[1]))
}

fn crosscheck(c: &mut Checks, dir: &Path) -> Result<()> {
    let g: FinAbGroup = "2,2".parse()?;
    let exts = crate::enumerate::enumerate_extensions(&g, &pow10(7), &LocalConditionSet::any())?;
    let (mut agree, mut disagree) = (0u64, 0u64);
    for e in &exts {
        if let Some((a, b)) = quadratic_pair(e) {
            if biquadratic_legendre_test(a, b)? == !hasse_norm_test(e)?.hnp_holds {
                agree += 1;
            } else {
                disagree += 1;
            }
        }
    }
    c.note(&format!("enumerated up to 10^7: {agree} agree, {disagree} disagree"))?;
    let (pairs, pair_disagree) = pair_grid(100_000)?;
    c.note(&format!("pairs with |ab| ≤ 10^5: {pairs} checked, {pair_disagree} disagree"))?;
    std::fs::write(
        dir.join("eq1.1-crosscheck.json"),
        json!({"enumerated_agree": agree, "enumerated_disagree": disagree,
               "pairs": pairs, "pairs_disagree": pair_disagree})
        .to_string(),
    )?;
    c.check("Legendre criterion agrees on enumerated extensions", disagree == 0 && agree > 0)?;
    c.check("Legendre criterion agrees on all pairs", pair_disagree == 0 && pairs > 0)
}

/// Compares both tests over every ordered pair of coprime squarefree
/// `a, b ≡ 1 mod 4`, `a, b ≠ 1`, `|ab| ≤ limit`.
pub fn pair_grid(limit: i64) -> Result<(u64, u64)> {
    let mut candidates: Vec<i64> = (-limit..=limit)
        .filter(|&d| d != 1 && d != 0 && d.rem_euclid(4) == 1 && arith::is_squarefree(d.unsigned_abs()))
        .collect();
    candidates.sort_by_key(|d| d.abs());
    let (mut n, mut bad) = (0u64, 0u64);
    for &a in &candidates {
        let end = candidates.partition_point(|b| b.abs() <= limit / a.abs());
        for &b in &candidates[..end] {
            if arith::gcd(a.unsigned_abs(), b.unsigned_abs()) != 1 {
                continue;
            }
            n += 1;
            let fails = biquadratic_legendre_test(a, b)?;
            if fails == hasse_norm_test(&biquadratic_extension(a, b)?)?.hnp_holds {
                bad += 1;
            }
        }
    }
    Ok((n, bad))
}

fn identities(c: &mut Checks) -> Result<()> {
    for r in standard_suites()? {
        c.note(&format!("{}: {} cases", r.name, r.cases))?;
        for f in &r.failures {
            c.note(f)?;
        }
        c.check(r.name, r.passed())?;
    }
    Ok(())
}

fn analytic(c: &mut Checks) -> Result<()> {
    let r = identity_grid()?;
    c.note(&format!(
        "closed form: max deviation {:.3e} over {} cases",
        r.closed_form_deviation, r.closed_form_cases
    ))?;
    c.note(&format!("vanishing: max {:.3e} over {} cases", r.vanishing_deviation, r.vanishing_cases))?;
    c.note(&format!(
        "leading coefficients: max deviation {:.3e} over {} cases",
        r.leading_coefficient_deviation, r.leading_coefficient_cases
    ))?;
    c.check("closed form within 1e-9", r.closed_form_deviation < 1e-9)?;
    c.check("vanishing within 1e-12", r.vanishing_deviation < 1e-12)?;
    c.check("leading coefficients within 1e-6", r.leading_coefficient_deviation < 1e-6)?;
    let v4: FinAbGroup = "2,2".parse()?;
    let value = lemma_4_8_values(&v4, 5, &PairingElement::trivial())?;
    c.note(&format!("local factor for 2,2 at 5: {value}"))?;
    let nonresidue = PairingElement::single(2, Character { coords: vec![1, 0] })?;
    let second = lemma_4_8_values(&v4, 5, &nonresidue)?;
    c.check("local factors 8/5 and 4/5", value.to_string() == "8/5" && second.to_string() == "4/5")
}
