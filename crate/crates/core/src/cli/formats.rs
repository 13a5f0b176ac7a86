//! JSON-lines, CSV and input-file formats. Big integers are decimal strings.

use std::io::Write;
use std::path::Path;

use num::BigUint;
use serde_json::{json, Value};

use crate::enumerate::{GExtensionQ, SurveyRow};
use crate::error::{Error, Result};
use crate::groups::FinAbGroup;
use crate::localdata::{LocalComponent, LocalConditionSet};

/// Parses `1000000`, `10^6` or `1e6`.
pub fn parse_bound(s: &str) -> Result<BigUint> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad bound {s:?}"));
    let power = |base: &str, exp: &str| -> Result<BigUint> {
        let b: BigUint = base.parse().map_err(|_| bad())?;
        let e: u32 = exp.parse().map_err(|_| bad())?;
        Ok(b.pow(e))
    };
    if let Some((b, e)) = s.split_once('^') {
        return power(b, e);
    }
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: BigUint = m.parse().map_err(|_| bad())?;
        return Ok(m * power("10", e)?);
    }
    s.parse().map_err(|_| bad())
}

pub fn parse_bounds(s: &str) -> Result<Vec<BigUint>> {
    s.split(',').map(parse_bound).collect()
}

pub fn extension_to_json(e: &GExtensionQ) -> Value {
    json!({
        "disc": e.discriminant().to_string(),
        "components": e.components().iter().map(LocalComponent::to_json).collect::<Vec<_>>(),
        "surjective": e.is_surjective(),
    })
}

/// Accepts a record as written by [`extension_to_json`] or a bare list of
/// components. Discriminant and surjectivity are recomputed; a stated
/// discriminant must match.
pub fn extension_from_json(g: &FinAbGroup, v: &Value) -> Result<GExtensionQ> {
    let list = match v {
        Value::Array(a) => a,
        Value::Object(_) => v
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("record lacks \"components\"".into()))?,
        _ => return Err(Error::Parse("expected a JSON object or list".into())),
    };
    let comps = list
        .iter()
        .map(|c| LocalComponent::from_json(g, c))
        .collect::<Result<Vec<_>>>()?;
    let ext = GExtensionQ::new(g, comps)?;
    if !ext.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if let Some(d) = v.get("disc").and_then(Value::as_str) {
        if d != ext.discriminant().to_string() {
            return Err(Error::Parse(format!(
                "stated discriminant {d} differs from computed {}",
                ext.discriminant()
            )));
        }
    }
    Ok(ext)
}

pub fn parse_extension_input(g: &FinAbGroup, path: &Path) -> Result<GExtensionQ> {
    let text = std::fs::read_to_string(path)?;
    extension_from_json(g, &serde_json::from_str(&text)?)
}

pub fn read_conditions(g: &FinAbGroup, path: Option<&Path>) -> Result<LocalConditionSet> {
    match path {
        None => Ok(LocalConditionSet::any()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            LocalConditionSet::from_json(g, &serde_json::from_str(&text)?)
        }
    }
}

/// `disc,primes` with primes joined by `;`.
pub fn extension_csv_line(e: &GExtensionQ) -> String {
    let primes: Vec<String> = e.ramified_primes().iter().map(u64::to_string).collect();
    format!("{},{}", e.discriminant(), primes.join(";"))
}

pub fn write_survey_csv<W: Write>(mut w: W, rows: &[SurveyRow]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(&mut w);
    csv.write_record(["B", "N", "N_fail_hnp", "N_fail_wa", "sha_histogram"])?;
    for r in rows {
        csv.write_record([
            r.bound.to_string(),
            r.n.to_string(),
            r.n_fail_hnp.to_string(),
            r.n_fail_wa.to_string(),
            r.histogram_field(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

/// `(B, N)` pairs from a CSV whose first two columns are `B` and `N`, such as
/// a survey table.
pub fn read_counts(path: &Path) -> Result<Vec<(BigUint, BigUint)>> {
    let mut rdr = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let field = |i: usize| -> Result<BigUint> {
            rec.get(i)
                .ok_or_else(|| Error::Parse(format!("row with fewer than two columns: {rec:?}")))
                .and_then(parse_bound)
        };
        out.push((field(0)?, field(1)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(parse_bound("10^6").unwrap(), BigUint::from(1_000_000u32));
        assert_eq!(parse_bound("3e2").unwrap(), BigUint::from(300u32));
        assert_eq!(parse_bound("144").unwrap(), BigUint::from(144u32));
        assert!(parse_bound("ten").is_err());
    }

    #[test]
    fn extension_round_trip() {
        let g: FinAbGroup = "2,2".parse().unwrap();
        let v: Value =
            serde_json::from_str(r#"[{"p": 13, "gamma": [1, 0]}, {"p": 17, "gamma": [0, 1]}]"#).unwrap();
        let e = extension_from_json(&g, &v).unwrap();
        assert_eq!(e.discriminant(), &BigUint::from(48841u32));
        let text = extension_to_json(&e).to_string();
        let again = extension_from_json(&g, &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(again, e);
        assert_eq!(extension_to_json(&again).to_string(), text);

        let one: Value = serde_json::from_str(r#"[{"p": 13, "gamma": [1, 0]}]"#).unwrap();
        assert_eq!(extension_from_json(&g, &one), Err(Error::NotSurjective));
        assert_eq!(extension_from_json(&g, &Value::Array(vec![])), Err(Error::NotSurjective));
    }
}
