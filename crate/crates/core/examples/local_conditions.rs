//! Counting with local conditions: biquadratic fields unramified at 3, and
//! fields whose decomposition groups are all cyclic.

use abelian_hnp::localdata::{DefaultRule, LocalConditionSet, LocalPredicate, Rule};
use abelian_hnp::{count, FinAbGroup};
use num::BigUint;
use serde_json::json;

fn main() -> abelian_hnp::Result<()> {
    let g: FinAbGroup = "2,2".parse()?;
    let b = BigUint::from(10u32).pow(7);
    let all = count(&g, &b, &LocalConditionSet::any())?;

    let no3 = LocalConditionSet::with_default(DefaultRule::Any).with_rule(3, Rule::Unramified);
    let n3 = count(&g, &b, &no3)?;
    println!("unramified at 3: {n3} of {all}");

    // the same set, read from the JSON accepted by `--conditions`
    let parsed = LocalConditionSet::from_json(&g, &json!([{"default": "any"}, {"p": 3, "rule": "unramified"}]))?;
    assert_eq!(parsed, no3);

    let mut cyclic = LocalConditionSet::any();
    for p in abelian_hnp::arith::primes_up_to(3163) {
        cyclic = cyclic.with_rule(p, Rule::FullLocalPredicate(LocalPredicate::DecompositionCyclic));
    }
    println!("all D_p cyclic for p ≤ 3163: {}", count(&g, &b, &cyclic)?);
    Ok(())
}
