//! The Hasse norm principle for two named biquadratic fields, and the
//! Legendre-symbol criterion for `Q(√a, √b)`.

use abelian_hnp::hnp::{biquadratic_extension, biquadratic_legendre_test};
use abelian_hnp::localdata::LocalConditionSet;
use abelian_hnp::{enumerate_extensions, hasse_norm_test, FinAbGroup};
use num::BigUint;

fn main() -> abelian_hnp::Result<()> {
    let mut fields = Vec::new();
    for (a, b) in [(13, 17), (5, 13), (-3, 5)] {
        fields.push((format!("Q(√{a}, √{b})"), biquadratic_extension(a, b)?));
    }
    // Q(i, √3) is ramified at 2, so take it from the enumeration: it is the
    // smallest biquadratic field
    let g: FinAbGroup = "2,2".parse()?;
    let smallest = enumerate_extensions(&g, &BigUint::from(144u32), &LocalConditionSet::any())?;
    fields.push(("Q(i, √3)".to_string(), smallest[0].clone()));

    for (name, e) in &fields {
        let r = hasse_norm_test(e)?;
        println!(
            "{name}: disc {}, HNP {}, |Sha| {}, WA {}, |A| {}",
            e.discriminant(),
            if r.hnp_holds { "holds" } else { "fails" },
            r.sha_order,
            if r.wa_holds { "holds" } else { "fails" },
            r.a_order
        );
        let d = e.decomposition_data()?;
        for p in &d.primes {
            println!("    D_{} = {}", p.p, p.decomposition);
        }
        println!("    D_∞ = {}", d.infinity);
    }
    // both ≡ 1 mod 4, so the Legendre criterion applies
    println!("Legendre criterion says Q(√13, √17) fails: {}", biquadratic_legendre_test(13, 17)?);
    Ok(())
}
