//! Counts quadratic fields by discriminant and lists the first few.

use abelian_hnp::{count, enumerate_extensions, FinAbGroup};
use abelian_hnp::localdata::LocalConditionSet;
use num::BigUint;

fn main() -> abelian_hnp::Result<()> {
    let g = FinAbGroup::cyclic(2);
    let any = LocalConditionSet::any();
    for exp in [1u32, 3, 4, 6] {
        let b = BigUint::from(10u32).pow(exp);
        println!("N(Z/2, 10^{exp}) = {}", count(&g, &b, &any)?);
    }
    for e in enumerate_extensions(&g, &BigUint::from(30u32), &any)? {
        println!("disc {:>3}  ramified at {:?}", e.discriminant(), e.ramified_primes());
    }
    Ok(())
}
