//! Enumerates the same extensions twice, once from local data and once from
//! Dirichlet characters grouped by modulus, and compares.

use abelian_hnp::enumerate::{enumerate_by_modulus, max_conductor};
use abelian_hnp::localdata::LocalConditionSet;
use abelian_hnp::{enumerate_extensions, FinAbGroup};
use num::BigUint;

fn main() -> abelian_hnp::Result<()> {
    let b = BigUint::from(100_000u32);
    for gs in ["2", "2,2", "4", "6", "4,2"] {
        let g: FinAbGroup = gs.parse()?;
        let local = enumerate_extensions(&g, &b, &LocalConditionSet::any())?;
        let m = max_conductor(&g, &b);
        let chars = enumerate_by_modulus(&g, &b, m)?;
        println!("{gs:>4}: {} local, {} by modulus ≤ {m}, equal {}", local.len(), chars.len(), local == chars);
    }
    Ok(())
}
