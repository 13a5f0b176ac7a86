//! The smallest `(Z/4)²`-extensions failing the Hasse norm principle, with the
//! decomposition groups that witness it.

use abelian_hnp::enumerate::Enumerator;
use abelian_hnp::hnp::lemma_6_13_predicate;
use abelian_hnp::localdata::LocalConditionSet;
use abelian_hnp::{hasse_norm_test, FinAbGroup};
use num::BigUint;

fn main() -> abelian_hnp::Result<()> {
    let g: FinAbGroup = "4,4".parse()?;
    let b = BigUint::from(10u32).pow(26);
    let mut exts = Enumerator::new(&g, &b, &LocalConditionSet::any())?.collect(0);
    exts.sort();
    let mut shown = 0;
    for e in &exts {
        let r = hasse_norm_test(e)?;
        if r.hnp_holds {
            continue;
        }
        println!("disc {} ramified at {:?}, |Sha| {}", e.discriminant(), e.ramified_primes(), r.sha_order);
        println!("    sufficient criterion applies: {}", lemma_6_13_predicate(e)?);
        for d in e.decomposition_data()?.primes {
            println!("    D_{} = {}, I_{} = {}", d.p, d.decomposition, d.p, d.inertia);
        }
        shown += 1;
        if shown == 3 {
            break;
        }
    }
    println!("{} extensions up to 10^26", exts.len());
    Ok(())
}
