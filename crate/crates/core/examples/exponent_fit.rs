//! Fits the growth exponent of `N(G, B)` against `B^{1/α}` for a few groups.

use abelian_hnp::analytic::asymptotic_fit;
use abelian_hnp::enumerate::Enumerator;
use abelian_hnp::groups::group_invariants;
use abelian_hnp::localdata::LocalConditionSet;
use abelian_hnp::FinAbGroup;
use num::BigUint;

fn main() -> abelian_hnp::Result<()> {
    for (gs, exps) in [("2", [6u32, 7, 8]), ("2,2", [6, 7, 8]), ("3", [8, 10, 12])] {
        let g: FinAbGroup = gs.parse()?;
        let inv = group_invariants(&g)?;
        let mut pts = Vec::new();
        for k in exps {
            let b = BigUint::from(10u32).pow(k);
            let n = Enumerator::new(&g, &b, &LocalConditionSet::any())?.count(0);
            pts.push((10f64.powi(k as i32), n as f64));
        }
        let fit = asymptotic_fit(&pts, inv.alpha as f64, inv.nu_over_q as f64)?;
        println!("{gs:>4}: slope {:.4}, 1/α = {:.4}, c ≈ {:?}", fit.slope, 1.0 / inv.alpha as f64, fit.c_estimates);
    }
    Ok(())
}
