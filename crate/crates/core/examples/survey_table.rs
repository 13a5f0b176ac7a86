//! HNP and weak approximation statistics for biquadratic fields, written as
//! CSV to stdout.

use abelian_hnp::cli::formats::write_survey_csv;
use abelian_hnp::enumerate::survey;
use abelian_hnp::localdata::LocalConditionSet;
use abelian_hnp::FinAbGroup;
use num::BigUint;

fn main() -> abelian_hnp::Result<()> {
    let g: FinAbGroup = "2,2".parse()?;
    let bounds: Vec<BigUint> = [4u32, 5, 6, 7].iter().map(|&k| BigUint::from(10u32).pow(k)).collect();
    let rows = survey(&g, &bounds, &LocalConditionSet::any(), 0)?;
    write_survey_csv(std::io::stdout().lock(), &rows)?;
    for r in &rows {
        eprintln!("B = {:>9}: {:.4} fail HNP", r.bound, r.fail_hnp_fraction());
    }
    Ok(())
}
