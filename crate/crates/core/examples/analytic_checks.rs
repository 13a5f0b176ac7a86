//! Local transforms of the discriminant-weighted character sums against their
//! closed forms, and an Euler factor computed exactly.

use abelian_hnp::analytic::{
    identity_grid, lemma_3_3_closed_form, lemma_4_8_values, local_transform, LocalCharacterFull, PairingElement, C64,
};
use abelian_hnp::{Character, FinAbGroup};

fn main() -> abelian_hnp::Result<()> {
    let g: FinAbGroup = "2,2".parse()?;
    let x = PairingElement::single(2, Character { coords: vec![1, 0] })?;
    let s = C64::new(0.75, 1.5);
    // weight by the level of the character at p
    let f = |chi: &LocalCharacterFull| C64::new(1.0 + chi.component.level() as f64, 0.0);
    let direct = local_transform(&g, 13, &x, s, f)?;
    let closed = lemma_3_3_closed_form(&g, 13, &x, s, f)?;
    println!("p = 13: direct {direct:.12}, closed form {closed:.12}");

    println!("Euler factor at 5, trivial twist: {}", lemma_4_8_values(&g, 5, &PairingElement::trivial())?);
    println!("Euler factor at 5, twisted by 2:  {}", lemma_4_8_values(&g, 5, &x)?);

    let r = identity_grid()?;
    println!(
        "grid: closed form {:.2e} ({} cases), vanishing {:.2e}, leading coefficients {:.2e}",
        r.closed_form_deviation, r.closed_form_cases, r.vanishing_deviation, r.leading_coefficient_deviation
    );
    Ok(())
}
