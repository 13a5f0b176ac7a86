//! Hasse norm principle and weak approximation for norm-one tori of abelian
//! extensions, via the span of the local exterior squares in `∧²G`.
//!
//! With `V = Σ_v im(∧²D_v → ∧²G)`, the dual of Sha is `∧²G / V` and the
//! weak-approximation defect has order `|V|`.

use num::BigUint;
use serde_json::{json, Value};

use crate::arith;
use crate::enumerate::GExtensionQ;
use crate::error::{Error, Result};
use crate::exterior::{span_sum, subgroup_wedge_image, ExtSquare};
use crate::groups::{bicyclic_family, is_excluded_form, FinAbGroup, GroupElement, Subgroup};
use crate::localdata::LocalComponent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnpReport {
    pub hnp_holds: bool,
    pub sha_order: BigUint,
    pub a_order: BigUint,
    /// `a_order == 1`.
    pub wa_holds: bool,
    /// `|V|`.
    pub span_order: BigUint,
    /// Every decomposition group is cyclic. Implies `wa_holds`; the converse
    /// fails e.g. for `D = ⟨2e1, e2⟩` in `Z/4 ⊕ Z/2`.
    pub all_decomposition_cyclic: bool,
    /// Invariant factors of `∧²G / V`, the dual of Sha.
    pub sha_dual_invariants: Vec<u64>,
}

impl HnpReport {
    pub fn to_json(&self) -> Value {
        json!({
            "hnp": self.hnp_holds,
            "sha_order": self.sha_order.to_string(),
            "a_order": self.a_order.to_string(),
            "wa": self.wa_holds,
        })
    }

    pub fn to_json_verbose(&self) -> Value {
        let mut v = self.to_json();
        v["span_order"] = json!(self.span_order.to_string());
        v["all_decomposition_cyclic"] = json!(self.all_decomposition_cyclic);
        v["sha_dual_invariants"] = json!(self.sha_dual_invariants);
        v
    }
}

/// Decomposition groups at the ramified primes and at infinity. Unramified
/// primes have cyclic decomposition groups and contribute nothing.
fn relevant_decompositions(ext: &GExtensionQ) -> Result<Vec<Subgroup>> {
    let data = ext.decomposition_data()?;
    let mut out: Vec<Subgroup> = data.primes.into_iter().map(|d| d.decomposition).collect();
    out.push(data.infinity);
    Ok(out)
}

pub fn hasse_norm_test(ext: &GExtensionQ) -> Result<HnpReport> {
    let ds = relevant_decompositions(ext)?;
    let square = ExtSquare::new(ext.group());
    let mut parts = vec![square.zero_subgroup()];
    parts.extend(ds.iter().map(subgroup_wedge_image));
    let v = span_sum(&parts)?;
    let sha = v.index();
    let span = v.order();
    Ok(HnpReport {
        hnp_holds: sha == 1,
        sha_order: sha.into(),
        a_order: span.into(),
        wa_holds: span == 1,
        span_order: span.into(),
        all_decomposition_cyclic: ds.iter().all(Subgroup::is_cyclic),
        sha_dual_invariants: v.quotient_invariants(),
    })
}

/// Whether `Q(√a, √b)` fails the Hasse norm principle, by the Legendre-symbol
/// criterion: `(a|p) = 1` for all `p | b` and `(b|p) = 1` for all `p | a`.
pub fn biquadratic_legendre_test(a: i64, b: i64) -> Result<bool> {
    check_biquadratic(a, b)?;
    let all_squares = |x: i64, y: i64| {
        arith::factorize(y.unsigned_abs()).into_iter().all(|(p, _)| arith::legendre(x, p) == 1)
    };
    Ok(all_squares(a, b) && all_squares(b, a))
}

fn check_biquadratic(a: i64, b: i64) -> Result<()> {
    let fail = |s: &str| Err(Error::Precondition(s.into()));
    if a == 1 || b == 1 || a == 0 || b == 0 {
        return fail("a and b must differ from 0 and 1");
    }
    if !arith::is_squarefree(a.unsigned_abs()) || !arith::is_squarefree(b.unsigned_abs()) {
        return fail("a and b must be squarefree");
    }
    if arith::gcd(a.unsigned_abs(), b.unsigned_abs()) != 1 {
        return fail("a and b must be coprime");
    }
    if a.rem_euclid(4) != 1 || b.rem_euclid(4) != 1 {
        return fail("a and b must be 1 mod 4");
    }
    Ok(())
}

/// The `(Z/2)²`-extension `Q(√a, √b)` with the first coordinate cutting out
/// `Q(√a)` and the second `Q(√b)`. Same hypotheses as
/// [`biquadratic_legendre_test`].
pub fn biquadratic_extension(a: i64, b: i64) -> Result<GExtensionQ> {
    check_biquadratic(a, b)?;
    let g = FinAbGroup::new(vec![2, 2])?;
    let mut comps = Vec::new();
    for (d, x) in [(a, vec![1, 0]), (b, vec![0, 1])] {
        for (p, _) in arith::factorize(d.unsigned_abs()) {
            comps.push(LocalComponent::odd(&g, p, GroupElement::new(x.clone()))?);
        }
    }
    GExtensionQ::new(&g, comps)
}

/// True iff at every ramified prime the inertia group has order dividing `Q`
/// or the decomposition group is cyclic. When true the extension fails the
/// Hasse norm principle.
pub fn lemma_6_13_predicate(ext: &GExtensionQ) -> Result<bool> {
    let g = ext.group();
    if is_excluded_form(g) {
        return Err(Error::WrongFamily(format!(
            "{g} is of the form Z/n ⊕ (Z/Q)^r; the criterion needs the opposite"
        )));
    }
    let q = g.smallest_prime().expect("nontrivial");
    let data = ext.decomposition_data()?;
    Ok(data
        .primes
        .iter()
        .all(|d| q % d.inertia.order() == 0 || d.decomposition.is_cyclic()))
}

/// For `G ≅ Z/n ⊕ (Z/Q)^r`: if the extension fails the Hasse norm principle,
/// the first coordinate subgroup `⟨e_i, e_j⟩` that is no decomposition group;
/// empty if the principle holds.
pub fn lemma_6_12_certificate(ext: &GExtensionQ) -> Result<Vec<Subgroup>> {
    let g = ext.group();
    if !is_excluded_form(g) {
        return Err(Error::WrongFamily(format!("{g} is not of the form Z/n ⊕ (Z/Q)^r")));
    }
    if hasse_norm_test(ext)?.hnp_holds {
        return Ok(Vec::new());
    }
    let ds = relevant_decompositions(ext)?;
    let family = bicyclic_family(g)?;
    let missing = family
        .into_iter()
        .find(|gi| !ds.contains(gi))
        .expect("the family spans the exterior square");
    Ok(vec![missing])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_instances() {
        let e = biquadratic_extension(13, 17).unwrap();
        assert_eq!(e.discriminant(), &BigUint::from(48841u32));
        let r = hasse_norm_test(&e).unwrap();
        assert!(!r.hnp_holds && r.wa_holds);
        assert_eq!(r.sha_order, BigUint::from(2u32));
        assert_eq!(r.a_order, BigUint::from(1u32));
        assert_eq!(lemma_6_12_certificate(&e).unwrap(), vec![Subgroup::whole(e.group())]);
        assert_eq!(
            r.to_json().to_string(),
            r#"{"a_order":"1","hnp":false,"sha_order":"2","wa":true}"#
        );
    }

    #[test]
    fn legendre_examples() {
        assert!(biquadratic_legendre_test(13, 17).unwrap());
        assert!(!biquadratic_legendre_test(5, 13).unwrap());
        assert!(biquadratic_legendre_test(-3, 13).unwrap());
        assert!(biquadratic_legendre_test(3, 13).is_err());
        assert!(biquadratic_legendre_test(5, 5).is_err());
        assert!(biquadratic_legendre_test(1, 5).is_err());
        assert!(biquadratic_legendre_test(-75, 13).is_err());
    }

    #[test]
    fn family_errors() {
        let e = biquadratic_extension(13, 17).unwrap();
        assert!(matches!(lemma_6_13_predicate(&e), Err(Error::WrongFamily(_))));
    }
}
