//! G-extensions of Q as finite sets of local components, and their enumeration
//! by discriminant.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num::{BigUint, ToPrimitive};

use crate::error::{Error, Result};
use crate::groups::{FinAbGroup, GroupElement, Subgroup};
use crate::localdata::{local_disc_exponent, LocalComponent, LocalConditionSet};

mod modulus;
mod search;
mod survey;

pub use modulus::{enumerate_by_modulus, max_conductor};
pub use search::{Enumerator, Leaf, Visitor};
pub use survey::{survey, SurveyRow};

/// A G-extension of Q: one nontrivial local component per ramified prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GExtensionQ {
    group: FinAbGroup,
    components: Vec<LocalComponent>,
    discriminant: BigUint,
    surjective: bool,
}

/// Local Galois data at one ramified prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDecomposition {
    pub p: u64,
    pub inertia: Subgroup,
    pub frobenius: GroupElement,
    pub decomposition: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionData {
    pub primes: Vec<PrimeDecomposition>,
    /// Decomposition group at the real place, generated by complex conjugation.
    pub infinity: Subgroup,
}

impl GExtensionQ {
    /// Builds an extension from local components; trivial components are
    /// dropped, two components at one prime are rejected.
    pub fn new(group: &FinAbGroup, components: Vec<LocalComponent>) -> Result<Self> {
        let mut comps: Vec<LocalComponent> =
            components.into_iter().filter(|c| !c.is_trivial()).collect();
        comps.sort_by_key(|c| c.p());
        if comps.windows(2).any(|w| w[0].p() == w[1].p()) {
            return Err(Error::InvalidComponent("two components at the same prime".into()));
        }
        for c in &comps {
            if c.images().iter().any(|x| !group.contains_element(x)) {
                return Err(Error::InvalidComponent(format!(
                    "component at {} does not take values in {group}",
                    c.p()
                )));
            }
        }
        let mut discriminant = BigUint::from(1u32);
        for c in &comps {
            discriminant *= BigUint::from(c.p()).pow(local_disc_exponent(group, c) as u32);
        }
        let image = Subgroup::generated(
            group,
            &comps.iter().flat_map(|c| c.images().iter().cloned()).collect::<Vec<_>>(),
        );
        Ok(GExtensionQ {
            group: group.clone(),
            components: comps,
            discriminant,
            surjective: image.is_whole(),
        })
    }

    /// For the search, which already knows the discriminant and surjectivity.
    pub(crate) fn from_parts(
        group: &FinAbGroup,
        components: Vec<LocalComponent>,
        discriminant: BigUint,
    ) -> Self {
        GExtensionQ { group: group.clone(), components, discriminant, surjective: true }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Nontrivial components, by increasing prime.
    pub fn components(&self) -> &[LocalComponent] {
        &self.components
    }

    pub fn component_at(&self, p: u64) -> Option<&LocalComponent> {
        self.components.iter().find(|c| c.p() == p)
    }

    pub fn discriminant(&self) -> &BigUint {
        &self.discriminant
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.p()).collect()
    }

    /// `Σ_{q ≠ p} φ_q(p)`: the image of the idele that is `p` at every place
    /// other than `p`. Generates the decomposition group modulo inertia.
    pub fn frobenius_at(&self, p: u64) -> GroupElement {
        let mut acc = self.group.zero();
        let u = p as i64;
        for c in &self.components {
            if c.p() != p {
                acc = self.group.add(&acc, &c.evaluate_unit(&self.group, u));
            }
        }
        acc
    }

    /// Image of complex conjugation: `Σ_p φ_p(-1)`.
    pub fn conjugation(&self) -> GroupElement {
        let mut acc = self.group.zero();
        for c in &self.components {
            acc = self.group.add(&acc, &c.evaluate_unit(&self.group, -1));
        }
        acc
    }

    pub fn decomposition_at(&self, p: u64) -> PrimeDecomposition {
        let frobenius = self.frobenius_at(p);
        let (inertia, decomposition) = match self.component_at(p) {
            Some(c) => {
                let inertia = c.inertia(&self.group);
                let decomposition = inertia.with_element(&frobenius);
                (inertia, decomposition)
            }
            None => (
                Subgroup::trivial(&self.group),
                Subgroup::generated(&self.group, &[frobenius.clone()]),
            ),
        };
        PrimeDecomposition { p, inertia, frobenius, decomposition }
    }

    pub fn decomposition_data(&self) -> Result<DecompositionData> {
        if !self.surjective {
            return Err(Error::NotSurjective);
        }
        let primes = self.components.iter().map(|c| self.decomposition_at(c.p())).collect();
        let infinity = Subgroup::generated(&self.group, &[self.conjugation()]);
        Ok(DecompositionData { primes, infinity })
    }

    /// Whether the full local data satisfy every rule of `conditions`.
    pub fn satisfies(&self, conditions: &LocalConditionSet) -> bool {
        let mut primes: BTreeSet<u64> = self.ramified_primes().into_iter().collect();
        primes.extend(conditions.rules.keys().copied());
        primes.into_iter().all(|p| {
            let rule = conditions.rule_at(p);
            let d = self.decomposition_at(p);
            let comp = self
                .component_at(p)
                .cloned()
                .unwrap_or_else(|| LocalComponent::trivial(&self.group, p));
            crate::localdata::matches_condition(&rule, &d.inertia, &d.decomposition, &comp)
        })
    }
}

impl PartialOrd for GExtensionQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GExtensionQ {
    /// Ascending discriminant, then lexicographic component encoding.
    fn cmp(&self, other: &Self) -> Ordering {
        self.discriminant
            .cmp(&other.discriminant)
            .then_with(|| self.components.cmp(&other.components))
            .then_with(|| self.group.cmp(&other.group))
    }
}

/// Converts a user bound to the search's native width.
pub(crate) fn bound_to_u128(bound: &BigUint) -> Result<u128> {
    bound
        .to_u128()
        .ok_or_else(|| Error::BoundExceeded("discriminant bound must be below 2^128".into()))
}

/// All G-extensions with discriminant at most `bound` satisfying `conditions`,
/// sorted by discriminant and then by components.
pub fn enumerate_extensions(
    group: &FinAbGroup,
    bound: &BigUint,
    conditions: &LocalConditionSet,
) -> Result<Vec<GExtensionQ>> {
    let e = Enumerator::new(group, bound, conditions)?;
    let mut out = e.collect(0);
    out.sort();
    Ok(out)
}

/// Number of G-extensions with discriminant at most `bound` satisfying
/// `conditions`.
pub fn count(group: &FinAbGroup, bound: &BigUint, conditions: &LocalConditionSet) -> Result<BigUint> {
    let e = Enumerator::new(group, bound, conditions)?;
    Ok(BigUint::from(e.count(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    fn el(c: &[u64]) -> GroupElement {
        GroupElement::new(c.to_vec())
    }

    /// Q(√13, √17): the first coordinate ramifies at 13, the second at 17.
    fn q13_17() -> GExtensionQ {
        let v4 = g("2,2");
        let c13 = LocalComponent::odd(&v4, 13, el(&[1, 0])).unwrap();
        let c17 = LocalComponent::odd(&v4, 17, el(&[0, 1])).unwrap();
        GExtensionQ::new(&v4, vec![c13, c17]).unwrap()
    }

    /// Q(i, √3): first coordinate cuts out Q(i), second Q(√-3).
    fn qi_sqrt3() -> GExtensionQ {
        let v4 = g("2,2");
        let c2 = LocalComponent::two(&v4, el(&[1, 0]), el(&[0, 0])).unwrap();
        let c3 = LocalComponent::odd(&v4, 3, el(&[0, 1])).unwrap();
        GExtensionQ::new(&v4, vec![c2, c3]).unwrap()
    }

    #[test]
    fn named_extensions() {
        let e = q13_17();
        assert!(e.is_surjective());
        assert_eq!(e.discriminant(), &BigUint::from(48841u32));
        assert!(e.frobenius_at(13).is_zero());
        let d = e.decomposition_data().unwrap();
        assert!(d.primes.iter().all(|x| x.decomposition.is_cyclic()));
        assert!(d.infinity.is_trivial());

        let e = qi_sqrt3();
        assert_eq!(e.discriminant(), &BigUint::from(144u32));
        assert_eq!(e.frobenius_at(3), el(&[1, 0]));
        assert!(e.decomposition_at(3).decomposition.is_whole());
        assert_eq!(e.conjugation(), el(&[1, 1]));
    }

    #[test]
    fn unramified_decomposition() {
        let e = q13_17();
        // 2 is a nonresidue mod 13 and mod 17? (2|13) = -1, (2|17) = 1
        let d = e.decomposition_at(2);
        assert!(d.inertia.is_trivial());
        assert_eq!(d.frobenius, el(&[1, 0]));
        // 1 mod everything: 443 = 1 mod 13 and 1 mod 17 → 443 - 1 = 442 = 2·13·17
        assert!(e.decomposition_at(443).decomposition.is_trivial());
    }

    #[test]
    fn rejects_bad_input() {
        let v4 = g("2,2");
        let c = LocalComponent::odd(&v4, 13, el(&[1, 0])).unwrap();
        let e = GExtensionQ::new(&v4, vec![c.clone()]).unwrap();
        assert!(!e.is_surjective());
        assert_eq!(e.decomposition_data(), Err(Error::NotSurjective));
        assert!(GExtensionQ::new(&v4, vec![c.clone(), c]).is_err());
    }
}
