use std::collections::{HashSet, VecDeque};

use super::lattice::ModLattice;
use super::{FinAbGroup, GroupElement};
use crate::error::{Error, Result};

/// Largest group order for which [`subgroups`] will run.
pub const SUBGROUP_ENUMERATION_BOUND: u64 = 1_000_000;

/// A subgroup, stored canonically as the Hermite form of its lattice.
/// Equality is equality of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    ambient: FinAbGroup,
    lattice: ModLattice,
}

impl Subgroup {
    pub fn generated(ambient: &FinAbGroup, gens: &[GroupElement]) -> Self {
        let lattice = ModLattice::span(ambient.factors(), gens.iter().map(|g| g.coords.as_slice()));
        Subgroup { ambient: ambient.clone(), lattice }
    }

    pub fn trivial(ambient: &FinAbGroup) -> Self {
        Subgroup { ambient: ambient.clone(), lattice: ModLattice::zero(ambient.factors()) }
    }

    pub fn whole(ambient: &FinAbGroup) -> Self {
        Subgroup { ambient: ambient.clone(), lattice: ModLattice::whole(ambient.factors()) }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn lattice(&self) -> &ModLattice {
        &self.lattice
    }

    /// Canonical generating set, one element per non-full Hermite pivot.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.lattice.generators().into_iter().map(GroupElement::new).collect()
    }

    pub fn order(&self) -> u64 {
        self.lattice.order()
    }

    pub fn index(&self) -> u64 {
        self.lattice.index()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.lattice.contains(&g.coords)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.index() == 1
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(Subgroup { ambient: self.ambient.clone(), lattice: self.lattice.join(&other.lattice) })
    }

    pub fn with_element(&self, g: &GroupElement) -> Subgroup {
        let mut gens = self.lattice.generators();
        gens.push(g.coords.clone());
        let lattice = ModLattice::span(self.ambient.factors(), gens.iter().map(|v| v.as_slice()));
        Subgroup { ambient: self.ambient.clone(), lattice }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.lattice.is_sublattice_of(&other.lattice)
    }

    /// Isomorphism type of the subgroup.
    pub fn structure(&self) -> FinAbGroup {
        FinAbGroup::new(self.lattice.subgroup_invariants()).expect("Smith form yields a chain")
    }

    pub fn is_cyclic(&self) -> bool {
        self.lattice.subgroup_invariants().len() <= 1
    }

    /// The quotient of the ambient group by this subgroup.
    pub fn quotient(&self) -> FinAbGroup {
        FinAbGroup::new(self.lattice.quotient_invariants()).expect("Smith form yields a chain")
    }

    /// All elements, by filtering the ambient group.
    pub fn elements(&self) -> Vec<GroupElement> {
        self.ambient.elements().filter(|g| self.contains(g)).collect()
    }
}

/// `⟨g1, g2, …⟩` with the Hermite-form generators; `0` for the trivial group.
impl std::fmt::Display for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens = self.generators();
        if gens.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}

/// Every subgroup of `g`, sorted by order and then by canonical form.
///
/// Each Sylow component is explored by closing the trivial subgroup under joins
/// with cyclic subgroups; subgroups of `g` are the sums of one subgroup from
/// each component.
pub fn subgroups(g: &FinAbGroup) -> Result<Vec<Subgroup>> {
    if g.order() > SUBGROUP_ENUMERATION_BOUND {
        return Err(Error::BoundExceeded(format!(
            "|G| = {} exceeds {}",
            g.order(),
            SUBGROUP_ENUMERATION_BOUND
        )));
    }
    let mut all = vec![Subgroup::trivial(g)];
    for p in g.primes() {
        let part = sylow_subgroups(g, p);
        let mut next = Vec::with_capacity(all.len() * part.len());
        for a in &all {
            for b in &part {
                next.push(a.join(b)?);
            }
        }
        all = next;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(all)
}

fn sylow_subgroups(g: &FinAbGroup, p: u64) -> Vec<Subgroup> {
    let pk = p.pow(crate::arith::valuation(g.order(), p));
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in g.elements() {
        if pk % g.element_order(&x) == 0 {
            let c = Subgroup::generated(g, &[x]);
            if seen_cyclic.insert(c.clone()) {
                cyclic.push(c);
            }
        }
    }
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut queue = VecDeque::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.clone());
    queue.push_back(trivial);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        for c in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let j = h.join(c).expect("same ambient");
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
        out.push(h);
    }
    out
}
