//! The exterior square `∧²G` in coordinates: one cyclic summand `Z/n_j` for
//! each pair `i < j`, the generator being `e_i ∧ e_j`.

use std::fmt;

use crate::groups::lattice::ModLattice;
use crate::groups::{FinAbGroup, GroupElement, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtSquare {
    ambient: FinAbGroup,
    pairs: Vec<(usize, usize)>,
    moduli: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub coords: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtSubgroup {
    square: ExtSquare,
    lattice: ModLattice,
}

impl ExtSquare {
    pub fn new(g: &FinAbGroup) -> Self {
        let n = g.factors();
        let mut pairs = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..n.len() {
            for j in i + 1..n.len() {
                pairs.push((i, j));
                moduli.push(n[j]);
            }
        }
        ExtSquare { ambient: g.clone(), pairs, moduli }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// Basis as `(i, j, m_ij)`.
    pub fn basis_moduli(&self) -> Vec<(usize, usize, u64)> {
        self.pairs.iter().zip(&self.moduli).map(|(&(i, j), &m)| (i, j, m)).collect()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().copied().max().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    /// `∧²G` as an abstract group.
    pub fn as_group(&self) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(&self.moduli).expect("moduli are positive")
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement { coords: vec![0; self.moduli.len()] }
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        ExtElement {
            coords: a.coords.iter().zip(&self.moduli).map(|(&x, &m)| (m - x) % m).collect(),
        }
    }

    /// `x ∧ y`, with coordinates `x_i y_j - x_j y_i mod n_j`.
    pub fn wedge(&self, x: &GroupElement, y: &GroupElement) -> Result<ExtElement> {
        if !self.ambient.contains_element(x) || !self.ambient.contains_element(y) {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.wedge_unchecked(&x.coords, &y.coords))
    }

    pub(crate) fn wedge_unchecked(&self, x: &[u64], y: &[u64]) -> ExtElement {
        let coords = self
            .pairs
            .iter()
            .zip(&self.moduli)
            .map(|(&(i, j), &m)| {
                let a = (x[i] % m) as u128 * (y[j] % m) as u128;
                let b = (x[j] % m) as u128 * (y[i] % m) as u128;
                ((a % m as u128 + m as u128 - b % m as u128) % m as u128) as u64
            })
            .collect();
        ExtElement { coords }
    }

    pub fn span(&self, gens: &[ExtElement]) -> ExtSubgroup {
        ExtSubgroup {
            square: self.clone(),
            lattice: ModLattice::span(&self.moduli, gens.iter().map(|e| e.coords.as_slice())),
        }
    }

    pub fn zero_subgroup(&self) -> ExtSubgroup {
        self.span(&[])
    }

    pub fn whole(&self) -> ExtSubgroup {
        ExtSubgroup { square: self.clone(), lattice: ModLattice::whole(&self.moduli) }
    }

    /// The image of `∧²D → ∧²G`: the span of wedges of generator pairs of `D`.
    pub fn subgroup_wedge_image(&self, d: &Subgroup) -> Result<ExtSubgroup> {
        if d.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let gens = d.generators();
        let mut wedges = Vec::new();
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                wedges.push(self.wedge_unchecked(&gens[a].coords, &gens[b].coords));
            }
        }
        Ok(self.span(&wedges))
    }
}

/// Convenience form of [`ExtSquare::subgroup_wedge_image`].
pub fn subgroup_wedge_image(d: &Subgroup) -> ExtSubgroup {
    ExtSquare::new(d.ambient())
        .subgroup_wedge_image(d)
        .expect("ambient matches by construction")
}

/// Convenience form of [`ExtSquare::wedge`].
pub fn wedge(g: &FinAbGroup, x: &GroupElement, y: &GroupElement) -> Result<ExtElement> {
    ExtSquare::new(g).wedge(x, y)
}

/// The subgroup generated by all parts.
pub fn span_sum(parts: &[ExtSubgroup]) -> Result<ExtSubgroup> {
    let Some(first) = parts.first() else {
        return Err(Error::Precondition("span_sum of an empty list has no ambient".into()));
    };
    let mut lattice = first.lattice.clone();
    for p in &parts[1..] {
        if p.square != first.square {
            return Err(Error::AmbientMismatch);
        }
        lattice = lattice.join(&p.lattice);
    }
    Ok(ExtSubgroup { square: first.square.clone(), lattice })
}

/// `|∧²G| / |V|`.
pub fn index_in_ambient(v: &ExtSubgroup) -> u64 {
    v.index()
}

impl ExtSubgroup {
    pub fn square(&self) -> &ExtSquare {
        &self.square
    }

    pub fn generators(&self) -> Vec<ExtElement> {
        self.lattice.generators().into_iter().map(|coords| ExtElement { coords }).collect()
    }

    pub fn order(&self) -> u64 {
        self.lattice.order()
    }

    pub fn index(&self) -> u64 {
        self.lattice.index()
    }

    pub fn contains(&self, e: &ExtElement) -> bool {
        self.lattice.contains(&e.coords)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn join(&self, other: &ExtSubgroup) -> Result<ExtSubgroup> {
        span_sum(&[self.clone(), other.clone()])
    }

    /// Invariant factors of `∧²G / V`.
    pub fn quotient_invariants(&self) -> Vec<u64> {
        self.lattice.quotient_invariants()
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl fmt::Display for ExtSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∧²({}) = [", self.ambient)?;
        for (k, (&(i, j), m)) in self.pairs.iter().zip(&self.moduli).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "e{i}∧e{j} mod {m}")?;
        }
        write!(f, "]")
    }
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

    #[test]
    fn wedge_examples() {
        let v4 = g("2,2");
        assert_eq!(wedge(&v4, &el(&[1, 0]), &el(&[0, 1])).unwrap().coords, vec![1]);
        let h = g("4,2");
        assert_eq!(wedge(&h, &el(&[1, 1]), &el(&[1, 1])).unwrap().coords, vec![0]);
        assert_eq!(wedge(&h, &el(&[1, 0]), &el(&[1, 1])).unwrap().coords, vec![1]);
        assert!(wedge(&h, &el(&[1, 0]), &el(&[1, 0, 0])).is_err());
    }

    #[test]
    fn images_of_subgroups() {
        let v4 = g("2,2");
        let sq = ExtSquare::new(&v4);
        assert_eq!(sq.subgroup_wedge_image(&Subgroup::whole(&v4)).unwrap().order(), 2);
        let diag = Subgroup::generated(&v4, &[el(&[1, 1])]);
        assert!(sq.subgroup_wedge_image(&diag).unwrap().is_trivial());
        let f = g("4,4");
        let d = Subgroup::generated(&f, &[el(&[1, 0]), el(&[0, 2])]);
        let img = subgroup_wedge_image(&d);
        assert_eq!(img.order(), 2);
        assert_eq!(index_in_ambient(&img), 2);
    }

    #[test]
    fn sums_and_indices() {
        let f = g("4,4");
        let sq = ExtSquare::new(&f);
        let two = sq.span(&[ExtElement { coords: vec![2] }]);
        assert_eq!(span_sum(&[two.clone(), sq.whole()]).unwrap().order(), 4);
        assert_eq!(span_sum(&[two.clone(), two.clone()]).unwrap().order(), 2);
        let v4 = ExtSquare::new(&g("2,2"));
        assert_eq!(span_sum(&[v4.zero_subgroup(), v4.zero_subgroup()]).unwrap().order(), 1);
        assert_eq!(index_in_ambient(&v4.zero_subgroup()), 2);
        assert_eq!(index_in_ambient(&ExtSquare::new(&g("6,3")).whole()), 1);
        assert!(span_sum(&[two, v4.whole()]).is_err());
    }

    #[test]
    fn noncyclic_subgroup_with_trivial_image() {
        // <2e_1, e_2> in Z/4 ⊕ Z/2 is a Klein group, yet 2e_1 ∧ e_2 = 2(e_1 ∧ e_2) = 0
        let h = g("4,2");
        let d = Subgroup::generated(&h, &[el(&[2, 0]), el(&[0, 1])]);
        assert!(!d.is_cyclic());
        assert!(subgroup_wedge_image(&d).is_trivial());
    }
}
