//! Finite abelian groups in invariant-factor form, their elements, characters
//! and subgroups.

use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;

use crate::arith;
use crate::error::{Error, Result};

mod invariants;
pub mod lattice;
mod subgroup;

pub use invariants::{
    aut_order, bicyclic_family, count_surjections, group_invariants, hom_count,
    is_excluded_form, mobius, GroupInvariants,
};
pub use subgroup::{subgroups, Subgroup, SUBGROUP_ENUMERATION_BOUND};

/// `Z/n_1 ⊕ … ⊕ Z/n_l` with `n_{j+1} | n_j` and every `n_j > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// A linear character, `g ↦ Σ_j coords[j]·g_j / n_j mod 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FinAbGroup {
    /// Builds a group from invariant factors, rejecting anything that is not a
    /// divisibility chain of integers > 1.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&n| n < 2) {
            return Err(Error::NotChain(factors));
        }
        if factors.windows(2).any(|w| w[0] % w[1] != 0) {
            return Err(Error::NotChain(factors));
        }
        let mut order = 1u64;
        for &n in &factors {
            order = order.checked_mul(n).ok_or(Error::OrderOverflow)?;
        }
        Ok(FinAbGroup { factors, order })
    }

    /// Every abelian group of order `n`, one per isomorphism class.
    pub fn all_of_order(n: u64) -> Vec<FinAbGroup> {
        fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
            if k == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in (1..=k.min(max)).rev() {
                for mut rest in partitions(k - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let mut groups = vec![Vec::<u64>::new()];
        for (p, e) in arith::factorize(n) {
            let mut next = Vec::new();
            for g in &groups {
                for part in partitions(e, e) {
                    let mut orders = g.clone();
                    orders.extend(part.iter().map(|&k| p.pow(k)));
                    next.push(orders);
                }
            }
            groups = next;
        }
        groups
            .into_iter()
            .map(|orders| Self::from_cyclic_orders(&orders).expect("positive orders"))
            .collect()
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new(), order: 1 }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n]).expect("cyclic group of positive order")
    }

    /// `Z/a_1 ⊕ … ⊕ Z/a_k` for arbitrary positive `a_i`, normalised.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        if orders.iter().any(|&a| a == 0) {
            return Err(Error::InfiniteGroup);
        }
        // collect prime powers, then deal them out largest first
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &a in orders {
            for (p, e) in arith::factorize(a) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let mut factors: Vec<u64> = Vec::new();
        for (_, mut powers) in by_prime {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in powers.into_iter().enumerate() {
                if i == factors.len() {
                    factors.push(1);
                }
                factors[i] = factors[i].checked_mul(q).ok_or(Error::OrderOverflow)?;
            }
        }
        Self::new(factors)
    }

    /// The group `Z^ngens / ⟨relations⟩`, via Smith normal form.
    pub fn from_relations(ngens: usize, relations: &[Vec<i64>]) -> Result<Self> {
        if relations.iter().any(|r| r.len() != ngens) {
            return Err(Error::Parse("relation length differs from generator count".into()));
        }
        if ngens == 0 {
            return Ok(Self::trivial());
        }
        let mat: Vec<Vec<i128>> = if relations.is_empty() {
            vec![vec![0; ngens]]
        } else {
            relations
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect()
        };
        let mut diag = lattice::smith_diagonal(mat);
        diag.resize(ngens, 0);
        if diag.contains(&0) {
            return Err(Error::InfiniteGroup);
        }
        Self::from_cyclic_orders(&diag)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.factors.first().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        arith::factorize(self.order).into_iter().map(|(p, _)| p).collect()
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.primes().first().copied()
    }

    /// Isomorphism type of the Sylow `p`-subgroup.
    pub fn sylow(&self, p: u64) -> FinAbGroup {
        let parts: Vec<u64> = self
            .factors
            .iter()
            .map(|&n| p.pow(arith::valuation(n, p)))
            .filter(|&q| q > 1)
            .collect();
        FinAbGroup::new(parts).expect("p-parts of a chain form a chain")
    }

    /// `|G[m]|`, the number of elements killed by `m`.
    pub fn torsion_count(&self, m: u64) -> u64 {
        self.factors.iter().map(|&n| arith::gcd(n, m)).product()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> Result<FinAbGroup> {
        let all: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        Self::from_cyclic_orders(&all)
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        if coords.len() != self.rank() || coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n) {
            return Err(Error::InvalidElement { coords, group: self.to_string() });
        }
        Ok(GroupElement { coords })
    }

    /// Element from arbitrary integer coordinates, reduced.
    pub fn element_reduced(&self, coords: &[i64]) -> GroupElement {
        GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| arith::reduce_signed(c, n))
                .collect(),
        }
    }

    pub fn contains_element(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.rank() && g.coords.iter().zip(&self.factors).all(|(&c, &n)| c < n)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// The `i`-th standard generator `e_i`.
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        GroupElement { coords }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x.coords.iter().zip(&self.factors).map(|(&a, &n)| (n - a) % n).collect(),
        }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: u64, x: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&a, &n)| arith::mul_mod(a, k % n, n))
                .collect(),
        }
    }

    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.coords
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &n)| arith::lcm(acc, n / arith::gcd(c, n)))
    }

    /// All elements in mixed-radix order (last coordinate fastest).
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.decode(i))
    }

    /// Mixed-radix index of an element, in `[0, |G|)`.
    pub fn encode(&self, g: &GroupElement) -> u64 {
        g.coords.iter().zip(&self.factors).fold(0, |acc, (&c, &n)| acc * n + c)
    }

    pub fn decode(&self, mut index: u64) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for j in (0..self.rank()).rev() {
            coords[j] = index % self.factors[j];
            index /= self.factors[j];
        }
        GroupElement { coords }
    }

    /// The character group has the same invariant factors; characters are
    /// listed in the same order as elements.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(|g| Character { coords: g.coords })
    }

    /// `χ(g)` as the numerator over the exponent: `χ(g) = k / exp(G)`.
    pub fn pair(&self, chi: &Character, g: &GroupElement) -> u64 {
        let e = self.exponent();
        let mut acc = 0u64;
        for ((&c, &x), &n) in chi.coords.iter().zip(&g.coords).zip(&self.factors) {
            acc = (acc + arith::mul_mod(arith::mul_mod(c, x, n), e / n, e)) % e;
        }
        acc
    }

    /// `χ(g)` in `Q/Z`, as a reduced fraction in `[0, 1)`.
    pub fn char_value(&self, chi: &Character, g: &GroupElement) -> Ratio<u64> {
        Ratio::new(self.pair(chi, g), self.exponent())
    }

    /// Order of `χ(g)` in `Q/Z`.
    pub fn char_value_order(&self, chi: &Character, g: &GroupElement) -> u64 {
        let e = self.exponent();
        e / arith::gcd(self.pair(chi, g), e)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Parses a literal like `"4,2"`; `"1"` or the empty string is the trivial
    /// group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::GroupLiteral(s.to_string()))?;
        Self::new(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn literals() {
        assert_eq!(g("4,2").factors(), &[4, 2]);
        assert!("2,4".parse::<FinAbGroup>().is_err());
        assert!("4,1".parse::<FinAbGroup>().is_err());
        assert!("x".parse::<FinAbGroup>().is_err());
        assert_eq!(g("6,3").to_string(), "6,3");
        assert!(g("1").is_trivial());
    }

    #[test]
    fn normalisation() {
        assert_eq!(FinAbGroup::from_cyclic_orders(&[2, 3]).unwrap(), g("6"));
        assert_eq!(FinAbGroup::from_cyclic_orders(&[2, 4, 3, 1]).unwrap(), g("12,2"));
        assert_eq!(FinAbGroup::from_relations(2, &[vec![2, 0], vec![0, 3]]).unwrap(), g("6"));
        assert_eq!(FinAbGroup::from_relations(2, &[vec![2, 4], vec![6, 8]]).unwrap(), g("4,2"));
        assert!(FinAbGroup::from_relations(2, &[vec![1, 1]]).is_err());
    }

    #[test]
    fn element_orders() {
        let v4 = g("2,2");
        assert_eq!(v4.element_order(&v4.zero()), 1);
        let h = g("4,2");
        assert_eq!(h.element_order(&GroupElement::new(vec![1, 1])), 4);
        assert_eq!(h.element_order(&GroupElement::new(vec![2, 1])), 2);
    }

    #[test]
    fn encode_round_trip() {
        let h = g("6,3");
        for (i, x) in h.elements().enumerate() {
            assert_eq!(h.encode(&x), i as u64);
        }
    }

    #[test]
    fn character_values() {
        let h = g("4,2");
        let chi = Character { coords: vec![1, 1] };
        let x = GroupElement::new(vec![1, 1]);
        assert_eq!(h.char_value(&chi, &x), Ratio::new(3, 4));
        assert_eq!(h.char_value_order(&chi, &x), 4);
    }
}
