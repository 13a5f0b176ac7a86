use num::{BigInt, BigUint, Signed};

use super::{subgroups, FinAbGroup, Subgroup};
use crate::arith;
use crate::error::{Error, Result};

/// The counting invariants attached to a non-trivial group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    /// Smallest prime dividing `|G|`.
    pub q: u64,
    /// Number of elements of order exactly `q`.
    pub phi_q: u64,
    /// `|G|(1 - 1/q)`, the minimal tame discriminant exponent.
    pub alpha: u64,
    /// `log_q(phi_q + 1)`, the `q`-rank.
    pub beta: u32,
    /// `phi_q / (q - 1)`.
    pub nu_over_q: u64,
}

pub fn group_invariants(g: &FinAbGroup) -> Result<GroupInvariants> {
    let q = g.smallest_prime().ok_or(Error::TrivialGroup)?;
    let beta = g.factors().iter().filter(|&&n| n % q == 0).count() as u32;
    let phi_q = q.pow(beta) - 1;
    Ok(GroupInvariants {
        q,
        phi_q,
        alpha: g.order() - g.order() / q,
        beta,
        nu_over_q: phi_q / (q - 1),
    })
}

/// Möbius function of the subgroup lattice, evaluated at the group itself:
/// `(-1)^n p^{n(n-1)/2}` on `(Z/p)^n`, zero if some Sylow part is not
/// elementary, multiplicative across primes.
pub fn mobius(g: &FinAbGroup) -> i64 {
    let mut acc = 1i64;
    for p in g.primes() {
        let syl = g.sylow(p);
        if syl.exponent() != p {
            return 0;
        }
        let n = syl.rank() as u32;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        acc *= sign * (p as i64).pow(n * (n - 1) / 2);
    }
    acc
}

/// `|Hom(A, H)| = Π_{i,j} gcd(a_i, h_j)`.
pub fn hom_count(a: &FinAbGroup, h: &FinAbGroup) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for &x in a.factors() {
        for &y in h.factors() {
            acc *= arith::gcd(x, y);
        }
    }
    acc
}

/// Number of surjective homomorphisms `A → G`, by inversion over the subgroup
/// lattice of `G`.
pub fn count_surjections(a: &FinAbGroup, g: &FinAbGroup) -> Result<BigUint> {
    let mut acc = BigInt::from(0);
    for h in subgroups(g)? {
        let mu = mobius(&h.quotient());
        if mu != 0 {
            acc += BigInt::from(mu) * BigInt::from(hom_count(a, &h.structure()));
        }
    }
    debug_assert!(!acc.is_negative());
    Ok(acc.to_biguint().expect("a count is non-negative"))
}

/// `|Aut(G)|`, the number of surjections `G → G`.
pub fn aut_order(g: &FinAbGroup) -> Result<BigUint> {
    count_surjections(g, g)
}

/// Whether `G ≅ Z/n ⊕ (Z/Q)^r` with `Q` the smallest prime of `|G|`.
pub fn is_excluded_form(g: &FinAbGroup) -> bool {
    match g.factors() {
        [] | [_] => true,
        [_, n2, ..] => Some(*n2) == g.smallest_prime(),
    }
}

/// The coordinate subgroups `⟨e_i, e_j⟩` for `i < j`, in lexicographic order.
pub fn bicyclic_family(g: &FinAbGroup) -> Result<Vec<Subgroup>> {
    if g.is_cyclic() {
        return Err(Error::NoBicyclicDecomposition);
    }
    let l = g.rank();
    let mut out = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            out.push(Subgroup::generated(g, &[g.basis(i), g.basis(j)]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn invariants_of_examples() {
        let v = group_invariants(&g("2,2")).unwrap();
        assert_eq!((v.q, v.phi_q, v.alpha, v.beta, v.nu_over_q), (2, 3, 2, 2, 3));
        let v = group_invariants(&g("3,3")).unwrap();
        assert_eq!((v.q, v.phi_q, v.alpha, v.beta, v.nu_over_q), (3, 8, 6, 2, 4));
        // Z/6 ⊕ Z/3 has a single element of order 2
        let v = group_invariants(&g("6,3")).unwrap();
        assert_eq!((v.q, v.phi_q, v.alpha, v.beta, v.nu_over_q), (2, 1, 9, 1, 1));
        assert_eq!(group_invariants(&FinAbGroup::trivial()), Err(Error::TrivialGroup));
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(&g("2,2")), 2);
        assert_eq!(mobius(&g("4")), 0);
        assert_eq!(mobius(&g("6")), 1);
        assert_eq!(mobius(&g("2")), -1);
        assert_eq!(mobius(&FinAbGroup::trivial()), 1);
        assert_eq!(mobius(&g("2,2,2")), -8);
    }

    #[test]
    fn surjection_counts() {
        let n = |a: &str, b: &str| count_surjections(&g(a), &g(b)).unwrap();
        assert_eq!(n("2,2", "2,2"), BigUint::from(6u32));
        assert_eq!(n("4", "2"), BigUint::from(1u32));
        assert_eq!(n("2", "2,2"), BigUint::from(0u32));
        assert_eq!(aut_order(&g("4,4")).unwrap(), BigUint::from(96u32));
        assert_eq!(aut_order(&g("6,3")).unwrap(), BigUint::from(48u32));
    }

    #[test]
    fn excluded_form() {
        assert!(is_excluded_form(&g("4,2")));
        assert!(!is_excluded_form(&g("4,4")));
        assert!(!is_excluded_form(&g("6,3")));
        assert!(is_excluded_form(&g("12,2,2")));
    }

    #[test]
    fn bicyclic_members() {
        assert_eq!(bicyclic_family(&g("2,2")).unwrap().len(), 1);
        assert_eq!(bicyclic_family(&g("4,2,2")).unwrap().len(), 3);
        assert!(bicyclic_family(&g("6")).is_err());
    }
}
