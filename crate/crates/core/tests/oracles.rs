mod common;

use abelian_hnp::enumerate::{enumerate_by_modulus, max_conductor, survey};
use abelian_hnp::groups::{aut_order, count_surjections, hom_count};
use abelian_hnp::hnp::{biquadratic_extension, biquadratic_legendre_test};
use abelian_hnp::localdata::{DefaultRule, LocalConditionSet, Rule};
use abelian_hnp::{count, enumerate_extensions, hasse_norm_test, FinAbGroup, GroupElement};
use num::BigUint;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn n(g: &str, b: u64) -> u64 {
    let g: FinAbGroup = g.parse().unwrap();
    let c = count(&g, &big(b), &LocalConditionSet::any()).unwrap();
    c.try_into().unwrap()
}

#[test]
fn quadratic_counts_match_fundamental_discriminants() {
    for b in [10, 100, 1000, 10_000, 1_000_000] {
        assert_eq!(n("2", b), common::count_fundamental(b), "B = {b}");
    }
    assert_eq!(n("2", 10), 6);
}

#[test]
fn quadratic_discriminants_are_the_fundamental_ones() {
    let g = FinAbGroup::cyclic(2);
    let mut ours: Vec<u64> = enumerate_extensions(&g, &big(5000), &LocalConditionSet::any())
        .unwrap()
        .iter()
        .map(|e| e.discriminant().try_into().unwrap())
        .collect();
    let mut oracle: Vec<u64> = common::fundamental_discriminants(5000).iter().map(|d| d.unsigned_abs()).collect();
    ours.sort_unstable();
    oracle.sort_unstable();
    assert_eq!(ours, oracle);
}

#[test]
fn biquadratic_counts_and_failures_match_triple_products() {
    let g: FinAbGroup = "2,2".parse().unwrap();
    let bounds: Vec<BigUint> = [200u64, 10_000, 1_000_000].into_iter().map(big).collect();
    let rows = survey(&g, &bounds, &LocalConditionSet::any(), 0).unwrap();
    for row in &rows {
        let b: u64 = (&row.bound).try_into().unwrap();
        let (fields, fail) = common::biquadratic_oracle(b);
        assert_eq!(row.n, big(6 * fields), "B = {b}");
        assert_eq!(row.n_fail_hnp, big(6 * fail), "B = {b}");
        assert_eq!(row.n_all_decomposition_cyclic, row.n_fail_hnp);
        // WA holds exactly when the HNP fails, since |∧²G| = 2
        assert_eq!(&row.n - &row.n_fail_wa, row.n_fail_hnp);
    }
    assert_eq!(rows[0].n, big(6));
}

#[test]
fn cyclic_cubic_counts_match_conductor_formula() {
    for b in [10_000, 1_000_000, 100_000_000, 10_000_000_000] {
        assert_eq!(n("3", b), common::cyclic_cubic_oracle(b), "B = {b}");
    }
}

#[test]
fn counts_are_multiples_of_the_automorphism_group() {
    for (g, b) in [("2", 10_000u64), ("3", 1_000_000), ("4", 1_000_000), ("2,2", 100_000), ("6", 1_000_000)] {
        let aut: u64 = aut_order(&g.parse().unwrap()).unwrap().try_into().unwrap();
        assert_eq!(n(g, b) % aut, 0, "{g}");
    }
}

#[test]
fn dirichlet_characters_agree_with_local_search() {
    for (g, b) in [("2", 20_000u64), ("2,2", 100_000), ("4", 100_000), ("3", 100_000), ("6", 100_000), ("4,2", 10u64.pow(10))] {
        let g: FinAbGroup = g.parse().unwrap();
        let local = enumerate_extensions(&g, &big(b), &LocalConditionSet::any()).unwrap();
        let chars = enumerate_by_modulus(&g, &big(b), max_conductor(&g, &big(b))).unwrap();
        assert_eq!(local, chars, "{g} up to {b}");
    }
}

#[test]
fn quartic_conductor_sixteen() {
    // Q(ζ16)^+ and its imaginary twin, two labellings each
    let g = FinAbGroup::cyclic(4);
    let at: Vec<_> = enumerate_extensions(&g, &big(2048), &LocalConditionSet::any())
        .unwrap()
        .into_iter()
        .filter(|e| e.discriminant() == &big(2048))
        .collect();
    assert_eq!(at.len(), 4);
    assert!(at.iter().all(|e| e.ramified_primes() == vec![2]));
}

/// `|Hom(A, G)|` and surjections by listing every tuple of images.
fn naive_homs(a: &FinAbGroup, g: &FinAbGroup) -> (u64, u64) {
    let options: Vec<Vec<GroupElement>> = a
        .factors()
        .iter()
        .map(|&n| g.elements().filter(|x| n % g.element_order(x) == 0).collect())
        .collect();
    let mut homs = 0;
    let mut surj = 0;
    let mut idx = vec![0usize; options.len()];
    loop {
        homs += 1;
        let images: Vec<GroupElement> = idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
        let mut span = std::collections::HashSet::from([g.zero()]);
        let mut frontier = vec![g.zero()];
        while let Some(x) = frontier.pop() {
            for y in &images {
                let z = g.add(&x, y);
                if span.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        surj += (span.len() as u64 == g.order()) as u64;
        let mut k = 0;
        loop {
            if k == idx.len() {
                return (homs, surj);
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn hom_and_surjection_counts_by_listing() {
    let groups: Vec<FinAbGroup> = (1..=12).flat_map(FinAbGroup::all_of_order).collect();
    for a in &groups {
        for g in &groups {
            let (homs, surj) = naive_homs(a, g);
            assert_eq!(hom_count(a, g), big(homs), "Hom({a}, {g})");
            assert_eq!(count_surjections(a, g).unwrap(), big(surj), "Surj({a}, {g})");
        }
    }
}

#[test]
fn named_instances() {
    let e = biquadratic_extension(13, 17).unwrap();
    assert_eq!(e.discriminant(), &big(48841));
    let r = hasse_norm_test(&e).unwrap();
    assert!(!r.hnp_holds && r.wa_holds);
    assert_eq!(r.sha_order, big(2));
    assert!(biquadratic_legendre_test(13, 17).unwrap());

    let g: FinAbGroup = "2,2".parse().unwrap();
    let first = enumerate_extensions(&g, &big(144), &LocalConditionSet::any()).unwrap();
    assert_eq!(first.len(), 6);
    for e in &first {
        assert_eq!(e.ramified_primes(), vec![2, 3]);
        let r = hasse_norm_test(e).unwrap();
        assert!(r.hnp_holds && !r.wa_holds);
        assert_eq!(r.a_order, big(2));
        // D_2 and D_3 are all of G: 3 is inert in Q(i) and 2 in Q(√-3)
        let d = e.decomposition_data().unwrap();
        assert!(d.primes.iter().all(|p| p.decomposition.is_whole()));
    }
}

#[test]
fn legendre_oracle_for_the_pair_criterion() {
    // a, b ≡ 1 mod 4: the HNP fails iff (a/q) = 1 for q | b and (b/p) = 1 for p | a
    let pairs = [(13i64, 17i64), (5, 29), (-3, 5), (5, 13), (-7, 13), (21, 17), (-15, 13), (5, -11)];
    for (a, b) in pairs {
        let odd = |x: i64| -> Vec<u64> {
            let mut v = Vec::new();
            let mut m = x.unsigned_abs();
            let mut q = 3;
            while m > 1 {
                if m % q == 0 {
                    v.push(q);
                    m /= q;
                }
                q += 2;
            }
            v
        };
        let fails = odd(b).iter().all(|&q| common::kronecker(a, q) == 1)
            && odd(a).iter().all(|&p| common::kronecker(b, p) == 1);
        assert_eq!(biquadratic_legendre_test(a, b).unwrap(), fails, "({a}, {b})");
        let report = hasse_norm_test(&biquadratic_extension(a, b).unwrap()).unwrap();
        assert_eq!(report.hnp_holds, !fails, "({a}, {b})");
    }
}

#[test]
fn conditions_at_three() {
    let g: FinAbGroup = "2,2".parse().unwrap();
    let b = big(1_000_000);
    let all = count(&g, &b, &LocalConditionSet::any()).unwrap();
    let no3 = LocalConditionSet::any().with_rule(3, Rule::Unramified);
    let at3 = count(&g, &b, &no3).unwrap();
    assert!(at3 > big(0) && at3 < all);
    // complement: every extension is ramified or unramified at 3
    let ramified = enumerate_extensions(&g, &b, &LocalConditionSet::any())
        .unwrap()
        .iter()
        .filter(|e| e.ramified_primes().contains(&3))
        .count();
    assert_eq!(&all - &at3, big(ramified as u64));
    let nothing = LocalConditionSet::with_default(DefaultRule::Unramified);
    assert_eq!(count(&g, &b, &nothing).unwrap(), big(0));
}
