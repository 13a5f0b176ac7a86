use abelian_hnp::analytic::{local_characters, pairing, PairingElement};
use abelian_hnp::cli::formats::{extension_from_json, extension_to_json};
use abelian_hnp::enumerate::survey;
use abelian_hnp::exterior::ExtSquare;
use abelian_hnp::groups::{aut_order, subgroups};
use abelian_hnp::localdata::{LocalConditionSet, Rule};
use abelian_hnp::{count, enumerate_extensions, hasse_norm_test, Character, FinAbGroup};
use num::{BigUint, Rational64};
use proptest::prelude::*;

const GROUPS: [&str; 8] = ["2", "3", "4", "2,2", "6", "4,2", "3,3", "4,4"];

fn group() -> impl Strategy<Value = FinAbGroup> {
    prop::sample::select(GROUPS.to_vec()).prop_map(|s| s.parse().unwrap())
}

/// A bound scaled so that every listed group has a few hundred extensions.
fn bound_for(g: &FinAbGroup, t: f64) -> BigUint {
    let scale = match g.to_string().as_str() {
        "2" => 4.0,
        "3" | "2,2" => 6.0,
        "4" => 7.0,
        "6" => 9.0,
        "4,2" => 13.0,
        "3,3" => 16.0,
        _ => 22.0,
    };
    let e = (scale * t).round() as u32;
    BigUint::from(10u32).pow(e.max(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_are_monotone(g in group(), t1 in 0.2f64..1.0, t2 in 0.2f64..1.0) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let any = LocalConditionSet::any();
        let a = count(&g, &bound_for(&g, lo), &any).unwrap();
        let b = count(&g, &bound_for(&g, hi), &any).unwrap();
        prop_assert!(a <= b);
    }

    #[test]
    fn conditions_only_shrink(g in group(), t in 0.3f64..1.0, p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        let b = bound_for(&g, t);
        let all = count(&g, &b, &LocalConditionSet::any()).unwrap();
        let some = count(&g, &b, &LocalConditionSet::any().with_rule(p, Rule::Unramified)).unwrap();
        prop_assert!(some <= all);
    }

    #[test]
    fn counts_divisible_by_automorphisms(g in group(), t in 0.3f64..1.0) {
        let n = count(&g, &bound_for(&g, t), &LocalConditionSet::any()).unwrap();
        let aut = aut_order(&g).unwrap();
        prop_assert_eq!(n % aut, BigUint::from(0u32));
    }

    #[test]
    fn extensions_round_trip_and_obey_tate(g in group(), t in 0.5f64..1.0, pick in any::<prop::sample::Index>()) {
        let exts = enumerate_extensions(&g, &bound_for(&g, t), &LocalConditionSet::any()).unwrap();
        prop_assume!(!exts.is_empty());
        let e = &exts[pick.index(exts.len())];
        let text = extension_to_json(e).to_string();
        let back = extension_from_json(&g, &serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, e);
        prop_assert_eq!(extension_to_json(&back).to_string(), text);

        let r = hasse_norm_test(e).unwrap();
        let wedge = ExtSquare::new(&g).as_group().order();
        prop_assert_eq!(&r.sha_order * &r.a_order, BigUint::from(wedge));
        prop_assert_eq!(r.hnp_holds, r.sha_order == BigUint::from(1u32));
        if r.all_decomposition_cyclic {
            prop_assert!(r.wa_holds);
        }
        if g.is_cyclic() {
            prop_assert!(r.hnp_holds && r.wa_holds);
        }
    }

    #[test]
    fn survey_rows_are_consistent(g in group(), t1 in 0.3f64..1.0, t2 in 0.3f64..1.0) {
        let bounds = vec![bound_for(&g, t1), bound_for(&g, t2)];
        let rows = survey(&g, &bounds, &LocalConditionSet::any(), 1).unwrap();
        for (row, b) in rows.iter().zip(&bounds) {
            prop_assert_eq!(&row.bound, b);
            prop_assert!(row.n_fail_hnp <= row.n && row.n_fail_wa <= row.n);
            let total: BigUint = row.sha_histogram.values().sum();
            prop_assert_eq!(&total, &row.n);
            let one = row.sha_histogram.get(&BigUint::from(1u32)).cloned().unwrap_or_default();
            prop_assert_eq!(one, &row.n - &row.n_fail_hnp);
            prop_assert_eq!(&row.n, &count(&g, b, &LocalConditionSet::any()).unwrap());
        }
    }

    #[test]
    fn pairing_is_multiplicative(
        g in prop::sample::select(vec!["2", "3", "2,2", "4"]),
        p in prop::sample::select(vec![5u64, 7, 13]),
        u in prop::sample::select(vec![2i64, 3, -1, 5, 7, 13, 26]),
        v in prop::sample::select(vec![2i64, 3, -1, 5, 7, 13, 39]),
        a in 0u64..4, b in 0u64..4,
    ) {
        let g: FinAbGroup = g.parse().unwrap();
        let eta = Character { coords: g.factors().iter().map(|&n| a % n).collect() };
        let zeta = Character { coords: g.factors().iter().map(|&n| b % n).collect() };
        let x = PairingElement::single(u, eta.clone()).unwrap();
        let y = PairingElement::single(v, zeta.clone()).unwrap();
        let xy = PairingElement::new(vec![
            (Rational64::from_integer(u), eta.clone()),
            (Rational64::from_integer(v), zeta),
        ]).unwrap();
        let uv = PairingElement::single(u * v, eta.clone()).unwrap();
        let xv = PairingElement::single(v, eta).unwrap();
        for chi in local_characters(&g, p) {
            let lhs = pairing(&g, &chi, &xy).unwrap();
            let rhs = pairing(&g, &chi, &x).unwrap() * pairing(&g, &chi, &y).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-9);
            let lhs = pairing(&g, &chi, &uv).unwrap();
            let rhs = pairing(&g, &chi, &x).unwrap() * pairing(&g, &chi, &xv).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }

    #[test]
    fn group_text_round_trips(orders in prop::collection::vec(1u64..13, 0..4)) {
        let g = FinAbGroup::from_cyclic_orders(&orders).unwrap();
        prop_assert_eq!(g.order(), orders.iter().product::<u64>());
        let again: FinAbGroup = g.to_string().parse().unwrap();
        prop_assert_eq!(again, g);
    }
}

#[test]
fn subgroup_orders_divide() {
    for s in GROUPS {
        let g: FinAbGroup = s.parse().unwrap();
        for h in subgroups(&g).unwrap() {
            assert_eq!(h.order() * h.index(), g.order());
            assert_eq!(h.structure().order(), h.order());
            assert_eq!(h.quotient().order(), h.index());
        }
    }
}

#[test]
fn cyclic_groups_have_trivial_wedge() {
    for n in 1..50 {
        assert_eq!(ExtSquare::new(&FinAbGroup::cyclic(n)).as_group().order(), 1);
    }
}
