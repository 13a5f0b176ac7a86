//! Brute-force cross-checks of the group-theoretic identities, run by the
//! `identities` preset and `verify --suite identities`.

use std::collections::HashMap;

use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::enumerate::{enumerate_by_modulus, enumerate_extensions, max_conductor};
use crate::error::Result;
use crate::exterior::ExtSquare;
use crate::groups::lattice::smith_diagonal;
use crate::groups::{count_surjections, is_excluded_form, mobius, subgroups, FinAbGroup, Subgroup};
use crate::localdata::{phi_g_local, LocalConditionSet};

/// Outcome of one suite: cases checked and the failures, described.
#[derive(Clone, Debug, Default)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn groups_up_to(n: u64) -> Vec<FinAbGroup> {
    (1..=n).flat_map(FinAbGroup::all_of_order).collect()
}

/// Surjections `A → G` counted by a dynamic programme over the subgroup
/// generated by the images chosen so far.
pub fn brute_force_surjections(a: &FinAbGroup, g: &FinAbGroup) -> BigUint {
    let choices: Vec<Vec<_>> = a
        .factors()
        .iter()
        .map(|&n| g.elements().filter(|x| n % g.element_order(x) == 0).collect())
        .collect();
    let mut layer: HashMap<Subgroup, BigUint> = HashMap::new();
    layer.insert(Subgroup::trivial(g), BigUint::from(1u32));
    for opts in &choices {
        let mut next: HashMap<Subgroup, BigUint> = HashMap::new();
        for (h, ways) in &layer {
            for x in opts {
                *next.entry(h.with_element(x)).or_default() += ways;
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .filter(|(h, _)| h.is_whole())
        .map(|(_, w)| w)
        .sum()
}

/// `|A|, |G| ≤ max_order` exhaustively, then `random_pairs` pairs of order at
/// most `random_max`.
pub fn surjection_suite(max_order: u64, random_pairs: usize, random_max: u64, seed: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("surjection counts");
    let small = groups_up_to(max_order);
    for a in &small {
        for g in &small {
            let fast = count_surjections(a, g)?;
            let slow = brute_force_surjections(a, g);
            r.check(fast == slow, || format!("Surj({a}, {g}): {fast} vs {slow}"));
        }
    }
    let pool = groups_up_to(random_max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_pairs {
        let a = &pool[rng.gen_range(0..pool.len())];
        let g = &pool[rng.gen_range(0..pool.len())];
        let fast = count_surjections(a, g)?;
        let slow = brute_force_surjections(a, g);
        r.check(fast == slow, || format!("Surj({a}, {g}): {fast} vs {slow}"));
    }
    Ok(r)
}

/// `Σ_{H ≤ G} μ(H) = 0` for nontrivial `|G| ≤ sum_order`, and
/// `μ(A ⊕ B) = μ(A)μ(B)` for coprime orders with product at most `max_order`.
pub fn mobius_suite(sum_order: u64, max_order: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("mobius");
    let all = groups_up_to(max_order);
    for g in all.iter().filter(|g| !g.is_trivial() && g.order() <= sum_order) {
        let total: i64 = subgroups(g)?.iter().map(|h| mobius(&h.structure())).sum();
        r.check(total == 0, || format!("Σ μ over subgroups of {g} is {total}"));
    }
    for a in &all {
        for b in &all {
            if num::Integer::gcd(&a.order(), &b.order()) == 1 && a.order() * b.order() <= max_order {
                let ab = a.direct_sum(b)?;
                r.check(mobius(&ab) == mobius(a) * mobius(b), || format!("μ({a} ⊕ {b})"));
            }
        }
    }
    Ok(r)
}

/// `∧²G` from the Smith form of `G ⊗ G / ⟨x ⊗ x⟩`, against `⊕_{i<j} Z/n_j`
/// and the coordinate model, compared as multisets of elementary divisors so
/// that orders past 64 bits are fine.
pub fn exterior_suite(max_order: u64) -> Result<SuiteResult> {
    fn elementary(orders: impl IntoIterator<Item = u64>) -> Vec<u64> {
        let mut out: Vec<u64> = orders
            .into_iter()
            .flat_map(|n| arith::factorize(n).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }
    let mut r = SuiteResult::new("exterior square order");
    for g in groups_up_to(max_order) {
        let n = g.factors();
        let l = n.len();
        let idx = |i: usize, j: usize| i * l + j;
        let mut rels = Vec::new();
        for i in 0..l {
            for j in 0..l {
                let mut v = vec![0i128; l * l];
                v[idx(i, j)] = num::Integer::gcd(&n[i], &n[j]) as i128;
                rels.push(v);
                // x ⊗ x = 0 is spanned by e_i ⊗ e_i and e_i ⊗ e_j + e_j ⊗ e_i
                let mut v = vec![0i128; l * l];
                v[idx(i, j)] += 1;
                if i != j {
                    v[idx(j, i)] += 1;
                }
                rels.push(v);
            }
        }
        let presented = elementary(smith_diagonal(rels));
        let formula = elementary((0..l).flat_map(|i| (i + 1..l).map(move |j| n[j])));
        let ours = elementary(ExtSquare::new(&g).moduli().iter().copied());
        r.check(presented == formula && ours == formula, || {
            format!("∧²{g}: presented {presented:?}, formula {formula:?}, ours {ours:?}")
        });
    }
    Ok(r)
}

/// `Π_p Φ_G(φ_p)` against the discriminant of every extension up to `bound`.
pub fn discriminant_suite(groups: &[&str], bound: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("discriminants");
    let b = BigUint::from(bound);
    for gs in groups {
        let g: FinAbGroup = gs.parse()?;
        let exts = enumerate_extensions(&g, &b, &LocalConditionSet::any())?;
        for e in &exts {
            let mut phi = BigUint::from(1u32);
            for c in e.components() {
                phi *= phi_g_local(&g, c, &e.frobenius_at(c.p()));
            }
            r.check(&phi == e.discriminant(), || format!("{g}: Φ_G {phi} vs Δ {}", e.discriminant()));
        }
    }
    Ok(r)
}

/// The Dirichlet-character enumeration against the local search, as sorted
/// lists.
pub fn backend_suite(groups: &[&str], bound: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("enumeration backends");
    let b = BigUint::from(bound);
    for gs in groups {
        let g: FinAbGroup = gs.parse()?;
        let exts = enumerate_extensions(&g, &b, &LocalConditionSet::any())?;
        let by_modulus = enumerate_by_modulus(&g, &b, max_conductor(&g, &b))?;
        r.check(by_modulus == exts, || {
            format!("{g}: {} local, {} by modulus up to {bound}", exts.len(), by_modulus.len())
        });
    }
    Ok(r)
}

/// `G ≅ Z/n ⊕ (Z/Q)^r` iff `exp(∧²G) | Q`.
pub fn excluded_form_suite(max_order: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("excluded form");
    for g in groups_up_to(max_order).into_iter().filter(|g| !g.is_trivial()) {
        let q = g.smallest_prime().expect("nontrivial");
        let e = ExtSquare::new(&g).exponent();
        r.check(is_excluded_form(&g) == (q % e == 0), || format!("{g}"));
    }
    Ok(r)
}

/// The standard sizes used by the preset.
pub fn standard_suites() -> Result<Vec<SuiteResult>> {
    Ok(vec![
        surjection_suite(32, 100, 64, 7)?,
        mobius_suite(64, 256)?,
        exterior_suite(10_000)?,
        discriminant_suite(&["2", "2,2", "3", "4", "6", "4,2"], 1_000_000)?,
        backend_suite(&["2", "2,2", "4", "6", "4,2"], 100_000)?,
        excluded_form_suite(256)?,
    ])
}
