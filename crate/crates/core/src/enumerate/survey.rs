//! Hasse-norm-principle statistics over all extensions up to several bounds,
//! from a single search at the largest bound.

use std::collections::BTreeMap;

use num::BigUint;

use super::search::{Enumerator, Leaf, Visitor};
use crate::error::{Error, Result};
use crate::groups::{is_excluded_form, FinAbGroup};
use crate::hnp::{hasse_norm_test, lemma_6_13_predicate};
use crate::localdata::LocalConditionSet;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveyRow {
    pub bound: BigUint,
    pub n: BigUint,
    pub n_fail_hnp: BigUint,
    pub n_fail_wa: BigUint,
    /// `|Sha|` → number of extensions.
    pub sha_histogram: BTreeMap<BigUint, BigUint>,
    pub n_all_decomposition_cyclic: BigUint,
    /// Extensions where the sufficient criterion for failure applies, and
    /// among them those that nevertheless satisfy the principle. Zero when
    /// the criterion does not apply to the group.
    pub n_criterion: BigUint,
    pub n_criterion_violations: BigUint,
}

impl SurveyRow {
    pub fn fail_hnp_fraction(&self) -> f64 {
        ratio(&self.n_fail_hnp, &self.n)
    }

    pub fn fail_wa_fraction(&self) -> f64 {
        ratio(&self.n_fail_wa, &self.n)
    }

    pub fn all_cyclic_fraction(&self) -> f64 {
        ratio(&self.n_all_decomposition_cyclic, &self.n)
    }

    /// `order:count` pairs joined by `;`.
    pub fn histogram_field(&self) -> String {
        self.sha_histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    use num::ToPrimitive;
    if *b == BigUint::default() {
        return 0.0;
    }
    a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
}

#[derive(Default)]
struct Tally {
    n: u64,
    fail_hnp: u64,
    fail_wa: u64,
    all_cyclic: u64,
    criterion: u64,
    violations: u64,
    sha: BTreeMap<u64, u64>,
}

impl Tally {
    fn absorb(&mut self, o: &Tally) {
        self.n += o.n;
        self.fail_hnp += o.fail_hnp;
        self.fail_wa += o.fail_wa;
        self.all_cyclic += o.all_cyclic;
        self.criterion += o.criterion;
        self.violations += o.violations;
        for (k, v) in &o.sha {
            *self.sha.entry(*k).or_default() += v;
        }
    }
}

struct SurveyVisitor {
    bounds: Vec<u128>,
    criterion: bool,
    cyclic: bool,
    /// `tallies[k]` counts extensions with `bounds[k-1] < Δ ≤ bounds[k]`.
    tallies: Vec<Tally>,
}

impl Visitor for SurveyVisitor {
    fn visit(&mut self, leaf: &Leaf<'_>) {
        let d = leaf.discriminant();
        let k = self.bounds.partition_point(|&b| b < d);
        if self.cyclic {
            // ∧²G = 0: every torus satisfies both
            let t = &mut self.tallies[k];
            t.n += 1;
            t.all_cyclic += 1;
            *t.sha.entry(1).or_default() += 1;
            return;
        }
        let ext = leaf.extension();
        let r = hasse_norm_test(&ext).expect("search emits surjective extensions");
        let t = &mut self.tallies[k];
        t.n += 1;
        t.fail_hnp += !r.hnp_holds as u64;
        t.fail_wa += !r.wa_holds as u64;
        t.all_cyclic += r.all_decomposition_cyclic as u64;
        let sha: u64 = r.sha_order.try_into().expect("|Sha| ≤ |∧²G| fits");
        *t.sha.entry(sha).or_default() += 1;
        if self.criterion && lemma_6_13_predicate(&ext).expect("group checked") {
            t.criterion += 1;
            t.violations += r.hnp_holds as u64;
        }
    }

    fn merge(&mut self, other: Self) {
        for (a, b) in self.tallies.iter_mut().zip(&other.tallies) {
            a.absorb(b);
        }
    }
}

/// One row per bound, counting extensions with discriminant at most that
/// bound. `threads = 0` uses every core.
pub fn survey(
    group: &FinAbGroup,
    bounds: &[BigUint],
    conditions: &LocalConditionSet,
    threads: usize,
) -> Result<Vec<SurveyRow>> {
    let mut sorted = bounds.to_vec();
    sorted.sort();
    sorted.dedup();
    let Some(max) = sorted.last() else {
        return Err(Error::Precondition("survey needs at least one bound".into()));
    };
    let e = Enumerator::new(group, max, conditions)?;
    let native: Vec<u128> = sorted.iter().map(super::bound_to_u128).collect::<Result<_>>()?;
    let criterion = !is_excluded_form(group);
    let n = native.len();
    let v = e.run_parallel(threads, || SurveyVisitor {
        bounds: native.clone(),
        criterion,
        cyclic: group.is_cyclic(),
        tallies: (0..n).map(|_| Tally::default()).collect(),
    });
    let mut acc = Tally::default();
    let mut rows = Vec::new();
    for (b, t) in sorted.iter().zip(&v.tallies) {
        acc.absorb(t);
        rows.push(SurveyRow {
            bound: b.clone(),
            n: acc.n.into(),
            n_fail_hnp: acc.fail_hnp.into(),
            n_fail_wa: acc.fail_wa.into(),
            sha_histogram: acc.sha.iter().map(|(k, v)| ((*k).into(), (*v).into())).collect(),
            n_all_decomposition_cyclic: acc.all_cyclic.into(),
            n_criterion: acc.criterion.into(),
            n_criterion_violations: acc.violations.into(),
        });
    }
    // rows follow the caller's order
    Ok(bounds
        .iter()
        .map(|b| rows[sorted.binary_search(b).expect("present")].clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn biquadratic_rows() {
        let g: FinAbGroup = "2,2".parse().unwrap();
        let bounds: Vec<BigUint> = [200u32, 10_000].iter().map(|&b| b.into()).collect();
        let rows = survey(&g, &bounds, &LocalConditionSet::any(), 1).unwrap();
        assert_eq!(rows[0].n, BigUint::from(6u32));
        for r in &rows {
            let total: BigUint = r.sha_histogram.values().sum();
            assert_eq!(total, r.n);
            assert_eq!(r.n_fail_hnp, r.n_all_decomposition_cyclic);
            assert!(r.n_fail_hnp <= r.n);
        }
        assert!(rows[1].n > rows[0].n);
    }
}
