//! Depth-first search over sets of ramified primes.
//!
//! Primes are taken in increasing order. At each prime the admissible nontrivial
//! components are sorted by discriminant exponent so a branch stops as soon as
//! the bound is exceeded. Tame primes with the same `gcd(p - 1, exp G)` share one
//! option list. The subgroup generated by the chosen inertia images is tracked
//! as a node in a precomputed join table.

use std::collections::HashMap;

use num::BigUint;
use rayon::prelude::*;

use super::{bound_to_u128, GExtensionQ};
use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{group_invariants, FinAbGroup, GroupElement, Subgroup};
use crate::localdata::{
    enumerate_local_components, local_disc_exponent, LocalComponent, LocalConditionSet, Rule,
};

/// Upper limit on the number of subgroups reachable as joins of inertia groups.
const MAX_LATTICE_NODES: usize = 1 << 16;

/// Receives every extension found by the search.
pub trait Visitor: Send {
    fn visit(&mut self, leaf: &Leaf<'_>);
    /// Absorbs a visitor that ran on a disjoint part of the search.
    fn merge(&mut self, other: Self)
    where
        Self: Sized;
}

#[derive(Clone, Copy, Debug)]
struct Choice {
    prime_index: u32,
    list: u32,
    option: u32,
}

/// One extension found by the search, materialised on demand.
pub struct Leaf<'a> {
    plan: &'a Enumerator,
    stack: &'a [Choice],
    discriminant: u128,
}

impl Leaf<'_> {
    pub fn discriminant(&self) -> u128 {
        self.discriminant
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.plan.group
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.stack.iter().map(|c| self.plan.primes[c.prime_index as usize] as u64)
    }

    pub fn components(&self) -> Vec<LocalComponent> {
        self.stack.iter().map(|c| self.plan.component(c)).collect()
    }

    pub fn extension(&self) -> GExtensionQ {
        GExtensionQ::from_parts(
            &self.plan.group,
            self.components(),
            BigUint::from(self.discriminant),
        )
    }
}

struct Opt {
    images: Vec<GroupElement>,
    /// Present for special primes; tame options are built per prime.
    component: Option<LocalComponent>,
    exp: u32,
    inc: u32,
}

struct OptionList {
    opts: Vec<Opt>,
    min_exp: u32,
    reach: u32,
}

/// Subgroups reachable from the trivial one by joining increments.
struct JoinLattice {
    nodes: Vec<Subgroup>,
    n_inc: usize,
    join: Vec<u32>,
}

impl JoinLattice {
    fn build(g: &FinAbGroup, increments: &[Subgroup]) -> Result<Self> {
        let mut ids: HashMap<Subgroup, u32> = HashMap::new();
        let mut nodes = vec![Subgroup::trivial(g)];
        ids.insert(nodes[0].clone(), 0);
        let mut join = Vec::new();
        let mut k = 0;
        while k < nodes.len() {
            for inc in increments {
                let j = nodes[k].join(inc)?;
                let id = match ids.get(&j) {
                    Some(&id) => id,
                    None => {
                        if nodes.len() >= MAX_LATTICE_NODES {
                            return Err(Error::BoundExceeded(format!(
                                "more than {MAX_LATTICE_NODES} subgroups of {g} in the search"
                            )));
                        }
                        let id = nodes.len() as u32;
                        ids.insert(j.clone(), id);
                        nodes.push(j);
                        id
                    }
                };
                join.push(id);
            }
            k += 1;
        }
        Ok(JoinLattice { nodes, n_inc: increments.len(), join })
    }

    #[inline]
    fn join(&self, node: u32, inc: u32) -> u32 {
        self.join[node as usize * self.n_inc + inc as usize]
    }
}

/// A prepared search for one group, bound and set of conditions.
pub struct Enumerator {
    group: FinAbGroup,
    bound: u128,
    alpha: u32,
    primes: Vec<u32>,
    /// Option list of each prime.
    kind: Vec<u32>,
    lists: Vec<OptionList>,
    /// Prime indices of each tame list, for reachability pruning.
    members: Vec<Vec<u32>>,
    specials: Vec<(u32, u32)>,
    lattice: JoinLattice,
    whole: Option<u32>,
    prune: bool,
    leaf_conditions: Option<LocalConditionSet>,
}

impl Enumerator {
    pub fn new(group: &FinAbGroup, bound: &BigUint, conditions: &LocalConditionSet) -> Result<Self> {
        let inv = group_invariants(group)?;
        let b = bound_to_u128(bound)?;
        let order = group.order();
        let exp_g = group.exponent();
        let default_rule: Rule = conditions.default.into();

        let mut increments: Vec<Subgroup> = Vec::new();
        let mut inc_ids: HashMap<Subgroup, u32> = HashMap::new();
        let mut inc_id = |s: Subgroup, incs: &mut Vec<Subgroup>| -> u32 {
            *inc_ids.entry(s.clone()).or_insert_with(|| {
                incs.push(s);
                incs.len() as u32 - 1
            })
        };

        // tame option lists, one per divisor d of exp(G)
        let divisors = arith::divisors(exp_g);
        let mut tame_lists: Vec<(u64, Vec<Opt>)> = Vec::new();
        for &d in &divisors {
            let mut opts = Vec::new();
            for x in group.elements() {
                let o = group.element_order(&x);
                if o == 1 || d % o != 0 {
                    continue;
                }
                // stands in for any tame prime of this class
                let comp = LocalComponent::tame_unchecked(0, x.clone());
                if default_rule.admits_component(group, &comp) == Some(false) {
                    continue;
                }
                let inertia = Subgroup::generated(group, &[x.clone()]);
                let inc = inc_id(inertia, &mut increments);
                opts.push(Opt { images: vec![x], component: None, exp: (order - order / o) as u32, inc });
            }
            opts.sort_by(|a, b| a.exp.cmp(&b.exp).then_with(|| a.images.cmp(&b.images)));
            tame_lists.push((d, opts));
        }

        // primes needing individual treatment
        let mut special_primes: Vec<u64> = group.primes();
        special_primes.extend(conditions.rules.keys().copied());
        special_primes.sort_unstable();
        special_primes.dedup();
        let mut special_lists: Vec<(u64, Vec<Opt>)> = Vec::new();
        for &p in &special_primes {
            let rule = conditions.rule_at(p);
            let mut opts = Vec::new();
            for comp in enumerate_local_components(group, p) {
                if comp.is_trivial() || rule.admits_component(group, &comp) == Some(false) {
                    continue;
                }
                let exp = local_disc_exponent(group, &comp) as u32;
                let inc = inc_id(comp.inertia(group), &mut increments);
                opts.push(Opt { images: comp.images().to_vec(), component: Some(comp), exp, inc });
            }
            opts.sort_by(|a, b| a.exp.cmp(&b.exp).then_with(|| a.images.cmp(&b.images)));
            special_lists.push((p, opts));
        }

        let alpha = tame_lists
            .iter()
            .chain(special_lists.iter())
            .filter_map(|(_, o)| o.first().map(|x| x.exp))
            .min();
        debug_assert!(alpha.map_or(true, |a| a as u64 >= inv.alpha));
        let alpha = alpha.unwrap_or(u32::MAX);
        let limit = if alpha == u32::MAX { 1 } else { arith::iroot(b, alpha) };
        if limit > u32::MAX as u128 {
            return Err(Error::BoundExceeded(format!(
                "candidate primes up to {limit} do not fit the sieve"
            )));
        }
        let primes: Vec<u32> = arith::primes_up_to(limit as u64).into_iter().map(|p| p as u32).collect();

        let mut lists: Vec<OptionList> = Vec::new();
        let mut reach_of = |opts: &[Opt], incs: &mut Vec<Subgroup>| -> u32 {
            let mut s = Subgroup::trivial(group);
            for o in opts {
                s = s.join(&incs[o.inc as usize]).expect("same ambient");
            }
            inc_id(s, incs)
        };
        let mut class_of_d: HashMap<u64, u32> = HashMap::new();
        for (d, opts) in tame_lists {
            let reach = reach_of(&opts, &mut increments);
            class_of_d.insert(d, lists.len() as u32);
            let min_exp = opts.first().map_or(u32::MAX, |o| o.exp);
            lists.push(OptionList { opts, min_exp, reach });
        }
        let n_tame = lists.len();
        let mut special_list_of: HashMap<u64, u32> = HashMap::new();
        for (p, opts) in special_lists {
            let reach = reach_of(&opts, &mut increments);
            special_list_of.insert(p, lists.len() as u32);
            let min_exp = opts.first().map_or(u32::MAX, |o| o.exp);
            lists.push(OptionList { opts, min_exp, reach });
        }

        let mut kind = Vec::with_capacity(primes.len());
        let mut members = vec![Vec::new(); n_tame];
        let mut specials = Vec::new();
        for (i, &p) in primes.iter().enumerate() {
            let p = p as u64;
            let k = match special_list_of.get(&p) {
                Some(&k) => {
                    specials.push((i as u32, k));
                    k
                }
                None => {
                    let k = class_of_d[&arith::gcd(p - 1, exp_g)];
                    members[k as usize].push(i as u32);
                    k
                }
            };
            kind.push(k);
        }

        let lattice = JoinLattice::build(group, &increments)?;
        let whole = lattice.nodes.iter().position(|s| s.is_whole()).map(|i| i as u32);
        let prime_order = group.is_cyclic() && arith::is_prime(group.order());

        let needs_leaf = conditions.rules.values().any(|r| match r {
            Rule::FullLocalPredicate(_) => true,
            Rule::AllowedComponents(list) => !list.iter().any(|c| c.is_trivial()),
            _ => false,
        });

        Ok(Enumerator {
            group: group.clone(),
            bound: b,
            alpha,
            primes,
            kind,
            lists,
            members,
            specials,
            lattice,
            whole,
            prune: !prime_order,
            leaf_conditions: needs_leaf.then(|| conditions.clone()),
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn bound(&self) -> u128 {
        self.bound
    }

    /// Largest candidate prime.
    pub fn prime_limit(&self) -> u64 {
        self.primes.last().copied().unwrap_or(1) as u64
    }

    fn component(&self, c: &Choice) -> LocalComponent {
        let opt = &self.lists[c.list as usize].opts[c.option as usize];
        match &opt.component {
            Some(comp) => comp.clone(),
            None => LocalComponent::tame_unchecked(
                self.primes[c.prime_index as usize] as u64,
                opt.images[0].clone(),
            ),
        }
    }

    /// Runs the search on the calling thread, in depth-first order.
    pub fn run<V: Visitor>(&self, visitor: &mut V) {
        let mut stack = Vec::new();
        self.dfs(0, 1, 0, &mut stack, visitor);
    }

    /// Runs the search with `threads` workers (0 for the default pool) and
    /// merges the per-worker visitors. One thread reproduces [`run`](Self::run).
    pub fn run_parallel<V, F>(&self, threads: usize, make: F) -> V
    where
        V: Visitor,
        F: Fn() -> V + Sync + Send,
    {
        if threads == 1 {
            let mut v = make();
            self.run(&mut v);
            return v;
        }
        let work = || {
            (0..self.primes.len())
                .into_par_iter()
                .fold(&make, |mut v, i| {
                    let mut stack = Vec::new();
                    self.branch(i, 1, 0, &mut stack, &mut v);
                    v
                })
                .reduce(&make, |mut a, b| {
                    a.merge(b);
                    a
                })
        };
        if threads == 0 {
            work()
        } else {
            match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                Ok(pool) => pool.install(work),
                Err(_) => work(),
            }
        }
    }

    pub fn count(&self, threads: usize) -> u64 {
        self.run_parallel(threads, Counter::default).0
    }

    pub fn collect(&self, threads: usize) -> Vec<GExtensionQ> {
        self.run_parallel(threads, Collector::default).0
    }

    /// Streams extensions in depth-first order on the calling thread.
    pub fn for_each_extension<F: FnMut(GExtensionQ) + Send>(&self, f: F) {
        struct Each<F>(F);
        impl<F: FnMut(GExtensionQ) + Send> Visitor for Each<F> {
            fn visit(&mut self, leaf: &Leaf<'_>) {
                (self.0)(leaf.extension())
            }
            fn merge(&mut self, _: Self) {}
        }
        self.run(&mut Each(f));
    }

    fn dfs<V: Visitor>(&self, start: usize, prod: u128, node: u32, stack: &mut Vec<Choice>, v: &mut V) {
        if !stack.is_empty() && Some(node) == self.whole {
            self.emit(prod, stack, v);
        }
        if self.prune && !self.can_reach(start, prod, node) {
            return;
        }
        for i in start..self.primes.len() {
            let p = self.primes[i] as u64;
            if arith::pow_within(p, self.alpha, self.bound / prod).is_none() {
                break;
            }
            self.branch(i, prod, node, stack, v);
        }
    }

    #[inline]
    fn branch<V: Visitor>(&self, i: usize, prod: u128, node: u32, stack: &mut Vec<Choice>, v: &mut V) {
        let p = self.primes[i] as u64;
        let list_id = self.kind[i];
        let list = &self.lists[list_id as usize];
        let room = self.bound / prod;
        let mut last_exp = 0;
        let mut pe = 1u128;
        for (k, opt) in list.opts.iter().enumerate() {
            if opt.exp != last_exp {
                match arith::pow_within(p, opt.exp, room) {
                    Some(x) => pe = x,
                    None => break,
                }
                last_exp = opt.exp;
            }
            stack.push(Choice { prime_index: i as u32, list: list_id, option: k as u32 });
            self.dfs(i + 1, prod * pe, self.lattice.join(node, opt.inc), stack, v);
            stack.pop();
        }
    }

    fn emit<V: Visitor>(&self, prod: u128, stack: &[Choice], v: &mut V) {
        let leaf = Leaf { plan: self, stack, discriminant: prod };
        if let Some(conditions) = &self.leaf_conditions {
            if !leaf.extension().satisfies(conditions) {
                return;
            }
        }
        v.visit(&leaf);
    }

    /// Whether primes from index `start` on can still complete the image.
    fn can_reach(&self, start: usize, prod: u128, node: u32) -> bool {
        let Some(whole) = self.whole else { return false };
        if node == whole {
            return true;
        }
        let room = self.bound / prod;
        let mut cur = node;
        for (k, members) in self.members.iter().enumerate() {
            let list = &self.lists[k];
            if list.opts.is_empty() {
                continue;
            }
            let at = members.partition_point(|&i| (i as usize) < start);
            if let Some(&i) = members.get(at) {
                if arith::pow_within(self.primes[i as usize] as u64, list.min_exp, room).is_some() {
                    cur = self.lattice.join(cur, list.reach);
                }
            }
        }
        for &(i, k) in &self.specials {
            let list = &self.lists[k as usize];
            if (i as usize) < start || list.opts.is_empty() {
                continue;
            }
            if arith::pow_within(self.primes[i as usize] as u64, list.min_exp, room).is_some() {
                cur = self.lattice.join(cur, list.reach);
            }
        }
        cur == whole
    }
}

#[derive(Default)]
struct Counter(u64);

impl Visitor for Counter {
    fn visit(&mut self, _: &Leaf<'_>) {
        self.0 += 1;
    }
    fn merge(&mut self, other: Self) {
        self.0 += other.0;
    }
}

#[derive(Default)]
struct Collector(Vec<GExtensionQ>);

impl Visitor for Collector {
    fn visit(&mut self, leaf: &Leaf<'_>) {
        self.0.push(leaf.extension());
    }
    fn merge(&mut self, mut other: Self) {
        self.0.append(&mut other.0);
    }
}
