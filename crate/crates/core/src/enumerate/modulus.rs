//! Second enumeration backend: surjective characters of `(Z/m)^*` of conductor
//! exactly `m`, converted to local components.
//!
//! Conductors and discriminants are computed here from the Dirichlet-character
//! side (character values on lifted generators of the higher unit groups) and
//! checked against the local formulas.

use std::collections::HashMap;

use num::{BigUint, ToPrimitive};

use super::GExtensionQ;
use crate::arith;
use crate::error::Result;
use crate::groups::{FinAbGroup, GroupElement, Subgroup};
use crate::localdata::LocalComponent;

/// `floor(B^{2/|G|})`. Every G-extension with discriminant at most `B` has
/// conductor at most this: at each ramified prime at least half of the
/// characters attain the full conductor exponent.
pub fn max_conductor(group: &FinAbGroup, bound: &BigUint) -> u64 {
    let b = bound.to_f64().unwrap_or(f64::INFINITY);
    let mut m = b.powf(2.0 / group.order() as f64).floor() as u64;
    let fits = |m: u64| BigUint::from(m).pow(group.order() as u32) <= bound.pow(2);
    while m > 0 && !fits(m) {
        m -= 1;
    }
    while fits(m + 1) {
        m += 1;
    }
    m
}

/// One cyclic factor of `(Z/p^a)^*`.
struct Block {
    p: u64,
    a: u32,
    /// Generators of the unit group at `p`, lifted to `Z/m`, with their orders.
    gens: Vec<(u64, u64)>,
    /// `layers[c]`: lifted generators of `1 + p^c Z_p` (all units for `c = 0`),
    /// each as exponents on `gens`.
    layers: Vec<Vec<Vec<u64>>>,
}

struct UnitGroup {
    blocks: Vec<Block>,
}

impl UnitGroup {
    fn new(m: u64, dlogs: &mut HashMap<(u64, u32, u32), Vec<u64>>) -> Option<Self> {
        if m % 4 == 2 {
            return None;
        }
        let mut blocks = Vec::new();
        for (p, a) in arith::factorize(m) {
            let pa = p.pow(a);
            let rest = m / pa;
            // x ≡ u mod p^a, x ≡ 1 mod rest
            let lift = |u: u64| -> u64 { crt(u % pa, pa, 1 % rest.max(1), rest) };
            let gens: Vec<(u64, u64)> = if p == 2 {
                match a {
                    2 => vec![(lift(pa - 1), 2)],
                    _ => vec![(lift(pa - 1), 2), (lift(5), pa / 8 * 2)],
                }
            } else {
                vec![(lift(arith::primitive_root(p)), pa / p * (p - 1))]
            };
            let mut layers = Vec::new();
            for c in 0..=a {
                let key = (p, a, c);
                if !dlogs.contains_key(&key) {
                    dlogs.insert(key, layer_logs(p, a, c));
                }
                let flat = &dlogs[&key];
                let width = gens.len();
                layers.push(flat.chunks(width).map(|x| x.to_vec()).collect());
            }
            blocks.push(Block { p, a, gens, layers });
        }
        Some(UnitGroup { blocks })
    }
}

/// Exponents, on the fixed generators of `(Z/p^a)^*`, of generators of the
/// higher unit group `1 + p^c`, flattened.
fn layer_logs(p: u64, a: u32, c: u32) -> Vec<u64> {
    let pa = p.pow(a);
    if p == 2 {
        let n5 = if a >= 3 { pa / 4 } else { 1 };
        let as_exps = |u: u64| -> Vec<u64> {
            let neg = u % 4 == 3;
            let v = if neg { pa - u } else { u };
            let e5 = arith::discrete_log(5 % pa, v % pa, pa, n5).expect("5 generates 1 + 4Z_2");
            if a == 2 {
                vec![neg as u64]
            } else {
                vec![neg as u64, e5]
            }
        };
        let units: Vec<u64> = if c <= 1 { vec![pa - 1, 5 % pa] } else { vec![(1 + (1u64 << c)) % pa] };
        units.into_iter().flat_map(as_exps).collect()
    } else {
        let g = arith::primitive_root(p);
        let order = pa / p * (p - 1);
        if c == 0 {
            vec![1]
        } else {
            let u = (1 + p.pow(c)) % pa;
            vec![arith::discrete_log(g % pa, u, pa, order).expect("units are powers of g")]
        }
    }
}

fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    if m2 == 1 {
        return r1;
    }
    // m1 and m2 coprime
    let inv = mod_inverse(m1 % m2, m2);
    let t = ((r2 + m2 - r1 % m2) % m2) as u128 * inv as u128 % m2 as u128;
    (r1 as u128 + m1 as u128 * t) as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(m as i128) as u64
}

/// All G-extensions of conductor at most `max_modulus` and discriminant at
/// most `bound`, found as primitive surjective Dirichlet characters. Choosing
/// `max_modulus` at least [`max_conductor`] makes the list complete; a smaller
/// value silently misses extensions.
pub fn enumerate_by_modulus(group: &FinAbGroup, bound: &BigUint, max_modulus: u64) -> Result<Vec<GExtensionQ>> {
    let characters: Vec<_> = group.characters().collect();
    let mut dlogs = HashMap::new();
    let mut out = Vec::new();
    for m in 2..=max_modulus {
        let Some(units) = UnitGroup::new(m, &mut dlogs) else { continue };
        // candidate images of each generator
        let slots: Vec<(usize, usize, Vec<GroupElement>)> = units
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(bi, b)| {
                b.gens.iter().enumerate().map(move |(gi, &(_, ord))| (bi, gi, ord))
            })
            .map(|(bi, gi, ord)| {
                let imgs = group.elements().filter(|x| ord % group.element_order(x) == 0).collect();
                (bi, gi, imgs)
            })
            .collect();
        let mut choice = vec![0usize; slots.len()];
        'chars: loop {
            let images: Vec<Vec<GroupElement>> = units
                .blocks
                .iter()
                .enumerate()
                .map(|(bi, b)| {
                    (0..b.gens.len())
                        .map(|gi| {
                            let s = slots.iter().position(|s| s.0 == bi && s.1 == gi).unwrap();
                            slots[s].2[choice[s]].clone()
                        })
                        .collect()
                })
                .collect();
            if let Some(ext) = character_extension(group, &units, &images, &characters, bound) {
                out.push(ext);
            }
            // next tuple
            for s in 0..slots.len() {
                choice[s] += 1;
                if choice[s] < slots[s].2.len() {
                    continue 'chars;
                }
                choice[s] = 0;
            }
            break;
        }
    }
    out.sort();
    Ok(out)
}

fn character_extension(
    group: &FinAbGroup,
    units: &UnitGroup,
    images: &[Vec<GroupElement>],
    characters: &[crate::groups::Character],
    bound: &BigUint,
) -> Option<GExtensionQ> {
    let all: Vec<GroupElement> = images.iter().flatten().cloned().collect();
    if !Subgroup::generated(group, &all).is_whole() {
        return None;
    }
    let value = |bi: usize, exps: &[u64]| -> GroupElement {
        let mut acc = group.zero();
        for (e, x) in exps.iter().zip(&images[bi]) {
            acc = group.add(&acc, &group.scale(*e, x));
        }
        acc
    };
    // conductor exponent at block `bi` of the composite with `psi`
    let cond = |bi: usize, psi: Option<&crate::groups::Character>| -> u32 {
        let b = &units.blocks[bi];
        (0..=b.a)
            .find(|&c| {
                b.layers[c as usize].iter().all(|exps| {
                    let x = value(bi, exps);
                    match psi {
                        None => x.is_zero(),
                        Some(psi) => group.pair(psi, &x) == 0,
                    }
                })
            })
            .expect("trivial on 1 + p^a")
    };
    // primitive: conductor exactly m
    if (0..units.blocks.len()).any(|bi| cond(bi, None) != units.blocks[bi].a) {
        return None;
    }
    let mut disc = BigUint::from(1u32);
    for psi in characters {
        for (bi, b) in units.blocks.iter().enumerate() {
            disc *= BigUint::from(b.p).pow(cond(bi, Some(psi)));
        }
    }
    if &disc > bound {
        return None;
    }
    let comps: Vec<LocalComponent> = units
        .blocks
        .iter()
        .enumerate()
        .map(|(bi, b)| {
            if b.p == 2 {
                let eps = images[bi][0].clone();
                let w = images[bi].get(1).cloned().unwrap_or_else(|| group.zero());
                LocalComponent::two(group, eps, w).expect("images have admissible orders")
            } else {
                LocalComponent::odd(group, b.p, images[bi][0].clone()).expect("images have admissible orders")
            }
        })
        .collect();
    let ext = GExtensionQ::new(group, comps).expect("one component per prime");
    assert_eq!(ext.discriminant(), &disc, "conductor-discriminant mismatch");
    Some(ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn conductor_limits() {
        assert_eq!(max_conductor(&g("2"), &BigUint::from(10u32)), 10);
        assert_eq!(max_conductor(&g("2,2"), &BigUint::from(144u32)), 12);
    }

    #[test]
    fn small_fields() {
        assert_eq!(enumerate_by_modulus(&g("2"), &BigUint::from(10u32), 24).unwrap().len(), 6);
        assert_eq!(enumerate_by_modulus(&g("2,2"), &BigUint::from(144u32), 12).unwrap().len(), 6);
        let z4 = enumerate_by_modulus(&g("4"), &BigUint::from(2048u32), 16).unwrap();
        let at16: Vec<_> = z4.iter().filter(|e| e.discriminant() == &BigUint::from(2048u32)).collect();
        // the real and the imaginary cyclic quartic field of conductor 16, two labelings each
        assert_eq!(at16.len(), 4);
    }
}
