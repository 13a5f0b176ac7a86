//! Elementary integer arithmetic: modular powers, primes, primitive roots and
//! discrete logarithms.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num::integer::Integer;

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce_signed(u: i64, m: u64) -> u64 {
    (u as i128).rem_euclid(m as i128) as u64
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `base^exp` if it does not exceed `limit`.
pub fn pow_within(base: u64, exp: u32, limit: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
        if acc > limit {
            return None;
        }
    }
    (acc <= limit).then_some(acc)
}

/// Largest `r` with `r^k <= n`.
pub fn iroot(n: u128, k: u32) -> u128 {
    assert!(k >= 1);
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u128;
    let fits = |r: u128| -> bool {
        let mut acc: u128 = 1;
        for _ in 0..k {
            match acc.checked_mul(r) {
                Some(v) if v <= n => acc = v,
                _ => return false,
            }
        }
        true
    };
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

/// All primes `<= limit`, by an odd-only sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // bit i stands for 2i + 1
    let half = (limit as usize + 1) / 2;
    let mut composite = vec![0u64; half / 64 + 1];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if composite[i / 64] & (1 << (i % 64)) == 0 {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < half {
                composite[j / 64] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_prime_count(limit));
    primes.push(2);
    for i in 1..half {
        if composite[i / 64] & (1 << (i % 64)) == 0 {
            primes.push(2 * i as u64 + 1);
        }
    }
    primes
}

fn estimate_prime_count(limit: u64) -> usize {
    if limit < 17 {
        return 8;
    }
    let x = limit as f64;
    (1.26 * x / x.ln()) as usize
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Legendre symbol `(a | p)` for an odd prime `p`, as -1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = reduce_signed(a, p);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn primitive_root_cache() -> &'static RwLock<HashMap<u64, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The least positive integer that is a primitive root modulo both `p` and `p^2`
/// (odd prime `p`). Such a root generates `(Z/p^a)^*` for every `a`.
pub fn primitive_root(p: u64) -> u64 {
    assert!(p > 2, "primitive_root needs an odd prime");
    if let Some(&g) = primitive_root_cache().read().unwrap().get(&p) {
        return g;
    }
    let g = compute_primitive_root(p);
    primitive_root_cache().write().unwrap().insert(p, g);
    g
}

fn compute_primitive_root(p: u64) -> u64 {
    let factors: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    let p2 = p as u128 * p as u128;
    for g in 2..p {
        if factors.iter().any(|&q| pow_mod(g, (p - 1) / q, p) == 1) {
            continue;
        }
        if p2 <= u64::MAX as u128 && pow_mod(g, p - 1, p2 as u64) == 1 {
            continue;
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

const DIRECT_SCAN_LIMIT: u64 = 1 << 16;

/// Discrete logarithm of `target` to `base` modulo `modulus`, where `base` has
/// multiplicative order `order`. Returns `k` in `[0, order)` with
/// `base^k = target`, or `None` if `target` is not in the generated subgroup.
pub fn discrete_log(base: u64, target: u64, modulus: u64, order: u64) -> Option<u64> {
    let target = target % modulus;
    if order <= DIRECT_SCAN_LIMIT {
        let mut acc = 1 % modulus;
        for k in 0..order {
            if acc == target {
                return Some(k);
            }
            acc = mul_mod(acc, base, modulus);
        }
        return None;
    }
    // baby-step giant-step
    let m = (order as f64).sqrt().ceil() as u64;
    let mut table = HashMap::with_capacity(m as usize);
    let mut acc = 1 % modulus;
    for j in 0..m {
        table.entry(acc).or_insert(j);
        acc = mul_mod(acc, base, modulus);
    }
    // base^{-m}
    let giant = pow_mod(base, order - (m % order), modulus);
    let mut gamma = target;
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma) {
            let k = (i * m + j) % order;
            return Some(k);
        }
        gamma = mul_mod(gamma, giant, modulus);
    }
    None
}

/// Discrete logarithm modulo `n` only: for `u` a unit modulo `modulus`, where the
/// unit group is cyclic of order `group_order` generated by `g` and `n | group_order`,
/// returns `log_g(u) mod n`.
pub fn log_mod(g: u64, u: u64, modulus: u64, group_order: u64, n: u64) -> u64 {
    debug_assert_eq!(group_order % n, 0);
    if n == 1 {
        return 0;
    }
    let cof = group_order / n;
    let h = pow_mod(g, cof, modulus);
    let t = pow_mod(u, cof, modulus);
    discrete_log(h, t, modulus, n).expect("unit lies in the cyclic group")
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Checks that `n` is prime, for user-facing entry points.
pub fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}
