//! Independent oracles: classical formulas computed without the library's
//! local-component machinery.

#![allow(dead_code)]

pub fn squarefree_sieve(limit: u64) -> Vec<bool> {
    let mut sf = vec![true; limit as usize + 1];
    let mut q = 2u64;
    while q * q <= limit {
        let mut k = q * q;
        while k <= limit {
            sf[k as usize] = false;
            k += q * q;
        }
        q += 1;
    }
    sf
}

/// Every fundamental discriminant `d` with `|d| ≤ limit`, sorted by `|d|`
/// and then by value.
pub fn fundamental_discriminants(limit: u64) -> Vec<i64> {
    let sf = squarefree_sieve(limit);
    let mut out = Vec::new();
    for a in 2..=limit as i64 {
        for d in [a, -a] {
            if d.rem_euclid(4) == 1 && sf[a as usize] {
                out.push(d);
            } else if d % 4 == 0 {
                let m = d / 4;
                if matches!(m.rem_euclid(4), 2 | 3) && sf[m.unsigned_abs() as usize] {
                    out.push(d);
                }
            }
        }
    }
    out.sort_by_key(|&d| (d.abs(), d));
    out
}

pub fn count_fundamental(limit: u64) -> u64 {
    fundamental_discriminants(limit).len() as u64
}

fn squarefree_kernel(mut n: i64) -> i64 {
    let mut q = 2i64;
    while q * q <= n.abs() {
        while n % (q * q) == 0 {
            n /= q * q;
        }
        q += 1;
    }
    n
}

pub fn fundamental_of(n: i64) -> i64 {
    let k = squarefree_kernel(n);
    if k.rem_euclid(4) == 1 {
        k
    } else {
        4 * k
    }
}

/// Kronecker symbol `(d / p)` for a fundamental discriminant and a prime.
pub fn kronecker(d: i64, p: u64) -> i32 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let a = d.rem_euclid(p as i64) as u128;
    if a == 0 {
        return 0;
    }
    let (mut base, mut e, mut r) = (a, (p as u128 - 1) / 2, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Biquadratic fields with `Δ ≤ bound` as triples `{d1, d2, d3}` of distinct
/// fundamental discriminants with `d1 d2 d3` a square; `Δ = |d1 d2 d3|`.
/// Returns `(fields, fields failing the HNP)`, where a field fails iff every
/// ramified prime splits in one of its three quadratic subfields, i.e. every
/// decomposition group is cyclic.
pub fn biquadratic_oracle(bound: u64) -> (u64, u64) {
    let fd = fundamental_discriminants(bound / 12 + 1);
    let set: std::collections::HashSet<i64> = fd.iter().copied().collect();
    let key = |d: i64| (d.abs(), d);
    let (mut fields, mut fail) = (0u64, 0u64);
    for (i, &d1) in fd.iter().enumerate() {
        if (d1.unsigned_abs() as u128).pow(3) > bound as u128 {
            break;
        }
        for &d2 in &fd[i + 1..] {
            if (d1.unsigned_abs() as u128) * (d2.unsigned_abs() as u128).pow(2) > bound as u128 {
                break;
            }
            let d3 = fundamental_of(d1 * d2);
            if !set.contains(&d3) || key(d3) <= key(d2) {
                continue;
            }
            let disc = (d1.unsigned_abs() as u128) * (d2.unsigned_abs() as u128) * (d3.unsigned_abs() as u128);
            if disc > bound as u128 {
                continue;
            }
            fields += 1;
            let all_cyclic = prime_factors(disc as u64)
                .into_iter()
                .all(|p| [d1, d2, d3].iter().any(|&d| kronecker(d, p) == 1));
            fail += all_cyclic as u64;
        }
    }
    (fields, fail)
}

/// Labelled cyclic cubic extensions with `Δ = f² ≤ bound`: conductors are
/// `f = 9^a Π p_i` with `a ∈ {0, 1}` and distinct `p_i ≡ 1 mod 3`, and there
/// are `2^k` characters of exact conductor `f` for `k` prime factors.
pub fn cyclic_cubic_oracle(bound: u64) -> u64 {
    let fmax = (bound as f64).sqrt() as u64 + 1;
    let mut total = 0u64;
    for f in 7..=fmax {
        if f * f > bound {
            break;
        }
        let mut n = f;
        let mut k = 0u32;
        let mut ok = true;
        if n % 9 == 0 {
            n /= 9;
            k += 1;
            ok &= n % 3 != 0;
        } else if n % 3 == 0 {
            ok = false;
        }
        for p in prime_factors(n) {
            if p % 3 != 1 || n % (p * p) == 0 {
                ok = false;
            }
            k += 1;
        }
        if ok && k > 0 {
            total += 1 << k;
        }
    }
    total
}
