//! Integer lattices between `Z^l` and `n_1 Z ⊕ … ⊕ n_l Z`, kept in Hermite normal
//! form, plus a small Smith normal form routine.
//!
//! A subgroup of `Z/n_1 ⊕ … ⊕ Z/n_l` is the same thing as a full-rank lattice
//! containing every `n_k e_k`; the same code serves groups and exterior squares.

/// A sublattice of `Z^l` containing `n_k e_k` for each modulus `n_k`.
///
/// `rows` is upper triangular with positive diagonal `d_k | n_k`; the entry in
/// row `i`, column `k > i` lies in `[0, d_k)`. This form is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModLattice {
    moduli: Vec<u64>,
    rows: Vec<Vec<u64>>,
}

impl ModLattice {
    /// The lattice spanned by `gens` together with all `n_k e_k`.
    pub fn span<'a, I>(moduli: &[u64], gens: I) -> Self
    where
        I: IntoIterator<Item = &'a [u64]>,
    {
        let l = moduli.len();
        let mut work: Vec<Vec<i128>> = Vec::new();
        for g in gens {
            debug_assert_eq!(g.len(), l);
            let row: Vec<i128> = g
                .iter()
                .zip(moduli)
                .map(|(&x, &n)| (x % n) as i128)
                .collect();
            if row.iter().any(|&x| x != 0) {
                work.push(row);
            }
        }
        for (k, &n) in moduli.iter().enumerate() {
            let mut row = vec![0i128; l];
            row[k] = n as i128;
            work.push(row);
        }
        Self::from_rows(moduli, work)
    }

    /// The full lattice `Z^l`, i.e. the whole group.
    pub fn whole(moduli: &[u64]) -> Self {
        let l = moduli.len();
        let rows = (0..l)
            .map(|k| {
                let mut r = vec![0u64; l];
                r[k] = 1;
                r
            })
            .collect();
        ModLattice { moduli: moduli.to_vec(), rows }
    }

    /// The lattice `⊕ n_k Z`, i.e. the trivial subgroup.
    pub fn zero(moduli: &[u64]) -> Self {
        Self::span(moduli, std::iter::empty())
    }

    fn from_rows(moduli: &[u64], mut work: Vec<Vec<i128>>) -> Self {
        let l = moduli.len();
        let m: Vec<i128> = moduli.iter().map(|&n| n as i128).collect();
        let mut pivots: Vec<Vec<i128>> = Vec::with_capacity(l);
        for k in 0..l {
            // Euclid on column k among the remaining rows.
            loop {
                let mut best: Option<usize> = None;
                for (i, r) in work.iter().enumerate() {
                    if r[k] != 0 && best.map_or(true, |b| r[k].abs() < work[b][k].abs()) {
                        best = Some(i);
                    }
                }
                let b = best.expect("n_k e_k keeps every column nonzero");
                let pivot = work.swap_remove(b);
                let mut done = true;
                for r in work.iter_mut() {
                    if r[k] != 0 {
                        let q = r[k].div_euclid(pivot[k]);
                        r[k] -= q * pivot[k];
                        for j in k + 1..l {
                            r[j] = (r[j] - q * pivot[j]).rem_euclid(m[j]);
                        }
                        if r[k] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    let mut p = pivot;
                    if p[k] < 0 {
                        p.iter_mut().for_each(|x| *x = -*x);
                    }
                    for j in k + 1..l {
                        p[j] = p[j].rem_euclid(m[j]);
                    }
                    pivots.push(p);
                    work.retain(|r| r.iter().any(|&x| x != 0));
                    break;
                }
                work.push(pivot);
            }
        }
        // back-reduce above-diagonal entries into [0, d_k)
        for k in 0..l {
            let dk = pivots[k][k];
            for i in 0..k {
                let q = pivots[i][k].div_euclid(dk);
                if q != 0 {
                    for j in k..l {
                        let v = pivots[i][j] - q * pivots[k][j];
                        pivots[i][j] = if j == k { v } else { v.rem_euclid(m[j]) };
                    }
                }
            }
        }
        let rows = pivots
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as u64).collect())
            .collect();
        ModLattice { moduli: moduli.to_vec(), rows }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.rows.len()).map(|k| self.rows[k][k]).collect()
    }

    /// Order of the corresponding subgroup, `Π n_k / d_k`.
    pub fn order(&self) -> u64 {
        self.moduli
            .iter()
            .enumerate()
            .map(|(k, &n)| n / self.rows[k][k])
            .product()
    }

    /// Index of the subgroup in the ambient group, `Π d_k`.
    pub fn index(&self) -> u64 {
        (0..self.rows.len()).map(|k| self.rows[k][k]).product()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        let l = self.moduli.len();
        let mut v: Vec<i128> = x.iter().map(|&c| c as i128).collect();
        for k in 0..l {
            let d = self.rows[k][k] as i128;
            let xk = v[k].rem_euclid(self.moduli[k] as i128);
            if xk % d != 0 {
                return false;
            }
            let q = xk / d;
            for j in k..l {
                v[j] -= q * self.rows[k][j] as i128;
            }
        }
        true
    }

    /// Generators of the subgroup: the rows whose pivot is a proper divisor of
    /// the modulus, reduced into the group.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(k, r)| r[*k] < self.moduli[*k])
            .map(|(_, r)| r.iter().zip(&self.moduli).map(|(&x, &n)| x % n).collect())
            .collect()
    }

    pub fn join(&self, other: &ModLattice) -> ModLattice {
        debug_assert_eq!(self.moduli, other.moduli);
        let gens = self.generators();
        let more = other.generators();
        ModLattice::span(
            &self.moduli,
            gens.iter().chain(more.iter()).map(|g| g.as_slice()),
        )
    }

    pub fn is_sublattice_of(&self, other: &ModLattice) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    /// Invariant factors (descending, all > 1) of the quotient of the ambient
    /// group by this subgroup.
    pub fn quotient_invariants(&self) -> Vec<u64> {
        let mat: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        chain_from_diagonal(smith_diagonal(mat))
    }

    /// Invariant factors (descending, all > 1) of the subgroup itself.
    pub fn subgroup_invariants(&self) -> Vec<u64> {
        let l = self.moduli.len();
        // express n_k e_k in the row basis
        let mut mat = Vec::with_capacity(l);
        for k in 0..l {
            let mut x = vec![0i128; l];
            for j in 0..l {
                let target = if j == k { self.moduli[k] as i128 } else { 0 };
                let mut acc = target;
                for i in 0..j {
                    acc -= x[i] * self.rows[i][j] as i128;
                }
                let d = self.rows[j][j] as i128;
                debug_assert_eq!(acc % d, 0);
                x[j] = acc / d;
            }
            mat.push(x);
        }
        chain_from_diagonal(smith_diagonal(mat))
    }
}

fn chain_from_diagonal(diag: Vec<u64>) -> Vec<u64> {
    let mut out: Vec<u64> = diag.into_iter().filter(|&d| d > 1).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Diagonal of the Smith normal form of an integer matrix (absolute values,
/// ascending along the divisibility chain; zeros for rank deficiency).
pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<u64> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_entry(&a, t) else {
            diag.extend(std::iter::repeat(0).take(m.min(n) - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for i in t..m {
                        a[i][j] -= q * a[i][t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                let p = a[t][t];
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..n {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let (pi, pj) = min_entry_cross(&a, t).expect("pivot row or column nonzero");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
    }
    diag
}

fn min_entry(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.len() {
        for j in t..a[i].len() {
            if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_entry_cross(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut consider = |i: usize, j: usize| {
        if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
            best = Some((i, j));
        }
    };
    for i in t..a.len() {
        consider(i, t);
    }
    for j in t..a[t].len() {
        consider(t, j);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![4, 0], vec![0, 6]]), vec![2, 12]);
        assert_eq!(smith_diagonal(vec![vec![0, 0], vec![0, 0]]), vec![0, 0]);
    }

    #[test]
    fn hnf_of_subgroup() {
        // <(1,1)> in Z/4 ⊕ Z/2
        let l = ModLattice::span(&[4, 2], [[1u64, 1].as_slice()]);
        assert_eq!(l.order(), 4);
        assert!(l.contains(&[2, 0]));
        assert!(!l.contains(&[1, 0]));
        assert_eq!(l.subgroup_invariants(), vec![4]);
        assert_eq!(l.quotient_invariants(), vec![2]);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = ModLattice::span(&[4, 4], [[1u64, 2].as_slice(), [0, 2].as_slice()]);
        let b = ModLattice::span(&[4, 4], [[1u64, 0].as_slice(), [2, 2].as_slice()]);
        assert_eq!(a, b);
        assert_eq!(a.order(), 8);
        assert_eq!(a.subgroup_invariants(), vec![4, 2]);
    }
}
