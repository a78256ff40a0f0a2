//! Hermite normal forms of full-rank lattices `diag(m) Z^k <= L <= Z^k`.
//!
//! A subgroup of `Z_{m_1} + ... + Z_{m_k}` is identified with its preimage
//! lattice in `Z^k`. The lattice always contains `diag(m)`, so every entry can
//! be kept reduced and all arithmetic fits comfortably in `i64`.

use crate::arith::{ext_gcd, modp};

/// Upper-triangular basis, row-major `k x k`. Row `i` has pivot `d_i > 0` in
/// column `i` with `d_i | m_i`. After [`Hnf::normalize`] entries above each
/// pivot lie in `[0, d_j)` and the basis is the unique canonical one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Hnf {
    k: usize,
    rows: Vec<i64>,
}

impl Hnf {
    /// The lattice `diag(m)`, i.e. the zero subgroup.
    pub fn zero(moduli: &[i64]) -> Self {
        let k = moduli.len();
        let mut rows = vec![0; k * k];
        for (i, &m) in moduli.iter().enumerate() {
            rows[i * k + i] = m;
        }
        Hnf { k, rows }
    }

    /// All of `Z^k`, i.e. the whole group.
    pub fn full(k: usize) -> Self {
        let mut rows = vec![0; k * k];
        for i in 0..k {
            rows[i * k + i] = 1;
        }
        Hnf { k, rows }
    }

    pub fn raw(&self) -> &[i64] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn pivot(&self, i: usize) -> i64 {
        self.rows[i * self.k + i]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i * self.k..(i + 1) * self.k]
    }

    /// Add `v` to the lattice. Leaves the basis triangular but not
    /// normalized.
    pub fn insert(&mut self, moduli: &[i64], v: &[i64]) {
        let k = self.k;
        let mut v: Vec<i64> = v.iter().zip(moduli).map(|(&x, &m)| modp(x, m)).collect();
        for i in 0..k {
            let vi = v[i];
            if vi == 0 {
                continue;
            }
            let base = i * k;
            let d = self.rows[base + i];
            if vi % d == 0 {
                let q = vi / d;
                for j in i..k {
                    v[j] = modp(v[j] - q * self.rows[base + j], moduli[j]);
                }
                continue;
            }
            let (g, a, b) = ext_gcd(d, vi);
            let (p, q) = (vi / g, d / g);
            self.rows[base + i] = g;
            v[i] = 0;
            for j in i + 1..k {
                let r = self.rows[base + j];
                let x = v[j];
                self.rows[base + j] = modp(a * r + b * x, moduli[j]);
                v[j] = modp(p * r - q * x, moduli[j]);
            }
        }
    }

    /// Reduce entries above pivots into `[0, d_j)`.
    pub fn normalize(&mut self) {
        let k = self.k;
        for j in 0..k {
            let d = self.rows[j * k + j];
            for i in 0..j {
                let x = self.rows[i * k + j];
                let q = x.div_euclid(d);
                if q != 0 {
                    for l in j..k {
                        self.rows[i * k + l] -= q * self.rows[j * k + l];
                    }
                }
            }
        }
    }

    pub fn contains(&self, moduli: &[i64], v: &[i64]) -> bool {
        let k = self.k;
        let mut v: Vec<i64> = v.iter().zip(moduli).map(|(&x, &m)| modp(x, m)).collect();
        for i in 0..k {
            let vi = v[i];
            if vi == 0 {
                continue;
            }
            let d = self.rows[i * k + i];
            if vi % d != 0 {
                return false;
            }
            let q = vi / d;
            for j in i..k {
                v[j] = modp(v[j] - q * self.rows[i * k + j], moduli[j]);
            }
        }
        true
    }

    /// `[L : diag(m)]`, the order of the subgroup.
    pub fn order(&self, moduli: &[i64]) -> u64 {
        moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| (m / self.pivot(i)) as u64)
            .product()
    }

    /// Lower-right block starting at `start`: the lattice of vectors whose
    /// first `start` coordinates vanish, projected to the remaining ones.
    pub fn block(&self, start: usize) -> Hnf {
        let k = self.k;
        let n = k - start;
        let mut rows = Vec::with_capacity(n * n);
        for i in start..k {
            rows.extend_from_slice(&self.rows[i * k + start..(i + 1) * k]);
        }
        Hnf { k: n, rows }
    }
}

/// Build the lattice generated by `gens` (together with `diag(moduli)`) and
/// normalize it.
pub(crate) fn span<'a>(moduli: &[i64], gens: impl IntoIterator<Item = &'a [i64]>) -> Hnf {
    let mut h = Hnf::zero(moduli);
    for g in gens {
        h.insert(moduli, g);
    }
    h.normalize();
    h
}

/// Graph construction: in `Z_top + Z_bottom` span the given vectors and
/// return the normalized lattice of those with vanishing top part. With
/// vectors `(f(e_i), e_i)` this is `ker f`; with `(k, k)` and `(l, 0)` it is an
/// intersection.
pub(crate) fn bottom_block(top: &[i64], bottom: &[i64], vectors: &[Vec<i64>]) -> Hnf {
    let moduli: Vec<i64> = top.iter().chain(bottom).copied().collect();
    let h = span(&moduli, vectors.iter().map(Vec::as_slice));
    h.block(top.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_of_diagonal_generator() {
        let m = [2, 16];
        let h = span(&m, [&[1i64, 1][..]]);
        assert_eq!(h.order(&m), 16);
        assert!(h.contains(&m, &[0, 2]));
        assert!(!h.contains(&m, &[0, 1]));
    }

    #[test]
    fn canonical_under_generator_order() {
        let m = [4, 8];
        let a = span(&m, [&[1i64, 2][..], &[2, 6][..]]);
        let b = span(&m, [&[2i64, 6][..], &[1, 2][..], &[3, 0][..]]);
        let c = span(&m, [&[2i64, 6][..], &[1, 2][..]]);
        assert_eq!(a, c);
        // (3,0) = 3(1,2) - 3(0,2) already lies in the span
        assert_eq!(a, b);
        let d = span(&m, [&[2i64, 6][..], &[1, 2][..], &[0, 1][..]]);
        assert!(d.order(&m) > a.order(&m));
    }
}
