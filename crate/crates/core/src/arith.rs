//! Small-integer number theory used throughout the crate.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended Euclid on signed values: returns `(g, x, y)` with `g = x*a + y*b`
/// and `g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Least non-negative residue.
#[inline]
pub fn modp(a: i64, m: i64) -> i64 {
    let r = a % m;
    if r < 0 {
        r + m
    } else {
        r
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(modp(a, m), m);
    (g == 1).then(|| modp(x, m))
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Exponent of `p` in `n` (n > 0).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Product of the distinct primes dividing `n`.
pub fn radical_of(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

/// All partitions of `n` as weakly decreasing part lists, in reverse
/// lexicographic order (`[n]` first).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn pow(p: u64, e: u32) -> u64 {
    p.pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(g, gcd(a.unsigned_abs(), b.unsigned_abs()) as i64);
                assert_eq!(x * a + y * b, g);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn factorize_roundtrip() {
        for n in 1..2000u64 {
            let f = factorize(n);
            assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 16), Some(11));
        assert_eq!(mod_inverse(2, 16), None);
        assert_eq!(mod_inverse(5, 1), Some(0));
    }
}
