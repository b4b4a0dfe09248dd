//! Scalar modular arithmetic on machine words.

use crate::error::{Error, Result};

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Modular inverse of `a` mod prime `p`.
pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    // These bases are a known deterministic set for all n < 2^64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial-division factorization, adequate for the conductor/discriminant
/// magnitudes used here.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn is_squarefree_i64(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        while n % p == 0 {
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Least k >= 1 with a^k = 1 mod m. Requires gcd(a, m) = 1.
pub fn order_mod(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Domain(format!("order_mod needs m >= 2, got {m}")));
    }
    let a = a % m;
    if gcd_u64(a, m) != 1 {
        return Err(Error::NotCoprime(a, m));
    }
    // The order divides phi(m); scan its divisors.
    let phi = euler_phi(m);
    let mut best = phi;
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= phi {
        if phi % d == 0 {
            divs.push(d);
            divs.push(phi / d);
        }
        d += 1;
    }
    divs.sort_unstable();
    for k in divs {
        if k < best && powmod(a, k, m) == 1 {
            best = k;
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (2..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_mod(11, 5).unwrap(), 1);
        assert_eq!(order_mod(2, 5).unwrap(), 4);
        assert_eq!(order_mod(7, 4).unwrap(), 2);
    }

    #[test]
    fn order_rejects_common_factor() {
        assert!(order_mod(6, 4).is_err());
    }

    #[test]
    fn phi_matches_naive() {
        for n in 1..200u64 {
            let naive = (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), naive, "phi({n})");
        }
    }

    #[test]
    fn squarefree_check() {
        assert!(is_squarefree_i64(-1));
        assert!(is_squarefree_i64(5));
        assert!(!is_squarefree_i64(12));
        assert!(!is_squarefree_i64(0));
    }
}
