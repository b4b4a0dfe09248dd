//! Classification of how a rational prime factors in the ring of integers:
//! the (e_i, f_i) pairs, the count g of primes above p, and the derived
//! splits-completely / ramified flags.
//!
//! Quadratic and cyclotomic fields are classified exactly for every prime.
//! General monogenic fields use factorization of the defining polynomial
//! mod p, which is trusted only for p not dividing disc(f); the finitely
//! many bad primes are reported as Indeterminate rather than guessed.

use crate::arith::{is_prime, order_mod};
use crate::characters::kronecker;
use crate::error::{Error, Result};
use crate::ffpoly::{factor_mod_p, reduce_mod_p, splits_into_distinct_linear};
use crate::numfield::{FieldKind, NumberField};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

pub use crate::arith::order_mod as multiplicative_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitStatus {
    Exact,
    Indeterminate,
}

/// How a rational prime p factors in O_K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    pub p: u64,
    /// One (e_i, f_i) per prime ideal above p. Sum of e_i * f_i = degree
    /// whenever status is Exact.
    pub pairs: Vec<(u32, u32)>,
    pub status: SplitStatus,
}

impl SplittingType {
    pub fn g(&self) -> usize {
        self.pairs.len()
    }

    pub fn splits_completely(&self, degree: u32) -> bool {
        self.status == SplitStatus::Exact
            && self.pairs.len() as u32 == degree
            && self.pairs.iter().all(|&(e, f)| e == 1 && f == 1)
    }

    pub fn ramified(&self) -> bool {
        self.pairs.iter().any(|&(e, _)| e > 1)
    }

    pub fn sum_ef(&self) -> u32 {
        self.pairs.iter().map(|&(e, f)| e * f).sum()
    }
}

fn divides_disc(disc: &BigInt, p: u64) -> bool {
    (disc % BigInt::from(p)).is_zero()
}

/// Classify the factorization of p in O_K.
pub fn split_prime(k: &NumberField, p: u64) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match &k.kind {
        FieldKind::Quadratic(q) => {
            let d = q.fundamental_discriminant;
            let pairs = if d.unsigned_abs() % p == 0 {
                vec![(2, 1)]
            } else {
                match kronecker(d, p)? {
                    1 => vec![(1, 1), (1, 1)],
                    -1 => vec![(1, 2)],
                    _ => vec![(2, 1)],
                }
            };
            Ok(SplittingType {
                p,
                pairs,
                status: SplitStatus::Exact,
            })
        }
        FieldKind::Cyclotomic(c) => {
            let m = c.conductor;
            if m % p != 0 {
                let f = order_mod(p, m)? as u32;
                let g = c.phi_m as u32 / f;
                Ok(SplittingType {
                    p,
                    pairs: vec![(1, f); g as usize],
                    status: SplitStatus::Exact,
                })
            } else {
                // m = p^a * m', e = phi(p^a), f = ord of p mod m', g = phi(m')/f
                let mut m_prime = m;
                let mut pa = 1u64;
                while m_prime % p == 0 {
                    m_prime /= p;
                    pa *= p;
                }
                let e = (crate::arith::euler_phi(pa)) as u32;
                let f = if m_prime == 1 {
                    1
                } else {
                    order_mod(p, m_prime)? as u32
                };
                let g = (crate::arith::euler_phi(m_prime) as u32).max(1) / f;
                Ok(SplittingType {
                    p,
                    pairs: vec![(e, f); g as usize],
                    status: SplitStatus::Exact,
                })
            }
        }
        FieldKind::General { .. } => {
            if divides_disc(&k.poly_discriminant, p) {
                return Ok(SplittingType {
                    p,
                    pairs: vec![],
                    status: SplitStatus::Indeterminate,
                });
            }
            let fp = reduce_mod_p(&k.defining_poly, p)?;
            let fac = factor_mod_p(&fp, 0)?;
            let pairs = fac
                .factors
                .iter()
                .map(|(g, mult)| (*mult, g.degree() as u32))
                .collect();
            Ok(SplittingType {
                p,
                pairs,
                status: SplitStatus::Exact,
            })
        }
    }
}

/// True iff p splits completely in K: g = n, all e_i = f_i = 1.
///
/// For General fields this uses the fast distinct-linear-factors test on
/// f mod p instead of a full factorization; Indeterminate primes return
/// false (density experiments count them separately).
pub fn splits_completely(k: &NumberField, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match &k.kind {
        FieldKind::Quadratic(q) => Ok(kronecker(q.fundamental_discriminant, p)? == 1),
        FieldKind::Cyclotomic(c) => Ok(c.conductor % p != 0 && p % c.conductor == 1),
        FieldKind::General { .. } => {
            if divides_disc(&k.poly_discriminant, p) {
                return Ok(false);
            }
            let fp = reduce_mod_p(&k.defining_poly, p)?;
            if fp.degree() != k.degree as usize {
                return Ok(false);
            }
            Ok(splits_into_distinct_linear(&fp))
        }
    }
}

/// True iff classification of p is refused (General kind, p | disc(f)).
pub fn is_indeterminate(k: &NumberField, p: u64) -> bool {
    matches!(k.kind, FieldKind::General { .. }) && divides_disc(&k.poly_discriminant, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic_field, field_from_poly, quadratic_field};
    use crate::ffpoly::IntPoly;
    use crate::sieve::primes_up_to_uncached;

    #[test]
    fn gaussian_examples() {
        let k = quadratic_field(-1).unwrap();
        let s = split_prime(&k, 5).unwrap();
        assert_eq!(s.pairs, vec![(1, 1), (1, 1)]);
        assert!(s.splits_completely(2));
        let s = split_prime(&k, 3).unwrap();
        assert_eq!(s.pairs, vec![(1, 2)]);
        let s = split_prime(&k, 2).unwrap();
        assert_eq!(s.pairs, vec![(2, 1)]);
        assert!(s.ramified());
        assert!(split_prime(&k, 6).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        let k = cyclotomic_field(5).unwrap();
        let s = split_prime(&k, 11).unwrap();
        assert_eq!(s.pairs, vec![(1, 1); 4]);
        assert!(s.splits_completely(4));
        // 2 has order 4 mod 5: inert
        let s = split_prime(&k, 2).unwrap();
        assert_eq!(s.pairs, vec![(1, 4)]);
        // ramified: p = 5, m = 5 -> e = phi(5) = 4
        let s = split_prime(&k, 5).unwrap();
        assert_eq!(s.pairs, vec![(4, 1)]);
    }

    #[test]
    fn splits_completely_examples() {
        let gauss = quadratic_field(-1).unwrap();
        assert!(splits_completely(&gauss, 13).unwrap());
        assert!(!splits_completely(&gauss, 7).unwrap());
        let cubic = field_from_poly(&IntPoly::from_i64(&[-2, 0, 0, 1]), false, false).unwrap();
        assert!(splits_completely(&cubic, 31).unwrap());
        assert!(!splits_completely(&cubic, 5).unwrap());
        // indeterminate primes (2, 3 divide disc = -108) report false
        assert!(!splits_completely(&cubic, 2).unwrap());
        assert!(is_indeterminate(&cubic, 2));
        assert!(is_indeterminate(&cubic, 3));
        assert!(!is_indeterminate(&cubic, 5));
    }

    #[test]
    fn sum_ef_equals_degree() {
        let fields = [
            quadratic_field(-1).unwrap(),
            quadratic_field(2).unwrap(),
            cyclotomic_field(5).unwrap(),
            cyclotomic_field(7).unwrap(),
            field_from_poly(&IntPoly::from_i64(&[-2, 0, 0, 1]), false, false).unwrap(),
            field_from_poly(&IntPoly::from_i64(&[-2, 0, 0, 0, 1]), false, false).unwrap(),
        ];
        for k in &fields {
            for &p in primes_up_to_uncached(2000).iter() {
                let s = split_prime(k, p).unwrap();
                if s.status == SplitStatus::Exact {
                    assert_eq!(s.sum_ef(), k.degree, "{} p={p}", k.label);
                }
                // derived-flag agreement
                assert_eq!(
                    s.splits_completely(k.degree),
                    splits_completely(k, p).unwrap(),
                    "{} p={p}",
                    k.label
                );
            }
        }
    }

    #[test]
    fn cyclotomic4_agrees_with_gaussian() {
        let z4 = cyclotomic_field(4).unwrap();
        let gauss = quadratic_field(-1).unwrap();
        for &p in primes_up_to_uncached(10_000).iter() {
            let a = split_prime(&z4, p).unwrap();
            let b = split_prime(&gauss, p).unwrap();
            assert_eq!(a.pairs, b.pairs, "p={p}");
        }
    }

    #[test]
    fn cyclotomic_split_iff_one_mod_m() {
        for m in 3..=30u64 {
            let k = cyclotomic_field(m).unwrap();
            for &p in primes_up_to_uncached(10_000).iter() {
                if m % p == 0 {
                    continue;
                }
                assert_eq!(
                    splits_completely(&k, p).unwrap(),
                    p % m == 1,
                    "m={m} p={p}"
                );
            }
        }
    }

    #[test]
    fn quadratic_split_iff_kronecker_one() {
        for d in [-10i64, -5, -2, -1, 2, 3, 5, 7, 10] {
            let k = quadratic_field(d).unwrap();
            let dd = match &k.kind {
                FieldKind::Quadratic(q) => q.fundamental_discriminant,
                _ => unreachable!(),
            };
            for &p in primes_up_to_uncached(10_000).iter() {
                if dd.unsigned_abs() % p == 0 {
                    continue;
                }
                assert_eq!(
                    splits_completely(&k, p).unwrap(),
                    kronecker(dd, p).unwrap() == 1,
                    "d={d} p={p}"
                );
            }
        }
    }

    #[test]
    fn indeterminate_primes_divide_disc() {
        let cubic = field_from_poly(&IntPoly::from_i64(&[-2, 0, 0, 1]), false, false).unwrap();
        let bad: Vec<u64> = primes_up_to_uncached(1000)
            .iter()
            .copied()
            .filter(|&p| is_indeterminate(&cubic, p))
            .collect();
        assert_eq!(bad, vec![2, 3]); // disc = -108 = -2^2 * 3^3
    }
}
