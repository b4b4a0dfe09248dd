//! Number fields in three kinds: general monogenic, quadratic, cyclotomic.
//!
//! The base field is always Q and the ring of integers is represented
//! implicitly through the order Z[alpha]. Quadratic and cyclotomic fields
//! carry exact data (fundamental discriminant, conductor) so every prime can
//! be classified; general fields fall back on polynomial factorization and
//! refuse to classify primes dividing the polynomial discriminant.

use crate::arith::{self, euler_phi, is_prime};
use crate::error::{Error, Result};
use crate::ffpoly::{factor_mod_p, reduce_mod_p, IntPoly};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticData {
    /// Squarefree radicand, not 0 or 1.
    pub d: i64,
    /// Fundamental discriminant: d if d = 1 mod 4, else 4d.
    pub fundamental_discriminant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicData {
    pub conductor: u64,
    pub phi_m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    General {
        /// Whether irreducibility over Q was certified by an irreducible
        /// modular reduction.
        certified: bool,
    },
    Quadratic(QuadraticData),
    Cyclotomic(CyclotomicData),
}

#[derive(Clone, Debug)]
pub struct NumberField {
    pub kind: FieldKind,
    pub defining_poly: IntPoly,
    pub degree: u32,
    pub poly_discriminant: BigInt,
    pub is_normal_over_q: bool,
    pub label: String,
    /// Caller-supplied class number, used only by the residue consistency
    /// check. Never computed here.
    pub class_number: Option<u32>,
}

impl NumberField {
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn with_class_number(mut self, h: u32) -> Self {
        self.class_number = Some(h);
        self
    }

    /// The degree-1 field Q itself, as a General field with defining poly x.
    pub fn rationals() -> Self {
        field_from_poly(&IntPoly::from_i64(&[0, 1]), true, false)
            .expect("x is irreducible")
            .with_label("Q")
            .with_class_number(1)
    }
}

/// disc(f) = (-1)^(n(n-1)/2) * resultant(f, f') for monic f.
pub fn poly_discriminant(f: &IntPoly) -> Result<BigInt> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree();
    if n == 0 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    if n == 1 {
        return Ok(BigInt::from(1));
    }
    let res = resultant(f, &f.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(BigInt::from(sign) * res)
}

/// Resultant via Bareiss fraction-free elimination on the Sylvester matrix.
/// Exact in arbitrary precision.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let n = f.degree();
    let m = g.degree();
    if n == 0 {
        return f.leading_coeff().pow(m as u32);
    }
    if m == 0 {
        return g.leading_coeff().pow(n as u32);
    }
    let size = n + m;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    // m rows of f's coefficients (highest first), then n rows of g's.
    for row in 0..m {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            a[row][row + k] = c.clone();
        }
    }
    for row in 0..n {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            a[m + row][row + k] = c.clone();
        }
    }
    // Bareiss: divisions are exact; pivoting by row swap flips the sign.
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
                let _ = r;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    BigInt::from(sign) * a[size - 1][size - 1].clone()
}

/// Construct a general monogenic field from a monic integer polynomial.
///
/// Irreducibility over Q is certified by finding a prime p <= 200 not
/// dividing disc(f) with f irreducible mod p. With `allow_uncertified` the
/// construction proceeds without a certificate and the field is marked
/// uncertified.
pub fn field_from_poly(
    f: &IntPoly,
    assert_normal: bool,
    allow_uncertified: bool,
) -> Result<NumberField> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() < 1 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    let disc = poly_discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let certified = irreducibility_certificate(f, &disc).is_some();
    if !certified && !allow_uncertified {
        return Err(Error::NoIrreducibilityCertificate(f.to_string()));
    }
    Ok(NumberField {
        kind: FieldKind::General { certified },
        degree: f.degree() as u32,
        defining_poly: f.clone(),
        poly_discriminant: disc,
        is_normal_over_q: assert_normal,
        label: f.to_string(),
        class_number: None,
    })
}

fn irreducibility_certificate(f: &IntPoly, disc: &BigInt) -> Option<u64> {
    (2u64..=200)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            if (disc % BigInt::from(p)).is_zero() {
                return false;
            }
            let fp = match reduce_mod_p(f, p) {
                Ok(fp) => fp,
                Err(_) => return false,
            };
            if fp.degree() != f.degree() {
                return false;
            }
            match factor_mod_p(&fp, 0) {
                Ok(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
                Err(_) => false,
            }
        })
}

/// Quadratic field Q(sqrt(d)) for squarefree d.
pub fn quadratic_field(d: i64) -> Result<NumberField> {
    if d == 0 || d == 1 {
        return Err(Error::BadRadicand(d));
    }
    if !arith::is_squarefree_i64(d) {
        return Err(Error::NotSquarefree(d));
    }
    let fundamental = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    let f = IntPoly::from_i64(&[-d, 0, 1]); // x^2 - d
    let disc = poly_discriminant(&f)?;
    Ok(NumberField {
        kind: FieldKind::Quadratic(QuadraticData {
            d,
            fundamental_discriminant: fundamental,
        }),
        defining_poly: f,
        degree: 2,
        poly_discriminant: disc,
        is_normal_over_q: true,
        label: format!("Q(sqrt({d}))"),
        class_number: None,
    })
}

/// m-th cyclotomic polynomial by iterated exact division of x^m - 1 by the
/// lower cyclotomic polynomials.
pub fn cyclotomic_polynomial(m: u64) -> IntPoly {
    assert!(m >= 1);
    let mut cache: Vec<Option<IntPoly>> = vec![None; m as usize + 1];
    for k in 1..=m {
        let mut num = IntPoly::monomial(k as usize).sub(&IntPoly::one()); // x^k - 1
        for d in 1..k {
            if k % d == 0 {
                num = num.exact_div(cache[d as usize].as_ref().unwrap());
            }
        }
        cache[k as usize] = Some(num);
    }
    cache[m as usize].take().unwrap()
}

/// Cyclotomic field Q(zeta_m), m >= 3.
pub fn cyclotomic_field(m: u64) -> Result<NumberField> {
    if m < 3 {
        return Err(Error::BadConductor(m));
    }
    let phi_m = euler_phi(m);
    let f = cyclotomic_polynomial(m);
    debug_assert_eq!(f.degree() as u64, phi_m);
    let disc = poly_discriminant(&f)?;
    Ok(NumberField {
        kind: FieldKind::Cyclotomic(CyclotomicData { conductor: m, phi_m }),
        defining_poly: f,
        degree: phi_m as u32,
        poly_discriminant: disc,
        is_normal_over_q: true,
        label: format!("Q(zeta_{m})"),
        class_number: None,
    })
}
