//! Polynomial arithmetic and complete factorization over prime fields F_p.
//!
//! Coefficients are stored lowest degree first. The zero polynomial is the
//! empty coefficient vector. Factorization is the usual pipeline: squarefree
//! decomposition, distinct-degree splitting via x^(p^d) - x, then seeded
//! equal-degree splitting (Cantor-Zassenhaus; trace map in characteristic 2).

use crate::arith::{self, invmod, is_prime, mulmod, submod};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::fmt;

pub const MAX_MODULUS: u64 = 1 << 31;

/// Integer polynomial with arbitrary-precision coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::new(out)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact division; panics if the division is not exact (internal use:
    /// cyclotomic polynomial construction, where exactness is guaranteed).
    pub fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dlead = divisor.leading_coeff();
        let dd = divisor.degree();
        if rem.len() < divisor.coeffs.len() {
            assert!(self.is_zero(), "inexact polynomial division");
            return IntPoly::zero();
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&rem[i], &dlead);
            assert!(r.is_zero(), "inexact polynomial division");
            quot[i - dd] = q.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &q * dc;
            }
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::new(quot)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Parse from the plain-text form "x^3 - 2", "2x^2 + x - 1", "-x + 5".
    pub fn parse(input: &str) -> Result<IntPoly> {
        let err = |reason: &str| Error::PolyParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<(BigInt, usize)> = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            if i >= bytes.len() {
                return Err(err("trailing sign"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff = if i > start {
                sign * s[start..i].parse::<BigInt>().map_err(|e| err(&e.to_string()))?
            } else {
                sign
            };
            let mut exp = 0usize;
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == estart {
                        return Err(err("missing exponent after '^'"));
                    }
                    exp = s[estart..i]
                        .parse::<usize>()
                        .map_err(|e| err(&e.to_string()))?;
                }
            } else if i == start {
                return Err(err("expected coefficient or variable"));
            }
            terms.push((coeff, exp));
        }
        let max_exp = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); max_exp + 1];
        for (c, e) in terms {
            coeffs[e] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomial over F_p, coefficients in [0, p), lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Result<Self> {
        check_modulus(p)?;
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(PolyModP { p, coeffs })
    }

    fn raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PolyModP { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        PolyModP { p, coeffs: vec![0, 1] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::raw(p, vec![c % p])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    fn check_same(&self, other: &PolyModP) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyModP) -> PolyModP {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] = arith::addmod(out[i], c, self.p);
        }
        PolyModP::raw(self.p, out)
    }

    pub fn sub(&self, other: &PolyModP) -> PolyModP {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] = submod(out[i], c, self.p);
        }
        PolyModP::raw(self.p, out)
    }

    pub fn mul(&self, other: &PolyModP) -> PolyModP {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return PolyModP::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        PolyModP::raw(self.p, out)
    }

    pub fn scale(&self, k: u64) -> PolyModP {
        let k = k % self.p;
        PolyModP::raw(
            self.p,
            self.coeffs.iter().map(|&c| mulmod(c, k, self.p)).collect(),
        )
    }

    pub fn monic(&self) -> PolyModP {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(invmod(self.leading_coeff(), self.p))
    }

    pub fn divrem(&self, divisor: &PolyModP) -> (PolyModP, PolyModP) {
        debug_assert_eq!(self.p, divisor.p);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (PolyModP::zero(self.p), self.clone());
        }
        let p = self.p;
        let dinv = invmod(divisor.leading_coeff(), p);
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = mulmod(rem[i], dinv, p);
            quot[i - dd] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = submod(rem[i - dd + j], mulmod(q, dc, p), p);
            }
        }
        (PolyModP::raw(p, quot), PolyModP::raw(p, rem))
    }

    pub fn rem(&self, divisor: &PolyModP) -> PolyModP {
        self.divrem(divisor).1
    }

    pub fn derivative(&self) -> PolyModP {
        if self.coeffs.len() <= 1 {
            return PolyModP::zero(self.p);
        }
        PolyModP::raw(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// self^exp mod modulus, exp a machine word.
    pub fn powmod(&self, mut exp: u64, modulus: &PolyModP) -> PolyModP {
        let mut base = self.rem(modulus);
        let mut acc = PolyModP::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// self^exp mod modulus with an arbitrary-precision exponent.
    pub fn powmod_big(&self, exp: &BigUint, modulus: &PolyModP) -> PolyModP {
        let mut acc = PolyModP::one(self.p);
        let mut base = self.rem(modulus);
        for i in 0..exp.bits() {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
        }
        acc
    }

    /// x^(p^d) mod self, by applying exponent p a total of d times.
    pub fn frobenius_power(&self, d: u32) -> PolyModP {
        let mut h = PolyModP::x(self.p).rem(self);
        for _ in 0..d {
            h = h.powmod(self.p, self);
        }
        h
    }
}

fn check_modulus(p: u64) -> Result<()> {
    if p >= MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Reduce an integer polynomial mod p. The degree may drop.
pub fn reduce_mod_p(f: &IntPoly, p: u64) -> Result<PolyModP> {
    check_modulus(p)?;
    let pb = BigInt::from(p);
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = num_integer::Integer::mod_floor(c, &pb);
            u64::try_from(&r).expect("residue fits u64")
        })
        .collect();
    Ok(PolyModP::raw(p, coeffs))
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd_mod_p(a: &PolyModP, b: &PolyModP) -> Result<PolyModP> {
    a.check_same(b)?;
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Complete factorization of a nonzero polynomial over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationModP {
    pub p: u64,
    /// Unit scalar in F_p (the leading coefficient of the input).
    pub unit: u64,
    /// Monic irreducible factors with multiplicities, sorted for determinism.
    pub factors: Vec<(PolyModP, u32)>,
}

impl FactorizationModP {
    /// Multiply the factorization back out (including the unit).
    pub fn product(&self) -> PolyModP {
        let mut acc = PolyModP::constant(self.p, self.unit);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    pub fn distinct_linear_count(&self) -> usize {
        self.factors.iter().filter(|(g, _)| g.degree() == 1).count()
    }
}

// Small deterministic PRNG so equal-degree splitting is reproducible from the
// seed alone, independent of platform and std RNG changes.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

fn random_poly(rng: &mut SplitMix64, p: u64, deg_below: usize) -> PolyModP {
    let coeffs = (0..deg_below).map(|_| rng.next() % p).collect();
    PolyModP::raw(p, coeffs)
}

/// p-th root of f, valid when f'(x) = 0 i.e. f is a polynomial in x^p.
/// Over F_p the coefficients are fixed by Frobenius, so the root just
/// takes every p-th coefficient.
fn pth_root(f: &PolyModP) -> PolyModP {
    let p = f.modulus() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    PolyModP::raw(f.modulus(), coeffs)
}

/// Squarefree decomposition of a monic f: list of (monic squarefree part, multiplicity).
fn squarefree_decomposition(f: &PolyModP) -> Vec<(PolyModP, u32)> {
    let mut out = Vec::new();
    let mut stack = vec![(f.clone(), 1u32)];
    while let Some((f, e)) = stack.pop() {
        if f.degree() == 0 {
            continue;
        }
        let fp = f.derivative();
        if fp.is_zero() {
            stack.push((pth_root(&f), e * f.modulus() as u32));
            continue;
        }
        let mut g = gcd_mod_p(&f, &fp).expect("same modulus");
        let mut w = f.divrem(&g).0;
        let mut j = 1u32;
        while w.degree() > 0 {
            let y = gcd_mod_p(&w, &g).expect("same modulus");
            let z = w.divrem(&y).0;
            if z.degree() > 0 {
                out.push((z.monic(), e * j));
            }
            w = y;
            g = g.divrem(&w).0;
            j += 1;
        }
        if g.degree() > 0 {
            stack.push((pth_root(&g), e * f.modulus() as u32));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree f: list of (product of
/// irreducible factors of degree d, d).
fn distinct_degree_split(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.modulus();
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut h = PolyModP::x(p).rem(&f);
    let mut d = 0usize;
    while f.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(p, &f);
        let g = gcd_mod_p(&h.sub(&PolyModP::x(p).rem(&f)), &f).expect("same modulus");
        if g.degree() > 0 {
            out.push((g.clone(), d));
            f = f.divrem(&g).0;
            h = h.rem(&f);
        }
    }
    if f.degree() > 0 {
        let deg = f.degree();
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting: f is monic squarefree, a product of irreducibles
/// all of degree d. Cantor-Zassenhaus for odd p, trace map for p = 2.
fn equal_degree_split(f: &PolyModP, d: usize, rng: &mut SplitMix64, out: &mut Vec<PolyModP>) {
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let p = f.modulus();
    loop {
        let a = random_poly(rng, p, f.degree().max(2));
        if a.degree() == 0 || a.is_zero() {
            continue;
        }
        let g0 = gcd_mod_p(&a, f).expect("same modulus");
        if g0.degree() > 0 && g0.degree() < f.degree() {
            let h = f.divrem(&g0).0;
            equal_degree_split(&g0, d, rng, out);
            equal_degree_split(&h, d, rng, out);
            return;
        }
        let b = if p == 2 {
            // Trace map over F_2: a + a^2 + a^4 + ... + a^(2^(d-1))
            let mut acc = PolyModP::zero(p);
            let mut t = a.rem(f);
            for _ in 0..d {
                acc = acc.add(&t);
                t = t.mul(&t).rem(f);
            }
            acc
        } else {
            // a^((p^d - 1)/2) - 1
            let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            let t = a.powmod_big(&exp, f);
            t.sub(&PolyModP::one(p))
        };
        let g = gcd_mod_p(&b, f).expect("same modulus");
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g).0;
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles. Deterministic given
/// (f, p, seed).
pub fn factor_mod_p(f: &PolyModP, seed: u64) -> Result<FactorizationModP> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.modulus();
    let unit = f.leading_coeff();
    let monic = f.monic();
    let mut rng = SplitMix64(seed);
    let mut factors: Vec<(PolyModP, u32)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&monic) {
        for (prod, d) in distinct_degree_split(&sqf) {
            let mut irreducibles = Vec::new();
            equal_degree_split(&prod, d, &mut rng, &mut irreducibles);
            for g in irreducibles {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(FactorizationModP { p, unit, factors })
}

/// True iff f is a product of deg(f) distinct monic linear factors mod p,
/// i.e. f divides x^p - x. Fast path that avoids full factorization.
pub fn splits_into_distinct_linear(f: &PolyModP) -> bool {
    assert!(!f.is_zero(), "zero polynomial");
    if f.degree() == 0 {
        return true;
    }
    let p = f.modulus();
    let xp = PolyModP::x(p).powmod(p, f);
    let x = PolyModP::x(p).rem(f);
    xp == x
}
