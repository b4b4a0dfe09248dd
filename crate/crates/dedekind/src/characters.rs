//! Quadratic Dirichlet characters via the Kronecker symbol, and L-function
//! evaluation. For a quadratic field of fundamental discriminant D this gives
//! the factorization zeta_K = zeta * L(s, chi_D).

use crate::error::{Error, Result};
use crate::numfield::{FieldKind, NumberField};
use crate::zetaseries::{riemann_extended, zeta_dirichlet, IdealCountTable, ZetaMethod, ZetaValue};
use num_complex::Complex64;

/// Kronecker symbol (a|n) for n >= 1.
pub fn kronecker(a: i64, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("kronecker symbol needs n >= 1".into()));
    }
    let mut a = a;
    let mut n = n as i64;
    let mut result = 1i64;
    // strip factors of 2 from n, using the (a|2) supplement
    if n % 2 == 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        while n % 2 == 0 {
            n /= 2;
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    // now n odd and positive; standard Jacobi with reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    Ok(if n == 1 { result } else { 0 })
}

/// A primitive real character chi_D attached to a fundamental discriminant D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCharacter {
    d: i64,
    /// chi(n) for n in [0, |D|), precomputed once.
    period: Vec<i8>,
}

fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => crate::arith::is_squarefree_i64(d),
        0 => {
            let q = d / 4;
            let r = q.rem_euclid(4);
            (r == 2 || r == 3) && crate::arith::is_squarefree_i64(q)
        }
        _ => false,
    }
}

impl QuadraticCharacter {
    pub fn new(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::NotFundamentalDiscriminant(d));
        }
        let m = d.unsigned_abs();
        let period = (0..m)
            .map(|n| {
                if n == 0 {
                    0
                } else {
                    kronecker(d, n).unwrap() as i8
                }
            })
            .collect();
        Ok(QuadraticCharacter { d, period })
    }

    pub fn for_field(k: &NumberField) -> Result<Self> {
        match &k.kind {
            FieldKind::Quadratic(q) => Self::new(q.fundamental_discriminant),
            _ => Err(Error::Domain(format!(
                "field {} is not quadratic",
                k.label
            ))),
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        self.d.unsigned_abs()
    }

    #[inline]
    pub fn eval(&self, n: u64) -> i64 {
        self.period[(n % self.modulus()) as usize] as i64
    }
}

/// L(s, chi_D) by direct summation to N terms.
///
/// For s > 1 a plain sum is used. For 0 < s <= 1 the sum is taken over full
/// periods first (the character sums to zero over a period, so the block sums
/// are absolutely bounded). Tail bound |D| * N^(-s) by partial summation.
pub fn l_value(chi: &QuadraticCharacter, s: f64, terms: u64) -> Result<ZetaValue> {
    if s <= 0.0 {
        return Err(Error::Domain(format!("l_value needs s > 0, got {s}")));
    }
    let m = chi.modulus();
    let n_max = terms.max(m);
    let mut sum = 0.0f64;
    if s > 1.0 {
        for n in 1..=n_max {
            let c = chi.eval(n);
            if c != 0 {
                sum += c as f64 * (n as f64).powf(-s);
            }
        }
    } else {
        // full-period blocks
        let blocks = n_max / m;
        for b in 0..blocks {
            let mut block = 0.0f64;
            for r in 1..=m {
                let n = b * m + r;
                let c = chi.eval(n);
                if c != 0 {
                    block += c as f64 * (n as f64).powf(-s);
                }
            }
            sum += block;
        }
    }
    let effective_n = if s > 1.0 { n_max } else { (n_max / m) * m };
    let bound = m as f64 * (effective_n as f64).powf(-s);
    Ok(ZetaValue {
        s: Complex64::new(s, 0.0),
        value: Complex64::new(sum, 0.0),
        truncation_bound: bound,
        method: ZetaMethod::DirichletSeries,
    })
}

/// Result of the zeta_K = zeta * L factorization check for a quadratic field.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub s: f64,
    pub zeta_k: f64,
    pub zeta_times_l: f64,
    pub delta: f64,
    pub bound_sum: f64,
    pub pass: bool,
}

/// Checks |zeta_K(s) - zeta(s) * L(s, chi_D)| against the combined
/// truncation bounds, for a quadratic field with its ideal-count table.
pub fn factorization_check(
    k: &NumberField,
    table: &IdealCountTable,
    s: f64,
) -> Result<FactorizationReport> {
    let chi = QuadraticCharacter::for_field(k)?;
    let zk = zeta_dirichlet(table, Complex64::new(s, 0.0))?;
    let zeta = riemann_extended(Complex64::new(s, 0.0))?;
    let lcap = l_value(&chi, s, 2_000_000)?;
    let product = zeta.value.re * lcap.value.re;
    // |z*l - (z+dz)(l+dl)| <= |z| dl + |l| dz + dz dl
    let prod_bound = zeta.value.norm() * lcap.truncation_bound
        + lcap.value.norm() * zeta.truncation_bound
        + zeta.truncation_bound * lcap.truncation_bound;
    let delta = (zk.value.re - product).abs();
    let bound_sum = zk.truncation_bound + prod_bound;
    Ok(FactorizationReport {
        s,
        zeta_k: zk.value.re,
        zeta_times_l: product,
        delta,
        bound_sum,
        pass: delta <= bound_sum,
    })
}
