//! Laurent polynomials in the loop parameter over exact rationals.
//!
//! Every scalar in the diagram algebras is a finite sum `Σ c_k · δ^k` with
//! `c_k ∈ ℚ` and `k ∈ ℤ`. Negative exponents are required by the layer
//! idempotents, whose prefactors are inverse powers of δ. Specialization at a
//! rational value of δ is a separate, explicit operation; it fails only when a
//! negative power meets δ = 0.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Parse `p/q` or a bare integer `p` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator `{num}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator `{den}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

/// Render a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// The value substituted for δ: keep it symbolic or pin a rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaValue {
    Symbolic,
    Rational(BigRational),
}

impl DeltaValue {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "symbolic" {
            Ok(DeltaValue::Symbolic)
        } else {
            Ok(DeltaValue::Rational(parse_rational(s)?))
        }
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Symbolic => write!(f, "symbolic"),
            DeltaValue::Rational(q) => write!(f, "{}", format_rational(q)),
        }
    }
}

/// A Laurent polynomial in δ with rational coefficients.
///
/// Invariant: no zero coefficient is ever stored, so equality of the
/// underlying maps is equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl DeltaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        DeltaPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            let entry = out.coeffs.entry(*k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(k);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = DeltaPoly::zero();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let k = ka + kb;
                let entry = out.coeffs.entry(k).or_insert_with(BigRational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.coeffs.remove(&k);
                }
            }
        }
        out
    }

    /// Multiply by δ^k (exponent shift).
    pub fn shift(&self, k: i64) -> Self {
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Evaluate at a rational δ. Total for δ ≠ 0; for δ = 0 a negative
    /// exponent is a singular-parameter error and positive powers vanish.
    pub fn specialize(&self, delta: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (k, c) in &self.coeffs {
            if delta.is_zero() {
                match k.signum() {
                    -1 => {
                        return Err(Error::SingularParameter(
                            "negative power of δ evaluated at δ = 0".into(),
                        ))
                    }
                    0 => acc += c,
                    _ => {}
                }
            } else {
                acc += c * pow_rational(delta, *k);
            }
        }
        Ok(acc)
    }
}

fn pow_rational(q: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num::pow::pow(q.clone(), k as usize)
    } else {
        num::pow::pow(q.recip(), (-k) as usize)
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest power first reads like a polynomial.
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (*k, c.is_one()) {
                (0, _) => write!(f, "{}", rational_text(c))?,
                (_, true) => write!(f, "δ^{k}")?,
                (_, false) => write!(f, "{}·δ^{k}", rational_text(c))?,
            }
        }
        Ok(())
    }
}

fn rational_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else if q.is_negative() {
        format!("({}/{})", q.numer(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
