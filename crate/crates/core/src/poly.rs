//! Dense univariate polynomials over the arbitrary-precision integers.
//!
//! The grading variable is written `p`; a polynomial is stored as its
//! coefficient sequence in ascending degree. Canonical form: the last
//! stored coefficient is nonzero, and the zero polynomial is the empty
//! sequence (its degree is reported as `None`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact division failed; carries the remainder at the point of failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not divisible: remainder {remainder}")]
pub struct NotDivisible {
    pub remainder: Polynomial,
}

/// A dense integer polynomial in the grading variable `p`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, normalising
    /// trailing zeros away.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Polynomial::new(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Polynomial::new(vec![c.into()])
    }

    /// The monomial `p^k`.
    pub fn monomial(k: usize) -> Self {
        Polynomial::term(1, k)
    }

    /// The single term `c * p^k`.
    pub fn term<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Polynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `p^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> Polynomial {
        let c = c.into();
        Polynomial::new(self.coeffs.iter().map(|a| a * &c).collect())
    }

    /// Substitutes `p ↦ p^k`. Requires `k ≥ 1`.
    pub fn compose_power(&self, k: u32) -> Polynomial {
        assert!(k >= 1, "compose_power requires k >= 1");
        let k = k as usize;
        let mut out = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Polynomial::new(out)
    }

    /// Exact division: returns `q` with `self = q * b`, or the failing
    /// remainder. Panics on a zero divisor.
    pub fn div_exact(&self, b: &Polynomial) -> Result<Polynomial, NotDivisible> {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let db = b.coeffs.len();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db) + 1];
        while !rem.is_zero() && rem.coeffs.len() >= db {
            let lead_r = rem.coeffs.last().unwrap();
            let lead_b = b.coeffs.last().unwrap();
            if !(lead_r % lead_b).is_zero() {
                return Err(NotDivisible { remainder: rem });
            }
            let c = lead_r / lead_b;
            let shift = rem.coeffs.len() - db;
            q[shift] = c.clone();
            rem = &rem - &(&Polynomial::new(vec![c]).shift(shift) * b);
        }
        if rem.is_zero() {
            Ok(Polynomial::new(q))
        } else {
            Err(NotDivisible { remainder: rem })
        }
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// Exact evaluation at an integer point (Horner).
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// True iff the coefficient sequence equals its reverse.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl<T: Into<BigInt>> From<Vec<T>> for Polynomial {
    fn from(v: Vec<T>) -> Self {
        Polynomial::from_coeffs(v)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
                        + rhs.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
                        - rhs.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
                })
                .collect(),
        )
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Textual literal format: "c0 + c1 p + c2 p^2 + ..." with zero terms omitted
// and unit coefficients elided, e.g. "1 + 3p + 9p^2" or "-p^2 + p^5".
// ---------------------------------------------------------------------------

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        f.write_str("p")?;
                    } else {
                        write!(f, "p^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly\"{self}\"")
    }
}

/// Error parsing a polynomial literal; `offset` is a byte position into the
/// literal text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed polynomial literal at offset {offset}: {message}")]
pub struct PolyParseError {
    pub offset: usize,
    pub message: String,
}

impl FromStr for Polynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let err = |pos: usize, message: &str| PolyParseError {
            offset: pos,
            message: message.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_digits = |pos: &mut usize| -> Option<&str> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (*pos > start).then(|| &s[start..*pos])
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty literal"));
        }

        let mut terms: Vec<(usize, BigInt)> = Vec::new();
        let mut negative = if bytes[pos] == b'-' {
            pos += 1;
            true
        } else {
            false
        };
        loop {
            skip_ws(&mut pos);
            // one term: [digits] ['p' ['^' digits]]
            let coeff_digits = read_digits(&mut pos);
            skip_ws(&mut pos);
            let has_p = pos < bytes.len() && bytes[pos] == b'p';
            if !has_p && coeff_digits.is_none() {
                return Err(err(pos, "expected a coefficient or `p`"));
            }
            let coeff: BigInt = match coeff_digits {
                Some(d) => d.parse().expect("digit string"),
                None => BigInt::one(),
            };
            let exp = if has_p {
                pos += 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let d = read_digits(&mut pos)
                        .ok_or_else(|| err(pos, "expected an exponent after `^`"))?;
                    d.parse::<usize>()
                        .map_err(|_| err(pos, "exponent out of range"))?
                } else {
                    1
                }
            } else {
                0
            };
            terms.push((exp, if negative { -coeff } else { coeff }));

            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            negative = match bytes[pos] {
                b'+' => false,
                b'-' => true,
                _ => return Err(err(pos, "expected `+`, `-` or end of literal")),
            };
            pos += 1;
        }

        let top = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); top + 1];
        for (e, c) in terms {
            coeffs[e] += c;
        }
        Ok(Polynomial::new(coeffs))
    }
}
