//! Closed-form virtual Poincaré polynomials of the atom spaces strata are
//! built from: projective and affine spaces, Grassmannians, Hilbert schemes
//! of points on the plane, relative Hilbert schemes over the universal
//! curve, and the Z2-quotient operators Sym²/Λ².

use num_traits::Zero;
use thiserror::Error;

use crate::poly::Polynomial;

/// A named atom space with its integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomSpec {
    /// Projective space `P^n`.
    Projective(u32),
    /// Affine space `A^n`.
    Affine(u32),
    /// A single point.
    Point,
    /// Grassmannian of `k`-planes in an `n`-space.
    Grassmannian { k: u32, n: u32 },
    /// Hilbert scheme of `n` points on the plane.
    HilbP2(u32),
    /// Relative Hilbert scheme of `n` points on the universal degree-`d`
    /// plane curve.
    RelHilbert { d: u32, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("grassmannian requires 0 <= k <= n (got k={k}, n={n})")]
    GrassmannianRange { k: u32, n: u32 },
    #[error(
        "no closed form: the relative Hilbert scheme B({d},{n}) is not a \
         bundle over Hilb^{n}(P^2) when n > d"
    )]
    RelHilbertNotBundle { d: u32, n: u32 },
}

impl AtomSpec {
    /// Evaluates the atom to its polynomial.
    pub fn eval(&self) -> Result<Polynomial, AtomError> {
        match *self {
            AtomSpec::Projective(n) => Ok(projective(n)),
            AtomSpec::Affine(n) => Ok(affine(n)),
            AtomSpec::Point => Ok(point()),
            AtomSpec::Grassmannian { k, n } => grassmannian(k, n),
            AtomSpec::HilbP2(n) => Ok(hilb_p2(n)),
            AtomSpec::RelHilbert { d, n } => rel_hilbert(d, n),
        }
    }
}

/// `P(P^n) = 1 + p + ... + p^n`.
pub fn projective(n: u32) -> Polynomial {
    Polynomial::from_coeffs(vec![1i64; n as usize + 1])
}

/// `P(A^n) = p^n`.
pub fn affine(n: u32) -> Polynomial {
    Polynomial::monomial(n as usize)
}

pub fn point() -> Polynomial {
    Polynomial::one()
}

/// The Gaussian binomial coefficient `[n choose k]_p`, the generating
/// polynomial of partitions inside a k×(n−k) box; degree `k(n−k)`, value
/// at 1 the ordinary binomial coefficient.
///
/// Computed with the q-Pascal recurrence
/// `[n,k] = [n-1,k-1] + p^k [n-1,k]` (no divisions).
pub fn grassmannian(k: u32, n: u32) -> Result<Polynomial, AtomError> {
    if k > n {
        return Err(AtomError::GrassmannianRange { k, n });
    }
    let k = k as usize;
    let n = n as usize;
    // row m of the table holds [m choose j] for j = 0..=min(m, k)
    let mut row: Vec<Polynomial> = vec![Polynomial::one()];
    for m in 1..=n {
        let width = m.min(k);
        let mut next = Vec::with_capacity(width + 1);
        next.push(Polynomial::one());
        for j in 1..=width {
            let keep = if j < row.len() {
                row[j].shift(j)
            } else {
                Polynomial::zero()
            };
            next.push(&row[j - 1] + &keep);
        }
        row = next;
    }
    Ok(row[k].clone())
}

/// `P(Hilb^n(P^2))`: the coefficient of `t^n` in the product
/// `Π_{k≥1} [(1 − p^{k−1} t^k)(1 − p^k t^k)(1 − p^{k+1} t^k)]^{−1}`,
/// expanded as a power series in `t` to order `n`. Degree `2n`.
pub fn hilb_p2(n: u32) -> Polynomial {
    let n = n as usize;
    // series[j] is the polynomial coefficient of t^j
    let mut series: Vec<Polynomial> = vec![Polynomial::zero(); n + 1];
    series[0] = Polynomial::one();
    for k in 1..=n {
        for e in [k - 1, k, k + 1] {
            // multiply by 1/(1 - p^e t^k) = Σ_j p^{ej} t^{kj}
            let mut next: Vec<Polynomial> = vec![Polynomial::zero(); n + 1];
            for (i, c) in series.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut j = 0usize;
                while i + k * j <= n {
                    let bumped = c.shift(e * j);
                    next[i + k * j] = &next[i + k * j] + &bumped;
                    j += 1;
                }
            }
            series = next;
        }
    }
    series.swap_remove(n)
}

/// Symmetric square: `(P(p)² + P(p²)) / 2`.
pub fn sym2(f: &Polynomial) -> Polynomial {
    halve(&(f * f) + &f.compose_power(2))
}

/// Alternating square: `(P(p)² − P(p²)) / 2`.
pub fn wedge2(f: &Polynomial) -> Polynomial {
    halve(&(f * f) - &f.compose_power(2))
}

/// Class of the off-diagonal symmetric square `(X×X − Δ)/Z2`:
/// `sym2(P) − P`.
pub fn sym2_off_diag(f: &Polynomial) -> Polynomial {
    &sym2(f) - f
}

fn halve(f: Polynomial) -> Polynomial {
    // c² + c is even for every integer c, so both quotient formulas stay
    // integral on integer input.
    use num_bigint::BigInt;
    Polynomial::from_coeffs(f.coeffs().iter().map(|c| {
        let two = BigInt::from(2);
        assert!(
            (c % &two).is_zero(),
            "half-integer coefficient in quotient formula"
        );
        c / &two
    }))
}

/// `P(B(d,n))` for the projective-bundle regime `0 ≤ n ≤ d`:
/// `P(P^{d(d+3)/2 − n}) · P(Hilb^n(P^2))`.
///
/// Outside that regime the relative Hilbert scheme has no bundle structure
/// over the Hilbert scheme of points and there is no closed form here.
pub fn rel_hilbert(d: u32, n: u32) -> Result<Polynomial, AtomError> {
    if n > d {
        return Err(AtomError::RelHilbertNotBundle { d, n });
    }
    let fiber_dim = d * (d + 3) / 2 - n;
    Ok(&projective(fiber_dim) * &hilb_p2(n))
}
