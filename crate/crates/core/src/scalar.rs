//! Scalar types usable as distances.
//!
//! Every algorithm in this crate only compares, adds, multiplies and divides
//! distances, so it is written once against [`Scalar`] and instantiated for
//! `f32`, `f64` and the exact rationals [`Rational`] and [`BigRational`].

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Exact rational used for probabilities and masses.
pub type Rational = Ratio<i64>;

/// Arbitrary-precision rational.
pub type BigRational = Ratio<BigInt>;

/// A totally ordered (on valid values) numeric type used for distances.
pub trait Scalar:
    Clone + PartialOrd + Debug + Display + FromStr + Num + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Relative tolerance used when validating the triangle inequality.
    const TRIANGLE_TOLERANCE: f64;

    /// Converts an exact probability into this scalar.
    fn from_rational(p: &Rational) -> Self;

    /// `false` for NaN and infinities.
    fn is_finite_value(&self) -> bool;

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const TRIANGLE_TOLERANCE: f64 = 1e-9;

    fn from_rational(p: &Rational) -> Self {
        *p.numer() as f64 / *p.denom() as f64
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    // single precision cannot resolve 1e-9
    const TRIANGLE_TOLERANCE: f64 = 1e-5;

    fn from_rational(p: &Rational) -> Self {
        (*p.numer() as f64 / *p.denom() as f64) as f32
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Rational {
    const TRIANGLE_TOLERANCE: f64 = 0.0;

    fn from_rational(p: &Rational) -> Self {
        *p
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Scalar for BigRational {
    const TRIANGLE_TOLERANCE: f64 = 0.0;

    fn from_rational(p: &Rational) -> Self {
        Ratio::new(BigInt::from(*p.numer()), BigInt::from(*p.denom()))
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Total order on scalars that were validated as finite.
#[inline]
pub fn cmp_scalar<D: Scalar>(a: &D, b: &D) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Ratio of two q-costs, `c_q(i, P) / c_q(i, P')`.
///
/// A strictly positive cost over a zero cost is [`Improvement::Unbounded`];
/// zero over zero is one.
#[derive(Clone, Debug, PartialEq)]
pub enum Improvement<D> {
    Finite(D),
    Unbounded,
}

impl<D: Scalar> Improvement<D> {
    pub fn of(current: &D, alternative: &D) -> Self {
        match (current.is_zero(), alternative.is_zero()) {
            (true, true) => Improvement::Finite(D::one()),
            (false, true) => Improvement::Unbounded,
            _ => Improvement::Finite(current.clone() / alternative.clone()),
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Improvement::Unbounded)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Improvement::Finite(v) => v.as_f64(),
            Improvement::Unbounded => f64::INFINITY,
        }
    }

    pub fn finite(&self) -> Option<&D> {
        match self {
            Improvement::Finite(v) => Some(v),
            Improvement::Unbounded => None,
        }
    }
}

impl<D: Scalar> PartialOrd for Improvement<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Improvement::Unbounded, Improvement::Unbounded) => Some(Ordering::Equal),
            (Improvement::Unbounded, _) => Some(Ordering::Greater),
            (_, Improvement::Unbounded) => Some(Ordering::Less),
            (Improvement::Finite(a), Improvement::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl<D: Scalar> Display for Improvement<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Improvement::Finite(v) => write!(f, "{v}"),
            Improvement::Unbounded => f.write_str("inf"),
        }
    }
}

/// Returns the `rank`-th largest value (1-based) of a multiset given as
/// `(value, multiplicity)` pairs, or `None` when the total multiplicity is
/// smaller than `rank`.
pub(crate) fn weighted_rank_desc<T: PartialOrd + Clone>(mut items: Vec<(T, u64)>, rank: u64) -> Option<T> {
    if rank == 0 {
        return None;
    }
    items.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
    let mut seen = 0u64;
    for (v, w) in items {
        seen += w;
        if seen >= rank {
            return Some(v);
        }
    }
    None
}
