//! Exact numerical invariants of coherent sheaves on a curve.
//!
//! Everything here is integer or rational arithmetic: slopes, the Euler
//! pairing computed by Riemann-Roch, and the numerical Serre twist. No
//! floating point is used anywhere, since the decision rules depend on
//! exact slope comparisons.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Exact rational number used for all slope values.
pub type Rational = num_rational::Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    /// The zero class (rank 0, degree 0) does not represent a sheaf.
    #[error("zero class: rank 0 and degree 0 is not a sheaf")]
    ZeroSheaf,
    /// Torsion classes encode their length in the degree field, so rank 0
    /// requires degree >= 1.
    #[error("torsion class must have positive length, got {0}")]
    NonPositiveTorsionLength(i64),
}

/// A slope value: finite rational, or infinity for torsion sheaves.
///
/// Infinity compares strictly greater than every finite slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedSlope {
    Finite(Rational),
    Infinity,
}

impl ExtendedSlope {
    pub fn finite(num: i64, den: i64) -> Self {
        ExtendedSlope::Finite(Rational::new(num, den))
    }

    pub fn as_finite(&self) -> Option<Rational> {
        match self {
            ExtendedSlope::Finite(q) => Some(*q),
            ExtendedSlope::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedSlope::Infinity)
    }
}

impl Ord for ExtendedSlope {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedSlope::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtendedSlope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedSlope::Infinity => write!(f, "inf"),
            ExtendedSlope::Finite(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Serialize for ExtendedSlope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Numerical class of a coherent sheaf: rank and degree.
///
/// A torsion class has rank 0 and its degree field stores the length
/// (which must be positive). The zero class is rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChernPair {
    rank: u32,
    degree: i64,
}

impl ChernPair {
    pub fn new(rank: u32, degree: i64) -> Result<Self, NumericsError> {
        if rank == 0 {
            if degree == 0 {
                return Err(NumericsError::ZeroSheaf);
            }
            if degree < 0 {
                return Err(NumericsError::NonPositiveTorsionLength(degree));
            }
        }
        Ok(ChernPair { rank, degree })
    }

    /// A positive-rank (vector bundle) class.
    pub fn bundle(rank: u32, degree: i64) -> Result<Self, NumericsError> {
        if rank == 0 {
            return Err(NumericsError::ZeroSheaf);
        }
        Ok(ChernPair { rank, degree })
    }

    /// A torsion class of the given length.
    pub fn torsion(length: i64) -> Result<Self, NumericsError> {
        if length < 1 {
            return Err(NumericsError::NonPositiveTorsionLength(length));
        }
        Ok(ChernPair { rank: 0, degree: length })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_torsion(&self) -> bool {
        self.rank == 0
    }

    /// Length of a torsion class; None on positive-rank classes.
    pub fn length(&self) -> Option<i64> {
        if self.is_torsion() {
            Some(self.degree)
        } else {
            None
        }
    }

    /// Slope degree/rank, or infinity for torsion classes.
    pub fn slope(&self) -> ExtendedSlope {
        if self.rank == 0 {
            ExtendedSlope::Infinity
        } else {
            ExtendedSlope::Finite(Rational::new(self.degree, self.rank as i64))
        }
    }

    /// Componentwise sum of two classes. Torsion + torsion stays torsion;
    /// mixing torsion into a bundle class is fine for K-theory bookkeeping
    /// (ranks and degrees just add).
    pub fn sum(&self, other: &ChernPair) -> ChernPair {
        ChernPair {
            rank: self.rank + other.rank,
            degree: self.degree + other.degree,
        }
    }

    /// Scale a class by a positive multiplicity.
    pub fn scaled(&self, m: u32) -> ChernPair {
        ChernPair {
            rank: self.rank * m,
            degree: self.degree * m as i64,
        }
    }
}

impl fmt::Display for ChernPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_torsion() {
            write!(f, "tors(len={})", self.degree)
        } else {
            write!(f, "({},{})", self.rank, self.degree)
        }
    }
}

/// The ambient curve, reduced to its genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Curve {
    genus: u32,
}

impl Curve {
    pub fn new(genus: u32) -> Self {
        Curve { genus }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Degree of the canonical bundle: 2g - 2.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus as i64 - 2
    }
}

/// Euler pairing chi(e, f) on numerical classes.
///
/// For two positive-rank classes this is Riemann-Roch:
/// rk(e) rk(f) (1 - g) - rk(f) deg(e) + rk(e) deg(f), always an integer.
/// The torsion extension follows K-theoretic additivity:
/// chi(bundle, torsion) = rank * length, chi(torsion, bundle) = -rank * length,
/// chi(torsion, torsion) = 0.
pub fn euler_pairing(e: &ChernPair, f: &ChernPair, c: &Curve) -> i64 {
    let g = c.genus as i128;
    let (re, de) = (e.rank as i128, e.degree as i128);
    let (rf, df) = (f.rank as i128, f.degree as i128);
    let chi = match (e.is_torsion(), f.is_torsion()) {
        (false, false) => re * rf * (1 - g) - rf * de + re * df,
        (false, true) => re * df,
        (true, false) => -rf * de,
        (true, true) => 0,
    };
    i64::try_from(chi).expect("euler pairing overflow")
}

/// Numerical effect of tensoring by the canonical bundle:
/// deg -> deg + rank * (2g - 2). Torsion classes are unchanged.
pub fn serre_twist(e: &ChernPair, c: &Curve) -> ChernPair {
    if e.is_torsion() {
        *e
    } else {
        ChernPair {
            rank: e.rank,
            degree: e.degree + e.rank as i64 * c.canonical_degree(),
        }
    }
}
