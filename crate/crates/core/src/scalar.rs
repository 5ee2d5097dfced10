use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::linalg::{self, Matrix, Tolerance};
use crate::Result;

/// Field of scalars the toolkit computes over.
///
/// `f64` is the default; [`Rational`] gives exact answers for the rational
/// examples. Rank-revealing operations are routed through the scalar type so
/// floats use singular-value thresholds and rationals use exact elimination.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact; tolerances are then ignored.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `den` must be non-zero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `|self| <= bound`, or exactly zero for exact scalars.
    fn within(&self, bound: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            libm::fabs(self.to_f64()) <= bound
        }
    }

    /// Basis of the kernel of `m`.
    fn nullspace_of(m: &Matrix<Self>, tol: &Tolerance) -> Vec<Vec<Self>>;

    /// A solution of `m x = b` (least squares for floats).
    fn solve_system(m: &Matrix<Self>, b: &[Self], tol: &Tolerance) -> Result<Vec<Self>>;

    /// Positive definiteness of a symmetric matrix.
    fn positive_definite(m: &Matrix<Self>, tol: &Tolerance) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn nullspace_of(m: &Matrix<Self>, tol: &Tolerance) -> Vec<Vec<Self>> {
        linalg::float::nullspace(m, tol)
    }
    fn solve_system(m: &Matrix<Self>, b: &[Self], tol: &Tolerance) -> Result<Vec<Self>> {
        linalg::float::least_squares(m, b, tol)
    }
    fn positive_definite(m: &Matrix<Self>, tol: &Tolerance) -> bool {
        linalg::float::symmetric_eigen(m)
            .0
            .iter()
            .all(|&l| l > tol.abs)
    }
}

/// Exact rational number backed by arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Self(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact value of a finite float (every finite double is a dyadic rational).
    pub fn from_float(v: f64) -> Option<Self> {
        BigRational::from_f64(v).map(Self)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Error from parsing a [`Rational`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected an integer, `p/q`, or a decimal literal")
    }
}

impl core::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p`, `p/q` and plain decimals such as `-1.25` (read exactly).
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| ParseRationalError)?;
            let q = BigInt::from_str(q.trim()).map_err(|_| ParseRationalError)?;
            if q.is_zero() {
                return Err(ParseRationalError);
            }
            return Ok(Self(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRationalError);
            }
            let negative = int.starts_with('-');
            let digits = int.trim_start_matches(['-', '+']).to_string() + frac;
            let mut num = BigInt::from_str(&digits).map_err(|_| ParseRationalError)?;
            if negative {
                num = -num;
            }
            let den = num_traits::pow(BigInt::from(10u32), frac.len());
            return Ok(Self(BigRational::new(num, den)));
        }
        BigInt::from_str(s)
            .map(|n| Self(BigRational::from_integer(n)))
            .map_err(|_| ParseRationalError)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self(BigRational::zero())
    }
    fn one() -> Self {
        Self(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(num, den)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn abs(&self) -> Self {
        Self(self.0.abs())
    }
    fn nullspace_of(m: &Matrix<Self>, _tol: &Tolerance) -> Vec<Vec<Self>> {
        linalg::exact::nullspace(m)
    }
    fn solve_system(m: &Matrix<Self>, b: &[Self], _tol: &Tolerance) -> Result<Vec<Self>> {
        linalg::exact::solve(m, b)
    }
    fn positive_definite(m: &Matrix<Self>, _tol: &Tolerance) -> bool {
        linalg::exact::positive_definite(m)
    }
}
