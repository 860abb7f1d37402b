//! Exact arithmetic in the golden field Q(tau), tau = (1+sqrt(5))/2.
//!
//! Every element is stored as `a + b*tau` with arbitrary-precision rational
//! coefficients, so group membership, orthogonality and block-decomposition
//! checks can be carried out with zero tolerance. Multiplication uses the
//! minimal polynomial tau^2 = tau + 1.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Numeric value of tau in double precision.
pub const TAU_F64: f64 = 1.618033988749894848204586834365638118_f64;

/// An element `a + b*tau` of Q(tau). Rationals are kept in lowest terms with
/// positive denominator by `BigRational` itself, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenNumber {
    a: BigRational,
    b: BigRational,
}

impl GoldenNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// Integer element `n`.
    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// Rational element `num/den`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    /// The element `p + q*tau` for integer `p`, `q`.
    pub fn from_parts(p: i64, q: i64) -> Self {
        Self::new(
            BigRational::from_integer(p.into()),
            BigRational::from_integer(q.into()),
        )
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn tau() -> Self {
        Self::from_parts(0, 1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn tau_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Galois conjugation tau -> 1 - tau, i.e. `a + b*tau -> (a+b) - b*tau`.
    /// A ring automorphism and an involution.
    pub fn galois_conjugate(&self) -> Self {
        Self::new(&self.a + &self.b, -self.b.clone())
    }

    /// Field norm `x * conj(x) = a^2 + a*b - b^2`, a rational.
    pub fn field_norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Exact multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(a + b*tau) = (a + b - b*tau) / (a^2 + ab - b^2)
        Ok(Self::new((&self.a + &self.b) / &n, -(&self.b / &n)))
    }

    /// Evaluate in double precision.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * TAU_F64
    }

    /// Canonical text form `a/b + c/d*tau`, reduced fractions.
    pub fn canonical_string(&self) -> String {
        format!("{} + {}*tau", self.a, self.b)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a manual quotient for values outside f64's exponent
        // range of the integer parts.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoldenNumber({})", self.canonical_string())
    }
}

impl Add for &GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, rhs: &GoldenNumber) -> GoldenNumber {
        // (a + b t)(c + d t) = (ac + bd) + (ad + bc + bd) t  using t^2 = t + 1
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        GoldenNumber::new(ac + &bd, ad + bc + bd)
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-self.a.clone(), -self.b.clone())
    }
}

impl Div for &GoldenNumber {
    type Output = Result<GoldenNumber>;
    fn div(self, rhs: &GoldenNumber) -> Result<GoldenNumber> {
        Ok(self * &rhs.inverse()?)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident, $out:ty) => {
        impl $trait for GoldenNumber {
            type Output = $out;
            fn $method(self, rhs: GoldenNumber) -> $out {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add, GoldenNumber);
forward_owned!(Sub, sub, GoldenNumber);
forward_owned!(Mul, mul, GoldenNumber);
forward_owned!(Div, div, Result<GoldenNumber>);

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}

/// Exact division operation; errors on a zero divisor.
pub fn golden_div(x: &GoldenNumber, y: &GoldenNumber) -> Result<GoldenNumber> {
    x / y
}

/// Construct a `BigRational` from a signed integer pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
