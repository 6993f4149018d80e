//! Arbitrary-precision rational scalars.
//!
//! `Rat` wraps [`num_rational::BigRational`], which keeps every value in
//! lowest terms with a positive denominator. The wrapper adds the string
//! format used by all file interfaces (`"p/q"`, or `"p"` when `q = 1`) and
//! the operator impls the rest of the crate needs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` from machine integers. Panics when `q = 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        Rat(BigRational::new(p, q))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    /// True when the value is the square of a rational, i.e. both numerator
    /// and denominator are perfect integer squares (and the sign is not
    /// negative). Used to decide irreducibility of quadratics.
    pub fn is_rational_square(&self) -> bool {
        if self.is_negative() {
            return false;
        }
        is_perfect_square(self.numer()) && is_perfect_square(self.denom())
    }

    /// Exact square root for values that pass [`Rat::is_rational_square`].
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let pn = self.numer().sqrt();
        let pd = self.denom().sqrt();
        if &(&pn * &pn) == self.numer() && &(&pd * &pd) == self.denom() {
            Some(Rat::from_big(pn, pd))
        } else {
            None
        }
    }

    /// Parses `"p/q"` or `"p"`, with an optional leading sign.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        let numer = BigInt::from_str(p).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let denom = match q {
            Some(q) => {
                BigInt::from_str(q).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?
            }
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rat::parse(s)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

/// Total order compatible with the usual order on ℚ (`Ratio` compares by
/// value, not representation); used for canonical sorting of invariants.
pub fn rat_cmp(a: &Rat, b: &Rat) -> Ordering {
    a.0.cmp(&b.0)
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }

        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }

        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self).div(&rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Rat]) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}
