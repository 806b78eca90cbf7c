use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// An element of Q/Z, stored as `numerator/denominator` in lowest terms with
/// `0 <= numerator < denominator`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phase {
    numerator: i64,
    denominator: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { numerator: 0, denominator: 1 };

    /// `p/q mod 1`. Panics if `q == 0`.
    pub fn new(p: i64, q: i64) -> Phase {
        Self::from_i128(p as i128, q as i128)
    }

    fn from_i128(p: i128, q: i128) -> Phase {
        assert!(q != 0, "phase with zero denominator");
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let p = p.rem_euclid(q);
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        Phase {
            numerator: i64::try_from(p).expect("phase numerator overflow"),
            denominator: i64::try_from(q).expect("phase denominator overflow"),
        }
    }

    pub fn from_rational(r: &BigRational) -> Phase {
        let q = r.denom().clone();
        let p = r.numer().mod_floor(&q);
        Phase::new(
            p.to_i64().expect("phase numerator overflow"),
            q.to_i64().expect("phase denominator overflow"),
        )
    }

    pub fn from_big(p: &BigInt, q: &BigInt) -> Phase {
        Self::from_rational(&BigRational::new(p.clone(), q.clone()))
    }

    #[inline]
    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    #[inline]
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Integer multiple `k * self`.
    pub fn times(&self, k: i64) -> Phase {
        Self::from_i128(self.numerator as i128 * k as i128, self.denominator as i128)
    }

    pub fn times_big(&self, k: &BigInt) -> Phase {
        let r = k.mod_floor(&BigInt::from(self.denominator));
        self.times(r.to_i64().unwrap())
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.into(), self.denominator.into())
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// `exp(2πi·self)`.
    pub fn to_unit(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.to_f64())
    }

    /// Order of the phase in Q/Z.
    pub fn order(&self) -> i64 {
        self.denominator
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        let (a, b) = (self.denominator as i128, o.denominator as i128);
        let l = a.lcm(&b);
        Phase::from_i128(self.numerator as i128 * (l / a) + o.numerator as i128 * (l / b), l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, o: Phase) {
        *self = *self + o;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_i128(-(self.numerator as i128), self.denominator as i128)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        self + (-o)
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl Zero for Phase {
    fn zero() -> Phase {
        Phase::ZERO
    }
    fn is_zero(&self) -> bool {
        self.numerator == 0
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}
