use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Minimal field interface for the oracles.
pub trait OField: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
}

/// Residue modulo a small prime, stored with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModP {
    pub v: u64,
    pub p: u64,
}

impl ModP {
    pub fn new(v: i64, p: u64) -> Self {
        let m = p as i64;
        ModP { v: v.rem_euclid(m) as u64, p }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut b = *self;
        let mut r = ModP { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Reduce a rational number; panics if the denominator vanishes mod p.
    pub fn from_ratio(n: i64, d: i64, p: u64) -> Self {
        let dd = ModP::new(d, p);
        assert!(dd.v != 0, "denominator divisible by p");
        ModP::new(n, p).mul(&dd.inv())
    }
}

impl fmt::Debug for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl OField for ModP {
    fn zero_like(&self) -> Self {
        ModP { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        ModP { v: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        ModP { v: (self.v + o.v) % self.p, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        ModP { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        ModP { v: (self.v as u128 * o.v as u128 % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        ModP { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        self.pow(self.p - 2)
    }
    fn from_i64_like(&self, v: i64) -> Self {
        ModP::new(v, self.p)
    }
}

impl OField for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Rational from numerator and denominator.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// True when the rational is a nonnegative integer small enough for u64.
pub fn is_small_nonneg_int(r: &BigRational) -> bool {
    r.is_integer() && !r.is_negative() && r.to_integer() < BigInt::from(u64::MAX)
}
