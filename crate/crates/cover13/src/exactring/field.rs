//! Exact coefficient fields: ℚ, ℚ(ω) with ω² + ω + 1 = 0, and F_p for p ≥ 5.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    RationalsWithOmega,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Checks primality and characteristic ∉ {2, 3}.
    pub fn validate(self) -> Result<Self> {
        if let FieldSpec::PrimeField(p) = self {
            if !is_prime(p) {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
            if p < 5 {
                return Err(Error::InvalidField(format!("characteristic {p} must differ from 2 and 3")));
            }
            if p > u32::MAX as u64 {
                return Err(Error::InvalidField(format!("modulus {p} too large")));
            }
        }
        Ok(self)
    }

    /// Parses `q`, `qw` or `fp:<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(FieldSpec::Rationals),
            "qw" | "Qw" => Ok(FieldSpec::RationalsWithOmega),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidField(format!("unrecognised field `{other}`")))?;
                FieldSpec::PrimeField(p).validate()
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            FieldSpec::Rationals => "q".into(),
            FieldSpec::RationalsWithOmega => "qw".into(),
            FieldSpec::PrimeField(p) => format!("fp:{p}"),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(v.into())),
            FieldSpec::RationalsWithOmega => Scalar::qw(BigRational::from_integer(v.into()), BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Fp { v: v.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_ratio(self, n: i64, d: i64) -> Result<Scalar> {
        self.from_bigrational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Image of a rational number; fails over F_p if p divides the denominator.
    pub fn from_bigrational(self, r: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(r.clone())),
            FieldSpec::RationalsWithOmega => Ok(Scalar::qw(r.clone(), BigRational::zero())),
            FieldSpec::PrimeField(p) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64().unwrap();
                let d = r.denom().mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                let num = Scalar::Fp { v: n, p };
                Ok(num * Scalar::Fp { v: d, p }.inv()?)
            }
        }
    }

    /// The distinguished primitive cube root of unity: ω over ℚ(ω), the
    /// smallest residue of multiplicative order 3 over F_p.
    pub fn xi(self) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Err(Error::NoCubeRoot(self.label())),
            FieldSpec::RationalsWithOmega => Ok(Scalar::qw(BigRational::zero(), BigRational::one())),
            FieldSpec::PrimeField(p) => {
                if p % 3 != 1 {
                    return Err(Error::NoCubeRoot(self.label()));
                }
                (2..p)
                    .map(|v| Scalar::Fp { v, p })
                    .find(|s| !s.is_one() && s.pow(3).is_one())
                    .ok_or_else(|| Error::NoCubeRoot(self.label()))
            }
        }
    }

    pub fn has_cube_roots(self) -> bool {
        self.xi().is_ok()
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::PrimeField(p) => Some(p),
            _ => None,
        }
    }

    /// Parses an integer, `p/q`, or (over fields with ω) an `a+b*w` pair.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse { pos: 0, msg: format!("bad number `{s}`") };
        let parse_rat = |t: &str| -> Result<BigRational> {
            let t = t.trim();
            if let Some((n, d)) = t.split_once('/') {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(BigRational::new(n, d))
            } else {
                Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?))
            }
        };
        if s.contains('w') {
            let ring = crate::exactring::Ring::new(self, &[])?;
            let p = crate::exactring::parse_poly(s, &ring)?;
            return p.as_constant().ok_or_else(bad);
        }
        self.from_bigrational(&parse_rat(s)?)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// An element of one of the three fields; the field is implied by the variant
/// (and the modulus carried by `Fp`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(BigRational),
    /// a + bω
    Qw(Box<(BigRational, BigRational)>),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn qw(a: BigRational, b: BigRational) -> Self {
        Scalar::Qw(Box::new((a, b)))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Qw(_) => FieldSpec::RationalsWithOmega,
            Scalar::Fp { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Qw(b) => b.0.is_zero() && b.1.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Qw(b) => b.0.is_one() && b.1.is_zero(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn zero_like(&self) -> Self {
        self.field().zero()
    }

    pub fn one_like(&self) -> Self {
        self.field().one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Qw(b) => {
                // (a + bω)(a + bω²) = a² − ab + b²
                let (a, c) = (&b.0, &b.1);
                let norm = a * a - a * c + c * c;
                Scalar::qw((a - c) / &norm, -c / &norm)
            }
            Scalar::Fp { v, p } => {
                let mut r = Scalar::Fp { v: 1, p: *p };
                let mut base = Scalar::Fp { v: *v, p: *p };
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        r = &r * &base;
                    }
                    base = &base * &base;
                    e >>= 1;
                }
                r
            }
        })
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut r = self.one_like();
        let mut b = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }

    /// Rational value when the element lies in ℚ (or is an ℚ(ω) element with
    /// zero ω-part).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(r) => Some(r.clone()),
            Scalar::Qw(b) if b.1.is_zero() => Some(b.0.clone()),
            _ => None,
        }
    }

    /// Whether printing needs a leading minus sign.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Qw(b) => b.1.is_zero() && b.0.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    fn promote(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Q(x), Scalar::Qw(_)) => (Scalar::qw(x.clone(), BigRational::zero()), b.clone()),
            (Scalar::Qw(_), Scalar::Q(y)) => (a.clone(), Scalar::qw(y.clone(), BigRational::zero())),
            _ => (a.clone(), b.clone()),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Qw(a), Scalar::Qw(b)) => Scalar::qw(&a.0 + &b.0, &a.1 + &b.1),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp { v: (a + b) % p, p: *p },
            (Scalar::Q(_), Scalar::Qw(_)) | (Scalar::Qw(_), Scalar::Q(_)) => {
                let (x, y) = Scalar::promote(self, o);
                &x + &y
            }
            _ => mismatch(self, o),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Qw(a) => Scalar::qw(-&a.0, -&a.1),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Qw(a), Scalar::Qw(b)) => {
                // (a0 + a1ω)(b0 + b1ω) with ω² = −1 − ω
                let t = &a.1 * &b.1;
                Scalar::qw(&a.0 * &b.0 - &t, &a.0 * &b.1 + &a.1 * &b.0 - &t)
            }
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            (Scalar::Q(_), Scalar::Qw(_)) | (Scalar::Qw(_), Scalar::Q(_)) => {
                let (x, y) = Scalar::promote(self, o);
                &x * &y
            }
            _ => mismatch(self, o),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Qw(b) => {
                if b.1.is_zero() {
                    write!(f, "{}", fmt_rat(&b.0))
                } else if b.0.is_zero() {
                    if b.1.is_one() {
                        write!(f, "w")
                    } else {
                        write!(f, "{}*w", fmt_rat(&b.1))
                    }
                } else {
                    let sign = if b.1.is_negative() { "-" } else { "+" };
                    let mag = b.1.abs();
                    if mag.is_one() {
                        write!(f, "({}{}w)", fmt_rat(&b.0), sign)
                    } else {
                        write!(f, "({}{}{}*w)", fmt_rat(&b.0), sign, fmt_rat(&mag))
                    }
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_xi_over_f31_is_5() {
        let f = FieldSpec::PrimeField(31);
        assert_eq!(f.xi().unwrap(), f.from_i64(5));
        assert_eq!(f.from_i64(5).pow(3), f.one());
    }

    #[test]
    fn omega_satisfies_its_minimal_polynomial() {
        let f = FieldSpec::RationalsWithOmega;
        let w = f.xi().unwrap();
        let s = &(&(&w * &w) + &w) + &f.one();
        assert!(s.is_zero());
        assert!(w.pow(3).is_one());
    }

    #[test]
    fn qw_inverse() {
        let f = FieldSpec::RationalsWithOmega;
        let x = &f.from_i64(3) + &(&f.xi().unwrap() * &f.from_i64(-2));
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn invalid_fields_rejected() {
        assert!(FieldSpec::PrimeField(3).validate().is_err());
        assert!(FieldSpec::PrimeField(33).validate().is_err());
        assert!(FieldSpec::parse("fp:109").is_ok());
        assert!(FieldSpec::PrimeField(11).xi().is_err());
        assert!(FieldSpec::Rationals.xi().is_err());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = FieldSpec::PrimeField(31);
        assert_eq!(f.from_ratio(1, 3).unwrap(), f.from_i64(21));
        assert!(FieldSpec::PrimeField(5).from_ratio(1, 5).is_err());
    }
}
