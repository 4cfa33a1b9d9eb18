//! Sparse weighted-graded Laurent polynomials.
//!
//! A [`Ring`] fixes the field, the ordered variable list, the weights and the
//! set of variables that may carry negative exponents.  Denominators are
//! always monomials in those variables.

use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub type Exps = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: FieldSpec,
    names: Vec<String>,
    weights: Vec<i32>,
    invertible: Vec<bool>,
}

/// (name, weight, may be inverted)
pub type VarSpec<'a> = (&'a str, i32, bool);

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(field: FieldSpec, vars: &[VarSpec]) -> Result<RingRef> {
        let field = field.validate()?;
        let mut names: Vec<String> = Vec::new();
        for (n, w, _) in vars {
            if names.iter().any(|m| m == n) {
                return Err(Error::Precondition(format!("duplicate variable `{n}`")));
            }
            if *w < 0 {
                return Err(Error::Precondition(format!("negative weight for `{n}`")));
            }
            names.push(n.to_string());
        }
        Ok(Arc::new(Ring {
            field,
            names,
            weights: vars.iter().map(|v| v.1).collect(),
            invertible: vars.iter().map(|v| v.2).collect(),
        }))
    }

    /// x0,x1,x2 (weight 1, invertible), y0..y2 and z0..z2 (weight 2), t
    /// (weight 3), followed by weight-0 parameters.
    pub fn standard(field: FieldSpec, params: &[&str]) -> Result<RingRef> {
        let mut v: Vec<VarSpec> = vec![("x0", 1, true), ("x1", 1, true), ("x2", 1, true)];
        for n in ["y0", "y1", "y2", "z0", "z1", "z2"] {
            v.push((n, 2, false));
        }
        v.push(("t", 3, false));
        for p in params {
            v.push((p, 0, false));
        }
        Ring::new(field, &v)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn has(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn weighted_degree_of(&self, e: &[i32]) -> i64 {
        e.iter().zip(&self.weights).map(|(a, w)| *a as i64 * *w as i64).sum()
    }

    /// Canonical term order: weighted degree descending, then larger exponent
    /// of the earlier variable first.
    pub fn cmp_canonical(&self, a: &[i32], b: &[i32]) -> Ordering {
        self.weighted_degree_of(b).cmp(&self.weighted_degree_of(a)).then_with(|| b.cmp(a))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

#[derive(Clone)]
pub struct MultiPoly {
    ring: RingRef,
    terms: BTreeMap<Exps, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.terms == o.terms
    }
}
impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl MultiPoly {
    pub fn zero(ring: &RingRef) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(vec![0; ring.nvars()], c);
        p
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Self::var_idx(ring, ring.index(name)?))
    }

    pub fn var_idx(ring: &RingRef, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, ring.field().one())
    }

    pub fn monomial(ring: &RingRef, e: Exps, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(e, c);
        p
    }

    /// Builds from terms, validating exponents against the ring.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Exps, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::Precondition("exponent vector length".into()));
            }
            for (i, a) in e.iter().enumerate() {
                if *a < 0 && !ring.is_invertible(i) {
                    return Err(Error::NegativeExponent(ring.names()[i].clone()));
                }
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in canonical printing order.
    pub fn canonical_terms(&self) -> Vec<(&Exps, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.cmp_canonical(a.0, b.0));
        v
    }

    pub fn leading_term(&self) -> Option<(&Exps, &Scalar)> {
        self.terms.iter().min_by(|a, b| self.ring.cmp_canonical(a.0, b.0))
    }

    pub fn coeff(&self, e: &[i32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field().zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|a| *a == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    fn check_ring(&self, o: &Self) {
        assert!(Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring, "ring mismatch");
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &[i32], c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), a * c))
            .collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(&self.ring);
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = &r * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Inverse of a single term whose variables are all invertible.
    pub fn monomial_inverse(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NonInvertibleImage(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        for (i, a) in e.iter().enumerate() {
            if *a != 0 && !self.ring.is_invertible(i) {
                return Err(Error::NonInvertibleImage(self.to_string()));
            }
        }
        Ok(Self::monomial(&self.ring, e.iter().map(|a| -a).collect(), c.inv()?))
    }

    /// Integer power; negative powers need an invertible monomial.
    pub fn pow_i(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.monomial_inverse()?.pow((-n) as u32))
        }
    }

    pub fn weighted_degree(&self) -> Degree {
        let mut it = self.terms.keys().map(|e| self.ring.weighted_degree_of(e));
        let Some(d) = it.next() else { return Degree::Zero };
        if it.all(|x| x == d) {
            Degree::Homogeneous(d)
        } else {
            Degree::Inhomogeneous
        }
    }

    /// Largest and smallest exponent of variable `i` among the terms.
    pub fn exponent_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let f = it.next()?;
        Some(it.fold((f, f), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Ring homomorphism fixing the field, sending variable `i` to `images[i]`
    /// (or to itself when absent).
    pub fn substitute(&self, map: &[(usize, MultiPoly)]) -> Result<Self> {
        let n = self.ring.nvars();
        let mut imgs: Vec<Option<&MultiPoly>> = vec![None; n];
        for (i, p) in map {
            p.check_ring(self);
            imgs[*i] = Some(p);
        }
        let mut pos_cache: Vec<Vec<MultiPoly>> = vec![Vec::new(); n];
        let mut neg_cache: Vec<Option<MultiPoly>> = vec![None; n];
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            // untouched variables stay a monomial factor
            let mut mono = vec![0; n];
            let mut acc = Self::constant(&self.ring, c.clone());
            for i in 0..n {
                let a = e[i];
                if a == 0 {
                    continue;
                }
                let Some(img) = imgs[i] else {
                    mono[i] = a;
                    continue;
                };
                let factor = if a > 0 {
                    let cache = &mut pos_cache[i];
                    if cache.is_empty() {
                        cache.push(Self::one(&self.ring));
                    }
                    while cache.len() <= a as usize {
                        let next = &cache[cache.len() - 1] * img;
                        cache.push(next);
                    }
                    cache[a as usize].clone()
                } else {
                    if neg_cache[i].is_none() {
                        neg_cache[i] = Some(
                            img.monomial_inverse()
                                .map_err(|_| Error::NonInvertibleImage(self.ring.names()[i].clone()))?,
                        );
                    }
                    neg_cache[i].as_ref().unwrap().pow((-a) as u32)
                };
                acc = &acc * &factor;
            }
            let acc = acc.mul_monomial(&mono, &self.field().one());
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Substitute field values for some variables.
    pub fn specialize(&self, vals: &[(usize, Scalar)]) -> Result<Self> {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut e2 = e.clone();
            for (i, v) in vals {
                let a = e[*i];
                if a != 0 {
                    if a < 0 && v.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    c = &c * &v.pow(a as i64);
                    e2[*i] = 0;
                }
            }
            out.add_term(e2, c);
        }
        Ok(out)
    }

    /// Full evaluation at a point (one value per variable).
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        let vals: Vec<(usize, Scalar)> = point.iter().cloned().enumerate().collect();
        let p = self.specialize(&vals)?;
        Ok(p.constant_term())
    }

    /// Groups terms by the exponents of `vars`; each value has those exponents
    /// set to zero.
    pub fn coefficients_in(&self, vars: &[usize]) -> BTreeMap<Exps, MultiPoly> {
        let mut out: BTreeMap<Exps, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Exps = vars.iter().map(|i| e[*i]).collect();
            let mut rest = e.clone();
            for i in vars {
                rest[*i] = 0;
            }
            out.entry(key).or_insert_with(|| Self::zero(&self.ring)).add_term(rest, c.clone());
        }
        out
    }

    /// Coefficient of a monomial in the listed variables.
    pub fn coefficient_of(&self, vars: &[usize], key: &[i32]) -> MultiPoly {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            if vars.iter().zip(key).all(|(i, k)| e[*i] == *k) {
                let mut rest = e.clone();
                for i in vars {
                    rest[*i] = 0;
                }
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / q`; errors when `q` does not divide `self`.
    pub fn exact_divide(&self, q: &MultiPoly) -> Result<Self> {
        self.check_ring(q);
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        // Plain lexicographic order on exponent vectors is a monoid order on
        // Laurent monomials, so leading and trailing terms multiply.
        let lead = |p: &MultiPoly| p.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()));
        let (ql, qc) = lead(q).unwrap();
        let qcinv = qc.inv()?;
        let (pt, _) = self.terms.iter().next().unwrap();
        let (qt, _) = q.terms.iter().next().unwrap();
        let floor: Exps = pt.iter().zip(qt).map(|(a, b)| a - b).collect();
        let fail = || Error::NonExactDivision(format!("({self}) / ({q})"));
        let mut rem = self.clone();
        let mut quo = Self::zero(&self.ring);
        while let Some((rl, rc)) = lead(&rem) {
            let m: Exps = rl.iter().zip(&ql).map(|(a, b)| a - b).collect();
            if m < floor {
                return Err(fail());
            }
            for (i, a) in m.iter().enumerate() {
                if *a < 0 && !self.ring.is_invertible(i) {
                    return Err(fail());
                }
            }
            let c = &rc * &qcinv;
            rem = &rem - &q.mul_monomial(&m, &c);
            quo.add_term(m, c);
        }
        Ok(quo)
    }

    /// Re-express in another ring by variable name, converting coefficients.
    pub fn convert(&self, target: &RingRef) -> Result<Self> {
        let mut idx = Vec::with_capacity(self.ring.nvars());
        for n in self.ring.names() {
            idx.push(target.index(n).ok());
        }
        let tf = target.field();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.nvars()];
            for (i, a) in e.iter().enumerate() {
                if *a != 0 {
                    let j = idx[i].ok_or_else(|| Error::UnknownVariable(self.ring.names()[i].clone()))?;
                    if *a < 0 && !target.is_invertible(j) {
                        return Err(Error::NegativeExponent(target.names()[j].clone()));
                    }
                    e2[j] = *a;
                }
            }
            let c2 = if c.field() == tf {
                c.clone()
            } else {
                match (c, tf) {
                    (Scalar::Q(r), _) => tf.from_bigrational(r)?,
                    (Scalar::Qw(_), _) if c.as_rational().is_some() => tf.from_bigrational(&c.as_rational().unwrap())?,
                    _ => return Err(Error::FieldMismatch(format!("{} -> {}", c.field(), tf))),
                }
            };
            out.add_term(e2, c2);
        }
        Ok(out)
    }

    /// Multiply by the smallest monomial making every exponent nonnegative.
    /// Returns the cleared polynomial and the multiplier's exponent vector.
    pub fn clear_denominators(&self) -> (Self, Exps) {
        let n = self.ring.nvars();
        let mut m = vec![0; n];
        for e in self.terms.keys() {
            for i in 0..n {
                m[i] = m[i].max(-e[i]);
            }
        }
        (self.mul_monomial(&m, &self.field().one()), m)
    }

    /// Scalar-normalized representative: over ℚ cleared denominators, content
    /// removed and positive leading coefficient; otherwise monic.
    pub fn canonical_primitive(&self) -> Self {
        let Some((_, lc)) = self.leading_term() else { return self.clone() };
        match lc {
            Scalar::Q(_) => {
                use num_integer::Integer;
                use num_traits::{One, Zero};
                let mut den = num_bigint::BigInt::one();
                let mut num = num_bigint::BigInt::zero();
                for c in self.terms.values() {
                    if let Scalar::Q(r) = c {
                        den = den.lcm(r.denom());
                        num = num.gcd(r.numer());
                    }
                }
                let mut f = num_rational::BigRational::new(den, num);
                if lc.is_negative_display() {
                    f = -f;
                }
                self.scale(&Scalar::Q(f))
            }
            _ => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Variables that occur with nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|i| self.terms.keys().any(|e| e[*i] != 0)).collect()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.check_ring(o);
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (e, c) in &small.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.check_ring(o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.check_ring(o);
        let mut r = MultiPoly::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        r
    }
}

macro_rules! owned_poly_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                self.$m(&o)
            }
        }
    };
}
owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_monomial(ring: &Ring, e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, a) in e.iter().enumerate() {
        match *a {
            0 => {}
            1 => parts.push(ring.names()[i].clone()),
            a => parts.push(format!("{}^{}", ring.names()[i], a)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative_display();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(&self.ring, e);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_poly;

    fn q() -> RingRef {
        Ring::standard(FieldSpec::Rationals, &[]).unwrap()
    }

    #[test]
    fn weighted_degrees() {
        let r = q();
        assert_eq!(parse_poly("y0^2", &r).unwrap().weighted_degree(), Degree::Homogeneous(4));
        assert_eq!(parse_poly("x1^3*x2^-1", &r).unwrap().weighted_degree(), Degree::Homogeneous(2));
        assert_eq!(parse_poly("x0 + y0", &r).unwrap().weighted_degree(), Degree::Inhomogeneous);
        assert_eq!(MultiPoly::zero(&r).weighted_degree(), Degree::Zero);
    }

    #[test]
    fn exact_division() {
        let r = q();
        let p = parse_poly("x0^2 - x1^2", &r).unwrap();
        let d = parse_poly("x0 - x1", &r).unwrap();
        assert_eq!(p.exact_divide(&d).unwrap(), parse_poly("x0 + x1", &r).unwrap());
        let x0 = parse_poly("y0", &r).unwrap();
        let x1 = parse_poly("y1", &r).unwrap();
        assert!(x0.exact_divide(&x1).is_err());
        // Laurent quotients are allowed for invertible variables
        let a = parse_poly("x0", &r).unwrap();
        let b = parse_poly("x1", &r).unwrap();
        assert_eq!(a.exact_divide(&b).unwrap(), parse_poly("x0*x1^-1", &r).unwrap());
        let c = parse_poly("x0 + x1 + y0", &r).unwrap();
        let big = &c.pow(3) * &parse_poly("x2^6", &r).unwrap();
        assert_eq!(big.exact_divide(&c).unwrap(), &c.pow(2) * &parse_poly("x2^6", &r).unwrap());
        assert!(parse_poly("1", &r).unwrap().exact_divide(&parse_poly("1 - x0", &r).unwrap()).is_err());
    }

    #[test]
    fn substitution_examples() {
        let f = FieldSpec::PrimeField(31);
        let r = Ring::standard(f, &[]).unwrap();
        let xi = f.xi().unwrap();
        let x = |i: usize| MultiPoly::var_idx(&r, i);
        let cyc = vec![(0, x(1)), (1, x(2)), (2, x(0))];
        let s = parse_poly("x0 + x1 + x2", &r).unwrap();
        assert_eq!(s.substitute(&cyc).unwrap(), s);
        let tau: Vec<_> = (0..3).map(|i| (i, x(i).scale(&xi.pow(i as i64)))).collect();
        let m = parse_poly("x0*x1*x2", &r).unwrap();
        assert_eq!(m.substitute(&tau).unwrap(), m);
        let lp = parse_poly("x1^3*x2^-1", &r).unwrap();
        assert_eq!(lp.substitute(&cyc).unwrap(), parse_poly("x2^3*x0^-1", &r).unwrap());
        let bad = vec![(2, parse_poly("x0 + x1", &r).unwrap())];
        assert!(lp.substitute(&bad).is_err());
    }

    #[test]
    fn printing_order() {
        let r = q();
        let p = parse_poly("x1*x2 + 2*y0 - x0^2 + 1/2", &r).unwrap();
        assert_eq!(p.to_string(), "-x0^2 + x1*x2 + 2*y0 + 1/2");
        assert_eq!(p.canonical_primitive().to_string(), "2*x0^2 - 2*x1*x2 - 4*y0 - 1");
    }
}
