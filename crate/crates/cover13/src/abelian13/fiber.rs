//! The degree-6 fiber of the cover over a base point, as an explicit algebra
//! with basis {1, v0, v1, v2, v3, w}, where (v0, v1, v2, v3) is the chart's
//! fiber basis (y_a, y_b, z_a, z_b) and w = v0v3 − v1v2.
//!
//! Reduction rewrites q_k to R_k = q_k − G_k (constant plus linear). Every
//! rewrite subtracts an element of the ideal, so the six elements span the
//! quotient; an associative, commutative table on which the generators vanish
//! then certifies that they are also independent.

use super::GradedIdeal;
use crate::error::{Error, Result};
use crate::exactring::{FieldSpec, Mat, MultiPoly, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;

/// Exponents in (v0, v1, v2, v3).
pub type FMono = [u32; 4];
/// Sparse polynomial in the four fiber variables.
pub type FPoly = BTreeMap<FMono, Scalar>;

pub const W_INDEX: usize = 5;

#[derive(Clone, Debug)]
pub struct FiberAlgebra {
    pub field: FieldSpec,
    pub point: [Scalar; 3],
    pub chart: usize,
    pub basis_names: [String; 6],
    /// rules[k] = (constant, linear coefficients) of R_k
    rules: Vec<[Scalar; 5]>,
    /// table[i][j] = coordinates of e_i·e_j
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub trace_form: Mat,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub point: Vec<String>,
    pub chart: String,
    pub basis: Vec<String>,
    pub dimension: usize,
    pub commutative: bool,
    pub associative: bool,
    pub traces: Vec<String>,
    pub discriminant: String,
    pub etale: bool,
}

fn mono_deg(m: &FMono) -> u32 {
    m.iter().sum()
}

fn unit(i: usize) -> FMono {
    let mut m = [0; 4];
    m[i] = 1;
    m
}

fn pair(a: usize, b: usize) -> FMono {
    let mut m = [0; 4];
    m[a] += 1;
    m[b] += 1;
    m
}

/// Index of q_k with leading monomial v_a v_b (q4 covers both v0v3 and v1v2).
fn q_index(a: usize, b: usize) -> Option<usize> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    Some(match (a, b) {
        (0, 0) => 0,
        (0, 1) => 1,
        (1, 1) => 2,
        (0, 2) => 3,
        (1, 3) => 5,
        (2, 2) => 6,
        (2, 3) => 7,
        (3, 3) => 8,
        _ => return None,
    })
}

fn add_into(acc: &mut [Scalar], v: &[Scalar], c: &Scalar) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = &*a + &(b * c);
    }
}

pub fn fpoly_mul(a: &FPoly, b: &FPoly) -> FPoly {
    let mut out = FPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
            let c = ca * cb;
            let e = out.entry(m).or_insert_with(|| c.zero_like());
            *e = &*e + &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl FiberAlgebra {
    fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); 6]
    }

    fn rule_vec(&self, k: usize) -> Vec<Scalar> {
        let mut v = self.rules[k].to_vec();
        v.push(self.field.zero());
        v
    }

    /// Coordinates of a monomial in the basis.
    pub fn normal_form(&self, m: &FMono) -> Vec<Scalar> {
        let f = self.field;
        let mut out = self.zero_vec();
        match mono_deg(m) {
            0 => out[0] = f.one(),
            1 => out[1 + m.iter().position(|e| *e == 1).unwrap()] = f.one(),
            2 => {
                let vars: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat(i).take(m[i] as usize)).collect();
                let (a, b) = (vars[0], vars[1]);
                match q_index(a, b) {
                    Some(k) => return self.rule_vec(k),
                    None => {
                        // v0v3 = q4 + w/2, v1v2 = q4 − w/2
                        let half = f.from_ratio(1, 2).expect("characteristic ≠ 2");
                        out = self.rule_vec(4);
                        out[W_INDEX] = if (a, b) == (0, 3) { half } else { -&half };
                    }
                }
            }
            3 => {
                // split off a variable so that the remaining quadratic is a q
                for a in 0..4 {
                    if m[a] == 0 {
                        continue;
                    }
                    let mut rest = *m;
                    rest[a] -= 1;
                    let vars: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat(i).take(rest[i] as usize)).collect();
                    if let Some(k) = q_index(vars[0], vars[1]) {
                        // v_a · R_k, which has degree ≤ 2
                        let r = &self.rules[k];
                        let mut p = FPoly::new();
                        p.insert(unit(a), r[0].clone());
                        for j in 0..4 {
                            if !r[1 + j].is_zero() {
                                p.insert(pair(a, j), r[1 + j].clone());
                            }
                        }
                        return self.reduce(&p);
                    }
                }
                unreachable!("every cubic has a split avoiding the w-direction");
            }
            _ => {
                let a = m.iter().position(|e| *e > 0).unwrap();
                let mut rest = *m;
                rest[a] -= 1;
                let nf = self.normal_form(&rest);
                return self.times_var(a, &nf);
            }
        }
        out
    }

    /// v_a times a basis combination.
    fn times_var(&self, a: usize, x: &[Scalar]) -> Vec<Scalar> {
        let mut p = FPoly::new();
        let mut push = |m: FMono, c: Scalar| {
            if !c.is_zero() {
                let e = p.entry(m).or_insert_with(|| c.zero_like());
                *e = &*e + &c;
            }
        };
        push(unit(a), x[0].clone());
        for j in 0..4 {
            push(pair(a, j), x[1 + j].clone());
        }
        let mut m = pair(0, 3);
        m[a] += 1;
        push(m, x[W_INDEX].clone());
        let mut m = pair(1, 2);
        m[a] += 1;
        push(m, -&x[W_INDEX]);
        self.reduce(&p)
    }

    pub fn reduce(&self, p: &FPoly) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (m, c) in p {
            add_into(&mut out, &self.normal_form(m), c);
        }
        out
    }

    /// The basis element e_i as a polynomial.
    pub fn basis_poly(&self, i: usize) -> FPoly {
        let one = self.field.one();
        let mut p = FPoly::new();
        match i {
            0 => {
                p.insert([0; 4], one);
            }
            1..=4 => {
                p.insert(unit(i - 1), one);
            }
            _ => {
                p.insert(pair(0, 3), one.clone());
                p.insert(pair(1, 2), -&one);
            }
        }
        p
    }

    /// A basis combination as a polynomial.
    pub fn to_poly(&self, x: &[Scalar]) -> FPoly {
        let mut out = FPoly::new();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, v) in self.basis_poly(i) {
                let e = out.entry(m).or_insert_with(|| c.zero_like());
                *e = &*e + &(&v * c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    add_into(&mut out, &self.table[i][j], &(ai * bj));
                }
            }
        }
        out
    }

    fn unit_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn dimension(&self) -> usize {
        6
    }

    pub fn is_commutative(&self) -> bool {
        (0..6).all(|i| (0..6).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn is_associative(&self) -> bool {
        for i in 0..6 {
            for j in 0..6 {
                let ij = &self.table[i][j];
                for k in 0..6 {
                    let left = self.mul(ij, &self.unit_vec(k));
                    let right = self.mul(&self.unit_vec(i), &self.table[j][k]);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Evaluates a fiber polynomial inside the algebra using only the table.
    pub fn evaluate(&self, p: &FPoly) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (m, c) in p {
            let mut acc = self.unit_vec(0);
            for (v, e) in m.iter().enumerate() {
                for _ in 0..*e {
                    acc = self.mul(&acc, &self.unit_vec(1 + v));
                }
            }
            add_into(&mut out, &acc, c);
        }
        out
    }

    /// tr(L_{e_k}) for each basis element.
    pub fn traces(&self) -> Vec<Scalar> {
        (0..6).map(|k| (0..6).fold(self.field.zero(), |acc, i| &acc + &self.table[k][i][i])).collect()
    }

    pub fn report(&self) -> FiberReport {
        let d = trace_discriminant(self);
        FiberReport {
            point: self.point.iter().map(|s| s.to_string()).collect(),
            chart: format!("u{}", self.chart),
            basis: self.basis_names.to_vec(),
            dimension: 6,
            commutative: self.is_commutative(),
            associative: self.is_associative(),
            traces: self.traces().iter().map(|s| s.to_string()).collect(),
            etale: !d.is_zero(),
            discriminant: d.to_string(),
        }
    }
}

/// Specializes one generator at the base point and returns it as a fiber
/// polynomial.
pub fn specialize_to_fiber(ideal: &GradedIdeal, g: &MultiPoly, point: &[Scalar; 3]) -> Result<FPoly> {
    let vals: Vec<(usize, Scalar)> = point.iter().cloned().enumerate().collect();
    let s = g.specialize(&vals)?;
    let mut out = FPoly::new();
    for (e, c) in s.terms() {
        let mut m = [0u32; 4];
        for (i, v) in e.iter().enumerate() {
            if *v == 0 {
                continue;
            }
            let pos = ideal.basis.iter().position(|b| *b == i).filter(|_| *v > 0).ok_or_else(|| {
                Error::Precondition(format!("generator involves `{}` beyond the fiber basis", ideal.ring.names()[i]))
            })?;
            m[pos] = *v as u32;
        }
        out.insert(m, c.clone());
    }
    Ok(out)
}

pub fn fiber_algebra(ideal: &GradedIdeal, point: &[Scalar; 3]) -> Result<FiberAlgebra> {
    let f = ideal.ring.field();
    if point[ideal.chart].is_zero() {
        return Err(Error::Precondition(format!("x{} vanishes at the point", ideal.chart)));
    }
    if ideal.generators.len() != 9 {
        return Err(Error::Precondition("fiber algebras need the nine-generator ideal".into()));
    }
    let mut rules = Vec::new();
    let mut gens = Vec::new();
    for (k, g) in ideal.generators.iter().enumerate() {
        let p = specialize_to_fiber(ideal, g, point)?;
        let mut r: [Scalar; 5] = std::array::from_fn(|_| f.zero());
        for (m, c) in &p {
            match mono_deg(m) {
                0 => r[0] = -c,
                1 => r[1 + m.iter().position(|e| *e == 1).unwrap()] = -c,
                2 => {}
                _ => return Err(Error::Precondition(format!("generator {k} has fiber degree above 2"))),
            }
        }
        rules.push(r);
        gens.push(p);
    }
    let names: Vec<String> = ideal.basis.iter().map(|i| ideal.ring.names()[*i].clone()).collect();
    let basis_names = ["1".to_string(), names[0].clone(), names[1].clone(), names[2].clone(), names[3].clone(), "w".to_string()];
    let mut fa = FiberAlgebra {
        field: f,
        point: point.clone(),
        chart: ideal.chart,
        basis_names,
        rules,
        table: Vec::new(),
        trace_form: Mat::zeros(f, 6, 6),
    };
    // quadratic parts must be exactly q, or the rules do not describe G
    for (k, p) in gens.iter().enumerate() {
        let quad: FPoly = p.iter().filter(|(m, _)| mono_deg(m) == 2).map(|(m, c)| (*m, c.clone())).collect();
        let r = fa.reduce(&quad);
        if r != fa.rule_vec(k) {
            return Err(Error::Precondition(format!("generator {k} does not have q_{k} as its quadratic part")));
        }
    }
    let basis: Vec<FPoly> = (0..6).map(|i| fa.basis_poly(i)).collect();
    fa.table = (0..6).map(|i| (0..6).map(|j| fa.reduce(&fpoly_mul(&basis[i], &basis[j]))).collect()).collect();
    if !fa.is_commutative() {
        return Err(Error::NotFlat("multiplication table is not commutative".into()));
    }
    if !fa.is_associative() {
        return Err(Error::NotFlat(format!("rewriting is not confluent at ({})", fa.point.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))));
    }
    for (k, g) in gens.iter().enumerate() {
        if fa.evaluate(g).iter().any(|c| !c.is_zero()) {
            return Err(Error::NotFlat(format!("generator {k} does not vanish in the quotient")));
        }
    }
    let tr = fa.traces();
    let mut tf = Mat::zeros(f, 6, 6);
    for i in 0..6 {
        for j in 0..6 {
            let v = (0..6).fold(f.zero(), |acc, k| &acc + &(&fa.table[i][j][k] * &tr[k]));
            tf.set(i, j, v);
        }
    }
    fa.trace_form = tf;
    Ok(fa)
}

/// det of the trace form; nonzero exactly when the fiber is étale.
pub fn trace_discriminant(fa: &FiberAlgebra) -> Scalar {
    fa.trace_form.det()
}

#[cfg(test)]
mod tests {
    use super::super::{build_ideal, SurfaceParams};
    use super::*;

    const F31: FieldSpec = FieldSpec::PrimeField(31);

    fn pt(v: [i64; 3]) -> [Scalar; 3] {
        v.map(|x| F31.from_i64(x))
    }

    #[test]
    fn fat_point() {
        let id = build_ideal(&SurfaceParams::zero(F31), 2).unwrap();
        let fa = fiber_algebra(&id, &pt([3, 5, 7])).unwrap();
        // v0·v3 = w/2, v1·v2 = −w/2, everything else in the maximal ideal
        // multiplies to zero
        let half = F31.from_ratio(1, 2).unwrap();
        for i in 1..6 {
            for j in 1..6 {
                let mut expect = vec![F31.zero(); 6];
                match (i.min(j), i.max(j)) {
                    (1, 4) => expect[W_INDEX] = half.clone(),
                    (2, 3) => expect[W_INDEX] = -&half,
                    _ => {}
                }
                assert_eq!(fa.table[i][j], expect, "e{i}·e{j}");
            }
        }
        assert_eq!(fa.traces()[0], F31.from_i64(6));
        assert!(trace_discriminant(&fa).is_zero());
    }

    #[test]
    fn sample_surface_is_flat() {
        let p = SurfaceParams::from_i64(F31, [0, 1, 1, 0], [0, 1, 1, 0]);
        let id = build_ideal(&p, 2).unwrap();
        let fa = fiber_algebra(&id, &pt([2, 9, 4])).unwrap();
        assert!(fa.is_associative() && fa.is_commutative());
        assert_eq!(fa.basis_names[5], "w");
    }

    #[test]
    fn chart_coordinate_must_be_nonzero() {
        let id = build_ideal(&SurfaceParams::zero(F31), 2).unwrap();
        assert!(fiber_algebra(&id, &pt([1, 1, 0])).is_err());
    }
}
