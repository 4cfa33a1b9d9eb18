//! Cover homomorphisms Φ ∈ Hom(Sym²Ω¹(−m), Ω¹(−m)) on ℙ².
//!
//! Globally Φ(Y²) = Σ C_k y_k with symmetric 3×3 matrices C_k, read as the
//! multiplication rule y_a·y_b = Σ_k C_k[a,b]·y_k (+ constants).  Locally on
//! the chart x_k ≠ 0 with surviving basis (y_a, y_b), a < b, a trace-free Φ is
//!
//! ```text
//! y_a²    =  c1·y_a + c0·y_b
//! y_a·y_b = −c2·y_a − c1·y_b
//! y_b²    =  c3·y_a + c2·y_b
//! ```
//!
//! The ten β parameters lift to certificates N_k with C_k = M₃N_kM₃.  With the
//! rule above, the table assignment (β0 = c01, β01 = 2c02 + c11, ...) gives
//! the negatives of the β-formulas for c0..c3, so the lift uses N_k = −table.

use crate::ambient::{Chart, Presentation};
use crate::error::{Error, Result};
use crate::exactring::{solve_combination, FieldSpec, Mat, MultiPoly, PolyMatrix, Ring, RingRef, Scalar};
use crate::koszul::{m3, ternary_monomials, xbar};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const BETA_NAMES: [&str; 10] = ["b0", "b1", "b2", "b01", "b02", "b10", "b12", "b20", "b21", "b012"];

/// Standard ring with the ten β's as weight-0 parameters, then `extra`.
pub fn beta_ring(field: FieldSpec, extra: &[&str]) -> Result<RingRef> {
    let mut p: Vec<&str> = BETA_NAMES.to_vec();
    p.extend_from_slice(extra);
    Ring::standard(field, &p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BetaVector {
    values: Vec<MultiPoly>,
}

impl BetaVector {
    pub fn new(values: Vec<MultiPoly>) -> Result<Self> {
        if values.len() != 10 {
            return Err(Error::Precondition("a β-vector has ten entries".into()));
        }
        Ok(BetaVector { values })
    }

    /// β's as the ring parameters of the same names.
    pub fn symbolic(ring: &RingRef) -> Result<Self> {
        Self::new(BETA_NAMES.iter().map(|n| MultiPoly::var(ring, n)).collect::<Result<_>>()?)
    }

    pub fn from_scalars(ring: &RingRef, v: &[Scalar]) -> Result<Self> {
        Self::new(v.iter().map(|s| MultiPoly::constant(ring, s.clone())).collect())
    }

    pub fn zero(ring: &RingRef) -> Self {
        BetaVector { values: vec![MultiPoly::zero(ring); 10] }
    }

    /// Only `name` set to one.
    pub fn unit(ring: &RingRef, name: &str) -> Result<Self> {
        let i = beta_index(name)?;
        let mut b = Self::zero(ring);
        b.values[i] = MultiPoly::one(ring);
        Ok(b)
    }

    pub fn ring(&self) -> &RingRef {
        self.values[0].ring()
    }

    pub fn get(&self, name: &str) -> &MultiPoly {
        &self.values[beta_index(name).expect("known β name")]
    }

    pub fn values(&self) -> &[MultiPoly] {
        &self.values
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        BETA_NAMES.iter().zip(&self.values).map(|(n, v)| (n.to_string(), v.to_string())).collect()
    }

    pub fn from_map(ring: &RingRef, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut v = Vec::new();
        for n in BETA_NAMES {
            let s = map.get(n).ok_or_else(|| Error::Precondition(format!("missing key `{n}`")))?;
            v.push(crate::exactring::parse_poly(s, ring)?);
        }
        for k in map.keys() {
            beta_index(k)?;
        }
        Self::new(v)
    }
}

pub fn beta_index(name: &str) -> Result<usize> {
    BETA_NAMES.iter().position(|n| *n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Serialized β-vector: keys "b0".."b012".
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BetaJson(pub BTreeMap<String, String>);

#[derive(Clone, Debug, PartialEq)]
pub struct LocalEquations {
    pub chart: usize,
    /// surviving y-variables (ring indices), increasing
    pub basis: [usize; 2],
    pub c: [MultiPoly; 4],
}

fn y_indices(ring: &RingRef) -> Result<[usize; 3]> {
    Ok([ring.index("y0")?, ring.index("y1")?, ring.index("y2")?])
}

fn chart_basis(ring: &RingRef, k: usize) -> Result<[usize; 2]> {
    let y = y_indices(ring)?;
    let rest: Vec<usize> = (0..3).filter(|i| *i != k).map(|i| y[i]).collect();
    Ok([rest[0], rest[1]])
}

impl LocalEquations {
    pub fn ring(&self) -> &RingRef {
        self.c[0].ring()
    }

    /// The three relations, each written as (quadratic) − (linear part).
    pub fn relations(&self) -> [MultiPoly; 3] {
        let r = self.ring();
        let ya = MultiPoly::var_idx(r, self.basis[0]);
        let yb = MultiPoly::var_idx(r, self.basis[1]);
        let [c0, c1, c2, c3] = &self.c;
        [
            &(&ya * &ya) - &(&(c1 * &ya) + &(c0 * &yb)),
            &(&ya * &yb) + &(&(c2 * &ya) + &(c1 * &yb)),
            &(&yb * &yb) - &(&(c3 * &ya) + &(c2 * &yb)),
        ]
    }

    /// Constant terms completing the linear parts to a rank-3 algebra, with
    /// (a, b, c, d) = (c1, c0, c3, c2): 2(a² − bd), −(ad − bc), 2(d² − ac).
    pub fn miranda_constants(&self) -> [MultiPoly; 3] {
        let [c0, c1, c2, c3] = &self.c;
        let f = self.ring().field();
        let two = f.from_i64(2);
        [
            (&(c1 * c1) - &(c0 * c2)).scale(&two),
            -&(&(c1 * c2) - &(c0 * c3)),
            (&(c2 * c2) - &(c1 * c3)).scale(&two),
        ]
    }

    /// Structure constants of the rank-3 algebra on (1, y_a, y_b):
    /// table[i][j] = coordinates of e_i·e_j.
    pub fn algebra(&self) -> Rank3Algebra {
        let r = self.ring().clone();
        let one = MultiPoly::one(&r);
        let zero = MultiPoly::zero(&r);
        let [c0, c1, c2, c3] = self.c.clone();
        let [k0, k1, k2] = self.miranda_constants();
        let e = |i: usize| {
            let mut v = [zero.clone(), zero.clone(), zero.clone()];
            v[i] = one.clone();
            v
        };
        let yy = [k0, c1.clone(), c0];
        let yz = [k1, -&c2, -&c1];
        let zz = [k2, c3, c2];
        let table = [
            [e(0), e(1), e(2)],
            [e(1), yy, yz.clone()],
            [e(2), yz, zz],
        ];
        Rank3Algebra { table }
    }
}

#[derive(Clone, Debug)]
pub struct Rank3Algebra {
    pub table: [[[MultiPoly; 3]; 3]; 3],
}

impl Rank3Algebra {
    pub fn mul(&self, a: &[MultiPoly; 3], b: &[MultiPoly; 3]) -> [MultiPoly; 3] {
        let r = a[0].ring();
        let mut out = [MultiPoly::zero(r), MultiPoly::zero(r), MultiPoly::zero(r)];
        for i in 0..3 {
            for j in 0..3 {
                if a[i].is_zero() || b[j].is_zero() {
                    continue;
                }
                let s = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o = &*o + &(&s * &self.table[i][j][k]);
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn is_associative(&self) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let l = self.mul(&self.table[i][j], &self.basis(k));
                    let r = self.mul(&self.basis(i), &self.table[j][k]);
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn basis(&self, i: usize) -> [MultiPoly; 3] {
        self.table[0][i].clone()
    }
}

/// U2 equations from the β's, as the closed formulas.
pub fn equations_from_betas(b: &BetaVector) -> Result<LocalEquations> {
    let r = b.ring().clone();
    let f = r.field();
    let x = |e: [i32; 3]| {
        let mut v = vec![0; r.nvars()];
        v[..3].copy_from_slice(&e);
        MultiPoly::monomial(&r, v, f.one())
    };
    let k = |n: i64, d: i64| f.from_ratio(n, d).unwrap();
    let t = |n: i64, d: i64, name: &str, e: [i32; 3]| (b.get(name) * &x(e)).scale(&k(n, d));
    let sum = |v: Vec<MultiPoly>| v.into_iter().fold(MultiPoly::zero(&r), |a, p| &a + &p);
    let c0 = sum(vec![
        t(1, 1, "b1", [0, 0, 2]),
        t(-1, 1, "b12", [0, 1, 1]),
        t(1, 1, "b21", [0, 2, 0]),
        t(-1, 1, "b2", [0, 3, -1]),
    ]);
    let c1 = sum(vec![
        t(1, 3, "b10", [0, 0, 2]),
        t(-2, 3, "b012", [0, 1, 1]),
        t(1, 3, "b20", [0, 2, 0]),
        t(-1, 3, "b12", [1, 0, 1]),
        t(2, 3, "b21", [1, 1, 0]),
        t(-1, 1, "b2", [1, 2, -1]),
    ]);
    let c2 = sum(vec![
        t(1, 3, "b01", [0, 0, 2]),
        t(-1, 3, "b02", [0, 1, 1]),
        t(-2, 3, "b012", [1, 0, 1]),
        t(2, 3, "b20", [1, 1, 0]),
        t(1, 3, "b21", [2, 0, 0]),
        t(-1, 1, "b2", [2, 1, -1]),
    ]);
    let c3 = sum(vec![
        t(1, 1, "b0", [0, 0, 2]),
        t(-1, 1, "b02", [1, 0, 1]),
        t(1, 1, "b20", [2, 0, 0]),
        t(-1, 1, "b2", [3, 0, -1]),
    ]);
    Ok(LocalEquations { chart: 2, basis: chart_basis(&r, 2)?, c: [c0, c1, c2, c3] })
}

/// Quadratic coefficient matrix of three polynomials in the basis
/// (y_a², y_a·y_b, y_b²).
fn quadratic_part(polys: &[MultiPoly; 3], basis: [usize; 2]) -> PolyMatrix {
    let r = polys[0].ring().clone();
    let keys = [[2, 0], [1, 1], [0, 2]];
    PolyMatrix::from_fn(&r, 3, 3, |i, j| polys[i].coefficient_of(&basis, &keys[j]))
}

/// Inverse of a 3×3 matrix whose determinant is an invertible monomial.
fn monomial_det_inverse(p: &PolyMatrix) -> Result<PolyMatrix> {
    let g = |i: usize, j: usize| p.get(i, j).clone();
    let cof = |i: usize, j: usize| {
        let (r0, r1) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (c0, c1) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let m = &(&g(r0, c0) * &g(r1, c1)) - &(&g(r0, c1) * &g(r1, c0));
        if (i + j) % 2 == 1 {
            -m
        } else {
            m
        }
    };
    let det = (0..3).fold(MultiPoly::zero(p.ring()), |acc, j| &acc + &(&g(0, j) * &cof(0, j)));
    let inv = det.monomial_inverse().map_err(|_| Error::Degenerate(format!("quadratic part has determinant {det}")))?;
    Ok(PolyMatrix::from_fn(p.ring(), 3, 3, |i, j| &cof(j, i) * &inv))
}

/// Recombines three relations so that their quadratic parts become exactly
/// (y_a², y_a·y_b, y_b²).
pub fn normalize_quadratic_system(polys: &[MultiPoly; 3], basis: [usize; 2]) -> Result<[MultiPoly; 3]> {
    let inv = monomial_det_inverse(&quadratic_part(polys, basis))?;
    let col = PolyMatrix::column(polys[0].ring(), polys.to_vec());
    let out = inv.mul(&col);
    Ok([out.get(0, 0).clone(), out.get(1, 0).clone(), out.get(2, 0).clone()])
}

/// Reads c0..c3 off a normalized system; errors when the linear parts are not
/// of trace-free shape.
pub fn read_equations(polys: &[MultiPoly; 3], chart: usize, basis: [usize; 2]) -> Result<LocalEquations> {
    let lin = |p: &MultiPoly, v: usize| p.coefficient_of(&[basis[0], basis[1]], &if v == 0 { [1, 0] } else { [0, 1] });
    let c1 = -lin(&polys[0], 0);
    let c0 = -lin(&polys[0], 1);
    let c2 = lin(&polys[1], 0);
    let c3 = -lin(&polys[2], 0);
    if lin(&polys[1], 1) != c1 || -lin(&polys[2], 1) != c2 {
        return Err(Error::Degenerate("relations are not in trace-free form".into()));
    }
    Ok(LocalEquations { chart, basis, c: [c0, c1, c2, c3] })
}

/// Rewrites equations on one chart as equations on another.
pub fn transport(eq: &LocalEquations, pres: &Presentation, to: &Chart) -> Result<LocalEquations> {
    let charts = pres.charts()?;
    let from = &charts[eq.chart];
    let map = pres.transition(to, from);
    let rel = eq.relations();
    let moved = [rel[0].substitute(&map)?, rel[1].substitute(&map)?, rel[2].substitute(&map)?];
    let basis = [to.basis[0], to.basis[1]];
    let normalized = normalize_quadratic_system(&moved, basis)?;
    read_equations(&normalized, to.inverted, basis)
}

#[derive(Clone, Debug)]
pub struct CoverHomSpec {
    pub ring: RingRef,
    pub m: i32,
    /// N_0, N_1, N_2 with C_k = M₃N_kM₃
    pub certificates: Option<[PolyMatrix; 3]>,
    pub betas: Option<BetaVector>,
}

impl CoverHomSpec {
    pub fn from_betas(b: BetaVector) -> Self {
        CoverHomSpec { ring: b.ring().clone(), m: 0, certificates: None, betas: Some(b) }
    }

    pub fn from_certificates(n: [PolyMatrix; 3]) -> Result<Self> {
        for k in &n {
            k.require_symmetric()?;
        }
        Ok(CoverHomSpec { ring: n[0].ring().clone(), m: 0, certificates: Some(n), betas: None })
    }

    /// The certificates, lifted from the β's if necessary.
    pub fn certificates(&self) -> Result<[PolyMatrix; 3]> {
        if let Some(n) = &self.certificates {
            return Ok(n.clone());
        }
        let b = self.betas.as_ref().ok_or_else(|| Error::Precondition("empty cover homomorphism".into()))?;
        Ok(lift_betas(b))
    }

    pub fn global(&self) -> Result<[PolyMatrix; 3]> {
        let m = m3(&self.ring);
        let n = self.certificates()?;
        Ok([m.mul(&n[0]).mul(&m), m.mul(&n[1]).mul(&m), m.mul(&n[2]).mul(&m)])
    }

    pub fn betas(&self) -> Result<BetaVector> {
        if let Some(b) = &self.betas {
            return Ok(b.clone());
        }
        betas_from_certificates(&self.certificates()?)
    }

    /// When both forms are present they must give the same U2 equations.
    pub fn validate(&self) -> Result<()> {
        if let (Some(_), Some(b)) = (&self.certificates, &self.betas) {
            let from_global = local_from_global(&trace_free_normalize(&self.global()?)?.c, 2)?;
            if from_global != equations_from_betas(b)? {
                return Err(Error::Precondition("certificates and β's disagree".into()));
            }
        }
        for c in self.global()? {
            if !c.mul(&xbar(&self.ring)).is_zero() {
                return Err(Error::Precondition("C_k·x̄ ≠ 0".into()));
            }
        }
        Ok(())
    }
}

/// N_k = −(table assignment): β0 → N0[0,0], β01 → 2·N0[0,1], β02 → 2·N0[0,2],
/// β10 → N0[1,1], β012 → N0[1,2], β20 → N0[2,2], β1 → N1[1,1],
/// β12 → 2·N1[1,2], β21 → N1[2,2], β2 → N2[2,2].
pub fn lift_betas(b: &BetaVector) -> [PolyMatrix; 3] {
    let r = b.ring().clone();
    let half = r.field().from_ratio(-1, 2).unwrap();
    let neg = r.field().from_i64(-1);
    let mut n = [PolyMatrix::zeros(&r, 3, 3), PolyMatrix::zeros(&r, 3, 3), PolyMatrix::zeros(&r, 3, 3)];
    let mut put = |k: usize, i: usize, j: usize, v: MultiPoly| {
        n[k].set(i, j, v.clone());
        n[k].set(j, i, v);
    };
    put(0, 0, 0, b.get("b0").scale(&neg));
    put(0, 0, 1, b.get("b01").scale(&half));
    put(0, 0, 2, b.get("b02").scale(&half));
    put(0, 1, 1, b.get("b10").scale(&neg));
    put(0, 1, 2, b.get("b012").scale(&neg));
    put(0, 2, 2, b.get("b20").scale(&neg));
    put(1, 1, 1, b.get("b1").scale(&neg));
    put(1, 1, 2, b.get("b12").scale(&half));
    put(1, 2, 2, b.get("b21").scale(&neg));
    put(2, 2, 2, b.get("b2").scale(&neg));
    n
}

/// Inverse of the table: β from arbitrary symmetric certificates.
pub fn betas_from_certificates(n: &[PolyMatrix; 3]) -> Result<BetaVector> {
    let r = n[0].ring().clone();
    let f = r.field();
    let c = |k: usize, j: usize| {
        let (a, b) = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)][j - 1];
        n[k].get(a, b).clone()
    };
    let two = f.from_i64(2);
    let lin2 = |p: MultiPoly, q: MultiPoly| &p.scale(&two) + &q;
    let v = vec![
        c(0, 1),
        c(1, 4),
        c(2, 6),
        lin2(c(0, 2), c(1, 1)),
        lin2(c(0, 3), c(2, 1)),
        lin2(c(1, 2), c(0, 4)),
        lin2(c(1, 5), c(2, 4)),
        lin2(c(2, 3), c(0, 6)),
        lin2(c(2, 5), c(1, 6)),
        &(&c(0, 5) + &c(1, 3)) + &c(2, 2),
    ];
    BetaVector::new(v.into_iter().map(|p| -p).collect())
}

/// The y-shift y = y′ + s, valid when Σ x_i s_i = 0:
/// C_k[a,b] ↦ C_k[a,b] − s_a·δ_kb − s_b·δ_ka.
pub fn apply_y_shift(c: &[PolyMatrix; 3], s: &[MultiPoly; 3]) -> [PolyMatrix; 3] {
    let mut out = c.clone();
    for (k, ck) in out.iter_mut().enumerate() {
        for a in 0..3 {
            for b in 0..3 {
                let mut v = ck.get(a, b).clone();
                if k == b {
                    v = &v - &s[a];
                }
                if k == a {
                    v = &v - &s[b];
                }
                ck.set(a, b, v);
            }
        }
    }
    out
}

/// A y-shift of an annihilating triple leaves C_k·x̄ = −x_k·s; adding x_k·K
/// with K·x̄ = s restores annihilation without changing any chart matrix.
pub fn shift_annihilating(c: &[PolyMatrix; 3], s: &[MultiPoly; 3]) -> Result<[PolyMatrix; 3]> {
    let r = c[0].ring().clone();
    let shifted = apply_y_shift(c, s);
    if s.iter().all(|p| p.is_zero()) {
        return Ok(shifted);
    }
    let k = solve_symmetric_kx(s)?.ok_or_else(|| Error::Degenerate("no symmetric K with K·x̄ = s".into()))?;
    let out: [PolyMatrix; 3] = std::array::from_fn(|i| shifted[i].add(&k.scale_poly(&x_of(&r, i))));
    if !annihilates(&out) {
        return Err(Error::Degenerate("shifted triple does not annihilate x̄".into()));
    }
    Ok(out)
}

fn x_of(r: &RingRef, i: usize) -> MultiPoly {
    MultiPoly::var_idx(r, i)
}

fn annihilates(c: &[PolyMatrix; 3]) -> bool {
    let xb = xbar(c[0].ring());
    c.iter().all(|m| m.mul(&xb).is_zero())
}

#[derive(Clone, Debug)]
pub struct Annihilated {
    pub c: [PolyMatrix; 3],
    /// y_i ↦ y_i + shift_i turns the input morphism into the output one
    pub shift: [MultiPoly; 3],
    /// total Im N adjustment: C_k changed by −x_k·K
    pub k: PolyMatrix,
}

/// Brings a triple satisfying (x2C′_i − x_iC′_2)x̄ = 0 to C_i·x̄ = 0 by an
/// Im N adjustment and, if needed, a y-shift.
pub fn annihilation_normalize(c: &[PolyMatrix; 3]) -> Result<Annihilated> {
    let r = c[0].ring().clone();
    let xb = xbar(&r);
    for m in c {
        m.require_symmetric()?;
    }
    for i in 0..2 {
        let d = c[i].scale_poly(&x_of(&r, 2)).sub(&c[2].scale_poly(&x_of(&r, i)));
        if !d.mul(&xb).is_zero() {
            return Err(Error::Precondition("(x2·C′_i − x_i·C′_2)·x̄ ≠ 0".into()));
        }
    }
    let zero3 = [MultiPoly::zero(&r), MultiPoly::zero(&r), MultiPoly::zero(&r)];
    if annihilates(c) {
        return Ok(Annihilated { c: c.clone(), shift: zero3, k: PolyMatrix::zeros(&r, 3, 3) });
    }
    // C′_2 = C_2 + x2·C with C collecting every x2-divisible monomial
    let ex = c[2].map(|p| {
        let mut q = MultiPoly::zero(&r);
        for (e, v) in p.terms() {
            if e[2] > 0 {
                let mut e2 = e.clone();
                e2[2] -= 1;
                q.add_term(e2, v.clone());
            }
        }
        q
    });
    let cur: Vec<PolyMatrix> = (0..3).map(|i| c[i].sub(&ex.scale_poly(&x_of(&r, i)))).collect();
    // C_i·x̄ = x_i·u
    let c2x = cur[2].mul(&xb);
    let u: Vec<MultiPoly> = (0..3).map(|a| c2x.get(a, 0).exact_divide(&x_of(&r, 2))).collect::<Result<_>>()?;
    for (i, ci) in cur.iter().enumerate() {
        let cx = ci.mul(&xb);
        if (0..3).any(|a| cx.get(a, 0) != &(&u[a] * &x_of(&r, i))) {
            return Err(Error::Precondition("C′_i·x̄ is not x_i·u".into()));
        }
    }
    let k = match solve_symmetric_kx(&u)? {
        Some(k) => k,
        None => symmetric_quadric_split(&u),
    };
    let kx = k.mul(&xb);
    let s: [MultiPoly; 3] = std::array::from_fn(|a| &u[a] - kx.get(a, 0));
    let adjusted: [PolyMatrix; 3] = std::array::from_fn(|i| cur[i].sub(&k.scale_poly(&x_of(&r, i))));
    let out = apply_y_shift(&adjusted, &s);
    if !annihilates(&out) {
        return Err(Error::Degenerate("annihilation normalization did not converge".into()));
    }
    Ok(Annihilated { c: out, shift: s, k: k.add(&ex) })
}

const SYM_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Symmetric K of x-forms with K·x̄ = u, if one exists.
fn solve_symmetric_kx(u: &[MultiPoly]) -> Result<Option<PolyMatrix>> {
    let r = u[0].ring().clone();
    let xb = xbar(&r);
    let others: Vec<usize> = (3..r.nvars()).collect();
    // candidate monomials: every (non-x key, x-degree − 1) occurring in u
    let mut keys: BTreeMap<(Vec<i32>, i64), ()> = BTreeMap::new();
    for p in u {
        for (e, _) in p.terms() {
            if (0..3).any(|i| e[i] < 0) {
                return Ok(None);
            }
            let key: Vec<i32> = others.iter().map(|i| e[*i]).collect();
            keys.insert((key, (0..3).map(|i| e[i] as i64).sum::<i64>() - 1), ());
        }
    }
    let mut basis = Vec::new();
    for (key, d) in keys.keys() {
        for t in ternary_monomials(*d) {
            let mut e = vec![0; r.nvars()];
            e[..3].copy_from_slice(&t);
            for (i, v) in others.iter().zip(key) {
                e[*i] = *v;
            }
            for (a, b) in SYM_PAIRS {
                basis.push((a, b, MultiPoly::monomial(&r, e.clone(), r.field().one())));
            }
        }
    }
    if basis.is_empty() {
        return Ok(Some(PolyMatrix::zeros(&r, 3, 3)));
    }
    let images: Vec<Vec<MultiPoly>> = basis
        .iter()
        .map(|(a, b, m)| {
            let mut k = PolyMatrix::zeros(&r, 3, 3);
            k.set(*a, *b, m.clone());
            k.set(*b, *a, m.clone());
            let v = k.mul(&xb);
            (0..3).map(|i| v.get(i, 0).clone()).collect()
        })
        .collect();
    let Some(sol) = solve_combination(&images, u) else { return Ok(None) };
    let mut k = PolyMatrix::zeros(&r, 3, 3);
    for ((a, b, m), c) in basis.iter().zip(sol) {
        let v = k.get(*a, *b) + &m.scale(&c);
        k.set(*a, *b, v.clone());
        k.set(*b, *a, v);
    }
    Ok(Some(k))
}

/// Symmetric K with x̄ᵗKx̄ = x̄ᵗu: every monomial x^e goes to the entry
/// (i, j) of its first two variables (with multiplicity).
fn symmetric_quadric_split(u: &[MultiPoly]) -> PolyMatrix {
    let r = u[0].ring().clone();
    let f = r.field();
    let q = (0..3).fold(MultiPoly::zero(&r), |acc, i| &acc + &(&u[i] * &x_of(&r, i)));
    let half = f.from_ratio(1, 2).unwrap();
    let mut k = PolyMatrix::zeros(&r, 3, 3);
    for (e, c) in q.terms() {
        let i = (0..3).find(|i| e[*i] > 0).expect("x̄ᵗu is divisible by an x");
        let mut rest = e.clone();
        rest[i] -= 1;
        let j = (0..3).find(|j| rest[*j] > 0).expect("x̄ᵗu has x-degree ≥ 2");
        rest[j] -= 1;
        let (cc, both) = if i == j { (c.clone(), false) } else { (c * &half, true) };
        let m = MultiPoly::monomial(&r, rest, cc);
        k.set(i, j, k.get(i, j) + &m);
        if both {
            k.set(j, i, k.get(j, i) + &m);
        }
    }
    k
}

/// C̃_j = C_j − (x_j/x_k)·C_k, the chart-k matrices.
fn chart_matrices(c: &[PolyMatrix; 3], k: usize) -> Result<[PolyMatrix; 3]> {
    let r = c[0].ring().clone();
    let xk_inv = x_of(&r, k).monomial_inverse()?;
    Ok(std::array::from_fn(|j| c[j].sub(&c[k].scale_poly(&(&x_of(&r, j) * &xk_inv)))))
}

/// Traces of multiplication by the two surviving y's on the chart x_k ≠ 0,
/// from the multiplication matrices on (1, y_a, y_b).
pub fn chart_traces(c: &[PolyMatrix; 3], k: usize) -> Result<[MultiPoly; 2]> {
    let ct = chart_matrices(c, k)?;
    let (a, b) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    // mult by y_a: y_a·y_a has y_a-coefficient C̃_a[a,a]; y_a·y_b has
    // y_b-coefficient C̃_b[a,b]
    let ta = ct[a].get(a, a) + ct[b].get(a, b);
    let tb = ct[a].get(b, a) + ct[b].get(b, b);
    Ok([ta, tb])
}

#[derive(Clone, Debug)]
pub struct TraceFree {
    pub c: [PolyMatrix; 3],
    /// v_i = tr(y_i); the substitution is y_i ↦ y_i − v_i/3
    pub v: [MultiPoly; 3],
    /// true when v_i = Σ_j C_j[i,j] (the closed form)
    pub closed_form_matches: bool,
}

pub fn trace_free_normalize(c: &[PolyMatrix; 3]) -> Result<TraceFree> {
    if !annihilates(c) {
        return Err(Error::Precondition("trace normalization needs C_i·x̄ = 0".into()));
    }
    let r = c[0].ring().clone();
    let mut v: [Option<MultiPoly>; 3] = [None, None, None];
    for k in 0..3 {
        let t = chart_traces(c, k)?;
        let surv: Vec<usize> = (0..3).filter(|i| *i != k).collect();
        for (idx, i) in surv.iter().enumerate() {
            match &v[*i] {
                None => v[*i] = Some(t[idx].clone()),
                Some(prev) if *prev != t[idx] => {
                    return Err(Error::Degenerate(format!("trace of y{i} depends on the chart")));
                }
                _ => {}
            }
        }
    }
    let v: [MultiPoly; 3] = v.map(|p| p.unwrap());
    let closed: Vec<MultiPoly> =
        (0..3).map(|i| (0..3).fold(MultiPoly::zero(&r), |acc, j| &acc + c[j].get(i, j))).collect();
    let closed_form_matches = (0..3).all(|i| closed[i] == v[i]);
    let xv = (0..3).fold(MultiPoly::zero(&r), |acc, i| &acc + &(&x_of(&r, i) * &v[i]));
    if !xv.is_zero() {
        return Err(Error::Precondition(format!("Σ x_i·v_i = {xv} ≠ 0")));
    }
    let third = r.field().from_ratio(1, 3).unwrap();
    let s: [MultiPoly; 3] = std::array::from_fn(|i| v[i].scale(&third));
    let out = shift_annihilating(c, &s)?;
    for k in 0..3 {
        if chart_traces(&out, k)?.iter().any(|t| !t.is_zero()) {
            return Err(Error::Degenerate("shift did not remove the trace".into()));
        }
    }
    Ok(TraceFree { c: out, v, closed_form_matches })
}

/// Annihilation followed by trace normalization.
pub fn normalize(c: &[PolyMatrix; 3]) -> Result<[PolyMatrix; 3]> {
    Ok(trace_free_normalize(&annihilation_normalize(c)?.c)?.c)
}

/// Local equations on chart x_k ≠ 0 read off a trace-free global triple.
pub fn local_from_global(c: &[PolyMatrix; 3], k: usize) -> Result<LocalEquations> {
    let r = c[0].ring().clone();
    let ct = chart_matrices(c, k)?;
    let (a, b) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let c1 = ct[a].get(a, a).clone();
    let c0 = ct[b].get(a, a).clone();
    let c2 = -ct[a].get(a, b);
    let c3 = ct[a].get(b, b).clone();
    if ct[b].get(a, b) != &-&c1 || ct[b].get(b, b) != &c2 {
        return Err(Error::Degenerate("global triple is not trace-free on this chart".into()));
    }
    Ok(LocalEquations { chart: k, basis: chart_basis(&r, k)?, c: [c0, c1, c2, c3] })
}

/// Local equations on any chart: the U2 formulas transported when β's are
/// known, otherwise read from the normalized global form.
pub fn local_equations(spec: &CoverHomSpec, chart: usize) -> Result<LocalEquations> {
    if let Some(b) = &spec.betas {
        let u2 = equations_from_betas(b)?;
        if chart == 2 {
            return Ok(u2);
        }
        let pres = Presentation::euler_on(&spec.ring, 1)?;
        return transport(&u2, &pres, &pres.trivialize(chart)?);
    }
    local_from_global(&normalize(&spec.global()?)?, chart)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub pass: bool,
    pub witness: Option<String>,
}

/// Compares equation sets given on several charts against the transport of
/// the first one.
pub fn check_equation_sets(eqs: &[LocalEquations]) -> Result<ConsistencyReport> {
    let Some(first) = eqs.first() else { return Ok(ConsistencyReport { pass: true, witness: None }) };
    let pres = Presentation::euler_on(first.ring(), 1)?;
    let charts = pres.charts()?;
    for e in &eqs[1..] {
        let moved = transport(first, &pres, &charts[e.chart])?;
        for i in 0..4 {
            if moved.c[i] != e.c[i] {
                return Ok(ConsistencyReport {
                    pass: false,
                    witness: Some(format!(
                        "chart U{}: c{i} expected {} but found {}",
                        e.chart, moved.c[i], e.c[i]
                    )),
                });
            }
        }
    }
    Ok(ConsistencyReport { pass: true, witness: None })
}

/// U2 equations against U0 and U1 equations computed independently from the
/// global form.
pub fn chart_consistency_check(spec: &CoverHomSpec) -> Result<ConsistencyReport> {
    let u2 = local_equations(spec, 2)?;
    let g = normalize(&spec.global()?)?;
    let u1 = local_from_global(&g, 1)?;
    let u0 = local_from_global(&g, 0)?;
    let direct = local_from_global(&g, 2)?;
    if direct != u2 {
        return Ok(ConsistencyReport { pass: false, witness: Some("U2: global and β forms disagree".into()) });
    }
    check_equation_sets(&[u2, u1, u0])
}

/// Integer β-vector as field scalars (test and CLI helper).
pub fn betas_from_i64(ring: &RingRef, v: &[i64; 10]) -> Result<BetaVector> {
    let f = ring.field();
    BetaVector::from_scalars(ring, &v.iter().map(|x| f.from_i64(*x)).collect::<Vec<_>>())
}

/// Rank of the β ↦ (c0..c3 on U2) map: 10 means the parametrization is
/// faithful.
pub fn parametrization_rank(field: FieldSpec) -> Result<usize> {
    let r = beta_ring(field, &[])?;
    let mut cols: Vec<Vec<MultiPoly>> = Vec::new();
    for n in BETA_NAMES {
        let e = equations_from_betas(&BetaVector::unit(&r, n)?)?;
        cols.push(e.c.to_vec());
    }
    // coefficient matrix: rows = (c index, monomial), cols = β
    let mut rows: BTreeMap<(usize, Vec<i32>), Vec<Scalar>> = BTreeMap::new();
    for (j, col) in cols.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            for (e, c) in p.terms() {
                rows.entry((i, e.clone())).or_insert_with(|| vec![field.zero(); 10])[j] = c.clone();
            }
        }
    }
    Ok(Mat::from_rows(field, rows.into_values().collect()).rank())
}
