//! Normalization to β = (0,1,1,0), the three-point configuration, the S₃
//! action on (α0, α1, α3), δ-coordinates and symmetric invariants.

use crate::abelian13::{reduce_by_generators, build_ideal, check_moduli_equation, SurfaceParams};
use crate::error::{Error, Result};
use crate::exactring::{FieldSpec, Mat, MultiPoly, Ring, RingRef, Scalar, VarSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Exhaustive root search is used over F_p up to this size.
const MAX_SCAN: u64 = 1 << 22;
/// Largest integer factored by trial division in the rational root test.
const MAX_TRIAL: u64 = 1 << 40;

pub const ELEMENTS: [&str; 6] = ["e", "s", "s2", "r", "rs", "rs2"];

/// α0²α3² + 4α0α2³ − 3α1²α2² + 4α1³α3 − 6α0α1α2α3.
pub fn distinctness(a: &[Scalar; 4]) -> Scalar {
    let f = a[0].field();
    let k = |v: i64| f.from_i64(v);
    let [a0, a1, a2, a3] = a;
    let t1 = &(a0 * a0) * &(a3 * a3);
    let t2 = &(&k(4) * a0) * &a2.pow(3);
    let t3 = &k(3) * &(&(a1 * a1) * &(a2 * a2));
    let t4 = &(&k(4) * &a1.pow(3)) * a3;
    let t5 = &k(6) * &(&(a0 * a1) * &(a2 * a3));
    &(&(&(&t1 + &t2) - &t3) + &t4) - &t5
}

/// Multiplication operators of y and z on the basis {1, y, z} of the rank-3
/// algebra y² = a1y + a0z + 2(a1² − a0a2), yz = −a2y − a1z − (a1a2 − a0a3),
/// z² = a3y + a2z + 2(a2² − a1a3).
fn operators(a: &[Scalar; 4]) -> (Mat, Mat) {
    let f = a[0].field();
    let two = f.from_i64(2);
    let [a0, a1, a2, a3] = a;
    let yy = [&two * &(&(a1 * a1) - &(a0 * a2)), a1.clone(), a0.clone()];
    let yz = [-&(&(a1 * a2) - &(a0 * a3)), -a2, -a1];
    let zz = [&two * &(&(a2 * a2) - &(a1 * a3)), a3.clone(), a2.clone()];
    let col = |m: &mut Mat, c: usize, v: &[Scalar; 3]| {
        for (r, x) in v.iter().enumerate() {
            m.set(r, c, x.clone());
        }
    };
    let (z, o) = (f.zero(), f.one());
    let mut ly = Mat::zeros(f, 3, 3);
    col(&mut ly, 0, &[z.clone(), o.clone(), z.clone()]);
    col(&mut ly, 1, &yy);
    col(&mut ly, 2, &yz);
    let mut lz = Mat::zeros(f, 3, 3);
    col(&mut lz, 0, &[z.clone(), z, o]);
    col(&mut lz, 1, &yz);
    col(&mut lz, 2, &zz);
    (ly, lz)
}

/// Coefficients (constant first) of det(θ·I − M) for a 3×3 matrix.
fn char_poly(m: &Mat) -> Vec<Scalar> {
    let g = |r: usize, c: usize| m.get(r, c).clone();
    let tr = &(&g(0, 0) + &g(1, 1)) + &g(2, 2);
    let minor = |a: usize, b: usize| &(&g(a, a) * &g(b, b)) - &(&g(a, b) * &g(b, a));
    let m2 = &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2);
    let f = m.field();
    vec![-&m.det(), m2, -&tr, f.one()]
}

fn int_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let small = n.to_u64().filter(|v| *v <= MAX_TRIAL).ok_or_else(|| Error::Precondition("coefficients too large for the rational root test".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(small / d));
        }
        d += 1;
    }
    Ok(out)
}

fn eval_poly(c: &[Scalar], x: &Scalar) -> Scalar {
    c.iter().rev().fold(x.zero_like(), |acc, a| &(&acc * x) + a)
}

/// Distinct roots lying in the ground field.  Over ℚ(ω) only rational roots
/// of rational polynomials are found; anything else is reported.
pub fn field_roots(c: &[Scalar]) -> Result<Vec<Scalar>> {
    let f = c[0].field();
    let mut out: Vec<Scalar> = Vec::new();
    match f {
        FieldSpec::PrimeField(p) => {
            if p > MAX_SCAN {
                return Err(Error::Precondition(format!("root search over F_{p} is not supported")));
            }
            for v in 0..p {
                let x = f.from_i64(v as i64);
                if eval_poly(c, &x).is_zero() {
                    out.push(x);
                }
            }
        }
        _ => {
            let rat: Vec<BigRational> = c
                .iter()
                .map(|s| s.as_rational().ok_or_else(|| Error::IrrationalPoints("coefficients outside ℚ".into())))
                .collect::<Result<_>>()?;
            let den = rat.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let mut ints: Vec<BigInt> = rat.iter().map(|r| (r * BigRational::from(den.clone())).to_integer()).collect();
            if ints.iter().all(|v| v.is_zero()) {
                return Err(Error::Degenerate("zero polynomial".into()));
            }
            // strip zero roots
            while ints[0].is_zero() {
                if !out.iter().any(|x: &Scalar| x.is_zero()) {
                    out.push(f.zero());
                }
                ints.remove(0);
            }
            let lead = ints.last().unwrap().clone();
            for p in int_divisors(&ints[0])? {
                for q in int_divisors(&lead)? {
                    for sign in [1, -1] {
                        let r = BigRational::new(BigInt::from(sign) * p.clone(), q.clone());
                        let x = f.from_bigrational(&r)?;
                        if !out.contains(&x) && eval_poly(c, &x).is_zero() {
                            out.push(x);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The three points (y, z) of the rank-3 algebra attached to α.
pub fn three_points(a: &[Scalar; 4]) -> Result<[[Scalar; 2]; 3]> {
    if distinctness(a).is_zero() {
        return Err(Error::Degenerate("the three points are not distinct".into()));
    }
    let f = a[0].field();
    let (ly, lz) = operators(a);
    // a generic combination y + t·z separates the points
    for t in 0..16 {
        let tt = f.from_i64(t);
        let mut m = Mat::zeros(f, 3, 3);
        for r in 0..3 {
            for c in 0..3 {
                m.set(r, c, ly.get(r, c) + &(&tt * lz.get(r, c)));
            }
        }
        let cp = char_poly(&m);
        let roots = field_roots(&cp)?;
        if roots.len() == 3 {
            let mut pts = Vec::new();
            for th in &roots {
                let mut shifted = m.clone();
                for i in 0..3 {
                    shifted.set(i, i, &*shifted.get(i, i) - th);
                }
                let ns = shifted.nullspace();
                let v = ns.first().ok_or_else(|| Error::Degenerate("missing eigenvector".into()))?;
                let k = v.iter().position(|x| !x.is_zero()).unwrap();
                let y = ly.mul_vec(v)[k].div(&v[k])?;
                let z = lz.mul_vec(v)[k].div(&v[k])?;
                pts.push([y, z]);
            }
            return Ok([pts[0].clone(), pts[1].clone(), pts[2].clone()]);
        }
        // a repeated root of the characteristic polynomial means t is not
        // separating; fewer than three simple roots in the field with a
        // separating t means the points are not rational
        let distinct_over_closure = discriminant3(&cp);
        if !distinct_over_closure.is_zero() {
            return Err(Error::IrrationalPoints(format!("the cubic {} does not split", show_uni(&cp))));
        }
    }
    Err(Error::Degenerate("no separating linear form found".into()))
}

/// Discriminant of a monic cubic s³ + b s² + c s + d.
fn discriminant3(cp: &[Scalar]) -> Scalar {
    let f = cp[0].field();
    let (d, c, b) = (&cp[0], &cp[1], &cp[2]);
    let k = |v: i64| f.from_i64(v);
    let t1 = &(&(&k(18) * b) * c) * d;
    let t2 = &(&k(4) * &b.pow(3)) * d;
    let t3 = &(b * b) * &(c * c);
    let t4 = &k(4) * &c.pow(3);
    let t5 = &k(27) * &(d * d);
    &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
}

fn show_uni(c: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if !a.is_zero() {
            parts.push(match i {
                0 => format!("{a}"),
                1 => format!("({a})*s"),
                _ => format!("({a})*s^{i}"),
            });
        }
    }
    parts.join(" + ")
}

/// 2×2 matrix as rows.
pub type Mat2 = [[Scalar; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

pub fn mat2_det(a: &Mat2) -> Scalar {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

pub fn mat2_inv(a: &Mat2) -> Result<Mat2> {
    let d = mat2_det(a).inv()?;
    Ok([[&a[1][1] * &d, -&(&a[0][1] * &d)], [-&(&a[1][0] * &d), &a[0][0] * &d]])
}

pub fn mat2_transpose(a: &Mat2) -> Mat2 {
    [[a[0][0].clone(), a[1][0].clone()], [a[0][1].clone(), a[1][1].clone()]]
}

pub fn mat2_identity(f: FieldSpec) -> Mat2 {
    [[f.one(), f.zero()], [f.zero(), f.one()]]
}

/// Action of (y_i, z_i) ↦ (y_i, z_i)·g on the four blocks: the new block i is
/// Σ_l T[i][l]·(old block l), for both α and β.
pub fn block_action(g: &Mat2) -> Result<[[Scalar; 4]; 4]> {
    let [[g11, g12], [g21, g22]] = g;
    let f = g11.field();
    let k = |v: i64| f.from_i64(v);
    let d2 = mat2_det(g).pow(2).inv()?;
    let rows = [
        [g22.pow(3), &(&k(3) * g21) * &(g22 * g22), &(&k(3) * &(g21 * g21)) * g22, g21.pow(3)],
        [
            g12 * &(g22 * g22),
            &(g11 * &(g22 * g22)) + &(&(&k(2) * g12) * &(g21 * g22)),
            &(&(&k(2) * g11) * &(g21 * g22)) + &(g12 * &(g21 * g21)),
            g11 * &(g21 * g21),
        ],
        [
            &(g12 * g12) * g22,
            &(&(&k(2) * g11) * &(g12 * g22)) + &(&(g12 * g12) * g21),
            &(&(g11 * g11) * g22) + &(&(&k(2) * g11) * &(g12 * g21)),
            &(g11 * g11) * g21,
        ],
        [g12.pow(3), &(&k(3) * g11) * &(g12 * g12), &(&k(3) * &(g11 * g11)) * g12, g11.pow(3)],
    ];
    Ok(rows.map(|r| r.map(|x| &x * &d2)))
}

pub fn apply_block_action(t: &[[Scalar; 4]; 4], v: &[Scalar; 4]) -> [Scalar; 4] {
    std::array::from_fn(|i| (0..4).fold(v[0].zero_like(), |acc, l| &acc + &(&t[i][l] * &v[l])))
}

pub fn transform_params(p: &SurfaceParams, g: &Mat2) -> Result<SurfaceParams> {
    let t = block_action(g)?;
    Ok(SurfaceParams::new(p.field, apply_block_action(&t, &p.alpha), apply_block_action(&t, &p.beta)))
}

/// The points of β = (0,1,1,0).
pub fn normalized_points(f: FieldSpec) -> Result<[[Scalar; 2]; 3]> {
    three_points(&[f.zero(), f.one(), f.one(), f.zero()])
}

#[derive(Clone, Debug)]
pub struct Normalization {
    pub g: Mat2,
    pub params: SurfaceParams,
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Finds g with β·T(g) = (0,1,1,0): the β-points move as p ↦ p·g⁻¹, so g⁻¹
/// sends two of them onto two of the fixed target points.
pub fn normalize_beta(p: &SurfaceParams) -> Result<Normalization> {
    let f = p.field;
    let target_beta = [f.zero(), f.one(), f.one(), f.zero()];
    let src = three_points(&p.beta)?;
    let tgt = normalized_points(f)?;
    let rows = |a: &[Scalar; 2], b: &[Scalar; 2]| -> Mat2 { [a.clone(), b.clone()] };
    let ps = rows(&src[0], &src[1]);
    let ps_inv = mat2_inv(&ps)?;
    for perm in PERMS {
        let ts = rows(&tgt[perm[0]], &tgt[perm[1]]);
        let g_inv = mat2_mul(&ps_inv, &ts);
        let Ok(g) = mat2_inv(&g_inv) else { continue };
        let q = transform_params(p, &g)?;
        if q.beta == target_beta {
            return Ok(Normalization { g, params: q });
        }
    }
    Err(Error::Degenerate("no point assignment normalizes β".into()))
}

/// Substitutes (y_i, z_i) ↦ (y_i, z_i)·g into every generator of the U2 ideal
/// of `p` and checks that each image lies in the ideal of `q`.
pub fn substitution_matches(p: &SurfaceParams, g: &Mat2, q: &SurfaceParams) -> Result<bool> {
    let a = build_ideal(p, 2)?;
    let b = build_ideal(q, 2)?;
    let r = &a.ring;
    let v = |i: usize| MultiPoly::var_idx(r, i);
    let [[g11, g12], [g21, g22]] = g;
    let mut map = Vec::new();
    for i in 0..2 {
        let (y, z) = (a.basis[i], a.basis[2 + i]);
        map.push((y, &v(y).scale(g11) + &v(z).scale(g21)));
        map.push((z, &v(y).scale(g12) + &v(z).scale(g22)));
    }
    for gen in &a.generators {
        if !reduce_by_generators(&b, &gen.substitute(&map)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of a word in s, r ("rs2" = r·s·s), multiplied left to right.
pub fn word_matrix(f: FieldSpec, word: &str) -> Result<Mat2> {
    let k = |v: i64| f.from_i64(v);
    let s: Mat2 = [[k(0), k(1)], [k(-1), k(-1)]];
    let r: Mat2 = [[k(0), k(1)], [k(1), k(0)]];
    let mut m = mat2_identity(f);
    let mut last: Option<Mat2> = None;
    for ch in word.chars() {
        match ch {
            's' | 'r' => {
                let x = if ch == 's' { s.clone() } else { r.clone() };
                m = mat2_mul(&m, &x);
                last = Some(x);
            }
            'e' if word.len() == 1 => {}
            '0'..='9' => {
                let x = last.take().ok_or_else(|| Error::Precondition(format!("bad S₃ word `{word}`")))?;
                let n = ch.to_digit(10).unwrap();
                if n == 0 {
                    m = mat2_mul(&m, &mat2_inv(&x)?);
                }
                for _ in 1..n.max(1) {
                    m = mat2_mul(&m, &x);
                }
            }
            _ => return Err(Error::Precondition(format!("bad S₃ word `{word}`"))),
        }
    }
    Ok(m)
}

/// The S₃ element acting on (α0, α1, α3) through g = Mᵀ on the normalized
/// family α = (α0, α1, α1, α3), β = (0,1,1,0).
pub fn s3_act(word: &str, a: &[Scalar; 3]) -> Result<[Scalar; 3]> {
    let f = a[0].field();
    let g = mat2_transpose(&word_matrix(f, word)?);
    let t = block_action(&g)?;
    let full = [a[0].clone(), a[1].clone(), a[1].clone(), a[2].clone()];
    let out = apply_block_action(&t, &full);
    Ok([out[0].clone(), out[1].clone(), out[3].clone()])
}

/// The same action with symbolic entries (weight-0 parameters of `ring`).
pub fn s3_act_poly(word: &str, a: &[MultiPoly; 3]) -> Result<[MultiPoly; 3]> {
    let f = a[0].field();
    let g = mat2_transpose(&word_matrix(f, word)?);
    let t = block_action(&g)?;
    let full = [&a[0], &a[1], &a[1], &a[2]];
    let row = |i: usize| (0..4).fold(MultiPoly::zero(a[0].ring()), |acc, l| &acc + &full[l].scale(&t[i][l]));
    Ok([row(0), row(1), row(3)])
}

/// Printed action table: rows of coefficients on (α0, α1, α3).
pub const ACTION_TABLE: [(&str, [[i64; 3]; 3]); 5] = [
    ("s", [[-1, 0, 1], [-1, 1, 0], [-1, 0, 0]]),
    ("s2", [[0, 0, -1], [0, 1, -1], [1, 0, -1]]),
    ("r", [[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
    ("rs", [[1, 0, -1], [0, 1, -1], [0, 0, -1]]),
    ("rs2", [[-1, 0, 0], [-1, 1, 0], [-1, 0, 1]]),
];

fn symbolic_ring(f: FieldSpec) -> Result<RingRef> {
    let v: Vec<VarSpec> = vec![("a0", 0, false), ("a1", 0, false), ("a3", 0, false)];
    Ring::new(f, &v)
}

fn linear(ring: &RingRef, c: &[i64; 3]) -> MultiPoly {
    (0..3).fold(MultiPoly::zero(ring), |acc, i| &acc + &MultiPoly::var_idx(ring, i).scale(&ring.field().from_i64(c[i])))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableCertificate {
    pub rows_match: Vec<(String, bool)>,
    pub s_cubed_identity: bool,
    pub r_squared_identity: bool,
    pub beta_fixed: bool,
}

impl TableCertificate {
    pub fn pass(&self) -> bool {
        self.rows_match.iter().all(|(_, b)| *b) && self.s_cubed_identity && self.r_squared_identity && self.beta_fixed
    }
}

/// Compares the matrix-derived action with the printed table symbolically.
pub fn action_table_certificate(f: FieldSpec) -> Result<TableCertificate> {
    let r = symbolic_ring(f)?;
    let a: [MultiPoly; 3] = std::array::from_fn(|i| MultiPoly::var_idx(&r, i));
    let mut rows = Vec::new();
    for (w, coeffs) in ACTION_TABLE {
        let got = s3_act_poly(w, &a)?;
        let want: [MultiPoly; 3] = std::array::from_fn(|i| linear(&r, &coeffs[i]));
        rows.push((w.to_string(), got == want));
    }
    let mut beta_fixed = true;
    for w in ELEMENTS {
        let g = mat2_transpose(&word_matrix(f, w)?);
        let b = [f.zero(), f.one(), f.one(), f.zero()];
        beta_fixed &= apply_block_action(&block_action(&g)?, &b) == b;
    }
    Ok(TableCertificate {
        rows_match: rows,
        s_cubed_identity: s3_act_poly("sss", &a)? == a,
        r_squared_identity: s3_act_poly("rr", &a)? == a,
        beta_fixed,
    })
}

/// δ0 = α0+α1+α3, δ1 = −3α0+α1+α3, δ2 = α0+α1−3α3.
pub fn delta_coords(a: &[Scalar; 3]) -> [Scalar; 3] {
    let f = a[0].field();
    let three = f.from_i64(3);
    let sum = &(&a[0] + &a[1]) + &a[2];
    [sum.clone(), &sum - &(&f.from_i64(4) * &a[0]), &sum - &(&three * &a[2]) - a[2].clone()]
}

fn delta_poly(a: &[MultiPoly; 3]) -> [MultiPoly; 3] {
    let f = a[0].field();
    let sum = &(&a[0] + &a[1]) + &a[2];
    [sum.clone(), &sum - &a[0].scale(&f.from_i64(4)), &sum - &a[2].scale(&f.from_i64(4))]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaCertificate {
    /// s(δ_i) = δ_{i+1}
    pub s_cycles: bool,
    /// r(δ_i) = δ_{−i}
    pub r_reflects: bool,
}

/// Symbolic check that S₃ permutes the δ's in the standard way.
pub fn delta_certificate(f: FieldSpec) -> Result<DeltaCertificate> {
    let r = symbolic_ring(f)?;
    let a: [MultiPoly; 3] = std::array::from_fn(|i| MultiPoly::var_idx(&r, i));
    let d = delta_poly(&a);
    let ds = delta_poly(&s3_act_poly("s", &a)?);
    let dr = delta_poly(&s3_act_poly("r", &a)?);
    Ok(DeltaCertificate {
        s_cycles: (0..3).all(|i| ds[i] == d[(i + 1) % 3]),
        r_reflects: (0..3).all(|i| dr[i] == d[(3 - i) % 3]),
    })
}

/// Elementary symmetric functions of the δ's.
pub fn moduli_invariants(a: &[Scalar; 3]) -> [Scalar; 3] {
    let [d0, d1, d2] = delta_coords(a);
    let e1 = &(&d0 + &d1) + &d2;
    let e2 = &(&(&d0 * &d1) + &(&d1 * &d2)) + &(&d2 * &d0);
    let e3 = &(&d0 * &d1) * &d2;
    [e1, e2, e3]
}

pub fn orbit(a: &[Scalar; 3]) -> Result<Vec<(String, [Scalar; 3])>> {
    ELEMENTS.iter().map(|w| Ok((w.to_string(), s3_act(w, a)?))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    pub invariants_equal: bool,
    /// an element mapping a to b, when one exists
    pub witness: Option<String>,
    /// set when the invariant test and the orbit scan disagree
    pub stabilizer_warning: bool,
}

/// Orbit scan over the six elements; the invariants are reported alongside
/// and any disagreement is flagged.  The scan decides.
pub fn orbit_equivalent(a: &[Scalar; 3], b: &[Scalar; 3]) -> Result<Equivalence> {
    let invariants_equal = moduli_invariants(a) == moduli_invariants(b);
    let witness = orbit(a)?.into_iter().find(|(_, img)| img == b).map(|(w, _)| w);
    let equivalent = witness.is_some();
    Ok(Equivalence { equivalent, invariants_equal, witness, stabilizer_warning: equivalent != invariants_equal })
}

/// Whether some orbit image has α1 = 0.
pub fn is_bielliptic_locus(a: &[Scalar; 3]) -> Result<bool> {
    Ok(orbit(a)?.iter().any(|(_, img)| img[1].is_zero()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuliPoint {
    pub alpha3: Vec<String>,
    pub delta: Vec<String>,
    pub invariants: Vec<String>,
    pub bielliptic: bool,
}

pub fn moduli_point(a: &[Scalar; 3]) -> Result<ModuliPoint> {
    let show = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect();
    Ok(ModuliPoint {
        alpha3: show(a),
        delta: show(&delta_coords(a)),
        invariants: show(&moduli_invariants(a)),
        bielliptic: is_bielliptic_locus(a)?,
    })
}

/// (α0, α1, α3) of normalized parameters; requires α1 = α2 and the moduli
/// equation.
pub fn alpha3_of(p: &SurfaceParams) -> Result<[Scalar; 3]> {
    let f = p.field;
    if p.beta != [f.zero(), f.one(), f.one(), f.zero()] {
        return Err(Error::Precondition("parameters are not normalized (β ≠ (0,1,1,0))".into()));
    }
    if !check_moduli_equation(p).is_zero() {
        return Err(Error::ModuliEquation(check_moduli_equation(p).to_string()));
    }
    Ok([p.alpha[0].clone(), p.alpha[1].clone(), p.alpha[3].clone()])
}
