//! Literal transcriptions of the closed formulas, used as fixtures.
//!
//! Everything is kept in the exact shape in which it is displayed, including
//! the two entries that the implementation deliberately corrects (the moduli
//! coefficients and the sign of D); the corrected forms sit next to them.

use crate::field::OField;

/// Term of a Laurent polynomial in x0, x1, x2 with a coefficient given as a
/// rational `num/den` times a named parameter.
#[derive(Clone, Copy, Debug)]
pub struct BetaTerm {
    pub num: i64,
    pub den: i64,
    pub beta: &'static str,
    pub x: [i32; 3],
}

const fn t(num: i64, den: i64, beta: &'static str, x: [i32; 3]) -> BetaTerm {
    BetaTerm { num, den, beta, x }
}

/// The four local coefficients on the chart x2 ≠ 0 in terms of the ten β's.
pub fn equations_c_u2() -> [Vec<BetaTerm>; 4] {
    [
        vec![t(1, 1, "b1", [0, 0, 2]), t(-1, 1, "b12", [0, 1, 1]), t(1, 1, "b21", [0, 2, 0]), t(-1, 1, "b2", [0, 3, -1])],
        vec![
            t(1, 3, "b10", [0, 0, 2]),
            t(-2, 3, "b012", [0, 1, 1]),
            t(1, 3, "b20", [0, 2, 0]),
            t(-1, 3, "b12", [1, 0, 1]),
            t(2, 3, "b21", [1, 1, 0]),
            t(-1, 1, "b2", [1, 2, -1]),
        ],
        vec![
            t(1, 3, "b01", [0, 0, 2]),
            t(-1, 3, "b02", [0, 1, 1]),
            t(-2, 3, "b012", [1, 0, 1]),
            t(2, 3, "b20", [1, 1, 0]),
            t(1, 3, "b21", [2, 0, 0]),
            t(-1, 1, "b2", [2, 1, -1]),
        ],
        vec![t(1, 1, "b0", [0, 0, 2]), t(-1, 1, "b02", [1, 0, 1]), t(1, 1, "b20", [2, 0, 0]), t(-1, 1, "b2", [3, 0, -1])],
    ]
}

/// The four local coefficients on the chart x1 ≠ 0 (basis y0, y2).
pub fn equations_c_u1() -> [Vec<BetaTerm>; 4] {
    [
        vec![t(1, 1, "b2", [0, 2, 0]), t(1, 1, "b12", [0, 0, 2]), t(-1, 1, "b21", [0, 1, 1]), t(-1, 1, "b1", [0, -1, 3])],
        vec![
            t(1, 3, "b10", [0, 0, 2]),
            t(-2, 3, "b012", [0, 1, 1]),
            t(1, 3, "b20", [0, 2, 0]),
            t(2, 3, "b12", [1, 0, 1]),
            t(-1, 3, "b21", [1, 1, 0]),
            t(-1, 1, "b1", [1, -1, 2]),
        ],
        vec![
            t(-1, 3, "b01", [0, 1, 1]),
            t(1, 3, "b02", [0, 2, 0]),
            t(2, 3, "b10", [1, 0, 1]),
            t(-2, 3, "b012", [1, 1, 0]),
            t(1, 3, "b12", [2, 0, 0]),
            t(-1, 1, "b1", [2, -1, 1]),
        ],
        vec![t(1, 1, "b0", [0, 2, 0]), t(-1, 1, "b01", [1, 1, 0]), t(1, 1, "b10", [2, 0, 0]), t(-1, 1, "b1", [3, -1, 0])],
    ]
}

/// Σ coefficient·ξ^power·β_name = 0, one relation per entry.
pub type Relation = Vec<(i64, u32, &'static str)>;

fn eq(a: &'static str, pa: u32, b: &'static str, pb: u32) -> Relation {
    vec![(1, pa % 3, a), (-1, pb % 3, b)]
}

/// σ with twist a: β0 = ξ^a β1 = ξ^{2a} β2 and the two mixed chains,
/// β012 = ξ^a β012.
pub fn sigma_system(a: u32) -> Vec<Relation> {
    let a = a % 3;
    vec![
        eq("b0", 0, "b1", a),
        eq("b1", a, "b2", 2 * a),
        eq("b01", 0, "b12", a),
        eq("b12", a, "b20", 2 * a),
        eq("b02", 0, "b10", a),
        eq("b10", a, "b21", 2 * a),
        eq("b012", 0, "b012", a),
    ]
    .into_iter()
    .filter(|r| !(r[0].2 == r[1].2 && r[0].1 == r[1].1))
    .collect()
}

/// ι with sign (−1)^b, exactly as displayed (including the β20 line).
pub fn iota_system_as_printed(b: u32) -> Vec<Relation> {
    let s = if b % 2 == 0 { 1 } else { -1 };
    let rel = |x: &'static str, y: &'static str| vec![(1i64, 0u32, x), (-s, 0u32, y)];
    let mut v = vec![rel("b1", "b2"), rel("b01", "b02"), rel("b12", "b21"), rel("b20", "b02")];
    if s == -1 {
        v.push(vec![(2, 0, "b012")]);
    }
    v
}

/// ι with the β20 line read as β10 = (−1)^b β20 and the missing
/// β0 = (−1)^b β0 restored.
pub fn iota_system_repaired(b: u32) -> Vec<Relation> {
    let s = if b % 2 == 0 { 1 } else { -1 };
    let rel = |x: &'static str, y: &'static str| vec![(1i64, 0u32, x), (-s, 0u32, y)];
    let mut v = vec![rel("b1", "b2"), rel("b01", "b02"), rel("b12", "b21"), rel("b10", "b20")];
    if s == -1 {
        v.push(vec![(2, 0, "b012")]);
        v.push(vec![(2, 0, "b0")]);
    }
    v
}

/// The three displayed τ cases, keyed by the displayed label c.
pub fn tau_system_as_printed(c: u32) -> Vec<Relation> {
    let zero = |names: &[&'static str]| names.iter().map(|n| vec![(1i64, 0u32, *n)]).collect::<Vec<_>>();
    match c % 3 {
        0 => zero(&["b01", "b02", "b10", "b12", "b20", "b21"]),
        1 => zero(&["b0", "b1", "b2", "b012", "b10", "b21", "b02"]),
        _ => zero(&["b0", "b1", "b2", "b012", "b01", "b12", "b20"]),
    }
}

/// Block c-table for one block with parameters (α, β), evaluated at x.
pub fn c_block<F: OField>(alpha: &F, beta: &F, x: &[F; 3]) -> [F; 4] {
    let [x0, x1, x2] = x;
    let two_thirds = alpha.from_i64_like(2).mul(&alpha.from_i64_like(3).inv());
    let inv2 = x2.inv();
    let c0 = beta.mul(&x2.mul(x2)).sub(&beta.mul(&x1.mul(x1).mul(x1).mul(&inv2)));
    let c1 = two_thirds.mul(alpha).mul(&x1.mul(x2)).neg().sub(&beta.mul(&x0.mul(x1).mul(x1).mul(&inv2)));
    let c2 = two_thirds.mul(alpha).mul(&x0.mul(x2)).neg().sub(&beta.mul(&x0.mul(x0).mul(x1).mul(&inv2)));
    let c3 = beta.mul(&x2.mul(x2)).sub(&beta.mul(&x0.mul(x0).mul(x0).mul(&inv2)));
    [c0, c1, c2, c3]
}

/// The nine displayed D entries as functions of c[i][j].
pub fn d_vector<F: OField>(c: &[[F; 4]; 4]) -> [F; 9] {
    let k = |v: i64| c[0][0].from_i64_like(v);
    let cc = |a: usize, b: usize, d: usize, e: usize| c[a][b].mul(&c[d][e]);
    let half = k(2).inv();
    let lin = |terms: &[(i64, usize, usize, usize, usize)]| {
        let mut acc = k(0);
        for &(s, a, b, d, e) in terms {
            acc = acc.add(&k(s).mul(&cc(a, b, d, e)));
        }
        acc
    };
    [
        lin(&[(-2, 1, 1, 1, 1), (2, 1, 0, 1, 2), (2, 0, 1, 2, 1), (-1, 0, 2, 2, 0), (-1, 0, 0, 2, 2)]),
        lin(&[(-1, 1, 0, 1, 3), (1, 1, 1, 1, 2), (-2, 0, 2, 2, 1), (1, 0, 3, 2, 0), (1, 0, 1, 2, 2)]),
        lin(&[(2, 1, 1, 1, 3), (-2, 1, 2, 1, 2), (-1, 0, 3, 2, 1), (-1, 0, 1, 2, 3), (2, 0, 2, 2, 2)]),
        lin(&[(-1, 0, 1, 3, 1), (1, 0, 0, 3, 2), (1, 1, 1, 2, 1), (1, 1, 2, 2, 0), (-2, 1, 0, 2, 2)]),
        half.mul(&lin(&[(-1, 0, 0, 3, 3), (1, 0, 1, 3, 2), (-5, 1, 2, 2, 1), (1, 1, 3, 2, 0), (4, 1, 1, 2, 2)])),
        lin(&[(1, 0, 1, 3, 3), (-1, 0, 2, 3, 2), (1, 1, 3, 2, 1), (-2, 1, 1, 2, 3), (1, 1, 2, 2, 2)]),
        lin(&[(2, 1, 1, 3, 1), (-1, 1, 2, 3, 0), (-1, 1, 0, 3, 2), (-2, 2, 1, 2, 1), (2, 2, 0, 2, 2)]),
        lin(&[(1, 1, 2, 3, 1), (1, 1, 0, 3, 3), (-2, 1, 1, 3, 2), (-1, 2, 0, 2, 3), (1, 2, 1, 2, 2)]),
        lin(&[(-1, 1, 3, 3, 1), (-1, 1, 1, 3, 3), (2, 1, 2, 3, 2), (2, 2, 1, 2, 3), (-2, 2, 2, 2, 2)]),
    ]
}

/// The moduli expression with its displayed coefficients 3, −1, 1, −3.
pub fn moduli_as_printed<F: OField>(a: &[F; 4], b: &[F; 4]) -> F {
    let k = |v: i64| a[0].from_i64_like(v);
    k(3).mul(&a[0].mul(&b[3])).sub(&a[1].mul(&b[2])).add(&a[2].mul(&b[1])).sub(&k(3).mul(&a[3].mul(&b[0])))
}

/// The displayed sextic with parameter λ at a point.
pub fn bl_sextic<F: OField>(lambda: &F, x: &[F; 3]) -> F {
    let k = |v: i64| lambda.from_i64_like(v);
    let [x0, x1, x2] = x;
    let p = |v: &F, e: u32| (0..e).fold(k(1), |acc, _| acc.mul(v));
    let l = lambda;
    let s6 = p(x0, 6).add(&p(x1, 6)).add(&p(x2, 6));
    let s33 = p(x0, 3).mul(&p(x1, 3)).add(&p(x1, 3).mul(&p(x2, 3))).add(&p(x2, 3).mul(&p(x0, 3)));
    let m = x0.mul(x1).mul(x2);
    let s411 = m.mul(&p(x0, 3).add(&p(x1, 3)).add(&p(x2, 3)));
    let s222 = m.mul(&m);
    let a = k(2).mul(&k(2).mul(&p(l, 3)).sub(&k(1)));
    let b = k(6).mul(&p(l, 2));
    let c = k(3).mul(l).mul(&p(l, 3).sub(&k(4)));
    s6.add(&a.mul(&s33)).sub(&b.mul(&s411)).sub(&c.mul(&s222))
}

/// The displayed distinctness quartic.
pub fn distinctness<F: OField>(a: &[F; 4]) -> F {
    let k = |v: i64| a[0].from_i64_like(v);
    let [a0, a1, a2, a3] = a;
    let sq = |v: &F| v.mul(v);
    let cube = |v: &F| v.mul(v).mul(v);
    sq(a0)
        .mul(&sq(a3))
        .add(&k(4).mul(a0).mul(&cube(a2)))
        .sub(&k(3).mul(&sq(a1)).mul(&sq(a2)))
        .add(&k(4).mul(&cube(a1)).mul(a3))
        .sub(&k(6).mul(a0).mul(a1).mul(a2).mul(a3))
}

/// Residuals of the three-point system at (y, z) for parameters α.
pub fn three_point_residuals<F: OField>(a: &[F; 4], y: &F, z: &F) -> [F; 3] {
    let k = |v: i64| a[0].from_i64_like(v);
    let [a0, a1, a2, a3] = a;
    let r1 = y.mul(y).sub(&a1.mul(y)).sub(&a0.mul(z)).sub(&k(2).mul(&a1.mul(a1).sub(&a0.mul(a2))));
    let r2 = y.mul(z).add(&a2.mul(y)).add(&a1.mul(z)).add(&a1.mul(a2).sub(&a0.mul(a3)));
    let r3 = z.mul(z).sub(&a3.mul(y)).sub(&a2.mul(z)).sub(&k(2).mul(&a2.mul(a2).sub(&a1.mul(a3))));
    [r1, r2, r3]
}

/// The four-term relation of the irregular variant.
pub fn irregular_relation<F: OField>(c1: &[F; 4], c3: &[F; 4]) -> F {
    let k = |v: i64| c1[0].from_i64_like(v);
    c1[3].mul(&c3[0]).sub(&k(3).mul(&c1[2]).mul(&c3[1])).add(&k(3).mul(&c1[1]).mul(&c3[2])).sub(&c1[0].mul(&c3[3]))
}

/// δ coordinates with δ0 read as α0 + α1 + α3.
pub fn delta<F: OField>(a: &[F; 3]) -> [F; 3] {
    let k = |v: i64| a[0].from_i64_like(v);
    let [a0, a1, a3] = a;
    [
        a0.add(a1).add(a3),
        k(-3).mul(a0).add(a1).add(a3),
        a0.add(a1).sub(&k(3).mul(a3)),
    ]
}
