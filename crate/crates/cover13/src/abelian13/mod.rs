//! The nine-generator local coordinate ring of a (1,3)-polarised abelian
//! surface with canonical level structure, built from (α, β).
//!
//! On a chart with fiber basis w = (y_a, y_b, z_a, z_b) the generators are
//! G_k = q_k − Σ_j w_j·Cᵗ[k][j] + D_k, where Cᵗ is the 9×4 block matrix
//! [[C1, C0], [−C2, −C1], [C3, C2]], each C_i = [[c_i1, c_i0], [−c_i2, −c_i1],
//! [c_i3, c_i2]] and D_k is quadratic in the c's.

pub mod branch;
pub mod fiber;
pub mod irregular;

use crate::ambient::Presentation;
use crate::coverhom::{local_equations, BetaVector, CoverHomSpec};
use crate::error::{Error, Result};
use crate::exactring::{FieldSpec, MultiPoly, Ring, RingRef, Scalar};
use crate::heisenberg::GroupAction;
use crate::koszul::random_scalar;
use serde::Serialize;

pub use branch::{bl_branch_sextic, bl_params, branch_on_line, BranchReport};
pub use fiber::{fiber_algebra, trace_discriminant, FiberAlgebra};
pub use irregular::{build_irregular_ideal, irregular_relation, IrregularTable};

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceParams {
    pub field: FieldSpec,
    pub alpha: [Scalar; 4],
    pub beta: [Scalar; 4],
}

impl SurfaceParams {
    pub fn new(field: FieldSpec, alpha: [Scalar; 4], beta: [Scalar; 4]) -> Self {
        SurfaceParams { field, alpha, beta }
    }

    pub fn from_i64(field: FieldSpec, alpha: [i64; 4], beta: [i64; 4]) -> Self {
        SurfaceParams { field, alpha: alpha.map(|v| field.from_i64(v)), beta: beta.map(|v| field.from_i64(v)) }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, [0; 4], [0; 4])
    }

    pub fn alpha_strings(&self) -> Vec<String> {
        self.alpha.iter().map(|s| s.to_string()).collect()
    }

    pub fn beta_strings(&self) -> Vec<String> {
        self.beta.iter().map(|s| s.to_string()).collect()
    }
}

/// α0β3/3 − α1β2 + α2β1 − α3β0/3 for polynomial entries.  This is the
/// normalization in which β = (0,1,1,0) gives α2 − α1.
pub fn moduli_residual(alpha: &[MultiPoly; 4], beta: &[MultiPoly; 4]) -> MultiPoly {
    let third = alpha[0].field().from_ratio(1, 3).expect("characteristic ≠ 3");
    let outer = &(&alpha[0] * &beta[3]) - &(&alpha[3] * &beta[0]);
    let inner = &(&alpha[2] * &beta[1]) - &(&alpha[1] * &beta[2]);
    &outer.scale(&third) + &inner
}

pub fn check_moduli_equation(p: &SurfaceParams) -> Scalar {
    let f = p.field;
    let third = f.from_ratio(1, 3).expect("characteristic ≠ 3");
    let outer = &(&p.alpha[0] * &p.beta[3]) - &(&p.alpha[3] * &p.beta[0]);
    let inner = &(&p.alpha[2] * &p.beta[1]) - &(&p.alpha[1] * &p.beta[2]);
    &(&outer * &third) + &inner
}

/// c_i0 = β_i x2² − β_i x1³/x2, c_i1 = −⅔α_i x1x2 − β_i x0x1²/x2,
/// c_i2 = −⅔α_i x0x2 − β_i x0²x1/x2, c_i3 = β_i x2² − β_i x0³/x2.
pub fn c_block(ring: &RingRef, alpha: &MultiPoly, beta: &MultiPoly) -> [MultiPoly; 4] {
    let f = ring.field();
    let x = |e: [i32; 3], c: Scalar| {
        let mut v = vec![0; ring.nvars()];
        v[..3].copy_from_slice(&e);
        MultiPoly::monomial(ring, v, c)
    };
    let one = f.one();
    let m1 = f.from_i64(-1);
    let m23 = f.from_ratio(-2, 3).expect("characteristic ≠ 3");
    [
        beta * &(&x([0, 0, 2], one.clone()) + &x([0, 3, -1], m1.clone())),
        &(alpha * &x([0, 1, 1], m23.clone())) + &(beta * &x([1, 2, -1], m1.clone())),
        &(alpha * &x([1, 0, 1], m23)) + &(beta * &x([2, 1, -1], m1.clone())),
        beta * &(&x([0, 0, 2], one) + &x([3, 0, -1], m1)),
    ]
}

/// The nine quadratic correction terms as polynomials in the c's.
pub fn d_vector(c: &[[MultiPoly; 4]; 4]) -> [MultiPoly; 9] {
    let r = c[0][0].ring().clone();
    let f = r.field();
    let lin = |terms: &[(i64, usize, usize, usize, usize)]| {
        terms.iter().fold(MultiPoly::zero(&r), |acc, &(s, a, b, d, e)| {
            &acc + &(&c[a][b] * &c[d][e]).scale(&f.from_i64(s))
        })
    };
    let half = f.from_ratio(1, 2).expect("characteristic ≠ 2");
    [
        lin(&[(-2, 1, 1, 1, 1), (2, 1, 0, 1, 2), (2, 0, 1, 2, 1), (-1, 0, 2, 2, 0), (-1, 0, 0, 2, 2)]),
        lin(&[(-1, 1, 0, 1, 3), (1, 1, 1, 1, 2), (-2, 0, 2, 2, 1), (1, 0, 3, 2, 0), (1, 0, 1, 2, 2)]),
        lin(&[(2, 1, 1, 1, 3), (-2, 1, 2, 1, 2), (-1, 0, 3, 2, 1), (-1, 0, 1, 2, 3), (2, 0, 2, 2, 2)]),
        lin(&[(-1, 0, 1, 3, 1), (1, 0, 0, 3, 2), (1, 1, 1, 2, 1), (1, 1, 2, 2, 0), (-2, 1, 0, 2, 2)]),
        lin(&[(-1, 0, 0, 3, 3), (1, 0, 1, 3, 2), (-5, 1, 2, 2, 1), (1, 1, 3, 2, 0), (4, 1, 1, 2, 2)]).scale(&half),
        lin(&[(1, 0, 1, 3, 3), (-1, 0, 2, 3, 2), (1, 1, 3, 2, 1), (-2, 1, 1, 2, 3), (1, 1, 2, 2, 2)]),
        lin(&[(2, 1, 1, 3, 1), (-1, 1, 2, 3, 0), (-1, 1, 0, 3, 2), (-2, 2, 1, 2, 1), (2, 2, 0, 2, 2)]),
        lin(&[(1, 1, 2, 3, 1), (1, 1, 0, 3, 3), (-2, 1, 1, 3, 2), (-1, 2, 0, 2, 3), (1, 2, 1, 2, 2)]),
        lin(&[(-1, 1, 3, 3, 1), (-1, 1, 1, 3, 3), (2, 1, 2, 3, 2), (2, 2, 1, 2, 3), (-2, 2, 2, 2, 2)]),
    ]
}

/// q = (y_a², y_a y_b, y_b², y_a z_a, ½(y_a z_b + y_b z_a), y_b z_b, z_a², z_a z_b, z_b²).
pub fn q_vector(ring: &RingRef, basis: [usize; 4]) -> [MultiPoly; 9] {
    let v = |i: usize| MultiPoly::var_idx(ring, basis[i]);
    let half = ring.field().from_ratio(1, 2).expect("characteristic ≠ 2");
    [
        &v(0) * &v(0),
        &v(0) * &v(1),
        &v(1) * &v(1),
        &v(0) * &v(2),
        (&(&v(0) * &v(3)) + &(&v(1) * &v(2))).scale(&half),
        &v(1) * &v(3),
        &v(2) * &v(2),
        &v(2) * &v(3),
        &v(3) * &v(3),
    ]
}

/// Rows of Cᵗ from the 4×4 c-table (blocks C0..C3, entries c_i0..c_i3).
pub fn c_transpose(c: &[[MultiPoly; 4]; 4]) -> Vec<[MultiPoly; 4]> {
    let blk = |i: usize| -> [[MultiPoly; 2]; 3] {
        [[c[i][1].clone(), c[i][0].clone()], [-&c[i][2], -&c[i][1]], [c[i][3].clone(), c[i][2].clone()]]
    };
    let (b0, b1, b2, b3) = (blk(0), blk(1), blk(2), blk(3));
    let mut rows = Vec::new();
    for r in 0..3 {
        rows.push([b1[r][0].clone(), b1[r][1].clone(), b0[r][0].clone(), b0[r][1].clone()]);
    }
    for r in 0..3 {
        rows.push([-&b2[r][0], -&b2[r][1], -&b1[r][0], -&b1[r][1]]);
    }
    for r in 0..3 {
        rows.push([b3[r][0].clone(), b3[r][1].clone(), b2[r][0].clone(), b2[r][1].clone()]);
    }
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdealKind {
    Abelian,
    Irregular,
}

#[derive(Clone, Debug)]
pub struct GradedIdeal {
    pub ring: RingRef,
    pub kind: IdealKind,
    /// inverted x-coordinate
    pub chart: usize,
    /// (y_a, y_b, z_a, z_b) as ring indices
    pub basis: [usize; 4],
    pub generators: Vec<MultiPoly>,
    pub c: [[MultiPoly; 4]; 4],
    pub params: Option<SurfaceParams>,
}

/// Assembles q − w·Cᵗ + D.
pub fn assemble(ring: &RingRef, basis: [usize; 4], c: &[[MultiPoly; 4]; 4]) -> Vec<MultiPoly> {
    let q = q_vector(ring, basis);
    let ct = c_transpose(c);
    let d = d_vector(c);
    let w: Vec<MultiPoly> = basis.iter().map(|i| MultiPoly::var_idx(ring, *i)).collect();
    (0..9)
        .map(|k| {
            let lin = (0..4).fold(MultiPoly::zero(ring), |acc, j| &acc + &(&w[j] * &ct[k][j]));
            &(&q[k] - &lin) + &d[k]
        })
        .collect()
}

fn chart_basis(ring: &RingRef, chart: usize) -> Result<[usize; 4]> {
    if chart > 2 {
        return Err(Error::Precondition("chart index must be 0, 1 or 2".into()));
    }
    let pres = Presentation::euler_on(ring, 2)?;
    let b = pres.trivialize(chart)?.basis;
    Ok([b[0], b[1], b[2], b[3]])
}

/// Block i as a single cover homomorphism: β0 = β1 = β2 = β_i, β012 = α_i.
pub fn block_betas(ring: &RingRef, alpha: &Scalar, beta: &Scalar) -> Result<BetaVector> {
    let f = ring.field();
    let z = f.zero();
    BetaVector::from_scalars(
        ring,
        &[beta.clone(), beta.clone(), beta.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z, alpha.clone()],
    )
}

/// The c-table on any chart: the closed formulas on U2, transported blockwise
/// otherwise.
pub fn c_table(ring: &RingRef, p: &SurfaceParams, chart: usize) -> Result<[[MultiPoly; 4]; 4]> {
    let mut out: Vec<[MultiPoly; 4]> = Vec::new();
    for i in 0..4 {
        if chart == 2 {
            let a = MultiPoly::constant(ring, p.alpha[i].clone());
            let b = MultiPoly::constant(ring, p.beta[i].clone());
            out.push(c_block(ring, &a, &b));
        } else {
            let spec = CoverHomSpec::from_betas(block_betas(ring, &p.alpha[i], &p.beta[i])?);
            out.push(local_equations(&spec, chart)?.c);
        }
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()])
}

pub fn surface_ring(field: FieldSpec) -> Result<RingRef> {
    Ring::standard(field, &[])
}

/// Gate: the moduli residual must vanish.
pub fn build_ideal(p: &SurfaceParams, chart: usize) -> Result<GradedIdeal> {
    let res = check_moduli_equation(p);
    if !res.is_zero() {
        return Err(Error::ModuliEquation(res.to_string()));
    }
    build_ideal_unchecked(p, chart)
}

/// The same construction without the moduli gate (negative controls).
pub fn build_ideal_unchecked(p: &SurfaceParams, chart: usize) -> Result<GradedIdeal> {
    let ring = surface_ring(p.field)?;
    let basis = chart_basis(&ring, chart)?;
    let c = c_table(&ring, p, chart)?;
    let generators = assemble(&ring, basis, &c);
    Ok(GradedIdeal { ring, kind: IdealKind::Abelian, chart, basis, generators, c, params: Some(p.clone()) })
}

impl GradedIdeal {
    /// Weighted degree of every generator, or an error naming the first
    /// inhomogeneous one.
    pub fn generator_degrees(&self) -> Result<Vec<i64>> {
        use crate::exactring::Degree;
        self.generators
            .iter()
            .enumerate()
            .map(|(k, g)| match g.weighted_degree() {
                Degree::Homogeneous(d) => Ok(d),
                Degree::Zero => Err(Error::Degenerate(format!("generator {k} vanishes"))),
                Degree::Inhomogeneous => Err(Error::Degenerate(format!("generator {k} is not homogeneous"))),
            })
            .collect()
    }

    /// Quadratic (y,z)-part of every generator; equals q exactly.
    pub fn leading_parts(&self) -> Vec<MultiPoly> {
        let b = self.basis;
        self.generators
            .iter()
            .map(|g| {
                let mut out = MultiPoly::zero(&self.ring);
                for (e, c) in g.terms() {
                    if b.iter().map(|i| e[*i]).sum::<i32>() == 2 {
                        out.add_term(e.clone(), c.clone());
                    }
                }
                out
            })
            .collect()
    }

    pub fn has_q_leading_parts(&self) -> bool {
        self.leading_parts() == q_vector(&self.ring, self.basis).to_vec()
    }

    /// Generators times the smallest x-monomial clearing denominators.
    pub fn cleared(&self) -> Vec<MultiPoly> {
        self.generators.iter().map(|g| g.clear_denominators().0).collect()
    }

    pub fn export(&self) -> IdealExport {
        IdealExport {
            field: self.ring.field().label(),
            kind: self.kind,
            weights: self.basis_weights(),
            chart: format!("u{}", self.chart),
            basis: self.basis.iter().map(|i| self.ring.names()[*i].clone()).collect(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            cleared: self.cleared().iter().map(|g| g.to_string()).collect(),
            c_table: self.c.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect(),
            alpha: self.params.as_ref().map(|p| p.alpha_strings()),
            beta: self.params.as_ref().map(|p| p.beta_strings()),
        }
    }

    fn basis_weights(&self) -> Vec<i32> {
        let w = self.ring.weights();
        vec![w[0], w[self.basis[0]], w[self.basis[2]]]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealExport {
    pub field: String,
    pub kind: IdealKind,
    /// weights of (x, y, z)
    pub weights: Vec<i32>,
    pub chart: String,
    pub basis: Vec<String>,
    pub generators: Vec<String>,
    pub cleared: Vec<String>,
    pub c_table: Vec<Vec<String>>,
    pub alpha: Option<Vec<String>>,
    pub beta: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub generator: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Writes f in terms of the generators: its (y,z)-quadratic part must be a
/// combination Σ a_k q_k (a_k free of y, z); returns f − Σ a_k G_k.
pub fn reduce_by_generators(ideal: &GradedIdeal, f: &MultiPoly) -> Result<MultiPoly> {
    let slices = f.coefficients_in(&ideal.basis);
    let coeff = |e: [i32; 4]| slices.get(&e.to_vec()).cloned().unwrap_or_else(|| MultiPoly::zero(&ideal.ring));
    let a01 = coeff([1, 0, 0, 1]);
    let a10 = coeff([0, 1, 1, 0]);
    if a01 != a10 {
        return Err(Error::Degenerate("quadratic part is not symmetric in y and z".into()));
    }
    let a = [
        coeff([2, 0, 0, 0]),
        coeff([1, 1, 0, 0]),
        coeff([0, 2, 0, 0]),
        coeff([1, 0, 1, 0]),
        &a01 + &a10,
        coeff([0, 1, 0, 1]),
        coeff([0, 0, 2, 0]),
        coeff([0, 0, 1, 1]),
        coeff([0, 0, 0, 2]),
    ];
    let mut rem = f.clone();
    for k in 0..9 {
        if !a[k].is_zero() {
            rem = &rem - &(&a[k] * &ideal.generators[k]);
        }
    }
    Ok(rem)
}

/// Every generator's image under σ, ι, τ (untwisted, acting on x, y, z) must
/// reduce to zero against the generators.
pub fn check_equivariance(ideal: &GradedIdeal) -> Result<Vec<EquivarianceReport>> {
    if ideal.chart != 2 {
        return Err(Error::Precondition("equivariance is checked on the chart x2 ≠ 0".into()));
    }
    let mut out = Vec::new();
    for act in [GroupAction::sigma(0), GroupAction::iota(0), GroupAction::tau(0)] {
        let map = act.chart_map(&ideal.ring)?;
        let mut witness = None;
        for (k, g) in ideal.generators.iter().enumerate() {
            let img = g.substitute(&map)?;
            let rem = reduce_by_generators(ideal, &img)?;
            if !rem.is_zero() {
                witness = Some(format!("generator {k}: remainder {rem}"));
                break;
            }
        }
        out.push(EquivarianceReport { generator: act.generator.name().into(), pass: witness.is_none(), witness });
    }
    Ok(out)
}

/// Random parameters with vanishing moduli residual: α3 is solved from the
/// others (β0 ≠ 0 is resampled until it holds).
pub fn random_admissible<R: rand::Rng>(field: FieldSpec, rng: &mut R) -> SurfaceParams {
    loop {
        let alpha: [Scalar; 4] = std::array::from_fn(|_| random_scalar(field, rng));
        let beta: [Scalar; 4] = std::array::from_fn(|_| random_scalar(field, rng));
        if beta[0].is_zero() {
            continue;
        }
        let mut p = SurfaceParams::new(field, alpha, beta);
        // residual is r0 − α3·β0/3
        p.alpha[3] = field.zero();
        let r0 = check_moduli_equation(&p);
        p.alpha[3] = (&r0 * &field.from_i64(3)).div(&p.beta[0]).expect("β0 ≠ 0");
        debug_assert!(check_moduli_equation(&p).is_zero());
        return p;
    }
}

pub fn random_params<R: rand::Rng>(field: FieldSpec, rng: &mut R) -> SurfaceParams {
    SurfaceParams::new(
        field,
        std::array::from_fn(|_| random_scalar(field, rng)),
        std::array::from_fn(|_| random_scalar(field, rng)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_poly;
    use rand::SeedableRng;

    const F31: FieldSpec = FieldSpec::PrimeField(31);

    #[test]
    fn zero_params_give_the_q_cone() {
        let id = build_ideal(&SurfaceParams::zero(FieldSpec::Rationals), 2).unwrap();
        assert_eq!(id.generators, q_vector(&id.ring, id.basis).to_vec());
    }

    #[test]
    fn c_table_spot_value() {
        let mut p = SurfaceParams::zero(FieldSpec::Rationals);
        p.beta[1] = FieldSpec::Rationals.one();
        let r = surface_ring(FieldSpec::Rationals).unwrap();
        let c = c_table(&r, &p, 2).unwrap();
        assert_eq!(c[1][0], parse_poly("x2^2 - x1^3*x2^-1", &r).unwrap());
        assert!(c[0][0].is_zero());
    }

    #[test]
    fn d_spot_value() {
        let r = surface_ring(FieldSpec::Rationals).unwrap();
        let mut c: [[MultiPoly; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| MultiPoly::zero(&r)));
        c[1][1] = MultiPoly::one(&r);
        let d = d_vector(&c);
        assert_eq!(d[0], MultiPoly::from_i64(&r, -2));
        assert!(d[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn first_generator_layout() {
        // y0² = c11·y0 + c10·y1 + c01·z0 + c00·z1 + D_0
        // c_ij is named by letter j and digit i
        let names = ["a", "b", "c", "d"];
        let params: Vec<String> = (0..4).flat_map(|i| names.iter().map(move |n| format!("{n}{i}"))).collect();
        let params: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
        let rp = Ring::standard(FieldSpec::Rationals, &params).unwrap();
        let c: [[MultiPoly; 4]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| MultiPoly::var(&rp, &format!("{}{i}", names[j])).unwrap()));
        let g = assemble(&rp, [3, 4, 6, 7], &c);
        let d = d_vector(&c);
        let expect = parse_poly("y0^2 - b1*y0 - a1*y1 - b0*z0 - a0*z1", &rp).unwrap();
        assert_eq!(g[0], &expect + &d[0]);
    }

    #[test]
    fn moduli_residual_examples() {
        let p = SurfaceParams::from_i64(F31, [1, 0, 0, 0], [0, 0, 0, 1]);
        assert_eq!(check_moduli_equation(&p), F31.from_ratio(1, 3).unwrap());
        assert!(check_moduli_equation(&SurfaceParams::zero(F31)).is_zero());
        let r = crate::exactring::Ring::standard(FieldSpec::Rationals, &["a0", "a1", "a2", "a3"]).unwrap();
        let a: [MultiPoly; 4] = std::array::from_fn(|i| MultiPoly::var(&r, &format!("a{i}")).unwrap());
        let b = [0, 1, 1, 0].map(|v| MultiPoly::from_i64(&r, v));
        assert_eq!(moduli_residual(&a, &b), parse_poly("a2 - a1", &r).unwrap());
    }

    #[test]
    fn gate_and_homogeneity() {
        let p = SurfaceParams::from_i64(F31, [0, 1, 1, 0], [0, 1, 1, 0]);
        let id = build_ideal(&p, 2).unwrap();
        assert_eq!(id.generator_degrees().unwrap(), vec![4; 9]);
        assert!(id.has_q_leading_parts());
        assert!(build_ideal(&SurfaceParams::from_i64(F31, [1, 0, 0, 0], [0, 0, 0, 1]), 2).is_err());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let p = random_admissible(F31, &mut rng);
        assert!(check_moduli_equation(&p).is_zero());
    }

    #[test]
    fn equivariance_of_a_sample() {
        let p = SurfaceParams::from_i64(F31, [0, 1, 1, 0], [0, 1, 1, 0]);
        let rep = check_equivariance(&build_ideal(&p, 2).unwrap()).unwrap();
        assert!(rep.iter().all(|r| r.pass), "{rep:?}");
    }
}
