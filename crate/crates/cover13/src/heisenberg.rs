//! Lifts of the Heisenberg generators σ, ι, τ to the Euler bundle and the
//! linear conditions they impose on the ten β's.
//!
//! An action acts on cover homomorphisms by pulling back the U2 equations.
//! After renormalizing the quadratic parts, the pulled-back equations are again
//! of the β-form, which gives a 10×10 matrix A(g) on β-space.  The
//! equivariant β's of g are the kernel of A(g) − 1.

use crate::ambient::Presentation;
use crate::coverhom::{
    beta_index, beta_ring, equations_from_betas, normalize_quadratic_system, read_equations, BetaVector, BETA_NAMES,
};
use crate::error::{Error, Result};
use crate::exactring::{solve_combination, FieldSpec, Mat, MultiPoly, RingRef, Scalar};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum Generator {
    Sigma,
    Iota,
    Tau,
}

impl Generator {
    pub fn order(self) -> u32 {
        match self {
            Generator::Iota => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Sigma => "sigma",
            Generator::Iota => "iota",
            Generator::Tau => "tau",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sigma" | "s" => Ok(Generator::Sigma),
            "iota" | "i" => Ok(Generator::Iota),
            "tau" | "t" => Ok(Generator::Tau),
            _ => Err(Error::Precondition(format!("unknown generator `{s}`"))),
        }
    }
}

/// A generator with its twist on the y-copy and, for two copies, on the
/// z-copy.  Twists are reduced mod the generator's order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAction {
    pub generator: Generator,
    pub twist: u32,
    pub z_twist: Option<u32>,
}

impl GroupAction {
    pub fn new(generator: Generator, twist: i64) -> Self {
        let o = generator.order() as i64;
        GroupAction { generator, twist: twist.rem_euclid(o) as u32, z_twist: None }
    }

    pub fn two_copy(generator: Generator, m: i64, n: i64) -> Self {
        let o = generator.order() as i64;
        GroupAction { generator, twist: m.rem_euclid(o) as u32, z_twist: Some(n.rem_euclid(o) as u32) }
    }

    pub fn sigma(a: i64) -> Self {
        Self::new(Generator::Sigma, a)
    }

    pub fn iota(b: i64) -> Self {
        Self::new(Generator::Iota, b)
    }

    pub fn tau(c: i64) -> Self {
        Self::new(Generator::Tau, c)
    }

    /// ±1 or a power of ξ for the given twist.
    fn twist_scalar(&self, f: FieldSpec, t: u32) -> Result<Scalar> {
        match self.generator {
            Generator::Iota => Ok(f.from_i64(if t % 2 == 0 { 1 } else { -1 })),
            _ => Ok(f.xi()?.pow(t as i64)),
        }
    }

    /// Images of x_i and of the fiber variables on the whole ambient space:
    /// σ: x_i ↦ x_{i+1}, y_j ↦ ξ^a y_{j+1};  ι: x_i ↦ x_{−i}, y_j ↦ (−1)^b y_{−j};
    /// τ: x_i ↦ ξ^i x_i, y_j ↦ ξ^c ξ^{−j} y_j  (z likewise with its own twist).
    pub fn global_map(&self, ring: &RingRef) -> Result<Vec<(usize, MultiPoly)>> {
        let f = ring.field();
        let var = |i: usize| MultiPoly::var_idx(ring, i);
        let perm = |i: usize| match self.generator {
            Generator::Sigma => (i + 1) % 3,
            Generator::Iota => (3 - i) % 3,
            Generator::Tau => i,
        };
        let diag = |i: usize| -> Result<Scalar> {
            match self.generator {
                Generator::Tau => Ok(f.xi()?.pow(i as i64)),
                _ => Ok(f.one()),
            }
        };
        let mut map = Vec::new();
        for i in 0..3 {
            map.push((i, var(perm(i)).scale(&diag(i)?)));
        }
        let mut copies = vec![("y", self.twist)];
        if ring.has("z0") {
            copies.push(("z", self.z_twist.unwrap_or(self.twist)));
        }
        for (name, t) in copies {
            let tw = self.twist_scalar(f, t)?;
            for j in 0..3 {
                let src = ring.index(&format!("{name}{j}"))?;
                let dst = ring.index(&format!("{name}{}", perm(j)))?;
                // τ scales y_j by ξ^{−j}
                let d = match self.generator {
                    Generator::Tau => f.xi()?.pow(-(j as i64)),
                    _ => f.one(),
                };
                map.push((src, var(dst).scale(&(&tw * &d))));
            }
        }
        Ok(map)
    }

    /// The same map restricted to the chart x2 ≠ 0: images of the chart basis,
    /// with y2 (and z2) replaced by their expressions in the basis.
    pub fn chart_map(&self, ring: &RingRef) -> Result<Vec<(usize, MultiPoly)>> {
        let copies = if ring.has("z0") { 2 } else { 1 };
        let pres = Presentation::euler_on(ring, copies)?;
        let u2 = pres.trivialize(2)?;
        let keep: Vec<usize> = (0..3).chain(u2.basis.iter().copied()).collect();
        self.global_map(ring)?
            .into_iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(v, p)| Ok((v, u2.reduce(&p)?)))
            .collect()
    }
}

/// Composition of substitutions: the map v ↦ f(g(v)), i.e. first g, then f
/// applied to the result.
pub fn compose(f: &[(usize, MultiPoly)], g: &[(usize, MultiPoly)]) -> Result<Vec<(usize, MultiPoly)>> {
    g.iter().map(|(v, p)| Ok((*v, p.substitute(f)?))).collect()
}

/// Matrix A with (g pulled back on β) = A·β, computed column by column.
pub fn induced_matrix(ring: &RingRef, map: &[(usize, MultiPoly)]) -> Result<Mat> {
    let f = ring.field();
    let units: Vec<Vec<MultiPoly>> = BETA_NAMES
        .iter()
        .map(|n| Ok(equations_from_betas(&BetaVector::unit(ring, n)?)?.c.to_vec()))
        .collect::<Result<_>>()?;
    let mut a = Mat::zeros(f, 10, 10);
    for (j, name) in BETA_NAMES.iter().enumerate() {
        let eq = equations_from_betas(&BetaVector::unit(ring, name)?)?;
        let rel = eq.relations();
        let pulled = [rel[0].substitute(map)?, rel[1].substitute(map)?, rel[2].substitute(map)?];
        let normalized = normalize_quadratic_system(&pulled, eq.basis)?;
        let image = read_equations(&normalized, 2, eq.basis)?;
        let col = solve_combination(&units, &image.c)
            .ok_or_else(|| Error::Degenerate("pulled-back equations leave the β-family".into()))?;
        for (i, v) in col.into_iter().enumerate() {
            a.set(i, j, v);
        }
    }
    Ok(a)
}

fn ring_for(field: FieldSpec) -> Result<RingRef> {
    if !field.has_cube_roots() {
        return Err(Error::NoCubeRoot(field.label()));
    }
    beta_ring(field, &[])
}

pub fn action_matrix(field: FieldSpec, action: &GroupAction) -> Result<Mat> {
    let r = ring_for(field)?;
    induced_matrix(&r, &action.chart_map(&r)?)
}

/// Homogeneous linear relations on (β0, β1, β2, β01, β02, β10, β12, β20, β21, β012).
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    /// reduced row echelon form, zero rows removed
    pub rows: Mat,
}

impl ConstraintSystem {
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let m = if rows.is_empty() { Mat::zeros(field, 0, 10) } else { Mat::from_rows(field, rows) };
        let (rref, pivots) = m.rref();
        let keep: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect();
        ConstraintSystem { rows: if keep.is_empty() { Mat::zeros(field, 0, 10) } else { Mat::from_rows(field, keep) } }
    }

    pub fn rank(&self) -> usize {
        self.rows.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.rows.field()
    }

    /// Same solution set.
    pub fn equivalent(&self, other: &ConstraintSystem) -> bool {
        let mut both: Vec<Vec<Scalar>> = (0..self.rank()).map(|i| self.rows.row(i).to_vec()).collect();
        both.extend((0..other.rank()).map(|i| other.rows.row(i).to_vec()));
        let stacked = ConstraintSystem::from_rows(self.field(), both);
        stacked.rank() == self.rank() && stacked.rank() == other.rank()
    }

    pub fn intersect(&self, other: &ConstraintSystem) -> ConstraintSystem {
        let mut both: Vec<Vec<Scalar>> = (0..self.rank()).map(|i| self.rows.row(i).to_vec()).collect();
        both.extend((0..other.rank()).map(|i| other.rows.row(i).to_vec()));
        ConstraintSystem::from_rows(self.field(), both)
    }

    /// Basis of the solution space.
    pub fn solutions(&self) -> Vec<Vec<Scalar>> {
        if self.rank() == 0 {
            let f = self.field();
            return (0..10).map(|i| (0..10).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        }
        self.rows.nullspace()
    }

    /// Relations printed as "b0 - (w)*b1 = 0".
    pub fn describe(&self) -> Vec<String> {
        (0..self.rank())
            .map(|i| {
                let terms: Vec<String> = self
                    .rows
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| if c.is_one() { BETA_NAMES[j].to_string() } else { format!("({c})*{}", BETA_NAMES[j]) })
                    .collect();
                format!("{} = 0", terms.join(" + "))
            })
            .collect()
    }
}

/// Conditions for β to be fixed by the action.
pub fn derive_constraints(field: FieldSpec, action: &GroupAction) -> Result<ConstraintSystem> {
    let a = action_matrix(field, action)?;
    let d = a.sub(&Mat::identity(field, 10));
    Ok(ConstraintSystem::from_rows(field, (0..10).map(|i| d.row(i).to_vec()).collect()))
}

/// A relation Σ coefficient·ξ^power·β_name = 0, as displayed.
pub type DisplayedRelation = [(i64, u32, &'static str)];

pub fn system_from_display(field: FieldSpec, rels: &[Vec<(i64, u32, &'static str)>]) -> Result<ConstraintSystem> {
    let xi = field.xi()?;
    let mut rows = Vec::new();
    for rel in rels {
        let mut row = vec![field.zero(); 10];
        for (c, p, name) in rel {
            let j = beta_index(name)?;
            row[j] = &row[j] + &(&field.from_i64(*c) * &xi.pow(*p as i64));
        }
        rows.push(row);
    }
    Ok(ConstraintSystem::from_rows(field, rows))
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionFamily {
    pub dimension: usize,
    /// basis vectors as β-maps
    pub basis: Vec<Vec<(String, String)>>,
}

pub fn solve_equivariant(field: FieldSpec, actions: &[GroupAction]) -> Result<SolutionFamily> {
    let mut sys = ConstraintSystem::from_rows(field, vec![]);
    for a in actions {
        sys = sys.intersect(&derive_constraints(field, a)?);
    }
    let sols = sys.solutions();
    Ok(SolutionFamily {
        dimension: sols.len(),
        basis: sols
            .iter()
            .map(|v| {
                BETA_NAMES
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(n, c)| (n.to_string(), c.to_string()))
                    .collect()
            })
            .collect(),
    })
}

/// Cubic monomials attached to the β's: x_i³ ↔ β_i, x_i²x_j ↔ β_ij,
/// x0x1x2 ↔ β012.
pub const MONOMIALS: [[i32; 3]; 10] =
    [[3, 0, 0], [0, 3, 0], [0, 0, 3], [2, 1, 0], [2, 0, 1], [1, 2, 0], [0, 2, 1], [1, 0, 2], [0, 1, 2], [1, 1, 1]];

/// Matrix of p ↦ p∘g on cubic forms Σ β_m·m(x), in the β-basis.
pub fn monomial_matrix(field: FieldSpec, action: &GroupAction) -> Result<Mat> {
    let r = ring_for(field)?;
    let map: Vec<(usize, MultiPoly)> = action.global_map(&r)?.into_iter().filter(|(v, _)| *v < 3).collect();
    let mut m = Mat::zeros(field, 10, 10);
    for (j, e) in MONOMIALS.iter().enumerate() {
        let mut ex = vec![0; r.nvars()];
        ex[..3].copy_from_slice(e);
        let img = MultiPoly::monomial(&r, ex, field.one()).substitute(&map)?;
        for (i, e2) in MONOMIALS.iter().enumerate() {
            let mut ex2 = vec![0; r.nvars()];
            ex2[..3].copy_from_slice(e2);
            m.set(i, j, img.coeff(&ex2));
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialModelReport {
    pub action: GroupAction,
    /// induced matrix equals the monomial matrix
    pub forward: bool,
    /// induced matrix equals the inverse of the monomial matrix
    pub inverse: bool,
}

impl MonomialModelReport {
    pub fn pass(&self) -> bool {
        self.forward || self.inverse
    }
}

pub fn monomial_model_check(field: FieldSpec, action: &GroupAction) -> Result<MonomialModelReport> {
    let a = action_matrix(field, action)?;
    let m = monomial_matrix(field, action)?;
    let forward = a.sub(&m).is_zero();
    let inverse = m.inverse().map(|mi| a.sub(&mi).is_zero()).unwrap_or(false);
    Ok(MonomialModelReport { action: *action, forward, inverse })
}

/// The labels of the classification when the two twists differ.
pub const CASE_PROPORTIONAL: &str = "C0=gamma*C3, C1=C2=0";
pub const CASE_ONLY_C1: &str = "C0=C2=C3=0";
pub const CASE_ONLY_C2: &str = "C0=C1=C3=0";

#[derive(Clone, Debug, Serialize)]
pub struct TwoTwistRow {
    pub m: u32,
    pub n: u32,
    pub label: String,
    /// dimension of the linear family before the moduli relation
    pub dimension: usize,
    /// blocks C0..C3 that are not forced to vanish
    pub surviving: Vec<usize>,
    /// for the C0, C3 case: the moduli relation on the family is a nonzero
    /// multiple of det(β^0_0, α^0; β^3_0, α^3), i.e. C0 and C3 are proportional
    pub proportional: Option<bool>,
}

/// Block twists under σ̃ = diag(ξ^m, ξ^n): C1 ↦ m, C2 ↦ n, C0 and C3 ↦ −m−n.
pub fn block_twists(m: u32, n: u32) -> [u32; 4] {
    let mn = (6 - m - n) % 3;
    [mn, m % 3, n % 3, mn]
}

/// Classification of the two-copy σ̃-twists (m, n).  For m ≠ n each block
/// carries σ with its block twist together with untwisted ι and τ; the moduli
/// relation then decides between the displayed cases.  For m = n the common
/// σ-relations are reported.
pub fn classify_two_twist(field: FieldSpec, m: u32, n: u32) -> Result<TwoTwistRow> {
    let (m, n) = (m % 3, n % 3);
    let tw = block_twists(m, n);
    let mut blocks = Vec::new();
    for t in tw {
        let mut sys = derive_constraints(field, &GroupAction::sigma(t as i64))?;
        if m != n {
            sys = sys.intersect(&derive_constraints(field, &GroupAction::iota(0))?);
            sys = sys.intersect(&derive_constraints(field, &GroupAction::tau(0))?);
        }
        blocks.push(sys.solutions());
    }
    let dimension = blocks.iter().map(|b| b.len()).sum();
    let surviving: Vec<usize> = (0..4).filter(|i| !blocks[*i].is_empty()).collect();
    if m == n {
        return Ok(TwoTwistRow {
            m,
            n,
            label: format!("all blocks satisfy the sigma relations with a={m}"),
            dimension,
            surviving,
            proportional: None,
        });
    }
    let (label, proportional) = match surviving.as_slice() {
        [1] => (CASE_ONLY_C1.to_string(), None),
        [2] => (CASE_ONLY_C2.to_string(), None),
        [0, 3] => {
            let p = moduli_is_determinant(field, &blocks[0], &blocks[3])?;
            (if p { CASE_PROPORTIONAL.to_string() } else { "C0, C3 unconstrained".to_string() }, Some(p))
        }
        other => (format!("unexpected surviving blocks {other:?}"), None),
    };
    Ok(TwoTwistRow { m, n, label, dimension, surviving, proportional })
}

/// With only C0 and C3 present (both in the β0 = β1 = β2, β012 family), the
/// moduli relation α0β3/3 − α3β0/3 is the 2×2 determinant; checks that the
/// surviving families are exactly that two-parameter shape.
fn moduli_is_determinant(field: FieldSpec, b0: &[Vec<Scalar>], b3: &[Vec<Scalar>]) -> Result<bool> {
    let ib = beta_index("b0")?;
    let ia = beta_index("b012")?;
    let shape = |sols: &[Vec<Scalar>]| -> bool {
        // the family must be spanned by vectors whose (β0, β012) coordinates
        // are independent: then the block is determined by (β0, α)
        if sols.len() != 2 {
            return false;
        }
        let m = Mat::from_rows(field, sols.iter().map(|v| vec![v[ib].clone(), v[ia].clone()]).collect());
        m.rank() == 2
    };
    Ok(shape(b0) && shape(b3))
}

pub fn classify_all(field: FieldSpec) -> Result<Vec<TwoTwistRow>> {
    let mut out = Vec::new();
    for m in 0..3 {
        for n in 0..3 {
            out.push(classify_two_twist(field, m, n)?);
        }
    }
    Ok(out)
}

/// The y-rescaling x_i ↦ μ_i⁻¹x_i, y_i ↦ μ_i·y_i (keeps Σ x_i y_i).
pub fn diagonal_rescaling(ring: &RingRef, mu: [Scalar; 3]) -> Result<Vec<(usize, MultiPoly)>> {
    let mut map = Vec::new();
    for (i, m) in mu.iter().enumerate() {
        map.push((i, MultiPoly::var_idx(ring, i).scale(&m.inv()?)));
    }
    for (i, m) in mu.iter().enumerate() {
        let y = ring.index(&format!("y{i}"))?;
        map.push((y, MultiPoly::var_idx(ring, y).scale(m)));
    }
    Ok(map)
}
