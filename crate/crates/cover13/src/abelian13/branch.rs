//! Branch loci: the Birkenhake–Lange sextic and the trace discriminant
//! restricted to a line.

use super::fiber::{fiber_algebra, trace_discriminant};
use super::{build_ideal, SurfaceParams};
use crate::error::{Error, Result};
use crate::exactring::interp::{degree, eval, interpolate, trim};
use crate::exactring::{FieldSpec, MultiPoly, RingRef, Scalar};
use rayon::prelude::*;
use serde::Serialize;

/// Power of x2 that clears the chart denominators of the discriminant.
pub const CLEARING_POWER: i64 = 12;
/// The cleared discriminant has degree at most 24 + 12 in s.
pub const DEFAULT_BOUND: usize = 36;
/// Extra samples beyond B + 1 used to confirm the interpolant.
pub const CHECK_SAMPLES: usize = 4;

/// (x0⁶+x1⁶+x2⁶) + 2(2λ³−1)(x0³x1³+x1³x2³+x2³x0³) − 6λ²x0x1x2(x0³+x1³+x2³)
/// − 3λ(λ³−4)x0²x1²x2², with λ any polynomial of the ring (a constant or a
/// parameter).
pub fn bl_branch_sextic(lambda: &MultiPoly) -> MultiPoly {
    let r = lambda.ring();
    let x = |i: usize| MultiPoly::var_idx(r, i);
    let k = |v: i64| MultiPoly::from_i64(r, v);
    let (x0, x1, x2) = (x(0), x(1), x(2));
    let s6 = &(&x0.pow(6) + &x1.pow(6)) + &x2.pow(6);
    let (c0, c1, c2) = (x0.pow(3), x1.pow(3), x2.pow(3));
    let s33 = &(&(&c0 * &c1) + &(&c1 * &c2)) + &(&c2 * &c0);
    let m = &(&x0 * &x1) * &x2;
    let s411 = &m * &(&(&c0 + &c1) + &c2);
    let s222 = &m * &m;
    let l3 = lambda.pow(3);
    let a = &k(2) * &(&(&k(2) * &l3) - &k(1));
    let b = &k(6) * &lambda.pow(2);
    let c = &(&k(3) * lambda) * &(&l3 - &k(4));
    &(&(&s6 + &(&a * &s33)) - &(&b * &s411)) - &(&c * &s222)
}

/// α = (0, −3λ/2, −3λ/2, 0), β = (0, 1, 1, 0): the member of the family whose
/// branch curve is the sextic with parameter λ.
pub fn bl_params(field: FieldSpec, lambda: &Scalar) -> SurfaceParams {
    let a = lambda * &field.from_ratio(-3, 2).expect("characteristic ≠ 2");
    let z = field.zero();
    let one = field.one();
    SurfaceParams::new(field, [z.clone(), a.clone(), a, z.clone()], [z.clone(), one.clone(), one, z])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchReport {
    /// coefficients of the cleared discriminant along the line, constant first
    pub coeffs: Vec<String>,
    pub degree: Option<usize>,
    pub bound: usize,
    pub samples: usize,
}

/// Point p + s·q.
pub fn line_point(p: &[Scalar; 3], q: &[Scalar; 3], s: &Scalar) -> [Scalar; 3] {
    std::array::from_fn(|i| &p[i] + &(s * &q[i]))
}

/// s ↦ x2(s)^12 · disc(fiber at x(s)), interpolated through B + 1 samples and
/// confirmed on a few more.  Samples where x2 vanishes are skipped.
pub fn branch_on_line(params: &SurfaceParams, p: &[Scalar; 3], q: &[Scalar; 3], bound: usize) -> Result<Vec<Scalar>> {
    let f = params.field;
    let Some(modulus) = f.modulus() else {
        return Err(Error::Precondition("branch_on_line samples over a prime field".into()));
    };
    let ideal = build_ideal(params, 2)?;
    let needed = bound + 1 + CHECK_SAMPLES;
    let mut ss = Vec::new();
    let mut v = 0u64;
    while ss.len() < needed && v < modulus {
        let s = f.from_i64(v as i64);
        if !line_point(p, q, &s)[2].is_zero() {
            ss.push(s);
        }
        v += 1;
    }
    if ss.len() < needed {
        return Err(Error::Precondition(format!("F_{modulus} is too small for degree bound {bound}")));
    }
    let values: Vec<Result<Scalar>> = ss
        .par_iter()
        .map(|s| {
            let x = line_point(p, q, s);
            let fa = fiber_algebra(&ideal, &x).map_err(|e| match e {
                Error::NotFlat(m) => Error::NotFlat(format!("sample s = {s}: {m}")),
                other => other,
            })?;
            Ok(&trace_discriminant(&fa) * &x[2].pow(CLEARING_POWER))
        })
        .collect();
    let values: Vec<Scalar> = values.into_iter().collect::<Result<_>>()?;
    let coeffs = interpolate(&ss[..=bound], &values[..=bound])?;
    for (s, y) in ss[bound + 1..].iter().zip(&values[bound + 1..]) {
        if &eval(&coeffs, s) != y {
            return Err(Error::Interpolation(format!("degree bound {bound} exceeded")));
        }
    }
    Ok(coeffs)
}

pub fn branch_report(coeffs: &[Scalar], bound: usize) -> BranchReport {
    BranchReport {
        coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
        degree: degree(coeffs),
        bound,
        samples: bound + 1 + CHECK_SAMPLES,
    }
}

/// A homogeneous form restricted to the line, as a univariate polynomial.
pub fn restrict_to_line(poly: &MultiPoly, p: &[Scalar; 3], q: &[Scalar; 3]) -> Result<Vec<Scalar>> {
    let f = poly.field();
    let d = poly.terms().map(|(e, _)| e[..3].iter().sum::<i32>()).max().unwrap_or(0).max(0) as i64;
    let xs: Vec<Scalar> = (0..=d).map(|v| f.from_i64(v)).collect();
    let n = poly.ring().nvars();
    let ys: Vec<Scalar> = xs
        .iter()
        .map(|s| {
            let x = line_point(p, q, s);
            let mut pt = vec![f.zero(); n];
            pt[..3].clone_from_slice(&x);
            poly.evaluate(&pt)
        })
        .collect::<Result<_>>()?;
    interpolate(&xs, &ys)
}

/// Exact univariate division.
pub fn divide_exact(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    let b = trim(b.to_vec());
    let db = degree(&b).ok_or(Error::DivisionByZero)?;
    let mut rem = trim(a.to_vec());
    let Some(da) = degree(&rem) else { return Ok(vec![b[0].zero_like()]) };
    if da < db {
        return Err(Error::NonExactDivision("degree of the divisor exceeds the dividend".into()));
    }
    let lead = b[db].inv()?;
    let mut quo = vec![b[0].zero_like(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = &rem[i + db] * &lead;
        for j in 0..=db {
            rem[i + j] = &rem[i + j] - &(&c * &b[j]);
        }
        quo[i] = c;
    }
    if degree(&rem).is_some() {
        return Err(Error::NonExactDivision("nonzero remainder".into()));
    }
    Ok(trim(quo))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubeCheck {
    pub cube_divides: bool,
    /// k with residual = unit · x2|_line^k, if the residual has that shape
    pub x2_power: Option<usize>,
    pub unit: Option<String>,
}

/// Divides the branch polynomial by C|_line three times and inspects what is
/// left.
pub fn cube_check(branch: &[Scalar], sextic: &MultiPoly, p: &[Scalar; 3], q: &[Scalar; 3]) -> Result<CubeCheck> {
    let c = restrict_to_line(sextic, p, q)?;
    let mut rest = branch.to_vec();
    for _ in 0..3 {
        match divide_exact(&rest, &c) {
            Ok(r) => rest = r,
            Err(Error::NonExactDivision(_)) => return Ok(CubeCheck { cube_divides: false, x2_power: None, unit: None }),
            Err(e) => return Err(e),
        }
    }
    let Some(k) = degree(&rest) else { return Ok(CubeCheck { cube_divides: true, x2_power: None, unit: None }) };
    let x2 = trim(vec![p[2].clone(), q[2].clone()]);
    let mut power = vec![p[2].one_like()];
    for _ in 0..k {
        power = mul_uni(&power, &x2);
    }
    let shape = divide_exact(&rest, &power).ok().filter(|u| degree(u) == Some(0));
    Ok(CubeCheck { cube_divides: true, x2_power: shape.as_ref().map(|_| k), unit: shape.map(|u| u[0].to_string()) })
}

pub fn mul_uni(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![a[0].zero_like(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

/// The sextic with λ as a constant of `ring`.
pub fn bl_sextic_at(ring: &RingRef, lambda: &Scalar) -> MultiPoly {
    bl_branch_sextic(&MultiPoly::constant(ring, lambda.clone()))
}
