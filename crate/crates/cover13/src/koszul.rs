//! The Koszul syzygy matrix M₃ of (x0, x1, x2) and the decomposition of
//! symmetric annihilators of x̄ as M₃·N·M₃.

use crate::error::{Error, Result};
use crate::exactring::{Exps, FieldSpec, Mat, MultiPoly, PolyMatrix, Ring, RingRef, Scalar};
use std::collections::BTreeMap;

/// Rows (0, x2, −x1), (−x2, 0, x0), (x1, −x0, 0).
pub fn m3(ring: &RingRef) -> PolyMatrix {
    let x = |i: usize| MultiPoly::var_idx(ring, i);
    let z = MultiPoly::zero(ring);
    PolyMatrix::from_rows(
        ring,
        vec![vec![z.clone(), x(2), -x(1)], vec![-x(2), z.clone(), x(0)], vec![x(1), -x(0), z]],
    )
}

pub fn xbar(ring: &RingRef) -> PolyMatrix {
    PolyMatrix::column(ring, (0..3).map(|i| MultiPoly::var_idx(ring, i)).collect())
}

/// All exponent triples of total degree d, in descending lex order.
pub fn ternary_monomials(d: i64) -> Vec<[i32; 3]> {
    let mut v = Vec::new();
    if d < 0 {
        return v;
    }
    let d = d as i32;
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            v.push([a, b, d - a - b]);
        }
    }
    v
}

fn x_degree(e: &[i32]) -> i64 {
    (0..3).map(|i| e[i] as i64).sum()
}

fn check_annihilator(l: &PolyMatrix) -> Result<()> {
    if l.rows() != 3 || l.cols() != 3 {
        return Err(Error::Precondition("L must be 3×3".into()));
    }
    l.require_symmetric()?;
    if !l.mul(&xbar(l.ring())).is_zero() {
        return Err(Error::Precondition("L·x̄ ≠ 0".into()));
    }
    Ok(())
}

/// Finds a symmetric N with M₃·N·M₃ = L.  Entries of L may carry extra
/// variables besides x0, x1, x2; these are treated as coefficients.  The
/// solution is the reduced-echelon one with free unknowns set to zero.
pub fn kovacec_decompose(l: &PolyMatrix) -> Result<PolyMatrix> {
    check_annihilator(l)?;
    let ring = l.ring().clone();
    let f = ring.field();
    let n = ring.nvars();
    let others: Vec<usize> = (3..n).collect();
    // slice every entry by the monomial in the non-x variables
    let mut slices: BTreeMap<Exps, Vec<MultiPoly>> = BTreeMap::new();
    for (k, p) in l.entries().iter().enumerate() {
        for (key, coeff) in p.coefficients_in(&others) {
            slices.entry(key).or_insert_with(|| vec![MultiPoly::zero(&ring); 9])[k] = coeff;
        }
    }
    let mut out = PolyMatrix::zeros(&ring, 3, 3);
    let m = m3(&ring);
    for (key, entries) in slices {
        let mut deg = None;
        for p in &entries {
            for (e, _) in p.terms() {
                if (0..3).any(|i| e[i] < 0) {
                    return Err(Error::Precondition("entries must be polynomial in x".into()));
                }
                let d = x_degree(e);
                if *deg.get_or_insert(d) != d {
                    return Err(Error::Precondition("entries are not homogeneous of one degree".into()));
                }
            }
        }
        let Some(d) = deg else { continue };
        if d < 2 {
            return Err(Error::Precondition("nonzero annihilator of degree < 2".into()));
        }
        let slice = solve_slice(&ring, &m, &entries, d)?;
        let mut mono = vec![0; n];
        for (i, v) in others.iter().zip(&key) {
            mono[*i] = *v;
        }
        out = out.add(&slice.map(|p| p.mul_monomial(&mono, &f.one())));
    }
    if m.mul(&out).mul(&m) != *l {
        return Err(Error::Degenerate("decomposition failed to reproduce L".into()));
    }
    Ok(out)
}

const SYM_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn solve_slice(ring: &RingRef, m: &PolyMatrix, entries: &[MultiPoly], d: i64) -> Result<PolyMatrix> {
    let f = ring.field();
    let n = ring.nvars();
    let mono_exps = |t: &[i32; 3]| {
        let mut e = vec![0; n];
        e[..3].copy_from_slice(t);
        e
    };
    let src = ternary_monomials(d - 2);
    let dst = ternary_monomials(d);
    let dst_idx: BTreeMap<[i32; 3], usize> = dst.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let nrows = SYM_PAIRS.len() * dst.len();
    let ncols = SYM_PAIRS.len() * src.len();
    let row_of = |pair: usize, e: &Exps| pair * dst.len() + dst_idx[&[e[0], e[1], e[2]]];
    let mut a = Mat::zeros(f, nrows, ncols);
    for (pi, (r, c)) in SYM_PAIRS.iter().enumerate() {
        for (si, t) in src.iter().enumerate() {
            let mono = MultiPoly::monomial(ring, mono_exps(t), f.one());
            let mut e = PolyMatrix::zeros(ring, 3, 3);
            e.set(*r, *c, mono.clone());
            e.set(*c, *r, mono);
            let img = m.mul(&e).mul(m);
            let col = pi * src.len() + si;
            for (qi, (i, j)) in SYM_PAIRS.iter().enumerate() {
                for (ex, v) in img.get(*i, *j).terms() {
                    a.set(row_of(qi, ex), col, v.clone());
                }
            }
        }
    }
    let mut b = vec![f.zero(); nrows];
    for (qi, (i, j)) in SYM_PAIRS.iter().enumerate() {
        for (ex, v) in entries[3 * i + j].terms() {
            b[row_of(qi, ex)] = v.clone();
        }
    }
    let x = a.solve(&b).ok_or_else(|| Error::Degenerate("no symmetric N solves M₃NM₃ = L".into()))?;
    let mut out = PolyMatrix::zeros(ring, 3, 3);
    for (pi, (r, c)) in SYM_PAIRS.iter().enumerate() {
        let mut p = MultiPoly::zero(ring);
        for (si, t) in src.iter().enumerate() {
            p.add_term(mono_exps(t), x[pi * src.len() + si].clone());
        }
        out.set(*r, *c, p.clone());
        out.set(*c, *r, p);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct HomFamily {
    /// degree of the forms d_i
    pub degree: i64,
    pub dimension: usize,
    /// symbolic upper-triangular matrix of d1..d6 when the space is nonzero
    pub params: Option<PolyMatrix>,
}

/// Parameter count of Hom(Sym²Ω¹(−m1), 𝒪(−m2)): six forms of degree
/// 2·m1 − m2 + 2.
pub fn hom_family_dimension(m1: i64, m2: i64) -> Result<HomFamily> {
    if m1 < 0 {
        return Err(Error::Precondition("m1 must be nonnegative".into()));
    }
    let degree = 2 * m1 - m2 + 2;
    let dimension = 6 * ternary_monomials(degree).len();
    let params = if dimension > 0 {
        let names = ["d1", "d2", "d3", "d4", "d5", "d6"];
        let ring = Ring::standard(FieldSpec::Rationals, &names)?;
        let d = |i: usize| MultiPoly::var(&ring, names[i]).unwrap();
        let z = MultiPoly::zero(&ring);
        Some(PolyMatrix::from_rows(
            &ring,
            vec![vec![d(0), d(1), d(2)], vec![z.clone(), d(3), d(4)], vec![z.clone(), z, d(5)]],
        ))
    } else {
        None
    };
    Ok(HomFamily { degree, dimension, params })
}

/// Whether M₃·A·M₃ = M₃·B·M₃.
pub fn same_image(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    let m = m3(a.ring());
    m.mul(a).mul(&m) == m.mul(b).mul(&m)
}

/// Random symmetric matrix of x-forms of the given degree.
pub fn random_symmetric<R: rand::Rng>(ring: &RingRef, degree: i64, rng: &mut R) -> PolyMatrix {
    let f = ring.field();
    let mut out = PolyMatrix::zeros(ring, 3, 3);
    for (r, c) in SYM_PAIRS {
        let mut p = MultiPoly::zero(ring);
        for t in ternary_monomials(degree) {
            let mut e = vec![0; ring.nvars()];
            e[..3].copy_from_slice(&t);
            p.add_term(e, random_scalar(f, rng));
        }
        out.set(r, c, p.clone());
        out.set(c, r, p);
    }
    out
}

/// Uniform element over F_p; small integers over ℚ and ℚ(ω).
pub fn random_scalar<R: rand::Rng>(f: FieldSpec, rng: &mut R) -> Scalar {
    match f {
        FieldSpec::PrimeField(p) => f.from_i64(rng.gen_range(0..p as i64)),
        FieldSpec::Rationals => f.from_i64(rng.gen_range(-9..10)),
        FieldSpec::RationalsWithOmega => {
            let a = f.from_i64(rng.gen_range(-5..6));
            let b = f.from_i64(rng.gen_range(-5..6));
            &a + &(&b * &f.xi().unwrap())
        }
    }
}
