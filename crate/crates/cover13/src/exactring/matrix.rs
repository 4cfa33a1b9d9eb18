//! Dense matrices of polynomials over one shared ring.

use super::field::Scalar;
use super::linalg::Mat;
use super::poly::{Exps, MultiPoly, RingRef};
use std::collections::BTreeMap;
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![MultiPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        Self::from_fn(ring, n, n, |r, c| if r == c { MultiPoly::one(ring) } else { MultiPoly::zero(ring) })
    }

    pub fn from_fn(ring: &RingRef, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        PolyMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<MultiPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            entries.extend(row);
        }
        PolyMatrix { ring: ring.clone(), rows: r, cols: c, entries }
    }

    /// Column vector.
    pub fn column(ring: &RingRef, v: Vec<MultiPoly>) -> Self {
        let n = v.len();
        PolyMatrix { ring: ring.clone(), rows: n, cols: 1, entries: v }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MultiPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, o: &PolyMatrix) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Self::from_fn(&self.ring, self.rows, o.cols, |i, j| {
            let mut acc = MultiPoly::zero(&self.ring);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, o: &PolyMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(&self.ring, self.rows, self.cols, |r, c| self.get(r, c) + o.get(r, c))
    }

    pub fn sub(&self, o: &PolyMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(&self.ring, self.rows, self.cols, |r, c| self.get(r, c) - o.get(r, c))
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|p| p.scale(s))
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> Self {
        self.map(|e| e * p)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly>) -> Result<Self> {
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn substitute(&self, map: &[(usize, MultiPoly)]) -> Result<Self> {
        self.try_map(|p| p.substitute(map))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Error unless the matrix is symmetric (the entrywise check behind the
    /// symmetry flag).
    pub fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::Precondition("matrix is not symmetric".into()))
        }
    }
}

/// Coefficients λ with Σ_j λ_j·images[j] = target, all vectors of
/// polynomials compared coefficientwise; free unknowns are set to zero.
pub fn solve_combination(images: &[Vec<MultiPoly>], target: &[MultiPoly]) -> Option<Vec<Scalar>> {
    let f = target.first().or_else(|| images.first().and_then(|v| v.first()))?.field();
    let mut rows: BTreeMap<(usize, Exps), usize> = BTreeMap::new();
    let mut index = |k: usize, e: &Exps| {
        let n = rows.len();
        *rows.entry((k, e.clone())).or_insert(n)
    };
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (j, img) in images.iter().enumerate() {
        for (k, p) in img.iter().enumerate() {
            for (e, c) in p.terms() {
                entries.push((index(k, e), j, c.clone()));
            }
        }
    }
    let mut rhs = Vec::new();
    for (k, p) in target.iter().enumerate() {
        for (e, c) in p.terms() {
            rhs.push((index(k, e), c.clone()));
        }
    }
    let mut a = Mat::zeros(f, rows.len(), images.len());
    for (r, c, v) in entries {
        a.set(r, c, v);
    }
    let mut b = vec![f.zero(); rows.len()];
    for (r, v) in rhs {
        b[r] = v;
    }
    a.solve(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{parse_poly, FieldSpec, Ring};

    #[test]
    fn product_and_transpose() {
        let r = Ring::standard(FieldSpec::Rationals, &[]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let a = PolyMatrix::from_rows(&r, vec![vec![p("x0"), p("x1")], vec![p("0"), p("x2")]]);
        let b = a.mul(&a.transpose());
        assert!(b.is_symmetric());
        assert_eq!(b.get(0, 0), &p("x0^2 + x1^2"));
        assert_eq!(b.get(0, 1), &p("x1*x2"));
    }
}
