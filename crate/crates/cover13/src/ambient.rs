//! Euler-type presentations of Ω¹(−m) on ℙ², their affine charts, chart
//! transitions and the unprojection variable t.

use crate::error::{Error, Result};
use crate::exactring::{FieldSpec, MultiPoly, PolyMatrix, Ring, RingRef, VarSpec};
use serde::Serialize;

/// Fiber variables `y_i` (and `z_i` for two copies) subject to Σ x_i y_i = 0.
#[derive(Clone, Debug)]
pub struct Presentation {
    ring: RingRef,
    m: i32,
    /// fiber[c][i] = ring index of the i-th variable of copy c
    fiber: Vec<[usize; 3]>,
    matrix: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub inverted: usize,
    pub basis: Vec<usize>,
    /// eliminated variable ↦ its expression in the basis
    pub back_map: Vec<(usize, MultiPoly)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartReport {
    pub inverted: String,
    pub basis: Vec<String>,
    pub back_map: Vec<(String, String)>,
}

pub const X: [usize; 3] = [0, 1, 2];

/// Builds the Euler presentation: one copy with weights m+2, or for m = 0 two
/// copies (y and z, both weight 2).  The m = 0 ring is [`Ring::standard`].
pub fn build_euler_ring(field: FieldSpec, m: i32, copies: usize) -> Result<Presentation> {
    if m < 0 {
        return Err(Error::Precondition("twist must be nonnegative".into()));
    }
    if copies == 0 || copies > 2 || (copies == 2 && m != 0) {
        return Err(Error::Precondition("copies must be 1, or 2 with m = 0".into()));
    }
    let ring = if m == 0 {
        Ring::standard(field, &[])?
    } else {
        let w = m + 2;
        let v: Vec<VarSpec> = vec![
            ("x0", 1, true),
            ("x1", 1, true),
            ("x2", 1, true),
            ("y0", w, false),
            ("y1", w, false),
            ("y2", w, false),
        ];
        Ring::new(field, &v)?
    };
    Presentation::euler_on(&ring, copies)
}

impl Presentation {
    /// Euler presentation inside an existing ring containing x0..x2, y0..y2
    /// (and z0..z2 for two copies); the twist is read off the y-weights.
    pub fn euler_on(ring: &RingRef, copies: usize) -> Result<Presentation> {
        let ring = ring.clone();
        for i in 0..3 {
            if ring.names()[i] != format!("x{i}") || !ring.is_invertible(i) {
                return Err(Error::Precondition("ring must start with invertible x0, x1, x2".into()));
            }
        }
        let mut fiber = vec![[ring.index("y0")?, ring.index("y1")?, ring.index("y2")?]];
        if copies == 2 {
            fiber.push([ring.index("z0")?, ring.index("z1")?, ring.index("z2")?]);
        }
        let m = ring.weights()[fiber[0][0]] - 2;
        // (3·copies) × copies block matrix with x̄ down each diagonal block
        let matrix = PolyMatrix::from_fn(&ring, 3 * copies, copies, |r, c| {
            if r / 3 == c {
                MultiPoly::var_idx(&ring, r % 3)
            } else {
                MultiPoly::zero(&ring)
            }
        });
        Ok(Presentation { ring, m, fiber, matrix })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn twist(&self) -> i32 {
        self.m
    }

    pub fn copies(&self) -> usize {
        self.fiber.len()
    }

    pub fn fiber_vars(&self) -> &[[usize; 3]] {
        &self.fiber
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// The relations (fiber variables)·M, one per copy.
    pub fn relations(&self) -> Vec<MultiPoly> {
        let row: Vec<MultiPoly> =
            self.fiber.iter().flat_map(|c| c.iter().map(|i| MultiPoly::var_idx(&self.ring, *i))).collect();
        let row = PolyMatrix::from_rows(&self.ring, vec![row]);
        let prod = row.mul(&self.matrix);
        (0..self.copies()).map(|c| prod.get(0, c).clone()).collect()
    }

    /// Gaussian elimination of the presentation matrix localized at x_k: in
    /// each column the pivot is the row holding x_k.
    pub fn trivialize(&self, k: usize) -> Result<Chart> {
        if k > 2 {
            return Err(Error::Precondition("chart index must be 0, 1 or 2".into()));
        }
        let xk_inv = MultiPoly::var_idx(&self.ring, k).monomial_inverse()?;
        let mut basis = Vec::new();
        let mut back = Vec::new();
        for (c, vars) in self.fiber.iter().enumerate() {
            let pivot_row = (0..3)
                .find(|r| self.matrix.get(3 * c + r, c) == &MultiPoly::var_idx(&self.ring, k))
                .ok_or_else(|| Error::Degenerate("no pivot containing the inverted variable".into()))?;
            let mut expr = MultiPoly::zero(&self.ring);
            for r in 0..3 {
                if r == pivot_row {
                    continue;
                }
                basis.push(vars[r]);
                expr = &expr - &(self.matrix.get(3 * c + r, c) * &MultiPoly::var_idx(&self.ring, vars[r]));
            }
            back.push((vars[pivot_row], &expr * &xk_inv));
        }
        let chart = Chart { inverted: k, basis, back_map: back };
        for rel in self.relations() {
            if !chart.reduce(&rel)?.is_zero() {
                return Err(Error::Degenerate("back map does not satisfy the relations".into()));
            }
        }
        Ok(chart)
    }

    pub fn charts(&self) -> Result<[Chart; 3]> {
        Ok([self.trivialize(0)?, self.trivialize(1)?, self.trivialize(2)?])
    }

    /// Images of the basis of `to` written in the coordinates of `from`.
    /// Substituting this map into a polynomial written on `to` expresses it on
    /// `from`.
    pub fn transition(&self, from: &Chart, to: &Chart) -> Vec<(usize, MultiPoly)> {
        to.basis
            .iter()
            .map(|v| {
                let img = from
                    .back_map
                    .iter()
                    .find(|(e, _)| e == v)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| MultiPoly::var_idx(&self.ring, *v));
                (*v, img)
            })
            .collect()
    }

    /// Wedge vector (y1z2 − y2z1, y2z0 − y0z2, y0z1 − y1z0).
    pub fn wedge(&self) -> Result<[MultiPoly; 3]> {
        if self.copies() != 2 {
            return Err(Error::Precondition("unprojection needs two copies".into()));
        }
        let v = |i: usize| MultiPoly::var_idx(&self.ring, i);
        let (y, z) = (self.fiber[0], self.fiber[1]);
        let minor = |a: usize, b: usize| &v(y[a]) * &v(z[b]) - &v(y[b]) * &v(z[a]);
        Ok([minor(1, 2), minor(2, 0), minor(0, 1)])
    }

    /// t on the chart where x_k is inverted: the k-th wedge entry divided by
    /// x_k, written in the chart basis.  Sign convention: wedge = +t·x̄.
    pub fn unprojection_t(&self, chart: &Chart) -> Result<MultiPoly> {
        let k = chart.inverted;
        let w = &self.wedge()?[k];
        let t = w.exact_divide(&MultiPoly::var_idx(&self.ring, k))?;
        chart.reduce(&t)
    }

    /// Whether all wedge entries satisfy wedge_i·x_j = wedge_j·x_i modulo the
    /// relations (checked on every chart).
    pub fn wedge_is_proportional(&self) -> Result<bool> {
        let w = self.wedge()?;
        let x = |i: usize| MultiPoly::var_idx(&self.ring, i);
        for chart in self.charts()? {
            for i in 0..3 {
                for j in i + 1..3 {
                    let d = &(&w[i] * &x(j)) - &(&w[j] * &x(i));
                    if !chart.reduce(&d)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn chart_report(&self, chart: &Chart) -> ChartReport {
        let n = |i: usize| self.ring.names()[i].clone();
        ChartReport {
            inverted: n(chart.inverted),
            basis: chart.basis.iter().map(|i| n(*i)).collect(),
            back_map: chart.back_map.iter().map(|(v, p)| (n(*v), p.to_string())).collect(),
        }
    }
}

impl Chart {
    /// Normal form modulo the relations: eliminate the non-basis variables.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        p.substitute(&self.back_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{parse_poly, Degree};

    #[test]
    fn euler_relations() {
        let p = build_euler_ring(FieldSpec::Rationals, 0, 1).unwrap();
        let r = p.ring().clone();
        assert_eq!(p.relations(), vec![parse_poly("x0*y0 + x1*y1 + x2*y2", &r).unwrap()]);
        let p2 = build_euler_ring(FieldSpec::Rationals, 0, 2).unwrap();
        assert_eq!(p2.relations()[1], parse_poly("x0*z0 + x1*z1 + x2*z2", p2.ring()).unwrap());
        let p1 = build_euler_ring(FieldSpec::Rationals, 1, 1).unwrap();
        assert_eq!(p1.ring().weights()[3..6], [3, 3, 3]);
    }

    #[test]
    fn charts_and_transitions() {
        let p = build_euler_ring(FieldSpec::Rationals, 0, 1).unwrap();
        let r = p.ring().clone();
        let [u0, u1, u2] = p.charts().unwrap();
        assert_eq!(u2.basis, vec![3, 4]);
        assert_eq!(u2.back_map[0].1, parse_poly("-x0*x2^-1*y0 - x1*x2^-1*y1", &r).unwrap());
        assert_eq!(u1.basis, vec![3, 5]);
        let t21 = p.transition(&u2, &u1);
        assert_eq!(t21[0].1, parse_poly("y0", &r).unwrap());
        assert_eq!(t21[1].1, parse_poly("-x0*x2^-1*y0 - x1*x2^-1*y1", &r).unwrap());
        // round trips
        for (a, b) in [(&u2, &u1), (&u0, &u2), (&u1, &u0)] {
            let ab = p.transition(a, b);
            let ba = p.transition(b, a);
            for v in &a.basis {
                let img = MultiPoly::var_idx(&r, *v).substitute(&ba).unwrap().substitute(&ab).unwrap();
                assert_eq!(img, MultiPoly::var_idx(&r, *v));
            }
        }
        assert!(p.transition(&u2, &u2).iter().all(|(v, q)| q == &MultiPoly::var_idx(&r, *v)));
    }

    #[test]
    fn unprojection() {
        let p = build_euler_ring(FieldSpec::Rationals, 0, 2).unwrap();
        let r = p.ring().clone();
        let [u0, u1, u2] = p.charts().unwrap();
        assert_eq!(u2.basis.len(), 4);
        let t2 = p.unprojection_t(&u2).unwrap();
        assert_eq!(t2, parse_poly("x2^-1*y0*z1 - x2^-1*y1*z0", &r).unwrap());
        assert_eq!(t2.weighted_degree(), Degree::Homogeneous(3));
        assert!(p.wedge_is_proportional().unwrap());
        // chart consistency of t
        for c in [&u0, &u1] {
            let tc = p.unprojection_t(c).unwrap();
            assert_eq!(tc.substitute(&p.transition(&u2, c)).unwrap(), t2);
        }
    }
}
