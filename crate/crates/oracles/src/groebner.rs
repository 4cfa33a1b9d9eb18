//! Textbook Buchberger algorithm in graded-lexicographic order.
//!
//! Intended for the small zero-dimensional ideals that arise when the
//! nine generators are specialised at a base point: four variables,
//! quadratic generators, a handful of critical pairs.

use crate::field::OField;
use std::cmp::Ordering;

/// Exponent vector with the first variable most significant.
pub type Mono = Vec<u32>;

fn deg(m: &Mono) -> u32 {
    m.iter().sum()
}

/// Graded lex: total degree first, then lex with variable 0 largest.
pub fn grlex(a: &Mono, b: &Mono) -> Ordering {
    deg(a).cmp(&deg(b)).then_with(|| a.cmp(b))
}

/// Dense list of terms sorted in decreasing grlex order.
#[derive(Clone, Debug, PartialEq)]
pub struct OPoly<F: OField> {
    pub nvars: usize,
    pub terms: Vec<(Mono, F)>,
}

impl<F: OField> OPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        OPoly { nvars, terms: Vec::new() }
    }

    pub fn from_terms(nvars: usize, raw: Vec<(Mono, F)>) -> Self {
        let mut p = OPoly::zero(nvars);
        for (m, c) in raw {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(nvars: usize, m: Mono, c: F) -> Self {
        OPoly::from_terms(nvars, vec![(m, c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(t, _)| grlex(&m, t)) {
            Ok(i) => {
                let s = self.terms[i].1.add(&c);
                if s.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = s;
                }
            }
            Err(i) => self.terms.insert(i, (m, c)),
        }
    }

    pub fn lead(&self) -> Option<&(Mono, F)> {
        self.terms.first()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn mul_term(&self, m: &Mono, c: &F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| (t.iter().zip(m).map(|(a, b)| a + b).collect(), d.mul(c)))
            .collect();
        // multiplying by a monomial preserves the order
        OPoly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = OPoly::zero(self.nvars);
        for (m, c) in &o.terms {
            r = r.add(&self.mul_term(m, c));
        }
        r
    }

    pub fn scale(&self, c: &F) -> Self {
        self.mul_term(&vec![0; self.nvars], c)
    }

    fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quot(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A reduced Gröbner basis with normal-form reduction.
#[derive(Clone, Debug)]
pub struct Buchberger<F: OField> {
    pub basis: Vec<OPoly<F>>,
}

impl<F: OField> Buchberger<F> {
    pub fn new(gens: &[OPoly<F>]) -> Self {
        let mut g: Vec<OPoly<F>> = gens.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 0..g.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        // normal strategy: the pair with the smallest lcm goes first
        while !pairs.is_empty() {
            let lcm_of = |&(i, j): &(usize, usize)| lcm(&g[i].lead().unwrap().0, &g[j].lead().unwrap().0);
            let best = (0..pairs.len()).min_by(|a, b| grlex(&lcm_of(&pairs[*a]), &lcm_of(&pairs[*b]))).unwrap();
            let (i, j) = pairs.swap_remove(best);
            let (mi, _) = g[i].lead().unwrap().clone();
            let (mj, _) = g[j].lead().unwrap().clone();
            let l = lcm(&mi, &mj);
            // Buchberger's first criterion
            if l.iter().zip(mi.iter().zip(&mj)).all(|(x, (a, b))| *x == a + b) {
                continue;
            }
            let one = g[i].lead().unwrap().1.one_like();
            let s = g[i].mul_term(&quot(&l, &mi), &one).sub(&g[j].mul_term(&quot(&l, &mj), &one));
            let r = reduce(&s, &g);
            if !r.is_zero() {
                let k = g.len();
                g.push(r.monic());
                for i in 0..k {
                    pairs.push((i, k));
                }
            }
        }
        Buchberger { basis: interreduce(g) }
    }

    pub fn normal_form(&self, p: &OPoly<F>) -> OPoly<F> {
        reduce(p, &self.basis)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|p| p.lead().map(|(m, _)| deg(m) == 0).unwrap_or(false))
    }

    /// Standard monomials, or `None` if there are more than `cap`.
    pub fn standard_monomials(&self, cap: usize) -> Option<Vec<Mono>> {
        if self.is_unit_ideal() {
            return Some(Vec::new());
        }
        let n = self.basis.first().map(|p| p.nvars)?;
        let leads: Vec<Mono> = self.basis.iter().map(|p| p.lead().unwrap().0.clone()).collect();
        let mut out = Vec::new();
        let mut frontier = vec![vec![0u32; n]];
        let mut seen = std::collections::BTreeSet::new();
        while let Some(m) = frontier.pop() {
            if !seen.insert(m.clone()) || leads.iter().any(|l| divides(l, &m)) {
                continue;
            }
            out.push(m.clone());
            if out.len() > cap {
                return None;
            }
            for v in 0..n {
                let mut k = m.clone();
                k[v] += 1;
                frontier.push(k);
            }
        }
        out.sort_by(grlex);
        Some(out)
    }

    /// Dimension of the quotient ring, or `None` if it exceeds `cap`.
    pub fn quotient_dim(&self, cap: usize) -> Option<usize> {
        self.standard_monomials(cap).map(|v| v.len())
    }
}

fn reduce<F: OField>(p: &OPoly<F>, g: &[OPoly<F>]) -> OPoly<F> {
    let mut p = p.clone();
    let mut rem = OPoly::zero(p.nvars);
    while let Some((m, c)) = p.lead().cloned() {
        match g.iter().find(|h| divides(&h.lead().unwrap().0, &m)) {
            Some(h) => {
                let (hm, hc) = h.lead().unwrap();
                let f = c.mul(&hc.inv());
                p = p.sub(&h.mul_term(&quot(&m, hm), &f));
            }
            None => {
                p.terms.remove(0);
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn interreduce<F: OField>(mut g: Vec<OPoly<F>>) -> Vec<OPoly<F>> {
    // drop elements whose lead is divisible by another lead
    let mut keep: Vec<OPoly<F>> = Vec::new();
    g.sort_by(|a, b| grlex(&a.lead().unwrap().0, &b.lead().unwrap().0));
    for p in g {
        let lm = p.lead().unwrap().0.clone();
        if !keep.iter().any(|k| divides(&k.lead().unwrap().0, &lm)) {
            keep.push(p);
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<OPoly<F>> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lead = keep[i].lead().unwrap().clone();
        let tail = OPoly { nvars: keep[i].nvars, terms: keep[i].terms[1..].to_vec() };
        let mut r = reduce(&tail, &others);
        r.add_term(lead.0, lead.1);
        out.push(r.monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ModP;

    fn c(v: i64) -> ModP {
        ModP::new(v, 31)
    }

    #[test]
    fn two_lines_meet_in_a_point() {
        // x - y, x + y - 2  ->  point (1,1)
        let f = OPoly::from_terms(2, vec![(vec![1, 0], c(1)), (vec![0, 1], c(-1))]);
        let g = OPoly::from_terms(2, vec![(vec![1, 0], c(1)), (vec![0, 1], c(1)), (vec![0, 0], c(-2))]);
        let gb = Buchberger::new(&[f, g]);
        assert_eq!(gb.quotient_dim(10), Some(1));
    }

    #[test]
    fn complete_intersection_of_two_conics_has_length_four() {
        // x^2 - 1, y^2 - 4
        let f = OPoly::from_terms(2, vec![(vec![2, 0], c(1)), (vec![0, 0], c(-1))]);
        let g = OPoly::from_terms(2, vec![(vec![0, 2], c(1)), (vec![0, 0], c(-4))]);
        let gb = Buchberger::new(&[f, g]);
        assert_eq!(gb.quotient_dim(10), Some(4));
        let xy = OPoly::monomial(2, vec![1, 1], c(1));
        let x2y2 = xy.mul(&xy);
        assert_eq!(gb.normal_form(&x2y2), OPoly::monomial(2, vec![0, 0], c(4)));
    }

    #[test]
    fn inconsistent_system_is_unit() {
        let f = OPoly::from_terms(1, vec![(vec![1], c(1))]);
        let g = OPoly::from_terms(1, vec![(vec![1], c(1)), (vec![0], c(1))]);
        assert!(Buchberger::new(&[f, g]).is_unit_ideal());
    }
}
