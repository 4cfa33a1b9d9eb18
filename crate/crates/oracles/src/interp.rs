//! Lagrange interpolation over a prime field, coefficient form.

use crate::field::{ModP, OField};

/// Coefficients (constant first) of the unique polynomial of degree
/// `< xs.len()` through the given points.
pub fn lagrange(xs: &[ModP], ys: &[ModP]) -> Vec<ModP> {
    assert_eq!(xs.len(), ys.len());
    let p = xs[0].p;
    let n = xs.len();
    let mut out = vec![ModP::new(0, p); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (s - x_j) / (x_i - x_j)
        let mut basis = vec![ModP::new(1, p)];
        let mut denom = ModP::new(1, p);
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![ModP::new(0, p); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] = next[k + 1].add(b);
                next[k] = next[k].sub(&b.mul(&xs[j]));
            }
            basis = next;
            denom = denom.mul(&xs[i].sub(&xs[j]));
        }
        let f = ys[i].mul(&denom.inv());
        for (k, b) in basis.iter().enumerate() {
            out[k] = out[k].add(&b.mul(&f));
        }
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// Horner evaluation.
pub fn eval(coeffs: &[ModP], s: ModP) -> ModP {
    let mut acc = ModP::new(0, s.p);
    for c in coeffs.iter().rev() {
        acc = acc.mul(&s).add(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_cubic() {
        let p = 109;
        let f = |s: i64| ModP::new(3 * s * s * s - 5 * s + 7, p);
        let xs: Vec<ModP> = (1..=4).map(|s| ModP::new(s, p)).collect();
        let ys: Vec<ModP> = (1..=4).map(f).collect();
        let c = lagrange(&xs, &ys);
        assert_eq!(c, vec![ModP::new(7, p), ModP::new(-5, p), ModP::new(0, p), ModP::new(3, p)]);
    }
}
