//! Univariate interpolation and evaluation over a field.

use super::field::Scalar;
use crate::error::{Error, Result};

/// Coefficients (constant first) of the unique polynomial of degree < n
/// through the n points; Newton divided differences.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = xs.len();
    if n == 0 || ys.len() != n {
        return Err(Error::Interpolation("need matching, nonempty samples".into()));
    }
    let mut dd: Vec<Scalar> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = &xs[i] - &xs[i - j];
            if den.is_zero() {
                return Err(Error::Interpolation("repeated abscissa".into()));
            }
            dd[i] = (&dd[i] - &dd[i - 1]).div(&den)?;
        }
    }
    // expand the Newton form by Horner
    let zero = xs[0].zero_like();
    let mut coeffs = vec![zero.clone(); n];
    coeffs[0] = dd[n - 1].clone();
    let mut len = 1;
    for k in (0..n - 1).rev() {
        // coeffs := coeffs·(s − x_k) + dd[k]
        let mut next = vec![zero.clone(); len + 1];
        for (i, c) in coeffs.iter().take(len).enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &xs[k]);
        }
        next[0] = &next[0] + &dd[k];
        len += 1;
        coeffs[..len].clone_from_slice(&next);
    }
    Ok(trim(coeffs))
}

pub fn trim(mut c: Vec<Scalar>) -> Vec<Scalar> {
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

pub fn eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.zero_like();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Degree of a trimmed coefficient vector; `None` for the zero polynomial.
pub fn degree(coeffs: &[Scalar]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}
