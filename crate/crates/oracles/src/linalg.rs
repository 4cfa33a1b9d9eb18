//! Dense determinant and rank by plain Gaussian elimination.

use crate::field::OField;

pub fn det<F: OField>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut d = a[0][0].one_like();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return d.zero_like();
        };
        if piv != col {
            a.swap(piv, col);
            d = d.neg();
        }
        d = d.mul(&a[col][col]);
        let inv = a[col][col].inv();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                let t = a[col][c].mul(&f);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    d
}

pub fn rank<F: OField>(m: &[Vec<F>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][c].inv();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].mul(&inv);
                for k in c..cols {
                    let t = a[r][k].mul(&f);
                    a[i][k] = a[i][k].sub(&t);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn det_of_small_rational_matrix() {
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(4, 1)]];
        assert_eq!(det(&m), q(-2, 1));
        assert_eq!(rank(&m), 2);
        let s = vec![vec![q(1, 2), q(1, 1)], vec![q(1, 1), q(2, 1)]];
        assert_eq!(rank(&s), 1);
    }
}
