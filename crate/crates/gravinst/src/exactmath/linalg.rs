//! Gaussian elimination over the rational-function field. The systems here
//! are small (one row per exceptional curve or pin), so no pivoting
//! sophistication is needed beyond nonzero selection.

use super::{ExactError, RatFunc};

/// Solves `m x = rhs` exactly. `m` is square, row-major.
pub fn solve_linear(m: &[Vec<RatFunc>], rhs: &[RatFunc]) -> Result<Vec<RatFunc>, ExactError> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n) && rhs.len() == n);
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut b: Vec<RatFunc> = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(ExactError::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = RatFunc::one().div(&a[col][col])?;
        for c in col..n {
            a[col][c] = a[col][c].mul(&inv);
        }
        b[col] = b[col].mul(&inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let v = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&v);
                }
                let v = b[col].mul(&f);
                b[r] = b[r].sub(&v);
            }
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_ratfunc as rf;

    #[test]
    fn solves_symbolic_system() {
        // x + y = a, x - y = 1  =>  x = (a+1)/2, y = (a-1)/2
        let m = vec![
            vec![rf("1").unwrap(), rf("1").unwrap()],
            vec![rf("1").unwrap(), rf("-1").unwrap()],
        ];
        let rhs = vec![rf("a").unwrap(), rf("1").unwrap()];
        let x = solve_linear(&m, &rhs).unwrap();
        assert_eq!(x[0], rf("(a + 1)/2").unwrap());
        assert_eq!(x[1], rf("(a - 1)/2").unwrap());
    }

    #[test]
    fn singular_system_reported() {
        let m = vec![
            vec![rf("1").unwrap(), rf("1").unwrap()],
            vec![rf("2").unwrap(), rf("2").unwrap()],
        ];
        let rhs = vec![rf("0").unwrap(), rf("0").unwrap()];
        assert!(solve_linear(&m, &rhs).is_err());
    }
}
