use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgError, IntMatrix, RationalMatrix};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// The empty matrix has determinant 1.
pub fn det(m: &IntMatrix) -> Result<BigInt, AlgError> {
    if !m.is_square() {
        return Err(AlgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(if n == 0 {
        BigInt::one()
    } else {
        sign * &a[(n - 1, n - 1)]
    })
}

/// Determinant by cofactor expansion along the first row.
///
/// Exponential; meant for matrices up to about 8×8 and as a cross-check for [`det`].
pub fn det_cofactor(m: &IntMatrix) -> Result<BigInt, AlgError> {
    if !m.is_square() {
        return Err(AlgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let cols: Vec<usize> = (0..m.cols()).collect();
    Ok(cofactor_rec(m, 0, &cols))
}

fn cofactor_rec(m: &IntMatrix, row: usize, cols: &[usize]) -> BigInt {
    if cols.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[(row, c)];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = entry * cofactor_rec(m, row + 1, &rest);
        if pos % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    total
}

/// Exact inverse over the rationals by Gauss-Jordan elimination.
pub fn inverse(m: &IntMatrix) -> Result<RationalMatrix, AlgError> {
    if !m.is_square() {
        return Err(AlgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.to_rational();
    let mut inv = RationalMatrix::identity(n);
    for k in 0..n {
        // largest |entry| keeps the intermediate rationals small
        let pivot = (k..n)
            .filter(|&i| !a[(i, k)].is_zero())
            .max_by(|&x, &y| a[(x, k)].abs().cmp(&a[(y, k)].abs()))
            .ok_or(AlgError::Singular)?;
        a.swap_rows(k, pivot);
        inv.swap_rows(k, pivot);
        let p = a[(k, k)].clone();
        for j in 0..n {
            a[(k, j)] = &a[(k, j)] / &p;
            inv[(k, j)] = &inv[(k, j)] / &p;
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f: BigRational = a[(i, k)].clone();
            for j in 0..n {
                let da = &f * &a[(k, j)];
                a[(i, j)] -= da;
                let di = &f * &inv[(k, j)];
                inv[(i, j)] -= di;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn empty_and_identity() {
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::one());
        assert_eq!(det_cofactor(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn needs_row_swap() {
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&m).unwrap(), BigInt::from(-1));
        assert_eq!(det_cofactor(&m).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(det(&IntMatrix::zeros(2, 3)), Err(AlgError::NotSquare { .. })));
        assert!(inverse(&IntMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn inverse_small() {
        let inv = inverse(&IntMatrix::from_i64(&[&[3]])).unwrap();
        assert_eq!(inv[(0, 0)], q(1, 3));
        assert!(matches!(
            inverse(&IntMatrix::from_i64(&[&[1, 1], &[1, 1]])),
            Err(AlgError::Singular)
        ));
    }
}
