use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{AlgError, IntMatrix};

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

/// Inertia by exact congruence diagonalization over the rationals.
///
/// A nonzero diagonal pivot is used when one exists; otherwise a nonzero
/// off-diagonal entry `b` spans a hyperbolic block `[[0, b], [b, 0]]`, which
/// contributes one positive and one negative direction.
pub fn inertia(m: &IntMatrix) -> Result<Inertia, AlgError> {
    if !m.is_symmetric() {
        return Err(AlgError::NotSymmetric);
    }
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let piv = a[p][p].clone();
            if piv.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            let keep: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = keep
                .iter()
                .map(|&i| keep.iter().map(|&j| &a[i][j] - &a[i][p] * &a[p][j] / &piv).collect())
                .collect();
            continue;
        }
        let pair = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((p, q)) = pair else {
            out.zero += n;
            break;
        };
        out.positive += 1;
        out.negative += 1;
        // block [[0, b], [b, 0]] has inverse [[0, 1/b], [1/b, 0]]
        let b = a[p][q].clone();
        let keep: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        a = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| &a[i][j] - (&a[i][p] * &a[q][j] + &a[i][q] * &a[p][j]) / &b)
                    .collect()
            })
            .collect();
    }
    Ok(out)
}

/// Signature of a nonsingular symmetric integer matrix.
pub fn signature(m: &IntMatrix) -> Result<i64, AlgError> {
    let i = inertia(m)?;
    if i.zero > 0 {
        return Err(AlgError::Singular);
    }
    debug_assert_eq!((i.signature() - i.rank() as i64).rem_euclid(2), 0);
    Ok(i.signature())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(signature(&IntMatrix::diagonal(&[3, -5])).unwrap(), 0);
        assert_eq!(signature(&IntMatrix::identity(4)).unwrap(), 4);
        assert_eq!(signature(&IntMatrix::zeros(0, 0)).unwrap(), 0);
    }

    #[test]
    fn hyperbolic_block() {
        let m = IntMatrix::from_i64(&[&[0, 2, 1], &[2, 0, 0], &[1, 0, 0]]);
        let i = inertia(&m).unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 1));
        assert!(matches!(signature(&m), Err(AlgError::Singular)));
        let h = IntMatrix::from_i64(&[&[0, 3], &[3, 0]]);
        assert_eq!(signature(&h).unwrap(), 0);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        assert!(matches!(signature(&m), Err(AlgError::NotSymmetric)));
    }
}
