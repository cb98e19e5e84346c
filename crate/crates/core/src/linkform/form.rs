use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::group::cokernel;
use super::qz::QmodZ;
use super::{FiniteAbelianGroup, LinkError};
use crate::exactalg::{inverse, IntMatrix};

/// A symmetric ℚ/ℤ-valued pairing on a finite abelian group, given on the
/// invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingForm {
    group: FiniteAbelianGroup,
    values: Vec<Vec<QmodZ>>,
    /// Whether the global ± has been pinned down.
    sign_fixed: bool,
    /// `values[i][j]` as a numerator over `group.order()`.
    #[serde(skip)]
    scaled: Vec<Vec<u64>>,
}

impl LinkingForm {
    /// Validates symmetry, denominators and nondegeneracy.
    pub fn new(group: FiniteAbelianGroup, values: Vec<Vec<QmodZ>>) -> Result<Self, LinkError> {
        let k = group.rank();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(LinkError::Malformed(
                "value matrix does not match the group rank".into(),
            ));
        }
        let n = group.order();
        let d = group.factors();
        let mut scaled = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                if values[i][j] != values[j][i] {
                    return Err(LinkError::Malformed(format!("not symmetric at ({i},{j})")));
                }
                if !d[i].lcm(&d[j]).is_multiple_of(values[i][j].den()) {
                    return Err(LinkError::Malformed(format!(
                        "denominator of {} does not divide lcm({}, {})",
                        values[i][j], d[i], d[j]
                    )));
                }
                scaled[i][j] = values[i][j].over(n).expect("den divides the group order");
            }
        }
        let form = LinkingForm {
            group,
            values,
            sign_fixed: false,
            scaled,
        };
        if let Some(x) = form.radical_element() {
            return Err(LinkError::Degenerate(x));
        }
        Ok(form)
    }

    /// `λ(g, g) = v` on `ℤ_n`.
    pub fn cyclic(n: u64, v: QmodZ) -> Result<Self, LinkError> {
        let group = FiniteAbelianGroup::cyclic(n);
        let values = if n > 1 { vec![vec![v]] } else { Vec::new() };
        Self::new(group, values)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Vec<QmodZ>] {
        &self.values
    }

    pub fn sign_fixed(&self) -> bool {
        self.sign_fixed
    }

    /// The form multiplied by `sign` with the sign marked as resolved.
    pub fn with_sign(&self, sign: i8) -> Self {
        let mut f = if sign < 0 { self.negated() } else { self.clone() };
        f.sign_fixed = true;
        f
    }

    /// `-λ`, keeping the current `sign_fixed` flag.
    pub fn negated(&self) -> Self {
        let n = self.group.order();
        LinkingForm {
            group: self.group.clone(),
            values: self.values.iter().map(|r| r.iter().map(|&v| -v).collect()).collect(),
            sign_fixed: self.sign_fixed,
            scaled: self
                .scaled
                .iter()
                .map(|r| r.iter().map(|&s| (n - s) % n).collect())
                .collect(),
        }
    }

    /// `λ(x, y)` for coefficient vectors over the invariant-factor generators.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> QmodZ {
        let n = self.group.order();
        if n == 1 {
            return QmodZ::ZERO;
        }
        let n128 = n as u128;
        let mut acc: u128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                acc = (acc + (xi as u128 * yj as u128 % n128) * self.scaled[i][j] as u128) % n128;
            }
        }
        QmodZ::new(acc as i64, n)
    }

    pub fn self_pair(&self, x: &[u64]) -> QmodZ {
        self.pair(x, x)
    }

    /// A nonzero element pairing trivially with everything, if any.
    fn radical_element(&self) -> Option<Vec<u64>> {
        let k = self.group.rank();
        let basis: Vec<Vec<u64>> = (0..k).map(|j| (0..k).map(|i| u64::from(i == j)).collect()).collect();
        self.group
            .elements()
            .skip(1)
            .find(|x| basis.iter().all(|e| self.pair(x, e).is_zero()))
    }

    /// For a cyclic group, the self-linking of the standard generator.
    pub fn generator_value(&self) -> Result<QmodZ, LinkError> {
        match self.group.rank() {
            0 => Ok(QmodZ::ZERO),
            1 => Ok(self.values[0][0]),
            _ => Err(LinkError::NotCyclic(self.group.clone())),
        }
    }
}

/// Linking form `G⁻¹ (mod 1)` transported to the invariant-factor generators.
///
/// With `U·G·V = D`, the columns of `U⁻¹` belonging to nontrivial invariant
/// factors generate the cokernel and `λ(gᵢ, gⱼ) = (U⁻¹eᵢ)ᵀ G⁻¹ (U⁻¹eⱼ)`.
/// The result carries the `+G⁻¹` sign with `sign_fixed = false`.
pub fn linking_form(g: &IntMatrix) -> Result<LinkingForm, LinkError> {
    if !g.is_symmetric() {
        return Err(LinkError::NotSymmetric);
    }
    let (group, snf, idx) = cokernel(g)?;
    let ginv = inverse(g).map_err(|_| LinkError::Singular)?;
    let m = g.rows();
    let mut w = IntMatrix::zeros(m, idx.len());
    for (c, &i) in idx.iter().enumerate() {
        for r in 0..m {
            w[(r, c)] = snf.u_inv[(r, i)].clone();
        }
    }
    let wq = w.to_rational();
    let wt = w.transpose().to_rational();
    let lam = wt.mul(&ginv).and_then(|t| t.mul(&wq)).expect("shapes agree");
    let k = idx.len();
    let mut values = vec![vec![QmodZ::ZERO; k]; k];
    for i in 0..k {
        for j in 0..k {
            values[i][j] = QmodZ::from_rational(&lam[(i, j)]).ok_or(LinkError::TooLarge)?;
        }
    }
    LinkingForm::new(group, values)
}

/// `{ m²·v : gcd(m, N) = 1 }` for the standard generator value `v` of a cyclic form.
pub fn generator_values(f: &LinkingForm) -> Result<BTreeSet<QmodZ>, LinkError> {
    let v = f.generator_value()?;
    let n = f.group().order();
    let vn = v.over(n).unwrap_or(0) as u128;
    Ok((1..=n.max(1))
        .filter(|m| m.gcd(&n) == 1)
        .map(|m| {
            let m = m as u128 % n as u128;
            QmodZ::new(((m * m % n as u128) * vn % n as u128) as i64, n)
        })
        .collect())
}

/// The multiplier `m` (a unit mod `N`) with `m²·v = target`, if any.
pub(crate) fn generator_multiplier(f: &LinkingForm, target: QmodZ) -> Option<u64> {
    let v = f.generator_value().ok()?;
    let n = f.group().order();
    let vn = v.over(n)? as u128;
    (1..=n.max(1)).filter(|m| m.gcd(&n) == 1).find(|&m| {
        let mm = (m as u128 % n as u128).pow(2) % n as u128;
        QmodZ::new((mm * vn % n as u128) as i64, n) == target
    })
}
