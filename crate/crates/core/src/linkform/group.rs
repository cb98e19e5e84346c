use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::LinkError;
use crate::exactalg::{smith_normal_form, IntMatrix, SnfResult};

/// `ℤ_{d₁} ⊕ … ⊕ ℤ_{d_k}` with `d₁ | d₂ | … | d_k`, every `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(if n > 1 { vec![n] } else { Vec::new() }).expect("cyclic group is valid")
    }

    pub fn new(factors: Vec<u64>) -> Result<Self, LinkError> {
        if factors.iter().any(|&d| d < 2) || factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(LinkError::BadFactors(factors));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Every element as a coefficient vector, in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let order = self.order();
        (0..order).map(move |mut idx| {
            self.factors
                .iter()
                .map(|&d| {
                    let c = idx % d;
                    idx /= d;
                    c
                })
                .collect()
        })
    }

    pub fn index_of(&self, x: &[u64]) -> u64 {
        let mut idx = 0;
        for (c, &d) in x.iter().zip(&self.factors).rev() {
            idx = idx * d + c;
        }
        idx
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn scale(&self, m: u64, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| ((a as u128 * m as u128) % d as u128) as u64)
            .collect()
    }

    /// Order of an element.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(1, |acc, (&c, &d)| {
            let o = d / num_integer::gcd(c, d);
            num_integer::lcm(acc, o)
        })
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }
}

impl std::fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Invariant factors of the cokernel of a square nonsingular matrix, with the SNF.
pub(crate) fn cokernel(g: &IntMatrix) -> Result<(FiniteAbelianGroup, SnfResult, Vec<usize>), LinkError> {
    if !g.is_square() {
        return Err(LinkError::NotSquare);
    }
    let snf = smith_normal_form(g);
    let diag = snf.diagonal();
    if diag.iter().any(Zero::is_zero) {
        return Err(LinkError::Singular);
    }
    let mut factors = Vec::new();
    let mut idx = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let d = d.abs().to_u64().ok_or(LinkError::TooLarge)?;
        if d > 1 {
            factors.push(d);
            idx.push(i);
        }
    }
    Ok((FiniteAbelianGroup::new(factors)?, snf, idx))
}

/// `H₁` of the double branched cover, presented by the Goeritz matrix.
pub fn homology(g: &IntMatrix) -> Result<FiniteAbelianGroup, LinkError> {
    cokernel(g).map(|(grp, _, _)| grp)
}
