use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

/// An element of ℚ/ℤ, stored as `num/den` in lowest terms with `0 <= num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ {
    num: u64,
    den: u64,
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };

    /// `num/den` reduced mod 1. Panics on `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let r = num.rem_euclid(den as i64) as u64;
        let g = r.gcd(&den);
        QmodZ {
            num: r / g,
            den: den / g,
        }
    }

    /// Reduces an exact rational mod 1. `None` if the denominator overflows u64.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let den = q.denom().to_u64()?;
        let num = q.numer().mod_floor(&BigInt::from(den)).to_u64()?;
        Some(QmodZ::new(num as i64, den))
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Numerator over the common denominator `n`; `None` if `den ∤ n`.
    pub fn over(&self, n: u64) -> Option<u64> {
        n.is_multiple_of(self.den).then(|| self.num * (n / self.den))
    }

    /// The representative in `(-1/2, 1/2]`, handy for display of signs.
    pub fn centered(&self) -> BigRational {
        let q = BigRational::new(BigInt::from(self.num), BigInt::from(self.den));
        if q > BigRational::new(1.into(), 2.into()) {
            q - BigRational::from_integer(1.into())
        } else {
            q
        }
    }

    /// Whether this value is `±1/n` for the given sign.
    pub fn is_unit_fraction(&self, n: u64, sign: i8) -> bool {
        *self == QmodZ::new(sign as i64, n)
    }
}

impl std::ops::Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-(self.num as i64), self.den)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for QmodZ {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| format!("bad numerator in '{s}'"))?;
        let d: u64 = d.parse().map_err(|_| format!("bad denominator in '{s}'"))?;
        if d == 0 {
            return Err(format!("zero denominator in '{s}'"));
        }
        Ok(QmodZ::new(n, d))
    }
}
