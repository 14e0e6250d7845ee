//! Exact rational values for cut objectives.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub type Frac = Ratio<i128>;

pub fn frac(num: i128, den: i128) -> Frac {
    Ratio::new(num, den)
}

pub fn int(v: i64) -> Frac {
    Ratio::from_integer(v as i128)
}

/// Serialized form of an exact fraction: numerator and denominator as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FracRepr {
    pub num: String,
    pub den: String,
}

impl From<&Frac> for FracRepr {
    fn from(f: &Frac) -> Self {
        FracRepr {
            num: f.numer().to_string(),
            den: f.denom().to_string(),
        }
    }
}

impl FracRepr {
    pub fn to_frac(&self) -> Option<Frac> {
        let n: i128 = self.num.parse().ok()?;
        let d: i128 = self.den.parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}

pub fn to_f64(f: &Frac) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}
