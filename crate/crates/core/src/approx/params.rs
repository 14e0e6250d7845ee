use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frac::{frac, to_f64, Frac};

/// How the cost scale `tau` advances between attempts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauGrid {
    /// tau, 2 tau, 4 tau, ... : the windows (tau / (1 + eps), 2 tau] still cover every cost.
    Doubling,
    /// tau, (1 + eps) tau, ... rounded up to integers.
    Fine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxParams {
    /// eps = 1 / k
    pub eps_inv: i64,
    /// enclosed-weight cap for negative cycles, as a fraction of W
    pub alpha: Frac,
    /// heavy-dart threshold, as a fraction of W
    pub beta: Frac,
    /// success threshold factor
    pub target: Frac,
    /// binary search stops once hi <= slack * lo
    pub slack: Frac,
    pub tau_grid: TauGrid,
}

/// 3.2655644, the common value of 1/(2 beta), alpha/(1 - alpha), 2/(alpha - beta).
fn base_factor() -> Frac {
    frac(32_655_644, 10_000_000)
}

impl ApproxParams {
    pub fn alpha() -> Frac {
        frac(7_655_644, 10_000_000)
    }

    /// Largest eps = 1/k with (1 + eps)^2 * 3.2655644 <= 3.29.
    pub fn default_eps_inv() -> i64 {
        let target = frac(329, 100);
        (1..)
            .find(|&k| {
                let e = frac(1, k as i128);
                (Frac::from_integer(1) + e) * (Frac::from_integer(1) + e) * base_factor() <= target
            })
            .unwrap()
    }

    pub fn new(eps_inv: i64) -> Result<ApproxParams> {
        let alpha = Self::alpha();
        let p = ApproxParams {
            eps_inv,
            alpha,
            beta: alpha / Frac::from_integer(5),
            target: frac(329, 100),
            slack: frac(1003, 1000),
            tau_grid: TauGrid::Doubling,
        };
        p.check()?;
        Ok(p)
    }

    pub fn eps(&self) -> Frac {
        frac(1, self.eps_inv as i128)
    }

    /// Verifies the parameter identities and the eps budget.
    pub fn check(&self) -> Result<()> {
        if self.eps_inv < 1 {
            return Err(Error::InvalidParameter(
                "eps must be 1/k for a positive integer k".into(),
            ));
        }
        let one = Frac::from_integer(1);
        let two = Frac::from_integer(2);
        let factors = [
            one / (two * self.beta),
            self.alpha / (one - self.alpha),
            two / (self.alpha - self.beta),
        ];
        for f in factors {
            if (to_f64(&f) - 3.2655644).abs() > 1e-6 {
                return Err(Error::InvalidParameter(format!(
                    "parameter identity fails: {}",
                    to_f64(&f)
                )));
            }
        }
        let e = self.eps();
        if (one + e) * (one + e) * base_factor() > self.target {
            return Err(Error::InvalidParameter(format!(
                "eps = 1/{} too large: (1+eps)^2 * 3.2655644 exceeds 3.29",
                self.eps_inv
            )));
        }
        Ok(())
    }

    /// `w >= beta W`, exactly.
    pub fn is_heavy(&self, w: i64, total: i64) -> bool {
        Frac::from_integer(w as i128) >= self.beta * Frac::from_integer(total as i128)
    }

    /// `w <= alpha W`, exactly.
    pub fn within_alpha(&self, w: i64, total: i64) -> bool {
        Frac::from_integer(w as i128) <= self.alpha * Frac::from_integer(total as i128)
    }
}

impl Default for ApproxParams {
    fn default() -> ApproxParams {
        ApproxParams::new(ApproxParams::default_eps_inv())
            .expect("default parameters are consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_eps() {
        assert_eq!(ApproxParams::default_eps_inv(), 268);
        let p = ApproxParams::default();
        assert_eq!(p.eps(), frac(1, 268));
        assert!(ApproxParams::new(300).is_ok());
        assert!(ApproxParams::new(100).is_err());
    }

    #[test]
    fn heavy_threshold_is_exact() {
        let p = ApproxParams::default();
        // beta = 0.15311288, so with W = 10^8 the threshold is 15311288
        assert!(p.is_heavy(15_311_288, 100_000_000));
        assert!(!p.is_heavy(15_311_287, 100_000_000));
        assert!(p.within_alpha(76_556_440, 100_000_000));
        assert!(!p.within_alpha(76_556_441, 100_000_000));
    }
}
