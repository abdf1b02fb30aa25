//! Causal classification of the two decay points.
//!
//! For equal-mass particles flying back-to-back in the CM frame, the ordered
//! decay times are space-like separated when t1/t2 > R and time-like when
//! t1/t2 < R, with R = (1 - beta_K)/(1 + beta_K).

use std::fmt;

use crate::error::{Error, Result};

/// Relative tolerance for the boundary t1/t2 = R.
const LIGHT_LIKE_TOL: f64 = 1e-12;

/// CM kinematics of the pair: the kaon velocity and the derived time ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmKinematics {
    beta_k: f64,
    ratio_r: f64,
}

impl CmKinematics {
    pub fn new(beta_k: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta_k) {
            return Err(Error::invalid(
                "beta_k",
                format!("CM velocity must be in [0, 1), got {beta_k}"),
            ));
        }
        Ok(Self {
            beta_k,
            ratio_r: (1.0 - beta_k) / (1.0 + beta_k),
        })
    }

    pub fn beta_k(&self) -> f64 {
        self.beta_k
    }

    /// R = (1 - beta_K)/(1 + beta_K), in (0, 1].
    pub fn ratio_r(&self) -> f64 {
        self.ratio_r
    }
}

/// Causal relation of the two decay events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    SpaceLike,
    TimeLike,
    LightLike,
    /// No CM velocity available to classify against.
    Unclassified,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CausalClass::SpaceLike => "space_like",
            CausalClass::TimeLike => "time_like",
            CausalClass::LightLike => "light_like",
            CausalClass::Unclassified => "unclassified",
        };
        f.write_str(s)
    }
}

/// Classify the ordered pair (t1, t2): space-like for t1/t2 > R, time-like
/// for t1/t2 < R, light-like at equality within a relative 1e-12.
pub fn classify(t1: f64, t2: f64, kin: &CmKinematics) -> Result<CausalClass> {
    if !(t2 > 0.0) {
        return Err(Error::invalid(
            "t2",
            format!("second decay time must be positive, got {t2}"),
        ));
    }
    if !(t1 >= 0.0) {
        return Err(Error::NegativeTime { value: t1 });
    }
    if t1 > t2 {
        return Err(Error::TimeOrdering { t1, t2 });
    }
    let ratio = t1 / t2;
    let r = kin.ratio_r();
    if (ratio - r).abs() <= LIGHT_LIKE_TOL * ratio.abs().max(r) {
        Ok(CausalClass::LightLike)
    } else if ratio > r {
        Ok(CausalClass::SpaceLike)
    } else {
        Ok(CausalClass::TimeLike)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_values_at_reference_velocities() {
        // phi factory: beta_K ~ 0.22 -> R ~ 0.64
        let kin = CmKinematics::new(0.22).unwrap();
        assert!(kin.ratio_r() > 0.638 && kin.ratio_r() < 0.641);
        // charm factory: beta_K ~ 0.95 -> R ~ 0.027
        let kin = CmKinematics::new(0.95).unwrap();
        assert!(kin.ratio_r() > 0.0255 && kin.ratio_r() < 0.0257);
    }

    #[test]
    fn classify_reference_points() {
        let kin = CmKinematics::new(0.22).unwrap();
        assert_eq!(classify(0.5, 1.0, &kin).unwrap(), CausalClass::TimeLike);
        let kin = CmKinematics::new(0.95).unwrap();
        assert_eq!(classify(0.5, 1.0, &kin).unwrap(), CausalClass::SpaceLike);
    }

    #[test]
    fn at_rest_everything_ordered_is_time_like() {
        let kin = CmKinematics::new(0.0).unwrap();
        assert_eq!(kin.ratio_r(), 1.0);
        for &(t1, t2) in &[(0.0, 1.0), (0.3, 0.9), (5.0, 5.001)] {
            assert_eq!(classify(t1, t2, &kin).unwrap(), CausalClass::TimeLike);
        }
        // equal times sit exactly on the boundary
        assert_eq!(classify(2.0, 2.0, &kin).unwrap(), CausalClass::LightLike);
    }

    #[test]
    fn boundary_is_light_like() {
        let kin = CmKinematics::new(0.37).unwrap();
        let t2 = 3.7;
        let t1 = kin.ratio_r() * t2;
        assert_eq!(classify(t1, t2, &kin).unwrap(), CausalClass::LightLike);
    }

    #[test]
    fn domain_errors() {
        let kin = CmKinematics::new(0.22).unwrap();
        assert!(classify(0.5, 0.0, &kin).is_err());
        assert!(classify(-0.1, 1.0, &kin).is_err());
        assert!(classify(2.0, 1.0, &kin).is_err());
        assert!(CmKinematics::new(1.0).is_err());
        assert!(CmKinematics::new(-0.2).is_err());
        assert!(CmKinematics::new(f64::NAN).is_err());
    }

    #[test]
    fn increasing_beta_moves_toward_space_like() {
        let (t1, t2) = (0.4, 1.0);
        let mut prev_rank = 0; // time-like
        for i in 0..100 {
            let beta = i as f64 / 100.0;
            let kin = CmKinematics::new(beta).unwrap();
            let rank = match classify(t1, t2, &kin).unwrap() {
                CausalClass::TimeLike => 0,
                CausalClass::LightLike => 1,
                CausalClass::SpaceLike => 2,
                CausalClass::Unclassified => unreachable!(),
            };
            assert!(rank >= prev_rank, "class regressed at beta = {beta}");
            prev_rank = rank;
        }
    }
}
