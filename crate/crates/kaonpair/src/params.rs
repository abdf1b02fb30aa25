//! Physics and CP-impurity parameters.
//!
//! Proper times are measured in units of the short lifetime tau_S, so the
//! conventional choice is `gamma_s = 1`. Widths and the mass difference are
//! in units of 1/tau_S (hbar = 1). Only the mass *difference* enters any
//! observable, so absolute masses are not represented: the eigenvalues used
//! for time evolution are
//!
//! ```text
//! lambda_S = -i gamma_s / 2          lambda_L = delta_m - i gamma_l / 2
//! ```
//!
//! with the common phase dropped.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Widths and mass difference of the two stationary states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsParams {
    gamma_s: f64,
    gamma_l: f64,
    delta_m: f64,
}

impl PhysicsParams {
    /// Validates `gamma_s > gamma_l > 0`; `delta_m` may have either sign.
    pub fn new(gamma_s: f64, gamma_l: f64, delta_m: f64) -> Result<Self> {
        if !gamma_s.is_finite() || !gamma_l.is_finite() {
            return Err(Error::invalid("gamma", "widths must be finite"));
        }
        if gamma_l <= 0.0 {
            return Err(Error::invalid(
                "gamma_l",
                format!("must be strictly positive, got {gamma_l}"),
            ));
        }
        if gamma_s <= gamma_l {
            return Err(Error::invalid(
                "gamma_s",
                format!("must exceed gamma_l (got gamma_s = {gamma_s}, gamma_l = {gamma_l})"),
            ));
        }
        if !delta_m.is_finite() {
            return Err(Error::invalid("delta_m", "must be finite"));
        }
        Ok(Self {
            gamma_s,
            gamma_l,
            delta_m,
        })
    }

    pub fn gamma_s(&self) -> f64 {
        self.gamma_s
    }

    pub fn gamma_l(&self) -> f64 {
        self.gamma_l
    }

    /// Mass difference m_L - m_S.
    pub fn delta_m(&self) -> f64 {
        self.delta_m
    }

    /// Total width of the pair system, Gamma = Gamma_S + Gamma_L.
    pub fn gamma(&self) -> f64 {
        self.gamma_s + self.gamma_l
    }

    /// Width difference Gamma_S - Gamma_L (> 0 by construction).
    pub fn delta_gamma(&self) -> f64 {
        self.gamma_s - self.gamma_l
    }

    /// e^{-i lambda_S t} for the K_S component (real positive: m_S == 0 here).
    pub fn evolution_factor_s(&self, t: f64) -> Complex64 {
        Complex64::from_polar((-0.5 * self.gamma_s * t).exp(), 0.0)
    }

    /// e^{-i lambda_L t} for the K_L component; carries the phase e^{-i dm t}.
    pub fn evolution_factor_l(&self, t: f64) -> Complex64 {
        Complex64::from_polar((-0.5 * self.gamma_l * t).exp(), -self.delta_m * t)
    }
}

/// Complex CP-impurity parameters of the stationary states.
///
/// `epsilon = (eps_S + eps_L)/2` measures T violation and
/// `delta = (eps_S - eps_L)/2` CPT violation; `eps_S = epsilon + delta` and
/// `eps_L = epsilon - delta` hold exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpParams {
    epsilon_s: Complex64,
    epsilon_l: Complex64,
}

impl CpParams {
    pub fn new(epsilon_s: Complex64, epsilon_l: Complex64) -> Result<Self> {
        for (name, eps) in [("epsilon_s", epsilon_s), ("epsilon_l", epsilon_l)] {
            if !eps.re.is_finite() || !eps.im.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
            if eps.norm() >= 1.0 {
                return Err(Error::invalid(
                    name,
                    format!("|epsilon| must be < 1 to keep the states independent, got {eps}"),
                ));
            }
        }
        Ok(Self {
            epsilon_s,
            epsilon_l,
        })
    }

    /// Both impurities zero: the CP-conserving limit.
    pub fn cp_conserving() -> Self {
        Self {
            epsilon_s: Complex64::ZERO,
            epsilon_l: Complex64::ZERO,
        }
    }

    /// Construct from the equivalent (epsilon, delta) parameterization.
    pub fn from_epsilon_delta(epsilon: Complex64, delta: Complex64) -> Result<Self> {
        Self::new(epsilon + delta, epsilon - delta)
    }

    pub fn epsilon_s(&self) -> Complex64 {
        self.epsilon_s
    }

    pub fn epsilon_l(&self) -> Complex64 {
        self.epsilon_l
    }

    /// T-violation parameter (eps_S + eps_L)/2.
    pub fn epsilon(&self) -> Complex64 {
        0.5 * (self.epsilon_s + self.epsilon_l)
    }

    /// CPT-violation parameter (eps_S - eps_L)/2.
    pub fn delta(&self) -> Complex64 {
        0.5 * (self.epsilon_s - self.epsilon_l)
    }
}
