//! Decay channels and the states they filter.
//!
//! A channel is characterized by the amplitude ratio
//! eta_f = <f|T|K_L> / <f|T|K_S> and the reference amplitude <f|T|K_S>.
//! For every channel there is a unique superposition K_notf that cannot
//! decay to it; its orthogonal complement Kperp_notf is what the decay
//! filters out of the entangled pair.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{KaonState, StationaryStates};

/// A decay channel f with eta_f and the K_S reference amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayChannel {
    id: String,
    eta: Complex64,
    amp_s: Complex64,
}

impl DecayChannel {
    /// `amp_s` must be nonzero: eta is defined relative to the K_S amplitude.
    pub fn new(id: impl Into<String>, eta: Complex64, amp_s: Complex64) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::invalid("channel id", "must be non-empty"));
        }
        if !(eta.re.is_finite() && eta.im.is_finite()) {
            return Err(Error::invalid("eta", "must be finite"));
        }
        if !(amp_s.re.is_finite() && amp_s.im.is_finite()) || amp_s == Complex64::ZERO {
            return Err(Error::invalid(
                "amp_s",
                "reference amplitude <f|T|K_S> must be finite and nonzero",
            ));
        }
        Ok(Self { id, eta, amp_s })
    }

    /// Convenience constructor from |eta|, arg eta, |amp_s|, arg amp_s.
    pub fn from_polar(
        id: impl Into<String>,
        eta_abs: f64,
        eta_phase: f64,
        amp_s_abs: f64,
        amp_s_phase: f64,
    ) -> Result<Self> {
        Self::new(
            id,
            Complex64::from_polar(eta_abs, eta_phase),
            Complex64::from_polar(amp_s_abs, amp_s_phase),
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    /// <f|T|K_S>.
    pub fn amp_s(&self) -> Complex64 {
        self.amp_s
    }

    /// <f|T|K_L> = eta <f|T|K_S>.
    pub fn amp_l(&self) -> Complex64 {
        self.eta * self.amp_s
    }
}

/// Decay amplitude <f|T|state>: expand on (K_S, K_L) and weight by the
/// channel amplitudes.
pub fn decay_amplitude(
    state: &KaonState,
    channel: &DecayChannel,
    basis: &StationaryStates,
) -> Complex64 {
    let (c_s, c_l) = basis.decompose(state);
    c_s * channel.amp_s() + c_l * channel.amp_l()
}

/// The unit-norm state proportional to |K_L> - eta_f |K_S>, which has a
/// vanishing decay amplitude into f.
pub fn k_not_f(channel: &DecayChannel, basis: &StationaryStates) -> Result<KaonState> {
    basis
        .k_l()
        .sub(&basis.k_s().scaled(channel.eta()))
        .normalized()
        .map_err(|_| Error::DegenerateStates)
}

/// The unit-norm state orthogonal to [`k_not_f`], i.e. the one filtered by
/// the decay into f. The overall phase is fixed so that the K0 component is
/// real non-negative (falling back to the K0bar component when the K0 one
/// vanishes); the phase is unobservable, the convention just makes outputs
/// deterministic.
pub fn k_perp_not_f(channel: &DecayChannel, basis: &StationaryStates) -> Result<KaonState> {
    let v = k_not_f(channel, basis)?;
    let perp = KaonState::new(-v.c_k0bar.conj(), v.c_k0.conj()).normalized()?;
    let anchor = if perp.c_k0.norm() > 1e-14 {
        perp.c_k0
    } else {
        perp.c_k0bar
    };
    Ok(perp.scaled(anchor.conj() / anchor.norm()))
}
