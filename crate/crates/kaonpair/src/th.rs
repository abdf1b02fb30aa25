//! Time-history factorization of the double decay rate.
//!
//! The same observable as [`crate::ly::ly_intensity`], built instead from
//! four sequential steps: the entangled pair survives to t1 and is projected
//! on the orthonormal pair (Kperp_notf1, K_notf1) by the first decay; the
//! amplitude into f1 filters Kperp_notf1; the surviving K_notf1 evolves
//! (unnormalized, absorbing decay losses) over dt = t2 - t1; the second
//! decay filters Kperp_notf2. The product of the four squared factors equals
//! the two-decay-time intensity, which is the consistency statement the
//! acceptance suite sweeps.

use num_complex::Complex64;

use crate::channel::{decay_amplitude, k_perp_not_f};
use crate::error::{Error, Result};
use crate::ly::LyContext;

/// The four factors of the time-history intensity, exposed individually so
/// each step is testable on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThBreakdown {
    /// Survival of the pair to t1 and projection on the filtered pair:
    /// (1/2) e^{-Gamma t1}.
    pub step1_prob: f64,
    /// <f1|T|Kperp_notf1>.
    pub step2_amp: Complex64,
    /// Transition probability K_notf1(0) -> Kperp_notf2(dt).
    pub step3_prob: f64,
    /// <f2|T|Kperp_notf2>.
    pub step4_amp: Complex64,
    /// step1 * step3 * |step2|^2 * |step4|^2.
    pub total: f64,
}

/// Squared norm of K_L - eta K_S in the non-orthogonal stationary basis.
fn not_f_norm_sqr(eta: Complex64, overlap: Complex64) -> f64 {
    1.0 + eta.norm_sqr() - 2.0 * (eta.conj() * overlap).re
}

/// |<Kperp_notf2 | K_notf1(dt)>|^2, with K_notf1 evolved unnormalized from a
/// unit state so that decay losses over dt are part of the probability.
///
/// The projection is evaluated in (K_S, K_L) coefficient space. Since
/// Kperp_notf2 is orthogonal to K_L - eta2 K_S, its overlaps satisfy
/// <Kperp|K_L> = eta2 <Kperp|K_S>, which collapses the inner product to
///
/// ```text
/// |<Kperp_2|K_S>|^2 N1^2 |eta2 e^{-i lam_L dt} - eta1 e^{-i lam_S dt}|^2
/// ```
///
/// where the only cancellation left is the physical interference. Evaluating
/// the same object through flavor components instead would round on the
/// evolved state's full norm and lose precision whenever the filtered
/// component is eta-suppressed; a unit test pins the two routes against
/// each other.
pub fn transition_probability(ctx: &LyContext, f1: &str, f2: &str, delta_t: f64) -> Result<f64> {
    if !(delta_t >= 0.0) {
        return Err(Error::NegativeTime { value: delta_t });
    }
    let eta1 = ctx.channel(f1)?.eta();
    let eta2 = ctx.channel(f2)?.eta();
    let overlap = ctx.basis().overlap();
    let p = ctx.params();

    let n1_sqr = not_f_norm_sqr(eta1, overlap).recip();
    let filtered_sqr = (1.0 - overlap.norm_sqr()) / not_f_norm_sqr(eta2, overlap);
    let interference = eta2 * p.evolution_factor_l(delta_t) - eta1 * p.evolution_factor_s(delta_t);
    Ok(n1_sqr * filtered_sqr * interference.norm_sqr())
}

/// Evaluate the intensity through the four-step factorization.
pub fn th_intensity(ctx: &LyContext, f1: &str, t1: f64, f2: &str, t2: f64) -> Result<ThBreakdown> {
    if !(t1 >= 0.0) {
        return Err(Error::NegativeTime { value: t1 });
    }
    if !(t2 >= t1) {
        return Err(Error::TimeOrdering { t1, t2 });
    }
    let basis = ctx.basis();
    let ch1 = ctx.channel(f1)?;
    let ch2 = ctx.channel(f2)?;

    let step1_prob = 0.5 * (-ctx.params().gamma() * t1).exp();
    let step2_amp = decay_amplitude(&k_perp_not_f(ch1, basis)?, ch1, basis);
    let step3_prob = transition_probability(ctx, f1, f2, t2 - t1)?;
    let step4_amp = decay_amplitude(&k_perp_not_f(ch2, basis)?, ch2, basis);

    Ok(ThBreakdown {
        step1_prob,
        step2_amp,
        step3_prob,
        step4_amp,
        total: step1_prob * step3_prob * step2_amp.norm_sqr() * step4_amp.norm_sqr(),
    })
}
