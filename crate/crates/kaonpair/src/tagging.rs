//! Decoherence-tag thresholds, past-state purity and the first-decay time
//! distributions.
//!
//! Two regimes exist in the time difference between the decays. In the
//! interference region the inferred states carry both stationary components;
//! once dt is large enough the suppressed component is negligible and the
//! surviving partner is a K_L (KL tag) while the first-decayed kaon was,
//! retroactively, a K_S (KS tag). The contamination scales are
//!
//! ```text
//! KL tag:  |eta1| e^{-dGamma dt / 2}
//! KS tag:  e^{-dGamma dt / 2} / |eta2|
//! ```
//!
//! and the solvers below invert them for the dt at which a requested bound
//! is reached.

use crate::error::{Error, Result};
use crate::ly::{ly_intensity, past_state, LyContext};
use crate::params::PhysicsParams;

/// Which stationary state a tag certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagKind {
    KlTag,
    KsTag,
}

/// A solved tag condition: the suppressed-component amplitude ratio at
/// `delta_t` and the probability weight of the dominant component.
#[derive(Debug, Clone, PartialEq)]
pub struct TagReport {
    pub kind: TagKind,
    pub channel: String,
    pub delta_t: f64,
    /// Amplitude-magnitude ratio of the suppressed stationary component.
    pub contamination: f64,
    /// 1 / (1 + contamination^2), in (0, 1].
    pub purity: f64,
}

impl TagReport {
    fn new(kind: TagKind, channel: &str, delta_t: f64, contamination: f64) -> Self {
        Self {
            kind,
            channel: channel.to_string(),
            delta_t,
            contamination,
            purity: 1.0 / (1.0 + contamination * contamination),
        }
    }
}

/// KL-tag contamination |eta1| e^{-dGamma dt/2} of the living partner.
pub fn kl_tag_contamination(eta1_abs: f64, delta_t: f64, params: &PhysicsParams) -> f64 {
    eta1_abs * (-0.5 * params.delta_gamma() * delta_t).exp()
}

/// KS-tag contamination e^{-dGamma dt/2} / |eta2| of the past state.
pub fn ks_tag_contamination(eta2_abs: f64, delta_t: f64, params: &PhysicsParams) -> f64 {
    (-0.5 * params.delta_gamma() * delta_t).exp() / eta2_abs
}

/// Smallest dt at which the living partner's K_S contamination drops to
/// `bound`: dt = (2/dGamma) ln(|eta1| / bound), or 0 when the bound already
/// holds at dt = 0.
pub fn kl_tag_delta_t(ctx: &LyContext, f1: &str, bound: f64) -> Result<f64> {
    if !(bound > 0.0) {
        return Err(Error::invalid("bound", "contamination bound must be > 0"));
    }
    let eta1 = ctx.channel(f1)?.eta().norm();
    if bound >= eta1 {
        return Ok(0.0);
    }
    Ok(2.0 / ctx.params().delta_gamma() * (eta1 / bound).ln())
}

/// Smallest dt at which the past state's K_L contamination drops to `bound`:
/// dt = (2/dGamma) ln(1 / (bound |eta2|)) when positive, else 0.
pub fn ks_tag_delta_t(ctx: &LyContext, f2: &str, bound: f64) -> Result<f64> {
    if !(bound > 0.0) {
        return Err(Error::invalid("bound", "contamination bound must be > 0"));
    }
    let eta2 = ctx.channel(f2)?.eta().norm();
    if eta2 == 0.0 {
        return Err(Error::invalid(
            "eta",
            format!("channel `{f2}` has |eta| = 0; the KS-tag condition cannot be met"),
        ));
    }
    Ok((2.0 / ctx.params().delta_gamma() * (1.0 / (bound * eta2)).ln()).max(0.0))
}

/// Decompose the past state inferred from (f2, t2) at t1 and report its K_L
/// contamination, which depends on dt = t2 - t1 only.
pub fn past_state_purity(ctx: &LyContext, f2: &str, t2: f64, t1: f64) -> Result<TagReport> {
    if ctx.channel(f2)?.eta().norm() == 0.0 {
        return Err(Error::invalid(
            "eta",
            format!("channel `{f2}` has |eta| = 0; the past state is pure K_L"),
        ));
    }
    let state = past_state(ctx, f2, t2, t1)?;
    let (c_s, c_l) = ctx.basis().decompose(&state);
    let contamination = c_l.norm() / c_s.norm();
    Ok(TagReport::new(TagKind::KsTag, f2, t2 - t1, contamination))
}

/// The three first-decay time distributions, each normalized to 1 at t1 = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Curves {
    pub t1_grid: Vec<f64>,
    /// Decay rate into f1 of the state inferred from the future observation
    /// (f2 = f1 at the fixed t2): the interference-region distribution.
    pub interference: Vec<f64>,
    /// e^{-Gamma_S t1}: the decoherence-region limit of the above.
    pub decoherence: Vec<f64>,
    /// e^{-(Gamma_S + kappa Gamma_L) t1}: the distribution irrespective of
    /// the partner, with Gamma_L inflated by the display factor kappa.
    pub total_width: Vec<f64>,
}

/// t1 distribution of the decay rate into `f1` given the future observation
/// of `f2` at `t2`, normalized to its t1 = 0 value. This is the squared
/// decay amplitude of the unnormalized inferred state, i.e. the t1 slice of
/// the double decay rate at fixed (f2, t2). Grid values must lie in [0, t2].
pub fn past_intensity_series(
    ctx: &LyContext,
    f1: &str,
    f2: &str,
    t2: f64,
    t1_grid: &[f64],
) -> Result<Vec<f64>> {
    let at_zero = ly_intensity(ctx, f1, 0.0, f2, t2)?;
    if at_zero == 0.0 {
        return Err(Error::invalid(
            "t2",
            "the distribution vanishes at t1 = 0 and cannot be normalized there",
        ));
    }
    t1_grid
        .iter()
        .map(|&t1| Ok(ly_intensity(ctx, f1, t1, f2, t2)? / at_zero))
        .collect()
}

/// Build the three distributions over `t1_grid` for channel `f1`, with the
/// future observation fixed to the same channel at `t2` and the display
/// factor `kappa` applied to Gamma_L in the comparison curve only.
pub fn fig1_curves(
    ctx: &LyContext,
    f1: &str,
    t2: f64,
    kappa: f64,
    t1_grid: &[f64],
) -> Result<Fig1Curves> {
    if !(t2 > 0.0) {
        return Err(Error::invalid("t2", "observation time must be positive"));
    }
    if !(kappa >= 0.0) {
        return Err(Error::invalid("kappa", "display factor must be >= 0"));
    }
    for &t1 in t1_grid {
        if !(0.0..=t2).contains(&t1) {
            return Err(Error::invalid(
                "t1_grid",
                format!("grid value {t1} outside [0, {t2}]"),
            ));
        }
    }

    let interference = past_intensity_series(ctx, f1, f1, t2, t1_grid)?;
    let gs = ctx.params().gamma_s();
    let inflated = gs + kappa * ctx.params().gamma_l();
    let decoherence = t1_grid.iter().map(|&t1| (-gs * t1).exp()).collect();
    let total_width = t1_grid.iter().map(|&t1| (-inflated * t1).exp()).collect();

    Ok(Fig1Curves {
        t1_grid: t1_grid.to_vec(),
        interference,
        decoherence,
        total_width,
    })
}
