//! # kaonpair
//!
//! Numerics for the entangled neutral-kaon pair produced in phi decays: the
//! antisymmetric two-body state, its double-decay-time intensity in both the
//! two-decay-times and the time-history formulations, past/future state
//! inference with the K_L/K_S decoherence tags, a deterministic double-decay
//! event generator, and the space-like/time-like classification of the decay
//! points.
//!
//! Proper times are in units of tau_S, widths and the mass difference in
//! 1/tau_S, so `gamma_s = 1` is the conventional choice.
//!
//! ```
//! use kaonpair::{
//!     ly_intensity, th_intensity, CpParams, DecayChannel, LyContext, PhysicsParams,
//! };
//! use num_complex::Complex64;
//!
//! let params = PhysicsParams::new(1.0, 0.002, 0.47)?;
//! let channel = DecayChannel::from_polar("pipi", 2.2e-3, 0.76, 1.0, 0.0)?;
//! let ctx = LyContext::new(params, CpParams::cp_conserving(), vec![channel])?;
//!
//! // the two formulations of the double decay rate agree point by point
//! let ly = ly_intensity(&ctx, "pipi", 0.5, "pipi", 2.0)?;
//! let th = th_intensity(&ctx, "pipi", 0.5, "pipi", 2.0)?.total;
//! assert!((ly - th).abs() <= 1e-12 * ly.max(th));
//! # Ok::<(), kaonpair::Error>(())
//! ```
//!
//! The crate ships runnable walkthroughs under `examples/` (dual intensity
//! evaluation, first-decay time distributions, tag thresholds, event
//! generation, causal classification, state inference) and a thin `kaonpair`
//! binary exposing the same capabilities as subcommands.

// `!(t >= 0.0)` is the NaN-rejecting domain check used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod kinematics;
pub mod ly;
pub mod montecarlo;
pub mod params;
pub mod state;
pub mod svg;
pub mod tagging;
pub mod th;

pub use channel::{decay_amplitude, k_not_f, k_perp_not_f, DecayChannel};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use kinematics::{classify, CausalClass, CmKinematics};
pub use ly::{
    c12, living_partner_state, ly_amplitude, ly_intensity, ly_intensity_closed, past_state,
    IntensityPoint, LyContext,
};
pub use montecarlo::{
    empirical_intensity_check, generate, EventRecord, GenerationPlan, GeneratorConfig,
};
pub use params::{CpParams, PhysicsParams};
pub use state::{
    antisymmetric_fidelity, evolve, inner, survival_probability, KaonState, StationaryStates,
};
pub use tagging::{
    fig1_curves, kl_tag_delta_t, ks_tag_delta_t, past_intensity_series, past_state_purity,
    Fig1Curves, TagKind, TagReport,
};
pub use th::{th_intensity, transition_probability, ThBreakdown};
