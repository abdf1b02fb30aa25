//! Single-kaon state algebra in the orthonormal flavor basis.
//!
//! A [`KaonState`] is a complex two-vector of amplitudes on |K0> and |K0bar>.
//! The stationary states K_S and K_L are *not* orthogonal once CP is
//! violated, so expanding a state on them is a 2x2 linear solve rather than
//! a projection; [`StationaryStates::decompose`] does exactly that.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{CpParams, PhysicsParams};

/// Squared-overlap threshold beyond which the stationary states are treated
/// as degenerate.
const DEGENERACY_TOL: f64 = 1e-12;

/// A single neutral-kaon state, as amplitudes on the flavor basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaonState {
    /// Amplitude on |K0>.
    pub c_k0: Complex64,
    /// Amplitude on |K0bar>.
    pub c_k0bar: Complex64,
}

impl KaonState {
    pub fn new(c_k0: Complex64, c_k0bar: Complex64) -> Self {
        Self { c_k0, c_k0bar }
    }

    /// The flavor eigenstate |K0>.
    pub fn k0() -> Self {
        Self::new(Complex64::ONE, Complex64::ZERO)
    }

    /// The flavor eigenstate |K0bar>.
    pub fn k0bar() -> Self {
        Self::new(Complex64::ZERO, Complex64::ONE)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_k0.norm_sqr() + self.c_k0bar.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Unit-norm copy; fails on a (numerically) zero state.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::ZeroNormState);
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self::new(z * self.c_k0, z * self.c_k0bar)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.c_k0 + other.c_k0, self.c_k0bar + other.c_k0bar)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.c_k0 - other.c_k0, self.c_k0bar - other.c_k0bar)
    }

    /// |<self|other>|^2 / (<self|self><other|other>): 1 iff equal up to phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        inner(self, other).norm_sqr() / (self.norm_sqr() * other.norm_sqr())
    }
}

/// Hilbert-space inner product <a|b>: conjugate-linear in `a`, linear in `b`.
pub fn inner(a: &KaonState, b: &KaonState) -> Complex64 {
    a.c_k0.conj() * b.c_k0 + a.c_k0bar.conj() * b.c_k0bar
}

/// The non-orthogonal K_S / K_L pair, with the derived overlap and the
/// squared normalization |N|^2 = 1 / (1 - |<K_S|K_L>|^2) of the entangled
/// antisymmetric state.
#[derive(Debug, Clone)]
pub struct StationaryStates {
    k_s: KaonState,
    k_l: KaonState,
    overlap: Complex64,
    entangled_norm_sqr: f64,
}

impl StationaryStates {
    /// Build K_S and K_L from the CP impurities:
    ///
    /// ```text
    /// |K_S> = [(1+eps_S)|K0> + (1-eps_S)|K0bar>] / sqrt(2(1+|eps_S|^2))
    /// |K_L> = [(1+eps_L)|K0> - (1-eps_L)|K0bar>] / sqrt(2(1+|eps_L|^2))
    /// ```
    ///
    /// The overlap then comes out as
    /// (eps_S* + eps_L) / sqrt((1+|eps_S|^2)(1+|eps_L|^2)).
    pub fn from_cp(cp: &CpParams) -> Result<Self> {
        let es = cp.epsilon_s();
        let el = cp.epsilon_l();
        let ns = (2.0 * (1.0 + es.norm_sqr())).sqrt();
        let nl = (2.0 * (1.0 + el.norm_sqr())).sqrt();
        let one = Complex64::ONE;

        let k_s = KaonState::new((one + es) / ns, (one - es) / ns);
        let k_l = KaonState::new((one + el) / nl, -(one - el) / nl);

        let overlap = inner(&k_s, &k_l);
        let overlap_sqr = overlap.norm_sqr();
        if overlap_sqr >= 1.0 - DEGENERACY_TOL {
            return Err(Error::DegenerateStates);
        }
        Ok(Self {
            k_s,
            k_l,
            overlap,
            entangled_norm_sqr: 1.0 / (1.0 - overlap_sqr),
        })
    }

    pub fn k_s(&self) -> &KaonState {
        &self.k_s
    }

    pub fn k_l(&self) -> &KaonState {
        &self.k_l
    }

    /// <K_S|K_L>.
    pub fn overlap(&self) -> Complex64 {
        self.overlap
    }

    /// |N|^2 >= 1 of the antisymmetric two-body state.
    pub fn entangled_norm_sqr(&self) -> f64 {
        self.entangled_norm_sqr
    }

    /// Expand `state` on (K_S, K_L): returns (c_S, c_L) with
    /// state = c_S K_S + c_L K_L, exact for any state by linear independence.
    pub fn decompose(&self, state: &KaonState) -> (Complex64, Complex64) {
        // Cramer's rule on the flavor-component matrix [k_s k_l].
        let det = self.k_s.c_k0 * self.k_l.c_k0bar - self.k_l.c_k0 * self.k_s.c_k0bar;
        let c_s = (state.c_k0 * self.k_l.c_k0bar - self.k_l.c_k0 * state.c_k0bar) / det;
        let c_l = (self.k_s.c_k0 * state.c_k0bar - state.c_k0 * self.k_s.c_k0bar) / det;
        (c_s, c_l)
    }

    /// Inverse of [`Self::decompose`].
    pub fn recompose(&self, c_s: Complex64, c_l: Complex64) -> KaonState {
        self.k_s.scaled(c_s).add(&self.k_l.scaled(c_l))
    }
}

/// Free evolution of a single-kaon state by proper time `t >= 0`: the K_S
/// component picks up e^{-i lambda_S t}, the K_L component e^{-i lambda_L t}.
/// Decay makes this non-unitary: the norm shrinks for t > 0.
pub fn evolve(
    state: &KaonState,
    t: f64,
    params: &PhysicsParams,
    basis: &StationaryStates,
) -> Result<KaonState> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime { value: t });
    }
    let (c_s, c_l) = basis.decompose(state);
    Ok(basis.recompose(
        c_s * params.evolution_factor_s(t),
        c_l * params.evolution_factor_l(t),
    ))
}

/// Survival probability of the entangled pair up to the first decay:
/// e^{-Gamma t1} with the total width Gamma = Gamma_S + Gamma_L.
pub fn survival_probability(t1: f64, params: &PhysicsParams) -> Result<f64> {
    if !(t1 >= 0.0) {
        return Err(Error::NegativeTime { value: t1 });
    }
    Ok((-params.gamma() * t1).exp())
}

/// Two-body amplitudes on the product flavor basis, indexed as
/// [K0 K0, K0 K0bar, K0bar K0, K0bar K0bar].
pub(crate) type TwoBody = [Complex64; 4];

pub(crate) fn tensor(a: &KaonState, b: &KaonState) -> TwoBody {
    [
        a.c_k0 * b.c_k0,
        a.c_k0 * b.c_k0bar,
        a.c_k0bar * b.c_k0,
        a.c_k0bar * b.c_k0bar,
    ]
}

/// Squared overlap of the antisymmetric combination of (alpha, beta) with
/// the flavor-basis antisymmetric state; equals 1 for any linearly
/// independent pair, which is the basis-independence property of the
/// entangled state.
///
/// The inputs are normalized internally; (numerically) parallel inputs are
/// rejected.
pub fn antisymmetric_fidelity(alpha: &KaonState, beta: &KaonState) -> Result<f64> {
    let a = alpha.normalized()?;
    let b = beta.normalized()?;

    let det = a.c_k0 * b.c_k0bar - a.c_k0bar * b.c_k0;
    if det.norm_sqr() < 1e-24 {
        return Err(Error::ParallelStates);
    }

    let norm = (1.0 - inner(&a, &b).norm_sqr()).recip().sqrt();
    let scale = Complex64::new(norm / std::f64::consts::SQRT_2, 0.0);
    let ab = tensor(&a, &b);
    let ba = tensor(&b, &a);
    let combined: TwoBody = std::array::from_fn(|i| scale * (ab[i] - ba[i]));

    // Reference state (|K0>|K0bar> - |K0bar>|K0>) / sqrt(2).
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let reference = [
        Complex64::ZERO,
        Complex64::new(r, 0.0),
        Complex64::new(-r, 0.0),
        Complex64::ZERO,
    ];

    let ip: Complex64 = reference
        .iter()
        .zip(combined.iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(ip.norm_sqr())
}
