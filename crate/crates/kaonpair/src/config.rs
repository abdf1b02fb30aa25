//! Flat key-value parameter files.
//!
//! The format is line oriented for diffability: `key = value` pairs, `#`
//! comments, and `[channel <id>]` sections introducing one decay channel
//! each. Times are in units of tau_S, widths and delta_m in 1/tau_S.
//!
//! ```text
//! gamma_s = 1.0
//! gamma_l = 0.0017507
//! delta_m = 0.4741
//! epsilon_s_re = 1.6163e-3
//! epsilon_s_im = 1.5336e-3
//! epsilon_l_re = 1.6163e-3
//! epsilon_l_im = 1.5336e-3
//! beta_k = 0.22
//!
//! [channel pipi]
//! eta_abs = 2.232e-3
//! eta_phase = 0.7592
//! amp_s_abs = 1.0
//! amp_s_phase = 0.0
//! weight = 1.0
//! ```
//!
//! Every module invariant is enforced at load time and violations are
//! reported with the offending line number.

use std::collections::HashMap;
use std::path::Path;

use num_complex::Complex64;

use crate::channel::DecayChannel;
use crate::error::{Error, Result};
use crate::ly::LyContext;
use crate::montecarlo::GeneratorConfig;
use crate::params::{CpParams, PhysicsParams};

/// Built-in defaults: widths, mixing and CP parameters in tau_S units from
/// the particle-data-group world averages, with two CP-violating two-pion
/// channels.
pub const DEFAULT_CONFIG: &str = include_str!("../default.cfg");

/// A fully parsed and validated parameter file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub physics: PhysicsParams,
    pub cp: CpParams,
    pub channels: Vec<DecayChannel>,
    pub channel_weights: Vec<(String, f64)>,
    pub beta_k: Option<f64>,
    pub t_max: f64,
    pub n_events: usize,
    pub seed: u64,
    pub max_attempts: u32,
}

impl RunConfig {
    /// Parse the built-in defaults.
    pub fn builtin() -> Result<Self> {
        Self::parse(DEFAULT_CONFIG)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    /// Build the evaluation context from the parsed parameters.
    pub fn context(&self) -> Result<LyContext> {
        LyContext::new(self.physics, self.cp, self.channels.clone())
    }

    /// Build a generator configuration, applying any command-line overrides.
    pub fn generator_config(
        &self,
        n_events: Option<usize>,
        seed: Option<u64>,
        t_max: Option<f64>,
    ) -> GeneratorConfig {
        GeneratorConfig {
            weights: self.channel_weights.clone(),
            t_max: t_max.unwrap_or(self.t_max),
            n_events: n_events.unwrap_or(self.n_events),
            seed: seed.unwrap_or(self.seed),
            beta_k: self.beta_k,
            max_attempts: self.max_attempts,
        }
    }

    /// FNV-1a hash of the physics content, stamped into event-file headers
    /// so a file can be matched to the configuration that produced it.
    pub fn content_hash(&self) -> u64 {
        let mut canon = String::new();
        let p = &self.physics;
        canon.push_str(&format!(
            "gamma_s={:.17e};gamma_l={:.17e};delta_m={:.17e};",
            p.gamma_s(),
            p.gamma_l(),
            p.delta_m()
        ));
        let (es, el) = (self.cp.epsilon_s(), self.cp.epsilon_l());
        canon.push_str(&format!(
            "eps_s={:.17e},{:.17e};eps_l={:.17e},{:.17e};",
            es.re, es.im, el.re, el.im
        ));
        for (ch, (_, w)) in self.channels.iter().zip(&self.channel_weights) {
            canon.push_str(&format!(
                "ch={}:{:.17e},{:.17e},{:.17e},{:.17e},{:.17e};",
                ch.id(),
                ch.eta().re,
                ch.eta().im,
                ch.amp_s().re,
                ch.amp_s().im,
                w
            ));
        }
        canon.push_str(&format!(
            "beta_k={:?};t_max={:.17e};n_events={};",
            self.beta_k, self.t_max, self.n_events
        ));
        fnv1a(canon.as_bytes())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut globals: HashMap<String, (f64, usize)> = HashMap::new();
        let mut channels: Vec<ChannelBlock> = Vec::new();
        let mut current: Option<ChannelBlock> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }

            if let Some(section) = line.strip_prefix('[') {
                let section = section.strip_suffix(']').ok_or_else(|| Error::Config {
                    line: line_no,
                    message: "unterminated section header".into(),
                })?;
                let mut parts = section.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some("channel"), Some(id), None) => {
                        if let Some(done) = current.take() {
                            channels.push(done);
                        }
                        if channels.iter().any(|c| c.id == id) {
                            return Err(Error::Config {
                                line: line_no,
                                message: format!("duplicate channel id `{id}`"),
                            });
                        }
                        current = Some(ChannelBlock::new(id, line_no));
                    }
                    _ => {
                        return Err(Error::Config {
                            line: line_no,
                            message: format!("unrecognized section `[{section}]`"),
                        })
                    }
                }
                continue;
            }

            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| Error::Config {
                line: line_no,
                message: format!("`{key}` is not a number: `{}`", value.trim()),
            })?;

            match &mut current {
                Some(block) => block.set(key, value, line_no)?,
                None => {
                    const GLOBAL_KEYS: &[&str] = &[
                        "gamma_s",
                        "gamma_l",
                        "delta_m",
                        "epsilon_s_re",
                        "epsilon_s_im",
                        "epsilon_l_re",
                        "epsilon_l_im",
                        "beta_k",
                        "t_max",
                        "n_events",
                        "seed",
                        "max_attempts",
                    ];
                    if !GLOBAL_KEYS.contains(&key) {
                        return Err(Error::Config {
                            line: line_no,
                            message: format!("unknown key `{key}`"),
                        });
                    }
                    if globals.insert(key.to_string(), (value, line_no)).is_some() {
                        return Err(Error::Config {
                            line: line_no,
                            message: format!("duplicate key `{key}`"),
                        });
                    }
                }
            }
        }
        if let Some(done) = current.take() {
            channels.push(done);
        }

        let get = |key: &str| globals.get(key).map(|&(v, _)| v);
        let require = |key: &'static str| {
            get(key).ok_or_else(|| Error::Config {
                line: text.lines().count(),
                message: format!("missing required key `{key}`"),
            })
        };

        let physics = PhysicsParams::new(
            require("gamma_s")?,
            require("gamma_l")?,
            require("delta_m")?,
        )
        .map_err(|e| Error::Config {
            line: globals.get("gamma_s").map(|&(_, l)| l).unwrap_or(0),
            message: e.to_string(),
        })?;

        let cp = CpParams::new(
            Complex64::new(
                get("epsilon_s_re").unwrap_or(0.0),
                get("epsilon_s_im").unwrap_or(0.0),
            ),
            Complex64::new(
                get("epsilon_l_re").unwrap_or(0.0),
                get("epsilon_l_im").unwrap_or(0.0),
            ),
        )
        .map_err(|e| Error::Config {
            line: globals.get("epsilon_s_re").map(|&(_, l)| l).unwrap_or(0),
            message: e.to_string(),
        })?;

        let mut built = Vec::new();
        let mut channel_weights = Vec::new();
        for block in channels {
            let (ch, weight) = block.build()?;
            channel_weights.push((ch.id().to_string(), weight));
            built.push(ch);
        }
        if built.is_empty() {
            return Err(Error::Config {
                line: text.lines().count(),
                message: "at least one [channel <id>] block is required".into(),
            });
        }

        let beta_k = get("beta_k");
        if let Some(beta) = beta_k {
            if !(0.0..1.0).contains(&beta) {
                let line = globals.get("beta_k").map(|&(_, l)| l).unwrap_or(0);
                return Err(Error::Config {
                    line,
                    message: format!("beta_k must be in [0, 1), got {beta}"),
                });
            }
        }

        let n_events = get("n_events").unwrap_or(10_000.0);
        if n_events < 1.0 || n_events.fract() != 0.0 {
            let line = globals.get("n_events").map(|&(_, l)| l).unwrap_or(0);
            return Err(Error::Config {
                line,
                message: format!("n_events must be a positive integer, got {n_events}"),
            });
        }
        let seed = get("seed").unwrap_or(1.0);
        if seed < 0.0 || seed.fract() != 0.0 {
            let line = globals.get("seed").map(|&(_, l)| l).unwrap_or(0);
            return Err(Error::Config {
                line,
                message: format!("seed must be a non-negative integer, got {seed}"),
            });
        }
        let max_attempts = get("max_attempts").unwrap_or(10_000.0);
        if max_attempts < 1.0 || max_attempts.fract() != 0.0 {
            let line = globals.get("max_attempts").map(|&(_, l)| l).unwrap_or(0);
            return Err(Error::Config {
                line,
                message: format!("max_attempts must be a positive integer, got {max_attempts}"),
            });
        }
        let t_max = get("t_max").unwrap_or(25.0);
        if !(t_max > 0.0) || !t_max.is_finite() {
            let line = globals.get("t_max").map(|&(_, l)| l).unwrap_or(0);
            return Err(Error::Config {
                line,
                message: format!("t_max must be positive, got {t_max}"),
            });
        }

        Ok(Self {
            physics,
            cp,
            channels: built,
            channel_weights,
            beta_k,
            t_max,
            n_events: n_events as usize,
            seed: seed as u64,
            max_attempts: max_attempts as u32,
        })
    }
}

#[derive(Debug, Clone)]
struct ChannelBlock {
    id: String,
    start_line: usize,
    values: HashMap<&'static str, f64>,
}

impl ChannelBlock {
    const KEYS: &'static [&'static str] =
        &["eta_abs", "eta_phase", "amp_s_abs", "amp_s_phase", "weight"];

    fn new(id: &str, start_line: usize) -> Self {
        Self {
            id: id.to_string(),
            start_line,
            values: HashMap::new(),
        }
    }

    fn set(&mut self, key: &str, value: f64, line: usize) -> Result<()> {
        let canonical = Self::KEYS
            .iter()
            .find(|&&k| k == key)
            .ok_or_else(|| Error::Config {
                line,
                message: format!("unknown channel key `{key}`"),
            })?;
        if self.values.insert(canonical, value).is_some() {
            return Err(Error::Config {
                line,
                message: format!("duplicate channel key `{key}`"),
            });
        }
        Ok(())
    }

    fn build(self) -> Result<(DecayChannel, f64)> {
        let require = |key: &'static str| {
            self.values.get(key).copied().ok_or_else(|| Error::Config {
                line: self.start_line,
                message: format!("channel `{}` is missing `{key}`", self.id),
            })
        };
        let eta_abs = require("eta_abs")?;
        if eta_abs < 0.0 {
            return Err(Error::Config {
                line: self.start_line,
                message: format!("channel `{}`: eta_abs must be >= 0", self.id),
            });
        }
        let weight = self.values.get("weight").copied().unwrap_or(1.0);
        if weight < 0.0 {
            return Err(Error::Config {
                line: self.start_line,
                message: format!("channel `{}`: weight must be >= 0", self.id),
            });
        }
        let ch = DecayChannel::from_polar(
            self.id.clone(),
            eta_abs,
            self.values.get("eta_phase").copied().unwrap_or(0.0),
            require("amp_s_abs")?,
            self.values.get("amp_s_phase").copied().unwrap_or(0.0),
        )
        .map_err(|e| Error::Config {
            line: self.start_line,
            message: format!("channel `{}`: {e}", self.id),
        })?;
        Ok((ch, weight))
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
