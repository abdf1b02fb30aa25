//! Command implementations behind the `kaonpair` binary.
//!
//! Each command takes the parsed [`RunConfig`] plus its own arguments and
//! writes human-readable output (12 significant digits) or CSV/SVG files
//! (17 significant digits, so values round-trip bit-exactly).

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::kinematics::{classify, CmKinematics};
use crate::ly::{intensity_scale, ly_intensity};
use crate::montecarlo::{generate_with_plan, write_events_csv, GenerationPlan};
use crate::svg::{line_plot, LineStyle, Series};
use crate::tagging::{
    fig1_curves, kl_tag_contamination, kl_tag_delta_t, ks_tag_contamination, ks_tag_delta_t,
    TagKind,
};
use crate::th::th_intensity;

/// Evaluate the intensity at one point through both formulations and print
/// the four time-history factors.
pub fn cmd_intensity(
    config: &RunConfig,
    f1: &str,
    t1: f64,
    f2: &str,
    t2: f64,
    out: &mut impl Write,
) -> Result<()> {
    let ctx = config.context()?;
    let ly = ly_intensity(&ctx, f1, t1, f2, t2)?;
    let th = th_intensity(&ctx, f1, t1, f2, t2)?;
    // values at or below the rounding noise of the cancellation scale are
    // zero for reporting purposes
    let noise = 1e-12 * intensity_scale(&ctx, f1, t1, f2, t2)?;
    let big = ly.max(th.total);
    let rel = if big <= noise {
        0.0
    } else {
        (ly - th.total).abs() / big
    };

    writeln!(out, "f1 = {f1}  t1 = {t1:.11e}")?;
    writeln!(out, "f2 = {f2}  t2 = {t2:.11e}")?;
    writeln!(out, "I_LY                = {ly:.11e}")?;
    writeln!(out, "I_TH                = {:.11e}", th.total)?;
    writeln!(out, "relative difference = {rel:.11e}")?;
    writeln!(
        out,
        "step1 (1/2)e^(-Gamma t1)        = {:.11e}",
        th.step1_prob
    )?;
    writeln!(
        out,
        "step2 |<f1|T|Kperp_nf1>|^2      = {:.11e}",
        th.step2_amp.norm_sqr()
    )?;
    writeln!(
        out,
        "step3 transition probability    = {:.11e}",
        th.step3_prob
    )?;
    writeln!(
        out,
        "step4 |<f2|T|Kperp_nf2>|^2      = {:.11e}",
        th.step4_amp.norm_sqr()
    )?;
    Ok(())
}

/// First-decay time distributions for `channel` with the future observation
/// fixed at `t2`: CSV always, SVG when a path is given.
#[allow(clippy::too_many_arguments)]
pub fn cmd_fig1(
    config: &RunConfig,
    channel: Option<&str>,
    t2: f64,
    kappa: f64,
    points: usize,
    csv_path: &Path,
    svg_path: Option<&Path>,
    out: &mut impl Write,
) -> Result<()> {
    if points < 2 {
        return Err(Error::invalid("points", "need at least 2 grid points"));
    }
    let ctx = config.context()?;
    // default to the first configured channel
    let f1 = match channel {
        Some(id) => id.to_string(),
        None => config.channels[0].id().to_string(),
    };
    let grid: Vec<f64> = (0..points)
        .map(|i| t2 * (i as f64 / (points - 1) as f64))
        .collect();
    let curves = fig1_curves(&ctx, &f1, t2, kappa, &grid)?;

    let mut csv = String::new();
    csv.push_str("t1,interference,decoherence,total_width\n");
    for i in 0..grid.len() {
        csv.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            curves.t1_grid[i], curves.interference[i], curves.decoherence[i], curves.total_width[i]
        ));
    }
    std::fs::write(csv_path, csv)?;
    writeln!(out, "wrote {} rows to {}", grid.len(), csv_path.display())?;

    if let Some(svg_path) = svg_path {
        let interference_label = format!("future observation at t2 = {t2} (interference)");
        let total_label = format!("no condition on partner (Gamma_L x {kappa})");
        let svg = line_plot(
            &format!("first-decay time distributions, channel {f1}"),
            "t1 / tau_S",
            "rate, normalized at t1 = 0",
            &curves.t1_grid,
            &[
                Series {
                    label: &interference_label,
                    values: &curves.interference,
                    style: LineStyle::Solid,
                },
                Series {
                    label: "decoherence limit (pure K_S)",
                    values: &curves.decoherence,
                    style: LineStyle::Dashed,
                },
                Series {
                    label: &total_label,
                    values: &curves.total_width,
                    style: LineStyle::Dotted,
                },
            ],
        );
        std::fs::write(svg_path, svg)?;
        writeln!(out, "wrote plot to {}", svg_path.display())?;
    }
    Ok(())
}

/// Solve a decoherence-tag threshold and report the forward-checked
/// contamination and purity at the returned time difference.
pub fn cmd_tag(
    config: &RunConfig,
    kind: TagKind,
    channel: &str,
    bound: f64,
    out: &mut impl Write,
) -> Result<()> {
    let ctx = config.context()?;
    let eta_abs = ctx.channel(channel)?.eta().norm();
    let (delta_t, contamination, label) = match kind {
        TagKind::KlTag => {
            let dt = kl_tag_delta_t(&ctx, channel, bound)?;
            (dt, kl_tag_contamination(eta_abs, dt, ctx.params()), "KL")
        }
        TagKind::KsTag => {
            let dt = ks_tag_delta_t(&ctx, channel, bound)?;
            (dt, ks_tag_contamination(eta_abs, dt, ctx.params()), "KS")
        }
    };
    let purity = 1.0 / (1.0 + contamination * contamination);
    writeln!(
        out,
        "{label}-tag for channel {channel} (|eta| = {eta_abs:.11e})"
    )?;
    writeln!(out, "requested contamination bound = {bound:.11e}")?;
    writeln!(out, "delta_t       = {delta_t:.11e}")?;
    writeln!(out, "contamination = {contamination:.11e}")?;
    writeln!(out, "purity        = {purity:.11e}")?;
    Ok(())
}

/// Generate events and write the interchange CSV.
pub fn cmd_generate(
    config: &RunConfig,
    n_events: Option<usize>,
    seed: Option<u64>,
    t_max: Option<f64>,
    out_path: &Path,
    out: &mut impl Write,
) -> Result<()> {
    let ctx = config.context()?;
    let gen_config = config.generator_config(n_events, seed, t_max);
    let plan = GenerationPlan::new(&gen_config, &ctx)?;

    let start = Instant::now();
    let events = generate_with_plan(&gen_config, &plan)?;
    let elapsed = start.elapsed();

    let file = std::fs::File::create(out_path)?;
    let mut writer = std::io::BufWriter::new(file);
    write_events_csv(&mut writer, config.content_hash(), gen_config.seed, &events)?;
    writer.flush()?;

    writeln!(
        out,
        "generated {} events (seed {}) in {:.3} s",
        events.len(),
        gen_config.seed,
        elapsed.as_secs_f64()
    )?;
    writeln!(
        out,
        "dt mass beyond t_max = {:.3e}",
        plan.truncated_fraction
    )?;
    writeln!(out, "wrote {}", out_path.display())?;
    Ok(())
}

/// Classify one ordered decay-time pair.
pub fn cmd_classify(
    config: &RunConfig,
    t1: f64,
    t2: f64,
    beta_k: Option<f64>,
    out: &mut impl Write,
) -> Result<()> {
    let beta = beta_k.or(config.beta_k).ok_or_else(|| {
        Error::invalid(
            "beta_k",
            "not set in the config and not given on the command line",
        )
    })?;
    let kin = CmKinematics::new(beta)?;
    let class = classify(t1, t2, &kin)?;
    writeln!(out, "beta_k = {beta:.11e}  R = {:.11e}", kin.ratio_r())?;
    writeln!(out, "t1/t2  = {:.11e}", t1 / t2)?;
    writeln!(out, "{class}")?;
    Ok(())
}
