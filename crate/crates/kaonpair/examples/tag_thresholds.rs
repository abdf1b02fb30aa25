//! Decoherence tags: how long a time difference is needed before the
//! surviving partner is a pure K_L (KL tag), or the first-decayed kaon was
//! retroactively a pure K_S (KS tag), at a requested contamination. The KS
//! tag is the only known way to prepare a pure K_S beam: the contamination
//! e^{-dGamma dt/2} / |eta2| can be pushed arbitrarily low by waiting.
//!
//! ```bash
//! cargo run -p kaonpair --example tag_thresholds
//! ```

use kaonpair::tagging::{kl_tag_contamination, ks_tag_contamination};
use kaonpair::{kl_tag_delta_t, ks_tag_delta_t, past_state_purity, RunConfig};

fn main() -> kaonpair::Result<()> {
    let config = RunConfig::builtin()?;
    let ctx = config.context()?;
    let eta = ctx.channel("pipi")?.eta().norm();
    println!(
        "channel pipi, |eta| = {eta:.3e}, dGamma = {:.5} / tau_S\n",
        ctx.params().delta_gamma()
    );

    println!("KL tag: living partner contamination |eta| e^(-dGamma dt / 2)");
    println!(
        "{:>12} {:>12} {:>14}",
        "bound", "dt / tau_S", "forward check"
    );
    for bound in [1e-3, 1e-5, 1e-8] {
        let dt = kl_tag_delta_t(&ctx, "pipi", bound)?;
        let fwd = kl_tag_contamination(eta, dt, ctx.params());
        println!("{bound:>12.1e} {dt:>12.4} {fwd:>14.6e}");
    }

    println!("\nKS tag: past-state contamination e^(-dGamma dt / 2) / |eta|");
    println!(
        "{:>12} {:>12} {:>14}",
        "bound", "dt / tau_S", "forward check"
    );
    for bound in [1e-1, 1e-2, 1e-4] {
        let dt = ks_tag_delta_t(&ctx, "pipi", bound)?;
        let fwd = ks_tag_contamination(eta, dt, ctx.params());
        println!("{bound:>12.1e} {dt:>12.4} {fwd:>14.6e}");
    }

    println!("\npast-state purity from the full decomposition (t1 = 1):");
    println!(
        "{:>8} {:>16} {:>18}",
        "dt", "contamination", "K_S probability"
    );
    for dt in [0.0, 5.0, 10.0, 20.0, 30.0] {
        let report = past_state_purity(&ctx, "pipi", 1.0 + dt, 1.0)?;
        println!(
            "{dt:>8.1} {:>16.6e} {:>18.12}",
            report.contamination, report.purity
        );
    }
    Ok(())
}
