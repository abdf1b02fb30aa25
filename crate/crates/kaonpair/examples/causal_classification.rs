//! Space-like or time-like? For back-to-back equal-mass particles the
//! ordered decay times are time-like separated when t1/t2 < R with
//! R = (1 - beta_K)/(1 + beta_K). A phi factory (beta_K ~ 0.22) makes
//! time-like pairs easy; a charm factory (beta_K ~ 0.95) gives the
//! complementary, mostly space-like situation.
//!
//! ```bash
//! cargo run -p kaonpair --example causal_classification
//! ```

use kaonpair::{classify, generate, CausalClass, CmKinematics, RunConfig};

fn main() -> kaonpair::Result<()> {
    println!("{:>8} {:>10}", "beta_K", "R");
    for beta in [0.0, 0.22, 0.5, 0.8, 0.95] {
        let kin = CmKinematics::new(beta)?;
        println!("{beta:>8.2} {:>10.5}", kin.ratio_r());
    }

    println!("\nclassification of (t1, t2) = (0.5, 1.0):");
    for beta in [0.22, 0.95] {
        let kin = CmKinematics::new(beta)?;
        println!("  beta_K = {beta}: {}", classify(0.5, 1.0, &kin)?);
    }

    // fractions over a generated sample at both velocities
    let config = RunConfig::builtin()?;
    let ctx = config.context()?;
    for beta in [0.22, 0.95] {
        let mut gen_config = config.generator_config(Some(20_000), Some(3), None);
        gen_config.beta_k = Some(beta);
        let events = generate(&gen_config, &ctx)?;
        let time_like = events
            .iter()
            .filter(|e| e.causal_class == CausalClass::TimeLike)
            .count();
        println!(
            "\nbeta_K = {beta}: {:.1}% of {} generated pairs are time-like",
            100.0 * time_like as f64 / events.len() as f64,
            events.len()
        );
    }
    Ok(())
}
