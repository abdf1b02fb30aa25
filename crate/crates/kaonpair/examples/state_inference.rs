//! Infer single-kaon states from one observed decay of the entangled pair.
//!
//! Past to future: the first decay (f1 at t1) tags the surviving partner in
//! the unique state that cannot decay to f1; it then evolves freely, and its
//! K_S fraction dies out with e^{-dGamma dt/2} until the partner is a pure
//! K_L. Future to past: fixing the second decay (f2 at t2) determines the
//! state the first kaon was in just before it decayed -- and there the K_L
//! fraction dies out, so a late partner observation retroactively certifies
//! a pure K_S. Both compositions depend only on the time difference.
//!
//! ```bash
//! cargo run -p kaonpair --example state_inference
//! ```

use kaonpair::{living_partner_state, past_state, RunConfig};

fn main() -> kaonpair::Result<()> {
    let config = RunConfig::builtin()?;
    let ctx = config.context()?;
    let basis = ctx.basis();

    println!(
        "channel pipi, |eta| = {:.3e}\n",
        ctx.channel("pipi")?.eta().norm()
    );

    println!("living partner after a pipi decay (past -> future):");
    println!(
        "{:>8} {:>14} {:>14} {:>12}",
        "dt", "|c_S|", "|c_L|", "K_S : K_L"
    );
    for dt in [0.0, 2.0, 5.0, 10.0, 20.0] {
        let partner = living_partner_state(&ctx, "pipi", dt)?;
        let (c_s, c_l) = basis.decompose(&partner);
        println!(
            "{dt:>8.1} {:>14.6e} {:>14.6e} {:>12.3e}",
            c_s.norm(),
            c_l.norm(),
            c_s.norm() / c_l.norm()
        );
    }
    println!("  -> pure K_L for all practical purposes at large dt (KL tag)\n");

    println!("past state of the first-decayed kaon, partner seen in pipi at t2 (future -> past):");
    println!(
        "{:>8} {:>8} {:>14} {:>14} {:>12}",
        "t1", "t2", "|c_S|", "|c_L|", "K_L : K_S"
    );
    for (t1, t2) in [
        (1.0, 1.0),
        (1.0, 3.0),
        (1.0, 11.0),
        (1.0, 21.0),
        (5.0, 25.0),
    ] {
        let state = past_state(&ctx, "pipi", t2, t1)?;
        let (c_s, c_l) = basis.decompose(&state);
        println!(
            "{t1:>8.1} {t2:>8.1} {:>14.6e} {:>14.6e} {:>12.3e}",
            c_s.norm(),
            c_l.norm(),
            c_l.norm() / c_s.norm()
        );
    }
    println!("  -> pure K_S for all practical purposes at large t2 - t1 (KS tag):");
    println!("     the composition before the first decay depends on the later");
    println!("     observation of the partner, and only through t2 - t1");
    Ok(())
}
