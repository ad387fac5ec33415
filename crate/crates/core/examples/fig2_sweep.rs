//! Mutual information `I(A:CM)` with the switch OFF (`λ = 0`) and ON (`λ = 1`)
//! at infinite and zero temperature.

use switchthermo::experiments::{default_s_grid, extreme_betas, fig2_sweep, DEFAULT_P};

pub fn run() -> switchthermo::Result<()> {
    let rows = fig2_sweep(&extreme_betas(), &default_s_grid(), &[0.0, 1.0], DEFAULT_P)?;
    println!(
        "{:>5} {:>5} {:>8} {:>12}",
        "beta", "s", "lambda", "I (bits)"
    );
    for r in &rows {
        println!(
            "{:>5} {:>5.2} {:>8} {:>12.8}",
            r.beta_label(),
            r.s,
            r.lambda,
            r.i_bits
        );
    }
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
