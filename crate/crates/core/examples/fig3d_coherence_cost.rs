//! Capacity gain of the switch against the coherence free energy it consumes
//! from the control.

use switchthermo::experiments::{coherence_cost, default_s_grid, extreme_betas};
use switchthermo::states::ScenarioConfig;

pub fn run() -> switchthermo::Result<()> {
    for beta in extreme_betas() {
        for s in default_s_grid() {
            let c = coherence_cost(&ScenarioConfig::swap(beta, s, 1.0)?)?;
            println!(
                "beta={beta:<3} s={s:.1}  gain={:.6} bits  cost={:.6} bits of {:.1}",
                c.gain_bits, c.cost_bits, c.initial_bits
            );
        }
    }
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
