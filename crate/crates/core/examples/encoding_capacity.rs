//! Optimizing the encoding probability `p` with and without the switch.

use switchthermo::info::{capacity_gain, max_over_encoding, DEFAULT_ENCODING_GRID};
use switchthermo::states::{InverseTemperature, ScenarioConfig};

pub fn run() -> switchthermo::Result<()> {
    for beta in [InverseTemperature::ZERO, InverseTemperature::Infinite] {
        for s in [0.5, 0.9] {
            let off = ScenarioConfig::swap(beta, s, 0.0)?;
            let on = off.with_lambda(1.0)?;
            let best_off = max_over_encoding(&off, DEFAULT_ENCODING_GRID)?;
            let best_on = max_over_encoding(&on, DEFAULT_ENCODING_GRID)?;
            println!(
                "beta={beta:<3} s={s}  OFF: p*={:.4} I*={:.6}  ON: p*={:.4} I*={:.6}  gain at p=1/2: {:.6}",
                best_off.p_star,
                best_off.i_star,
                best_on.p_star,
                best_on.i_star,
                capacity_gain(&off)?
            );
        }
    }
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
