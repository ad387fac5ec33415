//! The global Gibbs state is a fixed point of the switch unitary at any
//! temperature.

use switchthermo::experiments::fig3b_gibbs_check;
use switchthermo::states::InverseTemperature;

pub fn run() -> switchthermo::Result<()> {
    let betas = [
        InverseTemperature::ZERO,
        InverseTemperature::finite(0.5)?,
        InverseTemperature::finite(1.0)?,
        InverseTemperature::finite(3.0)?,
        InverseTemperature::Infinite,
    ];
    for s in [0.3, 0.7, 1.0] {
        for c in fig3b_gibbs_check(s, &betas)? {
            println!(
                "s={:.1} beta={:<4} ||L tau L^+ - tau||_1 = {:.2e}",
                c.s, c.beta, c.distance
            );
        }
    }
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
