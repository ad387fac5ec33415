//! Replacing the second thermalization by a partial CNOT, which preserves the
//! Gibbs state but not energy, boosts the transmitted information at zero
//! temperature.

use switchthermo::experiments::{cnot_commutator, default_s_grid, fig4_cnot_sweep};
use switchthermo::states::{InteractionKind, InverseTemperature};

pub fn run() -> switchthermo::Result<()> {
    let rows = fig4_cnot_sweep(&default_s_grid(), InverseTemperature::Infinite)?;
    for s in default_s_grid() {
        let pick = |lambda: f64, kind: InteractionKind| {
            rows.iter()
                .find(|r| r.s == s && r.lambda == lambda && r.u2_kind == kind)
                .expect("row present")
        };
        println!(
            "s={s:.1}  swap={:.6}  cnot={:.6}  OFF bound={:.6}",
            pick(1.0, InteractionKind::PartialSwap).i_bits,
            pick(1.0, InteractionKind::PartialCnot).i_bits,
            pick(0.0, InteractionKind::PartialSwap).i_bits_maxp
        );
    }
    println!(
        "||[U2, H]|| at theta=pi/4: {:.4}",
        cnot_commutator(std::f64::consts::FRAC_PI_4)?
    );
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
