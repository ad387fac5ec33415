//! The switch with a coherent control is not a thermal operation: after
//! swapping control and message, the message no longer returns to Gibbs.
//! With an incoherent control the witness stays at the classical value.

use switchthermo::experiments::{fig3c_witness, witness_for_control};
use switchthermo::states::{control_state, InverseTemperature};

pub fn run() -> switchthermo::Result<()> {
    let beta = InverseTemperature::ZERO;
    for s in [0.0, 0.5, 0.9, 1.0] {
        let coherent = fig3c_witness(s, beta)?;
        let classical = witness_for_control(s, beta, &control_state(0.0)?)?;
        println!(
            "s={s:.1}  distance(|+> control)={:.6}  distance(|0> control)={:.6}",
            coherent.distance, classical.distance
        );
    }
    let w = fig3c_witness(1.0, beta)?;
    println!("M at s=1: {:?}", w.m_state);
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
