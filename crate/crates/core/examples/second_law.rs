//! With an incoherent control the switch acts as a thermal operation on the
//! message, so its free energy cannot increase. A hotter environment can pump
//! free energy in, which is why the bath temperature must match.

use switchthermo::experiments::switched_channel;
use switchthermo::states::{control_state, gibbs_qubit, Hamiltonian, InverseTemperature};
use switchthermo::thermo::second_law_check;

pub fn run() -> switchthermo::Result<()> {
    let h = Hamiltonian::qubit();
    let beta = InverseTemperature::finite(1.0)?;
    let excited = switchthermo::matcore::ComplexMatrix::from_real_diagonal(&[0.2, 0.8])?;
    for s in [0.2, 0.6, 1.0] {
        let out = switched_channel(s, beta, &control_state(0.0)?, &excited)?;
        let r = second_law_check(&excited, &out, &h, beta, 1e-10)?;
        println!(
            "s={s}  F/kT: {:.6} -> {:.6}  holds={}",
            r.before.f_over_kt, r.after.f_over_kt, r.holds
        );
    }
    let cold = gibbs_qubit(beta);
    let hot_out = switched_channel(1.0, InverseTemperature::ZERO, &control_state(0.0)?, &cold)?;
    let r = second_law_check(&cold, &hot_out, &h, beta, 1e-10)?;
    println!(
        "Gibbs state in a hotter bath: dF/kT = {:.6}, holds={}",
        r.delta_f_over_kt, r.holds
    );
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
