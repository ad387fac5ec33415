//! Every energy eigenstate of the register is mapped into its own eigenspace
//! by the switch unitary, even though individual basis states get mixed.

use switchthermo::experiments::{default_s_grid, fig3a_energy_check};

pub fn run() -> switchthermo::Result<()> {
    for check in fig3a_energy_check(&default_s_grid())? {
        println!(
            "s={:.1}  mean basis fidelity={:.6}  leakage={:.1e}  ||[L,H]||={:.1e}",
            check.s,
            check.mean_fidelity(),
            check.leakage,
            check.commutator
        );
    }
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
