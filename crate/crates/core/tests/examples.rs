//! Every example runs to completion.

#[allow(dead_code)]
#[path = "../examples/encoding_capacity.rs"]
mod encoding_capacity;

#[allow(dead_code)]
#[path = "../examples/fig2_sweep.rs"]
mod fig2_sweep;

#[allow(dead_code)]
#[path = "../examples/fig3a_energy.rs"]
mod fig3a_energy;

#[allow(dead_code)]
#[path = "../examples/fig3b_gibbs.rs"]
mod fig3b_gibbs;

#[allow(dead_code)]
#[path = "../examples/fig3c_witness.rs"]
mod fig3c_witness;

#[allow(dead_code)]
#[path = "../examples/fig3d_coherence_cost.rs"]
mod fig3d_coherence_cost;

#[allow(dead_code)]
#[path = "../examples/fig4_partial_cnot.rs"]
mod fig4_partial_cnot;

#[allow(dead_code)]
#[path = "../examples/matrix_kernel.rs"]
mod matrix_kernel;

#[allow(dead_code)]
#[path = "../examples/second_law.rs"]
mod second_law;

#[allow(dead_code)]
#[path = "../examples/verify_suite.rs"]
mod verify_suite;

#[test]
fn all_examples_run() {
    encoding_capacity::run().unwrap();
    fig2_sweep::run().unwrap();
    fig3a_energy::run().unwrap();
    fig3b_gibbs::run().unwrap();
    fig3c_witness::run().unwrap();
    fig3d_coherence_cost::run().unwrap();
    fig4_partial_cnot::run().unwrap();
    matrix_kernel::run().unwrap();
    second_law::run().unwrap();
    verify_suite::run().unwrap();
}
