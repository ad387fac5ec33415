//! The dense linear-algebra layer on its own: tensor products, partial
//! traces, eigendecomposition and entropies.

use switchthermo::matcore::{hermitian_eig, kron, partial_trace, trace_distance, ComplexMatrix};
use switchthermo::thermo::{vn_entropy, EntropyUnit};

pub fn run() -> switchthermo::Result<()> {
    let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])?;
    let mixed = ComplexMatrix::from_real_diagonal(&[0.5, 0.5])?;
    let joint = kron(&plus, &mixed)?;

    let back = partial_trace(&joint, 2, &[0])?;
    println!(
        "tr_2(|+><+| x I/2) recovers |+><+|: {}",
        trace_distance(&back, &plus)? < 1e-15
    );

    let spec = hermitian_eig(&joint)?;
    println!("spectrum of the product: {:?}", spec.eigenvalues);
    println!(
        "S(|+><+|) = {:.3} bits, S(I/2) = {:.3} bits, S(joint) = {:.3} bits",
        vn_entropy(&plus, EntropyUnit::Bits)?,
        vn_entropy(&mixed, EntropyUnit::Bits)?,
        vn_entropy(&joint, EntropyUnit::Bits)?
    );
    Ok(())
}

fn main() -> switchthermo::Result<()> {
    run()
}
