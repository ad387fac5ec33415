//! Entropy, free energy, dephasing and the coherence contribution to free energy.
//!
//! Thermodynamic quantities are reported in nats (units of `kT` once divided
//! by temperature); information quantities elsewhere default to bits.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, is_density, ComplexMatrix, DensityMatrix, PHYSICAL_TOL};
use crate::states::{Hamiltonian, InverseTemperature};

/// Eigenvalues at or below this are treated as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyUnit {
    Bits,
    Nats,
}

impl EntropyUnit {
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            EntropyUnit::Bits => nats / LN_2,
            EntropyUnit::Nats => nats,
        }
    }
}

fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    -eigenvalues
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// Von Neumann entropy `−tr ρ log ρ`.
pub fn vn_entropy(rho: &DensityMatrix, unit: EntropyUnit) -> Result<f64> {
    let check = is_density(rho, PHYSICAL_TOL);
    if !check.is_valid() {
        return Err(Error::contract(format!("not a density matrix: {check:?}")));
    }
    let spec = hermitian_eig(rho)?;
    Ok(unit.from_nats(entropy_of_spectrum(&spec.eigenvalues).max(0.0)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEnergyReport {
    pub mean_energy: f64,
    pub entropy_nats: f64,
    /// `β·⟨H⟩ − S` for finite β. At `β = ∞` this is the limit of that
    /// expression: `±∞` by the sign of `⟨H⟩`, or `−S` when `⟨H⟩ = 0`.
    pub f_over_kt: f64,
}

/// `F(ρ) = tr(ρH) − kT S(ρ)`, reported as energy, entropy and `F/kT`.
pub fn free_energy(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    beta: InverseTemperature,
) -> Result<FreeEnergyReport> {
    if rho.dim() != h.dim() {
        return Err(Error::Size(
            "state and Hamiltonian differ in dimension".into(),
        ));
    }
    let mean_energy = h.mean_energy(rho);
    let entropy_nats = vn_entropy(rho, EntropyUnit::Nats)?;
    let f_over_kt = match beta {
        InverseTemperature::Finite(b) => b * mean_energy - entropy_nats,
        InverseTemperature::Infinite if mean_energy > 0.0 => f64::INFINITY,
        InverseTemperature::Infinite if mean_energy < 0.0 => f64::NEG_INFINITY,
        InverseTemperature::Infinite => -entropy_nats,
    };
    Ok(FreeEnergyReport {
        mean_energy,
        entropy_nats,
        f_over_kt,
    })
}

/// Pinching `Σ_E P_E ρ P_E` over the eigenspaces of `h`.
///
/// For degenerate `h` the coherences inside an eigenspace survive; only
/// blocks between different energies are removed.
pub fn dephase(rho: &DensityMatrix, h: &Hamiltonian) -> Result<DensityMatrix> {
    if rho.dim() != h.dim() {
        return Err(Error::Size(
            "state and Hamiltonian differ in dimension".into(),
        ));
    }
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n)?;
    for r in 0..n {
        for c in 0..n {
            if h.level(r) == h.level(c) {
                out.set(r, c, rho.get(r, c));
            }
        }
    }
    Ok(out)
}

/// `F_coh(ρ)/kT = S(D_H(ρ)) − S(ρ)` in nats.
///
/// Pinching preserves `tr(ρH)`, so the energy terms cancel and the result is
/// independent of temperature.
pub fn coherence_free_energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    let dephased = dephase(rho, h)?;
    let gap = vn_entropy(&dephased, EntropyUnit::Nats)? - vn_entropy(rho, EntropyUnit::Nats)?;
    Ok(gap.max(0.0))
}

/// Relative entropy `tr ρ (ln ρ − ln σ)` in nats; `+∞` if the support of `ρ`
/// is not contained in the support of `σ`.
pub fn rel_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Size(
            "relative entropy of states with different dimension".into(),
        ));
    }
    let r = hermitian_eig(rho)?;
    let s = hermitian_eig(sigma)?;
    let n = rho.dim();

    let mut cross = 0.0;
    for (i, &ri) in r.eigenvalues.iter().enumerate() {
        if ri <= SUPPORT_TOL {
            continue;
        }
        let vi = r.eigenvector(i);
        for (j, &sj) in s.eigenvalues.iter().enumerate() {
            let vj = s.eigenvector(j);
            let overlap = (0..n)
                .map(|k| vi[k].conj() * vj[k])
                .sum::<num_complex::Complex64>()
                .norm_sqr();
            if overlap <= SUPPORT_TOL {
                continue;
            }
            if sj <= SUPPORT_TOL {
                return Ok(f64::INFINITY);
            }
            cross += ri * overlap * sj.ln();
        }
    }
    let neg_entropy: f64 = r
        .eigenvalues
        .iter()
        .filter(|&&x| x > SUPPORT_TOL)
        .map(|&x| x * x.ln())
        .sum();
    Ok((neg_entropy - cross).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondLawReport {
    pub before: FreeEnergyReport,
    pub after: FreeEnergyReport,
    /// `ΔF/kT`. At `β = ∞` this is `±∞` unless the energies tie within `tol`,
    /// in which case it is `−ΔS`.
    pub delta_f_over_kt: f64,
    pub holds: bool,
}

/// Checks `F(ρ_out) − F(ρ_in) ≤ 0` up to `tol` (in units of `kT`).
///
/// At zero temperature the comparison is lexicographic in
/// `(⟨H⟩, −S)`, the limit ordering of `β⟨H⟩ − S`.
pub fn second_law_check(
    rho_in: &DensityMatrix,
    rho_out: &DensityMatrix,
    h: &Hamiltonian,
    beta: InverseTemperature,
    tol: f64,
) -> Result<SecondLawReport> {
    if rho_in.dim() != rho_out.dim() {
        return Err(Error::Size(
            "input and output states differ in dimension".into(),
        ));
    }
    let before = free_energy(rho_in, h, beta)?;
    let after = free_energy(rho_out, h, beta)?;
    let delta_f_over_kt = match beta {
        InverseTemperature::Finite(_) => after.f_over_kt - before.f_over_kt,
        InverseTemperature::Infinite => {
            let de = after.mean_energy - before.mean_energy;
            if de > tol {
                f64::INFINITY
            } else if de < -tol {
                f64::NEG_INFINITY
            } else {
                before.entropy_nats - after.entropy_nats
            }
        }
    };
    Ok(SecondLawReport {
        before,
        after,
        delta_f_over_kt,
        holds: delta_f_over_kt <= tol,
    })
}
