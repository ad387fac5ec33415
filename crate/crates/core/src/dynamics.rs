//! Interaction unitaries, the quantum-switch unitary and scenario evolution.
//!
//! The switch is modelled with shared environments: both orders act on the
//! same `E1`, `E2` qubits, and the control `C` selects the order
//!
//! ```text
//! L = |0⟩⟨0|_C ⊗ U₂U₁ + |1⟩⟨1|_C ⊗ U₁U₂
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{
    is_density, partial_trace, ComplexMatrix, DensityMatrix, STRUCTURAL_TOL, ZERO,
};
use crate::states::{
    assemble_initial, control_state, message_ensemble, register, Ensemble, EnsembleMember,
    Hamiltonian, InteractionKind, ScenarioConfig, TotalHamiltonian,
};

/// A unitary acting on `acts_on` within an `nqubits` register.
///
/// A freshly built two-qubit gate has `acts_on = [0, 1]` and `nqubits = 2`;
/// [`embed`] lifts it into the four-qubit register and records its support.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    matrix: ComplexMatrix,
    acts_on: Vec<usize>,
    nqubits: usize,
}

impl Unitary {
    pub fn new(matrix: ComplexMatrix, acts_on: Vec<usize>, nqubits: usize) -> Result<Self> {
        if matrix.dim() != 1 << nqubits {
            return Err(Error::Size(format!(
                "{}x{} matrix on a {nqubits}-qubit register",
                matrix.dim(),
                matrix.dim()
            )));
        }
        let err = matrix.unitarity_error();
        if err > STRUCTURAL_TOL {
            return Err(Error::contract(format!(
                "matrix is not unitary (deviation {err:.3e})"
            )));
        }
        Ok(Self {
            matrix,
            acts_on,
            nqubits,
        })
    }

    /// Skips the unitarity check. Only meant for building deliberately broken
    /// operators when testing that downstream checks catch them.
    pub fn unchecked(matrix: ComplexMatrix, acts_on: Vec<usize>, nqubits: usize) -> Self {
        Self {
            matrix,
            acts_on,
            nqubits,
        }
    }

    pub fn identity(nqubits: usize) -> Result<Self> {
        Self::new(
            ComplexMatrix::identity(1 << nqubits)?,
            (0..nqubits).collect(),
            nqubits,
        )
    }

    fn gate(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.unitarity_error() <= STRUCTURAL_TOL);
        let nqubits = matrix.nqubits();
        Self {
            matrix,
            acts_on: (0..nqubits).collect(),
            nqubits,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn acts_on(&self) -> &[usize] {
        &self.acts_on
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    /// `U ρ U†`.
    pub fn evolve(&self, rho: &DensityMatrix) -> DensityMatrix {
        rho.conjugate_by(&self.matrix)
    }
}

fn swap_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4")
}

/// Control is the first qubit of the pair.
fn cnot_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .expect("4x4")
}

/// `cos θ · I + i sin θ · G` for an involution `G`, i.e. `e^{iθG}`.
fn involution_exponential(theta: f64, g: &ComplexMatrix) -> ComplexMatrix {
    let id = ComplexMatrix::identity(g.dim()).expect("gate dimension is valid");
    &id.scale_real(theta.cos()) + &g.scale(Complex64::new(0.0, theta.sin()))
}

pub fn swap_gate() -> Unitary {
    Unitary::gate(swap_matrix())
}

pub fn cnot_gate() -> Unitary {
    Unitary::gate(cnot_matrix())
}

/// `e^{iθ·SWAP}`. Energy conserving for `H = −σ_z ⊗ I − I ⊗ σ_z`.
pub fn partial_swap(theta: f64) -> Unitary {
    Unitary::gate(involution_exponential(theta, &swap_matrix()))
}

/// `e^{iθ·CNOT}` with the first qubit as control.
pub fn partial_cnot(theta: f64) -> Unitary {
    Unitary::gate(involution_exponential(theta, &cnot_matrix()))
}

pub fn interaction(kind: InteractionKind, theta: f64) -> Unitary {
    match kind {
        InteractionKind::PartialSwap => partial_swap(theta),
        InteractionKind::PartialCnot => partial_cnot(theta),
    }
}

/// Lifts a local gate onto `targets` of an `nqubits` register.
///
/// `targets[k]` receives the gate's local qubit `k`, so `embed(cnot, &[M, E2], 4)`
/// is controlled on `M`.
pub fn embed(u: &Unitary, targets: &[usize], nqubits: usize) -> Result<Unitary> {
    if u.nqubits != u.acts_on.len() {
        return Err(Error::contract(
            "only local (unembedded) gates can be embedded",
        ));
    }
    if targets.len() != u.nqubits {
        return Err(Error::contract(format!(
            "{}-qubit gate given {} targets",
            u.nqubits,
            targets.len()
        )));
    }
    if let Some(q) = targets.iter().find(|&&q| q >= nqubits) {
        return Err(Error::contract(format!(
            "target {q} outside a {nqubits}-qubit register"
        )));
    }
    for (i, q) in targets.iter().enumerate() {
        if targets[..i].contains(q) {
            return Err(Error::contract(format!("target qubit {q} listed twice")));
        }
    }

    let k = targets.len();
    let shift = |q: usize| nqubits - 1 - q;
    let local_index = |full: usize| {
        targets
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((full >> shift(q)) & 1))
    };
    let with_local = |full: usize, local: usize| {
        targets.iter().enumerate().fold(full, |acc, (pos, &q)| {
            let b = (local >> (k - 1 - pos)) & 1;
            (acc & !(1 << shift(q))) | (b << shift(q))
        })
    };

    let dim = 1usize << nqubits;
    let mut out = ComplexMatrix::zeros(dim)?;
    for col in 0..dim {
        let lc = local_index(col);
        for lr in 0..(1 << k) {
            let amp = u.matrix.get(lr, lc);
            if amp != ZERO {
                out.set(with_local(col, lr), col, amp);
            }
        }
    }
    Unitary::new(out, targets.to_vec(), nqubits)
}

/// `L = |0⟩⟨0|_C ⊗ U₂U₁ + |1⟩⟨1|_C ⊗ U₁U₂`.
///
/// `u1` must be embedded on `(M, E1)` and `u2` on `(M, E2)` of the four-qubit
/// register.
pub fn switch_unitary(u1: &Unitary, u2: &Unitary) -> Result<Unitary> {
    check_support(u1, &[register::M, register::E1], "u1")?;
    check_support(u2, &[register::M, register::E2], "u2")?;
    let order_0 = u2.matrix() * u1.matrix();
    let order_1 = u1.matrix() * u2.matrix();
    Unitary::new(
        controlled_blocks(&order_0, &order_1),
        (0..register::NQUBITS).collect(),
        register::NQUBITS,
    )
}

fn check_support(u: &Unitary, expected: &[usize], name: &str) -> Result<()> {
    if u.nqubits != register::NQUBITS || u.acts_on != expected {
        return Err(Error::contract(format!(
            "{name} acts on {:?} of a {}-qubit register, expected {expected:?} of {}",
            u.acts_on,
            u.nqubits,
            register::NQUBITS
        )));
    }
    Ok(())
}

/// Selects `when_0` on the `C = 0` block and `when_1` on the `C = 1` block.
/// Both inputs must act trivially on `C`.
fn controlled_blocks(when_0: &ComplexMatrix, when_1: &ComplexMatrix) -> ComplexMatrix {
    let n = register::DIM;
    let c_bit = |i: usize| (i >> (register::NQUBITS - 1 - register::C)) & 1;
    let mut out = ComplexMatrix::zeros(n).expect("register dimension");
    for r in 0..n {
        for c in 0..n {
            if c_bit(r) != c_bit(c) {
                continue;
            }
            let src = if c_bit(r) == 0 { when_0 } else { when_1 };
            out.set(r, c, src.get(r, c));
        }
    }
    out
}

/// Embedded `(U₁, U₂)` for a configuration: `U₁` a partial swap on `(M, E1)`,
/// `U₂` of the configured kind on `(M, E2)`.
pub fn interaction_pair(theta: f64, u2_kind: InteractionKind) -> Result<(Unitary, Unitary)> {
    let u1 = embed(
        &partial_swap(theta),
        &[register::M, register::E1],
        register::NQUBITS,
    )?;
    let u2 = embed(
        &interaction(u2_kind, theta),
        &[register::M, register::E2],
        register::NQUBITS,
    )?;
    Ok((u1, u2))
}

/// The switch unitary `L` for a configuration.
pub fn scenario_switch(cfg: &ScenarioConfig) -> Result<Unitary> {
    let (u1, u2) = interaction_pair(cfg.theta(), cfg.u2_kind)?;
    switch_unitary(&u1, &u2)
}

/// Final states of a scenario, one per message label.
#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub config: ScenarioConfig,
    pub switch: Unitary,
    /// Ensemble over `(C, M, E1, E2)`.
    pub ensemble: Ensemble,
}

impl ScenarioOutcome {
    pub fn final_state(&self, label: usize) -> Option<&DensityMatrix> {
        self.ensemble
            .members()
            .iter()
            .find(|m| m.label == label)
            .map(|m| &m.state)
    }

    /// Reduces every member to the listed qubits.
    pub fn reduced(&self, keep: &[usize]) -> Result<Ensemble> {
        self.ensemble
            .map_states(|rho| partial_trace(rho, register::NQUBITS, keep))
    }
}

/// Evolves `σ_C(λ) ⊗ ρ_M^a ⊗ τ ⊗ τ` under `L` for each message `a`.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    cfg.validate()?;
    let switch = scenario_switch(cfg)?;
    let sigma_c = control_state(cfg.lambda)?;
    let messages = message_ensemble(cfg.p)?;
    let members = messages
        .members()
        .iter()
        .map(|m| {
            let initial = assemble_initial(&sigma_c, &m.state, cfg.beta)?;
            Ok(EnsembleMember {
                prob: m.prob,
                label: m.label,
                state: switch.evolve(&initial),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScenarioOutcome {
        config: *cfg,
        switch,
        ensemble: Ensemble::new(members)?,
    })
}

/// SWAP on `(C, M)`, identity on the environment.
pub fn swap_cm() -> Unitary {
    embed(&swap_gate(), &[register::C, register::M], register::NQUBITS)
        .expect("register layout is valid")
}

/// `max |(UH − HU)_ij|`.
pub fn commutator_norm(u: &Unitary, h: &ComplexMatrix) -> Result<f64> {
    if u.matrix.dim() != h.dim() {
        return Err(Error::Size(format!(
            "commutator of {}x{} and {}x{}",
            u.matrix.dim(),
            u.matrix.dim(),
            h.dim(),
            h.dim()
        )));
    }
    let uh = u.matrix() * h;
    let hu = h * u.matrix();
    Ok((&uh - &hu).max_abs())
}

/// `max_{E ≠ E'} max |(P_E L P_{E'})_ij|`: how much `L` moves amplitude
/// between distinct energy eigenspaces.
pub fn eigenspace_leakage(l: &Unitary, h: &TotalHamiltonian) -> Result<f64> {
    if l.matrix.dim() != h.dim() {
        return Err(Error::Size(
            "unitary and Hamiltonian differ in dimension".into(),
        ));
    }
    let n = h.dim();
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            if h.level(r) != h.level(c) {
                worst = worst.max(l.matrix.get(r, c).norm());
            }
        }
    }
    Ok(worst)
}

/// `H_M + H_{E_j}` on the four-qubit register.
pub fn interaction_hamiltonian(env: usize) -> Result<Hamiltonian> {
    Hamiltonian::local(register::NQUBITS, &[register::M, env])
}

/// Every member of an outcome passes [`is_density`] at `tol`.
pub fn outcome_is_physical(outcome: &ScenarioOutcome, tol: f64) -> bool {
    outcome
        .ensemble
        .members()
        .iter()
        .all(|m| is_density(&m.state, tol).is_valid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{state_fidelity, ONE};
    use crate::states::{basis_state, InverseTemperature};
    use std::f64::consts::FRAC_PI_2;
    use std::f64::consts::FRAC_PI_4;

    fn i_times(m: &ComplexMatrix) -> ComplexMatrix {
        m.scale(Complex64::new(0.0, 1.0))
    }

    #[test]
    fn partial_swap_endpoints() {
        assert!(
            partial_swap(0.0)
                .matrix()
                .max_abs_diff(&ComplexMatrix::identity(4).unwrap())
                < 1e-15
        );
        assert!(
            partial_swap(FRAC_PI_2)
                .matrix()
                .max_abs_diff(&i_times(&swap_matrix()))
                < 1e-15
        );
    }

    #[test]
    fn partial_swap_action_on_10() {
        let theta = 0.37;
        let out = partial_swap(theta)
            .matrix()
            .apply(&basis_state(0b10, 2).unwrap());
        assert!((out[0b10] - Complex64::new(theta.cos(), 0.0)).norm() < 1e-15);
        assert!((out[0b01] - Complex64::new(0.0, theta.sin())).norm() < 1e-15);
        assert_eq!(out[0b00], ZERO);
        assert_eq!(out[0b11], ZERO);
    }

    #[test]
    fn partial_cnot_endpoints_and_energy() {
        assert!(
            partial_cnot(0.0)
                .matrix()
                .max_abs_diff(&ComplexMatrix::identity(4).unwrap())
                < 1e-15
        );
        assert!(
            partial_cnot(FRAC_PI_2)
                .matrix()
                .max_abs_diff(&i_times(&cnot_matrix()))
                < 1e-15
        );

        let u2 = embed(&partial_cnot(FRAC_PI_4), &[register::M, register::E2], 4).unwrap();
        let h = interaction_hamiltonian(register::E2).unwrap().matrix();
        // |sin(π/4)| · |ΔE| = √2 on the (|10⟩, |11⟩) block
        let norm = commutator_norm(&u2, &h).unwrap();
        assert!(norm > 0.1);
        assert!((norm - 2.0 * FRAC_PI_4.sin()).abs() < 1e-14);
    }

    #[test]
    fn gates_are_unitary_on_theta_grid() {
        for k in 0..=20 {
            let theta = FRAC_PI_2 * k as f64 / 20.0;
            assert!(partial_swap(theta).matrix().unitarity_error() < 1e-14);
            assert!(partial_cnot(theta).matrix().unitarity_error() < 1e-14);
        }
    }

    #[test]
    fn embed_examples() {
        let id = Unitary::identity(2).unwrap();
        let lifted = embed(&id, &[register::M, register::E1], 4).unwrap();
        assert_eq!(lifted.matrix(), &ComplexMatrix::identity(16).unwrap());

        let s = embed(&swap_gate(), &[register::M, register::E1], 4).unwrap();
        let out = s.matrix().apply(&basis_state(0b0100, 4).unwrap());
        assert_eq!(out, basis_state(0b0010, 4).unwrap());

        let ps = embed(&partial_swap(0.8), &[register::M, register::E2], 4).unwrap();
        let out = ps.matrix().apply(&basis_state(0, 4).unwrap());
        // swap fixed point; only the global factor cos θ + i sin θ appears
        assert!((out[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn embed_respects_target_order() {
        // CNOT controlled on E2, target M: |0001⟩ → |0101⟩
        let flipped = embed(&cnot_gate(), &[register::E2, register::M], 4).unwrap();
        let out = flipped.matrix().apply(&basis_state(0b0001, 4).unwrap());
        assert_eq!(out, basis_state(0b0101, 4).unwrap());
    }

    #[test]
    fn embed_rejects_clashes() {
        assert!(matches!(
            embed(&swap_gate(), &[register::M, register::M], 4),
            Err(Error::Contract(_))
        ));
        assert!(embed(&swap_gate(), &[register::M], 4).is_err());
        assert!(embed(&swap_gate(), &[register::M, 7], 4).is_err());
        let already = swap_cm();
        assert!(embed(&already, &[0, 1], 4).is_err());
    }

    #[test]
    fn switch_of_identities_is_identity() {
        let (u1, u2) = interaction_pair(0.0, InteractionKind::PartialSwap).unwrap();
        let l = switch_unitary(&u1, &u2).unwrap();
        assert!(
            l.matrix()
                .max_abs_diff(&ComplexMatrix::identity(16).unwrap())
                < 1e-15
        );
    }

    #[test]
    fn switch_rejects_wrong_supports() {
        let (u1, u2) = interaction_pair(0.3, InteractionKind::PartialSwap).unwrap();
        assert!(matches!(switch_unitary(&u2, &u1), Err(Error::Contract(_))));
        assert!(switch_unitary(&partial_swap(0.3), &u2).is_err());
    }

    #[test]
    fn full_swaps_route_excitation_to_e1() {
        // L|0;100⟩ ∝ |0;010⟩
        let (u1, u2) = interaction_pair(FRAC_PI_2, InteractionKind::PartialSwap).unwrap();
        let l = switch_unitary(&u1, &u2).unwrap();
        let out = l.matrix().apply(&basis_state(0b0100, 4).unwrap());
        let target = basis_state(0b0010, 4).unwrap();
        let overlap: Complex64 = out.iter().zip(&target).map(|(a, b)| a * b.conj()).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-14);
        let rho = ComplexMatrix::projector(&out).unwrap();
        assert!(state_fidelity(&basis_state(0b0100, 4).unwrap(), &rho).unwrap() < 1e-28);
    }

    #[test]
    fn definite_order_branch_equals_u2_u1() {
        let cfg =
            ScenarioConfig::swap(InverseTemperature::finite(0.7).unwrap(), 0.55, 0.0).unwrap();
        let outcome = run_scenario(&cfg).unwrap();
        let (u1, u2) = interaction_pair(cfg.theta(), cfg.u2_kind).unwrap();
        let seq = u2.matrix() * u1.matrix();
        for m in message_ensemble(cfg.p).unwrap().members() {
            let initial =
                assemble_initial(&control_state(0.0).unwrap(), &m.state, cfg.beta).unwrap();
            let expected = initial.conjugate_by(&seq);
            let got = outcome.final_state(m.label).unwrap();
            assert!(got.max_abs_diff(&expected) < 1e-12);
            let c = partial_trace(got, 4, &[register::C]).unwrap();
            assert!((c.get(0, 0) - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn no_interaction_leaves_states_unchanged() {
        let cfg = ScenarioConfig::swap(InverseTemperature::finite(0.4).unwrap(), 0.0, 1.0).unwrap();
        let outcome = run_scenario(&cfg).unwrap();
        for m in message_ensemble(0.5).unwrap().members() {
            let initial =
                assemble_initial(&control_state(1.0).unwrap(), &m.state, cfg.beta).unwrap();
            assert!(outcome.final_state(m.label).unwrap().max_abs_diff(&initial) < 1e-15);
        }
    }

    #[test]
    fn full_thermalization_at_infinite_temperature() {
        let cfg = ScenarioConfig::swap(InverseTemperature::ZERO, 1.0, 0.0).unwrap();
        let reduced = run_scenario(&cfg).unwrap().reduced(&[register::M]).unwrap();
        let half = ComplexMatrix::from_real_diagonal(&[0.5, 0.5]).unwrap();
        for m in reduced.members() {
            assert!(m.state.max_abs_diff(&half) < 1e-12);
        }
    }

    #[test]
    fn swap_cm_examples() {
        let s = swap_cm();
        let out = s.matrix().apply(&basis_state(0b0100, 4).unwrap());
        assert_eq!(out, basis_state(0b1000, 4).unwrap());
        let twice = s.matrix() * s.matrix();
        assert_eq!(twice, ComplexMatrix::identity(16).unwrap());
    }

    #[test]
    fn energy_conservation_of_swaps() {
        let h_total = Hamiltonian::total();
        for k in 0..=10 {
            let theta = FRAC_PI_2 * k as f64 / 10.0;
            let (u1, u2) = interaction_pair(theta, InteractionKind::PartialSwap).unwrap();
            let h1 = interaction_hamiltonian(register::E1).unwrap().matrix();
            assert!(commutator_norm(&u1, &h1).unwrap() < 1e-12);
            let l = switch_unitary(&u1, &u2).unwrap();
            assert!(commutator_norm(&l, &h_total.matrix()).unwrap() < 1e-12);
            assert!(eigenspace_leakage(&l, &h_total).unwrap() < 1e-12);
        }
    }

    #[test]
    fn cnot_switch_leaks_between_eigenspaces() {
        let h = Hamiltonian::total();
        assert_eq!(
            eigenspace_leakage(&Unitary::identity(4).unwrap(), &h).unwrap(),
            0.0
        );
        let (u1, u2) = interaction_pair(FRAC_PI_4, InteractionKind::PartialCnot).unwrap();
        let l = switch_unitary(&u1, &u2).unwrap();
        assert!(eigenspace_leakage(&l, &h).unwrap() > 0.1);
    }
}
