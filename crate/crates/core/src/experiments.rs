//! Figure-level drivers: parameter sweeps and the invariance/witness checks.
//!
//! Every driver is a pure function of its arguments. Grid points are
//! evaluated in parallel and the resulting rows are sorted by
//! `(beta, s, lambda, u2)`, so output does not depend on scheduling.

use rayon::prelude::*;

use crate::dynamics::{
    commutator_norm, eigenspace_leakage, embed, interaction_pair, partial_cnot, run_scenario,
    scenario_switch, swap_cm, switch_unitary, Unitary,
};
use crate::error::Result;
use crate::info::{max_over_encoding, scenario_mutual_info, DEFAULT_ENCODING_GRID};
use crate::matcore::{
    kron, kron_all, partial_trace, state_fidelity, trace_distance, ComplexMatrix, DensityMatrix,
};
use crate::states::{
    assemble_initial, basis_state, control_state, gibbs_qubit, register, Hamiltonian,
    InteractionKind, InverseTemperature, ScenarioConfig,
};
use crate::thermo::{coherence_free_energy, EntropyUnit};

/// Note attached to the reference rows whose `i_bits_maxp` is the
/// switch-OFF capacity curve.
pub const BOUND_OFF_NOTE: &str = "bound_off";

/// `p = 1/2` unless stated otherwise.
pub const DEFAULT_P: f64 = 0.5;

/// `{0, 0.1, …, 1}`.
pub fn default_s_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

/// The two temperature extremes, `T = ∞` and `T = 0`.
pub fn extreme_betas() -> Vec<InverseTemperature> {
    vec![InverseTemperature::ZERO, InverseTemperature::Infinite]
}

/// One row of a result table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub beta: InverseTemperature,
    pub s: f64,
    pub lambda: f64,
    pub p: f64,
    pub u2_kind: InteractionKind,
    pub i_bits: f64,
    /// `I` maximized over the encoding prior `p`.
    pub i_bits_maxp: f64,
    pub coherence_cost_bits: f64,
    /// Only set on witness rows.
    pub witness_distance: Option<f64>,
    pub notes: String,
}

impl SweepRow {
    pub fn beta_label(&self) -> String {
        self.beta.label()
    }

    /// Mutual information at `cfg`, its maximum over `p`, and no cost.
    pub fn measure(cfg: &ScenarioConfig) -> Result<Self> {
        let i_bits = scenario_mutual_info(cfg)?.i_bits;
        let i_bits_maxp = max_over_encoding(cfg, DEFAULT_ENCODING_GRID)?.i_star;
        Ok(Self {
            beta: cfg.beta,
            s: cfg.s,
            lambda: cfg.lambda,
            p: cfg.p,
            u2_kind: cfg.u2_kind,
            i_bits,
            i_bits_maxp,
            coherence_cost_bits: 0.0,
            witness_distance: None,
            notes: String::new(),
        })
    }
}

/// Orders rows by `(beta, s, lambda, u2)`.
pub fn sort_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| {
        a.beta
            .partial_cmp(&b.beta)
            .expect("beta ordering is total")
            .then(a.s.total_cmp(&b.s))
            .then(a.lambda.total_cmp(&b.lambda))
            .then(a.u2_kind.cmp(&b.u2_kind))
    });
}

fn measure_all(configs: Vec<ScenarioConfig>) -> Result<Vec<SweepRow>> {
    let mut rows = configs
        .par_iter()
        .map(SweepRow::measure)
        .collect::<Result<Vec<_>>>()?;
    sort_rows(&mut rows);
    Ok(rows)
}

/// Generic sweep over `(β, s)` at fixed `λ`, `p` and `U₂` kind.
pub fn sweep(
    betas: &[InverseTemperature],
    s_grid: &[f64],
    lambda: f64,
    p: f64,
    u2_kind: InteractionKind,
) -> Result<Vec<SweepRow>> {
    let mut configs = Vec::new();
    for &beta in betas {
        for &s in s_grid {
            configs.push(ScenarioConfig::new(beta, s, lambda, p, u2_kind)?);
        }
    }
    measure_all(configs)
}

/// Mutual information with the switch OFF and ON across thermalization
/// strengths. The `λ = 0` rows' `i_bits_maxp` is the OFF capacity bound.
pub fn fig2_sweep(
    betas: &[InverseTemperature],
    s_grid: &[f64],
    lambdas: &[f64],
    p: f64,
) -> Result<Vec<SweepRow>> {
    let mut configs = Vec::new();
    for &beta in betas {
        for &s in s_grid {
            for &lambda in lambdas {
                configs.push(ScenarioConfig::new(
                    beta,
                    s,
                    lambda,
                    p,
                    InteractionKind::PartialSwap,
                )?);
            }
        }
    }
    measure_all(configs)
}

/// Energy-conservation diagnostics of the all-swap `L` at one `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCheck {
    pub s: f64,
    /// `⟨n|L|n⟩⟨n|L†|n⟩` for `n = 0..16`.
    pub fidelities: Vec<f64>,
    pub leakage: f64,
    pub commutator: f64,
}

impl EnergyCheck {
    pub fn mean_fidelity(&self) -> f64 {
        self.fidelities.iter().sum::<f64>() / self.fidelities.len() as f64
    }
}

pub fn fig3a_energy_check(s_grid: &[f64]) -> Result<Vec<EnergyCheck>> {
    let h = Hamiltonian::total();
    let h_matrix = h.matrix();
    s_grid
        .par_iter()
        .map(|&s| {
            let cfg = ScenarioConfig::swap(InverseTemperature::ZERO, s, 1.0)?;
            let l = scenario_switch(&cfg)?;
            let fidelities = (0..register::DIM)
                .map(|n| {
                    let ket = basis_state(n, register::NQUBITS)?;
                    let out = l.evolve(&ComplexMatrix::projector(&ket)?);
                    state_fidelity(&ket, &out)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(EnergyCheck {
                s,
                fidelities,
                leakage: eigenspace_leakage(&l, &h)?,
                commutator: commutator_norm(&l, &h_matrix)?,
            })
        })
        .collect()
}

/// `τ^{⊗4}` on the full register.
pub fn gibbs_register(beta: InverseTemperature) -> Result<DensityMatrix> {
    let tau = gibbs_qubit(beta);
    kron_all(&[&tau, &tau, &tau, &tau])
}

/// `‖L τ^{⊗4} L† − τ^{⊗4}‖_tr`.
pub fn gibbs_invariance_distance(l: &Unitary, beta: InverseTemperature) -> Result<f64> {
    let tau4 = gibbs_register(beta)?;
    trace_distance(&l.evolve(&tau4), &tau4)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsCheck {
    pub beta: InverseTemperature,
    pub s: f64,
    pub distance: f64,
}

pub fn fig3b_gibbs_check(s: f64, betas: &[InverseTemperature]) -> Result<Vec<GibbsCheck>> {
    let l = scenario_switch(&ScenarioConfig::swap(InverseTemperature::ZERO, s, 1.0)?)?;
    betas
        .iter()
        .map(|&beta| {
            Ok(GibbsCheck {
                beta,
                s,
                distance: gibbs_invariance_distance(&l, beta)?,
            })
        })
        .collect()
}

/// Output of `tr_C ∘ S_CM ∘ 𝒮_σC(ℰ₁, ℰ₂)` on `τ_M`, compared with `τ_M`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessResult {
    pub s: f64,
    pub beta: InverseTemperature,
    pub m_state: DensityMatrix,
    pub tau_m: DensityMatrix,
    pub distance: f64,
}

/// Final `(C, M, E1, E2)` state of the all-swap switch on `σ_C ⊗ ρ_M ⊗ τ ⊗ τ`.
fn switched_joint(
    s: f64,
    beta: InverseTemperature,
    sigma_c: &DensityMatrix,
    rho_m: &DensityMatrix,
) -> Result<DensityMatrix> {
    let l = scenario_switch(&ScenarioConfig::swap(beta, s, 0.0)?)?;
    Ok(l.evolve(&assemble_initial(sigma_c, rho_m, beta)?))
}

/// `tr_{C,E}(L(σ_C ⊗ ρ_M ⊗ τ ⊗ τ)L†)`: the switched channel seen on `M`.
pub fn switched_channel(
    s: f64,
    beta: InverseTemperature,
    sigma_c: &DensityMatrix,
    rho_m: &DensityMatrix,
) -> Result<DensityMatrix> {
    let joint = switched_joint(s, beta, sigma_c, rho_m)?;
    partial_trace(&joint, register::NQUBITS, &[register::M])
}

/// Non-free witness with an arbitrary control state.
pub fn witness_for_control(
    s: f64,
    beta: InverseTemperature,
    sigma_c: &DensityMatrix,
) -> Result<WitnessResult> {
    let tau_m = gibbs_qubit(beta);
    let joint = switched_joint(s, beta, sigma_c, &tau_m)?;
    let swapped = swap_cm().evolve(&joint);
    let m_state = partial_trace(&swapped, register::NQUBITS, &[register::M])?;
    let distance = trace_distance(&m_state, &tau_m)?;
    Ok(WitnessResult {
        s,
        beta,
        m_state,
        tau_m,
        distance,
    })
}

/// Non-free witness with the control in `|+⟩`.
pub fn fig3c_witness(s: f64, beta: InverseTemperature) -> Result<WitnessResult> {
    witness_for_control(s, beta, &control_state(1.0)?)
}

/// Witness rows for the CSV output (`λ = 1`, `p = 1/2`).
pub fn fig3c_rows(s_grid: &[f64], beta: InverseTemperature) -> Result<Vec<SweepRow>> {
    let mut rows = s_grid
        .par_iter()
        .map(|&s| {
            let cfg = ScenarioConfig::swap(beta, s, 1.0)?;
            let mut row = SweepRow::measure(&cfg)?;
            row.witness_distance = Some(fig3c_witness(s, beta)?.distance);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    sort_rows(&mut rows);
    Ok(rows)
}

/// Capacity gain of the switch and the coherence free energy it uses up.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceCost {
    pub gain_bits: f64,
    /// `F_coh(σ_C)/kT` of the initial control, bits.
    pub initial_bits: f64,
    /// Initial minus final `F_coh/kT` of the message-averaged control marginal.
    pub cost_bits: f64,
    /// Same, per message label.
    pub cost_per_message_bits: Vec<(usize, f64)>,
}

/// Gain and coherence cost with the switch fully ON (`λ = 1`).
pub fn coherence_cost(cfg: &ScenarioConfig) -> Result<CoherenceCost> {
    let on = cfg.with_lambda(1.0)?;
    let h_c = Hamiltonian::qubit();
    let to_bits = |nats: f64| EntropyUnit::Bits.from_nats(nats);

    let initial_bits = to_bits(coherence_free_energy(&control_state(1.0)?, &h_c)?);
    let controls = run_scenario(&on)?.reduced(&[register::C])?;
    let final_bits = to_bits(coherence_free_energy(&controls.average(), &h_c)?);
    let cost_per_message_bits = controls
        .members()
        .iter()
        .map(|m| {
            Ok((
                m.label,
                initial_bits - to_bits(coherence_free_energy(&m.state, &h_c)?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CoherenceCost {
        gain_bits: crate::info::capacity_gain(cfg)?,
        initial_bits,
        cost_bits: initial_bits - final_bits,
        cost_per_message_bits,
    })
}

/// Per `s`: a `λ = 0` row and a `λ = 1` row; the latter carries the
/// coherence cost and, in `notes`, the gain and per-message costs.
pub fn fig3d_gain_vs_cost(s_grid: &[f64], beta: InverseTemperature) -> Result<Vec<SweepRow>> {
    let per_s = s_grid
        .par_iter()
        .map(|&s| {
            let off_cfg = ScenarioConfig::swap(beta, s, 0.0)?;
            let on_cfg = off_cfg.with_lambda(1.0)?;
            let off = SweepRow::measure(&off_cfg)?;
            let mut on = SweepRow::measure(&on_cfg)?;
            let cost = coherence_cost(&off_cfg)?;
            on.coherence_cost_bits = cost.cost_bits;
            let per_message: Vec<String> = cost
                .cost_per_message_bits
                .iter()
                .map(|(a, c)| format!("cost_a{a}_bits={}", crate::cli::format_sig(*c)))
                .collect();
            on.notes = format!(
                "gain_bits={};{}",
                crate::cli::format_sig(cost.gain_bits),
                per_message.join(";")
            );
            Ok([off, on])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<SweepRow> = per_s.into_iter().flatten().collect();
    sort_rows(&mut rows);
    Ok(rows)
}

/// Partial swap vs partial CNOT for `U₂` with the switch ON, plus the
/// switch-OFF swap rows as the reference bound.
pub fn fig4_cnot_sweep(s_grid: &[f64], beta: InverseTemperature) -> Result<Vec<SweepRow>> {
    let mut configs = Vec::new();
    for &s in s_grid {
        for kind in [InteractionKind::PartialSwap, InteractionKind::PartialCnot] {
            configs.push(ScenarioConfig::new(beta, s, 1.0, DEFAULT_P, kind)?);
        }
        configs.push(ScenarioConfig::swap(beta, s, 0.0)?);
    }
    let mut rows = measure_all(configs)?;
    for row in rows.iter_mut().filter(|r| r.lambda == 0.0) {
        row.notes = BOUND_OFF_NOTE.to_string();
    }
    Ok(rows)
}

/// `‖U₂(τ_M ⊗ τ_E2)U₂† − τ_M ⊗ τ_E2‖_tr` for the partial CNOT.
pub fn cnot_gibbs_deviation(theta: f64, beta: InverseTemperature) -> Result<f64> {
    let tau = gibbs_qubit(beta);
    let pair = kron(&tau, &tau)?;
    let u2 = partial_cnot(theta);
    trace_distance(&u2.evolve(&pair), &pair)
}

/// `[U₂, H_M + H_E2]` for the embedded partial CNOT.
pub fn cnot_commutator(theta: f64) -> Result<f64> {
    let u2 = embed(
        &partial_cnot(theta),
        &[register::M, register::E2],
        register::NQUBITS,
    )?;
    let h = crate::dynamics::interaction_hamiltonian(register::E2)?;
    commutator_norm(&u2, &h.matrix())
}

/// `L` built from embedded interactions with a caller-supplied builder; used
/// to run the invariance checks against alternative switch constructions.
pub fn switch_with(
    builder: impl Fn(&Unitary, &Unitary) -> Result<Unitary>,
    s: f64,
    u2_kind: InteractionKind,
) -> Result<Unitary> {
    let (u1, u2) = interaction_pair(s.asin(), u2_kind)?;
    builder(&u1, &u2)
}

/// The standard builder, for symmetry with [`switch_with`].
pub fn standard_switch(u1: &Unitary, u2: &Unitary) -> Result<Unitary> {
    switch_unitary(u1, u2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(b: f64) -> InverseTemperature {
        InverseTemperature::finite(b).unwrap()
    }

    #[test]
    fn fig2_endpoint_rows() {
        let rows = fig2_sweep(&[InverseTemperature::ZERO], &[0.0, 1.0], &[0.0, 1.0], 0.5).unwrap();
        assert_eq!(rows.len(), 4);
        let find = |s: f64, l: f64| rows.iter().find(|r| r.s == s && r.lambda == l).unwrap();
        assert!((find(0.0, 0.0).i_bits - 1.0).abs() < 1e-12);
        assert!(find(1.0, 0.0).i_bits.abs() < 1e-12);
    }

    #[test]
    fn fig2_switch_beats_off_capacity_at_strong_thermalization() {
        for b in extreme_betas() {
            let rows = fig2_sweep(&[b], &[0.9, 1.0], &[0.0, 1.0], 0.5).unwrap();
            for s in [0.9, 1.0] {
                let on = rows.iter().find(|r| r.s == s && r.lambda == 1.0).unwrap();
                let off = rows.iter().find(|r| r.s == s && r.lambda == 0.0).unwrap();
                assert!(on.i_bits > off.i_bits_maxp, "beta={b} s={s}");
            }
        }
    }

    #[test]
    fn fig3a_fidelity_examples() {
        let checks = fig3a_energy_check(&[0.0, 0.5, 1.0]).unwrap();
        for c in &checks {
            assert!((c.fidelities[0] - 1.0).abs() < 1e-12);
            assert!((c.fidelities[15] - 1.0).abs() < 1e-12);
            assert!(c.leakage < 1e-12);
        }
        assert!(checks[2].fidelities[4] < 1e-12);
        assert!(checks[0]
            .fidelities
            .iter()
            .all(|&f| (f - 1.0).abs() < 1e-12));
    }

    #[test]
    fn fig3b_examples() {
        let checks = fig3b_gibbs_check(1.0, &extreme_betas()).unwrap();
        assert!(checks.iter().all(|c| c.distance < 1e-12));
        let checks = fig3b_gibbs_check(0.6, &[beta(1.0)]).unwrap();
        assert!(checks[0].distance < 1e-12);
    }

    #[test]
    fn fig3c_anchor() {
        let w = fig3c_witness(1.0, InverseTemperature::ZERO).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[0.5, 0.125], &[0.125, 0.5]]).unwrap();
        assert!(w.m_state.max_abs_diff(&want) < 1e-12);
        assert!((w.distance - 0.125).abs() < 1e-12);
    }

    #[test]
    fn fig3c_without_interaction_hands_back_the_control() {
        // S_CM moves the untouched |+⟩ control into M.
        let w = fig3c_witness(0.0, InverseTemperature::ZERO).unwrap();
        assert!(w.m_state.max_abs_diff(&control_state(1.0).unwrap()) < 1e-14);
        assert!((w.distance - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fig3c_definite_order_control() {
        let off = control_state(0.0).unwrap();
        // At T = 0 the |0⟩ control is the Gibbs state, so nothing is witnessed.
        let w = witness_for_control(1.0, InverseTemperature::Infinite, &off).unwrap();
        assert!(w.distance < 1e-12);
        // The definite-order channel itself is Gibbs preserving at every β.
        for b in [
            InverseTemperature::ZERO,
            beta(0.5),
            beta(1.0),
            InverseTemperature::Infinite,
        ] {
            for s in [0.0, 0.4, 1.0] {
                let tau = gibbs_qubit(b);
                let out = switched_channel(s, b, &off, &tau).unwrap();
                assert!(trace_distance(&out, &tau).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn fig3d_examples() {
        let rows = fig3d_gain_vs_cost(&[0.0, 0.6], InverseTemperature::ZERO).unwrap();
        assert_eq!(rows.len(), 4);
        let on0 = rows.iter().find(|r| r.s == 0.0 && r.lambda == 1.0).unwrap();
        assert!(on0.coherence_cost_bits.abs() < 1e-12);
        let on6 = rows.iter().find(|r| r.s == 0.6 && r.lambda == 1.0).unwrap();
        assert!(on6.coherence_cost_bits > 1e-6);
        assert!(on6.notes.starts_with("gain_bits="));

        let c = coherence_cost(&ScenarioConfig::swap(InverseTemperature::ZERO, 0.0, 0.0).unwrap())
            .unwrap();
        assert!((c.initial_bits - 1.0).abs() < 1e-12);
        assert!(c.gain_bits.abs() < 1e-12);
    }

    #[test]
    fn fig4_examples() {
        let rows = fig4_cnot_sweep(&[0.0, 0.6], InverseTemperature::Infinite).unwrap();
        assert_eq!(rows.len(), 6);
        for r in rows.iter().filter(|r| r.s == 0.0) {
            assert!((r.i_bits - 1.0).abs() < 1e-12);
        }
        let pick = |kind| {
            rows.iter()
                .find(|r| r.s == 0.6 && r.lambda == 1.0 && r.u2_kind == kind)
                .unwrap()
                .i_bits
        };
        assert!(pick(InteractionKind::PartialCnot) > pick(InteractionKind::PartialSwap));
        assert_eq!(rows.iter().filter(|r| r.notes == BOUND_OFF_NOTE).count(), 2);
    }

    #[test]
    fn cnot_gibbs_preservation_only_at_extremes() {
        let theta = std::f64::consts::FRAC_PI_4;
        assert!(cnot_gibbs_deviation(theta, InverseTemperature::ZERO).unwrap() < 1e-12);
        assert!(cnot_gibbs_deviation(theta, InverseTemperature::Infinite).unwrap() < 1e-12);
        assert!(cnot_gibbs_deviation(theta, beta(1.0)).unwrap() > 1e-3);
        assert!(cnot_commutator(theta).unwrap() > 0.1);
    }
}
