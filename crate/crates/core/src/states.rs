//! Constructors for every state in the switched-thermalization scenario.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{is_density, kron_all, ComplexMatrix, DensityMatrix, ONE, ZERO};

/// Qubit positions in the four-qubit register `(C, M, E1, E2)`.
pub mod register {
    pub const NQUBITS: usize = 4;
    pub const DIM: usize = 1 << NQUBITS;
    /// Switch control.
    pub const C: usize = 0;
    /// Message carrier.
    pub const M: usize = 1;
    pub const E1: usize = 2;
    pub const E2: usize = 3;
}

/// Inverse temperature with `k = 1`. `Finite(0.0)` is `T = ∞`,
/// `Infinite` is `T = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InverseTemperature {
    Finite(f64),
    Infinite,
}

impl InverseTemperature {
    pub const ZERO: InverseTemperature = InverseTemperature::Finite(0.0);

    pub fn finite(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta >= 0.0 {
            Ok(InverseTemperature::Finite(beta))
        } else {
            Err(Error::validation(
                "beta",
                format!("{beta} is not a finite value >= 0"),
            ))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, InverseTemperature::Infinite)
    }

    /// `"inf"` or the shortest decimal that round-trips.
    pub fn label(&self) -> String {
        match self {
            InverseTemperature::Finite(b) => format!("{b}"),
            InverseTemperature::Infinite => "inf".to_string(),
        }
    }

    fn sort_key(&self) -> f64 {
        match self {
            InverseTemperature::Finite(b) => *b,
            InverseTemperature::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for InverseTemperature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.sort_key().total_cmp(&other.sort_key()))
    }
}

impl fmt::Display for InverseTemperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for InverseTemperature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(InverseTemperature::Infinite);
        }
        let beta: f64 = s.parse().map_err(|_| {
            Error::validation("beta", format!("`{s}` is neither `inf` nor a number"))
        })?;
        InverseTemperature::finite(beta)
    }
}

/// Interaction used for `U₂`; `U₁` is always a partial swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InteractionKind {
    PartialSwap,
    PartialCnot,
}

impl InteractionKind {
    pub fn label(&self) -> &'static str {
        match self {
            InteractionKind::PartialSwap => "pswap",
            InteractionKind::PartialCnot => "pcnot",
        }
    }
}

impl FromStr for InteractionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "pswap" => Ok(InteractionKind::PartialSwap),
            "pcnot" => Ok(InteractionKind::PartialCnot),
            other => Err(Error::validation(
                "u2",
                format!("`{other}` is not one of pswap, pcnot"),
            )),
        }
    }
}

fn check_unit_interval(field: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::validation(field, format!("{x} is outside [0, 1]")))
    }
}

/// One point of the parameter space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub beta: InverseTemperature,
    /// Thermalization strength `s = sin θ`.
    pub s: f64,
    /// Weight of `|+⟩⟨+|` in the control state.
    pub lambda: f64,
    /// Probability of message `a = 0`.
    pub p: f64,
    pub u2_kind: InteractionKind,
}

impl ScenarioConfig {
    pub fn new(
        beta: InverseTemperature,
        s: f64,
        lambda: f64,
        p: f64,
        u2_kind: InteractionKind,
    ) -> Result<Self> {
        let cfg = Self {
            beta,
            s,
            lambda,
            p,
            u2_kind,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Partial swaps, `p = 1/2`.
    pub fn swap(beta: InverseTemperature, s: f64, lambda: f64) -> Result<Self> {
        Self::new(beta, s, lambda, 0.5, InteractionKind::PartialSwap)
    }

    pub fn validate(&self) -> Result<()> {
        if let InverseTemperature::Finite(b) = self.beta {
            InverseTemperature::finite(b)?;
        }
        check_unit_interval("s", self.s)?;
        check_unit_interval("lambda", self.lambda)?;
        check_unit_interval("p", self.p)
    }

    /// Interaction angle `θ = arcsin(s)` in `[0, π/2]`.
    pub fn theta(&self) -> f64 {
        self.s.asin()
    }

    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        Self { lambda, ..self }.validated()
    }

    pub fn with_p(self, p: f64) -> Result<Self> {
        Self { p, ..self }.validated()
    }

    pub fn with_s(self, s: f64) -> Result<Self> {
        Self { s, ..self }.validated()
    }

    pub fn with_kind(self, u2_kind: InteractionKind) -> Self {
        Self { u2_kind, ..self }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }
}

/// Diagonal Hamiltonian made of local `−σ_z` terms.
///
/// Levels are stored as integers: a qubit in `|0⟩` contributes −1, in `|1⟩`
/// contributes +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hamiltonian {
    levels: Vec<i32>,
}

/// Sum of `−σ_z` over all four register qubits.
pub type TotalHamiltonian = Hamiltonian;

impl Hamiltonian {
    /// `−σ_z` on a single qubit.
    pub fn qubit() -> Self {
        Self::local(1, &[0]).expect("one-qubit register is valid")
    }

    /// `Σ_{q ∈ sites} −σ_z^{(q)}` on an `nqubits` register.
    pub fn local(nqubits: usize, sites: &[usize]) -> Result<Self> {
        if nqubits == 0 || nqubits > register::NQUBITS {
            return Err(Error::Size(format!("{nqubits} qubits not supported")));
        }
        if let Some(q) = sites.iter().find(|&&q| q >= nqubits) {
            return Err(Error::Index(format!("site {q} out of range")));
        }
        let levels = (0..1usize << nqubits)
            .map(|b| {
                sites
                    .iter()
                    .map(|&q| {
                        if (b >> (nqubits - 1 - q)) & 1 == 1 {
                            1
                        } else {
                            -1
                        }
                    })
                    .sum()
            })
            .collect();
        Ok(Self { levels })
    }

    pub fn total() -> TotalHamiltonian {
        Self::local(register::NQUBITS, &[0, 1, 2, 3]).expect("register is valid")
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    /// Energy of computational basis state `index`.
    pub fn level(&self, index: usize) -> i32 {
        self.levels[index]
    }

    pub fn levels(&self) -> &[i32] {
        &self.levels
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let diag: Vec<f64> = self.levels.iter().map(|&e| e as f64).collect();
        ComplexMatrix::from_real_diagonal(&diag).expect("dimension is a power of two")
    }

    /// Basis indices grouped by energy, ascending.
    pub fn eigenspaces(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut spaces: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &e) in self.levels.iter().enumerate() {
            spaces.entry(e).or_default().push(i);
        }
        spaces
    }

    /// `tr(ρH)`.
    pub fn mean_energy(&self, rho: &ComplexMatrix) -> f64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, &e)| e as f64 * rho.get(i, i).re)
            .sum()
    }
}

/// Gibbs state of `H = −σ_z` at inverse temperature `beta`.
pub fn gibbs_qubit(beta: InverseTemperature) -> DensityMatrix {
    let ground = match beta {
        InverseTemperature::Infinite => 1.0,
        // e^{β} / (e^{β} + e^{−β}) written so large β cannot overflow.
        InverseTemperature::Finite(b) => 1.0 / (1.0 + (-2.0 * b).exp()),
    };
    ComplexMatrix::from_real_diagonal(&[ground, 1.0 - ground]).expect("2x2")
}

/// `σ_C = λ|+⟩⟨+| + (1−λ)|0⟩⟨0|`.
pub fn control_state(lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::contract(format!(
            "lambda = {lambda} is outside [0, 1]"
        )));
    }
    let half = lambda / 2.0;
    ComplexMatrix::from_real_rows(&[&[1.0 - half, half], &[half, half]])
}

#[derive(Debug, Clone)]
pub struct EnsembleMember {
    pub prob: f64,
    /// Classical record value `a`.
    pub label: usize,
    pub state: DensityMatrix,
}

/// Classical-quantum state `Σ_a p_a |a⟩⟨a| ⊗ ρ_a`, with the classical register
/// kept as labels.
#[derive(Debug, Clone)]
pub struct Ensemble {
    members: Vec<EnsembleMember>,
}

const PROB_SUM_TOL: f64 = 1e-12;

impl Ensemble {
    pub fn new(members: Vec<EnsembleMember>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::contract("ensemble is empty"))?;
        let dim = first.state.dim();
        let mut total = 0.0;
        for m in &members {
            if !(0.0..=1.0).contains(&m.prob) {
                return Err(Error::contract(format!(
                    "probability {} of label {} outside [0, 1]",
                    m.prob, m.label
                )));
            }
            if m.state.dim() != dim {
                return Err(Error::Size("ensemble members differ in dimension".into()));
            }
            let check = is_density(&m.state, crate::matcore::STRUCTURAL_TOL);
            if !check.is_valid() {
                return Err(Error::contract(format!(
                    "member {} is not a density matrix: {check:?}",
                    m.label
                )));
            }
            total += m.prob;
        }
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::contract(format!("probabilities sum to {total}")));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[EnsembleMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].state.dim()
    }

    /// `Σ_a p_a ρ_a`.
    pub fn average(&self) -> DensityMatrix {
        let mut avg = ComplexMatrix::zeros(self.dim()).expect("member dimension is valid");
        for m in &self.members {
            avg = &avg + &m.state.scale_real(m.prob);
        }
        avg
    }

    /// Applies `f` to every member state, keeping probabilities and labels.
    pub fn map_states(&self, f: impl Fn(&DensityMatrix) -> Result<DensityMatrix>) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| {
                Ok(EnsembleMember {
                    prob: m.prob,
                    label: m.label,
                    state: f(&m.state)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }
}

/// `{(p, 0, |0⟩⟨0|), (1−p, 1, |1⟩⟨1|)}`; zero-probability messages are dropped.
pub fn message_ensemble(p: f64) -> Result<Ensemble> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::contract(format!("p = {p} is outside [0, 1]")));
    }
    let members = [(p, 0usize), (1.0 - p, 1usize)]
        .into_iter()
        .filter(|&(prob, _)| prob > 0.0)
        .map(|(prob, label)| {
            let mut pop = [0.0, 0.0];
            pop[label] = 1.0;
            EnsembleMember {
                prob,
                label,
                state: ComplexMatrix::from_real_diagonal(&pop).expect("2x2"),
            }
        })
        .collect();
    Ensemble::new(members)
}

/// `σ_C ⊗ ρ_M ⊗ τ(β) ⊗ τ(β)` on `(C, M, E1, E2)`.
pub fn assemble_initial(
    sigma_c: &DensityMatrix,
    rho_m: &DensityMatrix,
    beta: InverseTemperature,
) -> Result<DensityMatrix> {
    for (name, state) in [("sigma_C", sigma_c), ("rho_M", rho_m)] {
        if state.dim() != 2 {
            return Err(Error::Size(format!("{name} must be a single-qubit state")));
        }
        let check = is_density(state, crate::matcore::STRUCTURAL_TOL);
        if !check.is_valid() {
            return Err(Error::contract(format!(
                "{name} is not a density matrix: {check:?}"
            )));
        }
    }
    let tau = gibbs_qubit(beta);
    kron_all(&[sigma_c, rho_m, &tau, &tau])
}

/// Computational basis vector `|n⟩` on `nqubits` qubits.
pub fn basis_state(n: usize, nqubits: usize) -> Result<Vec<Complex64>> {
    if nqubits == 0 || nqubits > register::NQUBITS {
        return Err(Error::Size(format!("{nqubits} qubits not supported")));
    }
    let dim = 1usize << nqubits;
    if n >= dim {
        return Err(Error::Index(format!(
            "basis index {n} out of range for {nqubits} qubits"
        )));
    }
    let mut v = vec![ZERO; dim];
    v[n] = ONE;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::partial_trace;

    #[test]
    fn gibbs_examples() {
        assert_eq!(
            gibbs_qubit(InverseTemperature::ZERO).diagonal_real(),
            vec![0.5, 0.5]
        );
        assert_eq!(
            gibbs_qubit(InverseTemperature::Infinite).diagonal_real(),
            vec![1.0, 0.0]
        );
        let g = gibbs_qubit(InverseTemperature::finite(1.0).unwrap()).diagonal_real();
        assert!((g[0] - 0.880797).abs() < 1e-6);
        assert!((g[1] - 0.119203).abs() < 1e-6);
        // direct formula e^β / (2 cosh β)
        assert!((g[0] - 1f64.exp() / (2.0 * 1f64.cosh())).abs() < 1e-15);
    }

    #[test]
    fn gibbs_large_beta_does_not_overflow() {
        let g = gibbs_qubit(InverseTemperature::finite(1e6).unwrap());
        assert_eq!(g.diagonal_real(), vec![1.0, 0.0]);
    }

    #[test]
    fn gibbs_populations_monotone_in_beta() {
        let mut last = 0.0;
        for k in 0..50 {
            let g = gibbs_qubit(InverseTemperature::finite(k as f64 * 0.1).unwrap());
            assert!(g.get(0, 0).re >= last);
            last = g.get(0, 0).re;
        }
    }

    #[test]
    fn control_state_examples() {
        let off = control_state(0.0).unwrap();
        assert_eq!(off.diagonal_real(), vec![1.0, 0.0]);
        assert_eq!(off.get(0, 1).re, 0.0);

        let on = control_state(1.0).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(on.get(i, j).re, 0.5);
        }

        let mid = control_state(0.5).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[0.75, 0.25], &[0.25, 0.25]]).unwrap();
        assert_eq!(mid, want);

        assert!(matches!(control_state(1.2), Err(Error::Contract(_))));
        assert!(control_state(-0.1).is_err());
    }

    #[test]
    fn control_off_diagonal_is_half_lambda() {
        for k in 0..=20 {
            let lambda = k as f64 / 20.0;
            assert_eq!(control_state(lambda).unwrap().get(0, 1).re, lambda / 2.0);
        }
    }

    #[test]
    fn message_ensemble_examples() {
        let det = message_ensemble(1.0).unwrap();
        assert_eq!(det.len(), 1);
        assert_eq!(det.members()[0].label, 0);
        assert_eq!(det.members()[0].prob, 1.0);

        let fair = message_ensemble(0.5).unwrap();
        assert_eq!(fair.len(), 2);
        assert!(fair.members().iter().all(|m| m.prob == 0.5));

        let skew = message_ensemble(0.3).unwrap();
        let probs: Vec<f64> = skew.members().iter().map(|m| m.prob).collect();
        assert_eq!(probs, vec![0.3, 0.7]);
        assert_eq!(skew.average().diagonal_real(), vec![0.3, 0.7]);

        assert!(message_ensemble(1.5).is_err());
    }

    #[test]
    fn ensemble_rejects_bad_members() {
        let half = ComplexMatrix::from_real_diagonal(&[0.5, 0.5]).unwrap();
        assert!(Ensemble::new(vec![]).is_err());
        let bad_sum = vec![EnsembleMember {
            prob: 0.7,
            label: 0,
            state: half.clone(),
        }];
        assert!(Ensemble::new(bad_sum).is_err());
        let not_density = vec![EnsembleMember {
            prob: 1.0,
            label: 0,
            state: half.scale_real(3.0),
        }];
        assert!(Ensemble::new(not_density).is_err());
    }

    #[test]
    fn assemble_examples() {
        let ground = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]).unwrap();
        let all_ground = assemble_initial(&ground, &ground, InverseTemperature::Infinite).unwrap();
        assert_eq!(all_ground.get(0, 0).re, 1.0);
        assert!((all_ground.trace().re - 1.0).abs() < 1e-15);
        assert_eq!(all_ground.max_abs(), 1.0);

        let plus = control_state(1.0).unwrap();
        let excited = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]).unwrap();
        let rho = assemble_initial(&plus, &excited, InverseTemperature::ZERO).unwrap();
        assert!(is_density(&rho, 1e-12).is_valid());
        let rank = crate::matcore::hermitian_eig(&rho)
            .unwrap()
            .eigenvalues
            .iter()
            .filter(|&&x| x > 1e-12)
            .count();
        assert_eq!(rank, 4);

        let rho = assemble_initial(&plus, &ground, InverseTemperature::ZERO).unwrap();
        let c = partial_trace(&rho, 4, &[register::C]).unwrap();
        assert!(c.max_abs_diff(&plus) < 1e-15);
    }

    #[test]
    fn assemble_rejects_invalid_inputs() {
        let bad = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]).unwrap();
        let ok = control_state(0.0).unwrap();
        assert!(assemble_initial(&bad, &ok, InverseTemperature::ZERO).is_err());
        assert!(assemble_initial(&ok, &bad, InverseTemperature::ZERO).is_err());
    }

    #[test]
    fn basis_state_bit_convention() {
        assert_eq!(basis_state(0, 4).unwrap()[0], ONE);
        assert_eq!(basis_state(15, 4).unwrap()[15], ONE);
        // |0100⟩: C=0, M=1, E1=0, E2=0
        let v = basis_state(4, 4).unwrap();
        assert_eq!(v[0b0100], ONE);
        assert!(matches!(basis_state(16, 4), Err(Error::Index(_))));
    }

    #[test]
    fn total_hamiltonian_levels_follow_hamming_weight() {
        let h = Hamiltonian::total();
        for b in 0..16usize {
            assert_eq!(h.level(b), 2 * b.count_ones() as i32 - 4);
        }
        let spaces = h.eigenspaces();
        assert_eq!(
            spaces.keys().copied().collect::<Vec<_>>(),
            vec![-4, -2, 0, 2, 4]
        );
        assert_eq!(spaces[&0].len(), 6);
    }

    #[test]
    fn beta_parsing() {
        assert_eq!(
            "inf".parse::<InverseTemperature>().unwrap(),
            InverseTemperature::Infinite
        );
        assert_eq!(
            "0.5".parse::<InverseTemperature>().unwrap(),
            InverseTemperature::Finite(0.5)
        );
        assert!("-1".parse::<InverseTemperature>().is_err());
        assert!("hot".parse::<InverseTemperature>().is_err());
        assert!(InverseTemperature::ZERO < InverseTemperature::Infinite);
    }

    #[test]
    fn scenario_config_validation() {
        let ok = ScenarioConfig::swap(InverseTemperature::ZERO, 0.6, 1.0).unwrap();
        assert!((ok.theta() - 0.6f64.asin()).abs() < 1e-15);
        assert!(matches!(
            ScenarioConfig::swap(InverseTemperature::ZERO, 1.1, 1.0),
            Err(Error::Validation { field, .. }) if field == "s"
        ));
        assert!(matches!(
            ok.with_p(-0.2),
            Err(Error::Validation { field, .. }) if field == "p"
        ));
    }
}
