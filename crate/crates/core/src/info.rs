//! Holevo information of cq-states and its maximization over the message prior.

use rayon::prelude::*;

use crate::dynamics::run_scenario;
use crate::error::{Error, Result};
use crate::states::{register, Ensemble, ScenarioConfig};
use crate::thermo::{vn_entropy, EntropyUnit};

/// `I(A:X) = S(Σ p_a ρ_a) − Σ p_a S(ρ_a)` in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInfoResult {
    pub i_bits: f64,
    /// Entropy of the average state, bits.
    pub s_avg: f64,
    /// `Σ p_a S(ρ_a)`, bits.
    pub s_cond: f64,
    pub config: Option<ScenarioConfig>,
}

pub fn holevo(ens: &Ensemble) -> Result<MutualInfoResult> {
    if ens.is_empty() {
        return Err(Error::contract("Holevo quantity of an empty ensemble"));
    }
    let s_avg = vn_entropy(&ens.average(), EntropyUnit::Bits)?;
    let s_cond = ens
        .members()
        .iter()
        .map(|m| Ok(m.prob * vn_entropy(&m.state, EntropyUnit::Bits)?))
        .sum::<Result<f64>>()?;
    Ok(MutualInfoResult {
        i_bits: s_avg - s_cond,
        s_avg,
        s_cond,
        config: None,
    })
}

/// `I(A:CM)` after the switched dynamics.
pub fn scenario_mutual_info(cfg: &ScenarioConfig) -> Result<MutualInfoResult> {
    let outcome = run_scenario(cfg)?;
    let cm = outcome.reduced(&[register::C, register::M])?;
    let mut result = holevo(&cm)?;
    result.config = Some(*cfg);
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingOptimum {
    pub p_star: f64,
    pub i_star: f64,
}

pub const DEFAULT_ENCODING_GRID: usize = 101;

/// Final bracket width of the golden-section refinement.
pub const ENCODING_XTOL: f64 = 1e-8;

/// Values within this are ties; ties go to the `p` closest to 1/2.
const TIE_TOL: f64 = 1e-12;

/// Maximizes `I(A:CM)` over the diagonal encodings `ρ_AM(p)`.
///
/// A uniform grid of `grid_points` values on `[0, 1]` is evaluated first; the
/// best grid point's neighbourhood is then refined by golden-section search.
pub fn max_over_encoding(cfg: &ScenarioConfig, grid_points: usize) -> Result<EncodingOptimum> {
    if grid_points < 3 {
        return Err(Error::contract(format!(
            "encoding grid needs at least 3 points, got {grid_points}"
        )));
    }
    let objective = |p: f64| -> Result<f64> { Ok(scenario_mutual_info(&cfg.with_p(p)?)?.i_bits) };

    let step = 1.0 / (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points).map(|k| k as f64 * step).collect();
    let values = grid
        .par_iter()
        .map(|&p| objective(p))
        .collect::<Result<Vec<f64>>>()?;

    let mut best = 0;
    for k in 1..grid_points {
        let better = values[k] > values[best] + TIE_TOL;
        let tie = (values[k] - values[best]).abs() <= TIE_TOL
            && (grid[k] - 0.5).abs() < (grid[best] - 0.5).abs();
        if better || tie {
            best = k;
        }
    }

    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid_points - 1)];
    let (p_refined, i_refined) = golden_section_max(objective, lo, hi, ENCODING_XTOL)?;

    Ok(if i_refined > values[best] + TIE_TOL {
        EncodingOptimum {
            p_star: p_refined,
            i_star: i_refined,
        }
    } else {
        EncodingOptimum {
            p_star: grid[best],
            i_star: values[best],
        }
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (√5 − 1) / 2

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns the best evaluated point once the bracket is narrower than `xtol`.
pub fn golden_section_max(
    f: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<(f64, f64)> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > xtol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// `I(λ = 1) − I(λ = 0)` at otherwise fixed parameters, in bits.
pub fn capacity_gain(cfg: &ScenarioConfig) -> Result<f64> {
    let on = scenario_mutual_info(&cfg.with_lambda(1.0)?)?.i_bits;
    let off = scenario_mutual_info(&cfg.with_lambda(0.0)?)?.i_bits;
    Ok(on - off)
}
