use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{element_energy, RENORMALIZATION};
use crate::algebra::{extend_to, tensor_identity_defect, trace_tau, Chain, HARMONIC_T};
use crate::error::{GasketError, Result};
use crate::random::random_element;

/// Extra harmonic levels used to approximate `τ(b*b)` for sampled elements.
const TAU_EXTRA_LEVELS: usize = 3;

/// Largest base level accepted by [`sobolev_sample`].
pub const SOBOLEV_LEVEL_CAP: usize = 3;

/// `C = (Σ_{n≥0} (3/5)^{(n+1)/2})²`, the constant obtained by summing the
/// per-level bounds with the triangle inequality.
pub fn cor47_constant() -> f64 {
    let r = 0.6f64.sqrt();
    (r / (1.0 - r)).powi(2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelBound {
    pub level: usize,
    /// `‖ρ_{n+1}(b) − ρ_n(b) ⊗ I‖²`.
    pub lhs: f64,
    /// `(3/5)^{n+1} E_∞[b]`.
    pub rhs: f64,
}

impl LevelBound {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEnergyReport {
    pub levels: Vec<LevelBound>,
    pub worst_margin: f64,
    /// `(‖ρ_M(b)‖², C · E_∞[b])`, present when `ρ_0(b) = 0`.
    pub global: Option<(f64, f64)>,
}

/// Checks `‖ρ_{n+1}(b) − ρ_n(b) ⊗ I‖² ≤ (3/5)^{n+1} E_∞[b]` at every level
/// of the chain, and `‖b‖² ≤ C E_∞[b]` when `ρ_0(b)` vanishes. The norm of
/// `b` is approximated by the top level of the chain.
pub fn check_norm_energy_bounds(chain: &Chain, e_inf: f64) -> Result<NormEnergyReport> {
    let mut levels = Vec::new();
    for n in 0..chain.top() {
        let d = tensor_identity_defect(chain.level(n)?, chain.level(n + 1)?)?;
        levels.push(LevelBound {
            level: n,
            lhs: d * d,
            rhs: 0.6f64.powi(n as i32 + 1) * e_inf,
        });
    }
    let worst_margin = levels
        .iter()
        .map(LevelBound::margin)
        .fold(f64::INFINITY, f64::min);
    let global = if chain.level(0)?.max_abs() <= 1e-12 {
        let norm = chain.top_element().norm()?;
        Some((norm * norm, cor47_constant() * e_inf))
    } else {
        None
    };
    Ok(NormEnergyReport {
        levels,
        worst_margin,
        global,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SobolevSample {
    /// Largest observed `‖b‖² / (E_∞[b] + τ(b*b))`.
    pub constant: f64,
    pub ratios: Vec<f64>,
}

/// Samples harmonic extensions of random elements of `A_n`, `n ≤ level_cap`,
/// and returns the largest ratio `‖b‖² / (E_∞[b] + τ(b*b))`. This is a lower
/// estimate of the best Sobolev constant.
pub fn sobolev_sample(sample_count: usize, level_cap: usize, seed: u64) -> Result<SobolevSample> {
    if sample_count == 0 {
        return Err(GasketError::ParameterOutOfRange {
            name: "sample_count",
            value: 0.0,
        });
    }
    if level_cap > SOBOLEV_LEVEL_CAP {
        return Err(GasketError::ParameterOutOfRange {
            name: "level_cap",
            value: level_cap as f64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = Vec::with_capacity(sample_count);
    for _ in 0..sample_count {
        let n = rng.random_range(0..=level_cap);
        let a = random_element(n, &mut rng);
        ratios.push(sobolev_ratio(&a)?);
    }
    let constant = ratios.iter().copied().fold(0.0, f64::max);
    Ok(SobolevSample { constant, ratios })
}

/// `‖b‖² / (E_∞[b] + τ(b*b))` for the harmonic extension `b` of `a`.
pub fn sobolev_ratio(a: &crate::algebra::GasketElement) -> Result<f64> {
    let n = a.level();
    // harmonic extension is isometric: ρ_n(b) = a and ‖λ(a)‖ ≤ ‖a‖
    let norm = a.norm()?;
    let e_inf = RENORMALIZATION.powi(n as i32) * element_energy(a).energy;
    let top = extend_to(a, HARMONIC_T, n + TAU_EXTRA_LEVELS)?;
    let tau: Complex64 = trace_tau(&top.adjoint().mul(&top)?);
    Ok(norm * norm / (e_inf + tau.re))
}
