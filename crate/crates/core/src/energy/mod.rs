//! The Dirichlet energy `E_n[b] = Σ_{i≠j} tr |b(v_i) − b(v_j)|²` and its
//! renormalized limit.

mod bounds;
mod fiber;

pub use bounds::{
    check_norm_energy_bounds, cor47_constant, sobolev_sample, LevelBound, NormEnergyReport,
    SobolevSample,
};
pub use fiber::{minimize_over_fiber, FiberMinimum, FIBER_TOL};

use crate::algebra::{Chain, GasketElement, V0Form, VERTEX_PAIRS};
use crate::error::{GasketError, Result};
use crate::tensor::compensated_sum;

/// Renormalization ratio `5/3` between consecutive levels.
pub const RENORMALIZATION: f64 = 5.0 / 3.0;

/// Slack allowed in the monotonicity of renormalized energies.
pub const MONOTONE_TOL: f64 = 1e-12;

/// Relative deviation under which a renormalized sequence counts as stationary.
pub const STATIONARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub level: usize,
    pub energy: f64,
    /// `(5/3)^n · energy`.
    pub renormalized: f64,
    /// One entry per unordered pair `(1,2), (1,3), (2,3)`.
    pub per_pair: [f64; 3],
}

pub fn energy(f: &V0Form) -> EnergyReport {
    let per_pair = VERTEX_PAIRS.map(|(i, j)| (f.value(i) - f.value(j)).frobenius_sqr());
    let energy = 2.0 * compensated_sum(per_pair);
    EnergyReport {
        level: f.level(),
        energy,
        renormalized: RENORMALIZATION.powi(f.level() as i32) * energy,
        per_pair,
    }
}

pub fn element_energy(e: &GasketElement) -> EnergyReport {
    energy(&e.to_v0form())
}

/// `(e_ij^* ⊗ id_n)(b)`: contraction of the first tensor factor.
pub fn slice(e: &GasketElement, i: usize, j: usize) -> Result<V0Form> {
    e.to_v0form().slice_first(i, j)
}

/// Both sides of `E_{n+1}[b] = Σ_{i,j} E_n[(e_ij^* ⊗ id)(b)]`.
pub fn check_selfsimilarity(e: &GasketElement) -> Result<(f64, f64)> {
    let f = e.to_v0form();
    let lhs = energy(&f).energy;
    let mut parts = Vec::with_capacity(9);
    for i in 1..=3 {
        for j in 1..=3 {
            parts.push(energy(&f.slice_first(i, j)?).energy);
        }
    }
    Ok((lhs, compensated_sum(parts)))
}

/// `(5/3)^m E_m[ρ_m(b)]` along the chain; fails if the sequence decreases.
pub fn renormalized_energy_sequence(chain: &Chain) -> Result<Vec<f64>> {
    let seq: Vec<f64> = chain
        .levels()
        .iter()
        .map(|e| element_energy(e).renormalized)
        .collect();
    for m in 1..seq.len() {
        let drop = seq[m - 1] - seq[m];
        if drop > MONOTONE_TOL * seq[m - 1].max(1.0) {
            return Err(GasketError::NotMonotone { level: m, drop });
        }
    }
    Ok(seq)
}

/// Truncated value of `E_∞` together with its certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyLimit {
    /// Renormalized energy at the top level.
    pub value: f64,
    pub truncation_level: usize,
    /// The sequence does not move beyond the base level, so `value` is exact.
    pub stationary: bool,
}

pub fn energy_limit(chain: &Chain) -> Result<EnergyLimit> {
    let seq = renormalized_energy_sequence(chain)?;
    let value = *seq.last().expect("non-empty chain");
    let from = chain.base().min(seq.len() - 1);
    let stationary = seq[from..]
        .iter()
        .all(|v| (v - value).abs() <= STATIONARY_TOL * value.max(f64::MIN_POSITIVE));
    Ok(EnergyLimit {
        value,
        truncation_level: chain.top(),
        stationary: stationary && (chain.is_harmonic() || chain.top() > chain.base()),
    })
}
