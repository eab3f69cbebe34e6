use crate::algebra::{tensor_identity_defect, Chain};
use crate::error::Result;
use crate::tensor::{kron_with_cap, op_norm, pow3, ComplexMatrix, DENSE_DIM_CAP};

/// Largest dense dimension for which defects are computed exactly.
pub const DENSE_DEFECT_DIM: usize = 243;

/// Relative tolerance for the supremum to count as attained at the base level.
pub const STATIONARY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct LipNorm {
    /// `max_{k ≤ cutoff} 2^k osc(ρ_k(a))`.
    pub value: f64,
    /// Level at which the maximum is attained (lowest such).
    pub attained_at: usize,
    /// The maximum is attained at the chain's base level, so the truncated
    /// value is the full `‖[D, a]‖` whenever higher levels cannot exceed it.
    pub stationary: bool,
}

pub fn lip_norm(chain: &Chain, cutoff: usize) -> Result<LipNorm> {
    let top = cutoff.min(chain.top());
    let mut value: f64 = 0.0;
    let mut attained_at = 0;
    let mut terms = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let term = 2f64.powi(k as i32) * chain.level(k)?.osc()?;
        terms.push(term);
        if term > value {
            value = term;
            attained_at = k;
        }
    }
    let base = chain.base().min(top);
    let stationary = (terms[base] - value).abs() <= STATIONARY_TOL * value.max(f64::MIN_POSITIVE);
    Ok(LipNorm {
        value,
        attained_at,
        stationary,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproximationDefect {
    pub level: usize,
    /// `‖ρ_M(a) − ρ_n(a) ⊗ I‖` with `M` the top of the chain.
    pub defect: f64,
    /// `2^{-n} L(a)`.
    pub bound: f64,
    /// `false` when the defect is the telescoped upper bound
    /// `Σ_{j ≥ n} ‖ρ_{j+1}(a) − ρ_j(a) ⊗ I‖` instead of the dense norm.
    pub exact: bool,
}

/// Per-level check of `‖a − ρ_n(a)‖ ≤ 2^{-n} L(a)`, with the chain's top
/// level standing in for `a`.
pub fn approximation_defects(chain: &Chain, lip: f64) -> Result<Vec<ApproximationDefect>> {
    let top = chain.top();
    let mut steps = Vec::with_capacity(top);
    for j in 0..top {
        steps.push(tensor_identity_defect(
            chain.level(j)?,
            chain.level(j + 1)?,
        )?);
    }
    let dense_top = (pow3(top + 1) <= DENSE_DEFECT_DIM).then(|| chain.top_element().to_dense());
    let mut out = Vec::with_capacity(top);
    for n in 0..top {
        let (defect, exact) = match &dense_top {
            Some(upper) => {
                let lower = chain.level(n)?.to_dense();
                let lifted = kron_with_cap(
                    &lower,
                    &ComplexMatrix::identity(pow3(top - n)),
                    DENSE_DIM_CAP,
                )?;
                (op_norm(&(upper - &lifted))?, true)
            }
            None => (steps[n..].iter().sum(), false),
        };
        out.push(ApproximationDefect {
            level: n,
            defect,
            bound: lip / 2f64.powi(n as i32),
            exact,
        });
    }
    Ok(out)
}
