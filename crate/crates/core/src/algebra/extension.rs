use num_complex::Complex64;

use super::element::GasketElement;
use crate::error::{GasketError, Result};
use crate::tensor::{op_norm, wrap_index, ComplexMatrix};

/// Harmonic parameter: the extension minimizing energy.
pub const HARMONIC_T: f64 = 0.6;
/// Affine parameter.
pub const AFFINE_T: f64 = 0.5;

pub(crate) fn check_t(t: f64) -> Result<()> {
    if (0.5..1.0).contains(&t) {
        Ok(())
    } else {
        Err(GasketError::ParameterOutOfRange {
            name: "t",
            value: t,
        })
    }
}

/// The symmetric extension `λ^(t)_n: A_n → A_{n+1}`.
///
/// With root values `a_1, a_2, a_3`, the old vertices keep their values and
/// the new block `m` receives `(1-t)(a_m + a_{m+2}) + (2t-1) a_{m+1}`.
pub fn symmetric_extension(e: &GasketElement, t: f64) -> Result<GasketElement> {
    check_t(t)?;
    let f = e.to_v0form();
    let a = f.values();
    let side = Complex64::new(1.0 - t, 0.0);
    let opposite = Complex64::new(2.0 * t - 1.0, 0.0);
    let top: [ComplexMatrix; 3] = std::array::from_fn(|idx| {
        let m = idx + 1;
        let near = &a[m - 1] + &a[wrap_index(m as i64 + 2) - 1];
        near.scale(side)
            .axpy(opposite, &a[wrap_index(m as i64 + 1) - 1])
    });
    let mut blocks = e.blocks().to_vec();
    blocks.push(top);
    GasketElement::from_parts(e.level() + 1, *e.xi(), blocks)
}

pub fn harmonic_extension(e: &GasketElement) -> GasketElement {
    symmetric_extension(e, HARMONIC_T).expect("harmonic parameter is in range")
}

pub fn affine_extension(e: &GasketElement) -> GasketElement {
    symmetric_extension(e, AFFINE_T).expect("affine parameter is in range")
}

/// Applies `symmetric_extension` until level `m`.
pub fn extend_to(e: &GasketElement, t: f64, m: usize) -> Result<GasketElement> {
    check_t(t)?;
    if m < e.level() {
        return Err(GasketError::InvalidLevel {
            level: e.level(),
            requested: m,
        });
    }
    let mut out = e.clone();
    while out.level() < m {
        out = symmetric_extension(&out, t)?;
    }
    Ok(out)
}

/// Certified distance from `extend_to(e, t, m)` to the infinite extension:
/// `osc(e) · t^{m-n+1} / (1 - t)`.
pub fn extend_tail_bound(e: &GasketElement, t: f64, m: usize) -> Result<f64> {
    check_t(t)?;
    if m < e.level() {
        return Err(GasketError::InvalidLevel {
            level: e.level(),
            requested: m,
        });
    }
    let p = (m - e.level() + 1) as i32;
    Ok(e.osc()? * t.powi(p) / (1.0 - t))
}

/// `‖upper − lower ⊗ I‖` for `lower ∈ A_n`, `upper ∈ A_{n+1}`.
///
/// Elements of `A_{n+1}` are diagonal in their last two factors, so the
/// difference splits into `3 × 3` blocks indexed by those two digits.
pub fn tensor_identity_defect(lower: &GasketElement, upper: &GasketElement) -> Result<f64> {
    if upper.level() != lower.level() + 1 {
        return Err(GasketError::LevelMismatch {
            left: lower.level() + 1,
            right: upper.level(),
        });
    }
    let lv = lower.to_v0form();
    let uv = upper.to_v0form();
    let mut best: f64 = 0.0;
    for s in 1..=3 {
        for p in 1..=3 {
            let block = uv.value(s).last_factor_block(p - 1, p - 1)?;
            best = best.max(op_norm(&(&block - lv.value(p)))?);
        }
    }
    Ok(best)
}

/// `‖a ⊗ I − λ^(t)_n(a)‖`.
pub fn extension_defect(e: &GasketElement, t: f64) -> Result<f64> {
    tensor_identity_defect(e, &symmetric_extension(e, t)?)
}
