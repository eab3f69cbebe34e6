use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{harmonic_extension, GasketElement, VERTEX_PAIRS};
use crate::error::{GasketError, Result};
use crate::tensor::{pow3, ComplexMatrix};

/// Agreement required between the least-squares argmin and the harmonic
/// extension.
pub const FIBER_TOL: f64 = 1e-8;

/// Relative singular-value cutoff of the pseudo-inverse.
const RANK_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct FiberMinimum {
    pub minimizer: GasketElement,
    pub min_energy: f64,
    /// Numerical rank of the linear part of the residual map.
    pub rank: usize,
    /// Number of real parameters of the fiber.
    pub parameters: usize,
    /// `max_abs_diff(minimizer, harmonic_extension(b))`.
    pub harmonic_deviation: f64,
}

impl FiberMinimum {
    /// The normal equations were singular and a minimum-norm solution was used.
    pub fn rank_deficient(&self) -> bool {
        self.rank < self.parameters
    }
}

/// Fiber element `coembed(b) + Σ_j y_j ⊗ β^1_j` for a real parameter vector.
fn fiber_point(b: &GasketElement, y: &[f64]) -> GasketElement {
    let n = b.level();
    let dim = pow3(n);
    let mut blocks = b.blocks().to_vec();
    let per = 2 * dim * dim;
    blocks.push(std::array::from_fn(|j| {
        let chunk = &y[j * per..(j + 1) * per];
        ComplexMatrix::from_fn(dim, |p, q| {
            let idx = 2 * (p * dim + q);
            Complex64::new(chunk[idx], chunk[idx + 1])
        })
    }));
    GasketElement::from_parts(n + 1, *b.xi(), blocks).expect("sizes follow from b")
}

/// Real vector of all ordered-pair differences; its squared norm is `E_{n+1}`.
fn residual(a: &GasketElement) -> Vec<f64> {
    let f = a.to_v0form();
    let mut out = Vec::new();
    for (i, j) in VERTEX_PAIRS {
        let d = f.value(i) - f.value(j);
        // each unordered pair appears twice in the ordered sum
        for z in d.as_slice() {
            out.push(std::f64::consts::SQRT_2 * z.re);
            out.push(std::f64::consts::SQRT_2 * z.im);
        }
    }
    out
}

/// Minimizes `E_{n+1}` over `{a ∈ A_{n+1} : ρ_n(a) = b}` by linear least
/// squares in the real coordinates of the kernel blocks `y_j ⊗ β^1_j`.
///
/// Supported for `n ∈ {0, 1}`. The argmin is compared with the harmonic
/// extension and a [`GasketError::FiberMismatch`] is raised if they differ
/// by more than [`FIBER_TOL`].
pub fn minimize_over_fiber(b: &GasketElement) -> Result<FiberMinimum> {
    let n = b.level();
    if n > 1 {
        return Err(GasketError::UnsupportedLevel(n));
    }
    let dim = pow3(n);
    let parameters = 3 * 2 * dim * dim;
    let zero = vec![0.0; parameters];
    let r0 = residual(&fiber_point(b, &zero));
    let mut jac = DMatrix::<f64>::zeros(r0.len(), parameters);
    let mut unit = zero.clone();
    for c in 0..parameters {
        unit[c] = 1.0;
        let rc = residual(&fiber_point(b, &unit));
        for (r, (x, x0)) in rc.iter().zip(&r0).enumerate() {
            jac[(r, c)] = x - x0;
        }
        unit[c] = 0.0;
    }
    let svd = jac.svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let eps = RANK_EPS * smax.max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let rhs = -DVector::from_vec(r0);
    let y = svd
        .solve(&rhs, eps)
        .map_err(|_| GasketError::NonConvergence {
            iterations: 0,
            achieved: f64::NAN,
        })?;
    let minimizer = fiber_point(b, y.as_slice());
    let min_energy = residual(&minimizer).iter().map(|x| x * x).sum();
    let harmonic_deviation = minimizer.max_abs_diff(&harmonic_extension(b))?;
    if harmonic_deviation > FIBER_TOL {
        return Err(GasketError::FiberMismatch {
            deviation: harmonic_deviation,
        });
    }
    Ok(FiberMinimum {
        minimizer,
        min_energy,
        rank,
        parameters,
        harmonic_deviation,
    })
}
