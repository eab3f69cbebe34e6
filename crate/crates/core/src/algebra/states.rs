use num_complex::Complex64;

use super::element::GasketElement;
use crate::error::{GasketError, Result};
use crate::tensor::{pow3, trace, ComplexMatrix, DENSE_DIM_CAP};

/// Positivity slack for state factors.
pub const STATE_TOL: f64 = 1e-12;

/// The normalized trace `τ` restricted to `A_n`.
pub fn trace_tau(e: &GasketElement) -> Complex64 {
    e.dense_trace() / pow3(e.level() + 1) as f64
}

/// The character `χ_j = ξ_j ∘ ρ_0`.
pub fn char_chi(e: &GasketElement, j: usize) -> Result<Complex64> {
    e.restrict_to(0)?.character_xi(j)
}

/// `τ_{m,j}`: normalized trace of `η_{m-1,j}(ρ_m(e))`, `1 ≤ m ≤ level`.
pub fn trace_tau_mj(e: &GasketElement, m: usize, j: usize) -> Result<Complex64> {
    if m == 0 {
        return Err(GasketError::InvalidLevel {
            level: e.level(),
            requested: m,
        });
    }
    let eta = e.restrict_to(m)?.rep_eta(m - 1, j)?;
    Ok(trace(&eta) / pow3(m - 1) as f64)
}

/// An infinite product state `ω_1 ⊗ ω_2 ⊗ … ⊗ ω_p ⊗ ω_tail ⊗ ω_tail ⊗ …`.
///
/// Each factor is a `3 × 3` matrix `ω` acting by `ω(A) = Σ ω_ij A_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    prefix: Vec<ComplexMatrix>,
    tail: ComplexMatrix,
}

fn validate_factor(index: usize, w: &ComplexMatrix) -> Result<()> {
    if w.dim() != 3 {
        return Err(GasketError::DimensionMismatch {
            expected: 3,
            found: w.dim(),
        });
    }
    let unit = trace(w);
    if (unit - Complex64::new(1.0, 0.0)).norm() > STATE_TOL {
        return Err(GasketError::NotUnital {
            factor: index,
            value: unit.re,
        });
    }
    if crate::tensor::max_abs_diff(w, &w.adjoint()) > STATE_TOL {
        return Err(GasketError::NotPositive {
            factor: index,
            min_eigenvalue: f64::NAN,
        });
    }
    let min = w
        .to_nalgebra()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min < -STATE_TOL {
        return Err(GasketError::NotPositive {
            factor: index,
            min_eigenvalue: min,
        });
    }
    Ok(())
}

impl ProductState {
    pub fn new(prefix: Vec<ComplexMatrix>, tail: ComplexMatrix) -> Result<Self> {
        for (i, w) in prefix.iter().enumerate() {
            validate_factor(i, w)?;
        }
        validate_factor(prefix.len(), &tail)?;
        Ok(Self { prefix, tail })
    }

    /// `ω^{⊗∞}` for a single factor.
    pub fn uniform(w: ComplexMatrix) -> Result<Self> {
        Self::new(Vec::new(), w)
    }

    /// The vector state at basis vector `e_i` (the functional `e_ii^*`).
    pub fn vector_state(i: usize) -> Result<ComplexMatrix> {
        crate::tensor::matrix_unit(3, i, i)
    }

    /// Factor applied at tensor position `i` (0-based).
    pub fn factor(&self, i: usize) -> &ComplexMatrix {
        self.prefix.get(i).unwrap_or(&self.tail)
    }

    /// Contracts the dense realization factor by factor, last factor first.
    pub fn eval(&self, e: &GasketElement) -> Result<Complex64> {
        let dim = pow3(e.level() + 1);
        if dim > DENSE_DIM_CAP {
            return Err(GasketError::DimensionCap {
                dim,
                cap: DENSE_DIM_CAP,
            });
        }
        self.eval_dense(&e.to_dense())
    }

    /// Same contraction for an arbitrary matrix on `(C^3)^{⊗k}`.
    pub fn eval_dense(&self, a: &ComplexMatrix) -> Result<Complex64> {
        let mut factors = 0;
        let mut d = 1;
        while d < a.dim() {
            d *= 3;
            factors += 1;
        }
        if d != a.dim() {
            return Err(GasketError::DimensionMismatch {
                expected: d,
                found: a.dim(),
            });
        }
        let mut cur = a.clone();
        for pos in (0..factors).rev() {
            let w = self.factor(pos);
            let m = cur.dim() / 3;
            cur = ComplexMatrix::from_fn(m, |p, q| {
                let mut s = Complex64::new(0.0, 0.0);
                for i in 0..3 {
                    for j in 0..3 {
                        s += w.get(i, j) * cur.get(3 * p + i, 3 * q + j);
                    }
                }
                s
            });
        }
        Ok(cur.get(0, 0))
    }
}

/// Evaluates `ω` on `e`.
pub fn eval_product_state(e: &GasketElement, w: &ProductState) -> Result<Complex64> {
    w.eval(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_element;
    use crate::tensor::{kron, matrix_unit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn half_13() -> ComplexMatrix {
        ComplexMatrix::from_fn(3, |i, j| if i != 1 && j != 1 { c(0.5) } else { c(0.0) })
    }

    #[test]
    fn trace_values() {
        for n in 0..4 {
            assert!((trace_tau(&GasketElement::identity(n)) - c(1.0)).norm() < 1e-15);
            for j in 1..=3 {
                let a = GasketElement::alpha(n, j).unwrap();
                assert!((trace_tau(&a) - c(1.0 / pow3(n + 1) as f64)).norm() < 1e-15);
            }
        }
        let id = GasketElement::identity(3);
        for m in 1..=3 {
            for j in 1..=3 {
                assert!((trace_tau_mj(&id, m, j).unwrap() - c(1.0)).norm() < 1e-15);
                assert!((char_chi(&id, j).unwrap() - c(1.0)).norm() < 1e-15);
            }
        }
        assert!(trace_tau_mj(&id, 0, 1).is_err());
        assert!(trace_tau_mj(&id, 4, 1).is_err());
        assert!(char_chi(&id, 4).is_err());
    }

    #[test]
    fn traces_are_tracial() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for _ in 0..10 {
            let a = random_element(3, &mut rng);
            let b = random_element(3, &mut rng);
            let ab = a.mul(&b).unwrap();
            let ba = b.mul(&a).unwrap();
            assert!((trace_tau(&ab) - trace_tau(&ba)).norm() < 1e-12);
            // dense oracle for τ
            let dense = trace(&ab.to_dense()) / 81.0;
            assert!((dense - trace_tau(&ab)).norm() < 1e-12);
            for j in 1..=3 {
                assert!((char_chi(&ab, j).unwrap() - char_chi(&ba, j).unwrap()).norm() < 1e-12);
                for m in 1..=3 {
                    let l = trace_tau_mj(&ab, m, j).unwrap();
                    let r = trace_tau_mj(&ba, m, j).unwrap();
                    assert!((l - r).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn factor_validation() {
        assert!(matches!(
            ProductState::uniform(ComplexMatrix::identity(3)),
            Err(GasketError::NotUnital { factor: 0, .. })
        ));
        let neg = ComplexMatrix::diagonal(&[c(1.5), c(-0.5), c(0.0)]);
        assert!(matches!(
            ProductState::new(vec![ComplexMatrix::identity(3).scale_real(1.0 / 3.0)], neg),
            Err(GasketError::NotPositive { factor: 1, .. })
        ));
        let skew = ComplexMatrix::from_fn(3, |i, j| {
            if i == j {
                c(1.0 / 3.0)
            } else if i < j {
                c(0.1)
            } else {
                c(0.0)
            }
        });
        assert!(ProductState::uniform(skew).is_err());
        assert!(ProductState::uniform(half_13()).is_ok());
    }

    #[test]
    fn uniform_state_is_unital() {
        let w = ProductState::uniform(ComplexMatrix::identity(3).scale_real(1.0 / 3.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for n in 0..4 {
            assert!((w.eval(&GasketElement::identity(n)).unwrap() - c(1.0)).norm() < 1e-14);
            let e = random_element(n, &mut rng);
            assert!((w.eval(&e).unwrap() - trace_tau(&e)).norm() < 1e-12);
        }
    }

    #[test]
    fn e22_state_on_alpha() {
        let w = ProductState::uniform(ProductState::vector_state(2).unwrap()).unwrap();
        for n in 0..4 {
            for j in 1..=3 {
                let v = w.eval(&GasketElement::alpha(n, j).unwrap()).unwrap();
                assert_eq!(v, c(if j == 2 { 1.0 } else { 0.0 }));
            }
        }
    }

    #[test]
    fn half_chi_state() {
        let w = ProductState::new(vec![half_13()], ProductState::vector_state(2).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for n in 0..4 {
            let e = random_element(n, &mut rng);
            let want = (char_chi(&e, 1).unwrap() + char_chi(&e, 3).unwrap()) * 0.5;
            assert!((w.eval(&e).unwrap() - want).norm() < 1e-12);
        }
    }

    #[test]
    fn eval_dense_kron_factorizes() {
        let w = ProductState::new(
            vec![half_13()],
            ComplexMatrix::identity(3).scale_real(1.0 / 3.0),
        )
        .unwrap();
        let a = matrix_unit(3, 1, 3).unwrap();
        let b = matrix_unit(3, 2, 2).unwrap();
        let v = w.eval_dense(&kron(&a, &b).unwrap()).unwrap();
        assert!((v - c(0.5 / 3.0)).norm() < 1e-15);
        assert!(w.eval_dense(&ComplexMatrix::zeros(4)).is_err());
    }
}
