//! Brute-force dense reference implementations.
//!
//! Everything here is built from Kronecker products of matrix units and
//! explicit index loops, independently of the block-form fast paths. Tests
//! compare the two; nothing in the library proper calls into this module.

use num_complex::Complex64;

use crate::algebra::GasketElement;
use crate::error::{GasketError, Result};
use crate::tensor::{kron, kron_all, kron_power, pow3, unit3, wrap_index, ComplexMatrix};

fn check_dim(a: &ComplexMatrix) -> Result<usize> {
    let mut d = 1;
    let mut factors = 0;
    while d < a.dim() {
        d *= 3;
        factors += 1;
    }
    if d != a.dim() || factors == 0 {
        return Err(GasketError::DimensionMismatch {
            expected: d.max(3),
            found: a.dim(),
        });
    }
    Ok(factors)
}

/// `α^n_j` as an explicit Kronecker product.
pub fn dense_alpha(n: usize, j: usize) -> Result<ComplexMatrix> {
    kron(&unit3(j, j), &kron_power(&unit3(2, 2), n)?)
}

/// `β^g_j` as an explicit Kronecker sum, `g ≥ 1`.
pub fn dense_beta(g: usize, j: usize) -> Result<ComplexMatrix> {
    let tail = kron_power(&unit3(2, 2), g - 1)?;
    let jj = wrap_index(j as i64 + 2);
    let a = kron_all([&unit3(j, j), &unit3(1, 1), &tail])?;
    let b = kron_all([&unit3(jj, jj), &unit3(3, 3), &tail])?;
    Ok(&a + &b)
}

/// `Σ ξ_j α^n_j + Σ η_{k,j} ⊗ β^{n-k}_j` summed densely.
pub fn dense_from_generators(e: &GasketElement) -> Result<ComplexMatrix> {
    let n = e.level();
    let mut out = ComplexMatrix::zeros(pow3(n + 1));
    for j in 1..=3 {
        out = out.axpy(e.xi()[j - 1], &dense_alpha(n, j)?);
    }
    for k in 0..n {
        for j in 1..=3 {
            let term = kron(e.block(k, j), &dense_beta(n - k, j)?)?;
            out = &out + &term;
        }
    }
    Ok(out)
}

/// `(id ⊗ e_22^*)(a)`: the `(2,2)` entry of the last factor.
pub fn dense_restrict(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim(a)?;
    let m = a.dim() / 3;
    Ok(ComplexMatrix::from_fn(m, |p, q| {
        a.get(3 * p + 1, 3 * q + 1)
    }))
}

/// `a(v_i) = (id ⊗ e_ii^*)(a)` for `i = 1, 2, 3`.
pub fn dense_v0_values(a: &ComplexMatrix) -> Result<[ComplexMatrix; 3]> {
    check_dim(a)?;
    let m = a.dim() / 3;
    Ok(std::array::from_fn(|i| {
        ComplexMatrix::from_fn(m, |p, q| a.get(3 * p + i, 3 * q + i))
    }))
}

/// `Σ_{i≠j} ‖a(v_i) − a(v_j)‖_F²` over ordered pairs.
pub fn dense_energy(a: &ComplexMatrix) -> Result<f64> {
    let v = dense_v0_values(a)?;
    let mut e = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                e += (&v[i] - &v[j]).frobenius_sqr();
            }
        }
    }
    Ok(e)
}

/// `λ^t(α^0_j) = α^1_j + (1-t)β_j + (1-t)β_{j+1} + (2t-1)β_{j-1}` in `M_3 ⊗ M_3`.
pub fn dense_lambda_unit(j: usize, t: f64) -> Result<ComplexMatrix> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut out = dense_alpha(1, j)?;
    out = out.axpy(c(1.0 - t), &dense_beta(1, j)?);
    out = out.axpy(c(1.0 - t), &dense_beta(1, wrap_index(j as i64 + 1))?);
    out = out.axpy(c(2.0 * t - 1.0), &dense_beta(1, wrap_index(j as i64 - 1))?);
    Ok(out)
}

/// `Σ_i a(v_i) ⊗ λ^t(e_ii)` for a dense element of `A_n`.
pub fn dense_symmetric_extension(a: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let v = dense_v0_values(a)?;
    let mut out = ComplexMatrix::zeros(a.dim() * 3);
    for (i, vi) in v.iter().enumerate() {
        out = &out + &kron(vi, &dense_lambda_unit(i + 1, t)?)?;
    }
    Ok(out)
}

/// Edge-pair ordering `(1,2),(1,3),(2,1),(2,3),(3,1),(3,2)`, 1-based.
pub const EDGE_PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

/// `π_n(a)` on `(C^3)^{⊗n} ⊗ C^6`: block-diagonal with `a(v_k)` on pair `(k, l)`.
pub fn dense_pi(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let v = dense_v0_values(a)?;
    let m = a.dim() / 3;
    let mut out = ComplexMatrix::zeros(6 * m);
    for (p, &(k, _)) in EDGE_PAIRS.iter().enumerate() {
        for r in 0..m {
            for s in 0..m {
                out.set(6 * r + p, 6 * s + p, v[k - 1].get(r, s));
            }
        }
    }
    Ok(out)
}

/// The flip `e_kl ↦ e_lk` on `(C^3)^{⊗n} ⊗ C^6`.
pub fn dense_flip(n: usize) -> ComplexMatrix {
    let m = pow3(n);
    let mut out = ComplexMatrix::zeros(6 * m);
    for (p, &(k, l)) in EDGE_PAIRS.iter().enumerate() {
        let q = EDGE_PAIRS
            .iter()
            .position(|&x| x == (l, k))
            .expect("pair list is closed under swap");
        for r in 0..m {
            out.set(6 * r + q, 6 * r + p, Complex64::new(1.0, 0.0));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_projections() {
        for n in 0..3 {
            for j in 1..=3 {
                let a = dense_alpha(n, j).unwrap();
                assert_eq!(&a * &a, a);
                if n >= 1 {
                    let b = dense_beta(n, j).unwrap();
                    assert_eq!(&b * &b, b);
                    assert_eq!((&a * &b).max_abs(), 0.0);
                }
            }
        }
    }

    #[test]
    fn lambda_units_sum_to_identity() {
        for t in [0.5, 0.6, 0.9] {
            let mut s = ComplexMatrix::zeros(9);
            for j in 1..=3 {
                s = &s + &dense_lambda_unit(j, t).unwrap();
            }
            let id = GasketElement::identity(1).to_dense();
            assert!(crate::tensor::max_abs_diff(&s, &id) < 1e-15);
        }
    }

    #[test]
    fn flip_is_involution() {
        let f = dense_flip(2);
        assert_eq!(&f * &f, ComplexMatrix::identity(54));
        assert!(dense_restrict(&ComplexMatrix::zeros(4)).is_err());
    }
}
