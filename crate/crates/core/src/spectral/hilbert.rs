use num_complex::Complex64;

use crate::algebra::{GasketElement, V0Form};
use crate::error::{GasketError, Result};
use crate::tensor::{kron_with_cap, op_norm, pow3, ComplexMatrix, Word, DENSE_DIM_CAP};

/// Off-diagonal matrix units spanning `E`, in storage order (1-based).
pub const EDGE_UNITS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

/// Storage slot of the transposed unit.
const TRANSPOSED: [usize; 6] = [2, 4, 0, 5, 1, 3];

pub fn edge_unit_index(i: usize, j: usize) -> Result<usize> {
    EDGE_UNITS
        .iter()
        .position(|&u| u == (i, j))
        .ok_or(GasketError::IndexOutOfRange {
            what: "edge unit",
            index: 10 * i + j,
        })
}

/// A vector of `H_n = (C^3)^{⊗n} ⊗ E`, stored at `word_index · 6 + unit`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeStateVector {
    level: usize,
    amplitudes: Vec<Complex64>,
}

impl EdgeStateVector {
    pub fn zeros(level: usize) -> Self {
        Self {
            level,
            amplitudes: vec![Complex64::new(0.0, 0.0); 6 * pow3(level)],
        }
    }

    pub fn from_amplitudes(level: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = 6 * pow3(level);
        if amplitudes.len() != dim {
            return Err(GasketError::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        Ok(Self { level, amplitudes })
    }

    pub fn basis(word: &Word, i: usize, j: usize) -> Result<Self> {
        let mut v = Self::zeros(word.len());
        let idx = 6 * word.index() + edge_unit_index(i, j)?;
        v.amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn get(&self, word: &Word, i: usize, j: usize) -> Result<Complex64> {
        if word.len() != self.level {
            return Err(GasketError::LevelMismatch {
                left: self.level,
                right: word.len(),
            });
        }
        Ok(self.amplitudes[6 * word.index() + edge_unit_index(i, j)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// `F_n(x ⊗ m) = x ⊗ m^T`.
pub fn apply_f(v: &EdgeStateVector) -> EdgeStateVector {
    let mut out = v.clone();
    for (w, chunk) in v.amplitudes.chunks(6).enumerate() {
        for (u, z) in chunk.iter().enumerate() {
            out.amplitudes[6 * w + TRANSPOSED[u]] = *z;
        }
    }
    out
}

fn level_values(a: &GasketElement, n: usize) -> Result<V0Form> {
    Ok(a.restrict_to(n)?.to_v0form())
}

/// `π_n(a) = ρ_n(a)` acting on `H_n`: on the unit `e_kl` the word part is
/// multiplied by `ρ_n(a)(v_k)`.
pub fn apply_pi(a: &GasketElement, v: &EdgeStateVector) -> Result<EdgeStateVector> {
    let f = level_values(a, v.level)?;
    let m = pow3(v.level);
    let mut out = EdgeStateVector::zeros(v.level);
    for (u, &(k, _)) in EDGE_UNITS.iter().enumerate() {
        let x: Vec<Complex64> = (0..m).map(|w| v.amplitudes[6 * w + u]).collect();
        for (w, z) in f.value(k).apply(&x).into_iter().enumerate() {
            out.amplitudes[6 * w + u] = z;
        }
    }
    Ok(out)
}

/// `‖[F_n, π_n(a)]‖ = osc(ρ_n(a))`.
pub fn commutator_norm(a: &GasketElement, n: usize) -> Result<f64> {
    level_values(a, n)?.osc()
}

/// `tr π_n(a)` over `H_n`; each letter `k` pairs with two units `e_kl`.
pub fn hilbert_trace(a: &GasketElement, n: usize) -> Result<Complex64> {
    let f = level_values(a, n)?;
    Ok(EDGE_UNITS
        .iter()
        .map(|&(k, _)| crate::tensor::trace(f.value(k)))
        .sum())
}

/// `tr |[D_n, π_n(a)]|² = 4^n E_n[ρ_n(a)]`.
pub fn commutator_hs_sqr(a: &GasketElement, n: usize) -> Result<f64> {
    let e = crate::energy::energy(&level_values(a, n)?).energy;
    Ok(4f64.powi(n as i32) * e)
}

/// Dense matrix of `π_n(a)` on `H_n`.
pub fn pi_matrix(a: &GasketElement, n: usize) -> Result<ComplexMatrix> {
    let dim = 6 * pow3(n);
    if dim > DENSE_DIM_CAP {
        return Err(GasketError::DimensionCap {
            dim,
            cap: DENSE_DIM_CAP,
        });
    }
    let f = level_values(a, n)?;
    let mut out = ComplexMatrix::zeros(dim);
    for (u, &(k, _)) in EDGE_UNITS.iter().enumerate() {
        let mut sel = ComplexMatrix::zeros(6);
        sel.set(u, u, Complex64::new(1.0, 0.0));
        out = &out + &kron_with_cap(f.value(k), &sel, DENSE_DIM_CAP)?;
    }
    Ok(out)
}

/// Dense matrix of `F_n`.
pub fn flip_matrix(n: usize) -> Result<ComplexMatrix> {
    let mut f6 = ComplexMatrix::zeros(6);
    for (u, &t) in TRANSPOSED.iter().enumerate() {
        f6.set(t, u, Complex64::new(1.0, 0.0));
    }
    kron_with_cap(&ComplexMatrix::identity(pow3(n)), &f6, DENSE_DIM_CAP)
}

/// `‖[F_n, π_n(a)]‖` from the singular values of the dense commutator.
pub fn dense_commutator_norm(a: &GasketElement, n: usize) -> Result<f64> {
    let p = pi_matrix(a, n)?;
    op_norm(&flip_matrix(n)?.commutator(&p)?)
}

/// `tr |[D_n, π_n(a)]|²` summed over the dense commutator.
pub fn dense_commutator_hs_sqr(a: &GasketElement, n: usize) -> Result<f64> {
    let p = pi_matrix(a, n)?;
    Ok(4f64.powi(n as i32) * flip_matrix(n)?.commutator(&p)?.frobenius_sqr())
}
