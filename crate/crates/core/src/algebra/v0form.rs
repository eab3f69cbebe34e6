use num_complex::Complex64;

use super::element::{GasketElement, MEMBERSHIP_TOL};
use crate::error::{GasketError, Result};
use crate::tensor::{kron, op_norm, pow3, wrap_index, ComplexMatrix};

/// An `M_3^{⊗n}`-valued function on the three root vertices, i.e. an element
/// of `M_3(C)^{⊗n} ⊗ C(V_0)` read off the last tensor factor.
#[derive(Clone, Debug, PartialEq)]
pub struct V0Form {
    level: usize,
    values: [ComplexMatrix; 3],
}

/// The three unordered root-vertex pairs, 1-based.
pub const VERTEX_PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

fn level_of_dim(dim: usize) -> Option<usize> {
    let mut level = 0;
    let mut d = 1;
    while d < dim {
        d *= 3;
        level += 1;
    }
    (d == dim).then_some(level)
}

impl V0Form {
    pub fn new(values: [ComplexMatrix; 3]) -> Result<Self> {
        let dim = values[0].dim();
        for v in &values[1..] {
            if v.dim() != dim {
                return Err(GasketError::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        let level = level_of_dim(dim).ok_or(GasketError::DimensionMismatch {
            expected: pow3(1),
            found: dim,
        })?;
        Ok(Self { level, values })
    }

    pub fn constant(value: ComplexMatrix) -> Result<Self> {
        Self::new([value.clone(), value.clone(), value])
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Value at root vertex `v_i` (1-based).
    pub fn value(&self, i: usize) -> &ComplexMatrix {
        &self.values[i - 1]
    }

    pub fn values(&self) -> &[ComplexMatrix; 3] {
        &self.values
    }

    pub fn adjoint(&self) -> Self {
        Self {
            level: self.level,
            values: std::array::from_fn(|i| self.values[i].adjoint()),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(GasketError::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(Self {
            level: self.level,
            values: std::array::from_fn(|i| &self.values[i] - &other.values[i]),
        })
    }

    /// `max_{i≠j} ‖a(v_i) − a(v_j)‖`.
    pub fn osc(&self) -> Result<f64> {
        let mut best: f64 = 0.0;
        for (i, j) in VERTEX_PAIRS {
            best = best.max(op_norm(&(self.value(i) - self.value(j)))?);
        }
        Ok(best)
    }

    /// Contracts the first tensor factor against `e_{ij}` (1-based), giving a
    /// form one level down. The result need not come from `A_{n-1}`.
    pub fn slice_first(&self, i: usize, j: usize) -> Result<Self> {
        if self.level == 0 {
            return Err(GasketError::InvalidLevel {
                level: 0,
                requested: 0,
            });
        }
        if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
            return Err(GasketError::IndexOutOfRange {
                what: "slice",
                index: i.max(j),
            });
        }
        let values = [0, 1, 2].map(|v| self.values[v].first_factor_block(i - 1, j - 1));
        let [a, b, c] = values;
        Ok(Self {
            level: self.level - 1,
            values: [a?, b?, c?],
        })
    }

    /// `Σ_i a(v_i) ⊗ e_ii` in `M_3^{⊗(n+1)}`.
    pub fn to_dense(&self) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::zeros(pow3(self.level + 1));
        for i in 0..3 {
            let d = kron(&self.values[i], &diag_unit(i))?;
            out = &out + &d;
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| crate::tensor::max_abs_diff(&self.values[i], &other.values[i]))
            .fold(0.0, f64::max)
    }
}

fn diag_unit(i: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3);
    m.set(i, i, Complex64::new(1.0, 0.0));
    m
}

/// `Σ_j x_j ⊗ e_{σ(j)σ(j)}` for the level's youngest blocks, with the
/// diagonal slot chosen by `slot`.
fn youngest_value(e: &GasketElement, slot: impl Fn(usize) -> usize) -> ComplexMatrix {
    let k = e.level() - 1;
    let inner = pow3(k);
    let mut out = ComplexMatrix::zeros(3 * inner);
    for j in 1..=3 {
        let x = e.block(k, j);
        let s = slot(j) - 1;
        for p in 0..inner {
            for q in 0..inner {
                out.set(3 * p + s, 3 * q + s, x.get(p, q));
            }
        }
    }
    out
}

impl GasketElement {
    /// Evaluates the last tensor factor at the three diagonal positions.
    pub fn to_v0form(&self) -> V0Form {
        let values = if self.level() == 0 {
            self.xi().map(ComplexMatrix::scalar)
        } else {
            let v2 = self.restrict().expect("level >= 1").to_dense();
            let v1 = youngest_value(self, |j| j);
            let v3 = youngest_value(self, |j| wrap_index(j as i64 + 2));
            [v1, v2, v3]
        };
        V0Form {
            level: self.level(),
            values,
        }
    }

    /// Inverse of [`GasketElement::to_v0form`]; fails when the form is not
    /// the evaluation of an element of `A_n`.
    pub fn from_v0form(f: &V0Form) -> Result<Self> {
        let n = f.level();
        let candidate = if n == 0 {
            let xi = [0, 1, 2].map(|i| f.values()[i].get(0, 0));
            GasketElement::from_parts(0, xi, Vec::new())?
        } else {
            let lower = GasketElement::project_dense(f.value(2), n - 1)?;
            let mut blocks = lower.blocks().to_vec();
            let inner = pow3(n - 1);
            let top: [ComplexMatrix; 3] = std::array::from_fn(|idx| {
                let j = idx + 1;
                let s1 = j - 1;
                let s3 = wrap_index(j as i64 + 2) - 1;
                ComplexMatrix::from_fn(inner, |p, q| {
                    (f.value(1).get(3 * p + s1, 3 * q + s1)
                        + f.value(3).get(3 * p + s3, 3 * q + s3))
                        * 0.5
                })
            });
            blocks.push(top);
            GasketElement::from_parts(n, *lower.xi(), blocks)?
        };
        let back = candidate.to_v0form();
        let residual = (0..3)
            .map(|i| (&f.values()[i] - &back.values()[i]).frobenius_sqr())
            .sum::<f64>()
            .sqrt();
        let scale = (0..3)
            .map(|i| f.values()[i].frobenius_sqr())
            .sum::<f64>()
            .sqrt();
        if residual > MEMBERSHIP_TOL * scale {
            return Err(GasketError::NotInAlgebra { residual });
        }
        Ok(candidate)
    }

    /// Oscillation of the element's root-vertex values.
    ///
    /// The values are diagonal in their last factor, so each difference is
    /// normed block by block.
    pub fn osc(&self) -> Result<f64> {
        let f = self.to_v0form();
        if self.level() == 0 {
            return f.osc();
        }
        let mut best: f64 = 0.0;
        for (i, j) in VERTEX_PAIRS {
            let d = f.value(i) - f.value(j);
            for p in 0..3 {
                best = best.max(op_norm(&d.last_factor_block(p, p)?)?);
            }
        }
        Ok(best)
    }
}
