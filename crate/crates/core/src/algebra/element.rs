use num_complex::Complex64;

use crate::error::{GasketError, Result};
use crate::tensor::{op_norm, pow3, trace, wrap_index, ComplexMatrix};

/// Relative tolerance for membership in `A_n`.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// An element of the level-`n` approximation algebra `A_n ⊂ M_3(C)^{⊗(n+1)}`
/// in canonical block form.
///
/// The element is `Σ_j ξ_j α^n_j + Σ_{k<n} Σ_j η_{k,j} ⊗ β^{n-k}_j`, where
/// `α^n_j = e_jj ⊗ e_22^{⊗n}` and
/// `β^g_j = (e_jj ⊗ e_11 + e_{j+2,j+2} ⊗ e_33) ⊗ e_22^{⊗(g-1)}`.
/// Block `(k, j)` is a `3^k × 3^k` matrix placed on the leading `k` factors.
/// All generators live on mutually orthogonal projections, so products,
/// adjoints and norms act component by component.
#[derive(Clone, Debug, PartialEq)]
pub struct GasketElement {
    level: usize,
    xi: [Complex64; 3],
    blocks: Vec<[ComplexMatrix; 3]>,
}

fn check_j(j: usize) -> Result<()> {
    if (1..=3).contains(&j) {
        Ok(())
    } else {
        Err(GasketError::IndexOutOfRange {
            what: "j",
            index: j,
        })
    }
}

/// Flattened index of `α^n_j` on its diagonal.
pub(crate) fn alpha_index(n: usize, j: usize) -> usize {
    // digits: (j-1, 1, 1, ..., 1)
    (j - 1) * pow3(n) + (pow3(n) - 1) / 2
}

/// The two trailing-digit offsets of the rank-2 projection in `β^g_j`,
/// expressed as indices in `(C^3)^{⊗(g+1)}`.
pub(crate) fn beta_tails(g: usize, j: usize) -> [usize; 2] {
    let twos = (pow3(g - 1) - 1) / 2;
    let first = (j - 1) * pow3(g) + twos;
    let second = (wrap_index(j as i64 + 2) - 1) * pow3(g) + 2 * pow3(g - 1) + twos;
    [first, second]
}

impl GasketElement {
    pub fn zero(level: usize) -> Self {
        Self {
            level,
            xi: [ZERO; 3],
            blocks: (0..level)
                .map(|k| std::array::from_fn(|_| ComplexMatrix::zeros(pow3(k))))
                .collect(),
        }
    }

    /// The unit of `A_n`: `ξ = (1,1,1)`, every block the identity.
    pub fn identity(level: usize) -> Self {
        Self {
            level,
            xi: [ONE; 3],
            blocks: (0..level)
                .map(|k| std::array::from_fn(|_| ComplexMatrix::identity(pow3(k))))
                .collect(),
        }
    }

    /// Builds an element from its components, validating block sizes.
    pub fn from_parts(
        level: usize,
        xi: [Complex64; 3],
        blocks: Vec<[ComplexMatrix; 3]>,
    ) -> Result<Self> {
        if blocks.len() != level {
            return Err(GasketError::DimensionMismatch {
                expected: level,
                found: blocks.len(),
            });
        }
        for (k, family) in blocks.iter().enumerate() {
            for b in family {
                if b.dim() != pow3(k) {
                    return Err(GasketError::DimensionMismatch {
                        expected: pow3(k),
                        found: b.dim(),
                    });
                }
            }
        }
        Ok(Self { level, xi, blocks })
    }

    /// `α^n_j`, the characteristic function of the root vertex `v_j`.
    pub fn alpha(level: usize, j: usize) -> Result<Self> {
        check_j(j)?;
        let mut e = Self::zero(level);
        e.xi[j - 1] = ONE;
        Ok(e)
    }

    /// `x ⊗ β^k_j` with `x ∈ M_3^{⊗(n-k)}`, i.e. block `(n-k, j)` set to `x`.
    pub fn beta_block(level: usize, k: usize, j: usize, x: ComplexMatrix) -> Result<Self> {
        check_j(j)?;
        if k == 0 || k > level {
            return Err(GasketError::IndexOutOfRange {
                what: "k",
                index: k,
            });
        }
        let block = level - k;
        if x.dim() != pow3(block) {
            return Err(GasketError::DimensionMismatch {
                expected: pow3(block),
                found: x.dim(),
            });
        }
        let mut e = Self::zero(level);
        e.blocks[block][j - 1] = x;
        Ok(e)
    }

    #[inline]
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn xi(&self) -> &[Complex64; 3] {
        &self.xi
    }

    pub fn blocks(&self) -> &[[ComplexMatrix; 3]] {
        &self.blocks
    }

    /// Block `η_{k,j}` without index checks beyond slicing.
    pub fn block(&self, k: usize, j: usize) -> &ComplexMatrix {
        &self.blocks[k][j - 1]
    }

    /// The character `ξ_j`.
    pub fn character_xi(&self, j: usize) -> Result<Complex64> {
        check_j(j)?;
        Ok(self.xi[j - 1])
    }

    /// The representation `η_{k,j}` onto `M_3^{⊗k}`.
    pub fn rep_eta(&self, k: usize, j: usize) -> Result<ComplexMatrix> {
        check_j(j)?;
        if k >= self.level {
            return Err(GasketError::IndexOutOfRange {
                what: "k",
                index: k,
            });
        }
        Ok(self.blocks[k][j - 1].clone())
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            Err(GasketError::LevelMismatch {
                left: self.level,
                right: other.level,
            })
        } else {
            Ok(())
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        fx: impl Fn(Complex64, Complex64) -> Complex64,
        fb: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        self.check_level(other)?;
        Ok(Self {
            level: self.level,
            xi: std::array::from_fn(|i| fx(self.xi[i], other.xi[i])),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| std::array::from_fn(|i| fb(&a[i], &b[i])))
                .collect(),
        })
    }

    fn map(
        &self,
        fx: impl Fn(Complex64) -> Complex64,
        fb: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    ) -> Self {
        Self {
            level: self.level,
            xi: self.xi.map(&fx),
            blocks: self
                .blocks
                .iter()
                .map(|f| std::array::from_fn(|i| fb(&f[i])))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b, |a, b| a - b)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: Complex64, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + c * b, |a, b| a.axpy(c, b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|a| a * c, |b| b.scale(c))
    }

    pub fn adjoint(&self) -> Self {
        self.map(|a| a.conj(), |b| b.adjoint())
    }

    /// Operator norm via the orthogonal-support formula
    /// `max(max_j |ξ_j|, max_{k,j} ‖η_{k,j}‖)`.
    pub fn norm(&self) -> Result<f64> {
        let mut best = self.xi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for family in &self.blocks {
            for b in family {
                best = best.max(op_norm(b)?);
            }
        }
        Ok(best)
    }

    /// Non-normalized trace of the dense realization; each block sits on a
    /// rank-2 projection, hence the factor 2.
    pub fn dense_trace(&self) -> Complex64 {
        let xi: Complex64 = self.xi.iter().sum();
        let blocks: Complex64 = self.blocks.iter().flat_map(|f| f.iter()).map(trace).sum();
        xi + blocks * 2.0
    }

    /// Largest componentwise deviation between two elements of the same level.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_level(other)?;
        let mut d = self
            .xi
            .iter()
            .zip(&other.xi)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        for (fa, fb) in self.blocks.iter().zip(&other.blocks) {
            for (a, b) in fa.iter().zip(fb) {
                d = d.max(crate::tensor::max_abs_diff(a, b));
            }
        }
        Ok(d)
    }

    pub fn max_abs(&self) -> f64 {
        let mut d = self.xi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for f in &self.blocks {
            for b in f {
                d = d.max(b.max_abs());
            }
        }
        d
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        matches!(self.max_abs_diff(other), Ok(d) if d <= tol)
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    /// Dense realization in `M_3^{⊗(n+1)}`.
    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.level;
        let mut out = ComplexMatrix::zeros(pow3(n + 1));
        for j in 1..=3 {
            let idx = alpha_index(n, j);
            out.set(idx, idx, self.xi[j - 1]);
        }
        for (k, family) in self.blocks.iter().enumerate() {
            let g = n - k;
            let stride = pow3(g + 1);
            for j in 1..=3 {
                let x = &family[j - 1];
                for tail in beta_tails(g, j) {
                    for p in 0..x.dim() {
                        for q in 0..x.dim() {
                            out.set(p * stride + tail, q * stride + tail, x.get(p, q));
                        }
                    }
                }
            }
        }
        out
    }

    /// Orthogonal (Hilbert–Schmidt) projection of a dense matrix onto the
    /// span of the canonical generators, without a membership check.
    pub fn project_dense(a: &ComplexMatrix, level: usize) -> Result<Self> {
        let dim = pow3(level + 1);
        if a.dim() != dim {
            return Err(GasketError::DimensionMismatch {
                expected: dim,
                found: a.dim(),
            });
        }
        let mut e = Self::zero(level);
        for j in 1..=3 {
            let idx = alpha_index(level, j);
            e.xi[j - 1] = a.get(idx, idx);
        }
        for k in 0..level {
            let g = level - k;
            let stride = pow3(g + 1);
            for j in 1..=3 {
                let [t1, t2] = beta_tails(g, j);
                let block = ComplexMatrix::from_fn(pow3(k), |p, q| {
                    (a.get(p * stride + t1, q * stride + t1)
                        + a.get(p * stride + t2, q * stride + t2))
                        * 0.5
                });
                e.blocks[k][j - 1] = block;
            }
        }
        Ok(e)
    }

    /// Reads the canonical block form off a dense matrix; rejects matrices
    /// whose distance to `A_n` exceeds the membership tolerance.
    pub fn from_dense(a: &ComplexMatrix, level: usize) -> Result<Self> {
        let e = Self::project_dense(a, level)?;
        let residual = (a - &e.to_dense()).frobenius();
        if residual > MEMBERSHIP_TOL * a.frobenius() {
            return Err(GasketError::NotInAlgebra { residual });
        }
        Ok(e)
    }

    /// The restriction `ρ: A_n → A_{n-1}` (`id ⊗ e_22^*` on the dense side):
    /// the youngest block family is discarded.
    pub fn restrict(&self) -> Result<Self> {
        if self.level == 0 {
            return Err(GasketError::InvalidLevel {
                level: 0,
                requested: 0,
            });
        }
        Ok(Self {
            level: self.level - 1,
            xi: self.xi,
            blocks: self.blocks[..self.level - 1].to_vec(),
        })
    }

    pub fn restrict_to(&self, m: usize) -> Result<Self> {
        if m > self.level {
            return Err(GasketError::InvalidLevel {
                level: self.level,
                requested: m,
            });
        }
        Ok(Self {
            level: m,
            xi: self.xi,
            blocks: self.blocks[..m].to_vec(),
        })
    }

    /// The non-unital embedding `a ↦ a ⊗ e_22` into `A_{n+1}`.
    pub fn coembed(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.push(std::array::from_fn(|_| {
            ComplexMatrix::zeros(pow3(self.level))
        }));
        Self {
            level: self.level + 1,
            xi: self.xi,
            blocks,
        }
    }

    /// The conditional expectation onto the classical subalgebra `C(V_n)`:
    /// every block is cut down to its diagonal.
    pub fn cond_expectation(&self) -> Self {
        self.map(|a| a, |b| b.diagonal_part())
    }

    /// True when every block is diagonal, i.e. the element lies in `C(V_n)`.
    pub fn is_classical(&self) -> bool {
        self.blocks
            .iter()
            .flat_map(|f| f.iter())
            .all(|b| b.is_diagonal())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }
}
