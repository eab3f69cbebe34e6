//! Dense complex matrices over `M_3(C)^{⊗k}`.
//!
//! This is the ground-truth layer: every blockwise computation elsewhere in
//! the crate can be checked against a dense realization built from these
//! primitives. Tensor factors are flattened lexicographically with the left
//! factor as the most significant base-3 digit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{GasketError, Result};

/// Default cap on the dimension of dense matrices produced by [`kron`].
pub const DENSE_DIM_CAP: usize = 2187;

/// Largest dimension for which [`op_norm`] uses a full singular value decomposition.
pub const EXACT_NORM_DIM: usize = 729;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 10_000;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// The 1×1 matrix holding `c`.
    pub fn scalar(c: Complex64) -> Self {
        Self {
            dim: 1,
            data: vec![c],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries; the length must be a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(GasketError::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GasketError::ParameterOutOfRange {
                name: "matrix entry",
                value: f64::NAN,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * m.dim + i] = *v;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `self + c * other`, the workhorse of linear combinations.
    pub fn axpy(&self, c: Complex64, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in axpy");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + c * b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(GasketError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Sum of squared moduli, i.e. `tr(A* A)`.
    pub fn frobenius_sqr(&self) -> f64 {
        compensated_sum(self.data.iter().map(|z| z.norm_sqr()))
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == Complex64::new(0.0, 0.0)))
    }

    /// Keeps the diagonal, zeroes everything else.
    pub fn diagonal_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            if i == j {
                self.get(i, j)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn diagonal_entries(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(GasketError::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        Ok(Self::from_fn(m.nrows(), |i, j| m[(i, j)]))
    }

    /// Sub-block of a matrix viewed as `M_3 ⊗ M_rest`: rows/columns whose
    /// leading base-3 digit is `i`/`j` (0-based).
    pub fn first_factor_block(&self, i: usize, j: usize) -> Result<Self> {
        if !self.dim.is_multiple_of(3) {
            return Err(GasketError::DimensionMismatch {
                expected: 3 * (self.dim / 3).max(1),
                found: self.dim,
            });
        }
        let rest = self.dim / 3;
        Ok(Self::from_fn(rest, |p, q| {
            self.get(i * rest + p, j * rest + q)
        }))
    }

    /// Sub-block of a matrix viewed as `M_rest ⊗ M_3`: rows/columns whose
    /// trailing base-3 digit is `i`/`j` (0-based).
    pub fn last_factor_block(&self, i: usize, j: usize) -> Result<Self> {
        if !self.dim.is_multiple_of(3) {
            return Err(GasketError::DimensionMismatch {
                expected: 3 * (self.dim / 3).max(1),
                found: self.dim,
            });
        }
        let rest = self.dim / 3;
        Ok(Self::from_fn(rest, |p, q| self.get(3 * p + i, 3 * q + j)))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && max_abs_diff(self, other) <= tol
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        if self.dim <= 9 {
            for i in 0..self.dim {
                let row: Vec<String> = self
                    .row(i)
                    .iter()
                    .map(|z| format!("{:.4}{:+.4}i", z.re, z.im))
                    .collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.axpy(Complex64::new(1.0, 0.0), rhs)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.axpy(Complex64::new(-1.0, 0.0), rhs)
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
            .expect("dimension mismatch in matrix product")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

/// Neumaier-compensated sum; energies add up millions of squares and two
/// routes to the same energy must agree to a few ulps.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        carry += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
    }
    sum + carry
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.dim, b.dim, "dimension mismatch");
    a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Matrix unit `e_{ij}` of size `dim` (1-based indices).
pub fn matrix_unit(dim: usize, i: usize, j: usize) -> Result<ComplexMatrix> {
    if i == 0 || i > dim {
        return Err(GasketError::IndexOutOfRange {
            what: "row",
            index: i,
        });
    }
    if j == 0 || j > dim {
        return Err(GasketError::IndexOutOfRange {
            what: "column",
            index: j,
        });
    }
    let mut m = ComplexMatrix::zeros(dim);
    m.set(i - 1, j - 1, Complex64::new(1.0, 0.0));
    Ok(m)
}

/// Matrix unit `e_{ij}` of `M_3` with indices reduced into `{1,2,3}`.
pub(crate) fn unit3(i: usize, j: usize) -> ComplexMatrix {
    matrix_unit(3, wrap_index(i as i64), wrap_index(j as i64)).expect("wrapped index")
}

/// Kronecker product with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, DENSE_DIM_CAP)
}

pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let dim = a.dim.checked_mul(b.dim).ok_or(GasketError::DimensionCap {
        dim: usize::MAX,
        cap,
    })?;
    if dim > cap {
        return Err(GasketError::DimensionCap { dim, cap });
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i1 in 0..a.dim {
        for j1 in 0..a.dim {
            let x = a.get(i1, j1);
            if x.re == 0.0 && x.im == 0.0 {
                continue;
            }
            for i2 in 0..b.dim {
                for j2 in 0..b.dim {
                    out.set(i1 * b.dim + i2, j1 * b.dim + j2, x * b.get(i2, j2));
                }
            }
        }
    }
    Ok(out)
}

/// `m^{⊗k}`, with `m^{⊗0}` the 1×1 identity.
pub fn kron_power(m: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::identity(1);
    for _ in 0..k {
        out = kron(&out, m)?;
    }
    Ok(out)
}

/// Kronecker product of a sequence of factors, left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::identity(1);
    for f in factors {
        out = kron(&out, f)?;
    }
    Ok(out)
}

/// Non-normalized matrix trace.
pub fn trace(a: &ComplexMatrix) -> Complex64 {
    (0..a.dim).map(|i| a.get(i, i)).sum()
}

/// Operator norm (largest singular value).
pub fn op_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.dim <= EXACT_NORM_DIM {
        Ok(exact_op_norm(a))
    } else {
        power_op_norm(a, POWER_TOL, POWER_MAX_ITER)
    }
}

fn exact_op_norm(a: &ComplexMatrix) -> f64 {
    if a.dim == 1 {
        return a.get(0, 0).norm();
    }
    if a.data.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
        return 0.0;
    }
    let m = a.to_nalgebra();
    m.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Power iteration on `A* A`; reports the achieved relative change when the
/// iteration budget runs out.
pub fn power_op_norm(a: &ComplexMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    let n = a.dim;
    let adj = a.adjoint();
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + (i as f64 * 0.618_033_988_75).fract(), 0.0))
        .collect();
    normalize(&mut v);
    let mut prev = 0.0;
    let mut change = f64::INFINITY;
    for _ in 0..max_iter {
        let mut w = adj.apply(&a.apply(&v));
        let lambda = vec_norm(&w);
        if lambda == 0.0 {
            return Ok(0.0);
        }
        for z in w.iter_mut() {
            *z /= lambda;
        }
        v = w;
        change = (lambda - prev).abs() / lambda;
        if change < tol {
            return Ok(lambda.sqrt());
        }
        prev = lambda;
    }
    Err(GasketError::NonConvergence {
        iterations: max_iter,
        achieved: change,
    })
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = vec_norm(v);
    for z in v.iter_mut() {
        *z /= n;
    }
}

/// Reduces an integer into the representative set `{1,2,3}` of `Z/3`.
#[inline]
pub fn wrap_index(j: i64) -> usize {
    ((j - 1).rem_euclid(3) + 1) as usize
}

/// `3^k`.
#[inline]
pub fn pow3(k: usize) -> usize {
    3usize.pow(k as u32)
}

/// A finite word over the alphabet `{1,2,3}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| !(1..=3).contains(&l)) {
            return Err(GasketError::IndexOutOfRange {
                what: "word letter",
                index: bad as usize,
            });
        }
        Ok(Self(letters))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Base-3 index with the first letter most significant (letter `l` is digit `l-1`).
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &l| 3 * acc + (l as usize - 1))
    }

    pub fn from_index(mut index: usize, len: usize) -> Self {
        let mut letters = vec![1u8; len];
        for slot in letters.iter_mut().rev() {
            *slot = (index % 3) as u8 + 1;
            index /= 3;
        }
        Self(letters)
    }

    /// All words of length `len` in index order.
    pub fn all(len: usize) -> impl Iterator<Item = Word> {
        (0..pow3(len)).map(move |i| Word::from_index(i, len))
    }

    pub fn pushed(&self, letter: u8) -> Self {
        debug_assert!((1..=3).contains(&letter));
        let mut v = self.0.clone();
        v.push(letter);
        Self(v)
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// The dense projection `e_{σ1σ1} ⊗ ... ⊗ e_{σnσn}`.
    pub fn projection(&self) -> Result<ComplexMatrix> {
        let dim = pow3(self.len());
        if dim > DENSE_DIM_CAP {
            return Err(GasketError::DimensionCap {
                dim,
                cap: DENSE_DIM_CAP,
            });
        }
        let mut m = ComplexMatrix::zeros(dim);
        let idx = self.index();
        m.set(idx, idx, Complex64::new(1.0, 0.0));
        Ok(m)
    }
}

impl std::str::FromStr for Word {
    type Err = GasketError;

    /// Parses a digit string such as `"1322"`; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                '1'..='3' => Ok(c as u8 - b'0'),
                _ => Err(GasketError::IndexOutOfRange {
                    what: "word letter",
                    index: c as usize,
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
