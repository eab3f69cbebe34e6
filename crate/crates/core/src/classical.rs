//! The classical gasket: vertex labels of `V_n`, planar coordinates, graph
//! energy and the diagonal subalgebra `C(V_n) ⊂ A_n`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{GasketElement, VERTEX_PAIRS};
use crate::error::{GasketError, Result};
use crate::tensor::{compensated_sum, pow3, wrap_index, ComplexMatrix, Word};

/// Vertices of the root triangle.
pub const ROOT_TRIANGLE: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.866_025_403_784_438_6)];

/// A vertex of `V_n`.
///
/// Outer vertices carry the address `j 2^n`. The inner vertex `(σ, j, k)`,
/// `|σ| = n - k`, carries the two addresses `σ j 1 2^{k-1}` and
/// `σ (j+2) 3 2^{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Outer {
        level: usize,
        j: u8,
    },
    Inner {
        level: usize,
        prefix: Word,
        j: u8,
        generation: usize,
    },
}

fn check_letter(j: u8) -> Result<()> {
    if (1..=3).contains(&j) {
        Ok(())
    } else {
        Err(GasketError::MalformedLabel(format!("vertex index {j}")))
    }
}

fn wrap(j: i64) -> u8 {
    wrap_index(j) as u8
}

impl VertexLabel {
    pub fn outer(level: usize, j: u8) -> Result<Self> {
        check_letter(j)?;
        Ok(Self::Outer { level, j })
    }

    pub fn inner(level: usize, prefix: Word, j: u8, generation: usize) -> Result<Self> {
        check_letter(j)?;
        if generation == 0 || generation > level || prefix.len() != level - generation {
            return Err(GasketError::MalformedLabel(format!(
                "inner vertex with |σ| = {}, generation {generation} at level {level}",
                prefix.len()
            )));
        }
        Ok(Self::Inner {
            level,
            prefix,
            j,
            generation,
        })
    }

    pub fn level(&self) -> usize {
        match self {
            Self::Outer { level, .. } | Self::Inner { level, .. } => *level,
        }
    }

    /// Every address of the vertex, canonical first.
    pub fn addresses(&self) -> Vec<Word> {
        match self {
            Self::Outer { level, j } => {
                let mut w = vec![*j];
                w.extend(std::iter::repeat_n(2, *level));
                vec![Word::new(w).expect("valid letters")]
            }
            Self::Inner {
                prefix,
                j,
                generation,
                ..
            } => {
                let tail = Word::new(vec![2; generation - 1]).expect("valid letters");
                let a = prefix.pushed(*j).pushed(1).concat(&tail);
                let b = prefix.pushed(wrap(*j as i64 + 2)).pushed(3).concat(&tail);
                if a <= b {
                    vec![a, b]
                } else {
                    vec![b, a]
                }
            }
        }
    }

    /// The lexicographically smaller address.
    pub fn canonical_address(&self) -> Word {
        self.addresses().swap_remove(0)
    }

    /// Resolves an address of length `n + 1` to its vertex of `V_n`.
    pub fn from_address(w: &Word) -> Result<Self> {
        let letters = w.letters();
        if letters.is_empty() {
            return Err(GasketError::MalformedLabel("empty address".into()));
        }
        let level = letters.len() - 1;
        let mut end = letters.len();
        while end > 1 && letters[end - 1] == 2 {
            end -= 1;
        }
        let twos = letters.len() - end;
        if end == 1 {
            return Self::outer(level, letters[0]);
        }
        let last = letters[end - 1];
        let before = letters[end - 2];
        let j = if last == 1 {
            before
        } else {
            wrap(before as i64 + 1)
        };
        let prefix = Word::new(letters[..end - 2].to_vec())?;
        Self::inner(level, prefix, j, twos + 1)
    }

    /// Number of levels the vertex has already existed for: `n` for outer
    /// vertices, `k - 1` for a generation-`k` inner vertex.
    pub fn age(&self) -> usize {
        match self {
            Self::Outer { level, .. } => *level,
            Self::Inner { generation, .. } => generation - 1,
        }
    }

    /// The same vertex seen in `V_m`, `m ≥ n` (appends `m - n` letters 2).
    pub fn relabel_in(&self, m: usize) -> Result<Self> {
        let n = self.level();
        if m < n {
            return Err(GasketError::InvalidLevel {
                level: n,
                requested: m,
            });
        }
        Ok(match self {
            Self::Outer { j, .. } => Self::Outer { level: m, j: *j },
            Self::Inner {
                prefix,
                j,
                generation,
                ..
            } => Self::Inner {
                level: m,
                prefix: prefix.clone(),
                j: *j,
                generation: generation + (m - n),
            },
        })
    }

    /// The same vertex seen in `V_m`, `m ≤ n`; fails for vertices younger
    /// than `V_m`.
    pub fn restrict_to(&self, m: usize) -> Result<Self> {
        let n = self.level();
        if m > n || self.age() < n - m {
            return Err(GasketError::InvalidLevel {
                level: n,
                requested: m,
            });
        }
        Ok(match self {
            Self::Outer { j, .. } => Self::Outer { level: m, j: *j },
            Self::Inner {
                prefix,
                j,
                generation,
                ..
            } => Self::Inner {
                level: m,
                prefix: prefix.clone(),
                j: *j,
                generation: generation - (n - m),
            },
        })
    }

    /// Position in [`enumerate_vertices`] order.
    pub fn index(&self) -> usize {
        match self {
            Self::Outer { j, .. } => *j as usize - 1,
            Self::Inner {
                level,
                prefix,
                j,
                generation,
            } => {
                let before: usize = (1..*generation).map(|k| 3 * pow3(level - k)).sum();
                3 + before + 3 * prefix.index() + (*j as usize - 1)
            }
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_address())
    }
}

/// `|V_n| = (3^{n+1} + 3) / 2`.
pub fn vertex_count(n: usize) -> usize {
    (pow3(n + 1) + 3) / 2
}

/// Outer vertices, then inner vertices by generation, prefix index and `j`.
pub fn enumerate_vertices(n: usize) -> Vec<VertexLabel> {
    let mut out: Vec<VertexLabel> = (1..=3)
        .map(|j| VertexLabel::Outer { level: n, j })
        .collect();
    for k in 1..=n {
        for prefix in Word::all(n - k) {
            for j in 1..=3 {
                out.push(VertexLabel::Inner {
                    level: n,
                    prefix: prefix.clone(),
                    j,
                    generation: k,
                });
            }
        }
    }
    out
}

/// Barycentric action of the contraction `g_l`: `v_i ↦ (v_{l+i-2} + v_l) / 2`.
fn contract(l: u8, c: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 1..=3i64 {
        out[wrap(l as i64 + i - 2) as usize - 1] += 0.5 * c[i as usize - 1];
    }
    out[l as usize - 1] += 0.5;
    out
}

/// Planar point of an address `l_1 … l_{n+1}`: `g_{l_1} ∘ … ∘ g_{l_n}(v_{l_{n+1}})`.
pub fn address_to_point(w: &Word) -> Result<(f64, f64)> {
    let letters = w.letters();
    let (&last, rest) = letters
        .split_last()
        .ok_or_else(|| GasketError::MalformedLabel("empty address".into()))?;
    let mut c = [0.0; 3];
    c[last as usize - 1] = 1.0;
    for &l in rest.iter().rev() {
        c = contract(l, c);
    }
    let x = (0..3).map(|i| c[i] * ROOT_TRIANGLE[i].0).sum();
    let y = (0..3).map(|i| c[i] * ROOT_TRIANGLE[i].1).sum();
    Ok((x, y))
}

/// Planar point of a vertex; both addresses of an inner vertex are resolved
/// and required to agree.
pub fn label_to_point(label: &VertexLabel) -> Result<(f64, f64)> {
    let addresses = label.addresses();
    let p = address_to_point(&addresses[0])?;
    for w in &addresses[1..] {
        let q = address_to_point(w)?;
        if (p.0 - q.0).hypot(p.1 - q.1) > 1e-12 {
            return Err(GasketError::MalformedLabel(format!(
                "addresses of {label} disagree"
            )));
        }
    }
    Ok(p)
}

/// Level-`n` edges as unordered corner pairs of the cells `σ`, `|σ| = n`.
pub fn edges(n: usize) -> Vec<(VertexLabel, VertexLabel)> {
    let mut out = Vec::with_capacity(3 * pow3(n));
    for sigma in Word::all(n) {
        for (i, j) in VERTEX_PAIRS {
            let a = VertexLabel::from_address(&sigma.pushed(i as u8)).expect("valid address");
            let b = VertexLabel::from_address(&sigma.pushed(j as u8)).expect("valid address");
            out.push((a, b));
        }
    }
    out
}

/// A function on `V_n`, stored in [`enumerate_vertices`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalFunction {
    level: usize,
    values: Vec<Complex64>,
}

impl ClassicalFunction {
    pub fn new(level: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != vertex_count(level) {
            return Err(GasketError::DimensionMismatch {
                expected: vertex_count(level),
                found: values.len(),
            });
        }
        Ok(Self { level, values })
    }

    pub fn from_fn(level: usize, f: impl Fn(&VertexLabel) -> Complex64) -> Self {
        Self {
            level,
            values: enumerate_vertices(level).iter().map(f).collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, label: &VertexLabel) -> Result<Complex64> {
        if label.level() != self.level {
            return Err(GasketError::LevelMismatch {
                left: self.level,
                right: label.level(),
            });
        }
        Ok(self.values[label.index()])
    }

    pub fn value_at_address(&self, w: &Word) -> Result<Complex64> {
        self.value(&VertexLabel::from_address(w)?)
    }

    /// The diagonal element of `A_n` whose dense diagonal entry at each
    /// address is the value of the addressed vertex.
    pub fn to_element(&self) -> GasketElement {
        let n = self.level;
        let xi = std::array::from_fn(|j| self.values[j]);
        let blocks = (0..n)
            .map(|k| {
                std::array::from_fn(|j| {
                    let diag: Vec<Complex64> = Word::all(k)
                        .map(|prefix| {
                            let label = VertexLabel::Inner {
                                level: n,
                                prefix,
                                j: j as u8 + 1,
                                generation: n - k,
                            };
                            self.values[label.index()]
                        })
                        .collect();
                    ComplexMatrix::diagonal(&diag)
                })
            })
            .collect();
        GasketElement::from_parts(n, xi, blocks).expect("block sizes follow from n")
    }

    /// Inverse of [`ClassicalFunction::to_element`] on `C(V_n)`.
    pub fn from_element(e: &GasketElement) -> Result<Self> {
        let off = e.sub(&e.cond_expectation())?.max_abs();
        if off > 0.0 {
            return Err(GasketError::NotInAlgebra { residual: off });
        }
        let n = e.level();
        Ok(Self::from_fn(n, |label| match label {
            VertexLabel::Outer { j, .. } => e.xi()[*j as usize - 1],
            VertexLabel::Inner {
                prefix,
                j,
                generation,
                ..
            } => {
                let i = prefix.index();
                e.block(n - generation, *j as usize).get(i, i)
            }
        }))
    }

    /// The restriction to `V_{n-1}`.
    pub fn restrict(&self) -> Result<Self> {
        if self.level == 0 {
            return Err(GasketError::InvalidLevel {
                level: 0,
                requested: 0,
            });
        }
        let m = self.level - 1;
        let values = enumerate_vertices(m)
            .iter()
            .map(|v| self.value(&v.relabel_in(self.level).expect("m < n")))
            .collect::<Result<_>>()?;
        Self::new(m, values)
    }
}

/// Extension to `V_{n+1}`: old vertices keep their values; the new vertex
/// between corners `j` and `j+2` of cell `σ` gets
/// `(1-t)(f(σj) + f(σ(j+2))) + (2t-1) f(σ(j+1))`.
pub fn classical_extension_step(f: &ClassicalFunction, t: f64) -> Result<ClassicalFunction> {
    if !(0.5..1.0).contains(&t) {
        return Err(GasketError::ParameterOutOfRange {
            name: "t",
            value: t,
        });
    }
    let n = f.level;
    let corner = |sigma: &Word, i: i64| f.value_at_address(&sigma.pushed(wrap(i)));
    let values = enumerate_vertices(n + 1)
        .iter()
        .map(|v| match v {
            VertexLabel::Inner {
                prefix,
                j,
                generation: 1,
                ..
            } => {
                let j = *j as i64;
                let near = corner(prefix, j)? + corner(prefix, j + 2)?;
                Ok(near * (1.0 - t) + corner(prefix, j + 1)? * (2.0 * t - 1.0))
            }
            old => f.value(&old.restrict_to(n)?),
        })
        .collect::<Result<_>>()?;
    ClassicalFunction::new(n + 1, values)
}

/// The harmonic (`t = 3/5`) extension step.
pub fn classical_harmonic_step(f: &ClassicalFunction) -> ClassicalFunction {
    classical_extension_step(f, 0.6).expect("harmonic parameter is in range")
}

/// Graph energy over ordered level-`n` edges.
pub fn classical_energy(f: &ClassicalFunction) -> Result<f64> {
    let mut jumps = Vec::with_capacity(3 * pow3(f.level));
    for (a, b) in edges(f.level) {
        jumps.push((f.value(&a)? - f.value(&b)?).norm_sqr());
    }
    Ok(2.0 * compensated_sum(jumps))
}

/// Largest jump across a level-`n` edge.
pub fn classical_osc(f: &ClassicalFunction) -> Result<f64> {
    let mut best: f64 = 0.0;
    for (a, b) in edges(f.level) {
        best = best.max((f.value(&a)? - f.value(&b)?).norm());
    }
    Ok(best)
}

/// Mass of the cylinder `[prefix]` under the self-similar measure with the
/// given weights.
pub fn selfsimilar_measure(prefix: &Word, weights: [f64; 3]) -> Result<f64> {
    if weights.iter().any(|w| w.is_nan() || *w < 0.0)
        || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12
    {
        return Err(GasketError::InvalidWeights(format!("{weights:?}")));
    }
    Ok(prefix
        .letters()
        .iter()
        .map(|&l| weights[l as usize - 1])
        .product())
}

/// The symmetric measure: `3^{-|prefix|}`.
pub fn symmetric_measure(prefix: &Word) -> f64 {
    3f64.powi(-(prefix.len() as i32))
}

/// One CSV row per vertex: label, coordinates, age.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexRecord {
    pub label: String,
    pub x: f64,
    pub y: f64,
    pub age: usize,
}

pub fn vertex_records(n: usize) -> Result<Vec<VertexRecord>> {
    enumerate_vertices(n)
        .iter()
        .map(|v| {
            let (x, y) = label_to_point(v)?;
            Ok(VertexRecord {
                label: v.to_string(),
                x,
                y,
                age: v.age(),
            })
        })
        .collect()
}

/// Dimension of the commutant of `C(V_n)` inside `A_n`, by exact linear
/// algebra on the generator basis. Equal to `|V_n|` exactly when `C(V_n)`
/// is maximal abelian. Limited to `n ≤ 2`.
pub fn classical_commutant_dimension(n: usize) -> Result<usize> {
    if n > 2 {
        return Err(GasketError::UnsupportedLevel(n));
    }
    // basis of A_n: the three ξ slots, then matrix units of every block
    let mut basis = Vec::new();
    for j in 1..=3 {
        basis.push(GasketElement::alpha(n, j)?);
    }
    for k in 0..n {
        for j in 1..=3 {
            for p in 0..pow3(k) {
                for q in 0..pow3(k) {
                    let mut x = ComplexMatrix::zeros(pow3(k));
                    x.set(p, q, Complex64::new(1.0, 0.0));
                    basis.push(GasketElement::beta_block(n, n - k, j, x)?);
                }
            }
        }
    }
    let diagonals: Vec<GasketElement> = enumerate_vertices(n)
        .iter()
        .map(|v| {
            ClassicalFunction::from_fn(n, |w| Complex64::new(if w == v { 1.0 } else { 0.0 }, 0.0))
                .to_element()
        })
        .collect();
    let flatten = |e: &GasketElement| -> Vec<Complex64> {
        let mut out = e.xi().to_vec();
        for fam in e.blocks() {
            for b in fam {
                out.extend_from_slice(b.as_slice());
            }
        }
        out
    };
    let rows_per = basis.len();
    let mut m = DMatrix::<Complex64>::zeros(rows_per * diagonals.len(), basis.len());
    for (c, b) in basis.iter().enumerate() {
        for (r, d) in diagonals.iter().enumerate() {
            let comm = b.mul(d)?.sub(&d.mul(b)?)?;
            for (i, z) in flatten(&comm).into_iter().enumerate() {
                m[(r * rows_per + i, c)] = z;
            }
        }
    }
    let rank = m.rank(1e-10);
    Ok(basis.len() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{harmonic_extension, symmetric_extension};
    use crate::energy::element_energy;
    use crate::random::random_classical;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_vertices(1).len(), 6);
        assert_eq!(enumerate_vertices(2).len(), 15);
        for n in 0..=8 {
            assert_eq!(enumerate_vertices(n).len(), vertex_count(n));
        }
    }

    #[test]
    fn enumeration_index_consistent() {
        for n in 0..4 {
            for (i, v) in enumerate_vertices(n).iter().enumerate() {
                assert_eq!(v.index(), i);
                for a in v.addresses() {
                    assert_eq!(&VertexLabel::from_address(&a).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn every_address_resolves() {
        for n in 0..4 {
            let mut seen = std::collections::HashSet::new();
            for a in Word::all(n + 1) {
                seen.insert(VertexLabel::from_address(&a).unwrap());
            }
            assert_eq!(seen.len(), vertex_count(n));
        }
    }

    #[test]
    fn double_address_coincides() {
        let v = VertexLabel::from_address(&w("11")).unwrap();
        assert_eq!(v, VertexLabel::from_address(&w("33")).unwrap());
        assert_eq!(v.canonical_address(), w("11"));
        let (x, y) = label_to_point(&v).unwrap();
        assert!((x - 0.25).abs() < 1e-15 && (y - ROOT_TRIANGLE[2].1 / 2.0).abs() < 1e-15);
        for n in 0..5 {
            for v in enumerate_vertices(n) {
                label_to_point(&v).unwrap();
            }
        }
        // the outer vertices sit at the triangle corners
        for j in 1..=3u8 {
            let p = label_to_point(&VertexLabel::outer(3, j).unwrap()).unwrap();
            let c = ROOT_TRIANGLE[j as usize - 1];
            assert!((p.0 - c.0).abs() < 1e-15 && (p.1 - c.1).abs() < 1e-15);
        }
    }

    #[test]
    fn points_are_distinct() {
        for n in 0..4 {
            let pts: Vec<_> = enumerate_vertices(n)
                .iter()
                .map(|v| label_to_point(v).unwrap())
                .collect();
            for i in 0..pts.len() {
                for j in 0..i {
                    assert!((pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1) > 1e-9);
                }
            }
        }
    }

    #[test]
    fn edges_have_uniform_length() {
        for n in 0..4 {
            let e = edges(n);
            assert_eq!(e.len(), 3 * pow3(n));
            for (a, b) in e {
                let p = label_to_point(&a).unwrap();
                let q = label_to_point(&b).unwrap();
                assert!(((p.0 - q.0).hypot(p.1 - q.1) - 0.5f64.powi(n as i32)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ages_and_relabeling() {
        for v in enumerate_vertices(3) {
            match &v {
                VertexLabel::Outer { .. } => assert_eq!(v.age(), 3),
                VertexLabel::Inner { generation: 1, .. } => assert_eq!(v.age(), 0),
                _ => {}
            }
            let up = v.relabel_in(5).unwrap();
            assert_eq!(up.age(), v.age() + 2);
            assert_eq!(up.restrict_to(3).unwrap(), v);
            assert!(v.relabel_in(2).is_err());
        }
        let young = VertexLabel::from_address(&w("131")).unwrap();
        assert!(young.restrict_to(1).is_err());
        assert!(VertexLabel::inner(2, Word::empty(), 1, 1).is_err());
        assert!(VertexLabel::outer(2, 4).is_err());
        assert!(VertexLabel::from_address(&Word::empty()).is_err());
    }

    #[test]
    fn element_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(130);
        for n in 0..4 {
            let e = random_classical(n, &mut rng);
            let f = ClassicalFunction::from_element(&e).unwrap();
            assert_eq!(f.to_element(), e);
            // dense diagonal entries are the values at the addresses
            let dense = e.to_dense();
            for a in Word::all(n + 1) {
                let i = a.index();
                assert_eq!(dense.get(i, i), f.value_at_address(&a).unwrap());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        assert!(
            ClassicalFunction::from_element(&crate::random::random_element(2, &mut rng)).is_err()
        );
    }

    #[test]
    fn harmonic_step_values() {
        let f = ClassicalFunction::from_fn(0, |v| {
            Complex64::new(
                if *v == (VertexLabel::Outer { level: 0, j: 1 }) {
                    1.0
                } else {
                    0.0
                },
                0.0,
            )
        });
        let g = classical_harmonic_step(&f);
        let inner = |j| {
            g.value(&VertexLabel::inner(1, Word::empty(), j, 1).unwrap())
                .unwrap()
                .re
        };
        assert!((inner(1) - 0.4).abs() < 1e-15);
        assert!((inner(2) - 0.4).abs() < 1e-15);
        assert!((inner(3) - 0.2).abs() < 1e-15);
        let c = ClassicalFunction::from_fn(2, |_| Complex64::new(2.0, 0.0));
        assert!(classical_harmonic_step(&c)
            .values()
            .iter()
            .all(|z| (z.re - 2.0).abs() < 1e-15));
        assert!(classical_extension_step(&c, 1.0).is_err());
    }

    #[test]
    fn bridge_to_quantum() {
        let mut rng = ChaCha8Rng::seed_from_u64(132);
        for n in 0..4 {
            let e = random_classical(n, &mut rng);
            let f = ClassicalFunction::from_element(&e).unwrap();
            for t in [0.5, 0.6, 0.7] {
                let q = symmetric_extension(&e, t).unwrap();
                let c = classical_extension_step(&f, t).unwrap().to_element();
                assert!(q.approx_eq(&c, 1e-12));
            }
            let h = classical_harmonic_step(&f);
            assert!(h.to_element().approx_eq(&harmonic_extension(&e), 1e-12));
            let ce = classical_energy(&f).unwrap();
            assert!((ce - element_energy(&e).energy).abs() < 1e-12 * ce.max(1.0));
            let he = classical_energy(&h).unwrap();
            assert!((he - 0.6 * ce).abs() < 1e-12 * ce.max(1.0));
            assert!((classical_osc(&f).unwrap() - e.osc().unwrap()).abs() < 1e-12);
            if n > 0 {
                assert_eq!(f.restrict().unwrap().to_element(), e.restrict().unwrap());
            }
        }
    }

    #[test]
    fn alpha_energy() {
        let f = ClassicalFunction::from_element(&GasketElement::alpha(0, 1).unwrap()).unwrap();
        assert_eq!(classical_energy(&f).unwrap(), 4.0);
    }

    #[test]
    fn measures() {
        assert_eq!(symmetric_measure(&Word::empty()), 1.0);
        assert!((symmetric_measure(&w("12")) - 1.0 / 9.0).abs() < 1e-15);
        let third = [1.0 / 3.0; 3];
        assert!((selfsimilar_measure(&w("12"), third).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert!((selfsimilar_measure(&w("13"), [0.5, 0.25, 0.25]).unwrap() - 0.125).abs() < 1e-15);
        assert!(selfsimilar_measure(&w("1"), [0.5, 0.5, 0.5]).is_err());
        assert!(selfsimilar_measure(&w("1"), [1.5, -0.5, 0.0]).is_err());
        // cylinder projection σ ⊗ I in M_3^{⊗3}
        for s in ["", "2", "31", "123"] {
            let sigma = w(s);
            let p = crate::tensor::kron(
                &sigma.projection().unwrap(),
                &ComplexMatrix::identity(pow3(3 - sigma.len())),
            )
            .unwrap();
            let tau = crate::tensor::trace(&p).re / 27.0;
            assert!((tau - symmetric_measure(&sigma)).abs() < 1e-15);
        }
    }

    #[test]
    fn records() {
        let r = vertex_records(1).unwrap();
        assert_eq!(r.len(), 6);
        assert_eq!(r[0].label, "12");
        assert_eq!(r[0].age, 1);
        assert_eq!(r[3].label, "11");
        assert_eq!(r[3].age, 0);
    }

    #[test]
    fn classical_elements_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(133);
        for n in 0..4 {
            let a = random_classical(n, &mut rng);
            let b = random_classical(n, &mut rng);
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert!(a.mul(&b).unwrap().is_classical());
        }
    }

    #[test]
    fn commutant_is_classical() {
        for n in 0..=2 {
            assert_eq!(classical_commutant_dimension(n).unwrap(), vertex_count(n));
        }
        assert!(classical_commutant_dimension(3).is_err());
    }
}
