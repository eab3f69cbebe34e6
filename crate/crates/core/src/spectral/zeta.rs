use num_complex::Complex64;

use crate::algebra::Chain;
use crate::energy::energy_limit;
use crate::error::{GasketError, Result};
use crate::spectral::hilbert::{commutator_hs_sqr, dense_commutator_hs_sqr};

/// Per-level growth of `tr ρ_j(b)` along symmetric extensions.
pub const TRACE_RATIO: f64 = 3.0;
/// Per-level growth of `4^j E_j` along harmonic extensions.
pub const ENERGY_RATIO: f64 = 12.0 / 5.0;

/// Weights needed for the ratio test, and its relative tolerance.
pub const RATIO_TEST_LEN: usize = 5;
pub const RATIO_TEST_TOL: f64 = 1e-6;

/// `d = log 3 / log 2`.
pub fn trace_abscissa() -> f64 {
    TRACE_RATIO.ln() / std::f64::consts::LN_2
}

/// `δ = 2 − log(5/3) / log 2`.
pub fn energy_abscissa() -> f64 {
    2.0 - (5.0f64 / 3.0).ln() / std::f64::consts::LN_2
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailModel {
    None,
    /// Weights beyond the cutoff are `first_neglected · ratio^i`.
    Geometric {
        ratio: f64,
        first_neglected: Complex64,
    },
}

/// Truncations of `Σ_j 2^{-sj} w_j` over a grid of `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaProfile {
    first_level: usize,
    weights: Vec<Complex64>,
    abscissa: f64,
    tail: TailModel,
    s_grid: Vec<f64>,
    partial_sums: Vec<Complex64>,
    tail_corrected: Vec<Option<Complex64>>,
}

impl ZetaProfile {
    /// `weights[i]` is the weight of level `first_level + i`.
    pub fn new(
        first_level: usize,
        weights: Vec<Complex64>,
        abscissa: f64,
        tail: TailModel,
        s_grid: Vec<f64>,
    ) -> Result<Self> {
        if weights.is_empty() {
            return Err(GasketError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut p = Self {
            first_level,
            weights,
            abscissa,
            tail,
            s_grid: Vec::new(),
            partial_sums: Vec::new(),
            tail_corrected: Vec::new(),
        };
        for s in s_grid {
            if s <= abscissa && tail == TailModel::None {
                return Err(GasketError::Divergent { s, abscissa });
            }
            p.partial_sums.push(p.partial_sum(s));
            p.tail_corrected.push(p.series(s));
            p.s_grid.push(s);
        }
        Ok(p)
    }

    pub fn first_level(&self) -> usize {
        self.first_level
    }

    pub fn cutoff(&self) -> usize {
        self.first_level + self.weights.len() - 1
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn abscissa(&self) -> f64 {
        self.abscissa
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    pub fn s_grid(&self) -> &[f64] {
        &self.s_grid
    }

    pub fn partial_sums(&self) -> &[Complex64] {
        &self.partial_sums
    }

    pub fn tail_corrected(&self) -> &[Option<Complex64>] {
        &self.tail_corrected
    }

    pub fn partial_sum(&self, s: f64) -> Complex64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * 2f64.powf(-s * (self.first_level + i) as f64))
            .sum()
    }

    /// Partial sum plus the geometric tail; `None` without a model or for
    /// `s` at or below the abscissa.
    pub fn series(&self, s: f64) -> Option<Complex64> {
        match self.tail {
            TailModel::Geometric {
                ratio,
                first_neglected,
            } if s > self.abscissa => {
                let next = (self.cutoff() + 1) as f64;
                // 1 − ratio · 2^{-s}, without cancellation near the abscissa
                let denom = -(ratio.ln() - s * std::f64::consts::LN_2).exp_m1();
                Some(self.partial_sum(s) + first_neglected * 2f64.powf(-s * next) / denom)
            }
            _ => None,
        }
    }

    /// The same profile with a tail model established by the ratio test.
    pub fn with_tail(&self, tail: TailModel) -> Result<Self> {
        Self::new(
            self.first_level,
            self.weights.clone(),
            self.abscissa,
            tail,
            self.s_grid.clone(),
        )
    }
}

/// How the geometric tail behind a residue was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailSource {
    Model,
    RatioTest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueEstimate {
    /// `first_neglected · 2^{-d(c+1)} / log 2` from the closed form.
    pub analytic: Complex64,
    /// Richardson limit of `(s − d) f(s)` at `s = d + 10^{-q}`, `q = 1..4`.
    pub numerical: Complex64,
    pub numerical_error: f64,
    pub source: TailSource,
}

fn ratio_test(weights: &[Complex64], ratio: f64) -> Result<TailModel> {
    if weights.len() < RATIO_TEST_LEN {
        return Err(GasketError::TailNotCertified {
            deviation: f64::INFINITY,
        });
    }
    let last = &weights[weights.len() - RATIO_TEST_LEN..];
    let scale = last.iter().map(|w| w.norm()).fold(0.0, f64::max);
    let mut deviation: f64 = 0.0;
    if scale > 0.0 {
        for pair in last.windows(2) {
            if pair[0].norm() == 0.0 {
                return Err(GasketError::TailNotCertified {
                    deviation: f64::INFINITY,
                });
            }
            deviation = deviation.max(((pair[1] / pair[0]) - ratio).norm() / ratio);
        }
    }
    if deviation > RATIO_TEST_TOL {
        return Err(GasketError::TailNotCertified { deviation });
    }
    Ok(TailModel::Geometric {
        ratio,
        first_neglected: last[RATIO_TEST_LEN - 1] * ratio,
    })
}

/// Residue of the zeta series at its abscissa.
///
/// Profiles without a tail model are certified by a ratio test on the last
/// five weights against `2^d`.
pub fn residue_estimate(profile: &ZetaProfile) -> Result<ResidueEstimate> {
    let d = profile.abscissa;
    let (p, source) = match profile.tail {
        TailModel::Geometric { .. } => (profile.clone(), TailSource::Model),
        TailModel::None => {
            let tail = ratio_test(&profile.weights, 2f64.powf(d))?;
            (profile.with_tail(tail)?, TailSource::RatioTest)
        }
    };
    let TailModel::Geometric {
        ratio,
        first_neglected,
    } = p.tail
    else {
        unreachable!("tail model set above");
    };
    let next = (p.cutoff() + 1) as f64;
    let analytic = first_neglected * (-(next) * ratio.ln()).exp() / std::f64::consts::LN_2;

    // Richardson table in h = 10^{-q}
    let hs: Vec<f64> = (1..=4).map(|q| 10f64.powi(-q)).collect();
    let mut table: Vec<Vec<Complex64>> = Vec::new();
    for (q, &h) in hs.iter().enumerate() {
        let g = p.series(d + h).expect("s above abscissa") * h;
        let mut row = vec![g];
        for m in 1..=q {
            let f = 10f64.powi(m as i32);
            let v = (row[m - 1] * f - table[q - 1][m - 1]) / (f - 1.0);
            row.push(v);
        }
        table.push(row);
    }
    let last = &table[3];
    let numerical = last[3];
    let numerical_error = (last[3] - last[2]).norm();
    Ok(ResidueEstimate {
        analytic,
        numerical,
        numerical_error,
        source,
    })
}

/// Trace zeta `Σ_{j ≥ n} 2^{-sj} tr ρ_j(b)` over the chain from its base level.
///
/// Extension chains carry the exact tail: every symmetric extension
/// triples the matrix trace.
pub fn zeta_trace(chain: &Chain, s_grid: Vec<f64>, cutoff: usize) -> Result<ZetaProfile> {
    let levels = chain_range(chain, cutoff)?;
    let weights: Vec<Complex64> = levels
        .clone()
        .map(|j| chain.level(j).map(|e| e.dense_trace()))
        .collect::<Result<_>>()?;
    let tail = if chain.extension_parameter().is_some() {
        TailModel::Geometric {
            ratio: TRACE_RATIO,
            first_neglected: weights[weights.len() - 1] * TRACE_RATIO,
        }
    } else {
        TailModel::None
    };
    ZetaProfile::new(chain.base(), weights, trace_abscissa(), tail, s_grid)
}

fn chain_range(chain: &Chain, cutoff: usize) -> Result<std::ops::RangeInclusive<usize>> {
    if cutoff < chain.base() || cutoff > chain.top() {
        return Err(GasketError::InvalidLevel {
            level: chain.top(),
            requested: cutoff,
        });
    }
    Ok(chain.base()..=cutoff)
}

/// Source of the energy weights `tr |[D_j, π_j(b)]|²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightPath {
    /// `4^j E_j[ρ_j(b)]`.
    Formula,
    /// Dense commutators on `H_j`; limited by the dense dimension cap.
    Dense,
}

pub fn energy_weights(chain: &Chain, cutoff: usize, path: WeightPath) -> Result<Vec<f64>> {
    chain_range(chain, cutoff)?
        .map(|j| {
            let a = chain.level(j)?;
            match path {
                WeightPath::Formula => commutator_hs_sqr(a, j),
                WeightPath::Dense => dense_commutator_hs_sqr(a, j),
            }
        })
        .collect()
}

/// Energy zeta `Σ_{j ≥ n} 2^{-sj} tr |[D_j, π_j(b)]|²`.
///
/// Requires a finite-energy chain. Harmonic chains carry the exact tail.
pub fn energy_zeta(
    chain: &Chain,
    s_grid: Vec<f64>,
    cutoff: usize,
    path: WeightPath,
) -> Result<ZetaProfile> {
    if !energy_limit(chain)?.stationary {
        return Err(GasketError::NotFiniteEnergy);
    }
    let weights: Vec<Complex64> = energy_weights(chain, cutoff, path)?
        .into_iter()
        .map(|w| Complex64::new(w, 0.0))
        .collect();
    let tail = if chain.is_harmonic() {
        TailModel::Geometric {
            ratio: ENERGY_RATIO,
            first_neglected: weights[weights.len() - 1] * ENERGY_RATIO,
        }
    } else {
        TailModel::None
    };
    ZetaProfile::new(chain.base(), weights, energy_abscissa(), tail, s_grid)
}

/// `Res_{s=δ} tr(|[D, b]|² |D|^{-s})` along the whole chain.
pub fn energy_residue(chain: &Chain) -> Result<ResidueEstimate> {
    residue_estimate(&energy_zeta(
        chain,
        Vec::new(),
        chain.top(),
        WeightPath::Formula,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{trace_tau, GasketElement};
    use crate::energy::element_energy;
    use crate::random::random_element;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn abscissas() {
        assert!((trace_abscissa() - 1.584962500721156).abs() < 1e-14);
        assert!((energy_abscissa() - 1.263034405833794).abs() < 1e-12);
        assert!((2f64.powf(energy_abscissa()) - ENERGY_RATIO).abs() < 1e-12);
    }

    #[test]
    fn trace_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(120);
        for n in 0..3 {
            let a = random_element(n, &mut rng);
            let chain = Chain::harmonic(&a, n + 3).unwrap();
            let grid = vec![1.6, 2.0, 2.4];
            let p = zeta_trace(&chain, grid.clone(), n + 3).unwrap();
            let tr = a.dense_trace();
            for (i, &s) in grid.iter().enumerate() {
                let want = tr * 2f64.powf(-s * n as f64) / (1.0 - 3.0 * 2f64.powf(-s));
                let got = p.tail_corrected()[i].unwrap();
                assert!((got - want).norm() < 1e-12 * want.norm());
            }
            let r = residue_estimate(&p).unwrap();
            let want = tr / 3f64.powi(n as i32) / LN2;
            assert!((r.analytic - want).norm() < 1e-12 * want.norm().max(1e-300));
            assert!((r.numerical - want).norm() < 1e-3 * want.norm());
            let tau = trace_tau(&a);
            assert!((r.analytic - tau * 3.0 / LN2).norm() < 1e-12 * want.norm());
            assert_eq!(r.source, TailSource::Model);
        }
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn alpha_residue() {
        let chain = Chain::harmonic(&GasketElement::alpha(0, 1).unwrap(), 4).unwrap();
        let r = residue_estimate(&zeta_trace(&chain, Vec::new(), 4).unwrap()).unwrap();
        assert!((r.analytic.re - 1.0 / LN2).abs() < 1e-12);
        assert!((1.0 / LN2 - 1.442695).abs() < 1e-6);
    }

    #[test]
    fn zero_and_divergence() {
        let chain = Chain::restrictions(&GasketElement::zero(2));
        let p = zeta_trace(&chain, vec![1.7, 3.0], 2).unwrap();
        assert!(p.partial_sums().iter().all(|z| z.norm() == 0.0));
        assert!(matches!(
            zeta_trace(&chain, vec![1.5], 2),
            Err(GasketError::Divergent { .. })
        ));
        let h = Chain::harmonic(&GasketElement::identity(0), 3).unwrap();
        let p = zeta_trace(&h, vec![1.5, 1.7], 3).unwrap();
        assert!(p.tail_corrected()[0].is_none());
        assert!(p.tail_corrected()[1].is_some());
        assert!(zeta_trace(&h, vec![], 4).is_err());
    }

    #[test]
    fn partial_sums_monotone_in_cutoff() {
        let h = Chain::harmonic(&GasketElement::identity(1), 5).unwrap();
        let sums: Vec<f64> = (1..=5)
            .map(|c| zeta_trace(&h, vec![2.0], c).unwrap().partial_sums()[0].re)
            .collect();
        assert!(sums.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn ratio_test_certifies_untagged_chains() {
        let mut rng = ChaCha8Rng::seed_from_u64(121);
        let a = random_element(0, &mut rng);
        let h = Chain::harmonic(&a, 6).unwrap();
        let plain = Chain::from_levels(h.levels().to_vec()).unwrap();
        let p = zeta_trace(&plain, vec![2.0], 6).unwrap();
        assert_eq!(p.first_level(), 6);
        let full = ZetaProfile::new(
            0,
            p.weights().to_vec(),
            trace_abscissa(),
            TailModel::None,
            vec![],
        )
        .unwrap();
        assert!(matches!(
            residue_estimate(&full),
            Err(GasketError::TailNotCertified { .. })
        ));
        let weights = (0..=6)
            .map(|j| plain.level(j).unwrap().dense_trace())
            .collect();
        let q = ZetaProfile::new(0, weights, trace_abscissa(), TailModel::None, vec![]).unwrap();
        let r = residue_estimate(&q).unwrap();
        assert_eq!(r.source, TailSource::RatioTest);
        assert!((r.analytic - a.dense_trace() / LN2).norm() < 1e-10);
        let bent = ZetaProfile::new(
            0,
            vec![Complex64::new(1.0, 0.0); 6],
            trace_abscissa(),
            TailModel::None,
            vec![],
        )
        .unwrap();
        assert!(matches!(
            residue_estimate(&bent),
            Err(GasketError::TailNotCertified { .. })
        ));
    }

    #[test]
    fn energy_residue_harmonic() {
        let mut rng = ChaCha8Rng::seed_from_u64(122);
        for _ in 0..3 {
            let a = random_element(1, &mut rng);
            let chain = Chain::harmonic(&a, 3).unwrap();
            let e_inf = 5.0 / 3.0 * element_energy(&a).energy;
            let r = energy_residue(&chain).unwrap();
            assert!((r.analytic.re - e_inf / LN2).abs() < 1e-10 * e_inf);
            assert!((r.numerical.re - e_inf / LN2).abs() < 1e-3 * e_inf / LN2);
            let f = energy_weights(&chain, 3, WeightPath::Formula).unwrap();
            let d = energy_weights(&chain, 3, WeightPath::Dense).unwrap();
            for (x, y) in f.iter().zip(&d) {
                assert!((x - y).abs() < 1e-8 * x.max(1.0));
            }
        }
        let id = Chain::harmonic(&GasketElement::identity(1), 3).unwrap();
        assert_eq!(energy_residue(&id).unwrap().analytic.norm(), 0.0);
        let aff = Chain::affine(&GasketElement::alpha(0, 1).unwrap(), 3).unwrap();
        assert!(matches!(
            energy_residue(&aff),
            Err(GasketError::NotFiniteEnergy)
        ));
    }
}
