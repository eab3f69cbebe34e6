use super::element::GasketElement;
use super::extension::{check_t, symmetric_extension, AFFINE_T, HARMONIC_T};
use crate::error::{GasketError, Result};

/// Relative tolerance for consecutive levels to be linked by restriction.
pub const CHAIN_TOL: f64 = 1e-12;

/// The truncation `ρ_0(b), ρ_1(b), …, ρ_M(b)` of an element of `A_∞`.
///
/// Chains built by [`Chain::extension`] remember the base level and the
/// extension parameter, which certify the behaviour of the untruncated tail.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    levels: Vec<GasketElement>,
    base: usize,
    extension: Option<f64>,
}

impl Chain {
    /// Validates an explicit sequence starting at level 0.
    pub fn from_levels(levels: Vec<GasketElement>) -> Result<Self> {
        if levels.is_empty() {
            return Err(GasketError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for (k, e) in levels.iter().enumerate() {
            if e.level() != k {
                return Err(GasketError::LevelMismatch {
                    left: k,
                    right: e.level(),
                });
            }
        }
        for k in 1..levels.len() {
            let down = levels[k].restrict()?;
            let residual = down.max_abs_diff(&levels[k - 1])?;
            if residual > CHAIN_TOL * levels[k - 1].max_abs().max(1.0) {
                return Err(GasketError::ChainInconsistent { level: k, residual });
            }
        }
        let base = levels.len() - 1;
        Ok(Self {
            levels,
            base,
            extension: None,
        })
    }

    /// All restrictions of `a`, with no extension.
    pub fn restrictions(a: &GasketElement) -> Self {
        let mut levels = vec![a.clone()];
        while let Some(last) = levels.last().filter(|e| e.level() > 0) {
            let down = last.restrict().expect("level >= 1");
            levels.push(down);
        }
        levels.reverse();
        Self {
            base: a.level(),
            levels,
            extension: None,
        }
    }

    /// Restrictions of `a` followed by symmetric extensions up to level `top`.
    pub fn extension(a: &GasketElement, t: f64, top: usize) -> Result<Self> {
        check_t(t)?;
        if top < a.level() {
            return Err(GasketError::InvalidLevel {
                level: a.level(),
                requested: top,
            });
        }
        let mut chain = Self::restrictions(a);
        while chain.levels.len() <= top {
            let next = symmetric_extension(chain.levels.last().expect("non-empty"), t)?;
            chain.levels.push(next);
        }
        chain.extension = Some(t);
        Ok(chain)
    }

    pub fn harmonic(a: &GasketElement, top: usize) -> Result<Self> {
        Self::extension(a, HARMONIC_T, top)
    }

    pub fn affine(a: &GasketElement, top: usize) -> Result<Self> {
        Self::extension(a, AFFINE_T, top)
    }

    pub fn levels(&self) -> &[GasketElement] {
        &self.levels
    }

    /// `ρ_k(b)`.
    pub fn level(&self, k: usize) -> Result<&GasketElement> {
        self.levels.get(k).ok_or(GasketError::InvalidLevel {
            level: self.top(),
            requested: k,
        })
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn top_element(&self) -> &GasketElement {
        self.levels.last().expect("non-empty")
    }

    /// Level of the element the extension started from.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn base_element(&self) -> &GasketElement {
        &self.levels[self.base]
    }

    pub fn extension_parameter(&self) -> Option<f64> {
        self.extension
    }

    pub fn is_harmonic(&self) -> bool {
        self.extension == Some(HARMONIC_T)
    }
}
