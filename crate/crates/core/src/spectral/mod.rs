//! The discrete spectral triple `(H, D, π)`: `H_n = (C^3)^{⊗n} ⊗ E`,
//! `D = ⊕ 2^n F_n`, and `π_n = ρ_n`.

mod counting;
mod hilbert;
mod lip;
mod zeta;

pub use counting::{dimension_fit, eigenvalue_counting};
pub use hilbert::{
    apply_f, apply_pi, commutator_hs_sqr, commutator_norm, dense_commutator_hs_sqr,
    dense_commutator_norm, edge_unit_index, flip_matrix, hilbert_trace, pi_matrix, EdgeStateVector,
    EDGE_UNITS,
};
pub use lip::{approximation_defects, lip_norm, ApproximationDefect, LipNorm, DENSE_DEFECT_DIM};
pub use zeta::{
    energy_abscissa, energy_residue, energy_weights, energy_zeta, residue_estimate, trace_abscissa,
    zeta_trace, ResidueEstimate, TailModel, TailSource, WeightPath, ZetaProfile, ENERGY_RATIO,
    RATIO_TEST_LEN, RATIO_TEST_TOL, TRACE_RATIO,
};
