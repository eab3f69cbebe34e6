//! The approximation algebras `A_n`, their restriction maps and extensions.

mod chain;
mod element;
mod extension;
mod states;
mod v0form;

pub use chain::{Chain, CHAIN_TOL};
pub use element::{GasketElement, MEMBERSHIP_TOL};
pub use extension::{
    affine_extension, extend_tail_bound, extend_to, extension_defect, harmonic_extension,
    symmetric_extension, tensor_identity_defect, AFFINE_T, HARMONIC_T,
};
pub use states::{char_chi, eval_product_state, trace_tau, trace_tau_mj, ProductState, STATE_TOL};
pub use v0form::{V0Form, VERTEX_PAIRS};
