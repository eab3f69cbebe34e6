//! Finite-level approximations of the quantum Sierpinski gasket.

pub mod algebra;
pub mod classical;
pub mod energy;
pub mod error;
pub mod oracle;
pub mod random;
pub mod spectral;
pub mod tensor;

pub use algebra::{GasketElement, V0Form};
pub use error::{GasketError, Result};
pub use tensor::{ComplexMatrix, Word};
