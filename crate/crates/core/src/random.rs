//! Seeded random elements for tests and sampling.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::GasketElement;
use crate::tensor::{pow3, ComplexMatrix};

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| random_complex(rng))
}

pub fn random_hermitian_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let m = random_matrix(dim, rng);
    (&m + &m.adjoint()).scale_real(0.5)
}

/// Element of `A_n` with Gaussian coefficients in every component.
pub fn random_element<R: Rng + ?Sized>(level: usize, rng: &mut R) -> GasketElement {
    let xi = std::array::from_fn(|_| random_complex(rng));
    let blocks = (0..level)
        .map(|k| std::array::from_fn(|_| random_matrix(pow3(k), rng)))
        .collect();
    GasketElement::from_parts(level, xi, blocks).expect("block sizes are consistent")
}

pub fn random_hermitian<R: Rng + ?Sized>(level: usize, rng: &mut R) -> GasketElement {
    let e = random_element(level, rng);
    e.add(&e.adjoint())
        .expect("same level")
        .scale(Complex64::new(0.5, 0.0))
}

/// Random element of the classical subalgebra with real values.
pub fn random_classical<R: Rng + ?Sized>(level: usize, rng: &mut R) -> GasketElement {
    let xi = std::array::from_fn(|_| Complex64::new(rng.sample(StandardNormal), 0.0));
    let blocks = (0..level)
        .map(|k| {
            std::array::from_fn(|_| {
                let d: Vec<Complex64> = (0..pow3(k))
                    .map(|_| Complex64::new(rng.sample(StandardNormal), 0.0))
                    .collect();
                ComplexMatrix::diagonal(&d)
            })
        })
        .collect();
    GasketElement::from_parts(level, xi, blocks).expect("block sizes are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_reproducible() {
        let a = random_element(3, &mut ChaCha8Rng::seed_from_u64(7));
        let b = random_element(3, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
    }

    #[test]
    fn hermitian_and_classical() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        assert!(random_hermitian(3, &mut rng).is_hermitian(1e-15));
        let c = random_classical(3, &mut rng);
        assert!(c.is_classical() && c.is_hermitian(0.0));
        let h = random_hermitian_matrix(5, &mut rng);
        assert_eq!(h, h.adjoint());
    }
}
