use std::f64::consts::LN_2;

use ncgasket::algebra::{harmonic_extension, Chain, ProductState};
use ncgasket::classical::{
    classical_energy, classical_harmonic_step, ClassicalFunction, VertexLabel,
};
use ncgasket::energy::{
    element_energy, energy_limit, minimize_over_fiber, renormalized_energy_sequence,
};
use ncgasket::spectral::{
    approximation_defects, dimension_fit, eigenvalue_counting, energy_residue, lip_norm,
    residue_estimate, zeta_trace,
};
use ncgasket::tensor::Word;
use ncgasket::{GasketElement, GasketError};
use num_complex::Complex64;

#[test]
fn alpha_through_every_stage() {
    let a = GasketElement::alpha(0, 1).unwrap();

    // energy: six ordered edges with jump 1 at the root
    assert_eq!(element_energy(&a).energy, 4.0);
    let h = harmonic_extension(&a);
    assert!((element_energy(&h).energy - 2.4).abs() < 1e-15);

    // extension coefficients 2/5, 2/5, 1/5
    let f = ClassicalFunction::from_element(&h).unwrap();
    let inner = |j| {
        f.value(&VertexLabel::inner(1, Word::empty(), j, 1).unwrap())
            .unwrap()
            .re
    };
    assert!(
        (inner(1) - 0.4).abs() < 1e-15
            && (inner(2) - 0.4).abs() < 1e-15
            && (inner(3) - 0.2).abs() < 1e-15
    );

    // the fiber minimum is the harmonic extension
    let m = minimize_over_fiber(&a).unwrap();
    assert!(m.harmonic_deviation < 1e-10);
    assert!((m.min_energy - 2.4).abs() < 1e-10);

    // harmonic chain: stationary renormalized energy 4
    let chain = Chain::harmonic(&a, 5).unwrap();
    let seq = renormalized_energy_sequence(&chain).unwrap();
    assert!(seq.iter().all(|e| (e - 4.0).abs() < 1e-12));
    let lim = energy_limit(&chain).unwrap();
    assert!(lim.stationary);

    // residues
    let r = residue_estimate(&zeta_trace(&chain, vec![2.0], 5).unwrap()).unwrap();
    assert!((r.analytic.re - 1.0 / LN_2).abs() < 1e-12);
    let er = energy_residue(&chain).unwrap();
    assert!((er.analytic.re - 4.0 / LN_2).abs() < 1e-10);
    assert!((er.numerical.re - 4.0 / LN_2).abs() < 1e-3 * 4.0 / LN_2);
}

#[test]
fn affine_lip_is_two_to_the_n_osc() {
    let a = GasketElement::alpha(1, 2).unwrap();
    let chain = Chain::affine(&a, 3).unwrap();
    let l = lip_norm(&chain, 3).unwrap();
    assert_eq!(l.value, 2.0);
    assert_eq!(l.attained_at, 1);
    assert!(l.stationary);
    for d in approximation_defects(&chain, l.value).unwrap() {
        assert!(d.defect <= d.bound + 1e-10);
    }
}

#[test]
fn counting_function() {
    assert_eq!(eigenvalue_counting(1.0).unwrap(), 6);
    assert_eq!(eigenvalue_counting(2.0).unwrap(), 24);
    // the closed-form slope over 2^0..2^20 sits 0.0104 above log 3 / log 2
    let slope = dimension_fit(2f64.powi(20)).unwrap();
    assert!((slope - 1.5953378864161247).abs() < 1e-12);
    assert!(dimension_fit(1.0).is_err());
}

#[test]
fn product_state_on_classical_element() {
    let f = ClassicalFunction::from_fn(2, |v| Complex64::new(v.index() as f64, 0.0));
    let e = f.to_element();
    let w = ProductState::uniform(ProductState::vector_state(2).unwrap()).unwrap();
    // e_22 ⊗ e_22 ⊗ … evaluates at the address 222, the outer vertex v_2
    assert_eq!(w.eval(&e).unwrap(), Complex64::new(1.0, 0.0));
    let g = classical_harmonic_step(&f);
    assert!((classical_energy(&g).unwrap() - 0.6 * classical_energy(&f).unwrap()).abs() < 1e-12);
}

#[test]
fn errors_are_reported() {
    let a = GasketElement::identity(2);
    assert!(matches!(
        a.restrict_to(3),
        Err(GasketError::InvalidLevel { .. })
    ));
    assert!(matches!(
        minimize_over_fiber(&a),
        Err(GasketError::UnsupportedLevel(2))
    ));
    assert!(matches!(
        Chain::extension(&a, 1.0, 3),
        Err(GasketError::ParameterOutOfRange { .. })
    ));
}
