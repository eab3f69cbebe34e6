//! Verification suites, one per acceptance criterion.

use std::f64::consts::LN_2;
use std::time::Instant;

use ncgasket::algebra::{
    char_chi, extension_defect, harmonic_extension, symmetric_extension, trace_tau, trace_tau_mj,
    Chain, ProductState,
};
use ncgasket::classical::{
    classical_commutant_dimension, classical_energy, classical_harmonic_step, enumerate_vertices,
    label_to_point, vertex_count, ClassicalFunction, VertexLabel,
};
use ncgasket::energy::{
    check_norm_energy_bounds, check_selfsimilarity, cor47_constant, element_energy,
    minimize_over_fiber, RENORMALIZATION,
};
use ncgasket::oracle::{dense_restrict, dense_symmetric_extension};
use ncgasket::random::{random_classical, random_element, random_hermitian};
use ncgasket::spectral::{
    approximation_defects, commutator_hs_sqr, commutator_norm, dense_commutator_hs_sqr,
    dense_commutator_norm, dimension_fit, energy_residue, energy_weights, hilbert_trace, lip_norm,
    pi_matrix, residue_estimate, zeta_trace, WeightPath,
};
use ncgasket::tensor::{max_abs_diff, op_norm, trace, ComplexMatrix};
use ncgasket::{GasketElement, GasketError};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{Case, VerificationReport};

pub const DEFAULT_SEED: u64 = 42;

/// Runtime parameters shared by every suite.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Highest level exercised; `None` keeps the suite default.
    pub levels: Option<usize>,
    /// Random samples per level; `None` keeps the suite default.
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            levels: None,
            samples: None,
        }
    }
}

struct Ctx {
    levels: usize,
    samples: usize,
    rng: ChaCha8Rng,
}

pub struct Suite {
    pub name: &'static str,
    pub criterion: usize,
    pub default_levels: usize,
    /// Dense oracles and Hilbert-space checks stop here.
    pub max_levels: usize,
    pub default_samples: usize,
    run: fn(&mut Ctx) -> Vec<Case>,
}

pub const SUITES: [Suite; 13] = [
    Suite {
        name: "oracle",
        criterion: 1,
        default_levels: 4,
        max_levels: 4,
        default_samples: 200,
        run: oracle,
    },
    Suite {
        name: "eigenform",
        criterion: 2,
        default_levels: 5,
        max_levels: 6,
        default_samples: 100,
        run: eigenform,
    },
    Suite {
        name: "fiber",
        criterion: 3,
        default_levels: 1,
        max_levels: 1,
        default_samples: 20,
        run: fiber,
    },
    Suite {
        name: "selfsimilarity",
        criterion: 4,
        default_levels: 4,
        max_levels: 5,
        default_samples: 100,
        run: selfsimilarity,
    },
    Suite {
        name: "oscillation",
        criterion: 5,
        default_levels: 3,
        max_levels: 5,
        default_samples: 100,
        run: oscillation,
    },
    Suite {
        name: "commutator",
        criterion: 6,
        default_levels: 3,
        max_levels: 3,
        default_samples: 20,
        run: commutator,
    },
    Suite {
        name: "lip",
        criterion: 7,
        default_levels: 3,
        max_levels: 3,
        default_samples: 20,
        run: lip,
    },
    Suite {
        name: "dimension",
        criterion: 8,
        default_levels: 20,
        max_levels: 40,
        default_samples: 1,
        run: dimension,
    },
    Suite {
        name: "connes-trace",
        criterion: 9,
        default_levels: 3,
        max_levels: 3,
        default_samples: 20,
        run: connes_trace,
    },
    Suite {
        name: "energy-residue",
        criterion: 10,
        default_levels: 3,
        max_levels: 3,
        default_samples: 20,
        run: energy_residue_suite,
    },
    Suite {
        name: "traces",
        criterion: 11,
        default_levels: 3,
        max_levels: 4,
        default_samples: 100,
        run: traces,
    },
    Suite {
        name: "norm-energy",
        criterion: 12,
        default_levels: 5,
        max_levels: 5,
        default_samples: 20,
        run: norm_energy,
    },
    Suite {
        name: "classical",
        criterion: 13,
        default_levels: 4,
        max_levels: 5,
        default_samples: 20,
        run: classical,
    },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

impl Suite {
    pub fn run(&self, cfg: &SuiteConfig) -> Result<VerificationReport, String> {
        let levels = cfg.levels.unwrap_or(self.default_levels);
        if levels > self.max_levels {
            return Err(format!(
                "suite {} supports at most {} levels, got {levels}",
                self.name, self.max_levels
            ));
        }
        let samples = cfg.samples.unwrap_or(self.default_samples);
        if samples == 0 {
            return Err("sample count must be positive".into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(self.criterion as u64);
        let mut ctx = Ctx {
            levels,
            samples,
            rng,
        };
        let start = Instant::now();
        let cases = (self.run)(&mut ctx);
        Ok(VerificationReport::new(
            self.name,
            self.criterion,
            cfg.seed,
            start.elapsed().as_secs_f64(),
            cases,
        ))
    }
}

/// Runs a fallible check, turning an error into a failing case.
fn guard(name: &str, f: impl FnOnce() -> Result<Case, GasketError>) -> Case {
    f().unwrap_or_else(|e| Case::failed(name, e))
}

/// Tracks the worst value of a family of samples.
#[derive(Default)]
struct Worst(f64);

impl Worst {
    fn see(&mut self, v: f64) {
        // NaN sticks, so that it fails every comparison
        if !self.0.is_nan() && (v.is_nan() || v > self.0) {
            self.0 = v;
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn crel(a: Complex64, b: Complex64) -> f64 {
    if b.norm() == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / b.norm()
    }
}

const T_VALUES: [f64; 3] = [0.5, 0.6, 0.8];

fn oracle(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 0..=ctx.levels {
        let name = |op: &str| format!("{op} n={n}");
        let mut worst = [
            Worst::default(),
            Worst::default(),
            Worst::default(),
            Worst::default(),
            Worst::default(),
            Worst::default(),
        ];
        let r = (|| -> Result<(), GasketError> {
            for s in 0..ctx.samples {
                let a = random_element(n, &mut ctx.rng);
                let b = random_element(n, &mut ctx.rng);
                let (da, db) = (a.to_dense(), b.to_dense());
                worst[0].see(max_abs_diff(&a.mul(&b)?.to_dense(), &da.matmul(&db)?));
                worst[1].see(max_abs_diff(
                    &a.add(&b)?.to_dense(),
                    &da.axpy(Complex64::new(1.0, 0.0), &db),
                ));
                worst[2].see(max_abs_diff(&a.adjoint().to_dense(), &da.adjoint()));
                if n > 0 {
                    worst[3].see(max_abs_diff(
                        &a.restrict()?.to_dense(),
                        &dense_restrict(&da)?,
                    ));
                }
                let t = T_VALUES[s % T_VALUES.len()];
                worst[4].see(max_abs_diff(
                    &symmetric_extension(&a, t)?.to_dense(),
                    &dense_symmetric_extension(&da, t)?,
                ));
                worst[5].see((a.norm()? - op_norm(&da)?).abs());
            }
            Ok(())
        })();
        if let Err(e) = r {
            cases.push(Case::failed(name("dense oracle"), e));
            continue;
        }
        cases.push(Case::error(name("mul"), worst[0].0, 1e-10));
        cases.push(Case::error(name("add"), worst[1].0, 1e-10));
        cases.push(Case::error(name("adjoint"), worst[2].0, 1e-10));
        if n > 0 {
            cases.push(Case::error(name("restrict"), worst[3].0, 1e-10));
        }
        cases.push(Case::error(name("symmetric extension"), worst[4].0, 1e-10));
        cases.push(Case::error(
            name("norm vs largest singular value"),
            worst[5].0,
            1e-8,
        ));
    }
    cases
}

fn eigenform(ctx: &mut Ctx) -> Vec<Case> {
    (0..=ctx.levels)
        .map(|n| {
            let mut worst = Worst::default();
            for _ in 0..ctx.samples {
                let b = random_element(n, &mut ctx.rng);
                let lo = element_energy(&b).energy;
                let hi = element_energy(&harmonic_extension(&b)).energy;
                worst.see((hi / lo - 0.6).abs());
            }
            Case::error(
                format!("E(n+1)[λ(b)] / E(n)[b] - 3/5, n={n}"),
                worst.0,
                1e-10,
            )
        })
        .collect()
}

fn fiber(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 0..=ctx.levels {
        let mut energy_gap = Worst::default();
        let mut argmin_gap = Worst::default();
        let mut deficient = 0;
        let mut failure = None;
        for _ in 0..ctx.samples {
            let b = random_hermitian(n, &mut ctx.rng);
            match minimize_over_fiber(&b) {
                Ok(m) => {
                    energy_gap.see((m.min_energy - 0.6 * element_energy(&b).energy).abs());
                    argmin_gap.see(m.harmonic_deviation);
                    deficient += usize::from(m.rank_deficient());
                }
                Err(e) => failure = Some(e),
            }
        }
        if let Some(e) = failure {
            cases.push(Case::failed(format!("fiber minimum n={n}"), e));
            continue;
        }
        let mut c = Case::error(
            format!("min fiber energy - (3/5) E(n), n={n}"),
            energy_gap.0,
            1e-8,
        );
        if deficient > 0 {
            c = c.with_note(format!("{deficient} rank-deficient fibers"));
        }
        cases.push(c);
        cases.push(Case::error(
            format!("argmin - harmonic extension, n={n}"),
            argmin_gap.0,
            1e-8,
        ));
    }
    cases
}

fn selfsimilarity(ctx: &mut Ctx) -> Vec<Case> {
    (0..=ctx.levels)
        .map(|n| {
            guard("self-similarity", || {
                let mut worst = Worst::default();
                for _ in 0..ctx.samples {
                    let b = random_element(n + 1, &mut ctx.rng);
                    let (lhs, rhs) = check_selfsimilarity(&b)?;
                    worst.see((lhs - rhs).abs());
                }
                Ok(Case::error(
                    format!("E(n+1)[b] - Σ E(n)[slice], n={n}"),
                    worst.0,
                    1e-10,
                ))
            })
        })
        .collect()
}

fn oscillation(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    for t in T_VALUES {
        let c = guard("oscillation", || {
            let mut osc_excess = Worst(f64::NEG_INFINITY);
            let mut norm_excess = Worst(f64::NEG_INFINITY);
            for n in 0..=ctx.levels {
                for _ in 0..ctx.samples {
                    let a = random_element(n, &mut ctx.rng);
                    let osc = a.osc()?;
                    osc_excess.see(symmetric_extension(&a, t)?.osc()? - t * osc);
                    norm_excess.see(extension_defect(&a, t)? - t * osc);
                }
            }
            cases.push(Case::at_most(
                format!("osc(λa) - t osc(a), t={t}"),
                osc_excess.0,
                0.0,
                1e-12,
            ));
            Ok(Case::at_most(
                format!("‖a - λa‖ - t osc(a), t={t}"),
                norm_excess.0,
                0.0,
                1e-10,
            ))
        });
        cases.push(c);
    }
    cases
}

fn commutator(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 0..=ctx.levels {
        let c = guard("commutator", || {
            let mut dense = Worst::default();
            let mut formula = Worst::default();
            for _ in 0..ctx.samples {
                let a = random_element(n, &mut ctx.rng);
                let osc = a.osc()?;
                dense.see((dense_commutator_norm(&a, n)? - osc).abs());
                formula.see((commutator_norm(&a, n)? - osc).abs());
            }
            cases.push(Case::error(
                format!("block-formula commutator - osc, n={n}"),
                formula.0,
                1e-8,
            ));
            Ok(Case::error(
                format!("‖[F, π(a)]‖ (dense) - osc(a), n={n}"),
                dense.0,
                1e-8,
            ))
        });
        cases.push(c);
    }
    cases
}

fn lip(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 0..=ctx.levels {
        let c = guard("lip", || {
            // dense defects need 3^{top+1} ≤ 243
            let top = (n + 2).min(4).max(n + 1);
            let mut value_gap = Worst::default();
            let mut not_at_base = 0usize;
            let mut excess = Worst(f64::NEG_INFINITY);
            let mut inexact = 0usize;
            for _ in 0..ctx.samples {
                let a = random_element(n, &mut ctx.rng);
                let chain = Chain::affine(&a, top)?;
                let l = lip_norm(&chain, top)?;
                let want = 2f64.powi(n as i32) * a.osc()?;
                value_gap.see(rel(l.value, want));
                not_at_base += usize::from(!l.stationary);
                for d in approximation_defects(&chain, l.value)? {
                    excess.see(d.defect - d.bound);
                    inexact += usize::from(!d.exact);
                }
            }
            cases.push(Case::error(
                format!("L(a) vs 2^n osc(a) (relative), n={n}"),
                value_gap.0,
                1e-10,
            ));
            cases.push(Case::error(
                format!("samples with L not attained at base level, n={n}"),
                not_at_base as f64,
                0.0,
            ));
            let c = Case::at_most(
                format!("‖a - ρ_k(a)‖ - 2^-k L(a), n={n}"),
                excess.0,
                0.0,
                1e-10,
            );
            Ok(if inexact > 0 {
                c.with_note(format!("{inexact} telescoped defects"))
            } else {
                c
            })
        });
        cases.push(c);
    }
    cases
}

fn dimension(ctx: &mut Ctx) -> Vec<Case> {
    let start = Instant::now();
    let t_max = 2f64.powi(ctx.levels as i32);
    let fit = guard("slope", || {
        Ok(Case::within(
            format!("slope of log N(T) on T = 1..2^{}", ctx.levels),
            dimension_fit(t_max)?,
            3f64.ln() / LN_2,
            0.01,
        ))
    });
    let secs = start.elapsed().as_secs_f64();
    vec![fit, Case::at_most("runtime in seconds", secs, 1.0, 0.0)]
}

fn connes_trace(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 0..=ctx.levels {
        let c = guard("connes trace", || {
            let mut analytic = Worst::default();
            let mut numerical = Worst::default();
            let mut hilbert = Worst::default();
            for _ in 0..ctx.samples {
                let a = random_element(n, &mut ctx.rng);
                let top = n + 4;
                let chain = Chain::harmonic(&a, top)?;
                let r = residue_estimate(&zeta_trace(&chain, Vec::new(), top)?)?;
                let want = a.dense_trace() / 3f64.powi(n as i32) / LN_2;
                analytic.see(crel(r.analytic, want));
                numerical.see(crel(r.numerical, want));
                let two = a.dense_trace() * 2.0;
                hilbert.see((hilbert_trace(&a, n)? - two).norm());
                hilbert.see((trace(&pi_matrix(&a, n)?) - two).norm());
            }
            cases.push(Case::error(
                format!("analytic residue vs 3^-n tr(a)/log 2 (relative), n={n}"),
                analytic.0,
                1e-12,
            ));
            cases.push(Case::error(
                format!("numerical residue (relative), n={n}"),
                numerical.0,
                1e-3,
            ));
            Ok(Case::error(
                format!("Hilbert trace - 2 tr(a), n={n}"),
                hilbert.0,
                1e-10,
            ))
        });
        cases.push(c);
    }
    cases
}

fn energy_residue_suite(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    let top = ctx.levels;
    for n in 0..=ctx.levels {
        let c = guard("energy residue", || {
            let mut analytic = Worst::default();
            let mut numerical = Worst::default();
            let mut paths = Worst::default();
            for _ in 0..ctx.samples {
                let a = random_element(n, &mut ctx.rng);
                let chain = Chain::harmonic(&a, top)?;
                let e_inf = RENORMALIZATION.powi(n as i32) * element_energy(&a).energy;
                let r = energy_residue(&chain)?;
                let want = Complex64::new(e_inf / LN_2, 0.0);
                analytic.see(crel(r.analytic, want));
                numerical.see(crel(r.numerical, want));
                let f = energy_weights(&chain, top, WeightPath::Formula)?;
                let d = energy_weights(&chain, top, WeightPath::Dense)?;
                for (x, y) in f.iter().zip(&d) {
                    paths.see((x - y).abs());
                }
                for j in n..=top {
                    let level = chain.level(j)?;
                    paths.see(
                        (commutator_hs_sqr(level, j)? - dense_commutator_hs_sqr(level, j)?).abs(),
                    );
                }
            }
            cases.push(Case::error(
                format!("analytic residue vs E∞/log 2 (relative), n={n}"),
                analytic.0,
                1e-10,
            ));
            cases.push(Case::error(
                format!("numerical residue (relative), n={n}"),
                numerical.0,
                1e-3,
            ));
            Ok(Case::error(
                format!("formula vs dense Hilbert-space weights, n={n}"),
                paths.0,
                1e-8,
            ))
        });
        cases.push(c);
    }
    cases
}

fn half_13() -> ComplexMatrix {
    ComplexMatrix::from_fn(3, |i, j| {
        Complex64::new(if i != 1 && j != 1 { 0.5 } else { 0.0 }, 0.0)
    })
}

type Functional = (
    String,
    Box<dyn Fn(&GasketElement) -> Result<Complex64, GasketError>>,
);

fn functionals(n: usize) -> Vec<Functional> {
    let mut out: Vec<Functional> =
        vec![("τ".into(), Box::new(|e: &GasketElement| Ok(trace_tau(e))))];
    for j in 1..=3 {
        out.push((
            format!("χ_{j}"),
            Box::new(move |e: &GasketElement| char_chi(e, j)),
        ));
    }
    for m in 1..=n {
        for j in 1..=3 {
            out.push((
                format!("τ_{{{m},{j}}}"),
                Box::new(move |e: &GasketElement| trace_tau_mj(e, m, j)),
            ));
        }
    }
    out
}

fn traces(ctx: &mut Ctx) -> Vec<Case> {
    let n = ctx.levels;
    let fs = functionals(n);
    let mut cases = Vec::new();
    let mut pairs = Vec::with_capacity(ctx.samples);
    for _ in 0..ctx.samples {
        pairs.push((
            random_element(n, &mut ctx.rng),
            random_element(n, &mut ctx.rng),
        ));
    }
    let one = GasketElement::identity(n);
    for (label, f) in &fs {
        let c = guard(label, || {
            let mut tracial = Worst::default();
            let mut positive = Worst(f64::NEG_INFINITY);
            for (a, b) in &pairs {
                tracial.see((f(&a.mul(b)?)? - f(&b.mul(a)?)?).norm());
                positive.see(-f(&a.adjoint().mul(a)?)?.re);
            }
            cases.push(Case::error(
                format!("{label}: unital"),
                (f(&one)? - 1.0).norm(),
                1e-10,
            ));
            cases.push(Case::at_most(
                format!("{label}: -T(a*a)"),
                positive.0,
                0.0,
                1e-10,
            ));
            Ok(Case::error(
                format!("{label}: |T(ab) - T(ba)|"),
                tracial.0,
                1e-10,
            ))
        });
        cases.push(c);
    }
    cases.push(guard("ω = (χ_1 + χ_3)/2", || {
        let w = ProductState::new(vec![half_13()], ProductState::vector_state(2)?)?;
        let mut worst = Worst::default();
        for (a, _) in &pairs {
            let want = (char_chi(a, 1)? + char_chi(a, 3)?) * 0.5;
            worst.see((w.eval(a)? - want).norm());
        }
        Ok(Case::error("ω = (χ_1 + χ_3)/2", worst.0, 1e-10))
    }));
    cases
}

fn norm_energy(ctx: &mut Ctx) -> Vec<Case> {
    let top = ctx.levels;
    let mut cases = vec![Case::within(
        "norm-energy constant (√0.6 / (1 - √0.6))²",
        cor47_constant(),
        11.8095,
        1e-4,
    )];
    for n in 0..=top {
        let c = guard("norm-energy", || {
            let mut margin = Worst(f64::INFINITY);
            let mut global = Worst(f64::NEG_INFINITY);
            for s in 0..ctx.samples {
                let mut a = random_element(n, &mut ctx.rng);
                if s % 2 == 1 {
                    // ρ_0(b) = 0 brings in the global bound
                    a = GasketElement::from_parts(
                        n,
                        [Complex64::new(0.0, 0.0); 3],
                        a.blocks().to_vec(),
                    )?;
                }
                let chain = Chain::harmonic(&a, top)?;
                let e_inf = RENORMALIZATION.powi(n as i32) * element_energy(&a).energy;
                let rep = check_norm_energy_bounds(&chain, e_inf)?;
                margin.0 = margin.0.min(rep.worst_margin);
                if let Some((lhs, rhs)) = rep.global {
                    global.see(lhs - rhs);
                }
            }
            if global.0 > f64::NEG_INFINITY {
                cases.push(Case::at_most(
                    format!("‖b‖² - C E∞[b] when ρ_0(b) = 0, n={n}"),
                    global.0,
                    0.0,
                    1e-10,
                ));
            }
            Ok(Case::at_least(
                format!("worst per-level margin, base n={n}"),
                margin.0,
                0.0,
                1e-10,
            ))
        });
        cases.push(c);
    }
    cases
}

fn classical(ctx: &mut Ctx) -> Vec<Case> {
    let mut cases = Vec::new();
    let miscount = (0..=8)
        .filter(|&n| {
            enumerate_vertices(n).len() != vertex_count(n)
                || vertex_count(n) != (3usize.pow(n as u32 + 1) + 3) / 2
        })
        .count();
    cases.push(Case::error(
        "vertex count mismatches for n ≤ 8",
        miscount as f64,
        0.0,
    ));
    cases.push(guard("11 = 33", || {
        let a = label_to_point(&VertexLabel::from_address(&"11".parse()?)?)?;
        let b = ncgasket::classical::address_to_point(&"33".parse()?)?;
        Ok(Case::error(
            "distance between the points 11 and 33",
            (a.0 - b.0).hypot(a.1 - b.1),
            1e-15,
        ))
    }));
    for n in 0..=ctx.levels {
        let c = guard("bridge", || {
            let mut step = Worst::default();
            let mut energy = Worst::default();
            let mut restrict = Worst::default();
            let mut commute = Worst::default();
            for _ in 0..ctx.samples {
                let e = random_classical(n, &mut ctx.rng);
                let f = ClassicalFunction::from_element(&e)?;
                step.see(
                    classical_harmonic_step(&f)
                        .to_element()
                        .max_abs_diff(&harmonic_extension(&e))?,
                );
                energy.see((classical_energy(&f)? - element_energy(&e).energy).abs());
                if n > 0 {
                    restrict.see(f.restrict()?.to_element().max_abs_diff(&e.restrict()?)?);
                }
                let g = random_classical(n, &mut ctx.rng);
                commute.see(e.mul(&g)?.max_abs_diff(&g.mul(&e)?)?);
            }
            cases.push(Case::error(
                format!("classical vs quantum energy, n={n}"),
                energy.0,
                1e-12,
            ));
            cases.push(Case::error(
                format!("classical vs quantum restriction, n={n}"),
                restrict.0,
                1e-12,
            ));
            cases.push(Case::error(
                format!("diagonal elements commute, n={n}"),
                commute.0,
                1e-12,
            ));
            Ok(Case::error(
                format!("harmonic step vs λ^(3/5), n={n}"),
                step.0,
                1e-12,
            ))
        });
        cases.push(c);
    }
    for n in 0..=ctx.levels.min(2) {
        cases.push(guard("commutant", || {
            let d = classical_commutant_dimension(n)?;
            Ok(Case::within(
                format!("commutant dimension of C(V_n), n={n}"),
                d as f64,
                vertex_count(n) as f64,
                0.0,
            )
            .with_note("maximal abelian check, exact linear algebra"))
        }));
    }
    cases
}

/// Used by `gen --random`: reproducible random elements.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
