//! Acceptance suite: one test per criterion, every comparison exact.
//!
//! Run with `cargo test -p skewpencil --test acceptance -- --nocapture` to
//! see the per-criterion result lines.

use std::time::Instant;

use skewpencil::aid::{
    direct_sum_additivity_check, formula_dimension, solve_aid, witness_holds, witness_holds_ext,
    FieldMode,
};
use skewpencil::canonical::{build_block, direct_sum, BlockSpec, CanonicalSpec};
use skewpencil::corpus::{self, corpus, real_split_sqrt2_pencil};
use skewpencil::lie::Genus2Algebra;
use skewpencil::matrix::RowSpan;
use skewpencil::pencil::{DivisorLocation, ElementaryDivisor, Pencil};
use skewpencil::poly::{factor_low_degree, Poly};
use skewpencil::quad::{ExtMatrix, QuadExt, QuadModulus};
use skewpencil::rat::Rat;
use skewpencil::rng::XorShift64;
use skewpencil::smith::smith_normal_form;

const MODES: [FieldMode; 2] = [FieldMode::Real, FieldMode::AlgebraicallyClosed];

fn dims(p: &Pencil, mode: FieldMode) -> (usize, usize) {
    let g = Genus2Algebra::from_pencil_padded(p.clone());
    let r = solve_aid(&g, mode).unwrap();
    (r.dim_inn, r.dim_aid)
}

fn assert_both_paths(p: &Pencil, mode: FieldMode, expected: (usize, usize), label: &str) {
    let solver = dims(p, mode);
    assert_eq!(solver, expected, "solver dims for {label} in {mode} mode");
    let formula = formula_dimension(&p.invariants().unwrap(), mode).unwrap();
    assert_eq!(formula, expected, "formula dims for {label} in {mode} mode");
}

#[test]
fn criterion_01_regular_fixture() {
    let p = corpus::regular_4x4();
    let inv = p.invariants().unwrap();
    let modulus = QuadModulus::new(Rat::zero(), Rat::one()).unwrap();
    assert_eq!(
        inv.divisor_pairs,
        vec![ElementaryDivisor::quadratic(modulus, 1)],
        "one pair of the doubled divisor λ²+1"
    );
    assert!(inv.minimal_indices.is_empty());

    let snf = smith_normal_form(&p.lambda_matrix());
    let xi = Poly::from_ints(&[1, 0, 1]);
    assert_eq!(snf.diagonal, vec![Poly::one(), Poly::one(), xi.clone(), xi]);

    assert_both_paths(&p, FieldMode::Real, (4, 8), "regular_4x4");
    assert_both_paths(&p, FieldMode::AlgebraicallyClosed, (4, 4), "regular_4x4");
    println!("criterion 01 regular 4x4 fixture: PASS");
}

#[test]
fn criterion_02_singular_fixture() {
    for (label, p) in [
        ("singular_5x5", corpus::singular_5x5()),
        ("algebra_7d", corpus::algebra_7d()),
    ] {
        let inv = p.invariants().unwrap();
        assert!(inv.divisor_pairs.is_empty());
        assert_eq!(inv.minimal_indices, vec![2]);

        let snf = smith_normal_form(&p.lambda_matrix());
        assert_eq!(
            snf.diagonal,
            vec![
                Poly::one(),
                Poly::one(),
                Poly::one(),
                Poly::one(),
                Poly::zero()
            ]
        );

        let basis = p.minimal_kernel_basis();
        assert_eq!(basis.len(), 1);
        let col = &basis.columns[0];
        let scale = col.entries[4].clone();
        assert!(scale.is_constant() && !scale.is_zero());
        let c = scale.coeff(0);
        assert_eq!(col.entries[0], Poly::zero());
        assert_eq!(col.entries[1], Poly::zero());
        assert_eq!(col.entries[2], Poly::from_ints(&[0, 0, 1]).scale(&c));
        assert_eq!(col.entries[3], Poly::from_ints(&[0, -1]).scale(&c));

        for mode in MODES {
            assert_both_paths(&p, mode, (5, 6), label);
        }
    }
    println!("criterion 02 singular 5x5 fixture: PASS");
}

#[test]
fn criterion_03_infinity_sweep() {
    for e in 1..=4usize {
        let p = build_block(&BlockSpec::Inf { e }).unwrap();
        for mode in MODES {
            assert_both_paths(&p, mode, (2 * e, 4 * e - 2), &format!("inf e={e}"));
        }
    }
    println!("criterion 03 infinity block sweep: PASS");
}

#[test]
fn criterion_04_finite_sweep() {
    let alphas = [Rat::zero(), Rat::one(), Rat::from_int(-2), Rat::new(3, 2)];
    for alpha in &alphas {
        for f in 1..=3usize {
            let p = build_block(&BlockSpec::Finite {
                alpha: alpha.clone(),
                f,
            })
            .unwrap();
            for mode in MODES {
                assert_both_paths(
                    &p,
                    mode,
                    (2 * f, 4 * f - 2),
                    &format!("finite {alpha} f={f}"),
                );
            }
        }
    }
    println!("criterion 04 finite block sweep: PASS");
}

#[test]
fn criterion_05_complex_sweep() {
    let params = [
        (Rat::zero(), Rat::one()),
        (Rat::one(), Rat::one()),
        (Rat::new(-1, 2), Rat::from_int(2)),
    ];
    for (a, b) in &params {
        for m in 1..=2usize {
            let p = build_block(&BlockSpec::Complex {
                a: a.clone(),
                b: b.clone(),
                m,
            })
            .unwrap();
            let label = format!("complex ({a}, {b}) m={m}");
            assert_both_paths(&p, FieldMode::Real, (4 * m, 8 * m), &label);
            // over a closed field the pair splits into two conjugate finite
            // pairs of exponent m
            assert_both_paths(
                &p,
                FieldMode::AlgebraicallyClosed,
                (4 * m, 4 * m + 4 * (m - 1)),
                &label,
            );
        }
    }
    println!("criterion 05 complex block sweep: PASS");
}

#[test]
fn criterion_06_minimal_index_sweep() {
    for eps in 1..=4usize {
        let p = build_block(&BlockSpec::MinIdx { eps }).unwrap();
        for mode in MODES {
            assert_both_paths(&p, mode, (2 * eps + 1, 3 * eps), &format!("minidx {eps}"));
        }
    }
    // ε = 0 contributes (0, 0) as a summand next to a full-genus partner
    let partner = build_block(&BlockSpec::MinIdx { eps: 2 }).unwrap();
    let with_zero = direct_sum(&[
        build_block(&BlockSpec::MinIdx { eps: 0 }).unwrap(),
        partner.clone(),
    ])
    .unwrap();
    for mode in MODES {
        let base = dims(&partner, mode);
        assert_both_paths(&with_zero, mode, base, "minidx 0 + partner");
    }
    println!("criterion 06 minimal index sweep: PASS");
}

/// Pool of canonical blocks used by the randomized criteria.
fn block_pool() -> Vec<BlockSpec> {
    let mut pool = Vec::new();
    for e in 1..=3 {
        pool.push(BlockSpec::Inf { e });
    }
    for alpha in [Rat::zero(), Rat::one(), Rat::from_int(-2), Rat::new(3, 2)] {
        for f in 1..=3 {
            pool.push(BlockSpec::Finite {
                alpha: alpha.clone(),
                f,
            });
        }
    }
    for (a, b) in [
        (Rat::zero(), Rat::one()),
        (Rat::one(), Rat::one()),
        (Rat::new(-1, 2), Rat::from_int(2)),
    ] {
        for m in 1..=2 {
            pool.push(BlockSpec::Complex {
                a: a.clone(),
                b: b.clone(),
                m,
            });
        }
    }
    for eps in 0..=4 {
        pool.push(BlockSpec::MinIdx { eps });
    }
    pool
}

#[test]
fn criterion_07_direct_sum_additivity() {
    let pool = block_pool();
    let mut rng = XorShift64::new(2024);
    let mut checked = 0;
    while checked < 10 {
        let left = pool[rng.index(pool.len())].clone();
        let right = pool[rng.index(pool.len())].clone();
        let p = build_block(&left).unwrap();
        let q = build_block(&right).unwrap();
        for mode in MODES {
            match direct_sum_additivity_check(&p, &q, mode) {
                Ok(additive) => {
                    assert!(
                        additive,
                        "additivity failed for {left:?} + {right:?} in {mode}"
                    )
                }
                // zero summands or a sum of genus below two are skipped
                Err(_) => continue,
            }
        }
        checked += 1;
    }
    println!("criterion 07 direct sum additivity (10 random pairs): PASS");
}

#[test]
fn criterion_08_random_composite_specs() {
    let started = Instant::now();
    let pool = block_pool();
    let mut rng = XorShift64::new(777);
    for case in 0..25 {
        let mut blocks = Vec::new();
        let want = 2 + rng.index(3); // 2..=4 blocks
        let mut size = 0usize;
        while blocks.len() < want {
            let b = pool[rng.index(pool.len())].clone();
            if size + b.size() > 24 {
                continue;
            }
            size += b.size();
            blocks.push(b);
        }
        let spec = CanonicalSpec::new(blocks).unwrap();
        let p = spec.build().unwrap();
        assert!(p.n() <= 24);
        let inv = p.invariants().unwrap();
        for mode in MODES {
            let formula = formula_dimension(&inv, mode).unwrap();
            let solver = dims(&p, mode);
            assert_eq!(
                solver, formula,
                "case {case}: solver vs formula in {mode} for {spec:?}"
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "composite batch took {elapsed:?}, budget is 30s"
    );
    println!(
        "criterion 08 random composite specs (25 cases, {:.2?}): PASS",
        elapsed
    );
}

#[test]
fn criterion_09_congruence_invariance() {
    for case in corpus().unwrap() {
        let inv = case.pencil.invariants().unwrap();
        let base: Vec<(usize, usize)> = MODES.iter().map(|&m| dims(&case.pencil, m)).collect();
        for seed in 1..=10u64 {
            let q = case.pencil.random_congruence(seed);
            assert_eq!(
                q.invariants().unwrap(),
                inv,
                "invariants changed for {} seed {seed}",
                case.name
            );
            for (k, &mode) in MODES.iter().enumerate() {
                assert_eq!(
                    dims(&q, mode),
                    base[k],
                    "dims changed for {} seed {seed} in {mode}",
                    case.name
                );
            }
        }
    }
    println!("criterion 09 congruence invariance (corpus x 10 seeds): PASS");
}

fn exponent_classes(pairs: &[ElementaryDivisor]) -> (Vec<usize>, Vec<usize>) {
    let mut linear = Vec::new();
    let mut quadratic = Vec::new();
    for p in pairs {
        match p.location {
            DivisorLocation::Quadratic(_) => quadratic.push(p.exponent),
            _ => linear.push(p.exponent),
        }
    }
    linear.sort_unstable();
    quadratic.sort_unstable();
    (linear, quadratic)
}

#[test]
fn criterion_10_gl2_mixing_invariance() {
    let mut rng = XorShift64::new(31);
    for case in corpus().unwrap() {
        let inv = case.pencil.invariants().unwrap();
        let classes = exponent_classes(&inv.divisor_pairs);
        let base: Vec<(usize, usize)> = MODES.iter().map(|&m| dims(&case.pencil, m)).collect();
        let mut done = 0;
        while done < 5 {
            let m = [
                [rng.small_int_rat(3), rng.small_int_rat(3)],
                [rng.small_int_rat(3), rng.small_int_rat(3)],
            ];
            let Ok(mixed) = case.pencil.mixed(&m) else {
                continue; // singular mix, resample
            };
            let mixed_inv = mixed.invariants().unwrap();
            assert_eq!(
                exponent_classes(&mixed_inv.divisor_pairs),
                classes,
                "exponent classes changed for {}",
                case.name
            );
            assert_eq!(
                mixed_inv.minimal_indices, inv.minimal_indices,
                "minimal indices changed for {}",
                case.name
            );
            for (k, &mode) in MODES.iter().enumerate() {
                assert_eq!(
                    dims(&mixed, mode),
                    base[k],
                    "dims changed under mixing for {} in {mode}",
                    case.name
                );
            }
            done += 1;
        }
    }
    println!("criterion 10 basis-mixing invariance (corpus x 5 mixes): PASS");
}

/// All structured points where an almost-inner violation must show up:
/// specialized minimal kernel columns, eigenvalue kernels, the kernel of B
/// and the common kernel.
fn structured_rational_points(p: &Pencil) -> Vec<Vec<Rat>> {
    let mut points = Vec::new();
    let kernel = p.minimal_kernel_basis();
    for col in &kernel.columns {
        for b in 0..=(p.n() as i64 + 1) {
            points.push(col.eval(&Rat::from_int(b)));
        }
    }
    let snf = smith_normal_form(&p.lambda_matrix());
    if let Some(largest) = snf
        .invariant_polynomials()
        .last()
        .filter(|d| !d.is_constant())
    {
        for (prime, _) in factor_low_degree(largest).unwrap() {
            if prime.degree() == Some(1) {
                let alpha = -&prime.coeff(0);
                points.extend(p.eval_affine(&alpha).kernel_basis());
            }
        }
    }
    points.extend(p.b().kernel_basis());
    points.extend(p.a().vstack(p.b()).kernel_basis());
    points
}

fn structured_extension_points(p: &Pencil, mode: FieldMode) -> Vec<Vec<QuadExt>> {
    let mut points = Vec::new();
    let snf = smith_normal_form(&p.lambda_matrix());
    if let Some(largest) = snf
        .invariant_polynomials()
        .last()
        .filter(|d| !d.is_constant())
    {
        for (prime, _) in factor_low_degree(largest).unwrap() {
            if prime.degree() == Some(2) {
                let modulus = QuadModulus::from_poly(&prime).unwrap();
                let include = match mode {
                    FieldMode::AlgebraicallyClosed => true,
                    FieldMode::Real => !modulus.discriminant().is_negative(),
                };
                if include {
                    let ext = ExtMatrix::from_rat_pair(&modulus, p.a(), p.b());
                    points.extend(ext.kernel_basis());
                }
            }
        }
    }
    points
}

#[test]
fn criterion_11_witness_certification() {
    let mut rng = XorShift64::new(5150);
    for case in corpus().unwrap() {
        let g = Genus2Algebra::from_pencil_padded(case.pencil.clone());
        let n = g.x_dim();
        for mode in MODES {
            let result = solve_aid(&g, mode).unwrap();

            // positive side: every reported basis element certifies at 25
            // random rational points
            for d in &result.aid_basis.basis {
                for _ in 0..25 {
                    let x: Vec<Rat> = (0..n).map(|_| rng.small_rat(4, 3)).collect();
                    assert!(
                        witness_holds(&g, d, &x),
                        "witness failed for an AID element of {} in {mode}",
                        case.name
                    );
                }
            }

            // negative side: every direction of C(g) outside the AID span
            // is violated at a structured or random point
            let mut span = RowSpan::new(2 * n);
            for row in result.aid_basis.flat_rows() {
                span.insert(&row);
            }
            let rational_points = structured_rational_points(&case.pencil);
            let extension_points = structured_extension_points(&case.pencil, mode);
            for c in g.central_derivations().basis {
                if !span.insert(&c.to_flat()) {
                    continue; // inside the AID span
                }
                let mut violated = rational_points.iter().any(|x| !witness_holds(&g, &c, x))
                    || extension_points
                        .iter()
                        .any(|x| !witness_holds_ext(&g, &c, x).unwrap());
                if !violated {
                    for _ in 0..25 {
                        let x: Vec<Rat> = (0..n).map(|_| rng.small_rat(4, 3)).collect();
                        if !witness_holds(&g, &c, &x) {
                            violated = true;
                            break;
                        }
                    }
                }
                assert!(
                    violated,
                    "no witness violation found for a complement element of {} in {mode}",
                    case.name
                );
            }
        }
    }
    println!("criterion 11 witness certification: PASS");
}

#[test]
fn criterion_12_real_split_quadratic() {
    // divisor pair (λ²−2, 1): irreducible over ℚ with positive
    // discriminant, so over ℝ it behaves as two finite pairs at ±√2
    for p in [
        real_split_sqrt2_pencil(None),
        real_split_sqrt2_pencil(Some(41)),
    ] {
        let inv = p.invariants().unwrap();
        assert_eq!(inv.divisor_pairs.len(), 1);
        assert!(inv.divisor_pairs[0].is_real_split());

        let formula_real = formula_dimension(&inv, FieldMode::Real).unwrap();
        // two real finite pairs with f = 1: no excess over dim Inn
        assert_eq!(formula_real, (4, 4));
        assert_eq!(
            dims(&p, FieldMode::Real),
            formula_real,
            "solver is the oracle"
        );

        // and the closed mode sees the same two conjugate pairs
        let formula_closed = formula_dimension(&inv, FieldMode::AlgebraicallyClosed).unwrap();
        assert_eq!(dims(&p, FieldMode::AlgebraicallyClosed), formula_closed);
    }
    println!("criterion 12 real-split quadratic pair: PASS");
}
