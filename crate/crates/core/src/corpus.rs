//! The built-in verification corpus.
//!
//! Three embedded fixtures plus canonical sweeps over every block family.
//! The same list drives the command-line `corpus` run and the acceptance
//! suite, so the two always agree on what gets verified.

use crate::canonical::{build_block, direct_sum, BlockSpec};
use crate::error::Error;
use crate::json::{AlgebraJson, PencilJson};
use crate::pencil::Pencil;
use crate::rat::Rat;

pub const REGULAR_4X4_JSON: &str = include_str!("../fixtures/regular_4x4.json");
pub const SINGULAR_5X5_JSON: &str = include_str!("../fixtures/singular_5x5.json");
pub const ALGEBRA_7D_JSON: &str = include_str!("../fixtures/algebra_7d.json");

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub name: String,
    pub pencil: Pencil,
}

pub fn regular_4x4() -> Pencil {
    let json: PencilJson = serde_json::from_str(REGULAR_4X4_JSON).expect("fixture parses");
    json.to_pencil().expect("fixture is valid")
}

pub fn singular_5x5() -> Pencil {
    let json: PencilJson = serde_json::from_str(SINGULAR_5X5_JSON).expect("fixture parses");
    json.to_pencil().expect("fixture is valid")
}

pub fn algebra_7d() -> Pencil {
    let json: AlgebraJson = serde_json::from_str(ALGEBRA_7D_JSON).expect("fixture parses");
    json.to_pencil().expect("fixture is valid")
}

fn case(name: impl Into<String>, pencil: Pencil) -> CorpusCase {
    CorpusCase {
        name: name.into(),
        pencil,
    }
}

/// Every corpus pencil, in a fixed order.
pub fn corpus() -> Result<Vec<CorpusCase>, Error> {
    let mut out = Vec::new();
    out.push(case("regular_4x4", regular_4x4()));
    out.push(case("singular_5x5", singular_5x5()));
    out.push(case("algebra_7d", algebra_7d()));

    for e in 1..=4usize {
        out.push(case(
            format!("inf_{e}"),
            build_block(&BlockSpec::Inf { e })?,
        ));
    }
    for (label, alpha) in [
        ("0", Rat::zero()),
        ("1", Rat::one()),
        ("m2", Rat::from_int(-2)),
        ("3h", Rat::new(3, 2)),
    ] {
        for f in 1..=3usize {
            out.push(case(
                format!("finite_{label}_{f}"),
                build_block(&BlockSpec::Finite {
                    alpha: alpha.clone(),
                    f,
                })?,
            ));
        }
    }
    for (label, a, b) in [
        ("0_1", Rat::zero(), Rat::one()),
        ("1_1", Rat::one(), Rat::one()),
        ("mh_2", Rat::new(-1, 2), Rat::from_int(2)),
    ] {
        for m in 1..=2usize {
            out.push(case(
                format!("complex_{label}_{m}"),
                build_block(&BlockSpec::Complex {
                    a: a.clone(),
                    b: b.clone(),
                    m,
                })?,
            ));
        }
    }
    for eps in 1..=4usize {
        out.push(case(
            format!("minidx_{eps}"),
            build_block(&BlockSpec::MinIdx { eps })?,
        ));
    }
    // zero minimal index has to ride along with a partner of full genus
    out.push(case(
        "minidx_0_plus_minidx_2",
        direct_sum(&[
            build_block(&BlockSpec::MinIdx { eps: 0 })?,
            build_block(&BlockSpec::MinIdx { eps: 2 })?,
        ])?,
    ));
    // mixed multi-block sums
    out.push(case(
        "sum_inf2_finite0_minidx2",
        direct_sum(&[
            build_block(&BlockSpec::Inf { e: 2 })?,
            build_block(&BlockSpec::Finite {
                alpha: Rat::zero(),
                f: 1,
            })?,
            build_block(&BlockSpec::MinIdx { eps: 2 })?,
        ])?,
    ));
    out.push(case(
        "sum_complex_finite_repeat",
        direct_sum(&[
            build_block(&BlockSpec::Complex {
                a: Rat::zero(),
                b: Rat::one(),
                m: 1,
            })?,
            build_block(&BlockSpec::Finite {
                alpha: Rat::one(),
                f: 2,
            })?,
            build_block(&BlockSpec::Finite {
                alpha: Rat::one(),
                f: 1,
            })?,
        ])?,
    ));
    Ok(out)
}

/// A 4x4 pencil whose single divisor pair is the real-split quadratic
/// λ² − 2 (positive discriminant, irrational real eigenvalues ±√2): the
/// block-antidiagonal wrap of [[λ, 2μ], [μ, λ]], optionally roughed up by a
/// random congruence.
pub fn real_split_sqrt2_pencil(seed: Option<u64>) -> Pencil {
    use crate::matrix::RatMatrix;
    let a = RatMatrix::from_ints(&[&[0, 0, 0, 2], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-2, 0, 0, 0]]);
    let b = RatMatrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
    let p = Pencil::new(a, b).expect("construction is skew");
    match seed {
        Some(s) => p.random_congruence(s),
        None => p,
    }
}
