//! Canonical skew pencil blocks and direct sums.
//!
//! Every strict-congruence class is represented by a block-diagonal pencil
//! built from four block families:
//!
//! * `Inf(e)` — a 2e block carrying one divisor pair at infinity,
//! * `Finite(α, f)` — a 2f block carrying one pair at a rational point,
//! * `Complex(a, b, m)` — a 4m block carrying one quadratic pair with the
//!   conjugate eigenvalues a ± bi (b ≠ 0),
//! * `MinIdx(ε)` — a (2ε+1) block with one minimal index and no divisors.
//!
//! The matrices follow the classical displays: Δ is the anti-diagonal of
//! ones, Λ the band just below it, and the `MinIdx` block is built from the
//! (ε+1)×ε bidiagonal with λ on the diagonal and μ below.

use crate::error::Error;
use crate::matrix::RatMatrix;
use crate::pencil::{DivisorLocation, Pencil, PencilInvariants};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BlockSpec {
    Inf { e: usize },
    Finite { alpha: Rat, f: usize },
    Complex { a: Rat, b: Rat, m: usize },
    MinIdx { eps: usize },
}

impl BlockSpec {
    /// Size of the pencil this block produces.
    pub fn size(&self) -> usize {
        match self {
            BlockSpec::Inf { e } => 2 * e,
            BlockSpec::Finite { f, .. } => 2 * f,
            BlockSpec::Complex { m, .. } => 4 * m,
            BlockSpec::MinIdx { eps } => 2 * eps + 1,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        match self {
            BlockSpec::Inf { e } if *e == 0 => {
                Err(Error::InvalidSpec("infinity block needs e >= 1".into()))
            }
            BlockSpec::Finite { f, .. } if *f == 0 => {
                Err(Error::InvalidSpec("finite block needs f >= 1".into()))
            }
            BlockSpec::Complex { m, .. } if *m == 0 => {
                Err(Error::InvalidSpec("complex block needs m >= 1".into()))
            }
            BlockSpec::Complex { b, .. } if b.is_zero() => {
                Err(Error::InvalidSpec("complex block needs b != 0".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalSpec {
    pub blocks: Vec<BlockSpec>,
}

impl CanonicalSpec {
    pub fn new(blocks: Vec<BlockSpec>) -> Result<Self, Error> {
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("spec needs at least one block".into()));
        }
        Ok(CanonicalSpec { blocks })
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(BlockSpec::size).sum()
    }

    pub fn build(&self) -> Result<Pencil, Error> {
        let blocks: Vec<Pencil> = self
            .blocks
            .iter()
            .map(build_block)
            .collect::<Result<_, _>>()?;
        direct_sum(&blocks)
    }
}

/// Anti-diagonal of ones.
fn delta(e: usize) -> RatMatrix {
    RatMatrix::from_fn(e, e, |i, j| {
        if i + j == e - 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// The band just below the anti-diagonal (zero for e = 1).
fn shifted_delta(e: usize) -> RatMatrix {
    RatMatrix::from_fn(
        e,
        e,
        |i, j| {
            if i + j == e {
                Rat::one()
            } else {
                Rat::zero()
            }
        },
    )
}

/// Wraps a symmetric polynomial block T = T_A + λT_B into the skew pencil
/// [[0, T], [−T, 0]].
fn skew_wrap(t_a: &RatMatrix, t_b: &RatMatrix) -> Result<Pencil, Error> {
    let e = t_a.rows();
    let a = RatMatrix::from_fn(2 * e, 2 * e, |i, j| {
        if i < e && j >= e {
            t_a.at(i, j - e).clone()
        } else if i >= e && j < e {
            -t_a.at(j, i - e)
        } else {
            Rat::zero()
        }
    });
    let b = RatMatrix::from_fn(2 * e, 2 * e, |i, j| {
        if i < e && j >= e {
            t_b.at(i, j - e).clone()
        } else if i >= e && j < e {
            -t_b.at(j, i - e)
        } else {
            Rat::zero()
        }
    });
    Pencil::new(a, b)
}

/// Builds the canonical pencil of a single block.
pub fn build_block(spec: &BlockSpec) -> Result<Pencil, Error> {
    spec.validate()?;
    match spec {
        // [[0, μΔ + λΛ], [−μΔ − λΛ, 0]]
        BlockSpec::Inf { e } => skew_wrap(&delta(*e), &shifted_delta(*e)),
        // [[0, (λ − μα)Δ + μΛ], […, 0]]: μ-part −αΔ + Λ, λ-part Δ
        BlockSpec::Finite { alpha, f } => {
            let t_a = &delta(*f).scale(&-alpha) + &shifted_delta(*f);
            skew_wrap(&t_a, &delta(*f))
        }
        // block band T_m of 2x2 cells: R on the anti-diagonal of cells,
        // μΔ₂ on the band below; R = [[−μb, λ−μa], [λ−μa, μb]]
        BlockSpec::Complex { a, b, m } => {
            let mm = *m;
            let mut t_a = RatMatrix::zeros(2 * mm, 2 * mm);
            let mut t_b = RatMatrix::zeros(2 * mm, 2 * mm);
            for bi in 0..mm {
                for bj in 0..mm {
                    let (r0, c0) = (2 * bi, 2 * bj);
                    if bi + bj == mm - 1 {
                        // R cell
                        *t_a.at_mut(r0, c0) = -b;
                        *t_a.at_mut(r0, c0 + 1) = -a;
                        *t_a.at_mut(r0 + 1, c0) = -a;
                        *t_a.at_mut(r0 + 1, c0 + 1) = b.clone();
                        *t_b.at_mut(r0, c0 + 1) = Rat::one();
                        *t_b.at_mut(r0 + 1, c0) = Rat::one();
                    } else if bi + bj == mm {
                        // μΔ₂ cell
                        *t_a.at_mut(r0, c0 + 1) = Rat::one();
                        *t_a.at_mut(r0 + 1, c0) = Rat::one();
                    }
                }
            }
            skew_wrap(&t_a, &t_b)
        }
        // [[0, L], [−Lᵗ, 0]] with L the (ε+1)×ε bidiagonal: λ on the
        // diagonal, μ below; ε = 0 degenerates to the 1x1 zero pencil.
        BlockSpec::MinIdx { eps } => {
            let eps = *eps;
            let n = 2 * eps + 1;
            let mut a = RatMatrix::zeros(n, n);
            let mut b = RatMatrix::zeros(n, n);
            for k in 0..eps {
                // L_B[k][k] = 1 (λ), L_A[k+1][k] = 1 (μ)
                *b.at_mut(k, eps + 1 + k) = Rat::one();
                *b.at_mut(eps + 1 + k, k) = -Rat::one();
                *a.at_mut(k + 1, eps + 1 + k) = Rat::one();
                *a.at_mut(eps + 1 + k, k + 1) = -Rat::one();
            }
            Pencil::new(a, b)
        }
    }
}

/// Block-diagonal direct sum.
pub fn direct_sum(pencils: &[Pencil]) -> Result<Pencil, Error> {
    if pencils.is_empty() {
        return Err(Error::InvalidSpec("direct sum of nothing".into()));
    }
    let a_blocks: Vec<RatMatrix> = pencils.iter().map(|p| p.a().clone()).collect();
    let b_blocks: Vec<RatMatrix> = pencils.iter().map(|p| p.b().clone()).collect();
    Pencil::new(
        RatMatrix::block_diag(&a_blocks),
        RatMatrix::block_diag(&b_blocks),
    )
}

/// Canonical block list realizing a set of invariants, in the fixed order
/// infinite, finite, complex, minimal indices.
///
/// Quadratic pairs are realizable only when the conjugate eigenvalues are
/// a ± bi with rational a, b (negative discriminant whose absolute value is
/// a rational square); anything else has no canonical block over ℚ and is
/// rejected.
pub fn spec_from_invariants(inv: &PencilInvariants) -> Result<CanonicalSpec, Error> {
    inv.check_size_identity()?;
    let mut inf = Vec::new();
    let mut finite = Vec::new();
    let mut complex = Vec::new();
    for pair in &inv.divisor_pairs {
        match &pair.location {
            DivisorLocation::Infinity => inf.push(BlockSpec::Inf { e: pair.exponent }),
            DivisorLocation::Finite(alpha) => finite.push(BlockSpec::Finite {
                alpha: alpha.clone(),
                f: pair.exponent,
            }),
            DivisorLocation::Quadratic(modulus) => {
                let disc = modulus.discriminant();
                if !disc.is_negative() {
                    return Err(Error::UnrealizableSpec(format!(
                        "quadratic divisor {} has real roots; split it into two \
                         real pairs instead of a complex block",
                        modulus.to_poly()
                    )));
                }
                // a = −u/2, b = sqrt(v − a²) > 0
                let a = &-modulus.u() / &Rat::from_int(2);
                let b2 = &(modulus.v().clone()) - &(&a * &a);
                let Some(b) = b2.sqrt_exact() else {
                    return Err(Error::UnrealizableSpec(format!(
                        "quadratic divisor {} has irrational imaginary part",
                        modulus.to_poly()
                    )));
                };
                complex.push(BlockSpec::Complex {
                    a,
                    b,
                    m: pair.exponent,
                });
            }
        }
    }
    let mut blocks = inf;
    blocks.extend(finite);
    blocks.extend(complex);
    blocks.extend(
        inv.minimal_indices
            .iter()
            .map(|&eps| BlockSpec::MinIdx { eps }),
    );
    CanonicalSpec::new(blocks)
}

/// Builds a canonical pencil whose invariants equal `inv`.
pub fn canonical_from_invariants(inv: &PencilInvariants) -> Result<Pencil, Error> {
    spec_from_invariants(inv)?.build()
}
