//! Almost inner derivations of genus-2 algebras, two independent ways.
//!
//! A central derivation `D = (d₁, d₂)` is almost inner exactly when for
//! every x and every point (μ, λ) of the parameter line,
//!
//! ```text
//! (μA + λB) a(x) = 0   ⟹   μ d₁(x) + λ d₂(x) = 0,
//! ```
//!
//! i.e. the forms kill every kernel vector of every member of the pencil,
//! over the chosen base field (ℝ or an algebraically closed field). The
//! solver turns that condition into finitely many rational linear
//! constraints on the 2n coordinates of `(d₁, d₂)`:
//!
//! 1. for each minimal kernel column v(λ), the polynomial identity
//!    `d₁(v(λ)) + λ d₂(v(λ)) ≡ 0` — one row per λ-power. At every point
//!    that is not an eigenvalue the specialized columns span the kernel
//!    (minimal bases have full column rank everywhere), so these rows cover
//!    all generic points at once;
//! 2. for each rational eigenvalue α: rows `d₁(w) + α d₂(w) = 0` over the
//!    full kernel of `A + αB`;
//! 3. for each irreducible quadratic eigenvalue factor: the same rows over
//!    the quadratic extension, expanded into two rational rows each —
//!    always in [`FieldMode::AlgebraicallyClosed`], and in
//!    [`FieldMode::Real`] only when the roots are real (positive
//!    discriminant);
//! 4. at (μ : λ) = (0 : 1): rows `d₂(w) = 0` over the kernel of `B`;
//! 5. centrality rows pinning `d₁, d₂` to zero on `ker A ∩ ker B`.
//!
//! AID(g) is the null space of the assembled matrix; its dimension over the
//! mode's field equals the ℚ-dimension because the matrix is rational.
//! Independently, closed-form dimension formulas evaluate the same numbers
//! from the divisor pairs and minimal indices alone; [`cross_check`] runs
//! both paths and reports (never reconciles) any disagreement.

use std::fmt;

use crate::canonical::direct_sum;
use crate::error::Error;
use crate::lie::{CentralDerivation, DerivationSpace, Genus2Algebra};
use crate::matrix::RatMatrix;
use crate::pencil::{DivisorLocation, Pencil, PencilInvariants};
use crate::poly::factor_low_degree;
use crate::quad::{ExtMatrix, QuadExt, QuadModulus};
use crate::rat::Rat;
use crate::smith::smith_diagonal;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldMode {
    /// Base field ℝ: quadratic eigenvalue constraints apply only when the
    /// roots are real.
    Real,
    /// Algebraically closed base field of characteristic zero: every
    /// eigenvalue constraint applies.
    AlgebraicallyClosed,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Real => write!(f, "real"),
            FieldMode::AlgebraicallyClosed => write!(f, "closed"),
        }
    }
}

/// Where a constraint row came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RowSource {
    /// Coefficient of λ^power in the identity along a minimal kernel column.
    KernelIdentity { column: usize, power: usize },
    /// Kernel of `A + αB` at a rational eigenvalue.
    FiniteEigenvalue { alpha: Rat },
    /// Kernel of `A + θB` over ℚ\[θ\]/(modulus).
    QuadraticEigenvalue { modulus: QuadModulus },
    /// Kernel of `B`.
    Infinity,
    /// Vanishing on the central x-directions.
    Centrality,
}

/// Rational linear constraints on the 2n coordinates (d₁ then d₂).
/// Every row annihilates all inner derivations by construction.
pub struct ConstraintSystem {
    pub matrix: RatMatrix,
    pub sources: Vec<RowSource>,
}

impl ConstraintSystem {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn assemble_constraints(g: &Genus2Algebra, mode: FieldMode) -> Result<ConstraintSystem, Error> {
    let p = g.pencil();
    let n = p.n();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut sources: Vec<RowSource> = Vec::new();

    // (1) polynomial kernel identities
    let kernel = p.minimal_kernel_basis();
    for (ci, col) in kernel.columns.iter().enumerate() {
        let coeffs = col.coefficient_vectors();
        for power in 0..=col.degree + 1 {
            let mut row = Vec::with_capacity(2 * n);
            match coeffs.get(power) {
                Some(c) => row.extend(c.iter().cloned()),
                None => row.extend(std::iter::repeat_with(Rat::zero).take(n)),
            }
            match power.checked_sub(1).and_then(|k| coeffs.get(k)) {
                Some(c) => row.extend(c.iter().cloned()),
                None => row.extend(std::iter::repeat_with(Rat::zero).take(n)),
            }
            rows.push(row);
            sources.push(RowSource::KernelIdentity { column: ci, power });
        }
    }

    // (2) + (3) eigenvalue constraints, from the largest invariant
    // polynomial (the divisibility chain puts every prime in it)
    let diagonal = smith_diagonal(&p.lambda_matrix());
    let polys: Vec<&crate::poly::Poly> = diagonal.iter().filter(|d| !d.is_zero()).collect();
    if let Some(largest) = polys.last().filter(|d| !d.is_constant()) {
        for (prime, _) in factor_low_degree(largest)? {
            match prime.degree() {
                Some(1) => {
                    let alpha = -&prime.coeff(0);
                    for w in p.eval_affine(&alpha).kernel_basis() {
                        let mut row = w.clone();
                        row.extend(w.iter().map(|x| x * &alpha));
                        rows.push(row);
                        sources.push(RowSource::FiniteEigenvalue {
                            alpha: alpha.clone(),
                        });
                    }
                }
                Some(2) => {
                    let modulus = QuadModulus::from_poly(&prime)?;
                    let include = match mode {
                        FieldMode::AlgebraicallyClosed => true,
                        FieldMode::Real => !modulus.discriminant().is_negative(),
                    };
                    if !include {
                        continue;
                    }
                    // kernel of A + θB over ℚ[θ]/(θ² + uθ + v); one root
                    // suffices: the conjugate root imposes the same
                    // rational row space.
                    let ext = ExtMatrix::from_rat_pair(&modulus, p.a(), p.b());
                    for w in ext.kernel_basis() {
                        let w0: Vec<Rat> = w.iter().map(|z| z.c0().clone()).collect();
                        let w1: Vec<Rat> = w.iter().map(|z| z.c1().clone()).collect();
                        // d₁(w) + θ d₂(w) = 0 splits into the rational part
                        // d₁(w₀) − v d₂(w₁) and the θ-part
                        // d₁(w₁) + d₂(w₀) − u d₂(w₁).
                        let mut row0 = w0.clone();
                        row0.extend(w1.iter().map(|x| -&(x * modulus.v())));
                        let mut row1 = w1.clone();
                        row1.extend(w0.iter().zip(&w1).map(|(x0, x1)| x0 - &(x1 * modulus.u())));
                        rows.push(row0);
                        rows.push(row1);
                        sources.push(RowSource::QuadraticEigenvalue {
                            modulus: modulus.clone(),
                        });
                        sources.push(RowSource::QuadraticEigenvalue {
                            modulus: modulus.clone(),
                        });
                    }
                }
                _ => return Err(Error::IrreducibleFactorTooLarge(prime.to_string())),
            }
        }
    }

    // (4) point at infinity
    for w in p.b().kernel_basis() {
        let mut row = vec![Rat::zero(); n];
        row.extend(w);
        rows.push(row);
        sources.push(RowSource::Infinity);
    }

    // (5) centrality
    for v in g.center_x_basis() {
        let mut row = v.clone();
        row.extend(std::iter::repeat_with(Rat::zero).take(n));
        rows.push(row);
        sources.push(RowSource::Centrality);
        let mut row = vec![Rat::zero(); n];
        row.extend(v);
        rows.push(row);
        sources.push(RowSource::Centrality);
    }

    let matrix = if rows.is_empty() {
        RatMatrix::zeros(0, 2 * n)
    } else {
        RatMatrix::from_rows(rows)
    };
    Ok(ConstraintSystem { matrix, sources })
}

/// Dimensions and a basis of AID(g) in the C(g) coordinates.
#[derive(Clone, Debug)]
pub struct AidResult {
    pub mode: FieldMode,
    pub dim_inn: usize,
    pub dim_c: usize,
    pub dim_aid: usize,
    pub aid_basis: DerivationSpace,
}

pub fn solve_aid(g: &Genus2Algebra, mode: FieldMode) -> Result<AidResult, Error> {
    let n = g.x_dim();
    let system = assemble_constraints(g, mode)?;
    let kernel = system.matrix.kernel_basis();
    let aid_basis = DerivationSpace {
        basis: kernel
            .iter()
            .map(|v| CentralDerivation::from_flat(v, n))
            .collect(),
    };
    let dim_inn = g.inner_dimension();
    let dim_c = 2 * dim_inn;
    let dim_aid = aid_basis.dim();
    assert!(
        dim_inn <= dim_aid && dim_aid <= dim_c,
        "derivation chain violated: inn {dim_inn}, aid {dim_aid}, c {dim_c}"
    );
    Ok(AidResult {
        mode,
        dim_inn,
        dim_c,
        dim_aid,
        aid_basis,
    })
}

/// Closed-form `(dim Inn, dim AID)` from the invariants alone.
///
/// `dim Inn = n − #{ε_j = 0}`. On top of that the almost inner excess adds
/// `ε_j − 1` per nonzero minimal index and `2(e − 1)` per divisor pair at a
/// linear location (infinity or finite). A quadratic pair of exponent m
/// counts as two conjugate finite pairs — `2·2(m − 1)` — except over ℝ with
/// negative discriminant, where the pair stays irreducible and contributes
/// `4m`.
pub fn formula_dimension(inv: &PencilInvariants, mode: FieldMode) -> Result<(usize, usize), Error> {
    inv.check_size_identity()?;
    // Each zero minimal index is one central x-generator.
    let zero_indices = inv.minimal_indices.iter().filter(|&&e| e == 0).count();
    let dim_inn = inv.n - zero_indices;
    let mut excess: usize = inv
        .minimal_indices
        .iter()
        .filter(|&&e| e >= 1)
        .map(|&e| e - 1)
        .sum();
    for pair in &inv.divisor_pairs {
        let e = pair.exponent;
        match &pair.location {
            DivisorLocation::Infinity | DivisorLocation::Finite(_) => excess += 2 * (e - 1),
            DivisorLocation::Quadratic(modulus) => {
                let complex = modulus.discriminant().is_negative();
                match (mode, complex) {
                    (FieldMode::Real, true) => excess += 4 * e,
                    _ => excess += 4 * (e - 1),
                }
            }
        }
    }
    Ok((dim_inn, dim_inn + excess))
}

/// Result of running the formula and the solver side by side.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub mode: FieldMode,
    pub invariants: PencilInvariants,
    /// `(dim_inn, dim_aid)` from [`formula_dimension`].
    pub formula: (usize, usize),
    /// `(dim_inn, dim_aid)` from [`solve_aid`].
    pub solver: (usize, usize),
    pub agree: bool,
}

/// Runs invariants → formula and pencil → solver, and reports both. A
/// disagreement is a bug by definition and is surfaced, never patched. The
/// solver side uses the padded algebra so that degenerate single blocks
/// (where A, B are dependent) are still evaluated.
pub fn cross_check(p: &Pencil, mode: FieldMode) -> Result<CrossCheckReport, Error> {
    let invariants = p.invariants()?;
    let formula = formula_dimension(&invariants, mode)?;
    let g = Genus2Algebra::from_pencil_padded(p.clone());
    let result = solve_aid(&g, mode)?;
    let solver = (result.dim_inn, result.dim_aid);
    Ok(CrossCheckReport {
        mode,
        invariants,
        formula,
        solver,
        agree: formula == solver,
    })
}

/// Verifies `dim AID(p ⊕ q) = dim AID(p) + dim AID(q)` by running the
/// solver on all three pencils. Summands whose coefficients are entirely
/// zero have no commutator at all and are rejected, as is a sum whose
/// coefficient span stays below two.
pub fn direct_sum_additivity_check(p: &Pencil, q: &Pencil, mode: FieldMode) -> Result<bool, Error> {
    for (name, x) in [("left", p), ("right", q)] {
        if x.a().is_zero() && x.b().is_zero() {
            return Err(Error::GenusTooLow(format!(
                "{name} summand has zero coefficients"
            )));
        }
    }
    let sum = direct_sum(&[p.clone(), q.clone()])?;
    Genus2Algebra::from_pencil(sum.clone())?;
    let total = solve_aid(&Genus2Algebra::from_pencil_padded(sum), mode)?;
    let left = solve_aid(&Genus2Algebra::from_pencil_padded(p.clone()), mode)?;
    let right = solve_aid(&Genus2Algebra::from_pencil_padded(q.clone()), mode)?;
    Ok(total.dim_aid == left.dim_aid + right.dim_aid)
}

/// The 2×n matrix with rows `xᵗA` and `xᵗB`; a central derivation is almost
/// inner exactly when `(L(x) | d(x))` has the rank of `L(x)` for every x
/// over the base field.
pub fn pointwise_matrix(g: &Genus2Algebra, x: &[Rat]) -> RatMatrix {
    let p = g.pencil();
    let n = p.n();
    assert_eq!(x.len(), n);
    RatMatrix::from_fn(2, n, |r, j| {
        let m = if r == 0 { p.a() } else { p.b() };
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                acc += &(xi * m.at(i, j));
            }
        }
        acc
    })
}

/// Point-wise solvability certificate at a rational point x:
/// `rank L(x) = rank (L(x) | d(x))`.
pub fn witness_holds(g: &Genus2Algebra, d: &CentralDerivation, x: &[Rat]) -> bool {
    let l = pointwise_matrix(g, x);
    let (d1, d2) = d.apply(x);
    let augmented = l.with_column(&[d1, d2]);
    l.rank() == augmented.rank()
}

/// The same certificate at a point with coordinates in a quadratic
/// extension field. All entries of x must share one modulus.
pub fn witness_holds_ext(
    g: &Genus2Algebra,
    d: &CentralDerivation,
    x: &[QuadExt],
) -> Result<bool, Error> {
    let p = g.pencil();
    let n = p.n();
    assert_eq!(x.len(), n);
    let Some(first) = x.first() else {
        return Ok(true);
    };
    let modulus = first.modulus().clone();
    if x.iter().any(|z| z.modulus() != &modulus) {
        return Err(Error::ModulusMismatch);
    }
    let lift = |c: &Rat| QuadExt::from_rat(&modulus, c.clone());
    let mut rows: Vec<Vec<QuadExt>> = Vec::with_capacity(2);
    for m in [p.a(), p.b()] {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = QuadExt::zero(&modulus);
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    acc = &acc + &(xi * &lift(m.at(i, j)));
                }
            }
            row.push(acc);
        }
        rows.push(row);
    }
    let l = ExtMatrix::from_rows(rows)?;
    let dot = |form: &[Rat]| {
        let mut acc = QuadExt::zero(&modulus);
        for (c, xi) in form.iter().zip(x) {
            if !c.is_zero() && !xi.is_zero() {
                acc = &acc + &(xi * &lift(c));
            }
        }
        acc
    };
    let augmented = l.with_column(&[dot(&d.d1), dot(&d.d2)])?;
    Ok(l.rank() == augmented.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{build_block, BlockSpec};
    use crate::matrix::{in_span, span_rank};
    use crate::pencil::tests::{regular_4x4, singular_5x5};
    use crate::pencil::ElementaryDivisor;

    fn singular_algebra() -> Genus2Algebra {
        Genus2Algebra::from_pencil(singular_5x5()).unwrap()
    }

    fn regular_algebra() -> Genus2Algebra {
        Genus2Algebra::from_pencil(regular_4x4()).unwrap()
    }

    #[test]
    fn constraints_of_singular_fixture() {
        // expected cut: d1[4] = 0, d2[2] = 0, d2[4] = d1[3], d2[3] = d1[2]
        let system = assemble_constraints(&singular_algebra(), FieldMode::Real).unwrap();
        let unit = |k: usize| {
            let mut v = vec![Rat::zero(); 10];
            v[k] = Rat::one();
            v
        };
        let diff = |a: usize, b: usize| {
            let mut v = vec![Rat::zero(); 10];
            v[a] = Rat::one();
            v[b] = -Rat::one();
            v
        };
        let expected = vec![unit(4), unit(7), diff(9, 3), diff(8, 2)];
        // equal row spaces
        let mut rows: Vec<Vec<Rat>> = (0..system.matrix.rows())
            .map(|i| system.matrix.row(i).to_vec())
            .collect();
        assert_eq!(span_rank(&rows), 4);
        for e in &expected {
            assert!(in_span(&rows, e));
        }
        rows.extend(expected);
        assert_eq!(span_rank(&rows), 4);
    }

    #[test]
    fn regular_fixture_modes() {
        // real mode: no constraints at all beyond an empty set
        let system = assemble_constraints(&regular_algebra(), FieldMode::Real).unwrap();
        assert_eq!(system.matrix.rank(), 0);
        let real = solve_aid(&regular_algebra(), FieldMode::Real).unwrap();
        assert_eq!((real.dim_inn, real.dim_c, real.dim_aid), (4, 8, 8));

        // closed mode: the quadratic eigenvalue cuts C(g) down to Inn(g)
        let closed = solve_aid(&regular_algebra(), FieldMode::AlgebraicallyClosed).unwrap();
        assert_eq!((closed.dim_inn, closed.dim_aid), (4, 4));
    }

    #[test]
    fn singular_fixture_dimensions() {
        for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
            let r = solve_aid(&singular_algebra(), mode).unwrap();
            assert_eq!((r.dim_inn, r.dim_aid), (5, 6));
        }
    }

    #[test]
    fn every_constraint_row_kills_inner_derivations() {
        for g in [regular_algebra(), singular_algebra()] {
            for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
                let system = assemble_constraints(&g, mode).unwrap();
                for inner in g.inner_basis().basis {
                    let flat = inner.to_flat();
                    for i in 0..system.matrix.rows() {
                        let mut acc = Rat::zero();
                        for (a, b) in system.matrix.row(i).iter().zip(&flat) {
                            acc += &(a * b);
                        }
                        assert!(acc.is_zero(), "row {i} does not kill an inner derivation");
                    }
                }
            }
        }
    }

    #[test]
    fn aid_contains_inner_span() {
        for g in [regular_algebra(), singular_algebra()] {
            for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
                let result = solve_aid(&g, mode).unwrap();
                let aid_rows = result.aid_basis.flat_rows();
                for row in g.inner_basis().flat_rows() {
                    assert!(in_span(&aid_rows, &row));
                }
            }
        }
    }

    #[test]
    fn formula_examples() {
        let inf2 = PencilInvariants::new(4, vec![ElementaryDivisor::infinite(2)], vec![]).unwrap();
        for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
            assert_eq!(formula_dimension(&inf2, mode).unwrap(), (4, 6));
        }

        let quad = regular_4x4().invariants().unwrap();
        assert_eq!(formula_dimension(&quad, FieldMode::Real).unwrap(), (4, 8));
        assert_eq!(
            formula_dimension(&quad, FieldMode::AlgebraicallyClosed).unwrap(),
            (4, 4)
        );

        let eps1 = PencilInvariants::new(3, vec![], vec![1]).unwrap();
        for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
            assert_eq!(formula_dimension(&eps1, mode).unwrap(), (3, 3));
        }
    }

    #[test]
    fn formula_rejects_bad_size() {
        let bad = PencilInvariants {
            n: 5,
            divisor_pairs: vec![ElementaryDivisor::infinite(2)],
            minimal_indices: vec![],
        };
        assert!(matches!(
            formula_dimension(&bad, FieldMode::Real),
            Err(Error::SizeIdentityViolation { .. })
        ));
    }

    #[test]
    fn cross_check_fixture() {
        let report = cross_check(&singular_5x5(), FieldMode::Real).unwrap();
        assert!(report.agree);
        assert_eq!(report.formula, (5, 6));
        assert_eq!(report.solver, (5, 6));
    }

    #[test]
    fn cross_check_finite_blocks() {
        for alpha in [Rat::zero(), Rat::one(), Rat::from_int(-2)] {
            for f in 1..=3usize {
                let p = build_block(&BlockSpec::Finite {
                    alpha: alpha.clone(),
                    f,
                })
                .unwrap();
                for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
                    let report = cross_check(&p, mode).unwrap();
                    assert!(report.agree, "disagreement at alpha={alpha}, f={f}");
                    assert_eq!(report.solver, (2 * f, 4 * f - 2));
                }
            }
        }
    }

    #[test]
    fn cross_check_real_split_with_exponent_two() {
        // one divisor pair ((λ²−2)², …): wrap λI − C for C the companion
        // matrix of (x²−2)² = x⁴ − 4x² + 4
        use crate::matrix::RatMatrix;
        let c =
            RatMatrix::from_ints(&[&[0, 0, 0, -4], &[1, 0, 0, 0], &[0, 1, 0, 4], &[0, 0, 1, 0]]);
        let n = 4;
        let mut a = RatMatrix::zeros(2 * n, 2 * n);
        let mut b = RatMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *a.at_mut(i, n + j) = -c.at(i, j);
                *a.at_mut(n + j, i) = c.at(i, j).clone();
            }
            *b.at_mut(i, n + i) = Rat::one();
            *b.at_mut(n + i, i) = -Rat::one();
        }
        let p = crate::pencil::Pencil::new(a, b).unwrap();
        let inv = p.invariants().unwrap();
        assert_eq!(inv.divisor_pairs.len(), 1);
        assert_eq!(inv.divisor_pairs[0].exponent, 2);
        assert!(inv.divisor_pairs[0].is_real_split());
        // the real-split pair counts as two real finite pairs of exponent 2
        // in both modes: aid = 8 + 2·2(2−1)
        for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
            let report = cross_check(&p, mode).unwrap();
            assert!(report.agree);
            assert_eq!(report.solver, (8, 12));
        }
    }

    #[test]
    fn cross_check_quadratic_with_irrational_imaginary_part() {
        // one pair of λ² + λ + 1 (roots (−1 ± i√3)/2: complex, but not
        // realizable by a rational complex block); companion wrap
        use crate::matrix::RatMatrix;
        let a = RatMatrix::from_ints(&[
            &[0, 0, 1, 1],
            &[0, 0, -1, 0],
            &[-1, 1, 0, 0],
            &[-1, 0, 0, 0],
        ]);
        let b =
            RatMatrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        let p = crate::pencil::Pencil::new(a, b).unwrap();
        let inv = p.invariants().unwrap();
        let modulus = QuadModulus::new(Rat::one(), Rat::one()).unwrap();
        assert_eq!(
            inv.divisor_pairs,
            vec![crate::pencil::ElementaryDivisor::quadratic(modulus, 1)]
        );
        let real = cross_check(&p, FieldMode::Real).unwrap();
        assert!(real.agree);
        assert_eq!(real.solver, (4, 8));
        let closed = cross_check(&p, FieldMode::AlgebraicallyClosed).unwrap();
        assert!(closed.agree);
        assert_eq!(closed.solver, (4, 4));
    }

    #[test]
    fn cross_check_two_distinct_quadratic_moduli() {
        // λ²+1 and λ²−2 pairs plus a minimal index in one pencil: the
        // constraint system carries rows over two different extensions
        let sum = crate::canonical::direct_sum(&[
            build_block(&BlockSpec::Complex {
                a: Rat::zero(),
                b: Rat::one(),
                m: 1,
            })
            .unwrap(),
            crate::corpus::real_split_sqrt2_pencil(None),
            build_block(&BlockSpec::MinIdx { eps: 1 }).unwrap(),
        ])
        .unwrap();
        // n = 4 + 4 + 3, inn = 11
        let real = cross_check(&sum, FieldMode::Real).unwrap();
        assert!(real.agree);
        // aid = 11 + (1−1) + 4·1 (complex pair) + 0 (two real pairs f=1)
        assert_eq!(real.solver, (11, 15));
        let closed = cross_check(&sum, FieldMode::AlgebraicallyClosed).unwrap();
        assert!(closed.agree);
        assert_eq!(closed.solver, (11, 11));
    }

    #[test]
    fn cross_check_eigenvalue_meets_singular_part() {
        // M₂ ⊕ F(0,2): the kernel at the eigenvalue 0 mixes the specialized
        // minimal kernel column with the eigenvectors of the finite block
        let sum = crate::canonical::direct_sum(&[
            build_block(&BlockSpec::MinIdx { eps: 2 }).unwrap(),
            build_block(&BlockSpec::Finite {
                alpha: Rat::zero(),
                f: 2,
            })
            .unwrap(),
        ])
        .unwrap();
        for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
            let report = cross_check(&sum, mode).unwrap();
            assert!(report.agree);
            // inn 9; aid = 9 + (2−1) + 2(2−1) = 12
            assert_eq!(report.solver, (9, 12));
        }
    }

    #[test]
    fn cross_check_composite_sum() {
        // F(∞,2) ⊕ F(0,1) ⊕ M₂: n = 11, inn = 11,
        // aid = 11 + (2−1) + 2(2−1) + 2(1−1) = 14
        let sum = crate::canonical::direct_sum(&[
            build_block(&BlockSpec::Inf { e: 2 }).unwrap(),
            build_block(&BlockSpec::Finite {
                alpha: Rat::zero(),
                f: 1,
            })
            .unwrap(),
            build_block(&BlockSpec::MinIdx { eps: 2 }).unwrap(),
        ])
        .unwrap();
        for mode in [FieldMode::Real, FieldMode::AlgebraicallyClosed] {
            let report = cross_check(&sum, mode).unwrap();
            assert!(report.agree);
            assert_eq!(report.solver, (11, 14));
        }
    }

    #[test]
    fn additivity_examples() {
        let f_inf1 = build_block(&BlockSpec::Inf { e: 1 }).unwrap();
        let m2 = build_block(&BlockSpec::MinIdx { eps: 2 }).unwrap();
        assert!(direct_sum_additivity_check(&f_inf1, &m2, FieldMode::Real).unwrap());

        let p = regular_4x4();
        assert!(direct_sum_additivity_check(&p, &p, FieldMode::Real).unwrap());

        let m1 = build_block(&BlockSpec::MinIdx { eps: 1 }).unwrap();
        assert!(direct_sum_additivity_check(&m1, &m1, FieldMode::Real).unwrap());
    }

    #[test]
    fn additivity_rejects_zero_summand() {
        let zero = build_block(&BlockSpec::MinIdx { eps: 0 }).unwrap();
        let m2 = build_block(&BlockSpec::MinIdx { eps: 2 }).unwrap();
        assert!(matches!(
            direct_sum_additivity_check(&zero, &m2, FieldMode::Real),
            Err(Error::GenusTooLow(_))
        ));
    }

    #[test]
    fn witness_certificates() {
        let g = singular_algebra();
        let result = solve_aid(&g, FieldMode::Real).unwrap();
        let mut rng = crate::rng::XorShift64::new(11);
        for d in &result.aid_basis.basis {
            for _ in 0..10 {
                let x: Vec<Rat> = (0..5).map(|_| rng.small_int_rat(3)).collect();
                assert!(witness_holds(&g, d, &x));
            }
        }
        // d1[4] = 1 violates the kernel identity; the specialized kernel
        // column at λ = 1 is a witness
        let bad = CentralDerivation {
            d1: vec![
                Rat::zero(),
                Rat::zero(),
                Rat::zero(),
                Rat::zero(),
                Rat::one(),
            ],
            d2: vec![Rat::zero(); 5],
        };
        let witness = g.pencil().minimal_kernel_basis().columns[0].eval(&Rat::one());
        assert!(!witness_holds(&g, &bad, &witness));
    }

    #[test]
    fn witness_certificates_over_extension() {
        // closed mode on the regular fixture: D = (e₁, 0) is not almost
        // inner; the violation lives at the Gaussian eigenvalue
        let g = regular_algebra();
        let modulus = QuadModulus::new(Rat::zero(), Rat::one()).unwrap();
        let ext = ExtMatrix::from_rat_pair(&modulus, g.pencil().a(), g.pencil().b());
        let kernel = ext.kernel_basis();
        assert!(!kernel.is_empty());
        let bad = CentralDerivation {
            d1: vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()],
            d2: vec![Rat::zero(); 4],
        };
        let violated = kernel
            .iter()
            .any(|x| !witness_holds_ext(&g, &bad, x).unwrap());
        assert!(violated);
        // while genuine members of AID hold at those points
        let closed = solve_aid(&g, FieldMode::AlgebraicallyClosed).unwrap();
        for d in &closed.aid_basis.basis {
            for x in &kernel {
                assert!(witness_holds_ext(&g, d, x).unwrap());
            }
        }
    }

    #[test]
    fn mode_monotonicity_on_blocks() {
        let blocks = [
            build_block(&BlockSpec::Inf { e: 2 }).unwrap(),
            build_block(&BlockSpec::Complex {
                a: Rat::one(),
                b: Rat::one(),
                m: 1,
            })
            .unwrap(),
            build_block(&BlockSpec::MinIdx { eps: 3 }).unwrap(),
        ];
        for p in blocks {
            let g = Genus2Algebra::from_pencil_padded(p);
            let real = solve_aid(&g, FieldMode::Real).unwrap();
            let closed = solve_aid(&g, FieldMode::AlgebraicallyClosed).unwrap();
            assert!(real.dim_aid >= closed.dim_aid);
        }
    }
}
