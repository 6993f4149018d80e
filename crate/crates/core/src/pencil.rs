//! Skew matrix pencils and their complete strict-congruence invariant.
//!
//! A pencil is the family `μA + λB` for skew-symmetric rational `A`, `B`.
//! Two skew pencils of the same size are strictly congruent exactly when
//! they share elementary divisors and minimal indices, so the pair
//! ([`PencilInvariants`]) is a complete invariant and congruence testing
//! reduces to comparing it.
//!
//! Finite elementary divisors are the prime-power factors of the invariant
//! polynomials of `A + λB`; divisors at infinity are the λ-power factors of
//! the reversed pencil `B + λA`; minimal indices are the degrees of a
//! minimal polynomial basis of the right kernel. For a skew pencil every
//! elementary divisor occurs an even number of times, and each entry of the
//! invariant below stands for one such pair.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::matrix::{RatMatrix, RowSpan};
use crate::poly::{factor_low_degree, poly_cmp, Poly};
use crate::quad::QuadModulus;
use crate::rat::{rat_cmp, Rat};
use crate::rng::XorShift64;
use crate::smith::{smith_diagonal, PolyMatrix};

#[derive(Clone, PartialEq, Eq)]
pub struct Pencil {
    n: usize,
    a: RatMatrix,
    b: RatMatrix,
}

impl Pencil {
    /// Validates that both coefficient matrices are square, of equal size
    /// and skew-symmetric.
    pub fn new(a: RatMatrix, b: RatMatrix) -> Result<Self, Error> {
        if a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() {
            return Err(Error::Dimension(format!(
                "coefficient matrices must be square and of equal size, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if let Some((i, j)) = a.skew_defect() {
            return Err(Error::NotSkew(i, j));
        }
        if let Some((i, j)) = b.skew_defect() {
            return Err(Error::NotSkew(i, j));
        }
        Ok(Pencil { n: a.rows(), a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    /// `A + λB` over ℚ\[λ\].
    pub fn lambda_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, self.n, |i, j| {
            Poly::from_coeffs(vec![self.a.at(i, j).clone(), self.b.at(i, j).clone()])
        })
    }

    /// The reversed pencil `B + λA`; its λ-power divisors are the divisors
    /// of `μA + λB` at infinity.
    pub fn reversed_lambda_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, self.n, |i, j| {
            Poly::from_coeffs(vec![self.b.at(i, j).clone(), self.a.at(i, j).clone()])
        })
    }

    /// `A + λ₀B` at a rational point.
    pub fn eval_affine(&self, lambda: &Rat) -> RatMatrix {
        &self.a + &self.b.scale(lambda)
    }

    /// Rank of `A + λB` over ℚ(λ). The rank at a point only ever drops, and
    /// any fixed nonvanishing minor has at most n roots, so the maximum of
    /// the point ranks over n+1 distinct rational points is exact. Stops
    /// early once the full rank n is reached.
    pub fn generic_rank(&self) -> usize {
        let mut best = 0;
        for k in 0..=self.n as i64 {
            best = best.max(self.eval_affine(&Rat::from_int(k)).rank());
            if best == self.n {
                break;
            }
        }
        best
    }

    /// True when `det(μA + λB)` is not the zero polynomial.
    pub fn is_regular(&self) -> bool {
        self.generic_rank() == self.n
    }

    /// `SᵗAS, SᵗBS` for an invertible transform `S`.
    pub fn congruence_transform(&self, s: &RatMatrix) -> Result<Pencil, Error> {
        if s.rows() != self.n || s.cols() != self.n {
            return Err(Error::Dimension("transform size mismatch".into()));
        }
        if s.rank() != self.n {
            return Err(Error::InvalidSpec(
                "congruence transform is singular".into(),
            ));
        }
        let st = s.transpose();
        Pencil::new(&(&st * &self.a) * s, &(&st * &self.b) * s)
    }

    /// Congruence by a deterministic pseudo-random invertible integer matrix
    /// with entries in `-2..=2`, derived from the seed.
    pub fn random_congruence(&self, seed: u64) -> Pencil {
        let mut rng = XorShift64::new(seed);
        let s = loop {
            let candidate = RatMatrix::from_fn(self.n, self.n, |_, _| rng.small_int_rat(2));
            if candidate.rank() == self.n {
                break candidate;
            }
        };
        self.congruence_transform(&s)
            .expect("transform was checked invertible")
    }

    /// Replaces `(A, B)` by `(m₀₀A + m₀₁B, m₁₀A + m₁₁B)` for an invertible
    /// 2x2 rational matrix — a change of basis of the commutator ideal of
    /// the associated algebra. Divisor locations move under the inverse
    /// Möbius action while exponents and minimal indices are preserved.
    pub fn mixed(&self, m: &[[Rat; 2]; 2]) -> Result<Pencil, Error> {
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if det.is_zero() {
            return Err(Error::InvalidSpec("basis mix must be invertible".into()));
        }
        let a = &self.a.scale(&m[0][0]) + &self.b.scale(&m[0][1]);
        let b = &self.a.scale(&m[1][0]) + &self.b.scale(&m[1][1]);
        Pencil::new(a, b)
    }

    /// Greedy minimal polynomial basis of `{x(λ) : (A + λB)x(λ) = 0}`.
    ///
    /// For each degree `d` the coefficient vectors of a degree-≤d solution
    /// solve the block system `A c₀ = 0`, `A c_j + B c_{j−1} = 0`,
    /// `B c_d = 0`; new solutions independent (over ℚ\[λ\]) from the ones
    /// already found are appended until `n − generic_rank` columns exist.
    /// The resulting degrees are the minimal indices, in ascending order.
    pub fn minimal_kernel_basis(&self) -> MinimalKernelBasis {
        let target = self.n - self.generic_rank();
        let mut columns: Vec<KernelColumn> = Vec::new();
        let mut degree = 0usize;
        while columns.len() < target {
            let stacked = self.stacked_system(degree);
            let kernel = stacked.kernel_basis();
            // Within degree ≤ d, the ℚ[λ]-span of the found columns is
            // spanned over ℚ by their shifts λ^s·v (a property of minimal
            // bases); testing against that span is the independence test.
            let width = (degree + 1) * self.n;
            let mut span = RowSpan::new(width);
            for col in &columns {
                for shift in 0..=degree - col.degree {
                    span.insert(&col.shifted_coefficients(shift, degree, self.n));
                }
            }
            for w in kernel {
                if span.insert(&w) {
                    let col = KernelColumn::from_flat(&w, self.n, degree);
                    debug_assert_eq!(col.degree, degree);
                    columns.push(col);
                    if columns.len() == target {
                        break;
                    }
                }
            }
            degree += 1;
            debug_assert!(degree <= self.n + 1, "minimal index search ran away");
        }
        MinimalKernelBasis {
            columns: columns
                .into_iter()
                .map(|c| KernelVector {
                    entries: c.entries,
                    degree: c.degree,
                })
                .collect(),
        }
    }

    /// Block matrix of the degree-`d` coefficient system.
    fn stacked_system(&self, d: usize) -> RatMatrix {
        let n = self.n;
        RatMatrix::from_fn((d + 2) * n, (d + 1) * n, |i, j| {
            let (rb, ri) = (i / n, i % n);
            let (cb, ci) = (j / n, j % n);
            if rb == cb {
                self.a.at(ri, ci).clone()
            } else if rb == cb + 1 {
                self.b.at(ri, ci).clone()
            } else {
                Rat::zero()
            }
        })
    }

    /// Finite elementary divisor pairs of `A + λB`.
    pub fn finite_divisors(&self) -> Result<Vec<ElementaryDivisor>, Error> {
        finite_pairs_from_diagonal(&smith_diagonal(&self.lambda_matrix()))
    }

    /// Divisor pairs at infinity, from the λ-power content of the reversed
    /// pencil's invariant polynomials. These exist only when det(B) = 0.
    pub fn infinite_divisors(&self) -> Result<Vec<ElementaryDivisor>, Error> {
        infinite_pairs_from_diagonal(&smith_diagonal(&self.reversed_lambda_matrix()))
    }

    /// The complete strict-congruence invariant, canonically sorted and
    /// cross-checked against the size identity.
    pub fn invariants(&self) -> Result<PencilInvariants, Error> {
        let diagonal = smith_diagonal(&self.lambda_matrix());
        let finite = finite_pairs_from_diagonal(&diagonal)?;
        let infinite = self.infinite_divisors()?;

        // Generic rank agreement between the Smith form and point ranks.
        let smith_rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        assert_eq!(
            self.generic_rank(),
            smith_rank,
            "point rank disagrees with the Smith normal form"
        );

        let kernel = self.minimal_kernel_basis();
        let minimal_indices = kernel.degrees();

        let mut divisor_pairs = infinite;
        divisor_pairs.extend(finite);
        sort_pairs(&mut divisor_pairs);

        let inv = PencilInvariants {
            n: self.n,
            divisor_pairs,
            minimal_indices,
        };
        inv.check_size_identity()?;
        Ok(inv)
    }

    /// Strict congruence test via invariant comparison.
    pub fn strictly_congruent(&self, other: &Pencil) -> Result<bool, Error> {
        if self.n != other.n {
            return Ok(false);
        }
        Ok(self.invariants()? == other.invariants()?)
    }
}

impl fmt::Debug for Pencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pencil(n={}, A={:?}, B={:?})", self.n, self.a, self.b)
    }
}

/// Location of an elementary divisor pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DivisorLocation {
    /// μ-power divisors.
    Infinity,
    /// `(λ − μα)`-power divisors at a rational point.
    Finite(Rat),
    /// Powers of an irreducible monic quadratic in λ (a conjugate pair of
    /// non-rational eigenvalues, real or complex depending on the sign of
    /// the discriminant).
    Quadratic(QuadModulus),
}

impl DivisorLocation {
    fn class_rank(&self) -> u8 {
        match self {
            DivisorLocation::Infinity => 0,
            DivisorLocation::Finite(_) => 1,
            DivisorLocation::Quadratic(_) => 2,
        }
    }
}

/// One *pair* of identical elementary divisors. A `Quadratic` entry covers
/// the pair `q^e, q^e` of quadratic prime powers (size 4e in the pencil);
/// the other locations cover `p^e, p^e` with `p` linear (size 2e).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementaryDivisor {
    pub location: DivisorLocation,
    pub exponent: usize,
}

impl ElementaryDivisor {
    pub fn infinite(e: usize) -> Self {
        ElementaryDivisor {
            location: DivisorLocation::Infinity,
            exponent: e,
        }
    }

    pub fn finite(alpha: Rat, e: usize) -> Self {
        ElementaryDivisor {
            location: DivisorLocation::Finite(alpha),
            exponent: e,
        }
    }

    pub fn quadratic(modulus: QuadModulus, e: usize) -> Self {
        ElementaryDivisor {
            location: DivisorLocation::Quadratic(modulus),
            exponent: e,
        }
    }

    /// Size the pair occupies in a pencil of matching invariants.
    pub fn block_size(&self) -> usize {
        match self.location {
            DivisorLocation::Quadratic(_) => 4 * self.exponent,
            _ => 2 * self.exponent,
        }
    }

    /// Quadratic divisor with positive discriminant: the conjugate roots are
    /// real irrational numbers rather than a complex pair.
    pub fn is_real_split(&self) -> bool {
        match &self.location {
            DivisorLocation::Quadratic(m) => !m.discriminant().is_negative(),
            _ => false,
        }
    }
}

impl fmt::Display for ElementaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            DivisorLocation::Infinity => write!(f, "(inf, {})", self.exponent),
            DivisorLocation::Finite(alpha) => write!(f, "({}, {})", alpha, self.exponent),
            DivisorLocation::Quadratic(m) => {
                write!(f, "({}, {})", m.to_poly(), self.exponent)
            }
        }
    }
}

fn pair_cmp(a: &ElementaryDivisor, b: &ElementaryDivisor) -> Ordering {
    a.location
        .class_rank()
        .cmp(&b.location.class_rank())
        .then_with(|| match (&a.location, &b.location) {
            (DivisorLocation::Infinity, DivisorLocation::Infinity) => Ordering::Equal,
            (DivisorLocation::Finite(x), DivisorLocation::Finite(y)) => rat_cmp(x, y),
            (DivisorLocation::Quadratic(p), DivisorLocation::Quadratic(q)) => {
                poly_cmp(&p.to_poly(), &q.to_poly())
            }
            _ => unreachable!("class ranks equal"),
        })
        .then_with(|| a.exponent.cmp(&b.exponent))
}

fn sort_pairs(pairs: &mut [ElementaryDivisor]) {
    pairs.sort_by(pair_cmp);
}

/// The complete strict-congruence invariant of a skew pencil.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PencilInvariants {
    pub n: usize,
    /// Canonically sorted; every entry denotes one pair of identical
    /// elementary divisors.
    pub divisor_pairs: Vec<ElementaryDivisor>,
    /// Ascending.
    pub minimal_indices: Vec<usize>,
}

impl PencilInvariants {
    /// Builds from parts, normalizing the order, and verifies the size
    /// identity.
    pub fn new(
        n: usize,
        mut divisor_pairs: Vec<ElementaryDivisor>,
        mut minimal_indices: Vec<usize>,
    ) -> Result<Self, Error> {
        sort_pairs(&mut divisor_pairs);
        minimal_indices.sort_unstable();
        let inv = PencilInvariants {
            n,
            divisor_pairs,
            minimal_indices,
        };
        inv.check_size_identity()?;
        Ok(inv)
    }

    /// `n = Σ 2e (doubled for quadratic pairs) + Σ (2ε + 1)`.
    pub fn check_size_identity(&self) -> Result<(), Error> {
        let accounted: usize = self
            .divisor_pairs
            .iter()
            .map(ElementaryDivisor::block_size)
            .sum::<usize>()
            + self
                .minimal_indices
                .iter()
                .map(|eps| 2 * eps + 1)
                .sum::<usize>();
        if accounted != self.n {
            return Err(Error::SizeIdentityViolation {
                n: self.n,
                accounted,
            });
        }
        Ok(())
    }

    pub fn is_regular(&self) -> bool {
        self.minimal_indices.is_empty()
    }
}

impl fmt::Display for PencilInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}, pairs=[", self.n)?;
        for (k, p) in self.divisor_pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "], eps={:?}", self.minimal_indices)
    }
}

/// A minimal polynomial basis of the right kernel of `A + λB`.
#[derive(Clone, Debug)]
pub struct MinimalKernelBasis {
    pub columns: Vec<KernelVector>,
}

/// One polynomial kernel column with its degree.
#[derive(Clone, Debug)]
pub struct KernelVector {
    pub entries: Vec<Poly>,
    pub degree: usize,
}

impl KernelVector {
    /// Coefficient vectors c₀ … c_degree, each of length n.
    pub fn coefficient_vectors(&self) -> Vec<Vec<Rat>> {
        (0..=self.degree)
            .map(|k| self.entries.iter().map(|p| p.coeff(k)).collect())
            .collect()
    }

    /// Evaluates the column at a rational point.
    pub fn eval(&self, x: &Rat) -> Vec<Rat> {
        self.entries.iter().map(|p| p.eval(x)).collect()
    }
}

impl MinimalKernelBasis {
    pub fn degrees(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.degree).collect()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

struct KernelColumn {
    entries: Vec<Poly>,
    degree: usize,
}

impl KernelColumn {
    fn from_flat(flat: &[Rat], n: usize, max_degree: usize) -> Self {
        let entries: Vec<Poly> = (0..n)
            .map(|i| Poly::from_coeffs((0..=max_degree).map(|k| flat[k * n + i].clone()).collect()))
            .collect();
        let degree = entries
            .iter()
            .filter_map(Poly::degree)
            .max()
            .expect("kernel column is zero");
        KernelColumn { entries, degree }
    }

    /// Flattened coefficients of λ^shift · column, padded to degree `width`.
    fn shifted_coefficients(&self, shift: usize, width_degree: usize, n: usize) -> Vec<Rat> {
        let mut flat = vec![Rat::zero(); (width_degree + 1) * n];
        for (i, p) in self.entries.iter().enumerate() {
            for (k, c) in p.coeffs().iter().enumerate() {
                flat[(k + shift) * n + i] = c.clone();
            }
        }
        flat
    }
}

/// Occurrences of prime powers in the invariant polynomials, folded into
/// pairs. Errors when a divisor has odd total multiplicity, which cannot
/// happen for a genuine skew pencil.
fn fold_into_pairs(
    occurrences: Vec<(DivisorLocation, usize)>,
) -> Result<Vec<ElementaryDivisor>, Error> {
    let mut divisors: Vec<ElementaryDivisor> = occurrences
        .into_iter()
        .map(|(location, exponent)| ElementaryDivisor { location, exponent })
        .collect();
    divisors.sort_by(pair_cmp);
    let mut out = Vec::new();
    let mut iter = divisors.into_iter().peekable();
    while let Some(d) = iter.next() {
        let mut count = 1usize;
        while iter.peek() == Some(&d) {
            iter.next();
            count += 1;
        }
        if !count.is_multiple_of(2) {
            return Err(Error::PairingViolation {
                divisor: d.to_string(),
                multiplicity: count,
            });
        }
        for _ in 0..count / 2 {
            out.push(d.clone());
        }
    }
    Ok(out)
}

fn finite_pairs_from_diagonal(diagonal: &[Poly]) -> Result<Vec<ElementaryDivisor>, Error> {
    let polys: Vec<&Poly> = diagonal.iter().filter(|d| !d.is_zero()).collect();
    let mut occurrences = Vec::new();
    // The invariant polynomials form a divisibility chain, so the largest
    // one carries every prime; factor it once and peel the others by trial
    // division against that prime list.
    let Some(largest) = polys.last() else {
        return Ok(Vec::new());
    };
    if largest.is_constant() {
        return Ok(Vec::new());
    }
    let primes: Vec<Poly> = factor_low_degree(largest)?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    for d in &polys {
        if d.is_constant() {
            continue;
        }
        let mut rest = d.monic();
        for prime in &primes {
            let mut mult = 0usize;
            while prime.divides(&rest) {
                rest = rest.exact_div(prime);
                mult += 1;
            }
            if mult > 0 {
                occurrences.push((location_of_prime(prime)?, mult));
            }
        }
        assert!(
            rest.is_constant(),
            "invariant polynomial falls outside the divisibility chain"
        );
    }
    fold_into_pairs(occurrences)
}

fn location_of_prime(prime: &Poly) -> Result<DivisorLocation, Error> {
    match prime.degree() {
        Some(1) => Ok(DivisorLocation::Finite(-&prime.coeff(0))),
        Some(2) => Ok(DivisorLocation::Quadratic(QuadModulus::from_poly(prime)?)),
        _ => Err(Error::IrreducibleFactorTooLarge(prime.to_string())),
    }
}

fn infinite_pairs_from_diagonal(diagonal: &[Poly]) -> Result<Vec<ElementaryDivisor>, Error> {
    let mut occurrences = Vec::new();
    for d in diagonal.iter().filter(|d| !d.is_zero()) {
        // multiplicity of the root 0 = index of the first nonzero coefficient
        let mult = d.coeffs().iter().take_while(|c| c.is_zero()).count();
        if mult > 0 {
            occurrences.push((DivisorLocation::Infinity, mult));
        }
    }
    fold_into_pairs(occurrences)
}
