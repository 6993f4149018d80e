//! 2-step nilpotent Lie algebras attached to skew pencils.
//!
//! The algebra has basis x₁ … x_n, y₁, y₂ with `[x_i, x_j] = a_ij y₁ +
//! b_ij y₂` and y₁, y₂ central, so the skew pair `(A, B)` is the full
//! structure constant data. When `A` and `B` are linearly independent the
//! commutator ideal is exactly ⟨y₁, y₂⟩ and the algebra has genus 2.
//!
//! Derivations that kill the center and map everything into ⟨y₁, y₂⟩ are
//! determined by a pair of linear forms `(d₁, d₂)` on the x-coordinates —
//! the central derivations. Inner derivations, central derivations and the
//! almost inner derivations computed in [`crate::aid`] all live in this
//! representation; the full (n+2)×(n+2) matrix is never materialized.

use crate::error::Error;
use crate::matrix::RatMatrix;
use crate::pencil::Pencil;
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct Genus2Algebra {
    pencil: Pencil,
    padded: bool,
}

impl Genus2Algebra {
    /// Strict constructor: requires `A`, `B` linearly independent, which is
    /// exactly the genus-2 condition `dim [g, g] = 2`.
    pub fn from_pencil(pencil: Pencil) -> Result<Self, Error> {
        if !coefficients_independent(&pencil) {
            return Err(Error::GenusTooLow(
                "coefficient matrices are linearly dependent".into(),
            ));
        }
        Ok(Genus2Algebra {
            pencil,
            padded: false,
        })
    }

    /// Relaxed constructor that keeps y₁, y₂ as formal central directions
    /// even when the pencil coefficients span less than two dimensions.
    /// Single canonical blocks with e = 1 or f = 1 are of this kind; all
    /// derivation-space computations remain valid for them, with the
    /// central derivations read relative to ⟨y₁, y₂⟩.
    pub fn from_pencil_padded(pencil: Pencil) -> Self {
        Genus2Algebra {
            pencil,
            padded: true,
        }
    }

    pub fn pencil(&self) -> &Pencil {
        &self.pencil
    }

    pub fn is_padded(&self) -> bool {
        self.padded
    }

    /// Number of x-generators.
    pub fn x_dim(&self) -> usize {
        self.pencil.n()
    }

    /// Total dimension n + 2.
    pub fn dim(&self) -> usize {
        self.pencil.n() + 2
    }

    /// `[u, v]`: the x-part is always zero, the y-part is
    /// `(uₓᵗ A vₓ, uₓᵗ B vₓ)`.
    pub fn bracket(&self, u: &Vector, v: &Vector) -> Vector {
        let av = self.pencil.a().apply(&v.x);
        let bv = self.pencil.b().apply(&v.x);
        let mut y1 = Rat::zero();
        let mut y2 = Rat::zero();
        for (ui, (a, b)) in u.x.iter().zip(av.iter().zip(&bv)) {
            if !ui.is_zero() {
                y1 += &(ui * a);
                y2 += &(ui * b);
            }
        }
        Vector {
            x: vec![Rat::zero(); self.x_dim()],
            y: [y1, y2],
        }
    }

    /// Basis of the x-part of the center: the common kernel of `A` and `B`.
    /// The y-part of the center is always all of ⟨y₁, y₂⟩.
    pub fn center_x_basis(&self) -> Vec<Vec<Rat>> {
        self.pencil.a().vstack(self.pencil.b()).kernel_basis()
    }

    pub fn center_dim(&self) -> usize {
        self.center_x_basis().len() + 2
    }

    /// `dim Inn(g) = dim g − dim Z(g) = n − dim(ker A ∩ ker B)`.
    pub fn inner_dimension(&self) -> usize {
        self.x_dim() - self.center_x_basis().len()
    }

    /// Reduces `{ad(x₁), …, ad(x_n)}` to an independent set. `ad(x_i)` is
    /// the central derivation with d₁ = row i of A, d₂ = row i of B.
    pub fn inner_basis(&self) -> DerivationSpace {
        let n = self.x_dim();
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row = self.pencil.a().row(i).to_vec();
                row.extend(self.pencil.b().row(i).iter().cloned());
                row
            })
            .collect();
        let (reduced, pivots) = RatMatrix::from_rows(rows).rref();
        let basis = (0..pivots.len())
            .map(|i| CentralDerivation::from_flat(reduced.row(i), n))
            .collect();
        DerivationSpace { basis }
    }

    /// Basis of C(g): all `(d₁, d₂)` vanishing on the central x-directions.
    /// Its dimension is always twice the inner dimension.
    pub fn central_derivations(&self) -> DerivationSpace {
        let n = self.x_dim();
        let center = self.center_x_basis();
        let constraint = if center.is_empty() {
            RatMatrix::zeros(0, n)
        } else {
            RatMatrix::from_rows(center)
        };
        let free = constraint.kernel_basis();
        let mut basis = Vec::with_capacity(2 * free.len());
        for w in &free {
            basis.push(CentralDerivation {
                d1: w.clone(),
                d2: vec![Rat::zero(); n],
            });
        }
        for w in &free {
            basis.push(CentralDerivation {
                d1: vec![Rat::zero(); n],
                d2: w.clone(),
            });
        }
        DerivationSpace { basis }
    }
}

fn coefficients_independent(p: &Pencil) -> bool {
    let n = p.n();
    let flat_a: Vec<Rat> = (0..n).flat_map(|i| p.a().row(i).to_vec()).collect();
    let flat_b: Vec<Rat> = (0..n).flat_map(|i| p.b().row(i).to_vec()).collect();
    RatMatrix::from_rows(vec![flat_a, flat_b]).rank() == 2
}

/// Element written in the fixed basis: n x-coordinates and 2 y-coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    pub x: Vec<Rat>,
    pub y: [Rat; 2],
}

impl Vector {
    pub fn x_only(x: Vec<Rat>) -> Self {
        Vector {
            x,
            y: [Rat::zero(), Rat::zero()],
        }
    }

    pub fn basis_x(i: usize, n: usize) -> Self {
        let mut x = vec![Rat::zero(); n];
        x[i] = Rat::one();
        Vector::x_only(x)
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(Rat::is_zero) && self.y.iter().all(Rat::is_zero)
    }
}

/// A derivation killing the center and mapping x_i into ⟨y₁, y₂⟩:
/// `D(x) = d₁(x) y₁ + d₂(x) y₂`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralDerivation {
    pub d1: Vec<Rat>,
    pub d2: Vec<Rat>,
}

impl CentralDerivation {
    pub fn from_flat(flat: &[Rat], n: usize) -> Self {
        assert_eq!(flat.len(), 2 * n);
        CentralDerivation {
            d1: flat[..n].to_vec(),
            d2: flat[n..].to_vec(),
        }
    }

    pub fn to_flat(&self) -> Vec<Rat> {
        let mut v = self.d1.clone();
        v.extend(self.d2.iter().cloned());
        v
    }

    /// `(d₁(x), d₂(x))`.
    pub fn apply(&self, x: &[Rat]) -> (Rat, Rat) {
        let dot = |d: &[Rat]| {
            let mut acc = Rat::zero();
            for (a, b) in d.iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        };
        (dot(&self.d1), dot(&self.d2))
    }

    /// Checks the central-derivation invariant: both forms vanish on every
    /// given center direction.
    pub fn vanishes_on(&self, center: &[Vec<Rat>]) -> bool {
        center.iter().all(|v| {
            let (a, b) = self.apply(v);
            a.is_zero() && b.is_zero()
        })
    }
}

/// A linearly independent list of central derivations.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub basis: Vec<CentralDerivation>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn flat_rows(&self) -> Vec<Vec<Rat>> {
        self.basis.iter().map(CentralDerivation::to_flat).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{build_block, direct_sum, BlockSpec};
    use crate::matrix::{in_span, vectors_independent};
    use crate::pencil::tests::{regular_4x4, singular_5x5};

    fn regular_algebra() -> Genus2Algebra {
        Genus2Algebra::from_pencil(regular_4x4()).unwrap()
    }

    fn singular_algebra() -> Genus2Algebra {
        Genus2Algebra::from_pencil(singular_5x5()).unwrap()
    }

    #[test]
    fn rejects_dependent_coefficients() {
        let a = RatMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let b = a.scale(&Rat::from_int(2));
        let p = Pencil::new(a, b).unwrap();
        assert!(matches!(
            Genus2Algebra::from_pencil(p.clone()),
            Err(Error::GenusTooLow(_))
        ));
        // the padded constructor accepts it
        let g = Genus2Algebra::from_pencil_padded(p);
        assert!(g.is_padded());
    }

    #[test]
    fn brackets_of_regular_fixture() {
        // [x₁,x₂] = y₁, [x₁,x₃] = y₂, [x₂,x₄] = y₂, [x₃,x₄] = −y₁
        let g = regular_algebra();
        let e = |i| Vector::basis_x(i, 4);
        let fix = [
            (0, 1, 1i64, 0i64),
            (0, 2, 0, 1),
            (1, 3, 0, 1),
            (2, 3, -1, 0),
        ];
        for (i, j, y1, y2) in fix {
            let w = g.bracket(&e(i), &e(j));
            assert_eq!(w.y, [Rat::from_int(y1), Rat::from_int(y2)]);
            assert!(w.x.iter().all(Rat::is_zero));
        }
        // antisymmetry on a general pair
        let u = Vector::x_only(vec![
            Rat::from_int(1),
            Rat::from_int(-2),
            Rat::from_int(3),
            Rat::new(1, 2),
        ]);
        assert!(g.bracket(&u, &u).is_zero());
    }

    #[test]
    fn bracket_of_minidx_one_block() {
        // the 3x3 block with one minimal index 1: [x₁,x₃] = y₂, [x₂,x₃] = y₁
        let p = build_block(&BlockSpec::MinIdx { eps: 1 }).unwrap();
        let g = Genus2Algebra::from_pencil(p).unwrap();
        let e = |i| Vector::basis_x(i, 3);
        assert_eq!(g.bracket(&e(0), &e(2)).y, [Rat::zero(), Rat::one()]);
        assert_eq!(g.bracket(&e(1), &e(2)).y, [Rat::one(), Rat::zero()]);
    }

    #[test]
    fn brackets_of_singular_fixture() {
        // [x₁,x₃] = y₁, [x₂,x₄] = y₁, [x₁,x₄] = y₂, [x₂,x₅] = y₂
        let g = singular_algebra();
        let e = |i| Vector::basis_x(i, 5);
        for (i, j, y1, y2) in [(0, 2, 1i64, 0i64), (1, 3, 1, 0), (0, 3, 0, 1), (1, 4, 0, 1)] {
            let w = g.bracket(&e(i), &e(j));
            assert_eq!(w.y, [Rat::from_int(y1), Rat::from_int(y2)]);
        }
    }

    #[test]
    fn two_step_property() {
        // bracket output has zero x-part, so double brackets vanish
        let g = singular_algebra();
        let u = Vector::x_only(vec![
            Rat::from_int(1),
            Rat::from_int(2),
            Rat::from_int(-1),
            Rat::from_int(0),
            Rat::from_int(3),
        ]);
        let v = Vector::basis_x(2, 5);
        let w = g.bracket(&u, &v);
        assert!(g.bracket(&u, &w).is_zero());
        assert!(g.bracket(&w, &v).is_zero());
    }

    #[test]
    fn center_of_fixtures() {
        assert!(regular_algebra().center_x_basis().is_empty());
        assert!(singular_algebra().center_x_basis().is_empty());
        assert_eq!(regular_algebra().center_dim(), 2);

        // adding a 1x1 zero block adds a central x-generator
        let sum = direct_sum(&[
            singular_5x5(),
            build_block(&BlockSpec::MinIdx { eps: 0 }).unwrap(),
        ])
        .unwrap();
        let g = Genus2Algebra::from_pencil(sum).unwrap();
        let center = g.center_x_basis();
        assert_eq!(center.len(), 1);
        assert_eq!(center[0][5], Rat::one());
    }

    #[test]
    fn center_matches_bracket_kernel() {
        let sum = direct_sum(&[
            regular_4x4(),
            build_block(&BlockSpec::MinIdx { eps: 0 }).unwrap(),
        ])
        .unwrap();
        let g = Genus2Algebra::from_pencil(sum).unwrap();
        let n = g.x_dim();
        for v in g.center_x_basis() {
            let v = Vector::x_only(v);
            for j in 0..n {
                assert!(g.bracket(&v, &Vector::basis_x(j, n)).is_zero());
            }
        }
    }

    #[test]
    fn inner_dimensions() {
        assert_eq!(singular_algebra().inner_dimension(), 5);
        assert_eq!(regular_algebra().inner_dimension(), 4);
        let f_inf2 = build_block(&BlockSpec::Inf { e: 2 }).unwrap();
        let g = Genus2Algebra::from_pencil(f_inf2).unwrap();
        assert_eq!(g.inner_dimension(), 4);
    }

    #[test]
    fn central_derivation_dimensions() {
        assert_eq!(regular_algebra().central_derivations().dim(), 8);
        assert_eq!(singular_algebra().central_derivations().dim(), 10);
        for g in [regular_algebra(), singular_algebra()] {
            assert_eq!(g.central_derivations().dim(), 2 * g.inner_dimension());
        }
    }

    #[test]
    fn central_derivations_kill_the_center() {
        let sum = direct_sum(&[
            singular_5x5(),
            build_block(&BlockSpec::MinIdx { eps: 0 }).unwrap(),
        ])
        .unwrap();
        let g = Genus2Algebra::from_pencil(sum).unwrap();
        let center = g.center_x_basis();
        let space = g.central_derivations();
        assert_eq!(space.dim(), 2 * g.inner_dimension());
        for d in &space.basis {
            assert!(d.vanishes_on(&center));
        }
    }

    #[test]
    fn inner_basis_properties() {
        let g = singular_algebra();
        let inner = g.inner_basis();
        assert_eq!(inner.dim(), 5);
        assert_eq!(regular_algebra().inner_basis().dim(), 4);
        assert!(vectors_independent(&inner.flat_rows()));
        // inner derivations are central derivations
        let center = g.center_x_basis();
        for d in &inner.basis {
            assert!(d.vanishes_on(&center));
        }
        // a zero block contributes a zero map which gets dropped
        let sum = direct_sum(&[
            singular_5x5(),
            build_block(&BlockSpec::MinIdx { eps: 0 }).unwrap(),
        ])
        .unwrap();
        let g = Genus2Algebra::from_pencil(sum).unwrap();
        assert_eq!(g.inner_basis().dim(), 5);
    }

    #[test]
    fn inner_inside_central_span() {
        let g = regular_algebra();
        let central = g.central_derivations().flat_rows();
        for row in g.inner_basis().flat_rows() {
            assert!(in_span(&central, &row));
        }
    }

    #[test]
    fn padded_block_dimensions() {
        // 2x2 block with one divisor pair at infinity: B = 0
        let p = build_block(&BlockSpec::Inf { e: 1 }).unwrap();
        assert!(Genus2Algebra::from_pencil(p.clone()).is_err());
        let g = Genus2Algebra::from_pencil_padded(p);
        assert_eq!(g.inner_dimension(), 2);
        assert_eq!(g.central_derivations().dim(), 4);
    }
}
