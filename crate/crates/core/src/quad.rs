//! Quadratic extension fields ℚ\[θ\]/(θ² + uθ + v) and exact linear algebra
//! over them.
//!
//! The modulus must be monic and irreducible over ℚ, so the quotient is a
//! field and Gaussian elimination goes through unchanged. Elements are pairs
//! `c0 + c1·θ`; reduction uses θ² = −uθ − v.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::poly::Poly;
use crate::rat::Rat;

/// Monic irreducible quadratic λ² + uλ + v.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadModulus {
    u: Rat,
    v: Rat,
}

impl QuadModulus {
    pub fn new(u: Rat, v: Rat) -> Result<Self, Error> {
        let disc = &(&u * &u) - &(&Rat::from_int(4) * &v);
        if disc.is_rational_square() {
            return Err(Error::Parse(format!(
                "quadratic x^2 + ({u})x + ({v}) is reducible over the rationals"
            )));
        }
        Ok(QuadModulus { u, v })
    }

    pub fn from_poly(p: &Poly) -> Result<Self, Error> {
        if p.degree() != Some(2) || !p.coeff(2).is_one() {
            return Err(Error::Parse(format!("not a monic quadratic: {p}")));
        }
        QuadModulus::new(p.coeff(1), p.coeff(0))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.v.clone(), self.u.clone(), Rat::one()])
    }

    pub fn u(&self) -> &Rat {
        &self.u
    }

    pub fn v(&self) -> &Rat {
        &self.v
    }

    pub fn discriminant(&self) -> Rat {
        &(&self.u * &self.u) - &(&Rat::from_int(4) * &self.v)
    }
}

/// Element c0 + c1·θ of a quadratic extension.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    modulus: QuadModulus,
    c0: Rat,
    c1: Rat,
}

impl QuadExt {
    pub fn new(modulus: QuadModulus, c0: Rat, c1: Rat) -> Self {
        QuadExt { modulus, c0, c1 }
    }

    pub fn from_rat(modulus: &QuadModulus, c: Rat) -> Self {
        QuadExt::new(modulus.clone(), c, Rat::zero())
    }

    pub fn zero(modulus: &QuadModulus) -> Self {
        QuadExt::from_rat(modulus, Rat::zero())
    }

    pub fn one(modulus: &QuadModulus) -> Self {
        QuadExt::from_rat(modulus, Rat::one())
    }

    /// The adjoined root θ.
    pub fn theta(modulus: &QuadModulus) -> Self {
        QuadExt::new(modulus.clone(), Rat::zero(), Rat::one())
    }

    pub fn modulus(&self) -> &QuadModulus {
        &self.modulus
    }

    pub fn c0(&self) -> &Rat {
        &self.c0
    }

    pub fn c1(&self) -> &Rat {
        &self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    fn check_same(&self, other: &QuadExt) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed quadratic extension moduli"
        );
    }

    /// Field inverse; panics on zero. The norm c0² − u·c0·c1 + v·c1² is a
    /// nonzero rational because the modulus is irreducible.
    pub fn inv(&self) -> QuadExt {
        assert!(!self.is_zero(), "inversion of zero");
        let u = &self.modulus.u;
        let v = &self.modulus.v;
        // conjugate = (c0 − u·c1) − c1·θ
        let conj0 = &self.c0 - &(u * &self.c1);
        let conj1 = -&self.c1;
        let norm = &(&self.c0 * &conj0) - &(&(v * &self.c1) * &conj1);
        // norm = c0(c0 − u c1) + v c1², always nonzero here
        debug_assert!(!norm.is_zero());
        let ninv = norm.recip();
        QuadExt::new(self.modulus.clone(), &conj0 * &ninv, &conj1 * &ninv)
    }
}

impl Add<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.check_same(rhs);
        QuadExt::new(self.modulus.clone(), &self.c0 + &rhs.c0, &self.c1 + &rhs.c1)
    }
}

impl Sub<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.check_same(rhs);
        QuadExt::new(self.modulus.clone(), &self.c0 - &rhs.c0, &self.c1 - &rhs.c1)
    }
}

impl Mul<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.check_same(rhs);
        let u = &self.modulus.u;
        let v = &self.modulus.v;
        let cross = &(&self.c0 * &rhs.c1) + &(&self.c1 * &rhs.c0);
        let high = &self.c1 * &rhs.c1;
        // (c0 d0 − v c1 d1) + (c0 d1 + c1 d0 − u c1 d1) θ
        let c0 = &(&self.c0 * &rhs.c0) - &(v * &high);
        let c1 = &cross - &(u * &high);
        QuadExt::new(self.modulus.clone(), c0, c1)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(self.modulus.clone(), -&self.c0, -&self.c1)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}θ)", self.c0, self.c1)
    }
}

/// Dense matrix over one quadratic extension field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtMatrix {
    modulus: QuadModulus,
    rows: usize,
    cols: usize,
    entries: Vec<QuadExt>,
}

impl ExtMatrix {
    /// Builds the matrix `re + θ·im` over the given modulus.
    pub fn from_rat_pair(
        modulus: &QuadModulus,
        re: &crate::matrix::RatMatrix,
        im: &crate::matrix::RatMatrix,
    ) -> Self {
        assert_eq!((re.rows(), re.cols()), (im.rows(), im.cols()));
        let mut entries = Vec::with_capacity(re.rows() * re.cols());
        for i in 0..re.rows() {
            for j in 0..re.cols() {
                entries.push(QuadExt::new(
                    modulus.clone(),
                    re.at(i, j).clone(),
                    im.at(i, j).clone(),
                ));
            }
        }
        ExtMatrix {
            modulus: modulus.clone(),
            rows: re.rows(),
            cols: re.cols(),
            entries,
        }
    }

    /// Builds from explicit entries, rejecting mixed moduli.
    pub fn from_rows(rows: Vec<Vec<QuadExt>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries: Vec<QuadExt> = rows.into_iter().flatten().collect();
        let Some(first) = entries.first() else {
            return Err(Error::Dimension("empty matrix".into()));
        };
        let modulus = first.modulus.clone();
        if entries.iter().any(|e| e.modulus != modulus) {
            return Err(Error::ModulusMismatch);
        }
        Ok(ExtMatrix {
            modulus,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &QuadExt {
        &self.entries[i * self.cols + j]
    }

    pub fn with_column(&self, col: &[QuadExt]) -> Result<ExtMatrix, Error> {
        assert_eq!(col.len(), self.rows);
        if col.iter().any(|e| e.modulus != self.modulus) {
            return Err(Error::ModulusMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, extra) in col.iter().enumerate() {
            entries.extend(
                self.entries[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .cloned(),
            );
            entries.push(extra.clone());
        }
        Ok(ExtMatrix {
            modulus: self.modulus.clone(),
            rows: self.rows,
            cols: self.cols + 1,
            entries,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form with the same deterministic pivot rule as
    /// the rational case.
    pub fn rref(&self) -> (ExtMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pivot_row) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pivot_row);
            let inv = m.at(r, c).inv();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in c..m.cols {
                        let delta = m.at(r, j) * &factor;
                        let v = m.at(i, j) - &delta;
                        m.entries[i * m.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact null space basis over the extension field.
    pub fn kernel_basis(&self) -> Vec<Vec<QuadExt>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![QuadExt::zero(&self.modulus); self.cols];
            v[free] = QuadExt::one(&self.modulus);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(i, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn apply(&self, v: &[QuadExt]) -> Vec<QuadExt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = QuadExt::zero(&self.modulus);
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(self.at(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Null space of a matrix over a quadratic extension (all entries must share
/// one modulus).
pub fn kernel_basis_ext(m: &ExtMatrix) -> Vec<Vec<QuadExt>> {
    m.kernel_basis()
}
