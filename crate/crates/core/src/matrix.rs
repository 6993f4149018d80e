//! Dense matrices over ℚ with exact, deterministic elimination.
//!
//! Pivoting is fixed (leftmost column, lowest row index) so that every
//! reduced form, rank and kernel basis is reproducible bit-for-bit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rat::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.skew_defect().is_none()
    }

    /// First entry violating skew-symmetry, if any.
    pub fn skew_defect(&self) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != -self.at(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &(self.at(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Appends a column on the right.
    pub fn with_column(&self, col: &[Rat]) -> RatMatrix {
        assert_eq!(col.len(), self.rows, "column length mismatch");
        RatMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                col[i].clone()
            }
        })
    }

    pub fn block_diag(blocks: &[RatMatrix]) -> RatMatrix {
        let rows = blocks.iter().map(RatMatrix::rows).sum();
        let cols = blocks.iter().map(RatMatrix::cols).sum();
        let mut m = RatMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    *m.at_mut(r0 + i, c0 + j) = b.at(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
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
            let inv = m.at(r, c).recip();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in c..m.cols {
                        let delta = m.at(r, j) * &factor;
                        *m.at_mut(i, j) -= &delta;
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

    /// Exact basis of the right null space, from the unit parametrization of
    /// the free variables in the reduced form: one vector per free column,
    /// ordered by column index.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
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
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(i, free);
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Mul<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        RatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() {
                    acc += &(a * rhs.at(k, j));
                }
            }
            acc
        })
    }
}

impl Add<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }
}

impl Sub<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Linear independence of a set of vectors.
pub fn vectors_independent(vectors: &[Vec<Rat>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let m = RatMatrix::from_rows(vectors.to_vec());
    m.rank() == vectors.len()
}

/// Rank of the row span of a set of vectors.
pub fn span_rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors.to_vec()).rank()
}

/// True when `v` lies in the row span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(Rat::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let base_rank = span_rank(&rows);
    rows.push(v.to_vec());
    span_rank(&rows) == base_rank
}

/// Incremental row-space container used to test membership while building
/// generating sets; keeps its rows reduced.
pub struct RowSpan {
    cols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(cols: usize) -> Self {
        RowSpan {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows and inserts the residue when it
    /// is nonzero. Returns true when the vector enlarged the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &(&factor * r);
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push(v);
        self.pivots.push(pivot);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &(&factor * r);
                }
            }
        }
        v.iter().all(Rat::is_zero)
    }
}
