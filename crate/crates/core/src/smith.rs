//! Matrices over ℚ\[λ\] and their Smith normal form.
//!
//! ℚ\[λ\] is a principal ideal domain, so every polynomial matrix is
//! unimodularly equivalent to a diagonal with each entry dividing the next;
//! the nonzero diagonal entries (normalized monic) are the invariant
//! polynomials. The pivot strategy picks the nonzero entry of minimal degree
//! (ties broken by smallest row, then column) which keeps degrees small and
//! makes the output deterministic.

use std::fmt;

use crate::poly::Poly;
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Poly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
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

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        PolyMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Poly::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() {
                    acc = &acc + &(a * rhs.at(k, j));
                }
            }
            acc
        })
    }

    /// Evaluates every entry at a rational point.
    pub fn eval(&self, x: &Rat) -> crate::matrix::RatMatrix {
        crate::matrix::RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).eval(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.swap_rows_from(a, b, 0);
    }

    fn swap_rows_from(&mut self, a: usize, b: usize, from_col: usize) {
        if a == b {
            return;
        }
        for j in from_col..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.swap_cols_from(a, b, 0);
    }

    fn swap_cols_from(&mut self, a: usize, b: usize, from_row: usize) {
        if a == b {
            return;
        }
        for i in from_row..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row(dst) += q · row(src)
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Poly) {
        self.add_row_multiple_from(dst, src, q, 0);
    }

    fn add_row_multiple_from(&mut self, dst: usize, src: usize, q: &Poly, from_col: usize) {
        if q.is_zero() {
            return;
        }
        for j in from_col..self.cols {
            if self.at(src, j).is_zero() {
                continue;
            }
            let delta = q * self.at(src, j);
            let v = self.at(dst, j) + &delta;
            *self.at_mut(dst, j) = v;
        }
    }

    /// col(dst) += q · col(src)
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Poly) {
        self.add_col_multiple_from(dst, src, q, 0);
    }

    fn add_col_multiple_from(&mut self, dst: usize, src: usize, q: &Poly, from_row: usize) {
        if q.is_zero() {
            return;
        }
        for i in from_row..self.rows {
            if self.at(i, src).is_zero() {
                continue;
            }
            let delta = q * self.at(i, src);
            let v = self.at(i, dst) + &delta;
            *self.at_mut(i, dst) = v;
        }
    }

    fn scale_row(&mut self, row: usize, c: &Rat) {
        for j in 0..self.cols {
            let v = self.at(row, j).scale(c);
            *self.at_mut(row, j) = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination; divisions
    /// are exact in ℚ\[λ\]. Intended for the modest sizes this crate handles.
    pub fn determinant(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut m = self.clone();
        let mut prev = Poly::one();
        let mut sign = false;
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m.at(i, k).is_zero()) else {
                    return Poly::zero();
                };
                m.swap_rows(k, swap);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.at(k, k) * m.at(i, j)) - &(m.at(i, k) * m.at(k, j));
                    *m.at_mut(i, j) = num.exact_div(&prev);
                }
                *m.at_mut(i, k) = Poly::zero();
            }
            prev = m.at(k, k).clone();
        }
        let det = m.at(n - 1, n - 1).clone();
        if sign {
            -&det
        } else {
            det
        }
    }
}

impl fmt::Debug for PolyMatrix {
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

/// Result of [`smith_normal_form`]: `u · input · v = diag(diagonal)` with
/// `u`, `v` unimodular, each diagonal entry monic or zero, and each entry
/// dividing the next.
pub struct SmithForm {
    pub diagonal: Vec<Poly>,
    pub u: PolyMatrix,
    pub v: PolyMatrix,
}

impl SmithForm {
    /// Count of nonzero invariant polynomials = rank over ℚ(λ).
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero invariant polynomials, in divisibility order.
    pub fn invariant_polynomials(&self) -> Vec<Poly> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero())
            .cloned()
            .collect()
    }
}

/// Smith normal form over ℚ\[λ\] with unimodular transforms recorded.
pub fn smith_normal_form(m: &PolyMatrix) -> SmithForm {
    smith_with(m, true)
}

/// Just the diagonal (invariant polynomials plus zeros); skips the
/// transform bookkeeping, which dominates the cost on larger inputs.
pub fn smith_diagonal(m: &PolyMatrix) -> Vec<Poly> {
    smith_with(m, false).diagonal
}

fn smith_with(m: &PolyMatrix, track: bool) -> SmithForm {
    let mut work = m.clone();
    let mut u = PolyMatrix::identity(if track { m.rows() } else { 0 });
    let mut v = PolyMatrix::identity(if track { m.cols() } else { 0 });
    let steps = m.rows().min(m.cols());

    // Rows above and columns left of the active submatrix are already in
    // final form with zeros facing it, so every operation below stays
    // inside the submatrix (the transforms still need full rows).
    for t in 0..steps {
        'place_pivot: loop {
            let Some((pr, pc)) = min_degree_entry(&work, t) else {
                break 'place_pivot; // remaining block is zero
            };
            work.swap_rows_from(t, pr, t);
            work.swap_cols_from(t, pc, t);
            if track {
                u.swap_rows(t, pr);
                v.swap_cols(t, pc);
            }

            // Clear the pivot column by division with remainder. A nonzero
            // remainder strictly drops the minimal degree, so this loop
            // terminates.
            let mut dirty = false;
            for i in t + 1..work.rows() {
                if work.at(i, t).is_zero() {
                    continue;
                }
                let (q, r) = work.at(i, t).div_rem(work.at(t, t));
                let neg_q = -&q;
                work.add_row_multiple_from(i, t, &neg_q, t);
                if track {
                    u.add_row_multiple(i, t, &neg_q);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'place_pivot;
            }
            // Same for the pivot row.
            for j in t + 1..work.cols() {
                if work.at(t, j).is_zero() {
                    continue;
                }
                let (q, r) = work.at(t, j).div_rem(work.at(t, t));
                let neg_q = -&q;
                work.add_col_multiple_from(j, t, &neg_q, t);
                if track {
                    v.add_col_multiple(j, t, &neg_q);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'place_pivot;
            }

            // Pivot row and column are clear. Enforce divisibility into the
            // remaining block: fold an offending row into the pivot row and
            // restart this step.
            let pivot = work.at(t, t).clone();
            let offender = (t + 1..work.rows()).find(|&i| {
                (t + 1..work.cols()).any(|j| !work.at(i, j).div_rem(&pivot).1.is_zero())
            });
            match offender {
                Some(i) => {
                    work.add_row_multiple_from(t, i, &Poly::one(), t);
                    if track {
                        u.add_row_multiple(t, i, &Poly::one());
                    }
                }
                None => break 'place_pivot,
            }
        }

        // Normalize the pivot monic (a unit row scaling).
        if let Some(lead) = work.at(t, t).leading() {
            if !lead.is_one() {
                let inv = lead.recip();
                work.scale_row(t, &inv);
                if track {
                    u.scale_row(t, &inv);
                }
            }
        }
    }

    let diagonal = (0..steps).map(|t| work.at(t, t).clone()).collect();
    SmithForm { diagonal, u, v }
}

fn min_degree_entry(m: &PolyMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in from..m.rows() {
        for j in from..m.cols() {
            let Some(deg) = m.at(i, j).degree() else {
                continue;
            };
            if best.is_none_or(|(d, _, _)| deg < d) {
                best = Some((deg, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn lam() -> Poly {
        Poly::lambda()
    }

    fn check_form(m: &PolyMatrix) -> SmithForm {
        let snf = smith_normal_form(m);
        // U m V equals the diagonal exactly
        let product = snf.u.mul(m).mul(&snf.v);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expected = if i == j && i < snf.diagonal.len() {
                    snf.diagonal[i].clone()
                } else {
                    Poly::zero()
                };
                assert_eq!(*product.at(i, j), expected, "at ({i}, {j})");
            }
        }
        // divisibility chain, monic-or-zero entries, zeros last
        for w in snf.diagonal.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero(), "zero before nonzero in diagonal");
            assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        for d in &snf.diagonal {
            assert!(d.is_zero() || d.leading().unwrap().is_one());
        }
        // unimodularity: constant nonzero determinants
        let du = snf.u.determinant();
        let dv = snf.v.determinant();
        assert!(du.is_constant() && !du.is_zero(), "U not unimodular: {du}");
        assert!(dv.is_constant() && !dv.is_zero(), "V not unimodular: {dv}");
        snf
    }

    #[test]
    fn zero_one_by_one() {
        let snf = check_form(&PolyMatrix::zeros(1, 1));
        assert_eq!(snf.diagonal, vec![Poly::zero()]);
    }

    #[test]
    fn diagonal_reordering_and_divisibility() {
        // diag(λ², λ) must come out as diag(λ, λ²)
        let m = PolyMatrix::from_rows(vec![
            vec![&lam() * &lam(), Poly::zero()],
            vec![Poly::zero(), lam()],
        ]);
        let snf = check_form(&m);
        assert_eq!(snf.diagonal, vec![lam(), &lam() * &lam()]);
    }

    #[test]
    fn coprime_entries_produce_unit() {
        // diag(λ, λ−1) → diag(1, λ²−λ)
        let m = PolyMatrix::from_rows(vec![
            vec![lam(), Poly::zero()],
            vec![Poly::zero(), Poly::from_ints(&[-1, 1])],
        ]);
        let snf = check_form(&m);
        assert_eq!(snf.diagonal[0], Poly::one());
        assert_eq!(snf.diagonal[1], Poly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn rectangular_and_rank() {
        let m = PolyMatrix::from_rows(vec![vec![lam(), Poly::one(), Poly::zero()]]);
        let snf = check_form(&m);
        assert_eq!(snf.diagonal, vec![Poly::one()]);
        assert_eq!(snf.rank(), 1);
    }

    #[test]
    fn determinant_matches_diagonal_product() {
        let m = PolyMatrix::from_rows(vec![
            vec![Poly::from_ints(&[1, 1]), lam()],
            vec![Poly::one(), Poly::from_ints(&[0, 0, 1])],
        ]);
        let det = m.determinant();
        // det = (λ+1)λ² − λ = λ³ + λ² − λ
        assert_eq!(det, Poly::from_ints(&[0, -1, 1, 1]));
        let snf = check_form(&m);
        let product = snf.diagonal.iter().fold(Poly::one(), |acc, d| &acc * d);
        // same up to a nonzero rational factor
        assert_eq!(product.monic(), det.monic());
    }
}
