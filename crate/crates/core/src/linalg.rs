//! Dense exact linear algebra, generic over the scalar.
//!
//! [`solve`] works over any exact field (`Ratio<i64>`, `Ratio<BigInt>`);
//! [`smith_normal_form`] over any Euclidean integer type (`i64`, `BigInt`).

use std::fmt;

use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone + Zero + PartialEq> Matrix<T> {
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        let cur = out.data[i * other.cols + j].clone();
                        out.data[i * other.cols + j] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// `row[dst] += factor * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, factor: &T) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                let d = self.data[dst * self.cols + j].clone();
                self.data[dst * self.cols + j] = d + factor.clone() * s;
            }
        }
    }

    /// `col[dst] += factor * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, factor: &T) {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                let d = self.data[i * self.cols + dst].clone();
                self.data[i * self.cols + dst] = d + factor.clone() * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j].clone();
            self.data[i * self.cols + j] = T::zero() - v;
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<T> {
    Unique(Vec<T>),
    /// Indices of unknowns left without a pivot.
    Underdetermined(Vec<usize>),
    Inconsistent,
}

/// Gauss–Jordan elimination on `[a | b]` over an exact field.
pub fn solve<T: Clone + Num>(a: &Matrix<T>, b: &[T]) -> Solution<T> {
    assert_eq!(a.rows, b.len());
    let (rows, cols) = (a.rows, a.cols);
    let mut m = Matrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = a[(i, j)].clone();
        }
        m[(i, cols)] = b[i].clone();
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = T::one() / m[(r, c)].clone();
        for j in 0..=cols {
            let v = m[(r, j)].clone();
            m[(r, j)] = v * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[(i, c)].is_zero() {
                let factor = T::zero() - m[(i, c)].clone();
                m.add_row(i, r, &factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..rows).any(|i| !m[(i, cols)].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined((0..cols).filter(|c| !pivots.contains(c)).collect());
    }
    Solution::Unique((0..cols).map(|c| m[(c, cols)].clone()).collect())
}

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone)]
pub struct SmithForm<T> {
    pub d: Matrix<T>,
    pub u: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
}

impl<T: fmt::Display> fmt::Debug for SmithForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmithForm").field("d", &self.d).field("u", &self.u).field("v", &self.v).finish()
    }
}

impl<T: Clone + Integer + Signed> SmithForm<T> {
    /// Nonzero diagonal entries (the invariant factors).
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors().into_iter().filter(|x| !x.is_one()).collect()
    }
}

/// Smith normal form by repeated min-pivot Euclidean reduction. With `track`
/// set, the unimodular transforms are accumulated as well.
pub fn smith_normal_form<T: Clone + Integer + Signed>(a: &Matrix<T>, track: bool) -> SmithForm<T> {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = track.then(|| Matrix::<T>::identity(rows));
    let mut v = track.then(|| Matrix::<T>::identity(cols));

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { d, u, v };
            };
            d.swap_rows(t, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(t, pi);
            }
            d.swap_cols(t, pj);
            if let Some(v) = v.as_mut() {
                v.swap_cols(t, pj);
            }

            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let neg = T::zero() - q;
                d.add_row(i, t, &neg);
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, &neg);
                }
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let neg = T::zero() - q;
                d.add_col(j, t, &neg);
                if let Some(v) = v.as_mut() {
                    v.add_col(j, t, &neg);
                }
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            if let Some((i, _)) = offender {
                let one = T::one();
                d.add_row(t, i, &one);
                if let Some(u) = u.as_mut() {
                    u.add_row(t, i, &one);
                }
                continue;
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                if let Some(u) = u.as_mut() {
                    u.negate_row(t);
                }
            }
            break;
        }
    }
    SmithForm { d, u, v }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<T: Clone + Integer + Signed>(a: &Matrix<T>) -> T {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return T::one();
    }
    let mut m = a.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return T::zero();
            };
            m.swap_rows(k, p);
            sign = T::zero() - sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = num / prev.clone();
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::Ratio;

    #[test]
    fn solve_unique_underdetermined_inconsistent() {
        let r = |x: i64| Ratio::from_integer(x);
        let a = Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(5), r(-2)]]);
        assert_eq!(solve(&a, &[r(126), r(0)]), Solution::Unique(vec![r(36), r(90)]));
        let a = Matrix::from_rows(vec![vec![r(1), r(1), r(0)]]);
        assert_eq!(solve(&a, &[r(3)]), Solution::Underdetermined(vec![1, 2]));
        let a = Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(2), r(2)]]);
        assert_eq!(solve(&a, &[r(1), r(3)]), Solution::Inconsistent);
    }

    #[test]
    fn smith_known_matrix() {
        let a = Matrix::from_rows(vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a, true);
        assert_eq!(s.invariant_factors(), vec![2, 6, 12]);
        let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
        assert_eq!(u.mul(&a).mul(v), s.d);
        assert_eq!(determinant(u).abs(), 1);
        assert_eq!(determinant(v).abs(), 1);
    }

    #[test]
    fn smith_bigint_and_rectangular() {
        let a: Matrix<BigInt> = Matrix::from_rows(vec![
            vec![1.into(), 1.into(), 0.into(), 0.into()],
            vec![0.into(), 2.into(), 2.into(), 0.into()],
        ]);
        let s = smith_normal_form(&a, true);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(s.u.as_ref().unwrap().mul(&a).mul(s.v.as_ref().unwrap()), s.d);
    }

    #[test]
    fn bareiss() {
        let a = Matrix::from_rows(vec![vec![0i64, 2, 1], vec![3, 1, 4], vec![1, 5, 9]]);
        // 0*(9-20) - 2*(27-4) + 1*(15-1) = -46 + 14
        assert_eq!(determinant(&a), -32);
    }
}
