//! Exact integer and rational matrix algebra.
//!
//! Everything here is arbitrary precision. Matrices are small (rank at most a
//! few dozen) so the algorithms favour clarity and determinism over speed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Dense rational matrix; entries are kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input,
    /// which only happens for literals in source code.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::try_from_rows(rows).expect("ragged matrix literal")
    }

    pub fn try_from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: r, cols, data })
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Converts to machine integers, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(format!("entry {x}"))))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Block-diagonal sum.
    pub fn block_diagonal(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Selects the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
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

    /// row[target] -= q * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = self[(source, j)].clone();
            if !s.is_zero() {
                self[(target, j)] -= q * s;
            }
        }
    }

    /// col[target] -= q * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = self[(i, source)].clone();
            if !s.is_zero() {
                self[(i, target)] -= q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("rational product".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("rational matrix-vector product".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Returns the integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Result of a Smith normal form computation: `u * m * v == s`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries d1 | d2 | ... (all positive).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn find_smallest(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let a = m[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            // strict comparison keeps the lowest row, then lowest column on ties
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with smallest-entry pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            let Some((pi, pj)) = find_smallest(&s, t) else {
                return SmithForm { s, u, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..s.rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&pivot);
                s.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..s.cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&pivot);
                s.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot now isolated; enforce divisibility of the trailing block
            let bad_row = (t + 1..s.rows)
                .find(|&i| (t + 1..s.cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { s, u, v }
}

/// Exact signed determinant (Bareiss fraction-free elimination).
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = val;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Inverse over the rationals (Gauss-Jordan).
pub fn rational_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    rational_inverse_of(&m.to_rational())
}

pub fn rational_inverse_of(m: &RatMatrix) -> Result<RatMatrix> {
    if m.rows != m.cols {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[(i, c)].is_zero()).ok_or(Error::Singular)?;
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
                inv.data.swap(p * n + j, c * n + j);
            }
        }
        let piv = a[(c, c)].clone();
        for j in 0..n {
            a[(c, j)] = &a[(c, j)] / &piv;
            inv[(c, j)] = &inv[(c, j)] / &piv;
        }
        for i in 0..n {
            if i == c || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..n {
                let ac = &a[(c, j)] * &f;
                a[(i, j)] -= ac;
                let ic = &inv[(c, j)] * &f;
                inv[(i, j)] -= ic;
            }
        }
    }
    Ok(inv)
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    rational_inverse(m)?.to_integer().ok_or(Error::Precondition("matrix is not unimodular".into()))
}

/// Counts of positive and negative eigenvalues, by exact congruence
/// diagonalisation. Fails on degenerate input.
pub fn symmetric_signature(m: &IntMatrix) -> Result<(usize, usize)> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut a = m.to_rational();
    let mut active: Vec<usize> = (0..m.rows).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[(i, i)].is_zero()) {
            Some(p) => active[p],
            None => {
                // all diagonal entries vanish: use e_i + e_j with a_ij != 0
                let (i, j) = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero())
                    .ok_or(Error::Degenerate)?;
                for &k in &active {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                for &k in &active {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                i
            }
        };
        let d = a[(pivot, pivot)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&k| k != pivot);
        for &i in &active {
            let f = &a[(i, pivot)] / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let delta = &f * &a[(pivot, j)];
                a[(i, j)] -= delta;
            }
        }
    }
    Ok((pos, neg))
}

/// Basis (as rows) of the integer kernel {x : m x = 0}; always primitive.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.cols).collect();
    snf.v.transpose().select_rows(&idx)
}

/// A basis (as rows) of the Z-span of the rows of `m`.
pub fn row_span_basis(m: &IntMatrix) -> IntMatrix {
    // m = U^-1 S V^-1, so the row span is spanned by d_i * (row i of V^-1)
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    let vinv = unimodular_inverse(&snf.v).expect("smith transform is unimodular");
    let mut rows = Vec::with_capacity(factors.len());
    for (i, d) in factors.iter().enumerate() {
        rows.push(vinv.row(i).iter().map(|x| x * d).collect::<Vec<_>>());
    }
    IntMatrix::from_big_rows(rows, m.cols).expect("consistent widths")
}

/// Solves x * m = target for a row vector x over the rationals, where the rows
/// of `m` are linearly independent. Returns `None` if there is no solution.
pub fn solve_row_combination(m: &IntMatrix, target: &[BigRational]) -> Option<Vec<BigRational>> {
    // least-squares free approach: Gaussian elimination on the transposed system
    let r = m.rows;
    let n = m.cols;
    let mut aug = RatMatrix::zeros(n, r + 1);
    for i in 0..n {
        for k in 0..r {
            aug[(i, k)] = BigRational::from_integer(m[(k, i)].clone());
        }
        aug[(i, r)] = target[i].clone();
    }
    let mut row = 0;
    let mut pivots = Vec::new();
    for c in 0..r {
        let Some(p) = (row..n).find(|&i| !aug[(i, c)].is_zero()) else { continue };
        for j in 0..=r {
            aug.data.swap(p * (r + 1) + j, row * (r + 1) + j);
        }
        let piv = aug[(row, c)].clone();
        for j in 0..=r {
            aug[(row, j)] = &aug[(row, j)] / &piv;
        }
        for i in 0..n {
            if i != row && !aug[(i, c)].is_zero() {
                let f = aug[(i, c)].clone();
                for j in 0..=r {
                    let d = &aug[(row, j)] * &f;
                    aug[(i, j)] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if (row..n).any(|i| !aug[(i, r)].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); r];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[(i, r)].clone();
    }
    Some(x)
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// floor(sqrt(n)) for n >= 0.
pub fn isqrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        return BigInt::zero();
    }
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn check_snf(m: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).unwrap().mul(&snf.v).unwrap(), snf.s);
        assert_eq!(determinant(&snf.u).unwrap().abs(), big(1));
        assert_eq!(determinant(&snf.v).unwrap().abs(), big(1));
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn snf_identity() {
        let snf = check_snf(&IntMatrix::identity(3));
        assert_eq!(snf.s, IntMatrix::identity(3));
        assert_eq!(snf.u, IntMatrix::identity(3));
        assert_eq!(snf.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_l29() {
        let snf = check_snf(&IntMatrix::from_rows(&[[14, 2], [2, 18]]));
        assert_eq!(snf.invariant_factors(), vec![big(2), big(124)]);
    }

    #[test]
    fn snf_one_by_one() {
        let snf = check_snf(&IntMatrix::from_rows(&[[3]]));
        assert_eq!(snf.s, IntMatrix::from_rows(&[[3]]));
        assert_eq!(snf.u, IntMatrix::identity(1));
        assert_eq!(snf.v, IntMatrix::identity(1));
    }

    #[test]
    fn snf_rectangular_and_negative() {
        check_snf(&IntMatrix::from_rows(&[[0, -4, 6], [2, 0, -8]]));
        check_snf(&IntMatrix::from_rows(&[[0, 0], [0, 0], [0, 5]]));
        let snf = check_snf(&IntMatrix::from_rows(&[[-6]]));
        assert_eq!(snf.invariant_factors(), vec![big(6)]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap(), big(-1));
        let l10 = IntMatrix::from_rows(&[[3, 1, 1], [1, 3, 0], [1, 0, 10]]);
        assert_eq!(determinant(&l10).unwrap(), big(77));
        assert_eq!(determinant(&IntMatrix::from_rows(&[[14, 2], [2, 18]])).unwrap(), big(248));
        assert_eq!(determinant(&IntMatrix::from_rows(&[[0, 2], [0, 5]])).unwrap(), big(0));
        assert!(matches!(
            determinant(&IntMatrix::from_rows(&[[1, 2, 3]])),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn inverses() {
        let inv = rational_inverse(&IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(inv[(0, 0)], BigRational::new(big(1), big(2)));
        let a2 = IntMatrix::from_rows(&[[2, -1], [-1, 2]]);
        let inv = rational_inverse(&a2).unwrap();
        let third = |n: i64| BigRational::new(big(n), big(3));
        assert_eq!(inv[(0, 0)], third(2));
        assert_eq!(inv[(0, 1)], third(1));
        assert!(a2.to_rational().mul(&inv).unwrap().is_identity());
        assert!(rational_inverse(&IntMatrix::identity(4)).unwrap().is_identity());
        assert_eq!(rational_inverse(&IntMatrix::from_rows(&[[1, 2], [2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn signatures() {
        assert_eq!(symmetric_signature(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap(), (1, 1));
        let l10 = IntMatrix::from_rows(&[[3, 1, 1], [1, 3, 0], [1, 0, 10]]);
        assert_eq!(symmetric_signature(&l10).unwrap(), (3, 0));
        assert_eq!(
            symmetric_signature(&IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 0]])),
            Err(Error::Degenerate)
        );
        assert_eq!(
            symmetric_signature(&IntMatrix::from_rows(&[[0, 0, 1], [0, -2, 0], [1, 0, 0]])).unwrap(),
            (1, 2)
        );
    }

    #[test]
    fn kernel_and_span() {
        let m = IntMatrix::from_rows(&[[1, 1, 0]]);
        let k = integer_kernel(&m);
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            assert!(m.mul_vec(k.row(i)).unwrap().iter().all(|x| x.is_zero()));
        }
        let span = row_span_basis(&IntMatrix::from_rows(&[[2, 0], [0, 2], [1, 1]]));
        assert_eq!(determinant(&span).unwrap().abs(), big(2));
    }
}
