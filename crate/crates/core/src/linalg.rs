//! Exact integer and GF(2) linear algebra.
//!
//! Integer matrices store `i64` entries; every intermediate product or sum is
//! computed in `i128` with checked arithmetic, and any result that does not
//! fit back into `i64` is reported as [`LinalgError::Overflow`].

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

pub type Result<T> = std::result::Result<T, LinalgError>;

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| LinalgError::Overflow)
}

/// Dense row-major matrix of exact integers.
///
/// Matrices with zero rows or zero columns are valid values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from nested rows. All rows must have equal length;
    /// an empty outer vector yields the 0x0 matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let acc = i128::from(out.get(i, j))
                        .checked_add(i128::from(a) * i128::from(b))
                        .ok_or(LinalgError::Overflow)?;
                    out.set(i, j, narrow(acc)?);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a.checked_add(b))
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a.checked_sub(b))
    }

    fn zip_with(&self, rhs: &IntMatrix, f: impl Fn(i64, i64) -> Option<i64>) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b).ok_or(LinalgError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_scale(&self, s: i64) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|&a| a.checked_mul(s).ok_or(LinalgError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise exact division; `None` if some entry is not divisible by `d`.
    pub fn exact_div(&self, d: i64) -> Option<IntMatrix> {
        if d == 0 || self.data.iter().any(|&a| a % d != 0) {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a / d).collect(),
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn reduce_mod2(&self) -> F2Matrix {
        let mut m = F2Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j).rem_euclid(2) == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64> {
        det(self)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:>2}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant of a square integer matrix.
pub fn det(a: &IntMatrix) -> Result<i64> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = a
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|x| x.checked_sub(m[i][k].checked_mul(m[k][j])?))
                    .ok_or(LinalgError::Overflow)?;
                // Bareiss: the division is exact.
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    narrow(sign * m[n - 1][n - 1])
}

/// Saturated basis of the integer kernel `{x in Z^n : A x = 0}`.
///
/// Column operations reduce `A` to column-echelon form `A U` with `U`
/// unimodular; the columns of `U` beyond the pivot columns span the kernel.
/// Because `U` is unimodular, every integer solution is an integer
/// combination of the returned vectors.
pub fn integer_kernel(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let (rows, cols) = (a.rows, a.cols);
    // Column j carries (A e_j ; U e_j) stacked.
    let mut acol: Vec<Vec<i128>> = (0..cols)
        .map(|j| (0..rows).map(|i| i128::from(a.get(i, j))).collect())
        .collect();
    let mut ucol: Vec<Vec<i128>> = (0..cols)
        .map(|j| (0..cols).map(|i| i128::from(i == j)).collect())
        .collect();
    let mut pivots = 0usize;

    fn axpy(dst: &mut [i128], q: i128, src: &[i128]) -> Result<()> {
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = q
                    .checked_mul(s)
                    .and_then(|t| d.checked_sub(t))
                    .ok_or(LinalgError::Overflow)?;
            }
        }
        Ok(())
    }

    for i in 0..rows {
        if pivots == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (pivots..cols).filter(|&j| acol[j][i] != 0).collect();
            let Some(&best) = nz.iter().min_by_key(|&&j| acol[j][i].unsigned_abs()) else {
                break;
            };
            if nz.len() == 1 {
                acol.swap(pivots, best);
                ucol.swap(pivots, best);
                pivots += 1;
                break;
            }
            let (pa, pu) = (acol[best].clone(), ucol[best].clone());
            for &j in &nz {
                if j == best {
                    continue;
                }
                let q = acol[j][i].div_euclid(pa[i]);
                axpy(&mut acol[j], q, &pa)?;
                axpy(&mut ucol[j], q, &pu)?;
            }
        }
    }
    ucol[pivots..]
        .iter()
        .map(|v| v.iter().map(|&x| narrow(x)).collect())
        .collect()
}

/// Dense matrix over GF(2) with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_bits(rows: &[Vec<u8>]) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for k in 0..self.words {
            let s = self.data[src * self.words + k];
            self.data[dst * self.words + k] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn add(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&rhs.data) {
            *d ^= s;
        }
        out
    }

    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..rhs.words {
                        out.data[i * out.words + w] ^= rhs.data[k * rhs.words + w];
                    }
                }
            }
        }
        out
    }

    /// Stacks `self` above `below`.
    pub fn vstack(&self, below: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, below.cols);
        let mut out = self.clone();
        out.rows += below.rows;
        out.data.extend_from_slice(&below.data);
        out
    }

    /// Reduced row echelon form; zero rows are dropped.
    pub fn rref(&self) -> F2Matrix {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_row_into(r, i);
                }
            }
            r += 1;
        }
        m.rows = r;
        m.data.truncate(r * m.words);
        debug_assert!((0..r).all(|i| !m.row_is_zero(i)));
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix[")?;
        for i in 0..self.rows {
            let s: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            write!(f, "{}{}", if i > 0 { "," } else { "" }, s)?;
        }
        write!(f, "]")
    }
}

/// Dimension of the row space over GF(2) and its reduced echelon basis.
pub fn f2_row_space(x: &F2Matrix) -> (usize, F2Matrix) {
    let basis = x.rref();
    (basis.rows(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn apply(a: &IntMatrix, x: &[i64]) -> Vec<i64> {
        (0..a.rows())
            .map(|i| (0..a.cols()).map(|j| a.get(i, j) * x[j]).sum())
            .collect()
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        assert!(integer_kernel(&m(&[&[2]])).unwrap().is_empty());
    }

    #[test]
    fn kernel_rank_one() {
        let k = integer_kernel(&m(&[&[1, 1]])).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec![1, -1] || k[0] == vec![-1, 1]);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let k = integer_kernel(&IntMatrix::zeros(3, 3)).unwrap();
        assert_eq!(k.len(), 3);
        let mut sorted = k.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn kernel_is_saturated_for_non_primitive_relation() {
        // 2x - 4y = 0 has solutions (2, 1) * t; a non-saturated basis would give (4, 2).
        let k = integer_kernel(&m(&[&[2, -4]])).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn empty_matrices() {
        assert_eq!(integer_kernel(&IntMatrix::zeros(0, 2)).unwrap().len(), 2);
        assert!(integer_kernel(&IntMatrix::zeros(2, 0)).unwrap().is_empty());
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), 1);
        assert_eq!(IntMatrix::zeros(0, 0).reduce_mod2().rank(), 0);
    }

    #[test]
    fn row_space_examples() {
        let x = F2Matrix::from_bits(&[vec![1, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(f2_row_space(&x).0, 2);
        assert_eq!(f2_row_space(&F2Matrix::zeros(3, 4)).0, 0);
        for k in 0..6 {
            assert_eq!(f2_row_space(&F2Matrix::identity(k)).0, k);
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), 1);
        assert_eq!(det(&m(&[&[0, 1], &[1, 1]])).unwrap(), -1);
        assert_eq!(det(&m(&[&[1, 0], &[0, -1]])).unwrap(), -1);
        assert!(matches!(det(&IntMatrix::zeros(2, 3)), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = m(&[&[i64::MAX, 1], &[0, 1]]);
        assert_eq!(big.checked_mul(&big), Err(LinalgError::Overflow));
        assert_eq!(big.checked_add(&big), Err(LinalgError::Overflow));
    }

    fn cofactor_det(a: &IntMatrix) -> i64 {
        let n = a.rows();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| a.get(i, c)).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a.get(0, j) * cofactor_det(&IntMatrix::from_rows(&minor).unwrap())
            })
            .sum()
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(-3i64..=3, rows * cols)
            .prop_map(move |d| IntMatrix::new(rows, cols, d).unwrap())
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_solutions(a in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            for x in integer_kernel(&a).unwrap() {
                prop_assert!(apply(&a, &x).iter().all(|&v| v == 0));
            }
        }

        #[test]
        fn kernel_is_saturated(
            a in (1usize..4, 2usize..5).prop_flat_map(|(r, c)| small_matrix(r, c)),
            coeffs in prop::collection::vec(-4i64..=4, 5),
        ) {
            let basis = integer_kernel(&a).unwrap();
            // Build a random solution, divide by the content, and check that the
            // primitive vector is still an integer combination of the basis.
            let n = a.cols();
            let mut x = vec![0i64; n];
            for (b, c) in basis.iter().zip(&coeffs) {
                for k in 0..n {
                    x[k] += c * b[k];
                }
            }
            let g = x.iter().fold(0i64, |g, &v| gcd(g, v.abs()));
            if g > 1 {
                x.iter_mut().for_each(|v| *v /= g);
            }
            prop_assert!(apply(&a, &x).iter().all(|&v| v == 0));
            prop_assert!(in_integer_span(&basis, &x));
        }

        #[test]
        fn det_matches_cofactor_expansion(a in (0usize..5).prop_flat_map(|n| small_matrix(n, n))) {
            prop_assert_eq!(det(&a).unwrap(), cofactor_det(&a));
        }

        #[test]
        fn det_is_multiplicative(
            (a, b) in (1usize..5).prop_flat_map(|n| (small_matrix(n, n), small_matrix(n, n)))
        ) {
            let ab = a.checked_mul(&b).unwrap();
            prop_assert_eq!(det(&ab).unwrap(), det(&a).unwrap() * det(&b).unwrap());
        }

        #[test]
        fn rref_is_idempotent(bits in prop::collection::vec(0u8..2, 1..80), cols in 1usize..9) {
            let rows: Vec<Vec<u8>> = bits.chunks(cols).filter(|c| c.len() == cols).map(|c| c.to_vec()).collect();
            prop_assume!(!rows.is_empty());
            let x = F2Matrix::from_bits(&rows);
            let r = x.rref();
            prop_assert_eq!(r.rref(), r.clone());
            prop_assert_eq!(r.rank(), x.transpose().rank());
        }
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    /// Membership in the integer span of linearly independent vectors, decided
    /// by exact rational Gaussian elimination on [B | x].
    fn in_integer_span(basis: &[Vec<i64>], x: &[i64]) -> bool {
        let n = x.len();
        let k = basis.len();
        // Rows: equations, columns: k coefficients + rhs. Entries are (num, den).
        let mut rows: Vec<Vec<(i128, i128)>> = (0..n)
            .map(|i| {
                let mut r: Vec<(i128, i128)> = basis.iter().map(|b| (b[i] as i128, 1)).collect();
                r.push((x[i] as i128, 1));
                r
            })
            .collect();
        fn norm((p, q): (i128, i128)) -> (i128, i128) {
            fn g(a: i128, b: i128) -> i128 { if b == 0 { a.abs() } else { g(b, a % b) } }
            let d = g(p, q).max(1) * q.signum();
            (p / d, q / d)
        }
        let sub = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.1 - b.0 * a.1, a.1 * b.1));
        let mul = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.0, a.1 * b.1));
        let div = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.1, a.1 * b.0));
        let mut r = 0;
        let mut pivot_cols = Vec::new();
        for c in 0..k {
            let Some(p) = (r..n).find(|&i| rows[i][c].0 != 0) else { continue };
            rows.swap(r, p);
            let pv = rows[r][c];
            for x in rows[r].iter_mut() {
                *x = div(*x, pv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c].0 != 0 {
                    let f = row[c];
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = sub(*x, mul(f, p));
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        assert_eq!(r, k, "basis must be independent");
        // Consistency and integrality of the unique solution.
        rows[r..].iter().all(|row| row[k].0 == 0) && rows[..r].iter().all(|row| row[k].1 == 1)
    }
}
