//! Exact integer and rational linear algebra: determinants, Hermite and
//! Smith normal forms, kernels, and exact solves over arbitrary-precision
//! numbers. The substrate for every other module; no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        assert!(r >= 1);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::new(r, c, rows.iter().flatten().cloned().collect())
    }

    pub fn from_cols(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        assert!(c >= 1);
        let r = cols[0].len();
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = IntMatrix::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    /// Convenience constructor for tests and literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let converted: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        IntMatrix::from_rows(&converted)
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

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * rhs.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_int_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from(self.at(i, j).clone()) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row count mismatch");
        let mut m = IntMatrix::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..rhs.cols {
                *m.at_mut(i, self.cols + j) = rhs.at(i, j).clone();
            }
        }
        m
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.at(i, i).clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.at(src, j) * q;
            *self.at_mut(dst, j) += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.at(i, src) * q;
            *self.at_mut(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        negated = !negated;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Exact by the Bareiss identity: prev divides the numerator.
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    *a.at_mut(i, j) = num / &prev;
                }
                *a.at_mut(i, k) = BigInt::zero();
            }
            prev = a.at(k, k).clone();
        }
        let det = a.at(n - 1, n - 1).clone();
        Ok(if negated { -det } else { det })
    }

    /// Canonical basis of the lattice spanned by the columns of `self`:
    /// the column-style Hermite normal form (lower-triangular, positive
    /// diagonal, entries left of the diagonal reduced into [0, diagonal)).
    ///
    /// The columns must span a full-rank lattice in Z^rows.
    pub fn hnf(&self) -> Result<IntMatrix> {
        let n = self.rows;
        let m = self.cols;
        let mut a = self.clone();
        for row in 0..n {
            // Gcd-reduce row `row` across columns row..m until a single
            // nonzero entry remains, then park it on the diagonal.
            loop {
                let pivot = (row..m)
                    .filter(|&j| !a.at(row, j).is_zero())
                    .min_by_key(|&j| a.at(row, j).abs());
                let Some(p) = pivot else {
                    return Err(Error::RankDeficient);
                };
                a.swap_cols(row, p);
                let mut clean = true;
                for j in row + 1..m {
                    if !a.at(row, j).is_zero() {
                        let q = -a.at(row, j).div_floor(a.at(row, row));
                        a.add_col_multiple(j, row, &q);
                        if !a.at(row, j).is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            if a.at(row, row).is_negative() {
                a.negate_col(row);
            }
        }
        // Reduce entries left of the diagonal into [0, diagonal).
        for i in 0..n {
            for j in 0..i {
                let q = -a.at(i, j).div_floor(a.at(i, i));
                if !q.is_zero() {
                    a.add_col_multiple(j, i, &q);
                }
            }
        }
        let mut h = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *h.at_mut(i, j) = a.at(i, j).clone();
            }
        }
        Ok(h)
    }

    /// Smith normal form `u * self * v = d` with unimodular `u`, `v` and
    /// `d` diagonal, nonnegative, each entry dividing the next.
    pub fn snf(&self) -> Result<SnfDecomposition> {
        let rows = self.rows;
        let cols = self.cols;
        let mut m = self.clone();
        let mut u = IntMatrix::identity(rows);
        let mut v = IntMatrix::identity(cols);

        let mut t = 0;
        while t < rows.min(cols) {
            // Move a smallest-magnitude nonzero entry of the trailing block
            // to position (t, t); stop if the block is zero.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m.at(i, j).is_zero())
                .min_by_key(|&(i, j)| m.at(i, j).abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap_rows(t, pi);
            u.swap_rows(t, pi);
            m.swap_cols(t, pj);
            v.swap_cols(t, pj);

            'reduce: loop {
                // Clear column t below the pivot.
                for i in t + 1..rows {
                    if !m.at(i, t).is_zero() {
                        let q = -m.at(i, t).div_floor(m.at(t, t));
                        m.add_row_multiple(i, t, &q);
                        u.add_row_multiple(i, t, &q);
                        if !m.at(i, t).is_zero() {
                            // Remainder became the new, smaller pivot.
                            m.swap_rows(t, i);
                            u.swap_rows(t, i);
                            continue 'reduce;
                        }
                    }
                }
                // Clear row t right of the pivot.
                for j in t + 1..cols {
                    if !m.at(t, j).is_zero() {
                        let q = -m.at(t, j).div_floor(m.at(t, t));
                        m.add_col_multiple(j, t, &q);
                        v.add_col_multiple(j, t, &q);
                        if !m.at(t, j).is_zero() {
                            m.swap_cols(t, j);
                            v.swap_cols(t, j);
                            continue 'reduce;
                        }
                    }
                }
                // Enforce the divisibility chain: fold any non-multiple of
                // the pivot back into row t and re-reduce.
                let offender = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m.at(i, j).mod_floor(m.at(t, t)).is_zero());
                match offender {
                    Some((i, _)) => {
                        m.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                        continue 'reduce;
                    }
                    None => break 'reduce,
                }
            }
            if m.at(t, t).is_negative() {
                m.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        Ok(SnfDecomposition { d: m, u, v })
    }

    /// Basis of the integer kernel {x : self * x = 0}, as matrix columns.
    /// Returns `None` when the kernel is trivial.
    pub fn kernel(&self) -> Result<Option<IntMatrix>> {
        let snf = self.snf()?;
        let rank = snf
            .d
            .diagonal()
            .iter()
            .take_while(|e| !e.is_zero())
            .count();
        if rank == self.cols {
            return Ok(None);
        }
        let cols: Vec<Vec<BigInt>> = (rank..self.cols).map(|j| snf.v.col(j)).collect();
        Ok(Some(IntMatrix::from_cols(&cols)))
    }

    /// Exact inverse over the rationals.
    pub fn rational_inverse(&self) -> Result<Vec<Vec<BigRational>>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from(self.at(i, j).clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for j in col..2 * n {
                a[col][j] = &a[col][j] * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..2 * n {
                        let sub = &a[col][j] * &f;
                        a[r][j] = &a[r][j] - sub;
                    }
                }
            }
        }
        Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Adjugate matrix: `adj(M) = det(M) * M^{-1}`, always integral.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inv = self.rational_inverse()?;
        let det_r = BigRational::from(det);
        let mut adj = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &inv[i][j] * &det_r;
                assert!(v.is_integer(), "adjugate entry not integral");
                *adj.at_mut(i, j) = v.to_integer();
            }
        }
        Ok(adj)
    }

    /// Solve `self * x = b` exactly over the rationals.
    pub fn solve_exact(&self, b: &RationalVector) -> Result<RationalVector> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let inv = self.rational_inverse()?;
        let x: Vec<BigRational> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &inv[i][j] * b.entry(j)).sum())
            .collect();
        Ok(RationalVector::new(x))
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Result of [`IntMatrix::snf`]: `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Vector of exact rationals, every entry kept in lowest terms with a
/// positive denominator (the `BigRational` normal form).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalVector {
    entries: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RationalVector { entries }
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        RationalVector::new(entries.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &BigRational {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigRational> {
        self.entries.iter()
    }

    pub fn sum(&self) -> BigRational {
        self.entries.iter().sum()
    }
}

impl std::fmt::Display for RationalVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `n / d`, erroring unless the division is exact.
pub fn exact_div(n: &BigInt, d: &BigInt, context: &'static str) -> Result<BigInt> {
    if d.is_zero() || !n.mod_floor(d).is_zero() {
        return Err(Error::InexactDivision {
            context,
            numerator: n.to_string(),
            denominator: d.to_string(),
        });
    }
    Ok(n / d)
}

/// Canonical basis (column HNF) of `{x in Z^n : a * x ≡ 0 (mod modulus)}`.
pub fn solve_congruence(a: &IntMatrix, modulus: &BigInt) -> Result<IntMatrix> {
    assert!(modulus.is_positive(), "modulus must be positive");
    let n = a.cols();
    // Kernel of [a | modulus·I]: a solution x extends to (x, y) with
    // a·x + modulus·y = 0, and conversely.
    let mut scaled_id = IntMatrix::zero(a.rows(), a.rows());
    for i in 0..a.rows() {
        *scaled_id.at_mut(i, i) = modulus.clone();
    }
    let stacked = a.hstack(&scaled_id);
    let kernel = stacked
        .kernel()?
        .expect("congruence system always has a full-rank solution lattice");
    let top: Vec<Vec<BigInt>> = (0..kernel.cols())
        .map(|j| (0..n).map(|i| kernel.at(i, j).clone()).collect())
        .collect();
    IntMatrix::from_cols(&top).hnf()
}

/// Does the lattice spanned by the columns of `basis` (square, nonsingular)
/// contain every column of `vectors`?
pub fn lattice_contains(basis: &IntMatrix, vectors: &IntMatrix) -> Result<bool> {
    let det = basis.determinant()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let adj = basis.adjugate()?;
    let coords = adj.mul(vectors);
    for i in 0..coords.rows() {
        for j in 0..coords.cols() {
            if !coords.at(i, j).mod_floor(&det).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
