//! Exact rational dense linear algebra.
//!
//! Everything downstream (axiom residuals, coboundary ranks, cohomology
//! dimensions) reduces to rank / nullspace questions over ℚ, so this module
//! keeps all arithmetic exact: scalars are arbitrary-precision rationals and
//! no rounding ever happens. Ranks are computed by fraction-free (Bareiss)
//! elimination on denominator-cleared rows, which bounds intermediate entry
//! growth; nullspaces come from a reduced row-echelon form over ℚ.
//!
//! Matrices here are dense and small (tens of rows/columns), so no sparse
//! storage or modular tricks are attempted.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};
use std::fmt;

/// Exact rational scalar: arbitrary-precision, always reduced, denominator
/// positive. `num::BigRational` maintains both invariants on every operation.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational in lowest terms as `p/q`, or plain `p` when q = 1.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (optional leading `-`). Whitespace is not consumed.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| format!("invalid integer `{num_s}`"))?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(num, den))
}

/// Errors from shape-checked operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// Two operands whose dimensions must agree did not. Holds the operation
    /// name and the two offending sizes.
    DimensionMismatch(&'static str, usize, usize),
    /// A square matrix was required.
    NotSquare(usize, usize),
    /// Inversion of a singular matrix was requested.
    Singular,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch(op, a, b) => {
                write!(f, "{op}: dimension mismatch ({a} vs {b})")
            }
            LinalgError::NotSquare(r, c) => write!(f, "matrix is {r}x{c}, expected square"),
            LinalgError::Singular => write!(f, "matrix is singular"),
        }
    }
}

impl std::error::Error for LinalgError {}

/// Dense row-major matrix of exact rationals. Zero-size shapes are legal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Matrix {
    /// All-zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from complete rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(
                "mul",
                self.cols,
                other.rows,
            ));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch("mul_vec", self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Inverse of a square matrix, or `Singular` / `NotSquare` errors.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        // Gauss-Jordan on [self | I]; exact over ℚ.
        let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else if c - n == r {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug.at(r, col).is_zero());
            let Some(p) = pivot else {
                return Err(LinalgError::Singular);
            };
            if p != col {
                for c in 0..2 * n {
                    let hi = aug.at(p, c).clone();
                    let lo = aug.at(col, c).clone();
                    *aug.at_mut(p, c) = lo;
                    *aug.at_mut(col, c) = hi;
                }
            }
            let inv = aug.at(col, col).recip();
            for c in 0..2 * n {
                let v = aug.at(col, c) * &inv;
                *aug.at_mut(col, c) = v;
            }
            for r in 0..n {
                if r == col || aug.at(r, col).is_zero() {
                    continue;
                }
                let factor = aug.at(r, col).clone();
                for c in 0..2 * n {
                    let v = aug.at(r, c) - &factor * aug.at(col, c);
                    *aug.at_mut(r, c) = v;
                }
            }
        }
        Ok(Matrix::from_fn(n, n, |r, c| aug.at(r, c + n).clone()))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rat(self.at(r, c)))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Row rank by fraction-free (Bareiss) elimination.
///
/// Rows are first cleared to integers (scaling a row by a nonzero rational
/// does not change the rank), then eliminated with the two-step Bareiss
/// update whose divisions are exact. Pivot choice is the first nonzero entry
/// in column order, so the computation is deterministic.
pub fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|r| clear_denominators(m.row(r))).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Reduced row-echelon form over ℚ. Returns the reduced rows (nonzero rows
/// first) and the pivot column indices.
fn rref(m: &Matrix) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a: Vec<Vec<Rat>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r0 = 0usize;
    for col in 0..m.cols {
        let Some(p) = (r0..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(r0, p);
        let inv = a[r0][col].recip();
        for c in col..m.cols {
            a[r0][c] *= &inv;
        }
        for r in 0..m.rows {
            if r == r0 || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..m.cols {
                let v = &a[r][c] - &factor * &a[r0][c];
                a[r][c] = v;
            }
        }
        pivots.push(col);
        r0 += 1;
        if r0 == m.rows {
            break;
        }
    }
    (a, pivots)
}

/// Basis of `{x : m·x = 0}`, echelon-normalized and deterministic: one basis
/// vector per free column in ascending column order, with that coordinate
/// set to 1 and the pivot coordinates filled from the RREF.
///
/// The returned basis always has exactly `cols − rank` vectors.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Rat>> {
    let (red, pivots) = rref(m);
    let mut basis = Vec::new();
    let mut next_pivot = 0usize;
    for free in 0..m.cols {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Rat::zero(); m.cols];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -red[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// True iff `span(a) = span(b)`, decided by ranks of the stacked matrices.
/// Errors if the vectors do not all share one length.
pub fn subspace_equal(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Result<bool, LinalgError> {
    let len = a.iter().chain(b.iter()).map(Vec::len).next();
    let Some(len) = len else {
        return Ok(true); // both empty: {0} = {0}
    };
    for v in a.iter().chain(b.iter()) {
        if v.len() != len {
            return Err(LinalgError::DimensionMismatch("subspace_equal", len, v.len()));
        }
    }
    let ra = rank(&Matrix::from_rows(a.to_vec()));
    let rb = rank(&Matrix::from_rows(b.to_vec()));
    if ra != rb {
        return Ok(false);
    }
    let mut stacked: Vec<Vec<Rat>> = a.to_vec();
    stacked.extend(b.iter().cloned());
    Ok(rank(&Matrix::from_rows(stacked)) == ra)
}

/// True iff every entry of the vector is zero.
pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}
