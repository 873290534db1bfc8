//! Shared reporting types for cochain complexes.
//!
//! Both complexes built in this crate (alternating and unrestricted
//! multilinear cochains) report the same per-degree table: space dimension,
//! rank and kernel of the coboundary, and the betti number
//! `dim ker δ^q − rank δ^{q−1}` with `rank δ^{−1} = 0`.
//!
//! The betti value is signed: it is only the dimension of a quotient when
//! `δ^q ∘ δ^{q−1} = 0` holds at that junction, and the adopted degree-0
//! conventions do not guarantee that for every input. Each row therefore
//! carries the exact square-zero status of the junction above it.

use crate::algebra::Witness;
use std::fmt;

/// One degree of a complex table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    /// dim C^q.
    pub dim: usize,
    /// rank δ^q.
    pub rank: usize,
    /// dim ker δ^q = dim − rank.
    pub kernel: usize,
    /// dim ker δ^q − rank δ^{q−1}; the q-th cohomology dimension whenever
    /// the junction below is exact.
    pub betti: i64,
    /// Whether δ^{q+1} ∘ δ^q = 0 holds exactly.
    pub square_zero_next: bool,
}

/// Per-degree complex table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexReport {
    pub rows: Vec<DegreeRow>,
}

impl ComplexReport {
    pub fn betti(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.betti).collect()
    }
}

impl fmt::Display for ComplexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>3} {:>6} {:>6} {:>6} {:>6} {:>9}", "q", "dim", "rank", "ker", "betti", "d.d=0")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>3} {:>6} {:>6} {:>6} {:>6} {:>9}",
                r.degree,
                r.dim,
                r.rank,
                r.kernel,
                r.betti,
                if r.square_zero_next { "yes" } else { "NO" }
            )?;
        }
        Ok(())
    }
}

/// Refusal diagnostics from complex construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    /// The Jacobi identity fails on a basis triple, so the alternating
    /// complex is not defined for this product.
    NotJacobi { witness: Witness },
    /// The KV identity fails on a basis triple, so the multilinear complex
    /// is not defined for this product.
    NotKv { witness: Witness },
    /// δ^{q+1} ∘ δ^q ≠ 0 at the named degree even though the stated
    /// precondition held; the table would not be cohomology.
    NotComplex { degree: usize },
    /// A size guard tripped.
    SizeGuard { detail: String },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::NotJacobi { witness } => {
                write!(f, "input is not a Lie bracket: Jacobi identity fails {witness}")
            }
            ComplexError::NotKv { witness } => {
                write!(f, "input is not a KV algebra: KV anomaly is nonzero {witness}")
            }
            ComplexError::NotComplex { degree } => {
                write!(f, "coboundaries do not compose to zero at degree {degree}")
            }
            ComplexError::SizeGuard { detail } => write!(f, "size guard: {detail}"),
        }
    }
}

impl std::error::Error for ComplexError {}
