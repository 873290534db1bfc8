//! Structure-constant algebras and their identity audits.
//!
//! A bilinear product on an n-dimensional space is stored as the tensor
//! c[i][j][k] with μ(e_i, e_j) = Σ_k c[i][j][k] e_k. All identities checked
//! here (commutativity, skew-symmetry, the KV anomaly, the Jacobi identity,
//! the self-Leibniz rule, nested-product nilpotency) are multilinear in
//! their arguments, so vanishing on all basis tuples settles them on the
//! whole space; audits scan basis tuples and record the lexicographically
//! first failure as a witness.
//!
//! Indices are 0-based in this API. Witness tuples are reported 1-based to
//! match the text formats used elsewhere in the workbench.

use crate::exactla::{format_rat, vec_is_zero, LinalgError, Matrix, Rat};
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Errors from shape-checked algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A vector argument does not have the structure's dimension.
    LengthMismatch { expected: usize, got: usize },
    /// Two structures of different dimensions were combined.
    DimMismatch { left: usize, right: usize },
    /// A singular change-of-basis matrix was supplied.
    SingularBasis,
    /// The change-of-basis matrix has the wrong shape.
    BadBasisShape { expected: usize, rows: usize, cols: usize },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::LengthMismatch { expected, got } => {
                write!(f, "vector length {got} does not match dimension {expected}")
            }
            AlgebraError::DimMismatch { left, right } => {
                write!(f, "structures have different dimensions ({left} vs {right})")
            }
            AlgebraError::SingularBasis => write!(f, "change-of-basis matrix is singular"),
            AlgebraError::BadBasisShape { expected, rows, cols } => write!(
                f,
                "change-of-basis matrix is {rows}x{cols}, expected {expected}x{expected}"
            ),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// The identities a structure can be audited against.
///
/// `KvPoisson` is the conjunction skew ∧ nilpotent: a skew product with
/// μ(w, μ(u,v)) = 0 everywhere. Such a product automatically satisfies the
/// Jacobi identity, the self-Leibniz rule and the KV identity, since every
/// term of those residuals contains a nested product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Symmetric,
    Skew,
    Kv,
    Jacobi,
    LeibnizSelf,
    Nilpotent,
    KvPoisson,
}

/// All axioms in report order.
pub const ALL_AXIOMS: [Axiom; 7] = [
    Axiom::Symmetric,
    Axiom::Skew,
    Axiom::Kv,
    Axiom::Jacobi,
    Axiom::LeibnizSelf,
    Axiom::Nilpotent,
    Axiom::KvPoisson,
];

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Symmetric => "symmetric",
            Axiom::Skew => "skew",
            Axiom::Kv => "kv",
            Axiom::Jacobi => "jacobi",
            Axiom::LeibnizSelf => "leibniz-self",
            Axiom::Nilpotent => "nilpotent",
            Axiom::KvPoisson => "kv-poisson",
        };
        f.write_str(name)
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symmetric" => Ok(Axiom::Symmetric),
            "skew" => Ok(Axiom::Skew),
            "kv" => Ok(Axiom::Kv),
            "jacobi" => Ok(Axiom::Jacobi),
            "leibniz-self" | "leibniz_self" | "leibniz" => Ok(Axiom::LeibnizSelf),
            "nilpotent" => Ok(Axiom::Nilpotent),
            "kv-poisson" | "kv_poisson" => Ok(Axiom::KvPoisson),
            other => Err(format!(
                "unknown axiom `{other}` (expected one of: symmetric, skew, kv, jacobi, \
                 leibniz-self, nilpotent, kv-poisson)"
            )),
        }
    }
}

/// A failed audit carries the first failing basis tuple (1-based) together
/// with the nonzero residual vector witnessing the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub residual: Vec<Rat>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple: Vec<String> = self.tuple.iter().map(|i| i.to_string()).collect();
        let res: Vec<String> = self.residual.iter().map(format_rat).collect();
        write!(f, "at ({}) residual ({})", tuple.join(","), res.join(","))
    }
}

/// Verdict for one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Per-axiom pass/fail verdicts with a first-failure witness for each fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub verdicts: Vec<AxiomVerdict>,
}

impl AuditReport {
    pub fn passed(&self, axiom: Axiom) -> bool {
        self.verdict(axiom).passed
    }

    pub fn verdict(&self, axiom: Axiom) -> &AxiomVerdict {
        self.verdicts
            .iter()
            .find(|v| v.axiom == axiom)
            .expect("report covers every axiom")
    }

    pub fn passes_all(&self, axioms: &[Axiom]) -> bool {
        axioms.iter().all(|&a| self.passed(a))
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            write!(f, "{:<13} {}", v.axiom.to_string(), if v.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &v.witness {
                write!(f, "  {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A bilinear multiplication given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearStructure {
    dim: usize,
    /// Flat tensor, index ((i * dim) + j) * dim + k.
    c: Vec<Rat>,
}

impl BilinearStructure {
    /// The zero product in dimension `dim` (dim ≥ 1).
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        BilinearStructure {
            dim,
            c: vec![Rat::zero(); dim * dim * dim],
        }
    }

    /// The two-parameter family of skew products on the plane:
    /// μ(e₀, e₁) = (x0, y0), μ(e₁, e₀) = (−x0, −y0), diagonal products zero.
    /// Every skew bilinear product on a 2-dimensional space has this form.
    pub fn dim2_skew(x0: Rat, y0: Rat) -> Self {
        let mut s = BilinearStructure::zero(2);
        s.set_c(0, 1, 0, x0.clone());
        s.set_c(0, 1, 1, y0.clone());
        s.set_c(1, 0, 0, -x0);
        s.set_c(1, 0, 1, -y0);
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant c[i][j][k] (0-based).
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_c(&mut self, i: usize, j: usize, k: usize, value: Rat) {
        self.c[(i * self.dim + j) * self.dim + k] = value;
    }

    /// Flat view of the constants in (i, j, k) lexicographic order.
    pub fn constants(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// μ(e_i, e_j) as a coordinate vector.
    pub fn product_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::LengthMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension: μ(u, v) = Σ_{i,j} u_i v_j μ(e_i, e_j).
    pub fn evaluate(&self, u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = vec![Rat::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let w = ui * vj;
                for k in 0..self.dim {
                    let cijk = self.c(i, j, k);
                    if !cijk.is_zero() {
                        out[k] += &w * cijk;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Associator μ(μ(a,b),c) − μ(a,μ(b,c)).
    pub fn associator(&self, a: &[Rat], b: &[Rat], c: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        let left = self.evaluate(&self.evaluate(a, b)?, c)?;
        let right = self.evaluate(a, &self.evaluate(b, c)?)?;
        Ok(vec_sub(&left, &right))
    }

    /// KV anomaly: associator(a,b,c) − associator(b,a,c). Identically zero
    /// exactly when the product is a Koszul-Vinberg algebra.
    pub fn kv_anomaly(&self, a: &[Rat], b: &[Rat], c: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        Ok(vec_sub(&self.associator(a, b, c)?, &self.associator(b, a, c)?))
    }

    /// Cyclic sum μ(u,μ(v,w)) + μ(v,μ(w,u)) + μ(w,μ(u,v)).
    pub fn jacobiator(&self, u: &[Rat], v: &[Rat], w: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        let t1 = self.evaluate(u, &self.evaluate(v, w)?)?;
        let t2 = self.evaluate(v, &self.evaluate(w, u)?)?;
        let t3 = self.evaluate(w, &self.evaluate(u, v)?)?;
        Ok(vec_add(&vec_add(&t1, &t2), &t3))
    }

    /// Self-Leibniz residual μ(μ(u,v),w) − μ(u,μ(v,w)) − μ(v,μ(u,w)), the
    /// product playing both the bracket and the multiplication role.
    pub fn leibniz_residual(&self, u: &[Rat], v: &[Rat], w: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        let t1 = self.evaluate(&self.evaluate(u, v)?, w)?;
        let t2 = self.evaluate(u, &self.evaluate(v, w)?)?;
        let t3 = self.evaluate(v, &self.evaluate(u, w)?)?;
        Ok(vec_sub(&vec_sub(&t1, &t2), &t3))
    }

    /// Nested-product residual μ(w, μ(u,v)).
    pub fn nilpotency_residual(&self, w: &[Rat], u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        self.evaluate(w, &self.evaluate(u, v)?)
    }

    /// Structure constants c1 + λ·c2.
    pub fn combine(&self, lambda: &Rat, other: &BilinearStructure) -> Result<BilinearStructure, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a + lambda * b)
            .collect();
        Ok(BilinearStructure { dim: self.dim, c })
    }

    /// Skew part: constants (c[i][j][k] − c[j][i][k]) / 2. Idempotent, and
    /// the result is always skew.
    pub fn antisymmetrize(&self) -> BilinearStructure {
        let half = Rat::new(1.into(), 2.into());
        let mut out = BilinearStructure::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    out.set_c(i, j, k, (self.c(i, j, k) - self.c(j, i, k)) * &half);
                }
            }
        }
        out
    }

    /// Conjugated product μ′(u,v) = p⁻¹·μ(p·u, p·v) for invertible `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<BilinearStructure, AlgebraError> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(AlgebraError::BadBasisShape {
                expected: self.dim,
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        let pinv = p.inverse().map_err(|e| match e {
            LinalgError::Singular => AlgebraError::SingularBasis,
            _ => AlgebraError::SingularBasis,
        })?;
        let col = |m: &Matrix, j: usize| -> Vec<Rat> { (0..self.dim).map(|r| m.at(r, j).clone()).collect() };
        let mut out = BilinearStructure::zero(self.dim);
        for i in 0..self.dim {
            let pei = col(p, i);
            for j in 0..self.dim {
                let pej = col(p, j);
                let w = self.evaluate(&pei, &pej).expect("square shapes");
                let back = pinv.mul_vec(&w).expect("square shapes");
                for (k, value) in back.into_iter().enumerate() {
                    out.set_c(i, j, k, value);
                }
            }
        }
        Ok(out)
    }

    /// Scale every constant by λ.
    pub fn scale(&self, lambda: &Rat) -> BilinearStructure {
        BilinearStructure {
            dim: self.dim,
            c: self.c.iter().map(|x| x * lambda).collect(),
        }
    }

    fn basis(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// Short-circuiting basis check of a single axiom; agrees with
    /// [`Self::axiom_audit`] but stops at the first failing tuple and
    /// produces no witness. Used by scans that discard most candidates.
    pub fn satisfies(&self, axiom: Axiom) -> bool {
        let n = self.dim;
        match axiom {
            Axiom::Symmetric => (0..n).all(|i| {
                (0..n).all(|j| {
                    vec_is_zero(&vec_sub(&self.product_basis(i, j), &self.product_basis(j, i)))
                })
            }),
            Axiom::Skew => (0..n).all(|i| {
                (0..n).all(|j| {
                    vec_is_zero(&vec_add(&self.product_basis(i, j), &self.product_basis(j, i)))
                })
            }),
            Axiom::Kv => self.triples_vanish(&|a, b, c| self.kv_anomaly(a, b, c).expect("basis")),
            Axiom::Jacobi => self.triples_vanish(&|u, v, w| self.jacobiator(u, v, w).expect("basis")),
            Axiom::LeibnizSelf => {
                self.triples_vanish(&|u, v, w| self.leibniz_residual(u, v, w).expect("basis"))
            }
            Axiom::Nilpotent => {
                self.triples_vanish(&|w, u, v| self.nilpotency_residual(w, u, v).expect("basis"))
            }
            Axiom::KvPoisson => self.satisfies(Axiom::Skew) && self.satisfies(Axiom::Nilpotent),
        }
    }

    fn triples_vanish(&self, residual: &dyn Fn(&[Rat], &[Rat], &[Rat]) -> Vec<Rat>) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !vec_is_zero(&residual(&self.basis(a), &self.basis(b), &self.basis(c))) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Evaluates every axiom on all basis tuples and records the
    /// lexicographically first failing tuple per axiom. The kv-poisson
    /// verdict is skew ∧ nilpotent and reuses the failing component's
    /// witness.
    pub fn axiom_audit(&self) -> AuditReport {
        let n = self.dim;
        let mut verdicts = Vec::with_capacity(ALL_AXIOMS.len());

        let pair_scan = |residual: &dyn Fn(usize, usize) -> Vec<Rat>| -> Option<Witness> {
            for i in 0..n {
                for j in 0..n {
                    let r = residual(i, j);
                    if !vec_is_zero(&r) {
                        return Some(Witness {
                            tuple: vec![i + 1, j + 1],
                            residual: r,
                        });
                    }
                }
            }
            None
        };
        let symmetric = pair_scan(&|i, j| vec_sub(&self.product_basis(i, j), &self.product_basis(j, i)));
        let skew = pair_scan(&|i, j| vec_add(&self.product_basis(i, j), &self.product_basis(j, i)));

        let triple_scan = |residual: &dyn Fn(&[Rat], &[Rat], &[Rat]) -> Vec<Rat>| -> Option<Witness> {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let r = residual(&self.basis(a), &self.basis(b), &self.basis(c));
                        if !vec_is_zero(&r) {
                            return Some(Witness {
                                tuple: vec![a + 1, b + 1, c + 1],
                                residual: r,
                            });
                        }
                    }
                }
            }
            None
        };
        let kv = triple_scan(&|a, b, c| self.kv_anomaly(a, b, c).expect("basis vectors"));
        let jacobi = triple_scan(&|u, v, w| self.jacobiator(u, v, w).expect("basis vectors"));
        let leibniz = triple_scan(&|u, v, w| self.leibniz_residual(u, v, w).expect("basis vectors"));
        let nilpotent = triple_scan(&|w, u, v| self.nilpotency_residual(w, u, v).expect("basis vectors"));

        let kv_poisson = match (&skew, &nilpotent) {
            (None, None) => None,
            (Some(w), _) => Some(w.clone()),
            (None, Some(w)) => Some(w.clone()),
        };

        for (axiom, witness) in [
            (Axiom::Symmetric, symmetric),
            (Axiom::Skew, skew),
            (Axiom::Kv, kv),
            (Axiom::Jacobi, jacobi),
            (Axiom::LeibnizSelf, leibniz),
            (Axiom::Nilpotent, nilpotent),
            (Axiom::KvPoisson, kv_poisson),
        ] {
            verdicts.push(AxiomVerdict {
                axiom,
                passed: witness.is_none(),
                witness,
            });
        }
        AuditReport { verdicts }
    }
}

pub(crate) fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
