//! Alternating-cochain complex of a bracket acting on itself.
//!
//! For a product μ on V (adjoint action a·ξ = μ(a, ξ)), the degree-q space
//! is Hom(Λ^q V, V) with dimension binom(n, q)·n and the coboundary is
//!
//!   (δ^q f)(a₁,…,a_{q+1}) = Σ_i (−1)^{i+1} μ(a_i, f(a₁,…,â_i,…,a_{q+1}))
//!                         + Σ_{i<j} (−1)^{i+j} f(μ(a_i,a_j), a₁,…,â_i,…,â_j,…)
//!
//! (1-based argument indexing; the opposite overall sign convention would
//! change none of the ranks below). Matrices are assembled in a fixed basis
//! ordering — strictly increasing input tuples in lexicographic order with
//! the output index varying fastest — so they are bit-reproducible.
//!
//! The complex identity δ^{q+1} ∘ δ^q = 0 needs the bracket to be skew AND
//! Jacobi; a Jacobi check alone does not imply it (a non-skew product can
//! have a vanishing jacobiator on every basis triple while its adjoint map
//! fails to be a homomorphism). [`complex_report`] therefore refuses both
//! on a Jacobi witness and on an exact square-zero failure.

use crate::algebra::BilinearStructure;
use crate::complex::{ComplexError, ComplexReport, DegreeRow};
use crate::exactla::{nullspace_basis, rank, Matrix, Rat};
use num::Zero;

/// binom(n, k).
fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Strictly increasing q-tuples over 0..n in lexicographic order.
fn increasing_tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    if q > n {
        return Vec::new();
    }
    if q == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::with_capacity(binom(n, q));
    let mut cur: Vec<usize> = (0..q).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = q;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - q {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..q {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Sorts an index tuple, returning the permutation sign, or `None` when an
/// index repeats (the alternating evaluation is then zero).
fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = tuple.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

/// dim Hom(Λ^q V, V) = binom(n, q)·n; zero past q = n.
pub fn cochain_dim(n: usize, q: usize) -> usize {
    binom(n, q) * n
}

/// An alternating q-cochain, stored as coefficients in the canonical basis
/// order (increasing input tuples lexicographically, output index fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeCochain {
    pub dim_v: usize,
    pub degree: usize,
    pub coeffs: Vec<Rat>,
}

impl CeCochain {
    /// Value of the cochain on basis arguments (alternating extension).
    pub fn value_at(&self, args: &[usize]) -> Vec<Rat> {
        assert_eq!(args.len(), self.degree);
        let n = self.dim_v;
        let mut out = vec![Rat::zero(); n];
        let Some((sorted, sign)) = sort_with_sign(args) else {
            return out;
        };
        let tuples = increasing_tuples(n, self.degree);
        let Ok(pos) = tuples.binary_search(&sorted) else {
            return out;
        };
        for (k, slot) in out.iter_mut().enumerate() {
            let coeff = &self.coeffs[pos * n + k];
            *slot = if sign < 0 { -coeff } else { coeff.clone() };
        }
        out
    }
}

/// Matrix of δ^q from degree q to degree q+1 in the canonical bases.
/// Past q = n both spaces are zero and the matrix is empty.
pub fn delta_matrix(mu: &BilinearStructure, q: usize) -> Matrix {
    let n = mu.dim();
    let cols_tuples = increasing_tuples(n, q);
    let rows_tuples = increasing_tuples(n, q + 1);
    let rows = rows_tuples.len() * n;
    let cols = cols_tuples.len() * n;
    let mut m = Matrix::zero(rows, cols);

    for (t_pos, t) in cols_tuples.iter().enumerate() {
        for k in 0..n {
            let col = t_pos * n + k;
            for (s_pos, s) in rows_tuples.iter().enumerate() {
                // value of δ(E_{t,k}) on the basis tuple s, accumulated into
                // the output coordinates of row block s_pos
                let mut value = vec![Rat::zero(); n];

                // Σ_i ±μ(a_i, f(a minus i))
                for (i, &si) in s.iter().enumerate() {
                    let mut rest: Vec<usize> = s.clone();
                    rest.remove(i);
                    if &rest != t {
                        continue;
                    }
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for (out, v) in value.iter_mut().zip(mu.product_basis(si, k)) {
                        if sign > 0 {
                            *out += v;
                        } else {
                            *out -= v;
                        }
                    }
                }

                // Σ_{i<j} ±f(μ(a_i,a_j), rest)
                for i in 0..s.len() {
                    for j in i + 1..s.len() {
                        let pair_sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        let mut rest: Vec<usize> = s.clone();
                        rest.remove(j);
                        rest.remove(i);
                        for l in 0..n {
                            let c = mu.c(s[i], s[j], l);
                            if c.is_zero() {
                                continue;
                            }
                            let mut args = Vec::with_capacity(q);
                            args.push(l);
                            args.extend_from_slice(&rest);
                            let Some((sorted, perm_sign)) = sort_with_sign(&args) else {
                                continue;
                            };
                            if &sorted != t {
                                continue;
                            }
                            let total = pair_sign * perm_sign;
                            if total > 0 {
                                value[k] += c;
                            } else {
                                value[k] -= c;
                            }
                        }
                    }
                }

                for (m_idx, v) in value.into_iter().enumerate() {
                    if !v.is_zero() {
                        *m.at_mut(s_pos * n + m_idx, col) = v;
                    }
                }
            }
        }
    }
    m
}

/// Per-degree dims/ranks/kernels with the betti formula, without any
/// precondition gate. Ranks of conjugate matrices are equal, so these
/// numbers are invariant under change of basis and nonzero scaling even
/// for inputs where the table is not cohomology.
pub fn degree_table(mu: &BilinearStructure, q_max: usize) -> Vec<DegreeRow> {
    let deltas: Vec<Matrix> = (0..=q_max + 1).map(|q| delta_matrix(mu, q)).collect();
    let ranks: Vec<usize> = deltas.iter().map(rank).collect();
    (0..=q_max)
        .map(|q| {
            let dim = cochain_dim(mu.dim(), q);
            let kernel = dim - ranks[q];
            let prev = if q == 0 { 0 } else { ranks[q - 1] };
            let composed = deltas[q + 1].mul(&deltas[q]).expect("chained shapes");
            DegreeRow {
                degree: q,
                dim,
                rank: ranks[q],
                kernel,
                betti: kernel as i64 - prev as i64,
                square_zero_next: composed.is_zero(),
            }
        })
        .collect()
}

/// Cohomology table for degrees 0..=q_max.
///
/// Refuses with a witness when the jacobiator is nonzero on some basis
/// triple, and with a square-zero diagnostic when the assembled
/// coboundaries fail δ∘δ = 0 (possible for non-skew products even when
/// every basis jacobiator vanishes).
pub fn complex_report(mu: &BilinearStructure, q_max: usize) -> Result<ComplexReport, ComplexError> {
    if mu.dim() > 6 {
        return Err(ComplexError::SizeGuard {
            detail: format!("dimension {} exceeds the supported bound 6", mu.dim()),
        });
    }
    if let Some(w) = jacobi_witness(mu) {
        return Err(ComplexError::NotJacobi { witness: w });
    }
    let rows = degree_table(mu, q_max);
    if let Some(bad) = rows.iter().find(|r| !r.square_zero_next) {
        return Err(ComplexError::NotComplex { degree: bad.degree });
    }
    Ok(ComplexReport { rows })
}

/// First basis triple with nonzero jacobiator, if any (tuple is 1-based).
pub fn jacobi_witness(mu: &BilinearStructure) -> Option<crate::algebra::Witness> {
    mu.axiom_audit()
        .verdict(crate::algebra::Axiom::Jacobi)
        .witness
        .clone()
}

/// Echelon-normalized basis of ker δ^q, decoded into cochains.
pub fn cocycle_basis(mu: &BilinearStructure, q: usize) -> Vec<CeCochain> {
    nullspace_basis(&delta_matrix(mu, q))
        .into_iter()
        .map(|coeffs| CeCochain {
            dim_v: mu.dim(),
            degree: q,
            coeffs,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, subspace_equal, vec_is_zero};
    use num::One;

    fn family(x0: i64, y0: i64) -> BilinearStructure {
        BilinearStructure::dim2_skew(rat(x0), rat(y0))
    }

    #[test]
    fn cochain_dims() {
        assert_eq!(cochain_dim(2, 0), 2);
        assert_eq!(cochain_dim(2, 1), 4);
        assert_eq!(cochain_dim(2, 2), 2);
        assert_eq!(cochain_dim(2, 3), 0);
        assert_eq!(cochain_dim(3, 2), 9);
    }

    #[test]
    fn increasing_tuples_are_lexicographic() {
        assert_eq!(
            increasing_tuples(3, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(increasing_tuples(2, 0), vec![Vec::<usize>::new()]);
        assert!(increasing_tuples(2, 3).is_empty());
    }

    #[test]
    fn delta0_of_family_matches_closed_form() {
        // column ξ = e_k, row (a, m): coefficient of e_m in μ(e_a, ξ)
        let m = delta_matrix(&family(1, 2), 0);
        assert_eq!(m.rows(), 4);
        assert_eq!(m.cols(), 2);
        let expect = [
            [0i64, 1], // f(e₀) out 0: x0·ξ₂
            [0, 2],    // f(e₀) out 1: y0·ξ₂
            [-1, 0],   // f(e₁) out 0: −x0·ξ₁
            [-2, 0],   // f(e₁) out 1: −y0·ξ₁
        ];
        for r in 0..4 {
            for c in 0..2 {
                assert_eq!(m.at(r, c), &rat(expect[r][c]), "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn delta_of_zero_structure_is_zero() {
        let zero = BilinearStructure::zero(2);
        for q in 0..=2 {
            assert!(delta_matrix(&zero, q).is_zero());
        }
    }

    #[test]
    fn delta2_has_empty_codomain_in_dim2() {
        let m = delta_matrix(&family(1, 0), 2);
        assert_eq!(m.rows(), 0);
        assert_eq!(m.cols(), 2);
    }

    #[test]
    fn delta1_rank_for_nonzero_family() {
        assert_eq!(rank(&delta_matrix(&family(1, 0), 1)), 2);
    }

    /// Independent evaluator: applies the degree-q coboundary formula
    /// directly to a cochain, without going through the matrix.
    fn delta_direct(mu: &BilinearStructure, f: &CeCochain, args: &[usize]) -> Vec<Rat> {
        let n = mu.dim();
        let mut out = vec![Rat::zero(); n];
        for (i, &ai) in args.iter().enumerate() {
            let mut rest = args.to_vec();
            rest.remove(i);
            let basis_a: Vec<Rat> = (0..n).map(|m| if m == ai { Rat::one() } else { Rat::zero() }).collect();
            let fv = f.value_at(&rest);
            let term = mu.evaluate(&basis_a, &fv).unwrap();
            for (o, t) in out.iter_mut().zip(term) {
                if i % 2 == 0 {
                    *o += t;
                } else {
                    *o -= t;
                }
            }
        }
        for i in 0..args.len() {
            for j in i + 1..args.len() {
                let mut rest = args.to_vec();
                rest.remove(j);
                rest.remove(i);
                for l in 0..n {
                    let c = mu.c(args[i], args[j], l).clone();
                    if c.is_zero() {
                        continue;
                    }
                    let mut inner = vec![l];
                    inner.extend_from_slice(&rest);
                    let fv = f.value_at(&inner);
                    for (o, t) in out.iter_mut().zip(fv) {
                        if (i + j) % 2 == 0 {
                            *o += c.clone() * t;
                        } else {
                            *o -= c.clone() * t;
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn matrix_agrees_with_direct_formula() {
        let mu = family(2, 3);
        for q in [1usize, 2] {
            let m = delta_matrix(&mu, q);
            let dim = cochain_dim(2, q);
            for col in 0..dim {
                let mut coeffs = vec![Rat::zero(); dim];
                coeffs[col] = rat(1);
                let f = CeCochain { dim_v: 2, degree: q, coeffs: coeffs.clone() };
                let image = m.mul_vec(&coeffs).unwrap();
                // decode image rows back to (tuple, out) and compare
                let tuples = increasing_tuples(2, q + 1);
                for (s_pos, s) in tuples.iter().enumerate() {
                    let direct = delta_direct(&mu, &f, s);
                    for k in 0..2 {
                        assert_eq!(image[s_pos * 2 + k], direct[k]);
                    }
                }
            }
        }
    }

    #[test]
    fn report_family_nonzero_is_acyclic() {
        for (x0, y0) in [(1, 0), (0, 1), (2, 3), (0, 5)] {
            let report = complex_report(&family(x0, y0), 2).unwrap();
            assert_eq!(report.betti(), vec![0, 0, 0], "({x0},{y0})");
        }
    }

    #[test]
    fn report_zero_family_is_full() {
        let report = complex_report(&family(0, 0), 2).unwrap();
        assert_eq!(report.betti(), vec![2, 4, 2]);
    }

    #[test]
    fn report_refuses_non_jacobi_input() {
        let mut mu = BilinearStructure::zero(2);
        mu.set_c(0, 0, 0, rat(1)); // jacobiator(e₀,e₀,e₀) = 3e₀
        match complex_report(&mu, 2) {
            Err(ComplexError::NotJacobi { witness }) => {
                assert_eq!(witness.tuple, vec![1, 1, 1]);
            }
            other => panic!("expected Jacobi refusal, got {other:?}"),
        }
    }

    #[test]
    fn report_refuses_when_not_a_complex() {
        // μ(e₀,e₁) = e₀: every nested product vanishes, so the jacobiator is
        // zero on all basis triples, but the product is not skew and
        // δ¹∘δ⁰ ≠ 0.
        let mut mu = BilinearStructure::zero(2);
        mu.set_c(0, 1, 0, rat(1));
        assert!(jacobi_witness(&mu).is_none());
        match complex_report(&mu, 2) {
            Err(ComplexError::NotComplex { degree: 0 }) => {}
            other => panic!("expected square-zero refusal, got {other:?}"),
        }
    }

    #[test]
    fn cocycles_of_family_match_matrix_units() {
        // kernel of δ¹ at (1,0) is spanned by E₁₁ (e₀↦e₀) and E₁₂ (e₁↦e₀):
        // canonical coordinates 0 and 2
        let basis: Vec<Vec<Rat>> = cocycle_basis(&family(1, 0), 1)
            .into_iter()
            .map(|c| c.coeffs)
            .collect();
        let e11 = vec![rat(1), rat(0), rat(0), rat(0)];
        let e12 = vec![rat(0), rat(0), rat(1), rat(0)];
        assert!(subspace_equal(&basis, &[e11, e12]).unwrap());

        let all: Vec<Vec<Rat>> = cocycle_basis(&family(0, 0), 1)
            .into_iter()
            .map(|c| c.coeffs)
            .collect();
        assert_eq!(all.len(), 4);

        assert!(cocycle_basis(&family(1, 1), 0).is_empty());
    }

    #[test]
    fn cochain_value_alternates() {
        let f = CeCochain {
            dim_v: 2,
            degree: 2,
            coeffs: vec![rat(5), rat(7)], // f(e₀,e₁) = 5e₀ + 7e₁
        };
        assert_eq!(f.value_at(&[0, 1]), vec![rat(5), rat(7)]);
        assert_eq!(f.value_at(&[1, 0]), vec![rat(-5), rat(-7)]);
        assert!(vec_is_zero(&f.value_at(&[1, 1])));
    }

    #[test]
    fn square_zero_for_skew_structures() {
        for (x0, y0) in [(1, 0), (0, 1), (2, 3), (-5, 7)] {
            let mu = family(x0, y0);
            for q in 0..=2 {
                let d_next = delta_matrix(&mu, q + 1);
                let d = delta_matrix(&mu, q);
                assert!(d_next.mul(&d).unwrap().is_zero(), "({x0},{y0}) at q={q}");
            }
        }
    }

    #[test]
    fn dim3_bracket_sanity() {
        // cross-product-like bracket on dim 3: [e₀,e₁]=e₂, [e₁,e₂]=e₀, [e₂,e₀]=e₁
        let mut mu = BilinearStructure::zero(3);
        for (i, j, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
            mu.set_c(i, j, k, rat(1));
            mu.set_c(j, i, k, rat(-1));
        }
        let report = complex_report(&mu, 3).unwrap();
        // simple Lie algebra: H⁰ through H³ all vanish (Whitehead)
        assert_eq!(report.betti(), vec![0, 0, 0, 0]);
        let dims: Vec<usize> = report.rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![3, 9, 9, 3]);
    }
}
