//! Unrestricted-multilinear cochain complex of a KV algebra on itself.
//!
//! The degree-q space is all q-multilinear maps V^q → V (dimension n^q·n,
//! no alternation). For q ≥ 1 the coboundary is
//!
//!   δ^q f(a₁,…,a_{q+1}) = Σ_{j=1}^{q} (−1)^j { (a_j·f)(a₁,…,â_j,…,a_{q+1})
//!                          + μ(f(a₁,…,â_j,…,â_{q+1}, a_j), a_{q+1}) }
//!
//! with the bimodule action (a·f)(x₁,…,x_q) = μ(a, f(x₁,…,x_q))
//! − Σ_p f(x₁,…,μ(a,x_p),…,x_q): the insertion map places a_j in the last
//! remaining slot before the right factor a_{q+1} multiplies from the right.
//! At degree 1 this reduces (up to overall sign) to the familiar
//! f ↦ μ(a, f(b)) − f(μ(a,b)) + μ(f(a), b), and δ^{q+1} ∘ δ^q = 0 follows
//! from the KV identity alone for q ≥ 1. [`square_zero_check`] verifies
//! that composition exactly; a failure on a KV-audited input would falsify
//! the operator reading and is treated as fatal by [`complex_report`].
//!
//! Degree 0 is not covered by the formula (the sum is empty); the adopted
//! convention is the commutator action δ⁰ξ(a) = μ(a,ξ) − μ(ξ,a), which for
//! skew products is twice the adjoint coboundary and hence rank-equivalent
//! to it. For a non-associative KV algebra this δ⁰ need not satisfy
//! δ¹∘δ⁰ = 0 (the defect is the associator Ass(a,b,ξ)); the report keeps
//! the junction-0 status as a flag instead of refusing, and the betti
//! column is signed for that reason.

use crate::algebra::{Axiom, BilinearStructure};
use crate::complex::{ComplexError, ComplexReport, DegreeRow};
use crate::exactla::{rank, Matrix, Rat};
use num::Zero;

/// dim of the degree-q space: n^q · n.
pub fn cochain_dim(n: usize, q: usize) -> usize {
    n.pow(q as u32) * n
}

/// A q-multilinear cochain in the canonical basis order (input q-tuples
/// lexicographically, output index fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KvCochain {
    pub dim_v: usize,
    pub degree: usize,
    pub coeffs: Vec<Rat>,
}

impl KvCochain {
    /// Value on basis arguments (plain table lookup, no alternation).
    pub fn value_at(&self, args: &[usize]) -> Vec<Rat> {
        assert_eq!(args.len(), self.degree);
        let n = self.dim_v;
        let pos = tuple_index(args, n);
        (0..n).map(|k| self.coeffs[pos * n + k].clone()).collect()
    }
}

fn tuple_index(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * n + t)
}

/// All q-tuples over 0..n in lexicographic order.
fn all_tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(n.pow(q as u32));
    let mut cur = vec![0usize; q];
    loop {
        out.push(cur.clone());
        let mut i = q;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
            if i == 0 {
                return out;
            }
        }
    }
}

/// Matrix of δ^q from degree q to degree q+1 in the canonical bases.
/// Degree 0 is the adopted commutator action ξ ↦ (a ↦ μ(a,ξ) − μ(ξ,a)).
pub fn delta_matrix(mu: &BilinearStructure, q: usize) -> Matrix {
    let n = mu.dim();
    if q == 0 {
        // rows (a, m), cols k: coefficient of e_m in μ(e_a, e_k) − μ(e_k, e_a)
        let mut m = Matrix::zero(n * n, n);
        for a in 0..n {
            for out in 0..n {
                for k in 0..n {
                    let v = mu.c(a, k, out) - mu.c(k, a, out);
                    if !v.is_zero() {
                        *m.at_mut(a * n + out, k) = v;
                    }
                }
            }
        }
        return m;
    }

    let col_tuples = all_tuples(n, q);
    let row_tuples = all_tuples(n, q + 1);
    let mut m = Matrix::zero(row_tuples.len() * n, col_tuples.len() * n);

    for (s_pos, s) in row_tuples.iter().enumerate() {
        let last = s[q];
        for j in 0..q {
            // 1-based sign (−1)^{j+1}
            let neg = j % 2 == 0;
            let aj = s[j];
            let mut l_args: Vec<usize> = s.clone();
            l_args.remove(j);

            // term A: μ(a_j, f(L)) with f = E_{T,k}, nonzero only for T = L
            let t_pos = tuple_index(&l_args, n);
            for k in 0..n {
                let col = t_pos * n + k;
                for out in 0..n {
                    let c = mu.c(aj, k, out);
                    if c.is_zero() {
                        continue;
                    }
                    let cell = m.at_mut(s_pos * n + out, col);
                    if neg {
                        *cell -= c;
                    } else {
                        *cell += c;
                    }
                }
            }

            // term B: − Σ_p f(L with slot p multiplied into by a_j); for the
            // basis cochain E_{T,k} only T agreeing with L off slot p
            // contributes, with coefficient c[a_j][L[p]][T[p]]
            for p in 0..q {
                let orig = l_args[p];
                for repl in 0..n {
                    let c = mu.c(aj, orig, repl);
                    if c.is_zero() {
                        continue;
                    }
                    let mut t = l_args.clone();
                    t[p] = repl;
                    let col = tuple_index(&t, n) * n; // + k below
                    for k in 0..n {
                        let cell = m.at_mut(s_pos * n + k, col + k);
                        if neg {
                            *cell += c;
                        } else {
                            *cell -= c;
                        }
                    }
                }
            }

            // term C: μ(f(a₁,…,â_j,…,â_{q+1}, a_j), a_{q+1})
            let mut c_args: Vec<usize> = s[..q].to_vec();
            c_args.remove(j);
            c_args.push(aj);
            let t_pos = tuple_index(&c_args, n);
            for k in 0..n {
                let col = t_pos * n + k;
                for out in 0..n {
                    let c = mu.c(k, last, out);
                    if c.is_zero() {
                        continue;
                    }
                    let cell = m.at_mut(s_pos * n + out, col);
                    if neg {
                        *cell -= c;
                    } else {
                        *cell += c;
                    }
                }
            }
        }
    }
    m
}

/// Outcome of the exact check δ^{q+1} ∘ δ^q = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareZero {
    pub degree: usize,
    pub holds: bool,
    /// On failure, a basis cochain whose double image is nonzero.
    pub witness: Option<KvCochain>,
}

/// Exact composition check for the junction starting at degree q.
pub fn square_zero_check(mu: &BilinearStructure, q: usize) -> SquareZero {
    let d_low = delta_matrix(mu, q);
    let d_high = delta_matrix(mu, q + 1);
    let composed = d_high.mul(&d_low).expect("chained shapes");
    if composed.is_zero() {
        return SquareZero {
            degree: q,
            holds: true,
            witness: None,
        };
    }
    let bad_col = (0..composed.cols())
        .find(|&c| (0..composed.rows()).any(|r| !composed.at(r, c).is_zero()))
        .expect("nonzero matrix has a nonzero column");
    let mut coeffs = vec![Rat::zero(); d_low.cols()];
    coeffs[bad_col] = num::One::one();
    SquareZero {
        degree: q,
        holds: false,
        witness: Some(KvCochain {
            dim_v: mu.dim(),
            degree: q,
            coeffs,
        }),
    }
}

/// Per-degree dims/ranks/kernels without the KV gate (see [`complex_report`]).
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

/// Cohomology table for degrees 0..=q_max (q_max ≤ 3).
///
/// Refuses when the KV anomaly is nonzero on a basis triple, and when the
/// formula-backed composition δ^{q+1}∘δ^q (q ≥ 1) fails to vanish — the
/// latter would mean the operator reading is wrong for this input and the
/// numbers would be meaningless. A junction-0 failure (possible for
/// non-associative KV algebras, where the adopted δ⁰ does not chain) is
/// reported via the row flag rather than refused.
pub fn complex_report(mu: &BilinearStructure, q_max: usize) -> Result<ComplexReport, ComplexError> {
    if q_max > 3 {
        return Err(ComplexError::SizeGuard {
            detail: format!("q_max {q_max} exceeds the supported bound 3"),
        });
    }
    let top_dim = cochain_dim(mu.dim(), q_max + 1);
    if top_dim > 2048 {
        return Err(ComplexError::SizeGuard {
            detail: format!("cochain space of dimension {top_dim} exceeds the supported bound 2048"),
        });
    }
    if let Some(w) = mu.axiom_audit().verdict(Axiom::Kv).witness.clone() {
        return Err(ComplexError::NotKv { witness: w });
    }
    let rows = degree_table(mu, q_max);
    if let Some(bad) = rows.iter().find(|r| r.degree >= 1 && !r.square_zero_next) {
        return Err(ComplexError::NotComplex { degree: bad.degree });
    }
    Ok(ComplexReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use num::One;

    #[test]
    fn cochain_dims() {
        assert_eq!(cochain_dim(2, 0), 2);
        assert_eq!(cochain_dim(2, 1), 4);
        assert_eq!(cochain_dim(2, 2), 8);
        assert_eq!(cochain_dim(3, 2), 27);
    }

    #[test]
    fn tuples_are_lexicographic() {
        assert_eq!(
            all_tuples(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(all_tuples(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn deltas_of_zero_structure_vanish() {
        let zero = BilinearStructure::zero(2);
        for q in 0..=3 {
            assert!(delta_matrix(&zero, q).is_zero());
        }
        let report = complex_report(&zero, 2).unwrap();
        assert_eq!(report.betti(), vec![2, 4, 8]);
    }

    /// Independent direct evaluator for the adopted coboundary formula.
    fn delta_direct(mu: &BilinearStructure, f: &KvCochain, args: &[usize]) -> Vec<Rat> {
        let n = mu.dim();
        let q = f.degree;
        assert_eq!(args.len(), q + 1);
        let basis = |i: usize| -> Vec<Rat> {
            (0..n).map(|m| if m == i { Rat::one() } else { Rat::zero() }).collect()
        };
        let mut out = vec![Rat::zero(); n];
        let add = |out: &mut Vec<Rat>, v: Vec<Rat>, neg: bool| {
            for (o, x) in out.iter_mut().zip(v) {
                if neg {
                    *o -= x;
                } else {
                    *o += x;
                }
            }
        };
        for j in 0..q {
            let neg = j % 2 == 0; // sign (−1)^{j+1}, 1-based
            let mut l_args = args.to_vec();
            l_args.remove(j);
            // a_j · f evaluated on l_args
            let a = basis(args[j]);
            add(&mut out, mu.evaluate(&a, &f.value_at(&l_args)).unwrap(), neg);
            for p in 0..q {
                // f with μ(a_j, ·) in slot p, expanded over basis outputs
                for repl in 0..n {
                    let c = mu.c(args[j], l_args[p], repl).clone();
                    if c.is_zero() {
                        continue;
                    }
                    let mut inner = l_args.clone();
                    inner[p] = repl;
                    let fv: Vec<Rat> = f.value_at(&inner).iter().map(|x| x * &c).collect();
                    add(&mut out, fv, !neg);
                }
            }
            // (f · a_{q+1}) with a_j inserted in the last slot
            let mut c_args: Vec<usize> = args[..q].to_vec();
            c_args.remove(j);
            c_args.push(args[j]);
            let fv = f.value_at(&c_args);
            add(&mut out, mu.evaluate(&fv, &basis(args[q])).unwrap(), neg);
        }
        out
    }

    #[test]
    fn matrix_agrees_with_direct_formula() {
        // a KV but non-associative product and a skew one
        let mut kv_struct = BilinearStructure::zero(2);
        kv_struct.set_c(1, 0, 0, rat(1));
        for mu in [kv_struct, BilinearStructure::dim2_skew(rat(2), rat(-3))] {
            for q in [1usize, 2] {
                let m = delta_matrix(&mu, q);
                let dim = cochain_dim(2, q);
                for col in 0..dim {
                    let mut coeffs = vec![Rat::zero(); dim];
                    coeffs[col] = rat(1);
                    let f = KvCochain { dim_v: 2, degree: q, coeffs: coeffs.clone() };
                    let image = m.mul_vec(&coeffs).unwrap();
                    for (s_pos, s) in all_tuples(2, q + 1).iter().enumerate() {
                        let direct = delta_direct(&mu, &f, s);
                        for k in 0..2 {
                            assert_eq!(image[s_pos * 2 + k], direct[k], "q={q} col={col} s={s:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree1_matches_standard_kv_coboundary() {
        // δ¹f(a,b) = −[ μ(a,f(b)) − f(μ(a,b)) + μ(f(a),b) ]
        let mut mu = BilinearStructure::zero(2);
        mu.set_c(1, 0, 0, rat(1));
        mu.set_c(0, 1, 1, rat(2));
        let m = delta_matrix(&mu, 1);
        for col in 0..4 {
            let mut coeffs = vec![Rat::zero(); 4];
            coeffs[col] = rat(1);
            let f = KvCochain { dim_v: 2, degree: 1, coeffs: coeffs.clone() };
            let image = m.mul_vec(&coeffs).unwrap();
            for (pair_pos, pair) in all_tuples(2, 2).iter().enumerate() {
                let (a, b) = (pair[0], pair[1]);
                let ea: Vec<Rat> = (0..2).map(|m| if m == a { rat(1) } else { rat(0) }).collect();
                let eb: Vec<Rat> = (0..2).map(|m| if m == b { rat(1) } else { rat(0) }).collect();
                let t1 = mu.evaluate(&ea, &f.value_at(&[b])).unwrap();
                // f(μ(e_a,e_b)) by linear extension over basis outputs
                let mut t2 = vec![rat(0); 2];
                for (l, coeff) in mu.product_basis(a, b).into_iter().enumerate() {
                    for (slot, x) in t2.iter_mut().zip(f.value_at(&[l])) {
                        *slot += &coeff * x;
                    }
                }
                let t3 = mu.evaluate(&f.value_at(&[a]), &eb).unwrap();
                for k in 0..2 {
                    let expect = -(&t1[k] - &t2[k] + &t3[k]);
                    assert_eq!(image[pair_pos * 2 + k], expect);
                }
            }
        }
    }

    #[test]
    fn square_zero_on_kv_structures() {
        // associative commutative: μ(e₀,e₀) = e₁
        let mut assoc = BilinearStructure::zero(2);
        assoc.set_c(0, 0, 1, rat(1));
        // KV but non-associative: μ(e₁,e₀) = e₀
        let mut pre_lie = BilinearStructure::zero(2);
        pre_lie.set_c(1, 0, 0, rat(1));
        for mu in [assoc, pre_lie] {
            assert!(mu.axiom_audit().passed(Axiom::Kv));
            for q in 1..=2 {
                assert!(square_zero_check(&mu, q).holds, "q={q}");
            }
        }
    }

    #[test]
    fn square_zero_failure_produces_witness() {
        // the skew family member is not KV; the degree-1 junction breaks
        let mu = BilinearStructure::dim2_skew(rat(1), rat(0));
        let check = square_zero_check(&mu, 1);
        assert!(!check.holds);
        let w = check.witness.unwrap();
        // recompute: the double image of the witness must be nonzero
        let image = delta_matrix(&mu, 2)
            .mul(&delta_matrix(&mu, 1))
            .unwrap()
            .mul_vec(&w.coeffs)
            .unwrap();
        assert!(image.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn golden_betti_for_associative_nilpotent_structure() {
        // μ(e₀,e₀) = e₁: commutative and associative, so the commutator δ⁰
        // vanishes; hand-computed table: betti (2, 2, 4)
        let mut mu = BilinearStructure::zero(2);
        mu.set_c(0, 0, 1, rat(1));
        let report = complex_report(&mu, 2).unwrap();
        assert_eq!(report.betti(), vec![2, 2, 4]);
        assert!(report.rows.iter().all(|r| r.square_zero_next));
    }

    #[test]
    fn non_associative_kv_breaks_junction_zero_only() {
        // μ(e₁,e₀) = e₀ is KV and non-associative: δ¹∘δ⁰ = Ass(·,·,ξ) ≠ 0,
        // so betti₁ is not a quotient dimension; the report flags row 0
        // instead of refusing.
        let mut mu = BilinearStructure::zero(2);
        mu.set_c(1, 0, 0, rat(1));
        let report = complex_report(&mu, 2).unwrap();
        assert!(!report.rows[0].square_zero_next);
        assert!(report.rows[1].square_zero_next);
        assert_eq!(report.rows[0].betti, 0); // ker δ⁰ = 0
        assert_eq!(report.rows[1].betti, -1); // ker δ¹ = 1, rank δ⁰ = 2
    }

    #[test]
    fn report_refuses_non_kv_input() {
        let mu = BilinearStructure::dim2_skew(rat(1), rat(0));
        match complex_report(&mu, 2) {
            Err(ComplexError::NotKv { witness }) => assert_eq!(witness.tuple, vec![1, 2, 2]),
            other => panic!("expected KV refusal, got {other:?}"),
        }
    }

    #[test]
    fn report_guards() {
        let zero = BilinearStructure::zero(2);
        assert!(matches!(
            complex_report(&zero, 4),
            Err(ComplexError::SizeGuard { .. })
        ));
        assert!(matches!(
            complex_report(&BilinearStructure::zero(5), 3),
            Err(ComplexError::SizeGuard { .. })
        ));
    }
}
