//! Built-in verification battery.
//!
//! Runs the workbench's eight headline checks — cohomology tables for the
//! dim-2 skew family, cocycle spans, the reduced constraint system with its
//! two-axes discrepancy flag, oracle agreement between the exact solve and
//! grid scans, the square-zero gates, invariance of the tables under basis
//! change and scaling, and the audit property suite — and reports one
//! pass/fail line per check. All randomness is seeded, so the battery output
//! is identical across runs.

use crate::algebra::{Axiom, BilinearStructure};
use crate::classify::{self, Variety};
use crate::exactla::{rank, rat, ratio, subspace_equal, Matrix, Rat};
use crate::{ce, kv};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one battery check.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs the full battery in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        cohomology_nonzero_family(),
        cohomology_zero_family(),
        cocycle_spans(),
        constraint_system_reproduction(),
        oracle_agreement(),
        square_zero_gates(),
        invariance_suite(),
        audit_property_suite(),
    ]
}

fn result(id: usize, name: &'static str, passed: bool, detail: String) -> CriterionResult {
    CriterionResult {
        id,
        name,
        passed,
        detail,
    }
}

fn family(x0: i64, y0: i64) -> BilinearStructure {
    BilinearStructure::dim2_skew(rat(x0), rat(y0))
}

/// Check 1: the alternating complex of every nonzero family member is
/// acyclic in degrees 0..2.
pub fn cohomology_nonzero_family() -> CriterionResult {
    let mut failures = Vec::new();
    for (x0, y0) in [(1, 0), (0, 1), (2, 3), (0, 5)] {
        match ce::complex_report(&family(x0, y0), 2) {
            Ok(report) if report.betti() == vec![0, 0, 0] => {}
            Ok(report) => failures.push(format!("({x0},{y0}) betti {:?}", report.betti())),
            Err(e) => failures.push(format!("({x0},{y0}) refused: {e}")),
        }
    }
    let passed = failures.is_empty();
    result(
        1,
        "betti (0,0,0) for nonzero family members",
        passed,
        if passed {
            "(1,0),(0,1),(2,3),(0,5) all acyclic".to_string()
        } else {
            failures.join("; ")
        },
    )
}

/// Check 2: the zero product has betti (2, 4, 2).
pub fn cohomology_zero_family() -> CriterionResult {
    match ce::complex_report(&family(0, 0), 2) {
        Ok(report) => {
            let betti = report.betti();
            let passed = betti == vec![2, 4, 2];
            result(2, "betti (2,4,2) for the zero product", passed, format!("betti {betti:?}"))
        }
        Err(e) => result(2, "betti (2,4,2) for the zero product", false, e.to_string()),
    }
}

/// Check 3: degree-1 cocycle spans match the expected matrix-unit spans.
pub fn cocycle_spans() -> CriterionResult {
    let basis_10: Vec<Vec<Rat>> = ce::cocycle_basis(&family(1, 0), 1)
        .into_iter()
        .map(|c| c.coeffs)
        .collect();
    // E₁₁: e₀ ↦ e₀ is canonical coordinate 0; E₁₂: e₁ ↦ e₀ is coordinate 2
    let e11 = vec![rat(1), rat(0), rat(0), rat(0)];
    let e12 = vec![rat(0), rat(0), rat(1), rat(0)];
    let span_10 = subspace_equal(&basis_10, &[e11, e12]).expect("4-long vectors");

    let basis_00: Vec<Vec<Rat>> = ce::cocycle_basis(&family(0, 0), 1)
        .into_iter()
        .map(|c| c.coeffs)
        .collect();
    let units: Vec<Vec<Rat>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect();
    let span_00 = subspace_equal(&basis_00, &units).expect("4-long vectors");

    let passed = span_10 && span_00;
    result(
        3,
        "degree-1 cocycle spans",
        passed,
        format!("(1,0): span{{E11,E12}} = {span_10}; (0,0): full Hom(V,V) = {span_00}"),
    )
}

/// Check 4: the reduced skew+nilpotency system contains x0², x0·y0 and y0²
/// as monic generators, and the two-axes discrepancy flag is raised.
pub fn constraint_system_reproduction() -> CriterionResult {
    match classify::dim2_skew_solve(&[Axiom::Nilpotent]) {
        Ok(report) => {
            let printed: Vec<String> =
                report.reduced_system.iter().map(|p| p.to_string()).collect();
            let has_x2 = printed.iter().any(|s| s == "v[1][2][1]^2");
            let has_xy = printed.iter().any(|s| s == "v[1][2][1]*v[1][2][2]");
            let has_y2 = printed.iter().any(|s| s == "v[1][2][2]^2");
            let flagged = !report.flags.is_empty();
            let origin = report.variety == Variety::Origin;
            let passed = has_x2 && has_xy && has_y2 && flagged && origin;
            result(
                4,
                "reduced constraint system and discrepancy flag",
                passed,
                format!(
                    "x0^2: {has_x2}, x0*y0: {has_xy}, y0^2: {has_y2}, variety {}, flag raised: {flagged}",
                    report.variety
                ),
            )
        }
        Err(e) => result(4, "reduced constraint system and discrepancy flag", false, e.to_string()),
    }
}

/// Check 5: the exact solve and the grid scan agree on the solution set of
/// all Poisson axioms at once, and that set is pencil-closed.
pub fn oracle_agreement() -> CriterionResult {
    let all = [
        Axiom::Skew,
        Axiom::Jacobi,
        Axiom::Kv,
        Axiom::Nilpotent,
        Axiom::LeibnizSelf,
    ];
    let solve = match classify::dim2_skew_solve(&all) {
        Ok(r) => r,
        Err(e) => return result(5, "solve/scan oracle agreement", false, e.to_string()),
    };
    let scan = match classify::grid_scan(2, 2, 2, &all) {
        Ok(s) => s,
        Err(e) => return result(5, "solve/scan oracle agreement", false, e.to_string()),
    };

    // every grid point must be kept iff it lies in the computed variety
    let mut agree = true;
    let steps: Vec<Rat> = (-4i64..=4).map(|t| Rat::new(t.into(), 2.into())).collect();
    for x0 in &steps {
        for y0 in &steps {
            let mu = BilinearStructure::dim2_skew(x0.clone(), y0.clone());
            let kept = all.iter().all(|&a| mu.satisfies(a));
            if kept != solve.variety.contains(x0, y0) {
                agree = false;
            }
        }
    }
    let scan_matches = solve.variety == Variety::Origin && scan.len() == 1 && scan[0].is_zero();
    let pencil = classify::pencil_closure_check(&scan, &all, 100, classify::DEFAULT_SEED)
        .map(|r| r.closed)
        .unwrap_or(false);
    let passed = agree && scan_matches && pencil;
    result(
        5,
        "solve/scan oracle agreement",
        passed,
        format!(
            "pointwise agreement: {agree}; scan survivors = {{zero}}: {scan_matches}; pencil-closed: {pencil}"
        ),
    )
}

/// Check 6: square-zero gates. The alternating coboundaries compose to zero
/// for 200 random skew dim-2 products, and the multilinear coboundaries
/// compose to zero at degrees 1 and 2 for every KV structure found by a
/// bound-1 integer grid scan.
pub fn square_zero_gates() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a5a_0006);
    let mut ce_ok = true;
    for _ in 0..200 {
        let mu = BilinearStructure::dim2_skew(random_rat(&mut rng, 5, 4), random_rat(&mut rng, 5, 4));
        for q in 0..=2 {
            let composed = ce::delta_matrix(&mu, q + 1)
                .mul(&ce::delta_matrix(&mu, q))
                .expect("chained shapes");
            if !composed.is_zero() {
                ce_ok = false;
            }
        }
    }

    let kv_structures = match classify::grid_scan(2, 1, 1, &[Axiom::Kv]) {
        Ok(s) => s,
        Err(e) => return result(6, "square-zero gates", false, e.to_string()),
    };
    let mut kv_ok = true;
    let mut kv_count = 0usize;
    for mu in &kv_structures {
        kv_count += 1;
        for q in 1..=2 {
            if !kv::square_zero_check(mu, q).holds {
                kv_ok = false;
            }
        }
    }
    let passed = ce_ok && kv_ok;
    result(
        6,
        "square-zero gates",
        passed,
        format!("alternating: 200 random skew products ok: {ce_ok}; multilinear: {kv_count} KV structures ok: {kv_ok}"),
    )
}

/// Check 7: betti columns of both complexes are invariant under 50 random
/// invertible basis changes and under the scalings 1/2, −3, 7.
pub fn invariance_suite() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a5a_0007);
    let subjects = [family(1, 0), family(0, 1), family(2, 3), family(0, 5), family(0, 0)];
    let mut ok = true;
    let mut detail = String::new();
    for mu in &subjects {
        let ce_base: Vec<i64> = ce::degree_table(mu, 2).iter().map(|r| r.betti).collect();
        let kv_base: Vec<i64> = kv::degree_table(mu, 2).iter().map(|r| r.betti).collect();
        for _ in 0..50 {
            let p = random_invertible(&mut rng, 2);
            let conj = mu.change_basis(&p).expect("invertible");
            let ce_now: Vec<i64> = ce::degree_table(&conj, 2).iter().map(|r| r.betti).collect();
            let kv_now: Vec<i64> = kv::degree_table(&conj, 2).iter().map(|r| r.betti).collect();
            if ce_now != ce_base || kv_now != kv_base {
                ok = false;
                detail = format!("basis change changed a betti column for {:?}", mu.constants());
            }
        }
        for lambda in [ratio(1, 2), rat(-3), rat(7)] {
            let scaled = mu.scale(&lambda);
            let ce_now: Vec<i64> = ce::degree_table(&scaled, 2).iter().map(|r| r.betti).collect();
            let kv_now: Vec<i64> = kv::degree_table(&scaled, 2).iter().map(|r| r.betti).collect();
            if ce_now != ce_base || kv_now != kv_base {
                ok = false;
                detail = "scaling changed a betti column".to_string();
            }
        }
    }
    if ok {
        detail = "5 structures × (50 basis changes + 3 scalings), both complexes".to_string();
    }
    result(7, "betti invariance under basis change and scaling", ok, detail)
}

/// Check 8: audit implications on 1000 random dim-2 structures (half of
/// them skew): skew ∧ nilpotent ⟹ kv, skew ∧ kv ⟹ nilpotent, skew ⟹
/// Jacobi in dim 2, and verdicts are invariant under nonzero scaling.
pub fn audit_property_suite() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a5a_0008);
    let mut ok = true;
    let mut detail = String::new();
    for trial in 0..1000 {
        let mu = if trial % 2 == 0 {
            random_structure_dim2(&mut rng)
        } else {
            random_structure_dim2(&mut rng).antisymmetrize()
        };
        let skew = mu.satisfies(Axiom::Skew);
        let nilpotent = mu.satisfies(Axiom::Nilpotent);
        let kv_ax = mu.satisfies(Axiom::Kv);
        if skew && nilpotent && !kv_ax {
            ok = false;
            detail = format!("skew ∧ nilpotent without kv at trial {trial}");
        }
        if skew && kv_ax && !nilpotent {
            ok = false;
            detail = format!("skew ∧ kv without nilpotent at trial {trial}");
        }
        if skew && !mu.satisfies(Axiom::Jacobi) {
            ok = false;
            detail = format!("skew without Jacobi at trial {trial}");
        }
        if trial % 10 == 0 {
            let before = mu.axiom_audit();
            let lambda = random_nonzero_rat(&mut rng);
            let after = mu.scale(&lambda).axiom_audit();
            for (b, a) in before.verdicts.iter().zip(&after.verdicts) {
                if b.passed != a.passed {
                    ok = false;
                    detail = format!("verdict for {} changed under scaling at trial {trial}", b.axiom);
                }
            }
        }
    }
    if ok {
        detail = "1000 structures, implications and scaling invariance hold".to_string();
    }
    result(8, "audit property suite", ok, detail)
}

fn random_rat(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rat {
    let den = rng.random_range(1..=max_den);
    let num = rng.random_range(-bound * den..=bound * den);
    Rat::new(num.into(), den.into())
}

fn random_nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = random_rat(rng, 4, 3);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_structure_dim2(rng: &mut ChaCha8Rng) -> BilinearStructure {
    let mut mu = BilinearStructure::zero(2);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                mu.set_c(i, j, k, random_rat(rng, 3, 3));
            }
        }
    }
    mu
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| random_rat(rng, 4, 2));
        if rank(&m) == n {
            return m;
        }
    }
}
