//! Polynomial constraint systems over structure constants and their exact
//! solution for dim-2 skew products.
//!
//! Every audited identity is (multi)linear in the product, so requiring it
//! on all basis tuples yields one polynomial per (identity, tuple, output
//! coordinate) in the slot variables v[i][j][k]: skew/symmetric constraints
//! are linear, all nested-product identities quadratic. For the dim-2 skew
//! family — every skew product on the plane is μ(u,v) = (u₀v₁−u₁v₀)·(x0,y0)
//! — substitution reduces each generator to a monomial in x0 = v[1][2][1]
//! and y0 = v[1][2][2], so the solution set is settled by exact case
//! analysis: a monomial vanishes on a point iff one of its variables does.
//! Monomial systems have the same solutions over ℚ and ℝ, and
//! [`dim2_skew_solve`] verifies the monomial shape instead of assuming it.
//!
//! The computed variety is compared against the often-quoted two-axes
//! family (x0,0) ∪ (0,y0); a structured discrepancy flag is raised whenever
//! the computation disagrees, with a sample point and its failing axioms as
//! the witness. Grid scans provide the independent brute-force oracle.

use crate::algebra::{Axiom, AuditReport, BilinearStructure};
use crate::exactla::{format_rat, Rat};
use crate::poly::{Polynomial, VarId};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Documented default seed for [`pencil_closure_check`].
pub const DEFAULT_SEED: u64 = 20_240_901;

/// Hard cap on grid enumeration size.
pub const GRID_GUARD_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    /// Constraint generation and scans support dim ≤ 3 only.
    DimGuard { dim: usize },
    /// The requested grid has too many candidate assignments.
    GridGuard { combinations: u128 },
    /// A grid parameter was out of range.
    BadGrid { detail: String },
    /// A reduced generator was not a monomial, so the exact case analysis
    /// does not apply.
    NonMonomialReduction { poly: String },
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::DimGuard { dim } => {
                write!(f, "dimension {dim} exceeds the supported bound 3")
            }
            ClassifyError::GridGuard { combinations } => write!(
                f,
                "grid enumeration would visit {combinations} assignments (limit {GRID_GUARD_LIMIT})"
            ),
            ClassifyError::BadGrid { detail } => write!(f, "bad grid: {detail}"),
            ClassifyError::NonMonomialReduction { poly } => write!(
                f,
                "reduced generator `{poly}` is not a monomial; exact case analysis refused"
            ),
        }
    }
}

impl std::error::Error for ClassifyError {}

/// Expands kv-poisson into its two defining axioms and deduplicates,
/// preserving a fixed canonical order.
fn normalize_axioms(axioms: &[Axiom]) -> Vec<Axiom> {
    let mut wanted = Vec::new();
    let mut push = |a: Axiom| {
        if !wanted.contains(&a) {
            wanted.push(a);
        }
    };
    for &a in axioms {
        match a {
            Axiom::KvPoisson => {
                push(Axiom::Skew);
                push(Axiom::Nilpotent);
            }
            other => push(other),
        }
    }
    let order = [
        Axiom::Symmetric,
        Axiom::Skew,
        Axiom::Kv,
        Axiom::Jacobi,
        Axiom::LeibnizSelf,
        Axiom::Nilpotent,
    ];
    order.into_iter().filter(|a| wanted.contains(a)).collect()
}

/// e_i as a vector of constant polynomials (0-based index).
fn sym_basis(dim: usize, i: usize) -> Vec<Polynomial> {
    (0..dim)
        .map(|m| {
            if m == i {
                Polynomial::constant(Rat::one())
            } else {
                Polynomial::zero()
            }
        })
        .collect()
}

/// Symbolic bilinear product: μ(U, V)_s = Σ_{i,j} U_i·V_j·v[i+1][j+1][s+1].
fn sym_product(dim: usize, u: &[Polynomial], v: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(); dim];
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let uv = ui.mul(vj);
            for (s, slot) in out.iter_mut().enumerate() {
                let var = Polynomial::variable(VarId::new(i + 1, j + 1, s + 1));
                *slot = slot.add(&uv.mul(&var));
            }
        }
    }
    out
}

fn sym_sub(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn sym_add(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// Residual components of one identity on one basis tuple.
fn identity_residual(dim: usize, axiom: Axiom, tuple: &[usize]) -> Vec<Polynomial> {
    let e = |i: usize| sym_basis(dim, i);
    let p = |u: &[Polynomial], v: &[Polynomial]| sym_product(dim, u, v);
    match axiom {
        Axiom::Symmetric => {
            let (i, j) = (tuple[0], tuple[1]);
            sym_sub(&p(&e(i), &e(j)), &p(&e(j), &e(i)))
        }
        Axiom::Skew => {
            let (i, j) = (tuple[0], tuple[1]);
            sym_add(&p(&e(i), &e(j)), &p(&e(j), &e(i)))
        }
        Axiom::Kv => {
            let (a, b, c) = (tuple[0], tuple[1], tuple[2]);
            let ass = |x: usize, y: usize, z: usize| {
                sym_sub(&p(&p(&e(x), &e(y)), &e(z)), &p(&e(x), &p(&e(y), &e(z))))
            };
            sym_sub(&ass(a, b, c), &ass(b, a, c))
        }
        Axiom::Jacobi => {
            let (u, v, w) = (tuple[0], tuple[1], tuple[2]);
            let t1 = p(&e(u), &p(&e(v), &e(w)));
            let t2 = p(&e(v), &p(&e(w), &e(u)));
            let t3 = p(&e(w), &p(&e(u), &e(v)));
            sym_add(&sym_add(&t1, &t2), &t3)
        }
        Axiom::LeibnizSelf => {
            let (u, v, w) = (tuple[0], tuple[1], tuple[2]);
            let t1 = p(&p(&e(u), &e(v)), &e(w));
            let t2 = p(&e(u), &p(&e(v), &e(w)));
            let t3 = p(&e(v), &p(&e(u), &e(w)));
            sym_sub(&sym_sub(&t1, &t2), &t3)
        }
        Axiom::Nilpotent => {
            let (w, u, v) = (tuple[0], tuple[1], tuple[2]);
            p(&e(w), &p(&e(u), &e(v)))
        }
        Axiom::KvPoisson => unreachable!("expanded by normalize_axioms"),
    }
}

fn tuple_len(axiom: Axiom) -> usize {
    match axiom {
        Axiom::Symmetric | Axiom::Skew => 2,
        _ => 3,
    }
}

/// One monic polynomial per (identity, basis tuple, output coordinate),
/// zero residuals skipped and exact duplicates removed, in a deterministic
/// generation order (axioms in canonical order, tuples lexicographic,
/// output coordinate innermost).
pub fn constraint_system(dim: usize, axioms: &[Axiom]) -> Result<Vec<Polynomial>, ClassifyError> {
    if dim == 0 || dim > 3 {
        return Err(ClassifyError::DimGuard { dim });
    }
    let axioms = normalize_axioms(axioms);
    let mut out: Vec<Polynomial> = Vec::new();
    for axiom in axioms {
        let arity = tuple_len(axiom);
        let mut tuple = vec![0usize; arity];
        'tuples: loop {
            for poly in identity_residual(dim, axiom, &tuple) {
                if poly.is_zero() {
                    continue;
                }
                let poly = poly.monic();
                if !out.contains(&poly) {
                    out.push(poly);
                }
            }
            // advance the tuple odometer
            let mut pos = arity;
            loop {
                if pos == 0 {
                    break 'tuples;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < dim {
                    break;
                }
                tuple[pos] = 0;
                if pos == 0 {
                    break 'tuples;
                }
            }
        }
    }
    Ok(out)
}

/// Substitution onto the dim-2 skew family: diagonal slots vanish,
/// v[2][1][k] = −v[1][2][k], leaving x0 = v[1][2][1] and y0 = v[1][2][2].
pub fn reduce_to_dim2_skew(poly: &Polynomial) -> Polynomial {
    poly.substitute(&|v: VarId| match (v.i, v.j) {
        (1, 2) => Polynomial::variable(v),
        (2, 1) => Polynomial::variable(VarId::new(1, 2, v.k)).neg(),
        _ => Polynomial::zero(),
    })
}

/// The x0 variable of the reduced system.
pub fn var_x0() -> VarId {
    VarId::new(1, 2, 1)
}

/// The y0 variable of the reduced system.
pub fn var_y0() -> VarId {
    VarId::new(1, 2, 2)
}

/// Exact solution set of a reduced system in the (x0, y0) plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variety {
    Empty,
    Origin,
    /// {(x0, 0)}: the y0 = 0 line.
    XAxis,
    /// {(0, y0)}: the x0 = 0 line.
    YAxis,
    AxesUnion,
    Plane,
}

impl Variety {
    pub fn contains(&self, x0: &Rat, y0: &Rat) -> bool {
        match self {
            Variety::Empty => false,
            Variety::Origin => x0.is_zero() && y0.is_zero(),
            Variety::XAxis => y0.is_zero(),
            Variety::YAxis => x0.is_zero(),
            Variety::AxesUnion => x0.is_zero() || y0.is_zero(),
            Variety::Plane => true,
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Variety::Empty => "empty",
            Variety::Origin => "the origin (0,0) only",
            Variety::XAxis => "the line {(x0, 0)}",
            Variety::YAxis => "the line {(0, y0)}",
            Variety::AxesUnion => "the two axes {(x0, 0)} ∪ {(0, y0)}",
            Variety::Plane => "the whole (x0, y0) plane",
        };
        f.write_str(text)
    }
}

/// Audit of one sample point of the family.
#[derive(Debug, Clone)]
pub struct SampleAudit {
    pub x0: Rat,
    pub y0: Rat,
    pub in_variety: bool,
    pub passes_requested: bool,
    pub failing: Vec<Axiom>,
}

/// A structured disagreement between the computed variety and the quoted
/// two-axes family.
#[derive(Debug, Clone)]
pub struct DiscrepancyFlag {
    pub claim: String,
    pub computed: String,
    pub witness: Option<SampleAudit>,
}

impl fmt::Display for DiscrepancyFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claimed: {}; computed: {}", self.claim, self.computed)?;
        if let Some(w) = &self.witness {
            let failing: Vec<String> = w.failing.iter().map(|a| a.to_string()).collect();
            write!(
                f,
                "; witness (x0,y0)=({},{}) {}",
                format_rat(&w.x0),
                format_rat(&w.y0),
                if failing.is_empty() {
                    "passes the requested axioms".to_string()
                } else {
                    format!("fails [{}]", failing.join(", "))
                }
            )?;
        }
        Ok(())
    }
}

/// Exact solve of the dim-2 skew family against a set of axioms.
#[derive(Debug, Clone)]
pub struct VarietyReport {
    /// Axioms the system was generated from (skew dropped: the family
    /// satisfies it identically; kv-poisson expanded).
    pub axioms: Vec<Axiom>,
    /// Reduced monic generators in x0, y0, duplicates removed.
    pub reduced_system: Vec<Polynomial>,
    pub variety: Variety,
    pub samples: Vec<SampleAudit>,
    pub flags: Vec<DiscrepancyFlag>,
}

/// Builds the family member for (x0, y0) and audits every axiom.
pub fn family_audit(x0: &Rat, y0: &Rat) -> AuditReport {
    BilinearStructure::dim2_skew(x0.clone(), y0.clone()).axiom_audit()
}

/// Substitutes the two-parameter skew family into the constraint system for
/// the requested axioms and solves exactly over ℚ by monomial case
/// analysis. The result is compared against the two-axes claim and a
/// discrepancy flag is raised when they differ.
pub fn dim2_skew_solve(axioms: &[Axiom]) -> Result<VarietyReport, ClassifyError> {
    let effective: Vec<Axiom> = normalize_axioms(axioms)
        .into_iter()
        .filter(|&a| a != Axiom::Skew)
        .collect();
    let full_system = constraint_system(2, &effective)?;

    let mut reduced: Vec<Polynomial> = Vec::new();
    for poly in &full_system {
        let r = reduce_to_dim2_skew(poly);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if !reduced.contains(&r) {
            reduced.push(r);
        }
    }

    // Case analysis needs every generator to be a monomial in x0, y0.
    let (x0, y0) = (var_x0(), var_y0());
    let mut constant_obstruction = false;
    for poly in &reduced {
        if !poly.is_monomial_multiple() {
            return Err(ClassifyError::NonMonomialReduction {
                poly: poly.to_string(),
            });
        }
        let (mono, _) = poly.leading().expect("nonzero");
        if mono.is_unit() {
            constant_obstruction = true;
        }
        if mono.factors().iter().any(|&(v, _)| v != x0 && v != y0) {
            return Err(ClassifyError::NonMonomialReduction {
                poly: poly.to_string(),
            });
        }
    }

    let variety = if constant_obstruction {
        Variety::Empty
    } else if reduced.is_empty() {
        Variety::Plane
    } else {
        let x_line_ok = reduced
            .iter()
            .all(|p| p.leading().expect("nonzero").0.exponent_of(y0) > 0);
        let y_line_ok = reduced
            .iter()
            .all(|p| p.leading().expect("nonzero").0.exponent_of(x0) > 0);
        match (x_line_ok, y_line_ok) {
            (true, true) => Variety::AxesUnion,
            (true, false) => Variety::XAxis,
            (false, true) => Variety::YAxis,
            (false, false) => Variety::Origin,
        }
    };

    let requested = normalize_axioms(axioms);
    let sample_points: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (2, 3)];
    let samples: Vec<SampleAudit> = sample_points
        .iter()
        .map(|&(a, b)| {
            let x = Rat::from_integer(a.into());
            let y = Rat::from_integer(b.into());
            let report = family_audit(&x, &y);
            let failing: Vec<Axiom> = requested
                .iter()
                .copied()
                .filter(|&ax| !report.passed(ax))
                .collect();
            let in_variety = reduced
                .iter()
                .all(|p| p.eval(&|v| if v == x0 { x.clone() } else { y.clone() }).is_zero());
            debug_assert_eq!(in_variety, variety.contains(&x, &y));
            SampleAudit {
                x0: x,
                y0: y,
                in_variety,
                passes_requested: failing.is_empty(),
                failing,
            }
        })
        .collect();

    let mut flags = Vec::new();
    if variety != Variety::AxesUnion {
        let witness = samples
            .iter()
            .find(|s| {
                let claimed = s.x0.is_zero() || s.y0.is_zero();
                claimed != s.in_variety
            })
            .cloned();
        flags.push(DiscrepancyFlag {
            claim: "the two axes {(x0, 0)} ∪ {(0, y0)}".to_string(),
            computed: variety.to_string(),
            witness,
        });
    }

    Ok(VarietyReport {
        axioms: effective,
        reduced_system: reduced,
        variety,
        samples,
        flags,
    })
}

/// Enumerates structure-constant assignments on a rational grid and keeps
/// those passing the requested axioms, deduplicated up to nonzero scaling
/// (first nonzero constant normalized to 1) and sorted by constants.
///
/// When skew is requested the linear constraints are pre-solved: only the
/// strictly-upper slots (i < j, all k) are enumerated, the mirror slots are
/// filled with negated values and the diagonal with zeros. Otherwise all
/// n³ slots range over the grid.
pub fn grid_scan(
    dim: usize,
    bound: i64,
    denominator: i64,
    axioms: &[Axiom],
) -> Result<Vec<BilinearStructure>, ClassifyError> {
    if dim == 0 || dim > 3 {
        return Err(ClassifyError::DimGuard { dim });
    }
    if bound < 0 {
        return Err(ClassifyError::BadGrid {
            detail: format!("bound {bound} is negative"),
        });
    }
    if denominator < 1 {
        return Err(ClassifyError::BadGrid {
            detail: format!("denominator {denominator} is not positive"),
        });
    }
    let axioms = normalize_axioms(axioms);
    let presolve_skew = axioms.contains(&Axiom::Skew);

    let free_slots: Vec<(usize, usize, usize)> = if presolve_skew {
        let mut slots = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    slots.push((i, j, k));
                }
            }
        }
        slots
    } else {
        let mut slots = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    slots.push((i, j, k));
                }
            }
        }
        slots
    };

    let steps = 2 * bound * denominator + 1;
    let combinations = (steps as u128)
        .checked_pow(free_slots.len() as u32)
        .unwrap_or(u128::MAX);
    if combinations > GRID_GUARD_LIMIT {
        return Err(ClassifyError::GridGuard { combinations });
    }

    let values: Vec<Rat> = (-bound * denominator..=bound * denominator)
        .map(|t| Rat::new(t.into(), denominator.into()))
        .collect();

    let mut survivors: std::collections::BTreeMap<Vec<Rat>, BilinearStructure> =
        std::collections::BTreeMap::new();
    let mut indices = vec![0usize; free_slots.len()];
    'outer: loop {
        let mut mu = BilinearStructure::zero(dim);
        for (slot_pos, &(i, j, k)) in free_slots.iter().enumerate() {
            let value = values[indices[slot_pos]].clone();
            if presolve_skew {
                mu.set_c(j, i, k, -value.clone());
            }
            mu.set_c(i, j, k, value);
        }
        if axioms.iter().all(|&a| mu.satisfies(a)) {
            // scanned-structure invariants: skew ∧ nilpotent forces the
            // nested-product identities, and skew ∧ kv forces nilpotency
            if mu.satisfies(Axiom::Skew) {
                if mu.satisfies(Axiom::Nilpotent) {
                    debug_assert!(mu.satisfies(Axiom::Kv));
                    debug_assert!(mu.satisfies(Axiom::LeibnizSelf));
                }
                if mu.satisfies(Axiom::Kv) {
                    debug_assert!(mu.satisfies(Axiom::Nilpotent));
                }
            }
            let canon = canonical_rep(&mu);
            survivors.entry(canon.constants().to_vec()).or_insert(canon);
        }
        // odometer
        let mut pos = free_slots.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < values.len() {
                break;
            }
            indices[pos] = 0;
            if pos == 0 {
                break 'outer;
            }
        }
    }
    Ok(survivors.into_values().collect())
}

/// Scaling-canonical representative: first nonzero constant (in slot order)
/// normalized to 1; the zero structure is its own representative.
pub fn canonical_rep(mu: &BilinearStructure) -> BilinearStructure {
    match mu.constants().iter().find(|c| !c.is_zero()) {
        None => mu.clone(),
        Some(first) => mu.scale(&first.recip()),
    }
}

/// Counterexample from a pencil closure check.
#[derive(Debug, Clone)]
pub struct PencilCounterexample {
    pub left: usize,
    pub right: usize,
    pub lambda: Rat,
    pub failing: Vec<Axiom>,
}

/// Result of auditing random pencils μ_i + λ·μ_j against a set of axioms.
#[derive(Debug, Clone)]
pub struct PencilReport {
    pub trials: usize,
    pub closed: bool,
    pub counterexamples: Vec<PencilCounterexample>,
}

/// Audits `samples` random pencils over the given structures. Sampling is
/// driven by a seeded deterministic generator ([`DEFAULT_SEED`] is the
/// documented default seed), so reports are reproducible.
pub fn pencil_closure_check(
    structures: &[BilinearStructure],
    axioms: &[Axiom],
    samples: usize,
    seed: u64,
) -> Result<PencilReport, crate::algebra::AlgebraError> {
    if structures.is_empty() {
        return Ok(PencilReport {
            trials: 0,
            closed: true,
            counterexamples: Vec::new(),
        });
    }
    let dim = structures[0].dim();
    for s in structures {
        if s.dim() != dim {
            return Err(crate::algebra::AlgebraError::DimMismatch {
                left: dim,
                right: s.dim(),
            });
        }
    }
    let axioms = normalize_axioms(axioms);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    for _ in 0..samples {
        let left = rng.random_range(0..structures.len());
        let right = rng.random_range(0..structures.len());
        let num = loop {
            let n: i64 = rng.random_range(-8..=8);
            if n != 0 {
                break n;
            }
        };
        let den: i64 = rng.random_range(1..=4);
        let lambda = Rat::new(num.into(), den.into());
        let combined = structures[left].combine(&lambda, &structures[right])?;
        let failing: Vec<Axiom> = axioms
            .iter()
            .copied()
            .filter(|&a| !combined.satisfies(a))
            .collect();
        if !failing.is_empty() {
            counterexamples.push(PencilCounterexample {
                left,
                right,
                lambda,
                failing,
            });
        }
    }
    Ok(PencilReport {
        trials: samples,
        closed: counterexamples.is_empty(),
        counterexamples,
    })
}
