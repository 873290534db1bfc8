//! Sparse multivariate polynomials over ℚ in structure-constant variables.
//!
//! Variables are the slots of a structure-constant tensor, printed 1-based
//! as `v[i][j][k]`. Monomials are ordered graded-lexicographically (total
//! degree first, then lexicographic with smaller variables ranking higher),
//! terms print in descending order, and zero coefficients are never stored,
//! so equal polynomials have equal printed forms.

use crate::exactla::{format_rat, Rat};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A structure-constant slot, 1-based for display: μ(e_i, e_j) coefficient
/// of e_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl VarId {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        VarId { i, j, k }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v[{}][{}][{}]", self.i, self.j, self.k)
    }
}

/// A product of variable powers; the empty product is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// Sorted by variable, exponents strictly positive.
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn variable(v: VarId) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, v: VarId) -> u32 {
        self.factors
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<VarId, u32> = self.factors.iter().copied().collect();
        for &(v, e) in &other.factors {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: out.into_iter().collect(),
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the first variable
    /// (in ascending `VarId` order) where the exponents differ decides,
    /// larger exponent ranking higher.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.factors.iter();
        let mut b = other.factors.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // the side that still has factors owns a smaller-ranked
                // variable slot with positive exponent: it is lex-greater
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // smaller variable present means greater in lex
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: monomial → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn variable(v: VarId) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::variable(v), Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Single-term test: a monomial times a nonzero rational.
    pub fn is_monomial_multiple(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Monic normalization: leading coefficient scaled to 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact evaluation under a variable assignment.
    pub fn eval(&self, assign: &dyn Fn(VarId) -> Rat) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for &(v, e) in m.factors() {
                let value = assign(v);
                for _ in 0..e {
                    prod *= &value;
                }
            }
            total += prod;
        }
        total
    }

    /// Substitutes a polynomial for every variable.
    pub fn substitute(&self, map: &dyn Fn(VarId) -> Polynomial) -> Polynomial {
        let mut total = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                let image = map(v);
                for _ in 0..e {
                    prod = prod.mul(&image);
                }
            }
            total = total.add(&prod);
        }
        total
    }

    /// Printed form with caller-chosen variable names.
    pub fn display_named(&self, name: &dyn Fn(VarId) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let mono = if m.is_unit() {
                None
            } else {
                let parts: Vec<String> = m
                    .factors()
                    .iter()
                    .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{e}", name(v)) })
                    .collect();
                Some(parts.join("*"))
            };
            let abs = c.abs();
            let sign_neg = c.is_negative();
            if idx == 0 {
                if sign_neg {
                    out.push('-');
                }
            } else {
                out.push_str(if sign_neg { "-" } else { "+" });
            }
            match mono {
                None => out.push_str(&format_rat(&abs)),
                Some(ms) => {
                    if !abs.is_one() {
                        out.push_str(&format_rat(&abs));
                        out.push('*');
                    }
                    out.push_str(&ms);
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_named(&|v| v.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    fn x() -> VarId {
        VarId::new(1, 2, 1)
    }

    fn y() -> VarId {
        VarId::new(1, 2, 2)
    }

    #[test]
    fn display_canonical_forms() {
        let p = Polynomial::variable(x()).add(&Polynomial::variable(VarId::new(2, 1, 1)));
        assert_eq!(p.to_string(), "v[1][2][1]+v[2][1][1]");

        let sq = Polynomial::variable(x()).mul(&Polynomial::variable(x()));
        assert_eq!(sq.to_string(), "v[1][2][1]^2");
        assert_eq!(sq.neg().to_string(), "-v[1][2][1]^2");

        let two_x = Polynomial::variable(x()).scale(&rat(2));
        assert_eq!(two_x.to_string(), "2*v[1][2][1]");

        let mixed = sq.sub(&Polynomial::variable(x()).mul(&Polynomial::variable(y())));
        // same degree: x² ranks above x*y in graded lex
        assert_eq!(mixed.to_string(), "v[1][2][1]^2-v[1][2][1]*v[1][2][2]");

        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::constant(ratio(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn display_named_substitutes() {
        let p = Polynomial::variable(x()).mul(&Polynomial::variable(y()));
        let name = |v: VarId| if v == x() { "x0".to_string() } else { "y0".to_string() };
        assert_eq!(p.display_named(&name), "x0*y0");
    }

    #[test]
    fn arithmetic_cancels() {
        let p = Polynomial::variable(x());
        assert!(p.sub(&p).is_zero());
        let q = p.add(&p);
        assert_eq!(q.to_string(), "2*v[1][2][1]");
        assert_eq!(q.monic().to_string(), "v[1][2][1]");
    }

    #[test]
    fn graded_lex_ordering() {
        let x1 = Monomial::variable(x());
        let y1 = Monomial::variable(y());
        let x2 = x1.mul(&x1);
        let xy = x1.mul(&y1);
        let y2 = y1.mul(&y1);
        let y3 = y2.mul(&y1);
        assert!(x2 > x1); // higher degree
        assert!(x1 > y1); // same degree, smaller VarId ranks higher
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(y3 > xy); // degree dominates
    }

    #[test]
    fn eval_and_substitute() {
        // x²·y + 3
        let p = Polynomial::variable(x())
            .mul(&Polynomial::variable(x()))
            .mul(&Polynomial::variable(y()))
            .add(&Polynomial::constant(rat(3)));
        let value = p.eval(&|v| if v == x() { rat(2) } else { rat(5) });
        assert_eq!(value, rat(23));

        // substitute x ↦ −y: (−y)²·y + 3 = y³ + 3
        let q = p.substitute(&|v| {
            if v == x() {
                Polynomial::variable(y()).neg()
            } else {
                Polynomial::variable(v)
            }
        });
        assert_eq!(q.to_string(), "v[1][2][2]^3+3");
    }

    #[test]
    fn monomial_multiple_detection() {
        assert!(Polynomial::variable(x()).is_monomial_multiple());
        assert!(Polynomial::variable(x()).scale(&rat(-2)).is_monomial_multiple());
        assert!(!Polynomial::zero().is_monomial_multiple());
        assert!(!Polynomial::variable(x()).add(&Polynomial::variable(y())).is_monomial_multiple());
    }
}
