//! Sparse multivariate polynomials in canonical form.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::ring::PolyRing;
use crate::scalar::Scalar;

pub type Term = (Monomial, Scalar);

/// A polynomial: nonzero terms, strictly descending in the ring's order.
/// The zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

fn merge(ring: &PolyRing, a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let tb = |t: &Scalar| if negate_b { t.neg() } else { t.clone() };
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), tb(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), tb(c))));
    out
}

impl Polynomial {
    pub fn zero(ring: &PolyRing) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    /// Build from arbitrary terms: sorts, combines like terms, drops zeros.
    pub fn from_terms(ring: &PolyRing, terms: Vec<Term>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &PolyRing, acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wrap terms that are already canonical for `ring`.
    pub(crate) fn from_sorted_terms(ring: &PolyRing, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &PolyRing, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    /// Checked arithmetic; the operator impls panic on mismatched rings instead.
    pub fn ring_arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        f.check_ring(g)?;
        Ok(match op {
            ArithOp::Add => f + g,
            ArithOp::Sub => f - g,
            ArithOp::Mul => f * g,
        })
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// `c * m * self`; stays sorted because monomial orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scalar_mul(&c.inv()),
        }
    }

    /// Multivariate division: `self = sum q_i g_i + r` with no term of `r`
    /// divisible by a leading monomial of `divisors`.
    pub fn reduce(&self, divisors: &[Polynomial]) -> Result<(Polynomial, Vec<Polynomial>)> {
        for g in divisors {
            self.check_ring(g)?;
            if g.is_zero() {
                return Err(AlgebraError::InvalidInput("division by the zero polynomial".into()));
            }
        }
        let ring = &self.ring;
        let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
        let mut remainder: Vec<Term> = Vec::new();
        let mut p = self.terms.clone();
        while let Some((lm, lc)) = p.first().cloned() {
            let hit = divisors.iter().enumerate().find(|(_, g)| g.terms[0].0.divides(&lm));
            match hit {
                Some((i, g)) => {
                    let (gm, gc) = &g.terms[0];
                    let m = gm.quotient_of(&lm);
                    let c = lc.div(gc);
                    let sub = g.mul_term(&m, &c);
                    p = merge(ring, &p, &sub.terms, true);
                    quotients[i].push((m, c));
                }
                None => {
                    remainder.push((lm, lc));
                    p.remove(0);
                }
            }
        }
        let quotients = quotients.into_iter().map(|q| Polynomial::from_terms(ring, q)).collect();
        Ok((Polynomial::from_sorted_terms(ring, remainder), quotients))
    }

    /// Move into `target`, where old variable `i` becomes `map[i]`.
    pub fn remap(&self, target: &PolyRing, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.remap(map, target.nvars()), c.clone())).collect();
        Polynomial::from_terms(target, terms)
    }

    /// Move into a ring that contains all variables that occur, matching by name.
    pub fn to_ring(&self, target: &PolyRing) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        if self.ring.field() != target.field() {
            return Err(AlgebraError::RingMismatch("different coefficient fields".into()));
        }
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for (i, name) in self.ring.names().iter().enumerate() {
            if let Some(j) = target.var_index(name) {
                map[i] = j;
            }
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.support().any(|i| map[i] == usize::MAX) {
                return Err(AlgebraError::RingMismatch(format!(
                    "{self} uses variables missing from {target}"
                )));
            }
            let safe: Vec<usize> = map.iter().map(|j| if *j == usize::MAX { 0 } else { *j }).collect();
            terms.push((m.remap(&safe, target.nvars()), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// True when no variable with index in `vars` occurs.
    pub fn avoids(&self, vars: &[usize]) -> bool {
        self.terms.iter().all(|(m, _)| vars.iter().all(|v| m.exponents()[*v] == 0))
    }

    /// Exact division by `g`; `None` if `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (r, q) = self.reduce(std::slice::from_ref(g)).ok()?;
        r.is_zero().then(|| q.into_iter().next().unwrap())
    }

    /// Canonical text, e.g. `x^2*y - 3/2*z + 1`.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                m.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring == rhs.ring, "ring mismatch in +");
        Polynomial { ring: self.ring.clone(), terms: merge(&self.ring, &self.terms, &rhs.terms, false) }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring == rhs.ring, "ring mismatch in -");
        Polynomial { ring: self.ring.clone(), terms: merge(&self.ring, &self.terms, &rhs.terms, true) }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring == rhs.ring, "ring mismatch in *");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
