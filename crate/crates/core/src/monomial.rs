//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 8]>;

/// A power product `x_1^{a_1} ... x_n^{a_n}` with its cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn from_exponents(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
            degree: self.degree * e,
        }
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Reindex into a ring with `nvars` variables; `map[i]` is the new index of variable `i`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        for (i, e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial { exps, degree: self.degree }
    }

    pub(crate) fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.exps.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[i])?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// The first `k` variables (after permutation) form a block that is
    /// eliminated first; each block is compared by grevlex.
    Block(usize),
}

/// A monomial order: a kind plus the variable precedence
/// (`precedence[0]` is the largest variable).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Option<Vec<usize>>,
}

fn grevlex_range(a: &[u32], b: &[u32], perm: Option<&[usize]>, lo: usize, hi: usize) -> Ordering {
    let idx = |i: usize| perm.map_or(i, |p| p[i]);
    let da: u32 = (lo..hi).map(|i| a[idx(i)]).sum();
    let db: u32 = (lo..hi).map(|i| b[idx(i)]).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        let (x, y) = (a[idx(i)], b[idx(i)]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder { kind, precedence: None }
    }

    pub fn lex() -> Self {
        Self::new(OrderKind::Lex)
    }

    pub fn grevlex() -> Self {
        Self::new(OrderKind::Grevlex)
    }

    pub fn block(k: usize) -> Self {
        Self::new(OrderKind::Block(k))
    }

    /// Attach a variable precedence. An identity permutation is dropped.
    pub fn with_precedence(mut self, precedence: Vec<usize>) -> Self {
        if precedence.iter().enumerate().all(|(i, p)| i == *p) {
            self.precedence = None;
        } else {
            self.precedence = Some(precedence);
        }
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> Option<&[usize]> {
        self.precedence.as_deref()
    }

    /// Compare two monomials; `Greater` means `a > b`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.exponents(), b.exponents());
        let perm = self.precedence.as_deref();
        match self.kind {
            OrderKind::Lex => {
                for i in 0..x.len() {
                    let j = perm.map_or(i, |p| p[i]);
                    if x[j] != y[j] {
                        return x[j].cmp(&y[j]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                if perm.is_none() {
                    if a.degree() != b.degree() {
                        return a.degree().cmp(&b.degree());
                    }
                    for i in (0..x.len()).rev() {
                        if x[i] != y[i] {
                            return y[i].cmp(&x[i]);
                        }
                    }
                    Ordering::Equal
                } else {
                    grevlex_range(x, y, perm, 0, x.len())
                }
            }
            OrderKind::Block(k) => {
                let k = k.min(x.len());
                grevlex_range(x, y, perm, 0, k).then_with(|| grevlex_range(x, y, perm, k, x.len()))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderKind::Lex => write!(f, "lex")?,
            OrderKind::Grevlex => write!(f, "grevlex")?,
            OrderKind::Block(k) => write!(f, "elim({k})")?,
        }
        if let Some(p) = &self.precedence {
            write!(f, " {p:?}")?;
        }
        Ok(())
    }
}
