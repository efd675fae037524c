//! Polynomial rings `k[x_1..x_n]` and quotient rings `k[x_1..x_n]/J0`.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::poly::Polynomial;
use crate::scalar::Field;

#[derive(Debug, PartialEq, Eq, Hash)]
struct PolyRingData {
    names: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

/// A polynomial ring over `QQ` or `Fp`, shared by every polynomial that lives in it.
#[derive(Debug, Clone)]
pub struct PolyRing(Arc<PolyRingData>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(names: Vec<String>, field: Field, order: MonomialOrder) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::NameClash(format!("variable {n} declared twice")));
            }
        }
        if let Some(p) = order.precedence() {
            let mut sorted = p.to_vec();
            sorted.sort_unstable();
            if sorted != (0..names.len()).collect::<Vec<_>>() {
                return Err(AlgebraError::InvalidInput("order precedence is not a permutation".into()));
            }
        }
        Ok(PolyRing(Arc::new(PolyRingData { names, field, order })))
    }

    /// Convenience constructor with grevlex.
    pub fn with_vars(names: &[&str], field: Field) -> Result<Self> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), field, MonomialOrder::grevlex())
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        let i = self
            .var_index(name)
            .ok_or_else(|| AlgebraError::InvalidInput(format!("unknown variable {name}")))?;
        Ok(Polynomial::from_terms(self, vec![(Monomial::variable(self.nvars(), i), self.field().one())]))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::one(self.nvars()), self.field().from_i64(c))])
    }

    /// Parse a polynomial expression such as `x^2*y - 3/2*z + 1`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::dsl::parse_polynomial(self, text)
    }

    /// The same variables under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<PolyRing> {
        PolyRing::new(self.0.names.clone(), self.0.field, order)
    }

    /// The same variables and order over a different field.
    pub fn with_field(&self, field: Field) -> PolyRing {
        PolyRing(Arc::new(PolyRingData { names: self.0.names.clone(), field, order: self.0.order.clone() }))
    }

    /// Adjoin new variables in front, in an elimination block.
    ///
    /// The returned map sends old variable `i` to its index in the new ring.
    pub fn extend(&self, new_vars: &[&str]) -> Result<(PolyRing, Vec<usize>)> {
        for v in new_vars {
            if self.var_index(v).is_some() {
                return Err(AlgebraError::NameClash(format!("{v} already names a variable")));
            }
        }
        let k = new_vars.len();
        let mut names: Vec<String> = new_vars.iter().map(|s| s.to_string()).collect();
        names.extend(self.0.names.iter().cloned());
        let mut precedence: Vec<usize> = (0..k).collect();
        match self.0.order.precedence() {
            Some(p) => precedence.extend(p.iter().map(|i| i + k)),
            None => precedence.extend(k..k + self.nvars()),
        }
        let ring = PolyRing::new(names, self.0.field, MonomialOrder::block(k).with_precedence(precedence))?;
        Ok((ring, (k..k + self.nvars()).collect()))
    }

    /// A fresh variable name not used by this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut i = 0;
        loop {
            let cand = format!("_{stem}{i}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
            i += 1;
        }
    }

    /// The same ring with the variables in `block` moved to an elimination block.
    pub fn elimination_ring(&self, block: &[usize]) -> Result<PolyRing> {
        let mut precedence: Vec<usize> = block.to_vec();
        precedence.extend((0..self.nvars()).filter(|i| !block.contains(i)));
        self.with_order(MonomialOrder::new(OrderKind::Block(block.len())).with_precedence(precedence))
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] order {}", self.0.field, self.0.names.join(","), self.0.order)
    }
}

/// The ambient ring `A = k[x]/J0`. `J0` may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    ring: PolyRing,
    base: Arc<Vec<Polynomial>>,
}

impl RingSpec {
    pub fn new(ring: PolyRing, base: Vec<Polynomial>) -> Result<Self> {
        for g in &base {
            if g.ring() != &ring {
                return Err(AlgebraError::RingMismatch("base ideal generator outside the ring".into()));
            }
        }
        let base = base.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(RingSpec { ring, base: Arc::new(base) })
    }

    pub fn polynomial_ring(ring: PolyRing) -> Self {
        RingSpec { ring, base: Arc::new(Vec::new()) }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn base(&self) -> &[Polynomial] {
        &self.base
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.base.is_empty()
    }

    /// `A/I` as a ring: the base ideal grows by `extra`.
    pub fn quotient_by(&self, extra: &[Polynomial]) -> Result<RingSpec> {
        let mut base = self.base.to_vec();
        base.extend(extra.iter().cloned());
        RingSpec::new(self.ring.clone(), base)
    }

    /// Adjoin variables in an elimination block; `J0` is carried along.
    pub fn extend(&self, new_vars: &[&str]) -> Result<(RingSpec, Vec<usize>)> {
        let (ring, map) = self.ring.extend(new_vars)?;
        let base = self.base.iter().map(|g| g.remap(&ring, &map)).collect();
        Ok((RingSpec { ring, base: Arc::new(base) }, map))
    }

    /// Same variables and `J0`, different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingSpec> {
        let ring = self.ring.with_order(order)?;
        self.transported(ring)
    }

    pub(crate) fn transported(&self, ring: PolyRing) -> Result<RingSpec> {
        let base = self.base.iter().map(|g| g.to_ring(&ring)).collect::<Result<Vec<_>>>()?;
        Ok(RingSpec { ring, base: Arc::new(base) })
    }

    /// Re-read the ring over another field. Coefficients of `J0` must be
    /// integral-compatible (they are re-parsed from canonical text).
    pub fn with_field(&self, field: Field) -> Result<RingSpec> {
        let ring = self.ring.with_field(field);
        let base = self.base.iter().map(|g| ring.parse(&g.to_string())).collect::<Result<Vec<_>>>()?;
        RingSpec::new(ring, base)
    }

    /// Model `F_{p^k}` as `F_p[alpha]/(m(alpha))` with `m` irreducible of degree `k`.
    ///
    /// Returns the extended ring and the name chosen for the generator.
    pub fn extend_field(&self, degree: u32) -> Result<(RingSpec, String)> {
        let Field::Prime(p) = self.ring.field() else {
            return Err(AlgebraError::InvalidInput("field extensions are only modelled over Fp".into()));
        };
        if !(2..=3).contains(&degree) {
            return Err(AlgebraError::InvalidInput("extension degree must be 2 or 3".into()));
        }
        let name = self.ring.fresh_name("alpha");
        let (ext, _) = self.extend(&[name.as_str()])?;
        // Reorder so alpha is the smallest variable under grevlex.
        let mut names: Vec<String> = self.ring.names().to_vec();
        names.push(name.clone());
        let ring = PolyRing::new(names, Field::Prime(p), MonomialOrder::grevlex())?;
        let spec = ext.transported(ring)?;
        let minpoly = irreducible_poly(p, degree);
        let alpha = spec.ring.var(&name)?;
        let mut m = spec.ring.zero();
        for (i, c) in minpoly.iter().enumerate() {
            m = &m + &(&alpha.pow(i as u32) * &spec.ring.constant(*c as i64));
        }
        Ok((spec.quotient_by(&[m])?, name))
    }
}

/// Smallest monic irreducible polynomial of degree 2 or 3 over `F_p`
/// (coefficients low to high). For these degrees irreducible means rootless.
fn irreducible_poly(p: u64, degree: u32) -> Vec<u64> {
    let eval = |coeffs: &[u64], x: u64| {
        coeffs.iter().rev().fold(0u128, |acc, c| (acc * x as u128 + *c as u128) % p as u128)
    };
    let d = degree as usize;
    let mut coeffs = vec![0u64; d + 1];
    coeffs[d] = 1;
    let limit = (p as u128).pow(degree);
    for code in 0..limit {
        let mut c = code;
        for slot in coeffs.iter_mut().take(d) {
            *slot = (c % p as u128) as u64;
            c /= p as u128;
        }
        if (0..p.min(1 << 20)).all(|x| eval(&coeffs, x) != 0) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring)?;
        if !self.base.is_empty() {
            let gens: Vec<String> = self.base.iter().map(|g| g.to_string()).collect();
            write!(f, " / ({})", gens.join(", "))?;
        }
        Ok(())
    }
}
