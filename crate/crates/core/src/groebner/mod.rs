//! Reduced Gröbner bases of ideals and submodules, normal forms, syzygies
//! and lifts. Quotient rings `k[x]/J0` are handled by adding `J0` to every
//! computation.

mod engine;
mod module;

use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

pub use module::{module_gb, module_syzygies, syzygies, Lifter, ModuleBasis, ModuleElement, SyzygyMatrix};

use crate::error::{AlgebraError, BudgetExceeded, Result};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingSpec};
use engine::{SVec, VTerm};

/// Default S-pair step budget for a single Gröbner computation.
pub const DEFAULT_GB_STEPS: u64 = 10_000;

pub(crate) fn poly_to_svec(f: &Polynomial, pos: u32) -> SVec {
    SVec {
        terms: f.terms().iter().map(|(m, c)| VTerm { pos, mono: m.clone(), coeff: c.clone() }).collect(),
    }
}

pub(crate) fn svec_to_poly(ring: &PolyRing, v: &SVec) -> Polynomial {
    Polynomial::from_sorted_terms(ring, v.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())).collect())
}

pub(crate) fn budget_error(
    ring: &PolyRing,
    limit: u64,
    b: engine::EngineBudget,
    render: impl Fn(&PolyRing, &SVec) -> String,
) -> AlgebraError {
    AlgebraError::Budget(Box::new(BudgetExceeded {
        steps: b.steps,
        limit,
        partial_basis: b.partial.iter().map(|v| render(ring, v)).collect(),
        pending_pairs: b.pending,
    }))
}

/// Reduced Gröbner basis of `gens` in `ring` (no base ideal), sorted by
/// ascending leading monomial.
pub fn reduced_basis(ring: &PolyRing, gens: &[Polynomial], limit: u64) -> Result<Vec<Polynomial>> {
    for g in gens {
        if g.ring() != ring {
            return Err(AlgebraError::RingMismatch(format!("{g} is not in {ring}")));
        }
    }
    let vecs = gens.iter().map(|g| poly_to_svec(g, 0)).collect();
    let (basis, _) = engine::groebner(ring.order(), vecs, true, limit)
        .map_err(|b| budget_error(ring, limit, b, |r, v| svec_to_poly(r, v).to_string()))?;
    Ok(basis.iter().map(|v| svec_to_poly(ring, v)).collect())
}

/// Full reduction of `f` by a reduced basis.
pub fn reduce_by_basis(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let vb: Vec<SVec> = basis.iter().map(|g| poly_to_svec(g, 0)).collect();
    svec_to_poly(ring, &engine::normal_form(ring.order(), &poly_to_svec(f, 0), &vb))
}

/// Hex SHA-256 of the ring description and the canonical text of a basis.
pub fn basis_hash(ring: &PolyRing, basis: &[Polynomial]) -> String {
    let mut h = Sha256::new();
    h.update(ring.to_string().as_bytes());
    for g in basis {
        h.update(b"\n");
        h.update(g.to_string().as_bytes());
    }
    hex::encode(h.finalize())
}

/// An ideal of `A = k[x]/J0` given by generators, with a lazily computed
/// reduced Gröbner basis of `gens + J0`.
///
/// Clones share the cache.
#[derive(Clone)]
pub struct IdealHandle {
    spec: RingSpec,
    gens: Vec<Polynomial>,
    budget: u64,
    gb: Arc<OnceLock<Arc<Vec<Polynomial>>>>,
    lifter: Arc<OnceLock<Arc<Lifter>>>,
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealHandle")
            .field("ring", &self.spec.to_string())
            .field("gens", &self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl IdealHandle {
    pub fn new(spec: &RingSpec, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.ring() != spec.ring() {
                return Err(AlgebraError::RingMismatch(format!("{g} is not in {}", spec.ring())));
            }
        }
        Ok(IdealHandle {
            spec: spec.clone(),
            gens,
            budget: DEFAULT_GB_STEPS,
            gb: Arc::new(OnceLock::new()),
            lifter: Arc::new(OnceLock::new()),
        })
    }

    /// Generators given as text in the ring's variables.
    pub fn parse(spec: &RingSpec, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|g| spec.ring().parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(spec, gens)
    }

    /// The zero ideal of `A`.
    pub fn zero(spec: &RingSpec) -> Self {
        Self::new(spec, Vec::new()).expect("no generators")
    }

    pub fn unit(spec: &RingSpec) -> Self {
        Self::new(spec, vec![spec.ring().one()]).expect("same ring")
    }

    /// Same generators and cache semantics, with another step budget.
    pub fn with_budget(&self, steps: u64) -> Self {
        let mut h = self.derive(self.gens.clone());
        h.budget = steps;
        h
    }

    /// A new ideal in the same ring that inherits the step budget.
    pub fn derive(&self, gens: Vec<Polynomial>) -> Self {
        IdealHandle {
            spec: self.spec.clone(),
            gens,
            budget: self.budget,
            gb: Arc::new(OnceLock::new()),
            lifter: Arc::new(OnceLock::new()),
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn ring(&self) -> &PolyRing {
        self.spec.ring()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Generators together with those of `J0`.
    pub fn gens_with_base(&self) -> Vec<Polynomial> {
        let mut all = self.gens.clone();
        all.extend(self.spec.base().iter().cloned());
        all
    }

    /// The reduced Gröbner basis of `gens + J0`, computed once.
    pub fn groebner(&self) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let all = self.gens_with_base();
        let basis = reduced_basis(self.ring(), &all, self.budget)?;
        for g in &all {
            if !reduce_by_basis(g, &basis).is_zero() {
                return Err(AlgebraError::Internal(format!("generator {g} does not reduce to zero")));
            }
        }
        Ok(self.gb.get_or_init(|| Arc::new(basis)).clone())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        Ok(reduce_by_basis(f, &self.groebner()?))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        self.same_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals of `A` (reduced bases agree).
    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.groebner()? == other.groebner()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.iter().any(|g| g.is_unit()))
    }

    /// True when the ideal is zero in `A`, i.e. contained in `J0`.
    pub fn is_zero(&self) -> Result<bool> {
        let base = self.derive(Vec::new());
        for g in &self.gens {
            if !base.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn gb_hash(&self) -> Result<String> {
        Ok(basis_hash(self.ring(), &self.groebner()?))
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derive(gens))
    }

    pub fn with_gens(&self, extra: &[Polynomial]) -> Result<IdealHandle> {
        for g in extra {
            self.check(g)?;
        }
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ok(self.derive(gens))
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for (i, a) in self.gens.iter().enumerate() {
            for (j, b) in other.gens.iter().enumerate() {
                if std::ptr::eq(self, other) && j < i {
                    continue;
                }
                gens.push(a * b);
            }
        }
        Ok(self.derive(gens))
    }

    /// Cofactors `c` with `f - sum c_i g_i` in `J0`, or `None` if `f` is not in the ideal.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        self.check(f)?;
        let lifter = match self.lifter.get() {
            Some(l) => l.clone(),
            None => {
                let vecs: Vec<ModuleElement> =
                    self.gens.iter().map(|g| ModuleElement::new(vec![g.clone()])).collect::<Result<_>>()?;
                let l = Lifter::new(&self.spec, 1, &vecs, self.budget)?;
                self.lifter.get_or_init(|| Arc::new(l)).clone()
            }
        };
        lifter.lift(&ModuleElement::new(vec![f.clone()])?)
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.ring() != self.ring() {
            return Err(AlgebraError::RingMismatch(format!("{f} is not in {}", self.ring())));
        }
        Ok(())
    }

    fn same_ring(&self, other: &IdealHandle) -> Result<()> {
        if self.spec != other.spec {
            return Err(AlgebraError::RingMismatch(format!("{} vs {}", self.spec, other.spec)));
        }
        Ok(())
    }
}

pub fn buchberger_reduced(ideal: &IdealHandle) -> Result<Arc<Vec<Polynomial>>> {
    ideal.groebner()
}

pub fn normal_form(f: &Polynomial, ideal: &IdealHandle) -> Result<Polynomial> {
    ideal.normal_form(f)
}

pub fn ideal_member(f: &Polynomial, ideal: &IdealHandle) -> Result<bool> {
    ideal.contains(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::scalar::Field;

    fn qq(vars: &[&str]) -> RingSpec {
        RingSpec::polynomial_ring(PolyRing::with_vars(vars, Field::Rational).unwrap())
    }

    fn texts(b: &[Polynomial]) -> Vec<String> {
        b.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        let r = qq(&["x", "y"]);
        assert_eq!(texts(&IdealHandle::parse(&r, &["x"]).unwrap().groebner().unwrap()), ["x"]);
        let lex = r.with_order(MonomialOrder::lex()).unwrap();
        let i = IdealHandle::parse(&lex, &["x + y", "y"]).unwrap();
        assert_eq!(texts(&i.groebner().unwrap()), ["y", "x"]);
        let i = IdealHandle::parse(&r, &["0", "x*y - 1"]).unwrap();
        let f = r.ring().parse("x*(x*y - 1) + x").unwrap();
        assert_eq!(i.normal_form(&f).unwrap().to_string(), "x");
    }

    #[test]
    fn twisted_cubic_membership() {
        let r = qq(&["x", "y", "z"]);
        let i = IdealHandle::parse(&r, &["y - x^2", "z - x^3"]).unwrap();
        let f = r.ring().parse("x*z - y^2").unwrap();
        assert!(i.contains(&f).unwrap());
        let c = i.lift(&f).unwrap().unwrap();
        let back = &(&c[0] * &i.gens()[0]) + &(&c[1] * &i.gens()[1]);
        assert_eq!(back, f);
        let x = r.ring().parse("x").unwrap();
        assert!(!IdealHandle::parse(&r, &["x^2"]).unwrap().contains(&x).unwrap());
        assert!(i.lift(&x).unwrap().is_none());
    }

    #[test]
    fn basis_ignores_generator_order_and_duplicates() {
        let r = qq(&["x", "y", "z"]);
        let a = IdealHandle::parse(&r, &["x^2 - x", "x*z", "x*y - y", "y*z"]).unwrap();
        let b = IdealHandle::parse(&r, &["y*z", "x*y - y", "x*z", "x*z", "x^2 - x", "0"]).unwrap();
        assert_eq!(a.groebner().unwrap(), b.groebner().unwrap());
        assert_eq!(a.gb_hash().unwrap(), b.gb_hash().unwrap());
    }

    #[test]
    fn quotient_ring_membership() {
        let base = qq(&["x", "y"]);
        let spec = base.quotient_by(&[base.ring().parse("x*y").unwrap()]).unwrap();
        let zero = IdealHandle::zero(&spec);
        assert!(zero.contains(&spec.ring().parse("x^2*y").unwrap()).unwrap());
        assert!(zero.is_zero().unwrap());
        let i = IdealHandle::parse(&spec, &["x + y"]).unwrap();
        // x^2 = x(x+y) - xy
        let x2 = spec.ring().parse("x^2").unwrap();
        let c = i.lift(&x2).unwrap().unwrap();
        let diff = &x2 - &(&c[0] * &i.gens()[0]);
        assert!(zero.contains(&diff).unwrap());
    }

    #[test]
    fn budget_is_reported() {
        let r = qq(&["x", "y", "z"]);
        let i = IdealHandle::parse(&r, &["x^2*y - z", "x*y^2 - 1", "x*z - y"]).unwrap().with_budget(1);
        let e = i.groebner().unwrap_err();
        assert!(e.is_budget(), "{e}");
    }

    #[test]
    fn finite_field_basis() {
        let r = RingSpec::polynomial_ring(PolyRing::with_vars(&["x", "y"], Field::Prime(5)).unwrap());
        let i = IdealHandle::parse(&r, &["2*x + 3*y", "x*y"]).unwrap();
        assert_eq!(texts(&i.groebner().unwrap()), ["x + 4*y", "y^2"]);
    }
}
