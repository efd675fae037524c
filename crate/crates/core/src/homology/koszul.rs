//! Exterior forms over `R^n`, the contraction differential and Koszul complexes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::matrix::{combinations, PolyMatrix};
use crate::error::{AlgebraError, Result};
use crate::groebner::{module_gb, reduce_by_basis, reduced_basis, syzygies, IdealHandle, ModuleElement};
use crate::ideal_ops::quotient;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingSpec};

fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// A sum of `c_S e_S` with `S` a subset of `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorForm {
    ring: PolyRing,
    n: usize,
    terms: BTreeMap<u32, Polynomial>,
}

impl ExteriorForm {
    pub fn zero(ring: &PolyRing, n: usize) -> Self {
        ExteriorForm { ring: ring.clone(), n, terms: BTreeMap::new() }
    }

    /// `c * e_{s_1} ∧ ... ∧ e_{s_p}` for strictly increasing indices.
    pub fn basis(ring: &PolyRing, n: usize, set: &[usize], c: Polynomial) -> Result<Self> {
        if set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&i| i >= n) {
            return Err(AlgebraError::DimensionMismatch(format!("{set:?} is not an increasing subset of 0..{n}")));
        }
        let mut f = Self::zero(ring, n);
        f.add_term(mask_of(set), c);
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(subset, coefficient)` pairs in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Polynomial)> {
        self.terms.iter().map(|(m, c)| (indices(*m), c))
    }

    pub fn coefficient(&self, set: &[usize]) -> Polynomial {
        self.terms.get(&mask_of(set)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn add_term(&mut self, mask: u32, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    pub fn add(&self, other: &ExteriorForm) -> ExteriorForm {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Polynomial) -> ExteriorForm {
        let mut out = Self::zero(&self.ring, self.n);
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    /// `self ∧ other`.
    pub fn wedge(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch(format!("forms on R^{} and R^{}", self.n, other.n)));
        }
        let mut out = Self::zero(&self.ring, self.n);
        for (&s, a) in &self.terms {
            for (&t, b) in &other.terms {
                if s & t != 0 {
                    continue;
                }
                // sign of the shuffle: pairs (i in S, j in T) with i > j
                let inversions: u32 = indices(t).iter().map(|&j| (s >> (j + 1)).count_ones()).sum();
                let c = a * b;
                out.add_term(s | t, if inversions % 2 == 0 { c } else { -&c });
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<String> = indices(*m).iter().map(|i| format!("e{}", i + 1)).collect();
                let e = if e.is_empty() { "1".to_string() } else { e.join("^") };
                format!("({c})*{e}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A linear functional `u: R^n -> R`, given by `u(e_1), ..., u(e_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    values: Vec<Polynomial>,
}

impl ContractionMap {
    pub fn new(values: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = values.first() else {
            return Err(AlgebraError::DimensionMismatch("functional on R^0".into()));
        };
        if values.len() > 31 {
            return Err(AlgebraError::DimensionMismatch("at most 31 basis vectors".into()));
        }
        if values.iter().any(|v| v.ring() != first.ring()) {
            return Err(AlgebraError::RingMismatch("functional values in different rings".into()));
        }
        Ok(ContractionMap { values })
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `d_u(e_{s_1} ∧ ... ∧ e_{s_p}) = sum_i (-1)^(i+1) u(e_{s_i}) e_{s_1} ∧ .. (omit s_i) .. ∧ e_{s_p}`.
    pub fn apply(&self, form: &ExteriorForm) -> Result<ExteriorForm> {
        if form.n != self.n() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "form on R^{} for a functional on R^{}",
                form.n,
                self.n()
            )));
        }
        let mut out = ExteriorForm::zero(&form.ring, form.n);
        for (&mask, c) in &form.terms {
            for (pos, &s) in indices(mask).iter().enumerate() {
                let v = &self.values[s] * c;
                out.add_term(mask & !(1 << s), if pos % 2 == 0 { v } else { -&v });
            }
        }
        Ok(out)
    }
}

pub fn koszul_contraction(u: &ContractionMap, form: &ExteriorForm) -> Result<ExteriorForm> {
    u.apply(form)
}

/// The Koszul complex of `(f_1..f_n)`: `differentials[p-1]` is the matrix of
/// `d: Λ^p -> Λ^(p-1)` in the bases `e_S`, subsets in combination order.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    spec: RingSpec,
    values: Vec<Polynomial>,
    differentials: Vec<PolyMatrix>,
}

impl KoszulComplex {
    pub fn build(spec: &RingSpec, values: &[Polynomial]) -> Result<Self> {
        let u = ContractionMap::new(values.to_vec())?;
        let ring = spec.ring();
        if values[0].ring() != ring {
            return Err(AlgebraError::RingMismatch("Koszul values outside the ring".into()));
        }
        let n = values.len();
        let mut differentials = Vec::with_capacity(n);
        for p in 1..=n {
            let src = combinations(n, p);
            let dst = combinations(n, p - 1);
            let row_of: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(i, s)| (mask_of(s), i)).collect();
            let mut m = PolyMatrix::zero(ring, dst.len(), src.len());
            for (j, s) in src.iter().enumerate() {
                let image = u.apply(&ExteriorForm::basis(ring, n, s, ring.one())?)?;
                for (&mask, c) in &image.terms {
                    m.set(row_of[&mask], j, c.clone());
                }
            }
            differentials.push(m);
        }
        Ok(KoszulComplex { spec: spec.clone(), values: values.to_vec(), differentials })
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    /// Matrix of `d: Λ^p -> Λ^(p-1)`, `1 <= p <= n`.
    pub fn differential(&self, p: usize) -> Option<&PolyMatrix> {
        p.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    /// Exact check that consecutive differentials compose to zero in `A`.
    pub fn is_complex(&self, limit: u64) -> Result<bool> {
        let j0 = reduced_basis(self.spec.ring(), self.spec.base(), limit)?;
        for w in self.differentials.windows(2) {
            let prod = w[0].mul(&w[1])?;
            if !prod.map(|e| reduce_by_basis(e, &j0)).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exactness of the length-two Koszul complex `0 -> A -> A^2 -> A` of `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KoszulExactness {
    Exact,
    /// `witness * x = 0` in `A` with `witness != 0`.
    Annihilator { witness: Polynomial },
    /// A relation `(a, b)` with `a*x + b*y = 0` outside `<(-y, x)>`.
    ExtraSyzygy { witness: Vec<Polynomial> },
}

impl KoszulExactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, KoszulExactness::Exact)
    }
}

pub fn koszul2_exactness(spec: &RingSpec, x: &Polynomial, y: &Polynomial, limit: u64) -> Result<KoszulExactness> {
    let ring = spec.ring();
    if x.ring() != ring || y.ring() != ring {
        return Err(AlgebraError::RingMismatch("pair outside the ring".into()));
    }
    let zero = IdealHandle::zero(spec).with_budget(limit);
    let ann = quotient(&zero, x)?;
    for g in ann.gens() {
        let g = zero.normal_form(g)?;
        if !g.is_zero() {
            return Ok(KoszulExactness::Annihilator { witness: g });
        }
    }
    let koszul = ModuleElement::new(vec![-y, x.clone()])?;
    let syz = syzygies(spec, &[x.clone(), y.clone()], limit)?;
    if !syz.generates(std::slice::from_ref(&koszul), limit)? {
        return Err(AlgebraError::Internal(format!("{koszul} is not in the computed syzygies")));
    }
    let phi = module_gb(spec, 2, &[koszul], limit)?;
    for row in syz.rows() {
        if !phi.contains(row) {
            return Ok(KoszulExactness::ExtraSyzygy { witness: row.entries().to_vec() });
        }
    }
    Ok(KoszulExactness::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_GB_STEPS as B;
    use crate::scalar::Field;

    fn qq(vars: &[&str]) -> RingSpec {
        RingSpec::polynomial_ring(PolyRing::with_vars(vars, Field::Rational).unwrap())
    }

    #[test]
    fn contraction_examples() {
        let r = qq(&["x", "y", "z"]);
        let ring = r.ring();
        let u = ContractionMap::new(vec![ring.parse("x").unwrap(), ring.parse("y").unwrap()]).unwrap();
        let e12 = ExteriorForm::basis(ring, 2, &[0, 1], ring.one()).unwrap();
        let d = u.apply(&e12).unwrap();
        assert_eq!(d.coefficient(&[1]).to_string(), "x");
        assert_eq!(d.coefficient(&[0]).to_string(), "-y");
        let e1 = ExteriorForm::basis(ring, 2, &[0], ring.one()).unwrap();
        assert_eq!(u.apply(&e1).unwrap().coefficient(&[]).to_string(), "x");
        let u3 = ContractionMap::new(["x", "y", "z"].iter().map(|s| ring.parse(s).unwrap()).collect()).unwrap();
        let e123 = ExteriorForm::basis(ring, 3, &[0, 1, 2], ring.one()).unwrap();
        assert!(u3.apply(&u3.apply(&e123).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn koszul_matrices() {
        let r = qq(&["x", "y", "z"]);
        let p = |s: &str| r.ring().parse(s).unwrap();
        let k = KoszulComplex::build(&r, &[p("x")]).unwrap();
        assert_eq!(k.differential(1).unwrap().to_string(), "[[x]]");
        let k = KoszulComplex::build(&r, &[p("x"), p("y")]).unwrap();
        assert_eq!(k.differential(1).unwrap().to_string(), "[[x, y]]");
        assert_eq!(k.differential(2).unwrap().to_string(), "[[-y], [x]]");
        let k = KoszulComplex::build(&r, &[p("x"), p("y"), p("z")]).unwrap();
        assert_eq!(k.differential(2).unwrap().to_string(), "[[-y, -z, 0], [x, 0, -z], [0, x, y]]");
        assert!(k.is_complex(B).unwrap());
    }

    #[test]
    fn wedge_signs() {
        let r = qq(&["x"]);
        let ring = r.ring();
        let e1 = ExteriorForm::basis(ring, 2, &[0], ring.one()).unwrap();
        let e2 = ExteriorForm::basis(ring, 2, &[1], ring.one()).unwrap();
        assert_eq!(e2.wedge(&e1).unwrap().coefficient(&[0, 1]).to_string(), "-1");
        assert!(e1.wedge(&e1).unwrap().is_zero());
    }

    #[test]
    fn length_two_exactness() {
        let r = qq(&["x", "y"]);
        let p = |s: &str| r.ring().parse(s).unwrap();
        assert!(koszul2_exactness(&r, &p("x"), &p("y"), B).unwrap().is_exact());
        match koszul2_exactness(&r, &p("x"), &p("x"), B).unwrap() {
            KoszulExactness::ExtraSyzygy { witness } => {
                assert!(witness[0].is_constant() && !witness[0].is_zero());
            }
            other => panic!("{other:?}"),
        }
        let b = qq(&["x", "y", "z"]);
        let q = b.quotient_by(&[b.ring().parse("x*z").unwrap()]).unwrap();
        let p = |s: &str| q.ring().parse(s).unwrap();
        match koszul2_exactness(&q, &p("x"), &p("y"), B).unwrap() {
            KoszulExactness::Annihilator { witness } => assert_eq!(witness.to_string(), "z"),
            other => panic!("{other:?}"),
        }
    }
}
