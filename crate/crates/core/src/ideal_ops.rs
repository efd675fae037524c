//! Quotients, saturation, intersection, elimination, radical membership and
//! dimension, all reduced to Gröbner computations.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::{basis_hash, reduced_basis, IdealHandle};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingSpec};

/// Largest exponent tried when looking for `f^e` in `I`.
pub const MAX_RADICAL_EXPONENT: u32 = 12;

fn check_same(i: &IdealHandle, j: &IdealHandle) -> Result<()> {
    if i.spec() != j.spec() {
        return Err(AlgebraError::RingMismatch(format!("{} vs {}", i.spec(), j.spec())));
    }
    Ok(())
}

fn check_poly(i: &IdealHandle, f: &Polynomial) -> Result<()> {
    if f.ring() != i.ring() {
        return Err(AlgebraError::RingMismatch(format!("{f} is not in {}", i.ring())));
    }
    Ok(())
}

/// Adjoin one fresh variable `t` (eliminated first) to `ring`.
fn with_aux(ring: &PolyRing, stem: &str) -> Result<(PolyRing, Polynomial, Vec<usize>)> {
    let name = ring.fresh_name(stem);
    let (ext, map) = ring.extend(&[name.as_str()])?;
    let t = ext.var(&name)?;
    Ok((ext, t, map))
}

/// Elements of the reduced basis of `gens` free of the first variable, moved back to `ring`.
fn eliminate_first(ext: &PolyRing, gens: &[Polynomial], ring: &PolyRing, limit: u64) -> Result<Vec<Polynomial>> {
    let basis = reduced_basis(ext, gens, limit)?;
    basis.iter().filter(|g| g.avoids(&[0])).map(|g| g.to_ring(ring)).collect()
}

/// `(a) ∩ (b)` in the polynomial ring via `t*a + (1-t)*b`.
fn intersect_gens(ring: &PolyRing, a: &[Polynomial], b: &[Polynomial], limit: u64) -> Result<Vec<Polynomial>> {
    let (ext, t, map) = with_aux(ring, "t")?;
    let one_minus_t = &ext.one() - &t;
    let mut gens: Vec<Polynomial> = a.iter().map(|g| &t * &g.remap(&ext, &map)).collect();
    gens.extend(b.iter().map(|g| &one_minus_t * &g.remap(&ext, &map)));
    eliminate_first(&ext, &gens, ring, limit)
}

/// `(I : f) = {g : g*f in I}`.
///
/// Computed as `(I ∩ (f)) / f` in the polynomial ring with `J0` added to `I`.
/// If `f` is zero in `A` the result is the unit ideal.
pub fn quotient(i: &IdealHandle, f: &Polynomial) -> Result<IdealHandle> {
    check_poly(i, f)?;
    let base = i.derive(Vec::new());
    if base.contains(f)? {
        return Ok(i.derive(vec![i.ring().one()]));
    }
    let ring = i.ring();
    let k = intersect_gens(ring, &i.gens_with_base(), std::slice::from_ref(f), i.budget())?;
    let gens = k
        .iter()
        .map(|g| g.exact_div(f).ok_or_else(|| AlgebraError::Internal(format!("{f} does not divide {g}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(i.derive(gens))
}

/// `(I : J)`, the intersection of `(I : g)` over generators `g` of `J`.
pub fn quotient_ideal(i: &IdealHandle, j: &IdealHandle) -> Result<IdealHandle> {
    check_same(i, j)?;
    let mut acc = i.derive(vec![i.ring().one()]);
    for g in j.gens() {
        let q = quotient(i, g)?;
        acc = intersect(&acc, &q)?;
    }
    Ok(acc)
}

/// `(I : f^∞)` by adjoining `1 - t*f` and eliminating `t`.
pub fn saturate(i: &IdealHandle, f: &Polynomial) -> Result<IdealHandle> {
    check_poly(i, f)?;
    let ring = i.ring();
    let (ext, t, map) = with_aux(ring, "t")?;
    let mut gens: Vec<Polynomial> = i.gens_with_base().iter().map(|g| g.remap(&ext, &map)).collect();
    gens.push(&ext.one() - &(&t * &f.remap(&ext, &map)));
    Ok(i.derive(eliminate_first(&ext, &gens, ring, i.budget())?))
}

pub fn intersect(i: &IdealHandle, j: &IdealHandle) -> Result<IdealHandle> {
    check_same(i, j)?;
    let gens = intersect_gens(i.ring(), &i.gens_with_base(), &j.gens_with_base(), i.budget())?;
    Ok(i.derive(gens))
}

/// `I ∩ k[remaining variables]`, returned as an ideal of the same ring.
pub fn eliminate(i: &IdealHandle, vars: &[&str]) -> Result<IdealHandle> {
    let ring = i.ring();
    let idx = vars
        .iter()
        .map(|v| ring.var_index(v).ok_or_else(|| AlgebraError::InvalidInput(format!("unknown variable {v}"))))
        .collect::<Result<Vec<_>>>()?;
    let elim = ring.elimination_ring(&idx)?;
    let gens = i.gens_with_base().iter().map(|g| g.to_ring(&elim)).collect::<Result<Vec<_>>>()?;
    let basis = reduced_basis(&elim, &gens, i.budget())?;
    let kept = basis.iter().filter(|g| g.avoids(&idx)).map(|g| g.to_ring(ring)).collect::<Result<Vec<_>>>()?;
    Ok(i.derive(kept))
}

/// Outcome of a Rabinowitsch test `1 ∈ I + (1 - t*f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalWitness {
    pub f: Polynomial,
    pub member: bool,
    /// Least `e ≤ MAX_RADICAL_EXPONENT` with `f^e ∈ I`, when one was found.
    pub exponent: Option<u32>,
    /// Hash of the reduced basis of `I + (1 - t*f)` in the extended ring.
    pub aux_gb_hash: String,
}

pub fn radical_member(f: &Polynomial, i: &IdealHandle) -> Result<RadicalWitness> {
    check_poly(i, f)?;
    let ring = i.ring();
    let (ext, t, map) = with_aux(ring, "t")?;
    let mut gens: Vec<Polynomial> = i.gens_with_base().iter().map(|g| g.remap(&ext, &map)).collect();
    gens.push(&ext.one() - &(&t * &f.remap(&ext, &map)));
    let basis = reduced_basis(&ext, &gens, i.budget())?;
    let member = basis.len() == 1 && basis[0].is_unit();
    let exponent = if member { least_exponent(f, i)? } else { None };
    Ok(RadicalWitness { f: f.clone(), member, exponent, aux_gb_hash: basis_hash(&ext, &basis) })
}

fn least_exponent(f: &Polynomial, i: &IdealHandle) -> Result<Option<u32>> {
    let mut p = i.normal_form(f)?;
    for e in 1..=MAX_RADICAL_EXPONENT {
        if p.is_zero() {
            return Ok(Some(e));
        }
        p = i.normal_form(&(&p * f))?;
    }
    Ok(None)
}

impl RadicalWitness {
    /// Recompute the witness against `i` and compare.
    pub fn replay(&self, i: &IdealHandle) -> Result<bool> {
        let again = radical_member(&self.f, i)?;
        if let Some(e) = self.exponent {
            if !i.contains(&self.f.pow(e))? {
                return Ok(false);
            }
        }
        Ok(again == *self)
    }
}

/// `√I = √J`: a witness for every generator in each direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalEqualityCertificate {
    pub left: Vec<Polynomial>,
    pub right: Vec<Polynomial>,
    /// Generators of the left ideal in the radical of the right one.
    pub left_in_right: Vec<RadicalWitness>,
    pub right_in_left: Vec<RadicalWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalComparison {
    Equal(RadicalEqualityCertificate),
    /// `generator` (of the left ideal when `from_left`) is not in the other radical.
    Refuted { generator: Polynomial, from_left: bool, witness: RadicalWitness },
}

pub fn radical_equal(i: &IdealHandle, j: &IdealHandle) -> Result<RadicalComparison> {
    check_same(i, j)?;
    let mut left_in_right = Vec::new();
    for g in i.gens() {
        let w = radical_member(g, j)?;
        if !w.member {
            return Ok(RadicalComparison::Refuted { generator: g.clone(), from_left: true, witness: w });
        }
        left_in_right.push(w);
    }
    let mut right_in_left = Vec::new();
    for g in j.gens() {
        let w = radical_member(g, i)?;
        if !w.member {
            return Ok(RadicalComparison::Refuted { generator: g.clone(), from_left: false, witness: w });
        }
        right_in_left.push(w);
    }
    Ok(RadicalComparison::Equal(RadicalEqualityCertificate {
        left: i.gens().to_vec(),
        right: j.gens().to_vec(),
        left_in_right,
        right_in_left,
    }))
}

impl RadicalEqualityCertificate {
    pub fn replay(&self, i: &IdealHandle, j: &IdealHandle) -> Result<bool> {
        if self.left != i.gens() || self.right != j.gens() {
            return Ok(false);
        }
        for w in &self.left_in_right {
            if !w.member || !w.replay(j)? {
                return Ok(false);
            }
        }
        for w in &self.right_in_left {
            if !w.member || !w.replay(i)? {
                return Ok(false);
            }
        }
        Ok(self.left_in_right.len() == self.left.len() && self.right_in_left.len() == self.right.len())
    }
}

/// Krull dimension of `A/I` and the coheight-style height of `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub ideal: Vec<Polynomial>,
    /// Leading monomials of the reduced basis of `I + J0`.
    pub leading_terms: Vec<String>,
    /// A largest set of variables independent modulo the leading-term ideal.
    pub independent_set: Vec<String>,
    /// `None` for the unit ideal.
    pub dim: Option<usize>,
    pub ambient_dim: usize,
    /// `ambient_dim - dim`; `None` for the unit ideal.
    pub height: Option<usize>,
    pub height_definition: &'static str,
}

/// Largest variable set `U` such that no leading monomial is supported in `U`;
/// ties go to the first set in lexicographic index order.
fn max_independent(nvars: usize, leads: &[Vec<usize>]) -> Vec<usize> {
    for size in (0..=nvars).rev() {
        let mut found = None;
        for_each_subset(nvars, size, &mut |set: &[usize]| {
            if found.is_none() && leads.iter().all(|supp| !supp.iter().all(|v| set.contains(v))) {
                found = Some(set.to_vec());
            }
        });
        if let Some(s) = found {
            return s;
        }
    }
    Vec::new()
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

fn dim_of(basis: &[Polynomial], ring: &PolyRing) -> (Option<usize>, Vec<usize>) {
    if basis.iter().any(|g| g.is_unit()) {
        return (None, Vec::new());
    }
    let leads: Vec<Vec<usize>> =
        basis.iter().filter_map(|g| g.leading_monomial()).map(|m| m.support().collect()).collect();
    let set = max_independent(ring.nvars(), &leads);
    (Some(set.len()), set)
}

/// Dimension of `A` itself.
pub fn ambient_dimension(spec: &RingSpec, limit: u64) -> Result<usize> {
    let basis = reduced_basis(spec.ring(), spec.base(), limit)?;
    dim_of(&basis, spec.ring())
        .0
        .ok_or_else(|| AlgebraError::InvalidInput(format!("{spec} is the zero ring")))
}

pub fn dimension_height(i: &IdealHandle) -> Result<DimensionReport> {
    let ring = i.ring();
    let basis = i.groebner()?;
    let (dim, set) = dim_of(&basis, ring);
    let ambient_dim = ambient_dimension(i.spec(), i.budget())?;
    let leading_terms = basis
        .iter()
        .filter_map(|g| g.leading_monomial())
        .map(|m| Polynomial::monomial(ring, m.clone(), ring.field().one()).to_string())
        .collect();
    Ok(DimensionReport {
        ideal: i.gens().to_vec(),
        leading_terms,
        independent_set: set.iter().map(|&v| ring.names()[v].clone()).collect(),
        dim,
        ambient_dim,
        height: dim.map(|d| ambient_dim - d),
        height_definition: "coheight",
    })
}

impl DimensionReport {
    pub fn replay(&self, i: &IdealHandle) -> Result<bool> {
        Ok(dimension_height(i)? == *self)
    }
}
