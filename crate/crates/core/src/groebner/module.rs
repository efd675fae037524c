//! Submodules of free modules `A^m`, syzygies and lifts.

use std::fmt;

use super::engine::{self, SVec};
use super::{budget_error, poly_to_svec, reduced_basis, reduce_by_basis, svec_to_poly};
use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingSpec};

/// An element of a free module `R^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    entries: Vec<Polynomial>,
}

impl ModuleElement {
    /// Entries must be nonempty and share one ring.
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(AlgebraError::DimensionMismatch("module element of length 0".into()));
        };
        if entries.iter().any(|e| e.ring() != first.ring()) {
            return Err(AlgebraError::RingMismatch("module entries from different rings".into()));
        }
        Ok(ModuleElement { entries })
    }

    pub fn parse(ring: &PolyRing, entries: &[&str]) -> Result<Self> {
        Self::new(entries.iter().map(|e| ring.parse(e)).collect::<Result<_>>()?)
    }

    pub fn zero(ring: &PolyRing, m: usize) -> Self {
        ModuleElement { entries: vec![ring.zero(); m] }
    }

    pub fn unit(ring: &PolyRing, m: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, m);
        v.entries[i] = ring.one();
        v
    }

    pub fn ring(&self) -> &PolyRing {
        self.entries[0].ring()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, c: &Polynomial) -> ModuleElement {
        ModuleElement { entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> ModuleElement {
        ModuleElement { entries: self.entries.iter().map(|e| -e).collect() }
    }

    /// `sum self_i * f_i`.
    pub fn dot(&self, f: &[Polynomial]) -> Polynomial {
        self.entries.iter().zip(f).fold(self.ring().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// Entrywise map, e.g. a normal form modulo an ideal.
    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> ModuleElement {
        ModuleElement { entries: self.entries.iter().map(f).collect() }
    }

    pub(crate) fn to_svec(&self, offset: u32) -> SVec {
        let mut v = SVec::default();
        for (i, e) in self.entries.iter().enumerate() {
            v.terms.extend(poly_to_svec(e, offset + i as u32).terms);
        }
        v
    }

    pub(crate) fn from_svec(ring: &PolyRing, v: &SVec, offset: u32, m: usize) -> ModuleElement {
        let mut parts: Vec<SVec> = vec![SVec::default(); m];
        for t in &v.terms {
            if t.pos >= offset && ((t.pos - offset) as usize) < m {
                parts[(t.pos - offset) as usize].terms.push(t.clone());
            }
        }
        ModuleElement { entries: parts.iter().map(|p| svec_to_poly(ring, p)).collect() }
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn render(ring: &PolyRing, v: &SVec) -> String {
    let m = v.max_pos().map_or(1, |p| p as usize + 1);
    ModuleElement::from_svec(ring, v, 0, m).to_string()
}

fn check_rank(ring: &PolyRing, rank: usize, gens: &[ModuleElement]) -> Result<()> {
    if rank == 0 {
        return Err(AlgebraError::DimensionMismatch("free module of rank 0".into()));
    }
    for g in gens {
        if g.len() != rank {
            return Err(AlgebraError::DimensionMismatch(format!("{g} has length {}, expected {rank}", g.len())));
        }
        if g.ring() != ring {
            return Err(AlgebraError::RingMismatch(format!("{g} is not in {ring}")));
        }
    }
    Ok(())
}

/// `J0 * e_k` for `k` in `offset..offset+rank`.
fn base_rows(spec: &RingSpec, rank: usize, offset: u32) -> Vec<SVec> {
    let mut rows = Vec::new();
    for k in 0..rank {
        for j in spec.base() {
            rows.push(poly_to_svec(j, offset + k as u32));
        }
    }
    rows
}

/// Reduced Gröbner basis of a submodule of `A^m` under position-over-term.
#[derive(Debug, Clone)]
pub struct ModuleBasis {
    spec: RingSpec,
    rank: usize,
    basis: Vec<SVec>,
}

pub fn module_gb(spec: &RingSpec, rank: usize, gens: &[ModuleElement], limit: u64) -> Result<ModuleBasis> {
    let ring = spec.ring();
    check_rank(ring, rank, gens)?;
    let mut vecs: Vec<SVec> = gens.iter().map(|g| g.to_svec(0)).collect();
    vecs.extend(base_rows(spec, rank, 0));
    let (basis, _) = engine::groebner(ring.order(), vecs, rank == 1, limit)
        .map_err(|b| budget_error(ring, limit, b, render))?;
    Ok(ModuleBasis { spec: spec.clone(), rank, basis })
}

impl ModuleBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.basis.iter().map(|v| ModuleElement::from_svec(self.spec.ring(), v, 0, self.rank)).collect()
    }

    pub fn reduce(&self, v: &ModuleElement) -> ModuleElement {
        let r = engine::normal_form(self.spec.ring().order(), &v.to_svec(0), &self.basis);
        ModuleElement::from_svec(self.spec.ring(), &r, 0, self.rank)
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Gröbner basis of the rows `(g_i | e_i)` and `(J0 e_k | 0)`. The part with
/// leading position in the first block is a basis of the submodule, the rest
/// generates the syzygies.
#[derive(Debug, Clone)]
pub struct Lifter {
    spec: RingSpec,
    rank: usize,
    count: usize,
    basis: Vec<SVec>,
}

impl Lifter {
    pub fn new(spec: &RingSpec, rank: usize, gens: &[ModuleElement], limit: u64) -> Result<Self> {
        let ring = spec.ring();
        check_rank(ring, rank, gens)?;
        let m = rank as u32;
        let mut vecs = Vec::with_capacity(gens.len() + rank * spec.base().len());
        for (i, g) in gens.iter().enumerate() {
            let mut v = g.to_svec(0);
            v.terms.push(engine::VTerm {
                pos: m + i as u32,
                mono: crate::monomial::Monomial::one(ring.nvars()),
                coeff: ring.field().one(),
            });
            vecs.push(v);
        }
        vecs.extend(base_rows(spec, rank, 0));
        let (basis, _) =
            engine::groebner(ring.order(), vecs, false, limit).map_err(|b| budget_error(ring, limit, b, render))?;
        Ok(Lifter { spec: spec.clone(), rank, count: gens.len(), basis })
    }

    /// Cofactors `c` with `v - sum c_i g_i` in `J0 A^m`, if `v` lies in the submodule.
    pub fn lift(&self, v: &ModuleElement) -> Result<Option<Vec<Polynomial>>> {
        if v.len() != self.rank {
            return Err(AlgebraError::DimensionMismatch(format!("{v} has length {}", v.len())));
        }
        let ring = self.spec.ring();
        let r = engine::normal_form(ring.order(), &v.to_svec(0), &self.basis);
        if r.terms.iter().any(|t| (t.pos as usize) < self.rank) {
            return Ok(None);
        }
        if self.count == 0 {
            return Ok(Some(Vec::new()));
        }
        let tail = ModuleElement::from_svec(ring, &r, self.rank as u32, self.count);
        Ok(Some(tail.neg().into_entries()))
    }

    /// Raw syzygy generators (leading position past the first block).
    fn syzygy_rows(&self) -> Vec<ModuleElement> {
        let ring = self.spec.ring();
        self.basis
            .iter()
            .filter(|v| v.lead().pos as usize >= self.rank)
            .map(|v| ModuleElement::from_svec(ring, v, self.rank as u32, self.count))
            .collect()
    }
}

/// Generators of the relations among a tuple of module elements, in `A`.
#[derive(Debug, Clone)]
pub struct SyzygyMatrix {
    spec: RingSpec,
    targets: Vec<ModuleElement>,
    rows: Vec<ModuleElement>,
}

impl SyzygyMatrix {
    pub fn rows(&self) -> &[ModuleElement] {
        &self.rows
    }

    pub fn targets(&self) -> &[ModuleElement] {
        &self.targets
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Length of each row (number of targets).
    pub fn width(&self) -> usize {
        self.targets.len()
    }

    /// Does `row` annihilate the targets modulo `J0`?
    pub fn is_relation(&self, row: &ModuleElement, limit: u64) -> Result<bool> {
        let j0 = reduced_basis(self.spec.ring(), self.spec.base(), limit)?;
        let rank = self.targets[0].len();
        Ok((0..rank).all(|k| {
            let s = self.targets.iter().zip(row.entries()).fold(self.spec.ring().zero(), |acc, (t, r)| {
                &acc + &(&t.entries()[k] * r)
            });
            reduce_by_basis(&s, &j0).is_zero()
        }))
    }

    /// Whether the rows generate `other` modulo `J0`.
    pub fn generates(&self, other: &[ModuleElement], limit: u64) -> Result<bool> {
        if self.rows.is_empty() {
            let j0 = reduced_basis(self.spec.ring(), self.spec.base(), limit)?;
            return Ok(other.iter().all(|v| v.entries().iter().all(|e| reduce_by_basis(e, &j0).is_zero())));
        }
        let mb = module_gb(&self.spec, self.width(), &self.rows, limit)?;
        Ok(other.iter().all(|v| mb.contains(v)))
    }
}

/// Syzygies of `(f_1..f_m)` in `A`: generators of `{r : sum r_i f_i in J0}`.
///
/// Rows are reduced modulo `J0` and rows generated by the others are
/// dropped, so e.g. `(x, y)` yields a single row.
pub fn syzygies(spec: &RingSpec, f: &[Polynomial], limit: u64) -> Result<SyzygyMatrix> {
    let targets = f.iter().map(|p| ModuleElement::new(vec![p.clone()])).collect::<Result<Vec<_>>>()?;
    module_syzygies(spec, 1, &targets, limit)
}

/// Syzygies of a tuple of elements of `A^rank`.
pub fn module_syzygies(spec: &RingSpec, rank: usize, targets: &[ModuleElement], limit: u64) -> Result<SyzygyMatrix> {
    if targets.is_empty() {
        return Err(AlgebraError::InvalidInput("syzygies of an empty tuple".into()));
    }
    let ring = spec.ring();
    let lifter = Lifter::new(spec, rank, targets, limit)?;
    let j0 = reduced_basis(ring, spec.base(), limit)?;
    let s = targets.len();
    let mut rows: Vec<ModuleElement> = Vec::new();
    for row in lifter.syzygy_rows() {
        let row = row.map(|e| reduce_by_basis(e, &j0));
        if !row.is_zero() && !rows.contains(&row) {
            rows.push(row);
        }
    }
    let mut out = SyzygyMatrix { spec: spec.clone(), targets: targets.to_vec(), rows };
    for row in &out.rows {
        if !out.is_relation(row, limit)? {
            return Err(AlgebraError::Internal(format!("{row} is not a syzygy")));
        }
    }
    // Drop rows already generated by the remaining ones.
    let mut i = out.rows.len();
    while i > 0 && out.rows.len() > 1 {
        i -= 1;
        let others: Vec<ModuleElement> =
            out.rows.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, r)| r.clone()).collect();
        let mb = module_gb(spec, s, &others, limit)?;
        if mb.contains(&out.rows[i]) {
            out.rows.remove(i);
        }
    }
    Ok(out)
}
