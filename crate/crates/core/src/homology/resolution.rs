//! Free resolutions, Ext, conormal modules and Fitting ideals.

use serde::Serialize;

use super::matrix::{PolyMatrix, PresentationMatrix};
use crate::error::{AlgebraError, Result};
use crate::groebner::{module_syzygies, reduce_by_basis, reduced_basis, syzygies, IdealHandle, ModuleElement};
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// Longest resolution we build.
pub const MAX_RESOLUTION_LENGTH: usize = 4;

/// `0 <- A/I <- A^{b_0} <- A^{b_1} <- ...` with `d_k: A^{b_k} -> A^{b_{k-1}}`.
///
/// Built from iterated syzygies with redundant generators dropped; it is
/// not guaranteed to be minimal.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    spec: RingSpec,
    /// `maps[k-1]` is `d_k`, of size `b_{k-1} x b_k`.
    maps: Vec<PolyMatrix>,
    /// True when the last syzygy module computed was zero.
    complete: bool,
}

impl FreeResolution {
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![1];
        b.extend(self.maps.iter().map(|m| m.cols()));
        b
    }

    pub fn map(&self, k: usize) -> Option<&PolyMatrix> {
        k.checked_sub(1).and_then(|i| self.maps.get(i))
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Consecutive maps compose to zero modulo `J0`.
    pub fn is_complex(&self, limit: u64) -> Result<bool> {
        let j0 = reduced_basis(self.spec.ring(), self.spec.base(), limit)?;
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.map(|e| reduce_by_basis(e, &j0)).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn free_resolution(ideal: &IdealHandle, length: usize) -> Result<FreeResolution> {
    if length == 0 || length > MAX_RESOLUTION_LENGTH {
        return Err(AlgebraError::InvalidInput(format!("resolution length must be in 1..={MAX_RESOLUTION_LENGTH}")));
    }
    let spec = ideal.spec();
    let ring = spec.ring();
    let limit = ideal.budget();
    let zero = ideal.derive(Vec::new());
    let mut gens = Vec::new();
    for g in ideal.gens() {
        let g = zero.normal_form(g)?;
        if !g.is_zero() && !gens.contains(&g) {
            gens.push(g);
        }
    }
    if gens.is_empty() {
        return Ok(FreeResolution { spec: spec.clone(), maps: Vec::new(), complete: true });
    }
    let d1 = PolyMatrix::from_rows(ring, vec![gens])?;
    let mut maps = vec![d1];
    let mut complete = false;
    while maps.len() < length {
        let last = maps.last().unwrap();
        let targets: Vec<ModuleElement> =
            (0..last.cols()).map(|j| ModuleElement::new(last.column(j))).collect::<Result<_>>()?;
        let syz = module_syzygies(spec, last.rows(), &targets, limit)?;
        if syz.rows().is_empty() {
            complete = true;
            break;
        }
        maps.push(PolyMatrix::from_columns(ring, last.cols(), syz.rows())?);
    }
    if !complete && maps.len() == length {
        let last = maps.last().unwrap();
        let targets: Vec<ModuleElement> =
            (0..last.cols()).map(|j| ModuleElement::new(last.column(j))).collect::<Result<_>>()?;
        complete = module_syzygies(spec, last.rows(), &targets, limit)?.rows().is_empty();
    }
    Ok(FreeResolution { spec: spec.clone(), maps, complete })
}

/// Module generators `K` of `ker(M)` for a matrix `M: A^c -> A^r`, as elements of `A^c`.
fn kernel(spec: &RingSpec, m: &PolyMatrix, limit: u64) -> Result<Vec<ModuleElement>> {
    let targets: Vec<ModuleElement> =
        (0..m.cols()).map(|j| ModuleElement::new(m.column(j))).collect::<Result<_>>()?;
    Ok(module_syzygies(spec, m.rows(), &targets, limit)?.rows().to_vec())
}

/// Presentation of `sub/im` where `sub` is generated by `gens` and `im` by `rels`, inside `A^n`.
fn subquotient(
    spec: &RingSpec,
    n: usize,
    gens: &[ModuleElement],
    rels: &[ModuleElement],
    limit: u64,
) -> Result<PolyMatrix> {
    let ring = spec.ring();
    if gens.is_empty() {
        return Ok(PolyMatrix::zero(ring, 0, 0));
    }
    let mut all = gens.to_vec();
    all.extend(rels.iter().cloned());
    let syz = module_syzygies(spec, n, &all, limit)?;
    let cols: Vec<ModuleElement> =
        syz.rows().iter().map(|r| ModuleElement::new(r.entries()[..gens.len()].to_vec())).collect::<Result<_>>()?;
    if cols.is_empty() {
        return Ok(PolyMatrix::zero(ring, gens.len(), 0));
    }
    PolyMatrix::from_columns(ring, gens.len(), &cols)
}

/// `Ext^r_A(A/I, A)` presented over `A/I`, with its Fitting data.
#[derive(Debug, Clone)]
pub struct ExtModule {
    pub index: usize,
    pub presentation: PresentationMatrix,
    pub fitting: FittingIdealSet,
    /// `Fitt_1 = (1)` over `A/I`.
    pub locally_cyclic: bool,
}

pub fn ext_module(ideal: &IdealHandle, r: usize) -> Result<ExtModule> {
    if r == 0 || r + 1 > MAX_RESOLUTION_LENGTH + 1 {
        return Err(AlgebraError::InvalidInput(format!("Ext index must be in 1..={MAX_RESOLUTION_LENGTH}")));
    }
    let spec = ideal.spec();
    let ring = spec.ring();
    let limit = ideal.budget();
    let res = free_resolution(ideal, (r + 1).min(MAX_RESOLUTION_LENGTH))?;
    let betti = res.betti();
    let over = spec.quotient_by(ideal.gens())?;
    let matrix = if r >= betti.len() {
        PolyMatrix::zero(ring, 0, 0)
    } else {
        let br = betti[r];
        let ker = match res.map(r + 1) {
            Some(next) => kernel(spec, &next.transpose(), limit)?,
            None if r + 1 > MAX_RESOLUTION_LENGTH && !res.is_complete() => {
                return Err(AlgebraError::InvalidInput("resolution too short for this Ext index".into()))
            }
            None => (0..br).map(|i| ModuleElement::unit(ring, br, i)).collect(),
        };
        let dr = res.map(r).expect("slot r exists");
        let im: Vec<ModuleElement> = (0..dr.rows()).map(|i| ModuleElement::new(dr.row(i))).collect::<Result<_>>()?;
        subquotient(spec, br, &ker, &im, limit)?
    };
    let presentation = PresentationMatrix::new(&over, matrix, limit)?;
    let fitting = fitting_ideals(&presentation, limit)?;
    let locally_cyclic = fitting.ideal(1).is_unit()?;
    Ok(ExtModule { index: r, presentation, fitting, locally_cyclic })
}

/// `I/I^2` over `A/I`: one generator per generator of `I`, relations the
/// syzygies of the generators.
pub fn conormal_presentation(ideal: &IdealHandle) -> Result<PresentationMatrix> {
    let spec = ideal.spec();
    let ring = spec.ring();
    let gens = ideal.gens();
    if gens.is_empty() {
        return Err(AlgebraError::InvalidInput("conormal module of an ideal without generators".into()));
    }
    let syz = syzygies(spec, gens, ideal.budget())?;
    let m = if syz.rows().is_empty() {
        PolyMatrix::zero(ring, gens.len(), 0)
    } else {
        PolyMatrix::from_columns(ring, gens.len(), syz.rows())?
    };
    PresentationMatrix::new(&spec.quotient_by(gens)?, m, ideal.budget())
}

/// `Fitt_0 ⊆ Fitt_1 ⊆ ... ⊆ Fitt_b = (1)` of a presentation with `b` generators.
#[derive(Debug, Clone)]
pub struct FittingIdealSet {
    ideals: Vec<IdealHandle>,
}

impl FittingIdealSet {
    /// `Fitt_k`; `(1)` for `k >= b`.
    pub fn ideal(&self, k: usize) -> &IdealHandle {
        &self.ideals[k.min(self.ideals.len() - 1)]
    }

    pub fn ideals(&self) -> &[IdealHandle] {
        &self.ideals
    }
}

fn fitting_ideal(p: &PresentationMatrix, k: usize, limit: u64) -> Result<IdealHandle> {
    let spec = p.spec();
    let b = p.generators();
    let unit = IdealHandle::unit(spec).with_budget(limit);
    if k >= b {
        return Ok(unit);
    }
    let s = b - k;
    if s > p.relations() {
        return Ok(unit.derive(Vec::new()));
    }
    let zero = unit.derive(Vec::new());
    let mut gens: Vec<Polynomial> = Vec::new();
    for m in p.matrix().minors(s) {
        let m = zero.normal_form(&m)?;
        if !m.is_zero() && !gens.contains(&m) {
            gens.push(m);
        }
    }
    Ok(unit.derive(gens))
}

pub fn fitting_ideals(p: &PresentationMatrix, limit: u64) -> Result<FittingIdealSet> {
    let ideals = (0..=p.generators()).map(|k| fitting_ideal(p, k, limit)).collect::<Result<Vec<_>>>()?;
    for w in ideals.windows(2) {
        if !w[1].contains_ideal(&w[0])? {
            return Err(AlgebraError::Internal("Fitting ideals do not form a chain".into()));
        }
    }
    Ok(FittingIdealSet { ideals })
}

/// `Fitt_{r-1} = 0` and `1 = sum c_i m_i` over `r`-th Fitting generators `m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveRankCertificate {
    pub rank: usize,
    pub minors: Vec<Polynomial>,
    pub cofactors: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectiveRank {
    Certified(ProjectiveRankCertificate),
    /// `Fitt_{rank-1}` contains a nonzero element.
    LowerFittingNonzero { index: usize, element: Polynomial },
    /// `Fitt_rank` is a proper ideal.
    UpperFittingProper { index: usize, generators: Vec<Polynomial> },
}

impl ProjectiveRank {
    pub fn is_certified(&self) -> bool {
        matches!(self, ProjectiveRank::Certified(_))
    }
}

pub fn projective_rank_certificate(p: &PresentationMatrix, rank: usize, limit: u64) -> Result<ProjectiveRank> {
    if rank > 0 {
        let lower = fitting_ideal(p, rank - 1, limit)?;
        if let Some(g) = lower.gens().first() {
            return Ok(ProjectiveRank::LowerFittingNonzero { index: rank - 1, element: g.clone() });
        }
    }
    let upper = fitting_ideal(p, rank, limit)?;
    if !upper.is_unit()? {
        return Ok(ProjectiveRank::UpperFittingProper { index: rank, generators: upper.gens().to_vec() });
    }
    // a small subset of minors that already generates (1)
    let mut chosen: Vec<Polynomial> = Vec::new();
    for g in upper.gens() {
        chosen.push(g.clone());
        if upper.derive(chosen.clone()).is_unit()? {
            break;
        }
    }
    let sub = upper.derive(chosen.clone());
    let one = p.spec().ring().one();
    let cofactors = sub
        .lift(&one)?
        .ok_or_else(|| AlgebraError::Internal("unit ideal does not lift 1".into()))?;
    Ok(ProjectiveRank::Certified(ProjectiveRankCertificate { rank, minors: chosen, cofactors }))
}

impl ProjectiveRankCertificate {
    /// Check `1 - sum c_i m_i ∈ J0`, that each `m_i` is an `r`-th Fitting
    /// generator, and that `Fitt_{r-1}` vanishes.
    pub fn replay(&self, p: &PresentationMatrix, limit: u64) -> Result<bool> {
        let spec = p.spec();
        let zero = IdealHandle::zero(spec).with_budget(limit);
        if self.rank > 0 && !fitting_ideal(p, self.rank - 1, limit)?.gens().is_empty() {
            return Ok(false);
        }
        let upper = fitting_ideal(p, self.rank, limit)?;
        if self.minors.iter().any(|m| !upper.gens().contains(m)) && !(upper.gens().is_empty() && self.minors.is_empty()) {
            return Ok(false);
        }
        let ring = spec.ring();
        let sum = self.minors.iter().zip(&self.cofactors).fold(ring.zero(), |acc, (m, c)| &acc + &(m * c));
        zero.contains(&(&ring.one() - &sum))
    }
}
