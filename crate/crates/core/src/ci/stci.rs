//! Complete intersections from a free conormal basis, set-theoretic complete
//! intersection verification and search.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lci::mod_square_generation;
use super::regular::{is_regular_sequence, regularize_generators, RegSeqCertificate, RegularOutcome, RegularizeOutcome};
use super::{random, PipelineConfig};
use crate::error::{AlgebraError, Result};
use crate::groebner::IdealHandle;
use crate::ideal_ops::{dimension_height, radical_equal, DimensionReport, RadicalComparison, RadicalEqualityCertificate};
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// `I = (c, d)` with `(c, d)` regular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CiCertificate {
    pub ideal: Vec<Polynomial>,
    pub pair: [Polynomial; 2],
    /// Hash of the common reduced basis of `I` and `(c, d)`.
    pub gb_hash: String,
    /// Each generator of `I` as a combination of `c, d`.
    pub ideal_in_pair: Vec<Vec<Polynomial>>,
    /// `c` and `d` as combinations of the generators of `I`.
    pub pair_in_ideal: Vec<Vec<Polynomial>>,
    pub regular: RegSeqCertificate,
    /// How the pair was obtained: `given`, `regularized`, `square-perturbation` or `random-pair`.
    pub origin: &'static str,
    pub trial: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CiOutcome {
    Certified(CiCertificate),
    /// Nothing found within the trial budget; existence is not in question.
    Inconclusive { trials: u32 },
}

fn combination_matches(target: &Polynomial, gens: &[Polynomial], cofactors: &[Polynomial], zero: &IdealHandle) -> Result<bool> {
    if gens.len() != cofactors.len() {
        return Ok(false);
    }
    let ring = target.ring();
    let sum = gens.iter().zip(cofactors).fold(ring.zero(), |acc, (g, c)| &acc + &(g * c));
    zero.contains(&(target - &sum))
}

/// Certificate for `I = (c, d)` if it holds and `(c, d)` is regular.
fn ci_if_equal(ideal: &IdealHandle, pair: [Polynomial; 2], origin: &'static str, trial: Option<u32>) -> Result<Option<CiCertificate>> {
    let sub = ideal.derive(pair.to_vec());
    if !sub.equals(ideal)? {
        return Ok(None);
    }
    let zero = ideal.derive(Vec::new());
    let RegularOutcome::Regular(regular) = is_regular_sequence(&pair, &zero)? else {
        return Ok(None);
    };
    let lift_all = |from: &IdealHandle, targets: &[Polynomial]| -> Result<Vec<Vec<Polynomial>>> {
        targets
            .iter()
            .map(|t| from.lift(t)?.ok_or_else(|| AlgebraError::Internal(format!("{t} does not lift"))))
            .collect()
    };
    Ok(Some(CiCertificate {
        ideal: ideal.gens().to_vec(),
        gb_hash: ideal.gb_hash()?,
        ideal_in_pair: lift_all(&sub, ideal.gens())?,
        pair_in_ideal: lift_all(ideal, &pair)?,
        pair,
        regular,
        origin,
        trial,
    }))
}

/// Turn a basis `(c, d)` of `I/I^2` into generators of `I` forming a regular sequence.
///
/// Tries `(c, d)` itself (regularized if needed), then `(c + δ1, d + δ2)`
/// with `δi` random in `I^2`, then random pairs of elements of `I`.
pub fn ci_from_free_conormal(ideal: &IdealHandle, pair: [Polynomial; 2], cfg: &PipelineConfig) -> Result<CiOutcome> {
    if !mod_square_generation(ideal, &pair)?.generates() {
        return Err(AlgebraError::InvalidInput("the pair does not generate I modulo I^2".into()));
    }
    if ideal.derive(pair.to_vec()).equals(ideal)? {
        if let Some(c) = ci_if_equal(ideal, pair.clone(), "given", None)? {
            return Ok(CiOutcome::Certified(c));
        }
        if let RegularizeOutcome::Regularized(r) = regularize_generators(ideal, &pair, cfg)? {
            let g = [r.generators[0].clone(), r.generators[1].clone()];
            if let Some(c) = ci_if_equal(ideal, g, "regularized", None)? {
                return Ok(CiOutcome::Certified(c));
            }
        }
    }
    let ring = ideal.ring();
    let square = ideal.product(ideal)?;
    let degree = cfg.degree_bound_for(ideal.gens());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for trial in 0..cfg.trials {
        let candidate = if trial < cfg.trials / 2 {
            let (d1, _) = random::combination(&mut rng, ring, square.gens(), Some(2 * degree));
            let (d2, _) = random::combination(&mut rng, ring, square.gens(), Some(2 * degree));
            [&pair[0] + &d1, &pair[1] + &d2]
        } else {
            let (a, _) = random::combination(&mut rng, ring, ideal.gens(), Some(degree));
            let (b, _) = random::combination(&mut rng, ring, ideal.gens(), Some(degree));
            [a, b]
        };
        let origin = if trial < cfg.trials / 2 { "square-perturbation" } else { "random-pair" };
        if let Some(c) = ci_if_equal(ideal, candidate, origin, Some(trial))? {
            return Ok(CiOutcome::Certified(c));
        }
    }
    Ok(CiOutcome::Inconclusive { trials: cfg.trials })
}

impl CiCertificate {
    pub fn replay(&self, ideal: &IdealHandle) -> Result<bool> {
        if ideal.gens() != self.ideal.as_slice() {
            return Ok(false);
        }
        let zero = ideal.derive(Vec::new());
        let sub = ideal.derive(self.pair.to_vec());
        if self.ideal_in_pair.len() != self.ideal.len() || self.pair_in_ideal.len() != 2 {
            return Ok(false);
        }
        for (g, c) in self.ideal.iter().zip(&self.ideal_in_pair) {
            if !combination_matches(g, &self.pair, c, &zero)? {
                return Ok(false);
            }
        }
        for (p, c) in self.pair.iter().zip(&self.pair_in_ideal) {
            if !combination_matches(p, &self.ideal, c, &zero)? {
                return Ok(false);
            }
        }
        Ok(sub.gb_hash()? == self.gb_hash && ideal.gb_hash()? == self.gb_hash && self.regular.replay(&zero)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StciCertificate {
    pub ideal: Vec<Polynomial>,
    pub pair: [Polynomial; 2],
    pub regular: RegSeqCertificate,
    pub radical: RadicalEqualityCertificate,
    pub dimension: DimensionReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StciRefutation {
    Height { height: Option<usize> },
    NotRegular { index: usize, witness: Polynomial },
    RadicalsDiffer { generator: Polynomial, from_ideal: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StciOutcome {
    Certified(StciCertificate),
    Refuted(StciRefutation),
}

impl StciOutcome {
    pub fn certificate(&self) -> Option<&StciCertificate> {
        match self {
            StciOutcome::Certified(c) => Some(c),
            StciOutcome::Refuted(_) => None,
        }
    }
}

pub fn stci_verify(ideal: &IdealHandle, pair: [Polynomial; 2]) -> Result<StciOutcome> {
    let dimension = dimension_height(ideal)?;
    if dimension.height != Some(2) {
        return Ok(StciOutcome::Refuted(StciRefutation::Height { height: dimension.height }));
    }
    let zero = ideal.derive(Vec::new());
    let regular = match is_regular_sequence(&pair, &zero)? {
        RegularOutcome::Regular(c) => c,
        RegularOutcome::Fails { index, witness } => {
            return Ok(StciOutcome::Refuted(StciRefutation::NotRegular { index, witness }))
        }
    };
    let sub = ideal.derive(pair.to_vec());
    let radical = match radical_equal(ideal, &sub)? {
        RadicalComparison::Equal(c) => c,
        RadicalComparison::Refuted { generator, from_left, .. } => {
            return Ok(StciOutcome::Refuted(StciRefutation::RadicalsDiffer { generator, from_ideal: from_left }))
        }
    };
    Ok(StciOutcome::Certified(StciCertificate { ideal: ideal.gens().to_vec(), pair, regular, radical, dimension }))
}

impl StciCertificate {
    pub fn replay(&self, ideal: &IdealHandle) -> Result<bool> {
        if ideal.gens() != self.ideal.as_slice() {
            return Ok(false);
        }
        let zero = ideal.derive(Vec::new());
        let sub = ideal.derive(self.pair.to_vec());
        Ok(self.dimension.height == Some(2)
            && self.dimension.replay(ideal)?
            && self.regular.sequence == self.pair
            && self.regular.replay(&zero)?
            && self.radical.replay(ideal, &sub)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub stci: StciCertificate,
    /// Present when the pair also generates `I`.
    pub ci: Option<CiCertificate>,
    /// `hint`, `generator-pairs` or `random-pairs`.
    pub stage: &'static str,
    pub trial: u32,
    /// Name of the adjoined field generator when the search moved to `F_{p^k}`.
    pub field_extension: Option<(u32, String)>,
    /// The ring the certificate lives in.
    pub ring: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found(Box<SearchResult>),
    Inconclusive { pairs_examined: u32, random_trials: u32, extensions_tried: Vec<u32> },
}

/// Candidate elements: the generators, then `g_i ± g_j`.
fn candidates(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            for e in [&gens[i] + &gens[j], &gens[i] - &gens[j]] {
                if !e.is_zero() && !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

fn found(
    stci: StciCertificate,
    ci: Option<CiCertificate>,
    stage: &'static str,
    trial: u32,
    spec: &RingSpec,
) -> SearchOutcome {
    SearchOutcome::Found(Box::new(SearchResult { stci, ci, stage, trial, field_extension: None, ring: spec.to_string() }))
}

/// Stage 1 and 2 in a fixed ring. Returns the outcome and the counts used.
fn search_in(ideal: &IdealHandle, hint: Option<[Polynomial; 2]>, cfg: &PipelineConfig) -> Result<(Option<SearchOutcome>, u32, u32)> {
    let spec = ideal.spec();
    let try_pair = |pair: [Polynomial; 2], stage: &'static str, trial: u32| -> Result<Option<SearchOutcome>> {
        if mod_square_generation(ideal, &pair)?.generates() {
            let small = PipelineConfig { trials: cfg.trials.min(20), ..cfg.clone() };
            if let CiOutcome::Certified(ci) = ci_from_free_conormal(ideal, pair.clone(), &small)? {
                if let StciOutcome::Certified(stci) = stci_verify(ideal, ci.pair.clone())? {
                    return Ok(Some(found(stci, Some(ci), stage, trial, spec)));
                }
            }
        }
        Ok(None)
    };

    if let Some(h) = hint {
        if let Some(o) = try_pair(h.clone(), "hint", 0)? {
            return Ok((Some(o), 1, 0));
        }
        if let StciOutcome::Certified(stci) = stci_verify(ideal, h)? {
            return Ok((Some(found(stci, None, "hint", 0, spec)), 1, 0));
        }
    }

    let cands = candidates(ideal.gens());
    let mut examined = 0u32;
    'pairs: for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            if examined >= cfg.trials {
                break 'pairs;
            }
            let pair = [cands[i].clone(), cands[j].clone()];
            if let Some(o) = try_pair(pair, "generator-pairs", examined)? {
                return Ok((Some(o), examined + 1, 0));
            }
            examined += 1;
        }
    }

    let ring = ideal.ring();
    let degree = cfg.degree_bound_for(ideal.gens());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for trial in 0..cfg.trials {
        let (a, _) = random::combination(&mut rng, ring, ideal.gens(), Some(degree));
        let (b, _) = random::combination(&mut rng, ring, ideal.gens(), Some(degree));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        if let StciOutcome::Certified(stci) = stci_verify(ideal, [a, b])? {
            return Ok((Some(found(stci, None, "random-pairs", trial, spec)), examined, trial + 1));
        }
    }
    Ok((None, examined, cfg.trials))
}

/// Look for a pair `(f, g)` with `√I = √(f, g)` and `(f, g)` regular.
///
/// Over `F_p`, a stalled search is repeated over `F_{p^2}` and `F_{p^3}`.
pub fn stci_search(ideal: &IdealHandle, hint: Option<[Polynomial; 2]>, cfg: &PipelineConfig) -> Result<SearchOutcome> {
    let height = dimension_height(ideal)?.height;
    if height != Some(2) {
        return Err(AlgebraError::InvalidInput(format!("stci search needs height 2, found {height:?}")));
    }
    let (outcome, pairs, trials) = search_in(ideal, hint.clone(), cfg)?;
    if let Some(o) = outcome {
        return Ok(o);
    }
    let mut extensions_tried = Vec::new();
    if matches!(ideal.ring().field(), crate::scalar::Field::Prime(_)) {
        for k in 2..=3 {
            extensions_tried.push(k);
            if let Some(o) = search_over_extension(ideal, hint.clone(), cfg, k)? {
                return Ok(o);
            }
        }
    }
    Ok(SearchOutcome::Inconclusive { pairs_examined: pairs, random_trials: trials, extensions_tried })
}

/// `I` transported to `F_{p^k}[x]/(J0, m(alpha))`.
pub fn extend_ideal(ideal: &IdealHandle, degree: u32) -> Result<(IdealHandle, String)> {
    let (spec, alpha) = ideal.spec().extend_field(degree)?;
    let gens = ideal.gens().iter().map(|g| g.to_ring(spec.ring())).collect::<Result<Vec<_>>>()?;
    Ok((IdealHandle::new(&spec, gens)?.with_budget(ideal.budget()), alpha))
}

fn search_over_extension(
    ideal: &IdealHandle,
    hint: Option<[Polynomial; 2]>,
    cfg: &PipelineConfig,
    degree: u32,
) -> Result<Option<SearchOutcome>> {
    let (ext, alpha) = extend_ideal(ideal, degree)?;
    let hint = match hint {
        Some([a, b]) => Some([a.to_ring(ext.ring())?, b.to_ring(ext.ring())?]),
        None => None,
    };
    let (outcome, _, _) = search_in(&ext, hint, cfg)?;
    Ok(outcome.map(|o| match o {
        SearchOutcome::Found(mut r) => {
            r.field_extension = Some((degree, alpha));
            SearchOutcome::Found(r)
        }
        other => other,
    }))
}

impl SearchResult {
    /// Replays in the ring the certificate was produced in (`ideal` may need
    /// [`extend_ideal`] first when a field extension was used).
    pub fn replay(&self, ideal: &IdealHandle) -> Result<bool> {
        if ideal.spec().to_string() != self.ring || !self.stci.replay(ideal)? {
            return Ok(false);
        }
        match &self.ci {
            Some(ci) => Ok(ci.pair == self.stci.pair && ci.replay(ideal)?),
            None => Ok(true),
        }
    }
}
