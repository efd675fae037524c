//! Non-zerodivisors, regular sequences and generator regularization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{random, PipelineConfig};
use crate::error::{AlgebraError, Result};
use crate::groebner::IdealHandle;
use crate::ideal_ops::quotient;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NzdOutcome {
    /// `(B : f) = B`; the hash is of their common reduced basis.
    Nzd { gb_hash: String },
    /// `witness ∉ B` but `witness * f ∈ B`.
    ZeroDivisor { witness: Polynomial },
}

impl NzdOutcome {
    pub fn is_nzd(&self) -> bool {
        matches!(self, NzdOutcome::Nzd { .. })
    }
}

pub fn is_nzd(f: &Polynomial, base: &IdealHandle) -> Result<NzdOutcome> {
    let q = quotient(base, f)?;
    if q.equals(base)? {
        return Ok(NzdOutcome::Nzd { gb_hash: base.gb_hash()? });
    }
    for g in q.gens() {
        let r = base.normal_form(g)?;
        if !r.is_zero() {
            return Ok(NzdOutcome::ZeroDivisor { witness: r });
        }
    }
    Err(AlgebraError::Internal("quotient differs from the ideal but adds no element".into()))
}

/// One step `((B + (g_1..g_{k-1})) : g_k) = B + (g_1..g_{k-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegStep {
    pub element: Polynomial,
    /// Hash of the reduced basis of the prefix ideal (equal to that of the quotient).
    pub prefix_gb_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegSeqCertificate {
    pub ring: String,
    pub base: Vec<Polynomial>,
    pub sequence: Vec<Polynomial>,
    pub steps: Vec<RegStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularOutcome {
    Regular(RegSeqCertificate),
    /// `witness` kills `g_index` (1-based) modulo the previous elements.
    Fails { index: usize, witness: Polynomial },
}

impl RegularOutcome {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularOutcome::Regular(_))
    }

    pub fn certificate(&self) -> Option<&RegSeqCertificate> {
        match self {
            RegularOutcome::Regular(c) => Some(c),
            RegularOutcome::Fails { .. } => None,
        }
    }
}

pub fn is_regular_sequence(seq: &[Polynomial], base: &IdealHandle) -> Result<RegularOutcome> {
    if seq.is_empty() {
        return Err(AlgebraError::InvalidInput("empty sequence".into()));
    }
    let mut prefix = base.clone();
    let mut steps = Vec::with_capacity(seq.len());
    for (k, g) in seq.iter().enumerate() {
        match is_nzd(g, &prefix)? {
            NzdOutcome::Nzd { gb_hash } => steps.push(RegStep { element: g.clone(), prefix_gb_hash: gb_hash }),
            NzdOutcome::ZeroDivisor { witness } => return Ok(RegularOutcome::Fails { index: k + 1, witness }),
        }
        prefix = prefix.with_gens(std::slice::from_ref(g))?;
    }
    Ok(RegularOutcome::Regular(RegSeqCertificate {
        ring: base.spec().to_string(),
        base: base.gens().to_vec(),
        sequence: seq.to_vec(),
        steps,
    }))
}

impl RegSeqCertificate {
    pub fn replay(&self, base: &IdealHandle) -> Result<bool> {
        if base.spec().to_string() != self.ring || base.gens() != self.base.as_slice() {
            return Ok(false);
        }
        Ok(is_regular_sequence(&self.sequence, base)?.certificate() == Some(self))
    }
}

/// `lambda = sum coefficients_j * f_j` over the later generators, added to
/// generator `index` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerturbationElement {
    pub index: usize,
    pub lambda: Polynomial,
    pub coefficients: Vec<Polynomial>,
    pub seed: u64,
    pub trial: u32,
}

impl PerturbationElement {
    /// `lambda` lies in the ideal of the generators after `index`.
    pub fn replay(&self, original: &[Polynomial]) -> bool {
        let later = &original[(self.index + 1).min(original.len())..];
        if later.len() != self.coefficients.len() {
            return false;
        }
        let ring = self.lambda.ring();
        let sum = later.iter().zip(&self.coefficients).fold(ring.zero(), |acc, (f, c)| &acc + &(c * f));
        sum == self.lambda
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularizationCertificate {
    pub original: Vec<Polynomial>,
    pub generators: Vec<Polynomial>,
    pub perturbations: Vec<PerturbationElement>,
    pub regular: RegSeqCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularizeOutcome {
    Regularized(RegularizationCertificate),
    /// No perturbation of generator `index` (0-based) was found.
    Inconclusive { index: usize, trials: u32, rejected: Vec<Polynomial> },
}

/// Replace `f_{k}` by `f_k + lambda`, `lambda` in `(f_{k+1}..f_n)`, until the
/// sequence is regular in `A`. The ideal never changes.
pub fn regularize_generators(
    ideal: &IdealHandle,
    gens: &[Polynomial],
    cfg: &PipelineConfig,
) -> Result<RegularizeOutcome> {
    let given = ideal.derive(gens.to_vec());
    if !given.equals(ideal)? {
        return Err(AlgebraError::InvalidInput("the generators do not generate the ideal".into()));
    }
    let ring = ideal.ring();
    let base = ideal.derive(Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let degree = cfg.degree_bound_for(gens);
    let mut current: Vec<Polynomial> = Vec::with_capacity(gens.len());
    let mut perturbations = Vec::new();
    for k in 0..gens.len() {
        let prefix = base.with_gens(&current)?;
        if is_nzd(&gens[k], &prefix)?.is_nzd() {
            current.push(gens[k].clone());
            continue;
        }
        let later = &gens[k + 1..];
        if later.is_empty() {
            return Ok(RegularizeOutcome::Inconclusive { index: k, trials: 0, rejected: Vec::new() });
        }
        let mut rejected = Vec::new();
        let mut found = None;
        for trial in 0..cfg.trials {
            // scalars for the first half of the trials, then polynomials
            let bound = if trial < cfg.trials / 2 { None } else { Some(degree) };
            let (lambda, coefficients) = random::combination(&mut rng, ring, later, bound);
            if lambda.is_zero() {
                continue;
            }
            let g = &gens[k] + &lambda;
            if is_nzd(&g, &prefix)?.is_nzd() {
                found = Some((g, PerturbationElement { index: k, lambda, coefficients, seed: cfg.seed, trial }));
                break;
            }
            if rejected.len() < 8 {
                rejected.push(lambda);
            }
        }
        match found {
            Some((g, p)) => {
                current.push(g);
                perturbations.push(p);
            }
            None => return Ok(RegularizeOutcome::Inconclusive { index: k, trials: cfg.trials, rejected }),
        }
    }
    if !ideal.derive(current.clone()).equals(ideal)? {
        return Err(AlgebraError::Internal("regularization changed the ideal".into()));
    }
    let regular = match is_regular_sequence(&current, &base)? {
        RegularOutcome::Regular(c) => c,
        RegularOutcome::Fails { .. } => return Err(AlgebraError::Internal("regularized sequence is not regular".into())),
    };
    Ok(RegularizeOutcome::Regularized(RegularizationCertificate {
        original: gens.to_vec(),
        generators: current,
        perturbations,
        regular,
    }))
}

impl RegularizationCertificate {
    pub fn replay(&self, ideal: &IdealHandle) -> Result<bool> {
        if !ideal.derive(self.generators.clone()).equals(ideal)? {
            return Ok(false);
        }
        for p in &self.perturbations {
            if !p.replay(&self.original) || self.generators[p.index] != &self.original[p.index] + &p.lambda {
                return Ok(false);
            }
        }
        self.regular.replay(&ideal.derive(Vec::new()))
    }
}
