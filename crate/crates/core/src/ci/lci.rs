//! Generation modulo `I^2`, local generation and the conormal lci proxy.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::IdealHandle;
use crate::homology::{conormal_presentation, projective_rank_certificate, ProjectiveRank, ProjectiveRankCertificate};
use crate::ideal_ops::{dimension_height, quotient_ideal, DimensionReport};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModSquareOutcome {
    /// `I = (c) + I^2`; the hash is of the reduced basis of `(c) + I^2`.
    Generates { gb_hash: String },
    /// `generator` of `I` is not in `(c) + I^2`.
    Fails { generator: Polynomial },
}

impl ModSquareOutcome {
    pub fn generates(&self) -> bool {
        matches!(self, ModSquareOutcome::Generates { .. })
    }
}

pub fn mod_square_generation(ideal: &IdealHandle, c: &[Polynomial]) -> Result<ModSquareOutcome> {
    for e in c {
        if !ideal.contains(e)? {
            return Err(AlgebraError::InvalidInput(format!("{e} is not in the ideal")));
        }
    }
    let square = ideal.product(ideal)?;
    let target = square.with_gens(c)?;
    for g in ideal.gens() {
        if !target.contains(g)? {
            return Ok(ModSquareOutcome::Fails { generator: g.clone() });
        }
    }
    Ok(ModSquareOutcome::Generates { gb_hash: target.gb_hash()? })
}

/// `s ≡ 1 mod I` with `s * I ⊆ (c)`: `I` and `(c)` agree wherever `s` is a unit,
/// in particular locally at every prime containing `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalGenerationWitness {
    pub s: Polynomial,
    /// Whether `(c) = I` already holds globally.
    pub global: bool,
}

pub fn local_generation_witness(ideal: &IdealHandle, c: &[Polynomial]) -> Result<Option<LocalGenerationWitness>> {
    let sub = ideal.derive(c.to_vec());
    let conductor = quotient_ideal(&sub, ideal)?;
    let both = ideal.sum(&conductor)?;
    let one = ideal.ring().one();
    let Some(cofactors) = both.lift(&one)? else {
        return Ok(None);
    };
    let n = ideal.gens().len();
    let s = conductor.gens().iter().zip(&cofactors[n..]).fold(ideal.ring().zero(), |acc, (k, a)| &acc + &(k * a));
    let global = sub.equals(ideal)?;
    Ok(Some(LocalGenerationWitness { s, global }))
}

impl LocalGenerationWitness {
    pub fn replay(&self, ideal: &IdealHandle, c: &[Polynomial]) -> Result<bool> {
        let sub = ideal.derive(c.to_vec());
        for g in ideal.gens() {
            if !sub.contains(&(&self.s * g))? {
                return Ok(false);
            }
        }
        let one = ideal.ring().one();
        Ok(ideal.contains(&(&self.s - &one))? && sub.equals(ideal)? == self.global)
    }
}

pub const LCI_HYPOTHESES: &str = "valid under Cohen-Macaulay ambient + unmixedness";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LciProxyCertificate {
    pub ideal: Vec<Polynomial>,
    pub dimension: DimensionReport,
    pub rank: usize,
    pub conormal: String,
    pub projective: ProjectiveRankCertificate,
    pub hypotheses: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LciOutcome {
    Certified(LciProxyCertificate),
    /// The conormal module is not projective of rank equal to the height.
    Refuted { dimension: DimensionReport, failure: ProjectiveRank },
}

impl LciOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, LciOutcome::Certified(_))
    }
}

pub fn lci_certificate(ideal: &IdealHandle) -> Result<LciOutcome> {
    let dimension = dimension_height(ideal)?;
    let Some(h) = dimension.height else {
        return Err(AlgebraError::InvalidInput("the unit ideal has no height".into()));
    };
    let conormal = conormal_presentation(ideal)?;
    match projective_rank_certificate(&conormal, h, ideal.budget())? {
        ProjectiveRank::Certified(projective) => Ok(LciOutcome::Certified(LciProxyCertificate {
            ideal: ideal.gens().to_vec(),
            dimension,
            rank: h,
            conormal: conormal.to_string(),
            projective,
            hypotheses: LCI_HYPOTHESES,
        })),
        failure => Ok(LciOutcome::Refuted { dimension, failure }),
    }
}

impl LciProxyCertificate {
    pub fn replay(&self, ideal: &IdealHandle) -> Result<bool> {
        if ideal.gens() != self.ideal.as_slice() || !self.dimension.replay(ideal)? {
            return Ok(false);
        }
        let conormal = conormal_presentation(ideal)?;
        Ok(conormal.to_string() == self.conormal
            && self.dimension.height == Some(self.rank)
            && self.projective.rank == self.rank
            && self.projective.replay(&conormal, ideal.budget())?)
    }
}
