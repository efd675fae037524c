//! Regular sequences, generator regularization, the lci proxy and
//! (set-theoretic) complete intersection certificates.

mod lci;
mod random;
mod regular;
mod stci;

pub use lci::{
    lci_certificate, local_generation_witness, mod_square_generation, LciOutcome, LciProxyCertificate,
    LocalGenerationWitness, ModSquareOutcome, LCI_HYPOTHESES,
};
pub use regular::{
    is_nzd, is_regular_sequence, regularize_generators, NzdOutcome, PerturbationElement, RegSeqCertificate, RegStep,
    RegularOutcome, RegularizationCertificate, RegularizeOutcome,
};
pub use stci::{
    ci_from_free_conormal, extend_ideal, stci_search, stci_verify, CiCertificate, CiOutcome, SearchOutcome,
    SearchResult, StciCertificate, StciOutcome, StciRefutation,
};

use crate::groebner::DEFAULT_GB_STEPS;
use crate::poly::Polynomial;

pub const DEFAULT_TRIALS: u32 = 200;

/// Knobs shared by the randomized procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub seed: u64,
    pub gb_steps: u64,
    pub trials: u32,
    /// Defaults to the largest generator degree plus two.
    pub degree_bound: Option<u32>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { seed: 0, gb_steps: DEFAULT_GB_STEPS, trials: DEFAULT_TRIALS, degree_bound: None }
    }
}

impl PipelineConfig {
    pub fn degree_bound_for(&self, gens: &[Polynomial]) -> u32 {
        self.degree_bound
            .unwrap_or_else(|| gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0) + 2)
    }
}
