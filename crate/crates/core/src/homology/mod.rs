//! Koszul complexes, free resolutions, Ext modules, conormal presentations
//! and Fitting ideals.

mod koszul;
mod matrix;
mod resolution;

pub use koszul::{koszul2_exactness, koszul_contraction, ContractionMap, ExteriorForm, KoszulComplex, KoszulExactness};
pub use matrix::{combinations, PolyMatrix, PresentationMatrix};
pub use resolution::{
    conormal_presentation, ext_module, fitting_ideals, free_resolution, projective_rank_certificate, ExtModule,
    FittingIdealSet, FreeResolution, ProjectiveRank, ProjectiveRankCertificate, MAX_RESOLUTION_LENGTH,
};
