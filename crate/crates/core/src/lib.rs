//! Exact commutative algebra for certifying (set-theoretic) complete
//! intersections: polynomial arithmetic over `QQ` and `F_p`, Gröbner bases,
//! ideal operations, Koszul and Fitting tools, and a small session language
//! whose `check` commands produce replayable certificate files.

pub mod ci;
pub mod dsl;
pub mod error;
pub mod groebner;
pub mod homology;
pub mod ideal_ops;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use ci::PipelineConfig;
pub use dsl::{parse_session, replay, run_session, CertificateFile, Session, Verdict};
pub use error::{AlgebraError, BudgetExceeded, Result};
pub use groebner::{IdealHandle, ModuleElement};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::{PolyRing, RingSpec};
pub use scalar::{Field, Scalar};
