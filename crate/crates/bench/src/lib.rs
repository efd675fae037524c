//! Fixture ideals shared by the benchmarks.

use cicert_core::{Field, IdealHandle, PolyRing, RingSpec};

pub fn ring(vars: &[&str], field: Field) -> RingSpec {
    RingSpec::polynomial_ring(PolyRing::with_vars(vars, field).expect("valid variables"))
}

pub fn ideal(spec: &RingSpec, gens: &[&str]) -> IdealHandle {
    IdealHandle::parse(spec, gens).expect("valid generators")
}

/// Named generator lists for the Gröbner benchmarks.
pub const GB_FIXTURES: &[(&str, &[&str], &[&str])] = &[
    ("twisted-cubic", &["x", "y", "z", "w"], &["x*z - y^2", "y*w - z^2", "x*w - y*z"]),
    ("monomial-curve-345", &["x", "y", "z"], &["x^4 - y*z", "y^2 - x*z", "z^2 - x^3*y"]),
    ("cyclic-3", &["x", "y", "z"], &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]),
    ("katsura-3", &["x", "y", "z"], &["x + 2*y + 2*z - 1", "x^2 + 2*y^2 + 2*z^2 - x", "2*x*y + 2*y*z - y"]),
];

/// Height-2 ideals for the pipeline benchmarks.
pub const STCI_FIXTURES: &[(&str, &[&str], &[&str])] = &[
    ("skew-lines", &["x", "y", "z"], &["x^2 - x", "x*z", "x*y - y", "y*z"]),
    ("smooth-ci-curve", &["x", "y", "z"], &["y - x^2", "z - x^3"]),
    ("fat-point-axis", &["x", "y", "z"], &["x^2", "x*y", "y^2"]),
];
