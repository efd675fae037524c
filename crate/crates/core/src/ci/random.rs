//! Seeded random polynomials for the randomized searches.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::scalar::{Field, Scalar};

/// Largest absolute value of a random integer coefficient.
const COEFF_RANGE: i64 = 5;

pub(crate) fn scalar(rng: &mut ChaCha8Rng, field: Field, nonzero: bool) -> Scalar {
    loop {
        let c = match field {
            Field::Prime(p) if p <= 2 * COEFF_RANGE as u64 + 1 => field.from_i64(rng.gen_range(0..p as i64)),
            _ => field.from_i64(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)),
        };
        if !nonzero || !c.is_zero() {
            return c;
        }
    }
}

fn monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    let target = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; nvars];
    for _ in 0..target {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(exps)
}

/// A polynomial with a nonzero constant term and up to three further terms
/// of degree at most `max_degree`.
pub(crate) fn polynomial(rng: &mut ChaCha8Rng, ring: &PolyRing, max_degree: u32) -> Polynomial {
    let field = ring.field();
    let mut terms = vec![(Monomial::one(ring.nvars()), scalar(rng, field, true))];
    if max_degree > 0 {
        for _ in 0..rng.gen_range(0..=3) {
            terms.push((monomial(rng, ring.nvars(), max_degree), scalar(rng, field, true)));
        }
    }
    Polynomial::from_terms(ring, terms)
}

/// A random combination `sum c_i g_i` with `deg(c_i) <= max_degree - deg(g_i)`
/// (scalars when that bound is negative). Returns the element and the coefficients.
pub(crate) fn combination(
    rng: &mut ChaCha8Rng,
    ring: &PolyRing,
    gens: &[Polynomial],
    max_degree: Option<u32>,
) -> (Polynomial, Vec<Polynomial>) {
    let mut coeffs = Vec::with_capacity(gens.len());
    let mut sum = ring.zero();
    for g in gens {
        let c = match max_degree {
            None => Polynomial::monomial(ring, Monomial::one(ring.nvars()), scalar(rng, ring.field(), false)),
            Some(d) => {
                let room = d.saturating_sub(g.total_degree().unwrap_or(0));
                let c = polynomial(rng, ring, room);
                if rng.gen_bool(0.25) {
                    ring.zero()
                } else {
                    c
                }
            }
        };
        sum = &sum + &(&c * g);
        coeffs.push(c);
    }
    (sum, coeffs)
}
