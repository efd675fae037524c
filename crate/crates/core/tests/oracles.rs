//! Library results against the linear-algebra and point-count oracles.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cicert_core::ci::{is_nzd, stci_verify, NzdOutcome, StciOutcome};
use cicert_core::groebner::{module_gb, syzygies, ModuleElement};
use cicert_core::ideal_ops::radical_member;
use cicert_core::{Field, IdealHandle, Polynomial};

use common::*;

#[test]
fn bounded_relations_lie_in_the_syzygy_module() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..30 {
        let field = if k % 2 == 0 { Field::Rational } else { Field::Prime(7) };
        let spec = ring(&["x", "y", "z"], field);
        let r = spec.ring();
        let m = rng.gen_range(2..=3);
        let f: Vec<Polynomial> = (0..m)
            .map(|_| {
                let d = rng.gen_range(1..=2);
                random_homogeneous(&mut rng, r, d, 0.6)
            })
            .collect();
        let syz = syzygies(&spec, &f, 10_000).unwrap();
        for row in syz.rows() {
            assert!(row.dot(&f).is_zero(), "{row} is not a relation of {f:?}");
        }
        let span = module_gb(&spec, m, syz.rows(), 10_000).unwrap();
        for v in bounded_syzygies(&f, 4) {
            let v = ModuleElement::new(v).unwrap();
            assert!(v.dot(&f).is_zero());
            assert!(span.contains(&v), "oracle relation {v} of {f:?} is missing");
        }
    }
}

#[test]
fn zero_divisors_match_the_annihilator_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut found = [0usize; 2];
    for k in 0..40 {
        let field = if k % 2 == 0 { Field::Rational } else { Field::Prime(5) };
        let spec = ring(&["x", "y", "z"], field);
        let r = spec.ring();
        let base: Vec<Polynomial> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let d = rng.gen_range(1..=2);
                random_homogeneous(&mut rng, r, d, 0.5)
            })
            .collect();
        let f = random_homogeneous(&mut rng, r, 1, 0.5);
        let b = IdealHandle::new(&spec, base.clone()).unwrap();
        let oracle = zero_divisor_degree(&f, &base, 4);
        match is_nzd(&f, &b).unwrap() {
            NzdOutcome::Nzd { .. } => {
                assert_eq!(oracle, None, "{f} mod {base:?}: oracle finds a witness");
                found[0] += 1;
            }
            NzdOutcome::ZeroDivisor { witness } => {
                assert!(b.contains(&(&witness * &f)).unwrap());
                assert!(!b.contains(&witness).unwrap());
                if witness.is_homogeneous() && witness.total_degree().unwrap() <= 4 {
                    assert!(oracle.is_some(), "{f} mod {base:?}: oracle misses {witness}");
                }
                found[1] += 1;
            }
        }
    }
    assert!(found[0] > 0 && found[1] > 0, "{found:?}");
}

#[test]
fn radical_membership_respects_rational_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let spec = ring(&["x", "y", "z"], Field::Prime(3));
    let r = spec.ring();
    for _ in 0..25 {
        let gens: Vec<Polynomial> = (0..2).map(|_| random_poly(&mut rng, r, 2, 3)).collect();
        let i = IdealHandle::new(&spec, gens.clone()).unwrap();
        let pts = zeros(&gens, 3, 3);
        for _ in 0..3 {
            let f = random_poly(&mut rng, r, 2, 2);
            let w = radical_member(&f, &i).unwrap();
            let vanishes = pts.iter().all(|p| eval_at(&f, p).is_zero());
            if w.member {
                assert!(vanishes, "{f} in the radical of {gens:?} but not zero on V(I)(F_3)");
            }
            if !vanishes {
                assert!(!w.member);
            }
        }
        // products of generators always lie in the radical
        let g = &gens[0] * &random_poly(&mut rng, r, 1, 2);
        assert!(radical_member(&g, &i).unwrap().member);
    }
}

#[test]
fn stci_pairs_cut_out_the_same_points() {
    for fx in [&SKEW_LINES, &DISJOINT_LINES, &CYLINDER_OVER_SKEW_LINES] {
        for p in [5u64, 7] {
            let i = fx.ideal(Field::Prime(p));
            let search = cicert_core::ci::stci_search(&i, None, &cicert_core::PipelineConfig::default()).unwrap();
            let cicert_core::ci::SearchOutcome::Found(res) = search else {
                panic!("{}: no pair over F_{p}", fx.name);
            };
            if res.field_extension.is_some() {
                continue;
            }
            let n = fx.vars.len();
            assert_eq!(zeros(i.gens(), p, n), zeros(&res.stci.pair, p, n), "{} over F_{p}", fx.name);
            assert!(matches!(stci_verify(&i, res.stci.pair.clone()).unwrap(), StciOutcome::Certified(_)));
        }
    }
}

#[test]
fn twisted_cubic_membership_matches_macaulay() {
    let spec = ring(&["x", "y", "z", "w"], Field::Rational);
    let i = ideal(&spec, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
    let gens = i.gens().to_vec();
    for f in polys(&spec, &["y^3 - x*y*w", "x*z^2 - y^2*z", "x^2*w - y^3", "x*y*z - y^3 + z^3 - y*z*w", "x^3"]) {
        let d = f.total_degree().unwrap();
        assert_eq!(i.contains(&f).unwrap(), macaulay_member(&f, &gens, d), "{f}");
    }
}
