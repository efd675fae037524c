//! Independent oracles and fixtures for the integration tests.
//!
//! Nothing here calls into the Gröbner engine: membership and coprimality
//! are decided by dense linear algebra over the coefficient field, and
//! vanishing sets by enumerating points of `F_p^n`.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cicert_core::{Field, IdealHandle, Monomial, PolyRing, Polynomial, RingSpec, Scalar};

pub fn ring(vars: &[&str], field: Field) -> RingSpec {
    RingSpec::polynomial_ring(PolyRing::with_vars(vars, field).unwrap())
}

pub fn quotient(vars: &[&str], field: Field, base: &[&str]) -> RingSpec {
    let r = PolyRing::with_vars(vars, field).unwrap();
    let base = base.iter().map(|b| r.parse(b).unwrap()).collect();
    RingSpec::new(r, base).unwrap()
}

pub fn polys(spec: &RingSpec, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|t| spec.ring().parse(t).unwrap()).collect()
}

pub fn ideal(spec: &RingSpec, s: &[&str]) -> IdealHandle {
    IdealHandle::parse(spec, s).unwrap()
}

/// All exponent vectors of total degree exactly `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

pub fn small_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-4..=4))
}

/// A random homogeneous polynomial of degree `d` with roughly `density` of the monomials present.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &PolyRing, d: u32, density: f64) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        for m in monomials_of_degree(ring.nvars(), d) {
            if rng.gen_bool(density) {
                terms.push((m, small_scalar(rng, ring.field())));
            }
        }
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random polynomial of degree at most `d` (possibly inhomogeneous).
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &PolyRing, d: u32, nterms: usize) -> Polynomial {
    loop {
        let all = monomials_up_to(ring.nvars(), d);
        let terms: Vec<_> =
            (0..nterms).map(|_| (all[rng.gen_range(0..all.len())].clone(), small_scalar(rng, ring.field()))).collect();
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Coefficient vector of `p` against a column index.
fn coefficients(p: &Polynomial, cols: &HashMap<Monomial, usize>, field: Field) -> Option<Vec<Scalar>> {
    let mut v = vec![field.zero(); cols.len()];
    for (m, c) in p.terms() {
        v[*cols.get(m)?] = c.clone();
    }
    Some(v)
}

/// Row echelon form by Gaussian elimination; returns the pivot rows with their pivot column.
fn echelon(rows: Vec<Vec<Scalar>>) -> Vec<(usize, Vec<Scalar>)> {
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for mut r in rows {
        for (pc, b) in &basis {
            if !r[*pc].is_zero() {
                let f = r[*pc].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        if let Some(pc) = r.iter().position(|c| !c.is_zero()) {
            let inv = r[pc].inv();
            for x in r.iter_mut() {
                *x = x.mul(&inv);
            }
            for (_, b) in basis.iter_mut() {
                if !b[pc].is_zero() {
                    let f = b[pc].clone();
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
            basis.push((pc, r));
        }
    }
    basis
}

fn in_span(basis: &[(usize, Vec<Scalar>)], mut v: Vec<Scalar>) -> bool {
    for (pc, b) in basis {
        if !v[*pc].is_zero() {
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x = x.sub(&f.mul(y));
            }
        }
    }
    v.iter().all(Scalar::is_zero)
}

fn multiply(m: &Monomial, g: &Polynomial) -> Polynomial {
    let terms = g.terms().iter().map(|(n, c)| (n.mul(m), c.clone())).collect();
    Polynomial::from_terms(g.ring(), terms)
}

/// `f ∈ (gens)` decided in the span of `m * g` with `deg(m * g) <= bound`.
///
/// Exact for homogeneous `f` and generators with `bound = deg f`; for other
/// inputs a `true` answer is still a proof of membership.
pub fn macaulay_member(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    let ring = f.ring();
    let n = ring.nvars();
    let cols: HashMap<Monomial, usize> =
        monomials_up_to(n, bound).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap();
        if dg > bound {
            continue;
        }
        for m in monomials_up_to(n, bound - dg) {
            rows.push(coefficients(&multiply(&m, g), &cols, ring.field()).expect("within bound"));
        }
    }
    match coefficients(f, &cols, ring.field()) {
        Some(v) => in_span(&echelon(rows), v),
        None => false,
    }
}

/// `x`, `y` nonzero in a polynomial ring share a nonconstant factor iff
/// `a*x = b*y` has a solution with `deg a < deg y`, `deg b < deg x`, not both zero.
pub fn share_factor(x: &Polynomial, y: &Polynomial) -> bool {
    let ring = x.ring();
    let n = ring.nvars();
    let (dx, dy) = (x.total_degree().unwrap(), y.total_degree().unwrap());
    if dx == 0 || dy == 0 {
        return false;
    }
    let cols: HashMap<Monomial, usize> =
        monomials_up_to(n, dx + dy).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for m in monomials_up_to(n, dy - 1) {
        rows.push(coefficients(&multiply(&m, x), &cols, ring.field()).unwrap());
    }
    for m in monomials_up_to(n, dx - 1) {
        rows.push(coefficients(&multiply(&m, y), &cols, ring.field()).unwrap());
    }
    let unknowns = rows.len();
    echelon(rows).len() < unknowns
}

/// Value of `p` at a point of `F_p^n`.
pub fn eval_at(p: &Polynomial, point: &[u64]) -> Scalar {
    let field = p.ring().field();
    let mut acc = field.zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (e, &x) in m.exponents().iter().zip(point) {
            let x = field.from_i64(x as i64);
            for _ in 0..*e {
                t = t.mul(&x);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Points of `F_p^n` where every polynomial vanishes.
pub fn zeros(ps: &[Polynomial], p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = p.pow(n as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut pt = Vec::with_capacity(n);
        for _ in 0..n {
            pt.push(code % p);
            code /= p;
        }
        if ps.iter().all(|f| eval_at(f, &pt).is_zero()) {
            out.push(pt);
        }
    }
    out
}

/// Scalars `λ` in `-range..=range` such that `(f_1 + λ f_2, f_2, .., f_n)`
/// passes `test`; used to build fixtures whose given order fails.
pub fn exhaustive_first_perturbations(
    gens: &[Polynomial],
    range: i64,
    mut test: impl FnMut(&[Polynomial]) -> bool,
) -> Vec<i64> {
    let field = gens[0].ring().field();
    let mut found = Vec::new();
    for l in -range..=range {
        let mut g = gens.to_vec();
        g[0] = &g[0] + &gens[1].scalar_mul(&field.from_i64(l));
        if test(&g) {
            found.push(l);
        }
    }
    found
}

/// Height-2 corpus: name, variables, field, base ideal of the ring, generators.
pub struct Fixture {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub base: &'static [&'static str],
    pub gens: &'static [&'static str],
    /// A known pair generating the ideal, when it is a complete intersection.
    pub ci_pair: Option<[&'static str; 2]>,
}

impl Fixture {
    pub fn spec(&self, field: Field) -> RingSpec {
        quotient(self.vars, field, self.base)
    }

    pub fn ideal(&self, field: Field) -> IdealHandle {
        ideal(&self.spec(field), self.gens)
    }

    pub fn session(&self, field: Field) -> String {
        let mut s = format!("ring R = {field}[{}]", self.vars.join(","));
        if !self.base.is_empty() {
            s.push_str(&format!(" / ({})", self.base.join(", ")));
        }
        s.push_str(" order grevlex;\n");
        s.push_str(&format!("ideal I = ({});\n", self.gens.join(", ")));
        if let Some([a, b]) = self.ci_pair {
            s.push_str(&format!("pair p = ({a}, {b});\n"));
        }
        s
    }
}

pub const SKEW_LINES: Fixture = Fixture {
    name: "skew lines (x,y) ∩ (x-1,z)",
    vars: &["x", "y", "z"],
    base: &[],
    gens: &["x^2 - x", "x*z", "x*y - y", "y*z"],
    ci_pair: Some(["x^2 - x", "(1 - x)*y + x*z"]),
};

pub const SMOOTH_CI_CURVE: Fixture = Fixture {
    name: "smooth ci curve (y - x^2, z - x^3)",
    vars: &["x", "y", "z"],
    base: &[],
    gens: &["y - x^2", "z - x^3"],
    ci_pair: Some(["y - x^2", "z - x^3"]),
};

pub const QUOTIENT_FIXTURE: Fixture = Fixture {
    name: "two circles in k[x,y,z,w]/(w)",
    vars: &["x", "y", "z", "w"],
    base: &["w"],
    gens: &["x^2 + y^2 - 1", "z^2 - z"],
    ci_pair: Some(["x^2 + y^2 - 1", "z^2 - z"]),
};

pub const DISJOINT_LINES: Fixture = Fixture {
    name: "disjoint lines (x,y) ∩ (y-1,z-1)",
    vars: &["x", "y", "z"],
    base: &[],
    gens: &["x*y - x", "x*z - x", "y^2 - y", "y*z - y"],
    ci_pair: None,
};

pub const CYLINDER_OVER_SKEW_LINES: Fixture = Fixture {
    name: "cylinder over skew lines in F_5[x,y,z,w]",
    vars: &["x", "y", "z", "w"],
    base: &[],
    gens: &["x^2 - x", "x*z", "x*y - y", "y*z"],
    ci_pair: None,
};

pub const MONOMIAL_CURVE_345: Fixture = Fixture {
    name: "monomial curve (t^3, t^4, t^5)",
    vars: &["x", "y", "z"],
    base: &[],
    gens: &["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"],
    ci_pair: None,
};

/// The lci height-2 corpus in three-dimensional rings.
pub fn lci_corpus() -> Vec<&'static Fixture> {
    vec![&SKEW_LINES, &SMOOTH_CI_CURVE, &QUOTIENT_FIXTURE, &DISJOINT_LINES]
}

/// Generators `(x*(1+y), y*(1+y), z + y*z - y)` of `(x, y, z)` whose given
/// order is not a regular sequence.
pub const BAD_ORDER: [&str; 3] = ["x*(1 + y)", "y*(1 + y)", "z + y*z - y"];

/// Basis of the solutions `(a_1..a_m)`, `deg a_i <= d - deg f_i`, of `sum a_i f_i = 0`,
/// by Gaussian elimination on the coefficient matrix.
pub fn bounded_syzygies(f: &[Polynomial], d: u32) -> Vec<Vec<Polynomial>> {
    let ring = f[0].ring();
    let n = ring.nvars();
    let field = ring.field();
    let cols: HashMap<Monomial, usize> = monomials_up_to(n, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    // unknown k multiplies f[owner] by monomial mono
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (i, g) in f.iter().enumerate() {
        let dg = g.total_degree().unwrap_or(0);
        if g.is_zero() || dg > d {
            continue;
        }
        for m in monomials_up_to(n, d - dg) {
            unknowns.push((i, m));
        }
    }
    // equations: one per monomial, columns are unknowns
    let mut matrix = vec![vec![field.zero(); unknowns.len()]; cols.len()];
    for (k, (i, m)) in unknowns.iter().enumerate() {
        for (mono, c) in multiply(m, &f[*i]).terms() {
            matrix[cols[mono]][k] = c.clone();
        }
    }
    let ech = echelon(matrix);
    let pivots: Vec<usize> = ech.iter().map(|(p, _)| *p).collect();
    let mut out = Vec::new();
    for free in (0..unknowns.len()).filter(|c| !pivots.contains(c)) {
        let mut sol = vec![field.zero(); unknowns.len()];
        sol[free] = field.one();
        for (p, row) in &ech {
            sol[*p] = row[free].neg();
        }
        let mut v = vec![ring.zero(); f.len()];
        for (k, (i, m)) in unknowns.iter().enumerate() {
            if !sol[k].is_zero() {
                v[*i] = &v[*i] + &Polynomial::monomial(ring, m.clone(), sol[k].clone());
            }
        }
        out.push(v);
    }
    out
}

fn rank_of(polys: &[Polynomial], cols: &HashMap<Monomial, usize>, field: Field) -> usize {
    echelon(polys.iter().map(|p| coefficients(p, cols, field).unwrap()).collect()).len()
}

/// Least degree `d <= max_d` with a form `w` of degree `d`, `w ∉ B`, `w f ∈ B`,
/// for a homogeneous `f` and homogeneous generators of `B`.
pub fn zero_divisor_degree(f: &Polynomial, base: &[Polynomial], max_d: u32) -> Option<u32> {
    let ring = f.ring();
    let n = ring.nvars();
    let field = ring.field();
    let e = f.total_degree().unwrap();
    let part = |deg: u32| -> Vec<Polynomial> {
        let mut rows = Vec::new();
        for g in base.iter().filter(|g| !g.is_zero()) {
            let dg = g.total_degree().unwrap();
            if dg <= deg {
                rows.extend(monomials_of_degree(n, deg - dg).iter().map(|m| multiply(m, g)));
            }
        }
        rows
    };
    for d in 0..=max_d {
        let cols_d: HashMap<Monomial, usize> =
            monomials_of_degree(n, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let cols_de: HashMap<Monomial, usize> =
            monomials_of_degree(n, d + e).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let b_d = rank_of(&part(d), &cols_d, field);
        let b_de_rows = part(d + e);
        let b_de = rank_of(&b_de_rows, &cols_de, field);
        let mut with_f = b_de_rows;
        with_f.extend(monomials_of_degree(n, d).iter().map(|m| multiply(m, f)));
        let image = rank_of(&with_f, &cols_de, field) - b_de;
        let kernel = cols_d.len() - image;
        if kernel > b_d {
            return Some(d);
        }
    }
    None
}
