//! Buchberger's algorithm on sparse vectors of a free module `R^m` under a
//! position-over-term order. Ideals are the rank-one case.

use std::cmp::Ordering;

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub pos: u32,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Terms strictly descending: lower position first, then larger monomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct SVec {
    pub terms: Vec<VTerm>,
}

#[inline]
fn cmp_terms(order: &MonomialOrder, a: &VTerm, b: &VTerm) -> Ordering {
    b.pos.cmp(&a.pos).then_with(|| order.cmp(&a.mono, &b.mono))
}

impl SVec {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &VTerm {
        &self.terms[0]
    }

    pub fn make_monic(&mut self) {
        if let Some(first) = self.terms.first() {
            if !first.coeff.is_one() {
                let inv = first.coeff.inv();
                for t in &mut self.terms {
                    t.coeff = t.coeff.mul(&inv);
                }
            }
        }
    }

    pub fn scale(&self, m: &Monomial, c: &Scalar) -> SVec {
        SVec {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) })
                .collect(),
        }
    }

    pub fn max_pos(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.pos).max()
    }
}

/// `a - c*m*b`, both sorted.
fn sub_scaled(order: &MonomialOrder, a: &[VTerm], c: &Scalar, m: &Monomial, b: &[VTerm]) -> Vec<VTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|t| VTerm { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) }).peekable();
    while i < a.len() {
        let Some(bt) = bi.peek() else { break };
        match cmp_terms(order, &a[i], bt) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let bt = bi.next().unwrap();
                out.push(VTerm { pos: bt.pos, mono: bt.mono, coeff: bt.coeff.neg() });
            }
            Ordering::Equal => {
                let bt = bi.next().unwrap();
                let coeff = a[i].coeff.sub(&bt.coeff);
                if !coeff.is_zero() {
                    out.push(VTerm { pos: bt.pos, mono: bt.mono, coeff });
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bi.map(|t| VTerm { pos: t.pos, mono: t.mono, coeff: t.coeff.neg() }));
    out
}

/// Full reduction of `v` by the vectors `basis[active]`. If `quotients` is
/// given, records `(index into active, monomial, coefficient)` for each step.
pub(crate) fn reduce_full(
    order: &MonomialOrder,
    v: &SVec,
    basis: &[SVec],
    active: &[usize],
    mut quotients: Option<&mut Vec<(usize, Monomial, Scalar)>>,
) -> SVec {
    let mut terms = v.terms.clone();
    let mut i = 0;
    while i < terms.len() {
        let hit = active.iter().enumerate().find(|(_, &gi)| {
            let l = basis[gi].lead();
            l.pos == terms[i].pos && l.mono.divides(&terms[i].mono)
        });
        match hit {
            Some((k, &gi)) => {
                let g = &basis[gi];
                let l = g.lead();
                let m = l.mono.quotient_of(&terms[i].mono);
                let c = terms[i].coeff.div(&l.coeff);
                let tail = sub_scaled(order, &terms[i..], &c, &m, &g.terms);
                if let Some(q) = quotients.as_deref_mut() {
                    q.push((k, m, c));
                }
                terms.truncate(i);
                terms.extend(tail);
            }
            None => i += 1,
        }
    }
    SVec { terms }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: VTerm,
}

#[derive(Debug)]
pub(crate) struct EngineBudget {
    pub steps: u64,
    pub pending: usize,
    pub partial: Vec<SVec>,
}

pub(crate) struct Buchberger<'a> {
    order: &'a MonomialOrder,
    /// Product criterion is only valid for ideals.
    rank_one: bool,
    polys: Vec<SVec>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    pub steps: u64,
}

fn lcm_term(a: &VTerm, b: &VTerm) -> VTerm {
    VTerm { pos: a.pos, mono: a.mono.lcm(&b.mono), coeff: a.coeff.field().one() }
}

impl<'a> Buchberger<'a> {
    pub fn new(order: &'a MonomialOrder, rank_one: bool) -> Self {
        Buchberger { order, rank_one, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), steps: 0 }
    }

    /// Gebauer-Möller update with the new element `h`.
    fn update(&mut self, h: SVec) {
        let hi = self.polys.len();
        self.polys.push(h);
        let hl = self.polys[hi].lead().clone();

        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .filter(|&&g| self.polys[g].lead().pos == hl.pos)
            .map(|&g| Pair { i: g, j: hi, lcm: lcm_term(self.polys[g].lead(), &hl) })
            .collect();
        let coprime = |p: &Pair, polys: &[SVec]| polys[p.i].lead().mono.is_coprime(&hl.mono);

        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let product = self.rank_one && coprime(&p, &self.polys);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.mono.divides(&p.lcm.mono));
            if product || !dominated {
                kept.push(p);
            }
        }
        if self.rank_one {
            kept.retain(|p| !coprime(p, &self.polys));
        }

        let polys = &self.polys;
        self.pairs.retain(|p| {
            if p.lcm.pos != hl.pos || !hl.mono.divides(&p.lcm.mono) {
                return true;
            }
            let li = lcm_term(polys[p.i].lead(), &hl);
            let lj = lcm_term(polys[p.j].lead(), &hl);
            li.mono == p.lcm.mono || lj.mono == p.lcm.mono
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| {
            let gl = polys[g].lead();
            !(gl.pos == hl.pos && hl.mono.divides(&gl.mono))
        });
        self.active.push(hi);
    }

    pub fn add_generator(&mut self, v: SVec) {
        let mut r = reduce_full(self.order, &v, &self.polys, &self.active, None);
        if !r.is_zero() {
            r.make_monic();
            self.update(r);
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = cmp_terms(order, &a.lcm, &b.lcm).then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> SVec {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let (fl, gl) = (f.lead(), g.lead());
        let mf = fl.mono.quotient_of(&p.lcm.mono);
        let mg = gl.mono.quotient_of(&p.lcm.mono);
        let one = fl.coeff.field().one();
        let a = f.scale(&mf, &one);
        let c = fl.coeff.div(&gl.coeff);
        SVec { terms: sub_scaled(self.order, &a.terms, &c, &mg, &g.terms) }
    }

    pub fn run(&mut self, limit: u64) -> Result<(), EngineBudget> {
        while let Some(p) = self.select() {
            if self.steps >= limit {
                self.pairs.push(p);
                return Err(EngineBudget {
                    steps: self.steps,
                    pending: self.pairs.len(),
                    partial: self.active.iter().map(|&i| self.polys[i].clone()).collect(),
                });
            }
            self.steps += 1;
            let s = self.spoly(&p);
            let mut r = reduce_full(self.order, &s, &self.polys, &self.active, None);
            if !r.is_zero() {
                r.make_monic();
                self.update(r);
            }
        }
        Ok(())
    }

    /// The reduced Gröbner basis, sorted by ascending leading term.
    pub fn reduced(self) -> Vec<SVec> {
        let order = self.order;
        let mut min: Vec<SVec> = Vec::new();
        let mut cands: Vec<SVec> = self.active.iter().map(|&i| self.polys[i].clone()).collect();
        cands.sort_by(|a, b| cmp_terms(order, a.lead(), b.lead()));
        for c in cands {
            let l = c.lead();
            if !min.iter().any(|m| m.lead().pos == l.pos && m.lead().mono.divides(&l.mono)) {
                min.push(c);
            }
        }
        let idx: Vec<usize> = (0..min.len()).collect();
        let mut out = Vec::with_capacity(min.len());
        for k in 0..min.len() {
            let head = SVec { terms: vec![min[k].terms[0].clone()] };
            let tail = SVec { terms: min[k].terms[1..].to_vec() };
            let others: Vec<usize> = idx.iter().copied().filter(|&i| i != k).collect();
            let tail = reduce_full(order, &tail, &min, &others, None);
            let mut v = head;
            v.terms.extend(tail.terms);
            v.make_monic();
            out.push(v);
        }
        out
    }
}

/// Reduced Gröbner basis of the given vectors.
pub(crate) fn groebner(
    order: &MonomialOrder,
    gens: Vec<SVec>,
    rank_one: bool,
    limit: u64,
) -> Result<(Vec<SVec>, u64), EngineBudget> {
    let mut bb = Buchberger::new(order, rank_one);
    let mut gens: Vec<SVec> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| cmp_terms(order, a.lead(), b.lead()));
    for g in gens {
        bb.add_generator(g);
    }
    bb.run(limit)?;
    let steps = bb.steps;
    Ok((bb.reduced(), steps))
}

/// Reduce against a finished basis (all elements active).
pub(crate) fn normal_form(order: &MonomialOrder, v: &SVec, basis: &[SVec]) -> SVec {
    let active: Vec<usize> = (0..basis.len()).collect();
    reduce_full(order, v, basis, &active, None)
}

