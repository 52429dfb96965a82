//! Buchberger completion over free modules with the sugar strategy and
//! Gebauer–Möller pair elimination. Elements can carry a representation in
//! terms of the inputs, which is what syzygy and lifting computations need.

use thiserror::Error;

use super::vector::{Coeff, ModuleOrder, PositionPolicy, Term, Vector};
use crate::poly::{Monomial, MonomialOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("pair budget exhausted after {0} S-pair reductions")]
    PairBudget(usize),
    #[error("degree budget {0} exceeded")]
    DegreeBudget(i64),
}

/// Resource limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Element<C> {
    pub v: Vector<C>,
    /// Coordinates in the tracked input module: `v = Σ rep_k · input_k`.
    pub rep: Option<Vector<C>>,
    sugar: i64,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: u32,
    sugar: i64,
}

/// Order used for representation vectors; any multiplicative order works.
pub(crate) fn rep_order() -> ModuleOrder {
    ModuleOrder { mono: MonomialOrder::Grevlex, shifts: Vec::new(), policy: PositionPolicy::PositionOverTerm }
}

pub struct Engine<C: Coeff> {
    order: ModuleOrder,
    rep_order: ModuleOrder,
    tracking: bool,
    inputs: usize,
    elems: Vec<Element<C>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    budget: Budget,
    pairs_done: usize,
    zero_reductions: usize,
}

impl<C: Coeff> Engine<C> {
    pub fn new(order: ModuleOrder) -> Self {
        Self {
            order,
            rep_order: rep_order(),
            tracking: false,
            inputs: 0,
            elems: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            budget: Budget::default(),
            pairs_done: 0,
            zero_reductions: 0,
        }
    }

    /// Records, for every basis element, its expression in the inputs.
    pub fn tracking(mut self) -> Self {
        self.tracking = true;
        self
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn pairs_processed(&self) -> usize {
        self.pairs_done
    }

    pub fn zero_reductions(&self) -> usize {
        self.zero_reductions
    }

    /// Adds the next input. Returns false if it reduced to zero against the
    /// current (partial) basis.
    pub fn add_input(&mut self, v: Vector<C>) -> bool {
        let k = self.inputs;
        self.inputs += 1;
        if v.is_zero() {
            return false;
        }
        let sugar = v.max_degree(&self.order);
        let rep = self.tracking.then(|| {
            let nvars = v.lead().unwrap().mono.nvars();
            Vector::unit(Monomial::one(nvars), k as u32, C::one())
        });
        let (r, rep) = reduce_lead(&self.elems, &self.active, &self.order, &self.rep_order, v, rep);
        if r.is_zero() {
            return false;
        }
        self.insert(r, rep, sugar);
        true
    }

    /// Runs Buchberger's algorithm on all pairs of sugar at most `max_degree`.
    pub fn complete(&mut self, max_degree: Option<i64>) -> Result<(), GbError> {
        loop {
            let pick = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| max_degree.is_none_or(|d| p.sugar <= d))
                .min_by(|(_, a), (_, b)| {
                    a.sugar
                        .cmp(&b.sugar)
                        .then_with(|| self.order.cmp(&a.lcm, a.pos, &b.lcm, b.pos))
                        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
                })
                .map(|(k, _)| k);
            let Some(k) = pick else { return Ok(()) };
            let pair = self.pairs.swap_remove(k);
            if let Some(limit) = self.budget.max_pairs {
                if self.pairs_done >= limit {
                    return Err(GbError::PairBudget(self.pairs_done));
                }
            }
            self.pairs_done += 1;
            let (s, rep) = self.spoly(pair.i, pair.j, &pair.lcm);
            let (r, rep) = reduce_lead(&self.elems, &self.active, &self.order, &self.rep_order, s, rep);
            if r.is_zero() {
                self.zero_reductions += 1;
            } else {
                self.insert(r, rep, pair.sugar);
            }
        }
    }

    /// True when every pair has been processed.
    pub fn is_complete(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Leading terms of the current basis.
    pub fn leads(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.active.iter().map(|&i| {
            let t = self.elems[i].v.lead().unwrap();
            (&t.mono, t.pos)
        })
    }

    /// Reduces against the current basis (complete or not).
    pub fn reduce(&self, v: Vector<C>) -> Vector<C> {
        reduce_by(&self.elems, &self.active, &self.order, &self.rep_order, v, None, None).0
    }

    /// Interreduces the current basis into the reduced Gröbner basis.
    pub fn finish(mut self) -> Result<GroebnerBasis<C>, GbError> {
        self.complete(None)?;
        let mut idx = self.active.clone();
        idx.sort_by(|&a, &b| {
            let (x, y) = (self.elems[a].v.lead().unwrap(), self.elems[b].v.lead().unwrap());
            self.order.cmp(&x.mono, x.pos, &y.mono, y.pos)
        });
        let mut out: Vec<Element<C>> = Vec::with_capacity(idx.len());
        for (n, &i) in idx.iter().enumerate() {
            let others: Vec<usize> = idx.iter().enumerate().filter(|&(m, _)| m != n).map(|(_, &j)| j).collect();
            let e = &self.elems[i];
            let (v, rep) =
                reduce_by(&self.elems, &others, &self.order, &self.rep_order, e.v.clone(), e.rep.clone(), None);
            let c = v.lead().unwrap().coeff.inv();
            out.push(Element { v: v.scale(&c), rep: rep.map(|r| r.scale(&c)), sugar: e.sugar });
        }
        Ok(GroebnerBasis { order: self.order, rep_order: self.rep_order, elems: out, inputs: self.inputs })
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> (Vector<C>, Option<Vector<C>>) {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let ma = a.v.lead().unwrap().mono.div(lcm).unwrap();
        let mb = b.v.lead().unwrap().mono.div(lcm).unwrap();
        let minus = C::one().neg();
        let s = a.v.mul_term(&C::one(), &ma).add_scaled(&minus, &mb, &b.v, &self.order);
        let rep = match (&a.rep, &b.rep) {
            (Some(ra), Some(rb)) => Some(ra.mul_term(&C::one(), &ma).add_scaled(&minus, &mb, rb, &self.rep_order)),
            _ => None,
        };
        (s, rep)
    }

    /// Makes `v` monic, adds it to the basis and updates the pair set
    /// (Gebauer–Möller).
    fn insert(&mut self, v: Vector<C>, rep: Option<Vector<C>>, sugar: i64) {
        let c = v.lead().unwrap().coeff.inv();
        let h = self.elems.len();
        self.elems.push(Element { v: v.scale(&c), rep: rep.map(|r| r.scale(&c)), sugar });
        let (hm, hp) = {
            let t = self.elems[h].v.lead().unwrap();
            (t.mono.clone(), t.pos)
        };
        let ideal = self.order.rank() == 1;

        let mut cands: Vec<Pair> = Vec::new();
        for &g in &self.active {
            let gt = self.elems[g].v.lead().unwrap();
            if gt.pos != hp {
                continue;
            }
            let lcm = gt.mono.lcm(&hm);
            let sugar = (self.elems[g].sugar + lcm.degree() as i64 - gt.mono.degree() as i64)
                .max(sugar + lcm.degree() as i64 - hm.degree() as i64);
            cands.push(Pair { i: g, j: h, lcm, pos: hp, sugar });
        }

        // Chain criterion among new pairs; coprime pairs (ideals only) are kept
        // here so that they can shadow others, then dropped.
        let coprime = |p: &Pair, elems: &[Element<C>]| ideal && elems[p.i].v.lead().unwrap().mono.is_coprime(&hm);
        let mut kept: Vec<Pair> = Vec::new();
        for k in 0..cands.len() {
            let p = &cands[k];
            let shadowed = !coprime(p, &self.elems)
                && (cands[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm)) || kept.iter().any(|q| q.lcm.divides(&p.lcm)));
            if !shadowed {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !coprime(p, &self.elems));

        // Old pairs whose lcm is a proper multiple of lt(h) via both sides.
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.pos != hp || !hm.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].v.lead().unwrap().mono.lcm(&hm);
            let lj = elems[p.j].v.lead().unwrap().mono.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| {
            let t = elems[g].v.lead().unwrap();
            !(t.pos == hp && hm.divides(&t.mono))
        });
        self.active.push(h);
    }
}

/// Top reduction: rewrites the leading term until it is irreducible. Tails
/// are left alone during completion to limit coefficient growth; `finish`
/// interreduces.
fn reduce_lead<C: Coeff>(
    elems: &[Element<C>],
    among: &[usize],
    order: &ModuleOrder,
    rep_order: &ModuleOrder,
    mut v: Vector<C>,
    mut rep: Option<Vector<C>>,
) -> (Vector<C>, Option<Vector<C>>) {
    while let Some(t) = v.lead() {
        let Some(&g) = among.iter().find(|&&i| {
            let l = elems[i].v.lead().unwrap();
            l.pos == t.pos && l.mono.divides(&t.mono)
        }) else {
            break;
        };
        let g = &elems[g];
        let gl = g.v.lead().unwrap();
        let q = gl.mono.div(&t.mono).unwrap();
        let minus = t.coeff.mul(&gl.coeff.inv()).neg();
        v = v.add_scaled(&minus, &q, &g.v, order);
        if let (Some(r), Some(gr)) = (rep.as_mut(), g.rep.as_ref()) {
            *r = r.add_scaled(&minus, &q, gr, rep_order);
        }
    }
    (v, rep)
}

/// Full reduction of `v` by the elements `among`. When `quot` is given, the
/// quotient terms for `among[k]` are appended to `quot[k]`.
pub(crate) fn reduce_by<C: Coeff>(
    elems: &[Element<C>],
    among: &[usize],
    order: &ModuleOrder,
    rep_order: &ModuleOrder,
    mut v: Vector<C>,
    mut rep: Option<Vector<C>>,
    mut quot: Option<&mut Vec<Vec<Term<C>>>>,
) -> (Vector<C>, Option<Vector<C>>) {
    let leads: Vec<(&Monomial, u32)> = among
        .iter()
        .map(|&i| {
            let t = elems[i].v.lead().unwrap();
            (&t.mono, t.pos)
        })
        .collect();
    let mut rem: Vec<Term<C>> = Vec::new();
    while let Some(t) = v.lead() {
        let hit = leads.iter().position(|(m, p)| *p == t.pos && m.divides(&t.mono));
        match hit {
            Some(k) => {
                let g = &elems[among[k]];
                let gl = g.v.lead().unwrap();
                let q = gl.mono.div(&t.mono).unwrap();
                let c = t.coeff.mul(&gl.coeff.inv());
                let minus = c.neg();
                v = v.add_scaled(&minus, &q, &g.v, order);
                if let (Some(r), Some(gr)) = (rep.as_mut(), g.rep.as_ref()) {
                    *r = r.add_scaled(&minus, &q, gr, rep_order);
                }
                if let Some(qs) = quot.as_deref_mut() {
                    qs[k].push(Term { mono: q, pos: 0, coeff: c });
                }
            }
            None => {
                rem.push(v.pop_lead());
            }
        }
    }
    (Vector::from_sorted(rem), rep)
}

/// A reduced Gröbner basis, sorted by ascending leading term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C> {
    order: ModuleOrder,
    rep_order: ModuleOrder,
    elems: Vec<Element<C>>,
    inputs: usize,
}

impl<C: Coeff> GroebnerBasis<C> {
    /// Wraps elements already forming a reduced basis, sorted ascending.
    pub(crate) fn trusted(elems: Vec<Vector<C>>, order: ModuleOrder) -> Self {
        let elems = elems.into_iter().map(|v| Element { v, rep: None, sugar: 0 }).collect();
        Self { order, rep_order: rep_order(), elems, inputs: 0 }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Element<C>] {
        &self.elems
    }

    /// Number of inputs the engine was fed (the rank of the tracked module).
    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn rep_order(&self) -> &ModuleOrder {
        &self.rep_order
    }

    pub fn leads(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.elems.iter().map(|e| {
            let t = e.v.lead().unwrap();
            (&t.mono, t.pos)
        })
    }

    fn all(&self) -> Vec<usize> {
        (0..self.elems.len()).collect()
    }

    pub fn reduce(&self, v: Vector<C>) -> Vector<C> {
        reduce_by(&self.elems, &self.all(), &self.order, &self.rep_order, v, None, None).0
    }

    /// Reduces while also tracking how much of each input was subtracted:
    /// returns `(r, t)` with `v − r = Σ t_k · input_k`.
    pub fn reduce_tracked(&self, v: Vector<C>) -> (Vector<C>, Vector<C>) {
        let (r, rep) = reduce_by(&self.elems, &self.all(), &self.order, &self.rep_order, v, Some(Vector::zero()), None);
        (r, rep.unwrap().scale(&C::one().neg()))
    }

    /// Division with quotients: `v = Σ q_k · g_k + r`. Quotients are rank-one
    /// vectors (position 0) in grevlex order.
    pub fn divide(&self, v: Vector<C>) -> (Vec<Vector<C>>, Vector<C>) {
        let mut quot = vec![Vec::new(); self.elems.len()];
        let (r, _) = reduce_by(&self.elems, &self.all(), &self.order, &self.rep_order, v, None, Some(&mut quot));
        let ideal = ModuleOrder::ideal(MonomialOrder::Grevlex);
        (quot.into_iter().map(|q| Vector::from_terms(q, &ideal)).collect(), r)
    }

    pub fn contains(&self, v: &Vector<C>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// True if every same-position S-vector reduces to zero.
    pub fn check_buchberger(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let (a, b) = (self.elems[i].v.lead().unwrap(), self.elems[j].v.lead().unwrap());
                if a.pos != b.pos {
                    continue;
                }
                let lcm = a.mono.lcm(&b.mono);
                let s = self.elems[i].v.mul_term(&C::one(), &a.mono.div(&lcm).unwrap()).add_scaled(
                    &C::one().neg(),
                    &b.mono.div(&lcm).unwrap(),
                    &self.elems[j].v,
                    &self.order,
                );
                if !self.reduce(s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the given module elements.
pub fn groebner<C: Coeff>(
    inputs: Vec<Vector<C>>,
    order: ModuleOrder,
    budget: Budget,
    track: bool,
) -> Result<GroebnerBasis<C>, GbError> {
    let mut e = Engine::new(order).budget(budget);
    if track {
        e = e.tracking();
    }
    for v in inputs {
        e.add_input(v);
    }
    e.finish()
}
