//! Buchberger's algorithm over the rationals with a work budget.

use std::cmp::Ordering;

use crate::exactalg::{Monomial, MonomialOrder, Polynomial, Scalar};

use super::IdealError;

/// Terms sorted descending in some monomial order, no zero coefficients.
pub(crate) type Terms = Vec<(Monomial, Scalar)>;

/// Caps on the work a single basis computation may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerBudget {
    /// Largest tolerated length of the critical-pair queue.
    pub max_pairs: usize,
    /// Total single-step reductions allowed.
    pub max_reductions: u64,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget { max_pairs: 50_000, max_reductions: 5_000_000 }
    }
}

impl GroebnerBudget {
    pub const UNLIMITED: GroebnerBudget = GroebnerBudget { max_pairs: usize::MAX, max_reductions: u64::MAX };

    /// Defaults overridden by `FOLIUM_MAX_PAIRS` / `FOLIUM_MAX_REDUCTIONS` when set.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(v) = std::env::var("FOLIUM_MAX_PAIRS").ok().and_then(|s| s.parse().ok()) {
            b.max_pairs = v;
        }
        if let Some(v) = std::env::var("FOLIUM_MAX_REDUCTIONS").ok().and_then(|s| s.parse().ok()) {
            b.max_reductions = v;
        }
        b
    }
}

pub(crate) struct Meter {
    budget: GroebnerBudget,
    reductions: u64,
}

impl Meter {
    pub(crate) fn new(budget: GroebnerBudget) -> Self {
        Meter { budget, reductions: 0 }
    }

    fn step(&mut self) -> Result<(), IdealError> {
        self.reductions += 1;
        if self.reductions > self.budget.max_reductions {
            return Err(IdealError::Inconclusive { reason: format!("more than {} reduction steps", self.budget.max_reductions) });
        }
        Ok(())
    }

    fn check_queue(&self, len: usize) -> Result<(), IdealError> {
        if len > self.budget.max_pairs {
            return Err(IdealError::Inconclusive { reason: format!("pair queue exceeded {} entries", self.budget.max_pairs) });
        }
        Ok(())
    }
}

pub(crate) fn to_terms(p: &Polynomial, order: MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    if order != MonomialOrder::DegRevLex {
        t.sort_by(|a, b| order.compare(&b.0, &a.0));
    }
    t
}

pub(crate) fn from_terms(nvars: usize, t: &Terms) -> Polynomial {
    Polynomial::from_terms(nvars, t.iter().cloned()).expect("terms fit the ambient")
}

fn make_monic(mut t: Terms) -> Terms {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip().expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
    t
}

/// `a - c * m * g` for descending-sorted term lists.
fn sub_mul(a: &[(Monomial, Scalar)], c: &Scalar, m: &Monomial, g: &[(Monomial, Scalar)], order: MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.checked_mul(m).expect("exponent overflow in reduction"), gc));
    let mut next = gi.next();
    while i < a.len() || next.is_some() {
        let ord = match (&a.get(i), &next) {
            (Some(x), Some((y, _))) => order.compare(&x.0, y),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (y, gc) = next.take().expect("pending term");
                out.push((y, -(c * gc)));
                next = gi.next();
            }
            Ordering::Equal => {
                let (y, gc) = next.take().expect("pending term");
                let v = &a[i].1 - &(c * gc);
                if !v.is_zero() {
                    out.push((y, v));
                }
                i += 1;
                next = gi.next();
            }
        }
    }
    out
}

/// Full reduction of `f` modulo `basis`.
pub(crate) fn reduce(f: Terms, basis: &[Terms], order: MonomialOrder, meter: &mut Meter) -> Result<Terms, IdealError> {
    let mut p = f;
    let mut start = 0;
    let mut rem = Vec::new();
    while start < p.len() {
        let (lm, lc) = &p[start];
        match basis.iter().find(|g| g[0].0.divides(lm)) {
            Some(g) => {
                meter.step()?;
                let q = lm.checked_div(&g[0].0).expect("divisor checked");
                let c = lc / &g[0].1;
                p = sub_mul(&p[start..], &c, &q, g, order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

fn s_polynomial(f: &Terms, g: &Terms, order: MonomialOrder) -> Terms {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.checked_div(&f[0].0).expect("lcm");
    let mg = l.checked_div(&g[0].0).expect("lcm");
    let scaled: Terms = f.iter().map(|(m, c)| (m.checked_mul(&mf).expect("exponent overflow"), c / &f[0].1)).collect();
    sub_mul(&scaled, &g[0].1.recip().expect("nonzero"), &mg, g, order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Core loop. `known` elements are assumed to already form a Gröbner basis among themselves.
pub(crate) fn buchberger_terms(
    known: Vec<Terms>,
    new: Vec<Terms>,
    order: MonomialOrder,
    meter: &mut Meter,
) -> Result<Vec<Terms>, IdealError> {
    let mut basis: Vec<Terms> = known.into_iter().filter(|t| !t.is_empty()).map(make_monic).collect();
    let mut pairs: Vec<Pair> = Vec::new();
    let push = |g: Terms, basis: &mut Vec<Terms>, pairs: &mut Vec<Pair>| {
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pairs.push(Pair { i, j, lcm: b[0].0.lcm(&g[0].0) });
        }
        basis.push(g);
    };
    for f in new {
        let r = reduce(f, &basis, order, meter)?;
        if r.is_empty() {
            continue;
        }
        let r = make_monic(r);
        if r[0].0.is_one() {
            return Ok(vec![r]);
        }
        push(r, &mut basis, &mut pairs);
        meter.check_queue(pairs.len())?;
    }
    while !pairs.is_empty() {
        // normal selection: smallest lcm first
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm.degree().cmp(&b.lcm.degree()).then_with(|| order.compare(&a.lcm, &b.lcm))
            })
            .expect("nonempty");
        let Pair { i, j, lcm } = pairs.swap_remove(pos);
        if basis[i][0].0.is_coprime(&basis[j][0].0) || chain_skips(i, j, &lcm, &basis, &pairs) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(s, &basis, order, meter)?;
        if r.is_empty() {
            continue;
        }
        let r = make_monic(r);
        if r[0].0.is_one() {
            return Ok(vec![r]);
        }
        push(r, &mut basis, &mut pairs);
        meter.check_queue(pairs.len())?;
    }
    interreduce(basis, order, meter)
}

/// Buchberger's second criterion: some `k` has `lm_k | lcm` and both pairs with `k` are settled.
fn chain_skips(i: usize, j: usize, lcm: &Monomial, basis: &[Terms], pending: &[Pair]) -> bool {
    let is_pending = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pending.iter().any(|p| p.i == a && p.j == b)
    };
    (0..basis.len()).any(|k| k != i && k != j && basis[k][0].0.divides(lcm) && !is_pending(i, k) && !is_pending(j, k))
}

/// Reduced basis: drop elements with reducible leading monomials, tail-reduce, sort.
pub(crate) fn interreduce(basis: Vec<Terms>, order: MonomialOrder, meter: &mut Meter) -> Result<Vec<Terms>, IdealError> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = &g[0].0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h[0].0.divides(lm) && (h[0].0 != *lm || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Terms> = minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, t)| t.clone()).collect();
        let lead = minimal[idx][0].clone();
        let tail = reduce(minimal[idx][1..].to_vec(), &others, order, meter)?;
        let mut t = vec![lead];
        t.extend(tail);
        reduced.push(make_monic(t));
    }
    reduced.sort_by(|a, b| order.compare(&b[0].0, &a[0].0));
    Ok(reduced)
}

/// Does every S-polynomial of `basis` reduce to zero?
pub(crate) fn s_pairs_reduce(basis: &[Terms], order: MonomialOrder) -> bool {
    let mut meter = Meter::new(GroebnerBudget::UNLIMITED);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order);
            match reduce(s, basis, order, &mut meter) {
                Ok(r) if r.is_empty() => {}
                _ => return false,
            }
        }
    }
    true
}
