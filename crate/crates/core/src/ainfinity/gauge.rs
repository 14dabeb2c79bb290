use std::collections::HashMap;

use super::{AnStructure, GaugeTransform};
use crate::hochschild::{brace, ms2, Cochain, Tuple};
use crate::linalg::Rat;
use crate::quiver::EWAlgebra;

/// The identity map on radical elements as an arity-1 cochain.
pub fn identity_cochain(e: &EWAlgebra) -> Cochain {
    let mut c = Cochain::zero(1, 0);
    for x in e.radical() {
        c.add_term((vec![x as u8], x as u8), Rat::one());
    }
    c
}

type ByValue = HashMap<u8, Vec<(Tuple, Rat)>>;

fn by_value(c: &Cochain) -> ByValue {
    let mut out: ByValue = HashMap::new();
    for ((tuple, y), v) in &c.entries {
        out.entry(*y).or_default().push((tuple.clone(), v.clone()));
    }
    out
}

/// x ↦ outer(inner_1(X_1), …, inner_r(X_r)) summed over consecutive splits
/// of x with |X_j| = arity(inner_j). No Koszul signs appear since every
/// inner map has suspended degree 0.
pub fn multi_compose(outer: &Cochain, inner: &[&Cochain]) -> Cochain {
    assert_eq!(outer.s, inner.len(), "outer arity must match the number of inner maps");
    let s: usize = inner.iter().map(|c| c.s).sum();
    let t: i32 = outer.t + inner.iter().map(|c| c.t).sum::<i32>();
    let mut out = Cochain::zero(s, t);
    let inv: Vec<ByValue> = inner.iter().map(|c| by_value(c)).collect();
    for ((ys, z), c) in &outer.entries {
        let lists: Option<Vec<&Vec<(Tuple, Rat)>>> = ys.iter().zip(&inv).map(|(y, m)| m.get(y)).collect();
        let Some(lists) = lists else { continue };
        let mut stack: Vec<(Tuple, Rat)> = vec![(Vec::with_capacity(s), c.clone())];
        for list in lists {
            let mut next = Vec::with_capacity(stack.len() * list.len());
            for (prefix, coef) in &stack {
                for (tuple, v) in list {
                    let mut p = prefix.clone();
                    p.extend_from_slice(tuple);
                    next.push((p, coef * v));
                }
            }
            stack = next;
        }
        for (tuple, coef) in stack {
            out.add_term((tuple, *z), coef);
        }
    }
    out
}

/// Compositions of `n` into `r` parts, each in 1..=max_part.
fn compositions(n: usize, r: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if n < r {
            return;
        }
        for p in 1..=max_part.min(n - (r - 1)) {
            cur.push(p);
            rec(n - p, r - 1, max_part, cur, out);
            cur.pop();
        }
    }
    rec(n, r, max_part, &mut cur, &mut out);
    out
}

/// Components f_1 = id, f_2, …, f_{N−1}, indexed by arity.
fn f_components(f: &GaugeTransform) -> Vec<Cochain> {
    let mut fs = vec![Cochain::zero(0, 0), identity_cochain(f.algebra())];
    fs.extend(f.components().iter().cloned());
    fs
}

/// Σ over compositions of n of outer_r(f_{i1}, …, f_{ir}), r in `rs`.
fn pushforward(
    outer: &dyn Fn(usize) -> Option<Cochain>,
    fs: &[Cochain],
    n: usize,
    rs: std::ops::RangeInclusive<usize>,
    t: i32,
) -> Cochain {
    let max_part = fs.len() - 1;
    let mut acc = Cochain::zero(n, t);
    for r in rs {
        let Some(o) = outer(r) else { continue };
        if o.is_zero() {
            continue;
        }
        for comp in compositions(n, r, max_part) {
            let inner: Vec<&Cochain> = comp.iter().map(|&i| &fs[i]).collect();
            if inner.iter().any(|c| c.is_zero()) {
                continue;
            }
            let term = multi_compose(&o, &inner);
            acc.add_scaled(&term, &Rat::one());
        }
    }
    acc
}

/// The structure m′ with F∘D_{m′} = D_m∘F on the truncated bar coalgebra,
/// i.e. m′ = F⁻¹ m F.
///
/// Componentwise: m′_n = Σ m_r(f_{i1}(X_1), …, f_{ir}(X_r))
///                      − Σ_{b<n} f_{n−b+1} ∘ m′_b.
pub fn gauge_act(f: &GaugeTransform, m: &AnStructure) -> AnStructure {
    assert_eq!(f.order(), m.order(), "gauge and structure orders differ");
    let e = m.algebra().clone();
    let n_max = m.order();
    let m2 = ms2(&e);
    let fs = f_components(f);
    let mut primed: Vec<Cochain> = vec![Cochain::zero(0, 0), Cochain::zero(1, 1), m2.clone()];
    for n in 3..=n_max {
        let t = 2 - n as i32;
        let outer = |r: usize| -> Option<Cochain> {
            match r {
                2 => Some(m2.clone()),
                r if r <= n_max => Some(m.m(r).clone()),
                _ => None,
            }
        };
        let mut acc = pushforward(&outer, &fs, n, 2..=n, t);
        for b in 2..n {
            let fk = &fs[n - b + 1];
            if fk.is_zero() || primed[b].is_zero() {
                continue;
            }
            acc.add_scaled(&brace(&e, fk, &primed[b]), &-Rat::one());
        }
        primed.push(acc.normalized(&e));
    }
    let components = primed.drain(3..).collect();
    AnStructure { algebra: e, order: n_max, components }
}

/// Group product with f·(g·m) = (f·g)·m: the coalgebra map G∘F, whose
/// components are (f·g)_n = Σ g_r(f_{i1}, …, f_{ir}).
pub fn group_mul(f: &GaugeTransform, g: &GaugeTransform) -> GaugeTransform {
    assert_eq!(f.order(), g.order(), "gauge orders differ");
    let e = f.algebra().clone();
    let fs = f_components(f);
    let gs = f_components(g);
    let n_max = f.order();
    let components = (2..n_max)
        .map(|n| {
            let t = 1 - n as i32;
            let outer = |r: usize| -> Option<Cochain> { gs.get(r).cloned() };
            // g_1 = id on all of E, including idempotent values of f_n.
            let mut acc = fs[n].clone();
            acc.add_scaled(&pushforward(&outer, &fs, n, 2..=n, t), &Rat::one());
            acc.normalized(&e)
        })
        .collect();
    GaugeTransform { algebra: e, order: n_max, components }
}
