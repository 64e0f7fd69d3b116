//! Operations on raw term vectors sorted strictly descending in a monomial order.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::{Monomial, MonomialOrder};
use crate::field::Field;

pub(crate) type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// Combines duplicate monomials, drops zeros, and sorts descending.
pub(crate) fn normalize<F: Field>(f: &F, terms: Terms<F>, ord: MonomialOrder) -> Terms<F> {
    let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
    for (m, c) in terms {
        match acc.get_mut(&m) {
            Some(v) => *v = f.add(v, &c),
            None => {
                acc.insert(m, c);
            }
        }
    }
    let mut out: Terms<F> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
    out.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    out
}

/// Re-sorts terms for another order.
pub(crate) fn resort<F: Field>(mut terms: Terms<F>, ord: MonomialOrder) -> Terms<F> {
    terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    terms
}

/// `a + c * m * b`, where `m = None` stands for the monomial 1.
pub(crate) fn add_scaled<F: Field>(
    f: &F,
    ord: MonomialOrder,
    a: &[(Monomial, F::Elem)],
    c: &F::Elem,
    m: Option<&Monomial>,
    b: &[(Monomial, F::Elem)],
) -> Terms<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(t, bc)| {
        let t = match m {
            Some(m) => t.mul(m),
            None => t.clone(),
        };
        (t, f.mul(bc, c))
    });
    let mut next_b = bi.next();
    while i < a.len() {
        let Some((bm, bc)) = next_b.take() else {
            out.extend_from_slice(&a[i..]);
            return out;
        };
        match ord.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                next_b = Some((bm, bc));
            }
            Ordering::Less => {
                out.push((bm, bc));
                next_b = bi.next();
            }
            Ordering::Equal => {
                let s = f.add(&a[i].1, &bc);
                if !f.is_zero(&s) {
                    out.push((bm, s));
                }
                i += 1;
                next_b = bi.next();
            }
        }
    }
    if let Some(t) = next_b {
        out.push(t);
    }
    out.extend(bi);
    out
}

pub(crate) fn mul<F: Field>(
    f: &F,
    ord: MonomialOrder,
    a: &[(Monomial, F::Elem)],
    b: &[(Monomial, F::Elem)],
) -> Terms<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (am, ac) in a {
        for (bm, bc) in b {
            out.push((am.mul(bm), f.mul(ac, bc)));
        }
    }
    normalize(f, out, ord)
}
