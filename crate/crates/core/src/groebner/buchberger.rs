//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of the product and chain criteria.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::terms::{add_scaled, Terms};
use crate::poly::{Monomial, MonomialOrder};

use super::Budget;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a, F: Field> {
    field: &'a F,
    ord: MonomialOrder,
    polys: Vec<Terms<F>>,
    leads: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

fn make_monic<F: Field>(f: &F, mut p: Terms<F>) -> Terms<F> {
    if let Some((_, c)) = p.first() {
        if !f.is_one(c) {
            let inv = f.inv(c).expect("nonzero leading coefficient");
            for (_, a) in p.iter_mut() {
                *a = f.mul(a, &inv);
            }
        }
    }
    p
}

/// Full reduction of `p` by `basis`, whose elements are sorted in `ord`.
pub(crate) fn reduce<F: Field>(
    f: &F,
    ord: MonomialOrder,
    p: &[(Monomial, F::Elem)],
    basis: &[&Terms<F>],
) -> Terms<F> {
    let leads: Vec<&Monomial> = basis.iter().map(|b| &b[0].0).collect();
    let mut cur: Terms<F> = p.to_vec();
    let mut start = 0;
    let mut rem: Terms<F> = Vec::new();
    while start < cur.len() {
        let (m, c) = &cur[start];
        let hit = leads.iter().position(|l| l.divides(m));
        match hit {
            Some(k) => {
                let q = leads[k].quotient_of(m).expect("divides");
                let lc = &basis[k][0].1;
                let coeff = if f.is_one(lc) {
                    f.neg(c)
                } else {
                    f.neg(&f.mul(c, &f.inv(lc).expect("nonzero")))
                };
                cur = add_scaled(f, ord, &cur[start..], &coeff, Some(&q), basis[k]);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    rem
}

impl<'a, F: Field> State<'a, F> {
    fn active_basis(&self) -> Vec<&Terms<F>> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn spoly(&self, pair: &Pair) -> Terms<F> {
        let f = self.field;
        let a = &self.polys[pair.i];
        let b = &self.polys[pair.j];
        let qa = self.leads[pair.i].quotient_of(&pair.lcm).expect("lcm");
        let qb = self.leads[pair.j].quotient_of(&pair.lcm).expect("lcm");
        let sa: Terms<F> = a[1..].iter().map(|(m, c)| (m.mul(&qa), c.clone())).collect();
        add_scaled(f, self.ord, &sa, &f.neg(&f.one()), Some(&qb), &b[1..])
    }

    /// Gebauer–Möller update after adding the monic, fully reduced `h`.
    fn insert(&mut self, h: Terms<F>) {
        let lh = h[0].0.clone();
        let hi = self.polys.len();
        self.polys.push(h);
        self.leads.push(lh.clone());
        self.active.push(true);

        let candidates: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, lh.lcm(&self.leads[g])))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in candidates.iter().enumerate() {
            let coprime = lh.is_coprime(&self.leads[*g]);
            let dominated = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.is_coprime(&self.leads[*g]))
            .map(|(g, lcm)| Pair { i: g, j: hi, lcm })
            .collect();

        let leads = &self.leads;
        self.pairs.retain(|p| {
            !lh.divides(&p.lcm)
                || leads[p.i].lcm(&lh) == p.lcm
                || lh.lcm(&leads[p.j]) == p.lcm
        });
        self.pairs.extend(fresh);

        for g in 0..hi {
            if self.active[g] && lh.divides(&self.leads[g]) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if ord.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm).is_lt() {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (each sorted in `ord`).
/// The result is monic and sorted by ascending leading monomial.
pub(crate) fn groebner<F: Field>(
    field: &F,
    ord: MonomialOrder,
    mut gens: Vec<Terms<F>>,
    budget: Budget,
) -> Result<Vec<Terms<F>>> {
    gens.retain(|g| !g.is_empty());
    if let Some(unit) = gens.iter().find(|g| g.len() == 1 && g[0].0.is_one()) {
        return Ok(vec![make_monic(field, unit.clone())]);
    }
    gens.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    let mut st = State {
        field,
        ord,
        polys: Vec::new(),
        leads: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let r = reduce(field, ord, &g, &st.active_basis());
        if !r.is_empty() {
            if r[0].0.is_one() {
                return Ok(vec![make_monic(field, r)]);
            }
            st.insert(make_monic(field, r));
        }
    }
    let mut processed = 0usize;
    while let Some(pair) = st.pop_pair() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "more than {} S-pairs",
                budget.max_pairs
            )));
        }
        let s = st.spoly(&pair);
        if s.is_empty() {
            continue;
        }
        let r = reduce(field, ord, &s, &st.active_basis());
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(vec![make_monic(field, r)]);
        }
        st.insert(make_monic(field, r));
        if st.polys.len() > budget.max_basis {
            return Err(Error::BudgetExceeded(format!(
                "basis grew beyond {} elements",
                budget.max_basis
            )));
        }
    }

    let mut basis: Vec<Terms<F>> = st
        .polys
        .into_iter()
        .zip(st.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    for k in 0..basis.len() {
        let others: Vec<&Terms<F>> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p)
            .collect();
        let tail = reduce(field, ord, &basis[k][1..], &others);
        let mut p = vec![basis[k][0].clone()];
        p.extend(tail);
        basis[k] = p;
    }
    basis.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    Ok(basis)
}

/// Whether every S-polynomial of `basis` reduces to zero.
#[cfg(test)]
pub(crate) fn is_groebner<F: Field>(field: &F, ord: MonomialOrder, basis: &[Terms<F>]) -> bool {
    let refs: Vec<&Terms<F>> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (&basis[i], &basis[j]);
            let lcm = a[0].0.lcm(&b[0].0);
            let qa = a[0].0.quotient_of(&lcm).unwrap();
            let qb = b[0].0.quotient_of(&lcm).unwrap();
            let ia = field.inv(&a[0].1).unwrap();
            let ib = field.inv(&b[0].1).unwrap();
            let sa: Terms<F> = a
                .iter()
                .map(|(m, c)| (m.mul(&qa), field.mul(c, &ia)))
                .collect();
            let s = add_scaled(field, ord, &sa, &field.neg(&ib), Some(&qb), b);
            if !reduce(field, ord, &s, &refs).is_empty() {
                return false;
            }
        }
    }
    true
}
