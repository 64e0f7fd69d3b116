//! Hilbert series of monomial ideals by pivot recursion.

use std::collections::HashMap;

use crate::poly::Monomial;

/// Minimal generators of the monomial ideal generated by `gens`, sorted.
pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| a.exps().cmp(b.exps()));
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn trim(mut p: Vec<i128>) -> Vec<i128> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// `1 - t^d`.
fn one_minus_t_pow(d: u32) -> Vec<i128> {
    if d == 0 {
        return Vec::new();
    }
    let mut p = vec![0i128; d as usize + 1];
    p[0] = 1;
    p[d as usize] = -1;
    p
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `k[x] / M`,
/// as coefficients in ascending powers of `t` (empty vector for zero).
pub(crate) fn numerator(gens: &[Monomial]) -> Vec<i128> {
    let mut memo = HashMap::new();
    numerator_rec(minimalize(gens.to_vec()), &mut memo)
}

fn numerator_rec(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Vec<i128>>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens
            .iter()
            .fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_t_pow(g.degree())));
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let n = gens[0].nvars();
    // pivot on the variable occurring in the most generators
    let mut counts = vec![0usize; n];
    for g in &gens {
        for (v, e) in g.exps().iter().enumerate() {
            if *e > 0 {
                counts[v] += 1;
            }
        }
    }
    let v = (0..n).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nvars > 0");
    let e = gens
        .iter()
        .map(|g| g.exps()[v])
        .filter(|&e| e > 0)
        .min()
        .expect("variable occurs");
    let pivot = Monomial::var(n, v, e);

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let plus = minimalize(plus);

    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exps().to_vec();
            ex[v] = ex[v].saturating_sub(e);
            Monomial::from_exps(&ex)
        })
        .collect();
    let colon = minimalize(colon);

    let a = numerator_rec(plus, memo);
    let b = numerator_rec(colon, memo);
    let mut shifted = vec![0i128; e as usize];
    shifted.extend(b);
    let len = a.len().max(shifted.len());
    let mut out = vec![0i128; len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in shifted.iter().enumerate() {
        out[i] += x;
    }
    let out = trim(out);
    memo.insert(gens, out.clone());
    out
}

/// Splits `N(t) = (1 - t)^c Q(t)` with `Q(1) != 0`; returns `(c, Q)`.
/// For `N = 0` returns `None`.
pub(crate) fn factor_one_minus_t(n: &[i128]) -> Option<(usize, Vec<i128>)> {
    if n.is_empty() {
        return None;
    }
    let mut q = n.to_vec();
    let mut c = 0;
    while q.iter().sum::<i128>() == 0 {
        // synthetic division by (1 - t) = -(t - 1)
        let deg = q.len() - 1;
        let mut quot = vec![0i128; deg];
        let mut carry = 0i128;
        for k in (1..=deg).rev() {
            carry += q[k];
            quot[k - 1] = -carry;
        }
        q = trim(quot);
        c += 1;
    }
    Some((c, q))
}
