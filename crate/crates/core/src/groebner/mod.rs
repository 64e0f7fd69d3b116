//! Gröbner bases and the ideal toolbox built on them: normal forms, colon
//! ideals, saturation, intersection, and Hilbert-series invariants.

mod buchberger;
mod hilbert;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::terms::{self, Terms};
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial};

#[cfg(test)]
pub(crate) use buchberger::is_groebner;

/// Limits that turn runaway Gröbner computations into errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 2_000_000,
            max_basis: 50_000,
        }
    }
}

impl Budget {
    pub fn with_max_pairs(max_pairs: usize) -> Self {
        Budget {
            max_pairs,
            ..Budget::default()
        }
    }
}

/// Projective dimension and degree read off the Hilbert polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct HilbertData {
    /// `-1` for the empty scheme.
    pub dim: i64,
    pub degree: u64,
}

/// Numerator of the Hilbert series `N(t) / (1 - t)^nvars` of `R / I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i128>,
    pub nvars: usize,
}

impl HilbertSeries {
    /// Krull dimension of `R / I`, `None` for the unit ideal.
    pub fn krull_dim(&self) -> Option<usize> {
        let (c, _) = hilbert::factor_one_minus_t(&self.numerator)?;
        Some(self.nvars - c)
    }

    /// Multiplicity: `Q(1)` where `N = (1 - t)^c Q`.
    pub fn multiplicity(&self) -> u64 {
        match hilbert::factor_one_minus_t(&self.numerator) {
            None => 0,
            Some((_, q)) => q.iter().sum::<i128>().max(0) as u64,
        }
    }

    /// Whether `self` and `other` have the same Hilbert polynomial.
    pub fn same_polynomial(&self, other: &HilbertSeries) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let len = self.numerator.len().max(other.numerator.len());
        let mut diff = vec![0i128; len];
        for (i, x) in self.numerator.iter().enumerate() {
            diff[i] += x;
        }
        for (i, x) in other.numerator.iter().enumerate() {
            diff[i] -= x;
        }
        while diff.last() == Some(&0) {
            diff.pop();
        }
        match hilbert::factor_one_minus_t(&diff) {
            None => true,
            Some((c, _)) => c >= self.nvars,
        }
    }
}

#[derive(Clone)]
struct Basis<F: Field> {
    /// Reduced basis, each element sorted in the basis order.
    polys: Arc<Vec<Terms<F>>>,
}

/// An ideal given by generators, with lazily cached reduced Gröbner bases.
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<MonomialOrder, Basis<F>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal::new(ring, Vec::new()).expect("same ring")
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal::new(ring, vec![ring.one()]).expect("same ring")
    }

    /// The ideal generated by all variables.
    pub fn maximal_at_origin(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect()).expect("same ring")
    }

    /// Ideal whose generators are known to be a reduced basis in `ord`.
    fn from_basis(ring: &Arc<PolyRing<F>>, ord: MonomialOrder, basis: Vec<Terms<F>>) -> Self {
        let gens = basis
            .iter()
            .map(|t| Polynomial::from_terms(ring, t.clone()))
            .collect();
        let mut cache = HashMap::new();
        cache.insert(
            ord,
            Basis {
                polys: Arc::new(basis),
            },
        );
        Ideal {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(cache),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    fn basis_terms(&self, ord: MonomialOrder) -> Result<Arc<Vec<Terms<F>>>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(&ord) {
            return Ok(b.polys.clone());
        }
        let gens: Vec<Terms<F>> = self
            .gens
            .iter()
            .map(|g| {
                let t = g.terms().to_vec();
                if ord == self.ring.order() {
                    t
                } else {
                    terms::resort::<F>(t, ord)
                }
            })
            .collect();
        let basis = Arc::new(buchberger::groebner(
            self.ring.field(),
            ord,
            gens,
            self.ring.budget(),
        )?);
        self.cache.lock().expect("cache lock").insert(
            ord,
            Basis {
                polys: basis.clone(),
            },
        );
        Ok(basis)
    }

    /// Reduced, monic Gröbner basis for `ord`, sorted by ascending leading monomial.
    pub fn groebner_basis(&self, ord: MonomialOrder) -> Result<Vec<Polynomial<F>>> {
        Ok(self
            .basis_terms(ord)?
            .iter()
            .map(|t| Polynomial::from_terms(&self.ring, t.clone()))
            .collect())
    }

    /// Leading monomials of the reduced basis in `ord`.
    pub fn leading_monomials(&self, ord: MonomialOrder) -> Result<Vec<Monomial>> {
        Ok(self.basis_terms(ord)?.iter().map(|t| t[0].0.clone()).collect())
    }

    pub fn normal_form_with(&self, f: &Polynomial<F>, ord: MonomialOrder) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let basis = self.basis_terms(ord)?;
        let refs: Vec<&Terms<F>> = basis.iter().collect();
        let t = if ord == self.ring.order() {
            f.terms().to_vec()
        } else {
            terms::resort::<F>(f.terms().to_vec(), ord)
        };
        let r = buchberger::reduce(self.ring.field(), ord, &t, &refs);
        Ok(Polynomial::from_terms(&self.ring, r))
    }

    /// Remainder modulo the reduced basis in the ring's order.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.normal_form_with(f, self.ring.order())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal<F>) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let b = self.basis_terms(self.ring.order())?;
        Ok(b.len() == 1 && b[0][0].0.is_one())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generator(&self, g: Polynomial<F>) -> Result<Ideal<F>> {
        let mut gens = self.gens.clone();
        gens.push(g);
        Ideal::new(&self.ring, gens)
    }

    /// Indices of basis elements free of the first `k` variables, after a
    /// block-order basis computation in `ring` (which must have `k` prefix variables).
    fn eliminate_prefix(
        &self,
        big: &Arc<PolyRing<F>>,
        k: usize,
        gens: Vec<Polynomial<F>>,
    ) -> Result<Ideal<F>> {
        let elim = Ideal::new(big, gens)?;
        let basis = elim.basis_terms(MonomialOrder::Block(k))?;
        let mut kept: Vec<Terms<F>> = Vec::new();
        for t in basis.iter() {
            let p = Polynomial::from_sorted(big, t.clone());
            if let Some(q) = p.project_into(&self.ring, k) {
                kept.push(q.into_terms());
            }
        }
        if self.ring.order() == MonomialOrder::GrevLex {
            Ok(Ideal::from_basis(&self.ring, MonomialOrder::GrevLex, kept))
        } else {
            let gens = kept
                .into_iter()
                .map(|t| Polynomial::from_terms(&self.ring, t))
                .collect();
            Ideal::new(&self.ring, gens)
        }
    }

    /// `I ∩ J`, by eliminating `t` from `t·I + (1 - t)·J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let big = self.ring.elimination_ring(&["t"]);
        let t = big.var(0);
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.lift_into(&big, 1));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.lift_into(&big, 1));
        }
        self.eliminate_prefix(&big, 1, gens)
    }

    /// `I : (g)`.
    pub fn colon_poly(&self, g: &Polynomial<F>) -> Result<Ideal<F>> {
        if !same_ring(g.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut quotients = Vec::with_capacity(meet.gens.len());
        for h in &meet.gens {
            let q = h
                .div_exact(g)?
                .expect("elements of I ∩ (g) are multiples of g");
            quotients.push(q);
        }
        Ideal::new(&self.ring, quotients)
    }

    /// `I : J`, the intersection over generators `g` of `J` of `I : g`.
    pub fn colon(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if other.is_zero_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let c = self.colon_poly(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(acc.expect("nonzero ideal has a generator"))
    }

    /// `I : J^∞`, iterating `I ← I : J` until the ideal stops growing.
    pub fn saturate(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let mut cur = self.clone();
        loop {
            if cur.is_unit()? {
                return Ok(Ideal::unit(&self.ring));
            }
            let next = cur.colon(other)?;
            if next.is_subset_of(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Numerator of the Hilbert series of `R / LT(I)` for the ring's grevlex order.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let leads = self.leading_monomials(MonomialOrder::GrevLex)?;
        Ok(HilbertSeries {
            numerator: hilbert::numerator(&leads),
            nvars: self.ring.nvars(),
        })
    }

    fn require_homogeneous(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::NonHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Projective dimension and degree of the scheme `Proj(R / I)`.
    pub fn hilbert(&self) -> Result<HilbertData> {
        self.require_homogeneous()?;
        let hs = self.hilbert_series()?;
        Ok(match hs.krull_dim() {
            None | Some(0) => HilbertData { dim: -1, degree: 0 },
            Some(d) => HilbertData {
                dim: d as i64 - 1,
                degree: hs.multiplicity(),
            },
        })
    }

    /// Dimension of the affine zero set (`-1` when empty).
    pub fn affine_dim(&self) -> Result<i64> {
        Ok(match self.hilbert_series()?.krull_dim() {
            None => -1,
            Some(d) => d as i64,
        })
    }

    /// `dim_k R / I` when finite.
    pub fn vector_space_dim(&self) -> Result<Option<u64>> {
        let hs = self.hilbert_series()?;
        Ok(match hs.krull_dim() {
            None => Some(0),
            Some(0) => Some(hs.multiplicity()),
            Some(_) => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(vars, Rationals::default()).unwrap()
    }

    fn ideal<F: Field>(r: &Arc<PolyRing<F>>, gens: &[&str]) -> Ideal<F> {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap()
    }

    fn assert_all_spolys_vanish<F: Field>(i: &Ideal<F>, ord: MonomialOrder) {
        let b = i.basis_terms(ord).unwrap();
        assert!(is_groebner(i.ring().field(), ord, &b));
    }

    #[test]
    fn already_a_basis() {
        let r = qring(&["x", "y"]);
        let i = ideal(&r, &["x", "y"]);
        let gb = i.groebner_basis(MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&r.parse("x").unwrap()) && gb.contains(&r.parse("y").unwrap()));
    }

    #[test]
    fn squares_over_fp() {
        let r = PolyRing::new(&["x", "y"], PrimeField::new(7).unwrap()).unwrap();
        let i = ideal(&r, &["x^2+y^2", "x^2-y^2"]);
        let gb = i.groebner_basis(MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb, vec![r.parse("y^2").unwrap(), r.parse("x^2").unwrap()]);
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = qring(&["z", "y", "x"]);
        let i = ideal(&r, &["y - x^2", "z - x^3"]);
        assert_all_spolys_vanish(&i, MonomialOrder::Lex);
        let gb = i.groebner_basis(MonomialOrder::Lex).unwrap();
        assert!(gb.contains(&r.parse("y - x^2").unwrap()));
        assert!(i.contains(&r.parse("y^2 - x*z").unwrap()).unwrap());
        assert_all_spolys_vanish(&i, MonomialOrder::GrevLex);
    }

    #[test]
    fn normal_forms() {
        let r = qring(&["x", "y"]);
        let i = ideal(&r, &["x"]);
        assert!(i.normal_form(&r.parse("x^2").unwrap()).unwrap().is_zero());
        assert_eq!(i.normal_form(&r.parse("y").unwrap()).unwrap(), r.parse("y").unwrap());
        let f = r.parse("x*(y^3 + 1) + y^2").unwrap();
        assert_eq!(i.normal_form(&f).unwrap(), r.parse("y^2").unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = qring(&["x", "y"]);
        let c = ideal(&r, &["x*y"]).colon(&ideal(&r, &["x"])).unwrap();
        assert!(c.equals(&ideal(&r, &["y"])).unwrap());
        let c = ideal(&r, &["x^2", "x*y"]).colon(&ideal(&r, &["x"])).unwrap();
        assert!(c.equals(&ideal(&r, &["x", "y"])).unwrap());
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(i.colon(&Ideal::unit(&r)).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let r = qring(&["x", "y", "z"]);
        let s = ideal(&r, &["x*y", "x*z"]).saturate(&ideal(&r, &["x"])).unwrap();
        assert!(s.equals(&ideal(&r, &["y", "z"])).unwrap());
        let s = ideal(&r, &["x^2", "x*y"]).saturate(&ideal(&r, &["x", "y"])).unwrap();
        assert!(s.equals(&ideal(&r, &["x"])).unwrap());
        let i = ideal(&r, &["x", "y"]);
        let s = i.saturate(&ideal(&r, &["z - 1"])).unwrap();
        assert!(s.equals(&i).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = qring(&["x", "y", "z"]);
        let m = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(m.equals(&ideal(&r, &["x*y"])).unwrap());
        let m = ideal(&r, &["x"]).intersect(&ideal(&r, &["x"])).unwrap();
        assert!(m.equals(&ideal(&r, &["x"])).unwrap());
        let m = ideal(&r, &["x", "y"]).intersect(&ideal(&r, &["z"])).unwrap();
        assert!(m.equals(&ideal(&r, &["x*z", "y*z"])).unwrap());
    }

    #[test]
    fn hilbert_examples() {
        let r = qring(&["x", "y", "z", "w"]);
        assert_eq!(
            ideal(&r, &["x", "y"]).hilbert().unwrap(),
            HilbertData { dim: 1, degree: 1 }
        );
        assert_eq!(
            ideal(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]).hilbert().unwrap(),
            HilbertData { dim: 1, degree: 3 }
        );
        assert_eq!(
            ideal(&r, &["x^2 + y^2 + z^2 + w^2", "x*y + z*w + x*z"]).hilbert().unwrap(),
            HilbertData { dim: 1, degree: 4 }
        );
        assert_eq!(Ideal::unit(&r).hilbert().unwrap(), HilbertData { dim: -1, degree: 0 });
        assert_eq!(
            Ideal::maximal_at_origin(&r).hilbert().unwrap(),
            HilbertData { dim: -1, degree: 0 }
        );
        assert_eq!(Ideal::zero(&r).hilbert().unwrap(), HilbertData { dim: 3, degree: 1 });
        assert!(matches!(
            ideal(&r, &["x + y^2"]).hilbert(),
            Err(Error::NonHomogeneous(_))
        ));
    }

    #[test]
    fn budget_exceeded_is_structured() {
        let r = qring(&["x", "y", "z", "w"]).with_budget(Budget::with_max_pairs(1));
        let i = ideal(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        assert!(matches!(i.hilbert(), Err(Error::BudgetExceeded(_))));
    }
}
