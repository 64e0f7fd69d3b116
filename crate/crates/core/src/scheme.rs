//! Projective schemes as saturated homogeneous ideals, and families of
//! sections of `O(d)` generating a given ideal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{HilbertData, Ideal};
use crate::poly::{Homogeneity, Monomial, PolyRing, Polynomial};
use crate::rng::RandomSource;

/// Number of resamples allowed when a random family fails verification.
pub const FAMILY_RETRIES: usize = 5;

/// A closed subscheme of `P^n` given by an ideal saturated with respect to
/// the irrelevant ideal. The empty scheme is `(1)` with dimension `-1`.
#[derive(Debug, Clone)]
pub struct ProjScheme<F: Field> {
    n: usize,
    ideal: Ideal<F>,
    data: HilbertData,
}

impl<F: Field> ProjScheme<F> {
    /// The scheme `V(gens) ⊆ P^n`, where the ring has `n + 1` variables.
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if ring.nvars() == 0 {
            return Err(Error::InvalidArgument(
                "projective space needs at least one variable".into(),
            ));
        }
        if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
            return Err(Error::NonHomogeneous(g.to_string()));
        }
        let raw = Ideal::new(ring, gens)?;
        let sat = if raw.is_zero_ideal() {
            raw
        } else {
            raw.saturate(&Ideal::maximal_at_origin(ring))?
        };
        Self::from_saturated(sat)
    }

    /// Wraps an ideal already known to be saturated.
    pub(crate) fn from_saturated(ideal: Ideal<F>) -> Result<Self> {
        let n = ideal.ring().nvars() - 1;
        let data = ideal.hilbert()?;
        let ideal = if data.dim < 0 {
            Ideal::unit(ideal.ring())
        } else {
            ideal
        };
        Ok(ProjScheme { n, ideal, data })
    }

    /// All of `P^n`.
    pub fn full(ring: &Arc<PolyRing<F>>) -> Result<Self> {
        Self::new(ring, Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.ideal.ring()
    }

    pub fn dim(&self) -> i64 {
        self.data.dim
    }

    pub fn degree(&self) -> u64 {
        self.data.degree
    }

    pub fn hilbert(&self) -> HilbertData {
        self.data
    }

    pub fn is_empty(&self) -> bool {
        self.data.dim < 0
    }

    /// Ideal inclusion `ideal(self) ⊆ ideal(other)`, i.e. `other ⊆ self` as schemes.
    pub fn contains(&self, other: &ProjScheme<F>) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::RingMismatch);
        }
        self.ideal.is_subset_of(&other.ideal)
    }
}

/// Homogeneous forms of a common degree `d` generating (up to saturation) an ideal `J`.
#[derive(Debug, Clone)]
pub struct SectionFamily<F: Field> {
    twist: u32,
    forms: Vec<Polynomial<F>>,
    source: Ideal<F>,
}

impl<F: Field> SectionFamily<F> {
    /// A family from forms that are already homogeneous of degree `twist`.
    pub fn from_forms(forms: Vec<Polynomial<F>>, twist: u32) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::InvalidArgument("empty section family".into()));
        };
        let ring = first.ring().clone();
        for f in &forms {
            if f.homogeneity() != Homogeneity::Homogeneous(twist) {
                return Err(Error::NonHomogeneous(format!(
                    "{f} is not a form of degree {twist}"
                )));
            }
        }
        let source = Ideal::new(&ring, forms.clone())?;
        Ok(SectionFamily {
            twist,
            forms,
            source,
        })
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn forms(&self) -> &[Polynomial<F>] {
        &self.forms
    }

    /// The ideal `J` whose scheme the family defines.
    pub fn source(&self) -> &Ideal<F> {
        &self.source
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.source.ring()
    }

    /// The ideal generated by the forms of the family.
    pub fn ideal(&self) -> Result<Ideal<F>> {
        Ideal::new(self.ring(), self.forms.clone())
    }

    /// `h = Σ a_i f_i` with random coefficients, resampled while zero.
    pub fn generic_section(&self, rng: &mut RandomSource) -> Polynomial<F> {
        random_combination(&self.forms, rng)
    }
}

pub(crate) fn random_combination<F: Field>(polys: &[Polynomial<F>], rng: &mut RandomSource) -> Polynomial<F> {
    let ring = polys[0].ring().clone();
    loop {
        let mut h = ring.zero();
        for p in polys {
            let c = ring.field().sample(rng);
            h = &h + &p.scale(&c);
        }
        if !h.is_zero() || polys.iter().all(|p| p.is_zero()) {
            return h;
        }
    }
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exps(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Random elements of the degree-`d` piece of `J`, with `d` the maximal
/// generator degree, whose saturation equals that of `J`.
pub fn equalize_degrees<F: Field>(j: &Ideal<F>, rng: &mut RandomSource) -> Result<SectionFamily<F>> {
    equalize_degrees_to(j, None, rng)
}

/// As [`equalize_degrees`], with an optional twist at least the maximal generator degree.
///
/// The family has `min(n + 2, #products)` members where the products are
/// `g·μ` for generators `g` and monomials `μ` of degree `d - deg g`. The
/// saturation check compares Hilbert polynomials: the family ideal is
/// contained in `J`, so equal Hilbert polynomials force equal saturations.
pub fn equalize_degrees_to<F: Field>(
    j: &Ideal<F>,
    twist: Option<u32>,
    rng: &mut RandomSource,
) -> Result<SectionFamily<F>> {
    let ring = j.ring().clone();
    if j.is_zero_ideal() {
        return Err(Error::InvalidArgument("ideal must be nonzero".into()));
    }
    let mut degrees = Vec::with_capacity(j.gens().len());
    for g in j.gens() {
        match g.homogeneity() {
            Homogeneity::Homogeneous(d) => degrees.push(d),
            _ => return Err(Error::NonHomogeneous(g.to_string())),
        }
    }
    let max_deg = *degrees.iter().max().expect("nonzero ideal");
    let d = match twist {
        Some(t) if t < max_deg => {
            return Err(Error::InvalidArgument(format!(
                "twist {t} is below the maximal generator degree {max_deg}"
            )))
        }
        Some(t) => t,
        None => max_deg,
    };
    let mut products = Vec::new();
    for (g, &dg) in j.gens().iter().zip(&degrees) {
        for mu in monomials_of_degree(ring.nvars(), d - dg) {
            products.push(g.mul_term(&mu, &ring.field().one()));
        }
    }
    let ambient = ring.nvars().saturating_sub(1);
    let size = (ambient + 2).min(products.len());
    let target = j.hilbert_series()?;
    for _ in 0..=FAMILY_RETRIES {
        let forms: Vec<Polynomial<F>> = (0..size)
            .map(|_| random_combination(&products, rng))
            .collect();
        let family = Ideal::new(&ring, forms.clone())?;
        if family.hilbert_series()?.same_polynomial(&target) {
            return Ok(SectionFamily {
                twist: d,
                forms,
                source: j.clone(),
            });
        }
    }
    Err(Error::Genericity(format!(
        "no random family of {size} forms of degree {d} reproduced the scheme after {FAMILY_RETRIES} retries"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring3() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(&["x0", "x1", "x2"], Rationals::default()).unwrap()
    }

    fn polys<F: Field>(r: &Arc<PolyRing<F>>, gens: &[&str]) -> Vec<Polynomial<F>> {
        gens.iter().map(|g| r.parse(g).unwrap()).collect()
    }

    #[test]
    fn point_line_and_plane() {
        let r = ring3();
        let p = ProjScheme::new(&r, polys(&r, &["x0", "x1"])).unwrap();
        assert_eq!((p.dim(), p.degree()), (0, 1));
        let c = ProjScheme::new(&r, polys(&r, &["x0*x1"])).unwrap();
        assert_eq!((c.dim(), c.degree()), (1, 2));
        let r4 = PolyRing::new(&["x", "y", "z", "w"], Rationals::default()).unwrap();
        let full = ProjScheme::full(&r4).unwrap();
        assert_eq!((full.dim(), full.degree()), (3, 1));
    }

    #[test]
    fn irrelevant_components_are_removed() {
        let r = ring3();
        let s = ProjScheme::new(&r, polys(&r, &["x0^2", "x0*x1", "x0*x2"])).unwrap();
        assert!(s.ideal().equals(&Ideal::new(&r, polys(&r, &["x0"])).unwrap()).unwrap());
        let again = ProjScheme::new(&r, s.ideal().gens().to_vec()).unwrap();
        assert!(again.ideal().equals(s.ideal()).unwrap());
        let empty = ProjScheme::new(&r, polys(&r, &["x0", "x1", "x2^3"])).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.degree(), 0);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let r = ring3();
        assert!(matches!(
            ProjScheme::new(&r, polys(&r, &["x0 + x1^2"])),
            Err(Error::NonHomogeneous(_))
        ));
    }

    #[test]
    fn containment_is_ideal_inclusion() {
        let r = ring3();
        let plane = ProjScheme::full(&r).unwrap();
        let line = ProjScheme::new(&r, polys(&r, &["x0"])).unwrap();
        let double = ProjScheme::new(&r, polys(&r, &["x0^2"])).unwrap();
        let other = ProjScheme::new(&r, polys(&r, &["x1"])).unwrap();
        assert!(plane.contains(&line).unwrap());
        assert!(double.contains(&line).unwrap());
        assert!(!line.contains(&double).unwrap());
        assert!(!line.contains(&other).unwrap());
    }

    #[test]
    fn equalization_of_mixed_degrees() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default()).unwrap();
        let j = Ideal::new(&r, polys(&r, &["x", "y^2"])).unwrap();
        let fam = equalize_degrees(&j, &mut RandomSource::new(1)).unwrap();
        assert_eq!(fam.twist(), 2);
        assert_eq!(fam.forms().len(), 4);
        for f in fam.forms() {
            assert_eq!(f.homogeneity(), Homogeneity::Homogeneous(2));
            assert!(j.contains(f).unwrap());
        }
        let m = Ideal::maximal_at_origin(&r);
        let a = fam.ideal().unwrap().saturate(&m).unwrap();
        let b = j.saturate(&m).unwrap();
        assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn equalization_of_a_single_form() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default()).unwrap();
        let j = Ideal::new(&r, polys(&r, &["x^2"])).unwrap();
        let fam = equalize_degrees(&j, &mut RandomSource::new(3)).unwrap();
        assert_eq!(fam.forms().len(), 1);
        let (m, _) = fam.forms()[0].lt().unwrap().clone();
        assert_eq!(m.exps(), &[2, 0, 0]);
        assert_eq!(fam.forms()[0].num_terms(), 1);
    }

    #[test]
    fn twist_override_and_errors() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default()).unwrap();
        let j = Ideal::new(&r, polys(&r, &["x", "y"])).unwrap();
        let fam = equalize_degrees_to(&j, Some(2), &mut RandomSource::new(2)).unwrap();
        assert_eq!(fam.twist(), 2);
        assert!(equalize_degrees_to(&j, Some(0), &mut RandomSource::new(2)).is_err());
        let bad = Ideal::new(&r, polys(&r, &["x + y^2"])).unwrap();
        assert!(equalize_degrees(&bad, &mut RandomSource::new(2)).is_err());
    }

    #[test]
    fn generic_sections_are_deterministic_members() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default()).unwrap();
        let fam = SectionFamily::from_forms(polys(&r, &["x", "y"]), 1).unwrap();
        let h1 = fam.generic_section(&mut RandomSource::new(9));
        let h2 = fam.generic_section(&mut RandomSource::new(9));
        assert_eq!(h1, h2);
        assert_eq!(h1.num_terms(), 2);
        assert!(fam.source().contains(&h1).unwrap());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(monomials_of_degree(1, 5)[0].exps(), &[5]);
    }
}
