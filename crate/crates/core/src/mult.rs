//! Local invariants at the origin of affine space: lengths, multiplicities
//! by generic slicing, and Segre numbers through a local SV recursion.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::poly::{PolyRing, Polynomial};
use crate::rng::RandomSource;
use crate::scheme::{monomials_of_degree, random_combination};

/// Largest power of the maximal ideal tried before declaring the origin
/// non-isolated.
pub const STABILIZATION_CAP: u32 = 64;

/// Fresh draws allowed for a slicing or cutting step.
pub const SLICE_RETRIES: usize = 5;

/// An ideal of `k[x_1..x_n]` studied near the origin.
#[derive(Debug, Clone)]
pub struct AffineIdeal<F: Field> {
    ideal: Ideal<F>,
}

impl<F: Field> AffineIdeal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        Ok(AffineIdeal {
            ideal: Ideal::new(ring, gens)?,
        })
    }

    pub fn from_ideal(ideal: Ideal<F>) -> Self {
        AffineIdeal { ideal }
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.ideal.ring()
    }

    pub fn contains_origin(&self) -> bool {
        vanishes_at_origin(&self.ideal)
    }

    /// The ideal after the linear change of coordinates `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        let gens = self
            .ideal
            .gens()
            .iter()
            .map(|g| g.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.ring(), gens)
    }
}

fn vanishes_at_origin<F: Field>(i: &Ideal<F>) -> bool {
    let f = i.ring().field();
    i.gens().iter().all(|g| f.is_zero(&g.constant_term()))
}

/// `m^d` for the maximal ideal `m` at the origin.
fn maximal_power<F: Field>(ring: &Arc<PolyRing<F>>, d: u32) -> Vec<Polynomial<F>> {
    let one = ring.field().one();
    monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| ring.term(m, one.clone()))
        .collect()
}

/// Length of the `m`-primary component of `I` at the origin.
pub fn local_length<F: Field>(i: &AffineIdeal<F>) -> Result<u64> {
    let ideal = i.ideal();
    if !i.contains_origin() {
        return Ok(0);
    }
    let ring = i.ring();
    let basis = ideal.groebner_basis(ring.order())?;
    let mut prev = None;
    let mut n = 2;
    while n <= STABILIZATION_CAP {
        let mut gens = basis.clone();
        gens.extend(maximal_power(ring, n));
        let len = Ideal::new(ring, gens)?
            .vector_space_dim()?
            .expect("ideal contains a power of the maximal ideal");
        if prev == Some(len) {
            return Ok(len);
        }
        prev = Some(len);
        n *= 2;
    }
    Err(Error::NonIsolated {
        cap: STABILIZATION_CAP,
    })
}

/// Whether the origin is at most an isolated point of `V(I)`.
fn origin_isolated<F: Field>(i: &Ideal<F>) -> Result<bool> {
    if !vanishes_at_origin(i) || i.affine_dim()? <= 0 {
        return Ok(true);
    }
    let m = Ideal::maximal_at_origin(i.ring());
    i.saturate(&m)?.sum(&m)?.is_unit()
}

fn slice<F: Field>(i: &Ideal<F>, c: usize, rng: &mut RandomSource) -> Result<Ideal<F>> {
    let ring = i.ring();
    let mut gens = i.gens().to_vec();
    gens.extend((0..c).map(|_| ring.random_linear_form(rng, true)));
    Ideal::new(ring, gens)
}

/// Dimension of `V(I)` at the origin, `-1` when the origin is not on it.
pub fn local_dim<F: Field>(i: &AffineIdeal<F>, rng: &mut RandomSource) -> Result<i64> {
    if !i.contains_origin() {
        return Ok(-1);
    }
    for c in 0..=i.ring().nvars() {
        if origin_isolated(&slice(i.ideal(), c, rng)?)? {
            return Ok(c as i64);
        }
    }
    unreachable!("the maximal ideal isolates the origin")
}

/// Multiplicity at the origin of a scheme of pure dimension `k`.
pub fn mult_at_origin<F: Field>(
    i: &AffineIdeal<F>,
    k: usize,
    rng: &mut RandomSource,
) -> Result<u64> {
    if !i.contains_origin() {
        return Ok(0);
    }
    if k == 0 {
        return local_length(i);
    }
    for _ in 0..=SLICE_RETRIES {
        let sliced = slice(i.ideal(), k, rng)?;
        if sliced.affine_dim()? <= 0 {
            return local_length(&AffineIdeal::from_ideal(sliced));
        }
    }
    Err(Error::Genericity(format!(
        "{k} linear forms through the origin did not cut a finite scheme after {SLICE_RETRIES} retries"
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegreNumbers {
    /// Codimension of `V(J)` at the origin.
    pub kappa: usize,
    /// `e_κ, ..., e_n`.
    pub e: Vec<u64>,
    pub zeros_below_kappa_ok: bool,
    pub seed: u64,
}

impl SegreNumbers {
    /// `e_k`, zero below `κ`.
    pub fn get(&self, k: usize) -> u64 {
        if k < self.kappa {
            0
        } else {
            self.e.get(k - self.kappa).copied().unwrap_or(0)
        }
    }
}

/// Segre numbers `e_k(J, 0)` for `k = κ..=n`.
pub fn segre_numbers<F: Field>(j: &AffineIdeal<F>, rng: &mut RandomSource) -> Result<SegreNumbers> {
    let seed = rng.seed();
    if j.ideal().is_zero_ideal() {
        return Err(Error::InvalidArgument("the zero ideal has no Segre numbers".into()));
    }
    if !j.contains_origin() {
        return Err(Error::InvalidArgument("the origin is not on V(J)".into()));
    }
    let ring = j.ring();
    let n = ring.nvars();
    let kappa = (n as i64 - local_dim(j, rng)?) as usize;
    let gens = j.ideal().gens();
    let mut e = vec![0u64; n + 1];
    let mut out = Ideal::zero(ring);
    for k in 1..=n {
        if !vanishes_at_origin(&out) {
            break;
        }
        let expected = (n - k) as i64;
        let mut step = None;
        for _ in 0..=SLICE_RETRIES {
            let h = random_combination(gens, rng);
            let total = out.with_generator(h)?;
            if total.affine_dim()? > expected {
                continue;
            }
            let next = total.saturate(j.ideal())?;
            let a = mult_at_origin(&AffineIdeal::from_ideal(total), n - k, rng)?;
            let b = mult_at_origin(&AffineIdeal::from_ideal(next.clone()), n - k, rng)?;
            if a < b {
                continue;
            }
            step = Some((a - b, next));
            break;
        }
        let Some((ek, next)) = step else {
            return Err(Error::Genericity(format!(
                "step {k}: combination of generators did not cut properly after {SLICE_RETRIES} retries"
            )));
        };
        e[k] = ek;
        out = next;
    }
    Ok(SegreNumbers {
        kappa,
        zeros_below_kappa_ok: e[..kappa].iter().all(|&x| x == 0),
        e: e[kappa..].to_vec(),
        seed,
    })
}

/// Hilbert–Samuel multiplicity `e_n` of an `m`-primary ideal.
pub fn hs_multiplicity<F: Field>(j: &AffineIdeal<F>, rng: &mut RandomSource) -> Result<u64> {
    let n = j.ring().nvars();
    let s = segre_numbers(j, rng)?;
    if s.kappa < n {
        return Err(Error::NotPrimary { kappa: s.kappa, n });
    }
    Ok(s.get(n))
}
