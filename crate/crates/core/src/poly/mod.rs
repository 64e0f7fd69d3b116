//! Sparse multivariate polynomials over an exact field.

mod monomial;
mod parse;
pub(crate) mod terms;

use std::fmt;
use std::sync::Arc;

pub use monomial::{Monomial, MonomialOrder};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Budget;
use crate::rng::RandomSource;

/// A polynomial ring `k[x_0, ..., x_{n-1}]` with a default monomial order.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    vars: Vec<String>,
    field: F,
    order: MonomialOrder,
    budget: Budget,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.field == other.field && self.order == other.order
    }
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F) -> Result<Arc<Self>> {
        Self::with_order(vars, field, MonomialOrder::GrevLex)
    }

    pub fn with_order<S: AsRef<str>>(
        vars: &[S],
        field: F,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidArgument(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(b) = order {
            if b > vars.len() {
                return Err(Error::InvalidArgument(
                    "elimination block larger than the ring".into(),
                ));
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            field,
            order,
            budget: Budget::default(),
        }))
    }

    /// Same ring with a different computation budget for Gröbner bases.
    pub fn with_budget(self: &Arc<Self>, budget: Budget) -> Arc<Self> {
        let mut r = (**self).clone();
        r.budget = budget;
        Arc::new(r)
    }

    /// Ring with `names` prepended as new variables and a block order
    /// eliminating them.
    pub(crate) fn elimination_ring(self: &Arc<Self>, names: &[&str]) -> Arc<Self> {
        let mut vars: Vec<String> = Vec::with_capacity(names.len() + self.vars.len());
        for name in names {
            let mut v = name.to_string();
            while self.vars.contains(&v) {
                v.push('_');
            }
            vars.push(v);
        }
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing {
            vars,
            field: self.field.clone(),
            order: MonomialOrder::Block(names.len()),
            budget: self.budget,
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        self.term(Monomial::var(self.nvars(), i, 1), self.field.one())
    }

    pub fn term(self: &Arc<Self>, m: Monomial, c: F::Elem) -> Polynomial<F> {
        assert_eq!(m.nvars(), self.nvars(), "monomial arity mismatch");
        let terms = if self.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial<F>> {
        parse::parse_polynomial(self, text)
    }

    /// A linear form with coefficients from the field's sampling distribution,
    /// plus a sampled constant term unless `through_origin`.
    pub fn random_linear_form(
        self: &Arc<Self>,
        rng: &mut RandomSource,
        through_origin: bool,
    ) -> Polynomial<F> {
        let n = self.nvars();
        let mut terms = Vec::with_capacity(n + 1);
        for i in 0..n {
            terms.push((Monomial::var(n, i, 1), self.field.sample(rng)));
        }
        if !through_origin {
            terms.push((Monomial::one(n), self.field.sample(rng)));
        }
        Polynomial::from_terms(self, terms)
    }
}

/// Result of a homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial: nonzero terms sorted strictly descending in the ring's order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl<F: Field> Eq for Polynomial<F> {}

pub(crate) fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Polynomial<F> {
    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let n = ring.nvars();
        assert!(terms.iter().all(|(m, _)| m.nvars() == n), "monomial arity mismatch");
        Polynomial {
            ring: ring.clone(),
            terms: terms::normalize(ring.field(), terms, ring.order()),
        }
    }

    /// Terms already sorted descending in the ring order and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0).is_gt()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the monomial 1.
    pub fn constant_term(&self) -> F::Elem {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Maximal total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Minimal total degree of a term (the order at the origin); `None` for zero.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some(d) = self.terms.first().map(|(m, _)| m.degree()) else {
            return Homogeneity::Zero;
        };
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity() != Homogeneity::Inhomogeneous
    }

    /// The maximal term under `ord`.
    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, F::Elem)> {
        let best = if ord == self.ring.order() {
            self.terms.first()
        } else {
            self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
        };
        best.cloned().ok_or(Error::ZeroPolynomial)
    }

    /// Leading term in the ring's own order.
    pub fn lt(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let f = self.ring.field();
        let ord = self.ring.order();
        let terms = match op {
            ArithOp::Add => terms::add_scaled(f, ord, &self.terms, &f.one(), None, &other.terms),
            ArithOp::Sub => {
                terms::add_scaled(f, ord, &self.terms, &f.neg(&f.one()), None, &other.terms)
            }
            ArithOp::Mul => terms::mul(f, ord, &self.terms, &other.terms),
        };
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scaled so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field().inv(c).expect("nonzero")),
        }
    }

    /// Substitutes `images[i]` for variable `i`; images may live in another ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let Some(target) = images.first().map(|p| p.ring.clone()) else {
            return Ok(self.clone());
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![target.one()]; images.len()];
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Homogenizes with respect to a new variable placed at index `pos`
    /// of `target` (which must have exactly one more variable).
    pub fn homogenize_into(&self, target: &Arc<PolyRing<F>>, pos: usize) -> Polynomial<F> {
        assert_eq!(target.nvars(), self.ring.nvars() + 1);
        let d = self.total_degree().unwrap_or(0);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: Vec<u32> = m.exps().to_vec();
                e.insert(pos, d - m.degree());
                (Monomial::from_exps(&e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Sets the variable at index `pos` to 1; `target` has that variable removed.
    pub fn dehomogenize_into(&self, target: &Arc<PolyRing<F>>, pos: usize) -> Polynomial<F> {
        assert_eq!(target.nvars() + 1, self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: Vec<u32> = m.exps().to_vec();
                e.remove(pos);
                (Monomial::from_exps(&e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Re-expresses the polynomial in `target`, a ring with `extra` leading variables.
    pub(crate) fn lift_into(&self, target: &Arc<PolyRing<F>>, extra: usize) -> Polynomial<F> {
        debug_assert_eq!(target.nvars(), self.ring.nvars() + extra);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_prefix(extra), c.clone()))
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Inverse of [`lift_into`]; `None` if a leading variable occurs.
    pub(crate) fn project_into(&self, target: &Arc<PolyRing<F>>, extra: usize) -> Option<Polynomial<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.strip_prefix(extra)?, c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial<F>) -> Result<Option<Polynomial<F>>> {
        if !same_ring(&self.ring, &divisor.ring) {
            return Err(Error::RingMismatch);
        }
        let Some((dm, dc)) = divisor.terms.first() else {
            return Err(Error::ZeroPolynomial);
        };
        let f = self.field();
        let ord = self.ring.order();
        let inv = f.inv(dc).expect("nonzero");
        let mut rem = self.terms.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.first() {
            let Some(q) = dm.quotient_of(m) else {
                return Ok(None);
            };
            let qc = f.mul(c, &inv);
            rem = terms::add_scaled(f, ord, &rem, &f.neg(&qc), Some(&q), &divisor.terms);
            quot.push((q, qc));
        }
        Ok(Some(Polynomial {
            ring: self.ring.clone(),
            terms: quot,
        }))
    }
}

impl<'a, F: Field> std::ops::Add for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.arith(rhs, ArithOp::Add).expect("ring mismatch")
    }
}

impl<'a, F: Field> std::ops::Sub for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.arith(rhs, ArithOp::Sub).expect("ring mismatch")
    }
}

impl<'a, F: Field> std::ops::Mul for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.arith(rhs, ArithOp::Mul).expect("ring mismatch")
    }
}

impl<'a, F: Field> std::ops::Neg for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&self.field().neg(&self.field().one()))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = self.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !f.is_one(&abs) || m.is_one() {
                factors.push(f.fmt_elem(&abs));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[v], e)),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
