use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// An exponent vector with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.deg = e;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg: exps.iter().sum(),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Monomial in a ring with `extra` new variables placed before the existing ones.
    pub(crate) fn with_prefix(&self, extra: usize) -> Monomial {
        let mut exps: SmallVec<[u32; 8]> = SmallVec::from_elem(0, extra);
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            deg: self.deg,
        }
    }

    /// Drops the first `extra` variables, which must have exponent zero.
    pub(crate) fn strip_prefix(&self, extra: usize) -> Option<Monomial> {
        if self.exps[..extra].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial::from_exps(&self.exps[extra..]))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A monomial order. All kinds are total, multiplicative, and well-founded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, `x_0 > x_1 > ...`.
    #[default]
    GrevLex,
    Lex,
    /// The first `b` variables are eliminated: grevlex on them, ties broken
    /// by grevlex on the remaining variables.
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(&a.exps, &b.exps, a.deg, b.deg),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                let da: u32 = a1.iter().sum();
                let db: u32 = b1.iter().sum();
                grevlex(a1, b1, da, db).then_with(|| grevlex(a2, b2, a.deg - da, b.deg - db))
            }
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}
