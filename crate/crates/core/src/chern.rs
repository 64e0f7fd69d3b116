//! Chern and Segre calculus in the truncated cohomology ring `Q[H]/(H^{n+1})`
//! of projective space, for split bundles `⊕ O(d_i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sv::SvResult;

/// `Σ c_k H^k` with `k = 0..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohomClass {
    n: usize,
    coeffs: Vec<BigRational>,
}

impl CohomClass {
    /// Pads with zeros up to length `n + 1`; longer inputs are rejected.
    pub fn new(n: usize, mut coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() > n + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients do not fit in the cohomology of P^{n}",
                coeffs.len()
            )));
        }
        coeffs.resize(n + 1, BigRational::zero());
        Ok(CohomClass { n, coeffs })
    }

    pub fn from_ints(n: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(n, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(n: usize) -> Self {
        CohomClass {
            n,
            coeffs: vec![BigRational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, BigRational::one())
    }

    /// `c·H^k`, zero when `k > n`.
    pub fn monomial(n: usize, k: usize, c: BigRational) -> Self {
        let mut z = Self::zero(n);
        if k <= n {
            z.coeffs[k] = c;
        }
        z
    }

    /// `1 + d·H`.
    pub fn linear(n: usize, d: i64) -> Self {
        let mut z = Self::one(n);
        if n >= 1 {
            z.coeffs[1] = BigRational::from_integer(d.into());
        }
        z
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CohomClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `H^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut z = Self::zero(self.n);
        for i in 0..=self.n {
            if i + k <= self.n {
                z.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        z
    }

    /// Multiplicative inverse as a truncated power series. `None` when the
    /// constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=self.n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = -acc * &inv0;
        }
        Some(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficients as integers, when all of them are.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "classes live on different projective spaces");
    }
}

impl Add for &CohomClass {
    type Output = CohomClass;
    fn add(self, rhs: &CohomClass) -> CohomClass {
        self.check(rhs);
        CohomClass {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CohomClass {
    type Output = CohomClass;
    fn sub(self, rhs: &CohomClass) -> CohomClass {
        self.check(rhs);
        CohomClass {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CohomClass {
    type Output = CohomClass;
    fn neg(self) -> CohomClass {
        CohomClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CohomClass {
    type Output = CohomClass;
    fn mul(self, rhs: &CohomClass) -> CohomClass {
        self.check(rhs);
        let mut out = CohomClass::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=self.n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for CohomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "H")?,
                _ => write!(f, "H^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CohomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohomClass(P^{}: {self})", self.n)
    }
}

/// `⊕ O(d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    twists: Vec<i64>,
}

impl SplitBundle {
    pub fn new(twists: Vec<i64>) -> Result<Self> {
        if twists.is_empty() {
            return Err(Error::InvalidArgument("a bundle needs rank at least 1".into()));
        }
        Ok(SplitBundle { twists })
    }

    pub fn line(d: i64) -> Self {
        SplitBundle { twists: vec![d] }
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn direct_sum(&self, other: &SplitBundle) -> SplitBundle {
        SplitBundle {
            twists: self.twists.iter().chain(&other.twists).copied().collect(),
        }
    }
}

/// `Π (1 + d_i H)`.
pub fn chern_total(b: &SplitBundle, n: usize) -> CohomClass {
    b.twists
        .iter()
        .fold(CohomClass::one(n), |acc, &d| &acc * &CohomClass::linear(n, d))
}

/// `1 / c(B)`.
pub fn segre_total(b: &SplitBundle, n: usize) -> CohomClass {
    chern_total(b, n)
        .inverse()
        .expect("total Chern class has constant term 1")
}

/// `Σ_j (1 + dH)^{-j} · v_j · H^{j + offset}` for a degree vector `v`
/// supported on a cycle of codimension `offset` in `P^n`.
pub fn segre_from_sv_degrees(v: &[BigRational], d: i64, n: usize, offset: usize) -> CohomClass {
    transform(v, d, n, offset)
}

/// Segre class of `J` on `μ` from an SV result, in the cohomology of `P^n`.
pub fn segre_from_sv(r: &SvResult) -> CohomClass {
    let v: Vec<BigRational> = r
        .v_degrees
        .iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect();
    segre_from_sv_degrees(&v, r.twist as i64, r.n, r.n - r.mu_dim)
}

/// Inverse of [`segre_from_sv_degrees`]: `Σ_j (1 - dH)^{-j} · s_j` read back
/// as a degree vector of length `mu_dim + 1`.
pub fn sv_from_segre(s: &CohomClass, d: i64, mu_dim: usize) -> Result<Vec<BigRational>> {
    let n = s.ambient_dim();
    if mu_dim > n {
        return Err(Error::InvalidArgument(format!(
            "a cycle of dimension {mu_dim} does not fit in P^{n}"
        )));
    }
    let offset = n - mu_dim;
    if let Some(k) = s.order().filter(|&k| k < offset) {
        return Err(Error::InvalidArgument(format!(
            "class has a component in codimension {k} above the cycle"
        )));
    }
    let sj: Vec<BigRational> = s.coeffs()[offset..].to_vec();
    let v = transform(&sj, -d, n, offset);
    Ok(v.coeffs()[offset..].to_vec())
}

fn transform(v: &[BigRational], d: i64, n: usize, offset: usize) -> CohomClass {
    let step = CohomClass::linear(n, d).inverse().expect("unit constant term");
    let mut power = CohomClass::one(n);
    let mut acc = CohomClass::zero(n);
    for (j, c) in v.iter().enumerate() {
        if j > 0 {
            power = &power * &step;
        }
        if !c.is_zero() && j + offset <= n {
            acc = &acc + &power.scale(c).shift(j + offset);
        }
    }
    acc
}

fn check_codim(kappa: usize, n: usize) -> Result<()> {
    if kappa == 0 || kappa > n {
        return Err(Error::InvalidArgument(format!(
            "codimension {kappa} is outside 1..={n}"
        )));
    }
    Ok(())
}

fn degree_product(twists: &[i64]) -> BigRational {
    BigRational::from_integer(twists.iter().map(|&d| BigInt::from(d)).product())
}

/// Segre class of a complete intersection of hypersurfaces of degrees `twists`:
/// `s(⊕ O(d_i)) · (Π d_i) · H^κ`.
pub fn segre_regular_embedding(twists: &[i64], n: usize) -> Result<CohomClass> {
    check_codim(twists.len(), n)?;
    let b = SplitBundle::new(twists.to_vec())?;
    Ok(segre_total(&b, n)
        .scale(&degree_product(twists))
        .shift(twists.len()))
}

/// `c(N) · S(J, γ)` for the complete intersection of degrees `twists`.
pub fn gysin_map(gamma: &CohomClass, twists: &[i64], n: usize) -> Result<CohomClass> {
    if gamma.ambient_dim() != n {
        return Err(Error::InvalidArgument(format!(
            "class lives on P^{} but the embedding is in P^{n}",
            gamma.ambient_dim()
        )));
    }
    let s = segre_regular_embedding(twists, n)?;
    let c = chern_total(&SplitBundle::new(twists.to_vec())?, n);
    Ok(&(&c * &s) * gamma)
}

/// Compares the Segre class of `(d_1..d_κ, d)` with the product of the Segre
/// classes of `⊕ O(d_i)` and `O(d)` times the degree of the intersection.
pub fn ci_product_check(twists: &[i64], d: i64, n: usize) -> Result<bool> {
    check_codim(twists.len() + 1, n)?;
    let mut all = twists.to_vec();
    all.push(d);
    let lhs = segre_regular_embedding(&all, n)?;
    let base = if twists.is_empty() {
        CohomClass::one(n)
    } else {
        segre_total(&SplitBundle::new(twists.to_vec())?, n)
    };
    let rhs = (&base * &segre_total(&SplitBundle::line(d), n))
        .scale(&degree_product(&all))
        .shift(all.len());
    Ok(lhs == rhs)
}
