//! Exact coefficient fields: the rationals and prime fields `F_p` with `p < 2^63`.

use std::fmt;
use std::hash::Hash;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Largest prime below `2^62`; the default coefficient field is `F_p` for this `p`.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// Default half-width of the integer sampling box for rational coefficients.
pub const DEFAULT_RATIONAL_BOUND: i64 = 1_000_000;

/// An exact field with value-semantics elements.
///
/// The field value itself carries the context (e.g. the modulus); elements
/// are plain data and only meaningful together with their field.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// A coefficient from the sampling distribution used for generic choices:
    /// uniform nonzero residues for `F_p`, uniform integers in `[-B, B]` for `Q`.
    fn sample(&self, rng: &mut RandomSource) -> Self::Elem;

    /// A nonzero sample.
    fn sample_nonzero(&self, rng: &mut RandomSource) -> Self::Elem {
        loop {
            let c = self.sample(rng);
            if !self.is_zero(&c) {
                return c;
            }
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Whether `a` prints with a leading minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn spec(&self) -> FieldSpec;
}

/// Which field to use; parsed from `q`, `fp` or `fp:<prime>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = match s {
            "q" | "Q" => FieldSpec::Rational,
            "fp" => FieldSpec::Prime(DEFAULT_PRIME),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .or_else(|| s.strip_prefix("fp "))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown field `{s}`")))?;
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad prime `{p}`")))?;
                FieldSpec::Prime(p)
            }
        };
        if let FieldSpec::Prime(p) = spec {
            PrimeField::new(p)?;
        }
        Ok(spec)
    }
}

/// The prime field `Z/pZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidArgument(format!(
                "prime {p} too large; must be below 2^63"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        r.to_u64().expect("residue fits in u64")
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Some(t.rem_euclid(self.p as i128) as u64)
    }

    fn sample(&self, rng: &mut RandomSource) -> u64 {
        rng.range_u64(1, self.p - 1)
    }

    fn is_negative(&self, _a: &u64) -> bool {
        false
    }

    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

/// The field of rational numbers with exact big-integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals {
    bound: i64,
}

impl Rationals {
    /// Rationals whose random samples are integers in `[-bound, bound]`.
    pub fn with_bound(bound: i64) -> Self {
        Rationals {
            bound: bound.max(1),
        }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }
}

impl Default for Rationals {
    fn default() -> Self {
        Rationals {
            bound: DEFAULT_RATIONAL_BOUND,
        }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn sample(&self, rng: &mut RandomSource) -> BigRational {
        self.from_i64(rng.range_i64(-self.bound, self.bound))
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(!is_prime(DEFAULT_PRIME - 2));
        assert!(is_prime(2) && is_prime(5) && !is_prime(1) && !is_prime(91));
    }

    #[test]
    fn fp_small_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.from_i64(-1), 4);
        for a in 1..5 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn fp_large_inverse() {
        let f = PrimeField::default();
        let a = 123_456_789_012_345u64;
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        assert_eq!(f.from_bigint(&BigInt::from(-1)), DEFAULT_PRIME - 1);
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Rationals::default();
        let a = BigRational::new(BigInt::from(2), BigInt::from(-4));
        assert_eq!(a, BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert!(q.is_negative(&a));
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!(
            "fp".parse::<FieldSpec>().unwrap(),
            FieldSpec::Prime(DEFAULT_PRIME)
        );
        assert_eq!("fp:101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert!("fp:100".parse::<FieldSpec>().is_err());
        assert!("reals".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rational_samples_respect_bound() {
        let q = Rationals::with_bound(3);
        let mut rng = RandomSource::new(1);
        for _ in 0..100 {
            let c = q.sample(&mut rng);
            assert!(c.is_integer() && c.numer().abs() <= BigInt::from(3));
        }
    }
}
