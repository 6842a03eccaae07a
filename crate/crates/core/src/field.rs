//! Exact scalar fields: prime fields `F_p` and the rationals.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible modulus; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Runtime description of a field, as it appears in input files and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

impl core::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field. Elements are plain values; all arithmetic goes through the
/// field object so that prime fields can carry their modulus at runtime.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    /// A uniformly random element for finite fields; a small integer for `Q`.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// The `index`-th element in a fixed enumeration (finite fields only cover
    /// `0..order`).
    fn element(&self, index: u64) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    /// A proper monic factor of the monic polynomial `m` (coefficients lowest
    /// degree first), when the field-specific search finds one.
    fn find_factor<R: Rng + ?Sized>(
        &self,
        m: &[Self::Elem],
        rng: &mut R,
    ) -> Option<alloc::vec::Vec<Self::Elem>>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `y += a * x`, elementwise.
    fn axpy(&self, y: &mut [Self::Elem], a: &Self::Elem, x: &[Self::Elem]) {
        debug_assert_eq!(y.len(), x.len());
        if self.is_zero(a) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(a, xi));
            }
        }
    }

    fn scale(&self, y: &mut [Self::Elem], a: &Self::Elem) {
        for yi in y.iter_mut() {
            *yi = self.mul(a, yi);
        }
    }
}

/// The prime field `Z/pZ` with canonical representatives `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "modulus {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
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
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn element(&self, index: u64) -> u64 {
        index % self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<u64> {
        let n: i64 = s.trim().parse().ok()?;
        Some(self.reduce_i64(n))
    }
    fn find_factor<R: Rng + ?Sized>(&self, m: &[u64], rng: &mut R) -> Option<alloc::vec::Vec<u64>> {
        crate::poly::prime_factor(self, m, rng)
    }

    fn axpy(&self, y: &mut [u64], a: &u64, x: &[u64]) {
        debug_assert_eq!(y.len(), x.len());
        if *a == 0 {
            return;
        }
        let p = self.p;
        for (yi, xi) in y.iter_mut().zip(x) {
            if *xi != 0 {
                *yi = (*yi + a * xi) % p;
            }
        }
    }
}

/// The rationals, with normalized arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
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
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
    fn element(&self, index: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let k = index.div_ceil(2) as i64;
        self.from_i64(if index % 2 == 1 { k } else { -k })
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
    fn find_factor<R: Rng + ?Sized>(
        &self,
        m: &[BigRational],
        _rng: &mut R,
    ) -> Option<alloc::vec::Vec<BigRational>> {
        crate::poly::rational_factor(self, m)
    }

    fn axpy(&self, y: &mut [BigRational], a: &BigRational, x: &[BigRational]) {
        if a.is_zero() {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi += a * xi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: alloc::vec::Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(MAX_PRIME).is_ok());
    }

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&2, &4), 3);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.parse("-7"), Some(3));
    }

    #[test]
    fn rational_parse_and_format() {
        let q = Rationals;
        let x = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.format(&q.parse("12").unwrap()), "12");
        assert!(q.parse("1/0").is_none());
        let enumerated: alloc::vec::Vec<String> = (0..5).map(|i| q.format(&q.element(i))).collect();
        assert_eq!(enumerated, ["0", "1", "-1", "2", "-2"]);
    }
}
