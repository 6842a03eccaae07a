//! Univariate polynomials over an exact field, just enough to split
//! semisimple algebras: gcds, modular powers and a search for one proper
//! factor of a minimal polynomial.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros (the zero polynomial is the empty vector).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::field::{Field, PrimeField, Rationals};

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn x<F: Field>(f: &F) -> Poly<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F::Elem> {
    trim(f, vec![c])
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => f.zero(),
        })
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let nb: Vec<F::Elem> = b.iter().map(|c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        f.axpy(&mut out[i..i + b.len()], x, b);
    }
    trim(f, out)
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = f.inv(lead).expect("nonzero leading coefficient");
            a.iter().map(|c| f.mul(&inv, c)).collect()
        }
    }
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(&r[k + db], &inv);
        if !f.is_zero(&c) {
            let nc = f.neg(&c);
            f.axpy(&mut r[k..k + db + 1], &nc, b);
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(f, q), trim(f, r))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub type Bezout<E> = (Poly<E>, Poly<E>, Poly<E>);

/// `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`, `g` monic.
pub fn xgcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Bezout<F::Elem> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lead) => {
            let inv = f.inv(lead).expect("nonzero");
            let sc = |p: &[F::Elem]| trim(f, p.iter().map(|c| f.mul(&inv, c)).collect());
            (sc(&r0), sc(&s0), sc(&t0))
        }
    }
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    trim(f, out)
}

/// `base^exp mod m`.
pub fn powmod<F: Field>(f: &F, base: &[F::Elem], mut exp: u64, m: &[F::Elem]) -> Poly<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let mut b = rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        exp >>= 1;
    }
    acc
}

fn is_proper<E>(g: &[E], m: &[E]) -> bool {
    matches!(degree(g), Some(d) if d > 0 && d < m.len() - 1)
}

/// A proper monic factor of `m` over `F_p`, if one is found.
///
/// Handles repeated factors, roots (brute force for small `p`, random
/// splitting otherwise) and mixed distinct-degree patterns; products of
/// irreducibles of a single degree `d ≥ 2` are split by Cantor–Zassenhaus.
pub fn prime_factor<R: Rng + ?Sized>(f: &PrimeField, m: &[u64], rng: &mut R) -> Option<Poly<u64>> {
    let m = monic(f, m);
    let n = degree(&m)?;
    if n < 2 {
        return None;
    }
    let p = f.modulus();
    let dm = derivative(f, &m);
    if dm.is_empty() {
        // m(x) = g(x^p) = g(x)^p over F_p.
        let g: Vec<u64> = m.iter().step_by(p as usize).cloned().collect();
        return Some(monic(f, &g));
    }
    let g = gcd(f, &m, &dm);
    if is_proper(&g, &m) {
        return Some(g);
    }
    // m is squarefree from here on.
    let xp = x(f);
    let mut frob = xp.clone();
    for d in 1..=n / 2 {
        frob = powmod(f, &frob, p, &m);
        let g = gcd(f, &m, &sub(f, &frob, &xp));
        if g.len() <= 1 {
            continue;
        }
        if is_proper(&g, &m) {
            return Some(g);
        }
        return equal_degree_split(f, &m, d, rng);
    }
    None
}

fn equal_degree_split<R: Rng + ?Sized>(
    f: &PrimeField,
    m: &[u64],
    d: usize,
    rng: &mut R,
) -> Option<Poly<u64>> {
    let p = f.modulus();
    let n = m.len() - 1;
    if d == 1 && p <= 4096 {
        return (0..p)
            .find(|&r| eval(f, m, &r) == 0)
            .map(|r| vec![f.neg(&r), 1]);
    }
    for _ in 0..64 {
        let t: Vec<u64> = trim(f, (0..n).map(|_| f.sample(rng)).collect());
        if degree(&t).is_none_or(|k| k == 0) {
            continue;
        }
        let g = gcd(f, m, &t);
        if is_proper(&g, m) {
            return Some(g);
        }
        let probe = if p == 2 {
            // Trace map t + t^2 + ... + t^(2^(d-1)).
            let mut acc = t.clone();
            let mut cur = t.clone();
            for _ in 1..d {
                cur = powmod(f, &cur, 2, m);
                acc = add(f, &acc, &cur);
            }
            acc
        } else {
            // t^((p^d - 1)/2) = prod_k (t^(p^k))^((p-1)/2)
            let mut acc = vec![1u64];
            let mut cur = t.clone();
            for _ in 0..d {
                acc = rem(f, &mul(f, &acc, &powmod(f, &cur, (p - 1) / 2, m)), m);
                cur = powmod(f, &cur, p, m);
            }
            sub(f, &acc, &[1])
        };
        let g = gcd(f, m, &probe);
        if is_proper(&g, m) {
            return Some(g);
        }
    }
    None
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], at: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, at), c))
}

/// Cap on integer sizes for the rational-root search.
const RATIONAL_ROOT_LIMIT: u64 = 1 << 40;

/// A proper monic factor of `m` over `Q`: repeated factors or a linear factor
/// from a rational root. Irreducible factors of degree at least two are not
/// searched for.
pub fn rational_factor(q: &Rationals, m: &[BigRational]) -> Option<Poly<BigRational>> {
    let m = monic(q, m);
    let n = degree(&m)?;
    if n < 2 {
        return None;
    }
    let g = gcd(q, &m, &derivative(q, &m));
    if is_proper(&g, &m) {
        return Some(g);
    }
    if m[0].is_zero() {
        return Some(x(q));
    }
    // Integer polynomial with the same roots.
    let lcm = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = m
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let a0 = ints[0]
        .abs()
        .to_u64()
        .filter(|&v| v <= RATIONAL_ROOT_LIMIT)?;
    let an = ints[n]
        .abs()
        .to_u64()
        .filter(|&v| v <= RATIONAL_ROOT_LIMIT)?;
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                if eval(q, &m, &r).is_zero() {
                    return Some(vec![-r, BigRational::one()]);
                }
            }
        }
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn divrem_and_gcd() {
        let f = PrimeField::new(7).unwrap();
        // (x+1)(x+2) = x^2 + 3x + 2
        let a = vec![2, 3, 1];
        let (qt, r) = divrem(&f, &a, &[1, 1]);
        assert_eq!(qt, [2, 1]);
        assert!(r.is_empty());
        assert_eq!(gcd(&f, &a, &[2, 1]), [2, 1]);
        let (g, s, t) = xgcd(&f, &[1, 1], &[2, 1]);
        assert_eq!(g, [1]);
        let comb = add(&f, &mul(&f, &s, &[1, 1]), &mul(&f, &t, &[2, 1]));
        assert_eq!(comb, [1]);
    }

    #[test]
    fn prime_factor_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = PrimeField::new(2).unwrap();
        // x^2 + x = x(x+1)
        let g = prime_factor(&f, &[0, 1, 1], &mut rng).unwrap();
        assert!(g == [0, 1] || g == [1, 1]);
        // x^2 + x + 1 is irreducible over F_2
        assert!(prime_factor(&f, &[1, 1, 1], &mut rng).is_none());
        // x^2 = x * x
        assert_eq!(prime_factor(&f, &[0, 0, 1], &mut rng).unwrap(), [0, 1]);
        // (x^2+x+1)(x^2+x+1+x^... ) equal-degree: (x^2+x+1)^1 * (x^2+x+1) is repeated; use
        // product of the two... only one irreducible quadratic over F_2, so use F_3.
        let f3 = PrimeField::new(3).unwrap();
        // (x^2+1)(x^2+x+2) over F_3, both irreducible
        let m = mul(&f3, &[1, 0, 1], &[2, 1, 1]);
        let g = prime_factor(&f3, &m, &mut rng).unwrap();
        assert_eq!(g.len(), 3);
        assert!(rem(&f3, &m, &g).is_empty());
        let big = PrimeField::new(1_000_003).unwrap();
        let m = mul(&big, &[5, 1], &[17, 1]);
        let g = prime_factor(&big, &m, &mut rng).unwrap();
        assert_eq!(g.len(), 2);
        assert!(rem(&big, &m, &g).is_empty());
    }

    #[test]
    fn rational_roots() {
        let q = Rationals;
        let c = |n: i64| q.from_i64(n);
        // 2x^2 - 3x + 1 = (2x - 1)(x - 1)
        let g = rational_factor(&q, &[c(1), c(-3), c(2)]).unwrap();
        assert_eq!(g.len(), 2);
        // x^2 - 2 has no rational root
        assert!(rational_factor(&q, &[c(-2), c(0), c(1)]).is_none());
    }
}
