//! Exact integer arithmetic: p-adic valuations, primality, desk-scale
//! factorization, binomial valuations and irreducible-polynomial counts.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// A p-adic valuation: a natural number, or `Infinite` for the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// The finite value; panics on `Infinite`.
    pub fn unwrap(self) -> u64 {
        self.finite().expect("infinite valuation")
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl From<u64> for Valuation {
    fn from(v: u64) -> Self {
        Valuation::Finite(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A rational prime small enough for word-sized residue arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(BigInt::from(p)))
        }
    }

    pub fn from_big(p: &BigUint) -> Result<Prime> {
        match p.to_u64() {
            Some(v) => Prime::new(v),
            None if is_prime(p) => Err(Error::Refused(format!(
                "prime {p} exceeds the supported word-sized range"
            ))),
            None => Err(Error::NotPrime(BigInt::from(p.clone()))),
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `ν_p(a)`, `Infinite` for zero.
    pub fn val(self, a: &BigInt) -> Valuation {
        if a.is_zero() {
            return Valuation::Infinite;
        }
        let p = BigUint::from(self.0);
        let mut x = a.magnitude().clone();
        let mut v = 0;
        if self.0 == 2 {
            return Valuation::Finite(x.trailing_zeros().unwrap_or(0));
        }
        loop {
            let (q, r) = x.div_rem(&p);
            if !r.is_zero() {
                return Valuation::Finite(v);
            }
            x = q;
            v += 1;
        }
    }

    pub fn val_u64(self, mut a: u64) -> Valuation {
        if a == 0 {
            return Valuation::Infinite;
        }
        let mut v = 0;
        while a % self.0 == 0 {
            a /= self.0;
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// Reduction of `a` into `[0, p)`.
    pub fn reduce(self, a: &BigInt) -> u64 {
        a.mod_floor(&self.big()).to_u64().expect("residue fits a word")
    }

    /// `p^e` as a big integer.
    pub fn pow(self, e: u64) -> BigInt {
        num_traits::pow(BigInt::from(self.0), e as usize)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A factor `p^e` of an integer factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePower {
    pub p: BigUint,
    pub e: u32,
}

/// Primes `q ≥ start` in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&q| is_prime_u64(q))
}

/// `ν_p(a)` with a primality check on `p`.
pub fn p_adic_val(a: &BigInt, p: u64) -> Result<Valuation> {
    Ok(Prime::new(p)?.val(a))
}

pub(crate) fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, valid for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality: deterministic Miller-Rabin below 2^64, Baillie-PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if (n % q).is_zero() {
            return false;
        }
    }
    strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas_probable_prime(n)
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let sq = n.sqrt();
    if &sq * &sq == *n {
        return false;
    }
    let nb = BigInt::from(n.clone());
    // Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d: i64 = 5;
    loop {
        let j = jacobi(&BigInt::from(d), &nb);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(d.abs()) != nb {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let dd = BigInt::from(d);
    let q = BigInt::from((1 - d) / 4);
    let md = |x: BigInt| x.mod_floor(&nb);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &nb } else { x };
        md(x >> 1)
    };
    let np1: BigInt = &nb + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let bits = k.bits();
    let mut u = BigInt::one();
    let mut v = BigInt::one(); // P = 1
    let mut qk = md(q.clone());
    for i in (0..bits - 1).rev() {
        u = md(&u * &v);
        v = md(&v * &v - &qk * 2);
        qk = md(&qk * &qk);
        if k.bit(i) {
            let nu = half(&u + &v);
            let nv = half(&dd * &u + &v);
            u = nu;
            v = nv;
            qk = md(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = md(&v * &v - &qk * 2);
        if v.is_zero() {
            return true;
        }
        qk = md(&qk * &qk);
    }
    false
}

const FACTOR_LIMIT_BITS: u64 = 96;

/// Factorization of a nonzero integer with `|n| < 2^96`, primes increasing.
/// The sign is dropped; `±1` factors as the empty list.
fn pollard_brent_u64(n: u64) -> u64 {
    let r = n.sqrt();
    if r * r == n {
        return r;
    }
    for c in 1u64.. {
        let f = |x: u64| addmod(mulmod(x, x, n), c, n);
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut g = 1u64;
        let mut len = 1u64;
        let mut acc = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..len {
                y = f(y);
            }
            let mut k = 0;
            while k < len && g == 1 {
                ys = y;
                for _ in 0..(len - k).min(128) {
                    y = f(y);
                    acc = mulmod(acc, x.abs_diff(y), n);
                }
                g = acc.gcd(&n);
                k += 128;
            }
            len *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

pub fn factorize(n: &BigInt) -> Result<Vec<PrimePower>> {
    if n.is_zero() {
        return invalid("cannot factor zero");
    }
    if n.bits() > FACTOR_LIMIT_BITS {
        return invalid(format!("{n} exceeds the desk-scale factorization bound 2^96"));
    }
    let mut rest = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut q = 2u32;
    while q < 1 << 14 {
        let qb = BigUint::from(q);
        if &qb * &qb > rest {
            break;
        }
        while (&rest % q).is_zero() {
            rest /= q;
            primes.push(qb.clone());
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    primes.sort();
    let mut out: Vec<PrimePower> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some(last) if last.p == p => last.e += 1,
            _ => out.push(PrimePower { p, e: 1 }),
        }
    }
    Ok(out)
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    if let Some(m) = n.to_u64() {
        return BigUint::from(pollard_brent_u64(m));
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return r;
    }
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut g = one.clone();
        let mut len = 1u64;
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut acc = one.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..len {
                y = f(&y);
            }
            let mut k = 0;
            while k < len && g.is_one() {
                ys = y.clone();
                for _ in 0..(len - k).min(64) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    acc = (&acc * diff) % n;
                }
                g = acc.gcd(n);
                k += 64;
            }
            len *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!()
}

/// `ν_p(C(n, k))`, the number of carries when adding `k` and `n - k` in base `p`.
pub fn binom_val(p: u64, n: u64, k: u64) -> Result<Valuation> {
    let p = Prime::new(p)?;
    if k > n {
        return invalid(format!("binomial C({n}, {k}) with k > n"));
    }
    let (mut a, mut b) = (k, n - k);
    let mut carry = 0;
    let mut carries = 0;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p.get() + b % p.get() + carry;
        carry = u64::from(s >= p.get());
        carries += carry;
        a /= p.get();
        b /= p.get();
    }
    Ok(Valuation::Finite(carries))
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n.sqrt()).filter(|d| n % d == 0).collect();
    let upper: Vec<u64> = ds.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    ds.extend(upper);
    ds
}

/// Number of monic irreducible polynomials of degree `f` over the field with `p` elements.
pub fn count_monic_irreducibles(p: u64, f: u64) -> Result<BigUint> {
    let p = Prime::new(p)?;
    if f == 0 {
        return invalid("degree must be at least 1");
    }
    let mut acc = BigInt::zero();
    for d in divisors(f) {
        let term = BigInt::from(num_traits::pow(BigUint::from(p.get()), (f / d) as usize));
        match mobius(d) {
            1 => acc += term,
            -1 => acc -= term,
            _ => {}
        }
    }
    let (q, r) = acc.div_rem(&BigInt::from(f));
    debug_assert!(r.is_zero());
    Ok(q.to_biguint().expect("count is non-negative"))
}

/// `ν_p(x^p - x)` for a nonzero integer `x ∉ {±1}` when `p ∤ x`.
pub fn val_pow_p_minus_self(x: &BigInt, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let vx = p.val(x);
    if vx != Valuation::Finite(0) {
        // x^p - x = x (x^{p-1} - 1) and p ∤ x^{p-1} - 1.
        return vx;
    }
    val_pow_minus_one(x, p.get() - 1, p)
}

/// `ν_p(x^k - 1)` for `p ∤ x`, computed modulo growing powers of `p`.
pub fn val_pow_minus_one(x: &BigInt, k: u64, p: Prime) -> Valuation {
    if x.is_one() || (k % 2 == 0 && *x == -BigInt::one()) || k == 0 {
        return Valuation::Infinite;
    }
    let mut prec = 16u64;
    loop {
        let modulus = p.pow(prec);
        let r: BigInt = x.modpow(&BigInt::from(k), &modulus) - 1;
        let r = r.mod_floor(&modulus);
        if !r.is_zero() {
            return p.val(&r);
        }
        prec *= 2;
    }
}

/// Largest `k` with `x = b^k` for an integer `b`, together with that `b`.
/// Returns `(1, x)` when no proper power representation exists.
pub fn perfect_power(x: &BigInt) -> (u32, BigInt) {
    if x.abs() <= BigInt::one() {
        return (1, x.clone());
    }
    let bits = x.bits() as u32;
    for k in (2..=bits).rev() {
        if x.is_negative() && k % 2 == 0 {
            continue;
        }
        if let Some(b) = exact_root(x, k) {
            return (k, b);
        }
    }
    (1, x.clone())
}

/// The integer `b` with `b^k = x`, if one exists.
pub fn exact_root(x: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if x.is_negative() && k % 2 == 0 {
        return None;
    }
    let mag = x.magnitude().nth_root(k);
    if num_traits::pow(mag.clone(), k as usize) != *x.magnitude() {
        return None;
    }
    let b = BigInt::from_biguint(Sign::Plus, mag);
    Some(if x.is_negative() { -b } else { b })
}

/// Extended gcd on signed integers: `(g, s, t)` with `a s + b t = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_adic_val(&big(528), 2).unwrap(), Valuation::Finite(4));
        assert_eq!(p_adic_val(&big(2214), 3).unwrap(), Valuation::Finite(3));
        assert_eq!(p_adic_val(&big(0), 5).unwrap(), Valuation::Infinite);
        assert!(matches!(p_adic_val(&big(10), 4), Err(Error::NotPrime(_))));
    }

    #[test]
    fn infinity_absorbs() {
        let inf = Valuation::Infinite;
        assert_eq!(inf + Valuation::Finite(3), inf);
        assert_eq!(Valuation::Finite(3).min(inf), Valuation::Finite(3));
        assert!(Valuation::Finite(u64::MAX) < inf);
    }

    #[test]
    fn factorize_examples() {
        let f = |n: i64| -> Vec<(u64, u32)> {
            factorize(&big(n))
                .unwrap()
                .into_iter()
                .map(|pp| (pp.p.to_u64().unwrap(), pp.e))
                .collect()
        };
        assert_eq!(f(48), vec![(2, 4), (3, 1)]);
        assert_eq!(f(135), vec![(3, 3), (5, 1)]);
        assert_eq!(f(1), vec![]);
        assert_eq!(f(-2214), vec![(2, 1), (3, 3), (41, 1)]);
        assert!(factorize(&big(0)).is_err());
    }

    #[test]
    fn factorize_large_semiprime() {
        // (2^31 - 1) * (2^61 - 1) has 92 bits.
        let a = BigUint::from(2_147_483_647u64);
        let b = BigUint::from(2_305_843_009_213_693_951u64);
        let n = BigInt::from(&a * &b);
        let fs = factorize(&n).unwrap();
        assert_eq!(fs, vec![PrimePower { p: a, e: 1 }, PrimePower { p: b, e: 1 }]);
    }

    #[test]
    fn factorize_roundtrip_exhaustive_small() {
        for n in 1..=20_000i64 {
            let fs = factorize(&big(n)).unwrap();
            let mut prod = BigUint::one();
            let mut last = BigUint::zero();
            for pp in &fs {
                assert!(pp.p > last && is_prime(&pp.p));
                last = pp.p.clone();
                prod *= num_traits::pow(pp.p.clone(), pp.e as usize);
            }
            assert_eq!(prod, BigUint::from(n as u64));
        }
    }

    #[test]
    #[ignore = "exhaustive to 10^6; run with --ignored"]
    fn factorize_roundtrip_exhaustive_million() {
        for n in 1..=1_000_000i64 {
            let fs = factorize(&big(n)).unwrap();
            let prod: BigUint = fs
                .iter()
                .map(|pp| num_traits::pow(pp.p.clone(), pp.e as usize))
                .product();
            assert_eq!(prod, BigUint::from(n as u64));
        }
    }

    #[test]
    fn bpsw_agrees_with_known_primes() {
        // 2^89 - 1 and 2^107 - 1 are Mersenne primes; 2^97 - 1 is composite.
        let m = |e: u32| (BigUint::one() << e) - 1u32;
        assert!(is_prime(&m(89)));
        assert!(is_prime(&m(107)));
        assert!(!is_prime(&m(97)));
        // A composite beyond 64 bits with no factor below 40.
        let c = BigUint::from(6_700_417u64) * BigUint::from(2_147_483_647u64) * 41u32;
        assert!(!is_prime(&c));
    }

    #[test]
    fn binom_val_examples() {
        assert_eq!(binom_val(2, 4, 2).unwrap(), Valuation::Finite(1));
        assert_eq!(binom_val(3, 27, 9).unwrap(), Valuation::Finite(1));
        assert_eq!(binom_val(5, 25, 25).unwrap(), Valuation::Finite(0));
        assert!(binom_val(5, 3, 4).is_err());
    }

    fn binomial(n: u64, k: u64) -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    #[test]
    fn binom_val_matches_explicit_coefficients() {
        for p in [2u64, 3, 5, 7] {
            let pr = Prime::new(p).unwrap();
            for n in 0..=200u64 {
                for k in 0..=n {
                    assert_eq!(binom_val(p, n, k).unwrap(), pr.val(&binomial(n, k)), "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn binom_val_prime_power_rule() {
        // ν_p(C(p^r, j)) = r - ν_p(j)
        for (p, r) in [(2u64, 6u32), (3, 4), (5, 3)] {
            let pr = Prime::new(p).unwrap();
            let n = p.pow(r);
            for j in 1..=n {
                let expected = r as u64 - pr.val_u64(j).unwrap();
                assert_eq!(binom_val(p, n, j).unwrap(), Valuation::Finite(expected));
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_monic_irreducibles(3, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(count_monic_irreducibles(2, 1).unwrap(), BigUint::from(2u32));
        for p in [2u64, 3, 5, 7, 11] {
            assert_eq!(count_monic_irreducibles(p, 1).unwrap(), BigUint::from(p));
        }
    }

    #[test]
    fn irreducible_counts_sum_to_field_size() {
        for p in [2u64, 3, 5, 7] {
            for f in 1..=12u64 {
                let total: BigUint = divisors(f)
                    .into_iter()
                    .map(|d| count_monic_irreducibles(p, d).unwrap() * d)
                    .sum();
                assert_eq!(total, num_traits::pow(BigUint::from(p), f as usize));
            }
        }
    }

    #[test]
    fn pow_minus_self_valuations() {
        let two = Prime::new(2).unwrap();
        let five = Prime::new(5).unwrap();
        assert_eq!(val_pow_p_minus_self(&big(10), two), Valuation::Finite(1));
        assert_eq!(val_pow_p_minus_self(&big(10), five), Valuation::Finite(1));
        assert_eq!(val_pow_p_minus_self(&big(1000), five), Valuation::Finite(3));
        assert_eq!(val_pow_p_minus_self(&big(5), two), Valuation::Finite(2));
        assert_eq!(val_pow_p_minus_self(&big(-1), two), Valuation::Finite(1));
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(&big(1000)), (3, big(10)));
        assert_eq!(perfect_power(&big(-32)), (5, big(-2)));
        assert_eq!(perfect_power(&big(64)), (6, big(2)));
        assert_eq!(perfect_power(&big(12)), (1, big(12)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn valuation_axioms(a in -1_000_000_000i64..1_000_000_000, b in -1_000_000_000i64..1_000_000_000, pi in 0usize..5) {
            let p = Prime::new([2u64, 3, 5, 7, 11][pi]).unwrap();
            let (a, b) = (big(a), big(b));
            prop_assert_eq!(p.val(&(&a * &b)), p.val(&a) + p.val(&b));
            let (va, vb) = (p.val(&a), p.val(&b));
            let vs = p.val(&(&a + &b));
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }

        #[test]
        fn factorize_roundtrip_random(n in 1i128..(1i128 << 80)) {
            let fs = factorize(&BigInt::from(n)).unwrap();
            let prod: BigUint = fs.iter().map(|pp| num_traits::pow(pp.p.clone(), pp.e as usize)).product();
            prop_assert_eq!(BigInt::from(prod), BigInt::from(n));
        }
    }
}
