use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::arith::{addmod, divisors, mulmod, powmod, submod, Prime};
use crate::error::{invalid, Result};

/// Polynomial over the prime field `F_p`, coefficients reduced into `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModPoly {
    p: Prime,
    c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: Prime, c: Vec<u64>) -> ModPoly {
        let q = p.get();
        let mut c: Vec<u64> = c.into_iter().map(|a| a % q).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_i64(p: Prime, c: &[i64]) -> ModPoly {
        let q = p.get() as i128;
        ModPoly::new(p, c.iter().map(|&a| (a as i128).rem_euclid(q) as u64).collect())
    }

    pub fn zero(p: Prime) -> ModPoly {
        ModPoly { p, c: Vec::new() }
    }

    pub fn one(p: Prime) -> ModPoly {
        ModPoly::constant(p, 1)
    }

    pub fn constant(p: Prime, a: u64) -> ModPoly {
        ModPoly::new(p, vec![a])
    }

    pub fn x(p: Prime) -> ModPoly {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        powmod(a, self.p.get() - 2, self.p.get())
    }

    pub fn scale(&self, a: u64) -> ModPoly {
        let q = self.p.get();
        ModPoly::new(self.p, self.c.iter().map(|&x| mulmod(x, a, q)).collect())
    }

    pub fn monic(&self) -> ModPoly {
        match self.c.last() {
            None | Some(1) => self.clone(),
            Some(&l) => self.scale(self.inv_scalar(l)),
        }
    }

    pub fn derivative(&self) -> ModPoly {
        let q = self.p.get();
        ModPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % q, q))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let q = self.p.get();
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (ModPoly::zero(self.p), self.clone());
        }
        let inv = self.inv_scalar(d.leading());
        let mut r = self.c.clone();
        let mut quot = vec![0u64; r.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mulmod(r[i + dd], inv, q);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &dj) in d.c.iter().enumerate() {
                r[i + j] = submod(r[i + j], mulmod(c, dj, q), q);
            }
        }
        r.truncate(dd);
        (ModPoly::new(self.p, quot), ModPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics in debug builds if the remainder is nonzero.
    pub fn div_exact(&self, d: &ModPoly) -> ModPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub fn divides(&self, other: &ModPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.inv_scalar(r0.leading());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mul_mod(&self, other: &ModPoly, m: &ModPoly) -> ModPoly {
        (self * other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> ModPoly {
        let mut base = self.clone();
        let mut acc = ModPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^(p^k) mod m` by repeated Frobenius.
    pub fn frobenius_mod(&self, k: usize, m: &ModPoly) -> ModPoly {
        let p = BigUint::from(self.p.get());
        let mut acc = self.rem(m);
        for _ in 0..k {
            acc = acc.pow_mod(&p, m);
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let q = self.p.get();
        self.c.iter().rev().fold(0, |acc, &a| addmod(mulmod(acc, x, q), a, q))
    }

    /// Irreducibility over `F_p` (Rabin's test).
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = ModPoly::x(self.p);
        if f.coeff(0) == 0 {
            return false;
        }
        if &x.frobenius_mod(n, &f) - &x != ModPoly::zero(self.p) {
            return false;
        }
        for q in divisors(n as u64).into_iter().filter(|&d| d > 1 && is_small_prime(d)) {
            let h = &x.frobenius_mod(n / q as usize, &f) - &x;
            if !h.gcd(&f).is_one() {
                return false;
            }
        }
        true
    }

    /// Coefficientwise `p`-th root of a polynomial in `x^p`.
    fn pth_root(&self) -> ModPoly {
        let q = self.p.get() as usize;
        ModPoly::new(self.p, self.c.iter().step_by(q).copied().collect())
    }

    fn squarefree_decomposition(&self) -> Vec<(ModPoly, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return out;
        }
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_exact(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_constant() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            let p = self.p.get() as u32;
            for (g, j) in c.pth_root().squarefree_decomposition() {
                out.push((g, j * p));
            }
        }
        out
    }

    fn distinct_degree(&self) -> Vec<(usize, ModPoly)> {
        let mut f = self.clone();
        let x = ModPoly::x(self.p);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while f.degree().unwrap_or(0) >= 2 * d {
            h = h.pow_mod(&BigUint::from(self.p.get()), &f);
            let g = (&h - &x).gcd(&f);
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((d, g));
            }
            d += 1;
        }
        if let Some(deg) = f.degree().filter(|&k| k > 0) {
            out.push((deg, f));
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
        let n = self.degree().unwrap();
        if n == d {
            out.push(self.monic());
            return;
        }
        let q = self.p.get();
        let exp = (num_traits::pow(BigUint::from(q), d) - 1u32) >> 1;
        loop {
            let a = ModPoly::new(self.p, (0..n).map(|_| rng.gen_range(0..q)).collect());
            if a.is_constant() {
                continue;
            }
            let b = if q == 2 {
                // Trace map a + a^2 + ... + a^(2^(d-1)).
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul_mod(&t, self);
                    acc = &acc + &t;
                }
                acc
            } else {
                &a.pow_mod(&exp, self) - &ModPoly::one(self.p)
            };
            let g = b.gcd(self);
            if !g.is_constant() && g.degree() != self.degree() {
                g.equal_degree(d, rng, out);
                self.div_exact(&g).equal_degree(d, rng, out);
                return;
            }
        }
    }
}

fn is_small_prime(d: u64) -> bool {
    crate::arith::is_prime_u64(d)
}

fn factor_seed() -> u64 {
    static SEED: OnceLock<u64> = OnceLock::new();
    *SEED.get_or_init(|| {
        std::env::var("PURINDEX_SEED")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0x5eed_1dea)
    })
}

fn rng_for(g: &ModPoly) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(factor_seed().to_le_bytes());
    h.update(g.p.get().to_le_bytes());
    for c in &g.c {
        h.update(c.to_le_bytes());
    }
    let digest = h.finalize();
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(seed)
}

/// Canonical order on monic factors: degree first, then coefficients from the top down.
pub fn canonical_cmp(a: &ModPoly, b: &ModPoly) -> Ordering {
    a.c.len()
        .cmp(&b.c.len())
        .then_with(|| a.c.iter().rev().cmp(b.c.iter().rev()))
}

/// Factorization of a nonzero polynomial over `F_p` into monic irreducible
/// factors with multiplicities, in canonical order. The leading unit is dropped.
pub fn factor_mod_p(g: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    if g.is_zero() {
        return invalid("cannot factor the zero polynomial");
    }
    let mut rng = rng_for(g);
    let mut out = Vec::new();
    for (part, mult) in g.squarefree_decomposition() {
        for (d, block) in part.distinct_degree() {
            let mut found = Vec::new();
            block.equal_degree(d, &mut rng, &mut found);
            out.extend(found.into_iter().map(|f| (f, mult)));
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(out)
}

impl Add for &ModPoly {
    type Output = ModPoly;

    fn add(self, rhs: &ModPoly) -> ModPoly {
        let q = self.p.get();
        let n = self.c.len().max(rhs.c.len());
        ModPoly::new(
            self.p,
            (0..n).map(|i| addmod(self.coeff(i), rhs.coeff(i), q)).collect(),
        )
    }
}

impl Sub for &ModPoly {
    type Output = ModPoly;

    fn sub(self, rhs: &ModPoly) -> ModPoly {
        let q = self.p.get();
        let n = self.c.len().max(rhs.c.len());
        ModPoly::new(
            self.p,
            (0..n).map(|i| submod(self.coeff(i), rhs.coeff(i), q)).collect(),
        )
    }
}

impl Neg for &ModPoly {
    type Output = ModPoly;

    fn neg(self) -> ModPoly {
        &ModPoly::zero(self.p) - self
    }
}

impl Mul for &ModPoly {
    type Output = ModPoly;

    fn mul(self, rhs: &ModPoly) -> ModPoly {
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(self.p);
        }
        let q = self.p.get();
        let mut out = vec![0u128; self.c.len() + rhs.c.len() - 1];
        let qq = q as u128;
        // Products of residues below 2^32 can be summed in u128 without reduction.
        let small = q < 1 << 32;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                let t = a as u128 * b as u128;
                out[i + j] = if small { out[i + j] + t } else { (out[i + j] + t % qq) % qq };
            }
        }
        ModPoly::new(self.p, out.into_iter().map(|v| (v % qq) as u64).collect())
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_residue_poly(&self.c, "x", f)
    }
}

pub(crate) fn fmt_residue_poly(c: &[u64], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (i, a) {
            (0, _) => write!(f, "{a}")?,
            (1, 1) => write!(f, "{var}")?,
            (1, _) => write!(f, "{a}{var}")?,
            (_, 1) => write!(f, "{var}^{i}")?,
            _ => write!(f, "{a}{var}^{i}")?,
        }
    }
    Ok(())
}
