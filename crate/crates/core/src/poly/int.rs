use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Prime, Valuation};
use crate::error::{invalid, Error, Result};
use crate::poly::ModPoly;

/// Dense univariate polynomial over the integers, coefficient `i` is the
/// coefficient of `x^i`. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> IntPoly {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::new(coeffs)
    }

    /// `x^n - m`.
    pub fn pure(n: usize, m: &BigInt) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        coeffs[0] -= m;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact(&self, c: &BigInt) -> Result<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return invalid(format!("{self} is not divisible by {c}"));
            }
            out.push(q);
        }
        Ok(IntPoly::new(out))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
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

    /// `f(x + c)`.
    pub fn taylor_shift(&self, c: &BigInt) -> IntPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        IntPoly::new(a)
    }

    /// Euclidean division by a monic divisor.
    pub fn div_rem_monic(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !d.is_monic() {
            return invalid(format!("divisor {d} is not monic"));
        }
        let dd = d.degree().unwrap_or(0);
        if self.degree().map_or(true, |n| n < dd) {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let n = r.len() - 1;
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = std::mem::take(&mut r[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs[..dd].iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((IntPoly::new(q), IntPoly::new(r)))
    }

    pub fn reduce_mod_p(&self, p: Prime) -> ModPoly {
        ModPoly::new(p, self.coeffs.iter().map(|c| p.reduce(c)).collect())
    }

    /// Gauss valuation: the minimum coefficient valuation.
    pub fn gauss_valuation(&self, p: Prime) -> Valuation {
        self.coeffs
            .iter()
            .map(|c| p.val(c))
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `f(x^k)`.
    pub fn inflate(&self, k: usize) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        IntPoly::new(out)
    }
}

/// `ν_p` of a polynomial as the Gauss valuation.
pub fn gauss_valuation(g: &IntPoly, p: Prime) -> Valuation {
    g.gauss_valuation(p)
}

/// Coefficientwise reduction modulo `p`.
pub fn reduce_mod_p(f: &IntPoly, p: Prime) -> ModPoly {
    f.reduce_mod_p(p)
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => BigInt::zero(),
                })
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses `x^14 - 17`, `2*x^3 + x - 5`, `3x^2`, ... with integer
    /// coefficients in the variable `x`.
    fn from_str(s: &str) -> Result<IntPoly> {
        let err = |msg: &str| Error::Parse {
            input: s.to_string(),
            msg: msg.to_string(),
        };
        if s.contains('\u{2212}') {
            return Err(err("unicode minus sign is not accepted, use '-'"));
        }
        let mut prev: Option<char> = None;
        let mut gap = false;
        for ch in s.chars() {
            if ch.is_whitespace() {
                gap = true;
                continue;
            }
            if gap && ch.is_ascii_alphanumeric() && prev.is_some_and(|c| c.is_ascii_alphanumeric() || c == '^') {
                return Err(err("missing operator between terms"));
            }
            prev = Some(ch);
            gap = false;
        }
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut pos = 0;
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().unwrap())
        };
        while pos < chars.len() {
            let mut negative = false;
            if chars[pos] == '+' || chars[pos] == '-' {
                negative = chars[pos] == '-';
                pos += 1;
            } else if pos > 0 {
                return Err(err("expected '+' or '-' between terms"));
            }
            let coeff = read_int(&mut pos);
            let mut exp = 0usize;
            let mut has_x = false;
            if pos < chars.len() && chars[pos] == '*' {
                if coeff.is_none() {
                    return Err(err("'*' without a coefficient"));
                }
                pos += 1;
                if pos >= chars.len() || chars[pos] != 'x' {
                    return Err(err("expected 'x' after '*'"));
                }
            }
            if pos < chars.len() && chars[pos] == 'x' {
                has_x = true;
                pos += 1;
                exp = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    exp = read_int(&mut pos)
                        .ok_or_else(|| err("expected an exponent after '^'"))?
                        .try_into()
                        .map_err(|_| err("exponent too large"))?;
                }
            }
            if coeff.is_none() && !has_x {
                return Err(err(&format!("unexpected character at position {pos}")));
            }
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// A `φ`-adic expansion `f = Σ a_i φ^i`.
///
/// Canonical expansions come from repeated Euclidean division and satisfy
/// `deg a_i < deg φ`; expansions built with [`PhiExpansion::from_terms`]
/// may violate that bound and are only usable after an admissibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiExpansion {
    pub phi: IntPoly,
    pub terms: Vec<IntPoly>,
    pub canonical: bool,
}

impl PhiExpansion {
    pub fn from_terms(phi: IntPoly, terms: Vec<IntPoly>) -> Result<PhiExpansion> {
        if !phi.is_monic() || phi.degree() == Some(0) {
            return invalid(format!("expansion base {phi} must be monic of positive degree"));
        }
        Ok(PhiExpansion {
            phi,
            terms,
            canonical: false,
        })
    }

    /// `Σ a_i φ^i`, evaluated by Horner's rule.
    pub fn reconstruct(&self) -> IntPoly {
        self.terms
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, a| &(&acc * &self.phi) + a)
    }
}

/// Canonical `φ`-expansion by repeated Euclidean division.
pub fn phi_expansion(f: &IntPoly, phi: &IntPoly) -> Result<PhiExpansion> {
    if !phi.is_monic() {
        return invalid(format!("expansion base {phi} must be monic"));
    }
    let k = phi.degree().unwrap_or(0);
    if k == 0 {
        return invalid("expansion base must have positive degree");
    }
    let count = f.degree().unwrap_or(0) / k + 1;
    let mut terms = Vec::with_capacity(count);
    let mut rest = f.clone();
    for _ in 0..count {
        let (q, r) = rest.div_rem_monic(phi)?;
        terms.push(r);
        rest = q;
    }
    debug_assert!(rest.is_zero());
    Ok(PhiExpansion {
        phi: phi.clone(),
        terms,
        canonical: true,
    })
}
