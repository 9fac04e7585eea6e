//! Independent ground truth: p-maximal orders by the round-two method.
//!
//! Orders are lattices `(1/D)·L` with `Z[α] ⊆ O`, stored as a lower
//! triangular Hermite basis of the numerator lattice `L` over the power
//! basis of `α`. Each round computes the radical `I` of `pO` as the kernel of
//! a Frobenius power on `O/pO` and replaces `O` by the multiplier ring of `I`
//! until nothing is gained. None of this touches the polygon code.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::arith::{mobius, mulmod, powmod, submod, Prime};
use crate::error::{invalid, refuse, Result};
use crate::poly::IntPoly;

/// Largest degree the oracle accepts.
pub const MAX_DEGREE: usize = 256;

/// An order of `Q[x]/(f)` given by a lower triangular Hermite basis over a
/// common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBasis {
    f: IntPoly,
    rows: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl OrderBasis {
    /// The equation order `Z[α]`.
    pub fn equation_order(f: &IntPoly) -> OrderBasis {
        let n = f.degree().unwrap_or(0);
        let rows = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
        OrderBasis {
            f: f.clone(),
            rows,
            den: BigInt::one(),
        }
    }

    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.f
    }

    /// Row `i` is the numerator of the `i`-th basis element in the power basis.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// `ν_p((O : Z[α]))` from the diagonal: `D^n / Π B_ii`.
    pub fn index_valuation(&self, p: Prime) -> u64 {
        let n = self.degree() as u64;
        let dv = p.val(&self.den).unwrap();
        let pv: u64 = self.rows.iter().enumerate().map(|(i, r)| p.val(&r[i]).unwrap()).sum();
        n * dv - pv
    }

    /// Integer coordinates of the element with numerator `a`, or `None` when
    /// it is not in the order.
    pub fn coordinates(&self, a: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.degree();
        let mut a: Vec<BigInt> = (0..n).map(|i| a.get(i).cloned().unwrap_or_default()).collect();
        let mut c = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let (q, r) = a[i].div_rem(&self.rows[i][i]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (aj, bj) in a.iter_mut().zip(&self.rows[i]).take(i + 1) {
                    *aj -= &q * bj;
                }
            }
            c[i] = q;
        }
        Some(c)
    }

    fn coords_mod(&self, a: &[BigInt], p: Prime) -> Vec<u64> {
        self.coordinates(a)
            .expect("element lies in the order")
            .iter()
            .map(|c| p.reduce(c))
            .collect()
    }

    /// Numerator of the product of two elements given by numerators.
    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let prod = mul_mod_f(a, b, &self.f);
        prod.into_iter()
            .map(|c| {
                let (q, r) = c.div_rem(&self.den);
                debug_assert!(r.is_zero(), "product left the order");
                q
            })
            .collect()
    }

    /// True iff every `α^j` lies in the order.
    pub fn contains_power_basis(&self) -> bool {
        let n = self.degree();
        (0..n).all(|j| {
            let mut a = vec![BigInt::zero(); n];
            a[j] = self.den.clone();
            self.coordinates(&a).is_some()
        })
    }

    /// True iff all products of basis elements lie in the order.
    pub fn is_closed_under_multiplication(&self) -> bool {
        let n = self.degree();
        for i in 0..n {
            for j in i..n {
                let prod = mul_mod_f(&self.rows[i], &self.rows[j], &self.f);
                let mut ok = true;
                let num: Vec<BigInt> = prod
                    .into_iter()
                    .map(|c| {
                        let (q, r) = c.div_rem(&self.den);
                        ok &= r.is_zero();
                        q
                    })
                    .collect();
                if !ok || self.coordinates(&num).is_none() {
                    return false;
                }
            }
        }
        true
    }

    fn reduce_mod(&self, a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        a.iter().map(|c| c.mod_floor(m)).collect()
    }
}

fn mul_mod_f(a: &[BigInt], b: &[BigInt], f: &IntPoly) -> Vec<BigInt> {
    let n = f.degree().unwrap();
    let mut out = vec![BigInt::zero(); (a.len() + b.len()).max(1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    let low: Vec<(usize, &BigInt)> = f.coeffs()[..n]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    for k in (n..out.len()).rev() {
        if out[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut out[k]);
        for &(j, fj) in &low {
            out[k - n + j] -= &c * fj;
        }
    }
    out.truncate(n);
    out.resize(n, BigInt::zero());
    out
}

/// Lower triangular Hermite basis of the lattice spanned by `gens` together
/// with `m·Z^n`.
fn hnf_mod(mut gens: Vec<Vec<BigInt>>, n: usize, m: &BigInt) -> Vec<Vec<BigInt>> {
    for g in gens.iter_mut() {
        for x in g.iter_mut() {
            *x = x.mod_floor(m);
        }
    }
    let mut basis = vec![Vec::new(); n];
    for j in (0..n).rev() {
        let mut piv = vec![BigInt::zero(); n];
        piv[j] = m.clone();
        for g in gens.iter_mut() {
            if g[j].is_zero() {
                continue;
            }
            let eg = piv[j].extended_gcd(&g[j]);
            let (a, b) = (&piv[j] / &eg.gcd, &g[j] / &eg.gcd);
            let mut new_piv = vec![BigInt::zero(); n];
            let mut new_g = vec![BigInt::zero(); n];
            for k in 0..=j {
                new_piv[k] = &eg.x * &piv[k] + &eg.y * &g[k];
                new_g[k] = &a * &g[k] - &b * &piv[k];
            }
            for k in 0..j {
                new_piv[k] = new_piv[k].mod_floor(m);
                new_g[k] = new_g[k].mod_floor(m);
            }
            debug_assert!(new_g[j].is_zero());
            if new_piv[j].is_negative() {
                new_piv.iter_mut().for_each(|x| *x = -&*x);
            }
            piv = new_piv;
            *g = new_g;
        }
        basis[j] = piv;
    }
    for i in 0..n {
        for k in (0..i).rev() {
            let q = basis[i][k].div_floor(&basis[k][k]);
            if !q.is_zero() {
                let row_k = basis[k].clone();
                for (x, y) in basis[i].iter_mut().zip(&row_k).take(k + 1) {
                    *x -= &q * y;
                }
            }
        }
    }
    basis
}

// ---- linear algebra over F_p ----

type Mat = Vec<Vec<u64>>;

fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![0u64; cols];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    *o = ((*o as u128 + x as u128 * y as u128) % p as u128) as u64;
                }
            }
            out
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn echelon(m: &mut Mat, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(s) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, s);
        let inv = powmod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let t = m[i][c];
                let pivot_row = m[r].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = submod(*x, mulmod(t, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank(m: &Mat, p: u64) -> usize {
    let mut m = m.clone();
    echelon(&mut m, p).len()
}

/// Basis of `{x : x·A = 0}`.
fn left_kernel(a: &Mat, p: u64) -> Mat {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..rows).map(|j| (i == j) as u64));
            v
        })
        .collect();
    let pivots = echelon(&mut aug, p);
    let used = pivots.iter().filter(|&&c| c < cols).count();
    aug[used..].iter().map(|r| r[cols..].to_vec()).collect()
}

fn rng_for(f: &IntPoly, p: Prime) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(format!("{f}|{p}").as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

/// Data of one round: Frobenius matrix of `O/pO` and a basis of `I/pO`.
struct RadicalData {
    frobenius: Mat,
    radical: Mat,
}

fn radical(order: &OrderBasis, p: Prime) -> RadicalData {
    let n = order.degree();
    let q = p.get();
    let modulus = &order.den * p.big();
    let pb = num_bigint::BigUint::from(q);
    let frobenius: Mat = order
        .rows
        .iter()
        .map(|w| {
            // w^p modulo pO by square and multiply on reduced numerators.
            let mut acc: Option<Vec<BigInt>> = None;
            let base = order.reduce_mod(w, &modulus);
            for i in (0..pb.bits()).rev() {
                if let Some(a) = acc.as_ref() {
                    acc = Some(order.reduce_mod(&order.mul(a, a), &modulus));
                }
                if pb.bit(i) {
                    acc = Some(match acc {
                        None => base.clone(),
                        Some(a) => order.reduce_mod(&order.mul(&a, &base), &modulus),
                    });
                }
            }
            order.coords_mod(&acc.unwrap(), p)
        })
        .collect();
    let mut k = 0u32;
    let mut pk = 1u128;
    while pk < n as u128 {
        pk *= q as u128;
        k += 1;
    }
    let mut power: Mat = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
    for _ in 0..k.max(1) {
        power = mat_mul(&power, &frobenius, q);
    }
    RadicalData {
        frobenius,
        radical: left_kernel(&power, q),
    }
}

fn combine(order: &OrderBasis, c: &[u64]) -> Vec<BigInt> {
    let n = order.degree();
    let mut out = vec![BigInt::zero(); n];
    for (ci, row) in c.iter().zip(&order.rows) {
        if *ci != 0 {
            for (o, r) in out.iter_mut().zip(row) {
                *o += r * BigInt::from(*ci);
            }
        }
    }
    out
}

/// One round: the multiplier ring of the radical, or `None` when `O` is p-maximal.
fn enlarge(order: &OrderBasis, p: Prime, rng: &mut ChaCha8Rng) -> Option<OrderBasis> {
    let n = order.degree();
    let q = p.get();
    let rad = radical(order, p);
    if rad.radical.is_empty() {
        return None;
    }
    let kdim = rad.radical.len();
    let pd = &order.den * p.big();
    // Numerators of I over D.
    let lifts: Vec<Vec<BigInt>> = rad.radical.iter().map(|c| combine(order, c)).collect();
    let mut gens: Vec<Vec<BigInt>> = order
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x * p.big()).collect())
        .collect();
    gens.extend(lifts.iter().cloned());
    let ideal = OrderBasis {
        f: order.f.clone(),
        rows: hnf_mod(gens, n, &pd),
        den: order.den.clone(),
    };

    // O-module generators of I modulo pO.
    let mut module_gens: Vec<Vec<BigInt>> = Vec::new();
    let mut span: Mat = Vec::new();
    for attempt in 0..6 {
        if attempt == 5 {
            module_gens = lifts.clone();
            break;
        }
        let c: Vec<u64> = (0..kdim).map(|_| rng.gen_range(0..q)).collect();
        let g = order.reduce_mod(&combine(order, &mat_mul(&vec![c], &rad.radical, q)[0]), &pd);
        for w in &order.rows {
            span.push(order.coords_mod(&order.mul(w, &g), p));
        }
        module_gens.push(g);
        if rank(&span, q) == kdim {
            break;
        }
    }

    // U/pI = {y ∈ I : y·g ∈ pI for all generators g}.
    let action: Mat = ideal
        .rows
        .iter()
        .map(|y| {
            module_gens
                .iter()
                .flat_map(|g| ideal.coords_mod(&order.mul(y, g), p))
                .collect()
        })
        .collect();
    let ker = left_kernel(&action, q);
    let mut ugens: Vec<Vec<BigInt>> = ideal
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x * p.big()).collect())
        .collect();
    ugens.extend(ker.iter().map(|c| combine(&ideal, c)));
    let mut next = OrderBasis {
        f: order.f.clone(),
        rows: hnf_mod(ugens, n, &pd),
        den: pd.clone(),
    };
    normalize(&mut next, p);
    (next.index_valuation(p) > order.index_valuation(p)).then_some(next)
}

fn normalize(order: &mut OrderBasis, p: Prime) {
    let pb = p.big();
    while order.den.is_multiple_of(&pb)
        && order.rows.iter().flatten().all(|x| x.is_multiple_of(&pb))
    {
        order.den /= &pb;
        for x in order.rows.iter_mut().flatten() {
            *x /= &pb;
        }
    }
}

fn squarefree_over_q(f: &IntPoly) -> bool {
    // f is squarefree over Q as soon as it is squarefree modulo one prime.
    crate::arith::primes_from(1_000_003)
        .take(40)
        .any(|q| {
            let q = Prime::new(q).unwrap();
            let g = f.reduce_mod_p(q);
            g.gcd(&g.derivative()).is_one()
        })
}

fn check_input(f: &IntPoly) -> Result<()> {
    if !f.is_monic() {
        return invalid(format!("{f} is not monic"));
    }
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return invalid("polynomial must have positive degree");
    }
    if n > MAX_DEGREE {
        return refuse(format!("degree {n} exceeds the oracle limit {MAX_DEGREE}"));
    }
    if !squarefree_over_q(f) {
        return invalid(format!("{f} is not squarefree"));
    }
    Ok(())
}

/// Round-two iteration starting from `order`.
pub fn p_maximize(order: &OrderBasis, p: Prime) -> OrderBasis {
    let mut rng = rng_for(&order.f, p);
    let mut current = order.clone();
    while let Some(next) = enlarge(&current, p, &mut rng) {
        current = next;
    }
    current
}

/// A p-maximal order containing `Z[α]` and `ν_p((O : Z[α]))`, which equals
/// `ν_p((Z_K : Z[α]))`.
pub fn p_maximal_order(f: &IntPoly, p: Prime) -> Result<(OrderBasis, u64)> {
    check_input(f)?;
    let order = p_maximize(&OrderBasis::equation_order(f), p);
    let v = order.index_valuation(p);
    Ok((order, v))
}

/// `ν_p((Z_K : Z[α]))`.
pub fn index_valuation(f: &IntPoly, p: Prime) -> Result<u64> {
    Ok(p_maximal_order(f, p)?.1)
}

/// Number of primes above `p` for each residue degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCensus {
    pub p: Prime,
    pub counts: BTreeMap<u64, u64>,
}

impl ResidueCensus {
    pub fn count(&self, f: u64) -> u64 {
        self.counts.get(&f).copied().unwrap_or(0)
    }

    /// `Σ f·P_f`, the dimension of `O/J` over `F_p`.
    pub fn dimension(&self) -> u64 {
        self.counts.iter().map(|(f, c)| f * c).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Residue-degree census of a p-maximal order from the Frobenius action on
/// the semisimple quotient `O/J`.
pub fn residue_census(order: &OrderBasis, p: Prime) -> Result<ResidueCensus> {
    let q = p.get();
    let mut rng = rng_for(&order.f, p);
    if enlarge(order, p, &mut rng).is_some() {
        return refuse("order is not p-maximal");
    }
    let n = order.degree();
    let rad = radical(order, p);
    let mut j = rad.radical.clone();
    let pivots = if j.is_empty() { Vec::new() } else { echelon(&mut j, q) };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let reduce = |mut v: Vec<u64>| -> Vec<u64> {
        for (row, &c) in j.iter().zip(&pivots) {
            let t = v[c];
            if t != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = submod(*x, mulmod(t, y, q), q);
                }
            }
        }
        free.iter().map(|&c| v[c]).collect()
    };
    let k = free.len();
    let sigma: Mat = free.iter().map(|&c| reduce(rad.frobenius[c].clone())).collect();
    // g(f) = dim ker(σ^f - 1) = Σ_i gcd(f, f_i).
    let mut g = vec![0u64; k + 1];
    let mut power = sigma.clone();
    for (f, gf) in g.iter_mut().enumerate().skip(1) {
        if f > 1 {
            power = mat_mul(&power, &sigma, q);
        }
        let mut shifted = power.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = submod(row[i], 1, q);
        }
        *gf = (k - rank(&shifted, q)) as u64;
    }
    // g(f) = Σ_{e|f} φ(e)·Q(e) with Q(e) = Σ_{e|d} P_d.
    let mut qe = vec![0i128; k + 1];
    for f in 1..=k {
        let s: i128 = (1..=f)
            .filter(|e| f % e == 0)
            .map(|e| mobius((f / e) as u64) as i128 * g[e] as i128)
            .sum();
        qe[f] = s / totient(f as u64) as i128;
    }
    let mut counts = BTreeMap::new();
    for d in 1..=k {
        let c: i128 = (1..=k / d).map(|t| mobius(t as u64) as i128 * qe[d * t]).sum();
        if c > 0 {
            counts.insert(d as u64, c as u64);
        }
    }
    Ok(ResidueCensus { p, counts })
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `ν_p(disc f)` via the norm of `f'(α)`, a fraction-free determinant.
pub fn disc_valuation(f: &IntPoly, p: Prime) -> Result<u64> {
    if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
        return invalid(format!("{f} must be monic of positive degree"));
    }
    let n = f.degree().unwrap();
    let df: Vec<BigInt> = f.derivative().coeffs().to_vec();
    let x = [BigInt::zero(), BigInt::one()];
    let mut row: Vec<BigInt> = (0..n).map(|i| df.get(i).cloned().unwrap_or_default()).collect();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for _ in 0..n {
        let next = mul_mod_f(&row, &x, f);
        m.push(std::mem::replace(&mut row, next));
    }
    let det = bareiss(m);
    if det.is_zero() {
        return invalid(format!("{f} is not squarefree"));
    }
    Ok(p.val(&det).unwrap())
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
