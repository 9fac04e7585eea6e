//! Pure polynomials `x^n - m`: irreducibility, integral closedness of `Z[α]`,
//! index formulas, polygon shapes at primes dividing `n`, common index
//! divisors and the monogeneity pipeline.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    count_monic_irreducibles, exact_root, ext_gcd, factorize, perfect_power, val_pow_p_minus_self, Prime,
    Valuation,
};
use crate::error::{invalid, refuse, Error, Result};
use crate::newton::{lower_hull, polygon_index_of_vertices, principal_polygon, regularity_data, NewtonPolygon};
use crate::oracle::{self, MAX_DEGREE};
use crate::ore::{dedekind_test, ore_index, shape_from_regularity};
use crate::poly::{factor_mod_p, lift, IntPoly};
use crate::second_order::{census_of, n2_polygon, order2_data};

/// Largest supported degree `n`.
pub const MAX_PURE_DEGREE: u64 = 100_000;

/// `x^n - m` with `n ≥ 2`, `m ∉ {0, 1}`, irreducible over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureField {
    n: u64,
    m: BigInt,
    f: IntPoly,
}

/// A proper factor of `x^n - m`, or `None` when it is irreducible (Capelli).
pub fn reducible_witness(n: u64, m: &BigInt) -> Option<IntPoly> {
    let nu = n as usize;
    let mut q = 2u64;
    let mut rest = n;
    while rest > 1 {
        if rest % q == 0 {
            while rest % q == 0 {
                rest /= q;
            }
            if let Some(b) = exact_root(m, q as u32) {
                return Some(IntPoly::pure(nu / q as usize, &b));
            }
        }
        q += 1;
    }
    if n % 4 == 0 && m.is_negative() {
        let (k4, r) = (-m).div_rem(&BigInt::from(4));
        if r.is_zero() {
            if let Some(k) = exact_root(&k4, 4) {
                // x^4 + 4k^4 = (x^2 - 2kx + 2k^2)(x^2 + 2kx + 2k^2), inflated by n/4
                let base = IntPoly::new(vec![BigInt::from(2) * &k * &k, BigInt::from(-2) * &k, BigInt::one()]);
                return Some(base.inflate(nu / 4));
            }
        }
    }
    None
}

pub fn is_irreducible_pure(n: u64, m: &BigInt) -> bool {
    reducible_witness(n, m).is_none()
}

impl PureField {
    pub fn new(n: u64, m: BigInt) -> Result<PureField> {
        if n < 2 {
            return invalid(format!("degree n = {n} must be at least 2"));
        }
        if n > MAX_PURE_DEGREE {
            return invalid(format!("degree n = {n} exceeds {MAX_PURE_DEGREE}"));
        }
        if m.is_zero() || m.is_one() {
            return invalid(format!("m = {m} must not be 0 or 1"));
        }
        let f = IntPoly::pure(n as usize, &m);
        if let Some(w) = reducible_witness(n, &m) {
            return Err(Error::Reducible {
                poly: f.to_string(),
                witness: w.to_string(),
            });
        }
        Ok(PureField { n, m, f })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.f
    }

    /// Prime factors of `m` as `(p, ν_p(m))`.
    pub fn m_factors(&self) -> Result<Vec<(Prime, u64)>> {
        factorize(&self.m)?
            .into_iter()
            .map(|pp| Ok((Prime::from_big(&pp.p)?, pp.e as u64)))
            .collect()
    }

    /// Primes dividing `n·m`, increasing.
    pub fn primes_of_nm(&self) -> Result<Vec<Prime>> {
        let mut ps: Vec<Prime> = self.m_factors()?.into_iter().map(|(p, _)| p).collect();
        for pp in factorize(&BigInt::from(self.n))? {
            let p = Prime::from_big(&pp.p)?;
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
        ps.sort();
        Ok(ps)
    }

    pub fn primes_of_n(&self) -> Vec<Prime> {
        factorize(&BigInt::from(self.n))
            .expect("n is nonzero")
            .into_iter()
            .map(|pp| Prime::from_big(&pp.p).expect("prime factor of a u64"))
            .collect()
    }

    pub fn profile(&self, p: Prime) -> PrimeProfile {
        let r = p.val_u64(self.n).unwrap();
        let s = p.val(&self.m).unwrap();
        let u = &self.m / p.pow(s);
        PrimeProfile {
            p,
            r,
            t: self.n / p.get().pow(r as u32),
            s,
            m_p: u.clone(),
            u,
            v_closed: val_pow_p_minus_self(&self.m, p),
        }
    }

    /// `ν_p(m) < n` for every prime `p`.
    pub fn valuations_below_degree(&self) -> Result<bool> {
        Ok(self.m_factors()?.iter().all(|&(_, e)| e < self.n))
    }

    /// `(x^n - m', c)` with `m = c^n·m'` and `ν_p(m') < n` for every `p`.
    pub fn normalized(&self) -> Result<(PureField, BigInt)> {
        let mut c = BigInt::one();
        let mut m = self.m.clone();
        for (p, e) in self.m_factors()? {
            let k = e / self.n;
            if k > 0 {
                c *= p.pow(k);
                m /= p.pow(k * self.n);
            }
        }
        Ok((PureField::new(self.n, m)?, c))
    }
}

/// Local data of `n` and `m` at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeProfile {
    pub p: Prime,
    /// `n = p^r·t` with `p ∤ t`.
    pub r: u64,
    pub t: u64,
    /// `m = p^s·u` with `p ∤ u`.
    pub s: u64,
    pub u: BigInt,
    pub m_p: BigInt,
    /// `ν_p(m^p - m)`.
    pub v_closed: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosednessReport {
    pub closed: bool,
    /// `(p, ν_p(m^p - m))` for every `p | n·m`.
    pub primes: Vec<(Prime, Valuation)>,
    pub failing: Vec<Prime>,
}

/// `Z[α]` is integrally closed iff `ν_p(m^p - m) = 1` for every `p | n·m`.
pub fn integral_closedness_test(field: &PureField) -> Result<ClosednessReport> {
    let primes: Vec<(Prime, Valuation)> = field
        .primes_of_nm()?
        .into_iter()
        .map(|p| (p, val_pow_p_minus_self(field.m(), p)))
        .collect();
    let failing: Vec<Prime> = primes
        .iter()
        .filter(|(_, v)| *v != Valuation::Finite(1))
        .map(|(p, _)| *p)
        .collect();
    Ok(ClosednessReport {
        closed: failing.is_empty(),
        primes,
        failing,
    })
}

/// `((n-1)(s-1) + d - 1)/2` with `s = ν_p(m)` and `d = gcd(n, s)`.
pub fn single_side_bound(n: u64, s: u64) -> u64 {
    let d = n.gcd(&s);
    ((n - 1) * (s - 1) + d - 1) / 2
}

/// `ν_p(ind f)` for `p | m` with `gcd(n, p, ν_p(m)) = 1`.
pub fn index_val_p_divides_m(field: &PureField, p: Prime) -> Result<u64> {
    let prof = field.profile(p);
    if prof.s == 0 {
        return invalid(format!("{p} does not divide m = {}", field.m()));
    }
    if prof.s >= field.n() {
        return refuse(format!("v_{p}(m) = {} is not below n = {}", prof.s, field.n()));
    }
    if prof.r > 0 && prof.s % p.get() == 0 {
        return refuse(format!(
            "gcd(n, {p}, v_{p}(m)) = {p}; the index exceeds the single-side bound (see strict_inequality_case)"
        ));
    }
    let value = single_side_bound(field.n(), prof.s);
    debug_assert!({
        let b = ore_index(field.polynomial(), p).unwrap();
        b.exact && b.lower_bound == value
    });
    Ok(value)
}

/// Which shape applies at `(0, V)` for the polygon at a prime dividing `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NpCase {
    /// `ν_p(m^p - m) ≤ r` or `φ | x^t - m`: the first vertex is `(0, ν_p(m^p - m))`.
    Exact,
    /// `ν_p(m^p - m) ≥ r + 1`: the first vertex is `(0, V)` with `V ≥ r + 1`.
    High,
}

#[derive(Clone, Debug)]
pub struct PurePolygon {
    pub phi: IntPoly,
    pub case: NpCase,
    /// Direct polygon from the `φ`-expansion of `f`.
    pub polygon: NewtonPolygon,
    pub predicted_vertices: Vec<(u64, u64)>,
    /// `deg φ · Σ_{j=1}^{min(r, v-1)} p^{r-j}`.
    pub predicted_index: u64,
    pub direct_index: u64,
    pub matches: bool,
}

/// `Σ_{j=1}^{min(r, v-1)} p^{r-j}`.
pub fn np_column_sum(p: u64, r: u64, v: Valuation) -> u64 {
    let top = match v {
        Valuation::Finite(v) => r.min(v.saturating_sub(1)),
        Valuation::Infinite => r,
    };
    (1..=top).map(|j| p.pow((r - j) as u32)).sum()
}

/// Polygon of `x^n - m` with respect to `φ` at `p | n`, `p ∤ m`, with its predicted shape.
pub fn pure_polygon_p_divides_n(field: &PureField, p: Prime, phi: &IntPoly) -> Result<PurePolygon> {
    let prof = field.profile(p);
    if prof.r == 0 || prof.s > 0 {
        return refuse(format!("need {p} | n and {p} ∤ m"));
    }
    let g = IntPoly::pure(prof.t as usize, field.m());
    let (_, rem) = g.div_rem_monic(phi)?;
    let phibar = phi.reduce_mod_p(p);
    if phibar.degree().unwrap_or(0) == 0 || !phibar.divides(&g.reduce_mod_p(p)) || !phibar.is_irreducible() {
        return invalid(format!("{phi} is not a lift of an irreducible factor of x^{} - m mod {p}", prof.t));
    }
    debug_assert!(rem.gauss_valuation(p) >= Valuation::Finite(1));
    let polygon = principal_polygon(field.polynomial(), phi, p)?;
    let v = prof.v_closed;
    let case = if rem.is_zero() || v <= Valuation::Finite(prof.r) {
        NpCase::Exact
    } else {
        NpCase::High
    };
    let head = match case {
        NpCase::Exact => v.unwrap(),
        NpCase::High => polygon.vertices[0].1.max(prof.r + 1),
    };
    let mut pts = vec![(0, head)];
    pts.extend((0..=prof.r).map(|j| (p.get().pow(j as u32), prof.r - j)));
    let predicted_vertices = lower_hull(&pts);
    let deg = phi.degree().unwrap() as u64;
    let predicted_index = deg * np_column_sum(p.get(), prof.r, v);
    debug_assert_eq!(deg * polygon_index_of_vertices(&predicted_vertices), predicted_index);
    let direct_index = polygon.index() * deg;
    Ok(PurePolygon {
        phi: phi.clone(),
        case,
        matches: predicted_vertices == polygon.vertices && predicted_index == direct_index,
        predicted_vertices,
        predicted_index,
        direct_index,
        polygon,
    })
}

/// Prop NP prediction for `ν_p(ind f)`: `t · Σ_{j=1}^{min(r, v-1)} p^{r-j}`.
pub fn np_index_prediction(field: &PureField, p: Prime) -> Result<u64> {
    let prof = field.profile(p);
    if prof.r == 0 || prof.s > 0 {
        return refuse(format!("need {p} | n and {p} ∤ m"));
    }
    Ok(prof.t * np_column_sum(p.get(), prof.r, prof.v_closed))
}

/// How strictness of the single-side bound was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrictSource {
    SecondOrder,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictCase {
    pub lower: u64,
    pub strict: bool,
    pub ind2: Option<u64>,
    pub oracle_index: Option<u64>,
    pub source: StrictSource,
}

/// The case `gcd(p, ν_p(m), n) = p`, where `ν_p(ind f)` exceeds the single-side bound.
pub fn strict_inequality_case(field: &PureField, p: Prime) -> Result<StrictCase> {
    let prof = field.profile(p);
    if prof.s == 0 || prof.r == 0 || prof.s % p.get() != 0 {
        return invalid(format!("need gcd({p}, v_{p}(m), n) = {p}"));
    }
    if prof.s >= field.n() {
        return refuse(format!("v_{p}(m) = {} is not below n = {}", prof.s, field.n()));
    }
    let lower = single_side_bound(field.n(), prof.s);
    let f = field.polynomial();
    if let Ok(data) = order2_data(f, p) {
        let ind2 = n2_polygon(f, &data)?.index();
        if ind2 >= 1 {
            return Ok(StrictCase {
                lower,
                strict: true,
                ind2: Some(ind2),
                oracle_index: None,
                source: StrictSource::SecondOrder,
            });
        }
    }
    let v = oracle::index_valuation(f, p)?;
    Ok(StrictCase {
        lower,
        strict: v > lower,
        ind2: None,
        oracle_index: Some(v),
        source: StrictSource::Oracle,
    })
}

/// Where a census of the primes above `p` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusSource {
    FirstOrder,
    SecondOrder,
    Oracle,
}

/// Primes above `p`, complete by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCensus {
    pub p: Prime,
    pub source: CensusSource,
    /// `(e, f)` pairs; empty for oracle censuses, which do not see `e`.
    pub entries: Vec<(u64, u64)>,
    /// Residue degree to number of primes.
    pub counts: BTreeMap<u64, u64>,
}

/// Census of the primes above `p` from polygons, falling back to the oracle
/// when some residual polynomial stays inseparable.
pub fn prime_census(field: &PureField, p: Prime) -> Result<PrimeCensus> {
    let f = field.polynomial();
    let mut entries = Vec::new();
    let mut source = CensusSource::FirstOrder;
    let mut complete = true;
    for data in regularity_data(f, p)? {
        if data.is_regular() {
            entries.extend(shape_from_regularity(p, std::slice::from_ref(&data))?.primes);
            continue;
        }
        let second = (data.phi == IntPoly::x())
            .then(|| order2_data(f, p).ok())
            .flatten()
            .and_then(|d| n2_polygon(f, &d).ok())
            .and_then(|np| census_of(&np).ok())
            .filter(|c| c.is_complete());
        match second {
            Some(c) => {
                source = CensusSource::SecondOrder;
                entries.extend(c.entries.iter().map(|e| (e.e, e.f_res)));
            }
            None => {
                complete = false;
                break;
            }
        }
    }
    if complete {
        let total: u64 = entries.iter().map(|(e, f)| e * f).sum();
        if total != field.n() {
            return invalid(format!("census accounts for degree {total}, expected {}", field.n()));
        }
        let mut counts = BTreeMap::new();
        for &(_, fr) in &entries {
            *counts.entry(fr).or_insert(0) += 1;
        }
        return Ok(PrimeCensus { p, source, entries, counts });
    }
    if field.n() as usize > MAX_DEGREE {
        return refuse(format!("polygon census incomplete at {p} and degree exceeds {MAX_DEGREE}"));
    }
    let (order, _) = oracle::p_maximal_order(f, p)?;
    let census = oracle::residue_census(&order, p)?;
    Ok(PrimeCensus {
        p,
        source: CensusSource::Oracle,
        entries: Vec::new(),
        counts: census.counts,
    })
}

/// `P_f > N_f`: `p` divides the index of every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonIndexEvidence {
    pub p: Prime,
    pub f_res: u64,
    pub p_f: u64,
    pub n_f: BigUint,
}

/// First residue degree with `P_f > N_f` in a census given by counts.
pub fn common_index_divisor_counts(p: Prime, counts: &BTreeMap<u64, u64>) -> Result<Option<CommonIndexEvidence>> {
    for (&f_res, &p_f) in counts {
        let n_f = count_monic_irreducibles(p.get(), f_res)?;
        if BigUint::from(p_f) > n_f {
            return Ok(Some(CommonIndexEvidence { p, f_res, p_f, n_f }));
        }
    }
    Ok(None)
}

/// First residue degree with `P_f > N_f` in a complete `(e, f)` census of degree `n`.
pub fn common_index_divisor(p: Prime, census: &[(u64, u64)], n: u64) -> Result<Option<CommonIndexEvidence>> {
    let total: u64 = census.iter().map(|(e, f)| e * f).sum();
    if total != n {
        return invalid(format!("census accounts for degree {total}, expected {n}"));
    }
    let mut counts = BTreeMap::new();
    for &(_, f) in census {
        *counts.entry(f).or_insert(0u64) += 1;
    }
    common_index_divisor_counts(p, &counts)
}

fn at_least(v: Valuation, k: u64) -> bool {
    v >= Valuation::Finite(k)
}

/// Non-monogeneity conditions (1)-(8) whose arithmetic hypotheses hold at `p`.
pub fn fired_conditions(prof: &PrimeProfile) -> Vec<u8> {
    let p = prof.p;
    let pv = p.get();
    let odd = pv != 2;
    let one = BigInt::one();
    let m = &prof.u * p.pow(prof.s);
    let val = |x: BigInt| p.val(&x);
    let mut out = Vec::new();
    if prof.r == 0 {
        return out;
    }
    if prof.s == 0 {
        if odd && at_least(val(&one - &m), pv + 1) && prof.r >= pv {
            out.push(1);
        }
        if odd && prof.t % 2 == 1 && at_least(val(&one + &m), pv + 1) {
            out.push(2);
        }
        if pv == 3 && prof.t % 2 == 0 && at_least(val(&one + &m), 4) {
            out.push(3);
        }
        if pv == 2 && prof.r == 2 && at_least(val(&m - &one), 4) {
            out.push(4);
        }
        if pv == 2 && prof.r >= 3 && at_least(val(&m - &one), 5) {
            out.push(5);
        }
    } else if prof.r == prof.s {
        let mp = &prof.m_p;
        if odd
            && prof.t > 1
            && prof.t.gcd(&(pv - 1)) == 1
            && prof.r >= pv
            && at_least(val_pow_p_minus_self(mp, p), pv + 1)
        {
            out.push(6);
        }
        if pv == 2 && prof.r == 2 && at_least(val(mp - &one), 4) {
            out.push(7);
        }
        if pv == 2 && prof.r >= 3 && at_least(val(mp - &one), 5) {
            out.push(8);
        }
    }
    out
}

/// A verified non-monogeneity certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub condition: u8,
    pub evidence: CommonIndexEvidence,
    pub source: CensusSource,
    pub census: BTreeMap<u64, u64>,
}

/// A condition whose hypotheses held, with the outcome of its census check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: u8,
    pub p: Prime,
    pub source: Option<CensusSource>,
    pub census: BTreeMap<u64, u64>,
    pub certified: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateScan {
    pub certificate: Option<Certificate>,
    pub checks: Vec<ConditionCheck>,
}

/// Scans `p | n` for conditions (1)-(8) and certifies a hit only after a
/// census exhibits `P_f > N_f`. Requires `ν_p(m) < n` for every `p`.
pub fn non_monogenic_certificate(field: &PureField) -> Result<CertificateScan> {
    if !field.valuations_below_degree()? {
        return invalid("some v_p(m) is not below n; normalize first");
    }
    let mut scan = CertificateScan::default();
    for p in field.primes_of_n() {
        let fired = fired_conditions(&field.profile(p));
        let Some(&first) = fired.first() else { continue };
        let (census, note) = match prime_census(field, p) {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let evidence = match &census {
            Some(c) => common_index_divisor_counts(p, &c.counts)?,
            None => None,
        };
        for &condition in &fired {
            scan.checks.push(ConditionCheck {
                condition,
                p,
                source: census.as_ref().map(|c| c.source),
                census: census.as_ref().map(|c| c.counts.clone()).unwrap_or_default(),
                certified: evidence.is_some(),
                note: note.clone(),
            });
        }
        if let (Some(ev), Some(c), None) = (evidence, &census, &scan.certificate) {
            scan.certificate = Some(Certificate {
                condition: first,
                evidence: ev,
                source: c.source,
                census: c.counts.clone(),
            });
        }
    }
    Ok(scan)
}

/// `θ = α^i / d` generating `Z_K`, with minimal polynomial `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub i: u64,
    pub j: u64,
    pub d: BigInt,
    pub g: IntPoly,
}

/// The substitution `θ = α^i / a^j` with `v·i - n·j = 1`, so that `θ^n = a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub i: u64,
    pub j: u64,
    pub a: BigInt,
    pub g: IntPoly,
    /// `Z[θ]` is integrally closed.
    pub closed: bool,
}

fn is_squarefree(a: &BigInt) -> Result<bool> {
    Ok(factorize(a)?.iter().all(|pp| pp.e == 1))
}

/// Substitution for `m = a^v` with `a` squarefree, `a ≠ ±1`, `gcd(v, n) = 1`;
/// `None` when not applicable.
pub fn monogenic_via_substitution(n: u64, a: &BigInt, v: u64) -> Result<Option<Substitution>> {
    if n < 2 || v == 0 || a.abs() <= BigInt::one() || v.gcd(&n) != 1 || !is_squarefree(a)? {
        return Ok(None);
    }
    let (_, x, _) = ext_gcd(v as i128, n as i128);
    let i = x.rem_euclid(n as i128) as u64;
    let j = ((v as i128 * i as i128 - 1) / n as i128) as u64;
    debug_assert_eq!(v as i128 * i as i128 - n as i128 * j as i128, 1);
    let g = PureField::new(n, a.clone())?;
    let closed = integral_closedness_test(&g)?.closed;
    Ok(Some(Substitution {
        i,
        j,
        a: a.clone(),
        g: g.polynomial().clone(),
        closed,
    }))
}

/// Writes `m = a^v` with `a` squarefree, if possible.
pub fn squarefree_power(m: &BigInt) -> Result<Option<(BigInt, u64)>> {
    let (v, a) = perfect_power(m);
    Ok(is_squarefree(&a)?.then_some((a, v as u64)))
}

/// Per-prime index information gathered by [`analyze`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReport {
    pub profile: PrimeProfile,
    pub dedekind_divides_index: bool,
    /// Best proven lower bound for `ν_p(ind f)`.
    pub index_lower: u64,
    /// `ν_p(ind f)` when the polygons determine it.
    pub index_exact: Option<u64>,
    pub method: IndexMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexMethod {
    FirstOrder,
    SecondOrder,
}

pub fn prime_report(field: &PureField, p: Prime) -> Result<PrimeReport> {
    let f = field.polynomial();
    let profile = field.profile(p);
    let dedekind_divides_index = dedekind_test(f, p)?.divides_index;
    let bound = ore_index(f, p)?;
    let mut report = PrimeReport {
        profile,
        dedekind_divides_index,
        index_lower: bound.lower_bound,
        index_exact: bound.exact.then_some(bound.lower_bound),
        method: IndexMethod::FirstOrder,
    };
    if !bound.exact {
        if let Ok(data) = order2_data(f, p) {
            let np = n2_polygon(f, &data)?;
            let total = bound.lower_bound + np.index();
            report.index_lower = total;
            report.method = IndexMethod::SecondOrder;
            if census_of(&np)?.is_complete() {
                report.index_exact = Some(total);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Monogenic,
    NotMonogenic,
    Undetermined,
}

/// Outcome of [`analyze`] with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogeneityVerdict {
    pub n: u64,
    pub m: BigInt,
    pub status: Status,
    pub witness: Option<Witness>,
    pub certificate: Option<(Prime, Certificate)>,
    pub closedness: ClosednessReport,
    /// `c` with `m = c^n·m'` when `m` had to be reduced below the `n`-th power bound.
    pub scale: Option<BigInt>,
    pub conditions: Vec<ConditionCheck>,
    pub primes: Vec<PrimeReport>,
}

fn try_monogenic(field: &PureField, scale: &BigInt) -> Result<Option<Witness>> {
    if integral_closedness_test(field)?.closed {
        return Ok(Some(Witness {
            i: 1,
            j: 0,
            d: scale.clone(),
            g: field.polynomial().clone(),
        }));
    }
    if let Some((a, v)) = squarefree_power(field.m())? {
        if v > 1 {
            if let Some(sub) = monogenic_via_substitution(field.n(), &a, v)? {
                if sub.closed {
                    let d = num_traits::pow(scale.clone(), sub.i as usize) * num_traits::pow(a, sub.j as usize);
                    return Ok(Some(Witness {
                        i: sub.i,
                        j: sub.j,
                        d,
                        g: sub.g,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Monogeneity pipeline for `x^n - m`.
pub fn analyze(n: u64, m: &BigInt) -> Result<MonogeneityVerdict> {
    let field = PureField::new(n, m.clone())?;
    let primes = field
        .primes_of_nm()?
        .into_iter()
        .map(|p| prime_report(&field, p))
        .collect::<Result<Vec<_>>>()?;
    let closedness = integral_closedness_test(&field)?;
    let mut verdict = MonogeneityVerdict {
        n,
        m: m.clone(),
        status: Status::Undetermined,
        witness: None,
        certificate: None,
        closedness,
        scale: None,
        conditions: Vec::new(),
        primes,
    };
    let mut witness = try_monogenic(&field, &BigInt::one())?;
    let mut work = field.clone();
    if witness.is_none() && !field.valuations_below_degree()? {
        let (reduced, c) = field.normalized()?;
        witness = try_monogenic(&reduced, &c)?;
        verdict.scale = Some(c);
        work = reduced;
    }
    if let Some(w) = witness {
        verdict.status = Status::Monogenic;
        verdict.witness = Some(w);
        return Ok(verdict);
    }
    let scan = non_monogenic_certificate(&work)?;
    verdict.conditions = scan.checks;
    if let Some(cert) = scan.certificate {
        verdict.status = Status::NotMonogenic;
        verdict.certificate = Some((cert.evidence.p, cert));
    }
    Ok(verdict)
}

/// Result of re-checking a verdict with the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub consistent: bool,
    pub detail: String,
}

/// Re-derives the claim of a verdict with the p-maximal order computation.
pub fn verify_with_oracle(verdict: &MonogeneityVerdict) -> Result<OracleCheck> {
    match verdict.status {
        Status::Undetermined => Ok(OracleCheck {
            consistent: true,
            detail: "no claim to verify".into(),
        }),
        Status::NotMonogenic => {
            let (p, cert) = verdict.certificate.as_ref().expect("certificate present");
            let field = PureField::new(verdict.n, verdict.m.clone())?;
            let work = match &verdict.scale {
                Some(_) => field.normalized()?.0,
                None => field,
            };
            let (order, _) = oracle::p_maximal_order(work.polynomial(), *p)?;
            let census = oracle::residue_census(&order, *p)?;
            let p_f = census.count(cert.evidence.f_res);
            let consistent = p_f == cert.evidence.p_f && BigUint::from(p_f) > cert.evidence.n_f;
            Ok(OracleCheck {
                consistent,
                detail: format!(
                    "oracle census at {p}: P_{} = {p_f}, N_{} = {}",
                    cert.evidence.f_res, cert.evidence.f_res, cert.evidence.n_f
                ),
            })
        }
        Status::Monogenic => {
            let w = verdict.witness.as_ref().expect("witness present");
            let n = w.g.degree().unwrap() as u64;
            let a = -w.g.coeff(0);
            let g = PureField::new(n, a)?;
            let mut bad = Vec::new();
            for p in g.primes_of_nm()? {
                let v = oracle::index_valuation(g.polynomial(), p)?;
                if v != 0 {
                    bad.push(format!("v_{p} = {v}"));
                }
            }
            Ok(OracleCheck {
                consistent: bad.is_empty(),
                detail: if bad.is_empty() {
                    format!("oracle index of {} is 1 at every prime dividing its discriminant", w.g)
                } else {
                    bad.join(", ")
                },
            })
        }
    }
}

/// Lifts of the irreducible factors of `x^t - m` modulo `p`.
pub fn np_factors(field: &PureField, p: Prime) -> Result<Vec<IntPoly>> {
    let prof = field.profile(p);
    let g = IntPoly::pure(prof.t as usize, field.m()).reduce_mod_p(p);
    Ok(factor_mod_p(&g)?.iter().map(|(h, _)| lift(h)).collect())
}
