//! Dedekind's criterion, Ore's index bound and splitting shapes for
//! p-regular polynomials.

use crate::arith::Prime;
use crate::error::{invalid, refuse, Result};
use crate::newton::{is_p_regular, FactorRegularity};
use crate::poly::{factor_mod_p, lift, IntPoly, ModPoly};

/// Outcome of Dedekind's criterion at `p`.
#[derive(Clone, Debug)]
pub struct DedekindReport {
    pub p: Prime,
    /// Lifts `φ_i` with coefficients in `[0, p)` and multiplicities `l_i`.
    pub factors: Vec<(IntPoly, u32)>,
    /// `M = (f - Π φ_i^{l_i}) / p`.
    pub m: IntPoly,
    pub divides_index: bool,
    pub failing_factors: Vec<IntPoly>,
}

pub fn dedekind_test(f: &IntPoly, p: Prime) -> Result<DedekindReport> {
    dedekind_with_lifts(f, p, |g| lift(g))
}

/// Dedekind's criterion with an arbitrary choice of lifts.
pub fn dedekind_with_lifts(
    f: &IntPoly,
    p: Prime,
    lifter: impl Fn(&ModPoly) -> IntPoly,
) -> Result<DedekindReport> {
    if !f.is_monic() {
        return invalid(format!("{f} is not monic"));
    }
    let fbar = f.reduce_mod_p(p);
    let factors: Vec<(ModPoly, IntPoly, u32)> = factor_mod_p(&fbar)?
        .into_iter()
        .map(|(g, l)| {
            let phi = lifter(&g);
            (g, phi, l)
        })
        .collect();
    let prod = factors
        .iter()
        .fold(IntPoly::one(), |acc, (_, phi, l)| &acc * &phi.pow(*l));
    let m = (f - &prod).div_exact(&p.big())?;
    let mbar = m.reduce_mod_p(p);
    let failing_factors: Vec<IntPoly> = factors
        .iter()
        .filter(|(g, _, l)| *l >= 2 && g.divides(&mbar))
        .map(|(_, phi, _)| phi.clone())
        .collect();
    Ok(DedekindReport {
        p,
        factors: factors.into_iter().map(|(_, phi, l)| (phi, l)).collect(),
        m,
        divides_index: !failing_factors.is_empty(),
        failing_factors,
    })
}

/// Ore's lower bound `Σ ind_{φ_i}(f)` for `ν_p(ind f)`, exact when `f` is p-regular.
#[derive(Clone, Debug)]
pub struct IndexBound {
    pub p: Prime,
    pub lower_bound: u64,
    pub exact: bool,
    pub per_phi: Vec<(IntPoly, u64)>,
    pub factors: Vec<FactorRegularity>,
}

pub fn ore_index(f: &IntPoly, p: Prime) -> Result<IndexBound> {
    let (exact, factors) = is_p_regular(f, p)?;
    let per_phi: Vec<(IntPoly, u64)> = factors.iter().map(|d| (d.phi.clone(), d.phi_index())).collect();
    Ok(IndexBound {
        p,
        lower_bound: per_phi.iter().map(|(_, v)| v).sum(),
        exact,
        per_phi,
        factors,
    })
}

/// Ramification indices and residue degrees of the primes above `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingShape {
    pub p: Prime,
    /// `(e, f)` pairs in the order factors, sides and residual factors appear.
    pub primes: Vec<(u64, u64)>,
}

impl SplittingShape {
    pub fn degree(&self) -> u64 {
        self.primes.iter().map(|(e, f)| e * f).sum()
    }

    pub fn census(&self) -> Vec<(u64, u64)> {
        self.primes.clone()
    }
}

/// Splitting shape from the polygon data of a p-regular `f`.
pub fn shape_from_regularity(p: Prime, factors: &[FactorRegularity]) -> Result<SplittingShape> {
    let mut primes = Vec::new();
    for data in factors {
        if !data.is_regular() {
            return refuse(format!("{} has a residual polynomial that is not squarefree", data.phi));
        }
        let deg_phi = data.phi.degree().unwrap() as u64;
        for r in &data.residuals {
            for k in r.poly.squarefree_factor_degrees()? {
                primes.push((r.side.e(), deg_phi * k as u64));
            }
        }
    }
    Ok(SplittingShape { p, primes })
}

/// Splitting shape of `p` for p-regular `f`; refuses otherwise.
pub fn splitting_shape(f: &IntPoly, p: Prime) -> Result<SplittingShape> {
    let (regular, factors) = is_p_regular(f, p)?;
    if !regular {
        return refuse(format!("{f} is not {p}-regular"));
    }
    shape_from_regularity(p, &factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn dedekind_examples() {
        assert!(!dedekind_test(&poly("x^2 - 2"), pr(2)).unwrap().divides_index);
        let r = dedekind_test(&poly("x^2 - 5"), pr(2)).unwrap();
        assert!(r.divides_index);
        assert_eq!(r.failing_factors, vec![poly("x + 1")]);
        assert!(dedekind_test(&poly("x^10 - 1000"), pr(2)).unwrap().divides_index);
        assert!(!dedekind_test(&poly("x^10 - 10"), pr(2)).unwrap().divides_index);
    }

    #[test]
    fn dedekind_is_lift_independent() {
        for f in ["x^2 - 5", "x^6 - 12", "x^9 - 10", "x^8 + 17", "x^7 - 3", "x^12 - 33"] {
            let f = poly(f);
            for p in [2u64, 3, 5, 7] {
                let base = dedekind_test(&f, pr(p)).unwrap().divides_index;
                for shift in [-1i64, 1, 2] {
                    let shifted = dedekind_with_lifts(&f, pr(p), |g| {
                        let c = lift(g);
                        // add shift·p to every coefficient below the leading one
                        let k = c.degree().unwrap();
                        let mut cs: Vec<BigInt> = c.coeffs().to_vec();
                        for x in cs.iter_mut().take(k) {
                            *x += BigInt::from(shift * p as i64);
                        }
                        IntPoly::new(cs)
                    })
                    .unwrap()
                    .divides_index;
                    assert_eq!(base, shifted);
                }
            }
        }
    }

    #[test]
    fn ore_examples() {
        let b = ore_index(&poly("x^2 - 2"), pr(2)).unwrap();
        assert_eq!((b.lower_bound, b.exact), (0, true));
        let b = ore_index(&poly("x^10 - 1000"), pr(5)).unwrap();
        assert_eq!((b.lower_bound, b.exact), (9, true));
        let b = ore_index(&poly("x^48 - 528"), pr(2)).unwrap();
        assert!(!b.exact);
        assert_eq!(b.lower_bound, 72);
    }

    #[test]
    fn shapes() {
        let s = splitting_shape(&poly("x^5 - 7"), pr(7)).unwrap();
        assert_eq!(s.primes, vec![(5, 1)]);
        for k in 1..=5u32 {
            let n = 1usize << k;
            let s = splitting_shape(&IntPoly::pure(n, &BigInt::from(-1)), pr(2)).unwrap();
            assert_eq!(s.primes, vec![(n as u64, 1)]);
        }
        // y^2 - 3 is irreducible over F_5: one prime with e = 3, f = 2.
        let s = splitting_shape(&poly("x^6 - 75"), pr(5)).unwrap();
        assert_eq!(s.primes, vec![(3, 2)]);
        assert_eq!(s.degree(), 6);
        // y^2 - 4 splits over F_5.
        let s = splitting_shape(&poly("x^6 - 100"), pr(5)).unwrap();
        assert_eq!(s.primes, vec![(3, 1), (3, 1)]);
        assert!(splitting_shape(&poly("x^4 - 12"), pr(2)).is_err());
    }
}
