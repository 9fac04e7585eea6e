//! Order-two Newton polygons for pure polynomials `x^n - m` at primes `p | m`
//! whose first-order residual polynomial is a power of a linear factor.
//!
//! With the single first-order side of slope `-h₁/e₁` and residual
//! `(y - c)^g`, the key polynomial is `φ₂ = x^{e₁} - p^{h₁}·u` where `u` is
//! the unit part of `m`. The valuation `ω₂(Σ b_j x^j) = min(e₁·ν_p(b_j) + j·h₁)`
//! gives the points of `N₂(f)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{Prime, Valuation};
use crate::error::{invalid, refuse, Result};
use crate::newton::{lower_hull, polygon_index_of_vertices, Side};
use crate::poly::{factor_mod_p, phi_expansion, IntPoly, ModPoly};

/// First-order data feeding the second-order polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order2Data {
    pub p: Prime,
    pub n: u64,
    /// `(h₁, e₁)`, the reduced first-order slope is `-h₁/e₁`.
    pub lambda1: (u64, u64),
    /// Degree of the first-order side, the exponent of `(y - c)`.
    pub g: u64,
    /// Root `c` of the first-order residual polynomial in `F_p`.
    pub psi_root: u64,
    pub phi2: IntPoly,
}

impl Order2Data {
    pub fn e1(&self) -> u64 {
        self.lambda1.1
    }

    pub fn h1(&self) -> u64 {
        self.lambda1.0
    }
}

fn pure_parts(f: &IntPoly) -> Option<(u64, BigInt)> {
    let n = f.degree()?;
    if !f.is_monic() || n < 1 || f.coeffs()[1..n].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some((n as u64, -f.coeff(0)))
}

/// Builds the second-order data for `x^n - m` at `p`, refusing inputs outside
/// the supported shape.
pub fn order2_data(f: &IntPoly, p: Prime) -> Result<Order2Data> {
    let Some((n, m)) = pure_parts(f) else {
        return refuse(format!("{f} is not of the form x^n - m"));
    };
    let s = match p.val(&m) {
        Valuation::Finite(s) if s >= 1 && s < n => s,
        _ => return refuse(format!("need 1 <= v_{p}(m) < {n}")),
    };
    let g = n.gcd(&s);
    let (e1, h1) = (n / g, s / g);
    // The residual polynomial y^g - u is a power of a linear factor iff g is a power of p.
    let mut rest = g;
    while rest % p.get() == 0 {
        rest /= p.get();
    }
    if g == 1 || rest != 1 {
        return refuse(format!(
            "first-order residual y^{g} - u is not a proper power of a linear factor over F_{p}"
        ));
    }
    let u = &m / p.pow(s);
    let phi2 = &IntPoly::monomial(BigInt::from(1), e1 as usize) - &IntPoly::constant(p.pow(h1) * &u);
    Ok(Order2Data {
        p,
        n,
        lambda1: (h1, e1),
        g,
        psi_root: p.reduce(&u),
        phi2,
    })
}

/// `ω₂(g) = min_j (e₁·ν_p(b_j) + j·h₁)`, `Infinite` for the zero polynomial.
pub fn omega2_val(g: &IntPoly, data: &Order2Data) -> Valuation {
    g.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, b)| {
            data.p
                .val(b)
                .finite()
                .map(|v| data.e1() * v + j as u64 * data.h1())
        })
        .min()
        .map_or(Valuation::Infinite, Valuation::Finite)
}

/// The principal part of `N₂(f)`, ordinates shifted so that the last vertex
/// sits at height zero.
#[derive(Clone, Debug)]
pub struct Order2Polygon {
    pub data: Order2Data,
    /// `(i, ω₂(a_i φ₂^i))` before shifting; `None` for vanishing coefficients.
    pub points: Vec<(u64, Option<u64>)>,
    /// `ω₂(f)`, subtracted from every ordinate.
    pub baseline: u64,
    pub vertices: Vec<(u64, u64)>,
    pub sides: Vec<Side>,
    terms: Vec<IntPoly>,
}

pub fn n2_polygon(f: &IntPoly, data: &Order2Data) -> Result<Order2Polygon> {
    let expansion = phi_expansion(f, &data.phi2)?;
    let v_phi2 = data.e1() * data.h1();
    let points: Vec<(u64, Option<u64>)> = expansion
        .terms
        .iter()
        .enumerate()
        .map(|(i, a)| (i as u64, omega2_val(a, data).finite().map(|v| v + i as u64 * v_phi2)))
        .collect();
    let Some(baseline) = points.iter().filter_map(|(_, y)| *y).min() else {
        return invalid("zero polynomial");
    };
    let finite: Vec<(u64, u64)> = points
        .iter()
        .filter_map(|&(x, y)| y.map(|y| (x, y - baseline)))
        .collect();
    if finite.first().is_none_or(|pt| pt.0 != 0) {
        return invalid(format!("{} divides {f}", data.phi2));
    }
    let cut = finite.iter().position(|&(_, y)| y == 0).unwrap();
    let vertices = lower_hull(&finite[..=cut]);
    let sides = vertices.windows(2).map(|w| Side::between(w[0], w[1])).collect();
    Ok(Order2Polygon {
        data: data.clone(),
        points,
        baseline,
        vertices,
        sides,
        terms: expansion.terms,
    })
}

impl Order2Polygon {
    /// Lattice points with positive coordinates on or under the shifted polygon.
    pub fn index(&self) -> u64 {
        polygon_index_of_vertices(&self.vertices)
    }

    /// Second-order residual polynomial of `side` over `F_p`, determined up to
    /// a rescaling of `y`.
    pub fn residual(&self, side: &Side) -> ModPoly {
        let p = self.data.p;
        let (h, e) = side.slope;
        let coeffs = (0..=side.degree)
            .map(|k| {
                let x = side.start.0 + k * e;
                let y = side.start.1 - k * h;
                let a = &self.terms[x as usize];
                match self.points[x as usize].1 {
                    Some(v) if v - self.baseline == y => unit_residue(a, &self.data),
                    _ => 0,
                }
            })
            .collect();
        ModPoly::new(p, coeffs)
    }
}

/// Residue of the unique monomial of `a` attaining `ω₂(a)`.
fn unit_residue(a: &IntPoly, data: &Order2Data) -> u64 {
    let target = omega2_val(a, data);
    let p = data.p;
    for (j, b) in a.coeffs().iter().enumerate() {
        if let Valuation::Finite(v) = p.val(b) {
            if Valuation::Finite(data.e1() * v + j as u64 * data.h1()) == target {
                return p.reduce(&(b / p.pow(v)));
            }
        }
    }
    unreachable!("minimum is attained")
}

/// `ind₂(f)`, the lattice index of `N₂(f)`.
pub fn ind2(f: &IntPoly, data: &Order2Data) -> Result<u64> {
    Ok(n2_polygon(f, data)?.index())
}

/// One prime ideal above `p` predicted by a side of `N₂` and a factor of its
/// residual polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub side: usize,
    pub side_degree: u64,
    /// Ramification index `e₁·e₂`.
    pub e: u64,
    /// Residue degree.
    pub f_res: u64,
}

/// Census of a second-order polygon, possibly incomplete when a residual
/// polynomial is not squarefree.
#[derive(Clone, Debug)]
pub struct Order2Census {
    pub entries: Vec<CensusEntry>,
    /// Sides whose residual polynomial is not squarefree.
    pub unresolved: Vec<usize>,
}

impl Order2Census {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

pub fn census_of(polygon: &Order2Polygon) -> Result<Order2Census> {
    let mut entries = Vec::new();
    let mut unresolved = Vec::new();
    for (idx, side) in polygon.sides.iter().enumerate() {
        let r = polygon.residual(side);
        let factors = factor_mod_p(&r)?;
        if factors.iter().any(|(_, mult)| *mult > 1) {
            unresolved.push(idx);
            continue;
        }
        for (psi, _) in factors {
            entries.push(CensusEntry {
                side: idx,
                side_degree: side.degree,
                e: polygon.data.e1() * side.e(),
                f_res: psi.degree().unwrap() as u64,
            });
        }
    }
    Ok(Order2Census { entries, unresolved })
}

/// Complete census, refusing when some residual polynomial is not squarefree.
pub fn order2_side_census(f: &IntPoly, data: &Order2Data) -> Result<Vec<CensusEntry>> {
    let census = census_of(&n2_polygon(f, data)?)?;
    if !census.is_complete() {
        return refuse("a second-order residual polynomial is not squarefree");
    }
    Ok(census.entries)
}
