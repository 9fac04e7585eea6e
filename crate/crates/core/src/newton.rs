//! `φ`-Newton polygons with respect to `ν_p`.
//!
//! A polygon is built from the points `(i, ν_p(a_i))` of a `φ`-expansion
//! `f = Σ a_i φ^i`. Only the principal part (the sides of negative slope) is
//! kept. Each side carries a residual polynomial over `F_φ = F_p[x]/(φ̄)`.

use std::fmt;

use num_integer::Integer;

use crate::arith::{Prime, Valuation};
use crate::error::{invalid, Result};
use crate::poly::{factor_mod_p, lift, phi_expansion, ExtField, ExtPoly, IntPoly, PhiExpansion};

/// A point `(i, ν_p(a_i))`; zero coefficients have ordinate `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonPoint {
    pub x: u64,
    pub y: Valuation,
}

/// A maximal segment of a polygon with negative slope `-h_red/e_red`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub start: (u64, u64),
    pub length: u64,
    pub height: u64,
    /// `(h_red, e_red)` with the slope equal to `-h_red/e_red`.
    pub slope: (u64, u64),
    pub degree: u64,
}

impl Side {
    /// The side from `(x0, y0)` to `(x1, y1)`, requires `x0 < x1` and `y0 > y1`.
    pub fn between(a: (u64, u64), b: (u64, u64)) -> Side {
        assert!(a.0 < b.0 && a.1 > b.1, "not a side of negative slope");
        let length = b.0 - a.0;
        let height = a.1 - b.1;
        let degree = length.gcd(&height);
        Side {
            start: a,
            length,
            height,
            slope: (height / degree, length / degree),
            degree,
        }
    }

    pub fn end(&self) -> (u64, u64) {
        (self.start.0 + self.length, self.start.1 - self.height)
    }

    /// Ramification index `e = l/d`.
    pub fn e(&self) -> u64 {
        self.slope.1
    }

    /// Number of lattice points `(x, y)` with `x ≥ 1`, `y ≥ 1` on or under the
    /// side, with its own start abscissa shifted to zero.
    pub fn lattice_count(&self) -> u64 {
        polygon_index_of_vertices(&[(0, self.height), (self.length, 0)])
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.end();
        write!(
            f,
            "({}, {}) -> ({x}, {y}), slope -{}/{}, degree {}",
            self.start.0, self.start.1, self.slope.0, self.slope.1, self.degree
        )
    }
}

/// Lower convex hull of points with strictly increasing abscissas; collinear
/// interior points are dropped so that vertices sit only at slope changes.
pub fn lower_hull(points: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut hull: Vec<(u64, u64)> = Vec::with_capacity(points.len());
    for &pt in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// Lattice points `(x, y)` with `x ≥ 1`, `y ≥ 1` on or under the polygon with
/// the given vertices. The last vertex must lie on the abscissa axis.
pub fn polygon_index_of_vertices(vertices: &[(u64, u64)]) -> u64 {
    let mut total = 0u64;
    for w in vertices.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let (l, h) = (x1 - x0, y0 - y1);
        for k in 1..=l {
            // floor(y0 - h·k/l)
            let drop = (h * k).div_ceil(l);
            total += y0 - drop;
        }
    }
    total
}

/// The principal `φ`-Newton polygon of `f` at `p`.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    pub phi: IntPoly,
    pub p: Prime,
    pub points: Vec<PolygonPoint>,
    pub vertices: Vec<(u64, u64)>,
    pub sides: Vec<Side>,
    expansion: PhiExpansion,
    field: ExtField,
}

/// Residual polynomial `t_0 + t_1 y + ... + t_d y^d` of a side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualPoly {
    pub side: Side,
    pub poly: ExtPoly,
}

impl fmt::Display for ResidualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl NewtonPolygon {
    pub fn expansion(&self) -> &PhiExpansion {
        &self.expansion
    }

    /// The residue field `F_φ`.
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// Abscissa of the last vertex, the multiplicity of `φ̄` for canonical expansions.
    pub fn length(&self) -> u64 {
        self.vertices.last().map_or(0, |v| v.0)
    }

    pub fn index(&self) -> u64 {
        polygon_index_of_vertices(&self.vertices)
    }
}

fn points_of(expansion: &PhiExpansion, p: Prime) -> Vec<PolygonPoint> {
    expansion
        .terms
        .iter()
        .enumerate()
        .map(|(i, a)| PolygonPoint {
            x: i as u64,
            y: a.gauss_valuation(p),
        })
        .collect()
}

/// Polygon of an arbitrary expansion: the negative-slope part of the lower
/// hull of its points, ending at the first point of minimal ordinate.
pub fn polygon_from_expansion(expansion: &PhiExpansion, p: Prime) -> Result<NewtonPolygon> {
    let phibar = expansion.phi.reduce_mod_p(p);
    let field = ExtField::new(&phibar)?;
    let points = points_of(expansion, p);
    let finite: Vec<(u64, u64)> = points
        .iter()
        .filter_map(|pt| pt.y.finite().map(|y| (pt.x, y)))
        .collect();
    let Some(&min_y) = finite.iter().map(|(_, y)| y).min() else {
        return invalid("expansion has no nonzero term");
    };
    if points.first().is_none_or(|pt| !pt.y.is_finite()) {
        return invalid("phi divides the polynomial");
    }
    let cut = finite.iter().position(|&(_, y)| y == min_y).unwrap();
    let vertices = lower_hull(&finite[..=cut]);
    let sides = vertices.windows(2).map(|w| Side::between(w[0], w[1])).collect();
    Ok(NewtonPolygon {
        phi: expansion.phi.clone(),
        p,
        points,
        vertices,
        sides,
        expansion: expansion.clone(),
        field,
    })
}

/// The principal polygon `N_φ^-(f)` from the canonical `φ`-expansion.
pub fn principal_polygon(f: &IntPoly, phi: &IntPoly, p: Prime) -> Result<NewtonPolygon> {
    if !f.is_monic() {
        return invalid(format!("{f} is not monic"));
    }
    if !phi.is_monic() || phi.degree().unwrap_or(0) == 0 {
        return invalid(format!("{phi} must be monic of positive degree"));
    }
    let phibar = phi.reduce_mod_p(p);
    if !phibar.is_irreducible() {
        return invalid(format!("{phi} is not irreducible modulo {p}"));
    }
    if !phibar.divides(&f.reduce_mod_p(p)) {
        return invalid(format!("{phi} does not divide {f} modulo {p}"));
    }
    let expansion = phi_expansion(f, phi)?;
    if expansion.terms[0].is_zero() {
        return invalid(format!("{phi} divides {f} over the integers"));
    }
    polygon_from_expansion(&expansion, p)
}

fn residual_coefficient(polygon: &NewtonPolygon, x: u64, y: u64) -> crate::poly::FieldElem {
    let a = &polygon.expansion.terms[x as usize];
    if a.gauss_valuation(polygon.p) != Valuation::Finite(y) {
        return polygon.field.zero();
    }
    let unit = a.div_exact(&polygon.p.pow(y)).expect("valuation divides");
    polygon.field.elem(&unit.reduce_mod_p(polygon.p))
}

/// Residual polynomial attached to `side`, built from the lattice points on it.
pub fn residual_poly(polygon: &NewtonPolygon, side: &Side) -> Result<ResidualPoly> {
    if !polygon.sides.contains(side) {
        return invalid(format!("side {side} does not belong to the polygon"));
    }
    let (h, e) = side.slope;
    let coeffs = (0..=side.degree)
        .map(|i| residual_coefficient(polygon, side.start.0 + i * e, side.start.1 - i * h))
        .collect();
    Ok(ResidualPoly {
        side: *side,
        poly: ExtPoly::new(&polygon.field, coeffs),
    })
}

/// Number of lattice points with positive coordinates on or under the polygon.
pub fn polygon_index(polygon: &NewtonPolygon) -> u64 {
    polygon.index()
}

/// `ind_φ(f) = deg φ · polygon_index`.
pub fn phi_index(f: &IntPoly, phi: &IntPoly, p: Prime) -> Result<u64> {
    let polygon = principal_polygon(f, phi, p)?;
    Ok(phi.degree().unwrap() as u64 * polygon.index())
}

/// True iff the normalized coefficient at every vertex abscissa is nonzero
/// modulo `(p, φ)`.
pub fn is_admissible(expansion: &PhiExpansion, p: Prime) -> bool {
    let Ok(polygon) = polygon_from_expansion(expansion, p) else {
        return false;
    };
    polygon
        .vertices
        .iter()
        .all(|&(x, y)| !residual_coefficient(&polygon, x, y).is_zero())
}

/// Regularity data for one irreducible factor `φ̄` of `f̄`.
#[derive(Clone, Debug)]
pub struct FactorRegularity {
    pub phi: IntPoly,
    pub multiplicity: u32,
    pub polygon: NewtonPolygon,
    pub residuals: Vec<ResidualPoly>,
    pub squarefree: Vec<bool>,
}

impl FactorRegularity {
    pub fn is_regular(&self) -> bool {
        self.squarefree.iter().all(|&b| b)
    }

    pub fn phi_index(&self) -> u64 {
        self.phi.degree().unwrap() as u64 * self.polygon.index()
    }
}

/// Principal polygons and residual polynomials for every irreducible factor
/// of `f̄`, with the canonical `[0, p)` lifts.
pub fn regularity_data(f: &IntPoly, p: Prime) -> Result<Vec<FactorRegularity>> {
    let mut out = Vec::new();
    for (g, mult) in factor_mod_p(&f.reduce_mod_p(p))? {
        let phi = lift(&g);
        let polygon = principal_polygon(f, &phi, p)?;
        let residuals = polygon
            .sides
            .iter()
            .map(|s| residual_poly(&polygon, s))
            .collect::<Result<Vec<_>>>()?;
        let squarefree = residuals
            .iter()
            .map(|r| r.poly.is_squarefree())
            .collect::<Result<Vec<_>>>()?;
        out.push(FactorRegularity {
            phi,
            multiplicity: mult,
            polygon,
            residuals,
            squarefree,
        });
    }
    Ok(out)
}

/// `f` is p-regular iff every residual polynomial of every factor is squarefree.
pub fn is_p_regular(f: &IntPoly, p: Prime) -> Result<(bool, Vec<FactorRegularity>)> {
    let data = regularity_data(f, p)?;
    Ok((data.iter().all(FactorRegularity::is_regular), data))
}
