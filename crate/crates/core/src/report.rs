//! Serializable reports. Every number is a decimal string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::newton::{NewtonPolygon, ResidualPoly};
use crate::ore::{DedekindReport, IndexBound};
use crate::oracle::ResidueCensus;
use crate::poly::ElemDisplay;
use crate::pure::{CensusSource, ConditionCheck, MonogeneityVerdict, PrimeReport, Status};
use crate::Prime;

fn s(x: impl ToString) -> String {
    x.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub i: String,
    pub j: String,
    /// `θ = α^i / d`.
    pub d: String,
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub condition: String,
    pub p: String,
    pub f_res: String,
    #[serde(rename = "P_f")]
    pub p_f: String,
    #[serde(rename = "N_f")]
    pub n_f: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub p: String,
    pub r: String,
    pub t: String,
    pub s: String,
    pub u: String,
    pub v_closed: String,
    pub dedekind_divides_index: bool,
    pub index_lower: String,
    pub index_exact: Option<String>,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionJson {
    pub condition: String,
    pub p: String,
    pub certified: bool,
    pub source: Option<String>,
    pub census: BTreeMap<String, String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub n: String,
    pub m: String,
    pub status: String,
    pub witness: Option<WitnessJson>,
    pub certificate: Option<CertificateJson>,
    pub scale: Option<String>,
    pub conditions: Vec<ConditionJson>,
    pub primes: Vec<PrimeJson>,
}

pub fn status_name(status: Status) -> &'static str {
    match status {
        Status::Monogenic => "Monogenic",
        Status::NotMonogenic => "NotMonogenic",
        Status::Undetermined => "Undetermined",
    }
}

pub fn source_name(source: CensusSource) -> &'static str {
    match source {
        CensusSource::FirstOrder => "first-order",
        CensusSource::SecondOrder => "second-order",
        CensusSource::Oracle => "oracle",
    }
}

fn counts_json(counts: &BTreeMap<u64, u64>) -> BTreeMap<String, String> {
    counts.iter().map(|(k, v)| (s(k), s(v))).collect()
}

fn prime_json(r: &PrimeReport) -> PrimeJson {
    let pr = &r.profile;
    PrimeJson {
        p: s(pr.p),
        r: s(pr.r),
        t: s(pr.t),
        s: s(pr.s),
        u: s(&pr.u),
        v_closed: s(pr.v_closed),
        dedekind_divides_index: r.dedekind_divides_index,
        index_lower: s(r.index_lower),
        index_exact: r.index_exact.map(s),
        method: match r.method {
            crate::pure::IndexMethod::FirstOrder => "first-order".into(),
            crate::pure::IndexMethod::SecondOrder => "second-order".into(),
        },
    }
}

fn condition_json(c: &ConditionCheck) -> ConditionJson {
    ConditionJson {
        condition: s(c.condition),
        p: s(c.p),
        certified: c.certified,
        source: c.source.map(|x| source_name(x).to_string()),
        census: counts_json(&c.census),
        note: c.note.clone(),
    }
}

impl From<&MonogeneityVerdict> for VerdictJson {
    fn from(v: &MonogeneityVerdict) -> VerdictJson {
        VerdictJson {
            n: s(v.n),
            m: s(&v.m),
            status: status_name(v.status).into(),
            witness: v.witness.as_ref().map(|w| WitnessJson {
                i: s(w.i),
                j: s(w.j),
                d: s(&w.d),
                g: s(&w.g),
            }),
            certificate: v.certificate.as_ref().map(|(p, c)| CertificateJson {
                condition: s(c.condition),
                p: s(p),
                f_res: s(c.evidence.f_res),
                p_f: s(c.evidence.p_f),
                n_f: s(&c.evidence.n_f),
                source: source_name(c.source).into(),
            }),
            scale: v.scale.as_ref().map(s),
            conditions: v.conditions.iter().map(condition_json).collect(),
            primes: v.primes.iter().map(prime_json).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideJson {
    pub start: [String; 2],
    pub end: [String; 2],
    pub slope: String,
    pub degree: String,
    pub residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub poly: String,
    pub p: String,
    pub phi: String,
    /// `(i, ν_p(a_i))`, with `"inf"` for vanishing coefficients.
    pub points: Vec<[String; 2]>,
    pub vertices: Vec<[String; 2]>,
    pub sides: Vec<SideJson>,
    pub index: String,
    pub phi_index: String,
}

pub fn polygon_json(poly: &str, polygon: &NewtonPolygon, residuals: &[ResidualPoly]) -> PolygonJson {
    let deg = polygon.phi.degree().unwrap_or(0) as u64;
    PolygonJson {
        poly: poly.to_string(),
        p: s(polygon.p),
        phi: s(&polygon.phi),
        points: polygon.points.iter().map(|pt| [s(pt.x), s(pt.y)]).collect(),
        vertices: polygon.vertices.iter().map(|&(x, y)| [s(x), s(y)]).collect(),
        sides: polygon
            .sides
            .iter()
            .map(|side| {
                let end = side.end();
                SideJson {
                    start: [s(side.start.0), s(side.start.1)],
                    end: [s(end.0), s(end.1)],
                    slope: format!("-{}/{}", side.slope.0, side.slope.1),
                    degree: s(side.degree),
                    residual: residuals.iter().find(|r| r.side == *side).map(|r| s(&r.poly)),
                }
            })
            .collect(),
        index: s(polygon.index()),
        phi_index: s(polygon.index() * deg),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedekindJson {
    pub poly: String,
    pub p: String,
    pub factors: Vec<[String; 2]>,
    #[serde(rename = "M")]
    pub m: String,
    pub divides_index: bool,
    pub failing_factors: Vec<String>,
}

pub fn dedekind_json(poly: &str, r: &DedekindReport) -> DedekindJson {
    DedekindJson {
        poly: poly.to_string(),
        p: s(r.p),
        factors: r.factors.iter().map(|(phi, l)| [s(phi), s(l)]).collect(),
        m: s(&r.m),
        divides_index: r.divides_index,
        failing_factors: r.failing_factors.iter().map(s).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexJson {
    pub poly: String,
    pub p: String,
    pub lower_bound: String,
    pub exact: bool,
    pub per_phi: Vec<[String; 2]>,
    pub second_order: Option<String>,
    pub splitting: Option<Vec<[String; 2]>>,
}

pub fn index_json(
    poly: &str,
    b: &IndexBound,
    second_order: Option<u64>,
    splitting: Option<&[(u64, u64)]>,
) -> IndexJson {
    IndexJson {
        poly: poly.to_string(),
        p: s(b.p),
        lower_bound: s(b.lower_bound),
        exact: b.exact,
        per_phi: b.per_phi.iter().map(|(phi, v)| [s(phi), s(v)]).collect(),
        second_order: second_order.map(s),
        splitting: splitting.map(|sh| sh.iter().map(|(e, f)| [s(e), s(f)]).collect()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub poly: String,
    pub p: String,
    pub index_val: String,
    pub census: BTreeMap<String, String>,
}

pub fn oracle_json(poly: &str, p: Prime, index_val: u64, census: &ResidueCensus) -> OracleJson {
    OracleJson {
        poly: poly.to_string(),
        p: s(p),
        index_val: s(index_val),
        census: counts_json(&census.counts),
    }
}

/// Residual polynomial coefficients rendered over the residue field.
pub fn residual_coeffs(r: &ResidualPoly) -> Vec<String> {
    r.poly.coeffs().iter().map(|c| ElemDisplay(c).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pure::analyze;
    use num_bigint::BigInt;

    #[test]
    fn verdict_round_trip() {
        for (n, m) in [(48u64, 528i64), (10, 1000), (135, 2214), (6, 12)] {
            let v = analyze(n, &BigInt::from(m)).unwrap();
            let j = VerdictJson::from(&v);
            let text = serde_json::to_string(&j).unwrap();
            let back: VerdictJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, j);
            assert!(!text.contains(":0") && !text.contains(":1,"));
        }
    }

    #[test]
    fn certificate_fields() {
        let v = analyze(48, &BigInt::from(528)).unwrap();
        let j = serde_json::to_value(VerdictJson::from(&v)).unwrap();
        assert_eq!(j["status"], "NotMonogenic");
        assert_eq!(j["certificate"]["condition"], "8");
        assert_eq!(j["certificate"]["p"], "2");
        assert_eq!(j["certificate"]["P_f"], "4");
        assert_eq!(j["certificate"]["N_f"], "2");
        assert!(j["witness"].is_null());
    }
}
