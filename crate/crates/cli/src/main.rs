use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use purindex::newton::{principal_polygon, residual_poly, ResidualPoly};
use purindex::oracle::{p_maximal_order, residue_census};
use purindex::ore::{dedekind_test, ore_index, splitting_shape};
use purindex::poly::lifted_factors;
use purindex::pure::{analyze, verify_with_oracle, MonogeneityVerdict, PureField};
use purindex::report::{self, VerdictJson};
use purindex::second_order::{n2_polygon, order2_data};
use purindex::{Error, IntPoly, Prime};

#[derive(Parser)]
#[command(name = "purindex", version, about = "Index valuations and monogeneity of pure number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Decide monogeneity of Q(m^(1/n)) where possible.
    Analyze {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        m: BigInt,
        /// Re-check the verdict with the p-maximal order computation.
        #[arg(long, value_enum)]
        verify: Option<Check>,
    },
    /// Principal φ-Newton polygon with residual polynomials.
    Polygon {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
        /// Defaults to every lifted irreducible factor of f mod p.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Dedekind's criterion at p.
    Dedekind {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
    },
    /// Ore's index bound, second-order refinement and splitting shape.
    Index {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
    },
    /// p-maximal order: index valuation and residue degree census.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
    },
    /// Analyze every irreducible x^n - m in a box, optionally cross-checked.
    Sweep {
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        m_max: u64,
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
}

#[derive(Args)]
struct Input {
    /// Degree of x^n - m.
    #[arg(long, requires = "m", conflicts_with = "poly")]
    n: Option<u64>,
    #[arg(long, allow_negative_numbers = true, requires = "n")]
    m: Option<BigInt>,
    /// Monic integer polynomial in x, e.g. "x^14 - 41".
    #[arg(long)]
    poly: Option<String>,
}

impl Input {
    fn polynomial(&self) -> Result<IntPoly, Error> {
        match (&self.n, &self.m, &self.poly) {
            (Some(n), Some(m), None) => Ok(PureField::new(*n, m.clone())?.polynomial().clone()),
            (None, None, Some(text)) => {
                let f: IntPoly = text.parse()?;
                if !f.is_monic() || f.degree().unwrap_or(0) < 1 {
                    return Err(Error::InvalidArgument(format!("{f} must be monic of positive degree")));
                }
                Ok(f)
            }
            _ => Err(Error::InvalidArgument("give either --n and --m, or --poly".into())),
        }
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => print!("{}", text()),
    }
}

fn verdict_text(v: &MonogeneityVerdict) -> String {
    let mut out = format!("x^{} - ({}): {}\n", v.n, v.m, report::status_name(v.status));
    if let Some(w) = &v.witness {
        out += &format!("  generator alpha^{}/{} with minimal polynomial {}\n", w.i, w.d, w.g);
    }
    if let Some((p, c)) = &v.certificate {
        out += &format!(
            "  condition ({}) at p = {p}: P_{} = {} > N_{} = {} ({} census)\n",
            c.condition,
            c.evidence.f_res,
            c.evidence.p_f,
            c.evidence.f_res,
            c.evidence.n_f,
            report::source_name(c.source)
        );
    }
    for c in &v.conditions {
        if !c.certified {
            let census: Vec<String> = c.census.iter().map(|(f, k)| format!("{k} of degree {f}")).collect();
            out += &format!(
                "  condition ({}) holds at p = {} but the census ({}) has no P_f > N_f\n",
                c.condition,
                c.p,
                census.join(", ")
            );
        }
    }
    for r in &v.primes {
        let exact = r.index_exact.map_or("unknown".to_string(), |x| x.to_string());
        out += &format!(
            "  p = {}: Dedekind {}, v_p(ind) >= {}, exact {}\n",
            r.profile.p,
            if r.dedekind_divides_index { "fails" } else { "passes" },
            r.index_lower,
            exact
        );
    }
    out
}

#[derive(Serialize)]
struct Verification {
    consistent: bool,
    detail: String,
}

#[derive(Serialize)]
struct AnalyzeOutput {
    #[serde(flatten)]
    verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Verification>,
}

fn run_analyze(format: Format, n: u64, m: BigInt, verify: Option<Check>) -> Result<(), Error> {
    let verdict = analyze(n, &m)?;
    let mut out = AnalyzeOutput {
        verdict: VerdictJson::from(&verdict),
        verification: None,
    };
    let mut text = verdict_text(&verdict);
    if verify.is_some() {
        let check = verify_with_oracle(&verdict)?;
        text += &format!("  oracle: {} ({})\n", if check.consistent { "confirmed" } else { "MISMATCH" }, check.detail);
        out.verification = Some(Verification {
            consistent: check.consistent,
            detail: check.detail,
        });
    }
    emit(format, &out, || text);
    Ok(())
}

fn run_polygon(format: Format, f: &IntPoly, p: Prime, phi: Option<&str>) -> Result<(), Error> {
    let phis: Vec<IntPoly> = match phi {
        Some(text) => vec![text.parse()?],
        None => lifted_factors(f, p)?.into_iter().map(|(phi, _, _)| phi).collect(),
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for phi in &phis {
        let polygon = principal_polygon(f, phi, p)?;
        let residuals: Vec<ResidualPoly> = polygon
            .sides
            .iter()
            .map(|s| residual_poly(&polygon, s))
            .collect::<Result<_, _>>()?;
        text += &format!("{f} at p = {p}, phi = {phi}\n  vertices:");
        for (x, y) in &polygon.vertices {
            text += &format!(" ({x},{y})");
        }
        text += "\n";
        for r in &residuals {
            text += &format!("  side {}: residual {}\n", r.side, r.poly);
        }
        text += &format!("  index {}\n", polygon.index());
        reports.push(report::polygon_json(&f.to_string(), &polygon, &residuals));
    }
    if phi.is_some() {
        emit(format, &reports[0], || text);
    } else {
        emit(format, &reports, || text);
    }
    Ok(())
}

fn run_dedekind(format: Format, f: &IntPoly, p: Prime) -> Result<(), Error> {
    let r = dedekind_test(f, p)?;
    let json = report::dedekind_json(&f.to_string(), &r);
    emit(format, &json, || {
        format!(
            "{f} at p = {p}: M = {}, p {} the index\n",
            r.m,
            if r.divides_index { "divides" } else { "does not divide" }
        )
    });
    Ok(())
}

fn run_index(format: Format, f: &IntPoly, p: Prime) -> Result<(), Error> {
    let b = ore_index(f, p)?;
    let second = if b.exact {
        None
    } else {
        order2_data(f, p)
            .ok()
            .and_then(|d| n2_polygon(f, &d).ok())
            .map(|np| b.lower_bound + np.index())
    };
    let shape = if b.exact { Some(splitting_shape(f, p)?.primes) } else { None };
    let json = report::index_json(&f.to_string(), &b, second, shape.as_deref());
    emit(format, &json, || {
        let mut out = format!(
            "{f} at p = {p}: v_p(ind) {} {}\n",
            if b.exact { "=" } else { ">=" },
            b.lower_bound
        );
        if let Some(v) = second {
            out += &format!("  with second order: >= {v}\n");
        }
        if let Some(sh) = &shape {
            let parts: Vec<String> = sh.iter().map(|(e, f)| format!("(e={e}, f={f})")).collect();
            out += &format!("  primes above p: {}\n", parts.join(" "));
        }
        out
    });
    Ok(())
}

fn run_oracle(format: Format, f: &IntPoly, p: Prime) -> Result<(), Error> {
    let (order, v) = p_maximal_order(f, p)?;
    let census = residue_census(&order, p)?;
    let json = report::oracle_json(&f.to_string(), p, v, &census);
    emit(format, &json, || {
        let parts: Vec<String> = census.counts.iter().map(|(f, k)| format!("{k} of degree {f}")).collect();
        format!("{f} at p = {p}: v_p(ind) = {v}; primes above p: {}\n", parts.join(", "))
    });
    Ok(())
}

#[derive(Serialize)]
struct SweepItem {
    n: String,
    m: String,
    status: String,
    mismatches: Vec<String>,
}

#[derive(Serialize)]
struct SweepReport {
    items: Vec<SweepItem>,
    irreducible: String,
    reducible: String,
    mismatches: String,
}

fn sweep_item(n: u64, m: i64, check: bool) -> Option<Result<SweepItem, Error>> {
    let field = match PureField::new(n, BigInt::from(m)) {
        Ok(f) => f,
        Err(_) => return None,
    };
    Some((|| {
        let v = analyze(n, field.m())?;
        let mut mismatches = Vec::new();
        if v.witness.is_some() && v.certificate.is_some() {
            mismatches.push("both witness and certificate".to_string());
        }
        if check {
            let mut all_zero = true;
            for r in &v.primes {
                let p = r.profile.p;
                let oracle = purindex::oracle::index_valuation(field.polynomial(), p)?;
                all_zero &= oracle == 0;
                if oracle < r.index_lower {
                    mismatches.push(format!("p={p}: oracle {oracle} below bound {}", r.index_lower));
                }
                if let Some(x) = r.index_exact {
                    if x != oracle {
                        mismatches.push(format!("p={p}: polygons {x}, oracle {oracle}"));
                    }
                }
            }
            if all_zero != v.closedness.closed {
                mismatches.push(format!("closedness {} but oracle says {all_zero}", v.closedness.closed));
            }
            let c = verify_with_oracle(&v)?;
            if !c.consistent {
                mismatches.push(c.detail);
            }
        }
        Ok(SweepItem {
            n: n.to_string(),
            m: m.to_string(),
            status: report::status_name(v.status).to_string(),
            mismatches,
        })
    })())
}

fn run_sweep(format: Format, n_min: u64, n_max: u64, m_max: u64, check: bool) -> Result<(), Error> {
    let m_max = m_max as i64;
    let inputs: Vec<(u64, i64)> = (n_min.max(2)..=n_max)
        .flat_map(|n| (-m_max..=m_max).filter(|&m| m != 0 && m != 1).map(move |m| (n, m)))
        .collect();
    let results: Vec<Option<Result<SweepItem, Error>>> =
        inputs.par_iter().map(|&(n, m)| sweep_item(n, m, check)).collect();
    let reducible = results.iter().filter(|r| r.is_none()).count();
    let items: Vec<SweepItem> = results.into_iter().flatten().collect::<Result<_, _>>()?;
    let mismatches: usize = items.iter().map(|i| i.mismatches.len()).sum();
    let summary = SweepReport {
        irreducible: items.len().to_string(),
        reducible: reducible.to_string(),
        mismatches: mismatches.to_string(),
        items,
    };
    emit(format, &summary, || {
        let mut out = String::new();
        for i in &summary.items {
            out += &format!("x^{} - ({}): {}", i.n, i.m, i.status);
            for mm in &i.mismatches {
                out += &format!(" MISMATCH {mm}");
            }
            out += "\n";
        }
        out += &format!(
            "{} irreducible, {} reducible, {} mismatches\n",
            summary.irreducible, summary.reducible, summary.mismatches
        );
        out
    });
    Ok(())
}

fn prime(p: u64) -> Result<Prime, Error> {
    Prime::new(p)
}

fn run(cli: Cli) -> Result<(), Error> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { n, m, verify } => run_analyze(format, n, m, verify),
        Command::Polygon { input, p, phi } => run_polygon(format, &input.polynomial()?, prime(p)?, phi.as_deref()),
        Command::Dedekind { input, p } => run_dedekind(format, &input.polynomial()?, prime(p)?),
        Command::Index { input, p } => run_index(format, &input.polynomial()?, prime(p)?),
        Command::Oracle { input, p } => run_oracle(format, &input.polynomial()?, prime(p)?),
        Command::Sweep {
            n_min,
            n_max,
            m_max,
            check,
        } => run_sweep(format, n_min, n_max, m_max, check.is_some()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
