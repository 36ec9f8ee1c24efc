//! Command-line surface: every module as a deterministic JSON or text report.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::complex::DEFAULT_PRECISION_BITS;
use crate::algebra::parse_rational;
use crate::error::{Error, Result};
use crate::family::{
    check_domain, curve_report, e_is_it_plus_two_variant_holds, fixed_point_count, quotient_map,
    verify_quotient_identity, CurveLabel, CurveReport, DomainFlags, FamilyParams, FixedPointData, InvolutionLabel,
};
use crate::isogeny::{dual_nonisomorphism_check, CurvePoint, KernelPoint, WeierstrassCurve};
use crate::moduli::{phi_consistency_report, prym_fiber_invariants, PrymFiberInvariants};
use crate::periods::periods_report;
use crate::projline::{normalize_tuple, MarkedTuple, MarkingConvention};
use crate::selftest::run_all;
use crate::torsion::{automorphism_example_report, duality_chain, factor_intersections};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "kleinprym",
    version,
    about = "Klein coverings of genus-3 hyperelliptic curves and their Prym varieties"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct ParamArgs {
    /// Rational parameter a, as p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Rational parameter b, as p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

impl ParamArgs {
    fn params(&self) -> Result<FamilyParams> {
        check_domain(&parse_rational(&self.a)?, &parse_rational(&self.b)?)
    }
}

fn parse_convention(s: &str) -> std::result::Result<MarkingConvention, String> {
    MarkingConvention::parse(s).map_err(|e| e.to_string())
}

/// Accepts an integer or an integral float.
fn parse_bits(s: &str) -> std::result::Result<usize, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if x.fract() != 0.0 || !(0.0..=1e6).contains(&x) {
        return Err(format!("bits must be a nonnegative integer, got {s:?}"));
    }
    Ok(x as usize)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quotient curves, genera, fixed points, j-invariants and quotient identities.
    Analyze(ParamArgs),
    /// Normalize a marked tuple `x1,x2;p,q,r!k` to family parameters.
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
        #[arg(long, value_parser = parse_convention, default_value = "pair-unordered")]
        convention: MarkingConvention,
    },
    /// The deck involution, its fiber invariants and the consistency report.
    Involution {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_convention, default_value = "pair-unordered")]
        convention: MarkingConvention,
    },
    /// Period lattices, analytic j-invariants and the Prym period matrix.
    Periods {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_bits, env = "KLEINPRYM_DEFAULT_BITS")]
        bits: Option<usize>,
    },
    /// Factor intersections of ker phi_H and the duality chain for one d.
    Torsion {
        #[arg(long)]
        d: u32,
    },
    /// Certificate that a product quotient is not isomorphic to its dual.
    Duality {
        /// Curve y^2 = x^3 + p x + q, as p,q.
        #[arg(long = "curveE", alias = "curve-e", allow_hyphen_values = true)]
        curve_e: String,
        /// Kernel point x,y on the first curve.
        #[arg(long = "pointP", alias = "point-p", allow_hyphen_values = true)]
        point_p: String,
        #[arg(long = "curveF", alias = "curve-f", allow_hyphen_values = true)]
        curve_f: String,
        #[arg(long = "pointQ", alias = "point-q", allow_hyphen_values = true)]
        point_q: String,
        /// Assert that the two curves are not isogenous.
        #[arg(long)]
        assert_nonisogenous: bool,
    },
    /// The order-4 automorphism example on E x E with E: y^2 = x^3 + x.
    ExampleSurj,
    /// The full acceptance suite.
    Selftest,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    statement: &'static str,
    report: T,
}

#[derive(Serialize)]
struct JEntry {
    label: CurveLabel,
    j: String,
}

#[derive(Serialize)]
struct IdentityVerdict {
    target: CurveLabel,
    holds: bool,
}

#[derive(Serialize)]
struct AnalyzeReport {
    params: FamilyParams,
    flags: DomainFlags,
    curves: Vec<CurveReport>,
    fixed_point_profile: Vec<usize>,
    fixed_points: Vec<FixedPointData>,
    j_invariants: Vec<JEntry>,
    quotient_identities: Vec<IdentityVerdict>,
    e_is_it_plus_two_variant_holds: bool,
}

fn analyze(params: &FamilyParams) -> Result<AnalyzeReport> {
    let curves = CurveLabel::ALL.iter().map(|&l| curve_report(l, params)).collect::<Result<Vec<_>>>()?;
    let fixed_points: Vec<FixedPointData> =
        InvolutionLabel::PROFILE.iter().map(|&i| fixed_point_count(i, params)).collect();
    let j_invariants = CurveLabel::ELLIPTIC
        .iter()
        .map(|&l| {
            let r = curve_report(l, params)?;
            let j = r.j.ok_or_else(|| Error::InternalInvariant(format!("{} has no j-invariant", l.name())))?;
            Ok(JEntry { label: l, j })
        })
        .collect::<Result<Vec<_>>>()?;
    let quotient_identities = CurveLabel::QUOTIENTS
        .iter()
        .map(|&l| Ok(IdentityVerdict { target: l, holds: verify_quotient_identity(&quotient_map(l)?, params) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalyzeReport {
        params: params.clone(),
        flags: params.flags(),
        curves,
        fixed_point_profile: fixed_points.iter().map(|f| f.count).collect(),
        fixed_points,
        j_invariants,
        quotient_identities,
        e_is_it_plus_two_variant_holds: e_is_it_plus_two_variant_holds(params),
    })
}

#[derive(Serialize)]
struct InvolutionReport {
    fiber_invariants: PrymFiberInvariants,
    fiber_invariants_match: bool,
    consistency: crate::moduli::PhiConsistencyReport,
}

#[derive(Serialize)]
struct TorsionReport {
    intersections: crate::torsion::IntersectionReport,
    duality_chain: crate::torsion::DualityReport,
}

fn envelope<T: Serialize>(command: &'static str, statement: &'static str, report: T) -> Result<Value> {
    serde_json::to_value(Envelope { command, statement, report })
        .map_err(|e| Error::InternalInvariant(format!("serialization failed: {e}")))
}

fn execute(cmd: &Command) -> Result<(Value, bool)> {
    Ok(match cmd {
        Command::Analyze(p) => {
            (envelope("analyze", "quotient curves of the Klein covering", analyze(&p.params()?)?)?, true)
        }
        Command::Normalize { tuple, convention } => {
            let t = MarkedTuple::parse(tuple)?;
            #[derive(Serialize)]
            struct R {
                tuple: MarkedTuple,
                convention: &'static str,
                normalizations: Vec<crate::projline::Normalization>,
            }
            let r = R { normalizations: normalize_tuple(&t, *convention)?, tuple: t, convention: convention.name() };
            (envelope("normalize", "marked tuple normalization", r)?, true)
        }
        Command::Involution { params, convention } => {
            let p = params.params()?;
            let consistency = phi_consistency_report(&p, *convention)?;
            let here = prym_fiber_invariants(&p)?;
            let there = prym_fiber_invariants(&consistency.phi_params)?;
            let r = InvolutionReport { fiber_invariants_match: here == there, fiber_invariants: here, consistency };
            (envelope("involution", "deck involution of the Prym map", r)?, true)
        }
        Command::Periods { params, bits } => {
            let r = periods_report(&params.params()?, bits.unwrap_or(DEFAULT_PRECISION_BITS))?;
            (envelope("periods", "period matrix of the Prym surface", r)?, true)
        }
        Command::Torsion { d } => {
            let r = TorsionReport { intersections: factor_intersections(*d)?, duality_chain: duality_chain(*d)? };
            (envelope("torsion", "factor intersections and duality chain", r)?, true)
        }
        Command::Duality { curve_e, point_p, curve_f, point_q, assert_nonisogenous } => {
            let e = WeierstrassCurve::parse(curve_e)?;
            let f = WeierstrassCurve::parse(curve_f)?;
            let p = KernelPoint::new(&e, CurvePoint::parse(point_p)?)?;
            let q = KernelPoint::new(&f, CurvePoint::parse(point_q)?)?;
            let r = dual_nonisomorphism_check(&e, &p, &f, &q, *assert_nonisogenous)?;
            (envelope("duality", "product quotient not isomorphic to its dual", r)?, true)
        }
        Command::ExampleSurj => {
            (envelope("example-surj", "order-4 automorphism example", automorphism_example_report()?)?, true)
        }
        Command::Selftest => {
            let r = run_all()?;
            let ok = r.all_passed;
            (envelope("selftest", "acceptance suite", r)?, ok)
        }
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(x, &p, out);
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push_str(&format!("{path}: [{}]\n", a.iter().map(scalar).collect::<Vec<_>>().join(", ")));
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &format!("{path}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{path}: {}\n", scalar(other))),
    }
}

/// Text projection of a JSON report: one `path: value` line per leaf.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, "", &mut out);
    out
}

fn render(v: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(v)
            .map(|s| s + "\n")
            .map_err(|e| Error::InternalInvariant(format!("serialization failed: {e}"))),
        Format::Text => Ok(to_text(v)),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit code, stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (1, String::new(), text) };
        }
    };
    match execute(&cli.command).and_then(|(v, ok)| Ok((render(&v, cli.format)?, ok))) {
        Ok((out, true)) => (0, out, String::new()),
        Ok((out, false)) => (1, out, "error: acceptance suite failed\n".into()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
