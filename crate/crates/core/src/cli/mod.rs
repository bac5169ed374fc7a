//! Command-line front end: argument parsing, command dispatch and reports.

pub mod census;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::germclass::{
    classify, count_orbits, discriminant_report, legal_signatures, local_degree, normal_form,
    planar_coefficients, rank_of_linear_part, stratum_codim, target_direction,
    to_standard_position, Discriminant, GermClass, LocalDegree, Tag,
};
use crate::jetalg::{scalar, JetMap, Matrix, TruncPoly, MAX_ORDER};
use crate::multigerm::{self, MultiJet, Tangency, MAX_BRANCHES};
use crate::tangent::{self, UnfoldingSpec};
use census::{parse_constraints, run_census, CensusSpec};
use parse::{identifiers, infer_n, parse_components, parse_jet, Vars};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "jetclass", version, about = "Classify jets of map germs to the plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one jet `(f1, f2)` in z1..zn, x, y.
    Classify(ClassifyArgs),
    /// Admissibility and bad events of a multijet.
    Multigerm(MultigermArgs),
    /// Tangent space codimension and unfolding universality.
    Tangent(TangentArgs),
    /// Frequencies of classification verdicts over random integer jets.
    Census(CensusArgs),
    /// Print the normal form of a singularity type.
    NormalForm(NormalFormArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub expr: String,
    /// Number of extra variables z1..zn; inferred when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Number of discriminant sample points.
    #[arg(long, default_value_t = 9)]
    pub samples: usize,
    /// Also write the discriminant samples as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MultigermArgs {
    #[arg(required = true)]
    pub exprs: Vec<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
}

#[derive(Debug, Args)]
pub struct TangentArgs {
    pub expr: String,
    /// Source variables, comma separated; defaults to those occurring in
    /// the expression, in the order z1..zn, x, y.
    #[arg(long)]
    pub vars: Option<String>,
    /// Number of extra variables z1..zn when `--vars` is not given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Truncation degrees: `4`, `4..6` or `4,6`.
    #[arg(long, default_value = "4")]
    pub degrees: String,
    /// Unfolding `(u, F(u, x))` whose universality is tested.
    #[arg(long)]
    pub unfolding: Option<String>,
    /// Unfolding parameters, comma separated; defaults to the new variables
    /// of the unfolding in alphabetical order.
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Coefficients are drawn uniformly from [-M, M].
    #[arg(long, default_value_t = 9)]
    pub range: u32,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `N`, `B2`, `B3`, `B4`, `C`, or `b2=0`, `b3=0`, `b4=0`, `c=0`,
    /// `d1=0`, `d2=0`.
    #[arg(long)]
    pub constraint: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct NormalFormArgs {
    /// fold, cusp, swallowtail, lips or beak-to-beak.
    pub tag: String,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Absolute signature of the quadratic form; the largest legal value by
    /// default.
    #[arg(long)]
    pub signature: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
}

/// Exit status for an error: 1 for bad input, 2 for internal failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidConstraint(_)
        | Error::DegreeTooLarge(..)
        | Error::TooManyBranches(..)
        | Error::NonzeroConstant
        | Error::OrderTooSmall { .. }
        | Error::OrderMismatch(..)
        | Error::DimensionMismatch(_)
        | Error::VariableOutOfRange { .. }
        | Error::MalformedUnfolding(_)
        | Error::InvalidSignature { .. }
        | Error::Precondition(_) => 1,
        _ => 2,
    }
}

/// Parse arguments, run the command and write the report.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let rendered = match execute(&cli) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{rendered}"),
    }
    0
}

/// Run a parsed command and render its report.
pub fn execute(cli: &Cli) -> Result<String> {
    let report = match &cli.command {
        Command::Classify(a) => cmd_classify(a)?,
        Command::Multigerm(a) => cmd_multigerm(a)?,
        Command::Tangent(a) => cmd_tangent(a)?,
        Command::Census(a) => cmd_census(a)?,
        Command::NormalForm(a) => cmd_normal_form(a)?,
    };
    Ok(match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    })
}

fn check_order(order: u32) -> Result<()> {
    if order < 4 {
        return Err(Error::OrderTooSmall { min: 4, got: order });
    }
    if order > MAX_ORDER {
        return Err(Error::DegreeTooLarge(order, MAX_ORDER));
    }
    Ok(())
}

fn resolve_n(given: Option<usize>, texts: &[&str]) -> Result<usize> {
    let inferred = infer_n(texts.iter().copied())?;
    match given {
        Some(n) if n < inferred => Err(Error::DimensionMismatch(format!(
            "--n {n} is smaller than the highest variable z{inferred}"
        ))),
        Some(n) => Ok(n),
        None => Ok(inferred),
    }
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|c| json!(scalar::to_text(c))).collect()))
            .collect(),
    )
}

fn uni_text(p: &TruncPoly) -> String {
    p.to_text(&["t"])
}

fn discriminant_json(d: &Discriminant, samples: usize) -> Value {
    let pts: Vec<Value> = d
        .samples(samples)
        .iter()
        .map(|row| json!(row.iter().map(scalar::to_text).collect::<Vec<_>>()))
        .collect();
    match d {
        Discriminant::Empty => json!({"kind": "empty"}),
        Discriminant::Point => json!({"kind": "point", "samples": pts}),
        Discriminant::Curve { x, y } => json!({
            "kind": "curve",
            "x": uni_text(x),
            "y": uni_text(y),
            "samples": pts,
        }),
        Discriminant::Branches(bs) => json!({
            "kind": "branches",
            "branches": bs.iter().map(|b| json!({
                "slope": b.slope.to_text(),
                "image_cubic": b.image_cubic.to_text(),
            })).collect::<Vec<_>>(),
        }),
    }
}

fn class_json(c: &GermClass) -> Value {
    json!({
        "tag": c.tag.name(),
        "abs_signature": c.abs_signature,
        "unclassified_reason": c.unclassified_reason.map(|r| format!("{r:?}")),
        "detail": c.unclassified_reason.map(|r| r.name()),
    })
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Report> {
    check_order(a.order)?;
    let n = resolve_n(a.n, &[&a.expr])?;
    let vars = Vars::standard(n);
    let names = vars.names();
    let f = parse_jet(&a.expr, &vars, a.order)?;
    if f.target_dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a pair (f1, f2), got {} components",
            f.target_dim()
        )));
    }
    let class = classify(&f)?;
    let rank = rank_of_linear_part(&f)?;
    let mut results = json!({
        "class": class_json(&class),
        "rank": rank,
        "direction": target_direction(&f).map(|d| d.to_string()),
        "standard_position": null,
        "planar_coefficients": null,
        "stratum_codim": null,
        "orbit_count": null,
        "discriminant": null,
        "local_degree": null,
    });
    if rank == 1 {
        let sp = to_standard_position(&f)?;
        results["standard_position"] = json!({
            "reduced": sp.reduced.to_text(&names),
            "hessian_nullity": sp.hessian_nullity,
            "restricted_hessian": matrix_json(&sp.restricted_hessian),
            "quad_form": sp.quad_form.as_ref().map(matrix_json),
            "residual": sp.residual.as_ref().map(|r| r.to_text(&["x", "y"])),
        });
        let planar = if n == 0 {
            Some(planar_coefficients(&sp.reduced)?)
        } else {
            sp.residual.as_ref().map(planar_coefficients).transpose()?
        };
        results["planar_coefficients"] = serde_json::to_value(planar).expect("serializable");
    }
    if class.tag != Tag::Unclassified {
        results["stratum_codim"] = json!(stratum_codim(class.tag, n)?);
        results["orbit_count"] = json!(count_orbits(n, class.tag)?);
        results["local_degree"] = match local_degree(&f)? {
            LocalDegree::Value(d) => json!(d),
            LocalDegree::NotDefined => json!("not defined"),
        };
        if n == 0 {
            let d = discriminant_report(&f)?;
            results["discriminant"] = discriminant_json(&d, a.samples);
            if let Some(path) = &a.csv {
                std::fs::write(path, d.to_csv(a.samples)).map_err(|e| {
                    Error::Precondition(format!("cannot write {}: {e}", path.display()))
                })?;
            }
        }
    }
    Ok(Report::new(
        "classify",
        json!({
            "expr": a.expr,
            "n": n,
            "order": a.order,
            "jet": f.to_text(&names),
            "samples": a.samples,
        }),
        results,
    ))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn tangency_json(t: Tangency) -> Value {
    match t {
        Tangency::Order(k) => json!(k),
        Tangency::Unknown => json!("unknown"),
    }
}

fn cmd_multigerm(a: &MultigermArgs) -> Result<Report> {
    check_order(a.order)?;
    if a.exprs.len() > MAX_BRANCHES {
        return Err(Error::TooManyBranches(a.exprs.len(), MAX_BRANCHES));
    }
    let texts: Vec<&str> = a.exprs.iter().map(String::as_str).collect();
    let n = resolve_n(a.n, &texts)?;
    let vars = Vars::standard(n);
    let branches = a
        .exprs
        .iter()
        .map(|e| parse_jet(e, &vars, a.order))
        .collect::<Result<Vec<_>>>()?;
    let m = MultiJet::new(branches)?;
    let adm = multigerm::is_admissible(&m)?;
    let bad = multigerm::bad_event_analysis(&m)?;
    let census = if m.len() >= 2 {
        serde_json::to_value(multigerm::two_branch_census(&m)?).expect("serializable")
    } else {
        Value::Null
    };
    let bounds = if bad.size_s >= 1 {
        serde_json::to_value(multigerm::codim_bounds(bad.size_s, bad.complexity_k, n)?)
            .expect("serializable")
    } else {
        Value::Null
    };
    let branches: Vec<Value> = adm
        .branch_summaries
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "branch": i + 1,
                "class": class_json(&b.class),
                "direction": b.direction.as_ref().map(|d| d.to_string()),
                "fold_image_graph": b.fold_curve.as_ref().map(|c| uni_text(&c.target_graph)),
            })
        })
        .collect();
    let results = json!({
        "branches": branches,
        "admissible": adm.admissible,
        "stratum_label": adm.stratum_label,
        "violated_clause": adm.violated_clause.map(|c| json!({
            "clause": format!("{c:?}"),
            "description": c.description(),
        })),
        "tangency_pairs": adm.tangency_pairs.iter().map(|(i, j, t)| json!({
            "branches": [i + 1, j + 1],
            "order": tangency_json(*t),
        })).collect::<Vec<_>>(),
        "bad_events": {
            "minimal": bad.minimal_bad_events.iter().map(|e| one_based(e)).collect::<Vec<_>>(),
            "all": bad.bad_events.iter().map(|e| one_based(e)).collect::<Vec<_>>(),
            "size": bad.size_s,
            "complexity": bad.complexity_k,
            "case_tags": bad.case_tags.iter().map(|t| t.map(|t| t.roman())).collect::<Vec<_>>(),
        },
        "two_branch_census": census,
        "codim_bounds": bounds,
    });
    Ok(Report::new(
        "multigerm",
        json!({
            "exprs": a.exprs,
            "n": n,
            "order": a.order,
        }),
        results,
    ))
}

/// `4`, `4..6`, `4..=6` or `4,5,6`.
pub fn parse_degrees(text: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parse {
        pos: 1,
        msg: format!("cannot read degrees `{text}`"),
    };
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let mut out = Vec::new();
    for part in text.split(',') {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(part)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if let Some(&d) = out.iter().find(|&&d| d > MAX_ORDER) {
        return Err(Error::DegreeTooLarge(d, MAX_ORDER));
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn split_names(text: &str) -> Vars {
    Vars::new(text.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

fn cmd_tangent(a: &TangentArgs) -> Result<Report> {
    let degrees = parse_degrees(&a.degrees)?;
    let max_d = *degrees.last().expect("nonempty");
    let order = a.order.max(max_d + 1);
    let vars = match &a.vars {
        Some(v) => split_names(v),
        None => {
            let n = resolve_n(a.n, &[&a.expr])?;
            let used = identifiers(&a.expr)?;
            let all = Vars::standard(n);
            Vars::new(all.names().into_iter().filter(|v| used.contains(*v)))
        }
    };
    if vars.is_empty() {
        return Err(Error::DimensionMismatch("the germ uses no variables".into()));
    }
    let f = parse_jet(&a.expr, &vars, order)?;
    let report = tangent::tangent_codim_over(&f, &degrees)?;
    let mut universality = Value::Null;
    let mut params_used = Value::Null;
    if let Some(unf) = &a.unfolding {
        let params = match &a.params {
            Some(p) => split_names(p),
            None => Vars::new(
                identifiers(unf)?
                    .into_iter()
                    .filter(|id| vars.index(id).is_none()),
            ),
        };
        let all = params.concat(&vars);
        let comps = parse_components(unf, &all, order)?;
        let spec = UnfoldingSpec::new(f.clone(), params.len(), JetMap::new(comps)?)?;
        let per_degree = degrees
            .iter()
            .map(|&d| {
                let u = tangent::is_universal_unfolding(&spec, d)?;
                Ok(json!({
                    "degree": d,
                    "universal": u.universal,
                    "ambient_dim": u.ambient_dim,
                    "rank": u.rank,
                    "deficiency": u.deficiency,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        universality = Value::Array(per_degree);
        params_used = json!(params.names());
    }
    let results = json!({
        "variables": vars.names(),
        "degree": report.degree,
        "ambient_dim": report.ambient_dim,
        "generators_j": report.generators_j,
        "generators_tau": report.generators_tau,
        "rank": report.rank,
        "codim": report.codim,
        "stabilization": report.stabilization.iter().map(|(d, c)| json!({
            "degree": d,
            "codim": c,
        })).collect::<Vec<_>>(),
        "parameters": params_used,
        "universality": universality,
    });
    Ok(Report::new(
        "tangent",
        json!({
            "expr": a.expr,
            "degrees": degrees,
            "order": order,
            "unfolding": a.unfolding,
        }),
        results,
    ))
}

fn cmd_census(a: &CensusArgs) -> Result<Report> {
    check_order(a.order)?;
    let constraints = parse_constraints(&a.constraint)?;
    let spec = CensusSpec {
        n: a.n,
        range: a.range,
        constraints,
        samples: a.samples,
        seed: a.seed,
        workers: a.workers,
        order: a.order,
    };
    let counts = run_census(&spec)?;
    let tags: serde_json::Map<String, Value> = Tag::ALL
        .iter()
        .map(|&t| (t.name().to_string(), json!(counts.count(t))))
        .collect();
    let fractions: serde_json::Map<String, Value> = Tag::ALL
        .iter()
        .map(|&t| (t.name().to_string(), json!(counts.fraction(counts.count(t)))))
        .collect();
    let results = json!({
        "total": counts.total,
        "counts": tags,
        "fractions": fractions,
        "classes": counts.by_class,
        "unclassified_reasons": counts.by_reason,
        "errors": counts.errors,
    });
    Ok(Report::new(
        "census",
        json!({
            "n": spec.n,
            "order": spec.order,
            "range": spec.range,
            "samples": spec.samples,
            "seed": spec.seed,
            "workers": spec.workers,
            "constraints": spec.constraints.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        results,
    ))
}

fn cmd_normal_form(a: &NormalFormArgs) -> Result<Report> {
    check_order(a.order)?;
    let tag = Tag::from_name(&a.tag)
        .filter(|t| t.is_singular())
        .ok_or_else(|| Error::Parse {
            pos: 1,
            msg: format!("unknown singularity type `{}`", a.tag),
        })?;
    let sig = match a.signature {
        Some(s) => s,
        None => *legal_signatures(tag, a.n)
            .last()
            .expect("some signature is legal"),
    };
    let f = normal_form(tag, a.n, sig, a.order)?;
    let vars = Vars::standard(a.n);
    Ok(Report::new(
        "normal-form",
        json!({
            "tag": tag.name(),
            "n": a.n,
            "signature": sig,
            "order": a.order,
        }),
        json!({
            "jet": f.to_text(&vars.names()),
            "class": class_json(&classify(&f)?),
            "stratum_codim": stratum_codim(tag, a.n)?,
        }),
    ))
}
