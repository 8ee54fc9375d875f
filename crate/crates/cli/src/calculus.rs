use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use serde_json::json;
use seshadri_core::seshadri_calculus::{
    ampleness_verdict, combine_lower_bounds, det_upper_bound, estimate_from_catalog, known_value,
    segre_upper_bound, toric_seshadri, AmplenessVerdict, BoundPart, CatalogEntry, CurveRestriction, ExtendedRational,
    KnownVariety, SeshadriEstimate,
};

use crate::doc::{parse_extended, read_json, CatalogDoc, EstimatesDoc, ESTIMATES_SCHEMA};
use crate::parse::{parse_bundle, parse_rational_arg, ParseError};
use crate::{CliError, CmdResult, Ctx, Reply, Table, EXIT_UNKNOWN};

#[derive(Subcommand, Debug)]
pub enum SeshadriCmd {
    /// Estimate from a catalog of curves through the point.
    Catalog {
        /// JSON catalog document.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Inline restriction `label:mult:bundle`, repeatable.
        #[arg(long = "restriction", allow_hyphen_values = true)]
        restrictions: Vec<String>,
        /// The catalog contains every curve through the point.
        #[arg(long)]
        assert_complete: bool,
    },
    /// Toric fixed-point rule from splittings on invariant lines.
    Toric {
        /// Splitting types separated by `;`, e.g. "2,1,1;2,1,1".
        #[arg(long, allow_hyphen_values = true)]
        lines: String,
    },
    /// Upper and lower bounds.
    Bounds {
        #[command(subcommand)]
        kind: BoundsCmd,
    },
    /// Ampleness verdict from per-point estimates.
    Verdict {
        /// JSON estimates document.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Inline estimate `upper[,exact][,lower=L]`, repeatable.
        #[arg(long = "estimate", allow_hyphen_values = true)]
        estimates: Vec<String>,
    },
    /// Values known for standard varieties.
    Known {
        #[arg(long, value_enum)]
        variety: Variety,
        /// Dimension of projective space.
        #[arg(long)]
        dim: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// `(s_n / (binom(n+r-1, n) mult))^(1/n)` from a Segre number.
    Segre {
        #[arg(long)]
        segre: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 1)]
        mult: u64,
    },
    /// Seshadri constant of the determinant divided by the rank.
    Det {
        #[arg(long)]
        eps_det: String,
        #[arg(long)]
        r: u64,
    },
    /// Lower bound for a tensor product of factors, powers and twists.
    Lower {
        /// `label:bound`, repeatable.
        #[arg(long = "factor", allow_hyphen_values = true)]
        factors: Vec<String>,
        /// `label:degree:bound`, repeatable.
        #[arg(long = "sym", allow_hyphen_values = true)]
        syms: Vec<String>,
        /// `label:t:bound`, repeatable.
        #[arg(long = "twist", allow_hyphen_values = true)]
        twists: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variety {
    Pn,
    Homogeneous,
    GeneralType,
    CalabiYau,
}

fn extended_json(ctx: &Ctx, x: &ExtendedRational) -> serde_json::Value {
    match x.finite() {
        Some(r) => ctx.num_rational(r),
        None => json!({ "exact": x.to_string() }),
    }
}

fn extended_show(ctx: &Ctx, x: &ExtendedRational) -> String {
    match x.finite() {
        Some(r) => ctx.show_rational(r),
        None => x.to_string(),
    }
}

fn inline_restriction(text: &str) -> Result<CurveRestriction, CliError> {
    let mut parts = text.splitn(3, ':');
    let (Some(label), Some(mult), Some(bundle)) = (parts.next(), parts.next(), parts.next()) else {
        return Err(ParseError { input: text.into(), column: 0, message: "expected `label:mult:bundle`".into() }.into());
    };
    let mult_text = mult;
    let mult: u64 = mult_text.trim().parse().map_err(|_| ParseError {
        input: text.into(),
        column: label.chars().count() + 1,
        message: format!("invalid multiplicity `{mult_text}`"),
    })?;
    let offset = label.chars().count() + mult_text.chars().count() + 2;
    let bundle = parse_bundle(bundle).map_err(|e| ParseError { input: text.into(), column: e.column + offset, message: e.message })?;
    Ok(CurveRestriction::new(label, mult, bundle)?)
}

fn inline_estimate(text: &str) -> Result<SeshadriEstimate, CliError> {
    let mut fields = text.split(',');
    let upper = parse_extended(fields.next().unwrap_or_default()).map_err(|e| CliError(format!("estimate `{text}`: {e}")))?;
    let mut est = SeshadriEstimate::upper_only(upper);
    for f in fields {
        match f.trim() {
            "exact" | "complete" => est.catalog_complete = true,
            t => match t.strip_prefix("lower=") {
                Some(l) => est.lower = Some(parse_extended(l).map_err(|e| CliError(format!("estimate `{text}`: {e}")))?),
                None => return Err(CliError(format!("estimate `{text}`: unknown field `{t}`"))),
            },
        }
    }
    Ok(est)
}

fn split_labelled(text: &str, n: usize) -> Result<Vec<String>, CliError> {
    let parts: Vec<String> = text.splitn(n, ':').map(str::to_string).collect();
    if parts.len() != n {
        let shape = if n == 2 { "label:bound" } else { "label:x:bound" };
        return Err(ParseError { input: text.into(), column: 0, message: format!("expected `{shape}`") }.into());
    }
    Ok(parts)
}

pub fn run(cmd: SeshadriCmd, ctx: &Ctx) -> CmdResult {
    match cmd {
        SeshadriCmd::Catalog { file, restrictions, assert_complete } => {
            let mut list = Vec::new();
            let mut complete = assert_complete;
            if let Some(path) = file {
                let doc: CatalogDoc = read_json(&path)?;
                complete |= doc.complete;
                list.extend(doc.restrictions()?);
            }
            for r in &restrictions {
                list.push(inline_restriction(r)?);
            }
            if list.is_empty() {
                return Err(CliError("the catalog is empty (use --file or --restriction)".into()));
            }
            let est = estimate_from_catalog(&list, complete);
            let kind = if est.catalog_complete { "exact" } else { "upper bound" };
            let curves: Vec<_> = list
                .iter()
                .map(|r| json!({ "curve": r.curve_label, "mult": r.mult_x, "value": ctx.num_rational(&r.value()) }))
                .collect();
            let json = json!({
                "command": "seshadri catalog",
                "value": extended_json(ctx, &est.upper),
                "exact": est.catalog_complete,
                "curves": curves,
            });
            let mut table = Table::new().row("seshadri", extended_show(ctx, &est.upper)).row("kind", kind);
            for r in &list {
                table = table.row(&format!("  {}", r.curve_label), ctx.show_rational(&r.value()));
            }
            Ok(Reply::new(json, table.render()))
        }
        SeshadriCmd::Toric { lines } => {
            let splittings = lines
                .split(';')
                .map(|line| {
                    line.split(',')
                        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError(format!("invalid splitting entry `{x}` in `{line}`"))))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let value = toric_seshadri(&splittings)?;
            Ok(Reply::new(json!({ "command": "seshadri toric", "seshadri": { "exact": value.to_string() } }), format!("{value}\n")))
        }
        SeshadriCmd::Bounds { kind } => run_bounds(kind, ctx),
        SeshadriCmd::Verdict { file, estimates } => {
            let mut points = Vec::new();
            if let Some(path) = file {
                let doc: EstimatesDoc = read_json(&path)?;
                if let Some(s) = &doc.schema {
                    if s != ESTIMATES_SCHEMA {
                        return Err(CliError(format!("unsupported schema `{s}` (expected {ESTIMATES_SCHEMA})")));
                    }
                }
                for p in &doc.points {
                    points.push(p.to_estimate()?);
                }
            }
            for e in &estimates {
                points.push(inline_estimate(e)?);
            }
            let verdict = ampleness_verdict(&points);
            let code = if verdict == AmplenessVerdict::Unknown { EXIT_UNKNOWN } else { 0 };
            let json = json!({ "command": "seshadri verdict", "verdict": verdict.to_string(), "points": points.len() });
            Ok(Reply::new(json, format!("{verdict}\n")).with_code(code))
        }
        SeshadriCmd::Known { variety, dim } => {
            let kind = match variety {
                Variety::Pn => KnownVariety::ProjectiveSpace(dim.ok_or_else(|| CliError("--dim is required for pn".into()))?),
                Variety::Homogeneous => KnownVariety::HomogeneousNonPn,
                Variety::GeneralType => KnownVariety::GeneralTypeOrPsefCanonical,
                Variety::CalabiYau => KnownVariety::CalabiYauLike,
            };
            let entry = known_value(kind)?;
            let value = match &entry {
                CatalogEntry::Exact(v) | CatalogEntry::UpperBound(v) => v,
            };
            let json = json!({ "command": "seshadri known", "value": extended_json(ctx, value), "note": entry.note() });
            let table = Table::new().row("seshadri", extended_show(ctx, value)).row("kind", entry.note()).render();
            Ok(Reply::new(json, table))
        }
    }
}

fn run_bounds(kind: BoundsCmd, ctx: &Ctx) -> CmdResult {
    match kind {
        BoundsCmd::Segre { segre, n, r, mult } => {
            let s = parse_rational_arg(&segre)?;
            let v = segre_upper_bound(&s, n, r, mult, &ctx.precision)?;
            let json = json!({ "command": "seshadri bounds segre", "upper": ctx.num_value(&v) });
            Ok(Reply::new(json, Table::new().row("upper", ctx.show_value(&v)).render()))
        }
        BoundsCmd::Det { eps_det, r } => {
            let v = det_upper_bound(&parse_rational_arg(&eps_det)?, r)?;
            let json = json!({ "command": "seshadri bounds det", "upper": ctx.num_rational(&v) });
            Ok(Reply::new(json, Table::new().row("upper", ctx.show_rational(&v)).render()))
        }
        BoundsCmd::Lower { factors, syms, twists } => {
            let mut parts = Vec::new();
            for f in &factors {
                let p = split_labelled(f, 2)?;
                parts.push(BoundPart::factor(p[0].clone(), parse_rational_arg(&p[1])?));
            }
            for s in &syms {
                let p = split_labelled(s, 3)?;
                let degree = p[1].trim().parse().map_err(|_| CliError(format!("invalid degree `{}` in `{s}`", p[1])))?;
                parts.push(BoundPart::SymPower { label: p[0].clone(), degree, bound: parse_rational_arg(&p[2])? });
            }
            for t in &twists {
                let p = split_labelled(t, 3)?;
                parts.push(BoundPart::Twist { label: p[0].clone(), t: parse_rational_arg(&p[1])?, bound: parse_rational_arg(&p[2])? });
            }
            if parts.is_empty() {
                return Err(CliError("give at least one --factor, --sym or --twist".into()));
            }
            let v = combine_lower_bounds(&parts)?;
            let json = json!({ "command": "seshadri bounds lower", "lower": ctx.num_rational(&v) });
            Ok(Reply::new(json, Table::new().row("lower", ctx.show_rational(&v)).render()))
        }
    }
}
