use clap::Subcommand;
use serde_json::json;
use seshadri_core::curve_products::{
    certify_nef, generator_set, region_sample, slope_gap, slope_r, slope_r_limit, tangent_lines, NefCertificate,
    NefCertifier, Sampling, Verdict, Witness,
};
use seshadri_core::exact_num::{Rational, QuadExt};

use crate::doc::{CertificateDocument, CertificateEntry};
use crate::parse::{parse_class_with_notes, parse_number, parse_point, parse_range, parse_rational_arg};
use crate::{generality, genus, CliError, CmdResult, Ctx, Reply, Table, EXIT_UNKNOWN};

#[derive(Subcommand, Debug)]
pub enum CxcCmd {
    /// Decide nefness of classes with a checkable certificate.
    Certify {
        #[arg(long)]
        g: u32,
        /// Class such as "13 f1 + 13/6 f2 - d"; repeatable.
        #[arg(long = "class", required = true, allow_hyphen_values = true)]
        classes: Vec<String>,
        /// Most special point allowed: arbitrary, general or very-general.
        #[arg(long, default_value = "very-general")]
        generality: String,
        /// Sample points on each Vojta curve.
        #[arg(long)]
        samples: Option<u32>,
    },
    /// Verdicts for a f1 + b f2 - d on a grid, one row per cell.
    Region {
        #[arg(long)]
        g: u32,
        /// `lo:hi`
        #[arg(long, allow_hyphen_values = true)]
        a_range: String,
        /// `lo:hi`
        #[arg(long, allow_hyphen_values = true)]
        b_range: String,
        #[arg(long)]
        step: String,
        #[arg(long, default_value = "very-general")]
        generality: String,
    },
    /// Slope of the restricted class and its limit.
    Slope {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        n: u64,
        /// Tabulate n, n+1, ..., to.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Tangent lines from a point to the Vojta curve.
    Tangent {
        #[arg(long)]
        g: u32,
        /// `a,b`
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also report where each line meets this b.
        #[arg(long, allow_hyphen_values = true)]
        at_b: Option<String>,
    },
    /// List the generators used by the certifier.
    Generators {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value = "very-general")]
        generality: String,
        #[arg(long)]
        samples: Option<u32>,
    },
}

fn witness_text(cert: &NefCertificate) -> String {
    match &cert.witness {
        Witness::Pairing { pairing, value } => format!("{pairing} = {value}"),
        Witness::Combination(terms) if terms.is_empty() => "nonnegative combination of f1 and f2".into(),
        Witness::Combination(terms) => terms
            .iter()
            .map(|t| {
                let w = if t.weight.is_rational() { t.weight.to_string() } else { format!("({})", t.weight) };
                format!("{w} * [{}] ({})", t.generator.class, t.generator.family)
            })
            .collect::<Vec<_>>()
            .join(" + "),
        Witness::None => "none".into(),
    }
}

pub fn run(cmd: CxcCmd, ctx: &Ctx) -> CmdResult {
    match cmd {
        CxcCmd::Certify { g, classes, generality: level, samples } => {
            let gg = genus(g)?;
            let level = generality(&level)?;
            let certifier = samples.map(|n| NefCertifier::new(gg, Sampling { vojta_points: n.max(1) }));
            let mut notes = Vec::new();
            let mut entries = Vec::new();
            let mut table = String::new();
            let mut any_unknown = false;
            for text in &classes {
                let parsed = parse_class_with_notes(text)?;
                notes.extend(parsed.notes);
                let d = parsed.value;
                let cert = match &certifier {
                    Some(c) => c.certify(&d, level),
                    None => certify_nef(&d, gg, level),
                };
                any_unknown |= cert.verdict == Verdict::Unknown;
                if !table.is_empty() {
                    table.push('\n');
                }
                table.push_str(
                    &Table::new()
                        .row("class", &d)
                        .row("genus", g)
                        .row("verdict", cert.verdict)
                        .row("generality", cert.generality)
                        .row("family", &cert.family)
                        .row("witness", witness_text(&cert))
                        .render(),
                );
                entries.push(CertificateEntry::new(&d, &cert));
            }
            let document = CertificateDocument::new(ctx.command_echo(), g, level, entries);
            let json = serde_json::to_value(&document).expect("documents serialize");
            let code = if any_unknown { EXIT_UNKNOWN } else { 0 };
            Ok(Reply::new(json, table).with_code(code).with_notes(notes))
        }
        CxcCmd::Region { g, a_range, b_range, step, generality: level } => {
            let gg = genus(g)?;
            let level = generality(&level)?;
            let (alo, ahi) = parse_range(&a_range)?;
            let (blo, bhi) = parse_range(&b_range)?;
            let step = parse_rational_arg(&step)?;
            let cells = region_sample(gg, (&alo, &ahi), (&blo, &bhi), &step, level)?;
            let mut table = String::from("a\tb\tverdict\tgenerality\n");
            for c in &cells {
                table.push_str(&format!("{}\t{}\t{}\t{}\n", c.a, c.b, c.verdict, c.generality));
            }
            let rows: Vec<_> = cells
                .iter()
                .map(|c| json!({ "a": c.a.to_string(), "b": c.b.to_string(), "verdict": c.verdict.as_str(), "generality": c.generality.as_str() }))
                .collect();
            let json = json!({ "command": "cxc region", "genus": g, "max_generality": level.as_str(), "cells": rows });
            Ok(Reply::new(json, table))
        }
        CxcCmd::Slope { g, a, n, to } => {
            let gg = genus(g)?;
            let a = parse_rational_arg(&a)?;
            let limit = slope_r_limit(gg, &a)?;
            let last = to.unwrap_or(n);
            if last < n {
                return Err(CliError(format!("--to {last} is below --n {n}")));
            }
            let mut rows = Vec::new();
            let mut table = Table::new().row("limit", ctx.show_rational(&limit));
            for k in n..=last {
                let s = slope_r(gg, &a, k)?;
                let gap = slope_gap(gg, &a, k)?;
                let per = &s / Rational::from_integer(k.into());
                table = table.row(&format!("n = {k}"), format!("slope {}  per n {}  gap {}", ctx.show_rational(&s), ctx.show_rational(&per), ctx.show_rational(&gap)));
                rows.push(json!({ "n": k, "slope": ctx.num_rational(&s), "per_n": ctx.num_rational(&per), "gap": ctx.num_rational(&gap) }));
            }
            let json = json!({ "command": "cxc slope", "genus": g, "a": a.to_string(), "limit": ctx.num_rational(&limit), "rows": rows });
            Ok(Reply::new(json, table.render()))
        }
        CxcCmd::Tangent { g, point, at_b } => {
            let gg = genus(g)?;
            let (a, b) = parse_point(&point)?;
            let at_b: Option<QuadExt> = at_b.as_deref().map(parse_number).transpose()?;
            let lines = match tangent_lines(gg, (&a, &b)) {
                Ok(lines) => lines,
                Err(seshadri_core::error::Error::NoTangency) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            let mut table = String::new();
            let mut rows = Vec::new();
            for t in &lines {
                let db_da = t.db_da();
                let meet = at_b.as_ref().map(|b| t.a_at(b)).transpose()?;
                let mut tab = Table::new()
                    .row("from", format!("({}, {})", t.from.0, t.from.1))
                    .row("touch u", ctx.show(&t.touch_u))
                    .row("touch a", ctx.show(&t.touch.0))
                    .row("touch b", ctx.show(&t.touch.1))
                    .row("da/db", ctx.show(&t.da_db));
                if let Some(s) = &db_da {
                    tab = tab.row("db/da", ctx.show(s));
                }
                tab = tab.row("a intercept", ctx.show(&t.a_intercept)).row("discriminant", &t.discriminant);
                let mut row = json!({
                    "touch_u": ctx.num(&t.touch_u),
                    "touch": [ctx.num(&t.touch.0), ctx.num(&t.touch.1)],
                    "da_db": ctx.num(&t.da_db),
                    "a_intercept": ctx.num(&t.a_intercept),
                    "discriminant": t.discriminant.to_string(),
                });
                if let Some(s) = &db_da {
                    row["db_da"] = ctx.num(s);
                }
                if let (Some(b), Some(m)) = (&at_b, &meet) {
                    tab = tab.row(&format!("a at b = {b}"), ctx.show(m));
                    row["at_b"] = json!({ "b": b.to_string(), "a": ctx.num(m) });
                }
                if !table.is_empty() {
                    table.push('\n');
                }
                table.push_str(&tab.render());
                rows.push(row);
            }
            if lines.is_empty() {
                table.push_str("no tangent line with touch point in b in (1, 2]\n");
            }
            let json = json!({ "command": "cxc tangent", "genus": g, "from": [a.to_string(), b.to_string()], "tangents": rows });
            Ok(Reply::new(json, table))
        }
        CxcCmd::Generators { g, generality: level, samples } => {
            let gg = genus(g)?;
            let level = generality(&level)?;
            let sampling = Sampling { vojta_points: samples.unwrap_or(Sampling::default().vojta_points).max(1) };
            let gens = generator_set(gg, level, &sampling);
            let mut table = String::from("family\tgenerality\tclass\n");
            for gen in &gens {
                table.push_str(&format!("{}\t{}\t{}\n", gen.family, gen.generality(), gen.class));
            }
            let rows: Vec<_> = gens
                .iter()
                .map(|gen| json!({ "family": gen.family.as_str(), "generality": gen.generality().as_str(), "class": crate::doc::ClassDoc::from(&gen.class) }))
                .collect();
            let json = json!({ "command": "cxc generators", "genus": g, "max_generality": level.as_str(), "generators": rows });
            Ok(Reply::new(json, table))
        }
    }
}
