use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::{json, Value};
use seshadri_core::curve_bundles::{
    det, dual, hn_polygon, is_ample, is_nef, mu_max, mu_min, seshadri_on_curve, sym, tensor, twist, CurveBundle,
};

use crate::doc::{read_json, BundleDoc};
use crate::parse::{parse_bundle, parse_rational_arg};
use crate::{CmdResult, Ctx, Reply, Table};

/// A bundle given inline or as a JSON file.
#[derive(Args, Debug)]
pub struct BundleInput {
    /// Inline bundle, e.g. "1:1,1:2 twist=-1/2".
    #[arg(long, visible_alias = "bundle", allow_hyphen_values = true, required_unless_present = "file", conflicts_with = "file")]
    pieces: Option<String>,
    /// JSON bundle document.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl BundleInput {
    fn load(&self) -> Result<CurveBundle, crate::CliError> {
        match (&self.pieces, &self.file) {
            (Some(text), _) => Ok(parse_bundle(text)?),
            (None, Some(path)) => Ok(read_json::<BundleDoc>(path)?.to_bundle()?),
            (None, None) => Err(crate::CliError("a bundle is required (--pieces or --file)".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// Harder-Narasimhan polygon and extremal slopes.
    Hn(BundleInput),
    /// Seshadri constant of the bundle at a point of given multiplicity.
    Seshadri {
        #[command(flatten)]
        input: BundleInput,
        /// Multiplicity of the point.
        #[arg(long, default_value_t = 1)]
        mult: u64,
    },
    /// Nefness and ampleness.
    Nef(BundleInput),
}

#[derive(Subcommand, Debug)]
pub enum BundleCmd {
    /// Symmetric power.
    Sym {
        #[command(flatten)]
        input: BundleInput,
        #[arg(long)]
        m: u64,
    },
    /// Tensor product with a second bundle.
    Tensor {
        #[command(flatten)]
        input: BundleInput,
        /// The second factor, inline.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "with_file")]
        with: Option<String>,
        /// The second factor as a JSON document.
        #[arg(long)]
        with_file: Option<PathBuf>,
    },
    /// Determinant line bundle.
    Det(BundleInput),
    /// Dual bundle.
    Dual(BundleInput),
    /// Twist by a rational degree.
    Twist {
        #[command(flatten)]
        input: BundleInput,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
}

fn bundle_json(ctx: &Ctx, b: &CurveBundle) -> Value {
    json!({
        "bundle": b.to_string(),
        "document": BundleDoc::from_bundle(b),
        "rank": b.rank(),
        "degree": ctx.num_rational(&b.degree()),
        "mu_min": ctx.num_rational(&mu_min(b)),
        "mu_max": ctx.num_rational(&mu_max(b)),
    })
}

fn bundle_table(ctx: &Ctx, b: &CurveBundle) -> Table {
    Table::new()
        .row("bundle", b)
        .row("rank", b.rank())
        .row("degree", ctx.show_rational(&b.degree()))
        .row("mu_min", ctx.show_rational(&mu_min(b)))
        .row("mu_max", ctx.show_rational(&mu_max(b)))
}

pub fn run_curve(cmd: CurveCmd, ctx: &Ctx) -> CmdResult {
    match cmd {
        CurveCmd::Hn(input) => {
            let b = input.load()?;
            let poly = hn_polygon(&b);
            let vertices: Vec<String> = poly.vertices().iter().map(|(r, d)| format!("({r}, {d})")).collect();
            let slopes = poly.segment_slopes();
            let mut json = bundle_json(ctx, &b);
            json["command"] = json!("curve hn");
            json["vertices"] = json!(poly.vertices().iter().map(|(r, d)| json!([r, d.to_string()])).collect::<Vec<_>>());
            json["segment_slopes"] = json!(slopes.iter().map(|s| ctx.num_rational(s)).collect::<Vec<_>>());
            let table = bundle_table(ctx, &b)
                .row("vertices", vertices.join(" "))
                .row("slopes", slopes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .render();
            Ok(Reply::new(json, table))
        }
        CurveCmd::Seshadri { input, mult } => {
            let b = input.load()?;
            let eps = seshadri_on_curve(&b, mult)?;
            let json = json!({ "command": "curve seshadri", "bundle": b.to_string(), "mult": mult, "seshadri": ctx.num_rational(&eps) });
            let table = match ctx.decimal_rational(&eps) {
                Some(d) => format!("{eps}  (~ {d})\n"),
                None => format!("{eps}\n"),
            };
            Ok(Reply::new(json, table))
        }
        CurveCmd::Nef(input) => {
            let b = input.load()?;
            let (nef, ample) = (is_nef(&b), is_ample(&b));
            let mut json = bundle_json(ctx, &b);
            json["command"] = json!("curve nef");
            json["nef"] = json!(nef);
            json["ample"] = json!(ample);
            let table = bundle_table(ctx, &b).row("nef", yes_no(nef)).row("ample", yes_no(ample)).render();
            Ok(Reply::new(json, table))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run_bundle(cmd: BundleCmd, ctx: &Ctx) -> CmdResult {
    let (name, out) = match cmd {
        BundleCmd::Sym { input, m } => ("bundle sym", sym(&input.load()?, m)?),
        BundleCmd::Tensor { input, with, with_file } => {
            let other = match (with, with_file) {
                (Some(text), _) => parse_bundle(&text)?,
                (None, Some(path)) => read_json::<BundleDoc>(&path)?.to_bundle()?,
                (None, None) => return Err(crate::CliError("tensor needs --with or --with-file".into())),
            };
            ("bundle tensor", tensor(&input.load()?, &other))
        }
        BundleCmd::Det(input) => ("bundle det", det(&input.load()?)),
        BundleCmd::Dual(input) => ("bundle dual", dual(&input.load()?)),
        BundleCmd::Twist { input, by } => ("bundle twist", twist(&input.load()?, &parse_rational_arg(&by)?)),
    };
    let mut json = bundle_json(ctx, &out);
    json["command"] = json!(name);
    Ok(Reply::new(json, bundle_table(ctx, &out).render()))
}
