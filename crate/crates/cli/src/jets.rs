use clap::Subcommand;
use serde_json::json;
use seshadri_core::jet_bounds::{
    adjoint_jet_threshold, adjoint_min_p, hacon_M, hacon_lambda, hacon_m_radical, line_bundle_ell, ps_lambda,
    ps_min_m, ps_seshadri_threshold, PositiveConstant, ADJOINT_QUALIFIER, HACON_QUALIFIER, LINE_BUNDLE_QUALIFIER,
    POPA_SCHNELL_QUALIFIER,
};

use crate::parse::parse_rational_arg;
use crate::{CliError, CmdResult, Ctx, Reply, Table};

#[derive(Subcommand, Debug)]
pub enum JetsCmd {
    /// Lower bound M(n, r) and, given beta, the least admissible lambda.
    Hacon {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Jet threshold (n+s)/(p+r) for the adjoint bundle, or the least p below --eps.
    Adjoint {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, required_unless_present = "eps", conflicts_with = "eps")]
        p: Option<u64>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Seshadri threshold for pushforwards of pluricanonical bundles.
    PopaSchnell {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long)]
        r: u64,
        #[arg(long, conflicts_with_all = ["eps", "beta"])]
        m: Option<u64>,
        /// Least m with threshold below this value.
        #[arg(long, conflicts_with = "beta")]
        eps: Option<String>,
        /// Least lambda for a Seshadri lower bound beta; uses M(n, r) unless --m-const is given.
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, requires = "beta")]
        m_const: Option<String>,
    },
    /// Power ell of a line bundle generating s-jets at general points.
    LineBundle {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        /// Use the variant for ample bundles in dimension at most 3.
        #[arg(long)]
        low_dim_ample: bool,
    },
}

pub fn run(cmd: JetsCmd, ctx: &Ctx) -> CmdResult {
    match cmd {
        JetsCmd::Hacon { n, r, beta } => {
            let m = hacon_M(n, r, &ctx.precision)?;
            let radical = hacon_m_radical(n, r)?;
            let mut json = json!({ "command": "jets hacon", "M": ctx.num_value(&m), "radical": radical.to_string(), "holds_at": HACON_QUALIFIER });
            let mut table = Table::new().row("M", ctx.show_value(&m)).row("radical", &radical);
            if let Some(beta) = beta {
                let beta = parse_rational_arg(&beta)?;
                let lambda = hacon_lambda(n, &beta, &PositiveConstant::Exact(radical))?;
                json["lambda"] = json!(lambda.to_string());
                table = table.row("lambda", lambda);
            }
            Ok(Reply::new(json, table.row("holds at", HACON_QUALIFIER).render()))
        }
        JetsCmd::Adjoint { n, r, s, p, eps } => {
            if let Some(eps) = eps {
                let e = parse_rational_arg(&eps)?;
                let min = adjoint_min_p(n, r, s, &e)?;
                let json = json!({ "command": "jets adjoint", "min_p": min.to_string(), "holds_at": ADJOINT_QUALIFIER });
                return Ok(Reply::new(json, Table::new().row("min p", min).row("holds at", ADJOINT_QUALIFIER).render()));
            }
            let p = p.ok_or_else(|| CliError("give --p or --eps".into()))?;
            let t = adjoint_jet_threshold(n, r, p, s)?;
            let json = json!({ "command": "jets adjoint", "threshold": ctx.num_rational(&t), "holds_at": ADJOINT_QUALIFIER });
            Ok(Reply::new(json, Table::new().row("threshold", ctx.show_rational(&t)).row("holds at", ADJOINT_QUALIFIER).render()))
        }
        JetsCmd::PopaSchnell { k, n, s, r, m, eps, beta, m_const } => {
            let mut json = json!({ "command": "jets popa-schnell", "holds_at": POPA_SCHNELL_QUALIFIER });
            let mut table = Table::new();
            if let Some(eps) = eps {
                let min = ps_min_m(k, n, s, r, &parse_rational_arg(&eps)?)?;
                json["min_m"] = json!(min.to_string());
                table = table.row("min m", min);
            } else if let Some(beta) = beta {
                let beta = parse_rational_arg(&beta)?;
                let constant = match m_const {
                    Some(c) => PositiveConstant::rational(parse_rational_arg(&c)?),
                    None => PositiveConstant::Exact(hacon_m_radical(n, r)?),
                };
                let lambda = ps_lambda(k, &beta, &constant, n, s, r)?;
                json["lambda"] = json!(lambda.to_string());
                json["M"] = json!(constant.to_string());
                table = table.row("M", constant).row("lambda", lambda);
            } else {
                let t = ps_seshadri_threshold(k, n, s, m.unwrap_or(0), r)?;
                json["threshold"] = ctx.num_rational(&t);
                table = table.row("threshold", ctx.show_rational(&t));
            }
            Ok(Reply::new(json, table.row("holds at", POPA_SCHNELL_QUALIFIER).render()))
        }
        JetsCmd::LineBundle { k, n, s, low_dim_ample } => {
            let ell = line_bundle_ell(k, n, s, low_dim_ample)?;
            let json = json!({ "command": "jets line-bundle", "ell": ell.to_string(), "holds_at": LINE_BUNDLE_QUALIFIER });
            Ok(Reply::new(json, Table::new().row("ell", ell).row("holds at", LINE_BUNDLE_QUALIFIER).render()))
        }
    }
}
