use anyhow::{Context, Result};
use serde_json::json;

use qeuler::analytic::{l_series, zeta_q, ZetaParams};
use qeuler::characters::character;

use crate::util::{complex_json, csv_line, parse_complex, Format};

pub struct ZetaArgs {
    pub q: String,
    pub x: f64,
    pub s: String,
    pub tolerance: f64,
    pub max_terms: usize,
    pub format: Format,
    pub seed: u64,
}

pub fn run_zeta(args: &ZetaArgs) -> Result<(String, i32)> {
    let q = parse_complex(&args.q).context("--q")?;
    let s = parse_complex(&args.s).context("--s")?;
    let result = zeta_q(&ZetaParams {
        q,
        x: args.x,
        s,
        tolerance: args.tolerance,
        max_terms: args.max_terms,
    })?;
    let content = match args.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "command": "zeta",
            "q": complex_json(q),
            "x": args.x,
            "s": complex_json(s),
            "value": complex_json(result.value),
            "terms": result.terms,
            "exact_truncation": result.exact_truncation,
            "branch": "principal",
            "seed": args.seed,
        }))?,
        Format::Csv => {
            let lines = vec![
                "re,im,terms,exact_truncation".to_string(),
                csv_line(&[
                    format!("{}", result.value.re),
                    format!("{}", result.value.im),
                    result.terms.to_string(),
                    result.exact_truncation.to_string(),
                ]),
            ];
            lines.join("\n")
        }
        Format::Pretty => format!(
            "zeta_q(s={s}, x={x}) at q={q} [principal branches]\n  = {re}{sign}{im}i   ({terms} terms, {mode})",
            s = s,
            x = args.x,
            q = q,
            re = result.value.re,
            sign = if result.value.im < 0.0 { " - " } else { " + " },
            im = result.value.im.abs(),
            terms = result.terms,
            mode = if result.exact_truncation {
                "exact truncation"
            } else {
                "tail-bounded"
            }
        ),
    };
    Ok((content, 0))
}

pub struct LSeriesArgs {
    pub modulus: u64,
    pub char_index: u64,
    pub q: String,
    pub s: String,
    pub tolerance: f64,
    pub max_terms: usize,
    pub format: Format,
    pub seed: u64,
}

pub fn run_lseries(args: &LSeriesArgs) -> Result<(String, i32)> {
    let q = parse_complex(&args.q).context("--q")?;
    let s = parse_complex(&args.s).context("--s")?;
    let chi = character(args.modulus, args.char_index)?;
    let result = l_series(&chi, s, q, args.tolerance, args.max_terms)?;
    let content = match args.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "command": "lseries",
            "character": chi,
            "q": complex_json(q),
            "s": complex_json(s),
            "value": complex_json(result.value),
            "terms": result.terms,
            "exact_truncation": result.exact_truncation,
            "branch": "principal",
            "seed": args.seed,
        }))?,
        Format::Csv => {
            let lines = vec![
                "re,im,terms,exact_truncation".to_string(),
                csv_line(&[
                    format!("{}", result.value.re),
                    format!("{}", result.value.im),
                    result.terms.to_string(),
                    result.exact_truncation.to_string(),
                ]),
            ];
            lines.join("\n")
        }
        Format::Pretty => format!(
            "l_q(s={s}, chi) for chi mod {d} (index {i}, order {ord}{prim}) at q={q}\n  = {re}{sign}{im}i",
            s = s,
            d = args.modulus,
            i = args.char_index,
            ord = chi.order(),
            prim = if chi.is_primitive() {
                ""
            } else {
                ", imprimitive"
            },
            q = q,
            re = result.value.re,
            sign = if result.value.im < 0.0 { " - " } else { " + " },
            im = result.value.im.abs(),
        ),
    };
    Ok((content, 0))
}
