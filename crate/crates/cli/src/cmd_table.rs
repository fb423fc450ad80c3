use anyhow::{Context, Result};
use num_complex::Complex64;
use serde_json::json;

use qeuler::sequences::{family_recurrence, FamilyTag};

use crate::util::{complex_json, csv_line, parse_complex, Format};

pub struct TableArgs {
    pub family: FamilyTag,
    pub n_max: usize,
    pub eval_q: Option<String>,
    pub format: Format,
    pub seed: u64,
}

pub fn run(args: &TableArgs) -> Result<(String, i32)> {
    let eval_q: Option<Complex64> = match &args.eval_q {
        None => None,
        Some(s) => Some(parse_complex(s).context("--eval-q")?),
    };
    let mut rows = Vec::new();
    for n in 0..=args.n_max {
        let value = family_recurrence(args.family, n);
        let numeric = eval_q.map(|q0| value.eval_complex_stable(q0));
        rows.push((n, value, numeric));
    }
    let content = match args.format {
        Format::Json => {
            let json_rows: Vec<_> = rows
                .iter()
                .map(|(n, value, numeric)| {
                    let mut row = json!({
                        "n": n,
                        "value": value,
                        "display": value.to_string(),
                    });
                    if let Some(res) = numeric {
                        row["numeric"] = match res {
                            Ok(z) => complex_json(*z),
                            Err(e) => json!({ "error": e.to_string() }),
                        };
                    }
                    row
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "command": "table",
                "family": args.family.name(),
                "n_max": args.n_max,
                "eval_q": args.eval_q,
                "seed": args.seed,
                "rows": json_rows,
            }))?
        }
        Format::Csv => {
            let mut lines = vec![if eval_q.is_some() {
                "n,value,numeric_re,numeric_im".to_string()
            } else {
                "n,value".to_string()
            }];
            for (n, value, numeric) in &rows {
                let mut fields = vec![n.to_string(), value.to_string()];
                if let Some(res) = numeric {
                    match res {
                        Ok(z) => {
                            fields.push(format!("{}", z.re));
                            fields.push(format!("{}", z.im));
                        }
                        Err(e) => {
                            fields.push(e.to_string());
                            fields.push(String::new());
                        }
                    }
                }
                lines.push(csv_line(&fields));
            }
            lines.join("\n")
        }
        Format::Pretty => {
            let mut lines = vec![format!("{} numbers, n <= {}", args.family, args.n_max)];
            for (n, value, numeric) in &rows {
                let mut line = format!("  n = {n:>2}: {value}");
                if let Some(res) = numeric {
                    match res {
                        Ok(z) if z.im == 0.0 => line.push_str(&format!("  [= {}]", z.re)),
                        Ok(z) => line.push_str(&format!("  [= {} + {}i]", z.re, z.im)),
                        Err(e) => line.push_str(&format!("  [{e}]")),
                    }
                }
                lines.push(line);
            }
            lines.join("\n")
        }
    };
    Ok((content, 0))
}
