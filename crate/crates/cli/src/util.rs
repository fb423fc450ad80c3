//! Argument parsing helpers and output plumbing shared by the subcommands.

use std::fs;
use std::io::Write;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use qeuler::exactq::parse_rat;
use qeuler::BigRat;

/// Rational input "a/b" or a plain integer.
pub fn parse_rational(s: &str) -> Result<BigRat> {
    parse_rat(s).with_context(|| format!("cannot parse {s:?} as a rational"))
}

/// Complex input: "0.5", "-0.3", "0.5+0.2i", "0.5-0.2i", "0.2i", or a
/// rational "a/b" for convenience.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    if let Ok(r) = parse_rat(s) {
        return Ok(Complex64::new(r.to_f64().context("rational out of f64 range")?, 0.0));
    }
    let inner = s.strip_suffix('i');
    match inner {
        None => Ok(Complex64::new(
            s.parse::<f64>()
                .with_context(|| format!("cannot parse {s:?} as a number"))?,
            0.0,
        )),
        Some(body) => {
            // split into real part and signed imaginary coefficient; the
            // sign that separates them must not belong to an exponent
            for (i, ch) in body.char_indices().rev() {
                if (ch == '+' || ch == '-') && i > 0 {
                    let prev = body.as_bytes()[i - 1];
                    if prev == b'e' || prev == b'E' {
                        continue;
                    }
                    let re: f64 = body[..i]
                        .parse()
                        .with_context(|| format!("bad real part in {s:?}"))?;
                    let im_str = &body[i..];
                    let im: f64 = if im_str == "+" {
                        1.0
                    } else if im_str == "-" {
                        -1.0
                    } else {
                        im_str
                            .parse()
                            .with_context(|| format!("bad imaginary part in {s:?}"))?
                    };
                    return Ok(Complex64::new(re, im));
                }
            }
            let im: f64 = if body.is_empty() {
                1.0
            } else {
                body.parse()
                    .with_context(|| format!("bad imaginary part in {s:?}"))?
            };
            Ok(Complex64::new(0.0, im))
        }
    }
}

/// Inclusive range "lo..hi" (or a single value).
pub fn parse_range(s: &str) -> Result<Vec<u32>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().context("bad range start")?;
        let hi: u32 = hi.trim().parse().context("bad range end")?;
        if hi < lo {
            bail!("empty range {s:?}");
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![s.trim().parse().context("bad level")?])
    }
}

/// Comma-separated list of integers.
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .with_context(|| format!("bad list entry {part:?}"))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Writes to the --output path or stdout.
pub fn emit(output: Option<&std::path::Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

/// Minimal CSV quoting: wrap fields containing separators or quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// Complex serialization per the documented schema.
pub fn complex_json(z: Complex64) -> serde_json::Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(
            parse_complex("0.5+0.2i").unwrap(),
            Complex64::new(0.5, 0.2)
        );
        assert_eq!(
            parse_complex("0.5-0.2i").unwrap(),
            Complex64::new(0.5, -0.2)
        );
        assert_eq!(parse_complex("0.2i").unwrap(), Complex64::new(0.0, 0.2));
        assert_eq!(parse_complex("1/2").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(
            parse_complex("1e-3+2e-4i").unwrap(),
            Complex64::new(1e-3, 2e-4)
        );
        assert!(parse_complex("q").is_err());
    }

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert!(parse_range("4..1").is_err());
        assert_eq!(parse_u32_list("3,5").unwrap(), vec![3, 5]);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
