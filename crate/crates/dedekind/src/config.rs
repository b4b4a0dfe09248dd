//! Text configuration for experiment runs.
//!
//! Line-oriented key-value format; `#` starts a comment. Example:
//!
//! ```text
//! field gauss quadratic d=-1
//! field z5 cyclotomic m=5
//! field cubic poly f="x^3 - 2" normal=false
//! x 100000
//! experiment thm3 field=gauss
//! experiment cor1 f="x^3 - 2" degree=6
//! experiment cor3 m=7 gens=6
//! experiment lemma3
//! experiment cor4
//! experiment identity field=gauss
//! ```

use crate::error::{Error, Result};
use crate::ffpoly::IntPoly;
use crate::numfield::{cyclotomic_field, field_from_poly, quadratic_field, NumberField};
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Largest accepted prime / ideal-count bound.
pub const MAX_BOUND: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Experiment {
    Thm3 { field: String },
    Cor1 { f: IntPoly, degree: u32 },
    Cor2 { f: IntPoly, degree: u32 },
    Cor3 { m: u64, generators: Vec<u64> },
    Lemma3,
    Identity { field: String },
    Cor4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub fields: BTreeMap<String, NumberField>,
    pub experiments: Vec<Experiment>,
    /// Prime bound for density scans.
    pub x: u64,
    /// Ideal-count table bound.
    pub b: u64,
    /// Euler / partial-product prime bound.
    pub p: u64,
    pub s_values: Vec<f64>,
    pub seed: u64,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    /// Density chunk count (fixed so reports do not depend on thread count).
    pub chunks: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            fields: BTreeMap::new(),
            experiments: Vec::new(),
            x: 1_000_000,
            b: 100_000,
            p: 100_000,
            s_values: vec![1.5, 2.0],
            seed: 0,
            format: OutputFormat::Json,
            cache_dir: None,
            chunks: 64,
        }
    }
}

fn cfg_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Config {
        line,
        reason: reason.into(),
    }
}

/// Split a config line into words, honoring double quotes ("x^3 - 2" is one
/// token; quotes are stripped).
fn tokenize(line: usize, s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_quotes = false;
    for c in s.chars() {
        match c {
            '"' => in_quotes = !in_quotes,
            c if c.is_whitespace() && !in_quotes => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if in_quotes {
        return Err(cfg_err(line, "unterminated quote"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// key=value arguments after the positional head of a line.
fn kv_args<'a>(line: usize, words: &'a [String]) -> Result<BTreeMap<&'a str, &'a str>> {
    let mut map = BTreeMap::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| cfg_err(line, format!("expected key=value, got `{w}`")))?;
        if map.insert(k, v).is_some() {
            return Err(cfg_err(line, format!("duplicate key `{k}`")));
        }
    }
    Ok(map)
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| cfg_err(line, format!("bad value `{v}` for `{key}`")))
}

fn require<'a>(
    line: usize,
    args: &BTreeMap<&str, &'a str>,
    key: &str,
) -> Result<&'a str> {
    args.get(key)
        .copied()
        .ok_or_else(|| cfg_err(line, format!("missing `{key}=...`")))
}

fn parse_field(line: usize, words: &[String]) -> Result<(String, NumberField)> {
    if words.len() < 2 {
        return Err(cfg_err(line, "usage: field <label> <kind> key=value..."));
    }
    let label = words[0].clone();
    let kind = words[1].as_str();
    let args = kv_args(line, &words[2..])?;
    let field = match kind {
        "quadratic" => {
            let d: i64 = parse_num(line, "d", require(line, &args, "d")?)?;
            quadratic_field(d).map_err(|e| cfg_err(line, e.to_string()))?
        }
        "cyclotomic" => {
            let m: u64 = parse_num(line, "m", require(line, &args, "m")?)?;
            cyclotomic_field(m).map_err(|e| cfg_err(line, e.to_string()))?
        }
        "poly" => {
            let f = IntPoly::parse(require(line, &args, "f")?)
                .map_err(|e| cfg_err(line, e.to_string()))?;
            let normal = match args.get("normal").copied().unwrap_or("false") {
                "true" => true,
                "false" => false,
                other => return Err(cfg_err(line, format!("normal must be true/false, got `{other}`"))),
            };
            field_from_poly(&f, normal, false).map_err(|e| cfg_err(line, e.to_string()))?
        }
        other => return Err(cfg_err(line, format!("unknown field kind `{other}`"))),
    };
    let field = field.with_label(&label);
    Ok((label, field))
}

fn parse_experiment(line: usize, words: &[String]) -> Result<Experiment> {
    if words.is_empty() {
        return Err(cfg_err(line, "usage: experiment <name> key=value..."));
    }
    let name = words[0].as_str();
    let args = kv_args(line, &words[1..])?;
    match name {
        "thm3" => Ok(Experiment::Thm3 {
            field: require(line, &args, "field")?.to_string(),
        }),
        "cor1" | "cor2" => {
            let f = IntPoly::parse(require(line, &args, "f")?)
                .map_err(|e| cfg_err(line, e.to_string()))?;
            let degree: u32 = parse_num(line, "degree", require(line, &args, "degree")?)?;
            if degree == 0 {
                return Err(cfg_err(line, "degree must be positive"));
            }
            Ok(if name == "cor1" {
                Experiment::Cor1 { f, degree }
            } else {
                Experiment::Cor2 { f, degree }
            })
        }
        "cor3" => {
            let m: u64 = parse_num(line, "m", require(line, &args, "m")?)?;
            let generators = require(line, &args, "gens")?
                .split(',')
                .map(|g| parse_num(line, "gens", g))
                .collect::<Result<Vec<u64>>>()?;
            Ok(Experiment::Cor3 { m, generators })
        }
        "lemma3" => Ok(Experiment::Lemma3),
        "identity" => Ok(Experiment::Identity {
            field: require(line, &args, "field")?.to_string(),
        }),
        "cor4" => Ok(Experiment::Cor4),
        other => Err(cfg_err(line, format!("unknown experiment `{other}`"))),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let words = tokenize(line, content)?;
            if words.is_empty() {
                continue;
            }
            let (head, rest) = (words[0].as_str(), &words[1..]);
            match head {
                "field" => {
                    let (label, f) = parse_field(line, rest)?;
                    if cfg.fields.insert(label.clone(), f).is_some() {
                        return Err(cfg_err(line, format!("duplicate field label `{label}`")));
                    }
                }
                "experiment" => cfg.experiments.push(parse_experiment(line, rest)?),
                "x" | "b" | "p" | "seed" | "chunks" => {
                    if rest.len() != 1 {
                        return Err(cfg_err(line, format!("`{head}` takes one value")));
                    }
                    let v: u64 = parse_num(line, head, &rest[0])?;
                    match head {
                        "x" => cfg.x = v,
                        "b" => cfg.b = v,
                        "p" => cfg.p = v,
                        "seed" => cfg.seed = v,
                        _ => cfg.chunks = v.clamp(1, 1 << 20) as usize,
                    }
                }
                "s" => {
                    if rest.is_empty() {
                        return Err(cfg_err(line, "`s` needs at least one value"));
                    }
                    cfg.s_values = rest
                        .iter()
                        .map(|v| parse_num(line, "s", v))
                        .collect::<Result<Vec<f64>>>()?;
                }
                "format" => match rest {
                    [f] if f == "json" => cfg.format = OutputFormat::Json,
                    [f] if f == "csv" => cfg.format = OutputFormat::Csv,
                    _ => return Err(cfg_err(line, "format must be json or csv")),
                },
                "cache_dir" => match rest {
                    [d] => cfg.cache_dir = Some(PathBuf::from(d)),
                    _ => return Err(cfg_err(line, "`cache_dir` takes one path")),
                },
                other => return Err(cfg_err(line, format!("unknown directive `{other}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("x", self.x), ("b", self.b), ("p", self.p)] {
            if v == 0 || v > MAX_BOUND {
                return Err(cfg_err(
                    0,
                    format!("bound {name}={v} outside 1..={MAX_BOUND}"),
                ));
            }
        }
        for e in &self.experiments {
            let label = match e {
                Experiment::Thm3 { field } | Experiment::Identity { field } => Some(field),
                _ => None,
            };
            if let Some(label) = label {
                if !self.fields.contains_key(label) {
                    return Err(cfg_err(0, format!("experiment references unknown field `{label}`")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
# density suite
field gauss quadratic d=-1
field z5 cyclotomic m=5
field cubic poly f="x^3 - 2"
x 10000
s 1.5 2.0
experiment thm3 field=gauss
experiment cor1 f="x^3 - 2" degree=6
experiment cor3 m=7 gens=6
experiment lemma3
experiment cor4
"#;

    #[test]
    fn parses_sample() {
        let cfg = RunConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.fields.len(), 3);
        assert_eq!(cfg.fields["gauss"].degree, 2);
        assert_eq!(cfg.fields["z5"].degree, 4);
        assert_eq!(cfg.fields["cubic"].degree, 3);
        assert_eq!(cfg.experiments.len(), 5);
        assert_eq!(cfg.x, 10_000);
        assert_eq!(cfg.s_values, vec![1.5, 2.0]);
    }

    #[test]
    fn empty_config_is_valid() {
        let cfg = RunConfig::parse("").unwrap();
        assert!(cfg.experiments.is_empty());
    }

    #[test]
    fn bound_limit_enforced() {
        let err = RunConfig::parse("x 1000000000").unwrap_err();
        match err {
            Error::Config { reason, .. } => assert!(reason.contains("bound"), "{reason}"),
            e => panic!("wrong error {e}"),
        }
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let err = RunConfig::parse("x 100\nbogus directive\n").unwrap_err();
        match err {
            Error::Config { line, .. } => assert_eq!(line, 2),
            e => panic!("wrong error {e}"),
        }
        let err = RunConfig::parse("field g quadratic\n").unwrap_err();
        match err {
            Error::Config { line, reason } => {
                assert_eq!(line, 1);
                assert!(reason.contains("d="), "{reason}");
            }
            e => panic!("wrong error {e}"),
        }
    }

    #[test]
    fn unknown_field_reference_rejected() {
        let err = RunConfig::parse("experiment thm3 field=nope\n").unwrap_err();
        assert!(err.to_string().contains("nope"));
    }

    #[test]
    fn quoted_poly_with_spaces() {
        let cfg = RunConfig::parse("field k poly f=\"x^2 + 1\" normal=true\n").unwrap();
        assert!(cfg.fields["k"].is_normal_over_q);
    }

    #[test]
    fn bad_quoting_rejected() {
        assert!(RunConfig::parse("field k poly f=\"x^2 + 1\n").is_err());
    }
}
