use clap::{Args, Parser, Subcommand};
use dedekind::characters::{l_value, QuadraticCharacter};
use dedekind::config::{OutputFormat, RunConfig};
use dedekind::error::Error;
use dedekind::ffpoly::IntPoly;
use dedekind::numfield::{cyclotomic_field, field_from_poly, quadratic_field, NumberField};
use dedekind::splitting::split_prime;
use dedekind::verify::{density_report_for_field, run, sig15, verify_suite};
use dedekind::zetaseries::{
    cumulative_counts, ideal_counts, riemann_extended, zeta_dirichlet, zeta_euler, ZetaValue,
};
use num_complex::Complex64;
use serde::Serialize;

/// Exit codes: 0 = pass, 1 = verdict failure, 2 = usage / config error.
#[derive(Parser)]
#[command(name = "dedekind", version, about = "Prime splitting and Dedekind zeta experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Shared field selection: exactly one of the three kinds.
#[derive(Args)]
struct FieldArgs {
    /// Quadratic field Q(sqrt(d)), d squarefree
    #[arg(long, allow_hyphen_values = true)]
    quadratic: Option<i64>,
    /// Cyclotomic field Q(zeta_m), m >= 3
    #[arg(long)]
    cyclotomic: Option<u64>,
    /// Field defined by a monic integer polynomial, e.g. "x^3 - 2"
    #[arg(long)]
    poly: Option<String>,
    /// Mark the polynomial field as normal over Q
    #[arg(long, requires = "poly")]
    normal: bool,
}

impl FieldArgs {
    fn build(&self) -> Result<NumberField, Error> {
        match (self.quadratic, self.cyclotomic, &self.poly) {
            (Some(d), None, None) => quadratic_field(d),
            (None, Some(m), None) => cyclotomic_field(m),
            (None, None, Some(f)) => field_from_poly(&IntPoly::parse(f)?, self.normal, false),
            _ => Err(Error::Domain(
                "select exactly one of --quadratic, --cyclotomic, --poly".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Describe a number field
    Field(FieldArgs),
    /// Splitting type of a prime in a field
    Split {
        #[command(flatten)]
        field: FieldArgs,
        /// The rational prime to factor
        #[arg(long)]
        p: u64,
    },
    /// Ideal-count table as CSV (n, j_n, i_n)
    CountIdeals {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Evaluate the Dedekind zeta function
    Zeta {
        #[command(flatten)]
        field: FieldArgs,
        /// Evaluation point, "RE" or "RE,IM"
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// dirichlet | euler | extended (extended: Riemann zeta only)
        #[arg(long, default_value = "dirichlet")]
        method: String,
        /// Series / table / product truncation bound
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// Evaluate L(s, chi_D) for a fundamental discriminant
    Lvalue {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 2_000_000)]
        terms: u64,
    },
    /// Completely-split density experiment, or a config-driven suite
    Density {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        /// Run the experiments from a config file instead
        #[arg(long, conflicts_with_all = ["quadratic", "cyclotomic", "poly", "x"])]
        config: Option<std::path::PathBuf>,
        /// Emit CSV instead of JSON (config mode)
        #[arg(long)]
        csv: bool,
    },
    /// Run the acceptance battery with pinned bounds
    Verify {
        /// Emit CSV instead of JSON
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Serialize)]
struct FieldInfo {
    label: String,
    degree: u32,
    poly: String,
    poly_discriminant: String,
    normal_over_q: bool,
}

#[derive(Serialize)]
struct ZetaOut {
    s_re: String,
    s_im: String,
    value_re: String,
    value_im: String,
    truncation_bound: String,
    method: String,
}

fn zeta_out(z: &ZetaValue) -> ZetaOut {
    ZetaOut {
        s_re: sig15(z.s.re),
        s_im: sig15(z.s.im),
        value_re: sig15(z.value.re),
        value_im: sig15(z.value.im),
        truncation_bound: sig15(z.truncation_bound),
        method: format!("{:?}", z.method),
    }
}

fn parse_s(s: &str) -> Result<Complex64, Error> {
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| Error::Domain(format!("bad number `{v}` in --s")))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}

fn real_main(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Field(args) => {
            let k = args.build()?;
            let info = FieldInfo {
                label: k.label.clone(),
                degree: k.degree,
                poly: k.defining_poly.to_string(),
                poly_discriminant: k.poly_discriminant.to_string(),
                normal_over_q: k.is_normal_over_q,
            };
            println!("{}", serde_json::to_string_pretty(&info).unwrap());
            Ok(0)
        }
        Command::Split { field, p } => {
            let k = field.build()?;
            let st = split_prime(&k, p)?;
            println!("{}", serde_json::to_string_pretty(&st).unwrap());
            Ok(0)
        }
        Command::CountIdeals { field, bound } => {
            let k = field.build()?;
            let table = ideal_counts(&k, bound)?;
            let cum = cumulative_counts(&table, &[]);
            println!("n,j_n,i_n");
            let mut running = 0u64;
            for n in 1..=bound {
                running += table.count(n);
                println!("{n},{},{running}", table.count(n));
            }
            eprintln!("# kappa_hat = {}", sig15(cum.kappa_hat));
            Ok(0)
        }
        Command::Zeta {
            field,
            s,
            method,
            bound,
        } => {
            let k = field.build()?;
            let s = parse_s(&s)?;
            let z = match method.as_str() {
                "dirichlet" => zeta_dirichlet(&ideal_counts(&k, bound)?, s)?,
                "euler" => zeta_euler(&k, s, bound)?,
                "extended" => {
                    if k.degree != 1 {
                        return Err(Error::Domain(
                            "extended evaluation covers the Riemann zeta only; \
                             use a degree-1 field"
                                .into(),
                        ));
                    }
                    riemann_extended(s)?
                }
                other => {
                    return Err(Error::Domain(format!(
                        "unknown method `{other}` (dirichlet | euler | extended)"
                    )))
                }
            };
            println!("{}", serde_json::to_string_pretty(&zeta_out(&z)).unwrap());
            Ok(0)
        }
        Command::Lvalue { d, s, terms } => {
            let chi = QuadraticCharacter::new(d)?;
            let v = l_value(&chi, s, terms)?;
            #[derive(Serialize)]
            struct LOut {
                d: i64,
                s: String,
                value: String,
                truncation_bound: String,
            }
            let out = LOut {
                d,
                s: sig15(s),
                value: sig15(v.value.re),
                truncation_bound: sig15(v.truncation_bound),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Command::Density {
            field,
            x,
            config,
            csv,
        } => {
            if let Some(path) = config {
                let text = std::fs::read_to_string(&path)?;
                let mut cfg = RunConfig::parse(&text)?;
                if csv {
                    cfg.format = OutputFormat::Csv;
                }
                if let Some(dir) = &cfg.cache_dir {
                    std::env::set_var(dedekind::sieve::CACHE_DIR_ENV, dir);
                }
                let suite = run(&cfg)?;
                match cfg.format {
                    OutputFormat::Json => println!("{}", suite.to_json()),
                    OutputFormat::Csv => print!("{}", suite.to_csv()),
                }
                Ok(if suite.pass { 0 } else { 1 })
            } else {
                let k = field.build()?;
                if x == 0 || x > dedekind::config::MAX_BOUND {
                    return Err(Error::Domain(format!(
                        "x={x} outside 1..={}",
                        dedekind::config::MAX_BOUND
                    )));
                }
                let r = density_report_for_field(&k, x);
                println!("{}", serde_json::to_string_pretty(&r).unwrap());
                Ok(if r.pass { 0 } else { 1 })
            }
        }
        Command::Verify { csv } => {
            let suite = verify_suite()?;
            if csv {
                print!("{}", suite.to_csv());
            } else {
                println!("{}", suite.to_json());
            }
            for e in &suite.entries {
                eprintln!("{} {}", if e.pass { "PASS" } else { "FAIL" }, e.id);
            }
            Ok(if suite.pass { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match real_main(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
