//! The acceptance battery: pinned-bound experiment runs for every verdict the
//! suite promises, plus the config-driven `run` entry point. All numbers in a
//! report are printed with 15 significant digits next to their truncation or
//! standard-error bound.

use crate::characters::factorization_check;
use crate::config::{Experiment, RunConfig};
use crate::density::{
    check_cor4, check_lemma3, check_thm3_identity, classify_split, experiment_cor1,
    experiment_cor2, experiment_cor3, experiment_thm3, natural_density, DensityReport,
};
use crate::error::Result;
use crate::numfield::{cyclotomic_field, field_from_poly, quadratic_field, NumberField};
use crate::zetaseries::{
    cumulative_counts, ideal_counts, residue_estimate, riemann_extended, zeta_dirichlet,
    zeta_euler, zeta_via_2series, zeta_via_3series, IdealCountTable,
};
use crate::ffpoly::IntPoly;
use num_complex::Complex64;
use serde::Serialize;

/// zeta(2) * L(2, chi_-4) = (pi^2/6) * Catalan; the Gaussian zeta at 2.
const ZETA_GAUSS_2: f64 = 1.506703009922985;

/// Pinned suite bounds.
pub const SUITE_X: u64 = 1_000_000;
pub const SUITE_B: u64 = 1_000_000;
pub const SUITE_B_SMALL: u64 = 100_000;
pub const SUITE_P: u64 = 100_000;
pub const SUITE_CHUNKS: usize = 64;
pub const SUITE_SEED: u64 = 0;

/// One number formatted to 15 significant digits.
pub fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub id: String,
    pub pass: bool,
    /// (name, value) pairs, every value formatted to 15 significant digits.
    pub metrics: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteMetadata {
    pub generated_at: String,
    pub tool: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    /// Excluded from determinism comparisons.
    pub metadata: SuiteMetadata,
    pub entries: Vec<ReportEntry>,
    pub pass: bool,
}

impl SuiteResult {
    fn assemble(mut entries: Vec<ReportEntry>) -> SuiteResult {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = entries.iter().all(|e| e.pass);
        SuiteResult {
            metadata: SuiteMetadata {
                generated_at: now_rfc3339(),
                tool: format!("dedekind {}", env!("CARGO_PKG_VERSION")),
            },
            entries,
            pass,
        }
    }

    /// Canonical bytes of everything except metadata; the object compared
    /// for byte-identity across runs and thread counts.
    pub fn results_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            entries: &'a [ReportEntry],
            pass: bool,
        }
        serde_json::to_string_pretty(&Body {
            entries: &self.entries,
            pass: self.pass,
        })
        .expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,pass,metric,value\n");
        for e in &self.entries {
            for (name, value) in &e.metrics {
                out.push_str(&format!("{},{},{},{}\n", e.id, e.pass, name, value));
            }
        }
        out
    }
}

fn now_rfc3339() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    // days since epoch -> civil date (Howard Hinnant's algorithm)
    let days = secs / 86_400;
    let rem = secs % 86_400;
    let z = days as i64 + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let y = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = doy - (153 * mp + 2) / 5 + 1;
    let m = if mp < 10 { mp + 3 } else { mp - 9 };
    let y = if m <= 2 { y + 1 } else { y };
    format!(
        "{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z",
        y,
        m,
        d,
        rem / 3600,
        (rem % 3600) / 60,
        rem % 60
    )
}

fn density_metrics(r: &DensityReport) -> Vec<(String, String)> {
    vec![
        ("empirical".into(), sig15(r.empirical)),
        ("theoretical".into(), sig15(r.theoretical)),
        ("abs_error".into(), sig15(r.abs_error)),
        ("standard_error".into(), sig15(r.standard_error)),
    ]
}

fn suite_fields() -> Result<Vec<NumberField>> {
    Ok(vec![
        quadratic_field(-1)?,
        quadratic_field(2)?,
        cyclotomic_field(5)?,
        cyclotomic_field(7)?,
        field_from_poly(&IntPoly::from_i64(&[-2, 0, 0, 1]), false, false)?,
        field_from_poly(&IntPoly::from_i64(&[-2, 0, 0, 0, 1]), false, false)?,
        NumberField::rationals(),
    ])
}

fn criterion_1() -> Result<ReportEntry> {
    let cases: [(NumberField, f64); 4] = [
        (quadratic_field(-1)?, 0.5),
        (quadratic_field(2)?, 0.5),
        (cyclotomic_field(5)?, 0.25),
        (cyclotomic_field(7)?, 1.0 / 6.0),
    ];
    let mut pass = true;
    let mut metrics = Vec::new();
    for (k, expected) in &cases {
        let r = experiment_thm3(k, SUITE_X, SUITE_CHUNKS)?;
        pass &= r.pass && (r.theoretical - expected).abs() < 1e-12;
        metrics.push((format!("{}_empirical", k.label), sig15(r.empirical)));
        metrics.push((format!("{}_abs_error", k.label), sig15(r.abs_error)));
        metrics.push((format!("{}_4se", k.label), sig15(4.0 * r.standard_error)));
    }
    Ok(ReportEntry {
        id: "criterion-01-thm3-densities".into(),
        pass,
        metrics,
    })
}

fn criterion_2() -> Result<ReportEntry> {
    let cubic = IntPoly::from_i64(&[-2, 0, 0, 1]);
    let quartic = IntPoly::from_i64(&[-2, 0, 0, 0, 1]);
    let r1 = experiment_cor1(&cubic, 6, SUITE_X, SUITE_CHUNKS)?;
    let r2 = experiment_cor2(&quartic, 8, SUITE_X, SUITE_CHUNKS)?;
    let mut metrics = density_metrics(&r1);
    metrics.extend(density_metrics(&r2));
    Ok(ReportEntry {
        id: "criterion-02-cor1-cor2-densities".into(),
        pass: r1.pass && r2.pass,
        metrics,
    })
}

fn criterion_3() -> Result<ReportEntry> {
    let r1 = experiment_cor3(7, &[6], SUITE_X, SUITE_CHUNKS)?;
    let r2 = experiment_cor3(8, &[], SUITE_X, SUITE_CHUNKS)?;
    let mut metrics = density_metrics(&r1);
    metrics.extend(density_metrics(&r2));
    let pass = r1.pass
        && r2.pass
        && (r1.theoretical - 1.0 / 3.0).abs() < 1e-12
        && (r2.theoretical - 0.25).abs() < 1e-12;
    Ok(ReportEntry {
        id: "criterion-03-cor3-densities".into(),
        pass,
        metrics,
    })
}

fn criterion_4() -> ReportEntry {
    let r = check_lemma3(SUITE_X);
    ReportEntry {
        id: "criterion-04-lemma3-equivalence".into(),
        pass: r.pass,
        metrics: vec![
            ("checked".into(), r.checked.to_string()),
            ("counterexamples".into(), r.counterexamples.len().to_string()),
        ],
    }
}

fn criterion_5() -> Result<ReportEntry> {
    let gauss = quadratic_field(-1)?;
    let z5 = cyclotomic_field(5)?;
    let mut pass = true;
    let mut metrics = Vec::new();
    for (l, s) in [(&gauss, 1.5), (&gauss, 2.0), (&z5, 1.5), (&z5, 2.0)] {
        let r = check_thm3_identity(l, s, SUITE_P)?;
        pass &= r.pass;
        metrics.push((format!("{}_s{}_diff", l.label, s), sig15(r.diff)));
        metrics.push((format!("{}_s{}_bound", l.label, s), sig15(r.bound_sum)));
    }
    Ok(ReportEntry {
        id: "criterion-05-thm3-identity".into(),
        pass,
        metrics,
    })
}

fn criterion_6(gauss_table: &IdealCountTable) -> ReportEntry {
    let ts: Vec<u64> = (1..=31u64).map(|i| 1000 * i * i).collect();
    let c = cumulative_counts(gauss_table, &ts);
    let kappa_err = (c.kappa_hat - std::f64::consts::FRAC_PI_4).abs();
    ReportEntry {
        id: "criterion-06-thm2-kappa".into(),
        pass: kappa_err <= 0.01 && c.error_exponent_hat <= 0.65,
        metrics: vec![
            ("kappa_hat".into(), sig15(c.kappa_hat)),
            ("kappa_abs_error".into(), sig15(kappa_err)),
            ("error_exponent".into(), sig15(c.error_exponent_hat)),
        ],
    }
}

fn criterion_7() -> Result<ReportEntry> {
    let mut pass = true;
    let mut metrics = Vec::new();
    for k in suite_fields()? {
        let table = ideal_counts(&k, SUITE_B_SMALL)?;
        for s in [1.5, 2.0, 3.0] {
            let sc = Complex64::new(s, 0.0);
            let zd = zeta_dirichlet(&table, sc)?;
            let ze = zeta_euler(&k, sc, SUITE_P)?;
            let delta = (zd.value - ze.value).norm();
            let bound = zd.truncation_bound + ze.truncation_bound;
            pass &= delta <= bound;
            metrics.push((format!("{}_s{}_delta", k.label, s), sig15(delta)));
            metrics.push((format!("{}_s{}_bound", k.label, s), sig15(bound)));
        }
        // multiplicativity of j on coprime pairs, seeded scan
        let mut state = SUITE_SEED.wrapping_add(0x9e3779b97f4a7c15);
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        let mut violations = 0u32;
        let mut found = 0u32;
        while found < 500 {
            let m = 2 + next() % 1000;
            let n = 2 + next() % (SUITE_B_SMALL / 1001);
            if crate::arith::gcd_u64(m, n) != 1 {
                continue;
            }
            found += 1;
            if table.count(m * n) != table.count(m) * table.count(n) {
                violations += 1;
            }
        }
        pass &= violations == 0;
        metrics.push((format!("{}_j_mult_violations", k.label), violations.to_string()));
    }
    Ok(ReportEntry {
        id: "criterion-07-prop1-equivalence".into(),
        pass,
        metrics,
    })
}

fn criterion_8() -> Result<ReportEntry> {
    let z2 = riemann_extended(Complex64::new(2.0, 0.0))?;
    let basel_err = (z2.value.re - std::f64::consts::PI.powi(2) / 6.0).abs();
    let mut pass = basel_err <= 1e-9;
    let mut metrics = vec![("basel_abs_error".into(), sig15(basel_err))];
    let s_half = Complex64::new(0.5, 0.0);
    let a = zeta_via_2series(s_half);
    let b = zeta_via_3series(s_half);
    let gap = (a.value - b.value).norm();
    pass &= gap <= 1e-6;
    metrics.push(("routes_gap_s_half".into(), sig15(gap)));
    // at s_1 = 1 + 2 pi i / log 2 the 2-series denominator vanishes; the
    // dispatcher must produce the (finite) 3-series value there
    let s1 = Complex64::new(1.0, 2.0 * std::f64::consts::PI / 2f64.ln());
    let dispatched = riemann_extended(s1)?;
    let direct = zeta_via_3series(s1);
    let gap1 = (dispatched.value - direct.value).norm();
    pass &= dispatched.value.norm().is_finite() && gap1 <= 1e-6;
    metrics.push(("s1_value_norm".into(), sig15(dispatched.value.norm())));
    metrics.push(("routes_gap_s1".into(), sig15(gap1)));
    Ok(ReportEntry {
        id: "criterion-08-lemma2-extension".into(),
        pass,
        metrics,
    })
}

fn criterion_9(gauss: &NumberField, gauss_table: &IdealCountTable) -> Result<ReportEntry> {
    let r = factorization_check(gauss, gauss_table, 2.0)?;
    let target_err = (r.zeta_times_l - ZETA_GAUSS_2).abs();
    Ok(ReportEntry {
        id: "criterion-09-quadratic-factorization".into(),
        pass: r.pass && target_err <= 1e-6,
        metrics: vec![
            ("zeta_k".into(), sig15(r.zeta_k)),
            ("zeta_times_l".into(), sig15(r.zeta_times_l)),
            ("delta".into(), sig15(r.delta)),
            ("bound_sum".into(), sig15(r.bound_sum)),
            ("target_abs_error".into(), sig15(target_err)),
        ],
    })
}

fn criterion_10(gauss: &NumberField, gauss_table: &IdealCountTable) -> Result<ReportEntry> {
    let res_gauss = residue_estimate(gauss, gauss_table)?;
    let gauss_err = (res_gauss - gauss_table.kappa_hat()).abs();
    let q = NumberField::rationals();
    let q_table = ideal_counts(&q, SUITE_B)?;
    let res_q = residue_estimate(&q, &q_table)?;
    let q_err = (res_q - 1.0).abs();
    Ok(ReportEntry {
        id: "criterion-10-residue".into(),
        pass: gauss_err <= 0.02 && q_err <= 0.01,
        metrics: vec![
            ("gauss_residue".into(), sig15(res_gauss)),
            ("gauss_abs_error".into(), sig15(gauss_err)),
            ("rationals_residue".into(), sig15(res_q)),
            ("rationals_abs_error".into(), sig15(q_err)),
        ],
    })
}

fn criterion_11() -> Result<ReportEntry> {
    let r = check_cor4(100, 20)?;
    let worst = r
        .pairs
        .iter()
        .filter_map(|&(_, _, w)| w)
        .max()
        .unwrap_or(0);
    Ok(ReportEntry {
        id: "criterion-11-cor4-witnesses".into(),
        pass: r.pass,
        metrics: vec![
            ("pairs".into(), r.pairs.len().to_string()),
            ("largest_witness".into(), worst.to_string()),
        ],
    })
}

/// The full acceptance battery with pinned bounds and seed (criteria 1-11;
/// criterion 12, determinism of this function's output, is checked by
/// running it repeatedly under different thread pools and comparing
/// `results_json` bytes).
pub fn verify_suite() -> Result<SuiteResult> {
    let gauss = quadratic_field(-1)?;
    let gauss_table = ideal_counts(&gauss, SUITE_B)?;
    let entries = vec![
        criterion_1()?,
        criterion_2()?,
        criterion_3()?,
        criterion_4(),
        criterion_5()?,
        criterion_6(&gauss_table),
        criterion_7()?,
        criterion_8()?,
        criterion_9(&gauss, &gauss_table)?,
        criterion_10(&gauss, &gauss_table)?,
        criterion_11()?,
    ];
    Ok(SuiteResult::assemble(entries))
}

/// Execute the experiments selected by a parsed config.
pub fn run(config: &RunConfig) -> Result<SuiteResult> {
    config.validate()?;
    let mut entries = Vec::new();
    for (idx, e) in config.experiments.iter().enumerate() {
        let entry = match e {
            Experiment::Thm3 { field } => {
                let k = &config.fields[field];
                let r = experiment_thm3(k, config.x, config.chunks)?;
                ReportEntry {
                    id: format!("{idx:03}-{}", r.experiment_id),
                    pass: r.pass,
                    metrics: density_metrics(&r),
                }
            }
            Experiment::Cor1 { f, degree } => {
                let r = experiment_cor1(f, *degree, config.x, config.chunks)?;
                ReportEntry {
                    id: format!("{idx:03}-{}", r.experiment_id),
                    pass: r.pass,
                    metrics: density_metrics(&r),
                }
            }
            Experiment::Cor2 { f, degree } => {
                let r = experiment_cor2(f, *degree, config.x, config.chunks)?;
                ReportEntry {
                    id: format!("{idx:03}-{}", r.experiment_id),
                    pass: r.pass,
                    metrics: density_metrics(&r),
                }
            }
            Experiment::Cor3 { m, generators } => {
                let r = experiment_cor3(*m, generators, config.x, config.chunks)?;
                ReportEntry {
                    id: format!("{idx:03}-{}", r.experiment_id),
                    pass: r.pass,
                    metrics: density_metrics(&r),
                }
            }
            Experiment::Lemma3 => {
                let r = check_lemma3(config.x);
                ReportEntry {
                    id: format!("{idx:03}-lemma3"),
                    pass: r.pass,
                    metrics: vec![
                        ("checked".into(), r.checked.to_string()),
                        ("counterexamples".into(), r.counterexamples.len().to_string()),
                    ],
                }
            }
            Experiment::Identity { field } => {
                let k = &config.fields[field];
                let mut pass = true;
                let mut metrics = Vec::new();
                for &s in &config.s_values {
                    let r = check_thm3_identity(k, s, config.p)?;
                    pass &= r.pass;
                    metrics.push((format!("s{s}_diff"), sig15(r.diff)));
                    metrics.push((format!("s{s}_bound"), sig15(r.bound_sum)));
                }
                ReportEntry {
                    id: format!("{idx:03}-identity:{}", k.label),
                    pass,
                    metrics,
                }
            }
            Experiment::Cor4 => {
                let r = check_cor4(config.x, 20)?;
                ReportEntry {
                    id: format!("{idx:03}-cor4"),
                    pass: r.pass,
                    metrics: vec![("pairs".into(), r.pairs.len().to_string())],
                }
            }
        };
        entries.push(entry);
    }
    Ok(SuiteResult::assemble(entries))
}

/// Density report for an ad-hoc CLI invocation, outside any config file.
pub fn density_report_for_field(k: &NumberField, x: u64) -> DensityReport {
    let theoretical = 1.0 / k.degree as f64;
    natural_density(
        &format!("split:{}", k.label),
        x,
        theoretical,
        crate::density::DEFAULT_TOLERANCE,
        SUITE_CHUNKS,
        |p| classify_split(k, p),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig15_formatting() {
        assert_eq!(sig15(0.5), "5.00000000000000e-1");
        assert_eq!(sig15(std::f64::consts::PI), "3.14159265358979e0");
    }

    #[test]
    fn run_small_config() {
        let cfg = RunConfig::parse(
            "field gauss quadratic d=-1\nx 10000\nexperiment thm3 field=gauss\n",
        )
        .unwrap();
        let suite = run(&cfg).unwrap();
        assert_eq!(suite.entries.len(), 1);
        assert!(suite.pass, "{:?}", suite.entries);
    }

    #[test]
    fn run_empty_config() {
        let cfg = RunConfig::parse("").unwrap();
        let suite = run(&cfg).unwrap();
        assert!(suite.entries.is_empty());
        assert!(suite.pass);
    }

    #[test]
    fn csv_and_json_contain_same_numbers() {
        let cfg = RunConfig::parse(
            "field gauss quadratic d=-1\nx 10000\nexperiment thm3 field=gauss\n",
        )
        .unwrap();
        let suite = run(&cfg).unwrap();
        let csv = suite.to_csv();
        for (_, value) in &suite.entries[0].metrics {
            assert!(csv.contains(value.as_str()), "{value} missing from csv");
            assert!(suite.to_json().contains(value.as_str()));
        }
    }

    #[test]
    fn timestamp_shape() {
        let t = now_rfc3339();
        assert_eq!(t.len(), 20);
        assert!(t.ends_with('Z'));
        assert!(t.starts_with("20"));
    }
}
