use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use bohr_core::extremal::{
    build_extremal_pair, convex_distance, ks_distance, ks_extremal, starlike_distance,
    symmetric_distance,
};
use bohr_core::oracle::{self, SuiteReport};
use bohr_core::radius::{self, RadiusError, RadiusResult};
use bohr_core::{ClassTag, CoeffBoundProvider, Exponent, PsiModel, RadiusProblem, WeightSequence};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Command, Extremal, Format, PsiArgs, RadiusArgs, SeriesArgs, Suite, TableArgs, VerifyArgs};
use crate::config::RunConfig;
use crate::output::{round12, sig12, write_csv, write_json, write_records, RadiusRecord};
use crate::CliError;

/// Exit code of a solver failure.
pub const EXIT_SOLVER: u8 = 2;

/// Seeds handled by one worker when a suite is sharded.
const SHARD: usize = 50;

/// Failure lines printed per suite.
const SHOWN_FAILURES: usize = 20;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_value<T: FromStr>(what: &str, s: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    s.trim().parse().map_err(|e| usage(format!("invalid {what} {s:?}: {e}")))
}

/// Comma-separated list; empty input is an empty list.
fn parse_list<T: FromStr>(what: &str, s: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|v| parse_value(what, v)).collect()
}

fn build_psi(kind: Option<&str>, d: Option<f64>, e: Option<f64>, alpha: Option<f64>, file: Option<&Path>) -> Result<PsiModel, CliError> {
    let kind = match kind {
        Some(k) => k,
        None if file.is_some() => "custom",
        None if alpha.is_some() => "order-alpha",
        None if d.is_some() || e.is_some() => "janowski",
        None => "classical",
    };
    let model = match kind {
        "classical" => Ok(PsiModel::Classical),
        "janowski" => match (d, e) {
            (Some(d), Some(e)) => PsiModel::janowski(d, e),
            _ => return Err(usage("janowski psi needs both --D and --E")),
        },
        "order-alpha" => match alpha {
            Some(a) => PsiModel::order_alpha(a),
            None => return Err(usage("order-alpha psi needs --alpha")),
        },
        "custom" => match file {
            Some(path) => PsiModel::from_file(path),
            None => return Err(usage("custom psi needs --psi-file")),
        },
        other => return Err(usage(format!("unknown psi {other:?}"))),
    };
    model.map_err(|e| usage(e.to_string()))
}

fn psi_from_args(a: &PsiArgs) -> Result<PsiModel, CliError> {
    build_psi(a.psi.as_deref(), a.d, a.e, a.alpha, a.psi_file.as_deref())
}

fn build_bounds(name: &str, psi: &PsiModel, cfg: &RunConfig) -> Result<CoeffBoundProvider, CliError> {
    match name {
        "classical-n" => Ok(CoeffBoundProvider::ClassicalN),
        "janowski" => psi
            .janowski_params()
            .map(|(d, e)| CoeffBoundProvider::JanowskiProduct { d, e })
            .ok_or_else(|| usage("janowski bounds need a closed-form psi")),
        "order-alpha" => match psi {
            PsiModel::OrderAlpha { alpha } => Ok(CoeffBoundProvider::OrderAlphaProduct { alpha: *alpha }),
            _ => Err(usage("order-alpha bounds need an order-alpha psi")),
        },
        "extremal" => build_extremal_pair(psi, cfg.numeric.truncation)
            .map(|p| CoeffBoundProvider::extremal(p.f0))
            .map_err(|e| CliError::Solver(e.into())),
        other => Err(usage(format!("unknown bounds {other:?}"))),
    }
}

struct Common {
    class: ClassTag,
    weights: Option<WeightSequence>,
    bounds: Option<String>,
}

impl Common {
    fn parse(class: &str, weights: Option<&str>, bounds: Option<&str>) -> Result<Self, CliError> {
        Ok(Self {
            class: parse_value("class", class)?,
            weights: weights.map(|w| parse_value("weights", w)).transpose()?,
            bounds: bounds.map(str::to_string),
        })
    }

    fn problem(&self, psi: PsiModel, beta: f64, m: Exponent, n: usize, cfg: &RunConfig) -> Result<RadiusProblem, CliError> {
        let mut p = RadiusProblem::new(self.class, psi)
            .with_beta(beta)
            .with_m(m)
            .with_n(n)
            .with_numeric(cfg.numeric);
        // an explicit weight sequence wins; otherwise the tail starts at N
        p = p.with_weights(self.weights.clone().unwrap_or(WeightSequence::PowerTail(n)));
        if let Some(b) = &self.bounds {
            let bounds = build_bounds(b, &p.psi, cfg)?;
            p = p.with_bounds(bounds);
        }
        Ok(p)
    }
}

/// Stable status token; the full message goes to stderr.
fn status(e: &RadiusError) -> &'static str {
    match e {
        RadiusError::ConditionViolated { .. } => "condition-violated",
        RadiusError::NoRootInRange { .. } => "no-root",
        RadiusError::DivergenceBeforeRoot { .. } => "divergence",
        RadiusError::InvalidProblem(_) => "invalid-problem",
        RadiusError::UnknownSolver(_) => "unknown-solver",
        _ => "error",
    }
}

fn is_usage(e: &RadiusError) -> bool {
    matches!(e, RadiusError::InvalidProblem(_) | RadiusError::UnknownSolver(_))
}

fn record(p: &RadiusProblem, outcome: &Result<RadiusResult, RadiusError>) -> RadiusRecord {
    let (psi_d, psi_e) = p.psi.janowski_params().unzip();
    let alpha = match p.psi {
        PsiModel::OrderAlpha { alpha } => Some(alpha),
        _ => None,
    };
    let ok = outcome.as_ref().ok();
    RadiusRecord {
        class: p.class.to_string(),
        psi_D: psi_d,
        psi_E: psi_e,
        alpha,
        beta: p.beta,
        m: p.m.to_string(),
        N: p.n,
        weights: p.weights.to_string(),
        r0: ok.map(|r| r.r0),
        rb: ok.map(|r| r.rb),
        capped: ok.map(|r| r.capped),
        residual: ok.map(|r| r.residual),
        status: match outcome {
            Ok(_) => "ok".to_string(),
            Err(e) => status(e).to_string(),
        },
    }
}

fn cmd_radius<W: Write>(out: W, a: &RadiusArgs, cfg: &RunConfig) -> Result<u8, CliError> {
    let common = Common::parse(&a.class, a.weights.as_deref(), a.bounds.as_deref())?;
    let psi = psi_from_args(&a.psi)?;
    let m: Exponent = parse_value("m", &a.m)?;
    let p = common.problem(psi, a.beta, m, a.n, cfg)?;
    let outcome = radius::solve(&p);
    if let Err(e) = &outcome {
        if is_usage(e) {
            return Err(usage(e.to_string()));
        }
        eprintln!("error: {e}");
    }
    write_records(out, cfg.format, &[record(&p, &outcome)], true)?;
    Ok(if outcome.is_ok() { 0 } else { EXIT_SOLVER })
}

fn table_psis(a: &TableArgs) -> Result<Vec<PsiModel>, CliError> {
    let ds: Option<Vec<f64>> = a.d.as_deref().map(|s| parse_list("D", s)).transpose()?;
    let es: Option<Vec<f64>> = a.e.as_deref().map(|s| parse_list("E", s)).transpose()?;
    let alphas: Option<Vec<f64>> = a.alpha.as_deref().map(|s| parse_list("alpha", s)).transpose()?;
    let file = a.psi_file.as_deref();
    let kind = match a.psi.as_deref() {
        Some(k) => k,
        None if file.is_some() => "custom",
        None if alphas.is_some() => "order-alpha",
        None if ds.is_some() || es.is_some() => "janowski",
        None => "classical",
    };
    match kind {
        "janowski" => {
            let (Some(ds), Some(es)) = (ds, es) else {
                return Err(usage("janowski grids need both --D and --E"));
            };
            let mut out = Vec::new();
            for &d in &ds {
                for &e in &es {
                    out.push(build_psi(Some(kind), Some(d), Some(e), None, None)?);
                }
            }
            Ok(out)
        }
        "order-alpha" => alphas
            .ok_or_else(|| usage("order-alpha grids need --alpha"))?
            .into_iter()
            .map(|alpha| build_psi(Some(kind), None, None, Some(alpha), None))
            .collect(),
        other => Ok(vec![build_psi(Some(other), None, None, None, file)?]),
    }
}

fn cmd_table<W: Write>(out: W, a: &TableArgs, cfg: &RunConfig) -> Result<u8, CliError> {
    let common = Common::parse(&a.class, a.weights.as_deref(), a.bounds.as_deref())?;
    let psis = table_psis(a)?;
    let betas: Vec<f64> = parse_list("beta", &a.beta)?;
    let ms: Vec<Exponent> = parse_list("m", &a.m)?;
    let ns: Vec<usize> = parse_list("N", &a.n)?;
    let mut problems = Vec::new();
    for psi in &psis {
        for &beta in &betas {
            for &m in &ms {
                for &n in &ns {
                    problems.push(common.problem(psi.clone(), beta, m, n, cfg)?);
                }
            }
        }
    }
    // rows run concurrently; collect keeps input order
    let outcomes: Vec<_> = problems.par_iter().map(radius::solve).collect();
    let mut records = Vec::with_capacity(problems.len());
    for (i, (p, outcome)) in problems.iter().zip(&outcomes).enumerate() {
        if let Err(e) = outcome {
            eprintln!("row {}: {e}", i + 1);
        }
        records.push(record(p, outcome));
    }
    write_records(out, cfg.format, &records, false)?;
    Ok(0)
}

fn sharded(count: usize, seed: u64, run: impl Fn(u64, usize) -> SuiteReport + Sync) -> SuiteReport {
    let starts: Vec<usize> = (0..count).step_by(SHARD).collect();
    let parts: Vec<SuiteReport> = starts
        .par_iter()
        .map(|&start| run(seed.wrapping_add(start as u64), SHARD.min(count - start)))
        .collect();
    let mut parts = parts.into_iter();
    let mut total = parts.next().unwrap_or_else(|| run(seed, 0));
    for p in parts {
        total.merge(p);
    }
    total
}

#[derive(Serialize)]
struct SuiteRecord {
    suite: String,
    passed: usize,
    total: usize,
    ok: bool,
    failures: Vec<String>,
}

fn cmd_verify<W: Write>(mut out: W, a: &VerifyArgs, cfg: &RunConfig) -> Result<u8, CliError> {
    let seed = cfg.seed;
    let suites = match a.suite {
        Suite::All => vec![Suite::Lemma, Suite::Weighted, Suite::Operator, Suite::Radius, Suite::Growth],
        s => vec![s],
    };
    let mut reports: Vec<(String, SuiteReport)> = Vec::new();
    for suite in suites {
        match suite {
            Suite::Lemma => {
                let ns = a.n.map_or(vec![1, 2, 3], |n| vec![n]);
                if ns.contains(&0) {
                    return Err(usage("the lemma suite needs N >= 1"));
                }
                let count = a.count.unwrap_or(1000);
                reports.push(("lemma".into(), sharded(count, seed, |s, c| oracle::lemma_suite(s, c, &ns))));
            }
            Suite::Weighted => {
                let count = a.count.unwrap_or(500);
                let run = |s, c| oracle::weighted_suite(s, c, &WeightSequence::OddPowers, 0.3);
                reports.push(("weighted".into(), sharded(count, seed, run)));
            }
            Suite::Operator => {
                let count = a.count.unwrap_or(1000);
                for n in a.n.map_or(vec![0, 1, 2, 3], |n| vec![n]) {
                    let run = |s, c| oracle::operator_suite(s, c, n);
                    reports.push((format!("operator(N={n})"), sharded(count, seed, run)));
                }
            }
            Suite::Radius => {
                let count = a.count.unwrap_or(100);
                reports.push(("radius".into(), oracle::radius_suite(seed, count, cfg.theta_samples)));
            }
            Suite::Growth => {
                let count = a.count.unwrap_or(100);
                let run = |s, c| oracle::growth_suite(s, c, &PsiModel::Classical, 0.4);
                reports.push(("growth".into(), sharded(count, seed, run)));
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    let all_ok = reports.iter().all(|(_, r)| r.ok());
    match cfg.format {
        Format::Json => {
            let records: Vec<SuiteRecord> = reports
                .iter()
                .map(|(name, r)| SuiteRecord {
                    suite: name.clone(),
                    passed: r.passed,
                    total: r.total,
                    ok: r.ok(),
                    failures: r.failures.iter().map(ToString::to_string).collect(),
                })
                .collect();
            write_json(out, &records)?;
        }
        Format::Csv => {
            for (name, r) in &reports {
                writeln!(out, "{name} {r}")?;
                for f in r.failures.iter().take(SHOWN_FAILURES) {
                    writeln!(out, "  {f}")?;
                }
                if r.failures.len() > SHOWN_FAILURES {
                    writeln!(out, "  ... {} more", r.failures.len() - SHOWN_FAILURES)?;
                }
            }
        }
    }
    Ok(if all_ok { 0 } else { EXIT_SOLVER })
}

#[derive(Serialize)]
struct Constants {
    psi: String,
    starlike_distance: f64,
    convex_distance: f64,
    ks_distance: f64,
    symmetric_distance: f64,
}

fn cmd_constants<W: Write>(out: W, a: &PsiArgs, cfg: &RunConfig) -> Result<u8, CliError> {
    let psi = psi_from_args(a)?;
    let tol = cfg.numeric.quad_tol;
    let solver = |e: bohr_core::extremal::ExtremalError| CliError::Solver(e.into());
    let c = Constants {
        psi: psi.to_string(),
        starlike_distance: round12(starlike_distance(&psi, tol).map_err(solver)?),
        convex_distance: round12(convex_distance(&psi, tol).map_err(solver)?),
        ks_distance: round12(ks_distance(&psi, tol).map_err(solver)?),
        symmetric_distance: round12(symmetric_distance(&psi, tol).map_err(solver)?),
    };
    match cfg.format {
        Format::Json => write_json(out, &c)?,
        Format::Csv => write_csv(
            out,
            &["psi", "starlike_distance", "convex_distance", "ks_distance", "symmetric_distance"],
            &[vec![
                c.psi.clone(),
                sig12(c.starlike_distance),
                sig12(c.convex_distance),
                sig12(c.ks_distance),
                sig12(c.symmetric_distance),
            ]],
        )?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct Coefficient {
    n: usize,
    re: f64,
    im: f64,
}

fn cmd_series<W: Write>(out: W, a: &SeriesArgs, cfg: &RunConfig) -> Result<u8, CliError> {
    let psi = psi_from_args(&a.psi)?;
    let order = cfg.numeric.truncation.max(a.count);
    let solver = |e: bohr_core::extremal::ExtremalError| CliError::Solver(e.into());
    let series = match a.function {
        Extremal::Ks => ks_extremal(&psi, order),
        f => {
            let pair = build_extremal_pair(&psi, order).map_err(solver)?;
            match f {
                Extremal::F0 => pair.f0,
                Extremal::K => pair.k_psi,
                _ => pair.symmetric_extremal().map_err(solver)?,
            }
        }
    };
    let coeffs: Vec<Coefficient> = series
        .coeffs()
        .iter()
        .take(a.count)
        .enumerate()
        .map(|(n, c)| Coefficient { n, re: round12(c.re), im: round12(c.im) })
        .collect();
    match cfg.format {
        Format::Json => write_json(out, &coeffs)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = coeffs
                .iter()
                .map(|c| vec![c.n.to_string(), sig12(c.re), sig12(c.im)])
                .collect();
            write_csv(out, &["n", "re", "im"], &rows)?;
        }
    }
    Ok(0)
}

pub fn run<W: Write>(out: W, command: &Command, cfg: &RunConfig) -> Result<u8, CliError> {
    match command {
        Command::Radius(a) => cmd_radius(out, a, cfg),
        Command::Table(a) => cmd_table(out, a, cfg),
        Command::Verify(a) => cmd_verify(out, a, cfg),
        Command::Constants(a) => cmd_constants(out, a, cfg),
        Command::Series(a) => cmd_series(out, a, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list::<f64>("beta", "0, 0.25,0.5").unwrap(), vec![0.0, 0.25, 0.5]);
        assert!(parse_list::<f64>("beta", "").unwrap().is_empty());
        assert_eq!(
            parse_list::<Exponent>("m", "1,inf").unwrap(),
            vec![Exponent::Finite(1), Exponent::Infinite]
        );
        assert!(parse_list::<f64>("beta", "x").is_err());
    }

    #[test]
    fn psi_inference() {
        assert_eq!(build_psi(None, None, None, None, None).unwrap(), PsiModel::Classical);
        assert_eq!(
            build_psi(None, None, None, Some(0.5), None).unwrap(),
            PsiModel::order_alpha(0.5).unwrap()
        );
        assert_eq!(
            build_psi(None, Some(1.0), Some(0.0), None, None).unwrap(),
            PsiModel::janowski(1.0, 0.0).unwrap()
        );
        assert!(build_psi(Some("janowski"), Some(1.0), None, None, None).is_err());
        assert!(build_psi(Some("janowski"), Some(0.0), Some(0.5), None, None).is_err());
        assert!(build_psi(Some("bogus"), None, None, None, None).is_err());
    }

    #[test]
    fn sharding_is_invisible() {
        let whole = oracle::lemma_suite(7, 120, &[1, 2]);
        let split = sharded(120, 7, |s, c| oracle::lemma_suite(s, c, &[1, 2]));
        assert_eq!(whole, split);
    }
}
