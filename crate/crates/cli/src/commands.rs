use std::io::Write;

use fneq_core::analysis::{
    boundary_probe, classify_regime, classify_smoothness, default_ladder, find_nonmonotone_witness, glue, run_suite,
    NotC1Reason, ProbeRow, Side, Smoothness, Witness,
};
use fneq_core::{s_to_x, BranchSolution, EquationParams, S_MAX, S_MIN};
use serde::{Deserialize, Serialize};

use crate::cli::{Command, Equation, Format, ReportC1Args, SampleArgs, VerifyArgs, WitnessArgs};
use crate::{pspec, CliError, Output};

/// Per-row residual bound used by `sample`, relative to `1 + |f(x)| + |f(x^2 R)|`.
pub const SAMPLE_RESIDUAL_TOL: f64 = 1e-10;

pub const CSV_HEADER: [&str; 5] = ["x", "s", "f", "f_prime", "residual"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub x: f64,
    pub s: f64,
    pub f: f64,
    pub f_prime: f64,
    pub residual: f64,
}

impl SampleRow {
    /// Both sides of the identity have size `|f(x^2 R)| = |k/(2xR) f(x)|`.
    pub fn within_tolerance(&self, params: &EquationParams) -> bool {
        let image = params.k() / (2.0 * self.x * params.r()) * self.f;
        self.residual.abs() <= SAMPLE_RESIDUAL_TOL * (1.0 + self.f.abs() + image.abs())
    }
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Classify(eq) => classify(eq),
        Command::Sample(args) => sample(args),
        Command::Verify(args) => verify(args),
        Command::Witness(args) => witness(args),
        Command::ReportC1(args) => report_c1(args),
    }
}

fn params(eq: &Equation) -> Result<EquationParams, CliError> {
    Ok(EquationParams::new(eq.r, eq.k)?)
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::failure(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn passed(stdout: String) -> Output {
    Output { stdout, stderr: String::new(), code: 0 }
}

#[derive(Serialize)]
struct ClassifyReport {
    #[serde(rename = "R")]
    r: f64,
    k: f64,
    c: f64,
    regime: String,
    monotone_phi: bool,
    continuity_rule: &'static str,
    c1_rule: &'static str,
}

fn classify(eq: &Equation) -> Result<Output, CliError> {
    let params = params(eq)?;
    let regime = classify_regime(params.k())?;
    json(&ClassifyReport {
        r: params.r(),
        k: params.k(),
        c: params.c(),
        regime: regime.to_string(),
        monotone_phi: regime.phi_monotone(),
        continuity_rule: regime.continuity_rule(),
        c1_rule: regime.c1_rule(params.k()),
    })
    .map(passed)
}

/// Rounds to a multiple of `2^-40` so that `s + 1` is exact.
fn dyadic(s: f64) -> f64 {
    const SCALE: f64 = (1u64 << 40) as f64;
    (s * SCALE).round() / SCALE
}

pub fn sample_rows(sol: &BranchSolution, smin: f64, smax: f64, n: usize) -> Result<Vec<SampleRow>, CliError> {
    // each residual also evaluates the image point at s + 1
    let top = S_MAX - 1.0;
    if n < 2 {
        return Err(CliError::usage(format!("--n must be at least 2, got {n}")));
    }
    if !(smin < smax) {
        return Err(CliError::usage(format!("need smin < smax, got {smin} and {smax}")));
    }
    if smin < S_MIN || smax > top {
        return Err(CliError::usage(format!("s range [{smin}, {smax}] leaves the sampling window [{S_MIN}, {top}]")));
    }
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            let s = dyadic(smin + (smax - smin) * t).clamp(smin, smax);
            Ok(SampleRow {
                x: s_to_x(sol.params(), sol.branch(), s)?,
                s,
                f: sol.eval_at_s(s)?,
                f_prime: sol.eval_prime_at_s(s)?,
                residual: sol.residual_at_s(s)?,
            })
        })
        .collect()
}

pub fn render_csv(rows: &[SampleRow]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::failure(e.to_string());
    writer.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        writer
            .write_record([row.x, row.s, row.f, row.f_prime, row.residual].map(|v| format!("{v:.16e}")))
            .map_err(io)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::failure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::failure(e.to_string()))
}

pub fn parse_sample_csv(text: &str) -> Result<Vec<SampleRow>, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| CliError::usage(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::usage(format!("unexpected CSV header {header:?}")));
    }
    reader.deserialize().collect::<Result<Vec<SampleRow>, _>>().map_err(|e| CliError::usage(e.to_string()))
}

fn sample(args: &SampleArgs) -> Result<Output, CliError> {
    let params = params(&args.eq)?;
    let p = pspec::parse(&args.p)?;
    let sol = BranchSolution::new(params, p, args.branch);
    let rows = sample_rows(&sol, args.smin, args.smax, args.n)?;
    let text = match args.format {
        Format::Csv => render_csv(&rows)?,
        Format::Json => json(&rows)?,
    };

    let stdout = match &args.out {
        Some(path) => {
            std::fs::File::create(path)
                .and_then(|mut file| file.write_all(text.as_bytes()))
                .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };

    let bad = rows.iter().filter(|row| !row.within_tolerance(&params)).count();
    if bad > 0 {
        return Ok(Output {
            stdout,
            stderr: format!("{bad} of {} rows exceed the residual tolerance\n", rows.len()),
            code: 1,
        });
    }
    Ok(passed(stdout))
}

fn verify(args: &VerifyArgs) -> Result<Output, CliError> {
    let tol = args.tol.unwrap_or_else(|| args.suite.default_tol());
    let report = run_suite(args.suite, args.trials, args.seed, tol)?;
    let stdout = json(&report)?;
    Ok(Output { stdout, stderr: String::new(), code: if report.pass { 0 } else { 1 } })
}

#[derive(Serialize)]
struct WitnessReport {
    #[serde(rename = "R")]
    r: f64,
    k: f64,
    p: String,
    #[serde(flatten)]
    witness: Witness,
    f_low_reeval: f64,
    f_high_reeval: f64,
    verified: bool,
}

fn witness(args: &WitnessArgs) -> Result<Output, CliError> {
    let params = params(&args.eq)?;
    let p = pspec::parse(&args.p)?;
    let witness = find_nonmonotone_witness(&params, &p)?;
    let sol = BranchSolution::new(params, p.clone(), fneq_core::Branch::Right);
    let f_low_reeval = sol.eval(witness.x_low)?;
    let f_high_reeval = sol.eval(witness.x_high)?;
    let verified = witness.x_low < witness.x_high && f_high_reeval > f_low_reeval;
    let stdout = json(&WitnessReport {
        r: params.r(),
        k: params.k(),
        p: pspec::render(&p),
        witness,
        f_low_reeval,
        f_high_reeval,
        verified,
    })?;
    Ok(Output { stdout, stderr: String::new(), code: if verified { 0 } else { 1 } })
}

#[derive(Serialize)]
struct C1Report {
    #[serde(rename = "R")]
    r: f64,
    k: f64,
    c: f64,
    p_right: String,
    p_left: String,
    c1: bool,
    derivative_at_boundary: Option<f64>,
    reason: Option<NotC1Reason>,
    /// limit of the right-branch derivative bracket, when it exists
    #[serde(rename = "L")]
    bracket_limit: Option<f64>,
    probe_right: Vec<ProbeRow>,
    probe_left: Vec<ProbeRow>,
}

pub fn parse_ladder(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|v| {
            v.trim().parse::<f64>().map_err(|_| CliError::usage(format!("ladder entry {:?} is not a number", v.trim())))
        })
        .collect()
}

fn report_c1(args: &ReportC1Args) -> Result<Output, CliError> {
    let params = params(&args.eq)?;
    let p_right = pspec::parse(&args.p_right)?;
    let p_left = pspec::parse(&args.p_left)?;
    let verdict = classify_smoothness(&params, &p_right, &p_left)?;
    let glued = glue(&params, &p_left, &p_right)?;
    let ladder = match &args.ladder {
        Some(text) => parse_ladder(text)?,
        None => default_ladder(),
    };
    let (derivative_at_boundary, reason) = match verdict.smoothness {
        Smoothness::C1WithDerivative(v) => (Some(v), None),
        Smoothness::NotC1(reason) => (None, Some(reason)),
    };
    json(&C1Report {
        r: params.r(),
        k: params.k(),
        c: params.c(),
        p_right: pspec::render(&p_right),
        p_left: pspec::render(&p_left),
        c1: verdict.is_c1(),
        derivative_at_boundary,
        reason,
        bracket_limit: verdict.bracket_limit,
        probe_right: boundary_probe(&glued, Side::Right, &ladder)?,
        probe_left: boundary_probe(&glued, Side::Left, &ladder)?,
    })
    .map(passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fneq_core::{Branch, PeriodicMap};

    #[test]
    fn csv_round_trips_bitwise() {
        let params = EquationParams::new(1.3, 3.0).unwrap();
        let p = PeriodicMap::new(1.0, vec![(0.3, 0.1)]).unwrap();
        let sol = BranchSolution::new(params, p, Branch::Left);
        let rows = sample_rows(&sol, -7.0, 4.0, 37).unwrap();
        let back = parse_sample_csv(&render_csv(&rows).unwrap()).unwrap();
        assert_eq!(rows, back);
        assert!(back.iter().all(|row| row.within_tolerance(&params)));
    }

    #[test]
    fn sample_window() {
        let sol = BranchSolution::phi(EquationParams::new(1.0, 2.0).unwrap());
        assert_eq!(sample_rows(&sol, -100.0, 3.0, 10).unwrap_err().code, 2);
        assert_eq!(sample_rows(&sol, -5.0, 9.0, 10).unwrap_err().code, 2);
        assert_eq!(sample_rows(&sol, 3.0, -5.0, 10).unwrap_err().code, 2);
        assert_eq!(sample_rows(&sol, -5.0, 3.0, 1).unwrap_err().code, 2);
        let rows = sample_rows(&sol, S_MIN, S_MAX - 1.0, 2).unwrap();
        assert_eq!(rows[0].s, S_MIN);
        assert!((rows[1].s - (S_MAX - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn ladder_text() {
        assert_eq!(parse_ladder("1e-3, 1e-4").unwrap(), vec![1e-3, 1e-4]);
        assert!(parse_ladder("1e-3,,1e-4").is_err());
    }

    #[test]
    fn rejects_bad_header() {
        assert!(parse_sample_csv("x,s,f\n1,2,3\n").is_err());
    }
}
