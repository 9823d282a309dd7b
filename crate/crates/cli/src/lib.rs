//! Runner layer behind the `grover-noise` binary: sweep assembly,
//! validation reporting, threshold queries and figure emission, kept
//! library-shaped so the integration tests can drive them directly.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use grover_noise::analytic::{closed_form_probability, p_max, t_max};
use grover_noise::oracle::simulate_trace;
use grover_noise::threshold::{eta_threshold, speedup_report};
use grover_noise::validation;
use grover_noise::{ChannelKind, Error, GroverParams, NoiseChannel, Placement};

pub mod csv;

use csv::{DataRow, SummaryRow, SummarySource};

/// Failure modes of a run, carrying the process exit code:
/// 1 invariant failure, 2 invalid arguments, 3 I/O error.
#[derive(Debug)]
pub enum CliError {
    InvalidArgs(String),
    InvariantFailure(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvariantFailure(_) => 1,
            CliError::InvalidArgs(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::InvalidArgs(msg) => write!(f, "invalid arguments: {msg}"),
            CliError::InvariantFailure(msg) => write!(f, "invariant failure: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::MonotonicityViolated { .. } => CliError::InvariantFailure(err.to_string()),
            other => CliError::InvalidArgs(other.to_string()),
        }
    }
}

/// One sweep or figure request.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_items: u64,
    pub n_targets: u64,
    pub kind: ChannelKind,
    /// Contraction factors eta for diagonalizable kinds; gamma values for
    /// amplitude damping, which has no eta.
    pub noise_values: Vec<f64>,
    pub t_end: usize,
    pub placement: Placement,
}

impl SweepConfig {
    fn params(&self) -> Result<GroverParams<f64>, CliError> {
        Ok(GroverParams::new(self.n_items, self.n_targets)?)
    }

    fn channel(&self, value: f64) -> Result<NoiseChannel<f64>, CliError> {
        if self.kind == ChannelKind::AmplitudeDamping {
            Ok(NoiseChannel::amplitude_damping(value)?)
        } else {
            Ok(NoiseChannel::from_eta(self.kind, value)?)
        }
    }
}

/// Evaluates the sweep: one data row per (value, t), one summary row per
/// value. Rows are ordered by noise value descending then t ascending;
/// value points are evaluated in parallel and assembled in input order,
/// so the output is deterministic.
pub fn sweep_blocks(config: &SweepConfig) -> Result<(Vec<DataRow>, Vec<SummaryRow>), CliError> {
    if config.t_end == 0 {
        return Err(CliError::InvalidArgs("t-end must be at least 1".into()));
    }
    let params = config.params()?;
    let mut values = config.noise_values.clone();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::InvalidArgs("noise values must be finite".into()));
    }
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));

    // Validate channels up front so worker threads only see good input.
    for &v in &values {
        config.channel(v)?;
    }

    let blocks: Vec<(Vec<DataRow>, SummaryRow)> = values
        .par_iter()
        .map(|&value| evaluate_point(&params, config, value))
        .collect();

    let mut data = Vec::with_capacity(values.len() * (config.t_end + 1));
    let mut summary = Vec::with_capacity(values.len());
    for (rows, peak) in blocks {
        data.extend(rows);
        summary.push(peak);
    }
    Ok((data, summary))
}

fn evaluate_point(
    params: &GroverParams<f64>,
    config: &SweepConfig,
    value: f64,
) -> (Vec<DataRow>, SummaryRow) {
    let channel = config.channel(value).expect("validated before dispatch");
    let code = config.kind.code().to_string();
    let trace = simulate_trace(params, &channel, config.t_end, config.placement);
    let rows = trace
        .points
        .iter()
        .map(|&(t, p_oracle)| {
            let p_analytic = closed_form_probability(params, &channel, t).ok();
            DataRow {
                channel: code.clone(),
                eta: value,
                t,
                p_analytic,
                p_oracle,
                abs_diff: p_analytic.map(|a| (a - p_oracle).abs()),
            }
        })
        .collect();

    // The analytic extremum exists for the scaled-rotation family; the
    // other kinds report the scanned peak.
    let summary = match config.kind {
        ChannelKind::BitPhaseFlip | ChannelKind::Depolarizing => {
            let eta = channel.effective_eta().expect("diagonalizable");
            SummaryRow {
                channel: code,
                eta: value,
                t_m: t_max(params, eta).expect("eta validated"),
                p_max: p_max(params, eta).expect("eta validated"),
                source: SummarySource::Analytic,
            }
        }
        _ => SummaryRow {
            channel: code,
            eta: value,
            t_m: trace.argmax_t,
            p_max: trace.p_max,
            source: SummarySource::Scan,
        },
    };
    (rows, summary)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a sweep and writes the CSV to `out` (stdout when `None`).
pub fn run_sweep(config: &SweepConfig, out: Option<&Path>) -> Result<(), CliError> {
    let (data, summary) = sweep_blocks(config)?;
    write_output(out, &csv::render(&data, &summary))
}

/// Runs the standard invariant suite, printing one line per check.
/// Returns `Ok` only if every check passed.
pub fn run_validate() -> Result<(), CliError> {
    println!(
        "analytic grid: pf, bf, bpf, pd, dp (amplitude damping has no closed form; \
         it is exercised by the cptp-random check)"
    );
    let results = validation::standard_suite();
    let mut all_passed = true;
    for check in &results {
        let verdict = if check.passed { "pass" } else { "FAIL" };
        println!("{:<24} {:<5} {}", check.name, verdict, check.detail);
        all_passed &= check.passed;
    }
    if all_passed {
        Ok(())
    } else {
        let failed: Vec<&str> = results
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        Err(CliError::InvariantFailure(failed.join(", ")))
    }
}

/// A threshold query.
#[derive(Debug, Clone)]
pub struct ThresholdConfig {
    pub n_items: u64,
    pub n_targets: u64,
    pub kind: ChannelKind,
    pub p_requested: f64,
}

/// Finds the noise threshold for the requested success probability and
/// prints the query comparison; optionally appends a one-row CSV.
pub fn run_threshold(config: &ThresholdConfig, out: Option<&Path>) -> Result<(), CliError> {
    let params = GroverParams::new(config.n_items, config.n_targets)?;
    match eta_threshold(&params, config.kind, config.p_requested) {
        Ok(res) => {
            println!("channel:            {}", res.channel_kind);
            println!("requested success:  {}", config.p_requested);
            println!("eta threshold:      {:.6}", res.eta_star);
            println!(
                "achieved success:   {:.6} at t = {}",
                res.p_achieved, res.t_at_threshold
            );
            println!("quantum queries:    {}", res.quantum_queries);
            println!(
                "classical baseline: {} queries for success 1/2",
                res.classical_queries
            );
            println!(
                "quantum advantage:  {}",
                if res.quantum_advantage() { "yes" } else { "no" }
            );
            if let Some(path) = out {
                let text = format!(
                    "channel,p_requested,eta_star,t_at_threshold,p_achieved,quantum_queries,classical_queries,advantage\n{},{},{},{},{},{},{},{}\n",
                    res.channel_kind,
                    csv::fmt_float(res.p_requested),
                    csv::fmt_float(res.eta_star),
                    res.t_at_threshold,
                    csv::fmt_float(res.p_achieved),
                    res.quantum_queries,
                    csv::fmt_float(res.classical_queries),
                    res.quantum_advantage(),
                );
                write_output(Some(path), &text)?;
            }
            Ok(())
        }
        Err(Error::TrivialRequest { requested }) => {
            println!(
                "trivial: any eta in (0, 1] reaches success {requested} for the {} channel",
                config.kind
            );
            // Query count at a representative heavy-noise point; for the
            // scaled-rotation family it is the same at every eta.
            if let Ok(channel) = NoiseChannel::from_eta(config.kind, 0.05) {
                if let Ok(rep) = speedup_report(&params, &channel, config.p_requested) {
                    println!("quantum queries:    {}", rep.quantum_queries);
                    println!(
                        "classical baseline: {} queries for success 1/2",
                        rep.classical_queries
                    );
                    println!(
                        "quantum advantage:  {}",
                        if rep.advantage { "yes" } else { "no" }
                    );
                }
            }
            Ok(())
        }
        Err(other) => Err(other.into()),
    }
}

/// Figure emission request; `t_end = None` defaults to 4T.
#[derive(Debug, Clone)]
pub struct FigureConfig {
    pub n_items: u64,
    pub n_targets: u64,
    pub noise_values: Vec<f64>,
    pub t_end: Option<usize>,
    pub placement: Placement,
    pub out_dir: PathBuf,
}

/// Emits one CSV per noisy-search family (phase flip, bit flip,
/// bit-phase flip) with the per-eta peak series, and returns the paths.
pub fn run_figure(config: &FigureConfig) -> Result<Vec<PathBuf>, CliError> {
    let params = GroverParams::<f64>::new(config.n_items, config.n_targets)?;
    let t_end = config
        .t_end
        .unwrap_or_else(|| 4 * params.optimal_iterations().max(1));
    let mut paths = Vec::new();
    for kind in [
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::BitPhaseFlip,
    ] {
        let sweep = SweepConfig {
            n_items: config.n_items,
            n_targets: config.n_targets,
            kind,
            noise_values: config.noise_values.clone(),
            t_end,
            placement: config.placement,
        };
        let (data, summary) = sweep_blocks(&sweep)?;
        let path = config.out_dir.join(format!("figure-{}.csv", kind.code()));
        write_output(Some(&path), &csv::render(&data, &summary))?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_sweep() -> SweepConfig {
        SweepConfig {
            n_items: 256,
            n_targets: 1,
            kind: ChannelKind::BitPhaseFlip,
            noise_values: vec![1.0, 0.9, 0.8, 0.7],
            t_end: 40,
            placement: Placement::PerIteration,
        }
    }

    #[test]
    fn default_sweep_shape() {
        let (data, summary) = sweep_blocks(&default_sweep()).unwrap();
        assert_eq!(data.len(), 4 * 41);
        assert_eq!(summary.len(), 4);
        // Ordered by eta descending, then t ascending.
        assert_eq!(data[0].eta, 1.0);
        assert_eq!(data[40].t, 40);
        assert_eq!(data[41].eta, 0.9);
        assert!(summary.windows(2).all(|w| w[0].eta > w[1].eta));
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = sweep_blocks(&default_sweep()).unwrap();
        let b = sweep_blocks(&default_sweep()).unwrap();
        assert_eq!(csv::render(&a.0, &a.1), csv::render(&b.0, &b.1));
    }

    #[test]
    fn analytic_column_tracks_oracle() {
        let (data, _) = sweep_blocks(&default_sweep()).unwrap();
        for row in &data {
            let diff = row.abs_diff.expect("closed form exists for bpf");
            assert!(diff <= 1e-9, "eta={} t={}: {diff}", row.eta, row.t);
        }
    }

    #[test]
    fn amplitude_damping_uses_empty_sentinel() {
        let config = SweepConfig {
            kind: ChannelKind::AmplitudeDamping,
            noise_values: vec![0.9, 0.5],
            ..default_sweep()
        };
        let (data, summary) = sweep_blocks(&config).unwrap();
        assert!(data.iter().all(|r| r.p_analytic.is_none() && r.abs_diff.is_none()));
        assert!(summary.iter().all(|s| s.source == SummarySource::Scan));
    }

    #[test]
    fn rejects_bad_configs() {
        let mut config = default_sweep();
        config.t_end = 0;
        assert!(matches!(
            sweep_blocks(&config),
            Err(CliError::InvalidArgs(_))
        ));

        let mut config = default_sweep();
        config.noise_values = vec![1.5];
        assert!(sweep_blocks(&config).is_err());

        let mut config = default_sweep();
        config.kind = ChannelKind::AmplitudeDamping;
        config.noise_values = vec![f64::NAN];
        assert!(sweep_blocks(&config).is_err());
    }
}
