//! Deterministic CSV emission and parsing.
//!
//! Floats are printed with 12 significant digits in scientific notation
//! and '\n' line endings, so identical configurations produce
//! byte-identical files; parsing recovers every printed digit.

pub const DATA_HEADER: &str = "channel,eta,t,p_analytic,p_oracle,abs_diff";
pub const SUMMARY_HEADER: &str = "channel,eta,t_m,p_max,source";

/// One `(eta, t)` sample: analytic and oracle probabilities side by side.
/// The analytic fields are `None` for amplitude damping, which has no
/// closed form; they render as empty fields.
#[derive(Debug, Clone, PartialEq)]
pub struct DataRow {
    pub channel: String,
    pub eta: f64,
    pub t: usize,
    pub p_analytic: Option<f64>,
    pub p_oracle: f64,
    pub abs_diff: Option<f64>,
}

/// Per-eta peak: the star-marker series.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub channel: String,
    pub eta: f64,
    pub t_m: usize,
    pub p_max: f64,
    pub source: SummarySource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummarySource {
    Analytic,
    Scan,
}

impl SummarySource {
    fn label(self) -> &'static str {
        match self {
            SummarySource::Analytic => "analytic",
            SummarySource::Scan => "scan",
        }
    }
}

/// 12 significant digits, scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

/// Renders the data block followed by the summary block.
pub fn render(data: &[DataRow], summary: &[SummaryRow]) -> String {
    let mut out = String::new();
    out.push_str(DATA_HEADER);
    out.push('\n');
    for row in data {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.channel,
            fmt_float(row.eta),
            row.t,
            fmt_opt(row.p_analytic),
            fmt_float(row.p_oracle),
            fmt_opt(row.abs_diff),
        ));
    }
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for row in summary {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.channel,
            fmt_float(row.eta),
            row.t_m,
            fmt_float(row.p_max),
            row.source.label(),
        ));
    }
    out
}

/// Parses a file produced by [`render`].
pub fn parse(text: &str) -> Result<(Vec<DataRow>, Vec<SummaryRow>), String> {
    let mut data = Vec::new();
    let mut summary = Vec::new();
    let mut in_summary = false;
    for (idx, line) in text.lines().enumerate() {
        if line == DATA_HEADER {
            in_summary = false;
            continue;
        }
        if line == SUMMARY_HEADER {
            in_summary = true;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let err = |what: &str| format!("line {}: bad {what}: {line}", idx + 1);
        if in_summary {
            if fields.len() != 5 {
                return Err(err("summary row"));
            }
            summary.push(SummaryRow {
                channel: fields[0].to_string(),
                eta: fields[1].parse().map_err(|_| err("eta"))?,
                t_m: fields[2].parse().map_err(|_| err("t_m"))?,
                p_max: fields[3].parse().map_err(|_| err("p_max"))?,
                source: match fields[4] {
                    "analytic" => SummarySource::Analytic,
                    "scan" => SummarySource::Scan,
                    _ => return Err(err("source")),
                },
            });
        } else {
            if fields.len() != 6 {
                return Err(err("data row"));
            }
            let opt = |s: &str, what: &str| -> Result<Option<f64>, String> {
                if s.is_empty() {
                    Ok(None)
                } else {
                    s.parse().map(Some).map_err(|_| err(what))
                }
            };
            data.push(DataRow {
                channel: fields[0].to_string(),
                eta: fields[1].parse().map_err(|_| err("eta"))?,
                t: fields[2].parse().map_err(|_| err("t"))?,
                p_analytic: opt(fields[3], "p_analytic")?,
                p_oracle: fields[4].parse().map_err(|_| err("p_oracle"))?,
                abs_diff: opt(fields[5], "abs_diff")?,
            });
        }
    }
    Ok((data, summary))
}
