//! Machine-readable run reports and the small file formats the commands
//! read and write.
//!
//! Reports serialize with a fixed field order and survive a round trip
//! through JSON. Counts that a double-precision consumer would corrupt
//! (above 2^53) are rendered as decimal strings; everything else stays
//! numeric.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use ptpc::bounds::WeightSpectrumSlice;
use serde::{Deserialize, Serialize};

/// Largest integer a double-precision float holds exactly.
const EXACT_IN_DOUBLE: u64 = 1 << 53;

/// An integer that widens to a decimal string once it no longer fits a
/// double exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WideInt {
    Number(u64),
    Text(String),
}

impl From<&BigUint> for WideInt {
    fn from(value: &BigUint) -> Self {
        match u64::try_from(value) {
            Ok(v) if v <= EXACT_IN_DOUBLE => WideInt::Number(v),
            _ => WideInt::Text(value.to_string()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CodeEcho {
    pub n: u32,
    pub block_len: usize,
    pub k: usize,
    pub rate: f64,
    pub profile_origin: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TransformEcho {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CosetRow {
    pub leader: u32,
    pub count: WideInt,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StatsSection {
    pub visited_subtrees: u64,
    pub message_updates: u64,
    pub pretransform_checks: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FerPoint {
    pub ebn0_db: f64,
    pub fer_upper_bound: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundsSection {
    /// Smallest row weight over the information set; a minimum-distance
    /// lower bound for every unit-diagonal upper-triangular pre-transform.
    pub wmin: u64,
    /// True when the profile is decreasing, which pins the minimum distance
    /// to `wmin` exactly.
    pub dmin_guaranteed_exact: bool,
    pub locked_cosets: usize,
    pub reducible_cosets: usize,
    /// Sum of the locked cosets' fixed counts; no pre-transform goes lower.
    pub lb_locked_cosets: String,
    /// Closed-form bound for the profile order, present for profiles given
    /// as --rm R N.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lb_closed_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fer: Option<Vec<FerPoint>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifySection {
    pub enumerator_wmin: u64,
    pub enumerator_awmin: String,
    pub oracle_dmin: u64,
    pub oracle_count_at_dmin: String,
    pub agree: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RankedRow {
    pub polynomial: String,
    pub degree: u32,
    pub awmin: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SearchSection {
    pub max_degree: u32,
    pub candidates: u64,
    pub best_polynomial: String,
    pub best_degree: u32,
    pub best_awmin: String,
    pub ties: u64,
    pub ranked: Vec<RankedRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EnsembleSection {
    pub trials: u64,
    pub base_seed: u64,
    pub min_awmin: WideInt,
    pub mean_awmin: f64,
    pub max_awmin: WideInt,
}

/// One command invocation's full machine-readable outcome. Sections a
/// command does not produce are omitted from the serialized form.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub code: CodeEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wmin: Option<u64>,
    /// Always a full decimal string, whatever the magnitude.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub awmin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dmin_exceeds_wmin: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_coset: Option<Vec<CosetRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsSection>,
    pub wall_clock_seconds: f64,
    pub version: String,
}

impl RunReport {
    pub fn new(code: CodeEcho) -> Self {
        RunReport {
            command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
            code,
            transform: None,
            wmin: None,
            awmin: None,
            dmin_exceeds_wmin: None,
            per_coset: None,
            bounds: None,
            verify: None,
            search: None,
            ensemble: None,
            stats: None,
            wall_clock_seconds: 0.0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("run reports always serialize");
        text.push('\n');
        text
    }
}

/// Writes `content` to `path`, shaping the failure message around the flag
/// that named the file.
pub fn write_output(flag: &str, path: &Path, content: &str) -> Result<(), String> {
    std::fs::write(path, content)
        .map_err(|e| format!("{flag} {}: {e}", path.display()))
}

/// Renders rows as CSV below a header line.
pub fn render_csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// Parses a weight spectrum file: `#` comments, blank lines, and one
/// `<weight> <count>` pair per line (comma or whitespace separated), with
/// weights strictly increasing and counts positive decimal integers.
pub fn parse_spectrum_text(text: &str) -> Result<WeightSpectrumSlice, String> {
    let mut entries: Vec<(u64, BigUint)> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = match raw.find('#') {
            Some(pos) => raw[..pos].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(|c: char| c == ',' || c.is_whitespace());
        let mut next = || {
            fields
                .by_ref()
                .find(|f| !f.is_empty())
                .ok_or_else(|| format!("line {line_no}: expected <weight> <count>"))
        };
        let weight_text = next()?;
        let count_text = next()?;
        if let Some(extra) = fields.find(|f| !f.is_empty()) {
            return Err(format!("line {line_no}: unexpected field {extra:?}"));
        }
        let weight: u64 = weight_text
            .parse()
            .map_err(|_| format!("line {line_no}: invalid weight {weight_text:?}"))?;
        let count: BigUint = count_text
            .parse()
            .map_err(|_| format!("line {line_no}: invalid count {count_text:?}"))?;
        if count == BigUint::default() {
            return Err(format!("line {line_no}: count for weight {weight} is zero"));
        }
        if let Some((last, _)) = entries.last() {
            if weight <= *last {
                return Err(format!(
                    "line {line_no}: weight {weight} does not increase past {last}"
                ));
            }
        }
        entries.push((weight, count));
    }
    if entries.is_empty() {
        return Err("no spectrum entries".to_string());
    }
    WeightSpectrumSlice::new(entries).map_err(|e| e.to_string())
}

/// Parses the Eb/N0 sweep syntax: either `START:END:STEP` (inclusive, STEP
/// positive) or a comma-separated list of values in dB.
pub fn parse_ebn0_sweep(text: &str) -> Result<Vec<f64>, String> {
    let parse_one = |s: &str| -> Result<f64, String> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| format!("invalid Eb/N0 value {s:?}"))?;
        if !v.is_finite() {
            return Err(format!("Eb/N0 value {s:?} is not finite"));
        }
        Ok(v)
    };
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected START:END:STEP, got {text:?}"));
        }
        let start = parse_one(parts[0])?;
        let end = parse_one(parts[1])?;
        let step = parse_one(parts[2])?;
        if step <= 0.0 {
            return Err(format!("sweep step must be positive, got {step}"));
        }
        if end < start {
            return Err(format!("sweep end {end} lies before start {start}"));
        }
        let mut points = Vec::new();
        let mut idx = 0u64;
        loop {
            let v = start + step * idx as f64;
            if v > end + step * 1e-9 {
                break;
            }
            points.push(v);
            idx += 1;
        }
        Ok(points)
    } else {
        let points: Result<Vec<f64>, String> = text.split(',').map(parse_one).collect();
        let points = points?;
        if points.is_empty() {
            return Err("empty Eb/N0 sweep".to_string());
        }
        Ok(points)
    }
}
