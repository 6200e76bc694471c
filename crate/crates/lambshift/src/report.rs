//! Report assembly and rendering as JSON, CSV or an aligned text table.
//!
//! Every document carries `schema_version`; the JSON layout is described in
//! `docs/report.schema.json`. Files are written to a temporary sibling and
//! renamed into place, so a failed run never leaves a partial file.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicsConfig;
use crate::dirac::{eps_forms, level, Mode, QuantumNumbers};
use crate::error::{Error, Result};
use crate::lamb::{self, Calibration, CutoffRow, LambSplit};
use crate::matrix::{diagonal_element, MatrixElementResult};
use crate::potentials::{CorrectionKind, PotentialSample};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(Error::Config(format!("unknown format `{s}` (json|csv|table)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub alpha: f64,
    pub cutoff: String,
    pub ln_2m_over_lambda: f64,
    pub mass_factor: f64,
    pub rest_energy_ev: f64,
    pub planck_ev_s: f64,
    pub mode: Mode,
}

impl ConfigEcho {
    pub fn new(cfg: &PhysicsConfig, mode: Mode) -> Self {
        ConfigEcho {
            alpha: cfg.alpha,
            cutoff: cfg.cutoff.to_string(),
            ln_2m_over_lambda: cfg.ln_2m_over_lambda(),
            mass_factor: cfg.mass_factor,
            rest_energy_ev: cfg.rest_energy,
            planck_ev_s: cfg.planck_ev_s,
            mode,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub schema_version: u32,
    pub command: String,
    pub config: ConfigEcho,
    pub data: T,
}

impl<T> Report<T> {
    pub fn new(command: &str, cfg: &PhysicsConfig, mode: Mode, data: T) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config: ConfigEcho::new(cfg, mode),
            data,
        }
    }
}

/// Row-oriented view shared by the CSV and table renderers.
pub trait Tabular {
    fn headers(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub state: String,
    pub n: u32,
    pub j: f64,
    pub kappa: u32,
    pub l: u32,
    pub eps: f64,
    pub eps_root_form: f64,
    pub cal_n: f64,
    pub gamma_j: f64,
    pub energy_ev: f64,
    pub binding_ev: f64,
}

pub fn spectrum(states: &[QuantumNumbers], cfg: &PhysicsConfig) -> Result<Vec<SpectrumRow>> {
    states
        .iter()
        .map(|qn| {
            let lv = level(qn, cfg)?;
            let (_, root) = eps_forms(cfg.alpha, qn.n, qn.kappa());
            let rest = cfg.rest_energy * cfg.mass_factor;
            Ok(SpectrumRow {
                state: qn.label(),
                n: qn.n,
                j: qn.j(),
                kappa: qn.kappa(),
                l: qn.l(),
                eps: lv.eps,
                eps_root_form: root,
                cal_n: lv.cal_n,
                gamma_j: lv.gamma_j,
                energy_ev: lv.energy,
                binding_ev: (lv.eps - 1.0) * rest,
            })
        })
        .collect()
}

impl Tabular for Vec<SpectrumRow> {
    fn headers(&self) -> Vec<&'static str> {
        vec!["state", "n", "j", "kappa", "l", "eps", "eps_root_form", "cal_n", "gamma_j", "energy_ev", "binding_ev"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|r| {
                vec![
                    r.state.clone(),
                    r.n.to_string(),
                    r.j.to_string(),
                    r.kappa.to_string(),
                    r.l.to_string(),
                    num(r.eps),
                    num(r.eps_root_form),
                    num(r.cal_n),
                    num(r.gamma_j),
                    num(r.energy_ev),
                    num(r.binding_ev),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementRow {
    pub state: String,
    pub kind: CorrectionKind,
    pub mode: Mode,
    pub value_mc2: f64,
    pub quadrature_mc2: f64,
    pub closed_form_mc2: Option<f64>,
    pub rel_discrepancy: Option<f64>,
    pub value_mhz: f64,
    pub notes: String,
}

impl ElementRow {
    pub fn new(r: &MatrixElementResult, cfg: &PhysicsConfig) -> Self {
        ElementRow {
            state: r.qn.label(),
            kind: r.kind,
            mode: r.mode,
            value_mc2: r.value(),
            quadrature_mc2: r.value_quadrature,
            closed_form_mc2: r.value_closed_form,
            rel_discrepancy: r.rel_discrepancy,
            value_mhz: crate::constants::energy_to_frequency(r.value(), cfg),
            notes: r.method_notes.clone(),
        }
    }
}

pub fn matrix_elements(states: &[QuantumNumbers], cfg: &PhysicsConfig, mode: Mode) -> Result<Vec<ElementRow>> {
    let mut out = Vec::with_capacity(states.len() * 4);
    for qn in states {
        for kind in CorrectionKind::ALL {
            out.push(ElementRow::new(&diagonal_element(qn, kind, cfg, mode)?, cfg));
        }
    }
    Ok(out)
}

impl Tabular for Vec<ElementRow> {
    fn headers(&self) -> Vec<&'static str> {
        vec!["state", "kind", "mode", "value_mc2", "quadrature_mc2", "closed_form_mc2", "rel_discrepancy", "value_mhz"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|r| {
                vec![
                    r.state.clone(),
                    r.kind.to_string(),
                    r.mode.to_string(),
                    num(r.value_mc2),
                    num(r.quadrature_mc2),
                    opt(r.closed_form_mc2),
                    opt(r.rel_discrepancy),
                    num(r.value_mhz),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambReport {
    pub split: LambSplit,
    pub unit_block_mhz: f64,
    pub d_printed: f64,
    pub d_recomputed: f64,
    pub cutoff_variants: Vec<CutoffRow>,
}

pub fn lamb_report(a: &QuantumNumbers, b: &QuantumNumbers, cfg: &PhysicsConfig, mode: Mode) -> Result<LambReport> {
    Ok(LambReport {
        split: lamb::lamb_split(a, b, cfg, mode)?,
        unit_block_mhz: lamb::unit_block_mhz(cfg),
        d_printed: lamb::D_PRINTED,
        d_recomputed: lamb::d_recomputed(cfg),
        cutoff_variants: lamb::cutoff_table(cfg)?,
    })
}

impl Tabular for LambReport {
    fn headers(&self) -> Vec<&'static str> {
        vec!["quantity", "cutoff", "ln_2m_over_lambda", "value_mhz", "c_l"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let unit = self.unit_block_mhz;
        let s = &self.split;
        let mut rows = vec![vec![
            format!("{}-{} {}", s.state_hi.label(), s.state_lo.label(), s.mode),
            s.cutoff_used.to_string(),
            num(s.ln_2m_over_lambda),
            num(s.delta_mhz),
            num(s.c_l),
        ]];
        for v in &self.cutoff_variants {
            for (what, mhz) in [
                ("exact", v.exact_mhz),
                ("paper", v.closed_form_mhz),
                ("printed_d", v.printed_d_mhz),
            ] {
                rows.push(vec![
                    what.to_string(),
                    v.cutoff.to_string(),
                    num(v.ln_2m_over_lambda),
                    num(mhz),
                    num(mhz / unit),
                ]);
            }
        }
        rows
    }
}

impl Tabular for Vec<PotentialSample> {
    fn headers(&self) -> Vec<&'static str> {
        vec!["rho", "r_over_compton", "value_mc2", "kind"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|s| vec![num(s.rho), num(s.r_over_compton), num(s.value_mc2), s.kind.to_string()])
            .collect()
    }
}

impl Tabular for Calibration {
    fn headers(&self) -> Vec<&'static str> {
        vec!["target_mhz", "d_choice", "d", "ln_2m_over_lambda", "offset_vs_ln_inv_alpha_sq"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            num(self.target_mhz),
            format!("{:?}", self.d_choice).to_lowercase(),
            num(self.d),
            num(self.ln_2m_over_lambda),
            num(self.offset_vs_ln_inv_alpha_sq),
        ]]
    }
}

/// Everything at once: spectrum, elements in both modes, level shifts and the splitting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullReport {
    pub spectrum: Vec<SpectrumRow>,
    pub matrix_elements: Vec<ElementRow>,
    pub level_shifts: Vec<lamb::LevelShift>,
    pub lamb: LambReport,
    pub profiles: Vec<PotentialSample>,
}

impl Tabular for FullReport {
    fn headers(&self) -> Vec<&'static str> {
        self.matrix_elements.headers()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.matrix_elements.rows()
    }
}

pub fn full_report(
    states: &[QuantumNumbers],
    cfg: &PhysicsConfig,
    mode: Mode,
    profiles: Vec<PotentialSample>,
) -> Result<FullReport> {
    if states.is_empty() {
        return Err(Error::Config("no states requested".into()));
    }
    let (s, p) = lamb::canonical_pair();
    Ok(FullReport {
        spectrum: spectrum(states, cfg)?,
        matrix_elements: matrix_elements(states, cfg, mode)?,
        level_shifts: states
            .iter()
            .map(|qn| lamb::level_shift(qn, cfg, Mode::Exact))
            .collect::<Result<_>>()?,
        lamb: lamb_report(&s, &p, cfg, mode)?,
        profiles,
    })
}

pub fn render<T: Serialize + Tabular>(report: &Report<T>, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(&report.data),
        Format::Table => Ok(render_table(report)),
    }
}

fn render_csv<T: Tabular>(data: &T) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(data.headers()).map_err(csv_err)?;
    for row in data.rows() {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_table<T: Tabular>(report: &Report<T>) -> String {
    let headers = report.data.headers();
    let rows = report.data.rows();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let c = &report.config;
    let mut out = format!(
        "# {} (schema {}) alpha={} cutoff={} ln(2m/lambda)={:.6} mass_factor={} mode={}\n",
        report.command, report.schema_version, c.alpha, c.cutoff, c.ln_2m_over_lambda, c.mass_factor, c.mode
    );
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    out += &line(headers.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out += &line(row);
    }
    out
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Renders and writes a report, or prints it when `output` is `None`.
pub fn emit<T: Serialize + Tabular>(report: &Report<T>, format: Format, output: Option<&Path>) -> Result<()> {
    let text = render(report, format)?;
    match output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

/// Builds the full report for `states` and writes it to `output`.
pub fn run_report(
    cfg: &PhysicsConfig,
    states: &[QuantumNumbers],
    mode: Mode,
    output: &Path,
    format: Format,
) -> Result<()> {
    let report = Report::new("report", cfg, mode, full_report(states, cfg, mode, Vec::new())?);
    emit(&report, format, Some(output))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::shipped_states;
    use serde_json::Value;

    fn schema() -> Value {
        let text = include_str!("../docs/report.schema.json");
        serde_json::from_str(text).unwrap()
    }

    fn check_required(value: &Value, schema: &Value, path: &str) {
        if let Some(req) = schema.get("required").and_then(Value::as_array) {
            for key in req {
                let key = key.as_str().unwrap();
                assert!(value.get(key).is_some(), "{path}: missing `{key}`");
            }
        }
        if let (Some(props), Some(obj)) = (schema.get("properties").and_then(Value::as_object), value.as_object()) {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    check_required(v, sub, &format!("{path}.{key}"));
                }
            }
        }
        if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
            for (i, v) in arr.iter().enumerate() {
                check_required(v, items, &format!("{path}[{i}]"));
            }
        }
    }

    #[test]
    fn full_report_has_sixteen_element_rows_and_matches_schema() {
        let cfg = PhysicsConfig::default();
        let report = Report::new("report", &cfg, Mode::Exact, full_report(&shipped_states(), &cfg, Mode::Exact, Vec::new()).unwrap());
        assert_eq!(report.data.matrix_elements.len(), 16);
        let json = render(&report, Format::Json).unwrap();
        let value: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["schema_version"], SCHEMA_VERSION);
        check_required(&value, &schema(), "$");
        let back: Report<FullReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn rerun_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = PhysicsConfig::default();
        let states = shipped_states();
        let mut outputs = Vec::new();
        for (i, format) in [Format::Json, Format::Json, Format::Csv, Format::Csv].iter().enumerate() {
            let path = dir.path().join(format!("r{i}"));
            run_report(&cfg, &states, Mode::Exact, &path, *format).unwrap();
            outputs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[2], outputs[3]);
        let csv_text = String::from_utf8(outputs[2].clone()).unwrap();
        assert_eq!(csv_text.lines().count(), 17);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
    }

    #[test]
    fn profile_csv_columns() {
        let cfg = PhysicsConfig::default();
        let qn: QuantumNumbers = "1S1/2".parse().unwrap();
        let grid = crate::potentials::log_grid(1e-3, 1.0, 4).unwrap();
        let samples = crate::potentials::profile(CorrectionKind::PhotonPolarization, &qn, &cfg, &grid).unwrap();
        let text = render(&Report::new("potential-profile", &cfg, Mode::Exact, samples), Format::Csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "rho,r_over_compton,value_mc2,kind");
        assert_eq!(lines.count(), 4);
    }

    #[test]
    fn table_is_aligned() {
        let cfg = PhysicsConfig::default();
        let rows = spectrum(&shipped_states(), &cfg).unwrap();
        let text = render(&Report::new("spectrum", &cfg, Mode::Exact, rows), Format::Table).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# spectrum"));
        assert_eq!(lines.len(), 6);
        assert!(lines[1].contains("eps_root_form"));
    }

    #[test]
    fn failed_write_leaves_nothing_behind() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("no/such/dir/out.json");
        let err = write_atomic(&missing, b"x").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
        assert_eq!(Format::Json.to_string(), "json");
    }
}
