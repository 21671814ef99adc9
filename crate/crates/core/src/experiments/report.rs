//! Tabular experiment output: a sample table plus summary statistics and
//! pass/fail checks, serializable as CSV (table only) or JSON (everything).

use super::config::{ExperimentConfig, OutputFormat};
use std::fmt::Write as _;
use std::io::{self, Write};

/// One cell of the sample table. `Null` renders as an empty CSV field and a
/// JSON `null`; it marks columns a given row kind does not use.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    U(u64),
    I(i64),
    F(f64),
    B(bool),
    S(String),
    Null,
}

/// Floats are printed with 17 significant digits so round-tripping through
/// text is lossless.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::U(v) => v.to_string(),
            Value::I(v) => v.to_string(),
            Value::F(v) => {
                if v.is_finite() {
                    fmt_f64(*v)
                } else {
                    v.to_string()
                }
            }
            Value::B(v) => v.to_string(),
            Value::S(v) => csv_escape(v),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::U(v) => v.to_string(),
            Value::I(v) => v.to_string(),
            Value::F(v) => {
                if v.is_finite() {
                    fmt_f64(*v)
                } else {
                    "null".to_string()
                }
            }
            Value::B(v) => v.to_string(),
            Value::S(v) => json_string(v),
            Value::Null => "null".to_string(),
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A named scalar comparison with a textual bound, evaluated at run time.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: String,
    pub pass: bool,
}

impl Check {
    pub fn le(name: impl Into<String>, value: f64, limit: f64) -> Check {
        Check {
            name: name.into(),
            value,
            bound: format!("<= {limit}"),
            pass: value <= limit,
        }
    }

    pub fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Check {
        Check {
            name: name.into(),
            value,
            bound: format!("in [{lo}, {hi}]"),
            pass: lo <= value && value <= hi,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Vec<(String, Value)>,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn new(config: &ExperimentConfig, columns: Vec<&'static str>) -> ExperimentReport {
        ExperimentReport {
            config: config.clone(),
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn add_summary(&mut self, name: impl Into<String>, value: Value) {
        self.summary.push((name.into(), value));
    }

    pub fn summary_f64(&self, name: &str) -> Option<f64> {
        self.summary.iter().find(|(n, _)| n == name).map(|(_, v)| match v {
            Value::U(x) => *x as f64,
            Value::I(x) => *x as f64,
            Value::F(x) => *x,
            Value::B(x) => f64::from(u8::from(*x)),
            _ => f64::NAN,
        })
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// CSV output is the bare sample table: one header line, one line per row.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Value::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let cfg = &self.config;
        writeln!(w, "{{")?;
        writeln!(w, "  \"schema_version\": 1,")?;
        writeln!(w, "  \"experiment\": {},", json_string(cfg.experiment.id()))?;
        writeln!(w, "  \"config\": {{")?;
        writeln!(w, "    \"m\": {},", cfg.m)?;
        writeln!(w, "    \"trials\": {},", cfg.trials)?;
        writeln!(w, "    \"master_seed\": {},", cfg.master_seed)?;
        writeln!(w, "    \"t_max\": {},", cfg.t_max)?;
        writeln!(w, "    \"x_max\": {},", cfg.x_max)?;
        let grid: Vec<String> = cfg.grid.iter().map(|&g| Value::F(g).json()).collect();
        writeln!(w, "    \"grid\": [{}],", grid.join(", "))?;
        writeln!(w, "    \"window\": {}", Value::F(cfg.window).json())?;
        writeln!(w, "  }},")?;
        writeln!(w, "  \"summary\": {{")?;
        for (i, (name, value)) in self.summary.iter().enumerate() {
            let sep = if i + 1 < self.summary.len() { "," } else { "" };
            writeln!(w, "    {}: {}{}", json_string(name), value.json(), sep)?;
        }
        writeln!(w, "  }},")?;
        writeln!(w, "  \"checks\": [")?;
        for (i, c) in self.checks.iter().enumerate() {
            let sep = if i + 1 < self.checks.len() { "," } else { "" };
            writeln!(
                w,
                "    {{\"name\": {}, \"value\": {}, \"bound\": {}, \"pass\": {}}}{}",
                json_string(&c.name),
                Value::F(c.value).json(),
                json_string(&c.bound),
                c.pass,
                sep
            )?;
        }
        writeln!(w, "  ],")?;
        writeln!(w, "  \"samples\": {{")?;
        let cols: Vec<String> = self.columns.iter().map(|c| json_string(c)).collect();
        writeln!(w, "    \"columns\": [{}],", cols.join(", "))?;
        writeln!(w, "    \"rows\": [")?;
        for (i, row) in self.rows.iter().enumerate() {
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            let cells: Vec<String> = row.iter().map(Value::json).collect();
            writeln!(w, "      [{}]{}", cells.join(", "), sep)?;
        }
        writeln!(w, "    ]")?;
        writeln!(w, "  }}")?;
        writeln!(w, "}}")?;
        Ok(())
    }

    pub fn write<W: Write>(&self, w: &mut W) -> io::Result<()> {
        match self.config.format {
            OutputFormat::Csv => self.write_csv(w),
            OutputFormat::Json => self.write_json(w),
        }
    }

    /// Human-readable digest of the summary and checks (the CLI prints this
    /// on stderr so CSV on stdout stays machine-clean).
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} (m={}, trials={}, seed={}, t_max={}, x_max={})",
            self.config.experiment,
            self.config.m,
            self.config.trials,
            self.config.master_seed,
            self.config.t_max,
            self.config.x_max
        );
        for (name, value) in &self.summary {
            let text = match value {
                Value::F(v) => format!("{v:.6}"),
                other => other.csv(),
            };
            let _ = writeln!(out, "# {name} = {text}");
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "# check {}: {:.6} {} -> {}",
                c.name,
                c.value,
                c.bound,
                if c.pass { "pass" } else { "FAIL" }
            );
        }
        out
    }
}
