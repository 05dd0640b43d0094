//! Machine-readable reports for the command-line front end. Reports are
//! deterministic for a fixed config and seed: fixed row order, fixed
//! 17-significant-digit formatting, no timestamps.

mod commands;
mod config;

pub use commands::{
    bundled_reps, cmd_bessel_verify, cmd_bounds, cmd_bv, cmd_converge, cmd_counterexample,
    cmd_gamma_scan, cmd_varnorm, BESSEL_GRID, BESSEL_SVALS,
};
pub use config::{OutputFormat, RunConfig};

/// One report cell.
#[derive(Debug, Clone)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Num(v) => format!("{v:.16e}"),
            Value::Int(v) => v.to_string(),
            Value::Text(s) => {
                if s.contains(',') || s.contains('"') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Num(v) => serde_json::json!(v),
            Value::Int(v) => serde_json::json!(v),
            Value::Text(s) => serde_json::json!(s),
        }
    }
}

/// A tabular report: ordered columns, each tagged with the operation that
/// produces it ("" for plain inputs), plus the count of violated
/// guaranteed inequalities (drives the process exit code).
#[derive(Debug, Clone)]
pub struct Report {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub producers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub violations: usize,
}

impl Report {
    pub fn new(name: &'static str, columns: Vec<&'static str>, producers: Vec<&'static str>) -> Self {
        assert_eq!(columns.len(), producers.len());
        Report { name, columns, producers, rows: Vec::new(), violations: 0 }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn flag_violation(&mut self) {
        self.violations += 1;
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let columns: Vec<serde_json::Value> = self
            .columns
            .iter()
            .zip(&self.producers)
            .map(|(c, p)| serde_json::json!({ "name": c, "producer": p }))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::json!({
            "report": self.name,
            "columns": columns,
            "rows": rows,
            "violations": self.violations,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}
