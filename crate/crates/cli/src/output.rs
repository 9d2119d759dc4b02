//! Self-describing run reports: CSV by default, JSON mirror on request.

use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (csv|json)")),
        }
    }
}

/// One run's table plus the resolved configuration that produced it.
pub struct Report {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footer: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            config: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn config(&mut self, key: &str, value: impl std::fmt::Display) {
        self.config.push((key.to_string(), value.to_string()));
    }

    pub fn columns(&mut self, cols: &[&str]) {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn footer(&mut self, key: &str, value: impl std::fmt::Display) {
        self.footer.push((key.to_string(), value.to_string()));
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# tool: hardy v{}\n# command: {}\n",
            env!("CARGO_PKG_VERSION"),
            self.command
        ));
        for (k, v) in &self.config {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&format!("# columns: {}\n", self.columns.join(",")));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for (k, v) in &self.footer {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out
    }

    fn render_json(&self) -> String {
        let config: serde_json::Map<String, serde_json::Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let footer: serde_json::Map<String, serde_json::Value> = self
            .footer
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let doc = serde_json::json!({
            "tool": format!("hardy v{}", env!("CARGO_PKG_VERSION")),
            "command": self.command,
            "config": config,
            "columns": self.columns,
            "rows": self.rows,
            "footer": footer,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json render");
        s.push('\n');
        s
    }

    /// Writes to the path (or stdout when absent). Output is byte-identical
    /// for identical resolved configs.
    pub fn write(&self, out: &Option<PathBuf>, format: Format) -> std::io::Result<()> {
        let text = match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        };
        match out {
            Some(path) => std::fs::write(path, text),
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(text.as_bytes())
            }
        }
    }
}

/// Shortest-roundtrip float formatting (deterministic across runs):
/// plain decimal in a human range, scientific outside it.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == 0.0 {
        "0".to_string()
    } else if x.abs() >= 1e-3 && x.abs() < 1e6 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
