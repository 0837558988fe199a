//! Artifact formatting and transactional file output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Identity of a run: subcommand plus the hash of its canonical configuration.
#[derive(Debug, Clone)]
pub struct RunStamp {
    pub subcommand: &'static str,
    pub config_hash: String,
}

impl RunStamp {
    /// Hashes the configuration serialized with sorted keys, so equivalent
    /// spellings of the same sweep (`1:3:lin,3` and `1,2,3`) share a hash.
    pub fn new(subcommand: &'static str, config: &impl Serialize) -> Self {
        let canonical = json!({ "subcommand": subcommand, "config": config });
        let digest = Sha256::digest(canonical.to_string().as_bytes());
        let config_hash = digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Self { subcommand, config_hash }
    }

    pub fn header(&self) -> String {
        format!("# zerocross {VERSION} {} {}", self.subcommand, self.config_hash)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl Cell {
    fn csv(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
        }
    }
}

/// A rectangular numeric table.
#[derive(Debug, Clone)]
pub struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push<const N: usize>(&mut self, row: [Cell; N]) {
        debug_assert_eq!(N, self.columns.len());
        self.rows.push(row.to_vec());
    }

    pub fn render(&self, format: Format, stamp: &RunStamp) -> String {
        match format {
            Format::Csv => {
                let mut out = format!("{}\n{}\n", stamp.header(), self.columns.join(","));
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.csv()).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> =
                    self.rows.iter().map(|r| Value::Array(r.iter().map(|c| c.json()).collect())).collect();
                render_json(stamp, json!({ "columns": self.columns, "rows": rows }))
            }
        }
    }
}

/// A JSON document carrying the run header alongside `body`'s fields.
pub fn render_json(stamp: &RunStamp, body: Value) -> String {
    let mut doc = json!({ "header": stamp.header() });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Turns a value into a file-name fragment: `power:n=2` -> `power-n2`.
pub fn slug(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '.' | '-' => out.push(c),
            ':' | ',' => out.push('-'),
            _ => {}
        }
    }
    out
}

/// Files written by one run. Each file is staged in a temporary file in the
/// target directory and renamed into place; unless [`OutputSet::commit`] is
/// called, dropping the set deletes everything it wrote.
pub struct OutputSet {
    dir: PathBuf,
    format: Format,
    stamp: RunStamp,
    written: Vec<PathBuf>,
    committed: bool,
}

impl OutputSet {
    pub fn new(dir: &Path, format: Format, stamp: RunStamp) -> CliResult<Self> {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        Ok(Self { dir: dir.to_path_buf(), format, stamp, written: Vec::new(), committed: false })
    }

    pub fn table(&mut self, stem: &str, table: &Table) -> CliResult<()> {
        let name = format!("{stem}.{}", self.format.extension());
        self.raw(&name, &table.render(self.format, &self.stamp))
    }

    /// A JSON side file, independent of the table format.
    pub fn json(&mut self, stem: &str, body: Value) -> CliResult<()> {
        let text = render_json(&self.stamp, body);
        self.raw(&format!("{stem}.json"), &text)
    }

    pub fn raw(&mut self, name: &str, text: &str) -> CliResult<()> {
        let path = self.dir.join(name);
        let io = |source| CliError::Io { path: path.clone(), source };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        self.written.push(path);
        Ok(())
    }

    pub fn commit(mut self) -> Vec<PathBuf> {
        self.committed = true;
        std::mem::take(&mut self.written)
    }
}

impl Drop for OutputSet {
    fn drop(&mut self) {
        if !self.committed {
            for p in &self.written {
                let _ = std::fs::remove_file(p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let stamp = RunStamp::new("demo", &json!({"k": 1}));
        let mut t = Table::new(&["M", "p"]);
        t.push([Cell::Int(3), Cell::Float(0.1)]);
        let s = t.render(Format::Csv, &stamp);
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with(&format!("# zerocross {VERSION} demo ")));
        assert_eq!(lines[0].rsplit(' ').next().unwrap().len(), 64);
        assert_eq!(lines[1], "M,p");
        assert_eq!(lines[2], "3,1.0000000000000001e-1");
    }

    #[test]
    fn hash_ignores_key_order() {
        let a = RunStamp::new("x", &json!({"a": 1, "b": [1.0, 2.0]}));
        let b = RunStamp::new("x", &json!({"b": [1.0, 2.0], "a": 1}));
        let c = RunStamp::new("y", &json!({"a": 1, "b": [1.0, 2.0]}));
        assert_eq!(a.config_hash, b.config_hash);
        assert_ne!(a.config_hash, c.config_hash);
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("tanh:n=2,a=5"), "tanh-n2-a5");
        assert_eq!(slug("-1.5"), "-1.5");
    }

    #[test]
    fn uncommitted_set_cleans_up() {
        let dir = tempfile::tempdir().unwrap();
        let stamp = RunStamp::new("x", &json!({}));
        let t = Table::new(&["a"]);
        {
            let mut set = OutputSet::new(dir.path(), Format::Csv, stamp.clone()).unwrap();
            set.table("one", &t).unwrap();
            assert!(dir.path().join("one.csv").exists());
        }
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
        let mut set = OutputSet::new(dir.path(), Format::Csv, stamp).unwrap();
        set.table("two", &t).unwrap();
        assert_eq!(set.commit().len(), 1);
        assert!(dir.path().join("two.csv").exists());
    }
}
