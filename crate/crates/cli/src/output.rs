use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// What a subcommand produced.
pub struct Artifact {
    pub json: Value,
    pub table: Option<Table>,
    /// None for pure computations, Some(pass) for checks.
    pub verdict: Option<bool>,
}

impl Artifact {
    pub fn value<T: Serialize>(v: &T) -> Result<Artifact> {
        Ok(Artifact { json: serde_json::to_value(v)?, table: None, verdict: None })
    }

    pub fn with_verdict(mut self, pass: bool) -> Artifact {
        self.verdict = Some(pass);
        self
    }

    pub fn with_table(mut self, t: Table) -> Artifact {
        self.table = Some(t);
        self
    }

    fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                match &self.table {
                    Some(t) => {
                        w.write_record(&t.headers)?;
                        for r in &t.rows {
                            w.write_record(r)?;
                        }
                    }
                    None => {
                        w.write_record(["key", "value"])?;
                        let mut flat = Vec::new();
                        flatten("", &self.json, &mut flat);
                        for (k, v) in flat {
                            w.write_record([k, v])?;
                        }
                    }
                }
                Ok(w.into_inner()?)
            }
        }
    }
}

/// JSON leaves as (dotted path, scalar) pairs.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[derive(Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub verdict: Option<&'static str>,
    pub wall_time_ms: u128,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    out.with_file_name(format!("{stem}.manifest.json"))
}

/// Write the artifact to `out` (or stdout) and the manifest next to it
/// (or to `manifest`, or to stderr when there is no output file).
pub fn emit(
    artifact: &Artifact,
    format: Format,
    out: Option<&Path>,
    manifest_to: Option<&Path>,
    manifest: &Manifest,
) -> Result<()> {
    let bytes = artifact.render(format)?;
    match out {
        Some(p) => std::fs::write(p, &bytes).with_context(|| format!("cannot write {}", p.display()))?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    let m = serde_json::to_string_pretty(manifest)? + "\n";
    match (manifest_to, out) {
        (Some(p), _) => std::fs::write(p, m).with_context(|| format!("cannot write {}", p.display()))?,
        (None, Some(o)) => {
            let p = manifest_path(o);
            std::fs::write(&p, m).with_context(|| format!("cannot write {}", p.display()))?
        }
        (None, None) => eprintln!("{}", json!({ "manifest": serde_json::to_value(manifest)? })),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_paths() {
        let mut out = Vec::new();
        flatten("", &json!({"a": {"b": [1, "x"]}, "c": null}), &mut out);
        assert_eq!(out, vec![("a.b.0".into(), "1".into()), ("a.b.1".into(), "x".into()), ("c".into(), String::new())]);
    }

    #[test]
    fn manifest_next_to_output() {
        assert_eq!(manifest_path(Path::new("/tmp/run/nf.json")), PathBuf::from("/tmp/run/nf.manifest.json"));
    }
}
