use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Where and how a command writes; the manifest names the producing config.
pub struct Sink {
    pub format: Format,
    pub manifest: String,
    out: Box<dyn Write>,
}

impl Sink {
    pub fn open(format: Format, path: Option<&PathBuf>, manifest: String) -> io::Result<Sink> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink { format, manifest, out })
    }

    /// CSV: a `# manifest` comment, then the header and rows.
    pub fn csv(&mut self, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
        writeln!(self.out, "# manifest: {}", self.manifest)?;
        writeln!(self.out, "{}", header.join(","))?;
        for r in rows {
            writeln!(self.out, "{}", r.join(","))?;
        }
        self.out.flush()
    }

    /// JSON object with the manifest under `"manifest"`.
    pub fn json(&mut self, body: Value) -> io::Result<()> {
        let doc = match body {
            Value::Object(mut m) => {
                m.insert("manifest".into(), json!(self.manifest));
                Value::Object(m)
            }
            other => json!({ "manifest": self.manifest, "data": other }),
        };
        serde_json::to_writer_pretty(&mut self.out, &doc)?;
        writeln!(self.out)?;
        self.out.flush()
    }

    pub fn text(&mut self, body: &str) -> io::Result<()> {
        writeln!(self.out, "# manifest: {}", self.manifest)?;
        write!(self.out, "{body}")?;
        if !body.ends_with('\n') {
            writeln!(self.out)?;
        }
        self.out.flush()
    }

    /// Emit a table in the sink's format: CSV and text as columns, JSON as
    /// an array of objects under `key`.
    pub fn table(&mut self, key: &str, header: &[&str], rows: &[Vec<String>], extra: Value) -> io::Result<()> {
        match self.format {
            Format::Csv => self.csv(header, rows),
            Format::Text => {
                let mut s = header.join("\t");
                s.push('\n');
                for r in rows {
                    s.push_str(&r.join("\t"));
                    s.push('\n');
                }
                self.text(&s)
            }
            Format::Json => {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        let m: serde_json::Map<String, Value> = header
                            .iter()
                            .zip(r)
                            .map(|(h, v)| (h.to_string(), json!(v)))
                            .collect();
                        Value::Object(m)
                    })
                    .collect();
                let mut body = match extra {
                    Value::Object(m) => m,
                    _ => serde_json::Map::new(),
                };
                body.insert(key.into(), Value::Array(items));
                self.json(Value::Object(body))
            }
        }
    }
}
