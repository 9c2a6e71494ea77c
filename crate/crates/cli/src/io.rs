//! Exit codes, file access and output encodings.

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use thinset::colorings::{palette_from_json, Coloring, Palette};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Usage = 1,
    Input = 2,
    NoneExists = 3,
    Budget = 4,
    InsufficientData = 5,
    VerifyFailed = 6,
}

/// An error carrying the exit status it should end the process with.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

pub fn fail(exit: Exit, message: impl Into<String>) -> anyhow::Error {
    Failure {
        exit,
        message: message.into(),
    }
    .into()
}

/// Exit status for an error chain; anything unclassified is bad input.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    err.chain()
        .find_map(|e| e.downcast_ref::<Failure>())
        .map_or(Exit::Input as i32, |f| f.exit as i32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
            Format::Table => "table",
        }
    }
}

pub fn unsupported(format: Format, command: &str) -> anyhow::Error {
    fail(
        Exit::Usage,
        format!("{command} does not support --format {}", format.name()),
    )
}

/// JSON with object keys in sorted order.
pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value).expect("serializable").to_string()
}

/// One CSV field, quoted when it contains a separator, quote or newline.
pub fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn csv_row<S: AsRef<str>>(fields: &[S]) -> String {
    let cells: Vec<String> = fields.iter().map(|f| csv_field(f.as_ref())).collect();
    format!("{}\n", cells.join(","))
}

pub fn read_text(path: Option<&Path>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")?;
        }
    }
    Ok(text)
}

/// Write to the output path, or standard output without one.
pub fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .context("writing standard output")
        }
    }
}

/// The palette codec kept next to a coloring file.
pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".palette.json");
    PathBuf::from(s)
}

/// Load a coloring; the palette comes from `palette`, else the sidecar of
/// `path`, else integer colors.
pub fn read_coloring(path: &Path, palette: Option<&Path>) -> Result<Coloring> {
    let text = read_text(Some(path))?;
    let side = sidecar(path);
    let palette_path = palette.map(Path::to_path_buf).or_else(|| side.exists().then_some(side));
    let palette: Option<Palette> = match palette_path {
        Some(p) => {
            let raw = read_text(Some(&p))?;
            let value: serde_json::Value =
                serde_json::from_str(&raw).with_context(|| format!("parsing {}", p.display()))?;
            Some(palette_from_json(&value).with_context(|| format!("palette {}", p.display()))?)
        }
        None => None,
    };
    Coloring::from_jsonl(&text, palette).with_context(|| format!("coloring {}", path.display()))
}

/// Write a coloring in `format`; JSON output to a file also writes the
/// palette sidecar.
pub fn write_coloring(f: &Coloring, format: Format, output: Option<&Path>, palette_out: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => f.to_jsonl(),
        Format::Csv => {
            let mut out = csv_row(&["tuple", "code", "color"]);
            f.for_each(|t, c| {
                let tuple: Vec<String> = t.iter().map(u64::to_string).collect();
                let color = f.palette().color(c).expect("code in palette").to_string();
                out.push_str(&csv_row(&[tuple.join(","), c.to_string(), color]));
            });
            out
        }
        Format::Table => {
            let mut out = String::new();
            f.for_each(|t, c| {
                let color = f.palette().color(c).expect("code in palette");
                out.push_str(&format!("{t:?}\t{color}\n"));
            });
            out
        }
        Format::Dot => return Err(unsupported(format, "colorings")),
    };
    emit(output, &text)?;
    let palette_path = palette_out
        .map(Path::to_path_buf)
        .or_else(|| output.filter(|_| format == Format::Json).map(sidecar));
    if let Some(p) = palette_path {
        emit(Some(&p), &format!("{}\n", json(&f.palette_json())))?;
    }
    Ok(())
}

/// Comma-separated integers, e.g. `0,2,5`.
pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().with_context(|| format!("bad integer {s:?}")))
        .collect()
}
