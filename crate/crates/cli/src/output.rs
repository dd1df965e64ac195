use std::io::Write;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::Value;

use kodag_core::{IncidenceMatrix, IntMatrix};

use crate::{CliResult, Input};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
}

pub fn big(v: &BigInt) -> Value {
    // arbitrary_precision keeps every digit
    v.to_string().parse().expect("integer literal is valid JSON")
}

pub fn incidence(m: &IncidenceMatrix, format: Format) -> String {
    match format {
        Format::Json => m.to_json_string(),
        f => int_matrix(m.matrix(), f),
    }
}

pub fn int_matrix(m: &IntMatrix, format: Format) -> String {
    match format {
        Format::Json => m.to_json().to_string(),
        Format::Csv => m.to_csv(),
        Format::Ascii => ascii(m),
    }
}

/// Right-aligned columns.
fn ascii(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Writes `text` to `--out` or standard output, ending with one newline.
pub fn emit(input: &Input, text: String) -> CliResult {
    let mut text = text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &input.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
