use std::io::Write;

use serde::Serialize;

use crate::Format;

/// What a subcommand produced, in every format it supports.
pub struct Output {
    pub json: String,
    pub text: String,
    pub csv: Option<String>,
    /// a property that must hold did not; exit status 1
    pub failed: bool,
}

impl Output {
    pub fn new<T: Serialize>(value: &T, text: impl Into<String>) -> Output {
        Output {
            json: serde_json::to_string_pretty(value).expect("output serializes"),
            text: text.into(),
            csv: None,
            failed: false,
        }
    }

    pub fn csv(mut self, csv: String) -> Output {
        self.csv = Some(csv);
        self
    }

    pub fn failed(mut self, failed: bool) -> Output {
        self.failed = failed;
        self
    }
}

pub fn emit(out: &Output, format: Format) -> Result<(), String> {
    let body = match format {
        Format::Json => &out.json,
        Format::Text => &out.text,
        Format::Csv => out.csv.as_ref().ok_or("this command has no CSV output; use --format json or text")?,
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(body.as_bytes()).map_err(|e| e.to_string())?;
    if !body.ends_with('\n') {
        stdout.write_all(b"\n").map_err(|e| e.to_string())?;
    }
    Ok(())
}
