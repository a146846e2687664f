use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

const COMPOSITION: &str = "left to right: p*q is p followed by q";
const ORDER: &str = "weighted length-lex on paths, ties broken by arrow declaration order";
const SIGNS: &str = "Koszul; DG transport multiplies u|v into shift m by (-1)^(m|u|); \
                     the dual of the map leaving position p from shift l to shift m \
                     carries (-1)^(p + m(l+1) + |u||v|)";

/// Outcome of one subcommand.
pub struct Report {
    pub command: String,
    pub input: String,
    pub lines: Vec<String>,
    pub data: Value,
    pub dot: Option<String>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            lines: Vec::new(),
            data: Value::Null,
            dot: None,
            pass: true,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text()),
            Format::Json => {
                let v = json!({
                    "command": self.command,
                    "input": self.input,
                    "conventions": {
                        "composition": COMPOSITION,
                        "monomial_order": ORDER,
                        "signs": SIGNS,
                    },
                    "result": self.data,
                    "pass": self.pass,
                });
                Ok(serde_json::to_string_pretty(&v).expect("json values serialize") + "\n")
            }
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| CliError::Input(format!("`{}` has no DOT output", self.command))),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("# cyalg {} {}\n", self.command, self.input);
        out.push_str(&format!(
            "# composition: {COMPOSITION}\n# monomial order: {ORDER}\n# signs: {SIGNS}\n"
        ));
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(if self.pass {
            "result: PASS\n"
        } else {
            "result: FAIL\n"
        });
        out
    }
}
