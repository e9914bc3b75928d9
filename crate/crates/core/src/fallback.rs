//! External translator for formulas outside the supported fragments.
//!
//! The command template is run through `sh -c` after substituting the
//! formula for `%f`. The tool must print a deterministic HOA automaton on
//! standard output; partial automata are completed with a rejecting sink.

use std::io::Read;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::hoa::parse_hoa_partial;
use crate::tela::Tela;

pub const PLACEHOLDER: &str = "%f";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quoting {
    /// `'...'`, safe for POSIX shells.
    #[default]
    Single,
    Double,
    /// Substituted verbatim.
    None,
}

impl Quoting {
    pub fn quote(self, text: &str) -> String {
        match self {
            Quoting::Single => format!("'{}'", text.replace('\'', r"'\''")),
            Quoting::Double => {
                let mut out = String::from("\"");
                for c in text.chars() {
                    if matches!(c, '"' | '\\' | '$' | '`') {
                        out.push('\\');
                    }
                    out.push(c);
                }
                out.push('"');
                out
            }
            Quoting::None => text.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FallbackConfig {
    pub template: String,
    pub quoting: Quoting,
    pub timeout: Duration,
}

impl FallbackConfig {
    pub fn new(template: impl Into<String>) -> FallbackConfig {
        FallbackConfig {
            template: template.into(),
            quoting: Quoting::default(),
            timeout: DEFAULT_TIMEOUT,
        }
    }

    pub fn command_line(&self, formula: &Formula) -> String {
        self.template
            .replace(PLACEHOLDER, &self.quoting.quote(&formula.to_string()))
    }
}

fn failure(formula: &Formula, message: impl Into<String>) -> Error {
    Error::Fallback {
        formula: formula.to_string(),
        message: message.into(),
    }
}

fn drain<R: Read + Send + 'static>(mut pipe: R) -> thread::JoinHandle<Vec<u8>> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = pipe.read_to_end(&mut buf);
        buf
    })
}

/// Runs the external tool on `formula` and returns its automaton over
/// `aps(formula)`.
pub fn translate_external(formula: &Formula, config: &FallbackConfig) -> Result<Tela> {
    if !config.template.contains(PLACEHOLDER) {
        return Err(failure(
            formula,
            format!("command template has no `{PLACEHOLDER}` placeholder"),
        ));
    }
    let line = config.command_line(formula);
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(&line)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| failure(formula, format!("cannot start `{line}`: {e}")))?;
    let stdout = drain(child.stdout.take().expect("piped stdout"));
    let stderr = drain(child.stderr.take().expect("piped stderr"));
    let start = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if start.elapsed() >= config.timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Err(failure(
                formula,
                format!("timed out after {:?}", config.timeout),
            ));
        }
        thread::sleep(Duration::from_millis(5));
    };
    let out = stdout.join().unwrap_or_default();
    let err = stderr.join().unwrap_or_default();
    if !status.success() {
        let err = String::from_utf8_lossy(&err);
        return Err(failure(
            formula,
            format!("`{line}` failed ({status}): {}", err.trim()),
        ));
    }
    let text = String::from_utf8(out).map_err(|_| failure(formula, "output is not UTF-8"))?;
    let partial = parse_hoa_partial(&text)?;
    let aut = partial.complete_with_sink()?;
    let ap: Vec<String> = formula.aps().into_iter().collect();
    if let Some(extra) = aut.ap().iter().find(|a| !ap.contains(a)) {
        return Err(failure(
            formula,
            format!("automaton uses unknown proposition `{extra}`"),
        ));
    }
    aut.extend_ap(&ap)
}
