//! Instance documents and DIMACS CNF.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sspforge::problems::{Cnf, Lit, ProblemInstance, ProblemKind};
use sspforge::SspError;

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A problem instance with its element labels, as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub schema_version: u32,
    #[serde(flatten)]
    pub instance: ProblemInstance,
    #[serde(default)]
    pub universe_labels: Vec<String>,
}

impl InstanceDocument {
    pub fn new(instance: ProblemInstance) -> Self {
        let universe_labels = instance.universe().labels().to_vec();
        InstanceDocument { schema_version: SCHEMA_VERSION, instance, universe_labels }
    }

    /// Fills in missing labels and checks the rest.
    pub fn normalize(mut self) -> std::result::Result<Self, SspError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(SspError::Format(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        self.instance.validate()?;
        let n = self.instance.universe_size();
        if self.universe_labels.is_empty() {
            self.universe_labels = self.instance.universe().labels().to_vec();
        } else if self.universe_labels.len() != n {
            return Err(SspError::Format(format!(
                "{} universe labels for a universe of {n} elements",
                self.universe_labels.len()
            )));
        }
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        let doc: InstanceDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
        doc.normalize().map_err(|e| e.to_string())
    }
}

/// Parses DIMACS CNF. Besides the usual `c` comments, lines of the form
/// `c name <var> <label>` carry variable names, and a `%` line ends the input.
pub fn parse_dimacs(text: &str) -> std::result::Result<Cnf, String> {
    let mut header: Option<(usize, usize)> = None;
    let mut names: Vec<(usize, String)> = Vec::new();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut cur: Vec<Lit> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let at = |msg: String| format!("line {}: {msg}", lineno + 1);
        if line.is_empty() {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err(at(format!("unexpected token `{line}`")));
            }
            let mut it = rest.split_whitespace();
            if it.next() == Some("name") {
                let var: usize = it
                    .next()
                    .and_then(|v| v.parse().ok())
                    .filter(|&v| v > 0)
                    .ok_or_else(|| at("`c name` needs a positive variable number".into()))?;
                let label = it.next().ok_or_else(|| at("`c name` needs a label".into()))?;
                names.push((var - 1, label.to_string()));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(at("second problem line".into()));
            }
            let f: Vec<&str> = rest.split_whitespace().collect();
            match f.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| at(format!("bad variable count `{v}`")))?;
                    let c = c.parse().map_err(|_| at(format!("bad clause count `{c}`")))?;
                    header = Some((v, c));
                }
                _ => return Err(at(format!("expected `p cnf <vars> <clauses>`, got `{line}`"))),
            }
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(at("clause before the `p cnf` line".into()));
        };
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| at(format!("bad literal `{tok}`")))?;
            match Lit::from_dimacs(x) {
                None => clauses.push(std::mem::take(&mut cur)),
                Some(l) if l.var >= vars => {
                    return Err(at(format!("literal {x} exceeds the declared {vars} variables")))
                }
                Some(l) => cur.push(l),
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err("missing `p cnf` line".into());
    };
    if !cur.is_empty() {
        clauses.push(cur);
    }
    if clauses.len() != count {
        return Err(format!("header declares {count} clauses, found {}", clauses.len()));
    }
    let mut f = Cnf::new(vars, clauses);
    if !names.is_empty() {
        f.var_names = (0..vars).map(|v| format!("x{}", v + 1)).collect();
        for (v, label) in names {
            if v >= vars {
                return Err(format!("name given for undeclared variable {}", v + 1));
            }
            f.var_names[v] = label;
        }
    }
    f.validate().map_err(|e| e.to_string())?;
    Ok(f)
}

pub fn emit_dimacs(f: &Cnf) -> String {
    let mut s = String::new();
    for (v, name) in f.var_names.iter().enumerate() {
        let _ = writeln!(s, "c name {} {name}", v + 1);
    }
    let _ = writeln!(s, "p cnf {} {}", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            let _ = write!(s, "{} ", l.to_dimacs());
        }
        s.push_str("0\n");
    }
    s
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::parse(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn to_json_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn looks_like_dimacs(path: &Path, text: &str) -> bool {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    matches!(ext, "cnf" | "dimacs") || !text.trim_start().starts_with('{')
}

/// Loads a JSON document or a DIMACS file. A CNF becomes 3SAT when `expect`
/// asks for it or, without a hint, when every clause has width three.
pub fn load_instance(path: &Path, expect: Option<ProblemKind>) -> Result<ProblemInstance> {
    let text = read_text(path)?;
    let inst = if looks_like_dimacs(path, &text) {
        let f = parse_dimacs(&text).map_err(|m| CliError::parse(path, m))?;
        let three = match expect {
            Some(ProblemKind::ThreeSat) => true,
            Some(ProblemKind::Sat) => false,
            Some(k) => {
                return Err(SspError::Composition(format!("{} is a CNF, but the reduction starts from {k}", path.display()))
                    .into())
            }
            None => f.clauses.iter().all(|c| c.len() == 3),
        };
        if three {
            ProblemInstance::ThreeSat(f)
        } else {
            ProblemInstance::Sat(f)
        }
    } else {
        let doc = InstanceDocument::from_json(&text).map_err(|m| CliError::parse(path, m))?;
        match (expect, doc.instance) {
            // every 3CNF is also a CNF
            (Some(ProblemKind::Sat), ProblemInstance::ThreeSat(f)) => ProblemInstance::Sat(f),
            (Some(k), inst) if inst.kind() != k => {
                return Err(SspError::Composition(format!(
                    "{} holds a {} instance, but the reduction starts from {k}",
                    path.display(),
                    inst.kind()
                ))
                .into())
            }
            (_, inst) => inst,
        }
    };
    inst.validate().map_err(|e| CliError::parse(path, e))?;
    Ok(inst)
}
