use std::fs;
use std::path::Path;

use planecut::frac::FracRepr;
use planecut::planar::plg;
use planecut::{CutResult, Embedding, Frac};
use serde::Serialize;

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> Result<Embedding, CliError> {
    let text = read_text(path)?;
    plg::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_text(path, &text)
}

/// Prints to stdout; a closed pipe (e.g. `| head`) is not an error.
pub fn print_json<T: Serialize>(value: &T) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

pub fn fraction(f: &Frac) -> FracRepr {
    FracRepr::from(f)
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Frac, CliError> {
    let bad = || CliError::Usage(format!("`{s}` is not a rational number like 1/268"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: i128 = p.parse().map_err(|_| bad())?;
    let q: i128 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Frac::new(p, q))
}

#[derive(Debug, Serialize)]
pub struct CutJson {
    pub objective: String,
    pub value_num: String,
    pub value_den: String,
    pub cost: i64,
    pub weight_side: i64,
    pub weight_other: i64,
    pub side: Vec<usize>,
    pub cut_edges: Vec<usize>,
}

impl From<&CutResult> for CutJson {
    fn from(c: &CutResult) -> Self {
        let v = fraction(&c.value);
        CutJson {
            objective: c.objective.to_string(),
            value_num: v.num,
            value_den: v.den,
            cost: c.cost,
            weight_side: c.weight_side,
            weight_other: c.weight_other,
            side: c.side(),
            cut_edges: c.cut_edges.clone(),
        }
    }
}
