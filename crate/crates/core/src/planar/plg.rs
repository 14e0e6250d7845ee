//! Line-oriented text format for embedded graphs:
//!
//! ```text
//! plg 1
//! v <id> <weight>
//! e <id> <u> <v> <cost>
//! rot <vertex> <edge> <edge> ...
//! outer <face>
//! ```

use std::fmt::Write as _;

use super::embedding::Embedding;
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

fn no_trailing(tok: Option<&str>, line: usize) -> Result<()> {
    match tok {
        Some(x) => Err(perr(line, format!("trailing token `{x}`"))),
        None => Ok(()),
    }
}

pub fn parse(text: &str) -> Result<Embedding> {
    let mut header = false;
    let mut weights: Vec<Option<i64>> = Vec::new();
    let mut edges: Vec<Option<(usize, usize, i64)>> = Vec::new();
    let mut rots: Vec<Option<Vec<usize>>> = Vec::new();
    let mut outer = None;
    fn put<T>(v: &mut Vec<Option<T>>, id: usize, x: T, line: usize) -> Result<()> {
        if v.len() <= id {
            v.resize_with(id + 1, || None);
        }
        if v[id].is_some() {
            return Err(perr(line, format!("duplicate id {id}")));
        }
        v[id] = Some(x);
        Ok(())
    }
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut t = body.split_whitespace();
        let kind = t.next().unwrap();
        if !header {
            if kind != "plg" || t.next() != Some("1") {
                return Err(perr(ln, "expected header `plg 1`"));
            }
            header = true;
            continue;
        }
        match kind {
            "v" => {
                let id: usize = num(t.next(), ln, "vertex id")?;
                let w: i64 = num(t.next(), ln, "weight")?;
                no_trailing(t.next(), ln)?;
                put(&mut weights, id, w, ln)?;
            }
            "e" => {
                let id: usize = num(t.next(), ln, "edge id")?;
                let u = num(t.next(), ln, "endpoint")?;
                let v = num(t.next(), ln, "endpoint")?;
                let c = num(t.next(), ln, "cost")?;
                no_trailing(t.next(), ln)?;
                put(&mut edges, id, (u, v, c), ln)?;
            }
            "rot" => {
                let id: usize = num(t.next(), ln, "vertex id")?;
                let list = t
                    .map(|x| x.parse().map_err(|_| perr(ln, "bad edge id")))
                    .collect::<Result<Vec<usize>>>()?;
                put(&mut rots, id, list, ln)?;
            }
            "outer" => outer = Some(num::<usize>(t.next(), ln, "face index")?),
            other => return Err(perr(ln, format!("unknown record `{other}`"))),
        }
    }
    if !header {
        return Err(perr(0, "empty input"));
    }
    let n = weights.len();
    let weights = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| perr(0, format!("vertex {i} missing"))))
        .collect::<Result<Vec<_>>>()?;
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| perr(0, format!("edge {i} missing"))))
        .collect::<Result<Vec<_>>>()?;
    if rots.len() > n {
        return Err(perr(
            0,
            format!("rotation given for unknown vertex {}", rots.len() - 1),
        ));
    }
    rots.resize_with(n, || None);
    let rots: Vec<Vec<usize>> = rots.into_iter().map(|r| r.unwrap_or_default()).collect();
    let emb = Embedding::from_rotation(n, &edges, &rots, &weights)?;
    match outer {
        Some(f) => emb.with_outer(f),
        None => Ok(emb),
    }
}

pub fn write(emb: &Embedding) -> String {
    let mut s = String::from("plg 1\n");
    for v in 0..emb.num_vertices() {
        writeln!(s, "v {v} {}", emb.vertex_weight(v)).unwrap();
    }
    for e in 0..emb.num_edges() {
        let (a, b) = emb.endpoints(e);
        writeln!(s, "e {e} {a} {b} {}", emb.cost(e)).unwrap();
    }
    for v in 0..emb.num_vertices() {
        s.push_str(&format!("rot {v}"));
        for e in emb.rotation_edges(v) {
            write!(s, " {e}").unwrap();
        }
        s.push('\n');
    }
    writeln!(s, "outer {}", emb.outer()).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI: &str = "plg 1\n# unit triangle\nv 0 1\nv 1 1\nv 2 1\ne 0 0 1 1\ne 1 1 2 1\ne 2 2 0 1\nrot 0 0 2\nrot 1 1 0\nrot 2 2 1\n";

    #[test]
    fn parse_and_roundtrip() {
        let g = parse(TRI).unwrap();
        assert_eq!(g.num_faces(), 2);
        let text = write(&g);
        assert_eq!(write(&parse(&text).unwrap()), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse("plg 1\nv 0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(
            parse("graph\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("plg 1\nv 0 1\nv 0 1\n"),
            Err(Error::Parse { .. })
        ));
    }
}
