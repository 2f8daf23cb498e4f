use std::collections::HashMap;
use std::io::BufRead;

use super::{Graph, NodeId, WeightScheme};
use crate::error::{Error, Result};

/// Reads a KONECT/SNAP style edge list: whitespace separated `u v [w ...]`,
/// `%` and `#` comment lines. Labels are remapped to dense ids in order of
/// first appearance.
pub fn load_edge_list<R: BufRead>(source: R, directed: bool, scheme: WeightScheme) -> Result<Graph> {
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut raw = Vec::new();

    let mut intern = |tok: &str, labels: &mut Vec<String>| -> NodeId {
        *ids.entry(tok.to_owned()).or_insert_with(|| {
            labels.push(tok.to_owned());
            (labels.len() - 1) as NodeId
        })
    };

    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('%') || body.starts_with('#') {
            continue;
        }
        let mut toks = body.split_whitespace();
        let (u, v) = match (toks.next(), toks.next()) {
            (Some(u), Some(v)) => (u, v),
            _ => return Err(Error::Parse { line: lineno, msg: "expected at least two columns".into() }),
        };
        let w = match toks.next() {
            Some(t) => Some(
                t.parse::<f64>()
                    .map_err(|_| Error::Parse { line: lineno, msg: format!("weight `{t}` is not numeric") })?,
            ),
            None if scheme == WeightScheme::FromFile => {
                return Err(Error::Parse { line: lineno, msg: "missing weight column".into() });
            }
            None => None,
        };
        if let Some(p) = w.filter(|_| scheme == WeightScheme::FromFile) {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Parse { line: lineno, msg: format!("probability {p} outside [0, 1]") });
            }
        }
        let u = intern(u, &mut labels);
        let v = intern(v, &mut labels);
        raw.push((u, v, w));
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    Graph::build(labels.len(), Some(labels), directed, raw, scheme)
}
