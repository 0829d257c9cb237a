//! On-disk formats: a single JSON instance document in, JSON lines out.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::instance::{validate_instance, ColorLabel, Instance, Query, TieMode};
use crate::solver::Solved;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryRecord {
    pub id: Value,
    pub x1: u32,
    pub x2: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y1: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y2: Option<Number>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub sequence: Vec<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<ColorLabel>>,
    #[serde(default)]
    pub queries: Vec<QueryRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub id: Value,
    pub length: usize,
    pub indices: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<ColorLabel>,
    pub technique: String,
    pub elapsed_us: f64,
}

/// A parsed instance file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub instance: Instance,
    pub queries: Vec<Query>,
    pub ids: Vec<Value>,
}

fn number(v: &Number, what: impl FnOnce() -> String) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Parse(format!("{}: not a finite number", what())))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn into_loaded(self, ties: TieMode) -> Result<Loaded> {
        let values = self
            .sequence
            .iter()
            .enumerate()
            .map(|(i, v)| number(v, || format!("sequence[{i}]")))
            .collect::<Result<Vec<f64>>>()?;
        let instance = validate_instance(values, self.colors, ties)?;
        let mut queries = Vec::with_capacity(self.queries.len());
        let mut ids = Vec::with_capacity(self.queries.len());
        for (i, q) in self.queries.into_iter().enumerate() {
            let y1 = q.y1.as_ref().map(|v| number(v, || format!("queries[{i}].y1"))).transpose()?;
            let y2 = q.y2.as_ref().map(|v| number(v, || format!("queries[{i}].y2"))).transpose()?;
            let query = Query {
                id: i,
                x1: q.x1,
                x2: q.x2,
                y1,
                y2,
            };
            // surfaces bad bounds with the query's position
            instance.rank_box(&query).map_err(|e| Error::Parse(format!("queries[{i}]: {e}")))?;
            queries.push(query);
            ids.push(q.id);
        }
        Ok(Loaded { instance, queries, ids })
    }
}

pub fn result_record(loaded: &Loaded, slot: usize, solved: &Solved, elapsed_us: f64) -> ResultRecord {
    let a = &solved.answer;
    ResultRecord {
        id: loaded.ids[slot].clone(),
        length: a.length,
        indices: a.indices.clone(),
        color: a.color.and_then(|c| loaded.instance.color_label(c).cloned()),
        technique: solved.technique.as_str().to_string(),
        elapsed_us,
    }
}

pub fn write_jsonl<W: Write>(mut out: W, records: impl IntoIterator<Item = ResultRecord>) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, &r).map_err(|e| Error::Io(e.into()))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<ResultRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reports_position() {
        let f = InstanceFile::parse(r#"{"sequence":[3,1,2],"queries":[{"id":"a","x1":1,"x2":3,"y2":2.5}]}"#).unwrap();
        let l = f.into_loaded(TieMode::Reject).unwrap();
        assert_eq!(l.queries[0].y1, None);
        assert_eq!(l.queries[0].y2, Some(2.5));
        assert_eq!(l.ids[0], Value::from("a"));

        let err = InstanceFile::parse("{\"sequence\":[1,2],\n\"queries\":[{\"id\":1,\"x1\":\"a\"}]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let bad = InstanceFile::parse(r#"{"sequence":[1,2],"queries":[{"id":0,"x1":2,"x2":5}]}"#).unwrap();
        assert!(bad.into_loaded(TieMode::Reject).unwrap_err().to_string().contains("queries[0]"));
    }

    #[test]
    fn duplicates_are_a_contract_error() {
        let f = InstanceFile::parse(r#"{"sequence":[1,1],"queries":[]}"#).unwrap();
        assert!(matches!(f.clone().into_loaded(TieMode::Reject), Err(Error::DuplicateValue { .. })));
        assert!(f.into_loaded(TieMode::BreakByIndex).is_ok());
    }
}
