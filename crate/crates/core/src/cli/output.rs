//! CSV and JSON rendering. Cells hold exact integers, rationals "a/b" or
//! interval pairs "lo..hi"; floats never appear.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat_short, Rat, RealEnclosure};

/// Decimal digits kept when an enclosure is written to a cell.
pub const CELL_DIGITS: u32 = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: vec![],
        }
    }

    /// Rows in which some operation ran out of budget.
    pub fn budget_rows(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.iter().any(|c| c == "budget" || c == "cancelled"))
            .count()
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

#[derive(Clone, Debug)]
pub enum Report {
    Json(Value),
    Table(Table),
}

impl Report {
    pub fn json<T: Serialize>(v: &T) -> Result<Report> {
        serde_json::to_value(v)
            .map(Report::Json)
            .map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn budget_rows(&self) -> usize {
        match self {
            Report::Json(_) => 0,
            Report::Table(t) => t.budget_rows(),
        }
    }
}

pub fn cell_rat(x: &Rat) -> String {
    fmt_rat_short(x)
}

/// "lo..hi", rounded outward to [`CELL_DIGITS`] decimals.
pub fn cell_pair(e: &RealEnclosure) -> String {
    if e.is_exact() {
        return fmt_rat_short(&e.lo);
    }
    let c = e.coarsen(CELL_DIGITS);
    format!("{}..{}", fmt_rat_short(&c.lo), fmt_rat_short(&c.hi))
}

pub fn cell_ok(b: bool) -> String {
    if b { "ok" } else { "fail" }.into()
}

/// Cells of a row whose computation failed: the key column, then the error kind.
pub fn error_row(key: String, width: usize, e: &Error) -> Vec<String> {
    let mut r = vec![key];
    r.resize(width, e.kind().to_string());
    r
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.into(), s.clone())),
        Value::Null => out.push((prefix.into(), String::new())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

fn table_json(t: &Table) -> Value {
    Value::Array(
        t.rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = t
                    .header
                    .iter()
                    .zip(r)
                    .map(|(h, c)| (h.clone(), Value::String(c.clone())))
                    .collect();
                Value::Object(m)
            })
            .collect(),
    )
}

fn write_csv(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match (report, format) {
        (Report::Json(v), Format::Json) => pretty(v),
        (Report::Table(t), Format::Json) => pretty(&table_json(t)),
        (Report::Table(t), Format::Csv) => write_csv(&t.header, &t.rows),
        (Report::Json(v), Format::Csv) => {
            let mut kv = vec![];
            flatten("", v, &mut kv);
            let rows: Vec<Vec<String>> = kv.into_iter().map(|(k, v)| vec![k, v]).collect();
            write_csv(&["field".into(), "value".into()], &rows)
        }
    }
}

fn pretty(v: &Value) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn cells() {
        assert_eq!(cell_rat(&rat(6, 3)), "2");
        assert_eq!(cell_pair(&RealEnclosure::exact(rat(1, 3))), "1/3");
        let e = RealEnclosure::new(rat(1, 3), rat(1, 2));
        assert_eq!(cell_pair(&e), "333333333333/1000000000000..1/2");
    }

    #[test]
    fn csv_shape() {
        let mut t = Table::new(&["x", "note"]);
        t.rows.push(vec!["1".into(), "a,b".into()]);
        t.rows.push(error_row("2".into(), 2, &Error::budget("cap")));
        let s = render(&Report::Table(t.clone()), Format::Csv).unwrap();
        assert_eq!(s, "x,note\n1,\"a,b\"\n2,budget\n");
        assert_eq!(t.budget_rows(), 1);
        let j = serde_json::json!({"a": {"b": [1, "2/3"]}});
        let s = render(&Report::Json(j), Format::Csv).unwrap();
        assert_eq!(s, "field,value\na.b.0,1\na.b.1,2/3\n");
    }
}
