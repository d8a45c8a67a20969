//! Tabular and key-value reports rendered as CSV, JSON or plain text.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value as Json};

/// Significant digits in CSV and JSON output.
pub const SIG_DIGITS: usize = 12;

/// One cell of a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

/// Rounds to `digits` significant digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", digits - 1, v).parse().unwrap_or(v)
}

/// `v` with `digits` significant digits; `inf`, `-inf`, `nan` for
/// non-finite values.
pub fn format_real(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(v, digits);
    let a = r.abs();
    if r == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

impl Value {
    fn render(&self, digits: usize) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Real(v) => format_real(*v, digits),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Int(i) => Json::from(*i),
            Value::Real(v) => Number::from_f64(round_sig(*v, SIG_DIGITS))
                .map(Json::Number)
                .unwrap_or_else(|| Json::String(format_real(*v, SIG_DIGITS))),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
        }
    }
}

/// Rows of values under a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// Keeps only the named columns, in the given order.
    pub fn select(&self, names: &[String]) -> Result<Table, String> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.column(n).ok_or_else(|| format!("unknown column `{n}`")))
            .collect::<Result<_, _>>()?;
        Ok(Table {
            headers: idx.iter().map(|&i| self.headers[i].clone()).collect(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&i| r[i].clone()).collect()).collect(),
        })
    }
}

/// Ordered key-value report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Record {
    pub fields: Vec<(String, Value)>,
    text_digits: Option<usize>,
    text_sep: Option<&'static str>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    /// Digits and separator used by the text rendering only.
    pub fn with_text_style(mut self, digits: usize, sep: &'static str) -> Self {
        self.text_digits = Some(digits);
        self.text_sep = Some(sep);
        self
    }

    pub fn put(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_owned(), v.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Table(Table),
    Record(Record),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

fn csv_lines(headers: &[String], rows: &[Vec<Value>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for r in rows {
        w.write_record(r.iter().map(|v| v.render(SIG_DIGITS))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Report::Table(t), Format::Csv) => csv_lines(&t.headers, &t.rows),
            (Report::Record(r), Format::Csv) => {
                let headers: Vec<String> = r.fields.iter().map(|(k, _)| k.clone()).collect();
                let row: Vec<Value> = r.fields.iter().map(|(_, v)| v.clone()).collect();
                csv_lines(&headers, &[row])
            }
            (Report::Table(t), Format::Json) => {
                let rows: Vec<Json> = t
                    .rows
                    .iter()
                    .map(|r| {
                        Json::Object(
                            t.headers.iter().cloned().zip(r.iter().map(Value::to_json)).collect(),
                        )
                    })
                    .collect();
                let mut doc = Map::new();
                doc.insert("columns".into(), Json::from(t.headers.clone()));
                doc.insert("rows".into(), Json::Array(rows));
                format!("{}\n", serde_json::to_string_pretty(&Json::Object(doc)).expect("json"))
            }
            (Report::Record(r), Format::Json) => {
                let obj: Map<String, Json> =
                    r.fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
                format!("{}\n", serde_json::to_string_pretty(&Json::Object(obj)).expect("json"))
            }
            (Report::Table(t), Format::Text) => {
                let cells: Vec<Vec<String>> =
                    t.rows.iter().map(|r| r.iter().map(|v| v.render(SIG_DIGITS)).collect()).collect();
                let widths: Vec<usize> = (0..t.headers.len())
                    .map(|i| {
                        cells.iter().map(|r| r[i].len()).chain([t.headers[i].len()]).max().unwrap_or(0)
                    })
                    .collect();
                let mut out = String::new();
                let line = |out: &mut String, items: &[String]| {
                    let parts: Vec<String> =
                        items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                    let _ = writeln!(out, "{}", parts.join("  ").trim_end());
                };
                line(&mut out, &t.headers);
                for r in &cells {
                    line(&mut out, r);
                }
                out
            }
            (Report::Record(r), Format::Text) => {
                let digits = r.text_digits.unwrap_or(SIG_DIGITS);
                let sep = r.text_sep.unwrap_or("=");
                let mut out = String::new();
                for (k, v) in &r.fields {
                    let _ = writeln!(out, "{k} {sep} {}", v.render(digits));
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_significant_digits() {
        assert_eq!(format_real(0.1, 12), "0.1");
        assert_eq!(format_real(f64::INFINITY, 12), "inf");
        assert_eq!(format_real(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_real(1.018e-6, 12), "1.018e-6");
        assert_eq!(format_real(2.217_715_105_757_09, 9), "2.21771511");
        assert_eq!(format_real(1e20, 12), "1e20");
        assert_eq!(format_real(0.0, 12), "0");
    }

    #[test]
    fn json_uses_string_for_infinity() {
        let mut r = Record::new();
        r.put("x", f64::INFINITY).put("y", 0.5);
        let s = Report::Record(r).render(Format::Json);
        let v: Json = serde_json::from_str(&s).unwrap();
        assert_eq!(v["x"], Json::String("inf".into()));
        assert_eq!(v["y"], Json::from(0.5));
    }

    #[test]
    fn select_reorders_columns() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![Value::Int(1), Value::Real(2.0)]);
        let s = t.select(&["b".into(), "a".into()]).unwrap();
        assert_eq!(s.headers, ["b", "a"]);
        assert_eq!(s.rows[0][1], Value::Int(1));
        assert!(t.select(&["zz".into()]).is_err());
    }
}
