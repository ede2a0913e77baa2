//! Result rendering for `--output-format tsv|json`.
//!
//! Numbers are rendered once as text; JSON carries the same digits as a
//! number, so both formats parse to identical values.

use corpuskit_core::report::group_digits;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// A real number already rendered at its reporting precision.
    Num(String),
    Int(u64),
    /// An integer shown with thousands separators in TSV.
    Grouped(u64),
    Text(String),
}

impl Value {
    pub fn num(x: f64) -> Self {
        Value::Num(x.to_string())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    fn tsv(&self, group: bool) -> String {
        match self {
            Value::Num(s) | Value::Text(s) => s.clone(),
            Value::Int(n) => n.to_string(),
            Value::Grouped(n) if group => group_digits(*n),
            Value::Grouped(n) => n.to_string(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Num(s) => s
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Json::Null, Json::Number),
            Value::Int(n) | Value::Grouped(n) => Json::Number((*n).into()),
            Value::Text(s) => Json::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    /// One line of `key=value` pairs.
    Pairs(Vec<(&'static str, Value)>),
    /// Header line plus one line per row.
    Table {
        columns: Vec<&'static str>,
        rows: Vec<Vec<Value>>,
        group_digits: bool,
    },
}

impl Report {
    pub fn table(columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Self {
        Report::Table {
            columns,
            rows,
            group_digits: false,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Tsv => self.tsv(),
            OutputFormat::Json => {
                let mut s = self.json().to_string();
                s.push('\n');
                s
            }
        }
    }

    fn tsv(&self) -> String {
        match self {
            Report::Pairs(pairs) => {
                let fields: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={}", v.tsv(false))).collect();
                fields.join("\t") + "\n"
            }
            Report::Table {
                columns,
                rows,
                group_digits,
            } => {
                let mut out = columns.join("\t");
                out.push('\n');
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|v| v.tsv(*group_digits)).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
                out
            }
        }
    }

    fn json(&self) -> Json {
        match self {
            Report::Pairs(pairs) => Json::Object(pairs.iter().map(|(k, v)| (k.to_string(), v.json())).collect()),
            Report::Table { columns, rows, .. } => Json::Array(
                rows.iter()
                    .map(|row| {
                        let obj: Map<String, Json> = columns
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), v.json()))
                            .collect();
                        Json::Object(obj)
                    })
                    .collect(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_render_both_ways() {
        let r = Report::Pairs(vec![
            ("median", Value::Num("107.10".into())),
            ("mean", Value::Num("145.72".into())),
        ]);
        assert_eq!(r.render(OutputFormat::Tsv), "median=107.10\tmean=145.72\n");
        let j: Json = serde_json::from_str(&r.render(OutputFormat::Json)).unwrap();
        assert_eq!(j["median"].as_f64(), Some(107.10));
        assert_eq!(j["mean"].as_f64(), Some(145.72));
    }

    #[test]
    fn grouped_table() {
        let r = Report::Table {
            columns: vec!["dataset", "word_count"],
            rows: vec![vec![Value::text("hrWaC"), Value::Grouped(1_250_923_836)]],
            group_digits: true,
        };
        assert_eq!(
            r.render(OutputFormat::Tsv),
            "dataset\tword_count\nhrWaC\t1,250,923,836\n"
        );
        assert_eq!(
            r.render(OutputFormat::Json),
            "[{\"dataset\":\"hrWaC\",\"word_count\":1250923836}]\n"
        );
    }
}
