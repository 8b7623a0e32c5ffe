//! Result tables and their CSV / JSON renderings.

use serde_json::{json, Map, Value};

use crate::config::{ExperimentConfig, Format};
use crate::Result;

pub const BASE_COLUMNS: [&str; 9] =
    ["experiment", "n_or_nu", "samples", "statistic", "quantity", "detail", "value", "std_err", "seed"];

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n_or_nu: usize,
    pub samples: usize,
    pub statistic: String,
    pub quantity: String,
    pub detail: String,
    pub value: f64,
    pub std_err: Option<f64>,
    pub extras: Vec<f64>,
}

impl Row {
    pub fn new(n_or_nu: usize, samples: usize, statistic: impl Into<String>, quantity: &str, value: f64) -> Self {
        Self {
            n_or_nu,
            samples,
            statistic: statistic.into(),
            quantity: quantity.to_owned(),
            detail: String::new(),
            value,
            std_err: None,
            extras: Vec::new(),
        }
    }

    pub fn err(mut self, std_err: f64) -> Self {
        self.std_err = Some(std_err);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn extras(mut self, extras: Vec<f64>) -> Self {
        self.extras = extras;
        self
    }
}

/// Output of one experiment run. `config` is the resolved configuration,
/// including any pilot-derived defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub config: ExperimentConfig,
    pub extra_columns: Vec<String>,
    pub rows: Vec<Row>,
}

fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

fn json_num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

impl Table {
    pub fn new(config: ExperimentConfig) -> Self {
        Self { config, extra_columns: Vec::new(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Row) {
        debug_assert_eq!(row.extras.len(), self.extra_columns.len());
        self.rows.push(row);
    }

    /// First row matching all three keys.
    pub fn find(&self, n: usize, statistic: &str, quantity: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.n_or_nu == n && r.statistic == statistic && r.quantity == quantity)
    }

    pub fn select<'a>(&'a self, statistic: &'a str, quantity: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.statistic == statistic && r.quantity == quantity)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = format!("# config: {}\n", self.config.to_json());
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<&str> =
            BASE_COLUMNS.iter().copied().chain(self.extra_columns.iter().map(String::as_str)).collect();
        w.write_record(&header)?;
        let experiment = self.config.experiment_id.tag();
        let seed = self.config.seed.to_string();
        for r in &self.rows {
            let mut rec = vec![
                experiment.to_owned(),
                r.n_or_nu.to_string(),
                r.samples.to_string(),
                r.statistic.clone(),
                r.quantity.clone(),
                r.detail.clone(),
                num(r.value),
                r.std_err.map(num).unwrap_or_default(),
                seed.clone(),
            ];
            rec.extend(r.extras.iter().map(|&v| num(v)));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
        out.push_str(std::str::from_utf8(&bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let experiment = self.config.experiment_id.tag();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("experiment".into(), json!(experiment));
                m.insert("n_or_nu".into(), json!(r.n_or_nu));
                m.insert("samples".into(), json!(r.samples));
                m.insert("statistic".into(), json!(r.statistic));
                m.insert("quantity".into(), json!(r.quantity));
                m.insert("detail".into(), json!(r.detail));
                m.insert("value".into(), json_num(r.value));
                m.insert("std_err".into(), r.std_err.map_or(Value::Null, json_num));
                m.insert("seed".into(), json!(self.config.seed));
                for (name, &v) in self.extra_columns.iter().zip(&r.extras) {
                    m.insert(name.clone(), json_num(v));
                }
                Value::Object(m)
            })
            .collect();
        let doc = json!({ "config": self.config, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}
