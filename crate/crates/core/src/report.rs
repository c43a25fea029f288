//! Rendering of metric reports as JSON, CSV and text tables.
//!
//! JSON and CSV carry full precision; only the text tables round, to one
//! decimal place.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{
    round1, Metric, MetricReport, MetricValues, NormalizedProfile, SCHEMA_VERSION,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv row {row}: {message}")]
    BadRow { row: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Raw,
    Normalized,
}

impl RowKind {
    fn as_str(self) -> &'static str {
        match self {
            RowKind::Raw => "raw",
            RowKind::Normalized => "normalized",
        }
    }
}

/// Versioned envelope for `evaluate` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvaluateDocument {
    pub schema_version: u32,
    pub reports: Vec<MetricReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normalized: Option<Vec<NormalizedProfile>>,
}

impl EvaluateDocument {
    pub fn new(reports: Vec<MetricReport>, normalized: Option<Vec<NormalizedProfile>>) -> Self {
        EvaluateDocument {
            schema_version: SCHEMA_VERSION,
            reports,
            normalized,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(RowKind, &str, &MetricValues)> = self
            .reports
            .iter()
            .map(|r| (RowKind::Raw, r.ontology_id.as_str(), &r.values))
            .collect();
        if let Some(norm) = &self.normalized {
            rows.extend(
                norm.iter()
                    .map(|n| (RowKind::Normalized, n.ontology_id.as_str(), &n.values)),
            );
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["kind", "ontologyId"];
        header.extend(Metric::ALL.iter().map(|m| m.key()));
        w.write_record(&header).expect("in-memory write");
        for (kind, id, values) in rows {
            let mut record = vec![kind.as_str().to_string(), id.to_string()];
            record.extend(Metric::ALL.iter().map(|m| values.get(*m).to_string()));
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = metric_table(
            self.reports
                .iter()
                .map(|r| (r.ontology_id.as_str(), &r.values)),
        );
        for r in &self.reports {
            if !r.undefined.is_empty() {
                let keys: Vec<_> = r.undefined.iter().map(|m| m.symbol()).collect();
                out.push_str(&format!(
                    "{}: undefined (reported as 0): {}\n",
                    r.ontology_id,
                    keys.join(", ")
                ));
            }
        }
        if let Some(norm) = &self.normalized {
            out.push_str("\nNormalized\n");
            out.push_str(&metric_table(
                norm.iter().map(|n| (n.ontology_id.as_str(), &n.values)),
            ));
        }
        out
    }
}

fn metric_table<'a>(rows: impl Iterator<Item = (&'a str, &'a MetricValues)>) -> String {
    let rows: Vec<_> = rows.collect();
    let width = rows
        .iter()
        .map(|(id, _)| id.chars().count())
        .max()
        .unwrap_or(0)
        .max("Ontology".len());
    let mut out = format!("{:<width$}", "Ontology");
    for m in Metric::ALL {
        out.push_str(&format!("{:>7}", m.symbol()));
    }
    out.push('\n');
    for (id, values) in rows {
        out.push_str(&format!("{id:<width$}"));
        for m in Metric::ALL {
            out.push_str(&format!("{:>7.1}", round1(values.get(m))));
        }
        out.push('\n');
    }
    out
}

/// A row read back from CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub kind: RowKind,
    pub ontology_id: String,
    pub values: MetricValues,
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, ReportError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (n, record) in r.records().enumerate() {
        let record = record?;
        let bad = |message: String| ReportError::BadRow {
            row: n + 1,
            message,
        };
        if record.len() != 2 + Metric::ALL.len() {
            return Err(bad(format!(
                "expected {} fields, got {}",
                2 + Metric::ALL.len(),
                record.len()
            )));
        }
        let kind = match &record[0] {
            "raw" => RowKind::Raw,
            "normalized" => RowKind::Normalized,
            other => return Err(bad(format!("unknown kind '{other}'"))),
        };
        let mut values = MetricValues::default();
        for (i, m) in Metric::ALL.into_iter().enumerate() {
            let field = &record[2 + i];
            let v: f64 = field
                .parse()
                .map_err(|_| bad(format!("bad number '{field}'")))?;
            values.set(m, v);
        }
        out.push(CsvRow {
            kind,
            ontology_id: record[1].to_string(),
            values,
        });
    }
    Ok(out)
}

/// Side-by-side view: one row per metric, one column per ontology.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Comparison {
    pub schema_version: u32,
    pub ontologies: Vec<String>,
    pub rows: Vec<ComparisonRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub metric: Metric,
    pub values: Vec<f64>,
    pub normalized: Vec<f64>,
}

impl Comparison {
    pub fn new(reports: &[MetricReport], normalized: &[NormalizedProfile]) -> Comparison {
        Comparison {
            schema_version: SCHEMA_VERSION,
            ontologies: reports.iter().map(|r| r.ontology_id.clone()).collect(),
            rows: Metric::ALL
                .into_iter()
                .map(|m| ComparisonRow {
                    metric: m,
                    values: reports.iter().map(|r| r.value(m)).collect(),
                    normalized: normalized.iter().map(|n| n.values.get(m)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("comparison serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["kind".to_string(), "metric".to_string()];
        header.extend(self.ontologies.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (kind, pick) in [(RowKind::Raw, false), (RowKind::Normalized, true)] {
            for row in &self.rows {
                let mut record = vec![kind.as_str().to_string(), row.metric.key().to_string()];
                let values = if pick { &row.normalized } else { &row.values };
                record.extend(values.iter().map(f64::to_string));
                w.write_record(&record).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let col = self
            .ontologies
            .iter()
            .map(|o| o.chars().count())
            .max()
            .unwrap_or(0)
            .max(6)
            + 2;
        let label = Metric::ALL
            .iter()
            .map(|m| m.name().len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (title, pick) in [("Metric", false), ("Normalized", true)] {
            if pick {
                out.push('\n');
            }
            out.push_str(&format!("{title:<label$}"));
            for o in &self.ontologies {
                out.push_str(&format!("{o:>col$}"));
            }
            out.push('\n');
            for row in &self.rows {
                out.push_str(&format!("{:<label$}", row.metric.name()));
                let values = if pick { &row.normalized } else { &row.values };
                for v in values {
                    out.push_str(&format!("{:>col$.1}", round1(*v)));
                }
                out.push('\n');
            }
        }
        out
    }
}
