//! JSON and CSV rendering.

use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy)]
pub enum Format {
    Json,
    Csv,
}

/// Named vector columns, one CSV row per coordinate.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<(String, Vec<i64>)>,
}

#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub table: Option<Table>,
    /// Set by `verify` when some case failed.
    pub failed: bool,
}

impl Output {
    pub fn json(json: Value) -> Self {
        Output { json, table: None, failed: false }
    }

    pub fn vectors(json: Value, columns: &[(&str, &[i64])]) -> Self {
        let columns = columns.iter().map(|(k, v)| (k.to_string(), v.to_vec())).collect();
        Output { json, table: Some(Table { columns }), failed: false }
    }
}

pub fn render(out: &Output, format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string(&out.json).expect("values serialize"))),
        Format::Csv => {
            let t = out
                .table
                .as_ref()
                .ok_or_else(|| CliError::Input("CSV output is only available for vector-valued results".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["coordinate".to_string()];
            header.extend(t.columns.iter().map(|c| c.0.clone()));
            let csv_err = |e: csv::Error| CliError::Input(format!("CSV output: {e}"));
            w.write_record(&header).map_err(csv_err)?;
            let rows = t.columns.iter().map(|c| c.1.len()).max().unwrap_or(0);
            for i in 0..rows {
                let mut rec = vec![(i + 1).to_string()];
                rec.extend(t.columns.iter().map(|c| c.1.get(i).map(|x| x.to_string()).unwrap_or_default()));
                w.write_record(&rec).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Input(format!("CSV output: {e}")))?;
            Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
        }
    }
}
