//! Product data: delimiter-separated records with a header row.

use std::collections::BTreeSet;

use crate::diag::{Code, Diagnostic, Location};

/// A tabular product record set with a designated unique key column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRecordSet {
    pub schema: Vec<String>,
    pub key_column: String,
    rows: Vec<Vec<String>>,
}

impl ProductRecordSet {
    pub fn column_index(&self, column: &str) -> Option<usize> {
        self.schema.iter().position(|c| c == column)
    }

    pub fn has_column(&self, column: &str) -> bool {
        self.column_index(column).is_some()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[String]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// Value of `column` in row `row`, if the column exists.
    pub fn value(&self, row: usize, column: &str) -> Option<&str> {
        let idx = self.column_index(column)?;
        self.rows.get(row).map(|r| r[idx].as_str())
    }
}

/// Parse comma-separated product data with a header row and enforce the
/// record-set invariants: rectangular rows and unique, nonempty key values.
pub fn load_product_data(text: &str, key_column: &str) -> Result<ProductRecordSet, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());

    let schema: Vec<String> = match reader.headers() {
        Ok(h) => h.iter().map(str::to_string).collect(),
        Err(e) => {
            return Err(vec![Diagnostic::error(
                Code::RaggedRow,
                Location::Span { line: 1, col: 1 },
                format!("cannot read header row: {e}"),
            )])
        }
    };

    let key_idx = match schema.iter().position(|c| c == key_column) {
        Some(i) => i,
        None => {
            return Err(vec![Diagnostic::error(
                Code::MissingKeyColumn,
                Location::Span { line: 1, col: 1 },
                format!("key column '{key_column}' is not in the header {schema:?}"),
            )])
        }
    };

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut keys: BTreeSet<String> = BTreeSet::new();
    for (i, record) in reader.records().enumerate() {
        // data rows start on line 2
        let line = (i + 2) as u32;
        let loc = Location::Span { line, col: 1 };
        match record {
            Err(e) => {
                diags.push(Diagnostic::error(
                    Code::RaggedRow,
                    loc,
                    format!("row does not match the header schema: {e}"),
                ));
            }
            Ok(record) => {
                let row: Vec<String> = record.iter().map(str::to_string).collect();
                let key = &row[key_idx];
                if key.is_empty() {
                    diags.push(Diagnostic::error(
                        Code::DuplicateKey,
                        loc,
                        format!("key column '{key_column}' is empty (keys must be unique and nonempty)"),
                    ));
                } else if !keys.insert(key.clone()) {
                    diags.push(Diagnostic::error(
                        Code::DuplicateKey,
                        loc,
                        format!("key '{key}' appears more than once"),
                    ));
                }
                rows.push(row);
            }
        }
    }

    if crate::diag::has_errors(&diags) {
        return Err(diags);
    }
    Ok(ProductRecordSet {
        schema,
        key_column: key_column.to_string(),
        rows,
    })
}
