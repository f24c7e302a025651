use std::path::Path;

use crate::dispersion::ProcessorSpec;
use crate::error::{Error, Result};

pub const PROCESSOR_CSV_HEADER: [&str; 5] = ["name", "year", "transistors", "die_area_mm2", "clock_mhz"];

pub fn read_processor_csv(path: &Path) -> Result<Vec<ProcessorSpec>> {
    parse_processor_csv(&super::read_text(path)?)
}

/// Parses `name,year,transistors,die_area_mm2,clock_mhz` rows. Columns are
/// located by header name; extra columns are ignored. Area is converted
/// to m² and clock to Hz.
pub fn parse_processor_csv(text: &str) -> Result<Vec<ProcessorSpec>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::invalid(format!("processor CSV header: {e}")))?
        .clone();
    let mut col = [0usize; 5];
    for (slot, name) in col.iter_mut().zip(PROCESSOR_CSV_HEADER) {
        *slot = header.iter().position(|h| h == name).ok_or_else(|| Error::Row {
            row: 0,
            column: name.to_string(),
            message: "missing column in header".into(),
        })?;
    }

    let mut specs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::Row {
            row,
            column: String::new(),
            message: e.to_string(),
        })?;
        let field = |k: usize| -> Result<&str> {
            record.get(col[k]).ok_or_else(|| Error::Row {
                row,
                column: PROCESSOR_CSV_HEADER[k].into(),
                message: "missing field".into(),
            })
        };
        let bad = |k: usize, message: String| Error::Row {
            row,
            column: PROCESSOR_CSV_HEADER[k].into(),
            message,
        };
        let positive = |k: usize| -> Result<f64> {
            let raw = field(k)?;
            let v: f64 = raw
                .parse()
                .map_err(|_| bad(k, format!("`{raw}` is not a number")))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(bad(k, format!("must be a positive number, got {raw}")));
            }
            Ok(v)
        };

        let name = field(0)?.to_string();
        let raw_year = field(1)?;
        let year: i32 = raw_year
            .parse()
            .map_err(|_| bad(1, format!("`{raw_year}` is not an integer year")))?;
        let transistors = positive(2)?;
        if transistors.fract() != 0.0 || transistors > u64::MAX as f64 {
            return Err(bad(2, format!("`{}` is not a whole count", field(2)?)));
        }
        let spec = ProcessorSpec::new(
            name,
            year,
            transistors as u64,
            positive(3)? * 1e-6,
            positive(4)? * 1e6,
        );
        spec.validate().map_err(|e| bad(1, e.to_string()))?;
        specs.push(spec);
    }
    if specs.is_empty() {
        return Err(Error::invalid("processor CSV has no data rows"));
    }
    Ok(specs)
}
