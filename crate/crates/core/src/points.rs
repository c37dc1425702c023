//! CSV ingestion of point lists: one point per row, `#` comments, and an
//! optional non-numeric header row.

use std::io::Read;

use crate::error::{Error, Result};

pub fn read_points<R: Read>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => {
                if let Some(i) = row.iter().position(|v| !v.is_finite()) {
                    return Err(Error::Parse(format!("row {}: non-finite value in column {}", line + 1, i + 1)));
                }
                if let Some(first) = out.first() {
                    if first.len() != row.len() {
                        return Err(Error::Parse(format!(
                            "row {}: expected {} columns, got {}",
                            line + 1,
                            first.len(),
                            row.len()
                        )));
                    }
                }
                out.push(row);
            }
            Err(_) if line == 0 => continue,
            Err(e) => return Err(Error::Parse(format!("row {}: {e}", line + 1))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("no points".into()));
    }
    Ok(out)
}
