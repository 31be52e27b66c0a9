//! Shot files: CSV with header `shot_id,basis,n_plus,n_minus`, one
//! experimental repetition per row, basis `z` or `alpha`.

use std::io::Read;
use std::path::Path;

use depthcert_core::simulation::{Basis, ShotRecord};

use crate::emit::write_atomic;
use crate::error::{Error, Result, RowError};

pub const COLUMNS: [&str; 4] = ["shot_id", "basis", "n_plus", "n_minus"];

pub fn parse_shots(path: impl AsRef<Path>) -> Result<Vec<ShotRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_shots(file).map_err(|rows| Error::Parse {
        path: path.to_path_buf(),
        rows,
    })
}

/// Parses every row, collecting all problems instead of stopping at the
/// first one.
pub fn read_shots(input: impl Read) -> std::result::Result<Vec<ShotRecord>, Vec<RowError>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = reader.headers().map_err(|e| vec![row_error(1, e.to_string())])?.clone();
    let missing: Vec<&str> = COLUMNS
        .iter()
        .copied()
        .filter(|c| !header.iter().any(|h| h == *c))
        .collect();
    let extra: Vec<&str> = header.iter().filter(|h| !COLUMNS.contains(h)).collect();
    if !missing.is_empty() || !extra.is_empty() || header.len() != COLUMNS.len() {
        let mut msg = format!("header must be `{}`", COLUMNS.join(","));
        if !missing.is_empty() {
            msg.push_str(&format!("; missing {}", missing.join(", ")));
        }
        if !extra.is_empty() {
            msg.push_str(&format!("; unexpected {}", extra.join(", ")));
        }
        return Err(vec![row_error(1, msg)]);
    }
    let col = |name: &str| header.iter().position(|h| h == name).expect("checked above");
    let (i_id, i_basis, i_plus, i_minus) = (col("shot_id"), col("basis"), col("n_plus"), col("n_minus"));

    let mut records = Vec::new();
    let mut errors = Vec::new();
    for row in reader.records() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                errors.push(row_error(line, e.to_string()));
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        if row.len() != COLUMNS.len() {
            errors.push(row_error(line, format!("expected 4 fields, found {}", row.len())));
            continue;
        }
        let mut problems = Vec::new();
        let shot_id = row[i_id]
            .parse::<u64>()
            .map_err(|_| problems.push(format!("shot_id `{}` is not a non-negative integer", &row[i_id])))
            .ok();
        let basis = match &row[i_basis] {
            "z" => Some(Basis::Z),
            "alpha" => Some(Basis::Alpha),
            other => {
                problems.push(format!("unknown basis `{other}` (expected z or alpha)"));
                None
            }
        };
        let mut count = |i: usize, name: &str| {
            row[i]
                .parse::<u32>()
                .map_err(|_| problems.push(format!("{name} `{}` is not a non-negative integer", &row[i])))
                .ok()
        };
        let n_plus = count(i_plus, "n_plus");
        let n_minus = count(i_minus, "n_minus");
        match (shot_id, basis, n_plus, n_minus) {
            (Some(shot_id), Some(basis), Some(n_plus), Some(n_minus)) if problems.is_empty() => {
                records.push(ShotRecord {
                    shot_id,
                    basis,
                    n_plus,
                    n_minus,
                })
            }
            _ => errors.push(row_error(line, problems.join(", "))),
        }
    }
    if errors.is_empty() {
        Ok(records)
    } else {
        Err(errors)
    }
}

fn row_error(line: u64, message: String) -> RowError {
    RowError { line, message }
}

pub fn shots_to_csv(records: &[ShotRecord]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}

pub fn write_shots(records: &[ShotRecord], path: impl AsRef<Path>) -> Result<()> {
    let bytes = if records.is_empty() {
        format!("{}\n", COLUMNS.join(",")).into_bytes()
    } else {
        shots_to_csv(records)
    };
    write_atomic(path, &bytes)
}
