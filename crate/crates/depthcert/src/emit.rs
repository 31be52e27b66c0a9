use std::io::Write;
use std::path::{Path, PathBuf};

use depthcert_core::{boundary_curve, BoundaryPoint};
use serde::Serialize;

use crate::error::{Error, Result};

/// Writes the whole file to a temporary sibling, then renames it over
/// `path`, so readers never see a partial file.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Usage(e.to_string()))?;
    }
    Ok(w.into_inner().expect("writing to memory"))
}

pub fn write_csv<T: Serialize>(rows: &[T], path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path, &csv_bytes(rows)?)
}

pub fn boundary_file_name(n: u32, k: u32) -> String {
    format!("boundary_n{n}_k{k}.csv")
}

/// `lambda,x_norm,var_z`, one row per grid point.
pub fn boundary_csv(points: &[BoundaryPoint]) -> Vec<u8> {
    let mut out = String::from("lambda,x_norm,var_z\n");
    for p in points {
        // `{:?}` is the shortest representation that parses back exactly
        out.push_str(&format!("{:?},{:?},{:?}\n", p.lambda, p.x_norm, p.var_z));
    }
    out.into_bytes()
}

/// One boundary file per `k` in `dir`; returns the paths written.
pub fn emit_boundary_csv(n: u32, ks: &[u32], grid: &[f64], dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    ks.iter()
        .map(|&k| {
            let curve = boundary_curve(n, k, grid)?;
            let path = dir.join(boundary_file_name(n, k));
            write_atomic(&path, &boundary_csv(&curve.points))?;
            Ok(path)
        })
        .collect()
}
