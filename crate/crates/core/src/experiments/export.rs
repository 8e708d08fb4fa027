use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::sweep::{SurfaceRow, SurfaceTable};
use crate::error::{Error, Result};

/// `surface.csv` → `surface.meta.json`.
pub fn metadata_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    csv.with_file_name(format!("{stem}.meta.json"))
}

fn csv_text(table: &SurfaceTable) -> String {
    let states = table.rows.first().map_or(0, |r| r.per_state.len());
    let mut out = String::from("alpha,gamma_hz,fidelity");
    for k in 1..=states {
        write!(out, ",f_state_{k}").unwrap();
    }
    out.push('\n');
    for row in &table.rows {
        write!(out, "{:.16e},{:.16e},{:.16e}", row.alpha, row.gamma_hz, row.fidelity).unwrap();
        for f in &row.per_state {
            write!(out, ",{f:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_surface_csv(table: &SurfaceTable, path: &Path) -> Result<()> {
    fs::write(path, csv_text(table)).map_err(|e| Error::io(path, e))
}

/// Writes the CSV and its metadata sidecar; returns the sidecar path.
pub fn export_surface(table: &SurfaceTable, path: &Path) -> Result<PathBuf> {
    write_surface_csv(table, path)?;
    let meta = metadata_path(path);
    let json = serde_json::to_string_pretty(&table.metadata).map_err(|e| Error::Json {
        context: "surface metadata".into(),
        source: e,
    })?;
    fs::write(&meta, json + "\n").map_err(|e| Error::io(&meta, e))?;
    Ok(meta)
}

/// Parses a CSV written by [`write_surface_csv`].
pub fn read_surface_csv(path: &Path) -> Result<Vec<SurfaceRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse {
        context: path.display().to_string(),
        message: "empty file".into(),
    })?;
    let columns = header.split(',').count();
    if !header.starts_with("alpha,gamma_hz,fidelity") {
        return Err(Error::Parse {
            context: path.display().to_string(),
            message: format!("unexpected header `{header}`"),
        });
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let bad = |msg: String| Error::Parse {
                context: format!("{}:{}", path.display(), i + 2),
                message: msg,
            };
            let values = line
                .split(',')
                .map(|v| v.parse::<f64>().map_err(|e| bad(format!("`{v}`: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            if values.len() != columns {
                return Err(bad(format!("{} fields, header has {columns}", values.len())));
            }
            Ok(SurfaceRow {
                alpha: values[0],
                gamma_hz: values[1],
                fidelity: values[2],
                per_state: values[3..].to_vec(),
            })
        })
        .collect()
}
