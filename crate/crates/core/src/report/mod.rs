//! Figure presets, file emitters and the verification suites.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

pub mod estimate;
pub mod figures;
pub mod verify;

pub use estimate::{
    parse_rational, run_estimate, write_estimate, EstimateReport, EstimateRequest, Estimated, Expectation, Method,
    PredictedTriple, Subject, Verdict,
};
pub use figures::{grid_csv, render_grid, render_svg, write_all_figures, write_plot, FigureId, FigurePreset, PlotSpec};
pub use verify::{run_suite, suite_rows, Suite, VerificationTable, VerifyRow};

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `bytes` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}
