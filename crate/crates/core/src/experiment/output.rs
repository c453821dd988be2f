use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::sweep::SweepRow;
use crate::error::{Error, Result};
use crate::nb::ModelKind;

pub const CSV_HEADER: &str =
    "model,sweep_param,n_classes,accuracy,entropy_score,purity,train_supports";

/// Metric columns paired with accuracy in plot files.
pub const PLOT_METRICS: [&str; 2] = ["entropy_score", "purity"];

/// Renders rows as CSV text. Supports are `;`-separated.
pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let supports: Vec<String> = r.train_supports.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "{},{:.6},{},{:.6},{:.6},{:.6},{}\n",
            r.model,
            r.sweep_param,
            r.n_classes,
            r.accuracy,
            r.entropy_score,
            r.purity,
            supports.join(";")
        ));
    }
    out
}

fn ensure_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
        }
        _ => Ok(()),
    }
}

/// Writes the CSV, creating missing parent directories.
pub fn emit_csv(rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    ensure_parent(path)?;
    fs::write(path, csv_string(rows)).map_err(|e| Error::io(path, e))
}

/// Path of the plot file for one model and metric.
pub fn plot_path(prefix: &Path, model: ModelKind, metric: &str) -> PathBuf {
    let mut name = prefix
        .file_name()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    name.push(format!("_{model}_{metric}.dat"));
    prefix.with_file_name(name)
}

/// Writes `<prefix>_<model>_<metric>.dat` files with whitespace-separated
/// `accuracy metric` columns. Returns the written paths.
pub fn emit_plot_data(rows: &[SweepRow], prefix: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let prefix = prefix.as_ref();
    let mut models: Vec<ModelKind> = Vec::new();
    for r in rows {
        if !models.contains(&r.model) {
            models.push(r.model);
        }
    }
    let mut written = Vec::new();
    for model in models {
        for metric in PLOT_METRICS {
            let path = plot_path(prefix, model, metric);
            ensure_parent(&path)?;
            let mut body = format!("# accuracy {metric}\n");
            for r in rows.iter().filter(|r| r.model == model) {
                let value = if metric == "purity" {
                    r.purity
                } else {
                    r.entropy_score
                };
                body.push_str(&format!("{:.6} {:.6}\n", r.accuracy, value));
            }
            let mut f = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
            f.write_all(body.as_bytes())
                .map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}
