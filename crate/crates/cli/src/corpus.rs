//! Batch runs over a directory of `.poly` files with optional `.expect`
//! sidecars.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::expect::Expectations;
use crate::input::parse_poly_file;
use crate::report::{run, Outcome, RunOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// The analysis ran but disagrees with the sidecar or violates an invariant.
    Mismatch,
    /// Unreadable input, unsuitable input or a crash.
    Failed,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub d: Option<u32>,
    pub m: Option<usize>,
    pub exponents: Vec<i64>,
    pub tau: Option<u64>,
    pub mu: Option<u64>,
    pub qh: Option<usize>,
    pub non_qh: Option<usize>,
    pub millis: u64,
    pub status: RowStatus,
    pub notes: Vec<String>,
}

pub fn poly_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "poly"))
        .collect();
    files.sort();
    Ok(files)
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

pub fn run_file(path: &Path, opts: &RunOptions) -> Row {
    let name = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let mut row = Row {
        name,
        d: None,
        m: None,
        exponents: Vec::new(),
        tau: None,
        mu: None,
        qh: None,
        non_qh: None,
        millis: 0,
        status: RowStatus::Failed,
        notes: Vec::new(),
    };
    let start = Instant::now();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            row.notes.push(e.to_string());
            return row;
        }
    };
    let expect = match fs::read_to_string(path.with_extension("expect")) {
        Ok(t) => match Expectations::parse(&t) {
            Ok(e) => Some(e),
            Err(e) => {
                row.notes.push(format!("sidecar: {e}"));
                return row;
            }
        },
        Err(_) => None,
    };
    let input = match parse_poly_file(&text, None) {
        Ok(i) => i,
        Err(e) => {
            row.notes.push(e.to_string());
            return row;
        }
    };
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(&input, opts)));
    row.millis = start.elapsed().as_millis() as u64;
    let outcome = match outcome {
        Ok(o) => o,
        Err(p) => {
            row.notes.push(format!("panic: {}", panic_message(p.as_ref())));
            return row;
        }
    };
    if let Outcome::Failed { message, .. } = &outcome {
        row.notes.push(message.clone());
        return row;
    }
    let doc = outcome.document().expect("report present");
    let r = &doc.report;
    row.d = Some(r.d);
    row.m = Some(r.resolution.m);
    row.exponents = r.resolution.exponents.clone();
    row.tau = Some(r.tau_total);
    row.mu = Some(r.mu_total);
    row.qh = Some(doc.qh_count());
    row.non_qh = Some(doc.non_qh_count());
    row.notes.extend(doc.violations.iter().cloned());
    if let Some(e) = &expect {
        row.notes.extend(e.check(doc));
    }
    row.status = if row.notes.is_empty() { RowStatus::Ok } else { RowStatus::Mismatch };
    row
}

/// Runs every `.poly` file of `dir` (sorted by name) on `jobs` threads.
pub fn run_corpus(dir: &Path, opts: &RunOptions, jobs: usize) -> std::io::Result<Vec<Row>> {
    let files = poly_files(dir)?;
    // keep the default panic message out of the table output
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let rows = map_files(&files, opts, jobs);
    panic::set_hook(hook);
    Ok(rows)
}

#[cfg(feature = "parallel")]
fn map_files(files: &[PathBuf], opts: &RunOptions, jobs: usize) -> Vec<Row> {
    use rayon::prelude::*;
    if jobs <= 1 {
        return files.iter().map(|f| run_file(f, opts)).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| files.par_iter().map(|f| run_file(f, opts)).collect()),
        Err(_) => files.iter().map(|f| run_file(f, opts)).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn map_files(files: &[PathBuf], opts: &RunOptions, _jobs: usize) -> Vec<Row> {
    files.iter().map(|f| run_file(f, opts)).collect()
}

/// 0 if every row is ok, 1 if any row mismatches, otherwise 2.
pub fn exit_code(rows: &[Row]) -> u8 {
    if rows.iter().any(|r| r.status == RowStatus::Mismatch) {
        1
    } else if rows.iter().any(|r| r.status == RowStatus::Failed) {
        2
    } else {
        0
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

pub fn table(rows: &[Row], timing: bool) -> String {
    let mut header = vec!["name", "d", "m", "exponents", "tau", "mu", "#QH", "#nonQH"];
    if timing {
        header.push("ms");
    }
    header.push("status");
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let exps = if r.exponents.is_empty() && r.m.is_none() {
            "-".to_string()
        } else {
            r.exponents.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
        };
        let mut line = vec![r.name.clone(), opt(r.d), opt(r.m), exps, opt(r.tau), opt(r.mu), opt(r.qh), opt(r.non_qh)];
        if timing {
            line.push(r.millis.to_string());
        }
        line.push(
            match r.status {
                RowStatus::Ok => "ok",
                RowStatus::Mismatch => "MISMATCH",
                RowStatus::Failed => "FAILED",
            }
            .into(),
        );
        cells.push(line);
    }
    let widths: Vec<usize> =
        (0..cells[0].len()).map(|j| cells.iter().map(|c| c[j].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for c in &cells {
        let parts: Vec<String> = c.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    }
    for r in rows.iter().filter(|r| !r.notes.is_empty()) {
        for n in &r.notes {
            out.push_str(&format!("{}: {n}\n", r.name));
        }
    }
    out
}
