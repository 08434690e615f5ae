//! CSV readers and writers.
//!
//! Every file may start with `# key=value` comment lines. Writers take the
//! lines to emit; readers return the ones they find. Floats are written with
//! the shortest representation that parses back to the same value.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::bv::{BoundedVariation, Jump, PiecewiseLinearFn, StepFn};
use crate::error::{Error, Result};
use crate::experiments::ExperimentReport;
use crate::fraccalc::{BesovReport, GridFn};
use crate::SampledPath;

/// Ordered `key=value` metadata written as `#` comment lines.
pub type Metadata = Vec<(String, String)>;

fn write_comments<W: Write>(w: &mut W, meta: &[(String, String)]) -> Result<()> {
    for (k, v) in meta {
        writeln!(w, "# {k}={v}")?;
    }
    Ok(())
}

fn write_pairs<W: Write>(
    w: &mut W,
    meta: &[(String, String)],
    header: [&str; 2],
    rows: impl Iterator<Item = (f64, f64)>,
) -> Result<()> {
    write_comments(w, meta)?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for (a, b) in rows {
        out.write_record([a.to_string(), b.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// Parsed file: `#` metadata and the rows of a two-column table.
struct Table {
    meta: BTreeMap<String, String>,
    rows: Vec<(f64, f64)>,
}

fn read_pairs<R: Read>(mut r: R, header: [&str; 2]) -> Result<Table> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut meta = BTreeMap::new();
    for line in text.lines() {
        if let Some(c) = line.trim_start().strip_prefix('#') {
            if let Some((k, v)) = c.split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let found: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `{}`, found `{}`",
                header.join(","),
                found.join(",")
            ),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize| -> Result<f64> {
            let s = record.get(i).ok_or_else(|| Error::Parse {
                line,
                message: "missing field".into(),
            })?;
            s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{s}` is not a number"),
            })
        };
        rows.push((field(0)?, field(1)?));
    }
    Ok(Table { meta, rows })
}

fn meta_value(table: &Table, key: &str) -> Result<Option<f64>> {
    table
        .meta
        .get(key)
        .map(|v| {
            v.parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("`# {key}={v}` is not a number"),
            })
        })
        .transpose()
}

/// Path CSV with header `t,value`.
pub fn write_path_csv<W: Write>(
    mut w: W,
    path: &SampledPath,
    meta: &[(String, String)],
) -> Result<()> {
    let rows = path
        .times()
        .iter()
        .copied()
        .zip(path.values().iter().copied());
    write_pairs(&mut w, meta, ["t", "value"], rows)
}

pub fn read_path_csv<R: Read>(r: R) -> Result<SampledPath> {
    let table = read_pairs(r, ["t", "value"])?;
    let (t, v) = table.rows.into_iter().unzip();
    SampledPath::new(t, v)
}

/// Grid function CSV, same layout as a path.
pub fn write_grid_fn_csv<W: Write>(mut w: W, f: &GridFn, meta: &[(String, String)]) -> Result<()> {
    let rows = f.times().into_iter().zip(f.values().iter().copied());
    write_pairs(&mut w, meta, ["t", "value"], rows)
}

pub fn read_grid_fn_csv<R: Read>(r: R) -> Result<GridFn> {
    GridFn::from_path(&read_path_csv(r)?)
}

/// Piecewise linear function CSV: knots under header `t,value`.
pub fn write_pl_csv<W: Write>(
    mut w: W,
    f: &PiecewiseLinearFn,
    meta: &[(String, String)],
) -> Result<()> {
    let rows = f.knots().iter().copied().zip(f.values().iter().copied());
    write_pairs(&mut w, meta, ["t", "value"], rows)
}

pub fn read_pl_csv<R: Read>(r: R) -> Result<PiecewiseLinearFn> {
    let table = read_pairs(r, ["t", "value"])?;
    let (t, v) = table.rows.into_iter().unzip();
    PiecewiseLinearFn::new(t, v)
}

/// Step function CSV: header `t,jump` with `# initial=` and `# horizon=` lines.
pub fn write_step_csv<W: Write>(mut w: W, f: &StepFn, meta: &[(String, String)]) -> Result<()> {
    let mut all = meta.to_vec();
    all.push(("initial".into(), f.initial_value().to_string()));
    all.push(("horizon".into(), f.horizon().to_string()));
    let rows = f.jumps().iter().map(|j| (j.time, j.size));
    write_pairs(&mut w, &all, ["t", "jump"], rows)
}

/// Reads a step function. Without `# horizon=` the last jump time is used.
pub fn read_step_csv<R: Read>(r: R) -> Result<StepFn> {
    let table = read_pairs(r, ["t", "jump"])?;
    let initial = meta_value(&table, "initial")?.unwrap_or(0.0);
    let last = table.rows.last().map(|j| j.0);
    let horizon = match (meta_value(&table, "horizon")?, last) {
        (Some(h), _) => h,
        (None, Some(t)) => t,
        (None, None) => {
            return Err(Error::Parse {
                line: 0,
                message: "no jumps and no `# horizon=` line".into(),
            })
        }
    };
    let jumps = table
        .rows
        .into_iter()
        .map(|(time, size)| Jump { time, size })
        .collect();
    StepFn::new(initial, jumps, horizon)
}

/// Norm report CSV `beta,norm_w1,norm_w2,grid_points`.
pub fn write_norm_csv<W: Write>(
    mut w: W,
    reports: &[BesovReport],
    meta: &[(String, String)],
) -> Result<()> {
    write_comments(&mut w, meta)?;
    let mut out = csv::Writer::from_writer(&mut w);
    out.write_record(["beta", "norm_w1", "norm_w2", "grid_points"])?;
    for r in reports {
        out.write_record([
            r.beta.to_string(),
            r.norm_w1.to_string(),
            r.norm_w2.to_string(),
            r.grid_points.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Experiment report CSV preceded by the metadata lines.
pub fn write_report_csv<W: Write>(
    mut w: W,
    report: &ExperimentReport,
    meta: &[(String, String)],
) -> Result<()> {
    write_comments(&mut w, meta)?;
    report.write_csv(w)
}
