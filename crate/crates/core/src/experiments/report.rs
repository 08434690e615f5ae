use std::fmt::Write as _;
use std::io::Write;

use crate::error::Result;

/// One CSV row `experiment,grid,eps,estimate,std_err,slope,slope_err`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub experiment: String,
    pub grid: Option<usize>,
    pub eps: Option<f64>,
    pub estimate: f64,
    pub std_err: Option<f64>,
    pub slope: Option<f64>,
    pub slope_err: Option<f64>,
}

impl ReportRow {
    pub fn estimate(
        experiment: &str,
        grid: Option<usize>,
        eps: Option<f64>,
        estimate: f64,
        std_err: Option<f64>,
    ) -> Self {
        Self {
            experiment: experiment.to_string(),
            grid,
            eps,
            estimate,
            std_err,
            slope: None,
            slope_err: None,
        }
    }
}

/// Rows of one or more experiments, in the order they were produced.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
}

pub const REPORT_HEADER: &str = "experiment,grid,eps,estimate,std_err,slope,slope_err";

impl ExperimentReport {
    pub fn push(&mut self, row: ReportRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: ExperimentReport) {
        self.rows.extend(other.rows);
    }

    pub fn rows_for<'a>(&'a self, experiment: &'a str) -> impl Iterator<Item = &'a ReportRow> + 'a {
        self.rows.iter().filter(move |r| r.experiment == experiment)
    }

    /// Estimates of `experiment` in row order.
    pub fn estimates(&self, experiment: &str) -> Vec<f64> {
        self.rows_for(experiment).map(|r| r.estimate).collect()
    }

    pub fn find(
        &self,
        experiment: &str,
        grid: Option<usize>,
        eps: Option<f64>,
    ) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.experiment == experiment && r.grid == grid && r.eps == eps)
    }

    /// CSV body with header; floats use shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(REPORT_HEADER);
        out.push('\n');
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.experiment,
                r.grid.map(|g| g.to_string()).unwrap_or_default(),
                opt(r.eps),
                r.estimate,
                opt(r.std_err),
                opt(r.slope),
                opt(r.slope_err),
            );
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}
