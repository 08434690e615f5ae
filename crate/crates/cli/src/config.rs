//! `key=value` config files and flag/file/default resolution.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Numeric(fracpath::Error),
    #[error("{0}")]
    Check(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

impl From<fracpath::Error> for CliError {
    fn from(e: fracpath::Error) -> Self {
        match e {
            fracpath::Error::InvalidParameter { .. } => CliError::Config(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Comma-separated list, as accepted by `--grids` and `--eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<T>()
                    .map_err(|_| format!("`{}` is not a valid list entry", x.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(List)
    }
}

impl<T: fmt::Display> fmt::Display for List<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Parsed config file: normalized key to (line, raw value).
#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, (usize, String)>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "line {}: expected key=value, found `{line}`",
                    i + 1
                ))
            })?;
            let key = normalize(k);
            if entries
                .insert(key.clone(), (i + 1, v.trim().to_string()))
                .is_some()
            {
                return Err(CliError::Config(format!(
                    "line {}: key `{key}` given twice",
                    i + 1
                )));
            }
        }
        Ok(Self { entries })
    }
}

/// Resolves each parameter from its flag, then the file, then the default,
/// and records the result for the CSV header.
pub struct Resolver {
    file: ConfigFile,
    resolved: Vec<(String, String)>,
}

impl Resolver {
    pub fn new(command: &str, file: Option<&Path>) -> CliResult<Self> {
        let file = match file {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        Ok(Self {
            file,
            resolved: vec![("command".into(), command.into())],
        })
    }

    fn take_from_file<T: FromStr>(&mut self, key: &str) -> CliResult<Option<T>> {
        match self.file.entries.remove(key) {
            None => Ok(None),
            Some((line, raw)) => raw.parse().map(Some).map_err(|_| {
                CliError::Config(format!(
                    "line {line}: `{raw}` is not a valid value for `{key}`"
                ))
            }),
        }
    }

    pub fn get<T: FromStr + fmt::Display>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> CliResult<T> {
        let v = self.optional(key, flag)?.unwrap_or(default);
        self.record(key, &v);
        Ok(v)
    }

    /// Value from the flag or file, without a default and without recording it.
    pub fn optional<T: FromStr>(&mut self, key: &str, flag: Option<T>) -> CliResult<Option<T>> {
        let file = self.take_from_file(key)?;
        Ok(flag.or(file))
    }

    pub fn record(&mut self, key: &str, value: &dyn fmt::Display) {
        self.resolved.push((key.into(), value.to_string()));
    }

    /// Fails on file keys no parameter consumed; returns the header lines.
    pub fn finish(self) -> CliResult<Vec<(String, String)>> {
        if let Some((key, (line, _))) = self.file.entries.into_iter().next() {
            return Err(CliError::Config(format!(
                "line {line}: unknown key `{key}` for `{}`",
                self.resolved[0].1
            )));
        }
        Ok(self.resolved)
    }
}

fn out_of_range(key: &str, value: impl fmt::Display, range: &str) -> CliError {
    CliError::Config(format!("{key} = {value} is out of range; expected {range}"))
}

pub fn open_interval(key: &str, v: f64, lo: f64, hi: f64) -> CliResult<f64> {
    if v > lo && v < hi {
        Ok(v)
    } else {
        Err(out_of_range(key, v, &format!("a value in ({lo}, {hi})")))
    }
}

pub fn positive(key: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(out_of_range(key, v, "a finite value > 0"))
    }
}

pub fn at_least(key: &str, v: usize, min: usize) -> CliResult<usize> {
    if v >= min {
        Ok(v)
    } else {
        Err(out_of_range(key, v, &format!("an integer >= {min}")))
    }
}

pub fn dyadic_grids(key: &str, grids: &List<usize>) -> CliResult<Vec<usize>> {
    let g = &grids.0;
    let ok =
        !g.is_empty() && g.iter().all(|x| x.is_power_of_two()) && g.windows(2).all(|w| w[1] > w[0]);
    if ok {
        Ok(g.clone())
    } else {
        Err(out_of_range(
            key,
            grids,
            "strictly increasing powers of two",
        ))
    }
}
