//! Flat key = value run configuration with `[section]` headers.
//!
//! The format is deliberately plain text so runs diff cleanly:
//!
//! ```text
//! [problem]
//! n = 1
//! p = 2.0
//! mu1 = 1.0
//! mu2 = 1.0
//! alpha = 2.0
//! beta = 2.0
//! r = 1.0
//! eps = 0.5
//!
//! [data]
//! f = zero            # zero | bump
//! g = bump
//! g_amplitude = 1.0   # bump height; radius defaults to r
//!
//! [grid]
//! r_max = 14.0
//! nr = 2800
//! cfl = 0.5
//!
//! [run]
//! horizon = 12.0
//! mode = full         # full | linear | free
//! threshold = 1e6
//! sample_interval = 0.05
//!
//! [sweep]             # optional; either an explicit list ...
//! eps_values = 0.4, 0.2, 0.1
//! # ... or a geometric range
//! eps_start = 0.4
//! eps_end = 0.01
//! eps_count = 8
//! parallel = false
//! ```
//!
//! Unknown sections or keys are rejected with their line number.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::params::ProblemParams;
use crate::solver::{InitialData, RadialGrid, RadialProfile, SolveMode};

/// ε values to sweep over, plus the dispatch policy.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Sorted descending before running.
    pub eps_values: Vec<f64>,
    pub parallel: bool,
}

/// Everything one run (or one sweep) needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ProblemParams,
    pub data: InitialData,
    pub grid: RadialGrid,
    pub horizon: f64,
    pub mode: SolveMode,
    pub threshold: f64,
    pub sample_interval: Option<f64>,
    pub sweep: Option<SweepSpec>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut table: HashMap<(String, String), (String, usize)> = HashMap::new();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or(Error::Config {
                    line: line_no,
                    msg: format!("malformed section header {line:?}"),
                })?;
                section = name.trim().to_string();
                if !["problem", "data", "grid", "run", "sweep"].contains(&section.as_str()) {
                    return Err(Error::Config {
                        line: line_no,
                        msg: format!("unknown section [{section}]"),
                    });
                }
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Config {
                line: line_no,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            if section.is_empty() {
                return Err(Error::Config {
                    line: line_no,
                    msg: "key before any [section]".into(),
                });
            }
            let key = key.trim().to_string();
            let prev = table.insert(
                (section.clone(), key.clone()),
                (value.trim().to_string(), line_no),
            );
            if prev.is_some() {
                return Err(Error::Config {
                    line: line_no,
                    msg: format!("duplicate key {key} in [{section}]"),
                });
            }
        }
        Self::assemble(table)
    }

    fn assemble(mut table: HashMap<(String, String), (String, usize)>) -> Result<Self> {
        let mut take = |section: &str, key: &str| -> Option<(String, usize)> {
            table.remove(&(section.to_string(), key.to_string()))
        };
        fn required<T: std::str::FromStr>(
            item: Option<(String, usize)>,
            section: &str,
            key: &str,
        ) -> Result<T> {
            let (v, line) = item.ok_or(Error::Config {
                line: 0,
                msg: format!("missing required key {key} in [{section}]"),
            })?;
            v.parse().map_err(|_| Error::Config {
                line,
                msg: format!("cannot parse {key} = {v:?}"),
            })
        }
        fn optional<T: std::str::FromStr>(
            item: Option<(String, usize)>,
            key: &str,
        ) -> Result<Option<T>> {
            match item {
                None => Ok(None),
                Some((v, line)) => v.parse().map(Some).map_err(|_| Error::Config {
                    line,
                    msg: format!("cannot parse {key} = {v:?}"),
                }),
            }
        }

        let params = ProblemParams {
            n: required(take("problem", "n"), "problem", "n")?,
            p: required(take("problem", "p"), "problem", "p")?,
            mu1: required(take("problem", "mu1"), "problem", "mu1")?,
            mu2: required(take("problem", "mu2"), "problem", "mu2")?,
            alpha: required(take("problem", "alpha"), "problem", "alpha")?,
            beta: required(take("problem", "beta"), "problem", "beta")?,
            support_radius: required(take("problem", "r"), "problem", "r")?,
            eps: required(take("problem", "eps"), "problem", "eps")?,
        };

        let profile = |item: Option<(String, usize)>,
                       amplitude: Option<f64>,
                       radius: Option<f64>|
         -> Result<RadialProfile> {
            let kind = item.map(|(v, _)| v).unwrap_or_else(|| "zero".into());
            match kind.as_str() {
                "zero" => Ok(RadialProfile::Zero),
                "bump" => Ok(RadialProfile::SmoothBump {
                    amplitude: amplitude.unwrap_or(1.0),
                    radius: radius.unwrap_or(params.support_radius),
                }),
                other => Err(Error::Config {
                    line: 0,
                    msg: format!("unknown profile {other:?} (zero | bump)"),
                }),
            }
        };
        let f_amp = optional(take("data", "f_amplitude"), "f_amplitude")?;
        let f_rad = optional(take("data", "f_radius"), "f_radius")?;
        let g_amp = optional(take("data", "g_amplitude"), "g_amplitude")?;
        let g_rad = optional(take("data", "g_radius"), "g_radius")?;
        let data = InitialData {
            f: profile(take("data", "f"), f_amp, f_rad)?,
            g: profile(take("data", "g"), g_amp, g_rad)?,
        };

        let grid = RadialGrid {
            r_max: required(take("grid", "r_max"), "grid", "r_max")?,
            nr: required(take("grid", "nr"), "grid", "nr")?,
            cfl: optional(take("grid", "cfl"), "cfl")?.unwrap_or(0.5),
        };

        let horizon = required(take("run", "horizon"), "run", "horizon")?;
        let mode = match take("run", "mode") {
            None => SolveMode::Full,
            Some((v, line)) => match v.as_str() {
                "full" => SolveMode::Full,
                "linear" => SolveMode::Linear,
                "free" => SolveMode::Free,
                other => {
                    return Err(Error::Config {
                        line,
                        msg: format!("unknown mode {other:?} (full | linear | free)"),
                    })
                }
            },
        };
        let threshold = optional(take("run", "threshold"), "threshold")?.unwrap_or(1e6);
        let sample_interval = optional(take("run", "sample_interval"), "sample_interval")?;

        let sweep = {
            let values: Option<(String, usize)> = take("sweep", "eps_values");
            let start: Option<f64> = optional(take("sweep", "eps_start"), "eps_start")?;
            let end: Option<f64> = optional(take("sweep", "eps_end"), "eps_end")?;
            let count: Option<usize> = optional(take("sweep", "eps_count"), "eps_count")?;
            let parallel: Option<bool> = optional(take("sweep", "parallel"), "parallel")?;
            match (values, start, end, count) {
                (None, None, None, None) => {
                    if parallel.is_some() {
                        return Err(Error::Config {
                            line: 0,
                            msg: "sweep.parallel given without eps values".into(),
                        });
                    }
                    None
                }
                (Some((list, line)), None, None, None) => {
                    let mut eps_values = Vec::new();
                    for tok in list.split(',') {
                        let v: f64 = tok.trim().parse().map_err(|_| Error::Config {
                            line,
                            msg: format!("cannot parse eps value {tok:?}"),
                        })?;
                        eps_values.push(v);
                    }
                    Some(SweepSpec {
                        eps_values,
                        parallel: parallel.unwrap_or(false),
                    })
                }
                (None, Some(s), Some(e), Some(c)) => {
                    if c < 3 {
                        return Err(Error::Config {
                            line: 0,
                            msg: format!("geometric sweep needs >= 3 points, got {c}"),
                        });
                    }
                    if s <= 0.0 || e <= 0.0 || s == e {
                        return Err(Error::Config {
                            line: 0,
                            msg: "geometric sweep needs positive eps_start != eps_end".into(),
                        });
                    }
                    let ratio = (e / s).powf(1.0 / (c as f64 - 1.0));
                    let eps_values = (0..c).map(|k| s * ratio.powi(k as i32)).collect();
                    Some(SweepSpec {
                        eps_values,
                        parallel: parallel.unwrap_or(false),
                    })
                }
                _ => {
                    return Err(Error::Config {
                        line: 0,
                        msg: "sweep needs either eps_values or eps_start/eps_end/eps_count"
                            .into(),
                    })
                }
            }
        };

        if let Some(((section, key), (_, line))) = table.into_iter().next() {
            return Err(Error::Config {
                line,
                msg: format!("unknown key {key} in [{section}]"),
            });
        }

        let config = RunConfig {
            params,
            data,
            grid,
            horizon,
            mode,
            threshold,
            sample_interval,
            sweep,
        };
        config.params.validate()?;
        config.data.validate(config.params.support_radius)?;
        Ok(config)
    }
}
