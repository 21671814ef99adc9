//! Experiment identifiers, configuration surface and validation.

use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Frechet,
    PoissonPoints,
    PowerlawRatios,
    TailY0,
    TailT0,
    OkounkovRow,
    FixedTime,
    LazyPoisson,
    TransitionConjecture,
    Surface2d,
    BumpingTree,
    Projective,
}

impl Experiment {
    pub const ALL: [Experiment; 12] = [
        Experiment::Frechet,
        Experiment::PoissonPoints,
        Experiment::PowerlawRatios,
        Experiment::TailY0,
        Experiment::TailT0,
        Experiment::OkounkovRow,
        Experiment::FixedTime,
        Experiment::LazyPoisson,
        Experiment::TransitionConjecture,
        Experiment::Surface2d,
        Experiment::BumpingTree,
        Experiment::Projective,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Experiment::Frechet => "frechet",
            Experiment::PoissonPoints => "poisson-points",
            Experiment::PowerlawRatios => "powerlaw-ratios",
            Experiment::TailY0 => "tail-y0",
            Experiment::TailT0 => "tail-t0",
            Experiment::OkounkovRow => "okounkov-row",
            Experiment::FixedTime => "fixed-time",
            Experiment::LazyPoisson => "lazy-poisson",
            Experiment::TransitionConjecture => "transition-conjecture",
            Experiment::Surface2d => "surface-2d",
            Experiment::BumpingTree => "bumping-tree",
            Experiment::Projective => "projective",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown experiment '{s}'; known: {}",
                    Experiment::ALL.map(|e| e.id()).join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }
}

/// Full configuration of one experiment run. The meaning of `m`, `x_max` and
/// `grid` is per experiment: `m` is the probe level or, for growth-window
/// experiments, the window start `n`; `x_max` is the number of tracked
/// columns or the row cutoff; `grid` holds the u/z thresholds, or the row
/// grid for the transition experiment, or the (s, t) axis for the surface.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub m: u64,
    pub trials: u64,
    pub master_seed: u64,
    pub t_max: u64,
    pub x_max: usize,
    pub grid: Vec<f64>,
    pub window: f64,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn default_for(experiment: Experiment) -> Self {
        let mut cfg = ExperimentConfig {
            experiment,
            m: 150,
            trials: 1000,
            master_seed: 20_260_823,
            t_max: 0,
            x_max: 2,
            grid: Vec::new(),
            window: 1.05,
            format: OutputFormat::Csv,
        };
        match experiment {
            Experiment::Frechet => {
                cfg.trials = 4000;
                cfg.x_max = 0;
                cfg.t_max = 64 * cfg.m * cfg.m;
                cfg.grid = vec![0.5, 1.0, 2.0, 4.0];
            }
            Experiment::PoissonPoints => {
                cfg.trials = 4000;
                cfg.grid = vec![0.5, 1.0, 2.0];
            }
            Experiment::PowerlawRatios => {
                cfg.trials = 4000;
                cfg.grid = vec![1.5, 2.0, 3.0];
            }
            Experiment::TailY0 => {
                cfg.m = 1;
                cfg.trials = 200_000;
                cfg.t_max = 1_000_000;
                cfg.x_max = 0;
                cfg.grid = vec![100.0];
            }
            Experiment::TailT0 => {
                cfg.m = 1;
                cfg.trials = 200_000;
                cfg.t_max = 1_000_000;
                cfg.x_max = 0;
                cfg.grid = vec![10_000.0];
            }
            Experiment::OkounkovRow => {
                cfg.m = 40_000;
                cfg.trials = 200;
            }
            Experiment::FixedTime => {
                cfg.m = 10_000;
                cfg.trials = 5000;
                cfg.grid = vec![1.0];
            }
            Experiment::LazyPoisson => {
                cfg.trials = 4000;
                cfg.grid = vec![0.25];
            }
            Experiment::TransitionConjecture => {
                cfg.trials = 1000;
                cfg.x_max = 1;
                cfg.t_max = 40_000;
                cfg.grid = vec![25.0, 50.0, 100.0, 200.0];
            }
            Experiment::Surface2d => {
                cfg.m = 50;
                cfg.trials = 1;
                cfg.grid = vec![0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
            }
            Experiment::BumpingTree => {
                cfg.m = 20;
                cfg.trials = 1;
                cfg.t_max = 2000;
            }
            Experiment::Projective => {
                cfg.trials = 500;
                cfg.grid = vec![0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
            }
        }
        if cfg.t_max == 0 {
            cfg.t_max = default_t_max(cfg.m);
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        if self.t_max < self.m {
            return Err(Error::InvalidArgument(format!(
                "t_max ({}) must be >= m ({})",
                self.t_max, self.m
            )));
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "grid must be strictly increasing".into(),
            ));
        }
        if self.grid.iter().any(|&g| !(g > 0.0) || !g.is_finite()) {
            return Err(Error::InvalidArgument(
                "grid values must be positive and finite".into(),
            ));
        }
        if !(self.window > 1.0) || !self.window.is_finite() {
            return Err(Error::InvalidArgument("window must exceed 1".into()));
        }
        let needs_grid = !matches!(
            self.experiment,
            Experiment::OkounkovRow | Experiment::BumpingTree
        );
        if needs_grid && self.grid.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "experiment {} needs a non-empty grid",
                self.experiment
            )));
        }
        match self.experiment {
            Experiment::OkounkovRow | Experiment::FixedTime => {
                if self.m == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "experiment {} needs m >= 1",
                        self.experiment
                    )));
                }
            }
            Experiment::TransitionConjecture => {
                if self.x_max == 0 {
                    return Err(Error::InvalidArgument(
                        "the transition experiment tracks a column x >= 1 (x_max)".into(),
                    ));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Default simulation horizon: generous enough that the hitting events the
/// built-in grids look at are almost never censored, small enough for desk
/// runtimes.
pub fn default_t_max(m: u64) -> u64 {
    64 * m * m + 1_000_000
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.id().parse::<Experiment>().unwrap(), e);
        }
        assert!("nope".parse::<Experiment>().is_err());
    }

    #[test]
    fn defaults_validate() {
        for e in Experiment::ALL {
            ExperimentConfig::default_for(e).validate().unwrap();
        }
    }

    #[test]
    fn bad_configs_rejected() {
        let mut cfg = ExperimentConfig::default_for(Experiment::Frechet);
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::default_for(Experiment::Frechet);
        cfg.t_max = 10;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::default_for(Experiment::Frechet);
        cfg.grid = vec![2.0, 1.0];
        assert!(cfg.validate().is_err());
    }
}
