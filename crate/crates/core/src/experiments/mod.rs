//! The experiment harness: named Monte Carlo experiments over the augmented
//! growth process, each producing a tabular report with summary statistics
//! and built-in pass/fail checks.

pub mod config;
pub mod explore;
pub mod growth;
pub mod hitting;
pub mod report;

pub use config::{Experiment, ExperimentConfig, OutputFormat};
pub use report::{Check, ExperimentReport, Value};

/// Validate the configuration and run the experiment it names.
pub fn run(cfg: &ExperimentConfig) -> crate::Result<ExperimentReport> {
    cfg.validate()?;
    Ok(match cfg.experiment {
        Experiment::Frechet => hitting::run_frechet(cfg),
        Experiment::PoissonPoints => hitting::run_poisson_points(cfg),
        Experiment::PowerlawRatios => hitting::run_powerlaw_ratios(cfg),
        Experiment::TailY0 => hitting::run_tail_y0(cfg),
        Experiment::TailT0 => hitting::run_tail_t0(cfg),
        Experiment::OkounkovRow => growth::run_okounkov_row(cfg),
        Experiment::FixedTime => growth::run_fixed_time(cfg),
        Experiment::LazyPoisson => hitting::run_lazy_poisson(cfg),
        Experiment::TransitionConjecture => explore::run_transition_conjecture(cfg),
        Experiment::Surface2d => explore::run_surface_2d(cfg),
        Experiment::BumpingTree => explore::run_bumping_tree(cfg),
        Experiment::Projective => hitting::run_projective(cfg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every experiment runs end to end on a miniature configuration and
    /// serializes in both formats.
    #[test]
    fn all_experiments_smoke() {
        for experiment in Experiment::ALL {
            let mut cfg = ExperimentConfig::default_for(experiment);
            cfg.m = cfg.m.min(10);
            cfg.trials = cfg.trials.min(8);
            cfg.t_max = cfg.t_max.min(2000).max(cfg.m);
            if experiment == Experiment::TransitionConjecture {
                cfg.grid = vec![3.0, 6.0];
                cfg.t_max = 2000;
            }
            let report = run(&cfg).unwrap_or_else(|e| panic!("{experiment}: {e}"));
            assert!(!report.columns.is_empty(), "{experiment}");
            assert!(!report.rows.is_empty(), "{experiment}");
            let mut csv = Vec::new();
            report.write_csv(&mut csv).unwrap();
            assert!(csv.starts_with(report.columns.join(",").as_bytes()));
            let mut json = Vec::new();
            report.write_json(&mut json).unwrap();
            let text = String::from_utf8(json).unwrap();
            assert!(text.contains(&format!("\"experiment\": \"{experiment}\"")));
        }
    }

    #[test]
    fn run_rejects_invalid_configs() {
        let mut cfg = ExperimentConfig::default_for(Experiment::Frechet);
        cfg.grid.clear();
        assert!(run(&cfg).is_err());
    }

    /// Identical configurations give byte-identical reports.
    #[test]
    fn reports_are_deterministic() {
        let mut cfg = ExperimentConfig::default_for(Experiment::PoissonPoints);
        cfg.m = 12;
        cfg.trials = 20;
        cfg.t_max = 20_000;
        let serialize = |cfg: &ExperimentConfig| {
            let mut buf = Vec::new();
            run(cfg).unwrap().write_json(&mut buf).unwrap();
            buf
        };
        assert_eq!(serialize(&cfg), serialize(&cfg));
        cfg.master_seed += 1;
        let other = serialize(&cfg);
        cfg.master_seed -= 1;
        assert_ne!(serialize(&cfg), other);
    }
}
