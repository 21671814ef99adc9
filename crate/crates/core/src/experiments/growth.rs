//! Experiments on the growth process at large fixed times: the normalized
//! row-growth frequencies over a window, and the Poisson laws of the special
//! box coordinates at a deterministic time.

use super::config::ExperimentConfig;
use super::report::{Check, ExperimentReport, Value};
use crate::bumping::StopCondition;
use crate::parallel::run_trials;
use crate::plancherel::{augmented_growth, plancherel_growth, SeededStream};
use crate::stats::{poisson, tv_distance, DiscreteMeasure};

/// Row-growth frequencies over the window `(n, ceil(window * n)]`, weighted
/// by `sqrt(t)`: for every fixed row the weighted mean tends to 1.
pub fn run_okounkov_row(cfg: &ExperimentConfig) -> ExperimentReport {
    let n = cfg.m;
    let end = ((cfg.window * n as f64).ceil() as u64).max(n + 1);
    let cutoff = cfg.x_max;
    let window_len = (end - n) as f64;
    let per_trial = run_trials(cfg.trials, |trial| {
        let mut stream = SeededStream::new(cfg.master_seed, trial);
        let (_, trace) = plancherel_growth(end, &mut stream, Some((cutoff, (n, end))));
        let trace = trace.expect("trace requested");
        let mut counts = vec![0u64; cutoff + 2];
        let mut weighted = vec![0.0f64; cutoff + 1];
        for (i, row) in trace.rows.iter().enumerate() {
            let t = n + 1 + i as u64;
            match row {
                Some(r) => {
                    counts[*r] += 1;
                    weighted[*r] += (t as f64).sqrt();
                }
                None => counts[cutoff + 1] += 1,
            }
        }
        (counts, weighted)
    });
    let mut report = ExperimentReport::new(cfg, vec!["trial", "r", "count", "weighted"]);
    for (trial, (counts, weighted)) in per_trial.iter().enumerate() {
        for r in 0..=cutoff {
            report.push_row(vec![
                Value::U(trial as u64),
                Value::U(r as u64),
                Value::U(counts[r]),
                Value::F(weighted[r]),
            ]);
        }
        // growth above the cutoff, lumped together
        report.push_row(vec![
            Value::U(trial as u64),
            Value::Null,
            Value::U(counts[cutoff + 1]),
            Value::Null,
        ]);
    }
    report.add_summary("window_start", Value::U(n));
    report.add_summary("window_end", Value::U(end));
    let denominator = cfg.trials as f64 * window_len;
    for r in 0..=cutoff {
        let total_weight: f64 = per_trial.iter().map(|(_, w)| w[r]).sum();
        let total_count: u64 = per_trial.iter().map(|(c, _)| c[r]).sum();
        let weighted_mean = total_weight / denominator;
        report.add_summary(format!("weighted_mean_r={r}"), Value::F(weighted_mean));
        report.add_summary(
            format!("freq_r={r}"),
            Value::F(total_count as f64 / denominator),
        );
        if r == 0 {
            report
                .checks
                .push(Check::within("weighted_mean_r=0", weighted_mean, 0.85, 1.15));
        }
    }
    report
}

fn tv_against_poisson(samples: &[u64], z: f64) -> f64 {
    let empirical = DiscreteMeasure::empirical(samples).expect("non-empty");
    tv_distance(&empirical, &poisson(z).expect("valid rate"))
}

/// Coordinates of the special box at a fixed time, in both scaling regimes:
/// the row at `t` with `(t - m) / sqrt(t) = z` and the column at `t` with
/// `m / sqrt(t) = z`, each against `Pois(z)`.
pub fn run_fixed_time(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut report = ExperimentReport::new(cfg, vec!["trial", "regime", "z", "t", "value"]);
    for (zi, &z) in cfg.grid.iter().enumerate() {
        // row regime: solve (t - m) / sqrt(t) = z for t >= m
        let m = cfg.m;
        let sqrt_t = (z + (z * z + 4.0 * m as f64).sqrt()) / 2.0;
        let t_row = ((sqrt_t * sqrt_t).round() as u64).max(m);
        let offset_row = (2 * zi as u64) * cfg.trials;
        let rows_at_t = run_trials(cfg.trials, |trial| {
            let mut stream = SeededStream::new(cfg.master_seed, offset_row + trial);
            let (trace, _) =
                augmented_growth(m, &mut stream, &StopCondition::until(t_row), &[]);
            trace.final_box().1 as u64
        });
        // column regime at a smaller level, so t stays affordable
        let m_col = ((m as f64).sqrt().round() as u64).max(1);
        let t_col = (((m_col as f64 / z).powi(2)).round() as u64).max(m_col);
        let offset_col = (2 * zi as u64 + 1) * cfg.trials;
        let cols_at_t = run_trials(cfg.trials, |trial| {
            let mut stream = SeededStream::new(cfg.master_seed, offset_col + trial);
            let (trace, _) =
                augmented_growth(m_col, &mut stream, &StopCondition::until(t_col), &[]);
            trace.final_box().0 as u64
        });
        for (trial, &value) in rows_at_t.iter().enumerate() {
            report.push_row(vec![
                Value::U(trial as u64),
                Value::S("row".into()),
                Value::F(z),
                Value::U(t_row),
                Value::U(value),
            ]);
        }
        for (trial, &value) in cols_at_t.iter().enumerate() {
            report.push_row(vec![
                Value::U(trial as u64),
                Value::S("column".into()),
                Value::F(z),
                Value::U(t_col),
                Value::U(value),
            ]);
        }
        let tv_row = tv_against_poisson(&rows_at_t, z);
        let tv_col = tv_against_poisson(&cols_at_t, z);
        report.add_summary(format!("t_row_z={z}"), Value::U(t_row));
        report.add_summary(format!("tv_row_z={z}"), Value::F(tv_row));
        report.add_summary(format!("m_column_z={z}"), Value::U(m_col));
        report.add_summary(format!("t_column_z={z}"), Value::U(t_col));
        report.add_summary(format!("tv_column_z={z}"), Value::F(tv_col));
        report
            .checks
            .push(Check::le(format!("tv_row_z={z}"), tv_row, 0.05));
    }
    report
}
