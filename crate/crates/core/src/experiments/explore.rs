//! Exploratory experiments: the column-transition ordering conjecture, the
//! two-parameter surface of route positions, and whole bumping trees.

use super::config::ExperimentConfig;
use super::report::{Check, ExperimentReport, Value};
use crate::bumping::{bumping_tree, StopCondition};
use crate::parallel::run_trials;
use crate::plancherel::{augmented_growth_over, column_fill_times, SeededStream};
use crate::tableau::Entry;

/// Order of first fills: how often box `(x, y)` is created before its
/// upper-left neighbour `(x-1, y+1)` — rare, since left columns run longer —
/// with `y * frequency` expected to settle near `x`, and the point set
/// `log(y / c)` over the hit rows, conjectured Poisson with intensity `x`.
pub fn run_transition_conjecture(cfg: &ExperimentConfig) -> ExperimentReport {
    let x = cfg.x_max;
    let y_grid: Vec<usize> = cfg.grid.iter().map(|&y| y.round() as usize).collect();
    let y_max = *y_grid.last().expect("validated non-empty grid");
    let c = y_grid[0].max(1);
    let fills = run_trials(cfg.trials, |trial| {
        let mut stream = SeededStream::new(cfg.master_seed, trial);
        column_fill_times(x, cfg.t_max, &mut stream)
    });
    let mut report = ExperimentReport::new(
        cfg,
        vec!["trial", "kind", "y", "t_xy", "t_left", "hit", "log_yc"],
    );
    let ordered = |fill: &Vec<Vec<u64>>, y: usize, left: usize| -> Option<(u64, u64, bool)> {
        let t_xy = fill[x].get(y).copied()?;
        let t_left = fill[left].get(y + 1).copied()?;
        Some((t_xy, t_left, t_xy < t_left))
    };
    let mut point_total = 0u64;
    for (trial, fill) in fills.iter().enumerate() {
        for &y in &y_grid {
            let (t_xy, t_left, hit) = match ordered(fill, y, x - 1) {
                Some((a, b, h)) => (Value::U(a), Value::U(b), Value::B(h)),
                None => (Value::Null, Value::Null, Value::Null),
            };
            report.push_row(vec![
                Value::U(trial as u64),
                Value::S("grid".into()),
                Value::U(y as u64),
                t_xy,
                t_left,
                hit,
                Value::Null,
            ]);
        }
        for y in c..=y_max {
            if let Some((t_xy, t_left, true)) = ordered(fill, y, x - 1) {
                point_total += 1;
                report.push_row(vec![
                    Value::U(trial as u64),
                    Value::S("point".into()),
                    Value::U(y as u64),
                    Value::U(t_xy),
                    Value::U(t_left),
                    Value::B(true),
                    Value::F((y as f64 / c as f64).ln()),
                ]);
            }
        }
    }
    let trials = cfg.trials as f64;
    for &y in &y_grid {
        let mut defined = 0u64;
        let mut hits = 0u64;
        let mut hits_two_left = 0u64;
        for fill in &fills {
            if let Some((_, _, h)) = ordered(fill, y, x - 1) {
                defined += 1;
                if h {
                    hits += 1;
                }
            }
            if x >= 2 {
                if let Some((_, _, h)) = ordered(fill, y, x - 2) {
                    if h {
                        hits_two_left += 1;
                    }
                }
            }
        }
        let undefined_rate = 1.0 - defined as f64 / trials;
        report.add_summary(format!("undefined_y={y}"), Value::F(undefined_rate));
        if defined > 0 {
            let freq = hits as f64 / defined as f64;
            report.add_summary(format!("p_xy_first_y={y}"), Value::F(freq));
            report.add_summary(format!("y_p_xy_first_y={y}"), Value::F(y as f64 * freq));
            if x >= 2 {
                report.add_summary(
                    format!("y_p_xy_first_two_left_y={y}"),
                    Value::F(y as f64 * hits_two_left as f64 / defined as f64),
                );
            }
        }
        report
            .checks
            .push(Check::le(format!("undefined_y={y}"), undefined_rate, 0.01));
    }
    report.add_summary("mean_points_per_trial", Value::F(point_total as f64 / trials));
    report.add_summary(
        "expected_points_per_trial",
        Value::F(x as f64 * (y_max as f64 / c as f64).ln()),
    );
    report
}

/// The two-parameter surface: the column of a route started after
/// `floor(m s)` negative-side entries, observed after `floor(m^2 / t^2)`
/// positive-side entries, on the (s, t) product of the grid with itself.
pub fn run_surface_2d(cfg: &ExperimentConfig) -> ExperimentReport {
    let m = cfg.m as f64;
    let s_grid = &cfg.grid;
    let t_grid = &cfg.grid;
    let prefix_max = (m * s_grid.last().expect("validated")).floor() as usize;
    let n_max = (m * m / (t_grid[0] * t_grid[0])).floor() as u64;
    // positive-side tiebreaks are offset so the two streams cannot collide
    const POS_OFFSET: u64 = 1 << 32;
    let surfaces = run_trials(cfg.trials, |trial| {
        let mut neg_stream = SeededStream::new(cfg.master_seed, 2 * trial);
        let neg: Vec<(f64, u64)> = (0..prefix_max).map(|_| neg_stream.next_uniform()).collect();
        let mut pos_stream = SeededStream::new(cfg.master_seed, 2 * trial + 1);
        let pos: Vec<(f64, u64)> = (0..n_max)
            .map(|_| {
                let (v, tb) = pos_stream.next_uniform();
                (v, tb + POS_OFFSET)
            })
            .collect();
        let mut cells = Vec::new();
        for &s in s_grid {
            let k = (m * s).floor() as usize;
            let mut cps: Vec<u64> = t_grid
                .iter()
                .map(|&t| k as u64 + (m * m / (t * t)).floor() as u64)
                .collect();
            cps.sort_unstable();
            cps.dedup();
            let entries = neg[..k].iter().rev().copied().chain(pos.iter().copied());
            let (_, checkpoints) = augmented_growth_over(
                entries,
                k as u64,
                &StopCondition::until(k as u64 + n_max),
                &cps,
            )
            .expect("long enough entry sequence");
            for &t in t_grid {
                let cp_t = k as u64 + (m * m / (t * t)).floor() as u64;
                let cp = checkpoints
                    .iter()
                    .find(|c| c.t == cp_t)
                    .expect("every requested time was checkpointed");
                cells.push((s, t, cp.x, cp.y));
            }
        }
        cells
    });
    let mut report = ExperimentReport::new(cfg, vec!["trial", "s", "t", "x", "y"]);
    let mut ratio_sum = 0.0;
    let mut ratio_n = 0u64;
    for (trial, cells) in surfaces.iter().enumerate() {
        for &(s, t, x, y) in cells {
            report.push_row(vec![
                Value::U(trial as u64),
                Value::F(s),
                Value::F(t),
                Value::U(x as u64),
                Value::U(y as u64),
            ]);
            ratio_sum += x as f64 / (s * t);
            ratio_n += 1;
        }
    }
    report.add_summary("cells", Value::U(ratio_n));
    // under the conjectured area law the mean of x / (s t) is 1
    report.add_summary("mean_x_over_st", Value::F(ratio_sum / ratio_n as f64));
    report
}

/// All routes of one word at once, with the `y = 2m / x` reference curves.
pub fn run_bumping_tree(cfg: &ExperimentConfig) -> ExperimentReport {
    let len = cfg.t_max.max(cfg.m) as usize;
    let trees = run_trials(cfg.trials, |trial| {
        let w: Vec<Entry> = SeededStream::new(cfg.master_seed, trial).take(len).collect();
        bumping_tree(&w, cfg.m).expect("word long enough by construction")
    });
    let mut report = ExperimentReport::new(cfg, vec!["trial", "kind", "m", "t", "x", "y"]);
    let mut events = 0u64;
    let mut max_row = 0u64;
    for (trial, tree) in trees.iter().enumerate() {
        for route in tree {
            for &(t, (x, y)) in &route.events {
                events += 1;
                max_row = max_row.max(y as u64);
                report.push_row(vec![
                    Value::U(trial as u64),
                    Value::S("event".into()),
                    Value::U(route.m),
                    Value::U(t),
                    Value::U(x as u64),
                    Value::F(y as f64),
                ]);
            }
        }
    }
    for m in 1..=cfg.m {
        for x in 1..=(2 * m).min(len as u64) {
            report.push_row(vec![
                Value::Null,
                Value::S("hyperbola".into()),
                Value::U(m),
                Value::Null,
                Value::U(x),
                Value::F(2.0 * m as f64 / x as f64),
            ]);
        }
    }
    report.add_summary("routes", Value::U(cfg.trials * (cfg.m + 1)));
    report.add_summary("events", Value::U(events));
    report.add_summary("max_row", Value::U(max_row));
    report
}
