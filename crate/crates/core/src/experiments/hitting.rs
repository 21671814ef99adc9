//! Experiments built on the hitting times of low columns by a single route:
//! Frechet limit, exponential point process, power-law ratios, the two tail
//! estimators, the lazy/row comparison, and the projective view.

use super::config::ExperimentConfig;
use super::report::{Check, ExperimentReport, Value};
use crate::bumping::{hitting_times, projective_route, StopCondition, TimeBound};
use crate::parallel::run_trials;
use crate::plancherel::{augmented_growth, SeededStream};
use crate::stats::{
    erlang_cdf, exponential_cdf, frechet_shape1_cdf, ks_statistic_above, pareto_survival,
    poisson, tv_distance, DiscreteMeasure,
};

/// Hitting data of one trial: `y[x]` / `t[x]` for columns `0..=x_max`.
#[derive(Debug, Clone)]
pub struct HitRecord {
    pub trial: u64,
    pub y: Vec<TimeBound>,
    pub t: Vec<TimeBound>,
    pub censored: bool,
}

/// Simulate `cfg.trials` independent routes of level `cfg.m`, each run until
/// it reaches column 0 or `cfg.t_max` insertions have happened, and collect
/// the hitting data of columns `0..=x_max`.
pub fn simulate_hits(cfg: &ExperimentConfig, x_max: usize) -> Vec<HitRecord> {
    run_trials(cfg.trials, |trial| {
        let mut stream = SeededStream::new(cfg.master_seed, trial);
        let (trace, _) = augmented_growth(
            cfg.m,
            &mut stream,
            &StopCondition::column(0, cfg.t_max),
            &[],
        );
        let h = hitting_times(&trace, x_max);
        HitRecord {
            trial,
            y: h.y,
            t: h.t,
            censored: trace.censored,
        }
    })
}

/// Fraction of the values that are certainly `<= thr`, counting each
/// undecidable (censored, bound below `thr`) value as one half, plus the
/// undecidable fraction itself.
pub fn fraction_at_most<I>(bounds: I, thr: f64) -> (f64, f64)
where
    I: IntoIterator<Item = TimeBound>,
{
    let mut n = 0u64;
    let mut le = 0u64;
    let mut ambiguous = 0u64;
    for b in bounds {
        n += 1;
        match b {
            TimeBound::Exact(v) => {
                if (v as f64) <= thr {
                    le += 1;
                }
            }
            TimeBound::AtLeast(lb) => {
                if (lb as f64) <= thr {
                    ambiguous += 1;
                }
            }
        }
    }
    (
        (le as f64 + 0.5 * ambiguous as f64) / n as f64,
        ambiguous as f64 / n as f64,
    )
}

/// Map the bounds through a strictly decreasing transform, so a censored
/// lower bound becomes an upper bound of the image. Returns the sample and
/// the largest censored image: a KS supremum restricted to that floor sees
/// every censored point correctly (as lying below).
pub fn transformed_sample<F>(bounds: &[TimeBound], f: F) -> (Vec<f64>, f64)
where
    F: Fn(f64) -> f64,
{
    let mut floor = f64::NEG_INFINITY;
    let sample = bounds
        .iter()
        .map(|b| {
            let v = f(b.lower_bound() as f64);
            if b.is_censored() {
                floor = floor.max(v);
            }
            v
        })
        .collect();
    (sample, floor)
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

fn censored_rate(hits: &[HitRecord]) -> f64 {
    hits.iter().filter(|h| h.censored).count() as f64 / hits.len() as f64
}

fn push_hit_rows(report: &mut ExperimentReport, hits: &[HitRecord], x_max: usize) {
    for h in hits {
        for x in 0..=x_max {
            report.push_row(vec![
                Value::U(h.trial),
                Value::U(x as u64),
                Value::U(h.y[x].lower_bound()),
                Value::U(h.t[x].lower_bound()),
                Value::B(h.y[x].is_censored()),
            ]);
        }
    }
}

/// `Y_0 / 2m` against the unit Frechet law, on a grid of thresholds `u`.
pub fn run_frechet(cfg: &ExperimentConfig) -> ExperimentReport {
    let hits = simulate_hits(cfg, 0);
    let mut report = ExperimentReport::new(cfg, vec!["trial", "y0", "t0", "censored"]);
    for h in &hits {
        report.push_row(vec![
            Value::U(h.trial),
            Value::U(h.y[0].lower_bound()),
            Value::U(h.t[0].lower_bound()),
            Value::B(h.censored),
        ]);
    }
    let scale = 2.0 * cfg.m as f64;
    report.add_summary("censored_rate", Value::F(censored_rate(&hits)));
    for &u in &cfg.grid {
        let (est, ambiguous) =
            fraction_at_most(hits.iter().map(|h| h.y[0]), (scale * u).floor());
        let target = frechet_shape1_cdf(u);
        report.add_summary(format!("p_le_u={u}"), Value::F(est));
        report.add_summary(format!("frechet_cdf_u={u}"), Value::F(target));
        report.add_summary(format!("ambiguous_u={u}"), Value::F(ambiguous));
        if cfg.m >= 1 {
            report
                .checks
                .push(Check::le(format!("abs_err_u={u}"), (est - target).abs(), 0.03));
        }
    }
    if cfg.m >= 1 {
        // equivalently: exp(-2m / Y_0) should look uniform
        let bounds: Vec<TimeBound> = hits.iter().map(|h| h.y[0]).collect();
        let (sample, floor) = transformed_sample(&bounds, |y| scale / y);
        let ks = ks_statistic_above(&sample, exponential_cdf, floor).expect("non-empty");
        report.add_summary("ks_exp_2m_over_y0", Value::F(ks));
    }
    report
}

/// The rescaled points `2m / Y_x` for the tracked columns: the smallest point
/// against Exp(1), survival probabilities on the grid, and the correlation
/// between the first point and the next gap.
pub fn run_poisson_points(cfg: &ExperimentConfig) -> ExperimentReport {
    let hits = simulate_hits(cfg, cfg.x_max);
    let mut report = ExperimentReport::new(cfg, vec!["trial", "x", "y", "t", "censored"]);
    push_hit_rows(&mut report, &hits, cfg.x_max);
    let scale = 2.0 * cfg.m as f64;
    report.add_summary("censored_rate", Value::F(censored_rate(&hits)));
    if cfg.m >= 1 {
        let bounds: Vec<TimeBound> = hits.iter().map(|h| h.y[0]).collect();
        let (sample, floor) = transformed_sample(&bounds, |y| scale / y);
        let ks = ks_statistic_above(&sample, exponential_cdf, floor).expect("non-empty");
        report.add_summary("ks_exp_2m_over_y0", Value::F(ks));
        report.checks.push(Check::le("ks_exp_2m_over_y0", ks, 0.04));
        for &u in &cfg.grid {
            // 2m / Y_0 > u means Y_0 < 2m / u
            let (le, ambiguous) =
                fraction_at_most(hits.iter().map(|h| h.y[0]), (scale / u).ceil() - 1.0);
            let target = (-u).exp();
            report.add_summary(format!("p_gt_u={u}"), Value::F(le));
            report.add_summary(format!("exp_survival_u={u}"), Value::F(target));
            report.add_summary(format!("ambiguous_u={u}"), Value::F(ambiguous));
            report
                .checks
                .push(Check::le(format!("abs_err_u={u}"), (le - target).abs(), 0.03));
        }
        if cfg.x_max >= 1 {
            let mut first = Vec::new();
            let mut gap = Vec::new();
            for h in &hits {
                if let (Some(y0), Some(y1)) = (h.y[0].exact(), h.y[1].exact()) {
                    if y1 > 0 {
                        first.push(scale / y0 as f64);
                        gap.push(scale / y1 as f64 - scale / y0 as f64);
                    }
                }
            }
            if first.len() > 1 {
                report.add_summary("first_gap_correlation", Value::F(pearson(&first, &gap)));
            }
        }
    }
    report
}

/// Ratios `Y_x / Y_{x+1}` against the Pareto laws `u^{-(x+1)}`.
pub fn run_powerlaw_ratios(cfg: &ExperimentConfig) -> ExperimentReport {
    let x_max = cfg.x_max.max(1);
    let hits = simulate_hits(cfg, x_max);
    let mut report =
        ExperimentReport::new(cfg, vec!["trial", "x", "y_x", "y_x1", "ratio"]);
    for h in &hits {
        for x in 0..x_max {
            let ratio = match (h.y[x].exact(), h.y[x + 1].exact()) {
                (Some(a), Some(b)) if b > 0 => Value::F(a as f64 / b as f64),
                _ => Value::Null,
            };
            report.push_row(vec![
                Value::U(h.trial),
                Value::U(x as u64),
                Value::U(h.y[x].lower_bound()),
                Value::U(h.y[x + 1].lower_bound()),
                ratio,
            ]);
        }
    }
    report.add_summary("censored_rate", Value::F(censored_rate(&hits)));
    for x in 0..x_max {
        for &u in &cfg.grid {
            let mut gt = 0u64;
            let mut ambiguous = 0u64;
            for h in &hits {
                // ratio > u means Y_x > u * Y_{x+1}
                match (h.y[x], h.y[x + 1].exact()) {
                    (TimeBound::Exact(a), Some(b)) => {
                        if a as f64 > u * b as f64 {
                            gt += 1;
                        }
                    }
                    (TimeBound::AtLeast(lb), Some(b)) => {
                        if lb as f64 > u * b as f64 {
                            gt += 1;
                        } else {
                            ambiguous += 1;
                        }
                    }
                    _ => ambiguous += 1,
                }
            }
            let n = hits.len() as f64;
            let est = (gt as f64 + 0.5 * ambiguous as f64) / n;
            let target = pareto_survival(x + 1, u);
            report.add_summary(format!("p_gt_x={x}_u={u}"), Value::F(est));
            report.add_summary(format!("pareto_x={x}_u={u}"), Value::F(target));
            report.add_summary(
                format!("ambiguous_x={x}_u={u}"),
                Value::F(ambiguous as f64 / n),
            );
            if cfg.m >= 1 {
                report.checks.push(Check::le(
                    format!("abs_err_x={x}_u={u}"),
                    (est - target).abs(),
                    0.03,
                ));
            }
        }
    }
    report
}

fn tail_rows(report: &mut ExperimentReport, hits: &[HitRecord]) {
    for h in hits {
        report.push_row(vec![
            Value::U(h.trial),
            Value::U(h.y[0].lower_bound()),
            Value::U(h.t[0].lower_bound()),
            Value::B(h.censored),
        ]);
    }
}

/// The tail constant `y * P(Y_0 >= y)`, which should settle near `2m`.
pub fn run_tail_y0(cfg: &ExperimentConfig) -> ExperimentReport {
    let hits = simulate_hits(cfg, 0);
    let mut report = ExperimentReport::new(cfg, vec!["trial", "y0", "t0", "censored"]);
    tail_rows(&mut report, &hits);
    report.add_summary("censored_rate", Value::F(censored_rate(&hits)));
    let target = 2.0 * cfg.m as f64;
    for &y in &cfg.grid {
        let (le, ambiguous) = fraction_at_most(hits.iter().map(|h| h.y[0]), y.ceil() - 1.0);
        let est = y * (1.0 - le);
        report.add_summary(format!("y_tail_y={y}"), Value::F(est));
        report.add_summary(format!("ambiguous_y={y}"), Value::F(ambiguous));
        if cfg.m >= 1 {
            report.checks.push(Check::within(
                format!("y_tail_y={y}"),
                est,
                0.8 * target,
                1.2 * target,
            ));
            report
                .checks
                .push(Check::le(format!("ambiguous_y={y}"), ambiguous, 0.01));
        }
    }
    report
}

/// The tail constant `sqrt(u) * P(T_0 > u)`, which should settle near `m`.
pub fn run_tail_t0(cfg: &ExperimentConfig) -> ExperimentReport {
    let hits = simulate_hits(cfg, 0);
    let mut report = ExperimentReport::new(cfg, vec!["trial", "y0", "t0", "censored"]);
    tail_rows(&mut report, &hits);
    report.add_summary("censored_rate", Value::F(censored_rate(&hits)));
    let target = cfg.m as f64;
    for &u in &cfg.grid {
        let (le, ambiguous) = fraction_at_most(hits.iter().map(|h| h.t[0]), u.floor());
        let est = u.sqrt() * (1.0 - le);
        report.add_summary(format!("t_tail_u={u}"), Value::F(est));
        report.add_summary(format!("ambiguous_u={u}"), Value::F(ambiguous));
        if cfg.m >= 1 {
            report.checks.push(Check::within(
                format!("t_tail_u={u}"),
                est,
                0.8 * target,
                1.2 * target,
            ));
            report
                .checks
                .push(Check::le(format!("ambiguous_u={u}"), ambiguous, 0.01));
        }
    }
    report
}

/// Lazy-parametrization limits: `m / sqrt(T_x)` against Erlang partial sums
/// and the pinning of `Y_x / sqrt(T_x)` near 2.
pub fn run_lazy_poisson(cfg: &ExperimentConfig) -> ExperimentReport {
    let hits = simulate_hits(cfg, cfg.x_max);
    let mut report = ExperimentReport::new(cfg, vec!["trial", "x", "y", "t", "censored"]);
    push_hit_rows(&mut report, &hits, cfg.x_max);
    report.add_summary("censored_rate", Value::F(censored_rate(&hits)));
    if cfg.m >= 1 {
        let scale = cfg.m as f64;
        for x in 0..=cfg.x_max {
            let bounds: Vec<TimeBound> = hits.iter().map(|h| h.t[x]).collect();
            let (sample, floor) = transformed_sample(&bounds, |t| scale / t.sqrt());
            let ks = ks_statistic_above(&sample, |v| erlang_cdf(x + 1, v), floor)
                .expect("non-empty");
            report.add_summary(format!("ks_erlang_x={x}"), Value::F(ks));
        }
        // deviation frequency of Y_0 / sqrt(T_0) from its limit value 2
        let eps = cfg.grid.first().copied().unwrap_or(0.25);
        let mut n = 0u64;
        let mut deviant = 0u64;
        for h in &hits {
            if let (Some(y), Some(t)) = (h.y[0].exact(), h.t[0].exact()) {
                if t > 0 {
                    n += 1;
                    if (y as f64 / (t as f64).sqrt() - 2.0).abs() > eps {
                        deviant += 1;
                    }
                }
            }
        }
        if n > 0 {
            let rate = deviant as f64 / n as f64;
            report.add_summary(format!("deviation_rate_eps={eps}"), Value::F(rate));
            report.add_summary("deviation_sample", Value::U(n));
            report
                .checks
                .push(Check::le(format!("deviation_rate_eps={eps}"), rate, 0.05));
        }
    }
    report
}

/// The projective reparametrization `z -> x(floor(2m / z))`, whose marginals
/// approach Poisson counts with mean `z`.
pub fn run_projective(cfg: &ExperimentConfig) -> ExperimentReport {
    let samples = run_trials(cfg.trials, |trial| {
        let mut stream = SeededStream::new(cfg.master_seed, trial);
        let (trace, _) = augmented_growth(
            cfg.m,
            &mut stream,
            &StopCondition::column(0, cfg.t_max),
            &[],
        );
        projective_route(&trace, &cfg.grid)
    });
    let mut report = ExperimentReport::new(cfg, vec!["trial", "z", "x"]);
    for (trial, route) in samples.iter().enumerate() {
        for &(z, x) in route {
            report.push_row(vec![
                Value::U(trial as u64),
                Value::F(z),
                x.map_or(Value::Null, |v| Value::U(v as u64)),
            ]);
        }
    }
    for (zi, &z) in cfg.grid.iter().enumerate() {
        let xs: Vec<u64> = samples
            .iter()
            .filter_map(|route| route[zi].1.map(|v| v as u64))
            .collect();
        let undefined = samples.len() - xs.len();
        report.add_summary(format!("undefined_z={z}"), Value::U(undefined as u64));
        if !xs.is_empty() {
            let mean = xs.iter().sum::<u64>() as f64 / xs.len() as f64;
            report.add_summary(format!("mean_x_z={z}"), Value::F(mean));
            let empirical = DiscreteMeasure::empirical(&xs).expect("non-empty");
            if let Ok(reference) = poisson(z) {
                report.add_summary(
                    format!("tv_pois_z={z}"),
                    Value::F(tv_distance(&empirical, &reference)),
                );
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::Experiment;

    fn small_cfg(experiment: Experiment) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::default_for(experiment);
        cfg.m = 8;
        cfg.trials = 60;
        cfg.t_max = 3000;
        cfg
    }

    #[test]
    fn fraction_at_most_handles_bounds() {
        let bounds = [
            TimeBound::Exact(3),
            TimeBound::Exact(10),
            TimeBound::AtLeast(5),
            TimeBound::AtLeast(20),
        ];
        let (est, ambiguous) = fraction_at_most(bounds, 8.0);
        // one certain <=, one certain > (exact 10), one certain > (bound 20),
        // one undecidable counted as a half
        assert_eq!(est, (1.0 + 0.5) / 4.0);
        assert_eq!(ambiguous, 0.25);
    }

    #[test]
    fn transformed_sample_floors_censored_points() {
        let bounds = [TimeBound::Exact(4), TimeBound::AtLeast(16)];
        let (sample, floor) = transformed_sample(&bounds, |v| 1.0 / v.sqrt());
        assert_eq!(sample, vec![0.5, 0.25]);
        assert_eq!(floor, 0.25);
    }

    #[test]
    fn pearson_on_exact_lines() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let up: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let down: Vec<f64> = xs.iter().map(|x| -x).collect();
        assert!((pearson(&xs, &up) - 1.0).abs() < 1e-12);
        assert!((pearson(&xs, &down) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn simulate_hits_is_deterministic_and_monotone() {
        let cfg = small_cfg(Experiment::PoissonPoints);
        let a = simulate_hits(&cfg, 2);
        let b = simulate_hits(&cfg, 2);
        assert_eq!(a.len(), cfg.trials as usize);
        for (ha, hb) in a.iter().zip(&b) {
            assert_eq!(ha.y, hb.y);
            assert_eq!(ha.t, hb.t);
            for x in 0..2 {
                assert!(ha.y[x].lower_bound() >= ha.y[x + 1].lower_bound());
                assert!(ha.t[x].lower_bound() >= ha.t[x + 1].lower_bound());
            }
        }
    }

    #[test]
    fn frechet_report_shape() {
        let cfg = small_cfg(Experiment::Frechet);
        let report = run_frechet(&cfg);
        assert_eq!(report.rows.len(), cfg.trials as usize);
        assert!(report.summary_f64("censored_rate").unwrap() < 0.5);
        assert!(report.summary_f64("ks_exp_2m_over_y0").is_some());
        // estimates are probabilities
        for &u in &cfg.grid {
            let p = report.summary_f64(&format!("p_le_u={u}")).unwrap();
            assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn tail_reports_are_consistent_with_rows() {
        let mut cfg = small_cfg(Experiment::TailY0);
        cfg.m = 1;
        cfg.grid = vec![10.0];
        let report = run_tail_y0(&cfg);
        // recompute the estimator from the emitted rows
        let mut ge = 0u64;
        for row in &report.rows {
            let (Value::U(y0), Value::B(censored)) = (&row[1], &row[3]) else {
                panic!("row shape");
            };
            if *y0 >= 10 && !censored {
                ge += 1;
            } else if *censored && *y0 >= 10 {
                ge += 1;
            }
        }
        let est = report.summary_f64("y_tail_y=10").unwrap();
        let direct = 10.0 * ge as f64 / cfg.trials as f64;
        // they may differ only by the ambiguous-half correction
        assert!((est - direct).abs() <= 10.0 * 0.5 + 1e-12);
    }

    #[test]
    fn projective_report_counts_add_up() {
        let cfg = small_cfg(Experiment::Projective);
        let report = run_projective(&cfg);
        assert_eq!(
            report.rows.len(),
            (cfg.trials as usize) * cfg.grid.len()
        );
    }
}
