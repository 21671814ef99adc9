//! Reference distributions, the Poisson-mixture measure family with its
//! Stirling closed form, the compound-binomial operator, total-variation
//! distance, and small empirical-statistics helpers.

use crate::{Error, Result};

/// A finitely supported (possibly signed) measure on the non-negative
/// integers, stored densely from 0. `tail_bound` certifies how much mass of
/// the intended measure may have been cut by truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    weights: Vec<f64>,
    pub tail_bound: f64,
}

const TAIL_CUT: f64 = 1e-12;

impl DiscreteMeasure {
    pub fn from_weights(weights: Vec<f64>) -> Self {
        DiscreteMeasure {
            weights,
            tail_bound: 0.0,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn pmf(&self, i: usize) -> f64 {
        self.weights.get(i).copied().unwrap_or(0.0)
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Point mass at `k`.
    pub fn delta(k: usize) -> Self {
        let mut weights = vec![0.0; k + 1];
        weights[k] = 1.0;
        DiscreteMeasure::from_weights(weights)
    }

    /// Empirical distribution of a sample of small counts.
    pub fn empirical(samples: &[u64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("empty sample".into()));
        }
        let max = *samples.iter().max().unwrap() as usize;
        let mut weights = vec![0.0; max + 1];
        let w = 1.0 / samples.len() as f64;
        for &s in samples {
            weights[s as usize] += w;
        }
        Ok(DiscreteMeasure::from_weights(weights))
    }
}

/// `Pois(z)`, truncated once the cumulative mass exceeds `1 - 1e-12`.
pub fn poisson(z: f64) -> Result<DiscreteMeasure> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::InvalidArgument(format!("poisson rate {z}")));
    }
    let mut weights = Vec::new();
    let mut p = (-z).exp();
    let mut cum = 0.0;
    let mut i = 0usize;
    loop {
        weights.push(p);
        cum += p;
        // past the mode the terms only decay; stop once the tail is certified
        if 1.0 - cum < TAIL_CUT && i as f64 >= z {
            break;
        }
        if i > 100_000 {
            break;
        }
        i += 1;
        p *= z / i as f64;
    }
    Ok(DiscreteMeasure {
        weights,
        tail_bound: (1.0 - cum).max(0.0),
    })
}

/// `Binom(n, p)` computed by the exact pmf recurrence.
pub fn binomial(n: usize, p: f64) -> Result<DiscreteMeasure> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("binomial p {p}")));
    }
    let mut weights = vec![0.0; n + 1];
    weights[0] = (1.0 - p).powi(n as i32);
    for k in 1..=n {
        // C(n,k) p^k q^(n-k) from the previous term
        weights[k] = weights[k - 1] * ((n - k + 1) as f64 / k as f64) * (p / (1.0 - p).max(f64::MIN_POSITIVE));
    }
    if p == 1.0 {
        weights = vec![0.0; n + 1];
        weights[n] = 1.0;
    }
    Ok(DiscreteMeasure::from_weights(weights))
}

/// Stirling numbers of the second kind by the standard recurrence.
pub fn stirling2(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 1..=m {
        for j in (1..=k).rev() {
            row[j] = (j as u128)
                .checked_mul(row[j])
                .and_then(|v| v.checked_add(row[j - 1]))
                .expect("stirling2 overflow");
        }
        row[0] = 0;
    }
    row[k]
}

/// The Poisson mixture
/// `(e^h - 1)^{-k} sum_j (-1)^{k-j} C(k,j) e^{jh} Pois(p j h)`.
///
/// The alternating mixture is numerically hopeless at small `h` (the
/// coefficients blow up like `(e^h - 1)^{-k}` while the result stays in
/// `[0, 1]`), so the p = 1 case is computed from the all-positive closed
/// form `h^m k! S(m, k) / ((e^h - 1)^k m!)` via a stable joint recurrence,
/// and general `p` by binomial thinning, which this family is closed under.
pub fn nu_measure(k: usize, p: f64, h: f64) -> Result<DiscreteMeasure> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("nu_measure p {p}")));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("nu_measure h {h}")));
    }
    let norm = (h.exp() - 1.0).powi(k as i32);
    let mut k_factorial = 1.0f64;
    for i in 2..=k {
        k_factorial *= i as f64;
    }
    // w[j] tracks S(m, j) h^m / m!, advanced jointly in m; every quantity is
    // non-negative, so there is no cancellation anywhere
    let mut w = vec![0.0f64; k + 1];
    w[0] = 1.0;
    let mut weights = Vec::new();
    let mut cum = 0.0;
    let mut m = 0usize;
    loop {
        let pmf = k_factorial * w[k] / norm;
        weights.push(pmf);
        cum += pmf;
        // the pmf is unimodal with mode near k, so past k a certified tail
        // means all remaining mass is certified too
        if (1.0 - cum < TAIL_CUT && m >= k) || m > 100_000 {
            break;
        }
        // S(m+1, j) = j S(m, j) + S(m, j-1), rescaled by h / (m + 1)
        for j in (1..=k).rev() {
            w[j] = (h / (m + 1) as f64) * (j as f64 * w[j] + w[j - 1]);
        }
        w[0] = 0.0;
        m += 1;
    }
    let base = DiscreteMeasure {
        weights,
        tail_bound: (1.0 - cum).max(0.0),
    };
    if p == 1.0 {
        Ok(base)
    } else {
        compound_binomial(&base, p)
    }
}

/// Closed form of `nu_measure(k, 1, h)` at a point:
/// `h^m k! S(m, k) / ((e^h - 1)^k m!)`.
pub fn nu_closed_form(k: usize, h: f64, m: usize) -> f64 {
    let mut k_factorial = 1.0;
    for i in 2..=k {
        k_factorial *= i as f64;
    }
    // h^m / m! by recurrence to avoid overflow
    let mut hm_over_mf = 1.0;
    for i in 1..=m {
        hm_over_mf *= h / i as f64;
    }
    hm_over_mf * k_factorial * stirling2(m, k) as f64 / (h.exp() - 1.0).powi(k as i32)
}

/// The compound-binomial operator: each unit of mass at `j` is replaced by
/// `Binom(j, p)`.
pub fn compound_binomial(mu: &DiscreteMeasure, p: f64) -> Result<DiscreteMeasure> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("compound_binomial p {p}")));
    }
    let n = mu.weights().len();
    let mut weights = vec![0.0; n.max(1)];
    for (j, &w) in mu.weights().iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let thinned = binomial(j, p)?;
        for (i, &b) in thinned.weights().iter().enumerate() {
            weights[i] += w * b;
        }
    }
    Ok(DiscreteMeasure {
        weights,
        tail_bound: mu.tail_bound,
    })
}

/// Half the l1 distance.
pub fn tv_distance(a: &DiscreteMeasure, b: &DiscreteMeasure) -> f64 {
    let len = a.weights().len().max(b.weights().len());
    0.5 * (0..len).map(|i| (a.pmf(i) - b.pmf(i)).abs()).sum::<f64>()
}

/// The maximal-event form `max_X (a(X) - b(X))`; agrees with `tv_distance`
/// for probability measures.
pub fn tv_max_event(a: &DiscreteMeasure, b: &DiscreteMeasure) -> f64 {
    let len = a.weights().len().max(b.weights().len());
    (0..len).map(|i| (a.pmf(i) - b.pmf(i)).max(0.0)).sum()
}

/// CDF of `Erlang(k, 1)`, the sum of `k` unit exponentials.
pub fn erlang_cdf(k: usize, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut partial = 1.0;
    for i in 1..k {
        term *= u / i as f64;
        partial += term;
    }
    1.0 - (-u).exp() * partial
}

/// CDF `exp(-1/u)` of the unit Frechet law (shape parameter 1).
pub fn frechet_shape1_cdf(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        (-1.0 / u).exp()
    }
}

pub fn exponential_cdf(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        1.0 - (-u).exp()
    }
}

/// Survival function `u^{-power}` on `[1, inf)`.
pub fn pareto_survival(power: usize, u: f64) -> f64 {
    if u <= 1.0 {
        1.0
    } else {
        u.powi(-(power as i32))
    }
}

/// Empirical CDF over a sample.
pub struct Ecdf {
    sorted: Vec<f64>,
}

pub fn ecdf(samples: &[f64]) -> Result<Ecdf> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Ecdf { sorted })
}

impl Ecdf {
    pub fn value(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }
}

/// Kolmogorov-Smirnov statistic of a sample against a reference CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    ks_statistic_above(samples, cdf, f64::NEG_INFINITY)
}

/// KS statistic with the supremum restricted to `x >= floor`. With censored
/// observations entered at their lower-bound values, restricting the
/// supremum to the region above every bound keeps the statistic exact there
/// (all censored points are correctly counted as smaller).
pub fn ks_statistic_above<F: Fn(f64) -> f64>(samples: &[f64], cdf: F, floor: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        if x < floor {
            continue;
        }
        let f = cdf(x);
        d = d.max((((i + 1) as f64) / n - f).abs());
        d = d.max((f - (i as f64) / n).abs());
    }
    Ok(d)
}

/// Counting statistics of point sets on a grid: `counts[g][trial]` is the
/// number of points of `point_sets[trial]` that are `<= grid[g]`.
pub fn counting_tally(point_sets: &[Vec<f64>], grid: &[f64]) -> Vec<Vec<u64>> {
    grid.iter()
        .map(|&z| {
            point_sets
                .iter()
                .map(|points| points.iter().filter(|&&p| p <= z).count() as u64)
                .collect()
        })
        .collect()
}

/// Pearson chi-square statistic of observed counts against a pmf.
pub fn chi_square(counts: &[u64], pmf: &[f64]) -> Result<f64> {
    if counts.len() != pmf.len() || counts.is_empty() {
        return Err(Error::InvalidArgument(
            "counts and pmf must be non-empty and equally long".into(),
        ));
    }
    let total: u64 = counts.iter().sum();
    let mut stat = 0.0;
    for (&o, &p) in counts.iter().zip(pmf) {
        let e = total as f64 * p;
        if e > 0.0 {
            stat += (o as f64 - e).powi(2) / e;
        } else if o > 0 {
            return Err(Error::InvalidArgument(
                "observed count in a zero-probability bin".into(),
            ));
        }
    }
    Ok(stat)
}
