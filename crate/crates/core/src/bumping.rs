//! Bumping routes in the row and lazy parametrizations, hitting times of
//! columns, the projective reparametrization, and bumping trees.

use crate::tableau::{rsk, Entry, InsertionTableau};
use crate::{Error, Result};

/// When a route simulation stops. With only `t_max` set the run is complete
/// by definition; a set `target_column` or `row_cap` that was not reached by
/// `t_max` marks the trace as censored.
#[derive(Debug, Clone, Copy)]
pub struct StopCondition {
    pub target_column: Option<usize>,
    pub row_cap: Option<usize>,
    pub t_max: u64,
}

impl StopCondition {
    pub fn until(t_max: u64) -> Self {
        StopCondition {
            target_column: None,
            row_cap: None,
            t_max,
        }
    }

    pub fn column(target: usize, t_max: u64) -> Self {
        StopCondition {
            target_column: Some(target),
            row_cap: None,
            t_max,
        }
    }

    fn met(&self, x: usize, y: usize) -> bool {
        self.target_column.is_some_and(|c| x <= c) || self.row_cap.is_some_and(|r| y >= r)
    }

    fn censors(&self, x: usize, y: usize) -> bool {
        (self.target_column.is_some() || self.row_cap.is_some()) && !self.met(x, y)
    }
}

/// One simulated route in the lazy parametrization: the probe position over
/// insertion time. `events` holds `(t, (x, y))` for every position change,
/// starting with the initial placement at `t = m`; `x` is weakly decreasing
/// and `y` increases by exactly one per event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteTrace {
    pub m: u64,
    pub events: Vec<(u64, (usize, usize))>,
    pub censored: bool,
    pub t_final: u64,
}

impl RouteTrace {
    pub fn final_box(&self) -> (usize, usize) {
        *self
            .events
            .last()
            .map(|(_, b)| b)
            .expect("a trace has at least its initial placement")
    }

    /// Number of bumps, which equals the final row of the route.
    pub fn bump_count(&self) -> usize {
        self.events.len() - 1
    }

    /// Route column per visited row; rows are visited consecutively from 0.
    pub fn x_by_row(&self) -> Vec<usize> {
        self.events.iter().map(|&(_, (x, _))| x).collect()
    }
}

/// Hitting data for one column: either observed exactly, or only bounded from
/// below because the simulation was censored first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeBound {
    Exact(u64),
    AtLeast(u64),
}

impl TimeBound {
    pub fn exact(&self) -> Option<u64> {
        match *self {
            TimeBound::Exact(v) => Some(v),
            TimeBound::AtLeast(_) => None,
        }
    }

    pub fn lower_bound(&self) -> u64 {
        match *self {
            TimeBound::Exact(v) | TimeBound::AtLeast(v) => v,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self, TimeBound::AtLeast(_))
    }

    /// Whether the (possibly only bounded) value is certainly `>= threshold`,
    /// certainly `< threshold`, or undecidable from the bound.
    pub fn at_least(&self, threshold: u64) -> Option<bool> {
        match *self {
            TimeBound::Exact(v) => Some(v >= threshold),
            TimeBound::AtLeast(b) if b >= threshold => Some(true),
            TimeBound::AtLeast(_) => None,
        }
    }
}

/// Per-column hitting times of one trace: `y[x]` is the first row at which
/// the route is weakly left of column `x`, `t[x]` the first insertion time.
#[derive(Debug, Clone)]
pub struct HittingTimes {
    pub y: Vec<TimeBound>,
    pub t: Vec<TimeBound>,
}

pub fn hitting_times(trace: &RouteTrace, x_max: usize) -> HittingTimes {
    let mut y = Vec::with_capacity(x_max + 1);
    let mut t = Vec::with_capacity(x_max + 1);
    let (fx, fy) = trace.final_box();
    for col in 0..=x_max {
        match trace.events.iter().find(|&&(_, (x, _))| x <= col) {
            Some(&(et, (_, ey))) => {
                y.push(TimeBound::Exact(ey as u64));
                t.push(TimeBound::Exact(et));
            }
            None => {
                // still strictly right of `col`: one more bump and one more
                // insertion are needed at the very least
                debug_assert!(fx > col);
                y.push(TimeBound::AtLeast(fy as u64 + 1));
                t.push(TimeBound::AtLeast(trace.t_final + 1));
            }
        }
    }
    HittingTimes { y, t }
}

/// Bumping route of the probe `m + 1/2` through a fixed tableau, in the row
/// parametrization: the column visited in each row, starting from row 0.
pub fn row_route(t: &InsertionTableau, m: u64) -> Vec<usize> {
    let mut scratch = t.clone();
    let route = scratch
        .row_insert(Entry::Probe(m))
        .expect("a probe is never a duplicate");
    route.into_iter().map(|(x, _)| x).collect()
}

/// Lazy route computed straight from its definition: for each `t` the probe
/// is bumped through the recording tableau of `w_1..w_t`, and the position is
/// the unique box by which the shape grows. Quadratic; meant as an oracle.
pub fn lazy_route_oracle(w: &[Entry], m: u64, t_to: u64) -> Result<RouteTrace> {
    let len = w.len() as u64;
    if m > len || t_to > len {
        return Err(Error::InvalidArgument(format!(
            "need m <= |w| and t_to <= |w|, got m={m}, t_to={t_to}, |w|={len}"
        )));
    }
    if t_to < m {
        return Err(Error::InvalidArgument("t_to must be >= m".into()));
    }
    let (_, q) = rsk(w)?;
    let mut events = Vec::new();
    for t in m..=t_to {
        let mut restricted = q.restrict_leq(t).to_insertion();
        let new_box = restricted
            .insert_new_box(Entry::Probe(m))
            .expect("a probe is never a duplicate");
        if events.last().map(|&(_, b)| b) != Some(new_box) {
            events.push((t, new_box));
        }
    }
    Ok(RouteTrace {
        m,
        events,
        censored: false,
        t_final: t_to,
    })
}

/// Trajectory of a maximal sentinel inserted after the first `m` entries of
/// the stream, simulated without materializing the sentinel: the regular
/// tableau is grown by plain insertions and the tracked box moves up one row
/// exactly when a new box lands on it.
pub fn trajectory_of_infinity<I>(stream: I, m: u64, stop: &StopCondition) -> Result<RouteTrace>
where
    I: IntoIterator<Item = Entry>,
{
    if stop.t_max < m {
        return Err(Error::InvalidArgument("t_max must be >= m".into()));
    }
    let mut entries = stream.into_iter();
    let mut tableau = InsertionTableau::empty();
    for _ in 0..m {
        let a = entries.next().ok_or_else(|| {
            Error::InvalidArgument("stream shorter than the initiation time m".into())
        })?;
        tableau.insert_new_box(a)?;
    }
    let mut special = (tableau.shape().row_len(0), 0usize);
    let mut events = vec![(m, special)];
    let mut t = m;
    while t < stop.t_max && !stop.met(special.0, special.1) {
        let Some(a) = entries.next() else { break };
        t += 1;
        let new_box = tableau.insert_new_box(a)?;
        if new_box == special {
            let y = special.1 + 1;
            special = (tableau.rows().get(y).map_or(0, Vec::len), y);
            events.push((t, special));
        }
    }
    Ok(RouteTrace {
        m,
        censored: stop.censors(special.0, special.1),
        events,
        t_final: t,
    })
}

/// Sample the projective reparametrization `z -> x(floor(2m / z))` of a route
/// on a caller-supplied grid. `None` marks grid points that need rows beyond
/// what a censored trace observed.
pub fn projective_route(trace: &RouteTrace, z_grid: &[f64]) -> Vec<(f64, Option<usize>)> {
    let by_row = trace.x_by_row();
    let final_x = trace.final_box().0;
    z_grid
        .iter()
        .map(|&z| {
            let row = (2.0 * trace.m as f64 / z).floor() as usize;
            let x = if row < by_row.len() {
                Some(by_row[row])
            } else if final_x == 0 {
                // the route reached column 0 and stays there
                Some(0)
            } else {
                None
            };
            (z, x)
        })
        .collect()
}

/// All bumping routes of one tableau: one trace per probe level `0..=m_max`,
/// over the recording tableau of the same finite word.
pub fn bumping_tree(w: &[Entry], m_max: u64) -> Result<Vec<RouteTrace>> {
    if (w.len() as u64) < m_max {
        return Err(Error::InvalidArgument("need |w| >= m_max".into()));
    }
    (0..=m_max)
        .map(|m| trajectory_of_infinity(w.iter().copied(), m, &StopCondition::until(w.len() as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plancherel::SeededStream;
    use crate::tableau::InsertionTableau;

    fn fin(v: f64) -> Entry {
        Entry::finite(v, 0)
    }

    fn uniform_word(seed: u64, len: usize) -> Vec<Entry> {
        SeededStream::new(seed, 0).take(len).collect()
    }

    #[test]
    fn row_route_through_fixed_tableau() {
        // probe 17.5 through 16 37 41 82 / 23 53 70 / 74 99 takes the same
        // route as inserting 18
        let t = InsertionTableau::from_rows(vec![
            vec![fin(16.0), fin(37.0), fin(41.0), fin(82.0)],
            vec![fin(23.0), fin(53.0), fin(70.0)],
            vec![fin(74.0), fin(99.0)],
        ])
        .unwrap();
        assert_eq!(row_route(&t, 17), vec![1, 1, 0, 0]);
        assert_eq!(row_route(&InsertionTableau::empty(), 5), vec![0]);
    }

    #[test]
    fn lazy_route_base_and_increasing_word() {
        let w: Vec<Entry> = (0..10).map(|i| fin(i as f64)).collect();
        // increasing word: the next entry bumps the probe out of row 0 (the
        // probe tops the row, so the larger newcomer displaces it), after
        // which the probe sits alone in row 1 and is never touched again
        for m in 0..10 {
            let trace = lazy_route_oracle(&w, m, 10).unwrap();
            assert_eq!(trace.events, vec![(m, (m as usize, 0)), (m + 1, (0, 1))]);
        }
        // a probe placed at the very end is never bumped at all
        let trace = lazy_route_oracle(&w, 10, 10).unwrap();
        assert_eq!(trace.events, vec![(10, (10, 0))]);
    }

    #[test]
    fn lazy_route_rejects_short_word() {
        let w = uniform_word(1, 5);
        assert!(lazy_route_oracle(&w, 6, 5).is_err());
        assert!(lazy_route_oracle(&w, 2, 6).is_err());
    }

    #[test]
    fn trajectory_matches_lazy_oracle() {
        for seed in 0..40 {
            let w = uniform_word(seed, 25);
            for m in 0..=25u64 {
                let lazy = lazy_route_oracle(&w, m, 25).unwrap();
                let traj =
                    trajectory_of_infinity(w.iter().copied(), m, &StopCondition::until(25))
                        .unwrap();
                assert_eq!(lazy.events, traj.events, "seed {seed}, m {m}");
            }
        }
    }

    #[test]
    fn route_geometry_invariants() {
        for seed in 0..20 {
            let w = uniform_word(seed, 60);
            let trace =
                trajectory_of_infinity(w.iter().copied(), 7, &StopCondition::until(60)).unwrap();
            for (i, pair) in trace.events.windows(2).enumerate() {
                let (t0, (x0, y0)) = pair[0];
                let (t1, (x1, y1)) = pair[1];
                assert!(t0 < t1);
                assert!(x0 >= x1);
                assert_eq!(y1, y0 + 1);
                assert_eq!(y0, i);
            }
            // de-lazification: the value set of the lazy trace is the row route
            let (_, q) = rsk(&w).unwrap();
            assert_eq!(
                row_route(&q.to_insertion(), 7)[..trace.events.len()],
                trace.x_by_row()
            );
        }
    }

    #[test]
    fn hitting_times_from_events() {
        let trace = RouteTrace {
            m: 3,
            events: vec![(3, (4, 0)), (5, (2, 1)), (9, (2, 2)), (12, (0, 3))],
            censored: false,
            t_final: 12,
        };
        let h = hitting_times(&trace, 4);
        assert_eq!(h.y[4], TimeBound::Exact(0));
        assert_eq!(h.y[2], TimeBound::Exact(1));
        assert_eq!(h.y[1], TimeBound::Exact(3));
        assert_eq!(h.y[0], TimeBound::Exact(3));
        assert_eq!(h.t[2], TimeBound::Exact(5));
        assert_eq!(h.t[0], TimeBound::Exact(12));
        // monotone in the column index
        for x in 0..4 {
            assert!(h.y[x].lower_bound() >= h.y[x + 1].lower_bound());
            assert!(h.t[x].lower_bound() >= h.t[x + 1].lower_bound());
            assert!(h.t[x].lower_bound() >= h.y[x].lower_bound());
        }
    }

    #[test]
    fn censored_columns_carry_lower_bounds() {
        let trace = RouteTrace {
            m: 3,
            events: vec![(3, (4, 0)), (5, (2, 1))],
            censored: true,
            t_final: 20,
        };
        let h = hitting_times(&trace, 1);
        assert_eq!(h.y[1], TimeBound::AtLeast(2));
        assert_eq!(h.t[1], TimeBound::AtLeast(21));
        assert_eq!(h.y[0].at_least(2), Some(true));
        assert_eq!(h.y[0].at_least(3), None);
    }

    #[test]
    fn trajectory_m0_starts_at_origin() {
        let w = uniform_word(3, 10);
        let trace =
            trajectory_of_infinity(w.iter().copied(), 0, &StopCondition::column(0, 10)).unwrap();
        assert_eq!(trace.events, vec![(0, (0, 0))]);
        assert!(!trace.censored);
        let h = hitting_times(&trace, 0);
        assert_eq!(h.y[0], TimeBound::Exact(0));
        assert_eq!(h.t[0], TimeBound::Exact(0));
    }

    #[test]
    fn projective_samples() {
        let trace = RouteTrace {
            m: 2,
            events: vec![(2, (3, 0)), (4, (1, 1)), (7, (1, 2)), (9, (0, 3))],
            censored: false,
            t_final: 9,
        };
        // z large: row 0
        let s = projective_route(&trace, &[8.0, 4.0, 2.0, 1.0, 0.5]);
        assert_eq!(s[0], (8.0, Some(3))); // row 0
        assert_eq!(s[1], (4.0, Some(1))); // row 1
        assert_eq!(s[2], (2.0, Some(1))); // row 2
        assert_eq!(s[3], (1.0, Some(0))); // row 4 -> beyond, settled at 0
        // monotone in z
        let xs: Vec<usize> = s.iter().map(|p| p.1.unwrap()).collect();
        assert!(xs.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn bumping_tree_routes_do_not_cross() {
        for seed in 0..10 {
            let w = uniform_word(100 + seed, 40);
            let tree = bumping_tree(&w, 12).unwrap();
            assert_eq!(tree.len(), 13);
            // route m stays weakly left of route m' > m at equal times
            // (empirical observation, not a theorem; fails loudly if it stops
            // holding on these seeds)
            for m in 0..12usize {
                let (a, b) = (&tree[m], &tree[m + 1]);
                for t in (b.m)..=40 {
                    let pos = |tr: &RouteTrace| {
                        tr.events
                            .iter()
                            .rev()
                            .find(|&&(et, _)| et <= t)
                            .map(|&(_, (x, _))| x)
                    };
                    if let (Some(xa), Some(xb)) = (pos(a), pos(b)) {
                        assert!(xa <= xb, "seed {seed}, m {m}, t {t}");
                    }
                }
            }
        }
    }
}
