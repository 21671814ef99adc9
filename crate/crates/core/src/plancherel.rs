//! Seeded uniform streams, the Plancherel growth process with growth-row
//! tracing, and the augmented growth process as a simulable Markov chain.
//!
//! The hot loops work on packed `u128` keys (value bits plus a tiebreak
//! counter) instead of `Entry` values, and the augmented simulation maintains
//! the *transposed* insertion tableau truncated to the columns the tracked
//! box can still interact with. Growth positions transpose along with the
//! tableau, so the event stream is exactly the one the direct simulation
//! would produce, at a small fraction of the cost once the tracked box sits
//! in a low column.

use crate::bumping::{RouteTrace, StopCondition};
use crate::tableau::{Entry, YoungDiagram};
use crate::{Error, Result};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reproducible stream of uniform entries: entry `i` of trial `j` is a pure
/// function of `(master_seed, j, i)`, independent of scheduling.
pub struct SeededStream {
    pub master_seed: u64,
    pub trial_index: u64,
    counter: u64,
    rng: ChaCha8Rng,
}

impl SeededStream {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(trial_index);
        SeededStream {
            master_seed,
            trial_index,
            counter: 0,
            rng,
        }
    }

    pub fn next_uniform(&mut self) -> (f64, u64) {
        let value = self.rng.random::<f64>();
        let tiebreak = self.counter;
        self.counter += 1;
        (value, tiebreak)
    }

    pub fn next_entry(&mut self) -> Entry {
        let (value, tiebreak) = self.next_uniform();
        Entry::Finite { value, tiebreak }
    }
}

impl Iterator for SeededStream {
    type Item = Entry;

    fn next(&mut self) -> Option<Entry> {
        Some(self.next_entry())
    }
}

/// Packed insertion key: ascending order of `(value, tiebreak)`.
/// Values must be non-negative finite reals.
#[inline]
fn key_ascending(value: f64, tiebreak: u64) -> u128 {
    debug_assert!(value >= 0.0 && value.is_finite());
    ((value.to_bits() as u128) << 64) | tiebreak as u128
}

/// Packed key for the transposed tableau: ascending order of the key is the
/// exact reversal of the `(value, tiebreak)` order.
#[inline]
fn key_descending(value: f64, tiebreak: u64) -> u128 {
    debug_assert!(value >= 0.0 && value.is_finite());
    (((!value.to_bits()) as u128) << 64) | (!tiebreak) as u128
}

/// Insert `v` by bumping through `rows[0..=limit]`. Returns the row of the
/// newly created box, or `None` when the bumping chain left the maintained
/// range (rows above `limit` are not stored; values bumped out of range only
/// ever influence rows that are out of range too).
#[inline]
fn insert_chain(rows: &mut Vec<Vec<u128>>, mut v: u128, limit: usize) -> Option<usize> {
    let mut r = 0;
    loop {
        if r > limit {
            return None;
        }
        if r == rows.len() {
            rows.push(vec![v]);
            return Some(r);
        }
        let row = &mut rows[r];
        let idx = row.partition_point(|&e| e < v);
        if idx == row.len() {
            row.push(v);
            return Some(r);
        }
        std::mem::swap(&mut row[idx], &mut v);
        r += 1;
    }
}

/// Row indices of new boxes in a window of the growth, reduced to the
/// alphabet `{0..k, infinity}` (`None` encodes "above the cutoff").
#[derive(Debug, Clone)]
pub struct GrowthRowTrace {
    pub cutoff: usize,
    /// Steps `window.0 + 1 ..= window.1` are recorded.
    pub window: (u64, u64),
    pub rows: Vec<Option<usize>>,
}

/// Run the Plancherel growth process for `n` steps. With `trace` set to
/// `(cutoff, (from, to))`, the rows of the new boxes at steps in
/// `(from, to]` are recorded.
pub fn plancherel_growth(
    n: u64,
    stream: &mut SeededStream,
    trace: Option<(usize, (u64, u64))>,
) -> (YoungDiagram, Option<GrowthRowTrace>) {
    let mut rows: Vec<Vec<u128>> = Vec::new();
    let mut recorded = trace.map(|(cutoff, window)| GrowthRowTrace {
        cutoff,
        window,
        rows: Vec::new(),
    });
    for t in 1..=n {
        let (value, tiebreak) = stream.next_uniform();
        let r = insert_chain(&mut rows, key_ascending(value, tiebreak), usize::MAX)
            .expect("unlimited chain always terminates");
        if let Some(rec) = recorded.as_mut() {
            if t > rec.window.0 && t <= rec.window.1 {
                rec.rows.push((r <= rec.cutoff).then_some(r));
            }
        }
    }
    let shape = YoungDiagram::from_rows(rows.iter().map(Vec::len).collect())
        .expect("insertion shapes are valid diagrams");
    (shape, recorded)
}

/// A Plancherel-distributed diagram with `n` boxes.
pub fn plancherel_sample(n: u64, stream: &mut SeededStream) -> YoungDiagram {
    plancherel_growth(n, stream, None).0
}

/// Special-box coordinates observed at a requested time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub t: u64,
    pub x: usize,
    pub y: usize,
}

/// The augmented Plancherel growth process initiated at time `m`, over an
/// explicit entry sequence: insert the first `m` entries, place the special
/// box at the end of the bottom row, then keep inserting while tracking the
/// box. Events and checkpoints match `bumping::trajectory_of_infinity` on the
/// same entries exactly; this implementation runs on the transposed tableau
/// truncated to the tracked columns, which is what makes large `t_max`
/// hitting-time runs affordable.
///
/// `t_checkpoints` must be sorted; each requested time `>= m` gets the
/// coordinates in force once step `t` has been applied.
pub fn augmented_growth_over<I>(
    entries: I,
    m: u64,
    stop: &StopCondition,
    t_checkpoints: &[u64],
) -> Result<(RouteTrace, Vec<Checkpoint>)>
where
    I: IntoIterator<Item = (f64, u64)>,
{
    if stop.t_max < m {
        return Err(Error::InvalidArgument("t_max must be >= m".into()));
    }
    let mut entries = entries.into_iter();
    // transposed tableau: rows here are the columns of the direct tableau
    let mut cols: Vec<Vec<u128>> = Vec::new();
    for _ in 0..m {
        let (value, tiebreak) = entries.next().ok_or_else(|| {
            Error::InvalidArgument("stream shorter than the initiation time m".into())
        })?;
        insert_chain(&mut cols, key_descending(value, tiebreak), usize::MAX);
    }
    // bottom-row outer corner: the number of non-empty columns
    let mut x = cols.len();
    let mut y = 0usize;
    let mut events = vec![(m, (x, y))];
    let mut checkpoints = Vec::with_capacity(t_checkpoints.len());
    let mut next_cp = t_checkpoints.iter().copied().peekable();
    let mut t = m;
    while next_cp.peek().is_some_and(|&c| c <= t) {
        checkpoints.push(Checkpoint {
            t: next_cp.next().unwrap(),
            x,
            y,
        });
    }
    while t < stop.t_max && !stop_met(stop, x, y) {
        let Some((value, tiebreak)) = entries.next() else {
            break;
        };
        t += 1;
        // growth in column `x` of the direct tableau is growth of (transposed)
        // row `x`, and that is precisely a new box on top of the special box
        if insert_chain(&mut cols, key_descending(value, tiebreak), x) == Some(x) {
            y += 1;
            // the escaped box lands at the end of the row above: its column is
            // the number of direct columns strictly taller than y, all of
            // which are maintained (column heights decrease left to right)
            let mut nx = 0;
            while nx < cols.len() && cols[nx].len() > y {
                nx += 1;
            }
            x = nx;
            cols.truncate(x + 1);
            events.push((t, (x, y)));
        }
        while next_cp.peek().is_some_and(|&c| c <= t) {
            checkpoints.push(Checkpoint {
                t: next_cp.next().unwrap(),
                x,
                y,
            });
        }
    }
    let trace = RouteTrace {
        m,
        censored: stop_censors(stop, x, y),
        events,
        t_final: t,
    };
    Ok((trace, checkpoints))
}

fn stop_met(stop: &StopCondition, x: usize, y: usize) -> bool {
    stop.target_column.is_some_and(|c| x <= c) || stop.row_cap.is_some_and(|r| y >= r)
}

fn stop_censors(stop: &StopCondition, x: usize, y: usize) -> bool {
    (stop.target_column.is_some() || stop.row_cap.is_some()) && !stop_met(stop, x, y)
}

/// `augmented_growth_over` fed by a seeded stream.
pub fn augmented_growth(
    m: u64,
    stream: &mut SeededStream,
    stop: &StopCondition,
    t_checkpoints: &[u64],
) -> (RouteTrace, Vec<Checkpoint>) {
    augmented_growth_over(
        std::iter::from_fn(|| Some(stream.next_uniform())),
        m,
        stop,
        t_checkpoints,
    )
    .expect("infinite stream, validated stop")
}

/// Fill times of the first `x_max + 1` columns: `fill[x][y]` is the step at
/// which box `(x, y)` was created, for every box created by `t_max` in the
/// maintained columns. Runs on the transposed truncated tableau.
pub fn column_fill_times(
    x_max: usize,
    t_max: u64,
    stream: &mut SeededStream,
) -> Vec<Vec<u64>> {
    let mut cols: Vec<Vec<u128>> = Vec::new();
    let mut fill: Vec<Vec<u64>> = vec![Vec::new(); x_max + 1];
    for t in 1..=t_max {
        let (value, tiebreak) = stream.next_uniform();
        if let Some(r) = insert_chain(&mut cols, key_descending(value, tiebreak), x_max) {
            fill[r].push(t);
        }
    }
    fill
}
