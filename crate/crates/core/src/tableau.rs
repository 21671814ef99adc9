//! Young diagrams, ordered-entry tableaux, Schensted row insertion and the
//! RSK correspondence.

use crate::{Error, Result};
use std::cmp::Ordering;

/// A Young diagram: weakly decreasing row lengths, row 0 at the bottom.
/// Trailing zero rows are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    pub fn from_rows(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "row lengths not weakly decreasing: {rows:?}"
            )));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Length of row `y`; zero beyond the diagram.
    pub fn row_len(&self, y: usize) -> usize {
        self.rows.get(y).copied().unwrap_or(0)
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.row_len(y)
    }

    /// A box may be added at `(x, y)` keeping the diagram valid.
    pub fn is_outer_corner(&self, x: usize, y: usize) -> bool {
        x == self.row_len(y) && (y == 0 || self.row_len(y - 1) > x)
    }

    pub fn outer_corners(&self) -> Vec<(usize, usize)> {
        let mut corners = Vec::new();
        for y in 0..=self.rows.len() {
            let x = self.row_len(y);
            if self.is_outer_corner(x, y) {
                corners.push((x, y));
            }
        }
        corners
    }

    pub fn with_box(&self, x: usize, y: usize) -> Result<Self> {
        if !self.is_outer_corner(x, y) {
            return Err(Error::NotAnOuterCorner { x, y });
        }
        let mut rows = self.rows.clone();
        if y == rows.len() {
            rows.push(1);
        } else {
            rows[y] += 1;
        }
        Ok(YoungDiagram { rows })
    }

    /// The unique box of `other / self`, when `other` covers `self` by one box.
    pub fn diff_box(&self, other: &YoungDiagram) -> Option<(usize, usize)> {
        if other.boxes() != self.boxes() + 1 {
            return None;
        }
        let mut found = None;
        for y in 0..other.num_rows() {
            let (a, b) = (self.row_len(y), other.row_len(y));
            match b.checked_sub(a) {
                Some(0) => {}
                Some(1) => found = Some((a, y)),
                _ => return None,
            }
        }
        found.filter(|&(x, y)| self.is_outer_corner(x, y))
    }

    pub fn transpose(&self) -> YoungDiagram {
        let cols = self.row_len(0);
        let rows = (0..cols)
            .map(|x| self.rows.iter().take_while(|&&l| l > x).count())
            .collect();
        YoungDiagram { rows }
    }
}

/// A totally ordered tableau entry: a real value with a deterministic
/// tiebreak, the probe `level + 1/2`, or the sentinel `+inf`.
///
/// The tiebreak makes exact real collisions (possible with 64-bit uniforms)
/// deterministic instead of fatal, while keeping the continuous-distribution
/// semantics in which ties almost surely do not happen.
#[derive(Debug, Clone, Copy)]
pub enum Entry {
    Finite { value: f64, tiebreak: u64 },
    Probe(u64),
    PlusInfinity,
}

impl Entry {
    fn key(&self) -> (f64, u8, u64) {
        match *self {
            Entry::Finite { value, tiebreak } => (value, 0, tiebreak),
            Entry::Probe(level) => (level as f64 + 0.5, 1, 0),
            Entry::PlusInfinity => (f64::INFINITY, 2, 0),
        }
    }

    pub fn finite(value: f64, tiebreak: u64) -> Self {
        Entry::Finite { value, tiebreak }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Entry::PlusInfinity)
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        let (av, ar, at) = self.key();
        let (bv, br, bt) = other.key();
        av.total_cmp(&bv)
            .then(ar.cmp(&br))
            .then(at.cmp(&bt))
    }
}

/// Rows of strictly increasing entries, columns strictly increasing
/// bottom-to-top; the mutable object of Schensted insertion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InsertionTableau {
    rows: Vec<Vec<Entry>>,
}

impl InsertionTableau {
    pub fn empty() -> Self {
        InsertionTableau { rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let t = InsertionTableau { rows };
        t.validate()?;
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<Entry> {
        self.rows.get(y).and_then(|r| r.get(x)).copied()
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::from_rows(self.rows.iter().map(Vec::len).collect())
            .expect("tableau shape is always a valid diagram")
    }

    pub fn validate(&self) -> Result<()> {
        for (y, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidShape(format!("row {y} not increasing")));
            }
            if y > 0 {
                if row.len() > self.rows[y - 1].len() {
                    return Err(Error::InvalidShape(format!(
                        "row {y} longer than row {}",
                        y - 1
                    )));
                }
                for (x, e) in row.iter().enumerate() {
                    if *e <= self.rows[y - 1][x] {
                        return Err(Error::InvalidShape(format!(
                            "column {x} not increasing at row {y}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Schensted row insertion. Returns the bumping route: the boxes whose
    /// entries changed, one per visited row, ending at the newly created box.
    pub fn row_insert(&mut self, a: Entry) -> Result<Vec<(usize, usize)>> {
        let mut route = Vec::new();
        let mut v = a;
        let mut y = 0;
        loop {
            if y == self.rows.len() {
                self.rows.push(vec![v]);
                route.push((0, y));
                break;
            }
            let row = &mut self.rows[y];
            let idx = row.partition_point(|e| *e < v);
            if idx < row.len() && row[idx] == v {
                return Err(Error::DuplicateEntry);
            }
            if idx == row.len() {
                row.push(v);
                route.push((idx, y));
                break;
            }
            std::mem::swap(&mut row[idx], &mut v);
            route.push((idx, y));
            y += 1;
        }
        debug_assert!(self.locally_valid(&route));
        Ok(route)
    }

    /// Like `row_insert`, but only reports the newly created box.
    pub fn insert_new_box(&mut self, a: Entry) -> Result<(usize, usize)> {
        let route = self.row_insert(a)?;
        Ok(*route.last().expect("route is never empty"))
    }

    /// Check the changed boxes against their four neighbors (cheap enough to
    /// run after every insertion in debug builds).
    #[allow(dead_code)]
    fn locally_valid(&self, boxes: &[(usize, usize)]) -> bool {
        boxes.iter().all(|&(x, y)| {
            let e = match self.entry(x, y) {
                Some(e) => e,
                None => return false,
            };
            (x == 0 || self.entry(x - 1, y).is_some_and(|l| l < e))
                && self.entry(x + 1, y).is_none_or(|r| r > e)
                && (y == 0 || self.entry(x, y - 1).is_some_and(|d| d < e))
                && self.entry(x, y + 1).is_none_or(|u| u > e)
        })
    }

    pub fn transpose(&self) -> InsertionTableau {
        let cols = self.rows.first().map_or(0, Vec::len);
        let rows = (0..cols)
            .map(|x| {
                self.rows
                    .iter()
                    .map_while(|row| row.get(x).copied())
                    .collect()
            })
            .collect();
        InsertionTableau { rows }
    }

    /// Position of the unique `+inf` entry, if there is exactly one.
    pub fn infinity_position(&self) -> Result<(usize, usize)> {
        let mut found = Vec::new();
        for (y, row) in self.rows.iter().enumerate() {
            for (x, e) in row.iter().enumerate() {
                if e.is_infinite() {
                    found.push((x, y));
                }
            }
        }
        match found.as_slice() {
            [pos] => Ok(*pos),
            other => Err(Error::InfinityCount(other.len())),
        }
    }
}

/// A recording tableau: distinct positive integers increasing along rows and
/// columns (step indices of the RSK growth).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StandardTableau {
    rows: Vec<Vec<u64>>,
}

impl StandardTableau {
    pub fn empty() -> Self {
        StandardTableau { rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let t = StandardTableau { rows };
        t.to_insertion().validate()?;
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<u64> {
        self.rows.get(y).and_then(|r| r.get(x)).copied()
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::from_rows(self.rows.iter().map(Vec::len).collect())
            .expect("tableau shape is always a valid diagram")
    }

    fn place(&mut self, x: usize, y: usize, t: u64) {
        if y == self.rows.len() {
            self.rows.push(Vec::new());
        }
        debug_assert_eq!(x, self.rows[y].len());
        let _ = x;
        self.rows[y].push(t);
    }

    /// Keep only the boxes with entries `<= t`. Entries of a standard tableau
    /// increase along rows and columns, so this is a prefix of every row.
    pub fn restrict_leq(&self, t: u64) -> StandardTableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let k = row.partition_point(|&e| e <= t);
                row[..k].to_vec()
            })
            .take_while(|row: &Vec<u64>| !row.is_empty())
            .collect();
        StandardTableau { rows }
    }

    /// View the step indices as ordered entries, e.g. to bump a probe
    /// through the recording tableau.
    pub fn to_insertion(&self) -> InsertionTableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| Entry::finite(e as f64, 0))
                    .collect()
            })
            .collect();
        InsertionTableau { rows }
    }

    pub fn transpose(&self) -> StandardTableau {
        let cols = self.rows.first().map_or(0, Vec::len);
        let rows = (0..cols)
            .map(|x| {
                self.rows
                    .iter()
                    .map_while(|row| row.get(x).copied())
                    .collect()
            })
            .collect();
        StandardTableau { rows }
    }
}

/// The RSK correspondence: iterated row insertion building the insertion
/// tableau `P` while the recording tableau `Q` remembers, for every box, the
/// step at which it stopped being empty.
pub fn rsk(w: &[Entry]) -> Result<(InsertionTableau, StandardTableau)> {
    let mut p = InsertionTableau::empty();
    let mut q = StandardTableau::empty();
    for (i, &a) in w.iter().enumerate() {
        let (x, y) = p.insert_new_box(a)?;
        q.place(x, y, i as u64 + 1);
    }
    Ok((p, q))
}

pub fn rsk_shape(w: &[Entry]) -> Result<YoungDiagram> {
    Ok(rsk(w)?.0.shape())
}

/// `P(sigma) = Q(sigma^{-1})` for every permutation. `sigma` is given in
/// one-line notation with values `1..=n`.
pub fn schuetzenberger_check(sigma: &[u64]) -> Result<bool> {
    let n = sigma.len() as u64;
    let mut inverse = vec![0u64; sigma.len()];
    let mut seen = vec![false; sigma.len()];
    for (i, &v) in sigma.iter().enumerate() {
        if v == 0 || v > n || seen[v as usize - 1] {
            return Err(Error::InvalidArgument(format!(
                "not a permutation of 1..={n}: {sigma:?}"
            )));
        }
        seen[v as usize - 1] = true;
        inverse[v as usize - 1] = i as u64 + 1;
    }
    let w: Vec<Entry> = sigma.iter().map(|&v| Entry::finite(v as f64, 0)).collect();
    let wi: Vec<Entry> = inverse.iter().map(|&v| Entry::finite(v as f64, 0)).collect();
    let (p, _) = rsk(&w)?;
    let (_, q) = rsk(&wi)?;
    Ok(p == q.to_insertion())
}
