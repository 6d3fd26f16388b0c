//! Integer patterns realizing the Kirillov-Reshetikhin crystal `B^{r,s}` of
//! type `A_n^{(1)}`.
//!
//! A pattern is a grid `a_{p,q}` with columns `p = 1..=r` and rows
//! `q = r..=n`. It belongs to the polytope when every monotone staircase from
//! the cell `(1, r)` to the cell `(r, n)` (each step increases `p` or `q` by
//! one) has entry sum at most `s`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap used by [`enumerate_crystal`].
pub const DEFAULT_SIZE_LIMIT: usize = 2_000_000;

/// Rank `n`, classical node `r` and level `s` of `B^{r,s}` over `A_n^{(1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KRParams {
    n: usize,
    r: usize,
    s: u32,
}

impl KRParams {
    pub fn new(n: usize, r: usize, s: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("rank n must be at least 1".into()));
        }
        if r == 0 || r > n {
            return Err(Error::InvalidParams(format!(
                "node r = {r} must satisfy 1 <= r <= n = {n}"
            )));
        }
        if s == 0 {
            return Err(Error::InvalidParams("level s must be at least 1".into()));
        }
        Ok(Self { n, r, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Number of grid columns (`r`).
    pub fn cols(&self) -> usize {
        self.r
    }

    /// Number of grid rows (`n - r + 1`).
    pub fn rows(&self) -> usize {
        self.n - self.r + 1
    }

    pub fn cells(&self) -> usize {
        self.rows() * self.cols()
    }

    /// Same rank and node, different level.
    pub fn with_level(&self, s: u32) -> Result<Self> {
        Self::new(self.n, self.r, s)
    }
}

impl fmt::Display for KRParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B^{{{},{}}} (n={})", self.r, self.s, self.n)
    }
}

/// A validated element of `B^{r,s}`.
///
/// Entries are stored row-major: row `q = r..=n` top to bottom, column
/// `p = 1..=r` left to right. The derived ordering compares parameters first
/// and then the flattened entries lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KRPattern {
    params: KRParams,
    cells: Vec<u32>,
}

impl KRPattern {
    /// The pattern with all entries zero: the classical highest weight element.
    pub fn zero(params: KRParams) -> Self {
        Self {
            params,
            cells: vec![0; params.cells()],
        }
    }

    /// Builds a pattern from row-major cells and checks the polytope constraint.
    pub fn from_cells(params: KRParams, cells: Vec<u32>) -> Result<Self> {
        if cells.len() != params.cells() {
            return Err(Error::DimensionMismatch {
                expected_rows: params.rows(),
                expected_cols: params.cols(),
                found: format!("{} cells", cells.len()),
            });
        }
        let pattern = Self { params, cells };
        pattern.check_polytope()?;
        Ok(pattern)
    }

    pub(crate) fn from_cells_unchecked(params: KRParams, cells: Vec<u32>) -> Self {
        debug_assert_eq!(cells.len(), params.cells());
        Self { params, cells }
    }

    pub fn params(&self) -> KRParams {
        self.params
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    fn index(&self, p: usize, q: usize) -> usize {
        let KRParams { n, r, .. } = self.params;
        assert!(
            (1..=r).contains(&p) && (r..=n).contains(&q),
            "cell (p={p}, q={q}) outside the {r}x{} grid",
            n - r + 1
        );
        (q - r) * r + (p - 1)
    }

    /// Entry `a_{p,q}`. Panics outside `1 <= p <= r <= q <= n`.
    pub fn get(&self, p: usize, q: usize) -> u32 {
        self.cells[self.index(p, q)]
    }

    /// Entry `a_{p,q}`, or zero for cells outside the grid.
    pub fn get_or_zero(&self, p: usize, q: usize) -> u32 {
        let KRParams { n, r, .. } = self.params;
        if (1..=r).contains(&p) && (r..=n).contains(&q) {
            self.get(p, q)
        } else {
            0
        }
    }

    pub(crate) fn add(&mut self, p: usize, q: usize, delta: i64) {
        let idx = self.index(p, q);
        let value = i64::from(self.cells[idx]) + delta;
        self.cells[idx] = u32::try_from(value).expect("pattern entry went negative");
    }

    /// Rows `q = r..=n`, each listing `a_{1,q}, ..., a_{r,q}`.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.params.cols()).map(<[u32]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&a| a == 0)
    }

    pub fn entry_sum(&self) -> u64 {
        self.cells.iter().map(|&a| u64::from(a)).sum()
    }

    /// Largest staircase sum together with one staircase attaining it.
    pub fn max_staircase(&self) -> (u64, Vec<(usize, usize)>) {
        max_staircase(self.params, &self.cells)
    }

    fn check_polytope(&self) -> Result<()> {
        let (sum, witness) = self.max_staircase();
        if sum > u64::from(self.params.s) {
            return Err(Error::PathSumExceeded {
                sum,
                bound: self.params.s,
                witness,
            });
        }
        Ok(())
    }
}

impl fmt::Display for KRPattern {
    /// Rows separated by `/`, entries by `,`; a 1x1 pattern prints as its entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Max-path dynamic program over the grid. Cell `(p, q)` is reached from
/// `(p - 1, q)` or `(p, q - 1)`.
fn max_staircase(params: KRParams, cells: &[u32]) -> (u64, Vec<(usize, usize)>) {
    let (rows, cols) = (params.rows(), params.cols());
    let mut best = vec![0u64; rows * cols];
    for row in 0..rows {
        for col in 0..cols {
            let up = (row > 0).then(|| best[(row - 1) * cols + col]);
            let left = (col > 0).then(|| best[row * cols + col - 1]);
            let prev = up.into_iter().chain(left).max().unwrap_or(0);
            best[row * cols + col] = prev + u64::from(cells[row * cols + col]);
        }
    }

    let mut path = Vec::with_capacity(rows + cols - 1);
    let (mut row, mut col) = (rows - 1, cols - 1);
    loop {
        path.push((col + 1, row + params.r()));
        if row == 0 && col == 0 {
            break;
        }
        let up = (row > 0).then(|| best[(row - 1) * cols + col]);
        let left = (col > 0).then(|| best[row * cols + col - 1]);
        match (up, left) {
            (Some(u), Some(l)) if l > u => col -= 1,
            (Some(_), _) => row -= 1,
            (None, _) => col -= 1,
        }
    }
    path.reverse();
    (best[rows * cols - 1], path)
}

/// Checks a raw grid, indexed `rows[q - r][p - 1] = a_{p,q}`, against the
/// polytope constraint of `params`.
pub fn validate_pattern(rows: &[Vec<i64>], params: KRParams) -> Result<KRPattern> {
    let shape_ok = rows.len() == params.rows() && rows.iter().all(|row| row.len() == params.cols());
    if !shape_ok {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(Error::DimensionMismatch {
            expected_rows: params.rows(),
            expected_cols: params.cols(),
            found: format!("{} rows with lengths {:?}", rows.len(), lens),
        });
    }
    let mut cells = Vec::with_capacity(params.cells());
    for (i, row) in rows.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            let value = u32::try_from(value).map_err(|_| Error::NegativeEntry {
                p: j + 1,
                q: i + params.r(),
                value,
            })?;
            cells.push(value);
        }
    }
    KRPattern::from_cells(params, cells)
}

/// All elements of `B^{r,s}` in lexicographic order of their flattened
/// entries, capped at [`DEFAULT_SIZE_LIMIT`].
pub fn enumerate_crystal(params: KRParams) -> Result<Vec<KRPattern>> {
    enumerate_crystal_capped(params, DEFAULT_SIZE_LIMIT)
}

pub fn enumerate_crystal_capped(params: KRParams, limit: usize) -> Result<Vec<KRPattern>> {
    let (rows, cols) = (params.rows(), params.cols());
    let mut out = Vec::new();
    let mut cells = vec![0u32; rows * cols];
    // best[i] is the max staircase sum ending at cell i; every prefix of a
    // staircase is bounded by the full one, so bounding each cell is enough.
    let mut best = vec![0u64; rows * cols];

    fn fill(
        i: usize,
        params: KRParams,
        cells: &mut Vec<u32>,
        best: &mut Vec<u64>,
        out: &mut Vec<KRPattern>,
        limit: usize,
    ) -> Result<()> {
        let cols = params.cols();
        if i == cells.len() {
            if out.len() == limit {
                return Err(Error::SizeLimitExceeded { limit });
            }
            out.push(KRPattern::from_cells_unchecked(params, cells.clone()));
            return Ok(());
        }
        let (row, col) = (i / cols, i % cols);
        let up = if row > 0 { best[i - cols] } else { 0 };
        let left = if col > 0 { best[i - 1] } else { 0 };
        let prev = up.max(left);
        let room = u64::from(params.s()) - prev;
        for value in 0..=room {
            cells[i] = value as u32;
            best[i] = prev + value;
            fill(i + 1, params, cells, best, out, limit)?;
        }
        cells[i] = 0;
        Ok(())
    }

    fill(0, params, &mut cells, &mut best, &mut out, limit)?;
    Ok(out)
}

/// JSON form: `{"n":..,"r":..,"s":..,"rows":[[..],..]}` with
/// `rows[q - r][p - 1] = a_{p,q}`.
#[derive(Serialize, Deserialize)]
struct PatternJson {
    n: usize,
    r: usize,
    s: u32,
    rows: Vec<Vec<i64>>,
}

impl Serialize for KRPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PatternJson {
            n: self.params.n,
            r: self.params.r,
            s: self.params.s,
            rows: self
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(i64::from).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KRPattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PatternJson::deserialize(deserializer)?;
        let params = KRParams::new(raw.n, raw.r, raw.s).map_err(serde::de::Error::custom)?;
        validate_pattern(&raw.rows, params).map_err(serde::de::Error::custom)
    }
}
