//! Difference sets D as first-class objects: gap enumeration up to a bound,
//! membership, and streaming enumeration of the k-term patterns inside [n].

use std::fs;
use std::path::Path;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::numerics::{seq_value, SeqId};

#[derive(Debug, Error)]
pub enum DiffSetError {
    #[error("difference set values must be positive")]
    NonPositiveValue,
    #[error("empty difference set")]
    Empty,
    #[error("bad line {line} in {path}: {msg}")]
    BadFile {
        path: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
enum Source {
    Seq(SeqId),
    Explicit(Vec<u64>),
}

/// A set of positive integer gaps; the defining sequence's duplicates and
/// zeros do not contribute (membership is a set notion).
#[derive(Debug, Clone)]
pub struct DiffSet {
    source: Source,
    label: String,
}

impl DiffSet {
    /// F = {1, 2, 3, 5, 8, 13, ...}
    pub fn fibonacci() -> Self {
        DiffSet {
            source: Source::Seq(SeqId::Fibonacci),
            label: "F".into(),
        }
    }

    /// G = {1, 4, 17, 72, ...}, the integer halves of even Fibonacci numbers.
    pub fn g_set() -> Self {
        DiffSet {
            source: Source::Seq(SeqId::G),
            label: "G".into(),
        }
    }

    /// L = {1, 2, 3, 4, 7, 11, ...}
    pub fn lucas() -> Self {
        DiffSet {
            source: Source::Seq(SeqId::Lucas),
            label: "L".into(),
        }
    }

    /// P = {2, 3, 5, 7, 10, 12, ...}, the distinct nonzero Perrin numbers.
    pub fn perrin() -> Self {
        DiffSet {
            source: Source::Seq(SeqId::Perrin),
            label: "P".into(),
        }
    }

    pub fn from_short_name(name: &str) -> Option<Self> {
        match name {
            "F" | "f" => Some(Self::fibonacci()),
            "G" | "g" => Some(Self::g_set()),
            "L" | "l" => Some(Self::lucas()),
            "P" | "p" => Some(Self::perrin()),
            _ => None,
        }
    }

    /// An explicit finite set; values are deduplicated and sorted.
    pub fn explicit(values: Vec<u64>) -> Result<Self, DiffSetError> {
        if values.is_empty() {
            return Err(DiffSetError::Empty);
        }
        if values.contains(&0) {
            return Err(DiffSetError::NonPositiveValue);
        }
        let mut values = values;
        values.sort_unstable();
        values.dedup();
        Ok(DiffSet {
            source: Source::Explicit(values),
            label: "custom".into(),
        })
    }

    /// Reads one positive integer per line; blank lines and `#` comments are
    /// skipped.
    pub fn from_file(path: &Path) -> Result<Self, DiffSetError> {
        let text = fs::read_to_string(path)?;
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: u64 = line.parse().map_err(|e| DiffSetError::BadFile {
                path: path.display().to_string(),
                line: i + 1,
                msg: format!("{e}"),
            })?;
            if v == 0 {
                return Err(DiffSetError::BadFile {
                    path: path.display().to_string(),
                    line: i + 1,
                    msg: "values must be positive".into(),
                });
            }
            values.push(v);
        }
        let mut set = Self::explicit(values)?;
        set.label = path.display().to_string();
        Ok(set)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// All members ≤ bound, ascending and duplicate-free.
    pub fn gaps_upto(&self, bound: u64) -> Vec<u64> {
        match &self.source {
            Source::Explicit(values) => values.iter().copied().take_while(|&v| v <= bound).collect(),
            Source::Seq(id) => {
                let mut out: Vec<u64> = Vec::new();
                let mut n = id.origin();
                // The sequences are nondecreasing after a short prefix; the
                // index guard covers Perrin's initial dip (3,0,2,3,2,5,...).
                loop {
                    let value = seq_value(*id, n).expect("index at or above origin");
                    match value.to_u64() {
                        Some(v) if v <= bound => {
                            if v > 0 {
                                out.push(v);
                            }
                        }
                        _ => {
                            if n > id.origin() + 12 {
                                break;
                            }
                        }
                    }
                    n += 1;
                }
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }

    pub fn contains(&self, v: u64) -> bool {
        if v == 0 {
            return false;
        }
        self.gaps_upto(v).binary_search(&v).is_ok()
    }
}

/// Streams every strictly increasing k-tuple in [n] whose consecutive
/// differences all lie in D, in lexicographic order on the tuple.
pub fn enumerate_diffseqs(d: &DiffSet, k: usize, n: u64) -> DiffseqIter {
    assert!(k >= 2 && n >= 1);
    let gaps = if n >= 2 { d.gaps_upto(n - 1) } else { Vec::new() };
    DiffseqIter {
        gaps,
        k,
        n,
        tuple: Vec::with_capacity(k),
        choices: Vec::with_capacity(k),
        next_start: 1,
        done: false,
    }
}

pub struct DiffseqIter {
    gaps: Vec<u64>,
    k: usize,
    n: u64,
    tuple: Vec<u64>,
    /// Gap index chosen to extend each prefix position.
    choices: Vec<usize>,
    next_start: u64,
    done: bool,
}

impl Iterator for DiffseqIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        loop {
            if self.tuple.is_empty() {
                if self.next_start > self.n {
                    self.done = true;
                    return None;
                }
                self.tuple.push(self.next_start);
                self.next_start += 1;
                self.choices.push(0);
                continue;
            }
            if self.tuple.len() == self.k {
                let item = self.tuple.clone();
                self.backtrack();
                return Some(item);
            }
            let last = *self.tuple.last().unwrap();
            let gi = *self.choices.last().unwrap();
            match self.gaps.get(gi) {
                Some(&g) if last + g <= self.n => {
                    // descend with this gap; the slot remembers it was used
                    *self.choices.last_mut().unwrap() = gi + 1;
                    self.tuple.push(last + g);
                    self.choices.push(0);
                }
                // gap choices exhausted at this level
                _ => self.backtrack(),
            }
        }
    }
}

impl DiffseqIter {
    /// Pops the current position; the parent's gap choice was already
    /// advanced when it descended, so iteration resumes with its sibling.
    fn backtrack(&mut self) {
        self.tuple.pop();
        self.choices.pop();
    }
}

/// Streams every (start, gap) with gap ∈ D and start + (k−1)·gap ≤ n,
/// ordered by start then gap.
pub fn enumerate_aps(d: &DiffSet, k: usize, n: u64) -> impl Iterator<Item = (u64, u64)> {
    assert!(k >= 2 && n >= 1);
    let gaps = if n >= 2 { d.gaps_upto(n - 1) } else { Vec::new() };
    let span = (k - 1) as u64;
    (1..=n).flat_map(move |a| {
        gaps.clone()
            .into_iter()
            .take_while(move |&g| a + span * g <= n)
            .map(move |g| (a, g))
    })
}

/// Expands an AP descriptor into its position tuple.
pub fn ap_positions(start: u64, gap: u64, k: usize) -> Vec<u64> {
    (0..k as u64).map(|i| start + i * gap).collect()
}
