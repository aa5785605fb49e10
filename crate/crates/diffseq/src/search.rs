//! Complete backtracking computation of the small exact numbers, plus the
//! greedy lower-bound construction.
//!
//! The DFS assigns positions in ascending order and colors in ascending
//! order, with an incremental chain-length table so that completing a
//! forbidden k-term pattern is detected in O(|gaps|) per trial color.

use serde::Serialize;
use thiserror::Error;

use crate::colorings::Coloring;
use crate::detect::{self, PatternKind};
use crate::diffsets::DiffSet;

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// Restrict color choices to at most one more than the largest color
    /// used so far. Sound for existence questions (any avoiding coloring
    /// relabels to such a form) and prunes the r! label symmetry; off by
    /// default, where only color(1) = 1 is fixed.
    pub canonical_colors: bool,
    /// First n to test; defaults to k.
    pub start: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    /// The least n ≤ n_cap such that no avoiding r-coloring of [n] exists,
    /// with an avoiding witness for n − 1 when one was computed.
    Value {
        value: u64,
        witness_below: Option<Coloring>,
    },
    /// Every tested n up to the cap still admits an avoiding coloring.
    ExceedsCap { cap: u64, witness: Coloring },
}

/// Incremental forbidden-pattern state for the DFS. Entries at a position
/// are rewritten on every assignment and only read for assigned prefixes,
/// so unassignment never needs to restore them.
enum PatternState {
    Diffseq {
        /// chain[p] = length of the longest monochromatic chain ending at p.
        chain: Vec<u32>,
        gaps: Vec<usize>,
    },
    Ap {
        /// runs[p][gi] = length of the monochromatic AP with gap gaps[gi]
        /// ending at p.
        runs: Vec<Vec<u16>>,
        gaps: Vec<usize>,
    },
}

impl PatternState {
    fn new(d: &DiffSet, mode: PatternKind, n: usize) -> Self {
        let gaps: Vec<usize> = if n >= 2 {
            d.gaps_upto(n as u64 - 1).into_iter().map(|g| g as usize).collect()
        } else {
            Vec::new()
        };
        match mode {
            PatternKind::Diffseq => PatternState::Diffseq {
                chain: vec![0; n + 1],
                gaps,
            },
            PatternKind::Ap => PatternState::Ap {
                runs: vec![Vec::new(); n + 1],
                gaps,
            },
        }
    }

    /// Assigns color c at position p if that does not complete a k-term
    /// pattern; returns whether the assignment was made.
    fn try_assign(&mut self, colors: &[u32], p: usize, c: u32, k: usize) -> bool {
        match self {
            PatternState::Diffseq { chain, gaps } => {
                let mut len = 1u32;
                for &g in gaps.iter() {
                    if g >= p {
                        break;
                    }
                    let q = p - g;
                    if colors[q] == c && chain[q] + 1 > len {
                        len = chain[q] + 1;
                    }
                }
                if len >= k as u32 {
                    return false;
                }
                chain[p] = len;
                true
            }
            PatternState::Ap { runs, gaps } => {
                let mut row = std::mem::take(&mut runs[p]);
                row.clear();
                let mut ok = true;
                for &g in gaps.iter() {
                    let len = if g < p && colors[p - g] == c {
                        runs[p - g].get(row.len()).copied().unwrap_or(1) + 1
                    } else {
                        1
                    };
                    if len >= k as u16 {
                        ok = false;
                    }
                    row.push(len);
                }
                runs[p] = row;
                ok
            }
        }
    }
}

/// Looks for an r-coloring of [n] with no monochromatic k-term pattern;
/// returns the DFS-first witness if one exists, None after exhausting the
/// tree otherwise.
pub fn find_avoiding(
    d: &DiffSet,
    k: usize,
    r: u32,
    mode: PatternKind,
    n: u64,
    opts: SearchOptions,
) -> Option<Coloring> {
    assert!(k >= 2 && r >= 1 && n >= 1);
    let n = n as usize;
    let mut state = PatternState::new(d, mode, n);
    let mut colors = vec![0u32; n + 1];
    if dfs(&mut state, &mut colors, 1, 0, n, k, r, opts.canonical_colors) {
        let assignment = colors[1..].to_vec();
        let c = Coloring::new(r, assignment).expect("DFS assigns colors in range");
        debug_assert!(detect::find_mono(&c, d, k, mode).is_none());
        Some(c)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    state: &mut PatternState,
    colors: &mut Vec<u32>,
    p: usize,
    max_used: u32,
    n: usize,
    k: usize,
    r: u32,
    canonical: bool,
) -> bool {
    if p > n {
        return true;
    }
    let cmax = if canonical {
        r.min(max_used + 1)
    } else if p == 1 {
        1 // fixing color(1) = 1 loses no colorings
    } else {
        r
    };
    for c in 1..=cmax {
        if state.try_assign(colors, p, c, k) {
            colors[p] = c;
            if dfs(state, colors, p + 1, max_used.max(c), n, k, r, canonical) {
                return true;
            }
            colors[p] = 0;
        }
    }
    false
}

/// Tries to extend an avoiding coloring of [n−1] by one position, first
/// feasible color. Cheap fast path for the linear ascent.
fn extend_by_one(
    d: &DiffSet,
    k: usize,
    r: u32,
    mode: PatternKind,
    witness: &Coloring,
) -> Option<Coloring> {
    let n = witness.n() + 1;
    let mut state = PatternState::new(d, mode, n);
    let mut colors = vec![0u32; n + 1];
    for p in 1..n {
        let c = witness.color(p);
        if !state.try_assign(&colors, p, c, k) {
            return None; // witness is not actually avoiding; caller bug
        }
        colors[p] = c;
    }
    for c in 1..=r {
        if state.try_assign(&colors, n, c, k) {
            colors[n] = c;
            return Some(Coloring::new(r, colors[1..].to_vec()).unwrap());
        }
    }
    None
}

/// The least n ≤ n_cap such that every r-coloring of [n] contains a
/// monochromatic k-term pattern, by complete DFS per n, ascending.
///
/// Absence is monotone in n (restriction of an avoiding coloring is
/// avoiding), so the first unsolvable n is the number.
pub fn exact_number(
    d: &DiffSet,
    k: usize,
    r: u32,
    mode: PatternKind,
    n_cap: u64,
    opts: SearchOptions,
) -> ExactOutcome {
    assert!(n_cap >= 1);
    let start = opts.start.unwrap_or(k as u64).max(1);
    assert!(start <= n_cap, "start {start} exceeds cap {n_cap}");
    let mut witness: Option<Coloring> = None;
    for n in start..=n_cap {
        let found = match &witness {
            Some(w) => extend_by_one(d, k, r, mode, w)
                .or_else(|| find_avoiding(d, k, r, mode, n, opts)),
            None => find_avoiding(d, k, r, mode, n, opts),
        };
        match found {
            Some(w) => witness = Some(w),
            None => {
                return ExactOutcome::Value {
                    value: n,
                    witness_below: witness,
                }
            }
        }
    }
    ExactOutcome::ExceedsCap {
        cap: n_cap,
        witness: witness.unwrap_or_else(|| {
            find_avoiding(d, k, r, mode, n_cap, opts).expect("cap below start implies trivial witness")
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GreedyPolicy {
    /// Lowest color that does not complete a forbidden pattern; stop at the
    /// first position where none exists.
    FirstFit,
    /// First-fit, but on a stuck position backtrack up to `window`
    /// positions below the deepest point reached and retry other colors.
    BoundedBacktrack { window: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    Complete(Coloring),
    /// Deepest position for which no color could be made to work.
    Stuck { position: u64 },
}

/// Position-by-position greedy construction of an avoiding coloring of [n].
pub fn greedy_color(
    d: &DiffSet,
    k: usize,
    r: u32,
    mode: PatternKind,
    n: u64,
    policy: GreedyPolicy,
) -> GreedyOutcome {
    assert!(k >= 2 && r >= 1 && n >= 1);
    let n = n as usize;
    let window = match policy {
        GreedyPolicy::FirstFit => 0usize,
        GreedyPolicy::BoundedBacktrack { window } => window as usize,
    };
    let mut state = PatternState::new(d, mode, n);
    let mut colors = vec![0u32; n + 1];
    // next_color[p]: the next color to try when (re)visiting p
    let mut next_color = vec![1u32; n + 1];
    let mut p = 1usize;
    let mut deepest = 1usize;
    loop {
        if p > n {
            return GreedyOutcome::Complete(
                Coloring::new(r, colors[1..].to_vec()).expect("colors in range"),
            );
        }
        deepest = deepest.max(p);
        let mut assigned = false;
        for c in next_color[p]..=r {
            if state.try_assign(&colors, p, c, k) {
                colors[p] = c;
                next_color[p] = c + 1;
                assigned = true;
                break;
            }
        }
        if assigned {
            p += 1;
            continue;
        }
        next_color[p] = 1;
        colors[p] = 0;
        // floor of the backtrack window, measured from the deepest position
        let floor = deepest.saturating_sub(window).max(1);
        if p <= floor {
            return GreedyOutcome::Stuck {
                position: deepest as u64,
            };
        }
        p -= 1;
        colors[p] = 0;
    }
}

#[derive(Debug, Error)]
#[error("witness of [{n}] contains a monochromatic pattern: {witness:?}")]
pub struct RejectedWitness {
    pub n: u64,
    pub witness: detect::Witness,
}

/// Certifies w.n as a strict lower bound: the Ramsey number for
/// (D, k, r = w.r, mode) exceeds w.n because w avoids the pattern.
pub fn lower_bound_from_witness(
    w: &Coloring,
    d: &DiffSet,
    k: usize,
    mode: PatternKind,
) -> Result<u64, RejectedWitness> {
    match detect::find_mono(w, d, k, mode) {
        None => Ok(w.n() as u64),
        Some(witness) => Err(RejectedWitness {
            n: w.n() as u64,
            witness,
        }),
    }
}
