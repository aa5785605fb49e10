//! Detection of monochromatic k-term D-diffsequences and of monochromatic
//! k-term arithmetic progressions with gap in D.
//!
//! Absence answers are exhaustive: a dynamic-programming scan over chain
//! lengths covers every candidate pattern, in O(n · |gaps ≤ n|) per word
//! scan, which keeps million-position certifications in seconds.

use serde::{Deserialize, Serialize};

use crate::colorings::Coloring;
use crate::diffsets::DiffSet;

/// Which pattern family an operation concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Diffseq,
    Ap,
}

impl PatternKind {
    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Diffseq => "diffseq",
            PatternKind::Ap => "ap",
        }
    }
}

impl std::str::FromStr for PatternKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "diffseq" => Ok(PatternKind::Diffseq),
            "ap" => Ok(PatternKind::Ap),
            other => Err(format!("unknown mode {other:?} (expected diffseq or ap)")),
        }
    }
}

/// A monochromatic pattern exhibited inside a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: PatternKind,
    pub color: u32,
    pub positions: Vec<u64>,
    pub gaps: Vec<u64>,
}

impl Witness {
    fn from_positions(kind: PatternKind, color: u32, positions: Vec<u64>) -> Self {
        let gaps = positions.windows(2).map(|w| w[1] - w[0]).collect();
        Witness {
            kind,
            color,
            positions,
            gaps,
        }
    }
}

/// Lexicographically first monochromatic k-term D-diffsequence, or None if
/// the scan proves there is none.
pub fn find_mono_diffseq(c: &Coloring, d: &DiffSet, k: usize) -> Option<Witness> {
    assert!(k >= 2);
    let n = c.n();
    if n < k {
        return None;
    }
    let gaps: Vec<usize> = d
        .gaps_upto(n as u64 - 1)
        .into_iter()
        .map(|g| g as usize)
        .collect();
    if gaps.is_empty() {
        return None;
    }
    // fwd[p] = longest monochromatic chain starting at p (1-based).
    let mut fwd = vec![1u32; n + 1];
    for p in (1..n).rev() {
        let cp = c.color(p);
        let mut best = 1u32;
        for &g in &gaps {
            let q = p + g;
            if q > n {
                break;
            }
            if c.color(q) == cp && fwd[q] + 1 > best {
                best = fwd[q] + 1;
            }
        }
        fwd[p] = best;
    }
    let start = (1..=n).find(|&p| fwd[p] >= k as u32)?;
    // Greedy reconstruction of the lexicographically first witness.
    let mut positions = vec![start as u64];
    let mut cur = start;
    let color = c.color(start);
    for remaining in (1..k).rev() {
        let next = gaps
            .iter()
            .map(|&g| cur + g)
            .find(|&q| q <= n && c.color(q) == color && fwd[q] >= remaining as u32)
            .expect("fwd chain length guarantees a continuation");
        positions.push(next as u64);
        cur = next;
    }
    Some(Witness::from_positions(PatternKind::Diffseq, color, positions))
}

/// Lexicographically first monochromatic k-term AP with gap in D, or None.
pub fn find_mono_ap(c: &Coloring, d: &DiffSet, k: usize) -> Option<Witness> {
    find_mono_ap_impl(c, d, k, None)
}

/// Same scan restricted to a single color class.
pub fn find_mono_ap_in_color(c: &Coloring, d: &DiffSet, k: usize, color: u32) -> Option<Witness> {
    find_mono_ap_impl(c, d, k, Some(color))
}

fn find_mono_ap_impl(c: &Coloring, d: &DiffSet, k: usize, only: Option<u32>) -> Option<Witness> {
    assert!(k >= 2);
    let n = c.n();
    if n < k {
        return None;
    }
    let gaps: Vec<usize> = d
        .gaps_upto(n as u64 - 1)
        .into_iter()
        .map(|g| g as usize)
        .collect();
    // Per gap, run[p] = length of the monochromatic AP with this gap
    // starting at p; one O(n) pass per gap keeps memory flat.
    let mut best: Option<(usize, usize)> = None; // (start, gap), minimized by start then gap
    let mut run = vec![1u32; n + 1];
    for &g in &gaps {
        if (k - 1) * g + 1 > n {
            break;
        }
        for p in (1..=n).rev() {
            let q = p + g;
            run[p] = if q <= n && c.color(q) == c.color(p) {
                run[q] + 1
            } else {
                1
            };
        }
        let hit = (1..=n).find(|&p| {
            run[p] >= k as u32 && only.is_none_or(|col| c.color(p) == col)
        });
        if let Some(a) = hit {
            best = match best {
                Some((a0, g0)) if (a0, g0) <= (a, g) => Some((a0, g0)),
                _ => Some((a, g)),
            };
        }
    }
    best.map(|(a, g)| {
        let positions = (0..k).map(|i| (a + i * g) as u64).collect();
        Witness::from_positions(PatternKind::Ap, c.color(a), positions)
    })
}

/// Re-checks every witness invariant against the coloring and the set:
/// strictly increasing positions in range, a single shared color, all gaps
/// in D, and equal gaps for AP witnesses.
pub fn verify_witness(c: &Coloring, d: &DiffSet, w: &Witness) -> bool {
    if w.positions.len() < 2 || w.gaps.len() != w.positions.len() - 1 {
        return false;
    }
    if w.positions.iter().any(|&p| p < 1 || p > c.n() as u64) {
        return false;
    }
    for (pair, &gap) in w.positions.windows(2).zip(&w.gaps) {
        if pair[1] <= pair[0] || pair[1] - pair[0] != gap || !d.contains(gap) {
            return false;
        }
    }
    if w.positions.iter().any(|&p| c.color(p as usize) != w.color) {
        return false;
    }
    if w.kind == PatternKind::Ap && w.gaps.windows(2).any(|g| g[0] != g[1]) {
        return false;
    }
    true
}

/// Dispatches on the pattern kind.
pub fn find_mono(c: &Coloring, d: &DiffSet, k: usize, kind: PatternKind) -> Option<Witness> {
    match kind {
        PatternKind::Diffseq => find_mono_diffseq(c, d, k),
        PatternKind::Ap => find_mono_ap(c, d, k),
    }
}
