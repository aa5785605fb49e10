//! Colorings of [n] and the explicit constructions used as avoidance
//! witnesses: word-induced 2-colorings, the parity lift to four colors, the
//! mod-8 Lucas coloring, and congruence colorings.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::words::{self, WordId};

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("coloring file is malformed: {0}")]
    Malformed(String),
    #[error("color {color} out of range 1..={r} at position {position}")]
    ColorOutOfRange { position: usize, color: i64, r: u32 },
    #[error("parity lift needs a 2-coloring of [⌈n/2⌉]; base has r = {r}, n = {base_n}")]
    BadLiftBase { r: u32, base_n: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An assignment [n] → {1..r}; positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    r: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(r: u32, colors: Vec<u32>) -> Result<Self, ColoringError> {
        if colors.is_empty() || r == 0 {
            return Err(ColoringError::Malformed("need n ≥ 1 and r ≥ 1".into()));
        }
        for (i, &c) in colors.iter().enumerate() {
            if c < 1 || c > r {
                return Err(ColoringError::ColorOutOfRange {
                    position: i + 1,
                    color: c as i64,
                    r,
                });
            }
        }
        Ok(Coloring { r, colors })
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Color of 1-based position p.
    pub fn color(&self, p: usize) -> u32 {
        self.colors[p - 1]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Restriction to the first m positions.
    pub fn truncated(&self, m: usize) -> Coloring {
        assert!(m >= 1 && m <= self.n());
        Coloring {
            r: self.r,
            colors: self.colors[..m].to_vec(),
        }
    }
}

/// 2-coloring induced by a word prefix: color(i) = w(i) + 1.
pub fn from_word(id: WordId, n: usize) -> Coloring {
    from_word_bits(&words::prefix(id, n))
}

/// 2-coloring induced by explicit bits.
pub fn from_word_bits(bits: &[u8]) -> Coloring {
    assert!(!bits.is_empty());
    Coloring {
        r: 2,
        colors: bits.iter().map(|&b| b as u32 + 1).collect(),
    }
}

/// Parity lift of a 2-coloring χ of [⌈n/2⌉] to a 4-coloring of [n]:
/// odd p ↦ (1, χ((p+1)/2)), even p ↦ (2, χ(p/2)).
///
/// The pairs serialize as (1,1) → 1, (1,2) → 2, (2,1) → 3, (2,2) → 4, so any
/// two positions sharing a lifted color share their parity.
pub fn lift_parity(base: &Coloring, n: usize) -> Result<Coloring, ColoringError> {
    if base.r() != 2 || base.n() < n.div_ceil(2) {
        return Err(ColoringError::BadLiftBase {
            r: base.r(),
            base_n: base.n(),
        });
    }
    let colors = (1..=n)
        .map(|p| {
            let (parity, under) = if p % 2 == 1 {
                (1u32, base.color(p.div_ceil(2)))
            } else {
                (2u32, base.color(p / 2))
            };
            (parity - 1) * 2 + under
        })
        .collect();
    Ok(Coloring { r: 4, colors })
}

/// The 4-coloring of [n] by residue mod 8: {1,7} ↦ 1, {2,4} ↦ 2,
/// {3,5} ↦ 3, {0,6} ↦ 4.
pub fn lucas_mod8(n: usize) -> Coloring {
    assert!(n >= 1);
    let colors = (1..=n as u64)
        .map(|p| match p % 8 {
            1 | 7 => 1,
            2 | 4 => 2,
            3 | 5 => 3,
            _ => 4,
        })
        .collect();
    Coloring { r: 4, colors }
}

/// color(i) = (i mod m) + 1.
pub fn congruence_coloring(m: u32, n: usize) -> Coloring {
    assert!(m >= 2 && n >= 1);
    let colors = (1..=n as u64).map(|p| (p % m as u64) as u32 + 1).collect();
    Coloring { r: m, colors }
}

/// Witness text format: line 1 `n r`, line 2 the n colors space-separated.
pub fn emit(c: &Coloring, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{} {}", c.n(), c.r())?;
    let mut line = String::with_capacity(c.n() * 2);
    for (i, &col) in c.colors().iter().enumerate() {
        if i > 0 {
            line.push(' ');
        }
        line.push_str(&col.to_string());
    }
    writeln!(out, "{line}")
}

pub fn parse(input: &mut impl BufRead) -> Result<Coloring, ColoringError> {
    let mut header = String::new();
    input.read_line(&mut header)?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .ok_or_else(|| ColoringError::Malformed("missing n".into()))?
        .parse()
        .map_err(|e| ColoringError::Malformed(format!("bad n: {e}")))?;
    let r: u32 = parts
        .next()
        .ok_or_else(|| ColoringError::Malformed("missing r".into()))?
        .parse()
        .map_err(|e| ColoringError::Malformed(format!("bad r: {e}")))?;
    if parts.next().is_some() {
        return Err(ColoringError::Malformed("trailing tokens on header".into()));
    }
    if n == 0 || r == 0 {
        return Err(ColoringError::Malformed("need n ≥ 1 and r ≥ 1".into()));
    }
    let mut body = String::new();
    input.read_to_string(&mut body)?;
    let mut colors = Vec::with_capacity(n);
    for tok in body.split_whitespace() {
        let c: i64 = tok
            .parse()
            .map_err(|e| ColoringError::Malformed(format!("bad color {tok:?}: {e}")))?;
        if c < 1 || c > r as i64 {
            return Err(ColoringError::ColorOutOfRange {
                position: colors.len() + 1,
                color: c,
                r,
            });
        }
        colors.push(c as u32);
    }
    if colors.len() != n {
        return Err(ColoringError::Malformed(format!(
            "expected {n} colors, found {}",
            colors.len()
        )));
    }
    Ok(Coloring { r, colors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_colorings() {
        let s = from_word(WordId::S, 10);
        assert_eq!(s.colors(), &[2, 1, 1, 2, 2, 1, 2, 1, 1, 2]);
        let t = from_word(WordId::T, 4);
        assert_eq!(t.colors(), &[2, 1, 1, 2]);
        let constant = from_word_bits(&[0, 0, 0]);
        assert_eq!(constant.colors(), &[1, 1, 1]);
    }

    #[test]
    fn lift_parity_small() {
        let base = Coloring::new(2, vec![1, 2]).unwrap();
        let lifted = lift_parity(&base, 4).unwrap();
        // (1, χ(1)), (2, χ(1)), (1, χ(2)), (2, χ(2)) = c11, c21, c12, c22
        assert_eq!(lifted.colors(), &[1, 3, 2, 4]);

        let all_one = Coloring::new(2, vec![1, 1, 1]).unwrap();
        let lifted = lift_parity(&all_one, 6).unwrap();
        for p in 1..=6usize {
            for q in 1..=6usize {
                if lifted.color(p) == lifted.color(q) {
                    assert_eq!(p % 2, q % 2, "lifted colors are parity-pure");
                }
            }
        }
    }

    #[test]
    fn lift_parity_rejects_bad_base() {
        let base = Coloring::new(3, vec![1, 2, 3]).unwrap();
        assert!(lift_parity(&base, 4).is_err());
        let short = Coloring::new(2, vec![1]).unwrap();
        assert!(lift_parity(&short, 4).is_err());
    }

    #[test]
    fn lucas_mod8_prefix() {
        let c = lucas_mod8(16);
        assert_eq!(&c.colors()[..8], &[1, 2, 3, 2, 3, 4, 1, 4]);
        assert_eq!(c.color(15), 1);
        assert_eq!(c.color(16), 4);
    }

    #[test]
    fn congruence_colorings() {
        assert_eq!(congruence_coloring(5, 5).colors(), &[2, 3, 4, 5, 1]);
        assert_eq!(congruence_coloring(2, 4).colors(), &[2, 1, 2, 1]);
        // positions share a color iff congruent
        let c = congruence_coloring(5, 40);
        for p in 1..=40usize {
            for q in 1..=40usize {
                assert_eq!(c.color(p) == c.color(q), p % 5 == q % 5);
            }
        }
    }

    #[test]
    fn witness_file_round_trip() {
        let c = from_word(WordId::S, 5);
        let mut buf = Vec::new();
        emit(&c, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "5 2\n2 1 1 2 2\n");
        let parsed = parse(&mut buf.as_slice()).unwrap();
        assert_eq!(parsed, c);
    }

    #[test]
    fn search_witness_round_trips() {
        // the avoiding coloring of [4] below the 3-term Lucas threshold
        use crate::detect::PatternKind;
        use crate::search::{exact_number, ExactOutcome, SearchOptions};
        let l = crate::diffsets::DiffSet::lucas();
        let witness = match exact_number(&l, 3, 2, PatternKind::Diffseq, 10, SearchOptions::default())
        {
            ExactOutcome::Value {
                value: 5,
                witness_below: Some(w),
            } => w,
            other => panic!("{other:?}"),
        };
        assert_eq!(witness.n(), 4);
        let mut buf = Vec::new();
        emit(&witness, &mut buf).unwrap();
        let parsed = parse(&mut buf.as_slice()).unwrap();
        assert_eq!(parsed, witness);
        assert_eq!(parsed.r(), 2);
    }

    #[test]
    fn parse_rejects_bad_colors() {
        let bad = b"3 2\n1 0 2\n";
        assert!(matches!(
            parse(&mut bad.as_slice()),
            Err(ColoringError::ColorOutOfRange { .. })
        ));
        let short = b"4 2\n1 2 1\n";
        assert!(parse(&mut short.as_slice()).is_err());
        let garbage = b"not a header\n";
        assert!(parse(&mut garbage.as_slice()).is_err());
    }
}
