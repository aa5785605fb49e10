//! The infinite Fibonacci word F, and the words S and T derived from it by
//! morphisms.
//!
//! Every word carries two independent evaluators: a prefix generator built
//! from the defining recurrence/morphism, and a positional closed form via
//! exact Beatty floors ⌊mφ⌋. Agreement of the two routes is asserted by
//! tests rather than assumed.

use std::io::{self, Write};
use std::str::FromStr;

use crate::numerics::beatty_floor;

/// A binary word morphism, given by the images of 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub image0: Vec<u8>,
    pub image1: Vec<u8>,
}

impl Morphism {
    pub fn new(image0: Vec<u8>, image1: Vec<u8>) -> Self {
        assert!(!image0.is_empty() && !image1.is_empty(), "images must be nonempty");
        Morphism { image0, image1 }
    }
}

/// μ: 0 ↦ 10, 1 ↦ 01.
pub fn mu() -> Morphism {
    Morphism::new(vec![1, 0], vec![0, 1])
}

/// ν: 0 ↦ 1, 1 ↦ 00.
pub fn nu() -> Morphism {
    Morphism::new(vec![1], vec![0, 0])
}

/// Symbol-by-symbol substitution, concatenating the images.
pub fn apply_morphism(m: &Morphism, word: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for &s in word {
        match s {
            0 => out.extend_from_slice(&m.image0),
            1 => out.extend_from_slice(&m.image1),
            other => panic!("not a binary symbol: {other}"),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordId {
    /// The infinite Fibonacci word 010010100100...
    Fibonacci,
    /// S = μ(F) = 1001101001...
    S,
    /// T = ν(F) = 1001100100...
    T,
}

impl WordId {
    pub fn name(self) -> &'static str {
        match self {
            WordId::Fibonacci => "F",
            WordId::S => "S",
            WordId::T => "T",
        }
    }
}

impl FromStr for WordId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" | "f" | "fib" | "fibonacci" => Ok(WordId::Fibonacci),
            "S" | "s" => Ok(WordId::S),
            "T" | "t" => Ok(WordId::T),
            other => Err(format!("unknown word {other:?} (expected F, S or T)")),
        }
    }
}

/// First `len` symbols of the Fibonacci word, by the concatenation
/// recurrence F₀ = 0, F₁ = 01, Fₙ = Fₙ₋₁Fₙ₋₂.
pub fn fib_word_prefix(len: usize) -> Vec<u8> {
    assert!(len >= 1);
    let mut prev: Vec<u8> = vec![0];
    let mut cur: Vec<u8> = vec![0, 1];
    while cur.len() < len {
        let mut next = cur.clone();
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
    }
    cur.truncate(len);
    cur
}

/// First `len` symbols of the word, generated by substitution and truncated.
pub fn prefix(id: WordId, len: usize) -> Vec<u8> {
    assert!(len >= 1);
    match id {
        WordId::Fibonacci => fib_word_prefix(len),
        WordId::S => {
            // μ doubles lengths, so ⌈len/2⌉ source symbols suffice.
            let mut s = apply_morphism(&mu(), &fib_word_prefix(len.div_ceil(2)));
            s.truncate(len);
            s
        }
        WordId::T => {
            // ν images have length ≥ 1, so len source symbols suffice.
            let mut t = apply_morphism(&nu(), &fib_word_prefix(len));
            t.truncate(len);
            t
        }
    }
}

/// The unique m with n = ⌊mφ⌋, if one exists.
///
/// The open interval (n/φ, (n+1)/φ) has length 1/φ < 1, so the only
/// candidate is ⌊(n+1)/φ⌋ = ⌊(n+1)φ⌋ − (n+1).
pub fn beatty_member(n: u64) -> Option<u64> {
    assert!(n >= 1);
    let m = beatty_floor(n + 1) - (n + 1);
    (m >= 1 && beatty_floor(m) == n).then_some(m)
}

/// Witness for position n relative to the Beatty sequence ⌊mφ⌋.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeattyWitness {
    /// n = ⌊mφ⌋ for this unique m.
    Member { m: u64 },
    /// n is skipped; n+1 = ⌊m′φ⌋ and n−1 = ⌊m″φ⌋.
    Gap { m_above: u64, m_below: u64 },
}

/// Classifies n ≥ 1 against the Beatty sequence.
///
/// Position 1 is always a member (⌊φ⌋ = 1), so the gap case never needs
/// n − 1 = 0.
pub fn beatty_witness(n: u64) -> BeattyWitness {
    if let Some(m) = beatty_member(n) {
        return BeattyWitness::Member { m };
    }
    assert!(n >= 2, "position 1 is ⌊1·φ⌋");
    let m_above = beatty_member(n + 1).expect("a skipped position is followed by a member");
    let m_below = beatty_member(n - 1).expect("a skipped position is preceded by a member");
    BeattyWitness::Gap { m_above, m_below }
}

/// Closed form: F(n) = 0 iff n = ⌊mφ⌋ for some m.
pub fn fib_word_at(n: u64) -> u8 {
    assert!(n >= 1);
    if beatty_member(n).is_some() {
        0
    } else {
        1
    }
}

/// Closed form for S, by parity of n and membership of n/2 or (n+1)/2.
pub fn word_s_at(n: u64) -> u8 {
    assert!(n >= 1);
    if n.is_multiple_of(2) {
        if beatty_member(n / 2).is_some() {
            0
        } else {
            1
        }
    } else if beatty_member(n.div_ceil(2)).is_some() {
        1
    } else {
        0
    }
}

/// The unique m with n = 2⌊mφ⌋ − m, if one exists.
///
/// Such m lies in (n/√5, (n+2)/√5), an interval of length 2/√5 < 1, so the
/// only candidate is ⌊n/√5⌋ + 1.
pub fn t_one_witness(n: u64) -> Option<u64> {
    assert!(n >= 1);
    let n2 = (n as u128) * (n as u128);
    let m = crate::numerics::isqrt_u128(n2 / 5) as u64 + 1;
    (2 * beatty_floor(m) - m == n).then_some(m)
}

/// Closed form: T(n) = 1 iff n = 2⌊mφ⌋ − m for some m.
pub fn word_t_at(n: u64) -> u8 {
    if t_one_witness(n).is_some() {
        1
    } else {
        0
    }
}

/// Closed-form evaluator for any of the three words.
pub fn at(id: WordId, n: u64) -> u8 {
    match id {
        WordId::Fibonacci => fib_word_at(n),
        WordId::S => word_s_at(n),
        WordId::T => word_t_at(n),
    }
}

/// Writes a prefix as ASCII 0/1 characters plus a trailing newline.
pub fn write_text(bits: &[u8], out: &mut impl Write) -> io::Result<()> {
    let mut line = Vec::with_capacity(bits.len() + 1);
    for &b in bits {
        line.push(b'0' + b);
    }
    line.push(b'\n');
    out.write_all(&line)
}

/// Writes a prefix bit-packed, 8 symbols per byte, first symbol in the most
/// significant bit; the final byte is zero-padded.
pub fn write_packed(bits: &[u8], out: &mut impl Write) -> io::Result<()> {
    let mut bytes = Vec::with_capacity(bits.len().div_ceil(8));
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            byte |= b << (7 - i);
        }
        bytes.push(byte);
    }
    out.write_all(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_string(bits: &[u8]) -> String {
        bits.iter().map(|b| char::from(b'0' + b)).collect()
    }

    #[test]
    fn morphism_images() {
        assert_eq!(apply_morphism(&mu(), &[0]), vec![1, 0]);
        assert_eq!(apply_morphism(&nu(), &[0, 1]), vec![1, 0, 0]);
        assert_eq!(apply_morphism(&mu(), &[]), Vec::<u8>::new());
    }

    #[test]
    fn fib_prefixes() {
        assert_eq!(to_string(&fib_word_prefix(12)), "010010100100");
        assert_eq!(to_string(&fib_word_prefix(1)), "0");
        assert_eq!(to_string(&fib_word_prefix(2)), "01");
    }

    #[test]
    fn s_and_t_prefixes() {
        assert_eq!(to_string(&prefix(WordId::S, 10)), "1001101001");
        assert_eq!(to_string(&prefix(WordId::T, 10)), "1001100100");
    }

    #[test]
    fn closed_forms_match_prefixes_small() {
        let n = 10_000;
        for id in [WordId::Fibonacci, WordId::S, WordId::T] {
            let p = prefix(id, n);
            for (i, &s) in p.iter().enumerate() {
                assert_eq!(at(id, i as u64 + 1), s, "{} at {}", id.name(), i + 1);
            }
        }
    }

    #[test]
    fn beatty_witnesses() {
        assert_eq!(beatty_witness(1), BeattyWitness::Member { m: 1 });
        assert_eq!(beatty_witness(3), BeattyWitness::Member { m: 2 });
        assert_eq!(
            beatty_witness(2),
            BeattyWitness::Gap {
                m_above: 2,
                m_below: 1
            }
        );
    }

    #[test]
    fn t_ones_from_beatty() {
        // 2⌊mφ⌋ − m for m = 1..4 gives 1, 4, 5, 8.
        let ones: Vec<u64> = (1..=4).map(|m| 2 * beatty_floor(m) - m).collect();
        assert_eq!(ones, vec![1, 4, 5, 8]);
        for &p in &ones {
            assert_eq!(word_t_at(p), 1);
        }
    }

    #[test]
    fn no_11_in_fib_word() {
        let p = fib_word_prefix(1_000_000);
        assert!(!p.windows(2).any(|w| w == [1, 1]));
    }

    #[test]
    fn no_000_in_t_and_zero_neighbour_structure() {
        let n = 1_000_000usize;
        let t = prefix(WordId::T, n);
        assert!(!t.windows(3).any(|w| w == [0, 0, 0]));
        // every interior 0 has an adjacent 0 with a 1 just beyond it on at
        // least one side
        let at = |p: usize| t[p - 1];
        for x in 2..=n - 2 {
            if at(x) != 0 {
                continue;
            }
            let left_ok = x >= 3 && at(x - 1) == 0 && at(x - 2) == 1;
            let right_ok = at(x + 1) == 0 && at(x + 2) == 1;
            assert!(left_ok || right_ok, "position {x}");
        }
    }

    #[test]
    fn t_ones_count_matches_beatty_count() {
        for len in [10u64, 100, 1_000, 25_000] {
            let ones = prefix(WordId::T, len as usize)
                .iter()
                .filter(|&&s| s == 1)
                .count() as u64;
            let mut count = 0;
            let mut m = 1;
            while 2 * beatty_floor(m) - m <= len {
                count += 1;
                m += 1;
            }
            assert_eq!(ones, count, "len = {len}");
        }
    }

    #[test]
    fn packed_output() {
        let mut buf = Vec::new();
        write_packed(&[1, 0, 0, 1, 1, 0, 1, 0, 0, 1], &mut buf).unwrap();
        assert_eq!(buf, vec![0b1001_1010, 0b0100_0000]);
    }
}
