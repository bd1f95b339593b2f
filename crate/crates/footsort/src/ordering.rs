//! Sock orderings, canonical forms, total-order certificates.
//!
//! A sock ordering is a finite sequence of colored socks. Two orderings are
//! the "same" instance whenever one maps onto the other under a bijection of
//! colors, so most of the crate works with the canonical representative:
//! colors relabeled in order of first occurrence, adjacent repeats collapsed.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Color identifier. Values are arbitrary; dense `0..k` labels are produced
/// by [`canonicalize`] and required only inside the decider state.
pub type Color = u32;

/// Number of colors representable as single characters (`a-z`, `A-Z`, `0-9`).
pub const LETTER_COLORS: u32 = 62;

/// A sequence of colored socks; the problem instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SockOrdering {
    colors: Vec<Color>,
}

impl SockOrdering {
    pub fn new(colors: Vec<Color>) -> Self {
        SockOrdering { colors }
    }

    pub fn empty() -> Self {
        SockOrdering { colors: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Sorted distinct colors.
    pub fn alphabet(&self) -> Vec<Color> {
        let mut a = self.colors.clone();
        a.sort_unstable();
        a.dedup();
        a
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet().len()
    }

    /// True iff every color occurs at most twice.
    pub fn is_two_bounded(&self) -> bool {
        let mut counts = std::collections::HashMap::new();
        for &c in &self.colors {
            let n = counts.entry(c).or_insert(0u32);
            *n += 1;
            if *n > 2 {
                return false;
            }
        }
        true
    }

    /// True iff no two adjacent entries are equal.
    pub fn is_reduced(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] != w[1])
    }

    /// Copy with the sock at `index` removed.
    pub fn with_position_removed(&self, index: usize) -> SockOrdering {
        let mut colors = self.colors.clone();
        colors.remove(index);
        SockOrdering { colors }
    }
}

pub(crate) fn letter_to_color(ch: char) -> Option<Color> {
    match ch {
        'a'..='z' => Some(ch as u32 - 'a' as u32),
        'A'..='Z' => Some(ch as u32 - 'A' as u32 + 26),
        '0'..='9' => Some(ch as u32 - '0' as u32 + 52),
        _ => None,
    }
}

pub(crate) fn color_to_letter(c: Color) -> Option<char> {
    match c {
        0..=25 => char::from_u32('a' as u32 + c),
        26..=51 => char::from_u32('A' as u32 + c - 26),
        52..=61 => char::from_u32('0' as u32 + c - 52),
        _ => None,
    }
}

/// Render a single color the way [`SockOrdering`]'s `Display` does: a letter
/// when it fits, the decimal id otherwise.
pub fn color_label(c: Color) -> String {
    match color_to_letter(c) {
        Some(ch) => ch.to_string(),
        None => c.to_string(),
    }
}

/// Accepts either a compact letter string (`abcab`) or whitespace-separated
/// decimal ids (`0 1 2 0 1`). A single token with no whitespace is always
/// read as a letter string, so `42` means the two socks '4','2'.
impl FromStr for SockOrdering {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens.len() {
            0 => Ok(SockOrdering::empty()),
            1 => {
                let token = tokens[0];
                let mut colors = Vec::with_capacity(token.len());
                for ch in token.chars() {
                    match letter_to_color(ch) {
                        Some(c) => colors.push(c),
                        None => {
                            return Err(Error::Parse(format!(
                                "invalid sock letter {ch:?} (expected a-z, A-Z or 0-9)"
                            )))
                        }
                    }
                }
                Ok(SockOrdering { colors })
            }
            _ => {
                let mut colors = Vec::with_capacity(tokens.len());
                for token in tokens {
                    let c: Color = token.parse().map_err(|_| {
                        Error::Parse(format!("invalid decimal color id {token:?}"))
                    })?;
                    colors.push(c);
                }
                Ok(SockOrdering { colors })
            }
        }
    }
}

impl fmt::Display for SockOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.colors.iter().all(|&c| c < LETTER_COLORS) {
            for &c in &self.colors {
                write!(f, "{}", color_to_letter(c).unwrap())?;
            }
            Ok(())
        } else {
            let mut first = true;
            for &c in &self.colors {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{c}")?;
                first = false;
            }
            Ok(())
        }
    }
}

/// Collapse every maximal run of equal adjacent colors to a single sock.
/// Foot-sortability is unchanged by this operation.
pub fn reduce_adjacent(s: &SockOrdering) -> SockOrdering {
    let mut out: Vec<Color> = Vec::with_capacity(s.len());
    for &c in s.colors() {
        if out.last() != Some(&c) {
            out.push(c);
        }
    }
    SockOrdering::new(out)
}

/// Relabel colors by order of first occurrence, starting at 0 (a
/// restricted-growth labeling). Two orderings of equal length are patterns
/// of each other iff their relabelings are equal.
pub fn canonicalize(s: &SockOrdering) -> SockOrdering {
    let mut map: std::collections::HashMap<Color, Color> = std::collections::HashMap::new();
    let mut next: Color = 0;
    let mut out = Vec::with_capacity(s.len());
    for &c in s.colors() {
        let label = *map.entry(c).or_insert_with(|| {
            let l = next;
            next += 1;
            l
        });
        out.push(label);
    }
    SockOrdering::new(out)
}

/// The quotient representative used by enumeration and classification:
/// adjacent repeats collapsed, then colors relabeled by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalOrdering(SockOrdering);

impl CanonicalOrdering {
    pub fn of(s: &SockOrdering) -> Self {
        CanonicalOrdering(canonicalize(&reduce_adjacent(s)))
    }

    /// Wrap a sequence that is already reduced and restricted-growth labeled.
    /// Panics otherwise; reserved for generators that produce canonical forms
    /// by construction.
    pub(crate) fn from_canonical_parts(s: SockOrdering) -> Self {
        debug_assert!(s.is_reduced());
        debug_assert_eq!(canonicalize(&s), s);
        CanonicalOrdering(s)
    }

    pub fn as_ordering(&self) -> &SockOrdering {
        &self.0
    }

    pub fn into_ordering(self) -> SockOrdering {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CanonicalOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An ascending enumeration of the alphabet witnessing foot-sortability:
/// under this total order no three colors `a < b < c` occur as a
/// subsequence `b, c, a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalOrderCertificate {
    ascending: Vec<Color>,
}

impl TotalOrderCertificate {
    /// Build from the ascending color list (smallest first). Colors must be
    /// distinct; checked in debug builds.
    pub fn from_ascending(ascending: Vec<Color>) -> Self {
        debug_assert!(
            {
                let mut seen = ascending.clone();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            },
            "certificate colors must be distinct"
        );
        TotalOrderCertificate { ascending }
    }

    pub fn ascending(&self) -> &[Color] {
        &self.ascending
    }

    pub fn len(&self) -> usize {
        self.ascending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ascending.is_empty()
    }
}

impl fmt::Display for TotalOrderCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &c in &self.ascending {
            if !first {
                write!(f, "<")?;
            }
            write!(f, "{}", color_label(c))?;
            first = false;
        }
        Ok(())
    }
}

/// Outcome of a foot-sortability decision. A `Sortable` verdict carries a
/// certificate that has already been validated against the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sortable(TotalOrderCertificate),
    NotSortable,
}

impl Verdict {
    pub fn is_sortable(&self) -> bool {
        matches!(self, Verdict::Sortable(_))
    }

    pub fn certificate(&self) -> Option<&TotalOrderCertificate> {
        match self {
            Verdict::Sortable(c) => Some(c),
            Verdict::NotSortable => None,
        }
    }
}

/// A prefix-induced partial order on colors, represented by the position of
/// the distinguished minimal letter: `x >= y` iff `x, y` occur as a
/// subsequence of the live prefix ending at that position. `trivial()`
/// (no relations) is the state before any reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SimpleOrder {
    dist_min_pos: Option<u32>,
}

impl SimpleOrder {
    pub fn trivial() -> Self {
        SimpleOrder { dist_min_pos: None }
    }

    pub fn at(pos: u32) -> Self {
        SimpleOrder {
            dist_min_pos: Some(pos),
        }
    }

    pub fn position(&self) -> Option<u32> {
        self.dist_min_pos
    }

    /// Upper bound of the defining prefix; 0 for the trivial order (the
    /// prefix of length <= 1 induces no relations between distinct colors).
    pub fn cutoff(&self) -> u32 {
        self.dist_min_pos.unwrap_or(0)
    }
}
