//! Classification of minimal non-foot-sortable 2-bounded orderings.
//!
//! The complete catalog at bounded length: 14 sporadic critical orderings in
//! four groups, and four one-parameter families. `verify_classification`
//! reproduces the catalog from scratch by enumerating every canonical
//! 2-bounded ordering up to a length bound, keeping the minimal non-sortable
//! ones, and diffing against the instantiated catalog.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::decider::decide;
use crate::error::Error;
use crate::ordering::{CanonicalOrdering, SockOrdering, Verdict};
use crate::pattern::{contains_pattern, Embedding};

/// The 14 sporadic critical orderings, grouped by the shape of the failure
/// that produces them. Each is 2-bounded, reduced, and in canonical form.
const SPORADIC: [(&str, &str); 14] = [
    ("I", "abcdbacd"),
    ("I", "abcdedabc"),
    ("I'", "abcadbdc"),
    ("I'", "abcbdadc"),
    ("I'", "abcdbadc"),
    ("I'", "abcdcadb"),
    ("I'", "abcdceaeb"),
    ("I'", "abcdedacb"),
    ("II", "abcdbcad"),
    ("II", "abcdcbad"),
    ("II", "abcdedbac"),
    ("III", "abcabdedc"),
    ("III", "abcbadedc"),
    ("III", "abcdcaefeb"),
];

/// One entry of the sporadic table.
#[derive(Debug, Clone)]
pub struct SporadicPattern {
    pub index: usize,
    pub kind: &'static str,
    pub ordering: CanonicalOrdering,
}

/// The fixed table of sporadic critical orderings.
pub fn sporadic_table() -> &'static [SporadicPattern] {
    static TABLE: OnceLock<Vec<SporadicPattern>> = OnceLock::new();
    TABLE.get_or_init(|| {
        SPORADIC
            .iter()
            .enumerate()
            .map(|(index, (kind, text))| {
                let s: SockOrdering = text.parse().expect("sporadic table entry parses");
                let ordering = CanonicalOrdering::of(&s);
                assert_eq!(ordering.as_ordering(), &s, "table entry not canonical");
                assert!(s.is_two_bounded(), "table entry not 2-bounded");
                SporadicPattern {
                    index,
                    kind,
                    ordering,
                }
            })
            .collect()
    })
}

/// The four infinite families of critical orderings. Instances share a
/// descending chain of paired colors `a_{n-2} a_{n-1} a_{n-3} a_{n-2} ...
/// a_0 a_1` behind a family-specific head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    BPrime,
    C,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::BPrime, Family::C];

    pub fn label(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::BPrime => "B'",
            Family::C => "C",
        }
    }

    /// Smallest valid parameter.
    pub fn min_n(self) -> usize {
        match self {
            Family::A => 2,
            _ => 3,
        }
    }

    /// Instance length at parameter `n`.
    pub fn instance_len(self, n: usize) -> usize {
        match self {
            Family::A => 2 * n + 3,
            Family::B | Family::BPrime => 2 * n + 4,
            Family::C => 2 * n + 5,
        }
    }

    /// The template with symbolic color ids: chain colors `a_i = i`, then
    /// `x = n`, `y = n + 1`, `z = n + 2`.
    pub fn template(self, n: usize) -> Result<SockOrdering, Error> {
        if n < self.min_n() {
            return Err(Error::FamilyParameter {
                family: self.label(),
                n,
            });
        }
        let a = |i: usize| i as u32;
        let x = n as u32;
        let y = n as u32 + 1;
        let z = n as u32 + 2;
        let mut v: Vec<u32> = match self {
            Family::A => vec![x, a(0), y, a(n - 1), x],
            Family::B => vec![a(0), x, y, a(n - 1), x, y],
            Family::BPrime => vec![a(0), y, x, a(n - 1), x, y],
            Family::C => vec![a(0), x, a(n - 1), y, z, y, x],
        };
        for i in (0..=n - 2).rev() {
            v.push(a(i));
            v.push(a(i + 1));
        }
        debug_assert_eq!(v.len(), self.instance_len(n));
        Ok(SockOrdering::new(v))
    }
}

/// A generated family member in canonical form.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub family: Family,
    pub n: usize,
    pub ordering: CanonicalOrdering,
}

pub fn generate_family(family: Family, n: usize) -> Result<FamilyInstance, Error> {
    let template = family.template(n)?;
    Ok(FamilyInstance {
        family,
        n,
        ordering: CanonicalOrdering::of(&template),
    })
}

/// Which minimal pattern embeds into an input, with the embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternId {
    Sporadic { index: usize, kind: &'static str },
    Family { family: Family, n: usize },
}

impl std::fmt::Display for PatternId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternId::Sporadic { index, kind } => write!(f, "sporadic type {kind} #{index}"),
            PatternId::Family { family, n } => write!(f, "family {} n={n}", family.label()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PatternMatch {
    pub id: PatternId,
    pub pattern: CanonicalOrdering,
    pub embedding: Embedding,
}

/// Search the catalog for a minimal pattern embedded in `s`: sporadic
/// entries in table order first, then family instances by ascending
/// parameter. Requires a 2-bounded input.
pub fn match_minimal_pattern(s: &SockOrdering) -> Result<Option<PatternMatch>, Error> {
    if !s.is_two_bounded() {
        return Err(Error::NotTwoBounded);
    }
    for sp in sporadic_table() {
        if sp.ordering.len() > s.len() {
            continue;
        }
        if let Some(embedding) = contains_pattern(s, sp.ordering.as_ordering()) {
            return Ok(Some(PatternMatch {
                id: PatternId::Sporadic {
                    index: sp.index,
                    kind: sp.kind,
                },
                pattern: sp.ordering.clone(),
                embedding,
            }));
        }
    }
    // Family A is the shortest family at any n, so 2n + 3 <= |s| bounds the
    // search.
    let max_n = if s.len() >= 7 { (s.len() - 3) / 2 } else { 0 };
    for n in 2..=max_n {
        for family in Family::ALL {
            if n < family.min_n() || family.instance_len(n) > s.len() {
                continue;
            }
            let instance = generate_family(family, n).expect("feasible family instance");
            if let Some(embedding) = contains_pattern(s, instance.ordering.as_ordering()) {
                return Ok(Some(PatternMatch {
                    id: PatternId::Family { family, n },
                    pattern: instance.ordering,
                    embedding,
                }));
            }
        }
    }
    Ok(None)
}

/// True iff `s` is non-sortable but every single-sock deletion is sortable.
/// Deletions are re-canonicalized and re-reduced before deciding.
pub fn is_minimal_nonsortable<F>(s: &SockOrdering, decide_fn: F) -> bool
where
    F: Fn(&SockOrdering) -> Verdict,
{
    if decide_fn(s).is_sortable() {
        return false;
    }
    for i in 0..s.len() {
        let deleted = CanonicalOrdering::of(&s.with_position_removed(i));
        if !decide_fn(deleted.as_ordering()).is_sortable() {
            return false;
        }
    }
    true
}

/// Default cap on enumeration length; large enough to cover every sporadic
/// pattern and the smallest member of every family.
pub const ENUMERATION_BOUND: usize = 13;

/// Lexicographic stream of canonical reduced orderings of one length:
/// restricted-growth labels, no equal adjacent colors, optionally each color
/// at most twice, at most `max_colors` distinct colors.
pub struct CanonicalEnum {
    len: usize,
    two_bounded: bool,
    max_colors: usize,
    seq: Vec<u32>,
    counts: Vec<u32>,
    used: usize,
    next_candidate: u32,
    done: bool,
    yielded_empty: bool,
}

impl CanonicalEnum {
    fn new(len: usize, two_bounded: bool, max_colors: usize) -> Result<Self, Error> {
        if len > ENUMERATION_BOUND {
            return Err(Error::EnumerationBound {
                len,
                bound: ENUMERATION_BOUND,
            });
        }
        Ok(CanonicalEnum {
            len,
            two_bounded,
            max_colors,
            seq: Vec::with_capacity(len),
            counts: vec![0; max_colors],
            used: 0,
            next_candidate: 0,
            done: false,
            yielded_empty: false,
        })
    }

    pub fn with_max_colors(
        len: usize,
        two_bounded: bool,
        max_colors: usize,
    ) -> Result<Self, Error> {
        Self::new(len, two_bounded, max_colors)
    }

    fn backtrack(&mut self) {
        match self.seq.pop() {
            None => self.done = true,
            Some(last) => {
                self.counts[last as usize] -= 1;
                if self.counts[last as usize] == 0 {
                    // colors are introduced left to right, so a count hitting
                    // zero can only belong to the newest color
                    debug_assert_eq!(last as usize, self.used - 1);
                    self.used -= 1;
                }
                self.next_candidate = last + 1;
            }
        }
    }
}

impl Iterator for CanonicalEnum {
    type Item = CanonicalOrdering;

    fn next(&mut self) -> Option<CanonicalOrdering> {
        if self.done {
            return None;
        }
        if self.len == 0 {
            self.done = true;
            if self.yielded_empty {
                return None;
            }
            self.yielded_empty = true;
            return Some(CanonicalOrdering::of(&SockOrdering::empty()));
        }
        loop {
            if self.done {
                return None;
            }
            let depth = self.seq.len();
            let limit = ((self.used + 1).min(self.max_colors)) as u32;
            let mut candidate = None;
            let mut v = self.next_candidate;
            while v < limit {
                let adjacent_ok = depth == 0 || self.seq[depth - 1] != v;
                let count_ok = !self.two_bounded || self.counts[v as usize] < 2;
                if adjacent_ok && count_ok {
                    candidate = Some(v);
                    break;
                }
                v += 1;
            }
            match candidate {
                None => self.backtrack(),
                Some(v) => {
                    self.seq.push(v);
                    if v as usize == self.used {
                        self.used += 1;
                    }
                    self.counts[v as usize] += 1;
                    self.next_candidate = 0;
                    if self.seq.len() == self.len {
                        let result = CanonicalOrdering::from_canonical_parts(SockOrdering::new(
                            self.seq.clone(),
                        ));
                        self.backtrack();
                        return Some(result);
                    }
                }
            }
        }
    }
}

/// Enumerate canonical reduced orderings of exactly `len` socks, in
/// lexicographic order, each class represented once.
pub fn enumerate_canonical(len: usize, two_bounded: bool) -> Result<CanonicalEnum, Error> {
    CanonicalEnum::new(len, two_bounded, len.max(1))
}

#[derive(Debug, Clone, Serialize)]
pub struct LengthStat {
    pub length: usize,
    pub enumerated: u64,
    pub minimal: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectedPattern {
    pub label: String,
    pub ordering: String,
}

/// Outcome of an end-to-end classification check at bounded length.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub max_length: usize,
    pub lengths: Vec<LengthStat>,
    pub found: Vec<String>,
    pub expected: Vec<ExpectedPattern>,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
    pub matches: bool,
}

impl ClassificationReport {
    /// Line-oriented rendering for terminals and logs.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "classification of minimal non-sortable 2-bounded orderings up to length {}",
            self.max_length
        );
        for stat in &self.lengths {
            let _ = writeln!(
                out,
                "length {:2}: enumerated={:8} minimal={}",
                stat.length, stat.enumerated, stat.minimal
            );
        }
        let _ = writeln!(
            out,
            "found {} minimal orderings, catalog predicts {}",
            self.found.len(),
            self.expected.len()
        );
        for miss in &self.missing {
            let _ = writeln!(out, "missing from enumeration: {miss}");
        }
        for extra in &self.unexpected {
            let _ = writeln!(out, "not in catalog: {extra}");
        }
        let _ = writeln!(out, "RESULT: {}", if self.matches { "PASS" } else { "FAIL" });
        out
    }
}

/// The instantiated catalog at bounded length: every sporadic pattern and
/// every family instance that fits.
pub fn expected_minimal_patterns(max_length: usize) -> Vec<(String, CanonicalOrdering)> {
    let mut expected: Vec<(String, CanonicalOrdering)> = Vec::new();
    for sp in sporadic_table() {
        if sp.ordering.len() <= max_length {
            expected.push((format!("sporadic type {}", sp.kind), sp.ordering.clone()));
        }
    }
    for family in Family::ALL {
        let mut n = family.min_n();
        while family.instance_len(n) <= max_length {
            let inst = generate_family(family, n).expect("feasible instance");
            expected.push((format!("family {} n={n}", family.label()), inst.ordering));
            n += 1;
        }
    }
    expected
}

pub fn verify_classification(max_length: usize) -> Result<ClassificationReport, Error> {
    verify_classification_sharded(max_length, 1)
}

/// Enumerate, decide, minimality-check, and diff against the catalog.
/// `shards > 1` spreads the per-length work over a thread pool; the report
/// is a deterministic merge either way.
pub fn verify_classification_sharded(
    max_length: usize,
    shards: usize,
) -> Result<ClassificationReport, Error> {
    if max_length > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound {
            len: max_length,
            bound: ENUMERATION_BOUND,
        });
    }
    let pool = if shards > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(shards)
                .build()
                .expect("worker pool"),
        )
    } else {
        None
    };
    let mut lengths = Vec::new();
    let mut found_orderings: Vec<CanonicalOrdering> = Vec::new();
    for len in 1..=max_length {
        let all: Vec<CanonicalOrdering> = enumerate_canonical(len, true)?.collect();
        let keep = |c: &CanonicalOrdering| is_minimal_nonsortable(c.as_ordering(), decide);
        let minimal: Vec<CanonicalOrdering> = match &pool {
            Some(pool) => pool.install(|| {
                all.par_iter()
                    .filter(|c| keep(c))
                    .cloned()
                    .collect::<Vec<_>>()
            }),
            None => all.iter().filter(|c| keep(c)).cloned().collect(),
        };
        lengths.push(LengthStat {
            length: len,
            enumerated: all.len() as u64,
            minimal: minimal.len() as u64,
        });
        found_orderings.extend(minimal);
    }

    let expected = expected_minimal_patterns(max_length);
    let found: Vec<String> = found_orderings.iter().map(|c| c.to_string()).collect();
    let expected_set: std::collections::BTreeSet<String> =
        expected.iter().map(|(_, c)| c.to_string()).collect();
    let found_set: std::collections::BTreeSet<String> = found.iter().cloned().collect();
    let missing: Vec<String> = expected_set.difference(&found_set).cloned().collect();
    let unexpected: Vec<String> = found_set.difference(&expected_set).cloned().collect();
    let matches = missing.is_empty() && unexpected.is_empty();
    Ok(ClassificationReport {
        max_length,
        lengths,
        found,
        expected: expected
            .into_iter()
            .map(|(label, c)| ExpectedPattern {
                label,
                ordering: c.to_string(),
            })
            .collect(),
        missing,
        unexpected,
        matches,
    })
}
