//! Pattern containment between sock orderings.
//!
//! `needle` embeds into `haystack` when some subsequence of the haystack maps
//! onto the needle under a color bijection. The search backtracks over the
//! partial bijection; needles are short in practice (the minimal obstructions
//! are at most 13 letters at the lengths this crate classifies), so the
//! exponential worst case is acceptable.

use std::collections::HashMap;

use crate::ordering::{Color, SockOrdering};

/// Witness for a pattern embedding: strictly increasing haystack positions
/// and the color bijection, keyed by needle color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub positions: Vec<usize>,
    /// `(needle color, haystack color)` pairs, sorted by needle color.
    pub color_map: Vec<(Color, Color)>,
}

struct Search<'a> {
    needle: &'a [Color],
    haystack_len: usize,
    /// Haystack occurrence positions per color, ascending.
    occurrences: Vec<(Color, Vec<usize>)>,
    /// How many socks of needle color `needle[j]` remain in `needle[j..]`,
    /// including position j itself.
    needed: Vec<usize>,
    forward: HashMap<Color, usize>, // needle color -> index into occurrences
    used: Vec<bool>,
    positions: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, j: usize, min_pos: usize) -> bool {
        if j == self.needle.len() {
            return true;
        }
        if self.haystack_len - min_pos < self.needle.len() - j {
            return false;
        }
        let color = self.needle[j];
        if let Some(&slot) = self.forward.get(&color) {
            // Color already mapped: the earliest usable occurrence is always
            // safe to take, so no backtracking over the position choice.
            let occ = &self.occurrences[slot].1;
            let k = occ.partition_point(|&p| p < min_pos);
            if k == occ.len() {
                return false;
            }
            let pos = occ[k];
            self.positions.push(pos);
            if self.run(j + 1, pos + 1) {
                return true;
            }
            self.positions.pop();
            false
        } else {
            for slot in 0..self.occurrences.len() {
                if self.used[slot] {
                    continue;
                }
                let occ = &self.occurrences[slot].1;
                let k = occ.partition_point(|&p| p < min_pos);
                if occ.len() - k < self.needed[j] {
                    continue;
                }
                let pos = occ[k];
                self.forward.insert(color, slot);
                self.used[slot] = true;
                self.positions.push(pos);
                if self.run(j + 1, pos + 1) {
                    return true;
                }
                self.positions.pop();
                self.used[slot] = false;
                self.forward.remove(&color);
            }
            false
        }
    }
}

/// Search for an embedding of `needle` in `haystack`. Returns the first
/// embedding found (haystack colors tried in ascending id order), or `None`.
pub fn contains_pattern(haystack: &SockOrdering, needle: &SockOrdering) -> Option<Embedding> {
    if needle.len() > haystack.len() {
        return None;
    }
    if needle.is_empty() {
        return Some(Embedding {
            positions: Vec::new(),
            color_map: Vec::new(),
        });
    }

    let mut by_color: HashMap<Color, Vec<usize>> = HashMap::new();
    for (i, &c) in haystack.colors().iter().enumerate() {
        by_color.entry(c).or_default().push(i);
    }
    let mut occurrences: Vec<(Color, Vec<usize>)> = by_color.into_iter().collect();
    occurrences.sort_unstable_by_key(|(c, _)| *c);

    let needle_colors = needle.colors();
    let mut needed = vec![0usize; needle_colors.len()];
    let mut remaining: HashMap<Color, usize> = HashMap::new();
    for (j, &c) in needle_colors.iter().enumerate().rev() {
        let n = remaining.entry(c).or_insert(0);
        *n += 1;
        needed[j] = *n;
    }

    let mut search = Search {
        needle: needle_colors,
        haystack_len: haystack.len(),
        occurrences,
        needed,
        forward: HashMap::new(),
        used: Vec::new(),
        positions: Vec::new(),
    };
    search.used = vec![false; search.occurrences.len()];

    if !search.run(0, 0) {
        return None;
    }
    let mut color_map: Vec<(Color, Color)> = search
        .forward
        .iter()
        .map(|(&nc, &slot)| (nc, search.occurrences[slot].0))
        .collect();
    color_map.sort_unstable_by_key(|(nc, _)| *nc);
    Some(Embedding {
        positions: search.positions,
        color_map,
    })
}
