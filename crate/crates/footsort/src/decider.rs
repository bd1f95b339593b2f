//! Fast foot-sortability decision with certificate extraction.
//!
//! The decider maintains the current ordering as a reduced doubly linked
//! list plus ordered position indexes, and repeatedly picks a color that can
//! be assumed to be the next minimum of a certifying total order. Removing
//! that color (a reduction) shrinks the instance; the accumulated constraint
//! set stays a prefix-induced order ([`SimpleOrder`]), so each step needs
//! only a constant number of ordered-map operations. Total work is
//! O(N log N) in the input length.
//!
//! Every `Sortable` verdict carries a certificate that was validated against
//! the input before being returned.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::Error;
use crate::index::PosIndex;
use crate::ordering::{Color, SimpleOrder, SockOrdering, TotalOrderCertificate, Verdict};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    color: u32,
    pos: u32,
    prev: u32,
    next: u32,
    alive: bool,
}

/// Stable handle to a node in the decider's linked list. Handles address a
/// slab owned by the state and stay valid (but dead) after deletion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeHandle(u32);

/// Operation counts and branch statistics for one decision run. `map_ops`
/// counts logical ordered-map operations (insert, delete, min, successor,
/// interval count, ...), each worth O(log N) time.
#[derive(Debug, Clone, Default, Serialize)]
pub struct DecideStats {
    pub input_len: usize,
    pub reduced_len: usize,
    pub map_ops: u64,
    pub reductions: u64,
    pub deletes: u64,
    pub case1: u64,
    pub case2: u64,
    pub case2_exception: u64,
    pub case3_blocked: u64,
    pub case3_adjacent: u64,
    pub case3_pivot: u64,
    pub case3_exception: u64,
}

/// Colors removed by reductions, in reduction order, with the outcome. When
/// sortable, this order is the ascending prefix of the certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub reduced_colors: Vec<Color>,
    pub sortable: bool,
}

/// Result of [`decide_with_stats`].
#[derive(Debug, Clone)]
pub struct DecideOutcome {
    pub verdict: Verdict,
    pub stats: DecideStats,
    pub trace: ReductionTrace,
}

/// The decider's live structures: reduced linked list, per-color position
/// sets, a global position index, and indexes of lonely positions and of
/// second occurrences of unlonely colors.
pub struct SortingState {
    nodes: Vec<Node>,
    head: u32,
    tail: u32,
    /// Original position -> slab index (NONE for positions skipped as
    /// adjacent repeats during preprocessing).
    node_at_pos: Vec<u32>,
    /// Live positions per dense color, ascending.
    pos_by_color: Vec<BTreeSet<u32>>,
    all_pos: PosIndex,
    lonely_pos: PosIndex,
    second_pos: PosIndex,
    dist_min: SimpleOrder,
    dense_input: Vec<u32>,
    /// Dense color id -> original color id.
    alphabet_map: Vec<Color>,
    /// Dense colors in reduction order.
    trace: Vec<u32>,
    stats: DecideStats,
}

fn relabel_dense(s: &SockOrdering) -> (Vec<u32>, Vec<Color>) {
    let n = s.len();
    let mut dense = Vec::with_capacity(n);
    let mut map_back: Vec<Color> = Vec::new();
    if n == 0 {
        return (dense, map_back);
    }
    let max = *s.colors().iter().max().unwrap();
    if (max as usize) < n {
        let mut label: Vec<u32> = vec![NONE; max as usize + 1];
        for &c in s.colors() {
            let slot = &mut label[c as usize];
            if *slot == NONE {
                *slot = map_back.len() as u32;
                map_back.push(c);
            }
            dense.push(*slot);
        }
    } else {
        let mut label: HashMap<Color, u32> = HashMap::new();
        for &c in s.colors() {
            let next = map_back.len() as u32;
            let slot = *label.entry(c).or_insert(next);
            if slot == next {
                map_back.push(c);
            }
            dense.push(slot);
        }
    }
    (dense, map_back)
}

impl SortingState {
    /// Build the state from an input ordering, collapsing adjacent repeats
    /// on the way. Colors may be arbitrary ids; they are relabeled densely
    /// and the mapping retained for certificate extraction.
    pub fn preprocess(s: &SockOrdering) -> SortingState {
        assert!(s.len() < NONE as usize, "instance too long for u32 positions");
        let (dense, alphabet_map) = relabel_dense(s);
        let n = dense.len();
        let colors = alphabet_map.len();
        let mut state = SortingState {
            nodes: Vec::with_capacity(n),
            head: NONE,
            tail: NONE,
            node_at_pos: vec![NONE; n],
            pos_by_color: vec![BTreeSet::new(); colors],
            all_pos: PosIndex::new(n),
            lonely_pos: PosIndex::new(n),
            second_pos: PosIndex::new(n),
            dist_min: SimpleOrder::trivial(),
            dense_input: dense,
            alphabet_map,
            trace: Vec::new(),
            stats: DecideStats {
                input_len: n,
                ..DecideStats::default()
            },
        };
        let mut last_color = NONE;
        for i in 0..n {
            let c = state.dense_input[i];
            if c == last_color {
                continue;
            }
            let pos = i as u32;
            let id = state.nodes.len() as u32;
            state.nodes.push(Node {
                color: c,
                pos,
                prev: state.tail,
                next: NONE,
                alive: true,
            });
            if state.tail != NONE {
                state.nodes[state.tail as usize].next = id;
            } else {
                state.head = id;
            }
            state.tail = id;
            state.node_at_pos[i] = id;
            state.color_insert(c, pos);
            state.all_insert(pos);
            last_color = c;
            let count = state.color_count(c);
            if count == 1 {
                state.lonely_insert(pos);
            } else if count == 2 {
                let first = state.color_key(c, 0).unwrap();
                state.lonely_remove(first);
                state.second_insert(pos);
            }
        }
        state.stats.reduced_len = state.nodes.len();
        state
    }

    pub fn live_len(&self) -> usize {
        self.all_pos.len()
    }

    pub fn dist_min(&self) -> SimpleOrder {
        self.dist_min
    }

    /// Handle of the live node at an original position, if any.
    pub fn handle_at(&self, pos: usize) -> Option<NodeHandle> {
        let id = *self.node_at_pos.get(pos)?;
        if id != NONE && self.nodes[id as usize].alive {
            Some(NodeHandle(id))
        } else {
            None
        }
    }

    fn bump(&mut self) {
        self.stats.map_ops += 1;
    }

    fn color_insert(&mut self, c: u32, pos: u32) {
        self.bump();
        self.pos_by_color[c as usize].insert(pos);
    }

    fn color_remove(&mut self, c: u32, pos: u32) {
        self.bump();
        self.pos_by_color[c as usize].remove(&pos);
    }

    fn color_count(&mut self, c: u32) -> usize {
        self.bump();
        self.pos_by_color[c as usize].len()
    }

    /// k-th smallest live position of color `c` (k = 0, 1, 2).
    fn color_key(&mut self, c: u32, k: usize) -> Option<u32> {
        self.bump();
        self.pos_by_color[c as usize].iter().nth(k).copied()
    }

    fn color_first(&mut self, c: u32) -> Option<u32> {
        self.color_key(c, 0)
    }

    fn color_second(&mut self, c: u32) -> Option<u32> {
        self.color_key(c, 1)
    }

    fn color_last(&mut self, c: u32) -> Option<u32> {
        self.bump();
        self.pos_by_color[c as usize].iter().next_back().copied()
    }

    fn color_first_after(&mut self, c: u32, pos: u32) -> Option<u32> {
        self.bump();
        self.pos_by_color[c as usize]
            .range(pos + 1..)
            .next()
            .copied()
    }

    fn all_insert(&mut self, pos: u32) {
        self.bump();
        self.all_pos.insert(pos);
    }

    fn all_remove(&mut self, pos: u32) {
        self.bump();
        self.all_pos.remove(pos);
    }

    fn all_first_after(&mut self, pos: u32) -> Option<u32> {
        self.bump();
        self.all_pos.first_after(pos)
    }

    fn all_last_at_or_before(&mut self, pos: u32) -> Option<u32> {
        self.bump();
        self.all_pos.last_at_or_before(pos)
    }

    fn all_count_between(&mut self, lo: u32, hi: u32) -> usize {
        self.bump();
        self.all_pos.count_between(lo, hi)
    }

    fn lonely_insert(&mut self, pos: u32) {
        self.bump();
        self.lonely_pos.insert(pos);
    }

    fn lonely_remove(&mut self, pos: u32) {
        self.bump();
        self.lonely_pos.remove(pos);
    }

    fn lonely_first_at_or_after(&mut self, pos: u32) -> Option<u32> {
        self.bump();
        self.lonely_pos.first_at_or_after(pos)
    }

    fn lonely_count_between(&mut self, lo: u32, hi: u32) -> usize {
        self.bump();
        self.lonely_pos.count_between(lo, hi)
    }

    fn second_insert(&mut self, pos: u32) {
        self.bump();
        self.second_pos.insert(pos);
    }

    fn second_remove(&mut self, pos: u32) {
        self.bump();
        self.second_pos.remove(pos);
    }

    fn second_min(&mut self) -> Option<u32> {
        self.bump();
        self.second_pos.min()
    }

    fn color_at(&self, pos: u32) -> u32 {
        self.nodes[self.node_at_pos[pos as usize] as usize].color
    }

    fn unlink(&mut self, id: u32) {
        let Node { prev, next, .. } = self.nodes[id as usize];
        if prev != NONE {
            self.nodes[prev as usize].next = next;
        } else {
            self.head = next;
        }
        if next != NONE {
            self.nodes[next as usize].prev = prev;
        } else {
            self.tail = prev;
        }
        self.nodes[id as usize].alive = false;
    }

    /// Remove a node, repair the lonely/second/all indexes, and keep the
    /// list reduced: if the removal makes the neighbors equal, the later
    /// neighbor is deleted as well (iteratively).
    pub fn delete_node(&mut self, handle: NodeHandle) {
        let mut id = handle.0;
        loop {
            debug_assert!(self.nodes[id as usize].alive, "delete of dead node");
            let Node {
                color,
                pos,
                prev,
                next,
                ..
            } = self.nodes[id as usize];
            let count = self.color_count(color);
            if count == 1 {
                self.lonely_remove(pos);
            } else {
                let first = self.color_key(color, 0).unwrap();
                let second = self.color_key(color, 1).unwrap();
                if pos == first || pos == second {
                    self.second_remove(second);
                    if count >= 3 {
                        let third = self.color_key(color, 2).unwrap();
                        self.second_insert(third);
                    } else {
                        let other = if pos == first { second } else { first };
                        self.lonely_insert(other);
                    }
                }
            }
            self.color_remove(color, pos);
            self.all_remove(pos);
            self.unlink(id);
            self.stats.deletes += 1;
            if prev != NONE
                && next != NONE
                && self.nodes[prev as usize].color == self.nodes[next as usize].color
            {
                id = next;
                continue;
            }
            break;
        }
    }

    /// Reduce by `color`: record its last live position as the new
    /// distinguished minimal position, then delete every occurrence.
    pub fn reduce_color(&mut self, color: u32) {
        let last = self.color_last(color).expect("reduce of absent color");
        self.dist_min = SimpleOrder::at(last);
        self.trace.push(color);
        self.stats.reductions += 1;
        while let Some(first) = self.color_first(color) {
            let id = self.node_at_pos[first as usize];
            self.delete_node(NodeHandle(id));
        }
    }

    /// Exhaustive consistency sweep over all structures; panics on any
    /// violation. Test aid, not part of the decision path.
    pub fn check_invariants(&self) {
        let mut live: Vec<(u32, u32)> = Vec::new();
        let mut id = self.head;
        let mut prev = NONE;
        while id != NONE {
            let n = &self.nodes[id as usize];
            assert!(n.alive, "dead node linked at pos {}", n.pos);
            assert_eq!(n.prev, prev, "prev link broken at pos {}", n.pos);
            assert_eq!(
                self.node_at_pos[n.pos as usize], id,
                "node_at_pos broken at {}",
                n.pos
            );
            if let Some(&(pc, pp)) = live.last() {
                assert_ne!(pc, n.color, "list not reduced around pos {}", n.pos);
                assert!(pp < n.pos, "positions not increasing at {}", n.pos);
            }
            live.push((n.color, n.pos));
            prev = id;
            id = n.next;
        }
        assert_eq!(self.tail, prev, "tail out of date");
        assert_eq!(self.all_pos.len(), live.len(), "all_pos size mismatch");
        let mut per_color: HashMap<u32, Vec<u32>> = HashMap::new();
        for &(c, p) in &live {
            assert!(self.all_pos.contains(p), "all_pos missing {p}");
            per_color.entry(c).or_default().push(p);
        }
        let mut lonely = 0usize;
        let mut unlonely = 0usize;
        for (&c, positions) in &per_color {
            let set: Vec<u32> = self.pos_by_color[c as usize].iter().copied().collect();
            assert_eq!(&set, positions, "pos_by_color mismatch for color {c}");
            if positions.len() == 1 {
                assert!(
                    self.lonely_pos.contains(positions[0]),
                    "lonely_pos missing {} for color {c}",
                    positions[0]
                );
                lonely += 1;
            } else {
                assert!(
                    self.second_pos.contains(positions[1]),
                    "second_pos missing {} for color {c}",
                    positions[1]
                );
                unlonely += 1;
            }
        }
        for (c, set) in self.pos_by_color.iter().enumerate() {
            if !per_color.contains_key(&(c as u32)) {
                assert!(set.is_empty(), "stale positions for dead color {c}");
            }
        }
        assert_eq!(self.lonely_pos.len(), lonely, "lonely_pos size mismatch");
        assert_eq!(self.second_pos.len(), unlonely, "second_pos size mismatch");
    }
}

fn run(state: &mut SortingState) -> bool {
    loop {
        if state.second_pos.is_empty() {
            return true; // only lonely colors left
        }
        let pivot_sec = state.second_min().unwrap();
        let pivot = state.color_at(pivot_sec);
        let pivot_first = state.color_first(pivot).unwrap();
        // Minimality tests and the lonely-color query are relative to the
        // live prefix: the stored cutoff position itself was deleted by the
        // reduction that set it, so snap to the last live position below it.
        let prefix_end = state
            .all_last_at_or_before(state.dist_min.cutoff())
            .unwrap_or(0);
        let lonely = state.lonely_first_at_or_after(prefix_end);
        let all_num = state.all_count_between(pivot_first, pivot_sec);
        let lonely_num = state.lonely_count_between(pivot_first, pivot_sec);

        if let Some(b_pos) = lonely.filter(|&bp| bp < pivot_first) {
            // Case 1: a minimal lonely color appears before the pivot.
            state.stats.case1 += 1;
            let b = state.color_at(b_pos);
            state.reduce_color(b);
        } else if lonely.is_none_or(|bp| bp > pivot_sec) {
            // Case 2: no minimal lonely color up to the pivot's second
            // occurrence.
            if all_num != 1 {
                if prefix_end > pivot_first {
                    return false; // pivot is not minimal
                }
                state.stats.case2 += 1;
                state.reduce_color(pivot);
            } else {
                state.stats.case2_exception += 1;
                case2_exception(state, pivot, prefix_end);
            }
        } else {
            // Case 3: the earliest minimal lonely color lies strictly
            // between the pivot's first two occurrences.
            let b_pos = lonely.unwrap();
            let b = state.color_at(b_pos);
            if prefix_end > pivot_first {
                // pivot not minimal: only the lonely color can decide
                state.stats.case3_blocked += 1;
                state.reduce_color(b);
            } else if state.nodes[state.node_at_pos[pivot_first as usize] as usize].next
                == state.node_at_pos[b_pos as usize]
            {
                state.stats.case3_adjacent += 1;
                state.reduce_color(b);
            } else if all_num != lonely_num + 1 {
                state.stats.case3_pivot += 1;
                state.reduce_color(pivot);
            } else {
                state.stats.case3_exception += 1;
                case3_exception(state, pivot, b);
            }
        }

        if let Some(front) = state.second_min() {
            if front <= state.dist_min.cutoff() {
                // some color's second occurrence fell inside the new prefix:
                // the extended relation is no longer a partial order
                return false;
            }
        }
    }
}

/// Case 2 with exactly one color (`gap`) strictly between the pivot's first
/// two occurrences. Decides between reducing the pivot and reducing the gap
/// color by looking at which of them recurs first after the first foreign
/// color that follows the pivot's second occurrence.
fn case2_exception(state: &mut SortingState, pivot: u32, prefix_end: u32) {
    let pivot_first = state.color_first(pivot).unwrap();
    let pivot_sec = state.color_second(pivot).unwrap();
    let gap_pos = state.all_first_after(pivot_first).unwrap();
    debug_assert!(gap_pos < pivot_sec);
    let gap = state.color_at(gap_pos);
    if prefix_end > pivot_first {
        // pivot is not minimal; the gap color decides
        state.reduce_color(gap);
        return;
    }
    // Scan for the first color != pivot, gap after the second occurrence.
    // Pivot/gap nodes met on the way are deleted immediately: whichever
    // reduction follows would remove them anyway, and this keeps the scan
    // amortized against deletions. The pivot's first two occurrences are
    // never touched here, so `pivot_sec` stays valid.
    let mut x_pos: Option<u32> = None;
    loop {
        let sec_id = state.node_at_pos[pivot_sec as usize];
        let next = state.nodes[sec_id as usize].next;
        if next == NONE {
            break;
        }
        let c = state.nodes[next as usize].color;
        if c == pivot || c == gap {
            state.delete_node(NodeHandle(next));
        } else {
            x_pos = Some(state.nodes[next as usize].pos);
            break;
        }
    }
    let pivot_after = x_pos.and_then(|x| state.color_first_after(pivot, x));
    let gap_after = x_pos.and_then(|x| state.color_first_after(gap, x));
    match (pivot_after, gap_after) {
        (None, _) => state.reduce_color(pivot),
        (Some(_), None) => state.reduce_color(gap),
        (Some(p), Some(g)) if p < g => state.reduce_color(pivot),
        _ => state.reduce_color(gap),
    }
}

/// Case 3 with exactly one unlonely color (`gap`) between the pivot's first
/// two occurrences. Reduces by the lonely color when a later gap sock makes
/// the pivot unusable as a minimum, otherwise by the pivot.
fn case3_exception(state: &mut SortingState, pivot: u32, lonely_color: u32) {
    let pivot_first = state.color_first(pivot).unwrap();
    let pivot_sec = state.color_second(pivot).unwrap();
    let gap_pos = state.all_first_after(pivot_first).unwrap();
    debug_assert!(gap_pos < pivot_sec);
    let gap = state.color_at(gap_pos);
    let pivot_last = state.color_last(pivot).unwrap();
    let gap_after_sec = state.color_first_after(gap, pivot_sec);
    if pivot_last > pivot_sec {
        if let Some(g) = gap_after_sec {
            if g < pivot_last {
                // a gap sock precedes a later pivot sock
                state.reduce_color(lonely_color);
                return;
            }
        }
    }
    let sec_id = state.node_at_pos[pivot_sec as usize];
    let mut x_id = state.nodes[sec_id as usize].next;
    if x_id != NONE && state.nodes[x_id as usize].color == gap {
        x_id = state.nodes[x_id as usize].next;
    }
    let gap_above_x = if x_id == NONE {
        None
    } else {
        let x_pos = state.nodes[x_id as usize].pos;
        state.color_first_after(gap, x_pos)
    };
    if gap_above_x.is_none() {
        state.reduce_color(lonely_color);
    } else {
        state.reduce_color(pivot);
    }
}

/// Detect a forbidden triple in a rank sequence: positions `i < j < k` with
/// `v[k] < v[i] < v[j]`. Linear scan; `best_mid` is the largest value known
/// to have a strictly larger value after it.
fn has_forbidden_triple(ranks: impl Iterator<Item = u32>) -> bool {
    let mut stack: Vec<u32> = Vec::new();
    let mut best_mid: Option<u32> = None;
    for x in ranks {
        if let Some(m) = best_mid {
            if x < m {
                return true;
            }
        }
        while let Some(&top) = stack.last() {
            if top < x {
                best_mid = Some(best_mid.map_or(top, |m| m.max(top)));
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(x);
    }
    false
}

/// Check a certificate against an ordering in O(N + k) time: the order must
/// cover exactly the alphabet and admit no forbidden triple. Equivalent to
/// `oracle::check_with_order` (tested exhaustively), but usable at bench
/// scale.
pub fn validate_certificate(s: &SockOrdering, cert: &TotalOrderCertificate) -> bool {
    let mut rank: HashMap<Color, u32> = HashMap::with_capacity(cert.len());
    for (r, &c) in cert.ascending().iter().enumerate() {
        if rank.insert(c, r as u32).is_some() {
            return false; // duplicate color in the order
        }
    }
    let mut seen: HashMap<Color, ()> = HashMap::new();
    for &c in s.colors() {
        if !rank.contains_key(&c) {
            return false;
        }
        seen.insert(c, ());
    }
    if seen.len() != rank.len() {
        return false; // order mentions colors absent from the input
    }
    !has_forbidden_triple(s.colors().iter().map(|c| rank[c]))
}

/// Build the certificate from a completed sortable run: reduced colors in
/// reduction order (ascending), then the surviving all-lonely colors in
/// reverse order of appearance in the final list. The construction is
/// validated before being returned; a failure signals a decider defect.
pub fn extract_certificate(state: &SortingState) -> Result<TotalOrderCertificate, Error> {
    let mut ascending: Vec<u32> = state.trace.clone();
    let mut leftovers = Vec::new();
    let mut id = state.head;
    while id != NONE {
        leftovers.push(state.nodes[id as usize].color);
        id = state.nodes[id as usize].next;
    }
    leftovers.reverse();
    ascending.extend(leftovers);

    // validate in dense space against the preprocessed input
    let k = state.alphabet_map.len();
    let mut rank = vec![NONE; k];
    if ascending.len() != k {
        return Err(Error::CertificateInvalid);
    }
    for (r, &c) in ascending.iter().enumerate() {
        if (c as usize) >= k || rank[c as usize] != NONE {
            return Err(Error::CertificateInvalid);
        }
        rank[c as usize] = r as u32;
    }
    if has_forbidden_triple(state.dense_input.iter().map(|&c| rank[c as usize])) {
        return Err(Error::CertificateInvalid);
    }

    let original: Vec<Color> = ascending
        .into_iter()
        .map(|c| state.alphabet_map[c as usize])
        .collect();
    Ok(TotalOrderCertificate::from_ascending(original))
}

/// Decide foot-sortability of an ordering.
pub fn decide(s: &SockOrdering) -> Verdict {
    decide_with_stats(s).verdict
}

/// Decide foot-sortability, also returning instrumentation and the
/// reduction trace.
pub fn decide_with_stats(s: &SockOrdering) -> DecideOutcome {
    let mut state = SortingState::preprocess(s);
    // Alphabets of size <= 1 are sortable outright; the loop is never needed.
    let sortable = state.alphabet_map.len() <= 1 || run(&mut state);
    let trace = ReductionTrace {
        reduced_colors: state
            .trace
            .iter()
            .map(|&c| state.alphabet_map[c as usize])
            .collect(),
        sortable,
    };
    let verdict = if sortable {
        let cert = extract_certificate(&state)
            .expect("decider produced an invalid certificate; this is a defect");
        Verdict::Sortable(cert)
    } else {
        Verdict::NotSortable
    };
    DecideOutcome {
        verdict,
        stats: state.stats,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{check_with_order, oracle_by_orders, oracle_by_simulation};
    use crate::ordering::reduce_adjacent;

    fn parse(s: &str) -> SockOrdering {
        s.parse().unwrap()
    }

    fn live_string(state: &SortingState) -> String {
        let mut id = state.head;
        let mut out = String::new();
        while id != NONE {
            let c = state.nodes[id as usize].color;
            out.push(crate::ordering::color_label(state.alphabet_map[c as usize]).chars().next().unwrap());
            id = state.nodes[id as usize].next;
        }
        out
    }

    #[test]
    fn preprocess_collapses_and_indexes() {
        let state = SortingState::preprocess(&parse("aab"));
        state.check_invariants();
        assert_eq!(state.live_len(), 2);
        assert_eq!(live_string(&state), "ab");
        assert!(state.lonely_pos.contains(0) && state.lonely_pos.contains(2));
        assert!(state.second_pos.is_empty());

        let state = SortingState::preprocess(&parse("abab"));
        state.check_invariants();
        assert!(state.second_pos.contains(2) && state.second_pos.contains(3));
        assert_eq!(state.second_pos.len(), 2);
        assert_eq!(state.lonely_pos.len(), 0);

        let state = SortingState::preprocess(&SockOrdering::empty());
        state.check_invariants();
        assert_eq!(state.live_len(), 0);
        assert!(decide(&SockOrdering::empty()).is_sortable());
    }

    #[test]
    fn delete_repairs_indexes_and_reducedness() {
        // deleting the b of "aba" merges the two a's
        let mut state = SortingState::preprocess(&parse("aba"));
        state.delete_node(state.handle_at(1).unwrap());
        state.check_invariants();
        assert_eq!(live_string(&state), "a");

        // deleting the first a of "abcabc" makes a lonely
        let mut state = SortingState::preprocess(&parse("abcabc"));
        state.delete_node(state.handle_at(0).unwrap());
        state.check_invariants();
        assert_eq!(live_string(&state), "bcabc");
        assert!(state.lonely_pos.contains(3));
        assert!(!state.second_pos.contains(3));

        // deleting the first a of "abab" moves the second a into lonely
        let mut state = SortingState::preprocess(&parse("abab"));
        state.delete_node(state.handle_at(0).unwrap());
        state.check_invariants();
        assert!(state.lonely_pos.contains(2));
    }

    #[test]
    fn reduce_sets_distinguished_position() {
        let mut state = SortingState::preprocess(&parse("aba"));
        state.reduce_color(0);
        state.check_invariants();
        assert_eq!(live_string(&state), "b");
        assert_eq!(state.dist_min().position(), Some(2));

        let mut state = SortingState::preprocess(&parse("abcabc"));
        state.reduce_color(0);
        state.check_invariants();
        assert_eq!(live_string(&state), "bcbc");
        assert_eq!(state.dist_min().position(), Some(3));
        assert!(state.lonely_pos.is_empty());

        let mut state = SortingState::preprocess(&parse("ab"));
        state.reduce_color(1);
        state.check_invariants();
        assert_eq!(live_string(&state), "a");
        assert_eq!(state.dist_min().position(), Some(1));
    }

    #[test]
    fn decide_spot_checks() {
        assert_eq!(decide(&parse("abcdbacd")), Verdict::NotSortable);
        assert!(decide(&parse("abab")).is_sortable());
        assert!(decide(&SockOrdering::empty()).is_sortable());
        assert!(decide(&parse("aaaa")).is_sortable());

        let verdict = decide(&parse("abcab"));
        let cert = verdict.certificate().expect("abcab is sortable");
        assert!(check_with_order(&parse("abcab"), cert).unwrap());
        assert_eq!(cert.ascending(), &[2, 1, 0]); // c < b < a
    }

    #[test]
    fn prefix_snaps_to_live_positions() {
        // The stored cutoff of a reduction is a deleted position; minimality
        // must be judged against the last live position before it. This
        // input is sortable (a < b < d < c certifies it) but a literal
        // cutoff comparison would reject it.
        let s = parse("abacdbcd");
        assert!(oracle_by_simulation(&s).unwrap());
        let verdict = decide(&s);
        let cert = verdict.certificate().expect("abacdbcd is sortable");
        assert!(check_with_order(&s, cert).unwrap());
    }

    #[test]
    fn exception_paths_pick_documented_reductions() {
        // "abac" is a-z-a-x with a lonely z: the first reduction removes z
        let outcome = decide_with_stats(&parse("abac"));
        assert_eq!(outcome.trace.reduced_colors[0], 1); // b plays z
        assert!(outcome.verdict.is_sortable());

        // "abacab" is a-z-a-x-a-z: the pivot recurs before the gap color
        // after x, so the pivot is reduced first
        let s = parse("abacab");
        let outcome = decide_with_stats(&s);
        assert_eq!(outcome.stats.case2_exception, 1);
        assert_eq!(outcome.trace.reduced_colors[0], 0);
        assert_eq!(
            outcome.verdict.is_sortable(),
            oracle_by_simulation(&s).unwrap()
        );
    }

    #[test]
    fn nonminimal_pivot_in_exception_reduces_gap_color() {
        // "bacabc": the second iteration enters the single-gap case with a
        // non-minimal pivot, so the gap color is reduced.
        let s = parse("bacabc");
        let outcome = decide_with_stats(&s);
        assert_eq!(outcome.stats.case2_exception, 2);
        assert_eq!(outcome.trace.reduced_colors, vec![0, 2]); // a then c
        let cert = outcome.verdict.certificate().expect("sortable");
        assert_eq!(cert.ascending(), &[0, 2, 1]); // a < c < b
        assert!(check_with_order(&s, cert).unwrap());
        assert!(oracle_by_simulation(&s).unwrap());
    }

    #[test]
    fn case3_exception_branches() {
        // gap color recurs before the last pivot occurrence: the lonely
        // color is reduced first
        let s = parse("abcabad");
        let outcome = decide_with_stats(&s);
        assert_eq!(outcome.stats.case3_exception, 1);
        assert_eq!(outcome.trace.reduced_colors[0], 2); // c
        assert_eq!(
            outcome.verdict.is_sortable(),
            oracle_by_simulation(&s).unwrap()
        );

        // gap color follows x and the pivot does not recur: the pivot is
        // reduced first
        let s = parse("abcadb");
        let outcome = decide_with_stats(&s);
        assert_eq!(outcome.stats.case3_exception, 1);
        assert_eq!(outcome.trace.reduced_colors[0], 0); // a
        assert_eq!(
            outcome.verdict.is_sortable(),
            oracle_by_simulation(&s).unwrap()
        );
    }

    #[test]
    fn decide_matches_oracle_on_reduced_forms() {
        for text in ["abcdbacd", "abcab", "abab", "abacdbcd", "abcdabd", "aabbcc"] {
            let s = parse(text);
            let r = reduce_adjacent(&s);
            assert_eq!(decide(&s), decide(&r), "reduction changed verdict for {text}");
            assert_eq!(
                decide(&s).is_sortable(),
                oracle_by_orders(&s).unwrap().is_sortable(),
                "oracle disagreement for {text}"
            );
        }
    }

    #[test]
    fn stats_report_counts() {
        let outcome = decide_with_stats(&parse("abcdbacd"));
        assert_eq!(outcome.stats.input_len, 8);
        assert_eq!(outcome.stats.reduced_len, 8);
        assert!(outcome.stats.map_ops > 0);
        assert_eq!(outcome.stats.reductions, 1); // b-reduction, then failure
        assert_eq!(outcome.trace.reduced_colors, vec![1]);
        assert!(!outcome.trace.sortable);
    }

    #[test]
    fn validator_agrees_with_criterion_checker() {
        let orderings = ["abcab", "abcdbacd", "abab", "abc", "aabb", "abacdbcd"];
        let orders: [&[Color]; 4] = [&[0, 1, 2, 3], &[3, 2, 1, 0], &[1, 0, 3, 2], &[2, 0, 1, 3]];
        for text in orderings {
            let s = parse(text);
            let alphabet = s.alphabet();
            for order in orders {
                let order: Vec<Color> = order
                    .iter()
                    .filter(|c| alphabet.contains(c))
                    .copied()
                    .collect();
                if order.len() != alphabet.len() {
                    continue;
                }
                let cert = TotalOrderCertificate::from_ascending(order);
                assert_eq!(
                    validate_certificate(&s, &cert),
                    check_with_order(&s, &cert).unwrap(),
                    "mismatch for {text} under {cert}"
                );
            }
        }
    }
}
