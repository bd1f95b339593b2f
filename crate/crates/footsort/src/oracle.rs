//! Brute-force ground truth: two independent deciders with disjoint failure
//! modes, plus the fixed-order criterion checker they are built on.
//!
//! `oracle_by_orders` enumerates total orders on the alphabet and tests each
//! with [`check_with_order`]; `oracle_by_simulation` searches the stack
//! machine directly. Everything downstream is tested against their
//! agreement. Clarity over speed throughout.

use std::collections::{HashMap, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

use crate::error::Error;
use crate::ordering::{canonicalize, Color, SockOrdering, TotalOrderCertificate, Verdict};

/// Alphabet limit for factorial order enumeration.
pub const MAX_ORDER_ALPHABET: usize = 8;
/// Length limit for the memoized stack-machine search.
pub const MAX_SIMULATION_LEN: usize = 24;

/// Occurrence positions per color, ascending.
struct OccTable {
    map: HashMap<Color, Vec<u32>>,
}

impl OccTable {
    fn build(s: &SockOrdering) -> Self {
        let mut map: HashMap<Color, Vec<u32>> = HashMap::new();
        for (i, &c) in s.colors().iter().enumerate() {
            map.entry(c).or_default().push(i as u32);
        }
        OccTable { map }
    }

    /// Does `x, y, z` occur as a subsequence (three fixed colors, in this
    /// order)? Greedy: earliest x, earliest y after it, any z after that.
    fn has_subsequence3(&self, x: Color, y: Color, z: Color) -> bool {
        let (Some(xs), Some(ys), Some(zs)) = (self.map.get(&x), self.map.get(&y), self.map.get(&z))
        else {
            return false;
        };
        let px = xs[0];
        let k = ys.partition_point(|&p| p <= px);
        if k == ys.len() {
            return false;
        }
        let py = ys[k];
        *zs.last().unwrap() > py
    }
}

/// Criterion check for a fixed total order: true iff no three colors
/// `a < b < c` (under `order`) appear in `s` in the order `b, c, a`.
/// Cost is cubic in the alphabet; intended for oracle-grade verification.
pub fn check_with_order(s: &SockOrdering, order: &TotalOrderCertificate) -> Result<bool, Error> {
    let mut sorted = order.ascending().to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != order.len() || sorted != s.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let occ = OccTable::build(s);
    let asc = order.ascending();
    for i in 0..asc.len() {
        for j in i + 1..asc.len() {
            for k in j + 1..asc.len() {
                // little = asc[i], mid = asc[j], big = asc[k]; forbidden
                // pattern is mid, big, little.
                if occ.has_subsequence3(asc[j], asc[k], asc[i]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Decide foot-sortability by enumerating total orders lexicographically
/// (as ascending color lists) and returning the first that passes the
/// criterion. Branches that already violate a decided triple are pruned;
/// pruning is sound because a violated triple stays violated in every
/// extension, so the first passing order found is still the
/// lexicographically first overall.
pub fn oracle_by_orders(s: &SockOrdering) -> Result<Verdict, Error> {
    let alphabet = s.alphabet();
    if alphabet.len() > MAX_ORDER_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            size: alphabet.len(),
            limit: MAX_ORDER_ALPHABET,
        });
    }
    let occ = OccTable::build(s);
    let mut chosen: Vec<Color> = Vec::with_capacity(alphabet.len());
    let mut used = vec![false; alphabet.len()];
    if search_orders(&alphabet, &occ, &mut chosen, &mut used) {
        Ok(Verdict::Sortable(TotalOrderCertificate::from_ascending(
            chosen,
        )))
    } else {
        Ok(Verdict::NotSortable)
    }
}

fn search_orders(
    alphabet: &[Color],
    occ: &OccTable,
    chosen: &mut Vec<Color>,
    used: &mut [bool],
) -> bool {
    if chosen.len() == alphabet.len() {
        return true;
    }
    'candidates: for idx in 0..alphabet.len() {
        if used[idx] {
            continue;
        }
        let next = alphabet[idx];
        // `next` becomes the largest element placed so far; every triple it
        // completes has its two smaller elements already placed.
        for i in 0..chosen.len() {
            for j in i + 1..chosen.len() {
                if occ.has_subsequence3(chosen[j], next, chosen[i]) {
                    continue 'candidates;
                }
            }
        }
        chosen.push(next);
        used[idx] = true;
        if search_orders(alphabet, occ, chosen, used) {
            return true;
        }
        used[idx] = false;
        chosen.pop();
    }
    false
}

#[derive(Default)]
struct FnvHasher(u64);

impl Hasher for FnvHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x100_0000_01b3);
        }
    }
    fn write_u64(&mut self, n: u64) {
        self.0 = (self.0 ^ n).wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(23);
    }
    fn write_u128(&mut self, n: u128) {
        self.write_u64(n as u64);
        self.write_u64((n >> 64) as u64);
    }
}

struct Simulation {
    colors: Vec<u8>,
    seen: HashSet<(u128, u64), BuildHasherDefault<FnvHasher>>,
}

impl Simulation {
    /// Depth-first search over machine states. A state is the input index,
    /// the stack contents, the color currently being emitted, and the set of
    /// colors already emitted and sealed. Popping a sealed color is pruned;
    /// visited states are memoized (the state graph is acyclic: pushes
    /// advance the input, pops shrink the stack).
    fn sortable(&mut self, idx: usize, stack: &mut Vec<u8>, block: Option<u8>, closed: u32) -> bool {
        if idx == self.colors.len() && stack.is_empty() {
            return true;
        }
        let mut packed: u128 = 0;
        for (i, &c) in stack.iter().enumerate() {
            packed |= ((c as u128) + 1) << (5 * i);
        }
        let meta = (idx as u64) | ((block.map_or(0, |b| b as u64 + 1)) << 8) | ((closed as u64) << 16);
        if !self.seen.insert((packed, meta)) {
            return false;
        }
        if idx < self.colors.len() {
            let c = self.colors[idx];
            stack.push(c);
            let ok = self.sortable(idx + 1, stack, block, closed);
            stack.pop();
            if ok {
                return true;
            }
        }
        if let Some(&top) = stack.last() {
            if Some(top) == block {
                stack.pop();
                let ok = self.sortable(idx, stack, block, closed);
                stack.push(top);
                if ok {
                    return true;
                }
            } else if closed & (1 << top) == 0 {
                let sealed = match block {
                    Some(b) => closed | (1 << b),
                    None => closed,
                };
                stack.pop();
                let ok = self.sortable(idx, stack, Some(top), sealed);
                stack.push(top);
                if ok {
                    return true;
                }
            }
        }
        false
    }
}

/// Decide foot-sortability by exhaustive search over foot actions: push the
/// next sock or pop the top, requiring each color's output to stay
/// contiguous. True iff some action sequence consumes the input and empties
/// the stack.
pub fn oracle_by_simulation(s: &SockOrdering) -> Result<bool, Error> {
    if s.len() > MAX_SIMULATION_LEN {
        return Err(Error::InstanceTooLarge {
            len: s.len(),
            limit: MAX_SIMULATION_LEN,
        });
    }
    let dense = canonicalize(s);
    let colors: Vec<u8> = dense.colors().iter().map(|&c| c as u8).collect();
    let mut sim = Simulation {
        colors,
        seen: HashSet::default(),
    };
    let mut stack = Vec::with_capacity(s.len());
    Ok(sim.sortable(0, &mut stack, None, 0))
}

/// Classical stack-sortability of a permutation of `1..=n`: true iff no
/// three values `a < b < c` appear in the order `b, c, a`. Implemented as
/// [`check_with_order`] under the natural order.
pub fn is_stack_sortable_permutation(p: &[u32]) -> Result<bool, Error> {
    let mut sorted = p.to_vec();
    sorted.sort_unstable();
    if sorted.iter().enumerate().any(|(i, &v)| v != i as u32 + 1) {
        return Err(Error::NotPermutation);
    }
    let s = SockOrdering::new(p.to_vec());
    let natural = TotalOrderCertificate::from_ascending(sorted);
    check_with_order(&s, &natural)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> SockOrdering {
        s.parse().unwrap()
    }

    fn cert(s: &str) -> TotalOrderCertificate {
        TotalOrderCertificate::from_ascending(parse(s).colors().to_vec())
    }

    /// Plain lexicographic enumeration with no pruning; reference for
    /// `oracle_by_orders`.
    fn orders_naive(s: &SockOrdering) -> Verdict {
        fn permute(
            alphabet: &[Color],
            chosen: &mut Vec<Color>,
            used: &mut [bool],
            s: &SockOrdering,
        ) -> Option<Vec<Color>> {
            if chosen.len() == alphabet.len() {
                let order = TotalOrderCertificate::from_ascending(chosen.clone());
                return check_with_order(s, &order).unwrap().then(|| chosen.clone());
            }
            for i in 0..alphabet.len() {
                if used[i] {
                    continue;
                }
                used[i] = true;
                chosen.push(alphabet[i]);
                if let Some(found) = permute(alphabet, chosen, used, s) {
                    return Some(found);
                }
                chosen.pop();
                used[i] = false;
            }
            None
        }
        let alphabet = s.alphabet();
        let mut chosen = Vec::new();
        let mut used = vec![false; alphabet.len()];
        match permute(&alphabet, &mut chosen, &mut used, s) {
            Some(order) => Verdict::Sortable(TotalOrderCertificate::from_ascending(order)),
            None => Verdict::NotSortable,
        }
    }

    #[test]
    fn criterion_spot_checks() {
        assert!(!check_with_order(&parse("bca"), &cert("abc")).unwrap());
        assert!(check_with_order(&parse("abc"), &cert("abc")).unwrap());
        // alphabet mismatch is an error
        assert!(check_with_order(&parse("ab"), &cert("abc")).is_err());
        assert!(check_with_order(&parse("abc"), &cert("ab")).is_err());
    }

    #[test]
    fn abcab_passing_orders() {
        let s = parse("abcab");
        let mut passing = Vec::new();
        let alphabet = s.alphabet();
        let mut perm = alphabet.clone();
        // 3! = 6 orders, enumerated explicitly
        let orders: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for idx in orders {
            for (slot, &i) in idx.iter().enumerate() {
                perm[slot] = alphabet[i];
            }
            if check_with_order(&s, &TotalOrderCertificate::from_ascending(perm.clone())).unwrap() {
                passing.push(perm.clone());
            }
        }
        // a<c<b and c<b<a both certify abcab; the oracle returns the
        // lexicographically first of them
        assert_eq!(passing, vec![vec![0, 2, 1], vec![2, 1, 0]]);
        assert_eq!(
            oracle_by_orders(&s).unwrap(),
            Verdict::Sortable(TotalOrderCertificate::from_ascending(vec![0, 2, 1]))
        );
    }

    #[test]
    fn orders_oracle_spot_checks() {
        assert!(oracle_by_orders(&parse("abab")).unwrap().is_sortable());
        assert_eq!(
            oracle_by_orders(&parse("abcdbacd")).unwrap(),
            Verdict::NotSortable
        );
        assert!(oracle_by_orders(&SockOrdering::empty()).unwrap().is_sortable());
        let wide = SockOrdering::new((0..9).collect());
        assert!(matches!(
            oracle_by_orders(&wide),
            Err(Error::AlphabetTooLarge { size: 9, .. })
        ));
    }

    #[test]
    fn pruned_enumeration_matches_naive() {
        // All orderings of length <= 5 over <= 4 colors: verdict and
        // certificate must both coincide with the unpruned enumeration.
        let mut seqs: Vec<Vec<Color>> = vec![Vec::new()];
        for _ in 0..5 {
            let mut next = Vec::new();
            for s in &seqs {
                for c in 0..4u32 {
                    let mut t = s.clone();
                    t.push(c);
                    next.push(t);
                }
            }
            seqs.extend(next);
        }
        seqs.dedup();
        for colors in seqs {
            let s = SockOrdering::new(colors);
            assert_eq!(oracle_by_orders(&s).unwrap(), orders_naive(&s), "s={s}");
        }
    }

    #[test]
    fn simulation_spot_checks() {
        assert!(oracle_by_simulation(&parse("aabb")).unwrap());
        assert!(!oracle_by_simulation(&parse("abcdabd")).unwrap());
        assert!(oracle_by_simulation(&parse("abcab")).unwrap());
        assert!(oracle_by_simulation(&SockOrdering::empty()).unwrap());
        let long = SockOrdering::new((0..25).collect());
        assert!(matches!(
            oracle_by_simulation(&long),
            Err(Error::InstanceTooLarge { len: 25, .. })
        ));
    }

    #[test]
    fn stack_sortable_permutations() {
        assert!(!is_stack_sortable_permutation(&[2, 3, 1]).unwrap());
        assert!(is_stack_sortable_permutation(&[1, 2, 3]).unwrap());
        assert!(is_stack_sortable_permutation(&[]).unwrap());
        assert!(is_stack_sortable_permutation(&[1, 1]).is_err());
        assert!(is_stack_sortable_permutation(&[0, 1]).is_err());
    }

    #[test]
    fn catalan_count_n5() {
        // permutations of [5]: 42 stack-sortable ones expected
        fn count(n: u32) -> usize {
            let mut total = 0;
            let mut perm: Vec<u32> = Vec::new();
            let mut used = vec![false; n as usize];
            fn rec(n: u32, perm: &mut Vec<u32>, used: &mut [bool], total: &mut usize) {
                if perm.len() == n as usize {
                    if is_stack_sortable_permutation(perm).unwrap() {
                        *total += 1;
                    }
                    return;
                }
                for v in 1..=n {
                    if !used[v as usize - 1] {
                        used[v as usize - 1] = true;
                        perm.push(v);
                        rec(n, perm, used, total);
                        perm.pop();
                        used[v as usize - 1] = false;
                    }
                }
            }
            rec(n, &mut perm, &mut used, &mut total);
            total
        }
        assert_eq!(count(5), 42);
    }
}
