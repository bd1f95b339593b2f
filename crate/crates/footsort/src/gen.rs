//! Deterministic instance generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ordering::SockOrdering;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform iid ordering: `len` socks over `alphabet` colors.
pub fn random_ordering<R: Rng>(rng: &mut R, len: usize, alphabet: usize) -> SockOrdering {
    let k = alphabet.max(1) as u32;
    SockOrdering::new((0..len).map(|_| rng.gen_range(0..k)).collect())
}

/// Random 2-bounded ordering: a bag with a random number of doubled colors,
/// Fisher-Yates shuffled.
pub fn random_two_bounded<R: Rng>(rng: &mut R, len: usize) -> SockOrdering {
    let doubles = if len >= 2 { rng.gen_range(0..=len / 2) } else { 0 };
    let mut bag: Vec<u32> = Vec::with_capacity(len);
    for c in 0..doubles {
        bag.push(c as u32);
        bag.push(c as u32);
    }
    for c in 0..len - 2 * doubles {
        bag.push((doubles + c) as u32);
    }
    for i in (1..bag.len()).rev() {
        let j = rng.gen_range(0..=i);
        bag.swap(i, j);
    }
    SockOrdering::new(bag)
}

/// Interlocking chain `a0 a1 a0 a2 a1 a3 a2 ...`, truncated to `len`. Every
/// color appears at most twice; the decider is forced through long runs of
/// case-2/3 branches with interval queries and cascaded deletions.
pub fn adversarial_chain(len: usize) -> SockOrdering {
    let mut v: Vec<u32> = Vec::with_capacity(len);
    for c in [0u32, 1, 0] {
        if v.len() < len {
            v.push(c);
        }
    }
    let mut k = 2u32;
    while v.len() + 2 <= len {
        v.push(k);
        v.push(k - 1);
        k += 1;
    }
    if v.len() < len {
        v.push(k);
    }
    SockOrdering::new(v)
}
