//! Reference computations that share no code path with the library.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cycle lengths of a self-map, found by following each state's orbit until
/// the first repeated state and measuring the loop it closes. Cycles are
/// deduplicated by their smallest member. Returned sorted.
pub fn naive_cycle_lengths(successor: &[usize]) -> Vec<u64> {
    let n = successor.len();
    let mut seen_at = vec![u32::MAX; n];
    let mut stamp = vec![u32::MAX; n];
    let mut found = std::collections::BTreeMap::new();
    for start in 0..n {
        let mut x = start;
        let mut t = 0u32;
        while stamp[x] != start as u32 {
            stamp[x] = start as u32;
            seen_at[x] = t;
            x = successor[x];
            t += 1;
            assert!(t as usize <= n + 1);
        }
        let length = (t - seen_at[x]) as u64;
        let mut min = x;
        let mut y = successor[x];
        while y != x {
            min = min.min(y);
            y = successor[y];
        }
        found.insert(min, length);
    }
    let mut lengths: Vec<u64> = found.into_values().collect();
    lengths.sort_unstable();
    lengths
}

pub fn naive_gcd(values: &[u64]) -> u64 {
    values.iter().fold(0, |a, &b| {
        let (mut a, mut b) = (a, b);
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    })
}

/// Output of Wolfram rule `rule` on neighborhood `(l, c, r)`.
pub fn eca_bit(rule: u8, l: u8, c: u8, r: u8) -> u8 {
    (rule >> ((l << 2) | (c << 1) | r)) & 1
}

/// One ECA step on a ring of bits.
pub fn eca_ring_step(rule: u8, x: &[u8]) -> Vec<u8> {
    let n = x.len();
    (0..n)
        .map(|i| eca_bit(rule, x[(i + n - 1) % n], x[i], x[(i + 1) % n]))
        .collect()
}

/// Successor table of an ECA on all rings of length `n`, with ring states
/// read as binary numbers, first cell most significant.
pub fn eca_ring_successors(rule: u8, n: usize) -> Vec<usize> {
    (0..1usize << n)
        .map(|s| {
            let x: Vec<u8> = (0..n).map(|i| ((s >> (n - 1 - i)) & 1) as u8).collect();
            eca_ring_step(rule, &x)
                .iter()
                .fold(0usize, |acc, &b| (acc << 1) | b as usize)
        })
        .collect()
}

/// φ of an ECA: the rule on the all-`a` neighborhood.
pub fn eca_phi(rule: u8) -> Vec<usize> {
    (0..2u8).map(|a| eca_bit(rule, a, a, a) as usize).collect()
}

/// B3/S23 on a cell with `live` live neighbors.
pub fn life_next(alive: bool, live: u32) -> bool {
    live == 3 || (alive && live == 2)
}

/// φ of Life: a constant `a` neighborhood has `8a` live neighbors.
pub fn life_phi() -> Vec<usize> {
    vec![
        life_next(false, 0) as usize,
        life_next(true, 8) as usize,
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_successor(rng: &mut ChaCha8Rng, n: usize, permutation: bool) -> Vec<usize> {
    if permutation {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        p
    } else {
        (0..n).map(|_| rng.gen_range(0..n)).collect()
    }
}
