//! Fixed leg-list corpora for the tuple sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::Natural;

/// Seed of the default random corpus.
pub const CORPUS_SEED: u64 = 0x7079_7475_706c_6531;
pub const DEFAULT_CASES: usize = 1000;
pub const DEFAULT_MAX_K: u64 = 1_000_000;

fn legs(v: &[u64]) -> Vec<Natural> {
    v.iter().copied().map(Natural::from).collect()
}

/// The worked leg lists: quadruple and n-tuple examples, including an
/// infeasible pair and a four-odd-leg list.
pub fn reference_leg_sets() -> Vec<Vec<Natural>> {
    [
        &[12, 15][..],
        &[210, 135],
        &[8, 19],
        &[6, 30],
        &[105, 150],
        &[14, 98],
        &[3, 5],
        &[2, 4],
        &[55, 15, 20, 10, 35, 45, 30, 25],
        &[24, 57, 54, 33, 39, 21, 48],
        &[1, 1, 1, 3],
    ]
    .into_iter()
    .map(legs)
    .collect()
}

/// `cases` deterministic leg lists with `k ≤ max_k`.
///
/// Cases rotate through five shapes so each rule is exercised: unconstrained
/// lists, lists sharing a common factor, all-even lists with `k ≡ 4 (mod 8)`,
/// lists with exactly four odd legs, and plain pairs.
pub fn random_leg_sets(cases: usize, max_k: u64, seed: u64) -> Vec<Vec<Natural>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(cases);
    while out.len() < cases {
        let shape = out.len() % 5;
        if let Some(v) = draw(&mut rng, shape, max_k) {
            out.push(legs(&v));
        }
    }
    out
}

fn draw(rng: &mut ChaCha8Rng, shape: usize, max_k: u64) -> Option<Vec<u64>> {
    let count = match shape {
        3 => rng.gen_range(4..=7),
        4 => 2,
        _ => rng.gen_range(1..=6),
    };
    let (scale, budget) = match shape {
        1 => {
            let g = [2u64, 3, 4, 5, 6, 7, 9, 10, 14, 15][rng.gen_range(0..10)];
            (g, max_k / (g * g))
        }
        2 => (2, max_k / 4),
        _ => (1, max_k),
    };
    let per_leg = ((budget / count as u64) as f64).sqrt() as u64;
    if per_leg < 1 {
        return None;
    }
    let mut v: Vec<u64> = (0..count).map(|_| rng.gen_range(1..=per_leg)).collect();
    match shape {
        // odd number of odd entries before doubling makes k = 4·odd
        2 if v.iter().filter(|x| *x % 2 == 1).count() % 2 == 0 => {
            v[0] = if v[0] > 1 { v[0] - 1 } else { v[0] + 1 };
        }
        3 => {
            for (i, x) in v.iter_mut().enumerate() {
                let want_odd = i < 4;
                if (*x % 2 == 1) != want_odd {
                    *x = if *x > 1 { *x - 1 } else { *x + 1 };
                }
            }
        }
        _ => {}
    }
    let v: Vec<u64> = v.into_iter().map(|x| x * scale).collect();
    let k: u64 = v.iter().map(|x| x * x).sum();
    (k <= max_k).then_some(v)
}
