// SPDX-License-Identifier: Apache-2.0

//! Seeded random streams and Bernoulli skip sampling.
//!
//! Every random quantity is drawn from a ChaCha8 stream identified by a
//! `(seed, tag)` pair. Different tags select different ChaCha stream ids under
//! the same key, so edge groups sampled from different tags are independent
//! and each group is reproducible on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random stream for `(seed, tag)`.
pub fn stream(seed: u64, tag: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag);
    rng
}

/// Seed of the `index`-th child of `master` (SplitMix64 finalizer).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Number of failures before the next success of a Bernoulli(`p`) sequence,
/// `0 < p < 1`.
fn geometric_skip<R: Rng>(rng: &mut R, log_q: f64) -> f64 {
    let u: f64 = 1.0 - rng.random::<f64>();
    (u.ln() / log_q).floor()
}

/// Calls `f` on each index in `0..total` independently with probability `p`,
/// in ascending order.
pub fn for_each_bernoulli<R: Rng, F: FnMut(u64)>(rng: &mut R, total: u64, p: f64, mut f: F) {
    if total == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..total).for_each(f);
        return;
    }
    let log_q = (-p).ln_1p();
    let mut next = 0.0f64;
    loop {
        next += geometric_skip(rng, log_q);
        if next >= total as f64 {
            return;
        }
        f(next as u64);
        next += 1.0;
    }
}

/// Calls `f(u, v)` with `u < v < n` for each unordered pair independently with
/// probability `p`.
pub fn for_each_random_pair<R: Rng, F: FnMut(usize, usize)>(
    rng: &mut R,
    n: usize,
    p: f64,
    mut f: F,
) {
    if n < 2 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for v in 1..n {
            for u in 0..v {
                f(u, v);
            }
        }
        return;
    }
    // Pairs enumerated row by row: (0,1), (0,2), (1,2), (0,3), ...
    let log_q = (-p).ln_1p();
    let mut v: usize = 1;
    let mut w: f64 = -1.0;
    while v < n {
        w += 1.0 + geometric_skip(rng, log_q);
        while w >= v as f64 && v < n {
            w -= v as f64;
            v += 1;
        }
        if v < n {
            f(w as usize, v);
        }
    }
}
