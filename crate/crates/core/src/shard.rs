//! Deterministic chunked execution of Monte Carlo loops.
//!
//! Slots are cut into fixed-size chunks; chunk `i` draws from
//! `seeder.stream(i)`. Chunk results come back in index order, so the output
//! depends only on the seeder and slot count, never on the worker count.

use rayon::prelude::*;

use crate::rng::{Seeder, Stream};

pub const CHUNK_SLOTS: u64 = 1 << 16;

fn chunk_len(n_slots: u64, index: u64) -> u64 {
    (n_slots - index * CHUNK_SLOTS).min(CHUNK_SLOTS)
}

/// Runs `f(stream, len)` over every chunk of `n_slots`.
pub fn run_chunks<T, E, F>(n_slots: u64, seeder: &Seeder, workers: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(&mut Stream, u64) -> Result<T, E> + Sync,
{
    let chunks = n_slots.div_ceil(CHUNK_SLOTS);
    let job = |i: u64| f(&mut seeder.stream(i), chunk_len(n_slots, i));
    if workers <= 1 || chunks <= 1 {
        return (0..chunks).map(job).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..chunks).into_par_iter().map(job).collect()),
        Err(_) => (0..chunks).map(job).collect(),
    }
}
