//! Slotted-Aloha reference protocol.
//!
//! `M` cooperative users each transmit at the start of a slot with the same
//! probability `p`; a slot carries one packet (one bit, with one-bit slots)
//! iff exactly one user transmitted.

use thiserror::Error;

use crate::rng::{RandomSource, Seeder};
use crate::shard::run_chunks;
use crate::stats::{Accumulator, RunStats, StatsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlohaError {
    #[error("user count must be at least 1")]
    NoUsers,
    #[error("transmit probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("at least one slot is required")]
    NoSlots,
}

impl From<StatsError> for AlohaError {
    fn from(_: StatsError) -> Self {
        AlohaError::NoSlots
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlohaParams {
    m: u32,
    p: f64,
}

impl AlohaParams {
    pub fn new(m: u32, p: f64) -> Result<Self, AlohaError> {
        if m < 1 {
            return Err(AlohaError::NoUsers);
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(AlohaError::Probability(p));
        }
        Ok(Self { m, p })
    }

    /// Parameters at the symmetric optimum `p = 1/M`.
    pub fn optimal(m: u32) -> Result<Self, AlohaError> {
        Self::new(m, optimal_p(m)?)
    }

    pub fn users(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// One simulated slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlohaSlotResult {
    pub transmitters: u32,
    pub success: bool,
}

/// Per-user success probability `q = p(1-p)^(M-1)`, also `E(s_i)`.
pub fn success_probability(params: AlohaParams) -> f64 {
    params.p * (1.0 - params.p).powf(f64::from(params.m - 1))
}

/// Expected successful packets per slot, `M·p(1-p)^(M-1)`.
pub fn total_throughput(params: AlohaParams) -> f64 {
    f64::from(params.m) * success_probability(params)
}

pub fn optimal_p(m: u32) -> Result<f64, AlohaError> {
    if m < 1 {
        return Err(AlohaError::NoUsers);
    }
    Ok(1.0 / f64::from(m))
}

/// Throughput at `p = 1/M`: `(1 - 1/M)^(M-1)`, tending to `1/e`.
pub fn max_throughput(m: u32) -> Result<f64, AlohaError> {
    let p = optimal_p(m)?;
    Ok((1.0 - p).powf(f64::from(m - 1)))
}

pub fn simulate_slot<R: RandomSource + ?Sized>(
    params: AlohaParams,
    rng: &mut R,
) -> AlohaSlotResult {
    let transmitters = (0..params.m).filter(|_| rng.uniform() < params.p).count() as u32;
    AlohaSlotResult {
        transmitters,
        success: transmitters == 1,
    }
}

/// Accumulates the per-slot score over `n_slots` draws from one stream.
pub fn simulate_stream<R: RandomSource + ?Sized>(
    params: AlohaParams,
    n_slots: u64,
    rng: &mut R,
) -> Accumulator {
    let mut acc = Accumulator::new();
    for _ in 0..n_slots {
        acc.push(if simulate_slot(params, rng).success {
            1.0
        } else {
            0.0
        });
    }
    acc
}

/// Seeded Monte Carlo estimate of [`total_throughput`].
pub fn simulate(
    params: AlohaParams,
    n_slots: u64,
    seeder: &Seeder,
    workers: usize,
) -> Result<RunStats, AlohaError> {
    if n_slots == 0 {
        return Err(AlohaError::NoSlots);
    }
    let chunks = run_chunks::<_, AlohaError, _>(n_slots, seeder, workers, |rng, len| {
        Ok(simulate_stream(params, len, rng))
    })?;
    let mut total = Accumulator::new();
    for c in &chunks {
        total.merge(c);
    }
    Ok(total.finish()?)
}
