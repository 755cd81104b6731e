//! Superdense coding: two classical bits carried by one half of a shared
//! `|β00⟩` pair.

use std::fmt;

use thiserror::Error;

use crate::qubit::{
    apply_single_qubit, bell_state, measure_bell, BellIndex, PauliOp, QubitError, QubitId,
    TwoQubitState,
};
use crate::rng::{RandomSource, Seeder};
use crate::shard::run_chunks;
use crate::stats::{Accumulator, RunStats};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SuperdenseError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Qubit(#[from] QubitError),
}

/// Classical bits delivered per invocation.
pub const BITS_PER_USE: f64 = 2.0;

/// Alice's classical bit pair `(A_1, A_2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dibit {
    pub a1: bool,
    pub a2: bool,
}

impl Dibit {
    pub const ALL: [Dibit; 4] = [
        Dibit::new(false, false),
        Dibit::new(false, true),
        Dibit::new(true, false),
        Dibit::new(true, true),
    ];

    pub const fn new(a1: bool, a2: bool) -> Self {
        Self { a1, a2 }
    }
}

impl fmt::Display for Dibit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a1 as u8, self.a2 as u8)
    }
}

pub fn encode(d: Dibit) -> PauliOp {
    match (d.a1, d.a2) {
        (false, false) => PauliOp::I,
        (false, true) => PauliOp::Z,
        (true, false) => PauliOp::X,
        (true, true) => PauliOp::IY,
    }
}

/// Joint state Bob holds once Alice's encoded qubit has arrived.
pub fn channel_state_after_encoding(d: Dibit) -> TwoQubitState {
    let shared = bell_state(BellIndex::new(false, false));
    apply_single_qubit(&shared, encode(d), QubitId::A)
}

/// Full protocol run: encode, hand the qubit over, Bell-measure, read off.
pub fn roundtrip<R: RandomSource + ?Sized>(d: Dibit, rng: &mut R) -> Result<Dibit, QubitError> {
    let joint = channel_state_after_encoding(d);
    let BellIndex { k, l } = measure_bell(&joint, rng)?;
    Ok(Dibit::new(k, l))
}

/// Round-trips `n_trials` uniformly drawn dibits and returns the success
/// indicator statistics.
pub fn simulate(
    n_trials: u64,
    seeder: &Seeder,
    workers: usize,
) -> Result<RunStats, SuperdenseError> {
    if n_trials == 0 {
        return Err(SuperdenseError::NoTrials);
    }
    let chunks = run_chunks::<_, SuperdenseError, _>(n_trials, seeder, workers, |rng, len| {
        let mut acc = Accumulator::new();
        for _ in 0..len {
            let d = Dibit::new(rng.bit(), rng.bit());
            acc.push(if roundtrip(d, rng)? == d { 1.0 } else { 0.0 });
        }
        Ok(acc)
    })?;
    let mut total = Accumulator::new();
    for c in &chunks {
        total.merge(c);
    }
    total.finish().map_err(|_| SuperdenseError::NoTrials)
}
