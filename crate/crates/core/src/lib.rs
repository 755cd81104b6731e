//! Simulation and analysis of entanglement-assisted medium access.
//!
//! * [`hyperdense`]: two parties share a Bell pair and one classical slot
//!   and deliver 2.5 bits per slot on average.
//! * [`superdense`]: the two-bits-per-qubit reference.
//! * [`aloha`]: the classical slotted-Aloha reference.
//! * [`harness`]: campaign configuration, comparison report and output
//!   formats behind the `hdsim` binary.

pub mod aloha;
pub mod harness;
pub mod hyperdense;
pub mod qubit;
pub mod rng;
pub mod shard;
pub mod stats;
pub mod superdense;
