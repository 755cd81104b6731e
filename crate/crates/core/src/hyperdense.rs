//! Hyperdense coding: two parties share one classical slot and a `|β00⟩`
//! pair per slot.
//!
//! Each party measures its half of the pair and gets the common bit `c`. A
//! party whose first bit equals `c` puts its second bit on the channel;
//! otherwise it stays silent. The peer reads the first bit from the mere
//! presence or absence of a transmission, and the second bit from the
//! payload when it arrives uncollided.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::qubit::{bell_state, measure_qubit, BellIndex, QubitError, QubitId};
use crate::rng::{RandomSource, Seeder};
use crate::shard::run_chunks;
use crate::stats::{Accumulator, RunStats, StatsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn peer(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::Alice => "Alice",
            Party::Bob => "Bob",
        })
    }
}

/// A party's two source bits for the slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartyBits {
    pub first: bool,
    pub second: bool,
}

impl PartyBits {
    pub const fn new(first: bool, second: bool) -> Self {
        Self { first, second }
    }
}

/// Common measurement result `C_A = C_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SharedOutcome {
    pub c: bool,
}

impl SharedOutcome {
    pub const fn new(c: bool) -> Self {
        Self { c }
    }
}

/// What both parties see on the channel at slot end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelObservation {
    Idle,
    Single { payload: bool, sender: Party },
    Collision,
}

impl ChannelObservation {
    pub fn swap_roles(self) -> Self {
        match self {
            ChannelObservation::Single { payload, sender } => ChannelObservation::Single {
                payload,
                sender: sender.peer(),
            },
            other => other,
        }
    }
}

impl fmt::Display for ChannelObservation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelObservation::Idle => "Unused",
            ChannelObservation::Single { .. } => "Transm.",
            ChannelObservation::Collision => "Collision",
        })
    }
}

/// Which source bit a delivered value stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BitLabel {
    A1,
    A2,
    B1,
    B2,
}

impl BitLabel {
    fn swap_roles(self) -> Self {
        match self {
            BitLabel::A1 => BitLabel::B1,
            BitLabel::A2 => BitLabel::B2,
            BitLabel::B1 => BitLabel::A1,
            BitLabel::B2 => BitLabel::A2,
        }
    }

    fn of(owner: Party, second: bool) -> Self {
        match (owner, second) {
            (Party::Alice, false) => BitLabel::A1,
            (Party::Alice, true) => BitLabel::A2,
            (Party::Bob, false) => BitLabel::B1,
            (Party::Bob, true) => BitLabel::B2,
        }
    }
}

impl fmt::Display for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BitLabel::A1 => "A1",
            BitLabel::A2 => "A2",
            BitLabel::B1 => "B1",
            BitLabel::B2 => "B2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledBit {
    pub label: BitLabel,
    pub value: bool,
}

/// What a party learned about its peer's bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodedView {
    pub peer_first: bool,
    pub peer_second: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolViolation {
    #[error("{party} transmitted but observed an idle channel")]
    SentButIdle { party: Party },
    #[error("{party} transmitted but observed a lone transmission from its peer")]
    SentButPeerAlone { party: Party },
    #[error("{party} stayed silent but observed a collision")]
    SilentButCollision { party: Party },
    #[error("{party} stayed silent but observed its own transmission")]
    SilentButOwnTransmission { party: Party },
    #[error("{party}'s own transmission arrived with the wrong payload")]
    PayloadMismatch { party: Party },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperdenseError {
    #[error("at least one slot is required")]
    NoSlots,
    #[error(transparent)]
    Qubit(#[from] QubitError),
    #[error("pair halves measured {alice} and {bob}")]
    Uncorrelated { alice: bool, bob: bool },
}

impl From<StatsError> for HyperdenseError {
    fn from(_: StatsError) -> Self {
        HyperdenseError::NoSlots
    }
}

/// Transmit the second bit iff the first bit matches the shared outcome.
pub fn decide_send(own: PartyBits, c: SharedOutcome) -> Option<bool> {
    (own.first == c.c).then_some(own.second)
}

pub fn resolve_channel(a_tx: Option<bool>, b_tx: Option<bool>) -> ChannelObservation {
    match (a_tx, b_tx) {
        (Some(_), Some(_)) => ChannelObservation::Collision,
        (None, None) => ChannelObservation::Idle,
        (Some(payload), None) => ChannelObservation::Single {
            payload,
            sender: Party::Alice,
        },
        (None, Some(payload)) => ChannelObservation::Single {
            payload,
            sender: Party::Bob,
        },
    }
}

/// Recovers the peer's bits from the shared outcome, what this party sent,
/// and the channel observation.
pub fn decode(
    own_sent: Option<bool>,
    c: SharedOutcome,
    obs: ChannelObservation,
    me: Party,
) -> Result<DecodedView, ProtocolViolation> {
    use ChannelObservation::*;
    let matched = DecodedView {
        peer_first: c.c,
        peer_second: None,
    };
    let inverted = DecodedView {
        peer_first: !c.c,
        peer_second: None,
    };
    match (own_sent, obs) {
        (Some(_), Collision) => Ok(matched),
        (Some(_), Idle) => Err(ProtocolViolation::SentButIdle { party: me }),
        (Some(mine), Single { payload, sender }) if sender == me => {
            if mine == payload {
                Ok(inverted)
            } else {
                Err(ProtocolViolation::PayloadMismatch { party: me })
            }
        }
        (Some(_), Single { .. }) => Err(ProtocolViolation::SentButPeerAlone { party: me }),
        (None, Idle) => Ok(inverted),
        (None, Collision) => Err(ProtocolViolation::SilentButCollision { party: me }),
        (None, Single { sender, .. }) if sender == me => {
            Err(ProtocolViolation::SilentButOwnTransmission { party: me })
        }
        (None, Single { payload, .. }) => Ok(DecodedView {
            peer_first: c.c,
            peer_second: Some(payload),
        }),
    }
}

/// Record of one protocol round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotOutcome {
    /// Row number 1..=8 when produced by [`enumerate_scenarios`].
    pub scenario_index: Option<u8>,
    pub alice: PartyBits,
    pub bob: PartyBits,
    pub c: SharedOutcome,
    pub a_sent: Option<bool>,
    pub b_sent: Option<bool>,
    pub channel: ChannelObservation,
    /// Bob's bits as decoded by Alice, in label order.
    pub delivered_to_alice: Vec<LabeledBit>,
    /// Alice's bits as decoded by Bob, in label order.
    pub delivered_to_bob: Vec<LabeledBit>,
    pub k: u8,
}

impl SlotOutcome {
    /// The same slot with Alice and Bob exchanged.
    pub fn swap_roles(&self) -> SlotOutcome {
        let swap = |bits: &[LabeledBit]| {
            let mut v: Vec<LabeledBit> = bits
                .iter()
                .map(|b| LabeledBit {
                    label: b.label.swap_roles(),
                    value: b.value,
                })
                .collect();
            v.sort();
            v
        };
        SlotOutcome {
            scenario_index: None,
            alice: self.bob,
            bob: self.alice,
            c: self.c,
            a_sent: self.b_sent,
            b_sent: self.a_sent,
            channel: self.channel.swap_roles(),
            delivered_to_alice: swap(&self.delivered_to_bob),
            delivered_to_bob: swap(&self.delivered_to_alice),
            k: self.k,
        }
    }

    /// All delivered bits in label order.
    pub fn delivered(&self) -> Vec<LabeledBit> {
        let mut all: Vec<LabeledBit> = self
            .delivered_to_alice
            .iter()
            .chain(&self.delivered_to_bob)
            .copied()
            .collect();
        all.sort();
        all
    }
}

fn delivered_from(owner: Party, view: DecodedView) -> Vec<LabeledBit> {
    let mut bits = vec![LabeledBit {
        label: BitLabel::of(owner, false),
        value: view.peer_first,
    }];
    if let Some(value) = view.peer_second {
        bits.push(LabeledBit {
            label: BitLabel::of(owner, true),
            value,
        });
    }
    bits
}

/// One full round: both send decisions, the channel, both decodes.
pub fn run_slot(alice: PartyBits, bob: PartyBits, c: SharedOutcome) -> SlotOutcome {
    let a_sent = decide_send(alice, c);
    let b_sent = decide_send(bob, c);
    let channel = resolve_channel(a_sent, b_sent);
    // Both parties run the protocol honestly, so the observation is always
    // consistent with what each one sent.
    let at_alice = decode(a_sent, c, channel, Party::Alice).expect("consistent channel");
    let at_bob = decode(b_sent, c, channel, Party::Bob).expect("consistent channel");
    let delivered_to_alice = delivered_from(Party::Bob, at_alice);
    let delivered_to_bob = delivered_from(Party::Alice, at_bob);
    let k = (delivered_to_alice.len() + delivered_to_bob.len()) as u8;
    SlotOutcome {
        scenario_index: None,
        alice,
        bob,
        c,
        a_sent,
        b_sent,
        channel,
        delivered_to_alice,
        delivered_to_bob,
        k,
    }
}

/// The eight `(A_1, B_1, c)` scenarios in table order, with both second
/// bits set to `second`.
pub fn enumerate_scenarios_with(second: bool) -> Vec<SlotOutcome> {
    let mut rows = Vec::with_capacity(8);
    for a1 in [false, true] {
        for b1 in [false, true] {
            for c in [false, true] {
                let mut row = run_slot(
                    PartyBits::new(a1, second),
                    PartyBits::new(b1, second),
                    SharedOutcome::new(c),
                );
                row.scenario_index = Some(rows.len() as u8 + 1);
                rows.push(row);
            }
        }
    }
    rows
}

pub fn enumerate_scenarios() -> Vec<SlotOutcome> {
    enumerate_scenarios_with(false)
}

/// Integer delivered-bit counts summed over equiprobable scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScenarioTotals {
    pub scenarios: u32,
    pub total_k: u32,
    pub to_alice: u32,
    pub to_bob: u32,
}

impl ScenarioTotals {
    pub fn from_scenarios(rows: &[SlotOutcome]) -> Self {
        rows.iter().fold(
            ScenarioTotals {
                scenarios: 0,
                total_k: 0,
                to_alice: 0,
                to_bob: 0,
            },
            |t, r| ScenarioTotals {
                scenarios: t.scenarios + 1,
                total_k: t.total_k + u32::from(r.k),
                to_alice: t.to_alice + r.delivered_to_alice.len() as u32,
                to_bob: t.to_bob + r.delivered_to_bob.len() as u32,
            },
        )
    }

    pub fn expected_total(&self) -> f64 {
        f64::from(self.total_k) / f64::from(self.scenarios)
    }

    pub fn expected_to_alice(&self) -> f64 {
        f64::from(self.to_alice) / f64::from(self.scenarios)
    }

    pub fn expected_to_bob(&self) -> f64 {
        f64::from(self.to_bob) / f64::from(self.scenarios)
    }
}

pub fn scenario_totals() -> ScenarioTotals {
    ScenarioTotals::from_scenarios(&enumerate_scenarios())
}

/// `Σ (1/8)·K_l` over the enumerated scenarios.
pub fn expected_bits_analytic() -> f64 {
    scenario_totals().expected_total()
}

/// Where the shared outcome `c` comes from in simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSource {
    /// Prepare `|β00⟩` and measure each half separately.
    Qubit,
    /// Draw `c` from a fair coin.
    Coin,
}

/// Draws the shared outcome for one slot.
pub fn shared_outcome<R: RandomSource + ?Sized>(
    source: PairSource,
    rng: &mut R,
) -> Result<SharedOutcome, HyperdenseError> {
    match source {
        PairSource::Coin => Ok(SharedOutcome::new(rng.bit())),
        PairSource::Qubit => {
            let pair = bell_state(BellIndex::new(false, false));
            let (alice, collapsed) = measure_qubit(&pair, QubitId::A, rng)?;
            let (bob, _) = measure_qubit(&collapsed, QubitId::B, rng)?;
            if alice != bob {
                return Err(HyperdenseError::Uncorrelated { alice, bob });
            }
            Ok(SharedOutcome::new(alice))
        }
    }
}

/// Raw per-chunk moments of a hyperdense run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HyperdenseTally {
    pub total: Accumulator,
    pub to_alice: Accumulator,
    pub to_bob: Accumulator,
    pub c_zero: Accumulator,
}

impl HyperdenseTally {
    pub fn merge(&mut self, other: &HyperdenseTally) {
        self.total.merge(&other.total);
        self.to_alice.merge(&other.to_alice);
        self.to_bob.merge(&other.to_bob);
        self.c_zero.merge(&other.c_zero);
    }

    pub fn finish(&self) -> Result<HyperdenseRun, HyperdenseError> {
        Ok(HyperdenseRun {
            total: self.total.finish()?,
            to_alice: self.to_alice.finish()?,
            to_bob: self.to_bob.finish()?,
            c_zero: self.c_zero.finish()?,
        })
    }
}

/// Monte Carlo summary: delivered bits per slot in total and per direction,
/// plus the frequency of `c = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperdenseRun {
    pub total: RunStats,
    pub to_alice: RunStats,
    pub to_bob: RunStats,
    pub c_zero: RunStats,
}

/// Plays `n_slots` rounds on one stream with equiprobable source bits.
pub fn simulate_stream<R: RandomSource + ?Sized>(
    n_slots: u64,
    rng: &mut R,
    source: PairSource,
) -> Result<HyperdenseTally, HyperdenseError> {
    let mut tally = HyperdenseTally::default();
    for _ in 0..n_slots {
        let alice = PartyBits::new(rng.bit(), rng.bit());
        let bob = PartyBits::new(rng.bit(), rng.bit());
        let c = shared_outcome(source, rng)?;
        let slot = run_slot(alice, bob, c);
        tally.total.push(f64::from(slot.k));
        tally.to_alice.push(slot.delivered_to_alice.len() as f64);
        tally.to_bob.push(slot.delivered_to_bob.len() as f64);
        tally.c_zero.push(if c.c { 0.0 } else { 1.0 });
    }
    Ok(tally)
}

pub fn simulate(
    n_slots: u64,
    seeder: &Seeder,
    source: PairSource,
    workers: usize,
) -> Result<HyperdenseRun, HyperdenseError> {
    if n_slots == 0 {
        return Err(HyperdenseError::NoSlots);
    }
    let chunks = run_chunks(n_slots, seeder, workers, |rng, len| {
        simulate_stream(len, rng, source)
    })?;
    let mut tally = HyperdenseTally::default();
    for c in &chunks {
        tally.merge(c);
    }
    tally.finish()
}
