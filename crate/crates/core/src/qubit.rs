//! Two-qubit statevector engine.
//!
//! Basis ordering is `|00⟩, |01⟩, |10⟩, |11⟩` with Alice's qubit in the left
//! (most significant) position, so `|xy⟩` has index `2x + y`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::rng::RandomSource;

/// Probability amplitude.
pub type Amplitude = Complex64;

/// Tolerance on the norm of a state handed to the engine.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Outcome probabilities below this are treated as exactly zero.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QubitError {
    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },
    #[error("state norm² is {norm_sqr}, expected 1")]
    NotNormalized { norm_sqr: f64 },
    #[error("state has no probability mass to measure")]
    Degenerate,
}

/// Selects one half of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitId {
    A,
    B,
}

impl QubitId {
    /// Value of this qubit in basis ket `index`.
    fn bit_of(self, index: usize) -> bool {
        match self {
            QubitId::A => index & 0b10 != 0,
            QubitId::B => index & 0b01 != 0,
        }
    }
}

/// Single-qubit encoder alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliOp {
    I,
    X,
    /// `i·Y`, the real matrix `[[0, 1], [-1, 0]]`.
    IY,
    Z,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::IY, PauliOp::Z];

    /// Row-major 2×2 matrix.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let p = Complex64::new(1.0, 0.0);
        let n = Complex64::new(-1.0, 0.0);
        match self {
            PauliOp::I => [[p, o], [o, p]],
            PauliOp::X => [[o, p], [p, o]],
            PauliOp::IY => [[o, p], [n, o]],
            PauliOp::Z => [[p, o], [o, n]],
        }
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliOp::I => "I",
            PauliOp::X => "X",
            PauliOp::IY => "iY",
            PauliOp::Z => "Z",
        })
    }
}

/// Label `(k, l)` of the Bell state `|β_kl⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellIndex {
    pub k: bool,
    pub l: bool,
}

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [
        BellIndex::new(false, false),
        BellIndex::new(false, true),
        BellIndex::new(true, false),
        BellIndex::new(true, true),
    ];

    pub const fn new(k: bool, l: bool) -> Self {
        Self { k, l }
    }
}

impl fmt::Display for BellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "β{}{}", self.k as u8, self.l as u8)
    }
}

/// Normalized pure state of two qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Amplitude; 4],
}

impl TwoQubitState {
    /// Validates finiteness and unit norm.
    pub fn new(amps: [Amplitude; 4]) -> Result<Self, QubitError> {
        if let Some(index) = amps
            .iter()
            .position(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(QubitError::NonFinite { index });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(QubitError::NotNormalized { norm_sqr });
        }
        Ok(Self { amps })
    }

    /// Scales arbitrary finite amplitudes to unit norm.
    pub fn normalized(amps: [Amplitude; 4]) -> Result<Self, QubitError> {
        if let Some(index) = amps
            .iter()
            .position(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(QubitError::NonFinite { index });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr < PROBABILITY_FLOOR {
            return Err(QubitError::Degenerate);
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(Self {
            amps: amps.map(|a| a * scale),
        })
    }

    /// Computational basis ket `|ab⟩`.
    pub fn basis(a: bool, b: bool) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 4];
        amps[(a as usize) << 1 | b as usize] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Amplitude; 4] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &TwoQubitState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_abs_diff(&self, other: &TwoQubitState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The canonical Bell state `|β_kl⟩`.
pub fn bell_state(idx: BellIndex) -> TwoQubitState {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let o = Complex64::new(0.0, 0.0);
    let amps = match (idx.k, idx.l) {
        (false, false) => [h, o, o, h],
        (false, true) => [h, o, o, -h],
        (true, false) => [o, h, h, o],
        (true, true) => [o, h, -h, o],
    };
    TwoQubitState { amps }
}

/// `(U ⊗ I)·state` for target A, `(I ⊗ U)·state` for target B.
pub fn apply_single_qubit(state: &TwoQubitState, op: PauliOp, target: QubitId) -> TwoQubitState {
    let m = op.matrix();
    let a = &state.amps;
    let mut out = [Complex64::new(0.0, 0.0); 4];
    match target {
        QubitId::A => {
            for b in 0..2 {
                let (i0, i1) = (b, 0b10 | b);
                out[i0] = m[0][0] * a[i0] + m[0][1] * a[i1];
                out[i1] = m[1][0] * a[i0] + m[1][1] * a[i1];
            }
        }
        QubitId::B => {
            for hi in [0, 0b10] {
                let (i0, i1) = (hi, hi | 1);
                out[i0] = m[0][0] * a[i0] + m[0][1] * a[i1];
                out[i1] = m[1][0] * a[i0] + m[1][1] * a[i1];
            }
        }
    }
    TwoQubitState { amps: out }
}

fn clamp(p: f64) -> f64 {
    if p < PROBABILITY_FLOOR {
        0.0
    } else {
        p
    }
}

/// Born-rule probabilities `(P(0), P(1))` for measuring `target`.
pub fn qubit_probabilities(state: &TwoQubitState, target: QubitId) -> (f64, f64) {
    let mut p = [0.0; 2];
    for (i, a) in state.amps.iter().enumerate() {
        p[target.bit_of(i) as usize] += a.norm_sqr();
    }
    (clamp(p[0]), clamp(p[1]))
}

/// Measures one qubit in the computational basis and collapses the state.
pub fn measure_qubit<R: RandomSource + ?Sized>(
    state: &TwoQubitState,
    target: QubitId,
    rng: &mut R,
) -> Result<(bool, TwoQubitState), QubitError> {
    let (p0, p1) = qubit_probabilities(state, target);
    let total = p0 + p1;
    if total < PROBABILITY_FLOOR {
        return Err(QubitError::Degenerate);
    }
    let outcome = rng.uniform() >= p0 / total;
    let kept = if outcome { p1 } else { p0 };
    let scale = kept.sqrt().recip();
    let mut amps = state.amps;
    for (i, a) in amps.iter_mut().enumerate() {
        *a = if target.bit_of(i) == outcome {
            *a * scale
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    Ok((outcome, TwoQubitState { amps }))
}

/// Outcome probabilities of the projective Bell measurement, in
/// [`BellIndex::ALL`] order.
pub fn bell_probabilities(state: &TwoQubitState) -> [f64; 4] {
    BellIndex::ALL.map(|idx| clamp(bell_state(idx).inner(state).norm_sqr()))
}

/// Projective measurement onto `{|β_kl⟩⟨β_kl|}`.
pub fn measure_bell<R: RandomSource + ?Sized>(
    state: &TwoQubitState,
    rng: &mut R,
) -> Result<BellIndex, QubitError> {
    let probs = bell_probabilities(state);
    let total: f64 = probs.iter().sum();
    if total < PROBABILITY_FLOOR {
        return Err(QubitError::Degenerate);
    }
    let u = rng.uniform() * total;
    let mut acc = 0.0;
    let mut last = None;
    for (idx, p) in BellIndex::ALL.into_iter().zip(probs) {
        if p == 0.0 {
            continue;
        }
        acc += p;
        if u < acc {
            return Ok(idx);
        }
        last = Some(idx);
    }
    // u landed in the rounding gap above the final cumulative sum.
    last.ok_or(QubitError::Degenerate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;
    use proptest::prelude::*;

    const H: f64 = FRAC_1_SQRT_2;

    /// Replays a fixed value for every draw.
    struct Fixed(f64);
    impl RandomSource for Fixed {
        fn uniform(&mut self) -> f64 {
            self.0
        }
    }

    fn real(v: [f64; 4]) -> [Complex64; 4] {
        v.map(|x| Complex64::new(x, 0.0))
    }

    fn assert_amps(state: &TwoQubitState, expected: [f64; 4], tol: f64) {
        for (a, e) in state.amplitudes().iter().zip(expected) {
            assert!(
                (a.re - e).abs() < tol && a.im.abs() < tol,
                "{state:?} vs {expected:?}"
            );
        }
    }

    #[test]
    fn bell_state_amplitudes() {
        assert_amps(
            &bell_state(BellIndex::new(false, false)),
            [H, 0.0, 0.0, H],
            1e-12,
        );
        assert_amps(
            &bell_state(BellIndex::new(false, true)),
            [H, 0.0, 0.0, -H],
            1e-12,
        );
        assert_amps(
            &bell_state(BellIndex::new(true, false)),
            [0.0, H, H, 0.0],
            1e-12,
        );
        assert_amps(
            &bell_state(BellIndex::new(true, true)),
            [0.0, H, -H, 0.0],
            1e-12,
        );
        for idx in BellIndex::ALL {
            assert!((bell_state(idx).norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_basis_is_orthonormal() {
        for a in BellIndex::ALL {
            for b in BellIndex::ALL {
                let ip = bell_state(a).inner(&bell_state(b));
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-12, "{a} {b}");
            }
        }
    }

    #[test]
    fn pauli_matrices_are_unitary() {
        for op in PauliOp::ALL {
            let m = op.matrix();
            for i in 0..2 {
                for j in 0..2 {
                    let v: Complex64 = (0..2).map(|r| m[r][i].conj() * m[r][j]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((v - Complex64::new(want, 0.0)).norm() < 1e-12, "{op}");
                }
            }
        }
    }

    #[test]
    fn encoder_on_alice_half() {
        let b00 = bell_state(BellIndex::new(false, false));
        let x = apply_single_qubit(&b00, PauliOp::X, QubitId::A);
        assert_amps(&x, [0.0, H, H, 0.0], 1e-12);
        assert_eq!(apply_single_qubit(&b00, PauliOp::I, QubitId::A), b00);
        // iY: |0⟩ → -|1⟩, |1⟩ → |0⟩, so (|00⟩+|11⟩)/√2 → (|01⟩ - |10⟩)/√2.
        let iy = apply_single_qubit(&b00, PauliOp::IY, QubitId::A);
        assert_amps(&iy, [0.0, H, -H, 0.0], 1e-12);
        assert!(iy.max_abs_diff(&bell_state(BellIndex::new(true, true))) < 1e-12);
    }

    #[test]
    fn target_b_acts_on_right_position() {
        let s = apply_single_qubit(&TwoQubitState::basis(false, false), PauliOp::X, QubitId::B);
        assert_eq!(s, TwoQubitState::basis(false, true));
        let s = apply_single_qubit(&TwoQubitState::basis(false, false), PauliOp::X, QubitId::A);
        assert_eq!(s, TwoQubitState::basis(true, false));
    }

    #[test]
    fn measure_basis_state_is_certain() {
        let ket = TwoQubitState::basis(false, false);
        for u in [0.0, 0.5, 0.999_999] {
            let (bit, post) = measure_qubit(&ket, QubitId::A, &mut Fixed(u)).unwrap();
            assert!(!bit);
            assert_eq!(post, ket);
        }
    }

    #[test]
    fn measure_beta00_collapses_to_correlated_ket() {
        let b00 = bell_state(BellIndex::new(false, false));
        let (p0, p1) = qubit_probabilities(&b00, QubitId::A);
        assert!((p0 - 0.5).abs() < 1e-12 && (p1 - 0.5).abs() < 1e-12);
        let (bit, post) = measure_qubit(&b00, QubitId::A, &mut Fixed(0.1)).unwrap();
        assert!(!bit);
        assert!(post.max_abs_diff(&TwoQubitState::basis(false, false)) < 1e-9);
        let (bit, post) = measure_qubit(&b00, QubitId::A, &mut Fixed(0.9)).unwrap();
        assert!(bit);
        assert!(post.max_abs_diff(&TwoQubitState::basis(true, true)) < 1e-9);
    }

    #[test]
    fn measure_beta10_on_b() {
        // β10 = (|01⟩ + |10⟩)/√2: B=0 leaves |10⟩, B=1 leaves |01⟩.
        let b10 = bell_state(BellIndex::new(true, false));
        let (p0, p1) = qubit_probabilities(&b10, QubitId::B);
        assert!((p0 - 0.5).abs() < 1e-12 && (p1 - 0.5).abs() < 1e-12);
        let (bit, post) = measure_qubit(&b10, QubitId::B, &mut Fixed(0.2)).unwrap();
        assert!(!bit);
        assert!(post.max_abs_diff(&TwoQubitState::basis(true, false)) < 1e-9);
        let (bit, post) = measure_qubit(&b10, QubitId::B, &mut Fixed(0.7)).unwrap();
        assert!(bit);
        assert!(post.max_abs_diff(&TwoQubitState::basis(false, true)) < 1e-9);
    }

    #[test]
    fn bell_measurement_of_bell_states_is_certain() {
        for idx in BellIndex::ALL {
            for u in [0.0, 0.3, 0.999_999_999] {
                assert_eq!(measure_bell(&bell_state(idx), &mut Fixed(u)).unwrap(), idx);
            }
        }
    }

    #[test]
    fn bell_measurement_of_basis_ket() {
        // |00⟩ = (β00 + β01)/√2.
        let probs = bell_probabilities(&TwoQubitState::basis(false, false));
        assert!((probs[0] - 0.5).abs() < 1e-12 && (probs[1] - 0.5).abs() < 1e-12);
        assert_eq!(probs[2], 0.0);
        assert_eq!(probs[3], 0.0);
        let ket = TwoQubitState::basis(false, false);
        assert_eq!(
            measure_bell(&ket, &mut Fixed(0.25)).unwrap(),
            BellIndex::new(false, false)
        );
        assert_eq!(
            measure_bell(&ket, &mut Fixed(0.75)).unwrap(),
            BellIndex::new(false, true)
        );
    }

    #[test]
    fn bell_measurement_ignores_global_phase() {
        let phase = Complex64::from_polar(1.0, 1.234);
        for idx in BellIndex::ALL {
            let rotated =
                TwoQubitState::new(bell_state(idx).amplitudes().map(|a| a * phase)).unwrap();
            assert_eq!(measure_bell(&rotated, &mut Fixed(0.5)).unwrap(), idx);
        }
    }

    #[test]
    fn constructor_rejects_bad_states() {
        assert!(matches!(
            TwoQubitState::new(real([1.0, 1.0, 0.0, 0.0])),
            Err(QubitError::NotNormalized { .. })
        ));
        assert_eq!(
            TwoQubitState::new(real([f64::NAN, 0.0, 0.0, 0.0])),
            Err(QubitError::NonFinite { index: 0 })
        );
        assert_eq!(
            TwoQubitState::normalized(real([0.0; 4])),
            Err(QubitError::Degenerate)
        );
    }

    #[test]
    fn degenerate_state_cannot_be_measured() {
        let zero = TwoQubitState {
            amps: real([0.0; 4]),
        };
        assert_eq!(
            measure_qubit(&zero, QubitId::A, &mut Fixed(0.5)),
            Err(QubitError::Degenerate)
        );
        assert_eq!(
            measure_bell(&zero, &mut Fixed(0.5)),
            Err(QubitError::Degenerate)
        );
    }

    #[test]
    fn beta00_halves_are_perfectly_correlated() {
        let mut rng = Stream::from_u64(11);
        let b00 = bell_state(BellIndex::new(false, false));
        for _ in 0..10_000 {
            let (a, post) = measure_qubit(&b00, QubitId::A, &mut rng).unwrap();
            let (b, _) = measure_qubit(&post, QubitId::B, &mut rng).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn beta00_empirical_frequency() {
        let n = 100_000;
        let mut rng = Stream::from_u64(5);
        let b00 = bell_state(BellIndex::new(false, false));
        let zeros = (0..n)
            .filter(|_| !measure_qubit(&b00, QubitId::A, &mut rng).unwrap().0)
            .count();
        let freq = zeros as f64 / n as f64;
        assert!(
            (freq - 0.5).abs() < 5.0 * 0.5 / (n as f64).sqrt(),
            "freq {freq}"
        );
    }

    fn arb_state() -> impl Strategy<Value = TwoQubitState> {
        prop::array::uniform8(-1.0f64..1.0)
            .prop_filter("non-degenerate", |v| {
                v.iter().map(|x| x * x).sum::<f64>() > 1e-3
            })
            .prop_map(|v| {
                let amps = [0, 1, 2, 3].map(|i| Complex64::new(v[2 * i], v[2 * i + 1]));
                TwoQubitState::normalized(amps).unwrap()
            })
    }

    fn arb_op() -> impl Strategy<Value = PauliOp> {
        prop::sample::select(PauliOp::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn single_qubit_ops_preserve_norm(s in arb_state(), op in arb_op(), on_a in any::<bool>()) {
            let target = if on_a { QubitId::A } else { QubitId::B };
            let out = apply_single_qubit(&s, op, target);
            prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn born_probabilities_are_complete(s in arb_state(), u in 0.0f64..1.0) {
            for target in [QubitId::A, QubitId::B] {
                let (p0, p1) = qubit_probabilities(&s, target);
                prop_assert!((p0 + p1 - 1.0).abs() < 1e-9);
            }
            let total: f64 = bell_probabilities(&s).iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-9);
            let (_, post) = measure_qubit(&s, QubitId::A, &mut Fixed(u)).unwrap();
            prop_assert!((post.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }
}
