//! Dense statevector simulation of the circuit IR.
//!
//! Amplitudes are indexed by `basis_index`: wire `q` contributes bit
//! `2^q`, so the index of a word `w` is its big-endian binary value under
//! the position↔wire map of [`crate::bitstrings`]. The register is
//! deliberately dense — the verification suite lives at small `L` — and
//! capped at [`DEFAULT_WIRE_CAP`] wires (64 MiB of complex doubles)
//! unless a caller raises the cap explicitly.

use num_complex::Complex64;

use crate::bitstrings::BitString;
use crate::circuit::{u_matrix, Circuit, Gate, GateKind};
use crate::coefficients::AmplitudeTable;
use crate::{Error, Result};

/// Default ceiling on register width; `2^22` amplitudes ≈ 64 MiB.
pub const DEFAULT_WIRE_CAP: usize = 22;

/// A dense register of `2^{n_wires}` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_wires: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_wires` wires, under the default cap.
    pub fn zero_state(n_wires: usize) -> Result<StateVector> {
        Self::zero_state_capped(n_wires, DEFAULT_WIRE_CAP)
    }

    /// `|0…0⟩` with an explicit cap for callers who accept the memory.
    pub fn zero_state_capped(n_wires: usize, cap: usize) -> Result<StateVector> {
        Self::check_width(n_wires, cap)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_wires];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_wires, amps })
    }

    /// The basis state at `index`.
    pub fn basis_state(n_wires: usize, index: usize) -> Result<StateVector> {
        let mut state = Self::zero_state(n_wires)?;
        if index >= state.amps.len() {
            return Err(Error::InvalidInput {
                what: "basis index",
                reason: format!("index {index} outside 2^{n_wires} amplitudes"),
            });
        }
        state.amps.swap(0, index);
        Ok(state)
    }

    /// The basis state `|w⟩`.
    pub fn from_word(w: &BitString) -> Result<StateVector> {
        Self::basis_state(w.len(), w.basis_index())
    }

    /// Wraps raw amplitudes; the length must be `2^{n_wires}`. No width
    /// cap applies — the memory is already the caller's.
    pub fn from_amplitudes(n_wires: usize, amps: Vec<Complex64>) -> Result<StateVector> {
        if n_wires == 0 || n_wires >= usize::BITS as usize {
            return Err(Error::InvalidInput {
                what: "register width",
                reason: format!("cannot index 2^{n_wires} amplitudes"),
            });
        }
        if amps.len() != 1 << n_wires {
            return Err(Error::InvalidInput {
                what: "amplitude vector",
                reason: format!(
                    "expected 2^{n_wires} = {} amplitudes, got {}",
                    1usize << n_wires,
                    amps.len()
                ),
            });
        }
        Ok(StateVector { n_wires, amps })
    }

    fn check_width(n_wires: usize, cap: usize) -> Result<()> {
        if n_wires == 0 {
            return Err(Error::InvalidInput {
                what: "register width",
                reason: "a register needs at least one wire".into(),
            });
        }
        if n_wires > cap {
            return Err(Error::WireCapExceeded { l: n_wires, cap });
        }
        Ok(())
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    /// All `2^{n_wires}` amplitudes in basis-index order.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// The amplitude at one basis index.
    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// Euclidean norm; 1 within 1e−10 after any circuit application.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies one gate in place.
    ///
    /// Amplitude pairs whose control wires all read 1 receive the 2×2
    /// action on the target wire; everything else is untouched. The walk
    /// enumerates only indices with the control bits set (submask
    /// iteration over the free wires), so a gate with `c` controls costs
    /// `2^{L−c}` work.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        let oob = |wire: usize| Error::WireOutOfRange {
            wire,
            n_wires: self.n_wires,
        };
        if gate.target >= self.n_wires {
            return Err(oob(gate.target));
        }
        let target_bit = 1usize << gate.target;
        let mut control_mask = 0usize;
        for &c in &gate.controls {
            if c >= self.n_wires {
                return Err(oob(c));
            }
            control_mask |= 1usize << c;
        }

        let flip = [
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        let matrix = match gate.kind {
            GateKind::X | GateKind::Cnot => flip,
            GateKind::Cu => {
                let angles = gate.angles.as_ref().ok_or_else(|| Error::InvalidInput {
                    what: "gate",
                    reason: "cu gates require angles".to_string(),
                })?;
                u_matrix(angles)
            }
        };

        let full = (1usize << self.n_wires) - 1;
        let free_mask = full & !(control_mask | target_bit);
        // Enumerate every submask s of free_mask; s | control_mask visits
        // exactly the indices whose controls are 1 and target is 0.
        let mut sub = 0usize;
        loop {
            let lo = sub | control_mask;
            let hi = lo | target_bit;
            let (a0, a1) = (self.amps[lo], self.amps[hi]);
            self.amps[lo] = matrix[0][0] * a0 + matrix[0][1] * a1;
            self.amps[hi] = matrix[1][0] * a0 + matrix[1][1] * a1;
            if sub == free_mask {
                break;
            }
            sub = sub.wrapping_sub(free_mask) & free_mask;
        }
        Ok(())
    }

    /// Applies a whole circuit in list order.
    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n_wires() != self.n_wires {
            return Err(Error::SizeMismatch {
                left: self.n_wires,
                right: circuit.n_wires(),
            });
        }
        for gate in circuit.gates() {
            self.apply(gate)?;
        }
        Ok(())
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_wires != other.n_wires {
            return Err(Error::SizeMismatch {
                left: self.n_wires,
                right: other.n_wires,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Serializes the amplitudes as a JSON array of `[re, im]` pairs in
    /// basis-index order.
    pub fn to_json(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        serde_json::to_string(&pairs).expect("amplitude arrays serialize")
    }
}

/// The normalized target `Σ_w f(w)/F({}) |w⟩` built directly from a
/// table, bypassing the circuit.
pub fn target_state(table: &AmplitudeTable) -> Result<StateVector> {
    let mut state = StateVector::zero_state(table.l())?;
    state.amps[0] = Complex64::new(0.0, 0.0);
    let normalization = table.normalization();
    for (w, f) in table.entries() {
        state.amps[w.basis_index()] = f / normalization;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_full, u_angles, UAngles};
    use std::collections::BTreeMap;

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn parse(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn zero_states_have_unit_amplitude_at_index_zero() {
        let s1 = StateVector::zero_state(1).unwrap();
        assert_eq!(s1.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s2 = StateVector::zero_state(2).unwrap();
        assert_eq!(s2.amplitude(0), c(1.0, 0.0));
        assert_eq!(s2.amplitudes().len(), 4);
        assert!((s2.norm() - 1.0).abs() < TOL);

        assert!(matches!(
            StateVector::zero_state(DEFAULT_WIRE_CAP + 1),
            Err(Error::WireCapExceeded { .. })
        ));
        assert!(matches!(
            StateVector::zero_state_capped(5, 4),
            Err(Error::WireCapExceeded { .. })
        ));
        assert!(StateVector::zero_state(0).is_err());
    }

    #[test]
    fn wire_index_convention_is_pinned_by_x_and_cnot() {
        // X on wire 0 of |00⟩ lands on string 01, index 1.
        let mut state = StateVector::zero_state(2).unwrap();
        state.apply(&Gate::x(0)).unwrap();
        assert_eq!(state.amplitude(1), c(1.0, 0.0));
        assert_eq!(parse("01").basis_index(), 1);

        // CNOT control 1, target 0 sends string 10 (index 2) to 11.
        let mut state = StateVector::basis_state(2, 2).unwrap();
        state.apply(&Gate::cnot(1, 0, None)).unwrap();
        assert_eq!(state.amplitude(3), c(1.0, 0.0));
    }

    #[test]
    fn unsatisfied_controls_leave_the_state_alone() {
        let mut state = StateVector::basis_state(3, 0b001).unwrap();
        let angles = u_angles(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        // Control on wire 1, which is 0 here.
        let gate = Gate::cu(2, vec![1], angles, None);
        let before = state.clone();
        state.apply(&gate).unwrap();
        assert_eq!(state, before);
        // Satisfied control acts.
        let gate = Gate::cu(2, vec![0], angles, None);
        state.apply(&gate).unwrap();
        assert!(state.amplitude(0b001).norm() < TOL);
        // u|0⟩ = (cos(θ/2), e^{iφ} sin(θ/2)) = (0, −1) for these angles.
        assert!((state.amplitude(0b101) - c(-1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn trivial_angles_make_the_identity() {
        let mut state = StateVector::from_amplitudes(
            2,
            vec![c(0.5, 0.0), c(0.5, 0.1), c(-0.3, 0.2), c(0.1, -0.6)],
        )
        .unwrap();
        let before = state.clone();
        let id = UAngles {
            theta: 0.0,
            phi: 0.0,
            lambda: 0.0,
        };
        state.apply(&Gate::cu(0, vec![], id, None)).unwrap();
        assert_eq!(state, before);
    }

    #[test]
    fn u_gate_rotation_realizes_the_ratio_pair() {
        let g0 = c(0.6, 0.0);
        let g1 = c(0.0, -0.8);
        let angles = u_angles(g0, g1).unwrap();
        let mut state = StateVector::basis_state(1, 1).unwrap();
        state.apply(&Gate::cu(0, vec![], angles, None)).unwrap();
        assert!((state.amplitude(0) - g0).norm() < TOL);
        assert!((state.amplitude(1) - g1).norm() < TOL);
    }

    #[test]
    fn running_x_gates_twice_restores_the_input() {
        let table = AmplitudeTable::dicke(3, 1).unwrap();
        let mut state = target_state(&table).unwrap();
        let before = state.clone();
        let double_x: Vec<Gate> = (0..3).chain(0..3).map(Gate::x).collect();
        let circuit = Circuit::new(3, double_x).unwrap();
        state.run(&circuit).unwrap();
        for (a, b) in state.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < TOL);
        }
        // Empty circuit: no-op.
        let empty = Circuit::new(3, vec![]).unwrap();
        state.run(&empty).unwrap();
        for (a, b) in state.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < TOL);
        }
        // Wire-count mismatch is an error.
        assert!(state.run(&Circuit::new(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn norm_survives_a_long_random_ish_circuit() {
        let mut gates = Vec::new();
        for i in 0..400usize {
            let angles = UAngles {
                theta: (i as f64).sin() * 3.0,
                phi: (i as f64 * 0.7).cos() * 3.0,
                lambda: (i as f64 * 1.3).sin() * 3.0,
            };
            let target = i % 5;
            let control = (i + 2) % 5;
            match i % 3 {
                0 => gates.push(Gate::x(target)),
                1 => gates.push(Gate::cnot(control, target, None)),
                _ => gates.push(Gate::cu(target, vec![control], angles, None)),
            }
        }
        let circuit = Circuit::new(5, gates).unwrap();
        let mut state = StateVector::zero_state(5).unwrap();
        state.run(&circuit).unwrap();
        assert!((state.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn target_states_are_normalized_tables() {
        let dicke = AmplitudeTable::dicke(4, 2).unwrap();
        let state = target_state(&dicke).unwrap();
        let expected = 1.0 / 6f64.sqrt();
        let mut nonzero = 0;
        for (index, amp) in state.amplitudes().iter().enumerate() {
            if amp.norm() > 0.0 {
                nonzero += 1;
                assert_eq!(index.count_ones(), 2);
                assert!((amp - c(expected, 0.0)).norm() < TOL);
            }
        }
        assert_eq!(nonzero, 6);

        // A single nonzero amplitude normalizes to exactly one basis state.
        let mut entries = BTreeMap::new();
        for w in crate::bitstrings::enumerate(4, 2).unwrap() {
            entries.insert(w, c(0.0, 0.0));
        }
        entries.insert(parse("0011"), c(7.0, 0.0));
        let table = AmplitudeTable::custom(4, 2, entries).unwrap();
        let state = target_state(&table).unwrap();
        assert!((state.amplitude(3) - c(1.0, 0.0)).norm() < TOL);
        assert!((state.norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn overlap_is_conjugate_linear_in_the_first_argument() {
        let x = StateVector::from_amplitudes(1, vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert!((x.overlap(&x).unwrap() - c(1.0, 0.0)).norm() < TOL);

        let ix = StateVector::from_amplitudes(1, vec![c(0.0, 0.6), c(-0.8, 0.0)]).unwrap(); // i·x
        let got = ix.overlap(&x).unwrap();
        assert!((got - c(0.0, -1.0)).norm() < TOL);

        let e0 = StateVector::basis_state(2, 0).unwrap();
        let e3 = StateVector::basis_state(2, 3).unwrap();
        assert_eq!(e0.overlap(&e3).unwrap(), c(0.0, 0.0));
        assert!(e0.overlap(&StateVector::zero_state(3).unwrap()).is_err());
    }

    #[test]
    fn prepared_w_state_is_uniform_over_weight_one() {
        let table = AmplitudeTable::dicke(3, 1).unwrap();
        let circuit = build_full(&table).unwrap();
        let mut state = StateVector::zero_state(3).unwrap();
        state.run(&circuit).unwrap();
        let expected = 1.0 / 3f64.sqrt();
        for index in [1usize, 2, 4] {
            assert!((state.amplitude(index) - c(expected, 0.0)).norm() < 1e-10);
        }
        for index in [0usize, 3, 5, 6, 7] {
            assert!(state.amplitude(index).norm() < 1e-12);
        }
    }

    #[test]
    fn open_chain_circuit_reproduces_the_direct_target() {
        let roots = [c(0.682741, 0.0), c(1.38561, 0.0)];
        let table = AmplitudeTable::open(4, &roots, 0.5, 0.1, 0.3).unwrap();
        let circuit = build_full(&table).unwrap();
        let mut state = StateVector::zero_state(4).unwrap();
        state.run(&circuit).unwrap();
        let overlap = target_state(&table).unwrap().overlap(&state).unwrap();
        assert!((overlap - c(1.0, 0.0)).norm() < 1e-10, "overlap {overlap}");
        // Spot-pin three output amplitudes.
        assert!((state.amplitude(3) - c(-0.5601013505347555, 0.0)).norm() < 1e-10);
        assert!((state.amplitude(5) - c(-0.4032460381682373, 0.0)).norm() < 1e-10);
        assert!((state.amplitude(12) - c(0.6363958389487575, 0.0)).norm() < 1e-10);
        // Weight conservation: support stays in the M = 2 sector.
        for (index, amp) in state.amplitudes().iter().enumerate() {
            if index.count_ones() != 2 {
                assert!(amp.norm() < 1e-12);
            }
        }
    }
}
