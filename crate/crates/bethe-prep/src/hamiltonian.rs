//! The XXZ Hamiltonians (closed and open) and `S^z` as operators on the
//! full `2^L` space, for eigen-residual verification.
//!
//! In the computational basis the Hamiltonians act bond-locally: a bond
//! between anti-aligned neighbors contributes `+Δ` on the diagonal and a
//! `−1` hop to the state with both bits flipped; aligned bonds contribute
//! nothing (the `σ^z σ^z − 𝕀` combination is calibrated so the
//! all-aligned states sit at zero energy). The open chain adds
//! `h·[w_1 = 1] + h′·[w_L = 1]` on the diagonal — its boundary terms
//! `−½(hσ^z_1 + h′σ^z_L) + ½(h+h′)𝕀` likewise vanish on all-up states.
//!
//! Spin conventions: `σ^z|0⟩ = +|0⟩` (a 0 bit is an up spin), and site
//! `n` lives on wire `L−n`.
//!
//! Operators are applied matrix-free; a dense materialization exists only
//! as a small-`L` eigensolve oracle.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::simulator::StateVector;
use crate::{Error, Result};

/// Ceiling for the dense materialization (`2^12` × `2^12` doubles).
pub const DENSE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
enum OperatorKind {
    ClosedXxz { delta: f64 },
    OpenXxz { delta: f64, h: f64, h_prime: f64 },
    Sz,
}

/// A Hermitian operator on `L` wires, applied matrix-free.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n_wires: usize,
    kind: OperatorKind,
    /// Wire pairs coupled by a bond; empty for diagonal operators. The
    /// closed chain's literal sum runs `n = 1..=L`, so at `L = 2` the
    /// same pair appears twice, exactly as written.
    bonds: Vec<(usize, usize)>,
}

fn check_length(l: usize) -> Result<()> {
    if l < 2 {
        return Err(Error::ChainTooShort { l });
    }
    Ok(())
}

impl OperatorMatrix {
    /// The closed (periodic) XXZ Hamiltonian
    /// `H = −½ Σ_{n=1}^{L} (σ^x_nσ^x_{n+1} + σ^y_nσ^y_{n+1} + Δ(σ^z_nσ^z_{n+1} − 𝕀))`
    /// with `σ_{L+1} = σ_1`.
    pub fn closed_xxz(l: usize, delta: f64) -> Result<OperatorMatrix> {
        check_length(l)?;
        let mut bonds: Vec<(usize, usize)> = (1..l).map(|n| (l - n, l - n - 1)).collect();
        bonds.push((0, l - 1));
        Ok(OperatorMatrix {
            n_wires: l,
            kind: OperatorKind::ClosedXxz { delta },
            bonds,
        })
    }

    /// The open XXZ Hamiltonian: the same bond sum over `n = 1..L−1`
    /// plus boundary fields `−½(hσ^z_1 + h′σ^z_L) + ½(h+h′)𝕀`.
    pub fn open_xxz(l: usize, delta: f64, h: f64, h_prime: f64) -> Result<OperatorMatrix> {
        check_length(l)?;
        let bonds = (1..l).map(|n| (l - n, l - n - 1)).collect();
        Ok(OperatorMatrix {
            n_wires: l,
            kind: OperatorKind::OpenXxz { delta, h, h_prime },
            bonds,
        })
    }

    /// The magnetization `S^z = Σ_n ½σ^z_n`, diagonal with entry
    /// `L/2 − weight(w)` at `basis_index(w)`.
    pub fn sz(l: usize) -> OperatorMatrix {
        OperatorMatrix {
            n_wires: l,
            kind: OperatorKind::Sz,
            bonds: Vec::new(),
        }
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    fn diagonal(&self, index: usize) -> f64 {
        match self.kind {
            OperatorKind::Sz => self.n_wires as f64 / 2.0 - index.count_ones() as f64,
            OperatorKind::ClosedXxz { delta } => delta * self.broken_bonds(index) as f64,
            OperatorKind::OpenXxz { delta, h, h_prime } => {
                let mut diag = delta * self.broken_bonds(index) as f64;
                // Site 1 is wire L−1; site L is wire 0.
                if index >> (self.n_wires - 1) & 1 == 1 {
                    diag += h;
                }
                if index & 1 == 1 {
                    diag += h_prime;
                }
                diag
            }
        }
    }

    fn broken_bonds(&self, index: usize) -> usize {
        self.bonds
            .iter()
            .filter(|&&(a, b)| (index >> a ^ index >> b) & 1 == 1)
            .count()
    }

    /// Calls `visit` with the target index of each `−1` hop out of
    /// `index` (one per anti-aligned bond, both bits flipped).
    fn for_each_hop(&self, index: usize, mut visit: impl FnMut(usize)) {
        for &(a, b) in &self.bonds {
            if (index >> a ^ index >> b) & 1 == 1 {
                visit(index ^ (1 << a) ^ (1 << b));
            }
        }
    }

    /// `H|ψ⟩`, computed without materializing `H`.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.n_wires() != self.n_wires {
            return Err(Error::SizeMismatch {
                left: self.n_wires,
                right: state.n_wires(),
            });
        }
        let amps = state.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (index, &amp) in amps.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            out[index] += self.diagonal(index) * amp;
            self.for_each_hop(index, |target| out[target] -= amp);
        }
        StateVector::from_amplitudes(self.n_wires, out)
    }

    /// `⟨ψ|H|ψ⟩`; real up to rounding since `H` is Hermitian.
    pub fn expectation(&self, state: &StateVector) -> Result<Complex64> {
        state.overlap(&self.apply(state)?)
    }

    /// `‖H|ψ⟩ − E|ψ⟩‖₂` — zero exactly when `|ψ⟩` is an `E`-eigenvector.
    pub fn eigen_residual(&self, state: &StateVector, energy: f64) -> Result<f64> {
        let applied = self.apply(state)?;
        let norm_sqr: f64 = applied
            .amplitudes()
            .iter()
            .zip(state.amplitudes())
            .map(|(ha, a)| (ha - energy * a).norm_sqr())
            .sum();
        Ok(norm_sqr.sqrt())
    }

    /// Materializes the operator as a real symmetric matrix; capped at
    /// [`DENSE_CAP`] wires. All three operators are real in this basis.
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        if self.n_wires > DENSE_CAP {
            return Err(Error::DenseCapExceeded {
                l: self.n_wires,
                cap: DENSE_CAP,
            });
        }
        let dim = 1usize << self.n_wires;
        let mut matrix = DMatrix::<f64>::zeros(dim, dim);
        for index in 0..dim {
            matrix[(index, index)] = self.diagonal(index);
            self.for_each_hop(index, |target| matrix[(target, index)] -= 1.0);
        }
        Ok(matrix)
    }

    /// The full spectrum by dense symmetric eigensolve, sorted
    /// ascending. An oracle for small `L`; see [`DENSE_CAP`].
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let eigen = self.dense()?.symmetric_eigen();
        let mut values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstrings::BitString;
    use crate::coefficients::AmplitudeTable;
    use crate::simulator::target_state;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Deterministic pseudo-random unit vector.
    fn random_state(l: usize, seed: u64) -> StateVector {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut amps: Vec<Complex64> = (0..1usize << l).map(|_| c(next(), next())).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector::from_amplitudes(l, amps).unwrap()
    }

    #[test]
    fn aligned_states_sit_at_zero_energy() {
        for l in [2usize, 3, 5] {
            let h = OperatorMatrix::closed_xxz(l, 0.73).unwrap();
            for index in [0usize, (1 << l) - 1] {
                let state = StateVector::basis_state(l, index).unwrap();
                assert_eq!(h.eigen_residual(&state, 0.0).unwrap(), 0.0);
            }
        }
        // Open chain: |0…0⟩ always; |1…1⟩ once the boundary fields are off.
        let open = OperatorMatrix::open_xxz(4, 0.6, 0.1, 0.3).unwrap();
        let zeros = StateVector::basis_state(4, 0).unwrap();
        assert_eq!(open.eigen_residual(&zeros, 0.0).unwrap(), 0.0);
        let ones = StateVector::basis_state(4, 15).unwrap();
        assert!(open.eigen_residual(&ones, 0.0).unwrap() > 0.1);
        assert!(
            (open.expectation(&ones).unwrap() - c(0.4, 0.0)).norm() < 1e-12,
            "all-ones diagonal should be h + h'"
        );
        let free = OperatorMatrix::open_xxz(4, 0.6, 0.0, 0.0).unwrap();
        assert_eq!(free.eigen_residual(&ones, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn operators_are_hermitian_on_random_vectors() {
        let operators = [
            OperatorMatrix::closed_xxz(5, 1.2).unwrap(),
            OperatorMatrix::open_xxz(5, 0.4, 0.15, -0.2).unwrap(),
            OperatorMatrix::sz(5),
        ];
        for (i, op) in operators.iter().enumerate() {
            for seed in 0..5u64 {
                let x = random_state(5, seed * 2 + 1);
                let y = random_state(5, seed * 2 + 2);
                let xy = x.overlap(&op.apply(&y).unwrap()).unwrap();
                let yx = y.overlap(&op.apply(&x).unwrap()).unwrap();
                assert!((xy - yx.conj()).norm() < 1e-10, "operator {i}, seed {seed}");
            }
        }
    }

    #[test]
    fn hamiltonians_commute_with_magnetization() {
        for op in [
            OperatorMatrix::closed_xxz(5, 0.9).unwrap(),
            OperatorMatrix::open_xxz(5, 0.9, 0.2, 0.05).unwrap(),
        ] {
            let sz = OperatorMatrix::sz(5);
            for seed in 0..5u64 {
                let v = random_state(5, seed + 10);
                let hs = op.apply(&sz.apply(&v).unwrap()).unwrap();
                let sh = sz.apply(&op.apply(&v).unwrap()).unwrap();
                let diff: f64 = hs
                    .amplitudes()
                    .iter()
                    .zip(sh.amplitudes())
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(diff < 1e-10);
            }
        }
    }

    #[test]
    fn weight_sectors_are_invariant_subspaces() {
        let op = OperatorMatrix::open_xxz(6, 1.1, 0.3, 0.2).unwrap();
        for index in 0..(1usize << 6) {
            let state = StateVector::basis_state(6, index).unwrap();
            let image = op.apply(&state).unwrap();
            for (j, amp) in image.amplitudes().iter().enumerate() {
                if amp.norm() > 0.0 {
                    assert_eq!(j.count_ones(), index.count_ones());
                }
            }
        }
    }

    #[test]
    fn magnetization_is_diagonal_in_the_weight() {
        let sz = OperatorMatrix::sz(4);
        let cases = [("0000", 2.0), ("1111", -2.0), ("0101", 0.0), ("1000", 1.0)];
        for (word, value) in cases {
            let w: BitString = word.parse().unwrap();
            let state = StateVector::from_word(&w).unwrap();
            assert_eq!(sz.eigen_residual(&state, value).unwrap(), 0.0);
        }
        // Uniform weight-2 superposition: expectation L/2 − M = 0.
        let dicke = target_state(&AmplitudeTable::dicke(4, 2).unwrap()).unwrap();
        assert!(sz.expectation(&dicke).unwrap().norm() < 1e-12);
        // A generic state is no eigenvector of anything.
        let generic = random_state(4, 99);
        assert!(sz.eigen_residual(&generic, 0.37).unwrap() > 1e-3);
    }

    #[test]
    fn quoted_root_energies_appear_in_the_spectra() {
        let open = OperatorMatrix::open_xxz(4, 0.5, 0.1, 0.3).unwrap();
        let spectrum = open.eigenvalues().unwrap();
        let e4 = 0.08004808811255515;
        let gap = spectrum
            .iter()
            .map(|e| (e - e4).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(gap < 1e-4, "gap {gap}");

        let closed = OperatorMatrix::closed_xxz(6, 1.005).unwrap();
        let spectrum = closed.eigenvalues().unwrap();
        let e5 = 1.4497882708501995;
        let gap = spectrum
            .iter()
            .map(|e| (e - e5).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(gap < 1e-4, "gap {gap}");
    }

    #[test]
    fn prepared_open_chain_state_is_an_eigenvector() {
        let roots = [c(0.682741, 0.0), c(1.38561, 0.0)];
        let table = AmplitudeTable::open(4, &roots, 0.5, 0.1, 0.3).unwrap();
        let state = target_state(&table).unwrap();
        let h = OperatorMatrix::open_xxz(4, 0.5, 0.1, 0.3).unwrap();
        let residual = h.eigen_residual(&state, 0.08004808811255515).unwrap();
        assert!(residual < 1e-4, "residual {residual}");
        // Same scale as the Bethe-equation residuals of the quoted roots.
        assert!(residual > 1e-8);
    }

    #[test]
    fn dense_matrix_agrees_with_matrix_free_application() {
        let op = OperatorMatrix::open_xxz(4, 0.8, 0.12, 0.07).unwrap();
        let dense = op.dense().unwrap();
        for seed in 0..3u64 {
            let v = random_state(4, seed + 40);
            let fast = op.apply(&v).unwrap();
            for row in 0..16usize {
                let slow: Complex64 = (0..16)
                    .map(|col| dense[(row, col)] * v.amplitude(col))
                    .sum();
                assert!((slow - fast.amplitude(row)).norm() < 1e-12);
            }
        }
        assert!(matches!(
            OperatorMatrix::sz(DENSE_CAP + 1).dense(),
            Err(Error::DenseCapExceeded { .. })
        ));
        assert!(OperatorMatrix::closed_xxz(1, 1.0).is_err());
    }

    #[test]
    fn isotropic_bethe_state_is_su2_highest_weight() {
        // At Δ = 1 the closed-chain Bethe states are annihilated by the
        // total raising operator S^+ = Σ_n σ^+_n (which clears one 1).
        // Check it for the exactly-solvable L = 4 instance.
        let k = 2.0 * std::f64::consts::PI / 3.0;
        let table = AmplitudeTable::closed(4, &[c(k, 0.0), c(-k, 0.0)], 1.0).unwrap();
        let state = target_state(&table).unwrap();
        let mut raised = vec![c(0.0, 0.0); 16];
        for (index, &amp) in state.amplitudes().iter().enumerate() {
            for wire in 0..4 {
                if index >> wire & 1 == 1 {
                    raised[index & !(1 << wire)] += amp;
                }
            }
        }
        let norm: f64 = raised.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm < 1e-10, "S+ should annihilate the state, got {norm}");
    }
}
