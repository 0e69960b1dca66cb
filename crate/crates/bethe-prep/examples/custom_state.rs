//! A hand-written amplitude table, including zero entries — the general
//! interface behind the Bethe and Dicke sources — and what zeros do to
//! the synthesized circuit.
//!
//! Zeros interact with synthesis in two ways:
//!
//! * a conditional gate whose entire amplitude tail vanishes is omitted
//!   outright (the state never reaches its control pattern);
//! * a gate that degenerates to the identity is still emitted, so gate
//!   counts stay at their closed forms, unless pruning is requested.
//!
//! ```text
//! cargo run --example custom_state
//! ```

use std::collections::BTreeMap;

use bethe_prep::bitstrings::BitString;
use bethe_prep::circuit::{build_full, gate_counts, prune, GateCounts};
use bethe_prep::coefficients::AmplitudeTable;
use bethe_prep::simulator::{target_state, StateVector};
use num_complex::Complex64;

const L: usize = 4;
const M: usize = 2;

fn main() -> bethe_prep::Result<()> {
    // Three of the six weight-2 words carry amplitude; the other three
    // are exact zeros. The entries already have unit norm, but any
    // overall scale works — tables are normalized internally.
    let mut amplitudes: BTreeMap<BitString, Complex64> = BTreeMap::new();
    amplitudes.insert("0011".parse()?, Complex64::new(0.6, 0.0));
    amplitudes.insert("0101".parse()?, Complex64::new(0.0, 0.0));
    amplitudes.insert("0110".parse()?, Complex64::new(0.0, 0.48));
    amplitudes.insert("1001".parse()?, Complex64::new(0.0, 0.0));
    amplitudes.insert("1010".parse()?, Complex64::new(-0.64, 0.0));
    amplitudes.insert("1100".parse()?, Complex64::new(0.0, 0.0));
    let table = AmplitudeTable::custom(L, M, amplitudes)?;

    let circuit = build_full(&table)?;
    let pruned = prune(&circuit);
    let formula = GateCounts::formula(L, M);
    let synthesized = gate_counts(&circuit);
    let after_prune = gate_counts(&pruned);

    println!("u-gate counts for the sparse table:");
    println!("  closed form (dense table): {}", formula.cu);
    println!(
        "  synthesized:               {}   (one tail vanishes, its gate is omitted)",
        synthesized.cu
    );
    println!(
        "  after pruning:             {}   (two more act as the identity)",
        after_prune.cu
    );
    println!(
        "  cnot count stays {} in all three — pruning never drops structure gates",
        after_prune.cnot
    );

    // Both circuits prepare the same state.
    let mut full_state = StateVector::zero_state(L)?;
    full_state.run(&circuit)?;
    let mut pruned_state = StateVector::zero_state(L)?;
    pruned_state.run(&pruned)?;
    let target = target_state(&table)?;

    println!();
    println!("Prepared amplitudes (zeros stay exactly zero):");
    for (index, amp) in full_state.amplitudes().iter().enumerate() {
        if amp.norm() > 1e-12 {
            println!("  |{index:04b}>  {:+.12} {:+.12} i", amp.re, amp.im);
        }
    }
    println!(
        "  full circuit:   |overlap - 1| = {:.3e}",
        (target.overlap(&full_state)? - 1.0).norm()
    );
    println!(
        "  pruned circuit: |overlap - 1| = {:.3e}",
        (target.overlap(&pruned_state)? - 1.0).norm()
    );
    Ok(())
}
