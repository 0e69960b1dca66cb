//! Uniform fixed-weight superpositions (Dicke states) — the simplest
//! tables the synthesizer accepts, and a quick way to see the whole
//! pipeline: table, circuit, statevector.
//!
//! ```text
//! cargo run --example dicke
//! ```

use bethe_prep::bitstrings::binomial;
use bethe_prep::circuit::{build_full, gate_counts};
use bethe_prep::coefficients::AmplitudeTable;
use bethe_prep::simulator::StateVector;

fn main() -> bethe_prep::Result<()> {
    // Three qubits, one excitation: the W state.
    let table = AmplitudeTable::dicke(3, 1)?;
    let circuit = build_full(&table)?;
    let mut state = StateVector::zero_state(3)?;
    state.run(&circuit)?;
    println!("W state, prepared by {} gates:", circuit.gates().len());
    for (index, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm() > 1e-12 {
            println!("  |{index:03b}>  {:+.15}", amp.re);
        }
    }
    println!("  (1/sqrt(3) = {:+.15})", 1.0 / 3f64.sqrt());

    // A bigger sector: six sites, three excitations, C(6,3) = 20 terms.
    let table = AmplitudeTable::dicke(6, 3)?;
    let circuit = build_full(&table)?;
    let counts = gate_counts(&circuit);
    let mut state = StateVector::zero_state(6)?;
    state.run(&circuit)?;

    let uniform = 1.0 / (binomial(6, 3) as f64).sqrt();
    let worst = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(index, amp)| {
            let expected = if index.count_ones() == 3 {
                uniform
            } else {
                0.0
            };
            (amp - expected).norm()
        })
        .fold(0.0, f64::max);

    println!();
    println!("Dicke state L = 6, M = 3:");
    println!(
        "  gates: {} x, {} cnot, {} cu",
        counts.x, counts.cnot, counts.cu
    );
    println!("  all 20 weight-3 amplitudes equal 1/sqrt(20) = {uniform:.15}");
    println!("  largest deviation from the ideal state: {worst:.3e}");
    println!("  norm after the run: {:.15}", state.norm());
    Ok(())
}
