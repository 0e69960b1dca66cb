//! Shared helpers for the integration suites.
//!
//! The amplitude evaluators here are deliberately naive references: they
//! materialize every permutation with a textbook recursive generator,
//! compute each permutation's sign by counting inversions, and accumulate
//! terms with plain left-to-right additions. They share no code path with
//! the optimized library routines they cross-check.

use std::collections::BTreeMap;

use bethe_prep::bitstrings::{enumerate, BitString};
use bethe_prep::coefficients::AmplitudeTable;
use num_complex::Complex64;
use rand::Rng;

/// Every permutation of `0..m`, generated by the schoolbook "pick the
/// next element, recurse on the rest" scheme.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(m);
    let mut remaining: Vec<usize> = (0..m).collect();
    extend_permutation(&mut prefix, &mut remaining, &mut out);
    out
}

fn extend_permutation(
    prefix: &mut Vec<usize>,
    remaining: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for slot in 0..remaining.len() {
        let picked = remaining.remove(slot);
        prefix.push(picked);
        extend_permutation(prefix, remaining, out);
        prefix.pop();
        remaining.insert(slot, picked);
    }
}

/// `(−1)^{inversions}`: the permutation sign obtained by literally
/// counting out-of-order pairs.
pub fn inversion_sign(perm: &[usize]) -> f64 {
    let mut inversions = 0usize;
    for j in 0..perm.len() {
        for l in (j + 1)..perm.len() {
            if perm[j] > perm[l] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn i_times(k: Complex64) -> Complex64 {
    Complex64::new(0.0, 1.0) * k
}

fn s_factor(k: Complex64, k_prime: Complex64, delta: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - 2.0 * delta * i_times(k_prime).exp() + i_times(k + k_prime).exp()
}

fn b_factor(k: Complex64, k_prime: Complex64, delta: f64) -> Complex64 {
    s_factor(k, k_prime, delta) * s_factor(k_prime, -k, delta)
}

fn beta_factor(k: Complex64, delta: f64, h_prime: f64, l_sites: usize) -> Complex64 {
    let boundary = Complex64::new(1.0, 0.0) + (h_prime - delta) * i_times(-k).exp();
    boundary * i_times((l_sites as f64 + 1.0) * k).exp()
}

/// Reference closed-chain amplitude: a literal sum over all `M!`
/// permutations.
pub fn brute_amplitude_closed(w: &BitString, roots: &[Complex64], delta: f64) -> Complex64 {
    let positions = w.ones_positions();
    let m = roots.len();
    assert_eq!(positions.len(), m, "word weight must match the root count");
    let mut total = Complex64::new(0.0, 0.0);
    for perm in permutations(m) {
        let ks: Vec<Complex64> = perm.iter().map(|&j| roots[j]).collect();
        let mut coefficient = Complex64::new(1.0, 0.0);
        for j in 0..m {
            for l in (j + 1)..m {
                coefficient *= s_factor(ks[l], ks[j], delta);
            }
        }
        let mut phase_exponent = Complex64::new(0.0, 0.0);
        for (j, &x) in positions.iter().enumerate() {
            phase_exponent += ks[j] * x as f64;
        }
        total += inversion_sign(&perm) * coefficient * i_times(phase_exponent).exp();
    }
    total
}

/// Reference open-chain amplitude: a literal sum over all `2^M · M!`
/// signed permutations.
pub fn brute_amplitude_open(
    w: &BitString,
    roots: &[Complex64],
    delta: f64,
    h_prime: f64,
) -> Complex64 {
    let positions = w.ones_positions();
    let m = roots.len();
    let l_sites = w.len();
    assert_eq!(positions.len(), m, "word weight must match the root count");
    let mut total = Complex64::new(0.0, 0.0);
    for perm in permutations(m) {
        for sign_bits in 0u64..(1 << m) {
            let mut sign_product = 1.0;
            let qs: Vec<Complex64> = (0..m)
                .map(|j| {
                    if sign_bits >> j & 1 == 1 {
                        sign_product = -sign_product;
                        -roots[perm[j]]
                    } else {
                        roots[perm[j]]
                    }
                })
                .collect();
            let mut coefficient = Complex64::new(1.0, 0.0);
            for j in 0..m {
                coefficient *= beta_factor(-qs[j], delta, h_prime, l_sites);
                for l in (j + 1)..m {
                    coefficient *= b_factor(-qs[j], qs[l], delta) * i_times(-qs[l]).exp();
                }
            }
            let mut phase_exponent = Complex64::new(0.0, 0.0);
            for (j, &x) in positions.iter().enumerate() {
                phase_exponent += qs[j] * x as f64;
            }
            total +=
                inversion_sign(&perm) * sign_product * coefficient * i_times(phase_exponent).exp();
        }
    }
    total
}

/// A custom table with independent uniform entries on `[-1,1]²`;
/// `zero_fraction` of the entries (in expectation) are forced to exactly
/// zero. Tables that come out all-zero are rejected and redrawn.
pub fn random_table<R: Rng>(l: usize, m: usize, rng: &mut R, zero_fraction: f64) -> AmplitudeTable {
    loop {
        let entries: BTreeMap<BitString, Complex64> = enumerate(l, m)
            .expect("valid weight class")
            .into_iter()
            .map(|w| {
                let value = if rng.gen::<f64>() < zero_fraction {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                };
                (w, value)
            })
            .collect();
        if let Ok(table) = AmplitudeTable::custom(l, m, entries) {
            return table;
        }
    }
}
