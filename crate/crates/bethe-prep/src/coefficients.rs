//! Amplitude tables `f(w)`, suffix norms `F(b)`, and ratios `G(ib)`.
//!
//! The target state is `|B⟩ = (1/F({})) Σ_{w∈P(L,M)} f(w)|w⟩`. For the XXZ
//! chain the coefficients come from the coordinate Bethe ansatz:
//!
//! * closed chain: `f(w) = Σ_{σ∈S_M} ε(σ) A(k_σ) e^{iΣ_j k_{σ(j)} x_j}`
//!   with `A(q) = ∏_{j<l} s(q_l, q_j)` and `s(k,k′) = 1 − 2Δe^{ik′} + e^{i(k+k′)}`;
//! * open chain: the same sum extended over all sign choices
//!   `ε_j = ±1` of the momenta, with
//!   `A(q) = ∏_j β(−q_j) ∏_{j<l} B(−q_j,q_l) e^{−iq_l}`,
//!   `B(k,k′) = s(k,k′) s(k′,−k)`, and
//!   `β(k) = [1 + (h′−Δ)e^{−ik}] e^{i(L+1)k}`.
//!
//! Here `x_1 < … < x_M` are the 1-based positions of the ones in `w`. The
//! open-chain amplitude depends on the right boundary field `h′` through
//! `β`; the left field `h` enters only the Bethe equations that determine
//! admissible roots (see [`crate::bethe`]), not the amplitude itself.
//!
//! Circuit synthesis consumes the derived suffix statistics: for a suffix
//! `b`, `F(b)` is the complex amplitude `f(ab)` when exactly one prefix `a`
//! completes it, and the (real) root-sum-square of all completions
//! otherwise; `G(ib) = F(ib)/F(b)` for `i ∈ {0,1}`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Deserialize;

use crate::bitstrings::{BitString, WeightClass};
use crate::{Error, Result};

/// Relative threshold below which a suffix norm counts as exactly zero:
/// `|F(b)| ≤ ZERO_THRESHOLD · max_w |f(w)|`.
pub const ZERO_THRESHOLD: f64 = 1e-14;

/// Tolerance on `|G(0b)|² + |G(1b)|² = 1` enforced during synthesis.
pub const RATIO_NORM_TOLERANCE: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Scattering factors
// ---------------------------------------------------------------------------

/// The scattering factor `s(k, k′) = 1 − 2Δ e^{ik′} + e^{i(k+k′)}`.
pub fn s_fn(k: Complex64, k_prime: Complex64, delta: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    one - 2.0 * delta * (Complex64::i() * k_prime).exp() + (Complex64::i() * (k + k_prime)).exp()
}

/// The open-chain left-boundary factor `α(k) = 1 + (h − Δ) e^{−ik}`.
pub fn alpha_fn(k: Complex64, delta: f64, h: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) + (h - delta) * (-Complex64::i() * k).exp()
}

/// The open-chain right-boundary factor
/// `β(k) = [1 + (h′ − Δ) e^{−ik}] e^{i(L+1)k}`.
pub fn beta_fn(k: Complex64, delta: f64, h_prime: f64, l: usize) -> Complex64 {
    (Complex64::new(1.0, 0.0) + (h_prime - delta) * (-Complex64::i() * k).exp())
        * (Complex64::i() * ((l + 1) as f64) * k).exp()
}

/// The open-chain two-body factor `B(k, k′) = s(k, k′) s(k′, −k)`.
pub fn b_fn(k: Complex64, k_prime: Complex64, delta: f64) -> Complex64 {
    s_fn(k, k_prime, delta) * s_fn(k_prime, -k, delta)
}

// ---------------------------------------------------------------------------
// Permutation sums
// ---------------------------------------------------------------------------

/// Visits every permutation of `0..m` exactly once together with its sign,
/// using Heap's algorithm (each step swaps one pair, so the sign simply
/// alternates with each swap).
fn for_each_signed_permutation<F: FnMut(&[usize], f64)>(m: usize, mut visit: F) {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut counters = vec![0usize; m];
    let mut sign = 1.0;
    visit(&perm, sign);
    let mut i = 0;
    while i < m {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            visit(&perm, sign);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Pairwise (cascade) summation with O(log n) state: partial sums are
/// merged like a binary counter, so every term participates in a balanced
/// reduction tree. This keeps cancellation error in the `M!`-term
/// amplitude sums near the O(√log n) pairwise bound instead of the O(n)
/// sequential one.
#[derive(Default)]
struct PairwiseSum {
    partials: Vec<Complex64>,
    count: usize,
}

impl PairwiseSum {
    fn push(&mut self, term: Complex64) {
        let mut term = term;
        self.count += 1;
        let mut n = self.count;
        while n.is_multiple_of(2) {
            term += self.partials.pop().expect("partial per set bit");
            n /= 2;
        }
        self.partials.push(term);
    }

    fn sum(self) -> Complex64 {
        // Smallest blocks first, so same-magnitude partials meet early.
        self.partials
            .into_iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p)
    }
}

fn check_weight(w: &BitString, m: usize) -> Result<()> {
    if w.weight() != m {
        return Err(Error::WeightMismatch {
            word: w.to_string(),
            actual: w.weight(),
            expected: m,
        });
    }
    Ok(())
}

/// Closed-chain Bethe amplitude
/// `f(w) = Σ_{σ∈S_M} ε(σ) A(k_{σ(1)},…,k_{σ(M)}) e^{iΣ_j k_{σ(j)} x_j}`
/// with `A(q) = ∏_{j<l} s(q_l, q_j)`.
///
/// The word's weight must equal the number of roots. For `M = 1` the sum
/// collapses to `e^{ikx}`.
pub fn amplitude_closed(w: &BitString, roots: &[Complex64], delta: f64) -> Result<Complex64> {
    let m = roots.len();
    check_weight(w, m)?;
    let x = w.ones_positions();
    let mut acc = PairwiseSum::default();
    for_each_signed_permutation(m, |perm, sign| {
        let mut term = Complex64::new(sign, 0.0);
        for l in 1..m {
            for j in 0..l {
                term *= s_fn(roots[perm[l]], roots[perm[j]], delta);
            }
        }
        let mut exponent = Complex64::new(0.0, 0.0);
        for (j, &p) in perm.iter().enumerate() {
            exponent += roots[p] * x[j] as f64;
        }
        acc.push(term * (Complex64::i() * exponent).exp());
    });
    Ok(acc.sum())
}

/// Open-chain Bethe amplitude: the `2^M · M!`-term sum over permutations
/// `σ` and momentum signs `ε_j = ±1`, weighted by `ε(σ) ε_1⋯ε_M`, with
/// `A(q) = ∏_j β(−q_j) ∏_{j<l} B(−q_j, q_l) e^{−iq_l}`.
///
/// The chain length enters through `β`; it is taken from `w.len()`. The
/// left boundary field does not appear in the amplitude — it only
/// constrains which roots solve the open Bethe equations.
pub fn amplitude_open(
    w: &BitString,
    roots: &[Complex64],
    delta: f64,
    h_prime: f64,
) -> Result<Complex64> {
    let m = roots.len();
    check_weight(w, m)?;
    let l_len = w.len();
    let x = w.ones_positions();
    let mut acc = PairwiseSum::default();
    let mut q = vec![Complex64::new(0.0, 0.0); m];
    for_each_signed_permutation(m, |perm, sign| {
        for eps_mask in 0u32..(1u32 << m) {
            let mut weight = sign;
            for (j, &p) in perm.iter().enumerate() {
                let eps = if eps_mask >> j & 1 == 0 { 1.0 } else { -1.0 };
                weight *= eps;
                q[j] = eps * roots[p];
            }
            let mut term = Complex64::new(weight, 0.0);
            for &qj in q.iter() {
                term *= beta_fn(-qj, delta, h_prime, l_len);
            }
            for l in 1..m {
                for j in 0..l {
                    term *= b_fn(-q[j], q[l], delta) * (-Complex64::i() * q[l]).exp();
                }
            }
            let mut exponent = Complex64::new(0.0, 0.0);
            for (j, &qj) in q.iter().enumerate() {
                exponent += qj * x[j] as f64;
            }
            acc.push(term * (Complex64::i() * exponent).exp());
        }
    });
    Ok(acc.sum())
}

// ---------------------------------------------------------------------------
// Amplitude tables
// ---------------------------------------------------------------------------

/// Physical parameters of an XXZ chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainSpec {
    /// Closed (periodic) chain with anisotropy `Δ`.
    Closed { delta: f64 },
    /// Open chain with anisotropy `Δ` and boundary fields `h` (site 1)
    /// and `h′` (site L).
    Open { delta: f64, h: f64, h_prime: f64 },
}

impl ChainSpec {
    /// The anisotropy `Δ`, common to both boundary types.
    pub fn delta(&self) -> f64 {
        match *self {
            ChainSpec::Closed { delta } | ChainSpec::Open { delta, .. } => delta,
        }
    }
}

/// Where a table's values came from. Bethe sources keep their parameters
/// so a table can be re-verified against the Hamiltonian and the Bethe
/// equations without re-supplying them.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    /// Closed-chain Bethe ansatz.
    Closed { delta: f64, roots: Vec<Complex64> },
    /// Open-chain Bethe ansatz.
    Open {
        delta: f64,
        h: f64,
        h_prime: f64,
        roots: Vec<Complex64>,
    },
    /// Uniform table, every `f(w) = 1` (Dicke state).
    Dicke,
    /// Caller-supplied values.
    Custom,
}

/// A complete map `w ∈ P(L,M) → f(w)`, with the derived suffix statistics
/// precomputed.
///
/// Construction validates the domain (every word of the sector present,
/// nothing else) and rejects identically-zero tables, for which the target
/// state would be undefined.
#[derive(Debug, Clone)]
pub struct AmplitudeTable {
    class: WeightClass,
    entries: BTreeMap<BitString, Complex64>,
    source: Provenance,
    tails: TailStatistics,
}

impl AmplitudeTable {
    /// Closed-chain table: `f(w) = amplitude_closed(w)` for every word of
    /// `P(L, M)` with `M = roots.len()`. Requires `0 < M < L`.
    pub fn closed(l: usize, roots: &[Complex64], delta: f64) -> Result<Self> {
        let class = Self::bethe_class(l, roots.len())?;
        let mut entries = BTreeMap::new();
        for w in class.words() {
            let f = amplitude_closed(&w, roots, delta)?;
            entries.insert(w, f);
        }
        Self::assemble(
            class,
            entries,
            Provenance::Closed {
                delta,
                roots: roots.to_vec(),
            },
        )
    }

    /// Open-chain table: `f(w) = amplitude_open(w)` for every word of
    /// `P(L, M)`. Requires `0 < M < L`. The left field `h` is recorded for
    /// later residual checks even though the amplitudes do not depend on
    /// it.
    pub fn open(l: usize, roots: &[Complex64], delta: f64, h: f64, h_prime: f64) -> Result<Self> {
        let class = Self::bethe_class(l, roots.len())?;
        let mut entries = BTreeMap::new();
        for w in class.words() {
            let f = amplitude_open(&w, roots, delta, h_prime)?;
            entries.insert(w, f);
        }
        Self::assemble(
            class,
            entries,
            Provenance::Open {
                delta,
                h,
                h_prime,
                roots: roots.to_vec(),
            },
        )
    }

    /// Uniform table, every `f(w) = 1`: the circuit then prepares the
    /// Dicke state of `L` qubits and weight `M`.
    pub fn dicke(l: usize, m: usize) -> Result<Self> {
        let class = WeightClass::new(l, m)?;
        let one = Complex64::new(1.0, 0.0);
        let entries = class.words().into_iter().map(|w| (w, one)).collect();
        Self::assemble(class, entries, Provenance::Dicke)
    }

    /// Caller-supplied table. All `binomial(L, M)` entries must be
    /// present, keyed by words of `P(L, M)`, and at least one must be
    /// nonzero.
    pub fn custom(l: usize, m: usize, entries: BTreeMap<BitString, Complex64>) -> Result<Self> {
        let class = WeightClass::new(l, m)?;
        for w in entries.keys() {
            if w.len() != l || w.weight() != m {
                return Err(Error::ForeignTableKey {
                    word: w.to_string(),
                    l,
                    m,
                });
            }
        }
        let expected = class.cardinality();
        if entries.len() != expected {
            let missing = class
                .words()
                .into_iter()
                .find(|w| !entries.contains_key(w))
                .expect("some word must be missing");
            return Err(Error::IncompleteTable {
                missing: missing.to_string(),
                supplied: entries.len(),
                expected,
            });
        }
        Self::assemble(class, entries, Provenance::Custom)
    }

    fn bethe_class(l: usize, m: usize) -> Result<WeightClass> {
        if m == 0 || m >= l {
            return Err(Error::BetheWeightRange { l, m });
        }
        WeightClass::new(l, m)
    }

    fn assemble(
        class: WeightClass,
        entries: BTreeMap<BitString, Complex64>,
        source: Provenance,
    ) -> Result<Self> {
        if entries.values().all(|f| f.norm() == 0.0) {
            return Err(Error::AllZeroTable);
        }
        let tails = TailStatistics::build(class, &entries);
        Ok(AmplitudeTable {
            class,
            entries,
            source,
            tails,
        })
    }

    /// Word length `L`.
    pub fn l(&self) -> usize {
        self.class.l()
    }

    /// Weight `M`.
    pub fn m(&self) -> usize {
        self.class.m()
    }

    /// The weight sector `P(L, M)`.
    pub fn class(&self) -> WeightClass {
        self.class
    }

    /// Where the values came from.
    pub fn source(&self) -> &Provenance {
        &self.source
    }

    /// `f(w)`, or `None` for words outside `P(L, M)`.
    pub fn amplitude(&self, w: &BitString) -> Option<Complex64> {
        self.entries.get(w).copied()
    }

    /// All `(w, f(w))` pairs in increasing basis-index order.
    pub fn entries(&self) -> impl Iterator<Item = (&BitString, Complex64)> {
        self.entries.iter().map(|(w, &f)| (w, f))
    }

    /// Largest amplitude modulus; sets the scale for zero detection.
    pub fn max_abs(&self) -> f64 {
        self.tails.max_abs
    }

    /// The precomputed suffix statistics.
    pub fn tail_statistics(&self) -> &TailStatistics {
        &self.tails
    }

    /// Suffix norm `F(b)`; see [`TailStatistics::tail_f`].
    pub fn tail_f(&self, b: &BitString) -> Complex64 {
        self.tails.tail_f(b)
    }

    /// Ratio `G(ib) = F(ib)/F(b)`; see [`TailStatistics::ratio_g`].
    pub fn ratio_g(&self, i: u8, b: &BitString) -> Ratio {
        self.tails.ratio_g(i, b)
    }

    /// The normalization `F({})`of the target state.
    pub fn normalization(&self) -> Complex64 {
        self.tails.tail_f(&BitString::empty())
    }

    /// Serializes the table as a JSON map `"word" → [re, im]` in
    /// increasing basis-index order (byte-deterministic).
    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, [f64; 2]> = self
            .entries
            .iter()
            .map(|(w, f)| (w.to_string(), [f.re, f.im]))
            .collect();
        serde_json::to_string_pretty(&map).expect("amplitude maps serialize")
    }
}

// ---------------------------------------------------------------------------
// Suffix statistics
// ---------------------------------------------------------------------------

/// `G(ib) = F(ib)/F(b)`, or the marker that `F(b)` vanished and the ratio
/// is undefined. Singular ratios are not errors: synthesis responds by
/// omitting the corresponding rotation entirely.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio {
    /// A well-defined ratio.
    Value(Complex64),
    /// `F(b) = 0`; there is no amplitude on this branch to rotate.
    Singular,
}

impl Ratio {
    /// The ratio, unless singular.
    pub fn value(self) -> Option<Complex64> {
        match self {
            Ratio::Value(g) => Some(g),
            Ratio::Singular => None,
        }
    }

    /// Whether the denominator `F(b)` vanished.
    pub fn is_singular(&self) -> bool {
        matches!(self, Ratio::Singular)
    }
}

/// Memoized suffix norms `F(b)` for every feasible suffix `b` of a table.
///
/// For a suffix of length `n` and weight `j` (feasible when `j ≤ M` and
/// `M − j ≤ L − n`):
///
/// * exactly one prefix completes it when `M − j = 0` or `M − j = L − n`;
///   then `F(b)` is that word's complex amplitude `f(ab)`;
/// * otherwise `F(b) = sqrt(Σ_{w=ab} |f(w)|²)`, real and non-negative.
///
/// Infeasible suffixes have `F(b) = 0`. In every case the partition
/// identity `|F(b)|² = |F(0b)|² + |F(1b)|²` holds, which is what makes the
/// two-branch rotations of the circuit unitary.
#[derive(Debug, Clone)]
pub struct TailStatistics {
    l: usize,
    m: usize,
    values: HashMap<BitString, Complex64>,
    max_abs: f64,
}

impl TailStatistics {
    fn build(class: WeightClass, entries: &BTreeMap<BitString, Complex64>) -> Self {
        let (l, m) = (class.l(), class.m());
        let max_abs = entries.values().map(|f| f.norm()).fold(0.0f64, f64::max);
        let mut values: HashMap<BitString, Complex64> =
            entries.iter().map(|(w, &f)| (w.clone(), f)).collect();
        // Walk suffix lengths from L−1 down to 0; every level-n value is a
        // function of level n+1, so one sweep fills the whole memo.
        for n in (0..l).rev() {
            let j_min = (m + n).saturating_sub(l);
            let j_max = m.min(n);
            for j in j_min..=j_max {
                for b in WeightClass::new(n, j)
                    .expect("feasible suffix class")
                    .words()
                {
                    let value = if m == j {
                        values[&b.prepend(0)]
                    } else if m - j == l - n {
                        values[&b.prepend(1)]
                    } else {
                        let f0 = values[&b.prepend(0)].norm_sqr();
                        let f1 = values[&b.prepend(1)].norm_sqr();
                        Complex64::new((f0 + f1).sqrt(), 0.0)
                    };
                    values.insert(b, value);
                }
            }
        }
        TailStatistics {
            l,
            m,
            values,
            max_abs,
        }
    }

    /// Whether some word of the sector ends in `b`.
    pub fn is_feasible(&self, b: &BitString) -> bool {
        let (n, j) = (b.len(), b.weight());
        n <= self.l && j <= self.m && self.m - j <= self.l - n
    }

    /// The suffix norm `F(b)`; zero for infeasible suffixes.
    pub fn tail_f(&self, b: &BitString) -> Complex64 {
        if !self.is_feasible(b) {
            return Complex64::new(0.0, 0.0);
        }
        self.values[b]
    }

    /// Whether `F(b)` counts as exactly zero, using the scale-aware
    /// threshold [`ZERO_THRESHOLD`]` · max|f(w)|`.
    pub fn is_zero(&self, b: &BitString) -> bool {
        self.tail_f(b).norm() <= ZERO_THRESHOLD * self.max_abs
    }

    /// `G(ib) = F(ib)/F(b)`, or [`Ratio::Singular`] when `F(b)` vanishes.
    pub fn ratio_g(&self, i: u8, b: &BitString) -> Ratio {
        if self.is_zero(b) {
            return Ratio::Singular;
        }
        Ratio::Value(self.tail_f(&b.prepend(i)) / self.tail_f(b))
    }

    /// The zero-detection scale, `ZERO_THRESHOLD · max|f(w)|`.
    pub fn zero_scale(&self) -> f64 {
        ZERO_THRESHOLD * self.max_abs
    }
}

// ---------------------------------------------------------------------------
// Problem-definition files
// ---------------------------------------------------------------------------

/// A parsed problem-definition file: the weight sector plus the amplitude
/// source.
///
/// Three JSON shapes are accepted:
///
/// ```json
/// { "L": 4, "M": 2, "boundary": "open", "delta": 0.5,
///   "h": 0.1, "h_prime": 0.3, "roots": [[0.682741, 0.0], [1.38561, 0.0]] }
/// { "L": 6, "M": 3, "source": "dicke" }
/// { "L": 2, "M": 1, "source": "custom",
///   "amplitudes": { "01": [1.0, 0.0], "10": [0.0, 1.0] } }
/// ```
#[derive(Debug, Clone)]
pub struct ProblemDefinition {
    /// Word length.
    pub l: usize,
    /// Weight.
    pub m: usize,
    /// Where the amplitudes come from.
    pub source: ProblemSource,
}

/// The amplitude source named by a problem file.
#[derive(Debug, Clone)]
pub enum ProblemSource {
    /// Closed-chain Bethe ansatz with the given roots.
    Closed { delta: f64, roots: Vec<Complex64> },
    /// Open-chain Bethe ansatz with boundary fields.
    Open {
        delta: f64,
        h: f64,
        h_prime: f64,
        roots: Vec<Complex64>,
    },
    /// Uniform (Dicke) amplitudes.
    Dicke,
    /// Explicit amplitude map.
    Custom {
        amplitudes: BTreeMap<BitString, Complex64>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "M")]
    m: usize,
    boundary: Option<String>,
    delta: Option<f64>,
    h: Option<f64>,
    h_prime: Option<f64>,
    roots: Option<Vec<[f64; 2]>>,
    source: Option<String>,
    amplitudes: Option<BTreeMap<String, [f64; 2]>>,
}

fn invalid(reason: String) -> Error {
    Error::InvalidInput {
        what: "problem definition",
        reason,
    }
}

impl ProblemDefinition {
    /// Parses and validates a problem-definition JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawProblem = serde_json::from_str(text)?;
        let RawProblem {
            l,
            m,
            boundary,
            delta,
            h,
            h_prime,
            roots,
            source,
            amplitudes,
        } = raw;

        let source = match (boundary, source) {
            (Some(_), Some(_)) => {
                return Err(invalid(
                    "specify either \"boundary\" (Bethe source) or \"source\", not both".into(),
                ))
            }
            (None, None) => {
                return Err(invalid(
                    "missing amplitude source: set \"boundary\" with \"roots\", or \"source\""
                        .into(),
                ))
            }
            (Some(boundary), None) => {
                let delta =
                    delta.ok_or_else(|| invalid("Bethe sources require \"delta\"".into()))?;
                let roots = roots
                    .ok_or_else(|| invalid("Bethe sources require \"roots\"".into()))?
                    .into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect::<Vec<_>>();
                if roots.len() != m {
                    return Err(invalid(format!(
                        "expected M = {m} roots, got {}",
                        roots.len()
                    )));
                }
                if amplitudes.is_some() {
                    return Err(invalid(
                        "\"amplitudes\" is only valid with \"source\": \"custom\"".into(),
                    ));
                }
                match boundary.as_str() {
                    "closed" => {
                        if h.is_some() || h_prime.is_some() {
                            return Err(invalid(
                                "boundary fields \"h\"/\"h_prime\" apply to open chains only"
                                    .into(),
                            ));
                        }
                        ProblemSource::Closed { delta, roots }
                    }
                    "open" => ProblemSource::Open {
                        delta,
                        h: h.ok_or_else(|| invalid("open chains require \"h\"".into()))?,
                        h_prime: h_prime
                            .ok_or_else(|| invalid("open chains require \"h_prime\"".into()))?,
                        roots,
                    },
                    other => {
                        return Err(invalid(format!(
                            "unknown boundary \"{other}\" (expected \"closed\" or \"open\")"
                        )))
                    }
                }
            }
            (None, Some(source)) => {
                if delta.is_some() || h.is_some() || h_prime.is_some() || roots.is_some() {
                    return Err(invalid(format!(
                        "physical parameters are only valid with \"boundary\"; \
                         remove them from a \"{source}\" problem"
                    )));
                }
                match source.as_str() {
                    "dicke" => {
                        if amplitudes.is_some() {
                            return Err(invalid(
                                "\"amplitudes\" is only valid with \"source\": \"custom\"".into(),
                            ));
                        }
                        ProblemSource::Dicke
                    }
                    "custom" => {
                        let raw_amps = amplitudes.ok_or_else(|| {
                            invalid("custom sources require \"amplitudes\"".into())
                        })?;
                        let mut parsed = BTreeMap::new();
                        for (key, [re, im]) in raw_amps {
                            let w = BitString::from_str(&key)?;
                            parsed.insert(w, Complex64::new(re, im));
                        }
                        ProblemSource::Custom { amplitudes: parsed }
                    }
                    other => {
                        return Err(invalid(format!(
                            "unknown source \"{other}\" (expected \"dicke\" or \"custom\")"
                        )))
                    }
                }
            }
        };
        Ok(ProblemDefinition { l, m, source })
    }

    /// Reads and parses a problem-definition file.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Builds the amplitude table this problem describes.
    pub fn build_table(&self) -> Result<AmplitudeTable> {
        match &self.source {
            ProblemSource::Closed { delta, roots } => {
                self.check_m(roots.len())?;
                AmplitudeTable::closed(self.l, roots, *delta)
            }
            ProblemSource::Open {
                delta,
                h,
                h_prime,
                roots,
            } => {
                self.check_m(roots.len())?;
                AmplitudeTable::open(self.l, roots, *delta, *h, *h_prime)
            }
            ProblemSource::Dicke => AmplitudeTable::dicke(self.l, self.m),
            ProblemSource::Custom { amplitudes } => {
                AmplitudeTable::custom(self.l, self.m, amplitudes.clone())
            }
        }
    }

    fn check_m(&self, n_roots: usize) -> Result<()> {
        if n_roots != self.m {
            return Err(invalid(format!(
                "expected M = {} roots, got {n_roots}",
                self.m
            )));
        }
        Ok(())
    }
}
