//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong while building tables, synthesizing
/// circuits, or simulating them.
///
/// Variants are grouped by pipeline stage; the CLI maps all of them to
/// exit code 2 (input/domain errors), reserving exit code 1 for
/// verification checks that ran but exceeded tolerance.
#[derive(Debug, Error)]
pub enum Error {
    /// A weight class with `M > L` was requested.
    #[error("invalid weight class: M = {m} exceeds L = {l}")]
    InvalidWeightClass { l: usize, m: usize },

    /// A word's weight does not match the number of Bethe roots.
    #[error("word {word} has weight {actual}, expected {expected}")]
    WeightMismatch {
        word: String,
        actual: usize,
        expected: usize,
    },

    /// Bethe sources require a nontrivial weight sector.
    #[error("Bethe amplitude tables require 0 < M < L, got M = {m}, L = {l}")]
    BetheWeightRange { l: usize, m: usize },

    /// A custom table is missing entries of its weight class.
    #[error(
        "custom amplitude table is incomplete: missing {missing} \
         ({supplied} of {expected} entries supplied)"
    )]
    IncompleteTable {
        missing: String,
        supplied: usize,
        expected: usize,
    },

    /// A custom table contains a key outside its weight class.
    #[error("amplitude key {word} does not belong to P({l},{m})")]
    ForeignTableKey { word: String, l: usize, m: usize },

    /// Every amplitude is zero, so the target state is undefined.
    #[error("amplitude table is identically zero; the target state is undefined")]
    AllZeroTable,

    /// A block index `(m, l)` fell outside the synthesis bounds.
    #[error("block (m = {m}, l = {l}) outside bounds {lmin} ≤ l ≤ {lmax}")]
    BlockOutOfBounds {
        m: usize,
        l: usize,
        lmin: usize,
        lmax: usize,
    },

    /// The ratios feeding a rotation gate were not normalized.
    #[error(
        "|G(0b)|² + |G(1b)|² = {norm} deviates from 1 beyond 1e-9 \
         at block (m = {m}, l = {l}, b = \"{b}\")"
    )]
    RatioNormalization {
        m: usize,
        l: usize,
        b: String,
        norm: f64,
    },

    /// A statevector larger than the configured cap was requested.
    #[error("L = {l} exceeds the statevector cap of {cap} wires")]
    WireCapExceeded { l: usize, cap: usize },

    /// A gate references a wire outside the register.
    #[error("gate touches wire {wire}, but the register has {n_wires} wires")]
    WireOutOfRange { wire: usize, n_wires: usize },

    /// Two statevectors of different sizes were combined.
    #[error("wire counts differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    /// Hamiltonians need at least one bond.
    #[error("XXZ chains require L ≥ 2, got L = {l}")]
    ChainTooShort { l: usize },

    /// Dense materialization is limited to small registers.
    #[error("dense operator requested for L = {l}; the dense path is capped at L = {cap}")]
    DenseCapExceeded { l: usize, cap: usize },

    /// A serialized circuit or problem file failed validation.
    #[error("invalid {what}: {reason}")]
    InvalidInput { what: &'static str, reason: String },

    /// JSON (de)serialization failure, with position information.
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    /// Filesystem failure while reading inputs or writing reports.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
