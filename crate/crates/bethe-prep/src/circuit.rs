//! Deterministic synthesis of the preparation circuit `U_L`.
//!
//! The circuit realizes `|B⟩ = U_L |0^{L−M} 1^M⟩` as an ordered product
//! `U_L = W_2 W_3 ⋯ W_L`; being an operator product, its rightmost factor
//! `W_L` touches the state first, so the emitted gate list starts with
//! `W_L`'s blocks and ends with `W_2`'s. Each `W_m = ∏ I_{m,l}` splits
//! into blocks over the allowed `l` (lowest `l` acting first), and each
//! `I_{m,l}` is a CNOT, a run of multi-controlled `u`-gates — one per
//! suffix `b ∈ P(L−m, M−l)` — and the same CNOT again.
//!
//! The `u`-gate for `(m, l, b)` rotates in the two-dimensional space of
//! "this block fires" vs "it does not", with amplitudes `G(0b)` and
//! `G(1b)` from the table's suffix statistics. Suffixes with `F(b) = 0`
//! contribute no amplitude and their gates are simply omitted; if every
//! gate of a block is omitted the block disappears entirely, CNOTs
//! included.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bitstrings::{binomial, enumerate, BitString};
use crate::coefficients::{AmplitudeTable, TailStatistics, RATIO_NORM_TOLERANCE};
use crate::{Error, Result};

/// A controlled-`u` whose matrix sits within this distance of the
/// identity (entrywise) is droppable by [`prune`].
pub const IDENTITY_PRUNE_TOLERANCE: f64 = 1e-14;

// ---------------------------------------------------------------------------
// Gates and circuits
// ---------------------------------------------------------------------------

/// The three gate species the construction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    /// Uncontrolled bit flip.
    X,
    /// Controlled NOT (exactly one control).
    Cnot,
    /// Multi-controlled single-qubit `u`-gate.
    Cu,
}

/// Euler-like angles of the `u`-gate
/// `u = [[cos(θ/2), −e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(φ+λ)} cos(θ/2)]]`,
/// unitary for all real values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UAngles {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

/// Which `(m, l, b)` a gate implements; carried for labeling and export,
/// ignored by simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLabel {
    /// Block-row index `m` (the `W_m` this gate belongs to).
    pub m: usize,
    /// Sub-block index `l`.
    pub l: usize,
    /// The suffix a `u`-gate conditions on; `None` for the block's CNOTs.
    pub b: Option<BitString>,
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{}/I_{{{},{}}}", self.m, self.m, self.l)?;
        if let Some(b) = &self.b {
            write!(f, "/{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BlockLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput {
            what: "gate label",
            reason: format!("unrecognized label {s:?}"),
        };
        let rest = s.strip_prefix("W_").ok_or_else(bad)?;
        let (m_str, rest) = rest.split_once("/I_{").ok_or_else(bad)?;
        let (ml_str, rest) = rest.split_once('}').ok_or_else(bad)?;
        let (m2_str, l_str) = ml_str.split_once(',').ok_or_else(bad)?;
        if m_str != m2_str {
            return Err(bad());
        }
        let m: usize = m_str.parse().map_err(|_| bad())?;
        let l: usize = l_str.parse().map_err(|_| bad())?;
        let b = match rest.strip_prefix('/') {
            Some(word) => Some(word.parse()?),
            None if rest.is_empty() => None,
            None => return Err(bad()),
        };
        Ok(BlockLabel { m, l, b })
    }
}

/// One gate of the IR: a kind, a target wire, sorted positive controls,
/// angles (for `Cu` only), and an optional provenance label.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<usize>,
    pub angles: Option<UAngles>,
    pub label: Option<BlockLabel>,
}

impl Gate {
    /// An X gate on `target`.
    pub fn x(target: usize) -> Gate {
        Gate {
            kind: GateKind::X,
            target,
            controls: Vec::new(),
            angles: None,
            label: None,
        }
    }

    /// A CNOT with the given control.
    pub fn cnot(control: usize, target: usize, label: Option<BlockLabel>) -> Gate {
        Gate {
            kind: GateKind::Cnot,
            target,
            controls: vec![control],
            angles: None,
            label,
        }
    }

    /// A multi-controlled `u`-gate; controls are brought into canonical
    /// ascending order.
    pub fn cu(
        target: usize,
        mut controls: Vec<usize>,
        angles: UAngles,
        label: Option<BlockLabel>,
    ) -> Gate {
        controls.sort_unstable();
        Gate {
            kind: GateKind::Cu,
            target,
            controls,
            angles: Some(angles),
            label,
        }
    }
}

/// An ordered gate list on `n_wires` wires; application order is list
/// order (index 0 first).
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_wires: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Validates wire ranges, control ordering, and per-kind shape.
    pub fn new(n_wires: usize, gates: Vec<Gate>) -> Result<Circuit> {
        for gate in &gates {
            validate_gate(gate, n_wires)?;
        }
        Ok(Circuit { n_wires, gates })
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
}

fn validate_gate(gate: &Gate, n_wires: usize) -> Result<()> {
    let oob = |wire: usize| Error::WireOutOfRange { wire, n_wires };
    if gate.target >= n_wires {
        return Err(oob(gate.target));
    }
    let malformed = |reason: String| Error::InvalidInput {
        what: "gate",
        reason,
    };
    for (i, &c) in gate.controls.iter().enumerate() {
        if c >= n_wires {
            return Err(oob(c));
        }
        if c == gate.target {
            return Err(malformed(format!("control {c} equals the target")));
        }
        if i > 0 && gate.controls[i - 1] >= c {
            return Err(malformed("controls must be strictly ascending".into()));
        }
    }
    match gate.kind {
        GateKind::X => {
            if !gate.controls.is_empty() || gate.angles.is_some() {
                return Err(malformed("x gates take no controls or angles".into()));
            }
        }
        GateKind::Cnot => {
            if gate.controls.len() != 1 || gate.angles.is_some() {
                return Err(malformed(
                    "cnot gates take exactly one control and no angles".into(),
                ));
            }
        }
        GateKind::Cu => {
            if gate.angles.is_none() {
                return Err(malformed("cu gates require angles".into()));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The u-gate
// ---------------------------------------------------------------------------

/// Angles of the `u`-gate that maps `|1⟩ ↦ G(0b)|0⟩ + G(1b)|1⟩`:
/// `θ = 2 arccos|G(1b)|`, `λ = arg G(0b) − π`, `φ = arg G(1b) − λ`.
///
/// `arg(0)` is taken to be `0` when either ratio vanishes; `θ` is then
/// `0` or `π` and the gate still imprints the surviving phase. The pair
/// must satisfy `|G(0b)|² + |G(1b)|² = 1` within
/// [`RATIO_NORM_TOLERANCE`]; `|G(1b)|` is clamped into `[0, 1]` before
/// the arccosine so rounding cannot push it out of domain.
pub fn u_angles(g0: Complex64, g1: Complex64) -> Result<UAngles> {
    let norm = g0.norm_sqr() + g1.norm_sqr();
    if (norm - 1.0).abs() > RATIO_NORM_TOLERANCE {
        return Err(Error::InvalidInput {
            what: "u-gate ratio pair",
            reason: format!("|G(0b)|^2 + |G(1b)|^2 = {norm}, expected 1"),
        });
    }
    let theta = 2.0 * g1.norm().clamp(0.0, 1.0).acos();
    let lambda = g0.arg() - PI;
    let phi = g1.arg() - lambda;
    Ok(UAngles { theta, phi, lambda })
}

/// The 2×2 matrix of a `u`-gate, row-major.
pub fn u_matrix(angles: &UAngles) -> [[Complex64; 2]; 2] {
    let half = 0.5 * angles.theta;
    let (cos, sin) = (half.cos(), half.sin());
    let e_lambda = Complex64::from_polar(1.0, angles.lambda);
    let e_phi = Complex64::from_polar(1.0, angles.phi);
    [
        [Complex64::new(cos, 0.0), -e_lambda * sin],
        [e_phi * sin, e_phi * e_lambda * cos],
    ]
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

/// The allowed `l`-range of `W_m` for a length-`L`, weight-`M` table:
/// `max(M+m−L, 1) ≤ l ≤ min(m−1, M)`. `None` when the range is empty
/// (which happens only in the degenerate sectors `M = 0` and `M = L`).
pub fn block_l_bounds(l_sites: usize, weight: usize, m: usize) -> Option<(usize, usize)> {
    let lo = (weight + m).saturating_sub(l_sites).max(1);
    let hi = (m - 1).min(weight);
    (lo <= hi).then_some((lo, hi))
}

fn check_block_row(m: usize, l_sites: usize) -> Result<()> {
    if m < 2 || m > l_sites {
        return Err(Error::InvalidInput {
            what: "block row",
            reason: format!("m = {m} outside 2..={l_sites}"),
        });
    }
    Ok(())
}

fn snapped_ratio(stats: &TailStatistics, i: u8, b: &BitString) -> Complex64 {
    if stats.is_zero(&b.prepend(i)) {
        return Complex64::new(0.0, 0.0);
    }
    stats
        .ratio_g(i, b)
        .value()
        .expect("caller checked F(b) != 0")
}

/// Gates of the block `I_{m,l}`, in application order:
///
/// 1. CNOT with control on wire `L−m` and target on wire `L−m+l`;
/// 2. one `u`-gate per suffix `b ∈ P(L−m, M−l)` in increasing
///    basis-index order, targeting wire `L−m`, with positive controls on
///    wire `L−m+l`, on wire `L−m+l−1` if `l > 1`, and on wire `L−m−p`
///    for every 1-position `p` of `b` (dropped when `b` is the unique
///    element of its sector, where they are vacuous);
/// 3. the same CNOT again.
///
/// Suffixes with `F(b) = 0` are skipped — no amplitude reaches them — and
/// a block whose `u`-gates are all skipped is omitted wholesale.
pub fn build_i(m: usize, l: usize, table: &AmplitudeTable) -> Result<Vec<Gate>> {
    let (l_sites, weight) = (table.l(), table.m());
    check_block_row(m, l_sites)?;
    let (lmin, lmax) = block_l_bounds(l_sites, weight, m).unwrap_or((1, 0));
    if l < lmin || l > lmax {
        return Err(Error::BlockOutOfBounds { m, l, lmin, lmax });
    }

    let stats = table.tail_statistics();
    let control_wire = l_sites - m; // CNOT control and u-gate target
    let flag_wire = l_sites - m + l; // CNOT target, always a u-gate control
    let suffixes = enumerate(l_sites - m, weight - l)?;
    let unique_b = suffixes.len() == 1;

    let mut u_gates = Vec::new();
    for b in suffixes {
        if stats.is_zero(&b) {
            continue;
        }
        let g0 = snapped_ratio(stats, 0, &b);
        let g1 = snapped_ratio(stats, 1, &b);
        let norm = g0.norm_sqr() + g1.norm_sqr();
        if (norm - 1.0).abs() > RATIO_NORM_TOLERANCE {
            return Err(Error::RatioNormalization {
                m,
                l,
                b: b.to_string(),
                norm,
            });
        }
        let angles = u_angles(g0, g1)?;
        let mut controls = vec![flag_wire];
        if l > 1 {
            controls.push(flag_wire - 1);
        }
        if !unique_b {
            controls.extend(b.ones_positions().into_iter().map(|p| control_wire - p));
        }
        let label = BlockLabel { m, l, b: Some(b) };
        u_gates.push(Gate::cu(control_wire, controls, angles, Some(label)));
    }
    if u_gates.is_empty() {
        return Ok(Vec::new());
    }

    let cnot_label = BlockLabel { m, l, b: None };
    let mut gates = Vec::with_capacity(u_gates.len() + 2);
    gates.push(Gate::cnot(
        control_wire,
        flag_wire,
        Some(cnot_label.clone()),
    ));
    gates.append(&mut u_gates);
    gates.push(Gate::cnot(control_wire, flag_wire, Some(cnot_label)));
    Ok(gates)
}

/// Gates of `W_m = ∏ I_{m,l}`: the blocks for `l = max(M+m−L,1)` up to
/// `min(m−1, M)`, lowest `l` first (that is the order in which the
/// operator product applies them).
pub fn build_w(m: usize, table: &AmplitudeTable) -> Result<Vec<Gate>> {
    check_block_row(m, table.l())?;
    let mut gates = Vec::new();
    if let Some((lo, hi)) = block_l_bounds(table.l(), table.m(), m) {
        for l in lo..=hi {
            gates.extend(build_i(m, l, table)?);
        }
    }
    Ok(gates)
}

/// The full preparation circuit: X gates creating `|0^{L−M} 1^M⟩` (ones
/// on wires `0..M`), then the blocks of `U_L = W_2 W_3 ⋯ W_L`. The
/// rightmost factor of the operator product acts on the state first, so
/// `W_L`'s gates are emitted first and `W_2`'s last.
pub fn build_full(table: &AmplitudeTable) -> Result<Circuit> {
    let l_sites = table.l();
    let mut gates: Vec<Gate> = (0..table.m()).map(Gate::x).collect();
    for m in (2..=l_sites).rev() {
        gates.extend(build_w(m, table)?);
    }
    Circuit::new(l_sites, gates)
}

// ---------------------------------------------------------------------------
// Counting and pruning
// ---------------------------------------------------------------------------

/// Gate tallies by kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub x: usize,
    pub cnot: usize,
    pub cu: usize,
}

impl GateCounts {
    /// The closed-form tallies for a table with nothing omitted:
    /// `x = M`, `cnot = 2M(L−M)`, `cu = binomial(L,M) − 1`.
    pub fn formula(l: usize, m: usize) -> GateCounts {
        GateCounts {
            x: m,
            cnot: 2 * m * (l - m),
            cu: binomial(l, m) - 1,
        }
    }
}

/// Tallies the circuit's gates by kind.
pub fn gate_counts(circuit: &Circuit) -> GateCounts {
    let mut counts = GateCounts {
        x: 0,
        cnot: 0,
        cu: 0,
    };
    for gate in circuit.gates() {
        match gate.kind {
            GateKind::X => counts.x += 1,
            GateKind::Cnot => counts.cnot += 1,
            GateKind::Cu => counts.cu += 1,
        }
    }
    counts
}

fn is_identity_cu(gate: &Gate) -> bool {
    let Some(angles) = &gate.angles else {
        return false;
    };
    let matrix = u_matrix(angles);
    let identity = [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    matrix
        .iter()
        .flatten()
        .zip(identity.iter().flatten())
        .all(|(a, b)| (a - b).norm() <= IDENTITY_PRUNE_TOLERANCE)
}

/// Drops `u`-gates whose matrix is the identity to within
/// [`IDENTITY_PRUNE_TOLERANCE`]. Such gates are emitted by default so the
/// closed-form counts stay exact; pruning trades that for a shorter
/// gate list with the same action. CNOTs are never pruned.
pub fn prune(circuit: &Circuit) -> Circuit {
    let gates = circuit
        .gates()
        .iter()
        .filter(|g| !is_identity_cu(g))
        .cloned()
        .collect();
    Circuit::new(circuit.n_wires(), gates).expect("pruning preserves validity")
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// Wire formats for [`export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    /// Structured JSON; round-trips through [`import_json`].
    Json,
    /// A flat OpenQASM-flavored text rendering (write-only).
    QasmLike,
}

#[derive(Serialize, Deserialize)]
struct GateRecord {
    kind: String,
    target: usize,
    controls: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CircuitRecord {
    n_wires: usize,
    gates: Vec<GateRecord>,
}

/// Serializes a circuit deterministically: identical circuits yield
/// identical bytes. JSON carries angles only on `cu` records; the
/// qasm-like text prints angles with 17 significant digits and labels as
/// trailing comments.
pub fn export(circuit: &Circuit, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => export_json(circuit),
        ExportFormat::QasmLike => export_qasm_like(circuit),
    }
}

fn export_json(circuit: &Circuit) -> String {
    let gates = circuit
        .gates()
        .iter()
        .map(|g| GateRecord {
            kind: match g.kind {
                GateKind::X => "x",
                GateKind::Cnot => "cnot",
                GateKind::Cu => "cu",
            }
            .to_string(),
            target: g.target,
            controls: g.controls.clone(),
            theta: g.angles.map(|a| a.theta),
            phi: g.angles.map(|a| a.phi),
            lambda: g.angles.map(|a| a.lambda),
            label: g.label.as_ref().map(BlockLabel::to_string),
        })
        .collect();
    let record = CircuitRecord {
        n_wires: circuit.n_wires(),
        gates,
    };
    let mut text = serde_json::to_string_pretty(&record).expect("circuits serialize");
    text.push('\n');
    text
}

fn export_qasm_like(circuit: &Circuit) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "qreg q[{}];", circuit.n_wires());
    for gate in circuit.gates() {
        let comment = gate
            .label
            .as_ref()
            .map(|l| format!(" // {l}"))
            .unwrap_or_default();
        match gate.kind {
            GateKind::X => {
                let _ = writeln!(out, "x q[{}];{comment}", gate.target);
            }
            GateKind::Cnot => {
                let _ = writeln!(
                    out,
                    "cx q[{}], q[{}];{comment}",
                    gate.controls[0], gate.target
                );
            }
            GateKind::Cu => {
                let a = gate.angles.expect("cu gates carry angles");
                let wires: Vec<String> = gate
                    .controls
                    .iter()
                    .chain(std::iter::once(&gate.target))
                    .map(|w| format!("q[{w}]"))
                    .collect();
                let _ = writeln!(
                    out,
                    "cu({:.16e}, {:.16e}, {:.16e}) {};{comment}",
                    a.theta,
                    a.phi,
                    a.lambda,
                    wires.join(", ")
                );
            }
        }
    }
    out
}

/// Parses a circuit from the JSON produced by [`export`], validating it
/// like [`Circuit::new`].
pub fn import_json(text: &str) -> Result<Circuit> {
    let record: CircuitRecord = serde_json::from_str(text)?;
    let mut gates = Vec::with_capacity(record.gates.len());
    for g in record.gates {
        let kind = match g.kind.as_str() {
            "x" => GateKind::X,
            "cnot" => GateKind::Cnot,
            "cu" => GateKind::Cu,
            other => {
                return Err(Error::InvalidInput {
                    what: "gate kind",
                    reason: format!("unknown kind {other:?}"),
                })
            }
        };
        let angles = match (kind, g.theta, g.phi, g.lambda) {
            (GateKind::Cu, Some(theta), Some(phi), Some(lambda)) => {
                Some(UAngles { theta, phi, lambda })
            }
            (GateKind::Cu, _, _, _) => {
                return Err(Error::InvalidInput {
                    what: "gate angles",
                    reason: "cu records need theta, phi, and lambda".into(),
                })
            }
            (_, None, None, None) => None,
            _ => {
                return Err(Error::InvalidInput {
                    what: "gate angles",
                    reason: "only cu records carry angles".into(),
                })
            }
        };
        let label = g.label.as_deref().map(BlockLabel::from_str).transpose()?;
        gates.push(Gate {
            kind,
            target: g.target,
            controls: g.controls,
            angles,
            label,
        });
    }
    Circuit::new(record.n_wires, gates)
}
