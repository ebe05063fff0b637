//! Encoding circuits for fast-family codes and a stabilizer-tableau simulator.
//!
//! Qubit b·n0 + n0 − 1 (the last of block b) carries bit b of the outer
//! codeword; the other qubits of each block are ancillas. Stage I encodes the
//! message into the outer code with CNOTs taken from the standard form
//! [I | P] of the outer generator matrix. Stage II puts each ancilla in |+⟩
//! and fans it into the last qubit of its block, which spreads every outer bit
//! over its block as a repetition-code coset.

use std::fmt;

use thiserror::Error;

use crate::css::{CssCode, FastFamily};
use crate::matgf::{BitVec, MatrixGF, RowSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("gate {index} acts on qubit {qubit} but the circuit has {n} qubits")]
    QubitRange {
        index: usize,
        qubit: usize,
        n: usize,
    },
    #[error("gate {index} uses qubit {qubit} as both control and target")]
    SameQubit { index: usize, qubit: usize },
    #[error("outer generator matrix has no standard form of the expected size")]
    StandardForm,
}

pub type Result<T> = std::result::Result<T, CircuitError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    Cx(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    I,
    II,
}

impl Stage {
    fn as_str(&self) -> &'static str {
        match self {
            Stage::I => "I",
            Stage::II => "II",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<(Gate, Stage)>,
    /// Qubits that carry the logical input.
    pub message: Vec<usize>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
            message: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[(Gate, Stage)] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate, stage: Stage) -> Result<()> {
        let index = self.gates.len();
        let check = |q: usize| {
            if q < self.n {
                Ok(())
            } else {
                Err(CircuitError::QubitRange {
                    index,
                    qubit: q,
                    n: self.n,
                })
            }
        };
        match gate {
            Gate::H(t) => check(t)?,
            Gate::Cx(c, t) => {
                check(c)?;
                check(t)?;
                if c == t {
                    return Err(CircuitError::SameQubit { index, qubit: c });
                }
            }
        }
        self.gates.push((gate, stage));
        Ok(())
    }

    /// Copy without the gate at `index`.
    pub fn without_gate(&self, index: usize) -> Circuit {
        let mut c = self.clone();
        c.gates.remove(index);
        c
    }

    pub fn stats(&self) -> CircuitStats {
        let mut s = CircuitStats {
            depth: circuit_depth(self),
            ..Default::default()
        };
        for (g, stage) in &self.gates {
            match (g, stage) {
                (Gate::H(_), _) => s.hadamards += 1,
                (Gate::Cx(..), Stage::I) => s.stage1_cnots += 1,
                (Gate::Cx(..), Stage::II) => s.stage2_cnots += 1,
            }
        }
        s.gates = self.gates.len();
        s
    }

    /// Reads the text format written by `Display`.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        let mut stage = Stage::I;
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let t = raw.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(comment) = t.strip_prefix('#') {
                match comment.trim() {
                    "stage I" => stage = Stage::I,
                    "stage II" => stage = Stage::II,
                    _ => {}
                }
                continue;
            }
            let mut tokens = Vec::new();
            let mut col = 0;
            for piece in raw.split(' ') {
                if !piece.is_empty() {
                    tokens.push((piece, col + 1));
                }
                col += piece.len() + 1;
            }
            let num = |(tok, col): (&str, usize)| {
                tok.parse::<usize>().map_err(|_| CircuitError::Parse {
                    line,
                    col,
                    msg: format!("expected a qubit index, found `{tok}`"),
                })
            };
            let arity = |want: usize| {
                if tokens.len() == want + 1 {
                    Ok(())
                } else {
                    Err(CircuitError::Parse {
                        line,
                        col: 1,
                        msg: format!("`{}` takes {want} operand(s)", tokens[0].0),
                    })
                }
            };
            match (tokens[0].0, circuit.as_mut()) {
                ("qubits", None) => {
                    arity(1)?;
                    circuit = Some(Circuit::new(num(tokens[1])?));
                }
                ("qubits", Some(_)) => {
                    return Err(CircuitError::Parse {
                        line,
                        col: 1,
                        msg: "repeated `qubits` line".into(),
                    })
                }
                (_, None) => {
                    return Err(CircuitError::Parse {
                        line,
                        col: 1,
                        msg: "first line must be `qubits <n>`".into(),
                    })
                }
                ("message", Some(c)) => {
                    for &tok in &tokens[1..] {
                        let q = num(tok)?;
                        if q >= c.n {
                            return Err(CircuitError::Parse {
                                line,
                                col: tok.1,
                                msg: format!("qubit {q} out of range"),
                            });
                        }
                        c.message.push(q);
                    }
                }
                ("H", Some(c)) => {
                    arity(1)?;
                    let g = Gate::H(num(tokens[1])?);
                    c.push(g, stage).map_err(|e| CircuitError::Parse {
                        line,
                        col: tokens[1].1,
                        msg: e.to_string(),
                    })?;
                }
                ("CX", Some(c)) => {
                    arity(2)?;
                    let g = Gate::Cx(num(tokens[1])?, num(tokens[2])?);
                    c.push(g, stage).map_err(|e| CircuitError::Parse {
                        line,
                        col: tokens[1].1,
                        msg: e.to_string(),
                    })?;
                }
                (other, _) => {
                    return Err(CircuitError::Parse {
                        line,
                        col: tokens[0].1,
                        msg: format!("unknown gate `{other}`"),
                    })
                }
            }
        }
        circuit.ok_or(CircuitError::Parse {
            line: 1,
            col: 1,
            msg: "empty circuit file".into(),
        })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        if !self.message.is_empty() {
            let m: Vec<String> = self.message.iter().map(|q| q.to_string()).collect();
            writeln!(f, "message {}", m.join(" "))?;
        }
        let mut current = None;
        for (g, stage) in &self.gates {
            if current != Some(*stage) {
                writeln!(f, "# stage {}", stage.as_str())?;
                current = Some(*stage);
            }
            match g {
                Gate::H(t) => writeln!(f, "H {t}")?,
                Gate::Cx(c, t) => writeln!(f, "CX {c} {t}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CircuitStats {
    pub gates: usize,
    pub hadamards: usize,
    pub stage1_cnots: usize,
    pub stage2_cnots: usize,
    pub depth: usize,
}

/// Layer count of the as-soon-as-possible schedule in gate order.
pub fn circuit_depth(c: &Circuit) -> usize {
    let mut busy = vec![0usize; c.n];
    let mut depth = 0;
    for (g, _) in &c.gates {
        let layer = match *g {
            Gate::H(t) => {
                busy[t] += 1;
                busy[t]
            }
            Gate::Cx(a, b) => {
                let l = busy[a].max(busy[b]) + 1;
                busy[a] = l;
                busy[b] = l;
                l
            }
        };
        depth = depth.max(layer);
    }
    depth
}

/// Proper edge colouring of a bipartite graph with max-degree many colours
/// (alternating-path recolouring). Returns one colour per edge.
fn bipartite_edge_colouring(left: usize, right: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut deg_l = vec![0; left];
    let mut deg_r = vec![0; right];
    for &(u, v) in edges {
        deg_l[u] += 1;
        deg_r[v] += 1;
    }
    let delta = deg_l.iter().chain(&deg_r).copied().max().unwrap_or(0);
    // at_l[u][c] = edge index coloured c at left vertex u
    let mut at_l = vec![vec![usize::MAX; delta]; left];
    let mut at_r = vec![vec![usize::MAX; delta]; right];
    let mut colour = vec![usize::MAX; edges.len()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        let a = (0..delta)
            .find(|&c| at_l[u][c] == usize::MAX)
            .expect("free colour at left vertex");
        let b = (0..delta)
            .find(|&c| at_r[v][c] == usize::MAX)
            .expect("free colour at right vertex");
        if at_r[v][a] != usize::MAX {
            // walk the a/b path from v and swap its colours; it cannot reach u
            let mut path = Vec::new();
            let mut on_right = true;
            let mut vertex = v;
            let mut want = a;
            loop {
                let edge = if on_right {
                    at_r[vertex][want]
                } else {
                    at_l[vertex][want]
                };
                if edge == usize::MAX {
                    break;
                }
                path.push(edge);
                vertex = if on_right {
                    edges[edge].0
                } else {
                    edges[edge].1
                };
                on_right = !on_right;
                want = if want == a { b } else { a };
            }
            for &edge in &path {
                let (pu, pv) = edges[edge];
                at_l[pu][colour[edge]] = usize::MAX;
                at_r[pv][colour[edge]] = usize::MAX;
            }
            for &edge in &path {
                let (pu, pv) = edges[edge];
                let c = if colour[edge] == a { b } else { a };
                colour[edge] = c;
                at_l[pu][c] = edge;
                at_r[pv][c] = edge;
            }
        }
        colour[e] = a;
        at_l[u][a] = e;
        at_r[v][a] = e;
    }
    colour
}

/// Two-stage encoder for a fast-family code.
///
/// Stage I CNOTs are ordered by an edge colouring of the message/parity
/// bipartite graph of P, so its depth equals the largest row or column weight
/// of P. Stage II uses N/n0 ancilla groups of n0 − 1 qubits and exactly
/// N − N/n0 CNOTs.
pub fn build_encoder(ff: &FastFamily) -> Result<Circuit> {
    let n0 = ff.n0();
    let blocks = ff.blocks();
    let n = ff.n();
    let carrier = |b: usize| b * n0 + n0 - 1;
    let mut circuit = Circuit::new(n);
    let g2 = ff.outer().generator();
    let k2 = g2.rows();
    if k2 > 0 {
        let (sf, perm) = g2.standard_form();
        if sf.rows() != k2 || (0..k2).any(|i| (0..k2).any(|j| sf.get(i, j) != (i == j) as u32)) {
            return Err(CircuitError::StandardForm);
        }
        circuit.message = perm[..k2].iter().map(|&b| carrier(b)).collect();
        let mut edges = Vec::new();
        for j in 0..k2 {
            for i in 0..blocks - k2 {
                if sf.get(j, k2 + i) != 0 {
                    edges.push((j, i));
                }
            }
        }
        let colours = bipartite_edge_colouring(k2, blocks - k2, &edges);
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&e| (colours[e], edges[e]));
        for e in order {
            let (j, i) = edges[e];
            circuit.push(Gate::Cx(carrier(perm[j]), carrier(perm[k2 + i])), Stage::I)?;
        }
    }
    for b in 0..blocks {
        for i in 0..n0 - 1 {
            circuit.push(Gate::H(b * n0 + i), Stage::II)?;
        }
    }
    for b in 0..blocks {
        for i in 0..n0 - 1 {
            circuit.push(Gate::Cx(b * n0 + i, carrier(b)), Stage::II)?;
        }
    }
    Ok(circuit)
}

/// Stabilizer tableau in the CHP layout: rows 0..n are destabilizers, rows
/// n..2n stabilizers. Bits are stored by qubit column so gate updates are
/// word-wide XORs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    x: Vec<Vec<u64>>,
    z: Vec<Vec<u64>>,
    sign: Vec<u64>,
}

impl Tableau {
    /// The all-|0⟩ state: destabilizers X_i, stabilizers Z_i.
    pub fn zero_state(n: usize) -> Self {
        let words = (2 * n).div_ceil(64).max(1);
        let mut x = vec![vec![0u64; words]; n];
        let mut z = vec![vec![0u64; words]; n];
        for q in 0..n {
            x[q][q / 64] |= 1 << (q % 64);
            let r = n + q;
            z[q][r / 64] |= 1 << (r % 64);
        }
        Tableau {
            n,
            x,
            z,
            sign: vec![0; words],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&mut self, g: Gate) {
        match g {
            Gate::H(a) => {
                for w in 0..self.sign.len() {
                    self.sign[w] ^= self.x[a][w] & self.z[a][w];
                }
                std::mem::swap(&mut self.x[a], &mut self.z[a]);
            }
            Gate::Cx(a, b) => {
                for w in 0..self.sign.len() {
                    let (xa, za, xb, zb) = (self.x[a][w], self.z[a][w], self.x[b][w], self.z[b][w]);
                    self.sign[w] ^= xa & zb & !(xb ^ za);
                    self.x[b][w] = xb ^ xa;
                    self.z[a][w] = za ^ zb;
                }
            }
        }
    }

    fn bit(col: &[u64], r: usize) -> bool {
        col[r / 64] >> (r % 64) & 1 == 1
    }

    /// Row `r` as a 2n-bit symplectic vector (x | z) with its sign bit.
    pub fn row(&self, r: usize) -> (BitVec, bool) {
        let mut v = BitVec::zeros(2 * self.n);
        for q in 0..self.n {
            v.set(q, Self::bit(&self.x[q], r));
            v.set(self.n + q, Self::bit(&self.z[q], r));
        }
        (v, Self::bit(&self.sign, r))
    }

    /// The n stabilizer generators as a matrix of (x | z) rows.
    pub fn stabilizers(&self) -> MatrixGF {
        let rows = (self.n..2 * self.n).map(|r| self.row(r).0).collect();
        MatrixGF::from_bitvecs(rows, 2 * self.n)
    }

    /// Symplectic product of rows i and j (0 when they commute).
    pub fn commutator(&self, i: usize, j: usize) -> bool {
        (0..self.n).fold(false, |acc, q| {
            acc ^ (Self::bit(&self.x[q], i) & Self::bit(&self.z[q], j))
                ^ (Self::bit(&self.z[q], i) & Self::bit(&self.x[q], j))
        })
    }
}

/// Runs the circuit on |0…0⟩.
pub fn tableau_run(c: &Circuit) -> Tableau {
    let mut t = Tableau::zero_state(c.n);
    for &(g, _) in &c.gates {
        t.apply(g);
    }
    t
}

/// Outcome of [`verify_encoder`]; violations name the check matrix and row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EncoderReport {
    /// Rows of H_Z whose X-type operator is not a stabilizer of the output.
    pub x_type_violations: Vec<usize>,
    /// Rows of H_X whose Z-type operator is not a stabilizer of the output.
    pub z_type_violations: Vec<usize>,
    /// Input in which the first violation appeared: "zero" or "plus".
    pub failing_input: Option<&'static str>,
}

impl EncoderReport {
    pub fn passed(&self) -> bool {
        self.x_type_violations.is_empty() && self.z_type_violations.is_empty()
    }
}

impl fmt::Display for EncoderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "encoder verified");
        }
        writeln!(
            f,
            "encoder FAILED on the {} input",
            self.failing_input.unwrap_or("zero")
        )?;
        if let Some(r) = self.x_type_violations.first() {
            writeln!(f, "X-type check from H_Z row {r} is not stabilized")?;
        }
        if let Some(r) = self.z_type_violations.first() {
            writeln!(f, "Z-type check from H_X row {r} is not stabilized")?;
        }
        Ok(())
    }
}

fn check_rows(q: &CssCode, stab: &RowSpace) -> (Vec<usize>, Vec<usize>) {
    let n = q.n();
    let lift = |row: &BitVec, offset: usize| {
        let mut v = BitVec::zeros(2 * n);
        for i in row.support() {
            v.set(offset + i, true);
        }
        v
    };
    let xs = q.hz().bit_rows().unwrap_or(&[]);
    let zs = q.hx().bit_rows().unwrap_or(&[]);
    let xv = xs
        .iter()
        .enumerate()
        .filter(|(_, r)| !stab.contains_bits(&lift(r, 0)))
        .map(|(i, _)| i)
        .collect();
    let zv = zs
        .iter()
        .enumerate()
        .filter(|(_, r)| !stab.contains_bits(&lift(r, n)))
        .map(|(i, _)| i)
        .collect();
    (xv, zv)
}

/// Checks that the encoder output is stabilized by (H_Z | 0) and (0 | H_X).
///
/// The circuit runs twice: with every qubit in |0⟩ (logical zero), and with
/// the message qubits first put in |+⟩ (logical plus). The second run also
/// exercises Stage I, which acts trivially on the zero input.
pub fn verify_encoder(q: &CssCode, c: &Circuit) -> EncoderReport {
    assert!(q.field().is_binary(), "tableau verification is binary");
    assert_eq!(q.n(), c.n, "circuit and code lengths differ");
    let zero = tableau_run(c);
    let (xv, zv) = check_rows(q, &RowSpace::new(&zero.stabilizers()));
    if !xv.is_empty() || !zv.is_empty() {
        return EncoderReport {
            x_type_violations: xv,
            z_type_violations: zv,
            failing_input: Some("zero"),
        };
    }
    let mut plus = Tableau::zero_state(c.n);
    for &m in &c.message {
        plus.apply(Gate::H(m));
    }
    for &(g, _) in &c.gates {
        plus.apply(g);
    }
    let (xv, zv) = check_rows(q, &RowSpace::new(&plus.stabilizers()));
    let failing_input = (!xv.is_empty() || !zv.is_empty()).then_some("plus");
    EncoderReport {
        x_type_violations: xv,
        z_type_violations: zv,
        failing_input,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_repetition, LinearCode};
    use crate::css::{fast_family, shor_instance};
    use crate::galois::FieldSpec;

    #[test]
    fn depth_examples() {
        let mut c = Circuit::new(4);
        assert_eq!(circuit_depth(&c), 0);
        c.push(Gate::Cx(0, 1), Stage::I).unwrap();
        c.push(Gate::Cx(2, 3), Stage::I).unwrap();
        assert_eq!(circuit_depth(&c), 1);
        let mut chain = Circuit::new(3);
        chain.push(Gate::Cx(0, 1), Stage::I).unwrap();
        chain.push(Gate::Cx(1, 2), Stage::I).unwrap();
        assert_eq!(circuit_depth(&chain), 2);
        assert!(chain.push(Gate::Cx(1, 1), Stage::I).is_err());
        assert!(chain.push(Gate::H(3), Stage::I).is_err());
    }

    #[test]
    fn tableau_examples() {
        let t = tableau_run(&Circuit::new(2));
        assert_eq!(t.row(2).0.to_u32s(), vec![0, 0, 1, 0]);
        assert_eq!(t.row(3).0.to_u32s(), vec![0, 0, 0, 1]);
        let mut c = Circuit::new(1);
        c.push(Gate::H(0), Stage::I).unwrap();
        assert_eq!(tableau_run(&c).row(1).0.to_u32s(), vec![1, 0]);
        // Bell pair: Z0 → X0 → X0X1, Z1 → Z0Z1
        let mut bell = Circuit::new(2);
        bell.push(Gate::H(0), Stage::I).unwrap();
        bell.push(Gate::Cx(0, 1), Stage::I).unwrap();
        let t = tableau_run(&bell);
        assert_eq!(t.row(2), (BitVec::from_u32s(&[1, 1, 0, 0]), false));
        assert_eq!(t.row(3), (BitVec::from_u32s(&[0, 0, 1, 1]), false));
        for i in 0..4 {
            for j in 0..4 {
                // destabilizer i anticommutes only with stabilizer i
                let expect = (i % 2 == j % 2) && i != j;
                assert_eq!(t.commutator(i, j), expect, "{i} {j}");
            }
        }
    }

    #[test]
    fn sign_tracking() {
        let mut t = Tableau::zero_state(1);
        t.apply(Gate::H(0));
        t.apply(Gate::H(0));
        assert_eq!(t.row(1), (BitVec::from_u32s(&[0, 1]), false));
        // H Y H = −Y
        let mut t = Tableau::zero_state(1);
        t.x[0][0] |= 2;
        t.apply(Gate::H(0));
        assert_eq!(t.row(1), (BitVec::from_u32s(&[1, 1]), true));
    }

    #[test]
    fn shor_encoder() {
        let ff = shor_instance();
        let c = build_encoder(&ff).unwrap();
        let s = c.stats();
        assert_eq!(s.stage2_cnots, 6);
        assert_eq!(s.hadamards, 6);
        assert_eq!(s.stage1_cnots, 2);
        assert!(s.depth <= ff.k() + 3);
        let report = verify_encoder(ff.css(), &c);
        assert!(report.passed(), "{report}");
        for i in 0..c.len() {
            let broken = c.without_gate(i);
            let r = verify_encoder(ff.css(), &broken);
            assert!(!r.passed(), "removing gate {i} went unnoticed");
        }
    }

    #[test]
    fn full_outer_code_has_no_stage_one() {
        let f = FieldSpec::binary();
        let outer = LinearCode::from_parity_check(MatrixGF::identity(&f, 4)).unwrap();
        assert_eq!(outer.k(), 0);
        let ff = FastFamily::with_outer(3, outer).unwrap();
        let c = build_encoder(&ff).unwrap();
        assert_eq!(c.stats().stage1_cnots, 0);
        assert_eq!(c.stats().depth, 3);
        assert!(verify_encoder(ff.css(), &c).passed());
    }

    #[test]
    fn empty_code_vacuous_pass() {
        let f = FieldSpec::binary();
        let q = CssCode::new(MatrixGF::zeros(&f, 0, 3), MatrixGF::zeros(&f, 0, 3)).unwrap();
        assert_eq!(q.k(), 3);
        assert!(verify_encoder(&q, &Circuit::new(3)).passed());
    }

    #[test]
    fn fast_family_encoders() {
        for seed in 0..20 {
            for &(n, n0) in &[(32usize, 4usize), (48, 4), (64, 8)] {
                let ff = fast_family(n, n0, 3, 6, seed).unwrap();
                let c = build_encoder(&ff).unwrap();
                let s = c.stats();
                assert_eq!(s.stage2_cnots, n - n / n0);
                assert!(s.depth <= ff.k() + n0, "depth {} k2 {}", s.depth, ff.k());
                assert!(verify_encoder(ff.css(), &c).passed());
            }
        }
    }

    #[test]
    fn edge_colouring_is_proper_and_tight() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let (l, r) = (rng.gen_range(1..12), rng.gen_range(1..12));
            let edges: Vec<(usize, usize)> = (0..l)
                .flat_map(|u| (0..r).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let cols = bipartite_edge_colouring(l, r, &edges);
            let mut deg = std::collections::HashMap::new();
            for &(u, v) in &edges {
                *deg.entry((0, u)).or_insert(0) += 1;
                *deg.entry((1, v)).or_insert(0) += 1;
            }
            let delta = deg.values().copied().max().unwrap_or(0);
            assert!(cols.iter().all(|&c| c < delta.max(1)));
            let mut seen = std::collections::HashSet::new();
            for (e, &(u, v)) in edges.iter().enumerate() {
                assert!(seen.insert((0, u, cols[e])));
                assert!(seen.insert((1, v, cols[e])));
            }
        }
    }

    #[test]
    fn circuit_text_round_trip() {
        let c = build_encoder(&shor_instance()).unwrap();
        let text = c.to_string();
        assert!(text.contains("# stage I\n") && text.contains("# stage II\n"));
        let back = Circuit::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_string(), text);
        let err = Circuit::parse("qubits 2\nCX 0 x\n").unwrap_err();
        assert_eq!(
            err,
            CircuitError::Parse {
                line: 2,
                col: 6,
                msg: "expected a qubit index, found `x`".into()
            }
        );
        assert!(Circuit::parse("H 0\n").is_err());
        assert!(Circuit::parse("qubits 2\nT 0\n").is_err());
    }

    #[test]
    fn repetition_outer_encoder_depth() {
        let ff = FastFamily::with_outer(4, make_repetition(5).unwrap()).unwrap();
        let c = build_encoder(&ff).unwrap();
        // Stage I is a fan-out of weight 4 from one message qubit, then 3 Stage II layers
        assert_eq!(c.stats().depth, 7);
        assert!(verify_encoder(ff.css(), &c).passed());
    }
}
