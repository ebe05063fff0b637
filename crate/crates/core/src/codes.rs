//! Classical linear codes: repetition, block lifts, generalized Reed-Solomon,
//! alternant subfield subcodes, random codes meeting the Gilbert-Varshamov
//! target, and expander codes from random biregular graphs.
//!
//! A [`LinearCode`] keeps both a generator matrix and a parity-check matrix.
//! The generator always has full row rank. The parity-check matrix may carry
//! redundant rows when its rows have meaning of their own: expander codes keep
//! one row per check node, alternant codes keep all m·r expanded rows so a
//! syndrome can be folded back into the extension field.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::vol_q;
use crate::galois::{FieldSpec, GaloisError};
use crate::matgf::{BitVec, MatError, MatrixGF, RowSpace};

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error("{what}: no acceptable sample after {attempts} attempts")]
    RetryExhausted { what: &'static str, attempts: usize },
    #[error("generator and parity-check matrices are inconsistent: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, CodeError>;

/// Largest log2 of the number of codewords the brute-force distance routine enumerates.
pub const BRUTE_FORCE_LOG2_CAP: f64 = 26.0;

/// A minimum distance together with how it was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedDistance {
    pub value: usize,
    pub method: String,
}

/// GRS data kept by alternant codes so they can be decoded algebraically.
#[derive(Clone, Debug)]
pub struct AlternantData {
    pub ext: FieldSpec,
    pub a: Vec<u32>,
    pub y: Vec<u32>,
    pub r: usize,
}

/// Random biregular bipartite graph: n bit nodes of degree c, r check nodes of degree d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpanderGraph {
    pub n: usize,
    pub r: usize,
    pub c: usize,
    pub d: usize,
    pub seed: u64,
    /// Checks adjacent to each bit, ascending.
    pub bit_checks: Vec<Vec<usize>>,
    /// Bits adjacent to each check, ascending.
    pub check_bits: Vec<Vec<usize>>,
}

/// Bipartite bit/check adjacency of a binary parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    pub bit_checks: Vec<Vec<usize>>,
    pub check_bits: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_parity_check(h: &MatrixGF) -> Self {
        let rows = h.bit_rows().expect("Tanner graphs need a binary matrix");
        let mut bit_checks = vec![Vec::new(); h.cols()];
        let check_bits: Vec<Vec<usize>> = rows.iter().map(|r| r.support().collect()).collect();
        for (j, bits) in check_bits.iter().enumerate() {
            for &b in bits {
                bit_checks[b].push(j);
            }
        }
        TannerGraph {
            bit_checks,
            check_bits,
        }
    }

    pub fn bits(&self) -> usize {
        self.bit_checks.len()
    }

    pub fn checks(&self) -> usize {
        self.check_bits.len()
    }

    /// Syndrome of a bit pattern, one entry per check.
    pub fn syndrome(&self, e: &BitVec) -> BitVec {
        let mut s = BitVec::zeros(self.checks());
        for (j, bits) in self.check_bits.iter().enumerate() {
            if bits.iter().filter(|&&b| e.get(b)).count() % 2 == 1 {
                s.set(j, true);
            }
        }
        s
    }
}

impl ExpanderGraph {
    pub fn tanner(&self) -> TannerGraph {
        TannerGraph {
            bit_checks: self.bit_checks.clone(),
            check_bits: self.check_bits.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: FieldSpec,
    n: usize,
    k: usize,
    g: MatrixGF,
    h: MatrixGF,
    pub d_certified: Option<CertifiedDistance>,
    pub provenance: Vec<String>,
    pub graph: Option<ExpanderGraph>,
    pub alternant: Option<AlternantData>,
}

impl LinearCode {
    /// Code from an explicit (G, H) pair. G must have full row rank and
    /// rank(G) + rank(H) must equal n.
    pub fn from_pair(g: MatrixGF, h: MatrixGF) -> Result<Self> {
        if g.field() != h.field() {
            return Err(MatError::FieldMismatch.into());
        }
        if g.cols() != h.cols() {
            return Err(CodeError::Inconsistent(format!(
                "G has {} columns, H has {}",
                g.cols(),
                h.cols()
            )));
        }
        let n = g.cols();
        let k = g.rank();
        if k != g.rows() {
            return Err(CodeError::Inconsistent(format!(
                "G has {} rows but rank {k}",
                g.rows()
            )));
        }
        let rh = h.rank();
        if k + rh != n {
            return Err(CodeError::Inconsistent(format!(
                "rank(G) = {k}, rank(H) = {rh}, n = {n}"
            )));
        }
        if g.rows() > 0 && h.rows() > 0 && !g.mul(&h.transpose())?.is_zero() {
            return Err(CodeError::Inconsistent("G·Hᵀ ≠ 0".into()));
        }
        Ok(LinearCode {
            field: g.field().clone(),
            n,
            k,
            g,
            h,
            d_certified: None,
            provenance: Vec::new(),
            graph: None,
            alternant: None,
        })
    }

    /// The code spanned by the rows of `g` (which may be dependent).
    pub fn from_generator(g: &MatrixGF) -> Result<Self> {
        let basis = g.row_basis();
        let h = g.nullspace();
        Self::from_pair(basis, h)
    }

    /// The nullspace of `h`; `h` is kept verbatim as the parity-check matrix.
    pub fn from_parity_check(h: MatrixGF) -> Result<Self> {
        let g = h.nullspace();
        Self::from_pair(g, h)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.size()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn generator(&self) -> &MatrixGF {
        &self.g
    }
    pub fn parity_check(&self) -> &MatrixGF {
        &self.h
    }

    pub fn with_provenance(mut self, line: impl Into<String>) -> Self {
        self.provenance.push(line.into());
        self
    }

    pub fn syndrome(&self, word: &[u32]) -> Vec<u32> {
        self.h
            .mul_vec(word)
            .expect("word length matches code length")
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        self.syndrome(word).iter().all(|&v| v == 0)
    }

    /// Tanner graph of the parity-check rows; `None` unless the code is binary.
    pub fn tanner(&self) -> Option<TannerGraph> {
        if !self.field.is_binary() {
            return None;
        }
        Some(match &self.graph {
            Some(g) => g.tanner(),
            None => TannerGraph::from_parity_check(&self.h),
        })
    }

    /// Exact minimum distance by codeword enumeration, `None` when the
    /// enumeration would exceed [`BRUTE_FORCE_LOG2_CAP`] or the code is {0}.
    pub fn brute_force_distance(&self) -> Option<usize> {
        if self.k == 0 {
            return None;
        }
        if self.k as f64 * (self.q() as f64).log2() > BRUTE_FORCE_LOG2_CAP {
            return None;
        }
        Some(min_weight_of_span(&self.g))
    }

    /// Sets `d_certified` from the brute-force enumeration when it is feasible.
    pub fn certify_distance(&mut self) -> Option<usize> {
        let d = self.brute_force_distance()?;
        self.d_certified = Some(CertifiedDistance {
            value: d,
            method: "bruteforce".into(),
        });
        Some(d)
    }

    /// Checks G·Hᵀ = 0, the rank bookkeeping, and a recorded distance when n ≤ 28.
    pub fn validate(&self) -> Result<()> {
        if self.g.rows() > 0 && self.h.rows() > 0 && !self.g.mul(&self.h.transpose())?.is_zero() {
            return Err(CodeError::Inconsistent("G·Hᵀ ≠ 0".into()));
        }
        if self.g.rank() != self.k || self.h.rank() != self.n - self.k {
            return Err(CodeError::Inconsistent("rank bookkeeping".into()));
        }
        if let Some(cd) = &self.d_certified {
            if self.n <= 28 {
                if let Some(d) = self.brute_force_distance() {
                    if d != cd.value {
                        return Err(CodeError::Inconsistent(format!(
                            "recorded distance {} but enumeration gives {d}",
                            cd.value
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Minimum nonzero weight in the row span of `g` (rows assumed independent).
pub fn min_weight_of_span(g: &MatrixGF) -> usize {
    let k = g.rows();
    let n = g.cols();
    if k == 0 {
        return 0;
    }
    if let Some(rows) = g.bit_rows() {
        if n <= 64 {
            let words: Vec<u64> = rows
                .iter()
                .map(|r| r.words().first().copied().unwrap_or(0))
                .collect();
            let mut cw = 0u64;
            let mut best = usize::MAX;
            for i in 1u64..(1u64 << k) {
                cw ^= words[i.trailing_zeros() as usize];
                best = best.min(cw.count_ones() as usize);
            }
            return best;
        }
        let mut cw = BitVec::zeros(n);
        let mut best = usize::MAX;
        for i in 1u64..(1u64 << k) {
            cw.xor_assign(&rows[i.trailing_zeros() as usize]);
            best = best.min(cw.weight());
        }
        return best;
    }
    let f = g.field();
    let q = f.size();
    let rows = g.to_rows();
    let mut coeffs = vec![0u32; k];
    let mut cw = vec![0u32; n];
    let mut best = usize::MAX;
    loop {
        // odometer increment with incremental codeword update
        let mut j = 0;
        loop {
            if j == k {
                return best;
            }
            let old = coeffs[j];
            let new = if old + 1 == q { 0 } else { old + 1 };
            for (c, x) in cw.iter_mut().enumerate() {
                let e = rows[j][c];
                if e != 0 {
                    *x = f.add(f.sub(*x, f.mul(old, e)), f.mul(new, e));
                }
            }
            coeffs[j] = new;
            if new != 0 {
                break;
            }
            j += 1;
        }
        best = best.min(cw.iter().filter(|&&v| v != 0).count());
    }
}

/// Binary repetition code of length n0 with H = [I | 1].
pub fn make_repetition(n0: usize) -> Result<LinearCode> {
    if n0 < 2 {
        return Err(CodeError::InvalidParameter(format!(
            "repetition length {n0} < 2"
        )));
    }
    let f = FieldSpec::binary();
    let g = MatrixGF::from_rows(&f, &[vec![1; n0]])?;
    let mut h = MatrixGF::zeros(&f, n0 - 1, n0);
    for i in 0..n0 - 1 {
        h.set(i, i, 1);
        h.set(i, n0 - 1, 1);
    }
    let mut code = LinearCode::from_pair(g, h)?;
    code.d_certified = Some(CertifiedDistance {
        value: n0,
        method: "repetition".into(),
    });
    Ok(code.with_provenance(format!("repetition n={n0}")))
}

/// `copies` disjoint copies of `inner`: H = I ⊗ H_inner, G = I ⊗ G_inner.
pub fn lift_block(inner: &LinearCode, copies: usize) -> Result<LinearCode> {
    if copies == 0 {
        return Err(CodeError::InvalidParameter(
            "copies must be at least 1".into(),
        ));
    }
    let g = inner.g.kron_identity(copies);
    let h = inner.h.kron_identity(copies);
    let mut code = LinearCode::from_pair(g, h)?;
    code.d_certified = inner.d_certified.as_ref().map(|d| CertifiedDistance {
        value: d.value,
        method: format!("lift of {}", d.method),
    });
    code.provenance = inner.provenance.clone();
    Ok(code.with_provenance(format!("lift copies={copies}")))
}

/// Evaluation points, column multipliers and dimension of a GRS code over GF(q^m).
#[derive(Clone, Debug)]
pub struct GrsSpec {
    pub field: FieldSpec,
    pub a: Vec<u32>,
    pub v: Vec<u32>,
    pub k: usize,
}

impl GrsSpec {
    pub fn validate(&self) -> Result<()> {
        let n = self.a.len();
        if self.v.len() != n {
            return Err(CodeError::InvalidParameter(
                "a and v differ in length".into(),
            ));
        }
        if self.k == 0 || self.k >= n {
            return Err(CodeError::InvalidParameter(format!(
                "need 1 ≤ k ≤ n − 1, got k={}",
                self.k
            )));
        }
        check_points(&self.field, &self.a)?;
        if self.v.iter().any(|&x| x == 0 || x >= self.field.size()) {
            return Err(CodeError::InvalidParameter(
                "multipliers must be nonzero field elements".into(),
            ));
        }
        Ok(())
    }

    /// Dual multipliers: y_i·v_i = 1/∏_{j≠i}(α_i − α_j).
    pub fn dual_multipliers(&self) -> Result<Vec<u32>> {
        self.validate()?;
        let f = &self.field;
        let mut y = Vec::with_capacity(self.a.len());
        for (i, &ai) in self.a.iter().enumerate() {
            let mut prod = 1u32;
            for (j, &aj) in self.a.iter().enumerate() {
                if i != j {
                    prod = f.mul(prod, f.sub(ai, aj));
                }
            }
            y.push(f.inv(f.mul(prod, self.v[i]))?);
        }
        Ok(y)
    }
}

fn check_points(f: &FieldSpec, a: &[u32]) -> Result<()> {
    let mut seen = vec![false; f.size() as usize];
    for &x in a {
        if x >= f.size() {
            return Err(CodeError::InvalidParameter(format!(
                "{x} is not an element of GF({})",
                f.size()
            )));
        }
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(CodeError::InvalidParameter(format!(
                "evaluation point {x} repeated"
            )));
        }
    }
    Ok(())
}

/// Rows (mult_i · α_i^t) for t < rows.
fn vandermonde_rows(f: &FieldSpec, a: &[u32], mult: &[u32], rows: usize) -> MatrixGF {
    let mut m = MatrixGF::zeros(f, rows, a.len());
    for (i, (&ai, &mi)) in a.iter().zip(mult).enumerate() {
        let mut x = mi;
        for t in 0..rows {
            m.set(t, i, x);
            x = f.mul(x, ai);
        }
    }
    m
}

/// GRS_k(a, v) over the extension field; MDS with distance n − k + 1.
pub fn make_grs(spec: &GrsSpec) -> Result<LinearCode> {
    let y = spec.dual_multipliers()?;
    let n = spec.a.len();
    let g = vandermonde_rows(&spec.field, &spec.a, &spec.v, spec.k);
    let h = vandermonde_rows(&spec.field, &spec.a, &y, n - spec.k);
    let mut code = LinearCode::from_pair(g, h)?;
    code.d_certified = Some(CertifiedDistance {
        value: n - spec.k + 1,
        method: "mds".into(),
    });
    Ok(code.with_provenance(format!("grs q={} n={n} k={}", spec.field.size(), spec.k)))
}

/// The GF(q)-subfield subcode of the GRS code with parity rows (y_i α_i^j), j < r,
/// where `field` is GF(q^m) and q is its base field.
pub fn make_alternant(field: &FieldSpec, a: &[u32], y: &[u32], r: usize) -> Result<LinearCode> {
    let n = a.len();
    if y.len() != n {
        return Err(CodeError::InvalidParameter(
            "a and y differ in length".into(),
        ));
    }
    if r == 0 || r >= n {
        return Err(CodeError::InvalidParameter(format!(
            "need 1 ≤ r < n, got r={r}"
        )));
    }
    check_points(field, a)?;
    if y.iter().any(|&x| x == 0 || x >= field.size()) {
        return Err(CodeError::InvalidParameter(
            "y must be nonzero field elements".into(),
        ));
    }
    let base = field.base_field();
    let sub = field.subfield(&base)?;
    let m = field.m() as usize;
    let grs_h = vandermonde_rows(field, a, y, r);
    let mut h = MatrixGF::zeros(&base, m * r, n);
    for j in 0..r {
        for i in 0..n {
            for (l, c) in sub.coordinates(grs_h.get(j, i)).into_iter().enumerate() {
                if c != 0 {
                    h.set(j * m + l, i, c);
                }
            }
        }
    }
    let mut code = LinearCode::from_parity_check(h)?;
    code.alternant = Some(AlternantData {
        ext: field.clone(),
        a: a.to_vec(),
        y: y.to_vec(),
        r,
    });
    Ok(code.with_provenance(format!("alternant q={} m={m} n={n} r={r}", base.size())))
}

/// Largest d with Vol_q(n−1, d−2) < q^(n−k); 1 when no d ≥ 2 qualifies.
pub fn gv_target(n: usize, k: usize, q: u32) -> usize {
    let budget = num_bigint::BigUint::from(q).pow((n - k) as u32);
    let mut best = 1;
    for d in 2..=n {
        if vol_q(n - 1, d - 2, q) < budget {
            best = d;
        } else {
            break;
        }
    }
    best
}

/// Random [n, k]_q code whose brute-force distance reaches [`gv_target`].
pub fn make_random_gv(n: usize, k: usize, q: u32, seed: u64) -> Result<LinearCode> {
    const ATTEMPTS: usize = 10_000;
    if n > 28 {
        return Err(CodeError::InvalidParameter(format!(
            "n = {n} exceeds the certification bound 28"
        )));
    }
    if k == 0 || k > n {
        return Err(CodeError::InvalidParameter(format!(
            "need 1 ≤ k ≤ n, got k={k}"
        )));
    }
    let f = FieldSpec::gf(q as u64)?;
    if k == n {
        let mut code = LinearCode::from_pair(MatrixGF::identity(&f, n), MatrixGF::zeros(&f, 0, n))?;
        code.d_certified = Some(CertifiedDistance {
            value: 1,
            method: "bruteforce".into(),
        });
        return Ok(code.with_provenance(format!("random-gv q={q} n={n} k={k} seed={seed}")));
    }
    let target = gv_target(n, k, q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let rows: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        let g = MatrixGF::from_rows(&f, &rows)?;
        if g.rank() < k {
            continue;
        }
        let d = min_weight_of_span(&g);
        if d >= target {
            let mut code = LinearCode::from_generator(&g)?;
            code.d_certified = Some(CertifiedDistance {
                value: d,
                method: "bruteforce".into(),
            });
            return Ok(code.with_provenance(format!("random-gv q={q} n={n} k={k} seed={seed}")));
        }
    }
    Err(CodeError::RetryExhausted {
        what: "random GV code",
        attempts: ATTEMPTS,
    })
}

/// Random (c, d)-biregular bipartite graph with n bit nodes and n·c/d check nodes.
///
/// Stubs are matched by a uniformly random permutation; any repeated edge is
/// then removed by switching it with a random edge elsewhere, which keeps every
/// degree intact. A fresh matching is drawn if repair stalls.
pub fn sample_biregular(n: usize, c: usize, d: usize, seed: u64) -> Result<ExpanderGraph> {
    const ATTEMPTS: usize = 1000;
    if c == 0 || d == 0 || n == 0 {
        return Err(CodeError::InvalidParameter(
            "degrees and size must be positive".into(),
        ));
    }
    if !(n * c).is_multiple_of(d) {
        return Err(CodeError::InvalidParameter(format!(
            "d = {d} does not divide n·c = {}",
            n * c
        )));
    }
    let r = n * c / d;
    if r >= n {
        return Err(CodeError::InvalidParameter(format!(
            "{r} checks for {n} bits leaves no code"
        )));
    }
    if d > n || c > r {
        return Err(CodeError::InvalidParameter(
            "degrees too large for a simple graph".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let mut right: Vec<usize> = (0..r).flat_map(|j| std::iter::repeat_n(j, d)).collect();
        right.shuffle(&mut rng);
        // edge e joins bit e / c with check right[e]
        if repair_multi_edges(&mut right, c, &mut rng) {
            let mut bit_checks = vec![Vec::with_capacity(c); n];
            let mut check_bits = vec![Vec::with_capacity(d); r];
            for (e, &j) in right.iter().enumerate() {
                bit_checks[e / c].push(j);
                check_bits[j].push(e / c);
            }
            bit_checks.iter_mut().for_each(|v| v.sort_unstable());
            check_bits.iter_mut().for_each(|v| v.sort_unstable());
            return Ok(ExpanderGraph {
                n,
                r,
                c,
                d,
                seed,
                bit_checks,
                check_bits,
            });
        }
    }
    Err(CodeError::RetryExhausted {
        what: "simple biregular graph",
        attempts: ATTEMPTS,
    })
}

fn repair_multi_edges(right: &mut [usize], c: usize, rng: &mut ChaCha8Rng) -> bool {
    let edges = right.len();
    let has = |right: &[usize], bit: usize, check: usize, skip: usize| {
        (bit * c..bit * c + c).any(|e| e != skip && right[e] == check)
    };
    let mut budget = 100 * edges;
    loop {
        let bad = (0..edges).find(|&e| has(right, e / c, right[e], e));
        let Some(e) = bad else {
            return true;
        };
        loop {
            if budget == 0 {
                return false;
            }
            budget -= 1;
            let f = rng.gen_range(0..edges);
            let (u, v) = (e / c, right[e]);
            let (u2, v2) = (f / c, right[f]);
            if u == u2 || v == v2 {
                continue;
            }
            if has(right, u, v2, e) || has(right, u2, v, f) {
                continue;
            }
            right.swap(e, f);
            break;
        }
    }
}

/// Expander code: one parity row per check node of a random biregular graph.
pub fn make_expander(n: usize, c: usize, d: usize, seed: u64) -> Result<LinearCode> {
    let graph = sample_biregular(n, c, d, seed)?;
    let f = FieldSpec::binary();
    let rows: Vec<BitVec> = graph
        .check_bits
        .iter()
        .map(|bits| BitVec::from_support(n, bits))
        .collect();
    let h = MatrixGF::from_bitvecs(rows, n);
    let mut code = LinearCode::from_parity_check(h)?;
    debug_assert_eq!(code.field(), &f);
    code.graph = Some(graph);
    Ok(code.with_provenance(format!("expander n={n} c={c} d={d} seed={seed}")))
}

/// The dual code: generator and parity-check roles exchanged.
pub fn dual(code: &LinearCode) -> Result<LinearCode> {
    let g = code.h.row_basis();
    let h = code.g.clone();
    let out = LinearCode::from_pair(g, h)?;
    let mut prov = code.provenance.clone();
    prov.push("dual".into());
    Ok(LinearCode {
        provenance: prov,
        ..out
    })
}

/// True when the row space of `a`'s generator lies inside `b`.
pub fn is_subcode(a: &LinearCode, b: &LinearCode) -> bool {
    let rs = RowSpace::new(b.generator());
    (0..a.generator().rows()).all(|r| rs.contains(&a.generator().row(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest};

    fn enumerate_min_weight(code: &LinearCode) -> usize {
        // independent oracle: scan all q^n words and keep codewords
        let q = code.q();
        let n = code.n();
        let total = (q as u64).pow(n as u32);
        let mut best = usize::MAX;
        for idx in 1..total {
            let mut v = idx;
            let word: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (v % q as u64) as u32;
                    v /= q as u64;
                    d
                })
                .collect();
            if code.contains(&word) {
                best = best.min(word.iter().filter(|&&x| x != 0).count());
            }
        }
        best
    }

    fn hamming() -> LinearCode {
        let f = FieldSpec::new(2, 1, 3).unwrap();
        let g = f.primitive_element();
        let a: Vec<u32> = (0..7).map(|i| f.pow(g, i)).collect();
        make_alternant(&f, &a, &a, 1).unwrap()
    }

    #[test]
    fn repetition_shapes() {
        let rep3 = make_repetition(3).unwrap();
        assert_eq!(
            rep3.parity_check().to_rows(),
            vec![vec![1, 0, 1], vec![0, 1, 1]]
        );
        assert_eq!(rep3.generator().to_rows(), vec![vec![1, 1, 1]]);
        let rep2 = make_repetition(2).unwrap();
        assert_eq!(rep2.parity_check().to_rows(), vec![vec![1, 1]]);
        assert_eq!(make_repetition(5).unwrap().d_certified.unwrap().value, 5);
        assert!(make_repetition(1).is_err());
    }

    #[test]
    fn lifted_repetition() {
        let c = lift_block(&make_repetition(3).unwrap(), 3).unwrap();
        assert_eq!((c.n(), c.k()), (9, 3));
        assert_eq!(c.brute_force_distance(), Some(3));
        assert_eq!(c.parity_check().row(2), vec![0, 0, 0, 1, 0, 1, 0, 0, 0]);
        let c = lift_block(&make_repetition(2).unwrap(), 2).unwrap();
        assert_eq!((c.n(), c.k()), (4, 2));
        assert_eq!(enumerate_min_weight(&c), 2);
        let once = lift_block(&make_repetition(4).unwrap(), 1).unwrap();
        assert_eq!(once.generator(), make_repetition(4).unwrap().generator());
    }

    #[test]
    fn grs_over_gf4_is_mds() {
        let f = FieldSpec::gf(4).unwrap();
        let spec = GrsSpec {
            field: f.clone(),
            a: vec![0, 1, 2, 3],
            v: vec![1; 4],
            k: 2,
        };
        let c = make_grs(&spec).unwrap();
        assert_eq!((c.n(), c.k()), (4, 2));
        assert_eq!(enumerate_min_weight(&c), 3);
        let spec = GrsSpec { k: 3, ..spec };
        let c = make_grs(&spec).unwrap();
        assert_eq!(c.parity_check().rows(), 1);
        assert_eq!(enumerate_min_weight(&c), 2);
    }

    #[test]
    fn grs_dual_is_grs_with_dual_multipliers() {
        let f = FieldSpec::gf(8).unwrap();
        let a: Vec<u32> = (0..7).collect();
        let v: Vec<u32> = (1..8).collect();
        let spec = GrsSpec {
            field: f.clone(),
            a: a.clone(),
            v,
            k: 3,
        };
        let y = spec.dual_multipliers().unwrap();
        let c = make_grs(&spec).unwrap();
        let dual_spec = GrsSpec {
            field: f,
            a,
            v: y,
            k: 4,
        };
        let d = make_grs(&dual_spec).unwrap();
        assert!(is_subcode(&dual(&c).unwrap(), &d));
        assert!(is_subcode(&d, &dual(&c).unwrap()));
    }

    #[test]
    fn grs_is_mds_exhaustively() {
        for (q, n, k) in [
            (4u64, 4usize, 1usize),
            (4, 4, 3),
            (5, 5, 2),
            (8, 6, 3),
            (8, 7, 2),
        ] {
            let f = FieldSpec::gf(q).unwrap();
            let a: Vec<u32> = (0..n as u32).collect();
            let v: Vec<u32> = (0..n as u32).map(|i| 1 + i % (q as u32 - 1)).collect();
            let c = make_grs(&GrsSpec { field: f, a, v, k }).unwrap();
            assert_eq!(
                c.brute_force_distance(),
                Some(n - k + 1),
                "q={q} n={n} k={k}"
            );
        }
        let f = FieldSpec::gf(4).unwrap();
        let bad = GrsSpec {
            field: f,
            a: vec![0, 1, 1],
            v: vec![1; 3],
            k: 1,
        };
        assert!(make_grs(&bad).is_err());
    }

    #[test]
    fn hamming_as_alternant() {
        let c = hamming();
        assert_eq!((c.n(), c.k()), (7, 4));
        assert_eq!(enumerate_min_weight(&c), 3);
        assert_eq!(c.parity_check().rows(), 3);
        // columns are the seven distinct nonzero vectors
        let mut cols: Vec<Vec<u32>> = (0..7).map(|i| c.parity_check().column(i)).collect();
        cols.sort();
        cols.dedup();
        assert_eq!(cols.len(), 7);
    }

    #[test]
    fn alternant_full_redundancy_gives_repetition() {
        // r = n − 1 over GF(8), y = 1: the binary subcode is {0, 1…1} or {0}
        let f = FieldSpec::new(2, 1, 3).unwrap();
        let a: Vec<u32> = (1..8).collect();
        let y = vec![1u32; 7];
        let c = make_alternant(&f, &a, &y, 6).unwrap();
        assert!(c.k() <= 1);
        if c.k() == 1 {
            assert_eq!(enumerate_min_weight(&c), 7);
        }
    }

    #[test]
    fn alternant_matches_direct_subfield_filter() {
        let f = FieldSpec::new(2, 1, 3).unwrap();
        let a: Vec<u32> = vec![1, 2, 3, 4, 5, 6, 7, 0];
        let y: Vec<u32> = vec![3, 1, 4, 1, 5, 2, 6, 7];
        for r in 1..4 {
            let c = make_alternant(&f, &a, &y, r).unwrap();
            assert!(c.k() + 3 * r >= 8);
            let grs_h = vandermonde_rows(&f, &a, &y, r);
            let mut count = 0;
            for w in 0u32..256 {
                let word: Vec<u32> = (0..8).map(|i| (w >> i) & 1).collect();
                let direct = grs_h.mul_vec(&word).unwrap().iter().all(|&x| x == 0);
                assert_eq!(direct, c.contains(&word));
                count += direct as usize;
            }
            assert_eq!(count, 1 << c.k());
            if let Some(d) = c.brute_force_distance() {
                assert!(d > r);
            }
        }
    }

    #[test]
    fn alternant_over_gf4_base() {
        let f = FieldSpec::new(2, 2, 2).unwrap();
        let a: Vec<u32> = (1..10).collect();
        let y = vec![1u32; 9];
        let c = make_alternant(&f, &a, &y, 2).unwrap();
        assert_eq!(c.q(), 4);
        assert!(c.k() >= 9 - 4);
        assert!(c.brute_force_distance().unwrap() >= 3);
    }

    #[test]
    fn gv_targets() {
        assert_eq!(gv_target(12, 4, 2), 5);
        assert_eq!(gv_target(7, 4, 2), 3);
    }

    #[test]
    fn random_gv_codes() {
        let c = make_random_gv(12, 4, 2, 7).unwrap();
        assert_eq!((c.n(), c.k()), (12, 4));
        assert!(c.d_certified.as_ref().unwrap().value >= 4);
        c.validate().unwrap();
        for seed in 0..5 {
            let c = make_random_gv(7, 4, 2, seed).unwrap();
            assert!(c.brute_force_distance().unwrap() >= 2);
        }
        let full = make_random_gv(5, 5, 2, 0).unwrap();
        assert_eq!(full.d_certified.unwrap().value, 1);
        let c3 = make_random_gv(8, 3, 3, 1).unwrap();
        assert!(c3.brute_force_distance().unwrap() >= gv_target(8, 3, 3));
        assert!(make_random_gv(29, 4, 2, 0).is_err());
    }

    #[test]
    fn expander_small() {
        let c = make_expander(10, 3, 6, 1).unwrap();
        assert_eq!(c.parity_check().rows(), 5);
        assert!(c.k() >= 5);
        let g = c.graph.as_ref().unwrap();
        assert!(g.bit_checks.iter().all(|v| v.len() == 3));
        assert!(g.check_bits.iter().all(|v| v.len() == 6));
        assert!(make_expander(10, 3, 7, 1).is_err());
    }

    #[test]
    fn expander_graphs_are_simple_biregular() {
        for seed in 0..20 {
            let g = sample_biregular(200, 5, 10, seed).unwrap();
            assert_eq!(g.n * g.c, g.r * g.d);
            for checks in &g.bit_checks {
                assert_eq!(checks.len(), 5);
                assert!(checks.windows(2).all(|w| w[0] < w[1]));
            }
            for bits in &g.check_bits {
                assert_eq!(bits.len(), 10);
                assert!(bits.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn dual_codes() {
        let rep3 = make_repetition(3).unwrap();
        let spc = dual(&rep3).unwrap();
        assert_eq!((spc.n(), spc.k()), (3, 2));
        assert_eq!(enumerate_min_weight(&spc), 2);
        let h = hamming();
        let simplex = dual(&h).unwrap();
        assert_eq!(simplex.k(), 3);
        assert_eq!(simplex.brute_force_distance(), Some(4));
        assert!(is_subcode(&simplex, &h));
        let back = dual(&simplex).unwrap();
        assert!(is_subcode(&back, &h) && is_subcode(&h, &back));
    }

    #[test]
    fn validate_catches_wrong_distance() {
        let mut c = make_repetition(4).unwrap();
        c.d_certified = Some(CertifiedDistance {
            value: 3,
            method: "bogus".into(),
        });
        assert!(c.validate().is_err());
    }

    proptest! {
        #[test]
        fn random_codes_satisfy_invariants(n in 3usize..12, seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(1..n);
            let f = FieldSpec::binary();
            let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect()).collect();
            let g = MatrixGF::from_rows(&f, &rows).unwrap();
            let c = LinearCode::from_generator(&g).unwrap();
            prop_assert!(c.validate().is_ok());
            prop_assert_eq!(c.k(), g.rank());
            if c.k() > 0 {
                prop_assert_eq!(c.brute_force_distance().unwrap(), enumerate_min_weight(&c));
            }
        }
    }
}
