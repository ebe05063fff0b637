//! Quantum codes built from classical ones.
//!
//! A [`CssCode`] is a pair of check matrices: `hx` multiplies X-error vectors
//! and `hz` multiplies Z-error vectors, so `hx·hzᵀ = 0` is the commutation
//! condition. [`make_css`] and [`make_pccss`] build them from classical codes;
//! [`FastFamily`] is the repetition-inner, expander-outer family with linear
//! time decoders, kept in structured form so it scales past the point where
//! dense check matrices fit in memory. [`make_enlarged`] produces a general
//! [`StabilizerCode`] from a dual-containing code and an outer code.
//!
//! Distances are coset-excluded: the minimum weight of a vector annihilated
//! by one check matrix but outside the row space of the other.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::binomial;
use crate::codes::{
    make_expander, make_repetition, CertifiedDistance, CodeError, LinearCode, TannerGraph,
};
use crate::galois::{default_modulus, FieldSpec};
use crate::matgf::{BitVec, MatError, MatrixGF, RowSpace};

/// Default rank cap for the exhaustive CSS distance enumeration.
pub const DEFAULT_DISTANCE_CAP: usize = 26;

/// Largest length accepted by [`distance_stabilizer`].
pub const STABILIZER_DISTANCE_MAX_N: usize = 12;

#[derive(Debug, Error)]
pub enum CssError {
    #[error("dual containment fails: row {row} of the second code's check matrix is not in the first code")]
    NotContained { row: usize, witness: Vec<u32> },
    #[error("check matrices do not commute: X-check {x_row} against Z-check {z_row}")]
    NotCommuting { x_row: usize, z_row: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("enumeration needs rank {rank} but the cap is {cap}")]
    CapExceeded { rank: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

pub type Result<T> = std::result::Result<T, CssError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Z,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::X => "x",
            Side::Z => "z",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CssCode {
    n: usize,
    hx: MatrixGF,
    hz: MatrixGF,
    k: usize,
    pub dx: Option<CertifiedDistance>,
    pub dz: Option<CertifiedDistance>,
    pub provenance: Vec<String>,
    /// Block length when the code belongs to the fast family.
    pub n0: Option<usize>,
}

impl CssCode {
    /// Code from check matrices; fails unless `hx·hzᵀ = 0`.
    pub fn new(hx: MatrixGF, hz: MatrixGF) -> Result<Self> {
        if hx.field() != hz.field() {
            return Err(MatError::FieldMismatch.into());
        }
        if hx.cols() != hz.cols() {
            return Err(CssError::Dimension(format!(
                "H_X has {} columns, H_Z has {}",
                hx.cols(),
                hz.cols()
            )));
        }
        if let Some((x_row, z_row)) = commutation_witness(&hx, &hz) {
            return Err(CssError::NotCommuting { x_row, z_row });
        }
        let n = hx.cols();
        let k = n - hx.rank() - hz.rank();
        Ok(CssCode {
            n,
            hx,
            hz,
            k,
            dx: None,
            dz: None,
            provenance: Vec::new(),
            n0: None,
        })
    }

    /// Code with a recorded dimension and no validation; [`check_valid`]
    /// reports whatever is wrong with it.
    pub fn unchecked(hx: MatrixGF, hz: MatrixGF, k: usize) -> Self {
        CssCode {
            n: hx.cols(),
            hx,
            hz,
            k,
            dx: None,
            dz: None,
            provenance: Vec::new(),
            n0: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.hx.field().size()
    }
    pub fn field(&self) -> &FieldSpec {
        self.hx.field()
    }
    pub fn hx(&self) -> &MatrixGF {
        &self.hx
    }
    pub fn hz(&self) -> &MatrixGF {
        &self.hz
    }

    /// The check matrix that multiplies errors of the given side.
    pub fn check(&self, side: Side) -> &MatrixGF {
        match side {
            Side::X => &self.hx,
            Side::Z => &self.hz,
        }
    }

    pub fn distance(&self, side: Side) -> Option<&CertifiedDistance> {
        match side {
            Side::X => self.dx.as_ref(),
            Side::Z => self.dz.as_ref(),
        }
    }

    /// Replaces one check matrix without re-validating; for building
    /// deliberately broken codes in tests and tooling.
    pub fn with_unchecked(mut self, side: Side, m: MatrixGF) -> Self {
        match side {
            Side::X => self.hx = m,
            Side::Z => self.hz = m,
        }
        self
    }
}

fn commutation_witness(hx: &MatrixGF, hz: &MatrixGF) -> Option<(usize, usize)> {
    if hx.rows() == 0 || hz.rows() == 0 {
        return None;
    }
    let prod = hx.mul(&hz.transpose()).expect("shapes checked");
    for r in 0..prod.rows() {
        for c in 0..prod.cols() {
            if prod.get(r, c) != 0 {
                return Some((r, c));
            }
        }
    }
    None
}

/// CSS code with Z errors checked by C1 (`hz = H_1`) and X errors by C2
/// (`hx = H_2`); needs C2^⊥ ⊆ C1. Dimension k1 + k2 − n.
pub fn make_css(c1: &LinearCode, c2: &LinearCode) -> Result<CssCode> {
    if c1.n() != c2.n() || c1.field() != c2.field() {
        return Err(CssError::Dimension(
            "component codes differ in length or field".into(),
        ));
    }
    let h2 = c2.parity_check();
    for r in 0..h2.rows() {
        let row = h2.row(r);
        if !c1.contains(&row) {
            return Err(CssError::NotContained {
                row: r,
                witness: row,
            });
        }
    }
    let mut q = CssCode::new(h2.clone(), c1.parity_check().clone())?;
    q.provenance
        .push(format!("css n={} k1={} k2={}", c1.n(), c1.k(), c2.k()));
    Ok(q)
}

/// Partially concatenated CSS code: `hx = H_2·G_1`, `hz = H_1`, where C2 has
/// length k1 = dim C1. Parameters [[n1, k2]].
pub fn make_pccss(c1: &LinearCode, c2: &LinearCode) -> Result<CssCode> {
    if c2.n() != c1.k() {
        return Err(CssError::Dimension(format!(
            "outer length {} must equal inner dimension {}",
            c2.n(),
            c1.k()
        )));
    }
    let hx = c2.parity_check().mul(c1.generator())?;
    let mut q = CssCode::new(hx, c1.parity_check().clone())?;
    q.provenance
        .push(format!("pccss n1={} k1={} k2={}", c1.n(), c1.k(), c2.k()));
    Ok(q)
}

/// Outcome of [`check_valid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub n: usize,
    pub rank_hx: usize,
    pub rank_hz: usize,
    pub k_recorded: usize,
    pub k_computed: usize,
    /// First (X-check, Z-check) pair with nonzero product.
    pub commutation_witness: Option<(usize, usize)>,
    pub distance_mismatch: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.commutation_witness.is_none()
            && self.k_recorded == self.k_computed
            && self.distance_mismatch.is_empty()
    }
}

impl std::fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "n = {}, rank(H_X) = {}, rank(H_Z) = {}",
            self.n, self.rank_hx, self.rank_hz
        )?;
        writeln!(
            f,
            "k recorded = {}, k computed = {}",
            self.k_recorded, self.k_computed
        )?;
        match self.commutation_witness {
            None => writeln!(f, "commutation: ok")?,
            Some((x, z)) => writeln!(f, "commutation: FAILED at X-check row {x}, Z-check row {z}")?,
        }
        for m in &self.distance_mismatch {
            writeln!(f, "distance: {m}")?;
        }
        write!(f, "{}", if self.is_valid() { "valid" } else { "INVALID" })
    }
}

/// Commutation, rank bookkeeping and (for n ≤ 26 within the cap) recorded distances.
pub fn check_valid(q: &CssCode) -> ValidityReport {
    let rank_hx = q.hx.rank();
    let rank_hz = q.hz.rank();
    let mut mismatches = Vec::new();
    for side in [Side::X, Side::Z] {
        if let Some(rec) = q.distance(side) {
            if q.n <= 26 {
                if let Ok(Some(found)) = distance_css(q, side, DEFAULT_DISTANCE_CAP) {
                    if found.d != rec.value {
                        mismatches.push(format!(
                            "d_{} recorded {} but enumeration gives {}",
                            side.as_str(),
                            rec.value,
                            found.d
                        ));
                    }
                }
            }
        }
    }
    ValidityReport {
        n: q.n,
        rank_hx,
        rank_hz,
        k_recorded: q.k,
        k_computed: q.n.saturating_sub(rank_hx + rank_hz),
        commutation_witness: commutation_witness(&q.hx, &q.hz),
        distance_mismatch: mismatches,
    }
}

/// A minimum-weight vector found by a distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceWitness {
    pub d: usize,
    pub witness: Vec<u32>,
}

/// Basis of `space` extended from a basis of `inner` (rows of `inner` must lie in `space`).
fn split_basis(inner: &MatrixGF, space: &MatrixGF) -> (MatrixGF, MatrixGF) {
    let s = inner.row_basis();
    let mut current = s.clone();
    let mut extra: Vec<Vec<u32>> = Vec::new();
    for r in 0..space.rows() {
        let row = space.row(r);
        if !RowSpace::new(&current).contains(&row) {
            let single = MatrixGF::from_rows(space.field(), std::slice::from_ref(&row))
                .expect("row from matrix");
            current = current.vstack(&single).expect("same width");
            extra.push(row);
        }
    }
    let l = MatrixGF::from_rows_with_cols(space.field(), &extra, space.cols())
        .expect("rows from matrix");
    (s, l)
}

/// Lexicographic order on supports: at the first position where the vectors
/// differ, the one with the nonzero entry comes first.
fn support_cmp_words(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let d = x ^ y;
        if d != 0 {
            let low = d & d.wrapping_neg();
            return if x & low != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    Ordering::Equal
}

fn support_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match ((*x != 0), (*y != 0)) {
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
    }
    a.cmp(b)
}

/// Coset-excluded distance of one side: the minimum weight over
/// null(check(side)) minus rowspace(check(other side)), by exhaustive
/// enumeration of the nullspace (rank at most `cap`). Returns `None` when
/// k = 0 and no such vector exists. The witness is the smallest
/// minimum-weight vector in support-lexicographic order.
pub fn distance_css(q: &CssCode, side: Side, cap: usize) -> Result<Option<DistanceWitness>> {
    let (own, other) = match side {
        Side::X => (&q.hx, &q.hz),
        Side::Z => (&q.hz, &q.hx),
    };
    let null = own.nullspace();
    if null.rows() > cap {
        return Err(CssError::CapExceeded {
            rank: null.rows(),
            cap,
        });
    }
    let (s, l) = split_basis(other, &null);
    if l.rows() == 0 {
        return Ok(None);
    }
    if let (Some(srows), Some(lrows)) = (s.bit_rows(), l.bit_rows()) {
        return Ok(Some(binary_coset_search(q.n, srows, lrows)));
    }
    Ok(Some(generic_coset_search(&s, &l)))
}

fn binary_coset_search(n: usize, srows: &[BitVec], lrows: &[BitVec]) -> DistanceWitness {
    let words = n.div_ceil(64).max(1);
    let to_words = |v: &BitVec| -> Vec<u64> {
        let mut w = v.words().to_vec();
        w.resize(words, 0);
        w
    };
    let s: Vec<Vec<u64>> = srows.iter().map(to_words).collect();
    let l: Vec<Vec<u64>> = lrows.iter().map(to_words).collect();
    let inner_bits = s.len().min(16);
    let outer_s = s.len() - inner_bits;
    let l_count = 1u64 << l.len();
    let hi_count = 1u64 << outer_s;
    let best = (0..(l_count - 1) * hi_count)
        .into_par_iter()
        .map(|idx| {
            let u = idx / hi_count + 1;
            let v_hi = idx % hi_count;
            let mut base = vec![0u64; words];
            for (i, row) in l.iter().enumerate() {
                if u >> i & 1 == 1 {
                    base.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
                }
            }
            for i in 0..outer_s {
                if v_hi >> i & 1 == 1 {
                    base.iter_mut()
                        .zip(&s[inner_bits + i])
                        .for_each(|(a, b)| *a ^= b);
                }
            }
            let mut best_w = usize::MAX;
            let mut best_v = base.clone();
            let mut cur = base;
            let consider = |cur: &[u64], best_w: &mut usize, best_v: &mut Vec<u64>| {
                let w: usize = cur.iter().map(|x| x.count_ones() as usize).sum();
                if w < *best_w || (w == *best_w && support_cmp_words(cur, best_v) == Ordering::Less)
                {
                    *best_w = w;
                    best_v.copy_from_slice(cur);
                }
            };
            consider(&cur, &mut best_w, &mut best_v);
            for g in 1u64..(1u64 << inner_bits) {
                let row = &s[g.trailing_zeros() as usize];
                cur.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
                consider(&cur, &mut best_w, &mut best_v);
            }
            (best_w, best_v)
        })
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            Ordering::Less => a,
            Ordering::Greater => b,
            Ordering::Equal => {
                if support_cmp_words(&a.1, &b.1) != Ordering::Greater {
                    a
                } else {
                    b
                }
            }
        })
        .expect("at least one logical coset");
    let witness = (0..n)
        .map(|i| (best.1[i / 64] >> (i % 64) & 1) as u32)
        .collect();
    DistanceWitness { d: best.0, witness }
}

fn generic_coset_search(s: &MatrixGF, l: &MatrixGF) -> DistanceWitness {
    let f = s.field();
    let q = f.size();
    let basis = l.vstack(s).expect("same width");
    let rows = basis.to_rows();
    let dim = rows.len();
    let n = basis.cols();
    let mut coeffs = vec![0u32; dim];
    let mut best: Option<(usize, Vec<u32>)> = None;
    loop {
        let mut j = 0;
        while j < dim {
            coeffs[j] = if coeffs[j] + 1 == q { 0 } else { coeffs[j] + 1 };
            if coeffs[j] != 0 {
                break;
            }
            j += 1;
        }
        if j == dim {
            break;
        }
        if coeffs[..l.rows()].iter().all(|&c| c == 0) {
            continue;
        }
        let mut v = vec![0u32; n];
        for (c, row) in coeffs.iter().zip(&rows) {
            if *c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(*c, r));
                }
            }
        }
        let w = v.iter().filter(|&&x| x != 0).count();
        let better = match &best {
            None => true,
            Some((bw, bv)) => w < *bw || (w == *bw && support_cmp(&v, bv) == Ordering::Less),
        };
        if better {
            best = Some((w, v));
        }
    }
    let (d, witness) = best.expect("nonempty logical space");
    DistanceWitness { d, witness }
}

/// Certifies both distances and records them on the code.
pub fn certify_distances(q: &mut CssCode, cap: usize) -> Result<()> {
    for side in [Side::X, Side::Z] {
        if let Some(w) = distance_css(q, side, cap)? {
            let d = Some(CertifiedDistance {
                value: w.d,
                method: "coset-enumeration".into(),
            });
            match side {
                Side::X => q.dx = d,
                Side::Z => q.dz = d,
            }
        }
    }
    Ok(())
}

/// Repetition-inner PC-CSS family with structured check matrices.
///
/// The inner code is `blocks` copies of the length-n0 repetition code, the
/// outer code has length `blocks`. X errors are seen through their block
/// parities by the outer code; Z errors are seen block by block.
pub struct FastFamily {
    n0: usize,
    blocks: usize,
    outer: LinearCode,
    tanner: TannerGraph,
    outer_rows: OnceLock<RowSpace>,
    dense: OnceLock<CssCode>,
}

impl std::fmt::Debug for FastFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FastFamily [[{}, {}]] n0 = {}",
            self.n(),
            self.k(),
            self.n0
        )
    }
}

impl Clone for FastFamily {
    fn clone(&self) -> Self {
        FastFamily {
            n0: self.n0,
            blocks: self.blocks,
            outer: self.outer.clone(),
            tanner: self.tanner.clone(),
            outer_rows: OnceLock::new(),
            dense: OnceLock::new(),
        }
    }
}

/// Fast-family code of length n with block length n0 and a random (c, d)
/// expander as outer code over n/n0 bits.
pub fn fast_family(n: usize, n0: usize, c: usize, d: usize, seed: u64) -> Result<FastFamily> {
    if n0 < 2 || !n.is_multiple_of(n0) {
        return Err(CssError::Invalid(format!(
            "block length {n0} must be at least 2 and divide N = {n}"
        )));
    }
    let outer = make_expander(n / n0, c, d, seed)?;
    FastFamily::with_outer(n0, outer)
}

impl FastFamily {
    /// Family member with an arbitrary binary outer code.
    pub fn with_outer(n0: usize, outer: LinearCode) -> Result<Self> {
        if n0 < 2 {
            return Err(CssError::Invalid("block length must be at least 2".into()));
        }
        let tanner = outer
            .tanner()
            .ok_or_else(|| CssError::Invalid("outer code must be binary".into()))?;
        Ok(FastFamily {
            n0,
            blocks: outer.n(),
            outer,
            tanner,
            outer_rows: OnceLock::new(),
            dense: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n0 * self.blocks
    }
    pub fn n0(&self) -> usize {
        self.n0
    }
    pub fn blocks(&self) -> usize {
        self.blocks
    }
    pub fn k(&self) -> usize {
        self.outer.k()
    }
    pub fn outer(&self) -> &LinearCode {
        &self.outer
    }
    pub fn outer_tanner(&self) -> &TannerGraph {
        &self.tanner
    }

    /// Parity of each block of an X-error pattern (G_1 applied to it).
    pub fn block_parities(&self, e: &BitVec) -> BitVec {
        let mut p = BitVec::zeros(self.blocks);
        for i in e.support() {
            p.flip(i / self.n0);
        }
        p
    }

    /// H_X·e: the outer syndrome of the block parities.
    pub fn syndrome_x(&self, e_x: &BitVec) -> BitVec {
        self.tanner.syndrome(&self.block_parities(e_x))
    }

    /// H_Z·e: per block, bit i is e_i + e_last.
    pub fn syndrome_z(&self, e_z: &BitVec) -> BitVec {
        let m = self.n0 - 1;
        let mut s = BitVec::zeros(self.blocks * m);
        for i in e_z.support() {
            let (b, j) = (i / self.n0, i % self.n0);
            if j == m {
                for t in 0..m {
                    s.flip(b * m + t);
                }
            } else {
                s.flip(b * m + j);
            }
        }
        s
    }

    fn outer_rowspace(&self) -> &RowSpace {
        self.outer_rows
            .get_or_init(|| RowSpace::new(self.outer.parity_check()))
    }

    /// X residual is an undetected logical error: H_X·r = 0 but r is not in rowspace(H_Z).
    /// rowspace(H_Z) is exactly the vectors with even parity in every block.
    pub fn logical_x_failed(&self, r: &BitVec) -> bool {
        let p = self.block_parities(r);
        !p.is_zero() && self.tanner.syndrome(&p).is_zero()
    }

    /// Z residual is an undetected logical error: H_Z·r = 0 (every block constant)
    /// but r is not in rowspace(H_X), i.e. the block indicator is not in rowspace(H_2).
    pub fn logical_z_failed(&self, r: &BitVec) -> bool {
        let mut counts = std::collections::BTreeMap::new();
        for i in r.support() {
            *counts.entry(i / self.n0).or_insert(0usize) += 1;
        }
        if counts.is_empty() || counts.values().any(|&c| c != self.n0) {
            return false;
        }
        let mut u = BitVec::zeros(self.blocks);
        for &b in counts.keys() {
            u.set(b, true);
        }
        !self.outer_rowspace().contains_bits(&u)
    }

    /// Dense check matrices; built once on first use.
    pub fn css(&self) -> &CssCode {
        self.dense.get_or_init(|| {
            let n = self.n();
            let h2 = self.outer.parity_check();
            let hx_rows: Vec<BitVec> = (0..h2.rows())
                .map(|r| {
                    let mut row = BitVec::zeros(n);
                    for b in h2.bit_rows().expect("binary outer")[r].support() {
                        for i in 0..self.n0 {
                            row.set(b * self.n0 + i, true);
                        }
                    }
                    row
                })
                .collect();
            let m = self.n0 - 1;
            let hz_rows: Vec<BitVec> = (0..self.blocks * m)
                .map(|r| {
                    let (b, i) = (r / m, r % m);
                    BitVec::from_support(n, &[b * self.n0 + i, b * self.n0 + m])
                })
                .collect();
            let mut q = CssCode::new(
                MatrixGF::from_bitvecs(hx_rows, n),
                MatrixGF::from_bitvecs(hz_rows, n),
            )
            .expect("fast-family checks commute");
            q.n0 = Some(self.n0);
            q.provenance = self
                .outer
                .provenance
                .iter()
                .map(|p| format!("outer {p}"))
                .collect();
            q.provenance
                .push(format!("fast n0={} blocks={}", self.n0, self.blocks));
            q
        })
    }

    /// Recovers the structured form from dense matrices carrying `n0`; the
    /// outer check matrix is read off the first column of each block.
    pub fn from_css(q: &CssCode) -> Result<FastFamily> {
        let n0 =
            q.n0.ok_or_else(|| CssError::Invalid("code has no block length".into()))?;
        if !q.field().is_binary() || n0 < 2 || !q.n().is_multiple_of(n0) {
            return Err(CssError::Invalid(
                "not a binary code with whole blocks".into(),
            ));
        }
        let cols: Vec<usize> = (0..q.n() / n0).map(|b| b * n0).collect();
        let h2 = q.hx().select_cols(&cols);
        let outer = LinearCode::from_parity_check(h2)?;
        let ff = FastFamily::with_outer(n0, outer)?;
        if ff.css().hx() != q.hx() || ff.css().hz() != q.hz() {
            return Err(CssError::Invalid(
                "check matrices do not have the fast-family structure".into(),
            ));
        }
        Ok(ff)
    }
}

/// The [[9,1,3]] member with repetition codes on both levels.
pub fn shor_instance() -> FastFamily {
    FastFamily::with_outer(3, make_repetition(3).expect("rep(3)")).expect("Shor instance")
}

/// Stabilizer code over GF(q) from symplectic generator rows (x | z).
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    n: usize,
    gens: MatrixGF,
    k: usize,
    pub d: Option<CertifiedDistance>,
    pub provenance: Vec<String>,
}

/// Trace-symplectic product of two rows (x | z).
fn symplectic(f: &FieldSpec, a: &[u32], b: &[u32], n: usize) -> u32 {
    let mut acc = 0;
    for i in 0..n {
        acc = f.add(acc, f.mul(a[i], b[n + i]));
        acc = f.sub(acc, f.mul(a[n + i], b[i]));
    }
    if f.degree() == 1 {
        acc
    } else {
        let prime = FieldSpec::gf(f.p() as u64).expect("prime field");
        f.trace(acc, &prime).expect("prime subfield")
    }
}

impl StabilizerCode {
    pub fn new(gens: MatrixGF) -> Result<Self> {
        if !gens.cols().is_multiple_of(2) {
            return Err(CssError::Dimension(
                "generator rows must have even length (x | z)".into(),
            ));
        }
        let n = gens.cols() / 2;
        let rows = gens.to_rows();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if symplectic(gens.field(), &rows[i], &rows[j], n) != 0 {
                    return Err(CssError::NotCommuting { x_row: i, z_row: j });
                }
            }
        }
        let k = n - gens.rank();
        Ok(StabilizerCode {
            n,
            gens,
            k,
            d: None,
            provenance: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn generators(&self) -> &MatrixGF {
        &self.gens
    }

    /// Stabilizer form of a CSS code: X-type rows from `hz`, Z-type rows from `hx`.
    pub fn from_css(q: &CssCode) -> Result<Self> {
        let n = q.n();
        let f = q.field();
        let zeros_z = MatrixGF::zeros(f, q.hz().rows(), n);
        let zeros_x = MatrixGF::zeros(f, q.hx().rows(), n);
        let top = q.hz().hstack(&zeros_z)?;
        let bottom = zeros_x.hstack(q.hx())?;
        Self::new(top.vstack(&bottom)?)
    }
}

/// Enlarged code from a dual-containing C1 and an outer code C2 over the rows of H_1.
///
/// With H_3 = H_2·H_1 and C3 = null(H_3) ⊇ C1, the generators are (h | 0) and
/// (0 | h) for the rows h of H_3, and (g_i | Σ_j A_ij g_j) for a basis g of
/// rowspace(H_1) modulo rowspace(H_3), where A is the companion matrix of an
/// irreducible polynomial of the quotient dimension (so A has no fixed
/// vector). The result has dimension k1 + k3 − n. Binary codes only.
pub fn make_enlarged(c1: &LinearCode, c2: &LinearCode) -> Result<StabilizerCode> {
    if !c1.field().is_binary() || !c2.field().is_binary() {
        return Err(CssError::Invalid(
            "enlarged construction implemented for binary codes".into(),
        ));
    }
    let h1 = c1.parity_check();
    if c2.n() != h1.rows() {
        return Err(CssError::Dimension(format!(
            "outer length {} must equal {} inner checks",
            c2.n(),
            h1.rows()
        )));
    }
    for r in 0..h1.rows() {
        let row = h1.row(r);
        if !c1.contains(&row) {
            return Err(CssError::NotContained {
                row: r,
                witness: row,
            });
        }
    }
    let h3 = c2.parity_check().mul(h1)?;
    let (s, g) = split_basis(&h3, h1);
    let quotient = g.rows();
    if quotient < 2 {
        return Err(CssError::Invalid(format!(
            "quotient dimension {quotient}: the enlarged code needs dim C3 ≥ dim C1 + 2"
        )));
    }
    let poly = default_modulus(2, quotient as u32).map_err(|e| CssError::Invalid(e.to_string()))?;
    let n = c1.n();
    let grows = g.bit_rows().expect("binary");
    let mut gens: Vec<BitVec> = Vec::new();
    for row in s.bit_rows().expect("binary") {
        let mut v = BitVec::zeros(2 * n);
        for i in row.support() {
            v.set(i, true);
        }
        gens.push(v);
    }
    for row in s.bit_rows().expect("binary") {
        let mut v = BitVec::zeros(2 * n);
        for i in row.support() {
            v.set(n + i, true);
        }
        gens.push(v);
    }
    for i in 0..quotient {
        // companion map: g_i ↦ g_{i+1}, g_last ↦ Σ c_j g_j
        let mut image = BitVec::zeros(n);
        for j in 0..quotient {
            let a_ij = if i + 1 == j {
                1
            } else if i == quotient - 1 {
                poly[j]
            } else {
                0
            };
            if a_ij == 1 {
                image.xor_assign(&grows[j]);
            }
        }
        let mut v = BitVec::zeros(2 * n);
        for p in grows[i].support() {
            v.set(p, true);
        }
        for p in image.support() {
            v.set(n + p, true);
        }
        gens.push(v);
    }
    let gm = MatrixGF::from_bitvecs(gens, 2 * n);
    let mut code = StabilizerCode::new(gm)?;
    code.provenance
        .push(format!("enlarged n={n} k1={} quotient={quotient}", c1.k()));
    Ok(code)
}

/// Minimum weight of a Pauli operator that commutes with every generator but
/// is not in the stabilizer group, by enumeration in order of weight
/// (binary, n ≤ 12). `None` when k = 0.
pub fn distance_stabilizer(s: &StabilizerCode, max_n: usize) -> Result<Option<DistanceWitness>> {
    let n = s.n;
    if n > max_n.min(STABILIZER_DISTANCE_MAX_N) {
        return Err(CssError::CapExceeded {
            rank: n,
            cap: max_n.min(STABILIZER_DISTANCE_MAX_N),
        });
    }
    if !s.gens.field().is_binary() {
        return Err(CssError::Invalid(
            "stabilizer distance implemented for binary codes".into(),
        ));
    }
    if s.k == 0 {
        return Ok(None);
    }
    let rows = s.gens.bit_rows().expect("binary");
    let gens: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| {
            let w = r.words()[0];
            (w & ((1 << n) - 1), w >> n)
        })
        .collect();
    // reduced basis of the stabilizer group as 2n-bit words
    let mut basis: Vec<u64> = Vec::new();
    for &(x, z) in &gens {
        let mut v = x | z << n;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let in_group = |v: u64| {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        v == 0
    };
    for w in 1..=n {
        let mut found = None;
        for_each_subset(n, w, &mut |support: &[usize]| {
            let combos = 3usize.pow(w as u32);
            for c in 0..combos {
                let (mut x, mut z) = (0u64, 0u64);
                let mut t = c;
                for &p in support {
                    match t % 3 {
                        0 => x |= 1 << p,
                        1 => {
                            x |= 1 << p;
                            z |= 1 << p;
                        }
                        _ => z |= 1 << p,
                    }
                    t /= 3;
                }
                let commutes = gens
                    .iter()
                    .all(|&(gx, gz)| ((x & gz) ^ (z & gx)).count_ones() % 2 == 0);
                if commutes && !in_group(x | z << n) {
                    let mut wit = vec![0u32; 2 * n];
                    for i in 0..n {
                        wit[i] = (x >> i & 1) as u32;
                        wit[n + i] = (z >> i & 1) as u32;
                    }
                    found = Some(wit);
                    return true;
                }
            }
            false
        });
        if let Some(witness) = found {
            return Ok(Some(DistanceWitness { d: w, witness }));
        }
    }
    Ok(None)
}

/// Calls `f` on each w-subset of 0..n in lexicographic order until it returns true.
fn for_each_subset(n: usize, w: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = w;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - w + i {
                idx[i] += 1;
                for j in i + 1..w {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Result of a counting inequality: whether it holds and ln(RHS) − ln(LHS).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountingOutcome {
    pub holds: bool,
    pub margin: f64,
}

fn big_ln(v: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shifted: BigUint = v >> (bits - 64);
    shifted.to_f64().expect("64-bit value").ln() + (bits - 64) as f64 * std::f64::consts::LN_2
}

/// Exact evaluation of
/// (q^m−1)^(k−(k−f)/m) · Σ_{j=1}^{λ−1} (q−1)^j C(n, j) < (q^m−1)^k.
///
/// Both sides are raised to the m-th power, which turns the comparison into
/// Σ^m < (q^m−1)^(k−f) with integer exponents only.
fn counting_inequality(
    n: usize,
    k: usize,
    f: usize,
    m: usize,
    lambda: usize,
    q: u32,
) -> Result<CountingOutcome> {
    if m < 2 || f == 0 || f > k || k > n || lambda == 0 || q < 2 {
        return Err(CssError::Invalid(format!(
            "need m ≥ 2, 1 ≤ f ≤ k ≤ n, λ ≥ 1 (got n={n}, k={k}, f={f}, m={m}, λ={lambda})"
        )));
    }
    if !(n - f).is_multiple_of(m) {
        return Err(CssError::Invalid(format!(
            "m = {m} must divide n − f = {}",
            n - f
        )));
    }
    let base = BigUint::from(q).pow(m as u32) - BigUint::one();
    let mut sum = BigUint::zero();
    let mut qpow = BigUint::one();
    for j in 1..lambda {
        qpow *= q - 1;
        sum += &qpow * binomial(n, j);
    }
    let holds = sum.pow(m as u32) < base.pow((k - f) as u32);
    let ln_sum = if sum.is_zero() { 0.0 } else { big_ln(&sum) };
    let margin = (k - f) as f64 / m as f64 * big_ln(&base) - ln_sum;
    Ok(CountingOutcome { holds, margin })
}

/// Counting inequality for PC-CSS codes with alternant outer codes.
pub fn counting_check(
    n1: usize,
    k1: usize,
    f_x: usize,
    m: usize,
    lambda_x: usize,
    q: u32,
) -> Result<CountingOutcome> {
    counting_inequality(n1, k1, f_x, m, lambda_x, q)
}

/// Counting inequality for the enlarged construction, with r1 in place of k1.
pub fn counting_check_enlarged(
    n1: usize,
    r1: usize,
    f_a: usize,
    m: usize,
    lambda_a: usize,
    q: u32,
) -> Result<CountingOutcome> {
    counting_inequality(n1, r1, f_a, m, lambda_a, q)
}
