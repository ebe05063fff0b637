//! Syndrome decoders.
//!
//! * [`exhaustive_decode`]: minimum-weight coset leader by enumeration (small n).
//! * [`bdd_alternant`]: bounded-distance decoding of alternant codes through
//!   the key equation, solved with the extended Euclidean algorithm.
//! * [`flip_decode`]: bit flipping on a Tanner graph, sequential or parallel.
//! * [`osmlg_block_decode`]: one-step majority logic for one repetition block.
//! * [`pccss_decode_x`] / [`pccss_decode_z`]: the two halves of fast-family decoding.
//!
//! Every decoder reports [`DecodeStatus::Corrected`] only when its estimate
//! reproduces the input syndrome exactly.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{LinearCode, TannerGraph};
use crate::css::FastFamily;
use crate::galois::FieldSpec;
use crate::matgf::BitVec;

/// Largest code length accepted by [`exhaustive_decode`].
pub const EXHAUSTIVE_MAX_N: usize = 24;

/// Default cap on flip rounds; the sequential decoder allows `max_rounds · n` flips.
pub const DEFAULT_MAX_ROUNDS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("exhaustive decoding limited to n ≤ {cap}, got n = {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("code carries no alternant (GRS) description")]
    NotAlternant,
    #[error("syndrome has length {found}, expected {expected}")]
    SyndromeLength { expected: usize, found: usize },
    #[error("syndrome entry {value} is not an element of GF({q})")]
    SyndromeEntry { value: u32, q: u32 },
    #[error("decoding radius {t} exceeds ⌊r/2⌋ = {max}")]
    Radius { t: usize, max: usize },
    #[error("decoder needs a binary code")]
    NotBinary,
}

pub type Result<T> = std::result::Result<T, DecodeError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Corrected,
    DetectedUncorrectable,
    Failure,
}

impl DecodeStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecodeStatus::Corrected => "corrected",
            DecodeStatus::DetectedUncorrectable => "detected",
            DecodeStatus::Failure => "failure",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorkCounters {
    pub flips: u64,
    pub rounds: u64,
    pub block_decodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome<E = Vec<u32>> {
    pub status: DecodeStatus,
    pub estimate: E,
    pub work: WorkCounters,
    /// Syndrome left unexplained when decoding stopped short.
    pub residual: Option<E>,
}

impl<E> DecodeOutcome<E> {
    pub fn is_corrected(&self) -> bool {
        self.status == DecodeStatus::Corrected
    }
}

fn check_syndrome(code: &LinearCode, s: &[u32]) -> Result<()> {
    let rows = code.parity_check().rows();
    if s.len() != rows {
        return Err(DecodeError::SyndromeLength {
            expected: rows,
            found: s.len(),
        });
    }
    if let Some(&v) = s.iter().find(|&&v| v >= code.q()) {
        return Err(DecodeError::SyndromeEntry {
            value: v,
            q: code.q(),
        });
    }
    Ok(())
}

/// A minimum-weight error with syndrome `s`. Among equal weights the support
/// that is lexicographically smallest wins, then the smallest values.
pub fn exhaustive_decode(code: &LinearCode, s: &[u32]) -> Result<DecodeOutcome> {
    let n = code.n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(DecodeError::TooLarge {
            n,
            cap: EXHAUSTIVE_MAX_N,
        });
    }
    check_syndrome(code, s)?;
    let h = code.parity_check();
    let f = code.field().clone();
    let cols: Vec<Vec<u32>> = (0..n).map(|c| h.column(c)).collect();
    let mut found = None;
    let mut work = WorkCounters::default();
    for w in 0..=n {
        let mut chosen = Vec::with_capacity(w);
        let partial = vec![0u32; s.len()];
        if search(&f, &cols, s, w, 0, &partial, &mut chosen, &mut work) {
            found = Some(chosen);
            break;
        }
    }
    let chosen = found.expect("some error always matches a syndrome of a full-rank check");
    let mut e = vec![0u32; n];
    for (pos, v) in chosen {
        e[pos] = v;
    }
    Ok(DecodeOutcome {
        status: DecodeStatus::Corrected,
        estimate: e,
        work,
        residual: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    f: &FieldSpec,
    cols: &[Vec<u32>],
    target: &[u32],
    remaining: usize,
    start: usize,
    partial: &[u32],
    chosen: &mut Vec<(usize, u32)>,
    work: &mut WorkCounters,
) -> bool {
    if remaining == 0 {
        work.block_decodes += 1;
        return partial == target;
    }
    let n = cols.len();
    for pos in start..=(n - remaining) {
        for v in 1..f.size() {
            let next: Vec<u32> = partial
                .iter()
                .zip(&cols[pos])
                .map(|(&a, &c)| f.add(a, f.mul(v, c)))
                .collect();
            chosen.push((pos, v));
            if search(f, cols, target, remaining - 1, pos + 1, &next, chosen, work) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

// Polynomials over a field, lowest degree first, no trailing zeros.

fn trim(mut p: Vec<u32>) -> Vec<u32> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

fn poly_eval(f: &FieldSpec, p: &[u32], x: u32) -> u32 {
    p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn poly_mul(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn poly_sub(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            f.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(out)
}

fn poly_divrem(f: &FieldSpec, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate().take(db + 1) {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_derivative(f: &FieldSpec, p: &[u32]) -> Vec<u32> {
    let pchar = f.p() as usize;
    let out = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (0..(i % pchar)).fold(0, |acc, _| f.add(acc, c)))
        .collect();
    trim(out)
}

/// Solves σ·S ≡ ω (mod x^(2t)) with deg ω < deg σ ≤ t, normalised to σ(0) = 1.
fn key_equation(f: &FieldSpec, synd: &[u32], t: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut x2t = vec![0u32; 2 * t + 1];
    x2t[2 * t] = 1;
    let mut r_prev = x2t;
    let mut r_cur = trim(synd[..2 * t].to_vec());
    let mut t_prev: Vec<u32> = Vec::new();
    let mut t_cur = vec![1u32];
    while let Some(d) = degree(&r_cur) {
        if d < t {
            break;
        }
        let (q, rem) = poly_divrem(f, &r_prev, &r_cur);
        let t_new = poly_sub(f, &t_prev, &poly_mul(f, &q, &t_cur));
        r_prev = std::mem::replace(&mut r_cur, rem);
        t_prev = std::mem::replace(&mut t_cur, t_new);
    }
    let c0 = *t_cur.first()?;
    if c0 == 0 {
        return None;
    }
    let inv = f.inv(c0).ok()?;
    let sigma: Vec<u32> = t_cur.iter().map(|&c| f.mul(c, inv)).collect();
    let omega: Vec<u32> = r_cur.iter().map(|&c| f.mul(c, inv)).collect();
    if degree(&sigma).unwrap_or(0) > t {
        return None;
    }
    Some((sigma, omega))
}

/// Errors (in the extension field) at nonzero evaluation points explaining the
/// syndromes S_j = Σ e_i y_i α_i^j, j < 2t.
fn locate_and_evaluate(
    f: &FieldSpec,
    a: &[u32],
    y: &[u32],
    synd: &[u32],
    t: usize,
) -> Option<Vec<u32>> {
    let n = a.len();
    let mut e = vec![0u32; n];
    if t == 0 || synd[..2 * t].iter().all(|&v| v == 0) {
        return Some(e);
    }
    let (sigma, omega) = key_equation(f, synd, t)?;
    let nu = degree(&sigma).unwrap_or(0);
    let dsigma = poly_derivative(f, &sigma);
    let mut roots = 0;
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        let xinv = f.inv(a[i]).expect("nonzero point");
        if poly_eval(f, &sigma, xinv) != 0 {
            continue;
        }
        roots += 1;
        let den = f.mul(y[i], poly_eval(f, &dsigma, xinv));
        if den == 0 {
            return None;
        }
        let num = f.neg(f.mul(a[i], poly_eval(f, &omega, xinv)));
        e[i] = f.div(num, den).ok()?;
    }
    (roots == nu).then_some(e)
}

/// Bounded-distance decoding of an alternant code up to `t ≤ ⌊r/2⌋` errors.
///
/// `s` is the syndrome against the code's expanded parity-check rows; it is
/// folded back into the r GRS syndromes over GF(q^m) before decoding. An error
/// on the evaluation point 0 (if present) is recovered from S_0 after the
/// remaining syndromes are decoded. With t = 0 the decoder still locates a
/// single error when exactly one position explains the syndrome.
pub fn bdd_alternant(code: &LinearCode, s: &[u32], t: usize) -> Result<DecodeOutcome> {
    let alt = code.alternant.as_ref().ok_or(DecodeError::NotAlternant)?;
    check_syndrome(code, s)?;
    if t > alt.r / 2 {
        return Err(DecodeError::Radius { t, max: alt.r / 2 });
    }
    let ext = &alt.ext;
    let base = code.field();
    let sub = ext.subfield(base).expect("alternant base is a subfield");
    let m = ext.m() as usize;
    let theta = if ext.degree() == 1 { 1 } else { ext.p() };
    let synd: Vec<u32> = (0..alt.r)
        .map(|j| {
            let mut acc = 0;
            let mut tp = 1;
            for l in 0..m {
                acc = ext.add(acc, ext.mul(sub.embed(s[j * m + l]), tp));
                tp = ext.mul(tp, theta);
            }
            acc
        })
        .collect();
    let n = code.n();
    let mut work = WorkCounters {
        block_decodes: 1,
        ..Default::default()
    };
    if synd.iter().all(|&v| v == 0) {
        return Ok(DecodeOutcome {
            status: DecodeStatus::Corrected,
            estimate: vec![0; n],
            work,
            residual: None,
        });
    }
    let accept = |ext_err: &[u32]| -> Option<Vec<u32>> {
        let e: Option<Vec<u32>> = ext_err.iter().map(|&v| sub.project(v)).collect();
        let e = e?;
        (code.syndrome(&e) == s).then_some(e)
    };
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    if let Some(e) = locate_and_evaluate(ext, &alt.a, &alt.y, &synd, t) {
        candidates.push(e);
    }
    if let Some(z) = alt.a.iter().position(|&x| x == 0) {
        if t >= 1 && alt.r >= 2 {
            // shifted syndromes ignore position z; multipliers become y_i·α_i
            let y2: Vec<u32> = alt
                .y
                .iter()
                .zip(&alt.a)
                .map(|(&y, &a)| ext.mul(y, a))
                .collect();
            let t2 = (t - 1).min((alt.r - 1) / 2);
            if let Some(mut e) = locate_and_evaluate(ext, &alt.a, &y2, &synd[1..], t2) {
                let known = e
                    .iter()
                    .zip(&alt.y)
                    .fold(0, |acc, (&ei, &yi)| ext.add(acc, ext.mul(ei, yi)));
                e[z] = ext
                    .div(ext.sub(synd[0], known), alt.y[z])
                    .expect("y nonzero");
                candidates.push(e);
            }
        }
    }
    for i in 0..n {
        // single error: S_j = v·y_i·α_i^j for every j
        let v = ext.div(synd[0], alt.y[i]).expect("y nonzero");
        if v == 0 {
            continue;
        }
        let fits = (0..alt.r)
            .all(|j| synd[j] == ext.mul(ext.mul(v, alt.y[i]), ext.pow(alt.a[i], j as u64)));
        if fits {
            let mut e = vec![0u32; n];
            e[i] = v;
            candidates.push(e);
        }
    }
    for cand in &candidates {
        if let Some(e) = accept(cand) {
            work.flips = e.iter().filter(|&&v| v != 0).count() as u64;
            return Ok(DecodeOutcome {
                status: DecodeStatus::Corrected,
                estimate: e,
                work,
                residual: None,
            });
        }
    }
    Ok(DecodeOutcome {
        status: DecodeStatus::DetectedUncorrectable,
        estimate: vec![0; n],
        work,
        residual: Some(s.to_vec()),
    })
}

/// Alternant syndrome of a received word; the input expected by [`bdd_alternant`].
pub fn alternant_syndrome(code: &LinearCode, word: &[u32]) -> Vec<u32> {
    code.syndrome(word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipMode {
    /// One bit at a time: the largest surplus of unsatisfied over satisfied
    /// checks, lowest index among ties.
    Sequential,
    /// Every bit with a strict majority of unsatisfied checks flips at once.
    Parallel,
}

/// Bit-flip decoding on a Tanner graph for syndrome `s`.
pub fn flip_decode(
    graph: &TannerGraph,
    s: &BitVec,
    mode: FlipMode,
    max_rounds: usize,
) -> DecodeOutcome<BitVec> {
    assert_eq!(s.len(), graph.checks(), "syndrome length");
    match mode {
        FlipMode::Sequential => flip_sequential(graph, s, max_rounds),
        FlipMode::Parallel => flip_parallel(graph, s, max_rounds),
    }
}

fn finish(unsat: BitVec, e: BitVec, work: WorkCounters) -> DecodeOutcome<BitVec> {
    if unsat.is_zero() {
        DecodeOutcome {
            status: DecodeStatus::Corrected,
            estimate: e,
            work,
            residual: None,
        }
    } else {
        DecodeOutcome {
            status: DecodeStatus::DetectedUncorrectable,
            estimate: e,
            work,
            residual: Some(unsat),
        }
    }
}

fn flip_sequential(graph: &TannerGraph, s: &BitVec, max_rounds: usize) -> DecodeOutcome<BitVec> {
    let n = graph.bits();
    let mut unsat = s.clone();
    let mut e = BitVec::zeros(n);
    let mut work = WorkCounters::default();
    if unsat.is_zero() {
        return finish(unsat, e, work);
    }
    // gain = unsatisfied − satisfied incident checks
    let mut gain: Vec<i64> = graph
        .bit_checks
        .iter()
        .map(|checks| {
            let u = checks.iter().filter(|&&j| unsat.get(j)).count() as i64;
            2 * u - checks.len() as i64
        })
        .collect();
    let mut queue: BTreeSet<(Reverse<i64>, usize)> = (0..n)
        .filter(|&b| gain[b] > 0)
        .map(|b| (Reverse(gain[b]), b))
        .collect();
    let cap = (max_rounds as u64).saturating_mul(n as u64);
    while let Some(&(_, b)) = queue.iter().next() {
        if work.flips >= cap {
            break;
        }
        e.flip(b);
        work.flips += 1;
        for &j in &graph.bit_checks[b] {
            unsat.flip(j);
            let delta = if unsat.get(j) { 2 } else { -2 };
            for &b2 in &graph.check_bits[j] {
                if gain[b2] > 0 {
                    queue.remove(&(Reverse(gain[b2]), b2));
                }
                gain[b2] += delta;
                if gain[b2] > 0 {
                    queue.insert((Reverse(gain[b2]), b2));
                }
            }
        }
    }
    work.rounds = work.flips;
    finish(unsat, e, work)
}

fn flip_parallel(graph: &TannerGraph, s: &BitVec, max_rounds: usize) -> DecodeOutcome<BitVec> {
    let n = graph.bits();
    let mut unsat = s.clone();
    let mut e = BitVec::zeros(n);
    let mut work = WorkCounters::default();
    while !unsat.is_zero() && (work.rounds as usize) < max_rounds {
        let flips: Vec<usize> = (0..n)
            .filter(|&b| {
                let checks = &graph.bit_checks[b];
                let u = checks.iter().filter(|&&j| unsat.get(j)).count();
                2 * u > checks.len()
            })
            .collect();
        if flips.is_empty() {
            break;
        }
        work.rounds += 1;
        for &b in &flips {
            e.flip(b);
            for &j in &graph.bit_checks[b] {
                unsat.flip(j);
            }
        }
        work.flips += flips.len() as u64;
    }
    finish(unsat, e, work)
}

/// Error estimate for one repetition block of length n0 from its n0 − 1
/// syndrome bits s_i = e_i + e_last: if wt(s) > ⌊(n0−1)/2⌋ the last bit is
/// taken to be in error and the others are s + 1, otherwise the last bit is
/// clean and the others equal s. Exact whenever the block weight is at most
/// ⌊(n0−1)/2⌋.
pub fn osmlg_block_decode(n0: usize, s_block: &BitVec) -> BitVec {
    assert_eq!(s_block.len(), n0 - 1, "block syndrome length");
    let mut out = BitVec::zeros(n0);
    osmlg_into(n0, |i| s_block.get(i), |i| out.set(i, true));
    out
}

#[inline]
fn osmlg_into(n0: usize, synd: impl Fn(usize) -> bool, mut set: impl FnMut(usize)) {
    let w = (0..n0 - 1).filter(|&i| synd(i)).count();
    let last = w > (n0 - 1) / 2;
    for i in 0..n0 - 1 {
        if synd(i) != last {
            set(i);
        }
    }
    if last {
        set(n0 - 1);
    }
}

/// X-side decoding of a fast-family code: the syndrome is the outer code's
/// syndrome of the block parities, so flip-decode it on the outer Tanner graph
/// and place each recovered parity bit on the first qubit of its block.
pub fn pccss_decode_x(
    ff: &FastFamily,
    s_x: &BitVec,
    mode: FlipMode,
    max_rounds: usize,
) -> DecodeOutcome<BitVec> {
    let outer = flip_decode(ff.outer_tanner(), s_x, mode, max_rounds);
    let mut est = BitVec::zeros(ff.n());
    for b in outer.estimate.support() {
        est.set(b * ff.n0(), true);
    }
    DecodeOutcome {
        status: outer.status,
        estimate: est,
        work: outer.work,
        residual: outer.residual,
    }
}

/// Z-side decoding of a fast-family code: majority logic on every block.
/// With `partitions > 1` the blocks are split into that many contiguous ranges
/// decoded concurrently; the output is identical to the serial run.
pub fn pccss_decode_z(ff: &FastFamily, s_z: &BitVec, partitions: usize) -> DecodeOutcome<BitVec> {
    let n0 = ff.n0();
    let blocks = ff.blocks();
    assert_eq!(s_z.len(), blocks * (n0 - 1), "Z syndrome length");
    let mut est = BitVec::zeros(ff.n());
    if partitions <= 1 {
        for b in 0..blocks {
            let base_s = b * (n0 - 1);
            let base_e = b * n0;
            osmlg_into(n0, |i| s_z.get(base_s + i), |i| est.set(base_e + i, true));
        }
    } else {
        let per = blocks.div_ceil(partitions);
        let pieces: Vec<(usize, BitVec)> = (0..partitions)
            .into_par_iter()
            .filter_map(|p| {
                let lo = p * per;
                let hi = ((p + 1) * per).min(blocks);
                if lo >= hi {
                    return None;
                }
                let mut local = BitVec::zeros((hi - lo) * n0);
                for b in lo..hi {
                    let base_s = b * (n0 - 1);
                    let base_e = (b - lo) * n0;
                    osmlg_into(n0, |i| s_z.get(base_s + i), |i| local.set(base_e + i, true));
                }
                Some((lo, local))
            })
            .collect();
        for (lo, local) in pieces {
            for i in local.support() {
                est.set(lo * n0 + i, true);
            }
        }
    }
    let work = WorkCounters {
        block_decodes: blocks as u64,
        ..Default::default()
    };
    DecodeOutcome {
        status: DecodeStatus::Corrected,
        estimate: est,
        work,
        residual: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_alternant, make_expander, make_repetition};
    use crate::matgf::MatrixGF;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hamming() -> LinearCode {
        let f = FieldSpec::new(2, 1, 3).unwrap();
        let g = f.primitive_element();
        let a: Vec<u32> = (0..7).map(|i| f.pow(g, i)).collect();
        make_alternant(&f, &a, &a, 1).unwrap()
    }

    fn bch15() -> LinearCode {
        let f = FieldSpec::new(2, 1, 4).unwrap();
        let g = f.primitive_element();
        let a: Vec<u32> = (0..15).map(|i| f.pow(g, i)).collect();
        make_alternant(&f, &a, &a, 4).unwrap()
    }

    fn unit(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn exhaustive_small_cases() {
        let rep3 = make_repetition(3).unwrap();
        let out = exhaustive_decode(&rep3, &[0, 0]).unwrap();
        assert_eq!(out.estimate, vec![0, 0, 0]);
        let s = rep3.syndrome(&[1, 0, 0]);
        assert_eq!(
            exhaustive_decode(&rep3, &s).unwrap().estimate,
            vec![1, 0, 0]
        );
        let h = hamming();
        for i in 0..7 {
            let s = h.syndrome(&unit(7, i));
            assert_eq!(exhaustive_decode(&h, &s).unwrap().estimate, unit(7, i));
        }
        assert!(matches!(
            exhaustive_decode(&h, &[0, 1]),
            Err(DecodeError::SyndromeLength { .. })
        ));
    }

    #[test]
    fn exhaustive_tie_break_is_lexicographic() {
        // single parity check on 4 bits: every weight-1 error has syndrome 1
        let f = FieldSpec::binary();
        let h = MatrixGF::from_rows(&f, &[vec![1, 1, 1, 1]]).unwrap();
        let code = LinearCode::from_parity_check(h).unwrap();
        assert_eq!(
            exhaustive_decode(&code, &[1]).unwrap().estimate,
            vec![1, 0, 0, 0]
        );
    }

    #[test]
    fn exhaustive_nonbinary() {
        let f = FieldSpec::gf(3).unwrap();
        let h = MatrixGF::from_rows(&f, &[vec![1, 1, 1, 0], vec![0, 1, 2, 1]]).unwrap();
        let code = LinearCode::from_parity_check(h).unwrap();
        let e = vec![0, 0, 2, 0];
        let out = exhaustive_decode(&code, &code.syndrome(&e)).unwrap();
        assert_eq!(code.syndrome(&out.estimate), code.syndrome(&e));
        assert_eq!(out.estimate.iter().filter(|&&v| v != 0).count(), 1);
    }

    #[test]
    fn bdd_hamming_single_errors() {
        let h = hamming();
        assert_eq!(
            bdd_alternant(&h, &[0, 0, 0], 0).unwrap().estimate,
            vec![0; 7]
        );
        for i in 0..7 {
            let s = h.syndrome(&unit(7, i));
            let out = bdd_alternant(&h, &s, 0).unwrap();
            assert!(out.is_corrected());
            assert_eq!(out.estimate, exhaustive_decode(&h, &s).unwrap().estimate);
        }
        assert!(matches!(
            bdd_alternant(&h, &[0, 0, 0], 1),
            Err(DecodeError::Radius { .. })
        ));
    }

    #[test]
    fn bdd_bch15_agrees_with_exhaustive() {
        let c = bch15();
        assert_eq!(c.k(), 7);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = rng.gen_range(0..=2);
            let mut e = vec![0u32; 15];
            while e.iter().sum::<u32>() < w {
                e[rng.gen_range(0..15)] = 1;
            }
            let s = c.syndrome(&e);
            let out = bdd_alternant(&c, &s, 2).unwrap();
            assert!(out.is_corrected());
            assert_eq!(out.estimate, e);
            assert_eq!(out.estimate, exhaustive_decode(&c, &s).unwrap().estimate);
        }
    }

    #[test]
    fn bdd_with_zero_evaluation_point() {
        // all 8 points of GF(8) including 0, y = 1, r = 4: binary Goppa-like code
        let f = FieldSpec::new(2, 1, 3).unwrap();
        let a: Vec<u32> = (0..8).collect();
        let y: Vec<u32> = vec![1, 2, 3, 4, 5, 6, 7, 1];
        let c = make_alternant(&f, &a, &y, 4).unwrap();
        for i in 0..8 {
            for j in i..8 {
                let mut e = unit(8, i);
                e[j] = 1;
                let s = c.syndrome(&e);
                let out = bdd_alternant(&c, &s, 2).unwrap();
                assert!(out.is_corrected(), "{i} {j}");
                assert_eq!(c.syndrome(&out.estimate), s);
                assert_eq!(out.estimate, e, "{i} {j}");
            }
        }
    }

    #[test]
    fn bdd_over_gf4() {
        let f = FieldSpec::new(2, 2, 2).unwrap();
        let a: Vec<u32> = (1..16).collect();
        let y = vec![1u32; 15];
        let c = make_alternant(&f, &a, &y, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let mut e = vec![0u32; 15];
            for _ in 0..2 {
                e[rng.gen_range(0..15)] = rng.gen_range(1..4);
            }
            let s = c.syndrome(&e);
            let out = bdd_alternant(&c, &s, 2).unwrap();
            assert!(out.is_corrected());
            assert_eq!(out.estimate, e);
        }
    }

    #[test]
    fn bdd_reports_beyond_radius() {
        let c = bch15();
        let mut seen_detected = false;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let mut e = vec![0u32; 15];
            while e.iter().sum::<u32>() < 4 {
                e[rng.gen_range(0..15)] = 1;
            }
            let s = c.syndrome(&e);
            let out = bdd_alternant(&c, &s, 2).unwrap();
            if out.is_corrected() {
                assert_eq!(c.syndrome(&out.estimate), s);
            } else {
                seen_detected = true;
            }
        }
        assert!(seen_detected);
    }

    #[test]
    fn flip_single_and_zero() {
        let c = make_expander(1000, 5, 10, 1).unwrap();
        let g = c.tanner().unwrap();
        let zero = BitVec::zeros(g.checks());
        let out = flip_decode(&g, &zero, FlipMode::Sequential, DEFAULT_MAX_ROUNDS);
        assert!(out.is_corrected());
        assert_eq!(out.work.flips, 0);
        for b in [0, 17, 999] {
            let e = BitVec::from_support(1000, &[b]);
            let s = g.syndrome(&e);
            for mode in [FlipMode::Sequential, FlipMode::Parallel] {
                let out = flip_decode(&g, &s, mode, DEFAULT_MAX_ROUNDS);
                assert!(out.is_corrected());
                assert_eq!(out.estimate, e);
            }
        }
    }

    #[test]
    fn flip_random_weight_five() {
        let c = make_expander(1000, 5, 10, 2).unwrap();
        let g = c.tanner().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut ok = 0;
        for _ in 0..1000 {
            let mut support = Vec::new();
            while support.len() < 5 {
                let b = rng.gen_range(0..1000);
                if !support.contains(&b) {
                    support.push(b);
                }
            }
            let e = BitVec::from_support(1000, &support);
            let s = g.syndrome(&e);
            let out = flip_decode(&g, &s, FlipMode::Sequential, DEFAULT_MAX_ROUNDS);
            if out.is_corrected() && out.estimate == e {
                ok += 1;
                assert!(out.work.flips <= 5 * 5 * 4);
            }
            let par = flip_decode(&g, &s, FlipMode::Parallel, DEFAULT_MAX_ROUNDS);
            if par.is_corrected() {
                assert_eq!(g.syndrome(&par.estimate), s);
            }
        }
        assert!(ok >= 990, "{ok}");
    }

    #[test]
    fn flip_nonconvergence_is_reported() {
        // a 3-cycle: each bit sees one unsatisfied and one satisfied check
        let f = FieldSpec::binary();
        let h = MatrixGF::from_rows(&f, &[vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let g = TannerGraph::from_parity_check(&h);
        let s = BitVec::from_u32s(&[1, 0, 0]);
        for mode in [FlipMode::Sequential, FlipMode::Parallel] {
            let out = flip_decode(&g, &s, mode, DEFAULT_MAX_ROUNDS);
            assert_eq!(out.status, DecodeStatus::DetectedUncorrectable);
            assert_eq!(out.residual, Some(s.clone()));
        }
    }

    #[test]
    fn osmlg_examples() {
        let s = BitVec::from_u32s(&[0, 1, 1, 1]);
        assert_eq!(osmlg_block_decode(5, &s).to_u32s(), vec![1, 0, 0, 0, 1]);
        assert!(osmlg_block_decode(5, &BitVec::zeros(4)).is_zero());
        let s = BitVec::from_u32s(&[0, 1]);
        assert_eq!(osmlg_block_decode(3, &s).to_u32s(), vec![0, 1, 0]);
    }

    fn block_syndrome(e: &BitVec) -> BitVec {
        let n0 = e.len();
        let last = e.get(n0 - 1);
        BitVec::from_bools(&(0..n0 - 1).map(|i| e.get(i) ^ last).collect::<Vec<_>>())
    }

    #[test]
    fn osmlg_exact_on_ball() {
        for n0 in [3usize, 4, 5, 7, 8, 9, 16] {
            let t = (n0 - 1) / 2;
            let mut checked = 0;
            for w in 0u64..(1 << n0) {
                if (w.count_ones() as usize) > t {
                    continue;
                }
                let e = BitVec::from_word(n0, w);
                assert_eq!(osmlg_block_decode(n0, &block_syndrome(&e)), e);
                checked += 1;
            }
            let expected: u64 = (0..=t)
                .map(|i| crate::bounds::binomial(n0, i).try_into().unwrap_or(0u64))
                .sum();
            assert_eq!(checked as u64, expected);
        }
    }

    #[test]
    fn osmlg_misfires_above_radius() {
        let e = BitVec::from_u32s(&[1, 1, 1, 0, 0]);
        let d = osmlg_block_decode(5, &block_syndrome(&e));
        assert_ne!(d, e);
        assert_eq!(block_syndrome(&d), block_syndrome(&e));
    }
}
