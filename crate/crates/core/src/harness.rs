//! Seeded Monte Carlo experiments on fast-family codes.
//!
//! Trial t of a run draws its error from the channel with key (seed, t), so
//! records do not depend on the worker count, the Z-decoder partition width
//! or the order in which trials finish.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{binomial, pz_upper_bound};
use crate::channel::{PauliChannel, PauliError};
use crate::css::{fast_family, CssCode, CssError, FastFamily, Side};
use crate::decode::{pccss_decode_x, pccss_decode_z, DecodeStatus, FlipMode, DEFAULT_MAX_ROUNDS};
use crate::matgf::{BitVec, RowSpace};

/// Two-sided 95% normal quantile.
pub const Z_TWO_SIDED_95: f64 = 1.959_963_984_540_054;
/// One-sided 95% normal quantile.
pub const Z_ONE_SIDED_95: f64 = 1.644_853_626_951_472_2;

/// Where the code comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum CodeSpec {
    Fast {
        n: usize,
        n0: usize,
        c: usize,
        d: usize,
        seed: u64,
    },
    Bundle(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub code: CodeSpec,
    pub channel: PauliChannel,
    pub trials: u64,
    /// Index of the first trial; lets a run be split into pieces.
    pub first_trial: u64,
    pub seed: u64,
    pub flip_mode: FlipMode,
    pub max_rounds: usize,
    /// Number of concurrent ranges in Z decoding; 1 is serial.
    pub partitions: usize,
    /// Store decode wall-clock in the records, which makes them nondeterministic.
    pub record_timing: bool,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(code: CodeSpec, channel: PauliChannel, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            code,
            channel,
            trials,
            first_trial: 0,
            seed,
            flip_mode: FlipMode::Sequential,
            max_rounds: DEFAULT_MAX_ROUNDS,
            partitions: 1,
            record_timing: false,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trial count must be at least 1".into());
        }
        if self.partitions == 0 {
            return Err("partition width must be at least 1".into());
        }
        if let CodeSpec::Bundle(p) = &self.code {
            if !p.exists() {
                return Err(format!("bundle {} does not exist", p.display()));
            }
        }
        Ok(())
    }

    /// Builds a fast-family code described by `CodeSpec::Fast`.
    pub fn build_fast(&self) -> Result<FastFamily, CssError> {
        match self.code {
            CodeSpec::Fast { n, n0, c, d, seed } => fast_family(n, n0, c, d, seed),
            CodeSpec::Bundle(_) => Err(CssError::Invalid(
                "bundle codes are loaded by the caller".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u64,
    pub wt_x: usize,
    pub wt_z: usize,
    pub status_x: DecodeStatus,
    pub status_z: DecodeStatus,
    pub x_failed: bool,
    pub z_failed: bool,
    pub flips: u64,
    pub block_decodes: u64,
    pub decode_ns: Option<u64>,
}

impl TrialRecord {
    pub const CSV_HEADER: &'static str =
        "trial,wt_x,wt_z,status_x,status_z,x_failed,z_failed,flips,block_decodes,decode_ns";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.wt_x,
            self.wt_z,
            self.status_x.as_str(),
            self.status_z.as_str(),
            self.x_failed as u8,
            self.z_failed as u8,
            self.flips,
            self.block_decodes,
            self.decode_ns.map_or(String::new(), |t| t.to_string())
        )
    }
}

/// Wilson score interval for `k` successes in `n` trials at normal quantile `z`.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let (kf, nf) = (k as f64, n as f64);
    let p = kf / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    let lo = if k == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if k == n {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

/// One-sided 95% upper confidence limit (Wilson).
pub fn wilson_upper(k: u64, n: u64) -> f64 {
    wilson_interval(k, n, Z_ONE_SIDED_95).1
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub n: usize,
    pub n0: usize,
    pub k: usize,
    pub p: f64,
    pub zeta: f64,
    pub trials: u64,
    pub x_failures: u64,
    pub z_failures: u64,
    pub any_failures: u64,
    pub x_interval: (f64, f64),
    pub z_interval: (f64, f64),
    pub z_upper_one_sided: f64,
    /// Closed-form union bound on the Z failure probability at the per-qubit
    /// Z-flip probability p_Z + p_Y.
    pub z_bound: f64,
}

impl RunSummary {
    fn from_counts(
        ff: &FastFamily,
        ch: &PauliChannel,
        trials: u64,
        xf: u64,
        zf: u64,
        af: u64,
    ) -> Self {
        RunSummary {
            n: ff.n(),
            n0: ff.n0(),
            k: ff.k(),
            p: ch.p,
            zeta: ch.zeta,
            trials,
            x_failures: xf,
            z_failures: zf,
            any_failures: af,
            x_interval: wilson_interval(xf, trials, Z_TWO_SIDED_95),
            z_interval: wilson_interval(zf, trials, Z_TWO_SIDED_95),
            z_upper_one_sided: wilson_upper(zf, trials),
            z_bound: pz_upper_bound(ff.n(), ff.n0(), ch.pz + ch.py).unwrap_or(f64::NAN),
        }
    }

    /// Summary as `#`-prefixed `key: value` lines.
    pub fn to_comment_block(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| writeln!(s, "# {k}: {v}").unwrap();
        kv(
            "code",
            format!("[[{}, {}]] n0 = {}", self.n, self.k, self.n0),
        );
        kv("channel", format!("p = {} zeta = {}", self.p, self.zeta));
        kv("trials", self.trials.to_string());
        kv("x_failures", self.x_failures.to_string());
        kv("z_failures", self.z_failures.to_string());
        kv("any_failures", self.any_failures.to_string());
        kv(
            "x_rate_ci95",
            format!("[{:.6e}, {:.6e}]", self.x_interval.0, self.x_interval.1),
        );
        kv(
            "z_rate_ci95",
            format!("[{:.6e}, {:.6e}]", self.z_interval.0, self.z_interval.1),
        );
        kv("z_rate_upper95", format!("{:.6e}", self.z_upper_one_sided));
        kv("z_bound", format!("{:.6e}", self.z_bound));
        s
    }
}

/// Logical failure of a residual on a dense CSS code: the residual passes all
/// checks of its side but lies outside the opposite row space.
pub fn logical_check(q: &CssCode, residual: &PauliError) -> (bool, bool) {
    let fails = |side: Side, r: &BitVec| {
        if r.is_zero() {
            return false;
        }
        let (own, other) = match side {
            Side::X => (q.hx(), q.hz()),
            Side::Z => (q.hz(), q.hx()),
        };
        let undetected = own.mul_bits(r).is_zero();
        undetected && !RowSpace::new(other).contains_bits(r)
    };
    (fails(Side::X, &residual.x), fails(Side::Z, &residual.z))
}

/// One trial on a fast-family code. A side fails when its decoder does not
/// converge or leaves an undetected logical residual.
pub fn run_trial(ff: &FastFamily, cfg: &ExperimentConfig, trial: u64) -> TrialRecord {
    let e = cfg.channel.sample(ff.n(), cfg.seed, trial);
    let s_x = ff.syndrome_x(&e.x);
    let s_z = ff.syndrome_z(&e.z);
    let start = Instant::now();
    let dx = pccss_decode_x(ff, &s_x, cfg.flip_mode, cfg.max_rounds);
    let dz = pccss_decode_z(ff, &s_z, cfg.partitions);
    let elapsed = start.elapsed().as_nanos() as u64;
    let rx = e.x.xor(&dx.estimate);
    let rz = e.z.xor(&dz.estimate);
    TrialRecord {
        trial,
        wt_x: e.x_weight(),
        wt_z: e.z_weight(),
        status_x: dx.status,
        status_z: dz.status,
        x_failed: dx.status != DecodeStatus::Corrected || ff.logical_x_failed(&rx),
        z_failed: dz.status != DecodeStatus::Corrected || ff.logical_z_failed(&rz),
        flips: dx.work.flips,
        block_decodes: dz.work.block_decodes,
        decode_ns: cfg.record_timing.then_some(elapsed),
    }
}

const CHUNK: u64 = 4096;

/// Runs all trials, handing records to `sink` in trial order.
pub fn run_trials_with(
    ff: &FastFamily,
    cfg: &ExperimentConfig,
    mut sink: impl FnMut(&TrialRecord),
) -> RunSummary {
    let (mut xf, mut zf, mut af) = (0, 0, 0);
    let end = cfg.first_trial + cfg.trials;
    let mut lo = cfg.first_trial;
    while lo < end {
        let hi = (lo + CHUNK).min(end);
        let records: Vec<TrialRecord> = (lo..hi)
            .into_par_iter()
            .map(|t| run_trial(ff, cfg, t))
            .collect();
        for r in &records {
            xf += r.x_failed as u64;
            zf += r.z_failed as u64;
            af += (r.x_failed || r.z_failed) as u64;
            sink(r);
        }
        lo = hi;
    }
    RunSummary::from_counts(ff, &cfg.channel, cfg.trials, xf, zf, af)
}

pub fn run_trials(ff: &FastFamily, cfg: &ExperimentConfig) -> (Vec<TrialRecord>, RunSummary) {
    let mut records = Vec::with_capacity(cfg.trials.min(1 << 20) as usize);
    let summary = run_trials_with(ff, cfg, |r| records.push(r.clone()));
    (records, summary)
}

/// Results CSV: header, one row per record, summary comment block.
pub fn results_csv(records: &[TrialRecord], summary: &RunSummary) -> String {
    let mut s = String::with_capacity(64 * (records.len() + 2));
    s.push_str(TrialRecord::CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.to_csv());
        s.push('\n');
    }
    s.push_str(&summary.to_comment_block());
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub weight: usize,
    pub tested: u64,
    pub corrected: u64,
    /// Every error of this weight was tried.
    pub exhaustive: bool,
}

impl SweepRow {
    pub fn rate(&self) -> f64 {
        if self.tested == 0 {
            1.0
        } else {
            self.corrected as f64 / self.tested as f64
        }
    }
}

/// Largest number of errors of one weight that the sweep enumerates outright.
pub const SWEEP_EXHAUSTIVE_MAX: u64 = 10_000;

fn corrected_on_side(ff: &FastFamily, side: Side, e: &BitVec, mode: FlipMode) -> bool {
    match side {
        Side::X => {
            let out = pccss_decode_x(ff, &ff.syndrome_x(e), mode, DEFAULT_MAX_ROUNDS);
            let r = e.xor(&out.estimate);
            out.status == DecodeStatus::Corrected
                && ff.syndrome_x(&r).is_zero()
                && !ff.logical_x_failed(&r)
        }
        Side::Z => {
            let out = pccss_decode_z(ff, &ff.syndrome_z(e), 1);
            let r = e.xor(&out.estimate);
            ff.syndrome_z(&r).is_zero() && !ff.logical_z_failed(&r)
        }
    }
}

fn for_each_combination(n: usize, w: usize, f: &mut dyn FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        f(&idx);
        let mut i = w;
        loop {
            if i == 0 {
                return;
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

/// Correction rate against errors of exact weight w on one side, for each w
/// in `weights`: every error when there are at most
/// [`SWEEP_EXHAUSTIVE_MAX`] of them, otherwise `samples` uniform draws.
pub fn adversarial_sweep(
    ff: &FastFamily,
    side: Side,
    weights: std::ops::RangeInclusive<usize>,
    samples: u64,
    seed: u64,
) -> Vec<SweepRow> {
    let n = ff.n();
    weights
        .filter(|&w| w <= n)
        .map(|w| {
            let count = binomial(n, w);
            let exhaustive = count <= SWEEP_EXHAUSTIVE_MAX.into();
            let (mut tested, mut corrected) = (0u64, 0u64);
            if exhaustive {
                for_each_combination(n, w, &mut |supp| {
                    tested += 1;
                    corrected += corrected_on_side(
                        ff,
                        side,
                        &BitVec::from_support(n, supp),
                        FlipMode::Sequential,
                    ) as u64;
                });
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(w as u64);
                for _ in 0..samples {
                    let supp = sample(&mut rng, n, w).into_vec();
                    tested += 1;
                    corrected += corrected_on_side(
                        ff,
                        side,
                        &BitVec::from_support(n, &supp),
                        FlipMode::Sequential,
                    ) as u64;
                }
            }
            SweepRow {
                weight: w,
                tested,
                corrected,
                exhaustive,
            }
        })
        .collect()
}

/// Z errors with at most ⌊(n0−1)/2⌋ errors in every block, each block's
/// weight uniform in that range; returns (tested, corrected).
pub fn bounded_z_sweep(ff: &FastFamily, samples: u64, seed: u64) -> (u64, u64) {
    use rand::Rng;
    let t = (ff.n0() - 1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corrected = 0;
    for _ in 0..samples {
        let mut e = BitVec::zeros(ff.n());
        for b in 0..ff.blocks() {
            let w = rng.gen_range(0..=t);
            for i in sample(&mut rng, ff.n0(), w) {
                e.set(b * ff.n0() + i, true);
            }
        }
        corrected += corrected_on_side(ff, Side::Z, &e, FlipMode::Sequential) as u64;
    }
    (samples, corrected)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimingRow {
    pub n: usize,
    /// Serial X plus Z decode time over the batch, seconds (best repetition).
    pub serial: f64,
    /// Serial Z decode time alone, seconds.
    pub serial_z: f64,
    /// Partitioned Z decode time, seconds.
    pub partitioned_z: f64,
    pub partitions: usize,
    /// Partitioned Z estimates equal the serial ones on every sample.
    pub identical: bool,
}

pub struct TimingConfig {
    pub n0: usize,
    pub c: usize,
    pub d: usize,
    pub seed: u64,
    pub channel: PauliChannel,
    /// Error samples decoded per measurement.
    pub batch: u64,
    pub repetitions: usize,
    pub partitions: usize,
}

/// Decode wall-clock over a grid of lengths; each entry is the minimum over
/// repetitions to suppress scheduler noise.
pub fn timing_scaling(grid: &[usize], cfg: &TimingConfig) -> Result<Vec<TimingRow>, CssError> {
    let mut points = Vec::with_capacity(grid.len());
    for &n in grid {
        let ff = fast_family(n, cfg.n0, cfg.c, cfg.d, cfg.seed)?;
        let syndromes: Vec<(BitVec, BitVec)> = (0..cfg.batch)
            .map(|t| {
                let e = cfg.channel.sample(n, cfg.seed, t);
                (ff.syndrome_x(&e.x), ff.syndrome_z(&e.z))
            })
            .collect();
        points.push((ff, syndromes));
    }
    let mut rows: Vec<TimingRow> = grid
        .iter()
        .map(|&n| TimingRow {
            n,
            serial: f64::INFINITY,
            serial_z: f64::INFINITY,
            partitioned_z: f64::INFINITY,
            partitions: cfg.partitions,
            identical: true,
        })
        .collect();
    // repetitions sweep the whole grid so a burst of outside load hits one sample per point
    for _ in 0..cfg.repetitions.max(1) {
        for ((ff, syndromes), row) in points.iter().zip(rows.iter_mut()) {
            let t0 = Instant::now();
            let mut serial_out = Vec::with_capacity(syndromes.len());
            for (sx, sz) in syndromes {
                let dx = pccss_decode_x(ff, sx, FlipMode::Sequential, DEFAULT_MAX_ROUNDS);
                std::hint::black_box(&dx);
                serial_out.push(pccss_decode_z(ff, sz, 1).estimate);
            }
            row.serial = row.serial.min(t0.elapsed().as_secs_f64());
            let t1 = Instant::now();
            for (_, sz) in syndromes {
                std::hint::black_box(pccss_decode_z(ff, sz, 1));
            }
            row.serial_z = row.serial_z.min(t1.elapsed().as_secs_f64());
            let t2 = Instant::now();
            let part_out: Vec<BitVec> = syndromes
                .iter()
                .map(|(_, sz)| pccss_decode_z(ff, sz, cfg.partitions).estimate)
                .collect();
            row.partitioned_z = row.partitioned_z.min(t2.elapsed().as_secs_f64());
            row.identical &= part_out == serial_out;
        }
    }
    Ok(rows)
}

pub fn timing_csv(rows: &[TimingRow]) -> String {
    let mut s = String::from("N,serial_s,serial_z_s,partitioned_z_s,partitions,identical\n");
    for r in rows {
        writeln!(
            s,
            "{},{:.6e},{:.6e},{:.6e},{},{}",
            r.n, r.serial, r.serial_z, r.partitioned_z, r.partitions, r.identical as u8
        )
        .unwrap();
    }
    s
}

/// Largest ratio of serial times between successive grid points.
pub fn max_doubling_ratio(rows: &[TimingRow]) -> f64 {
    rows.windows(2)
        .map(|w| w[1].serial / w[0].serial)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::shor_instance;

    fn shor_cfg(p: f64, zeta: f64, trials: u64) -> ExperimentConfig {
        ExperimentConfig::new(
            CodeSpec::Fast {
                n: 9,
                n0: 3,
                c: 1,
                d: 1,
                seed: 0,
            },
            PauliChannel::new(p, zeta).unwrap(),
            trials,
            7,
        )
    }

    #[test]
    fn wilson_reference_values() {
        // closed form at k = 0: upper = z²/(n + z²)
        let (lo, hi) = wilson_interval(0, 100, Z_TWO_SIDED_95);
        assert_eq!(lo, 0.0);
        let z2 = Z_TWO_SIDED_95 * Z_TWO_SIDED_95;
        assert!((hi - z2 / (100.0 + z2)).abs() < 1e-12);
        // symmetric case k = n/2 is centred on 1/2
        let (lo, hi) = wilson_interval(50, 100, Z_TWO_SIDED_95);
        assert!((lo + hi - 1.0).abs() < 1e-12);
        assert!(wilson_upper(3, 1000) > 0.003);
    }

    #[test]
    fn zero_noise_never_fails() {
        let ff = shor_instance();
        let (records, summary) = run_trials(&ff, &shor_cfg(0.0, 1.0, 500));
        assert_eq!(records.len(), 500);
        assert_eq!(summary.any_failures, 0);
        assert!(records.iter().all(|r| r.wt_x == 0 && r.wt_z == 0));
    }

    #[test]
    fn records_are_schedule_independent() {
        let ff = fast_family(256, 8, 3, 6, 5).unwrap();
        let base = ExperimentConfig::new(
            CodeSpec::Fast {
                n: 256,
                n0: 8,
                c: 3,
                d: 6,
                seed: 5,
            },
            PauliChannel::new(0.08, 3.0).unwrap(),
            300,
            11,
        );
        let (a, sa) = run_trials(&ff, &base);
        let mut wide = base.clone();
        wide.partitions = 7;
        let (b, sb) = run_trials(&ff, &wide);
        assert_eq!(a, b);
        assert_eq!(sa, sb);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let (c, _) = single.install(|| run_trials(&ff, &base));
        assert_eq!(a, c);
        // a run split in two matches the whole
        let mut first = base.clone();
        first.trials = 120;
        let mut second = base.clone();
        second.first_trial = 120;
        second.trials = 180;
        let joined: Vec<TrialRecord> = run_trials(&ff, &first)
            .0
            .into_iter()
            .chain(run_trials(&ff, &second).0)
            .collect();
        assert_eq!(joined, a);
    }

    #[test]
    fn records_recompute_from_the_error() {
        let ff = shor_instance();
        let cfg = shor_cfg(0.3, 2.0, 200);
        let (records, _) = run_trials(&ff, &cfg);
        for r in &records {
            let e = cfg.channel.sample(9, cfg.seed, r.trial);
            assert_eq!((r.wt_x, r.wt_z), (e.x_weight(), e.z_weight()));
            let again = run_trial(&ff, &cfg, r.trial);
            assert_eq!(&again, r);
            // the dense logical check agrees with the structured one
            let dx = pccss_decode_x(&ff, &ff.syndrome_x(&e.x), cfg.flip_mode, cfg.max_rounds);
            let dz = pccss_decode_z(&ff, &ff.syndrome_z(&e.z), 1);
            let residual = PauliError {
                x: e.x.xor(&dx.estimate),
                z: e.z.xor(&dz.estimate),
            };
            let (xf, zf) = logical_check(ff.css(), &residual);
            assert_eq!(xf || dx.status != DecodeStatus::Corrected, r.x_failed);
            assert_eq!(zf, r.z_failed);
        }
    }

    #[test]
    fn logical_check_examples() {
        let ff = shor_instance();
        let q = ff.css();
        let zero = PauliError::identity(9);
        assert_eq!(logical_check(q, &zero), (false, false));
        // an X-type stabilizer pattern (row of H_Z) is degenerate, not a failure
        let mut r = PauliError::identity(9);
        r.x = q.hz().bit_rows().unwrap()[0].clone();
        assert_eq!(logical_check(q, &r), (false, false));
        // weight-3 X logical: one qubit per block
        let mut r = PauliError::identity(9);
        r.x = BitVec::from_support(9, &[0, 3, 6]);
        assert_eq!(logical_check(q, &r), (true, false));
        // weight-3 Z logical: a whole block
        let mut r = PauliError::identity(9);
        r.z = BitVec::from_support(9, &[0, 1, 2]);
        assert_eq!(logical_check(q, &r), (false, true));
    }

    #[test]
    fn shor_sweeps() {
        let ff = shor_instance();
        let rows = adversarial_sweep(&ff, Side::X, 1..=1, 0, 0);
        assert_eq!(
            rows,
            vec![SweepRow {
                weight: 1,
                tested: 9,
                corrected: 9,
                exhaustive: true
            }]
        );
        let rows = adversarial_sweep(&ff, Side::Z, 0..=2, 0, 0);
        assert_eq!(rows[1].rate(), 1.0);
        // two Z errors in one block defeat majority logic
        assert!(rows[2].rate() < 1.0);
        assert_eq!(bounded_z_sweep(&ff, 200, 3), (200, 200));
    }

    #[test]
    fn sampled_sweep_rows() {
        let ff = fast_family(512, 8, 3, 6, 1).unwrap();
        let rows = adversarial_sweep(&ff, Side::X, 3..=3, 50, 9);
        assert!(!rows[0].exhaustive);
        assert_eq!(rows[0].tested, 50);
        let (t, c) = bounded_z_sweep(&ff, 50, 2);
        assert_eq!(t, c);
    }

    #[test]
    fn csv_layout() {
        let ff = shor_instance();
        let (records, summary) = run_trials(&ff, &shor_cfg(0.1, 1.0, 3));
        let csv = results_csv(&records, &summary);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], TrialRecord::CSV_HEADER);
        assert!(lines[1].starts_with("0,"));
        assert!(lines[1].ends_with(','));
        assert!(lines[4..].iter().all(|l| l.starts_with("# ")));
    }

    #[test]
    fn timing_smoke() {
        let cfg = TimingConfig {
            n0: 4,
            c: 3,
            d: 6,
            seed: 1,
            channel: PauliChannel::new(0.01, 2.0).unwrap(),
            batch: 4,
            repetitions: 1,
            partitions: 3,
        };
        let rows = timing_scaling(&[64, 128], &cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.identical));
        assert_eq!(timing_csv(&rows).lines().count(), 3);
    }
}
