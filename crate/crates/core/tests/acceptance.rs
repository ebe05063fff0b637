//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pccss::bounds::{binomial, h2, max_rate_gap, pz_upper_bound, solve_threshold};
use pccss::channel::PauliChannel;
use pccss::codes::{lift_block, make_alternant, make_repetition, min_weight_of_span, LinearCode};
use pccss::css::{
    counting_check, counting_check_enlarged, distance_css, distance_stabilizer, fast_family,
    make_enlarged, make_pccss, CssCode, Side,
};
use pccss::decode::{bdd_alternant, exhaustive_decode, osmlg_block_decode};
use pccss::galois::FieldSpec;
use pccss::harness::{
    run_trials_with, timing_scaling, wilson_upper, CodeSpec, ExperimentConfig, TimingConfig,
};
use pccss::matgf::{BitVec, MatrixGF, RowSpace};
use pccss::stabcirc::{build_encoder, verify_encoder};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Coset-excluded distance by scanning every binary vector.
fn scan_distance(q: &CssCode, side: Side) -> usize {
    let (own, other) = match side {
        Side::X => (q.hx(), q.hz()),
        Side::Z => (q.hz(), q.hx()),
    };
    let rs = RowSpace::new(other);
    let n = q.n();
    (1u64..1 << n)
        .filter_map(|w| {
            let v = BitVec::from_word(n, w);
            (own.mul_bits(&v).is_zero() && !rs.contains_bits(&v)).then(|| w.count_ones() as usize)
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn shor_recovery() -> Outcome {
    let start = Instant::now();
    let rep3 = make_repetition(3).unwrap();
    let q = make_pccss(&lift_block(&rep3, 3).unwrap(), &rep3).unwrap();
    let dx = distance_css(&q, Side::X, 26).unwrap().map(|w| w.d);
    let dz = distance_css(&q, Side::Z, 26).unwrap().map(|w| w.d);
    let oracle = (scan_distance(&q, Side::X), scan_distance(&q, Side::Z));
    let null_min = min_weight_of_span(&q.hx().nullspace());
    let secs = start.elapsed().as_secs_f64();
    let pass = (q.n(), q.k()) == (9, 1)
        && dx == Some(3)
        && dz == Some(3)
        && oracle == (3, 3)
        && null_min == 2
        && secs < 1.0;
    outcome(
        pass,
        format!("[[{}, {}]] d_X = {dx:?} d_Z = {dz:?} oracle = {oracle:?}, min weight in null(H_X) = {null_min}, {secs:.3} s", q.n(), q.k()),
    )
}

fn commutation_identity() -> Outcome {
    let mut checked = 0;
    for &(n, n0) in &[(64usize, 4usize), (256, 8), (1024, 16)] {
        for seed in 0..100 {
            let ff = fast_family(n, n0, 3, 6, seed).unwrap();
            let q = ff.css();
            let prod = q.hx().mul(&q.hz().transpose()).unwrap();
            if !prod.is_zero() {
                return outcome(false, format!("nonzero H_X·H_Zᵀ at N = {n}, seed = {seed}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} instances, N ∈ {{64, 256, 1024}}"))
}

fn osmlg_exactness() -> Outcome {
    let mut total = 0u64;
    for n0 in [3usize, 5, 7, 9] {
        let t = (n0 - 1) / 2;
        for w in 0u64..1 << n0 {
            if w.count_ones() as usize > t {
                continue;
            }
            let e = BitVec::from_word(n0, w);
            let last = e.get(n0 - 1);
            let s = BitVec::from_bools(&(0..n0 - 1).map(|i| e.get(i) ^ last).collect::<Vec<_>>());
            total += 1;
            if osmlg_block_decode(n0, &s) != e {
                return outcome(false, format!("n0 = {n0}: error {w:#b} miscorrected"));
            }
        }
    }
    outcome(
        true,
        format!("{total} block errors corrected, n0 ∈ {{3, 5, 7, 9}}"),
    )
}

fn alternant_bdd() -> Outcome {
    let f3 = FieldSpec::new(2, 1, 3).unwrap();
    let g = f3.primitive_element();
    let a: Vec<u32> = (0..7).map(|i| f3.pow(g, i)).collect();
    let ham = make_alternant(&f3, &a, &a, 1).unwrap();
    let mut singles = 0;
    for i in 0..7 {
        let mut e = vec![0u32; 7];
        e[i] = 1;
        let out = bdd_alternant(&ham, &ham.syndrome(&e), 0).unwrap();
        singles += (out.is_corrected() && out.estimate == e) as usize;
    }
    let f4 = FieldSpec::new(2, 1, 4).unwrap();
    let g = f4.primitive_element();
    let a: Vec<u32> = (0..15).map(|i| f4.pow(g, i)).collect();
    let bch = make_alternant(&f4, &a, &a, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut agree = 0;
    for _ in 0..500 {
        let w = rng.gen_range(0..=2);
        let mut e = vec![0u32; 15];
        for i in rand::seq::index::sample(&mut rng, 15, w) {
            e[i] = 1;
        }
        let s = bch.syndrome(&e);
        let bdd = bdd_alternant(&bch, &s, 2).unwrap();
        let oracle = exhaustive_decode(&bch, &s).unwrap();
        agree += (bdd.is_corrected() && bdd.estimate == e && oracle.estimate == e) as usize;
    }
    outcome(
        singles == 7 && agree == 500,
        format!("Hamming singles {singles}/7, n = 15 r = 4 trials {agree}/500"),
    )
}

fn channel_gaps() -> Outcome {
    let (g100, p100) = max_rate_gap(100.0, 1e-4);
    let (g1000, p1000) = max_rate_gap(1000.0, 1e-4);
    outcome(
        g100 < 3e-2 && g1000 < 4e-3,
        format!("max gap {g100:.5} at p = {p100:.4} (ζ = 100, need < 3e-2); {g1000:.5} at p = {p1000:.4} (ζ = 1000, need < 4e-3)"),
    )
}

fn gv_landmark() -> Outcome {
    let root = solve_threshold(|d| 1.0 - 2.0 * h2(d).unwrap(), 1e-9, 0.5 - 1e-9, 1e-12).unwrap();
    outcome(
        (root - 0.110).abs() <= 5e-4,
        format!("zero of 1 − 2H₂(δ) at δ = {root:.6}"),
    )
}

fn union_bound_validation() -> Outcome {
    let (n, n0, pz) = (1024usize, 16usize, 0.05);
    let trials = 1_000_000u64;
    let ff = fast_family(n, n0, 3, 6, 0).unwrap();
    let channel = PauliChannel::from_probs(0.0, 0.0, pz).unwrap();
    let cfg = ExperimentConfig::new(
        CodeSpec::Fast {
            n,
            n0,
            c: 3,
            d: 6,
            seed: 0,
        },
        channel,
        trials,
        40,
    );
    let start = Instant::now();
    let summary = run_trials_with(&ff, &cfg, |_| {});
    let upper = wilson_upper(summary.z_failures, trials);
    let bound = pz_upper_bound(n, n0, pz).unwrap();
    outcome(
        upper <= bound && summary.x_failures == 0,
        format!(
            "{} Z failures in {trials} trials, one-sided 95% upper limit {upper:.3e} vs bound {bound:.3e}, {:.1} s",
            summary.z_failures,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn encoder_verification() -> Outcome {
    let mut count = 0;
    for seed in 0..20 {
        for &(n, n0) in &[(32usize, 4usize), (48, 4), (64, 4), (64, 8)] {
            let ff = fast_family(n, n0, 3, 6, seed).unwrap();
            let c = build_encoder(&ff).unwrap();
            let s = c.stats();
            let report = verify_encoder(ff.css(), &c);
            if !report.passed() || s.stage2_cnots != n - n / n0 || s.depth > ff.k() + n0 {
                return outcome(
                    false,
                    format!(
                        "N = {n} n0 = {n0} seed = {seed}: {report}, stage II {} depth {}",
                        s.stage2_cnots, s.depth
                    ),
                );
            }
            count += 1;
        }
    }
    outcome(
        true,
        format!("{count} instances verified, Stage II CNOTs = N − N/n0, depth ≤ k2 + n0"),
    )
}

fn enlarged_construction() -> Outcome {
    let f = FieldSpec::new(2, 1, 3).unwrap();
    let g = f.primitive_element();
    let a: Vec<u32> = (0..7).map(|i| f.pow(g, i)).collect();
    let ham = make_alternant(&f, &a, &a, 1).unwrap();
    let outer = LinearCode::from_parity_check(
        MatrixGF::from_rows(&FieldSpec::binary(), &[vec![1, 1, 1]]).unwrap(),
    )
    .unwrap();
    let h3 = outer.parity_check().mul(ham.parity_check()).unwrap();
    let mut c3 = LinearCode::from_parity_check(h3).unwrap();
    let d3 = c3.certify_distance().unwrap();
    let s = match make_enlarged(&ham, &outer) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("construction failed: {e}")),
    };
    // exact symplectic check of every generator pair
    let rows = s.generators().to_rows();
    let n = s.n();
    let commute = rows.iter().all(|x| {
        rows.iter().all(|y| {
            (0..n)
                .map(|i| x[i] * y[n + i] + x[n + i] * y[i])
                .sum::<u32>()
                % 2
                == 0
        })
    });
    let d = distance_stabilizer(&s, 12)
        .unwrap()
        .map(|w| w.d)
        .unwrap_or(0);
    let target = 3.min((3 * d3).div_ceil(2));
    outcome(
        commute && (n, s.k()) == (7, 3) && d >= target,
        format!("[[{n}, {}]], C3 = [7, {}, {d3}], commuting = {commute}, distance {d} (need ≥ {target})", s.k(), c3.k()),
    )
}

/// Direct evaluation of both sides with integer exponents; needs m | (k − f).
fn counting_oracle(n: usize, k: usize, f: usize, m: usize, lambda: usize, q: u32) -> bool {
    let base = BigUint::from(q).pow(m as u32) - BigUint::one();
    let sum: BigUint = (1..lambda)
        .map(|j| BigUint::from(q - 1).pow(j as u32) * binomial(n, j))
        .sum();
    base.pow((k - (k - f) / m) as u32) * sum < base.pow(k as u32)
}

fn counting_inequalities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut cases = 0;
    for _ in 0..300 {
        let q = [2u32, 3, 4][rng.gen_range(0..3)];
        let m = rng.gen_range(2..5);
        let n = rng.gen_range(8..60);
        let f = rng.gen_range(1..n / 2);
        if (n - f) % m != 0 {
            continue;
        }
        let k = rng.gen_range(f..=n);
        let mut prev = f64::INFINITY;
        for lambda in 1..n.min(20) {
            for (which, out) in [
                ("pccss", counting_check(n, k, f, m, lambda, q)),
                ("enlarged", counting_check_enlarged(n, k, f, m, lambda, q)),
            ] {
                let out = out.unwrap();
                if lambda == 1 && !out.holds {
                    return outcome(
                        false,
                        format!("{which}: empty sum rejected at n={n} k={k} f={f} m={m}"),
                    );
                }
                if (k - f) % m == 0 && out.holds != counting_oracle(n, k, f, m, lambda, q) {
                    return outcome(false, format!("{which}: disagrees with direct evaluation at n={n} k={k} f={f} m={m} λ={lambda} q={q}"));
                }
            }
            let out = counting_check(n, k, f, m, lambda, q).unwrap();
            if out.margin > prev + 1e-12 {
                return outcome(
                    false,
                    format!("margin increased at n={n} k={k} f={f} m={m} λ={lambda}"),
                );
            }
            prev = out.margin;
            cases += 1;
        }
    }
    outcome(
        true,
        format!("{cases} cases: empty sum holds, exact agreement, margins nonincreasing in λ"),
    )
}

fn decoder_linearity() -> Outcome {
    let grid: Vec<usize> = (10..=16).map(|e| 1usize << e).collect();
    let cfg = TimingConfig {
        n0: 16,
        c: 3,
        d: 6,
        seed: 3,
        channel: PauliChannel::new(0.02, 10.0).unwrap(),
        batch: 64,
        repetitions: 9,
        partitions: 4,
    };
    let rows = timing_scaling(&grid, &cfg).unwrap();
    let ratios: Vec<String> = rows
        .windows(2)
        .map(|w| format!("{:.2}", w[1].serial / w[0].serial))
        .collect();
    let worst = rows
        .windows(2)
        .map(|w| w[1].serial / w[0].serial)
        .fold(0.0, f64::max);
    let identical = rows.iter().all(|r| r.identical);
    outcome(
        worst <= 2.5 && identical,
        format!(
            "doubling ratios [{}], partitioned Z identical = {identical}",
            ratios.join(", ")
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("shor code recovery", shor_recovery),
        ("commutation identity", commutation_identity),
        ("majority-logic exactness", osmlg_exactness),
        ("alternant bounded-distance decoding", alternant_bdd),
        ("channel rate gaps", channel_gaps),
        ("GV landmark", gv_landmark),
        ("Z union bound", union_bound_validation),
        ("encoder verification", encoder_verification),
        ("enlarged construction", enlarged_construction),
        ("counting inequalities", counting_inequalities),
        ("decoder linearity", decoder_linearity),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "{} {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria pass", criteria.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
