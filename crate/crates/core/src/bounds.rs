//! Closed-form rate bounds, Hamming-ball volumes and failure-probability bounds.
//!
//! Entropy-based curves are binary64. Combinatorial quantities are exact
//! (`BigUint` / `BigRational`) so inequality checks never depend on rounding.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("{name} = {value} outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },
    #[error("block length {n0} does not divide N = {n}")]
    Divisibility { n: usize, n0: usize },
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// q-ary entropy H_q(x) = x·log_q(q−1) − x·log_q x − (1−x)·log_q(1−x), with 0·log 0 = 0.
pub fn entropy_q(x: f64, q: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(BoundsError::Domain {
            name: "x",
            value: x,
            domain: "[0, 1]",
        });
    }
    let ln_q = (q as f64).ln();
    let xlogx = |t: f64| if t <= 0.0 { 0.0 } else { t * t.ln() };
    let h = x * ((q - 1) as f64).ln() - xlogx(x) - xlogx(1.0 - x);
    Ok(h / ln_q)
}

pub fn h2(x: f64) -> Result<f64> {
    entropy_q(x, 2)
}

/// Vol_q(n, λ) = Σ_{i ≤ λ} C(n, i)(q−1)^i.
pub fn vol_q(n: usize, lambda: usize, q: u32) -> BigUint {
    let lambda = lambda.min(n);
    let mut total = BigUint::zero();
    let mut term = BigUint::one(); // C(n, i)(q−1)^i
    for i in 0..=lambda {
        total += &term;
        if i < n {
            term = term * BigUint::from(n - i) * BigUint::from(q - 1) / BigUint::from(i + 1);
        }
    }
    total
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn check_delta(delta: f64, q: u32, name: &'static str) -> Result<()> {
    let max = 1.0 - 1.0 / q as f64;
    if !(0.0..=max + 1e-15).contains(&delta) || delta.is_nan() {
        return Err(BoundsError::Domain {
            name,
            value: delta,
            domain: "[0, 1 − 1/q]",
        });
    }
    Ok(())
}

/// CSS Gilbert-Varshamov rate 1 − 2H_q(δ).
pub fn gv_css_rate(delta: f64, q: u32) -> Result<f64> {
    check_delta(delta, q, "delta")?;
    Ok(1.0 - 2.0 * entropy_q(delta, q)?)
}

/// Asymmetric GV rate 1 − H_q(δ_X) − H_q(δ_Z).
pub fn gv_aqc_rate(dx: f64, dz: f64, q: u32) -> Result<f64> {
    check_delta(dx, q, "dx")?;
    check_delta(dz, q, "dz")?;
    Ok(1.0 - entropy_q(dx, q)? - entropy_q(dz, q)?)
}

/// Enlarged-CSS GV rate 1 − H_q(δ) − H_q(qδ/(q+1)).
pub fn gv_enlarged_rate(delta: f64, q: u32) -> Result<f64> {
    check_delta(delta, q, "delta")?;
    let qf = q as f64;
    Ok(1.0 - entropy_q(delta, q)? - entropy_q(qf * delta / (qf + 1.0), q)?)
}

/// Hashing bound in the single-parameter form 1 − H_2(p).
pub fn hashing_rate(p: f64) -> Result<f64> {
    Ok(1.0 - h2(p)?)
}

/// Rate 1 − H_2(4p_X) − H_2(p_Z + p_Y) reachable by PC-CSS codes on the
/// asymmetric channel with p_X = p_Y = p/(2ζ+1), p_Z = p(2ζ−1)/(2ζ+1).
pub fn pccss_channel_rate(p: f64, zeta: f64) -> Result<f64> {
    let (px, py, pz) =
        crate::channel::asymmetric_probs(p, zeta).map_err(|_| BoundsError::Domain {
            name: "p",
            value: p,
            domain: "[0, 1] with ζ ≥ 1",
        })?;
    if 4.0 * px > 1.0 {
        return Err(BoundsError::Domain {
            name: "4·p_X",
            value: 4.0 * px,
            domain: "[0, 1]",
        });
    }
    Ok(1.0 - h2(4.0 * px)? - h2((pz + py).min(1.0))?)
}

fn block_params(n: usize, n0: usize) -> Result<(usize, usize)> {
    if n0 == 0 || !n.is_multiple_of(n0) {
        return Err(BoundsError::Divisibility { n, n0 });
    }
    Ok((n / n0, (n0 - 1) / 2))
}

/// Closed-form bound N2·2^(n0−1)·pz^(d0+1) on the uncorrectable-Z probability.
pub fn pz_upper_bound(n: usize, n0: usize, pz: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&pz) {
        return Err(BoundsError::Domain {
            name: "pz",
            value: pz,
            domain: "[0, 1]",
        });
    }
    let (n2, d0) = block_params(n, n0)?;
    Ok(n2 as f64 * 2f64.powi(n0 as i32 - 1) * pz.powi(d0 as i32 + 1))
}

/// The union bound N2·C(n0, d0+1)·pz^(d0+1) before the binomial coefficient is
/// relaxed to 2^(n0−1), exactly. The trailing binomial sum over the remaining
/// positions equals one and is folded in.
pub fn pz_union_bound_exact(n: usize, n0: usize, pz: &BigRational) -> Result<BigRational> {
    let (n2, d0) = block_params(n, n0)?;
    let coef = BigUint::from(n2) * binomial(n0, d0 + 1);
    let coef = BigRational::from_integer(coef.into());
    Ok(coef * num_traits::pow(pz.clone(), d0 + 1))
}

/// Exact rational from a binary64 value.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Bisection root of a monotone function with a sign change on [lo, hi].
pub fn solve_threshold(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(BoundsError::NoSignChange { lo, hi, flo, fhi });
    }
    let lo_sign = flo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A family of curves sampled on a shared grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RateCurve {
    pub x_label: String,
    pub grid: Vec<f64>,
    pub labels: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl RateCurve {
    pub fn new(x_label: &str, grid: Vec<f64>) -> Self {
        assert!(
            grid.windows(2).all(|w| w[0] < w[1]),
            "grid must be strictly increasing"
        );
        RateCurve {
            x_label: x_label.into(),
            grid,
            labels: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, f: impl Fn(f64) -> f64) {
        self.labels.push(label.into());
        self.columns.push(self.grid.iter().map(|&x| f(x)).collect());
    }

    pub fn column(&self, label: &str) -> Option<&[f64]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.x_label);
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (i, x) in self.grid.iter().enumerate() {
            out.push_str(&format!("{x:.6}"));
            for c in &self.columns {
                if c[i].is_finite() {
                    out.push_str(&format!(",{:.9}", c[i]));
                } else {
                    out.push(',');
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Evenly spaced grid lo, lo+step, … up to and including hi (within rounding).
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| lo + i as f64 * step).collect()
}

/// Hashing and PC-CSS channel rates against total error probability, plus their gap.
pub fn channel_rate_curves(zeta: f64, step: f64) -> RateCurve {
    let hi = 0.5;
    let mut curve = RateCurve::new("p", grid(0.0, hi, step));
    curve.push("hashing", |p| hashing_rate(p).unwrap_or(f64::NAN));
    curve.push(format!("pccss_zeta{zeta}"), |p| {
        pccss_channel_rate(p, zeta).unwrap_or(f64::NAN)
    });
    let gaps: Vec<f64> = curve.columns[0]
        .iter()
        .zip(&curve.columns[1])
        .map(|(h, r)| {
            if *h > 0.0 && *r > 0.0 {
                h - r
            } else {
                f64::NAN
            }
        })
        .collect();
    curve.labels.push("gap".into());
    curve.columns.push(gaps);
    curve
}

/// Largest hashing − PC-CSS gap over grid points where both rates are positive,
/// with the p at which it occurs.
pub fn max_rate_gap(zeta: f64, step: f64) -> (f64, f64) {
    let curve = channel_rate_curves(zeta, step);
    let gaps = curve.column("gap").expect("gap column");
    curve
        .grid
        .iter()
        .zip(gaps)
        .filter(|(_, g)| g.is_finite())
        .fold((f64::NEG_INFINITY, 0.0), |best, (&p, &g)| {
            if g > best.0 {
                (g, p)
            } else {
                best
            }
        })
}

/// Gilbert-Varshamov style curves in the relative distance δ.
pub fn gv_curves(q: u32, step: f64) -> RateCurve {
    let hi = 1.0 - 1.0 / q as f64;
    let mut curve = RateCurve::new("delta", grid(0.0, hi, step));
    curve.push(format!("gv_css_q{q}"), |d| {
        gv_css_rate(d, q).unwrap_or(f64::NAN)
    });
    curve.push(format!("gv_enlarged_q{q}"), |d| {
        gv_enlarged_rate(d, q).unwrap_or(f64::NAN)
    });
    curve.push(format!("gv_aqc_q{q}_dz2delta"), |d| {
        gv_aqc_rate(d, (2.0 * d).min(hi), q).unwrap_or(f64::NAN)
    });
    curve
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn naive_h2(x: f64) -> f64 {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }

    #[test]
    fn entropy_values() {
        assert_eq!(h2(0.5).unwrap(), 1.0);
        assert_eq!(entropy_q(0.0, 7).unwrap(), 0.0);
        assert!((h2(0.11).unwrap() - naive_h2(0.11)).abs() < 1e-15);
        assert!((h2(0.11).unwrap() - 0.4999).abs() < 1e-3);
        // maximum of H_q is 1 at 1 − 1/q
        assert!((entropy_q(0.75, 4).unwrap() - 1.0).abs() < 1e-12);
        assert!(h2(1.5).is_err());
        assert_eq!(h2(1.0).unwrap(), 0.0);
    }

    #[test]
    fn entropy_is_concave() {
        for q in [2u32, 3, 4] {
            let hi = 1.0 - 1.0 / q as f64;
            let pts: Vec<f64> = (0..=1000).map(|i| hi * i as f64 / 1000.0).collect();
            for w in pts.windows(3) {
                let mid = entropy_q(w[1], q).unwrap();
                let chord = 0.5 * (entropy_q(w[0], q).unwrap() + entropy_q(w[2], q).unwrap());
                assert!(mid >= chord - 1e-12);
            }
        }
    }

    #[test]
    fn volumes() {
        assert_eq!(vol_q(10, 0, 2), BigUint::one());
        assert_eq!(vol_q(3, 1, 2), BigUint::from(4u32));
        assert_eq!(vol_q(4, 4, 3), BigUint::from(81u32));
        let v = vol_q(100, 30, 2);
        let log2v = v.bits() as f64 - 1.0; // floor(log2 v) ≤ log2 v
        assert!(log2v <= 100.0 * h2(0.3).unwrap());
    }

    #[test]
    fn ball_volume_sandwich() {
        // q^{n H_q(λ/n)} / (n+1) ≤ Vol ≤ q^{n H_q(λ/n)}
        for q in [2u32, 4] {
            let max_ratio = 1.0 - 1.0 / q as f64;
            for n in (5..=200).step_by(15) {
                for lambda in 0..=n {
                    if lambda as f64 / n as f64 > max_ratio {
                        break;
                    }
                    let v = vol_q(n, lambda, q);
                    let logv = big_log2(&v);
                    let h = entropy_q(lambda as f64 / n as f64, q).unwrap()
                        * n as f64
                        * (q as f64).log2();
                    assert!(logv <= h + 1e-9, "n={n} λ={lambda} q={q}");
                    assert!(logv >= h - (n as f64 + 1.0).log2() - 1e-9);
                }
            }
        }
    }

    fn big_log2(v: &BigUint) -> f64 {
        let bits = v.bits();
        if bits <= 60 {
            return v.to_f64().unwrap().log2();
        }
        let shifted: BigUint = v >> (bits - 60);
        shifted.to_f64().unwrap().log2() + (bits - 60) as f64
    }

    #[test]
    fn gv_rates() {
        assert_eq!(gv_css_rate(0.0, 2).unwrap(), 1.0);
        let root = solve_threshold(|d| gv_css_rate(d, 2).unwrap(), 0.0, 0.5, 1e-9).unwrap();
        assert!((root - 0.110028).abs() < 1e-5);
        assert_eq!(
            gv_aqc_rate(0.2, 0.2, 2).unwrap(),
            gv_css_rate(0.2, 2).unwrap()
        );
        assert_eq!(gv_aqc_rate(0.0, 0.3, 2).unwrap(), 1.0 - h2(0.3).unwrap());
        let dz = solve_threshold(|z| gv_aqc_rate(0.01, z, 2).unwrap(), 0.0, 0.5, 1e-10).unwrap();
        assert!((1.0 - h2(0.01).unwrap() - h2(dz).unwrap()).abs() < 1e-8);
        assert_eq!(gv_enlarged_rate(0.0, 2).unwrap(), 1.0);
        let root_e = solve_threshold(|d| gv_enlarged_rate(d, 2).unwrap(), 0.0, 0.5, 1e-10).unwrap();
        assert!(root_e > root);
        assert!(gv_css_rate(0.6, 2).is_err());
    }

    #[test]
    fn enlarged_dominates_css() {
        for q in [2u32, 3, 4] {
            let hi = 1.0 - 1.0 / q as f64;
            for i in 1..1000 {
                let d = hi * i as f64 / 1000.0;
                assert!(gv_enlarged_rate(d, q).unwrap() > gv_css_rate(d, q).unwrap());
            }
        }
    }

    #[test]
    fn channel_rates() {
        assert_eq!(hashing_rate(0.0).unwrap(), 1.0);
        assert_eq!(pccss_channel_rate(0.0, 3.0).unwrap(), 1.0);
        // ζ = 1, p = 0.1: p_X = 1/30, p_Z + p_Y = 2/30
        let expect = 1.0 - naive_h2(4.0 / 30.0) - naive_h2(2.0 / 30.0);
        assert!((pccss_channel_rate(0.1, 1.0).unwrap() - expect).abs() < 1e-12);
        assert!((hashing_rate(0.1).unwrap() - (1.0 - naive_h2(0.1))).abs() < 1e-15);
        assert!(pccss_channel_rate(0.9, 1.0).is_err());
    }

    #[test]
    fn symmetric_channel_threshold() {
        let p = solve_threshold(|p| pccss_channel_rate(p, 1.0).unwrap(), 0.01, 0.3, 1e-10).unwrap();
        // p_Z + p_Y at the zero-rate point
        let qber = 2.0 * p / 3.0;
        assert!((qber - 0.0757).abs() < 5e-4, "qber {qber}");
    }

    #[test]
    fn failure_bounds() {
        assert_eq!(pz_upper_bound(1024, 16, 0.0).unwrap(), 0.0);
        let b = pz_upper_bound(1024, 16, 0.05).unwrap();
        let expect = 64.0 * 32768.0 * 0.05f64.powi(8);
        assert!((b - expect).abs() < 1e-18);
        assert!((b - 8.192e-5).abs() < 1e-9);
        assert!(pz_upper_bound(1000, 16, 0.05).is_err());
    }

    #[test]
    fn union_bound_with_explicit_tail_sum() {
        // Oracle: N2·C(n0,d0+1)·pz^(d0+1)·Σ_i C(M,i) pz^i (1−pz)^(M−i), M = N − d0 − 1.
        let pz = BigRational::new(BigInt::from(1), BigInt::from(20));
        for (n, n0) in [(9usize, 3usize), (20, 5), (24, 8)] {
            let d0 = (n0 - 1) / 2;
            let m = n - d0 - 1;
            let one_minus = BigRational::one() - &pz;
            let mut tail = BigRational::zero();
            for i in 0..=m {
                tail += BigRational::from_integer(binomial(m, i).into())
                    * num_traits::pow(pz.clone(), i)
                    * num_traits::pow(one_minus.clone(), m - i);
            }
            let explicit = BigRational::from_integer(BigInt::from(n / n0))
                * BigRational::from_integer(binomial(n0, d0 + 1).into())
                * num_traits::pow(pz.clone(), d0 + 1)
                * tail;
            assert_eq!(pz_union_bound_exact(n, n0, &pz).unwrap(), explicit);
        }
    }

    #[test]
    fn threshold_solver() {
        assert!((solve_threshold(|x| x - 0.5, 0.0, 1.0, 1e-12).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(
            solve_threshold(|x| x + 1.0, 0.0, 1.0, 1e-6),
            Err(BoundsError::NoSignChange { .. })
        ));
    }

    #[test]
    fn curve_csv() {
        let c = channel_rate_curves(100.0, 0.1);
        let csv = c.to_csv();
        assert!(csv.starts_with("p,hashing,pccss_zeta100,gap\n"));
        assert_eq!(csv.lines().count(), 7);
        let g = gv_curves(2, 0.05);
        assert_eq!(g.grid.len(), 11);
    }

    proptest! {
        #[test]
        fn union_bound_below_closed_form(n2 in 1usize..50, n0 in 2usize..20, pz in 0.0f64..1.0) {
            let n = n2 * n0;
            let exact = pz_union_bound_exact(n, n0, &rational_from_f64(pz)).unwrap();
            let closed = rational_from_f64(n2 as f64)
                * BigRational::from_integer(BigInt::from(2).pow(n0 as u32 - 1))
                * num_traits::pow(rational_from_f64(pz), (n0 - 1) / 2 + 1);
            prop_assert!(exact <= closed);
        }
    }
}
