//! The periodic function `f_b` in `S_b(n) = ((b-1)/2) n log_b n + f_b(log_b n) n`,
//! the Takagi function, and the link between the two in base 2.
//!
//! `f_b` is only evaluated on the dense set `{frac(log_b n)}`; there is no
//! interpolation to arbitrary `x`.

use crate::error::{Error, Result};
use crate::radix::{ilog, running_digit_sum, Base, DigitSumStream};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DelangeSample {
    /// `frac(log_b n)`.
    pub x: f64,
    pub n_used: u64,
    pub value: f64,
}

/// `f_b(log_b n)` for `n >= 1`, from the exact `S_b(n)`.
///
/// Written as `(2 S - (b-1) k n) / (2n) - ((b-1)/2) frac(log_b n)` with
/// `k = floor(log_b n)` so that the integer part cancels exactly and
/// `n = b^k` gives exactly zero.
pub fn delange_sample(n: u64, b: Base) -> Result<DelangeSample> {
    if n == 0 {
        return Err(Error::domain("n", n, "n >= 1"));
    }
    let s = running_digit_sum(n, b);
    Ok(sample_from_sum(n, s, b))
}

fn sample_from_sum(n: u64, s: u128, b: Base) -> DelangeSample {
    let k = ilog(n, b);
    let bm1 = (b.get() - 1) as i128;
    let lead = b.get().pow(k);
    let x = if lead == n {
        0.0
    } else {
        (n as f64 / lead as f64).ln() / (b.get() as f64).ln()
    };
    let num = 2 * s as i128 - bm1 * k as i128 * n as i128;
    let value = num as f64 / (2.0 * n as f64) - bm1 as f64 / 2.0 * x;
    DelangeSample { x, n_used: n, value }
}

pub fn delange_at_integer(n: u64, b: Base) -> Result<f64> {
    delange_sample(n, b).map(|s| s.value)
}

/// Samples for every `n` in `[start, end)` using the running digit-sum
/// stream.
pub fn delange_range(start: u64, end: u64, b: Base) -> Result<Vec<DelangeSample>> {
    if start == 0 {
        return Err(Error::domain("start", start, "start >= 1"));
    }
    Ok(DigitSumStream::new(start, end, b)?
        .map(|row| sample_from_sum(row.n, row.running_sum, b))
        .collect())
}

/// `sum_{k=0}^{M} 2^-k dist(2^k x, Z)` with `M = ceil(log2(1/tol)) + 1`.
///
/// Every finite `f64` is a dyadic rational, and doubling and taking
/// fractional parts are exact in binary floating point, so the loop stops
/// as soon as the orbit hits an integer; for such inputs the result is the
/// exact finite sum up to the final rounding of the accumulation.
pub fn takagi(x: f64, tol: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("x", x, "[0, 1]"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "tol > 0"));
    }
    let m = (1.0 / tol).log2().ceil().max(0.0) as u32 + 1;
    let mut y = x;
    let mut scale = 1.0;
    let mut sum = 0.0;
    for _ in 0..=m {
        let f = y - y.floor();
        if f == 0.0 {
            break;
        }
        sum += scale * f.min(1.0 - f);
        y = 2.0 * f;
        scale *= 0.5;
    }
    Ok(sum)
}

const TAKAGI_TOL: f64 = 1e-17;

/// `f_2(x) = -(1/2) (τ(y)/2^x - 2y/2^x + x)` with `y = 2^x - 1`.
///
/// Follows from `S_2(2^m + r) = S_2(2^m) + S_2(r) + r` and
/// `S_2(2^m t) = 2^(m-1) (m t - τ(t))` for dyadic `t` in `[0, 1]`.
/// `x` is reduced mod 1 first, except that `x = 1` is evaluated as is.
pub fn f2_from_takagi(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("x", x, "finite reals"));
    }
    let x = if x == 1.0 { x } else { x.rem_euclid(1.0) };
    let p = x.exp2();
    let y = p - 1.0;
    let tau = takagi(y.clamp(0.0, 1.0), TAKAGI_TOL)?;
    Ok(-0.5 * (tau / p - 2.0 * y / p + x))
}

/// Constant Fourier coefficient
/// `c_b(0) = (b-1)/(2 log b) (log 2π - 1) - (b+1)/4`.
pub fn fourier_c0(b: Base) -> f64 {
    let bf = b.get() as f64;
    (bf - 1.0) / (2.0 * bf.ln()) * ((2.0 * std::f64::consts::PI).ln() - 1.0) - (bf + 1.0) / 4.0
}

/// Smallest `m` with `b^m >= 2^min_bits`, reduced if `b^(m+1)` would overflow.
fn window_exponent(b: Base, min_bits: f64) -> u32 {
    let bits = (b.get() as f64).log2();
    let mut m = (min_bits / bits).ceil().max(1.0) as u32;
    while m > 1 && b.get().checked_pow(m + 1).is_none() {
        m -= 1;
    }
    m
}

/// Mean of `f_b` over `samples` points with `x` uniform in `[0, 1)`,
/// each realized as `n = floor(b^(m + x))` in the window `[b^m, b^(m+1))`.
///
/// Sampling `n` itself uniformly would weight `x` by `b^x`, which biases
/// the mean of a non-constant periodic function.
pub fn empirical_c0(b: Base, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::domain("samples", samples, "samples >= 1"));
    }
    let m = window_exponent(b, 20.0);
    let lo = b.get().pow(m);
    let hi = b.get().checked_pow(m + 1).map_or(u64::MAX, |v| v - 1);
    let lnb = (b.get() as f64).ln();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    for _ in 0..samples {
        let x: f64 = rng.random();
        let n = (((m as f64 + x) * lnb).exp() as u64).clamp(lo, hi);
        total += delange_at_integer(n, b)?;
    }
    Ok(total / samples as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagnitudeReport {
    pub b: u64,
    pub samples: usize,
    /// Largest `(2/(b-1)) |f_b|` seen.
    pub observed_max: f64,
    /// `((b-1)/(b-2)) (log(b-1)/log b)`.
    pub bound: f64,
    pub ok: bool,
}

/// Samples `f_b` at every `n` in `[1, samples]` and compares the largest
/// normalized magnitude with the closed-form bound. Needs `b >= 3`.
pub fn dg_magnitude_check(b: Base, samples: usize) -> Result<MagnitudeReport> {
    if b.get() < 3 {
        return Err(Error::domain("b", b.get(), "b >= 3"));
    }
    let bf = b.get() as f64;
    let bound = (bf - 1.0) / (bf - 2.0) * ((bf - 1.0).ln() / bf.ln());
    let mut observed_max: f64 = 0.0;
    for s in delange_range(1, samples as u64 + 1, b)? {
        observed_max = observed_max.max(2.0 / (bf - 1.0) * s.value.abs());
    }
    Ok(MagnitudeReport {
        b: b.get(),
        samples,
        observed_max,
        bound,
        ok: observed_max < bound,
    })
}

/// `k` points `(x, f_b(x))` with `x` close to `i/k`.
///
/// In base 2 the values come from the Takagi formula at exactly `x = i/k`.
/// Other bases use the integer `n = ceil(b^(m + i/k))` in a window with
/// `b^m >= 2^40`, and report that sample's own `x`.
pub fn delange_grid(b: Base, k: usize) -> Result<Vec<(f64, f64)>> {
    if k == 0 {
        return Err(Error::domain("grid", k, "grid >= 1"));
    }
    if b.get() == 2 {
        return (0..k)
            .map(|i| {
                let x = i as f64 / k as f64;
                f2_from_takagi(x).map(|v| (x, v))
            })
            .collect();
    }
    let m = window_exponent(b, 40.0);
    let lo = b.get().pow(m);
    let hi = b.get().checked_pow(m + 1).map_or(u64::MAX, |v| v - 1);
    let lnb = (b.get() as f64).ln();
    (0..k)
        .map(|i| {
            let n = if i == 0 {
                lo
            } else {
                let t = (m as f64 + i as f64 / k as f64) * lnb;
                (t.exp().ceil() as u64).clamp(lo, hi)
            };
            delange_sample(n, b).map(|s| (s.x, s.value))
        })
        .collect()
}
