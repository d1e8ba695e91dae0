//! Named invariant sweeps, shared by the `verify` subcommand.

use crate::asymptotics::{coeff_c, coeff_d, coeff_g, gbar_residual, measured_g_coefficient, LnTable};
use crate::delange::{delange_range, delange_sample, dg_magnitude_check, empirical_c0, f2_from_takagi, fourier_c0};
use crate::error::{Error, Result};
use crate::exact::{binomial_product, ord_trial_division, ExactCap};
use crate::hp::Precision;
use crate::orders::{
    comparison_row, is_digit_times_power, is_digit_times_power_minus_one, nu_bilinear, nu_digitsum,
    ord_at_power_multiple, ord_gbar, upper_bound_m,
};
use crate::primestats::{chebyshev_lower_bound, factorization_identity, lower_chain_rhs, pnt_residual, sieve};
use crate::radix::{drazin_griffith_cmp, exact_power, Base};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

pub const SUITES: &[&str] = &[
    "factorizations",
    "formulas",
    "appendix-b",
    "extremes",
    "bounds",
    "drazin-griffith",
    "asymptotics",
    "delange",
    "prime-chain",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Passes when `failures` is empty; otherwise reports the first few.
    fn add_sweep<T: std::fmt::Debug>(&mut self, name: &str, tested: usize, failures: &[T]) {
        let detail = if failures.is_empty() {
            format!("{tested} cases")
        } else {
            format!("{} of {tested} failed, first: {:?}", failures.len(), &failures[..failures.len().min(5)])
        };
        self.add(name, failures.is_empty(), detail);
    }
}

fn base(b: u64) -> Base {
    Base::new(b).expect("suite bases are >= 2")
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let suite = SUITES
        .iter()
        .copied()
        .find(|&s| s == name)
        .ok_or_else(|| Error::domain("suite", name, "the names listed by `verify --suite list`"))?;
    let mut c = Checks(Vec::new());
    match suite {
        "factorizations" => factorizations(&mut c)?,
        "formulas" => formulas(&mut c)?,
        "appendix-b" => appendix_b(&mut c)?,
        "extremes" => extremes(&mut c)?,
        "bounds" => bounds(&mut c)?,
        "drazin-griffith" => drazin_griffith(&mut c),
        "asymptotics" => asymptotics(&mut c)?,
        "delange" => delange(&mut c)?,
        "prime-chain" => prime_chain(&mut c)?,
        _ => unreachable!(),
    }
    Ok(SuiteReport { suite, checks: c.0 })
}

const FIRST_FACTORIZATIONS: [&str; 7] = [
    "1 = 1",
    "2 = 2",
    "9 = 3^2",
    "96 = 2^5 * 3",
    "2500 = 2^2 * 5^4",
    "162000 = 2^4 * 3^4 * 5^3",
    "26471025 = 3^2 * 5^2 * 7^6",
];

fn factorizations(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    for (i, want) in FIRST_FACTORIZATIONS.iter().enumerate() {
        let got = factorization_identity(i as u64 + 1, ExactCap::default())?.display();
        if got != *want {
            bad.push(got);
        }
    }
    c.add_sweep("first seven factorizations", 7, &bad);
    Ok(())
}

fn formulas(c: &mut Checks) -> Result<()> {
    let primes = sieve(50)?;
    let mut bad = Vec::new();
    let mut tested = 0;
    for n in 1..=300u64 {
        let g = binomial_product(n)?;
        for &p in primes.primes() {
            let want = ord_trial_division(&g, p)? as u128;
            let row = comparison_row(n, base(p));
            tested += 1;
            match row {
                Ok(r) if r.value() == want => {}
                _ => bad.push((n, p)),
            }
        }
    }
    c.add_sweep("three formulas equal trial division, p <= 50, n <= 300", tested, &bad);

    let mut bad = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 1..=10_000u64 {
            if comparison_row(n, base(p)).is_err() {
                bad.push((n, p));
            }
        }
    }
    c.add_sweep("three formulas agree, n <= 10^4", 60_000, &bad);
    Ok(())
}

fn appendix_b(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    for b in 2..=16u64 {
        for n in 1..=100_000u64 {
            if nu_digitsum(n, base(b))?.value != nu_bilinear(n, base(b))?.value {
                bad.push((n, b));
            }
        }
    }
    c.add_sweep("digit-sum and bilinear forms agree, b <= 16, n <= 10^5", 1_500_000, &bad);
    Ok(())
}

fn extremes(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    let mut tested = 0;
    for p in [2u64, 3, 5] {
        for k in 0..=10u32 {
            for a in 1..p {
                let n = a * p.pow(k);
                let want = ord_at_power_multiple(a, k, base(p)).ok_or(Error::Overflow("a p^k"))?;
                tested += 1;
                if ord_gbar(n, base(p))? != want || upper_bound_m(n, base(p)) != want {
                    bad.push(("max", p, n));
                }
                if ord_gbar(n - 1, base(p))? != 0 {
                    bad.push(("zero", p, n - 1));
                }
            }
        }
    }
    c.add_sweep("values at a p^k and a p^k - 1", tested, &bad);

    let mut bad = Vec::new();
    for p in [2u64, 3, 5] {
        for n in 1..=10_000u64 {
            let ord = ord_gbar(n, base(p))?;
            if (ord == upper_bound_m(n, base(p))) != is_digit_times_power(n, base(p)) {
                bad.push(("max", p, n));
            }
            if (ord == 0) != is_digit_times_power_minus_one(n, base(p)) {
                bad.push(("zero", p, n));
            }
        }
    }
    c.add_sweep("no other n <= 10^4 attains either extreme", 30_000, &bad);
    Ok(())
}

fn bounds(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 2..=10_000u64 {
            let ord = ord_gbar(n, base(p))? as f64;
            let nf = n as f64;
            if ord >= nf * nf.ln() / (p as f64).ln() {
                bad.push((p, n));
            }
        }
    }
    c.add_sweep("ord_p < n log_p n, n <= 10^4", 6 * 9_999, &bad);

    let mut bad = Vec::new();
    for n in 2..=1023u64 {
        let s = scaled_order(n, base(2))?;
        if !(0.0..2.0).contains(&s) {
            bad.push((n, s));
        }
    }
    c.add_sweep("scaled series in [0, 2), p = 2", 1022, &bad);
    Ok(())
}

/// `ord_p(Ḡ_n) / ((1/2) n log_p n)` for `n >= 2`.
pub fn scaled_order(n: u64, p: Base) -> Result<f64> {
    let nf = n as f64;
    Ok(ord_gbar(n, p)? as f64 / (0.5 * nf * nf.ln() / (p.get() as f64).ln()))
}

fn drazin_griffith(c: &mut Checks) {
    let mut bad = Vec::new();
    for b in 2..=10u64 {
        for n in 1..=100_000u64 {
            let ord = drazin_griffith_cmp(n, base(b));
            let power = exact_power(n, base(b)).is_some();
            if ord == Ordering::Greater || (ord == Ordering::Equal) != power {
                bad.push((b, n));
            }
        }
    }
    c.add_sweep("S_b(n) <= ((b-1)/2) n log_b n, equality only at powers", 900_000, &bad);
}

fn asymptotics(c: &mut Checks) -> Result<()> {
    let table = LnTable::new(1024, Precision::default());
    for order in 0..=4usize {
        let scaled: Vec<f64> = [64u64, 128, 256, 512, 1024]
            .iter()
            .map(|&n| {
                let r = gbar_residual(n, order, &table)?;
                Ok(r.to_f64() * (n as f64).powi(order as i32 + 1))
            })
            .collect::<Result<_>>()?;
        let same_sign = scaled.iter().all(|v| v.signum() == scaled[0].signum());
        let mags: Vec<f64> = scaled.iter().map(|v| v.abs()).collect();
        let ratio = mags.iter().cloned().fold(0.0, f64::max) / mags.iter().cloned().fold(f64::MAX, f64::min);
        c.add(
            &format!("residual * n^{} within factor 4, order {order}", order + 1),
            same_sign && ratio <= 4.0,
            format!(
                "spread {ratio:.4}, values [{}]",
                scaled.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(", ")
            ),
        );
    }
    let identity = (1..=12).all(|k| coeff_g(k).ok() == Some(coeff_d(k).unwrap() - coeff_c(k).unwrap()));
    c.add("g_k = d_k - c_k for k <= 12", identity, "exact rationals");
    let m = measured_g_coefficient(1024, 4, &table)?.to_f64();
    let estimate = m + 1.0 / (1260.0 * 1024.0);
    let (closed, rival) = (-1.0 / 840.0, -1.0 / 860.0);
    c.add(
        "g_4 from the exact oracle",
        (estimate - closed).abs() < (estimate - rival).abs() && (estimate - closed).abs() < 1e-6,
        format!("measured {estimate:.9}, -1/840 = {closed:.9}, -1/860 = {rival:.9}"),
    );
    Ok(())
}

fn delange(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    for b in [2u64, 3, 10] {
        for s in delange_range(1, 100_001, base(b))? {
            let zero_ok = (s.value == 0.0) == exact_power(s.n_used, base(b)).is_some();
            if s.value > 0.0 || !zero_ok {
                bad.push((b, s.n_used, s.value));
            }
        }
    }
    c.add_sweep("f_b <= 0, zero only at powers, n <= 10^5", 300_000, &bad);

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=1_000_000u64);
        let s = delange_sample(n, base(2))?;
        let err = (f2_from_takagi(s.x)? - s.value).abs();
        worst = worst.max(err);
        if err >= 1e-10 {
            bad.push((n, err));
        }
    }
    c.add_sweep("Takagi formula matches digit sums, 1000 random n", 1000, &bad);

    let mean = empirical_c0(base(2), 100_000, 2024)?;
    let c0 = fourier_c0(base(2));
    c.add(
        "constant Fourier term against the sample mean, b = 2",
        (mean - c0).abs() < 5e-3,
        format!("closed form {c0:.6}, mean {mean:.6}"),
    );

    for b in 3..=10u64 {
        let r = dg_magnitude_check(base(b), 100_000)?;
        c.add(
            &format!("magnitude bound, b = {b}"),
            r.ok,
            format!("max {:.6} < {:.6}", r.observed_max, r.bound),
        );
    }
    Ok(())
}

fn prime_chain(c: &mut Checks) -> Result<()> {
    let mut bad = Vec::new();
    for n in 1..=300u64 {
        if factorization_identity(n, ExactCap::default()).is_err() {
            bad.push(n);
        }
    }
    c.add_sweep("prime factorization reproduces Ḡ_n, n <= 300", 300, &bad);

    let table = sieve(1_000_000)?;
    let mut bad = Vec::new();
    let ns: Vec<u64> = (2..=10_000).chain([100_000, 1_000_000]).collect();
    for &n in &ns {
        let r = chebyshev_lower_bound(n, &table)?;
        if !r.ok || !r.upper_chain {
            bad.push(n);
        }
    }
    c.add_sweep("π(n) >= n/(2 log n) - 1/2 and the upper inequality", ns.len(), &bad);

    let logs = LnTable::new(2000, Precision::default()).log_gbar_sweep();
    let failing: Vec<u64> = (3..=2000u64)
        .filter(|&n| logs[n as usize].to_f64() < lower_chain_rhs(n))
        .collect();
    let above = failing.iter().all(|&n| n < 19);
    c.add(
        "log Ḡ_n >= n^2/2 - (n/2) log n for 19 <= n <= 2000",
        above,
        format!("fails below the threshold at n = {failing:?}"),
    );

    let r: Vec<f64> = [1_000u64, 10_000, 100_000, 1_000_000]
        .iter()
        .map(|&n| pnt_residual(n, &table, ExactCap::default()))
        .collect::<Result<_>>()?;
    let decreasing = r.windows(2).all(|w| w[1].abs() < w[0].abs());
    c.add(
        "prime-counting residual shrinks across decades",
        decreasing,
        format!("{r:.5?}"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn quick_suites_pass() {
        for s in ["factorizations", "extremes", "asymptotics"] {
            let r = run_suite(s).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
