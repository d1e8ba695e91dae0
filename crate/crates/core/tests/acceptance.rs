//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always print. The process
//! fails if any criterion fails other than those in `KNOWN_UNATTAINABLE`,
//! which still print FAIL.

use gbar::asymptotics::{coeff_c, coeff_d, coeff_g, log_gbar_expansion, LnTable};
use gbar::delange::{delange_range, delange_sample, empirical_c0, f2_from_takagi, fourier_c0};
use gbar::exact::{binomial_product, ExactCap};
use gbar::hp::{ln_natural, HpReal, Precision};
use gbar::orders::{nu_bilinear, nu_digitsum, ord_formula_parts, ord_gbar};
use gbar::primestats::{factorization_identity, sieve};
use gbar::radix::Base;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::{Duration, Instant};

/// `log Ḡ_n >= n^2/2 - (n/2) log n` is false for 3 <= n <= 18 (at n = 3 the
/// left side is log 9 = 2.197 and the right side 2.852); it holds from
/// n = 19 on. Criterion 10 asks for it on all of 3..=2000.
const KNOWN_UNATTAINABLE: &[usize] = &[10];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn base(b: u64) -> Base {
    Base::new(b).unwrap()
}

fn gbar_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gbar"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

/// Exponent of `p` in `v` by repeated division.
fn valuation(v: &BigUint, p: u64) -> u64 {
    let p = BigUint::from(p);
    let mut v = v.clone();
    let mut e = 0;
    loop {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        v = q;
        e += 1;
    }
}

/// `Ḡ_0..=Ḡ_max` via `Ḡ_n = Ḡ_{n-1} n^(n-1) / (n-1)!`.
fn gbar_by_ratio(max: u64) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut fact = BigUint::one(); // (n-1)!
    for n in 1..=max {
        let num = out.last().unwrap() * Pow::pow(BigUint::from(n), n - 1);
        let (q, r) = num.div_rem(&fact);
        assert!(r.is_zero());
        out.push(q);
        fact *= n;
    }
    out
}

fn simple_primes(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

fn digit_sum(mut n: u64, b: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % b;
        n /= b;
    }
    s
}

fn criterion_1() -> Outcome {
    let want = [
        "1 = 1",
        "2 = 2",
        "9 = 3^2",
        "96 = 2^5 * 3",
        "2500 = 2^2 * 5^4",
        "162000 = 2^4 * 3^4 * 5^3",
        "26471025 = 3^2 * 5^2 * 7^6",
    ];
    let mut bad = Vec::new();
    for (i, w) in want.iter().enumerate() {
        let n = (i + 1).to_string();
        let (code, out) = gbar_cli(&["gbar", &n, "--factor"]);
        if code != 0 || out.trim_end() != *w {
            bad.push(format!("n={n}: {out:?}"));
        }
    }
    outcome(bad.is_empty(), format!("n = 1..7 factorizations, mismatches {bad:?}"))
}

fn criterion_2() -> Outcome {
    let golden = include_str!("golden/table_p2_max16.csv");
    let (code, out) = gbar_cli(&["table", "--p", "2", "--max", "16"]);
    let rows = golden.lines().count() - 1;
    outcome(
        code == 0 && out == golden,
        format!("{rows} rows x 7 columns, byte-identical = {}", out == golden),
    )
}

fn criterion_3() -> Outcome {
    let primes = simple_primes(50);
    let gs = gbar_by_ratio(300);
    let mut bad = Vec::new();
    for n in 1..=300u64 {
        for &p in &primes {
            let want = valuation(&gs[n as usize], p) as u128;
            let got = [
                ord_formula_parts(n, base(p)).unwrap().value,
                nu_digitsum(n, base(p)).unwrap().value,
                nu_bilinear(n, base(p)).unwrap().value,
            ];
            if got.iter().any(|&g| g != want) {
                bad.push((n, p));
            }
        }
    }
    let mut disagree = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 1..=10_000u64 {
            let a = ord_formula_parts(n, base(p)).unwrap().value;
            let b = nu_digitsum(n, base(p)).unwrap().value;
            let c = nu_bilinear(n, base(p)).unwrap().value;
            if a != b || b != c {
                disagree.push((n, p));
            }
        }
    }
    outcome(
        bad.is_empty() && disagree.is_empty(),
        format!(
            "oracle mismatches {} (p <= 50, n <= 300); formula disagreements {} (n <= 10^4)",
            bad.len(),
            disagree.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut bad = 0;
    for b in 2..=16u64 {
        for n in 1..=100_000u64 {
            if nu_digitsum(n, base(b)).unwrap().value != nu_bilinear(n, base(b)).unwrap().value {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("b = 2..16, n <= 10^5, exceptions {bad}"))
}

/// One nonzero digit in base `p`.
fn single_digit(n: u64, p: u64) -> bool {
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    n > 0 && m < p
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for p in [2u64, 3, 5] {
        for k in 0..=10u32 {
            let pk = p.pow(k) as u128;
            for a in 1..p {
                let n = a * p.pow(k);
                let want = a as u128 * (k as u128 * pk - (pk - 1) / (p as u128 - 1));
                if ord_gbar(n, base(p)).unwrap() != want {
                    bad.push(("max", p, n));
                }
                if ord_gbar(n - 1, base(p)).unwrap() != 0 {
                    bad.push(("zero", p, n - 1));
                }
            }
        }
        // M_p(n) = sum_j j a_j p^j - sum_j a_j (p^j - 1)/(p - 1)
        for n in 1..=10_000u64 {
            let (mut m, mut pow, mut j, mut rest) = (0i128, 1i128, 0i128, n);
            while rest > 0 {
                let a = (rest % p) as i128;
                m += j * a * pow - a * (pow - 1) / (p as i128 - 1);
                rest /= p;
                pow *= p as i128;
                j += 1;
            }
            let ord = ord_gbar(n, base(p)).unwrap() as i128;
            if (ord == m) != single_digit(n, p) {
                bad.push(("other max", p, n));
            }
            if (ord == 0) != single_digit(n + 1, p) {
                bad.push(("other zero", p, n));
            }
        }
    }
    outcome(bad.is_empty(), format!("p in {{2,3,5}}, k <= 10, n <= 10^4; violations {bad:?}"))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for &p in &simple_primes(50) {
        for n in 2..=10_000u64 {
            let ord = ord_gbar(n, base(p)).unwrap() as f64;
            let bound = n as f64 * (n as f64).ln() / (p as f64).ln();
            if !(ord >= 0.0 && ord < bound) {
                bad.push((p, n));
            }
        }
    }
    let (code, csv) = gbar_cli(&["series", "--p", "2", "--max", "1023", "--scaled"]);
    let values: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    let in_range = values.iter().all(|v| (0.0..2.0).contains(v));
    let max = values.iter().cloned().fold(0.0, f64::max);
    outcome(
        bad.is_empty() && code == 0 && in_range && values.len() == 1022,
        format!(
            "0 <= ord < n log_p n for p <= 50, 2 <= n <= 10^4 (violations {}); scaled series max {max:.4}",
            bad.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut equalities = 0;
    for b in 2..=10u64 {
        let mut s: u64 = 0; // S_b(n) = sum_{j<n} d_b(j)
        let mut next_power = 1u64;
        let mut k = 0u64;
        for n in 1..=100_000u64 {
            s += digit_sum(n - 1, b);
            if n == next_power {
                if 2 * s != (b - 1) * k * n {
                    bad.push((b, n));
                }
                equalities += 1;
                next_power *= b;
                k += 1;
            } else {
                let rhs = (b - 1) as f64 * n as f64 * (n as f64).ln() / (b as f64).ln();
                if !(rhs - 2.0 * s as f64 > 1e-6 * n as f64) {
                    bad.push((b, n));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("b <= 10, n <= 10^5: {equalities} equalities, all at powers; violations {bad:?}"),
    )
}

fn criterion_8() -> Outcome {
    let prec = Precision::digits(50);
    let ns = [64u64, 128, 256, 512, 1024];
    let exact: Vec<HpReal> = ns
        .iter()
        .map(|&n| ln_natural(&binomial_product(n).unwrap(), prec))
        .collect();
    let mut spreads = Vec::new();
    let mut band_ok = true;
    for order in 0..=4usize {
        let scaled: Vec<f64> = ns
            .iter()
            .zip(&exact)
            .map(|(&n, e)| {
                let r = e - &log_gbar_expansion(n, order, prec).unwrap().value;
                r.to_f64() * (n as f64).powi(order as i32 + 1)
            })
            .collect();
        let mags: Vec<f64> = scaled.iter().map(|v| v.abs()).collect();
        let spread = mags.iter().cloned().fold(0.0, f64::max) / mags.iter().cloned().fold(f64::MAX, f64::min);
        let one_sign = scaled.iter().all(|v| v.signum() == scaled[0].signum());
        band_ok &= one_sign && spread <= 4.0 && mags.iter().all(|m| m.is_finite() && *m > 0.0);
        spreads.push(spread);
    }
    let identity = (1..=12).all(|k| coeff_g(k).unwrap() == coeff_d(k).unwrap() - coeff_c(k).unwrap());

    // Read g_4 off the exact value at n = 1024: the order-3 residual is
    // g_4/n^4 + g_5/n^5 + O(n^-6), with g_5 = -1/1260.
    let n = 1024u64;
    let r3 = &exact[4] - &log_gbar_expansion(n, 3, prec).unwrap().value;
    let measured = r3.to_f64() * (n as f64).powi(4) + 1.0 / (1260.0 * n as f64);
    let (closed, rival) = (-1.0 / 840.0, -1.0 / 860.0);
    let g4_closed_wins = (measured - closed).abs() < 1e-6 && (measured - rival).abs() > 1e-5;
    let g4_exact = coeff_g(4).unwrap().to_string() == "-1/840";
    outcome(
        band_ok && identity && g4_closed_wins && g4_exact,
        format!(
            "factor spreads {:?} for N = 0..4; g = d - c for k <= 12: {identity}; \
             measured g_4 = {measured:.9} (-1/840 = {closed:.9}, -1/860 = {rival:.9}) -> -1/840",
            spreads.iter().map(|s| format!("{s:.3}")).collect::<Vec<_>>()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut positive = 0;
    let mut samples = 0;
    for b in 2..=10u64 {
        for s in delange_range(1, 100_001, base(b)).unwrap() {
            samples += 1;
            if s.value > 0.0 {
                positive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n: u64 = rng.random_range(1..=1_000_000);
        // f_2 from first principles: S_2(n)/n - (1/2) log2 n.
        let s: u64 = (0..n).map(|j| j.count_ones() as u64).sum();
        let direct = s as f64 / n as f64 - 0.5 * (n as f64).log2();
        let x = delange_sample(n, base(2)).unwrap().x;
        worst = worst.max((f2_from_takagi(x).unwrap() - direct).abs());
    }
    let c0 = fourier_c0(base(2));
    let mean = empirical_c0(base(2), 100_000, 0x5eed).unwrap();
    outcome(
        positive == 0 && worst < 1e-10 && (c0 - mean).abs() < 5e-3,
        format!(
            "{samples} samples, {positive} positive; bridge max error {worst:.2e}; c_2(0) = {c0:.6}, mean {mean:.6}"
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut factor_bad = Vec::new();
    for n in 1..=300u64 {
        if factorization_identity(n, ExactCap::default()).is_err() {
            factor_bad.push(n);
        }
    }

    let table = sieve(1_000_000).unwrap();
    let check_primes = simple_primes(10_000);
    let sieve_matches = table.primes_up_to(10_000) == &check_primes[..];
    let mut cheb_bad = Vec::new();
    for n in (2..=10_000u64).chain([100_000, 1_000_000]) {
        let pi = table.pi(n) as f64;
        if pi < n as f64 / (2.0 * (n as f64).ln()) - 0.5 {
            cheb_bad.push(n);
        }
    }

    let logs = LnTable::new(2000, Precision::digits(50)).log_gbar_sweep();
    let lower_bad: Vec<u64> = (3..=2000u64)
        .filter(|&n| {
            let nf = n as f64;
            logs[n as usize].to_f64() < nf * nf / 2.0 - nf / 2.0 * nf.ln()
        })
        .collect();

    outcome(
        factor_bad.is_empty() && sieve_matches && cheb_bad.is_empty() && lower_bad.is_empty(),
        format!(
            "factorization identity failures {factor_bad:?}; Chebyshev bound failures {cheb_bad:?}; \
             lower inequality fails at n = {lower_bad:?}"
        ),
    )
}

fn main() {
    let criteria: [(fn() -> Outcome, Duration); 10] = [
        (criterion_1, Duration::from_secs(1)),
        (criterion_2, Duration::from_secs(1)),
        (criterion_3, Duration::from_secs(120)),
        (criterion_4, Duration::from_secs(60)),
        (criterion_5, Duration::from_secs(120)),
        (criterion_6, Duration::from_secs(120)),
        (criterion_7, Duration::from_secs(120)),
        (criterion_8, Duration::from_secs(60)),
        (criterion_9, Duration::from_secs(120)),
        (criterion_10, Duration::from_secs(120)),
    ];
    let mut unexpected = Vec::new();
    for (i, (f, limit)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let passed = o.passed && took <= *limit;
        let tag = if passed { "PASS" } else { "FAIL" };
        let note = if !passed && KNOWN_UNATTAINABLE.contains(&id) {
            " [known unattainable]"
        } else {
            ""
        };
        println!(
            "criterion {id:>2} {tag}{note} ({:.2} s, limit {} s): {}",
            took.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
        if !passed && !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
