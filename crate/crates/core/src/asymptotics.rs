//! Truncated asymptotic expansions of `log Γ(z+1)`, `log G(z+1)`,
//! `log N*_n`, `log D*_n` and `log Ḡ_n` with exact rational coefficients,
//! plus exact high-precision logarithms to measure their residuals.
//!
//! All of these series diverge as the order grows. They are useful only
//! up to an optimal truncation that depends on `n`, so the public entry
//! points cap the order at [`MAX_ORDER`].

use crate::error::{Error, Result};
use crate::hp::{ln2, ln_u64, pi, HpReal, Precision};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::OnceLock;

pub type Rational = BigRational;

pub const MAX_ORDER: usize = 12;

/// `B_0, ..., B_upto` from `sum_{j<=m} C(m+1, j) B_j = 0`, so `B_1 = -1/2`.
pub fn bernoulli_numbers(upto: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=upto {
        let mut binom = BigInt::one(); // C(m+1, j)
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * Rational::from_integer(binom.clone());
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(k: usize) -> Rational {
    bernoulli_numbers(k).pop().unwrap()
}

fn check_index(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::domain("k", k, "k >= 1"))
    } else {
        Ok(())
    }
}

/// Coefficient of `n^-k` in `log N*_n`.
pub fn coeff_c(k: usize) -> Result<Rational> {
    check_index(k)?;
    Ok(c_unchecked(k))
}

/// Coefficient of `n^-k` in `log D*_n`.
pub fn coeff_d(k: usize) -> Result<Rational> {
    check_index(k)?;
    Ok(d_unchecked(k))
}

/// Coefficient of `n^-k` in `log Ḡ_n`, from its own closed form.
pub fn coeff_g(k: usize) -> Result<Rational> {
    check_index(k)?;
    Ok(g_unchecked(k))
}

fn c_unchecked(k: usize) -> Rational {
    if k % 2 == 1 {
        let m = k as i64 + 1; // 2k' with k = 2k' - 1
        bernoulli(m as usize) / Rational::from_integer(BigInt::from(m * (m - 1)))
    } else {
        let m = k as i64;
        bernoulli(k + 2) / Rational::from_integer(BigInt::from(m * (m + 2)))
    }
}

fn d_unchecked(k: usize) -> Rational {
    if k % 2 == 1 {
        Rational::zero()
    } else {
        let m = k as i64;
        -bernoulli(k + 2) / Rational::from_integer(BigInt::from(m * (m + 1) * (m + 2)))
    }
}

fn g_unchecked(k: usize) -> Rational {
    if k % 2 == 1 {
        -c_unchecked(k)
    } else {
        let m = k as i64;
        -bernoulli(k + 2) / Rational::from_integer(BigInt::from(m * (m + 1)))
    }
}

/// `B_{2k} / (2k (2k-1))`, the coefficient of `z^(1-2k)` in `log Γ(z+1)`.
pub fn gamma_coeff(k: usize) -> Result<Rational> {
    check_index(k)?;
    Ok(c_unchecked(2 * k - 1))
}

/// `B_{2k+2} / (2k (2k+2))`, the coefficient of `z^-2k` in `log G(z+1)`.
pub fn barnes_coeff(k: usize) -> Result<Rational> {
    check_index(k)?;
    Ok(c_unchecked(2 * k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub label: String,
    pub value: HpReal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub value: HpReal,
    pub order: usize,
    pub terms: Vec<ExpansionTerm>,
}

struct Builder {
    prec: Precision,
    terms: Vec<ExpansionTerm>,
}

impl Builder {
    fn new(prec: Precision) -> Self {
        Builder {
            prec,
            terms: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, value: HpReal) {
        self.terms.push(ExpansionTerm {
            label: label.into(),
            value,
        });
    }

    /// `coeff * x^-power` for each nonzero coefficient.
    fn tail(&mut self, name: &str, var: &str, coeffs: impl Iterator<Item = (usize, Rational)>, x: &HpReal) {
        let recip = HpReal::one(self.prec).div(x);
        let mut pow = HpReal::one(self.prec);
        let mut at = 0;
        for (power, c) in coeffs {
            while at < power {
                pow = &pow * &recip;
                at += 1;
            }
            if c.is_zero() {
                continue;
            }
            let v = &HpReal::from_rational(&c, self.prec) * &pow;
            self.push(format!("{name}_{power} / {var}^{power}  [{name}_{power} = {c}]"), v);
        }
    }

    fn finish(self, order: usize) -> ExpansionResult {
        let mut value = HpReal::zero(self.prec);
        for t in &self.terms {
            value = &value + &t.value;
        }
        ExpansionResult {
            value,
            order,
            terms: self.terms,
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::domain("order", order, "0 <= order <= 12"))
    } else {
        Ok(())
    }
}

fn check_arg(z: &HpReal) -> Result<()> {
    if *z < HpReal::from_int(2, z.precision()) {
        Err(Error::domain("z", z.to_f64(), "z >= 2"))
    } else {
        Ok(())
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        Err(Error::domain("n", n, "n >= 2"))
    } else {
        Ok(())
    }
}

/// `log(2π)`.
pub fn log_two_pi(prec: Precision) -> HpReal {
    &ln2(prec) + &pi(prec).ln()
}

/// `z log z - z + (1/2) log z + (1/2) log 2π + sum_{k<=N} B_{2k}/(2k(2k-1)) z^(1-2k)`.
pub fn log_gamma_series(z: &HpReal, order: usize) -> Result<ExpansionResult> {
    check_arg(z)?;
    check_order(order)?;
    let prec = z.precision();
    let lz = z.ln();
    let mut b = Builder::new(prec);
    b.push("z log z", z * &lz);
    b.push("-z", -z);
    b.push("(1/2) log z", lz.div_int(2));
    b.push("(1/2) log 2pi", log_two_pi(prec).div_int(2));
    let recip2 = {
        let r = HpReal::one(prec).div(z);
        &r * &r
    };
    let mut pow = z.clone();
    for k in 1..=order {
        pow = &pow * &recip2;
        let c = c_unchecked(2 * k - 1);
        let v = &HpReal::from_rational(&c, prec) * &pow;
        b.push(format!("B_{}/({}*{}) z^{}", 2 * k, 2 * k, 2 * k - 1, 1 - 2 * k as i64), v);
    }
    Ok(b.finish(order))
}

/// `(1/2) z^2 log z - (3/4) z^2 + (1/2) log(2π) z - (1/12) log z + 1/12 - log A
///  + sum_{k<=N} B_{2k+2}/(2k(2k+2)) z^-2k`.
pub fn log_barnes_g_series(z: &HpReal, order: usize) -> Result<ExpansionResult> {
    check_arg(z)?;
    check_order(order)?;
    let prec = z.precision();
    let lz = z.ln();
    let z2 = z * z;
    let mut b = Builder::new(prec);
    b.push("(1/2) z^2 log z", (&z2 * &lz).div_int(2));
    b.push("-(3/4) z^2", -&z2.mul_int(3).div_int(4));
    b.push("(1/2) log(2pi) z", (&log_two_pi(prec) * z).div_int(2));
    b.push("-(1/12) log z", -&lz.div_int(12));
    b.push(
        "1/12 - log A",
        &HpReal::from_ratio(1, 12, prec) - &glaisher_log(prec),
    );
    b.tail("b", "z", (1..=order).map(|k| (2 * k, c_unchecked(2 * k))), z);
    Ok(b.finish(order))
}

fn superfac_unchecked(n: u64, order: usize, prec: Precision) -> ExpansionResult {
    let x = HpReal::from_int(n, prec);
    let l = ln_u64(n, prec);
    let x2 = &x * &x;
    let l2pi = log_two_pi(prec);
    let mut b = Builder::new(prec);
    b.push("(1/2) n^2 log n", (&x2 * &l).div_int(2));
    b.push("-(3/4) n^2", -&x2.mul_int(3).div_int(4));
    b.push("n log n", &x * &l);
    b.push("((1/2) log 2pi - 1) n", &(&l2pi.div_int(2) - &HpReal::one(prec)) * &x);
    b.push("(5/12) log n", l.mul_int(5).div_int(12));
    b.push("c_0", c0(prec));
    b.tail("c", "n", (1..=order).map(|j| (j, c_unchecked(j))), &x);
    b.finish(order)
}

/// `c_0 = (1/2) log 2π + 1/12 - log A`.
pub fn c0(prec: Precision) -> HpReal {
    &(&log_two_pi(prec).div_int(2) + &HpReal::from_ratio(1, 12, prec)) - &glaisher_log(prec)
}

/// `d_0 = log A`.
pub fn d0(prec: Precision) -> HpReal {
    glaisher_log(prec)
}

/// `g_0 = -(1/2) log 2π - 1/12 + 2 log A`.
pub fn g0(prec: Precision) -> HpReal {
    &d0(prec) - &c0(prec)
}

/// Expansion of `log N*_n` to order `N`.
pub fn log_superfac_expansion(n: u64, order: usize, prec: Precision) -> Result<ExpansionResult> {
    check_n(n)?;
    check_order(order)?;
    Ok(superfac_unchecked(n, order, prec))
}

/// Expansion of `log D*_n` to order `N`.
pub fn log_hyperfac_expansion(n: u64, order: usize, prec: Precision) -> Result<ExpansionResult> {
    check_n(n)?;
    check_order(order)?;
    let x = HpReal::from_int(n, prec);
    let l = ln_u64(n, prec);
    let x2 = &x * &x;
    let mut b = Builder::new(prec);
    b.push("(1/2) n^2 log n", (&x2 * &l).div_int(2));
    b.push("-(1/4) n^2", -&x2.div_int(4));
    b.push("(1/2) n log n", (&x * &l).div_int(2));
    b.push("(1/12) log n", l.div_int(12));
    b.push("d_0", d0(prec));
    b.tail("d", "n", (1..=order).map(|j| (j, d_unchecked(j))), &x);
    Ok(b.finish(order))
}

/// Expansion of `log Ḡ_n` to order `N`.
pub fn log_gbar_expansion(n: u64, order: usize, prec: Precision) -> Result<ExpansionResult> {
    check_n(n)?;
    check_order(order)?;
    let x = HpReal::from_int(n, prec);
    let l = ln_u64(n, prec);
    let mut b = Builder::new(prec);
    b.push("(1/2) n^2", (&x * &x).div_int(2));
    b.push("-(1/2) n log n", -&(&x * &l).div_int(2));
    b.push(
        "(1 - (1/2) log 2pi) n",
        &(&HpReal::one(prec) - &log_two_pi(prec).div_int(2)) * &x,
    );
    b.push("-(1/3) log n", -&l.div_int(3));
    b.push("g_0", g0(prec));
    b.tail("g", "n", (1..=order).map(|j| (j, g_unchecked(j))), &x);
    Ok(b.finish(order))
}

/// `ln k` for `1 <= k <= max`, used for exact logarithms of factorial
/// products as weighted sums.
#[derive(Clone, Debug)]
pub struct LnTable {
    prec: Precision,
    ln: Vec<HpReal>,
}

impl LnTable {
    pub fn new(max: u64, prec: Precision) -> Self {
        let len = max as usize + 1;
        let mut ln: Vec<HpReal> = Vec::with_capacity(len);
        for k in 0..len {
            let v = if k < 2 {
                HpReal::zero(prec)
            } else if let Some(d) = (2..).take_while(|d| d * d <= k).find(|d| k % d == 0) {
                &ln[d] + &ln[k / d]
            } else {
                ln_u64(k as u64, prec)
            };
            ln.push(v);
        }
        LnTable { prec, ln }
    }

    pub fn max(&self) -> u64 {
        self.ln.len() as u64 - 1
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn ln(&self, k: u64) -> &HpReal {
        &self.ln[k as usize]
    }

    fn weighted(&self, n: u64, w: impl Fn(u64) -> i64) -> HpReal {
        let mut acc = HpReal::zero(self.prec);
        for k in 2..=n {
            acc = &acc + &self.ln(k).mul_int(w(k));
        }
        acc
    }

    pub fn log_factorial(&self, n: u64) -> HpReal {
        self.weighted(n, |_| 1)
    }

    /// `log N*_n = sum_k (n + 1 - k) log k`.
    pub fn log_superfactorial(&self, n: u64) -> HpReal {
        self.weighted(n, |k| (n + 1 - k) as i64)
    }

    /// `log D*_n = sum_k k log k`.
    pub fn log_hyperfactorial(&self, n: u64) -> HpReal {
        self.weighted(n, |k| k as i64)
    }

    /// `log Ḡ_n = sum_k (2k - n - 1) log k`.
    pub fn log_gbar(&self, n: u64) -> HpReal {
        self.weighted(n, |k| 2 * k as i64 - n as i64 - 1)
    }

    /// `log Ḡ_0, ..., log Ḡ_max` through
    /// `log Ḡ_n = log Ḡ_{n-1} + (n-1) log n - log (n-1)!`.
    pub fn log_gbar_sweep(&self) -> Vec<HpReal> {
        let mut out = vec![HpReal::zero(self.prec)];
        let mut fact = HpReal::zero(self.prec); // log (n-1)!
        for n in 1..=self.max() {
            let prev = out.last().unwrap();
            let next = &(prev + &self.ln(n).mul_int(n - 1)) - &fact;
            fact = &fact + self.ln(n);
            out.push(next);
        }
        out
    }
}

/// `log A` solved from the exact `log N*_n` and the order-`order` expansion
/// with every other term known. The truncation error is about
/// `|c_{order+1}| / n^{order+1}`.
pub fn glaisher_log_oracle(n: u64, order: usize, prec: Precision) -> Result<HpReal> {
    check_n(n)?;
    let table = LnTable::new(n, prec);
    // The series needs log A only through c_0; compute it with A = 1.
    let mut rest = HpReal::zero(prec);
    let x = HpReal::from_int(n, prec);
    let l = table.ln(n).clone();
    let x2 = &x * &x;
    let l2pi = log_two_pi(prec);
    rest = &rest + &(&x2 * &l).div_int(2);
    rest = &rest - &x2.mul_int(3).div_int(4);
    rest = &rest + &(&x * &l);
    rest = &rest + &(&(&l2pi.div_int(2) - &HpReal::one(prec)) * &x);
    rest = &rest + &l.mul_int(5).div_int(12);
    rest = &rest + &(&l2pi.div_int(2) + &HpReal::from_ratio(1, 12, prec));
    let mut b = Builder::new(prec);
    b.tail("c", "n", (1..=order).map(|j| (j, c_unchecked(j))), &x);
    for t in b.terms {
        rest = &rest + &t.value;
    }
    Ok(&rest - &table.log_superfactorial(n))
}

const GLAISHER_DIGITS: u32 = 70;

fn glaisher_cached() -> &'static HpReal {
    static CELL: OnceLock<HpReal> = OnceLock::new();
    // Order 20 at n = 1000 leaves a truncation error near 1e-62.
    CELL.get_or_init(|| {
        glaisher_log_oracle(1000, 20, Precision::digits(GLAISHER_DIGITS))
            .expect("n = 1000 is in range")
    })
}

/// `log A` at the given precision.
pub fn glaisher_log(prec: Precision) -> HpReal {
    let cached = glaisher_cached();
    if prec.bits() <= cached.precision().bits() {
        cached.with_precision(prec)
    } else {
        glaisher_log_oracle(1000, 20, prec).expect("n = 1000 is in range")
    }
}

/// The Glaisher-Kinkelin constant `A` to `digits <= 50` decimal places.
pub fn glaisher_constant(digits: u32) -> Result<HpReal> {
    if digits > 50 {
        return Err(Error::domain("digits", digits, "digits <= 50"));
    }
    Ok(glaisher_log(Precision::digits(digits)).exp())
}

/// `exact log Ḡ_n - expansion_N(n)`.
pub fn gbar_residual(n: u64, order: usize, table: &LnTable) -> Result<HpReal> {
    let e = log_gbar_expansion(n, order, table.precision())?;
    Ok(&table.log_gbar(n) - &e.value)
}

/// `(exact - expansion_{k-1}) n^k`, which tends to `g_k`; used to read off
/// a coefficient from the exact oracle.
pub fn measured_g_coefficient(n: u64, k: usize, table: &LnTable) -> Result<HpReal> {
    check_index(k)?;
    let r = gbar_residual(n, k - 1, table)?;
    Ok(r.mul_int(num_traits::pow(BigInt::from(n), k)))
}

/// `log Ḡ_n` from the exact big integer, via its leading bits; the second
/// route used to check the weighted-sum logarithms.
pub fn log_gbar_bigint(n: u64, cap: crate::exact::ExactCap, prec: Precision) -> Result<HpReal> {
    let g = crate::exact::binomial_product_capped(n, cap)?;
    Ok(crate::hp::ln_natural(&g, prec))
}
