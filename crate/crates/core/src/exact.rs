//! Exact big-integer factorial products and the trial-division valuation
//! oracle that every order formula is checked against.

use crate::error::{Error, Result};
use crate::radix::{digit_sum, Base};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

/// Default bound on `n` for the exact big-integer routes. `Ḡ_2000` already
/// has about 2.9 million bits.
pub const DEFAULT_EXACT_CAP: u64 = 2000;

/// Environment variable that overrides [`DEFAULT_EXACT_CAP`].
pub const EXACT_CAP_ENV: &str = "GBAR_EXACT_CAP";

/// Largest `n` for which exact products such as `Ḡ_n` are materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactCap(pub u64);

impl Default for ExactCap {
    fn default() -> Self {
        ExactCap(DEFAULT_EXACT_CAP)
    }
}

impl ExactCap {
    /// Reads [`EXACT_CAP_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(EXACT_CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map(ExactCap)
                .map_err(|_| Error::domain(EXACT_CAP_ENV, v, "nonnegative integers")),
            Err(_) => Ok(ExactCap::default()),
        }
    }

    pub fn check(self, n: u64) -> Result<()> {
        if n > self.0 {
            Err(Error::ExactCap { n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

/// Balanced product tree; much faster than a left fold once the factors
/// grow to thousands of limbs.
pub fn product<I>(factors: I) -> BigUint
where
    I: IntoIterator<Item = BigUint>,
{
    let mut layer: Vec<BigUint> = factors.into_iter().collect();
    if layer.is_empty() {
        return BigUint::one();
    }
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        layer = next;
    }
    layer.pop().unwrap()
}

pub fn factorial(n: u64) -> BigUint {
    product((2..=n).map(BigUint::from))
}

/// `N*_n = 1! 2! ... n!`, evaluated as `prod k^(n+1-k)`.
pub fn superfactorial(n: u64) -> BigUint {
    product((2..=n).map(|k| Pow::pow(BigUint::from(k), n + 1 - k)))
}

/// `D*_n = 1^1 2^2 ... n^n`.
pub fn hyperfactorial(n: u64) -> BigUint {
    product((2..=n).map(|k| Pow::pow(BigUint::from(k), k)))
}

pub fn binomial(n: u64, t: u64) -> Result<BigUint> {
    if t > n {
        return Err(Error::BinomialRange { n, t });
    }
    let t = t.min(n - t);
    let num = product((n - t + 1..=n).map(BigUint::from));
    Ok(num / factorial(t))
}

/// The row `C(n, 0), ..., C(n, n)` by the multiplicative recurrence.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// `Ḡ_n = prod_k C(n, k)` under the default [`ExactCap`].
pub fn binomial_product(n: u64) -> Result<BigUint> {
    binomial_product_capped(n, ExactCap::default())
}

/// `Ḡ_n` along two routes: the product of the binomial row, and
/// `D*_n / N*_n`. The quotient is confirmed exact (and equal to the first
/// route) by checking `Ḡ_n · N*_n = D*_n`, which avoids a long division of
/// multi-million-bit operands.
pub fn binomial_product_capped(n: u64, cap: ExactCap) -> Result<BigUint> {
    cap.check(n)?;
    let by_row = product(binomial_row(n));
    let d = hyperfactorial(n);
    let s = superfactorial(n);
    if &by_row * &s != d {
        return Err(Error::Inconsistent(format!(
            "Ḡ_{n}: binomial-row product differs from D*_n / N*_n"
        )));
    }
    Ok(by_row)
}

/// Splits `value = p^e * rest` with `p ∤ rest` by repeated exact division.
///
/// Works for any `p >= 2`; for composite `p` the exponent is the largest
/// `e` with `p^e | value`. Division proceeds in chunks of the largest power
/// of `p` fitting a machine word, then by `p` itself.
pub fn valuation_split(value: &BigUint, p: u64) -> Result<(u64, BigUint)> {
    if p < 2 {
        return Err(Error::InvalidBase(p));
    }
    if value.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let mut chunk = p;
    let mut chunk_exp = 1u64;
    while let Some(next) = chunk.checked_mul(p) {
        chunk = next;
        chunk_exp += 1;
    }
    let mut rest = value.clone();
    let mut e = 0u64;
    for (divisor, step) in [(chunk, chunk_exp), (p, 1)] {
        let divisor = BigUint::from(divisor);
        loop {
            let (q, r) = rest.div_rem(&divisor);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += step;
        }
    }
    Ok((e, rest))
}

/// The largest `e` with `p^e | value`; the independent oracle for the order
/// formulas.
pub fn ord_trial_division(value: &BigUint, p: u64) -> Result<u64> {
    valuation_split(value, p).map(|(e, _)| e)
}

/// De Polignac's `ord_p(n!) = sum_j floor(n / p^j)`, cross-checked against
/// the digit-sum form `(n - d_p(n)) / (p - 1)`.
///
/// Primality of `p` is not checked; for composite `p` both forms still agree.
pub fn ord_p_factorial(n: u64, p: Base) -> Result<u64> {
    let floor_sum = floor_sum_factorial(n, p);
    let diff = n - digit_sum(n, p);
    let pm1 = p.get() - 1;
    if !diff.is_multiple_of(pm1) || diff / pm1 != floor_sum {
        return Err(Error::Inconsistent(format!(
            "de Polignac forms disagree for n = {n}, p = {p}"
        )));
    }
    Ok(floor_sum)
}

pub(crate) fn floor_sum_factorial(n: u64, p: Base) -> u64 {
    let p = p.get();
    let mut total = 0;
    let mut m = n / p;
    while m > 0 {
        total += m;
        m /= p;
    }
    total
}

/// `Φ*(n) = n(n+1)/2`, the number of fractions `h/k` with `1 <= h <= k <= n`.
pub fn farey_count(n: u64) -> u128 {
    let n = n as u128;
    n * (n + 1) / 2
}
