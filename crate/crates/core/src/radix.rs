//! Base-`b` digit expansions, the digit sum `d_b(n)` and the running digit
//! sum `S_b(n) = d_b(0) + d_b(1) + ... + d_b(n - 1)`.

use crate::error::{Error, Result};
use std::fmt;

/// A radix base `2 <= b <= u32::MAX`.
///
/// The upper limit keeps every digit sum of a `u64` inside `u64` and every
/// running digit sum inside `u128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u64);

impl Base {
    pub const MAX: u64 = u32::MAX as u64;

    pub fn new(b: u64) -> Result<Self> {
        if (2..=Self::MAX).contains(&b) {
            Ok(Base(b))
        } else {
            Err(Error::InvalidBase(b))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Base {
    type Error = Error;

    fn try_from(b: u64) -> Result<Self> {
        Base::new(b)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Digits `a_0, a_1, ..., a_k` of `n` in base `b`, least significant first.
/// Zero has the empty expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadixExpansion {
    base: Base,
    digits: Vec<u64>,
}

impl RadixExpansion {
    pub fn new(n: u64, base: Base) -> Self {
        let b = base.get();
        let mut digits = Vec::with_capacity(64);
        let mut m = n;
        while m > 0 {
            digits.push(m % b);
            m /= b;
        }
        RadixExpansion { base, digits }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Number of digits, `floor(log_b n) + 1` for `n >= 1`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// `sum a_j b^j`, evaluated in `u128` so reconstruction cannot overflow.
    pub fn value(&self) -> u128 {
        let b = self.base.get() as u128;
        self.digits.iter().rev().fold(0u128, |acc, &a| acc * b + a as u128)
    }

    /// Number of nonzero digits.
    pub fn nonzero_digits(&self) -> usize {
        self.digits.iter().filter(|&&a| a != 0).count()
    }
}

pub fn digits(n: u64, b: Base) -> RadixExpansion {
    RadixExpansion::new(n, b)
}

/// `d_b(n)`, the sum of the base-`b` digits of `n`.
pub fn digit_sum(n: u64, b: Base) -> u64 {
    let b = b.get();
    let mut m = n;
    let mut s = 0;
    while m > 0 {
        s += m % b;
        m /= b;
    }
    s
}

/// `floor(log_b n)` for `n >= 1`.
pub fn ilog(n: u64, b: Base) -> u32 {
    debug_assert!(n >= 1);
    n.ilog(b.get())
}

/// `S_b(n)` by a closed per-position count.
///
/// At position `j`, with `r = b^j` and `q = b^(j+1)`, each complete block of
/// `q` consecutive integers contributes `r * (0 + 1 + ... + (b-1))`; the
/// trailing partial block contributes `r * (0 + ... + (d-1)) + d * (rem mod r)`
/// where `d` is the position-`j` digit of `rem = n mod q`.
pub fn running_digit_sum(n: u64, b: Base) -> u128 {
    let b = b.get() as u128;
    let n = n as u128;
    let block = b * (b - 1) / 2;
    let mut total = 0u128;
    let mut r = 1u128;
    while r < n {
        let (full, rem) = match r.checked_mul(b) {
            Some(q) => (n / q, n % q),
            None => (0, n),
        };
        let d = rem / r;
        total += full * r * block + r * (d * d.saturating_sub(1) / 2) + d * (rem % r);
        r = match r.checked_mul(b) {
            Some(q) => q,
            None => break,
        };
    }
    total
}

/// `S_b(n)` by direct summation of `d_b(j)` for `j < n`. Linear in `n`;
/// intended for cross-checking [`running_digit_sum`].
pub fn running_digit_sum_direct(n: u64, b: Base) -> u128 {
    (0..n).map(|j| digit_sum(j, b) as u128).sum()
}

/// One step of a [`DigitSumStream`]: `(n, d_b(n), S_b(n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitSumRow {
    pub n: u64,
    pub digit_sum: u64,
    pub running_sum: u128,
}

impl From<DigitSumRow> for (u64, u64, u128) {
    fn from(r: DigitSumRow) -> Self {
        (r.n, r.digit_sum, r.running_sum)
    }
}

/// Odometer over the half-open range `[start, end)` yielding
/// `(n, d_b(n), S_b(n))`.
///
/// Each step rolls over only the trailing `(b-1)` digits, so a sweep costs
/// amortized O(1) per element.
#[derive(Clone, Debug)]
pub struct DigitSumStream {
    base: u64,
    digits: Vec<u64>,
    n: u64,
    end: u64,
    d: u64,
    s: u128,
}

impl DigitSumStream {
    pub fn new(start: u64, end: u64, b: Base) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidRange { start, end });
        }
        let exp = RadixExpansion::new(start, b);
        Ok(DigitSumStream {
            base: b.get(),
            d: exp.digit_sum(),
            s: running_digit_sum(start, b),
            digits: exp.digits,
            n: start,
            end,
        })
    }

    fn advance(&mut self) {
        self.s += self.d as u128;
        let top = self.base - 1;
        let mut rolled = 0u64;
        let mut i = 0;
        while i < self.digits.len() && self.digits[i] == top {
            self.digits[i] = 0;
            rolled += 1;
            i += 1;
        }
        if i == self.digits.len() {
            self.digits.push(1);
        } else {
            self.digits[i] += 1;
        }
        self.d = self.d + 1 - top * rolled;
        self.n += 1;
    }
}

impl Iterator for DigitSumStream {
    type Item = DigitSumRow;

    fn next(&mut self) -> Option<DigitSumRow> {
        if self.n >= self.end {
            return None;
        }
        let row = DigitSumRow {
            n: self.n,
            digit_sum: self.d,
            running_sum: self.s,
        };
        // The last element would advance past u64::MAX when end == u64::MAX.
        if self.n + 1 < self.end {
            self.advance();
        } else {
            self.n = self.end;
        }
        Some(row)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.n) as usize;
        (left, Some(left))
    }
}

pub fn digit_sum_stream(start: u64, end: u64, b: Base) -> Result<DigitSumStream> {
    DigitSumStream::new(start, end, b)
}

/// If `n = b^k`, returns `k`.
pub fn exact_power(n: u64, b: Base) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let k = ilog(n, b);
    (b.get().checked_pow(k) == Some(n)).then_some(k)
}

/// Compares `S_b(n)` against the Drazin–Griffith bound `((b-1)/2) n log_b n`.
///
/// At `n = b^k` both sides are integers after doubling and are compared
/// exactly; otherwise `2 S_b(n) ln b` is compared with `(b-1) n ln n` in
/// floating point, which is reliable while the gap exceeds the f64
/// resolution of the operands (every `n < 2^40`).
pub fn drazin_griffith_cmp(n: u64, b: Base) -> std::cmp::Ordering {
    assert!(n >= 1, "S_b(n) bound is stated for n >= 1");
    let s = running_digit_sum(n, b);
    let bb = b.get();
    if let Some(k) = exact_power(n, b) {
        let lhs = 2 * s;
        let rhs = (bb - 1) as u128 * n as u128 * k as u128;
        return lhs.cmp(&rhs);
    }
    let lhs = 2.0 * s as f64 * (bb as f64).ln();
    let rhs = (bb - 1) as f64 * n as f64 * (n as f64).ln();
    lhs.partial_cmp(&rhs).expect("finite operands")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn base(b: u64) -> Base {
        Base::new(b).unwrap()
    }

    #[test]
    fn rejects_small_bases() {
        assert_eq!(Base::new(1), Err(Error::InvalidBase(1)));
        assert_eq!(Base::new(0), Err(Error::InvalidBase(0)));
        assert!(Base::new(2).is_ok());
    }

    #[test]
    fn digit_examples() {
        assert_eq!(digits(13, base(3)).digits(), &[1, 1, 1]);
        assert!(digits(0, base(7)).is_empty());
        assert_eq!(digits(96, base(10)).digits(), &[6, 9]);
        assert_eq!(digit_sum(13, base(3)), 3);
        assert_eq!(digit_sum(7, base(2)), 3);
        assert_eq!(digit_sum(96, base(10)), 15);
        assert_eq!(digit_sum(0, base(5)), 0);
    }

    #[test]
    fn running_sum_examples() {
        assert_eq!(running_digit_sum(8, base(2)), 12);
        assert_eq!(running_digit_sum(4, base(2)), 4);
        for b in 2..12 {
            assert_eq!(running_digit_sum(0, base(b)), 0);
            assert_eq!(running_digit_sum(1, base(b)), 0);
        }
    }

    #[test]
    fn closed_form_matches_direct_summation() {
        for b in [2, 3, 5, 7, 10, 16, 255] {
            let mut direct = 0u128;
            for n in 0..5000u64 {
                assert_eq!(running_digit_sum(n, base(b)), direct, "n={n} b={b}");
                direct += digit_sum(n, base(b)) as u128;
            }
        }
    }

    #[test]
    fn running_sum_strictly_increasing_from_two() {
        let b = base(3);
        let mut prev = running_digit_sum(2, b);
        for n in 3..2000 {
            let cur = running_digit_sum(n, b);
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn digit_sum_range_bounds() {
        for b in [2u64, 3, 10] {
            for n in 1..20_000u64 {
                let d = digit_sum(n, base(b));
                let len = ilog(n, base(b)) as u64 + 1;
                assert!(d >= 1 && d <= (b - 1) * len);
            }
        }
    }

    #[test]
    fn reconstruction() {
        for b in [2, 3, 5, 7, 10, 16] {
            for n in (0..=1_000_000u64).step_by(7) {
                assert_eq!(digits(n, base(b)).value(), n as u128);
            }
        }
        let e = digits(u64::MAX, base(2));
        assert_eq!(e.len(), 64);
        assert_eq!(e.value(), u64::MAX as u128);
    }

    #[test]
    fn odometer_consistency() {
        for b in [2u64, 3, 10] {
            let bb = base(b);
            for n in 0..100_000u64 {
                let trailing = digits(n, bb).digits().iter().take_while(|&&a| a == b - 1).count() as u64;
                let next = digit_sum(n, bb) + 1 - (b - 1) * trailing;
                assert_eq!(digit_sum(n + 1, bb), next);
            }
        }
    }

    #[test]
    fn stream_examples() {
        let rows: Vec<(u64, u64, u128)> = digit_sum_stream(0, 4, base(2)).unwrap().map(Into::into).collect();
        assert_eq!(rows, vec![(0, 0, 0), (1, 1, 0), (2, 1, 1), (3, 2, 2)]);
        assert_eq!(digit_sum_stream(5, 5, base(3)).unwrap().count(), 0);
        let rows: Vec<(u64, u64, u128)> = digit_sum_stream(7, 9, base(2)).unwrap().map(Into::into).collect();
        assert_eq!(rows, vec![(7, 3, 9), (8, 1, 12)]);
        assert!(digit_sum_stream(9, 7, base(2)).is_err());
    }

    #[test]
    fn stream_matches_pointwise() {
        for b in [2, 3, 7, 10] {
            let bb = base(b);
            for row in digit_sum_stream(990, 12_345, bb).unwrap() {
                assert_eq!(row.digit_sum, digit_sum(row.n, bb));
                assert_eq!(row.running_sum, running_digit_sum(row.n, bb));
            }
        }
        let tail: Vec<_> = digit_sum_stream(u64::MAX - 2, u64::MAX, base(2)).unwrap().collect();
        assert_eq!(tail.len(), 2);
        assert_eq!(tail[1].digit_sum, 63);
    }

    #[test]
    fn drazin_griffith_equality_at_powers() {
        assert_eq!(drazin_griffith_cmp(1, base(2)), Ordering::Equal);
        assert_eq!(drazin_griffith_cmp(8, base(2)), Ordering::Equal);
        assert_eq!(drazin_griffith_cmp(1000, base(10)), Ordering::Equal);
        assert_eq!(drazin_griffith_cmp(3, base(2)), Ordering::Less);
        assert_eq!(drazin_griffith_cmp(999, base(10)), Ordering::Less);
    }

    #[test]
    fn exact_powers() {
        assert_eq!(exact_power(1, base(3)), Some(0));
        assert_eq!(exact_power(81, base(3)), Some(4));
        assert_eq!(exact_power(80, base(3)), None);
        assert_eq!(exact_power(0, base(3)), None);
    }
}
