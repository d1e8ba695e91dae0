//! Three independent formulas for `ord_p(Ḡ_n)`, their base-`b`
//! generalizations `ν_b` and `ν_b*`, Kummer carry counting, and the
//! extreme-value bounds.
//!
//! Each formula returns an [`OrderDecomposition`]: the order as a difference
//! of a positive and a negative term. The terms differ between formulas even
//! though the values agree, and the decompositions are what the comparison
//! table reports.

use crate::error::{Error, Result};
use crate::exact::floor_sum_factorial;
use crate::radix::{digit_sum, running_digit_sum, Base, RadixExpansion};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `ord_p(D*_n) - ord_p(N*_n)` with de Polignac floor sums.
    Parts,
    /// `(2 S_b(n) - (n-1) d_b(n)) / (b-1)`.
    DigitSum,
    /// Linear minus linear-plus-bilinear terms in the radix digits of `n`.
    Bilinear,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::Parts => "parts",
            Formula::DigitSum => "digit-sum",
            Formula::Bilinear => "bilinear",
        })
    }
}

/// `value = (s_plus - s_minus) / divisor`.
///
/// `divisor` is 1 except for the digit-sum formula when `b - 1` does not
/// divide both terms; then the terms are kept as integer numerators and the
/// division happens once, on the difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderDecomposition {
    pub formula: Formula,
    pub s_plus: u128,
    pub s_minus: u128,
    pub divisor: u64,
    pub value: u128,
}

impl OrderDecomposition {
    fn new(formula: Formula, s_plus: u128, s_minus: u128, divisor: u64) -> Result<Self> {
        let diff = s_plus.checked_sub(s_minus).ok_or_else(|| {
            Error::Inconsistent(format!("{formula}: negative term exceeds positive term"))
        })?;
        if diff % divisor as u128 != 0 {
            return Err(Error::Inconsistent(format!(
                "{formula}: difference {diff} not divisible by {divisor}"
            )));
        }
        Ok(OrderDecomposition {
            formula,
            s_plus,
            s_minus,
            divisor,
            value: diff / divisor as u128,
        })
    }

    /// The positive term as a reduced fraction, e.g. `"64"` or `"7/2"`.
    pub fn s_plus_display(&self) -> String {
        reduced(self.s_plus, self.divisor)
    }

    pub fn s_minus_display(&self) -> String {
        reduced(self.s_minus, self.divisor)
    }
}

fn reduced(num: u128, den: u64) -> String {
    let g = num.gcd(&(den as u128));
    let (n, d) = (num / g.max(1), den as u128 / g.max(1));
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::domain("n", 0, "n >= 1"))
    } else {
        Ok(())
    }
}

#[inline]
fn debug_check_prime(p: Base) {
    debug_assert!(
        p.get() > 1_000_000 || crate::primestats::is_prime(p.get()),
        "{p} is not prime"
    );
}

/// `sum_{k=1}^{n} floor(k / q)`.
fn floor_prefix_sum(n: u64, q: u64) -> u128 {
    let (n, q) = (n as u128, q as u128);
    let m = n / q;
    q * m * m.saturating_sub(1) / 2 + m * (n + 1 - q * m)
}

/// `ord_p(N*_n) = sum_{k<=n} ord_p(k!)`, via de Polignac floor sums.
pub fn ord_superfactorial(n: u64, p: Base) -> u128 {
    let mut total = 0u128;
    let mut q = p.get();
    while q <= n {
        total += floor_prefix_sum(n, q);
        q = match q.checked_mul(p.get()) {
            Some(next) => next,
            None => break,
        };
    }
    total
}

/// `ord_p(D*_n) = n ord_p(n!) - ord_p(N*_{n-1})`.
pub fn ord_hyperfactorial(n: u64, p: Base) -> u128 {
    if n == 0 {
        return 0;
    }
    n as u128 * floor_sum_factorial(n, p) as u128 - ord_superfactorial(n - 1, p)
}

/// Formula 1: `ord_p(Ḡ_n) = ord_p(D*_n) - ord_p(N*_n)`.
pub fn ord_formula_parts(n: u64, p: Base) -> Result<OrderDecomposition> {
    require_positive(n)?;
    debug_check_prime(p);
    OrderDecomposition::new(
        Formula::Parts,
        ord_hyperfactorial(n, p),
        ord_superfactorial(n, p),
        1,
    )
}

/// Formula 2 and its base-`b` generalization `ν_b(Ḡ_n)`:
/// `(2 S_b(n) - (n-1) d_b(n)) / (b-1)`.
pub fn nu_digitsum(n: u64, b: Base) -> Result<OrderDecomposition> {
    require_positive(n)?;
    let bm1 = b.get() - 1;
    let plus = running_digit_sum(n, b)
        .checked_mul(2)
        .ok_or(Error::Overflow("2 S_b(n)"))?;
    let minus = (n as u128 - 1) * digit_sum(n, b) as u128;
    let m = bm1 as u128;
    if plus % m == 0 && minus.is_multiple_of(m) {
        OrderDecomposition::new(Formula::DigitSum, plus / m, minus / m, 1)
    } else {
        OrderDecomposition::new(Formula::DigitSum, plus, minus, bm1)
    }
}

/// Formula 3 and its base-`b` generalization `ν_b*(Ḡ_n)`.
///
/// With `n = sum a_j b^j`, `low_j = n mod b^(j+1)` and `high_j = n - low_j`:
///
/// ```text
/// s_plus  = sum_j j a_j b^j
/// s_minus = sum_j a_j (b^j - 1)/(b - 1) + sum_j low_j * (high_j / b^(j+1))
/// ```
///
/// `high_j` is a multiple of `b^(j+1)`, so every term is an integer.
pub fn nu_bilinear(n: u64, b: Base) -> Result<OrderDecomposition> {
    require_positive(n)?;
    let exp = RadixExpansion::new(n, b);
    let bb = b.get() as u128;
    let n = n as u128;
    let (mut plus, mut linear, mut bilinear) = (0u128, 0u128, 0u128);
    let mut pow = 1u128; // b^j
    let mut repunit = 0u128; // (b^j - 1)/(b - 1)
    let mut low = 0u128;
    for (j, &a) in exp.digits().iter().enumerate() {
        let a = a as u128;
        plus += j as u128 * a * pow;
        linear += a * repunit;
        low += a * pow;
        let next = pow * bb;
        bilinear += low * ((n - low) / next);
        repunit += pow;
        pow = next;
    }
    OrderDecomposition::new(Formula::Bilinear, plus, linear + bilinear, 1)
}

/// `ord_p(Ḡ_n)` for prime `p` (any of the formulas; this uses the bilinear
/// one). For `n = 0` the empty product gives 0.
pub fn ord_gbar(n: u64, p: Base) -> Result<u128> {
    if n == 0 {
        return Ok(0);
    }
    Ok(nu_bilinear(n, p)?.value)
}

/// One row of the three-formula comparison for `ord_p(Ḡ_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub n: u64,
    pub parts: OrderDecomposition,
    pub digit_sum: OrderDecomposition,
    pub bilinear: OrderDecomposition,
}

impl ComparisonRow {
    pub fn value(&self) -> u128 {
        self.parts.value
    }
}

/// Evaluates all three formulas at `n >= 1` and checks that they agree.
pub fn comparison_row(n: u64, p: Base) -> Result<ComparisonRow> {
    let parts = ord_formula_parts(n, p)?;
    let digit_sum = nu_digitsum(n, p)?;
    let bilinear = nu_bilinear(n, p)?;
    if parts.value != digit_sum.value || parts.value != bilinear.value {
        return Err(Error::Inconsistent(format!(
            "ord_{p}(Ḡ_{n}): formulas give {}, {}, {}",
            parts.value, digit_sum.value, bilinear.value
        )));
    }
    Ok(ComparisonRow {
        n,
        parts,
        digit_sum,
        bilinear,
    })
}

/// Number of carries when adding `x` and `y` in base `b`.
pub fn kummer_carries(x: u64, y: u64, b: Base) -> u64 {
    let b = b.get();
    let (mut x, mut y) = (x, y);
    let mut carry = 0u64;
    let mut count = 0;
    while x > 0 || y > 0 || carry > 0 {
        let s = x % b + y % b + carry;
        carry = u64::from(s >= b);
        count += carry;
        x /= b;
        y /= b;
    }
    count
}

/// `ord_p C(n, t) = (d_p(t) + d_p(n-t) - d_p(n)) / (p - 1)`.
///
/// The same expression counts carries in base `p` addition of `t` and
/// `n - t` (checked against [`kummer_carries`] in debug builds).
pub fn ord_binomial(n: u64, t: u64, p: Base) -> Result<u64> {
    if t > n {
        return Err(Error::BinomialRange { n, t });
    }
    let num = digit_sum(t, p) + digit_sum(n - t, p) - digit_sum(n, p);
    let e = num / (p.get() - 1);
    debug_assert_eq!(num % (p.get() - 1), 0);
    debug_assert_eq!(e, kummer_carries(t, n - t, p));
    Ok(e)
}

/// `c_j(n, t)`: whether adding `t` to `n - t` in base `p` carries out of
/// digit position `j`.
pub fn carry_digit(n: u64, t: u64, p: Base, j: u32) -> Result<bool> {
    if t > n {
        return Err(Error::BinomialRange { n, t });
    }
    let b = p.get();
    let (mut x, mut y) = (t, n - t);
    let mut carry = 0u64;
    for _ in 0..=j {
        let s = x % b + y % b + carry;
        carry = u64::from(s >= b);
        x /= b;
        y /= b;
    }
    Ok(carry == 1)
}

/// `c_j(n) = sum_{t=0}^{n} c_j(n, t)` by enumeration. Linear in `n`.
pub fn carry_total_brute(n: u64, p: Base, j: u32) -> u128 {
    (0..=n)
        .filter(|&t| carry_digit(n, t, p, j).expect("t <= n"))
        .count() as u128
}

/// `c_j(n)` in closed form:
/// `((p^(j+1) - 1) - sum_{u<=j} a_u p^u) * sum_{t>j} a_t p^(t-j-1)`,
/// cross-checked against the fractional-part form
/// `(p^(j+1) - 1 - p^(j+1){n/p^(j+1)}) (n/p^(j+1) - {n/p^(j+1)})`.
pub fn carry_total(n: u64, p: Base, j: u32) -> Result<u128> {
    let q = match p.get().checked_pow(j + 1) {
        Some(q) if q <= n => q,
        _ => return Ok(0),
    };
    let exp = RadixExpansion::new(n, p);
    let digits = exp.digits();
    let mut low = 0u128;
    let mut pow = 1u128;
    for &a in digits.iter().take(j as usize + 1) {
        low += a as u128 * pow;
        pow *= p.get() as u128;
    }
    let mut high = 0u128;
    for &a in digits.iter().skip(j as usize + 1).rev() {
        high = high * p.get() as u128 + a as u128;
    }
    let digit_form = (q as u128 - 1 - low) * high;

    let qr = BigRational::from_integer(BigInt::from(q));
    let ratio = BigRational::new(BigInt::from(n), BigInt::from(q));
    let frac = ratio.fract();
    let frac_form = (&qr - BigRational::from_integer(1.into()) - &qr * &frac) * (&ratio - &frac);
    let agree = frac_form.is_integer()
        && frac_form.to_integer().to_u128() == Some(digit_form);
    if !agree {
        return Err(Error::Inconsistent(format!(
            "carry total forms disagree at n = {n}, p = {p}, j = {j}"
        )));
    }
    Ok(digit_form)
}

/// `M_p(n) = sum_j j a_j p^j - sum_j a_j (p^j - 1)/(p - 1)`, the sharp upper
/// bound on `ord_p(Ḡ_n)` obtained by dropping the bilinear term.
pub fn upper_bound_m(n: u64, p: Base) -> u128 {
    let exp = RadixExpansion::new(n, p);
    let bb = p.get() as u128;
    let (mut plus, mut linear) = (0u128, 0u128);
    let (mut pow, mut repunit) = (1u128, 0u128);
    for (j, &a) in exp.digits().iter().enumerate() {
        plus += j as u128 * a as u128 * pow;
        linear += a as u128 * repunit;
        repunit += pow;
        pow *= bb;
    }
    plus - linear
}

/// `a (k p^k - (p^k - 1)/(p - 1))`, the order of `Ḡ_{a p^k}`.
pub fn ord_at_power_multiple(a: u64, k: u32, p: Base) -> Option<u128> {
    let pk = (p.get() as u128).checked_pow(k)?;
    let rep = (pk - 1) / (p.get() as u128 - 1);
    (a as u128).checked_mul(k as u128 * pk - rep)
}

/// `n = a b^k` with `1 <= a <= b - 1`, i.e. exactly one nonzero digit.
pub fn is_digit_times_power(n: u64, b: Base) -> bool {
    n > 0 && RadixExpansion::new(n, b).nonzero_digits() == 1
}

/// `n = a b^k - 1` with `1 <= a <= b - 1`, i.e. every digit below the
/// leading one equals `b - 1`.
pub fn is_digit_times_power_minus_one(n: u64, b: Base) -> bool {
    n.checked_add(1).is_some_and(|m| is_digit_times_power(m, b))
}

/// `n log_b n - (n - 1)/(b - 1)`, an upper bound for `ν_b(Ḡ_n)`.
pub fn nu_upper_bound(n: u64, b: Base) -> f64 {
    let (nf, bf) = (n as f64, b.get() as f64);
    nf * nf.ln() / bf.ln() - (nf - 1.0) / (bf - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial_product, ord_trial_division};

    fn base(b: u64) -> Base {
        Base::new(b).unwrap()
    }

    fn triple(d: OrderDecomposition) -> (u128, u128, u128) {
        (d.s_plus, d.s_minus, d.value)
    }

    #[test]
    fn parts_examples() {
        assert_eq!(triple(ord_formula_parts(8, base(2)).unwrap()), (40, 23, 17));
        assert_eq!(triple(ord_formula_parts(16, base(2)).unwrap()), (152, 103, 49));
        for p in [2, 3, 5, 7] {
            assert_eq!(triple(ord_formula_parts(1, base(p)).unwrap()), (0, 0, 0));
        }
    }

    #[test]
    fn digitsum_examples() {
        assert_eq!(triple(nu_digitsum(16, base(2)).unwrap()), (64, 15, 49));
        assert_eq!(triple(nu_digitsum(3, base(2)).unwrap()), (4, 4, 0));
        assert_eq!(nu_digitsum(100, base(10)).unwrap().value, 189);
        assert_eq!(nu_digitsum(1, base(7)).unwrap().value, 0);
    }

    #[test]
    fn digitsum_keeps_numerators_when_terms_are_fractional() {
        // p = 5, n = 2: 2 S_5(2) = 2 and (n-1) d_5(2) = 2, neither divisible by 4.
        let d = nu_digitsum(2, base(5)).unwrap();
        assert_eq!((d.s_plus, d.s_minus, d.divisor, d.value), (2, 2, 4, 0));
        assert_eq!(d.s_plus_display(), "1/2");
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(triple(nu_bilinear(12, base(2)).unwrap()), (32, 14, 18));
        assert_eq!(triple(nu_bilinear(2, base(2)).unwrap()), (2, 1, 1));
        assert_eq!(triple(nu_bilinear(7, base(2)).unwrap()), (10, 10, 0));
    }

    #[test]
    fn zero_is_rejected() {
        assert!(ord_formula_parts(0, base(2)).is_err());
        assert!(nu_digitsum(0, base(2)).is_err());
        assert!(nu_bilinear(0, base(2)).is_err());
        assert_eq!(ord_gbar(0, base(2)).unwrap(), 0);
    }

    #[test]
    fn formulas_match_oracle_small() {
        for n in 1..=60u64 {
            let g = binomial_product(n).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
                let want = ord_trial_division(&g, p).unwrap() as u128;
                assert_eq!(ord_formula_parts(n, base(p)).unwrap().value, want);
                assert_eq!(nu_digitsum(n, base(p)).unwrap().value, want);
                assert_eq!(nu_bilinear(n, base(p)).unwrap().value, want);
            }
        }
    }

    #[test]
    fn comparison_rows() {
        let r = comparison_row(10, base(2)).unwrap();
        assert_eq!(triple(r.parts), (50, 38, 12));
        assert_eq!(triple(r.digit_sum), (30, 18, 12));
        assert_eq!(triple(r.bilinear), (26, 14, 12));
        let r = comparison_row(15, base(2)).unwrap();
        assert_eq!(triple(r.parts), (88, 88, 0));
        assert!(comparison_row(0, base(2)).is_err());
    }

    #[test]
    fn ord_binomial_examples() {
        assert_eq!(ord_binomial(13, 5, base(3)).unwrap(), 2);
        assert_eq!(ord_binomial(4, 2, base(2)).unwrap(), 1);
        assert_eq!(ord_binomial(9, 0, base(3)).unwrap(), 0);
        assert!(ord_binomial(4, 5, base(2)).is_err());
    }

    #[test]
    fn kummer_equivalence() {
        for p in [2u64, 3, 5, 7] {
            for n in 0..=500u64 {
                for t in 0..=n {
                    let by_digits = ord_binomial(n, t, base(p)).unwrap();
                    assert_eq!(by_digits, kummer_carries(t, n - t, base(p)));
                }
            }
        }
    }

    #[test]
    fn kummer_matches_trial_division() {
        for n in [13u64, 64, 99] {
            for t in 0..=n {
                let c = crate::exact::binomial(n, t).unwrap();
                for p in [2u64, 3, 5] {
                    assert_eq!(ord_binomial(n, t, base(p)).unwrap(), ord_trial_division(&c, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn carry_digit_examples() {
        assert!(!carry_digit(13, 5, base(3), 2).unwrap());
        assert!(carry_digit(13, 5, base(3), 0).unwrap());
        assert!(carry_digit(13, 5, base(3), 1).unwrap());
        for j in 0..6 {
            assert!(!carry_digit(40, 0, base(3), j).unwrap());
        }
        assert!(carry_digit(3, 4, base(2), 0).is_err());
    }

    #[test]
    fn carry_digit_depends_only_on_residues() {
        let p = base(3);
        for j in 0..3u32 {
            let q = 3u64.pow(j + 1);
            for n in 0..120u64 {
                for t in 0..=n {
                    let c = carry_digit(n, t, p, j).unwrap();
                    // Subtracting t from n borrows into position j + 1 iff t mod q > n mod q.
                    assert_eq!(c, t % q > n % q, "n={n} t={t} j={j}");
                }
            }
        }
    }

    #[test]
    fn carry_total_examples() {
        assert_eq!(carry_total(13, base(3), 0).unwrap(), 4);
        assert_eq!(carry_total_brute(13, base(3), 0), 4);
        let total: u128 = (0..4).map(|j| carry_total(8, base(2), j).unwrap()).sum();
        assert_eq!(total, 17);
        // vanishing for j >= floor(log_p n)
        for n in 1..500u64 {
            let k = n.ilog(3);
            for j in k..k + 3 {
                assert_eq!(carry_total(n, base(3), j).unwrap(), 0);
            }
        }
    }

    #[test]
    fn carry_total_closed_forms_match_enumeration() {
        for p in [2u64, 3, 5, 6] {
            for n in 0..300u64 {
                for j in 0..6 {
                    assert_eq!(carry_total(n, base(p), j).unwrap(), carry_total_brute(n, base(p), j));
                }
            }
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound_m(8, base(2)), 17);
        assert_eq!(ord_at_power_multiple(1, 3, base(2)), Some(17));
        assert_eq!(upper_bound_m(12, base(2)), 22);
        assert_eq!(ord_gbar(12, base(2)).unwrap(), 18);
        assert_eq!(ord_gbar(7, base(2)).unwrap(), 0);
    }

    #[test]
    fn nu_bound_examples() {
        assert!((nu_upper_bound(16, base(2)) - 49.0).abs() < 1e-9);
        let b3 = nu_upper_bound(3, base(2));
        assert!((b3 - (3.0 * 3f64.log2() - 2.0)).abs() < 1e-12);
        assert!(b3 >= nu_digitsum(3, base(2)).unwrap().value as f64);
        for b in 2..=10u64 {
            for k in 1..5u32 {
                let n = b.pow(k);
                let want = (k as u64 * n - (n - 1) / (b - 1)) as f64;
                assert!((nu_upper_bound(n, base(b)) - want).abs() < 1e-6 * want);
                assert_eq!(nu_digitsum(n, base(b)).unwrap().value as f64, want);
            }
        }
    }

    #[test]
    fn digit_pattern_predicates() {
        assert!(is_digit_times_power(8, base(2)));
        assert!(is_digit_times_power(200, base(10)));
        assert!(!is_digit_times_power(12, base(2)));
        assert!(is_digit_times_power_minus_one(7, base(2)));
        assert!(is_digit_times_power_minus_one(199, base(10)));
        assert!(!is_digit_times_power_minus_one(198, base(10)));
    }
}
