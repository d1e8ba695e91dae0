//! Fixed-point reals with a configurable number of fractional bits.
//!
//! A value is `mant / 2^bits` with a signed big-integer mantissa. Addition
//! and subtraction are exact; multiplication, division and the
//! transcendental functions round to nearest and internally carry 32 extra
//! working bits, so each call contributes an absolute error of at most a
//! few units of `2^-bits`.
//!
//! Logarithms of big integers use only the leading `bits + 32` bits of the
//! argument; the truncation adds a relative error below `2^-(bits + 32)` to
//! the argument, i.e. an absolute error of the same size to the logarithm.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const WORK_BITS: u32 = 32;

/// Working precision, stored as the number of fractional bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    /// Guard bits added on top of the requested decimal digits.
    pub const GUARD_BITS: u32 = 64;

    /// Enough fractional bits for `digits` correct decimal places plus guard.
    pub fn digits(digits: u32) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
        Precision {
            bits: bits + Self::GUARD_BITS,
        }
    }

    pub const fn from_bits(bits: u32) -> Self {
        Precision { bits }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    fn work(self) -> Self {
        Precision {
            bits: self.bits + WORK_BITS,
        }
    }
}

impl Default for Precision {
    /// 50 decimal digits.
    fn default() -> Self {
        Precision::digits(50)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HpReal {
    mant: BigInt,
    bits: u32,
}

/// `round(num / den)`, half away from zero not required; half-up is fine.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * two))
}

fn shift_round(v: &BigInt, right: u32) -> BigInt {
    if right == 0 {
        return v.clone();
    }
    let half = BigInt::one() << (right - 1);
    (v + half) >> right
}

impl HpReal {
    pub fn zero(prec: Precision) -> Self {
        HpReal {
            mant: BigInt::zero(),
            bits: prec.bits,
        }
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: Precision) -> Self {
        HpReal {
            mant: v.into() << prec.bits,
            bits: prec.bits,
        }
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: Precision) -> Self {
        let (mut num, mut den) = (num.into(), den.into());
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        HpReal {
            mant: div_round(&(num << prec.bits), &den),
            bits: prec.bits,
        }
    }

    pub fn from_rational(r: &BigRational, prec: Precision) -> Self {
        Self::from_ratio(r.numer().clone(), r.denom().clone(), prec)
    }

    /// Exact conversion of a finite `f64` (rounded only if it has more than
    /// `bits` fractional bits).
    pub fn from_f64(x: f64, prec: Precision) -> Self {
        assert!(x.is_finite(), "non-finite input");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let m = BigInt::from(m) * sign;
        let shift = e + prec.bits as i64;
        let mant = if shift >= 0 {
            m << shift as u32
        } else {
            shift_round(&m, (-shift) as u32)
        };
        HpReal {
            mant,
            bits: prec.bits,
        }
    }

    pub fn precision(&self) -> Precision {
        Precision { bits: self.bits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        HpReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    /// Re-expresses the value with a different number of fractional bits.
    pub fn with_precision(&self, prec: Precision) -> Self {
        let mant = match prec.bits.cmp(&self.bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (prec.bits - self.bits),
            Ordering::Less => shift_round(&self.mant, self.bits - prec.bits),
        };
        HpReal {
            mant,
            bits: prec.bits,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits() as i64;
        let shift = (len - 62).max(0);
        let head = (&self.mant >> shift as u32).to_f64().unwrap_or(0.0);
        head * 2f64.powi((shift - self.bits as i64) as i32)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "mixed precisions");
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        HpReal {
            mant: &self.mant * k.into(),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> Self {
        HpReal {
            mant: div_round(&self.mant, &k.into()),
            bits: self.bits,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.check(other);
        assert!(!other.mant.is_zero(), "division by zero");
        let (mut num, mut den) = (&self.mant << self.bits, other.mant.clone());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        HpReal {
            mant: div_round(&num, &den),
            bits: self.bits,
        }
    }

    /// `1 / k^j`.
    pub fn recip_pow(k: u64, j: u32, prec: Precision) -> Self {
        Self::from_ratio(1, num_traits::pow(BigInt::from(k), j as usize), prec)
    }

    /// Natural logarithm. Panics unless `self > 0`.
    pub fn ln(&self) -> Self {
        assert!(self.mant.is_positive(), "ln of a nonpositive value");
        let prec = self.precision();
        let work = prec.work();
        let top = self.mant.bits() as i64 - 1;
        let r = align(self.mant.magnitude(), top, work.bits);
        ln_reduced(r, top - self.bits as i64, work).with_precision(prec)
    }

    pub fn exp(&self) -> Self {
        let prec = self.precision();
        let squarings = 16u32;
        let work = Precision::from_bits(prec.bits + WORK_BITS + squarings);
        let x = self.with_precision(work);
        let ln2 = ln2(work);
        let k = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
        let r = &x - &ln2.mul_int(k);
        let y = HpReal {
            mant: shift_round(&r.mant, squarings),
            bits: work.bits,
        };
        let mut sum = HpReal::one(work);
        let mut term = HpReal::one(work);
        let mut i = 1u64;
        loop {
            term = (&term * &y).div_int(i);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
            i += 1;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        let mant = if k >= 0 {
            sum.mant << k as u32
        } else {
            shift_round(&sum.mant, (-k) as u32)
        };
        HpReal {
            mant,
            bits: work.bits,
        }
        .with_precision(prec)
    }

    /// Rounded to `decimals` places after the point, in plain notation.
    pub fn to_fixed_string(&self, decimals: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), decimals);
        let scaled = shift_round(&(&self.mant * scale), self.bits);
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let padded = if digits.len() <= decimals {
            format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - decimals);
        let sign = if neg { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    /// Decimal places this precision supports after removing guard bits.
    pub fn reliable_decimals(&self) -> usize {
        (self.bits.saturating_sub(Precision::GUARD_BITS) as f64 * std::f64::consts::LOG10_2) as usize
    }
}

/// Mantissa of `v / 2^top` with `bits` fractional bits, i.e. a value in
/// `[1, 2)` when `top` is the index of the leading bit of `v`.
fn align(v: &BigUint, top: i64, bits: u32) -> BigUint {
    let shift = top - bits as i64;
    if shift >= 0 {
        v >> shift as u64
    } else {
        v << (-shift) as u64
    }
}

/// `ln(r / 2^bits) + e ln 2` for `r / 2^bits` in `[1, 2)`.
fn ln_reduced(r: BigUint, mut e: i64, work: Precision) -> HpReal {
    let one = BigUint::one() << work.bits;
    let mut r = r;
    // Move r into [1/sqrt2, sqrt2) so the atanh argument stays below 0.172.
    if &r * &r > (&one * &one) << 1u32 {
        r >>= 1u32;
        e += 1;
    }
    let r = BigInt::from_biguint(Sign::Plus, r);
    let one = BigInt::from_biguint(Sign::Plus, one);
    let z = HpReal::from_ratio(&r - &one, &r + &one, work);
    let series = atanh_series(&z);
    let ln_r = series.mul_int(2);
    &ln_r + &ln2(work).mul_int(e)
}

/// `sum_{k>=0} z^(2k+1) / (2k+1)` for small `|z|`.
fn atanh_series(z: &HpReal) -> HpReal {
    let z2 = z * z;
    let mut pow = z.clone();
    let mut sum = z.clone();
    let mut k = 1u64;
    loop {
        pow = &pow * &z2;
        let term = pow.div_int(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum
}

/// `sum_k s^k / ((2k+1) q^(2k+1))` with `s = 1` (atanh) or `s = -1` (atan).
fn inverse_series(q: u64, alternating: bool, prec: Precision) -> HpReal {
    let q2 = BigInt::from(q) * q;
    let mut pow = BigInt::from_biguint(Sign::Plus, BigUint::one() << prec.bits) / q;
    let mut sum = pow.clone();
    let mut k = 1u64;
    while !pow.is_zero() {
        pow = &pow / &q2;
        let term = &pow / (2 * k + 1);
        if alternating && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    HpReal {
        mant: sum,
        bits: prec.bits,
    }
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: Precision) -> HpReal {
    let work = prec.work();
    inverse_series(3, false, work).mul_int(2).with_precision(prec)
}

/// Machin: `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: Precision) -> HpReal {
    let work = prec.work();
    let a = inverse_series(5, true, work).mul_int(16);
    let b = inverse_series(239, true, work).mul_int(4);
    (&a - &b).with_precision(prec)
}

/// `ln N` for a positive big integer, from its leading `bits + 32` bits.
pub fn ln_natural(n: &BigUint, prec: Precision) -> HpReal {
    assert!(!n.is_zero(), "ln 0");
    let work = prec.work();
    let top = n.bits() as i64 - 1;
    ln_reduced(align(n, top, work.bits), top, work).with_precision(prec)
}

pub fn ln_u64(n: u64, prec: Precision) -> HpReal {
    ln_natural(&BigUint::from(n), prec)
}

impl Add for &HpReal {
    type Output = HpReal;
    fn add(self, rhs: &HpReal) -> HpReal {
        self.check(rhs);
        HpReal {
            mant: &self.mant + &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Sub for &HpReal {
    type Output = HpReal;
    fn sub(self, rhs: &HpReal) -> HpReal {
        self.check(rhs);
        HpReal {
            mant: &self.mant - &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Mul for &HpReal {
    type Output = HpReal;
    fn mul(self, rhs: &HpReal) -> HpReal {
        self.check(rhs);
        HpReal {
            mant: shift_round(&(&self.mant * &rhs.mant), self.bits),
            bits: self.bits,
        }
    }
}

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal {
            mant: -&self.mant,
            bits: self.bits,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for HpReal {
            type Output = HpReal;
            fn $f(self, rhs: HpReal) -> HpReal {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl PartialOrd for HpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HpReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decimals = f.precision().unwrap_or_else(|| self.reliable_decimals());
        f.write_str(&self.to_fixed_string(decimals))
    }
}
