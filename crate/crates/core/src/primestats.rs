//! Prime sieve and the bridges between `Ḡ_n` and prime counting.

use crate::asymptotics::{log_gbar_expansion, LnTable};
use crate::error::{Error, Result};
use crate::exact::{binomial_product_capped, ExactCap};
use crate::hp::Precision;
use crate::orders::nu_digitsum;
use crate::radix::Base;
use num_bigint::BigUint;
use num_traits::{One, Pow};

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

/// Sieve of Eratosthenes over odd numbers.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::domain("limit", limit, "limit >= 2"));
    }
    let len = usize::try_from(limit / 2 + 1).map_err(|_| Error::Overflow("sieve length"))?;
    // composite[i] refers to 2i + 1
    let mut composite = vec![false; len];
    let mut primes = vec![2];
    let mut i = 1usize;
    while i < len {
        let v = 2 * i as u64 + 1;
        if v > limit {
            break;
        }
        if !composite[i] {
            primes.push(v);
            let mut m = v * v;
            while m <= limit {
                composite[(m / 2) as usize] = true;
                m += 2 * v;
            }
        }
        i += 1;
    }
    Ok(PrimeTable { limit, primes })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes up to `x`, for `x <= limit`.
    pub fn primes_up_to(&self, x: u64) -> &[u64] {
        assert!(x <= self.limit, "{x} beyond sieve limit {}", self.limit);
        &self.primes[..self.primes.partition_point(|&p| p <= x)]
    }

    /// `π(x)` for `x <= limit`.
    pub fn pi(&self, x: u64) -> u64 {
        self.primes_up_to(x).len() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub n: u64,
    /// `(p, ord_p(Ḡ_n))` for every prime `p <= n` with nonzero order.
    pub factors: Vec<(u64, u128)>,
    pub value: BigUint,
}

/// Rebuilds `Ḡ_n = prod_{p<=n} p^{ord_p}` from the digit-sum orders and
/// compares it with the exact binomial product.
pub fn factorization_identity(n: u64, cap: ExactCap) -> Result<FactorizationReport> {
    cap.check(n)?;
    let exact = binomial_product_capped(n, cap)?;
    let factors = prime_factors_of_gbar(n)?;
    let mut rebuilt = BigUint::one();
    for &(p, e) in &factors {
        let e = u32::try_from(e).map_err(|_| Error::Overflow("factorization exponent"))?;
        rebuilt *= Pow::pow(BigUint::from(p), e);
    }
    if rebuilt != exact {
        return Err(Error::Inconsistent(format!(
            "prime factorization of Ḡ_{n} does not reproduce the binomial product"
        )));
    }
    Ok(FactorizationReport {
        n,
        factors,
        value: exact,
    })
}

impl FactorizationReport {
    /// `"96 = 2^5 * 3"`; the empty product prints as `"1 = 1"`.
    pub fn display(&self) -> String {
        let rhs = if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors
                .iter()
                .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect::<Vec<_>>()
                .join(" * ")
        };
        format!("{} = {rhs}", self.value)
    }
}

/// `(p, ord_p(Ḡ_n))` for primes `p <= n` with nonzero order.
pub fn prime_factors_of_gbar(n: u64) -> Result<Vec<(u64, u128)>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let table = sieve(n)?;
    let mut out = Vec::new();
    for &p in table.primes() {
        let e = nu_digitsum(n, Base::new(p)?)?.value;
        if e > 0 {
            out.push((p, e));
        }
    }
    Ok(out)
}

/// `log Ḡ_n = sum_p ord_p(Ḡ_n) log p` in double precision; every term is
/// nonnegative, so the relative error stays near machine epsilon.
pub fn log_gbar_from_orders(n: u64, table: &PrimeTable) -> Result<f64> {
    if n < 2 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for &p in table.primes_up_to(n) {
        total += nu_digitsum(n, Base::new(p)?)?.value as f64 * (p as f64).ln();
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChebyshevReport {
    pub n: u64,
    pub pi: u64,
    /// `n / (2 log n) - 1/2`.
    pub bound: f64,
    pub ok: bool,
    pub log_gbar: f64,
    /// `log Ḡ_n >= n^2/2 - (n/2) log n`.
    pub lower_chain: bool,
    /// `log Ḡ_n <= π(n) n log n`.
    pub upper_chain: bool,
}

/// `π(n) >= n/(2 log n) - 1/2` together with the two inequalities it is
/// derived from. `log_gbar` comes from the prime-order sum.
pub fn chebyshev_lower_bound(n: u64, table: &PrimeTable) -> Result<ChebyshevReport> {
    if n < 2 {
        return Err(Error::domain("n", n, "n >= 2"));
    }
    let nf = n as f64;
    let ln = nf.ln();
    let pi = table.pi(n);
    let bound = nf / (2.0 * ln) - 0.5;
    let log_gbar = log_gbar_from_orders(n, table)?;
    Ok(ChebyshevReport {
        n,
        pi,
        bound,
        ok: pi as f64 >= bound,
        log_gbar,
        lower_chain: log_gbar >= lower_chain_rhs(n),
        upper_chain: log_gbar <= pi as f64 * nf * ln,
    })
}

/// `n^2/2 - (n/2) log n`.
pub fn lower_chain_rhs(n: u64) -> f64 {
    let nf = n as f64;
    nf * nf / 2.0 - nf / 2.0 * nf.ln()
}

/// `(log Ḡ_n - π(n) n log n / 2) / n^2`.
///
/// `log Ḡ_n` is the exact value (to 50 digits) for `n <= cap` and the
/// order-4 expansion above it.
pub fn pnt_residual(n: u64, table: &PrimeTable, cap: ExactCap) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("n", n, "n >= 2"));
    }
    let prec = Precision::default();
    let log_gbar = if n <= cap.0 {
        LnTable::new(n, prec).log_gbar(n).to_f64()
    } else {
        log_gbar_expansion(n, 4, prec)?.value.to_f64()
    };
    let nf = n as f64;
    Ok((log_gbar - 0.5 * table.pi(n) as f64 * nf * nf.ln()) / (nf * nf))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderProfileRow {
    pub p: u64,
    pub ord: u128,
    /// `ord_p(Ḡ_n) / (n log_p n)`.
    pub scaled: f64,
}

/// `ord_p(Ḡ_n)` for every prime `p <= n`, as raw data.
pub fn ord_profile(n: u64) -> Result<Vec<OrderProfileRow>> {
    if n < 2 {
        return Err(Error::domain("n", n, "n >= 2"));
    }
    let table = sieve(n)?;
    let nf = n as f64;
    table
        .primes()
        .iter()
        .map(|&p| {
            let ord = nu_digitsum(n, Base::new(p)?)?.value;
            let scaled = ord as f64 / (nf * nf.ln() / (p as f64).ln());
            Ok(OrderProfileRow { p, ord, scaled })
        })
        .collect()
}
