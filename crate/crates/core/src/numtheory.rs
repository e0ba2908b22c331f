//! Exact integer arithmetic on group orders and vertex colors.
//!
//! Everything here works on `u64`. Inputs are element orders and vertex
//! counts, so trial division is plenty.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("expected a positive integer, got 0")]
    Zero,
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Multiplies the factors back together.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

fn positive(n: u64) -> Result<u64, NumberError> {
    if n == 0 {
        Err(NumberError::Zero)
    } else {
        Ok(n)
    }
}

pub fn prime_factorization(n: u64) -> Result<Factorization, NumberError> {
    Ok(factorize(positive(n)?))
}

pub fn euler_phi(n: u64) -> Result<u64, NumberError> {
    Ok(totient(positive(n)?))
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>, NumberError> {
    Ok(divisor_list(positive(n)?))
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`. The value 1 is not a prime
/// power.
pub fn is_prime_power(n: u64) -> Result<Option<(u64, u32)>, NumberError> {
    Ok(prime_power(positive(n)?))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// True when `larger = smaller * p` for a prime `p`.
pub fn is_prime_ratio(larger: u64, smaller: u64) -> bool {
    smaller != 0 && larger.is_multiple_of(smaller) && is_prime(larger / smaller)
}

pub(crate) fn factorize(mut n: u64) -> Factorization {
    debug_assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Factorization(out)
}

pub(crate) fn totient(n: u64) -> u64 {
    factorize(n)
        .pairs()
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub(crate) fn divisor_list(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).pairs() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// True when `n` is `p^i` for some `i >= 0` (so 1 counts).
pub(crate) fn is_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
