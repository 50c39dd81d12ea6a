//! Exact integer arithmetic primitives: integer k-th roots, perfect-power
//! detection, prime sieves, and the Euler totient.
//!
//! All products are computed in 128-bit width, which covers every
//! desk-scale input this crate handles (shifted products of elements up
//! to 10^9 need fewer than 64 bits). Perfect powers use positive roots
//! only: `m` qualifies iff `m = x^k` for an integer `x >= 1`, so `m <= 0`
//! never qualifies.

use crate::{Error, Result};

/// Largest exponent a perfect-power test will try.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentCap(u32);

impl ExponentCap {
    pub fn new(cap: u32) -> Result<Self> {
        if cap < 2 {
            return Err(Error::InvalidParam(format!(
                "exponent cap must be >= 2, got {cap}"
            )));
        }
        Ok(ExponentCap(cap))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Cap large enough that no exponent is missed for values up to
    /// `value`: `x^e <= value` with `x >= 2` forces `e <= log2(value)`.
    pub fn covering(value: u128) -> Self {
        let bits = 128 - value.max(1).leading_zeros();
        ExponentCap((bits.saturating_sub(1)).max(2))
    }
}

fn pow_or_max(x: u128, e: u32) -> u128 {
    x.checked_pow(e).unwrap_or(u128::MAX)
}

/// Floor of the k-th root: returns `r` with `r^k <= m < (r+1)^k`.
///
/// Integer Newton iteration from a floating-point seed padded to sit
/// above the true root; exactness is restored by multiplication at the
/// end (at most a couple of steps).
pub fn ikroot(m: u128, k: u32) -> u128 {
    assert!(k >= 1, "ikroot requires k >= 1");
    if k == 1 || m <= 1 {
        return m;
    }
    if k >= 128 {
        return 1; // 2^128 > u128::MAX, so the root of any m >= 2 is 1
    }
    let seed = (m as f64).powf(1.0 / f64::from(k)) as u128;
    // pad past the float error so Newton descends onto the floor
    let mut x = seed + (seed >> 32) + 2;
    loop {
        let next = ((k as u128 - 1) * x + m / pow_or_max(x, k - 1)) / k as u128;
        if next >= x {
            break;
        }
        x = next;
    }
    // overflow of x^k means x is certainly past the root
    while x.checked_pow(k).is_none_or(|p| p > m) {
        x -= 1;
    }
    while (x + 1).checked_pow(k).is_some_and(|p| p <= m) {
        x += 1;
    }
    x
}

/// The positive root `x >= 1` with `x^k = m`, if one exists.
pub fn is_kth_power(m: u128, k: u32) -> Option<u128> {
    assert!(k >= 2, "is_kth_power requires k >= 2");
    if m == 0 {
        return None;
    }
    let r = ikroot(m, k);
    (pow_or_max(r, k) == m).then_some(r)
}

/// Smallest prime `p <= cap` such that `m` is a p-th power of a positive
/// integer. Composite exponents need not be tested: `m = x^{ab}` makes
/// `m = (x^a)^b`.
pub fn smallest_power_exponent(m: u128, cap: ExponentCap) -> Option<u32> {
    assert!(m >= 1, "smallest_power_exponent requires m >= 1");
    primes_up_to(u64::from(cap.get()))
        .into_iter()
        .find(|&p| is_kth_power(m, p as u32).is_some())
        .map(|p| p as u32)
}

/// All primes `<= q`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(q: u64) -> Vec<u64> {
    if q < 2 {
        return Vec::new();
    }
    let q = q as usize;
    let mut composite = vec![false; q + 1];
    let mut primes = Vec::new();
    for i in 2..=q {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= q {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes `p <= q` with `p ≡ a (mod r)`, ascending.
pub fn primes_in_ap(q: u64, modulus: u64, residue: u64) -> Vec<u64> {
    assert!(modulus >= 1, "primes_in_ap requires modulus >= 1");
    primes_up_to(q)
        .into_iter()
        .filter(|p| p % modulus == residue % modulus)
        .collect()
}

/// Euler's totient.
pub fn euler_phi(k: u64) -> u64 {
    assert!(k >= 1, "euler_phi requires k >= 1");
    let mut n = k;
    let mut phi = k;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial factorization into `(prime, multiplicity)` pairs, ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
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
    out
}
