//! Integer factorization for the divisor oracle.
//!
//! Trial division by the primes below 10^6, then Pollard's rho with Brent's
//! cycle detection on whatever composite cofactor is left. Primality is
//! Miller-Rabin: deterministic bases below 2^64, the first 40 primes as bases
//! above.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) const TRIAL_BOUND: u32 = 1_000_000;

/// Deterministic for every `n < 2^64`.
const MR_BASES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_ROUNDS_BIG: usize = 40;
const RHO_MAX_ITERS: u64 = 1 << 26;

pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(78_500);
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_64 {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES_64 {
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

pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let primes = small_primes();
    for &p in &primes[..MR_ROUNDS_BIG] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &primes[..MR_ROUNDS_BIG] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One Brent rho run with `f(x) = x² + c`, starting at `x = 2`.
fn rho_brent_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    let m = 128;
    let mut g = 1;
    let mut iters = 0;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
        iters += r;
        if iters > RHO_MAX_ITERS {
            return None;
        }
    }
    if g == n {
        // backtrack one step at a time
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_brent_big(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let (mut r, mut q) = (1u64, BigUint::one());
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128;
    let mut g = one.clone();
    let mut iters = 0;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = q * diff % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        iters += r;
        if iters > RHO_MAX_ITERS {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

/// Splits a composite `n` into a nontrivial factor. Tries `c = seed, seed+1,
/// ...` until a run succeeds.
fn split_u64(n: u64, seed: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = seed % n;
    loop {
        if c != 0 && c != n - 2 {
            if let Some(f) = rho_brent_u64(n, c) {
                return f;
            }
        }
        c = (c + 1) % n;
    }
}

fn split_big(n: &BigUint, seed: u64) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let two = BigUint::from(2u32);
    let mut c = BigUint::from(seed) % n;
    loop {
        if !c.is_zero() && c != n - &two {
            if let Some(f) = rho_brent_big(n, &c) {
                return f;
            }
        }
        c = (c + 1u32) % n;
    }
}

fn push_factor<T: Ord + Clone>(out: &mut Vec<(T, u32)>, p: T, e: u32) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, k)) => *k += e,
        None => out.push((p, e)),
    }
}

fn rho_factor_u64(n: u64, seed: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        push_factor(out, n, 1);
        return;
    }
    let f = split_u64(n, seed);
    rho_factor_u64(f, seed, out);
    rho_factor_u64(n / f, seed, out);
}

pub fn factor_u64(mut n: u64, seed: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut rem_is_prime = is_prime_u64(n);
    if !rem_is_prime {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > n {
                break;
            }
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
                rem_is_prime = is_prime_u64(n);
                if rem_is_prime {
                    break;
                }
            }
        }
    }
    if n > 1 {
        if rem_is_prime || is_prime_u64(n) {
            out.push((n, 1));
        } else {
            rho_factor_u64(n, seed, &mut out);
        }
    }
    out.sort();
    out
}

fn rho_factor_big(n: BigUint, seed: u64, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factor_u64(small, seed) {
            push_factor(out, BigUint::from(p), e);
        }
        return;
    }
    if is_probable_prime(&n) {
        push_factor(out, n, 1);
        return;
    }
    let f = split_big(&n, seed);
    let cof = &n / &f;
    rho_factor_big(f, seed, out);
    rho_factor_big(cof, seed, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `1` factors as
/// the empty product.
pub fn factorize(n: &BigUint, seed: u64) -> Vec<(BigUint, u32)> {
    if let Some(small) = n.to_u64() {
        return factor_u64(small, seed)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut out = Vec::new();
    let mut rem = n.clone();
    let mut rem_is_prime = is_probable_prime(&rem);
    if !rem_is_prime {
        for &p in small_primes() {
            if rem.to_u64().is_some() {
                break;
            }
            if (&rem % p).is_zero() {
                let mut e = 0;
                while (&rem % p).is_zero() {
                    rem /= p;
                    e += 1;
                }
                out.push((BigUint::from(p), e));
                rem_is_prime = is_probable_prime(&rem);
                if rem_is_prime {
                    break;
                }
            }
        }
    }
    if rem_is_prime {
        out.push((rem, 1));
    } else {
        rho_factor_big(rem, seed, &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn sieve_size() {
        assert_eq!(small_primes().len(), 78_498);
        assert_eq!(*small_primes().last().unwrap(), 999_983);
    }

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<u64> = (0..2000).filter(|&n| is_prime_u64(n)).collect();
        let expected: Vec<u64> = (0..2000u64)
            .filter(|&n| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, expected);
        // strong pseudoprimes to several small bases
        for n in [
            3_215_031_751u64,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
        ] {
            assert!(!is_prime_u64(n), "{n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn matches_naive_factorization() {
        for n in 1..20_000u64 {
            assert_eq!(factor_u64(n, 1), naive(n), "n={n}");
        }
        for n in [4_294_967_297u64, 600_851_475_143, 999_983 * 999_979 * 3] {
            let ours = factor_u64(n, 1);
            let product: u64 = ours.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(product, n);
            assert!(ours.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn rho_splits_large_semiprimes() {
        // both factors above the trial-division bound
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factor_u64(p * q, 1), vec![(q, 1), (p, 1)]);
        assert_eq!(factor_u64(p * q, 12345), vec![(q, 1), (p, 1)]);

        let big_p: BigUint = "1000000000000000003".parse().unwrap();
        let big_q: BigUint = "1000000007".parse().unwrap();
        let n = &big_p * &big_q * &big_q;
        assert_eq!(
            factorize(&n, 1),
            vec![(big_q.clone(), 2), (big_p.clone(), 1)]
        );
    }

    #[test]
    fn big_prime_detection() {
        let m61: BigUint = (BigUint::one() << 61) - 1u32;
        let m89: BigUint = (BigUint::one() << 89) - 1u32;
        assert!(is_probable_prime(&m61));
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(&m61 * &m89)));
        let p = BigUint::from(1_000_000_007u32);
        assert_eq!(factorize(&(&p * &m89), 7), vec![(p, 1), (m89, 1)]);
    }
}
