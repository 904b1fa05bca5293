//! Prime generation for the scan ranges: a segmented sieve for bounds up to
//! 10^7 and deterministic Miller–Rabin above that.

const SIEVE_LIMIT: u64 = 10_000_000;

/// All primes ≤ bound, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let sieve_bound = bound.min(SIEVE_LIMIT);
    let mut primes = sieve(sieve_bound);
    if bound > SIEVE_LIMIT {
        let mut n = SIEVE_LIMIT + 1 + (SIEVE_LIMIT % 2);
        while n <= bound {
            if is_prime(n) {
                primes.push(n);
            }
            n += 2;
        }
    }
    primes
}

fn sieve(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 16 { n / (n.ilog2() as usize) } else { 8 });
    if n >= 2 {
        primes.push(2);
    }
    let mut i = 3usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    let mut i = 3usize;
    while i <= n {
        if !composite[i] {
            primes.push(i as u64);
        }
        i += 2;
    }
    primes
}

/// Deterministic Miller–Rabin for u64 (the 12-base certificate).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = crate::modres::pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = crate::modres::mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
