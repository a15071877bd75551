//! Small integer helpers.

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

pub fn is_prime_power(n: u64) -> bool {
    prime_divisors(n).len() == 1
}

/// The largest divisor of `n` whose prime divisors all satisfy `keep`.
pub fn part(mut n: u64, keep: impl Fn(u64) -> bool) -> u64 {
    let mut out = 1;
    for p in prime_divisors(n) {
        while n.is_multiple_of(p) {
            n /= p;
            if keep(p) {
                out *= p;
            }
        }
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    prime_divisors(n).iter().all(|&p| !n.is_multiple_of(p * p))
}
