//! Elementary number-theoretic helpers shared across the crate: factorization,
//! divisor enumeration, the Möbius function, Euler's totient, and checked lcm.
//!
//! Everything here works on `u64` by trial division; the crate never needs to
//! factor anything larger than a weight entry or a divisor-lattice modulus.

use num_integer::Integer;

/// Greatest common divisor, with `gcd(0, n) = n`.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Least common multiple, `None` on u64 overflow. `lcm(0, n)` is not used here;
/// both arguments are expected positive.
pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    debug_assert!(a > 0 && b > 0);
    (a / a.gcd(&b)).checked_mul(b)
}

/// Prime factorization by trial division, as ascending `(prime, exponent)` pairs.
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Number-theoretic Möbius function: 0 unless squarefree, else (-1)^t for t
/// distinct prime factors.
pub fn moebius(n: u64) -> i64 {
    let mut mu = 1i64;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Ascending primes of `n` (the p_j of its prime support).
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// All `d >= 1` with `totient(d) <= bound`, sorted ascending.
///
/// Enumerated by depth-first search over prime-power factorizations rather than
/// by sieving: the largest such `d` can exceed the bound by a large factor, and
/// phi(d) >= sqrt(d/2) makes any sieve limit wasteful. The candidate primes are
/// exactly those with `p - 1 <= bound`.
pub fn totient_at_most(bound: u64) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    let primes = primes_up_to(bound.saturating_add(1));
    let mut out = Vec::new();
    // Stack of (next prime index, current d, current phi(d)).
    let mut stack = vec![(0usize, 1u64, 1u64)];
    while let Some((start, d, phi)) = stack.pop() {
        out.push(d);
        for (idx, &p) in primes.iter().enumerate().skip(start) {
            // phi gains a factor p-1 on first use of p; primes are ascending,
            // so once one overshoots the rest do too.
            let Some(mut phi_next) = phi.checked_mul(p - 1) else {
                break;
            };
            if phi_next > bound {
                break;
            }
            // phi(m) >= sqrt(m/2) keeps d*p within u64 once the phi check
            // passes, but stay checked anyway.
            let Some(mut d_next) = d.checked_mul(p) else {
                continue;
            };
            loop {
                stack.push((idx + 1, d_next, phi_next));
                match (phi_next.checked_mul(p), d_next.checked_mul(p)) {
                    (Some(phi2), Some(d2)) if phi2 <= bound => {
                        phi_next = phi2;
                        d_next = d2;
                    }
                    _ => break,
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Primes up to and including `n`, by sieve of Eratosthenes.
fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
