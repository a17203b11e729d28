//! Machine-word number theory: primality, trial-division factoring and
//! multiplicative orders modulo small integers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (prime, exp) in factorize(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..exp {
            pk *= prime;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Least `k >= 1` with `base^k = 1 (mod modulus)`, or `None` when `base` is
/// not a unit modulo `modulus`.
pub fn multiplicative_order_mod(base: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(1);
    }
    if num_integer::gcd(base % modulus, modulus) != 1 {
        return None;
    }
    let phi = euler_phi(modulus);
    let mut order = phi;
    for (prime, _) in factorize(phi) {
        while order % prime == 0 && pow_mod(base, order / prime, modulus) == 1 {
            order /= prime;
        }
    }
    Some(order)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (prime, _)| acc / prime * (prime - 1))
}

/// `Some(k)` when `q = p^k` for a prime `p` (returned alongside).
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}
