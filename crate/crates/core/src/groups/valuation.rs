use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest `e` with `p^e | n`.
pub fn p_valuation(n: &BigUint, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut rest = n.clone();
    let mut e = 0;
    loop {
        let (quot, rem) = num_integer::Integer::div_rem(&rest, &BigUint::from(p));
        if !rem.is_zero() {
            return Ok(e);
        }
        rest = quot;
        e += 1;
    }
}

/// Legendre's formula: `v_p(n!) = sum_{j >= 1} floor(n / p^j)`.
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pj = p;
    while pj <= n {
        total += n / pj;
        match pj.checked_mul(p) {
            Some(next) => pj = next,
            None => break,
        }
    }
    total
}

/// True when `n = a^b` for some `a >= 2` and `b >= 2`.
pub fn is_nontrivial_power(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::OutOfRange(n));
    }
    let max_exp = 63 - n.leading_zeros();
    Ok((2..=max_exp).any(|b| {
        let root = n.nth_root(b);
        root >= 2 && root.checked_pow(b) == Some(n)
    }))
}
