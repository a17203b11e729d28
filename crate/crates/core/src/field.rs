//! Exact arithmetic in GF(p^k).
//!
//! A field is built once from `(p, k)` and shared through a cheap
//! [`FieldHandle`]. The defining modulus is the lexicographically least monic
//! irreducible polynomial of degree `k`, comparing the ascending coefficient
//! vector `(c_0, c_1, ..., c_{k-1})` entry by entry. Elements are coefficient
//! vectors in the power basis of the modulus root.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith::{factorize, is_prime, mul_mod};
use crate::error::{Error, Result};

/// Largest field size `p^k` accepted by [`make_field`].
pub const FIELD_SIZE_LIMIT: u64 = 1_000_000_000;

#[derive(Debug)]
struct FieldData {
    p: u64,
    k: u32,
    size: u64,
    /// Monic, ascending, length `k + 1`.
    modulus: Vec<u64>,
    /// Factorization of `size - 1`.
    unit_factors: Vec<(u64, u32)>,
    /// Coefficients of the deterministic primitive element.
    generator: Vec<u64>,
}

#[derive(Clone)]
pub struct FieldHandle(Arc<FieldData>);

impl fmt::Debug for FieldHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for FieldHandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldHandle {}

/// Builds GF(p^k).
pub fn make_field(p: u64, k: u32) -> Result<FieldHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::ZeroDegree(k));
    }
    let size = p
        .checked_pow(k)
        .filter(|&s| s <= FIELD_SIZE_LIMIT)
        .ok_or(Error::FieldTooLarge { p, k, limit: FIELD_SIZE_LIMIT })?;
    let modulus = least_irreducible(p, k);
    let mut data = FieldData {
        p,
        k,
        size,
        modulus,
        unit_factors: factorize(size - 1),
        generator: Vec::new(),
    };
    data.generator = find_generator(&data);
    Ok(FieldHandle(Arc::new(data)))
}

impl FieldHandle {
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Ascending coefficients of the monic modulus, length `k + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![0; self.0.k as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.0.p as i64) as u64;
        e
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::FieldMismatch);
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c % self.0.p;
        }
        Ok(e)
    }

    /// The element whose coefficients are the base-`p` digits of `index`,
    /// least significant digit first.
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = index % self.0.p;
            index /= self.0.p;
        }
        e
    }

    /// The primitive element with least index in the [`from_index`] order.
    ///
    /// [`from_index`]: FieldHandle::from_index
    pub fn generator(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: self.0.generator.clone() }
    }

    /// Elements in [`FieldHandle::from_index`] order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.size).map(move |i| self.from_index(i))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldHandle,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.k == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            match (c, i) {
                (0, _) => {}
                (c, 0) => terms.push(format!("{c}")),
                (1, 1) => terms.push("x".to_string()),
                (c, 1) => terms.push(format!("{c}x")),
                (1, i) => terms.push(format!("x^{i}")),
                (c, i) => terms.push(format!("{c}x^{i}")),
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldHandle {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(self.field.0.size - 2))
    }

    /// `x^(p^j)`; `j` is taken modulo the field degree.
    pub fn frobenius(&self, j: u64) -> FieldElement {
        let k = self.field.0.k as u64;
        let mut out = self.clone();
        for _ in 0..(j % k) {
            out = out.pow(self.field.0.p);
        }
        out
    }

    /// Multiplicative order, by descent through the maximal divisors of
    /// `p^k - 1`.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut order = self.field.0.size - 1;
        for &(prime, _) in &self.field.0.unit_factors {
            while order % prime == 0 && self.pow(order / prime).is_one() {
                order /= prime;
            }
        }
        Ok(order)
    }

    /// `[GF(p)(x) : GF(p)]`, the least `d` with `x^(p^d) = x`.
    pub fn degree(&self) -> u32 {
        let k = self.field.0.k;
        let mut current = self.clone();
        for d in 1..=k {
            current = current.pow(self.field.0.p);
            if k % d == 0 && current == *self {
                return d;
            }
        }
        unreachable!("x^(p^k) = x holds for every element of GF(p^k)")
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(self.field == other.field, "arithmetic across different fields");
    }

    pub fn scale(&self, c: i64) -> FieldElement {
        self * &self.field.from_int(c)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let data = &self.field.0;
        let product = poly_mul(&self.coeffs, &rhs.coeffs, data.p);
        let coeffs = poly_rem(product, &data.modulus, data.p);
        let mut coeffs = coeffs;
        coeffs.resize(data.k as usize, 0);
        FieldElement { field: self.field.clone(), coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

pub fn element_order(x: &FieldElement) -> Result<u64> {
    x.order()
}

pub fn element_degree(x: &FieldElement) -> u32 {
    x.degree()
}

pub fn frobenius(x: &FieldElement, j: u64) -> FieldElement {
    x.frobenius(j)
}

/// Degree over GF(p) of `xi + xi^-1` for a primitive fifth root of unity
/// `xi`: 1 when `X^2 + X - 1` has a root mod `p`, otherwise 2.
pub fn xi_half_degree(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 || p == 5 {
        return Err(Error::BadCharacteristic(p));
    }
    // The discriminant of X^2 + X - 1 is 5; Euler's criterion decides it.
    let splits = crate::arith::pow_mod(5, (p - 1) / 2, p) == 1;
    Ok(if splits { 1 } else { 2 })
}

/// Whether `GF(p)(alpha, xi + xi^-1) = GF(p)(alpha + alpha^-1, xi + xi^-1)`,
/// compared through compositum degrees.
pub fn condition_one_sim_two(alpha: &FieldElement) -> Result<bool> {
    let p = alpha.field().characteristic();
    let xi = xi_half_degree(p)?;
    let sum = alpha + &alpha.inverse()?;
    let lhs = num_integer::lcm(alpha.degree(), xi);
    let rhs = num_integer::lcm(sum.degree(), xi);
    Ok(lhs == rhs)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    out
}

/// Remainder of `a` modulo a monic polynomial.
fn poly_rem(mut a: Vec<u64>, monic: &[u64], p: u64) -> Vec<u64> {
    let deg = monic.len() - 1;
    while a.len() > deg {
        let lead = a.pop().unwrap_or(0);
        if lead != 0 {
            let shift = a.len() - deg;
            for (i, &m) in monic[..deg].iter().enumerate() {
                let t = mul_mod(lead, m, p);
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
    }
    a
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `index`, most significant digit in the constant term. Iterating
/// `index` upward walks the ascending coefficient vectors lexicographically.
fn monic_lex(p: u64, deg: u32, mut index: u64) -> Vec<u64> {
    let mut coeffs = vec![0u64; deg as usize + 1];
    coeffs[deg as usize] = 1;
    for slot in coeffs[..deg as usize].iter_mut().rev() {
        *slot = index % p;
        index /= p;
    }
    coeffs
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let k = (poly.len() - 1) as u32;
    for d in 1..=k / 2 {
        for index in 0..p.pow(d) {
            let divisor = monic_lex(p, d, index);
            if poly_rem(poly.to_vec(), &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    (0..p.pow(k))
        .map(|index| monic_lex(p, k, index))
        .find(|poly| is_irreducible(poly, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn find_generator(data: &FieldData) -> Vec<u64> {
    let k = data.k as usize;
    let n = data.size - 1;
    let reduce = |a: &[u64], b: &[u64]| {
        let mut r = poly_rem(poly_mul(a, b, data.p), &data.modulus, data.p);
        r.resize(k, 0);
        r
    };
    let pow = |x: &[u64], mut e: u64| {
        let mut acc = vec![0u64; k];
        acc[0] = 1;
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = reduce(&acc, &base);
            }
            base = reduce(&base, &base);
            e >>= 1;
        }
        acc
    };
    let is_one = |x: &[u64]| x[0] == 1 && x[1..].iter().all(|&c| c == 0);
    for index in 1..data.size {
        let mut coeffs = vec![0u64; k];
        let mut rest = index;
        for c in coeffs.iter_mut() {
            *c = rest % data.p;
            rest /= data.p;
        }
        if data.unit_factors.iter().all(|&(prime, _)| !is_one(&pow(&coeffs, n / prime))) {
            return coeffs;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> FieldHandle {
        make_field(p, k).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(15, 1).unwrap_err(), Error::NotPrime(15));
        assert_eq!(make_field(7, 0).unwrap_err(), Error::ZeroDegree(0));
        assert!(matches!(make_field(7, 20), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn prime_field_of_nineteen() {
        let f = gf(19, 1);
        assert_eq!(f.size(), 19);
        assert_eq!(f.generator().coeffs(), [2]);
    }

    #[test]
    fn order_examples() {
        let f = gf(19, 1);
        assert_eq!(f.one().order().unwrap(), 1);
        assert_eq!(f.from_int(4).order().unwrap(), 9);
        assert_eq!(f.from_int(-1).order().unwrap(), 2);
        assert_eq!(f.zero().order().unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn degree_examples() {
        let f = gf(11, 2);
        assert_eq!(f.zero().degree(), 1);
        assert_eq!(f.generator().order().unwrap(), 120);
        assert_eq!(f.generator().degree(), 2);

        let f = gf(13, 2);
        let x = f.generator().pow(168 / 14);
        assert_eq!(x.order().unwrap(), 14);
        let y = &x + &x.inverse().unwrap();
        assert_eq!(y.degree(), 1);
        assert_eq!(x.frobenius(1), x.inverse().unwrap());
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = gf(7, 3);
        for n in 0..7 {
            let x = f.from_int(n);
            assert_eq!(x.frobenius(2), x);
        }
        let g = f.generator();
        assert_eq!(g.frobenius(0), g);
        assert_eq!(g.frobenius(3), g);
    }

    #[test]
    fn xi_half_degrees() {
        assert_eq!(xi_half_degree(11).unwrap(), 1);
        assert_eq!(xi_half_degree(7).unwrap(), 2);
        assert_eq!(xi_half_degree(19).unwrap(), 1);
        assert_eq!(xi_half_degree(13).unwrap(), 2);
        assert_eq!(xi_half_degree(5).unwrap_err(), Error::BadCharacteristic(5));
        assert_eq!(xi_half_degree(2).unwrap_err(), Error::BadCharacteristic(2));
    }

    #[test]
    fn one_sim_two_examples() {
        let f = gf(19, 1);
        assert!(condition_one_sim_two(&f.from_int(4)).unwrap());

        let f = gf(13, 2);
        let alpha = f.generator().pow(168 / 14);
        assert_eq!(alpha.degree(), 2);
        assert!(condition_one_sim_two(&alpha).unwrap());

        let f = gf(11, 2);
        let alpha = f.generator().pow(120 / 40);
        let sum = &alpha + &alpha.inverse().unwrap();
        assert_eq!((alpha.degree(), sum.degree()), (2, 2));
        assert!(condition_one_sim_two(&alpha).unwrap());
    }

    #[test]
    fn inverse_roundtrip_gf343() {
        let f = gf(7, 3);
        for x in f.elements().skip(1) {
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn display_polynomial_basis() {
        let f = gf(7, 2);
        assert_eq!(f.element(&[3, 1]).unwrap().to_string(), "x + 3");
        assert_eq!(f.zero().to_string(), "0");
    }
}
