//! Brute-force oracles. Nothing here shares code with the formula side: the
//! field tables, irreducibility sieve and factorial factorizations are built
//! from scratch so that agreement is evidence rather than tautology.

use std::collections::{HashSet, VecDeque};

use crate::groups::Family;

/// GF(p^k) as addition and multiplication tables over element indices. The
/// index of an element is its coefficient vector read as base-`p` digits,
/// least significant first.
#[derive(Debug, Clone)]
pub struct TableField {
    pub p: u64,
    pub k: u32,
    pub q: usize,
    pub modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = index % p;
        index /= p;
    }
    out
}

fn undigits(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn schoolbook(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Least monic irreducible of degree `k` over GF(p), in the order that
/// compares `c_0` first. Reducible polynomials are found by multiplying out
/// every pair of monic factors.
pub fn sieve_least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let monic = |deg: u32, i: u64| {
        let mut c = digits(i, p, deg as usize);
        c.push(1);
        c
    };
    let mut reducible = HashSet::new();
    for a in 1..=k / 2 {
        let b = k - a;
        for i in 0..p.pow(a) {
            for j in 0..p.pow(b) {
                reducible.insert(schoolbook(&monic(a, i), &monic(b, j), p));
            }
        }
    }
    // Enumerating with c_0 as the most significant digit gives the required order.
    (0..p.pow(k))
        .map(|i| {
            let mut c: Vec<u64> = digits(i, p, k as usize).into_iter().rev().collect();
            c.push(1);
            c
        })
        .find(|c| !reducible.contains(c))
        .expect("an irreducible polynomial of every degree exists")
}

impl TableField {
    pub fn new(p: u64, k: u32) -> TableField {
        let modulus = if k == 1 { vec![0, 1] } else { sieve_least_irreducible(p, k) };
        let q = p.pow(k) as usize;
        let ku = k as usize;
        let elems: Vec<Vec<u64>> = (0..q as u64).map(|i| digits(i, p, ku)).collect();
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                add[i * q + j] = undigits(&s, p) as u32;
                let mut prod = schoolbook(a, b, p);
                for top in (ku..prod.len()).rev() {
                    let c = prod[top];
                    if c != 0 {
                        for (t, &m) in modulus.iter().enumerate() {
                            let idx = top - ku + t;
                            prod[idx] = (prod[idx] + (p - c) * m) % p;
                        }
                    }
                }
                mul[i * q + j] = undigits(&prod[..ku], p) as u32;
            }
        }
        let neg = (0..q).map(|i| (0..q).find(|&j| add[i * q + j] == 0).unwrap() as u32).collect();
        TableField { p, k, q, modulus, add, mul, neg }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// `a^e` by repeated multiplication.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Multiplicative order by stepping through powers.
    pub fn order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }
}

type Matrix = Vec<u32>;

fn mat_mul(f: &TableField, n: usize, a: &[u32], b: &[u32]) -> Matrix {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for t in 0..n {
                s = f.add(s, f.mul(a[i * n + t], b[t * n + j]));
            }
            out[i * n + j] = s;
        }
    }
    out
}

fn det(f: &TableField, n: usize, a: &[u32]) -> u32 {
    let m = |x, y| f.mul(x, y);
    let sub = |x, y| f.add(x, f.neg(y));
    match n {
        1 => a[0],
        2 => sub(m(a[0], a[3]), m(a[1], a[2])),
        3 => {
            let c0 = sub(m(a[4], a[8]), m(a[5], a[7]));
            let c1 = sub(m(a[3], a[8]), m(a[5], a[6]));
            let c2 = sub(m(a[3], a[7]), m(a[4], a[6]));
            f.add(sub(m(a[0], c0), m(a[1], c1)), m(a[2], c2))
        }
        _ => {
            // Laplace expansion along the first row.
            let mut total = 0;
            for col in 0..n {
                let minor: Vec<u32> = (1..n)
                    .flat_map(|r| (0..n).filter(move |&c| c != col).map(move |c| (r, c)))
                    .map(|(r, c)| a[r * n + c])
                    .collect();
                let term = m(a[col], det(f, n - 1, &minor));
                total = if col % 2 == 0 { f.add(total, term) } else { sub(total, term) };
            }
            total
        }
    }
}

/// Whether `conj(A)^T B A = B`, checked entry by entry.
fn preserves(f: &TableField, n: usize, a: &[u32], b: &[u32], conj: &[u32]) -> bool {
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for s in 0..n {
                let left = conj[a[s * n + i] as usize];
                if left == 0 {
                    continue;
                }
                for t in 0..n {
                    acc = f.add(acc, f.mul(left, f.mul(b[s * n + t], a[t * n + j])));
                }
            }
            if acc != b[i * n + j] {
                return false;
            }
        }
    }
    true
}

/// Calls `visit` on every `n x n` matrix over a field of size `q`.
fn for_each_matrix(q: usize, n: usize, mut visit: impl FnMut(&[u32])) {
    let mut a = vec![0u32; n * n];
    loop {
        visit(&a);
        let mut pos = 0;
        loop {
            if pos == a.len() {
                return;
            }
            a[pos] += 1;
            if (a[pos] as usize) < q {
                break;
            }
            a[pos] = 0;
            pos += 1;
        }
    }
}

fn identity(n: usize) -> Matrix {
    (0..n * n).map(|i| u32::from(i % (n + 1) == 0)).collect()
}

/// Symplectic form on `2m` coordinates pairing `i` with `2m-1-i`.
fn symplectic_form(f: &TableField, n: usize) -> Matrix {
    let mut j = vec![0; n * n];
    for i in 0..n / 2 {
        j[i * n + (n - 1 - i)] = 1;
        j[(n - 1 - i) * n + i] = f.neg(1);
    }
    j
}

/// A non-square of GF(q), q odd.
fn non_square(f: &TableField) -> u32 {
    let squares: HashSet<u32> = (1..f.q as u32).map(|x| f.mul(x, x)).collect();
    (1..f.q as u32).find(|x| !squares.contains(x)).expect("odd field has a non-square")
}

/// Symmetric Gram matrix of the plus, minus or odd-dimensional form.
fn orthogonal_form(f: &TableField, family: Family, n: usize) -> Matrix {
    let mut b = vec![0; n * n];
    let hyperbolic_pairs = if family == Family::OmegaMinus { n / 2 - 1 } else { n / 2 };
    for i in 0..hyperbolic_pairs {
        b[(2 * i) * n + 2 * i + 1] = 1;
        b[(2 * i + 1) * n + 2 * i] = 1;
    }
    match family {
        Family::OmegaMinus => {
            // Anisotropic plane x^2 - d y^2 with d a non-square.
            let t = n - 2;
            b[t * n + t] = 1;
            b[(t + 1) * n + t + 1] = f.neg(non_square(f));
        }
        Family::OmegaOdd => b[(n - 1) * n + n - 1] = 1,
        _ => {}
    }
    b
}

fn invert_by_power(f: &TableField, n: usize, a: &[u32], group_exponent_bound: usize) -> Matrix {
    let id = identity(n);
    let mut x = a.to_vec();
    let mut prev = id.clone();
    for _ in 0..group_exponent_bound {
        if x == id {
            return prev;
        }
        prev = x.clone();
        x = mat_mul(f, n, &x, a);
    }
    panic!("element order exceeds bound");
}

/// Subgroup generated by the commutators of `group`.
fn derived_subgroup(f: &TableField, n: usize, group: &[Matrix]) -> usize {
    let bound = group.len() + 1;
    let inverses: Vec<Matrix> = group.iter().map(|g| invert_by_power(f, n, g, bound)).collect();
    let mut gens = HashSet::new();
    for (a, ai) in group.iter().zip(&inverses) {
        for (b, bi) in group.iter().zip(&inverses) {
            let c = mat_mul(f, n, &mat_mul(f, n, ai, bi), &mat_mul(f, n, a, b));
            gens.insert(c);
        }
    }
    let gens: Vec<Matrix> = gens.into_iter().collect();
    let mut seen = HashSet::from([identity(n)]);
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mat_mul(f, n, &x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// Number of scalar matrices in a group given by membership test.
fn count_scalars(q: usize, n: usize, member: impl Fn(&[u32]) -> bool) -> u64 {
    (1..q as u32)
        .filter(|&l| {
            let m: Matrix = (0..n * n).map(|i| if i % (n + 1) == 0 { l } else { 0 }).collect();
            member(&m)
        })
        .count() as u64
}

/// Order of the classical group `family` of rank/dimension `n` over GF(q),
/// counted by enumerating all `n x n` matrices over the entry field (GF(q^2)
/// for unitary groups). `n` follows the formula side: matrix size for every
/// family.
///
/// Returns `None` when the family is unsupported here (orthogonal groups in
/// even characteristic) or the enumeration would exceed `limit` matrices.
pub fn enumerate_order(family: Family, n: u32, q: u64, limit: u64) -> Option<u64> {
    let (p, k) = crate::arith::prime_power(q)?;
    let unitary = matches!(family, Family::SU | Family::PSU);
    let entry_k = if unitary { 2 * k } else { k };
    let entry_q = p.checked_pow(entry_k)?;
    let n_us = n as usize;
    if entry_q.checked_pow(n * n).is_none_or(|t| t > limit) {
        return None;
    }
    let orthogonal = matches!(family, Family::OmegaPlus | Family::OmegaMinus | Family::OmegaOdd);
    if orthogonal && p == 2 {
        return None;
    }
    match family {
        Family::Sp | Family::PSp | Family::OmegaPlus | Family::OmegaMinus if n % 2 == 1 => return None,
        Family::OmegaOdd if n % 2 == 0 => return None,
        Family::Sym | Family::Alt | Family::SporadicOrCover => return None,
        _ => {}
    }
    let f = TableField::new(p, entry_k);
    let qu = f.q;
    let conj: Vec<u32> = (0..qu as u32).map(|x| if unitary { f.pow(x, q) } else { x }).collect();
    let form = match family {
        Family::Sp | Family::PSp => Some(symplectic_form(&f, n_us)),
        Family::SU | Family::PSU => Some(identity(n_us)),
        _ if orthogonal => Some(orthogonal_form(&f, family, n_us)),
        _ => None,
    };
    let member = |a: &[u32]| -> bool {
        let d = det(&f, n_us, a);
        let det_ok = match family {
            Family::GL => d != 0,
            Family::Sp | Family::PSp => d != 0,
            _ if orthogonal => d != 0,
            _ => d == 1,
        };
        det_ok && form.as_ref().is_none_or(|b| preserves(&f, n_us, a, b, &conj))
    };
    if orthogonal {
        let mut group: Vec<Matrix> = Vec::new();
        for_each_matrix(qu, n_us, |a| {
            if member(a) {
                group.push(a.to_vec());
            }
        });
        return Some(derived_subgroup(&f, n_us, &group) as u64);
    }
    let mut count = 0u64;
    for_each_matrix(qu, n_us, |a| count += u64::from(member(a)));
    match family {
        Family::PSL | Family::PSU | Family::PSp => Some(count / count_scalars(qu, n_us, member)),
        _ => Some(count),
    }
}

/// Trial-division factorization of every integer in `2..=n`, summed.
pub fn factorial_valuation_by_factoring(n: u64, p: u64) -> u64 {
    (2..=n)
        .map(|mut m| {
            let mut v = 0;
            while m % p == 0 {
                m /= p;
                v += 1;
            }
            v
        })
        .sum()
}

/// Marks every `a^b <= n` with `a, b >= 2`.
pub fn perfect_power_sieve(n: u64) -> Vec<bool> {
    let mut is_power = vec![false; n as usize + 1];
    let mut a = 2u64;
    while a * a <= n {
        let mut x = a * a;
        while x <= n {
            is_power[x as usize] = true;
            match x.checked_mul(a) {
                Some(y) => x = y,
                None => break,
            }
        }
        a += 1;
    }
    is_power
}
