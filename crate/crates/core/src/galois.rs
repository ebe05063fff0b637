//! Finite field arithmetic in GF(p^D), D = m0·m.
//!
//! Elements are canonical indices: the radix-p digits of an index are the
//! coefficients of the element in the polynomial basis {1, x, x², …} modulo the
//! field's modulus. A [`FieldSpec`] is a cheap handle (`Arc` inside) that is
//! immutable after construction and can be shared freely between threads.
//!
//! Fields of at most 256 elements multiply through log/antilog tables; larger
//! fields reduce polynomial products directly (carry-less for p = 2).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

/// Largest field size accepted; keeps indices and products in machine words.
pub const MAX_FIELD_SIZE: u64 = 1 << 30;

const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degrees must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{degree}) exceeds the supported field size")]
    TooLarge { p: u32, degree: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    BadModulus { p: u32, expected: u32 },
    #[error("modulus is reducible over GF({0})")]
    Reducible(u32),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("GF({sub}) is not a subfield of GF({sup})")]
    NotSubfield { sub: u64, sup: u64 },
    #[error("element index {value} out of range for a field of size {size}")]
    OutOfRange { value: u64, size: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

pub type Result<T> = std::result::Result<T, GaloisError>;

struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
    add: Option<Vec<u8>>,
}

struct Inner {
    p: u32,
    m0: u32,
    m: u32,
    degree: u32,
    size: u32,
    /// Monic, lowest degree first, length degree + 1.
    modulus: Vec<u32>,
    /// For p = 2: modulus without its leading term, as a bit mask.
    low_mask: u64,
    pow_p: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field GF(p^(m0·m)) viewed as the degree-m extension of GF(q), q = p^m0.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) [q = {}, m = {}, modulus {:?}]",
            self.inner.p,
            self.inner.degree,
            self.base_size(),
            self.inner.m,
            self.inner.modulus
        )
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power q into (p, e) with q = p^e.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(GaloisError::NotPrimePower(q));
    }
    let factors = prime_factors(q);
    if factors.len() != 1 || factors[0] > u32::MAX as u64 {
        return Err(GaloisError::NotPrimePower(q));
    }
    let p = factors[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Ok((p as u32, e))
}

/// Built-in primitive polynomials over GF(2), bit i = coefficient of x^i.
const BINARY_MODULI: [u32; 17] = [
    0, 0b11, 0b111, 0b1011, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B,
];

/// Default modulus for GF(p^degree): the built-in table for p = 2, otherwise the
/// smallest monic irreducible polynomial in radix-p order of its low coefficients.
pub fn default_modulus(p: u32, degree: u32) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(GaloisError::NotPrime(p));
    }
    if degree == 0 {
        return Err(GaloisError::ZeroDegree);
    }
    if p == 2 && (degree as usize) < BINARY_MODULI.len() {
        let bits = BINARY_MODULI[degree as usize];
        return Ok((0..=degree).map(|i| (bits >> i) & 1).collect());
    }
    if degree == 1 {
        return Ok(vec![0, 1]);
    }
    let count = (p as u64)
        .checked_pow(degree)
        .ok_or(GaloisError::TooLarge { p, degree })?;
    for low in 0..count {
        let mut poly = Vec::with_capacity(degree as usize + 1);
        let mut v = low;
        for _ in 0..degree {
            poly.push((v % p as u64) as u32);
            v /= p as u64;
        }
        poly.push(1);
        if poly[0] != 0 && is_irreducible(&poly, p) {
            return Ok(poly);
        }
    }
    Err(GaloisError::Reducible(p))
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.

fn ptrim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pmod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_prime(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        ptrim(&mut r);
    }
    r
}

fn pmulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
    pmod(&prod, m, p)
}

fn ppowmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = pmod(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = pmulmod(&result, &b, m, p);
        }
        b = pmulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn pgcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        let r = pmod(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn inv_mod_prime(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let mut result = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Rabin's irreducibility test for a monic polynomial over GF(p).
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    ptrim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let n = (f.len() - 1) as u64;
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // x^(p^n) == x mod f
    let mut xp = x.clone();
    for _ in 0..n {
        xp = ppowmod(&xp, p as u64, &f, p);
    }
    if pmod(&xp, &f, p) != pmod(&x, &f, p) {
        return false;
    }
    for r in prime_factors(n) {
        let mut xq = x.clone();
        for _ in 0..(n / r) {
            xq = ppowmod(&xq, p as u64, &f, p);
        }
        // xq - x
        let mut d = xq;
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        ptrim(&mut d);
        if d.is_empty() {
            return false;
        }
        let g = pgcd(&f, &d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldSpec {
    /// GF(p^(m0·m)) with the default modulus.
    pub fn new(p: u32, m0: u32, m: u32) -> Result<Self> {
        Self::with_modulus(p, m0, m, None)
    }

    /// GF(q) for a prime power q, default modulus.
    pub fn gf(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        Self::new(p, e, 1)
    }

    pub fn binary() -> Self {
        Self::new(2, 1, 1).expect("GF(2) is always constructible")
    }

    pub fn with_modulus(p: u32, m0: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        if m0 == 0 || m == 0 {
            return Err(GaloisError::ZeroDegree);
        }
        let degree = m0.checked_mul(m).ok_or(GaloisError::TooLarge {
            p,
            degree: u32::MAX,
        })?;
        let size = (p as u64)
            .checked_pow(degree)
            .filter(|&s| s <= MAX_FIELD_SIZE);
        let size = size.ok_or(GaloisError::TooLarge { p, degree })? as u32;
        let modulus = match modulus {
            Some(poly) => {
                if poly.len() != degree as usize + 1
                    || poly[degree as usize] != 1
                    || poly.iter().any(|&c| c >= p)
                {
                    return Err(GaloisError::BadModulus {
                        p,
                        expected: degree,
                    });
                }
                if !is_irreducible(&poly, p) {
                    return Err(GaloisError::Reducible(p));
                }
                poly
            }
            None => default_modulus(p, degree)?,
        };
        let low_mask = if p == 2 {
            modulus[..degree as usize]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        let pow_p = (0..=degree).map(|i| p.pow(i)).collect();
        let mut inner = Inner {
            p,
            m0,
            m,
            degree,
            size,
            modulus,
            low_mask,
            pow_p,
            tables: None,
        };
        if size <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }
    pub fn m0(&self) -> u32 {
        self.inner.m0
    }
    pub fn m(&self) -> u32 {
        self.inner.m
    }
    /// Degree over the prime field, m0·m.
    pub fn degree(&self) -> u32 {
        self.inner.degree
    }
    pub fn size(&self) -> u32 {
        self.inner.size
    }
    /// q = p^m0, size of the base field GF(q).
    pub fn base_size(&self) -> u32 {
        self.inner.p.pow(self.inner.m0)
    }
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }
    pub fn is_binary(&self) -> bool {
        self.inner.size == 2
    }

    /// GF(q) with its own default modulus.
    pub fn base_field(&self) -> FieldSpec {
        FieldSpec::new(self.inner.p, self.inner.m0, 1).expect("base field of a valid field")
    }

    pub fn elem(&self, value: u32) -> FieldElement<'_> {
        assert!(
            value < self.size(),
            "element {value} outside GF({})",
            self.size()
        );
        FieldElement { field: self, value }
    }

    pub fn checked_elem(&self, value: u64) -> Result<FieldElement<'_>> {
        if value >= self.size() as u64 {
            return Err(GaloisError::OutOfRange {
                value,
                size: self.size() as u64,
            });
        }
        Ok(FieldElement {
            field: self,
            value: value as u32,
        })
    }

    /// Radix-p digits of an element, lowest first.
    pub fn digits(&self, mut v: u32) -> Vec<u32> {
        let p = self.inner.p;
        (0..self.inner.degree)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .zip(&self.inner.pow_p)
            .map(|(&d, &w)| d * w)
            .sum()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a ^ b;
        }
        if let Some(Tables { add: Some(add), .. }) = &inner.tables {
            return add[(a * inner.size + b) as usize] as u32;
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.inner.p;
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.inner.degree {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let mut v = a;
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.inner.degree {
            out += ((p - v % p) % p) * w;
            v /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.inner.p == 2 {
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            let idx = t.log[a as usize] + t.log[b as usize];
            return t.exp[idx as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 {
            let d = inner.degree;
            let mut prod: u64 = 0;
            let mut x = a as u64;
            let mut y = b as u64;
            while y != 0 {
                if y & 1 == 1 {
                    prod ^= x;
                }
                x <<= 1;
                y >>= 1;
            }
            for bit in (d..2 * d).rev() {
                if prod >> bit & 1 == 1 {
                    prod ^= 1 << bit;
                    prod ^= inner.low_mask << (bit - d);
                }
            }
            return prod as u32;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let r = pmulmod(&da, &db, &inner.modulus, inner.p);
        self.from_digits(&r)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.inner.tables {
            let order = (self.inner.size - 1) as u64;
            let idx = (t.log[a as usize] as u64 * (e % order)) % order;
            return t.exp[idx as usize];
        }
        let mut result = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(GaloisError::ZeroInverse);
        }
        if let Some(t) = &self.inner.tables {
            let order = self.inner.size - 1;
            let idx = (order - t.log[a as usize]) % order;
            return Ok(t.exp[idx as usize]);
        }
        Ok(self.pow(a, self.inner.size as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(GaloisError::ZeroInverse);
        }
        let n = self.inner.size as u64 - 1;
        let mut order = n;
        for r in prime_factors(n) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == 1 {
                order /= r;
            }
        }
        Ok(order)
    }

    /// Smallest-index element generating the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        if let Some(t) = &self.inner.tables {
            return t.exp[1];
        }
        find_primitive(self.inner.size, |a, e| self.pow(a, e))
    }

    /// True when `sub` is (isomorphic to) a subfield of `self`.
    pub fn has_subfield(&self, sub: &FieldSpec) -> bool {
        sub.p() == self.p() && self.degree().is_multiple_of(sub.degree())
    }

    /// Embedding data for a subfield; needed for trace and subfield expansion.
    pub fn subfield(&self, sub: &FieldSpec) -> Result<Subfield> {
        Subfield::new(self, sub)
    }

    /// Relative trace of `x` down to the subfield `target`, returned as an index of `target`.
    pub fn trace(&self, x: u32, target: &FieldSpec) -> Result<u32> {
        self.subfield(target)?.trace(x)
    }
}

fn find_primitive(size: u32, pow: impl Fn(u32, u64) -> u32) -> u32 {
    let n = size as u64 - 1;
    let factors = prime_factors(n);
    (1..size)
        .find(|&a| factors.iter().all(|&r| pow(a, n / r) != 1))
        .expect("every finite field has a primitive element")
}

fn build_tables(inner: &Inner) -> Tables {
    // Arithmetic before tables exist.
    let tmp = FieldSpec {
        inner: Arc::new(Inner {
            p: inner.p,
            m0: inner.m0,
            m: inner.m,
            degree: inner.degree,
            size: inner.size,
            modulus: inner.modulus.clone(),
            low_mask: inner.low_mask,
            pow_p: inner.pow_p.clone(),
            tables: None,
        }),
    };
    let size = inner.size;
    let add = if inner.p != 2 {
        let mut t = vec![0u8; (size * size) as usize];
        for a in 0..size {
            for b in 0..size {
                t[(a * size + b) as usize] = tmp.add_digits(a, b) as u8;
            }
        }
        Some(t)
    } else {
        None
    };
    let mut log = vec![0u32; size as usize];
    let mut exp = vec![0u32; 2 * (size as usize - 1).max(1)];
    if size == 2 {
        exp[0] = 1;
        exp[1] = 1;
        return Tables { log, exp, add };
    }
    let g = find_primitive(size, |a, e| tmp.pow(a, e));
    let mut x = 1u32;
    for i in 0..(size - 1) {
        exp[i as usize] = x;
        exp[(i + size - 1) as usize] = x;
        log[x as usize] = i;
        x = tmp.mul_slow(x, g);
    }
    Tables { log, exp, add }
}

/// A subfield GF(p^s) of a field GF(p^D) together with the embedding, the
/// trace, and coordinates over the subfield in the basis {1, θ, …, θ^(D/s − 1)}
/// where θ is the polynomial-basis generator x of the big field.
pub struct Subfield {
    big: FieldSpec,
    sub: FieldSpec,
    embed: Vec<u32>,
    project: HashMap<u32, u32>,
    /// Inverse of the GF(p) change-of-basis matrix, row-major D×D.
    basis_inv: Vec<u32>,
}

impl Subfield {
    fn new(big: &FieldSpec, sub: &FieldSpec) -> Result<Self> {
        if !big.has_subfield(sub) {
            return Err(GaloisError::NotSubfield {
                sub: sub.size() as u64,
                sup: big.size() as u64,
            });
        }
        // Root of sub's modulus inside big: image of sub's generator x.
        let beta = if sub.degree() == 1 {
            1
        } else {
            (0..big.size())
                .find(|&z| {
                    let mut acc = 0u32;
                    for &c in sub.modulus().iter().rev() {
                        acc = big.add(big.mul(acc, z), c);
                    }
                    acc == 0
                })
                .ok_or(GaloisError::NotSubfield {
                    sub: sub.size() as u64,
                    sup: big.size() as u64,
                })?
        };
        let mut beta_pows = vec![1u32];
        for _ in 1..sub.degree() {
            let last = *beta_pows.last().unwrap();
            beta_pows.push(big.mul(last, beta));
        }
        let embed: Vec<u32> = (0..sub.size())
            .map(|v| {
                sub.digits(v)
                    .iter()
                    .zip(&beta_pows)
                    .fold(0u32, |acc, (&d, &bp)| big.add(acc, big.mul(d, bp)))
            })
            .collect();
        let project = embed
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();

        // Change of basis: column (j·s + l) holds digits of β^l θ^j.
        let d = big.degree() as usize;
        let s = sub.degree() as usize;
        let e = d / s;
        let theta = if big.degree() == 1 { 1 } else { big.p() };
        let mut cols = Vec::with_capacity(d);
        let mut theta_pow = 1u32;
        for _ in 0..e {
            for &bp in &beta_pows {
                cols.push(big.digits(big.mul(bp, theta_pow)));
            }
            theta_pow = big.mul(theta_pow, theta);
        }
        let p = big.p();
        let mut mat = vec![0u32; d * d];
        for (c, digits) in cols.iter().enumerate() {
            for (r, &v) in digits.iter().enumerate() {
                mat[r * d + c] = v;
            }
        }
        let basis_inv = invert_prime_matrix(&mat, d, p).ok_or(GaloisError::NotSubfield {
            sub: sub.size() as u64,
            sup: big.size() as u64,
        })?;
        Ok(Subfield {
            big: big.clone(),
            sub: sub.clone(),
            embed,
            project,
            basis_inv,
        })
    }

    pub fn sub(&self) -> &FieldSpec {
        &self.sub
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    /// Extension degree [big : sub].
    pub fn extension_degree(&self) -> u32 {
        self.big.degree() / self.sub.degree()
    }

    pub fn embed(&self, v: u32) -> u32 {
        self.embed[v as usize]
    }

    /// Index in the subfield, or `None` if `x` lies outside it.
    pub fn project(&self, x: u32) -> Option<u32> {
        self.project.get(&x).copied()
    }

    pub fn trace(&self, x: u32) -> Result<u32> {
        if x >= self.big.size() {
            return Err(GaloisError::OutOfRange {
                value: x as u64,
                size: self.big.size() as u64,
            });
        }
        let q = self.sub.size() as u64;
        let mut acc = 0u32;
        let mut term = x;
        for _ in 0..self.extension_degree() {
            acc = self.big.add(acc, term);
            term = self.big.pow(term, q);
        }
        Ok(self.project(acc).expect("trace lands in the subfield"))
    }

    /// Coordinates of `x` over the subfield, one subfield index per basis power θ^j.
    pub fn coordinates(&self, x: u32) -> Vec<u32> {
        let d = self.big.degree() as usize;
        let s = self.sub.degree() as usize;
        let p = self.big.p() as u64;
        let digits = self.big.digits(x);
        let t: Vec<u32> = (0..d)
            .map(|r| {
                (0..d).fold(0u64, |acc, c| {
                    (acc + self.basis_inv[r * d + c] as u64 * digits[c] as u64) % p
                }) as u32
            })
            .collect();
        t.chunks(s)
            .map(|chunk| self.sub.from_digits(chunk))
            .collect()
    }
}

fn invert_prime_matrix(mat: &[u32], n: usize, p: u32) -> Option<Vec<u32>> {
    let pp = p as u64;
    let mut a: Vec<u64> = mat.iter().map(|&v| v as u64).collect();
    let mut inv = vec![0u64; n * n];
    for i in 0..n {
        inv[i * n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
                inv.swap(pivot * n + c, col * n + c);
            }
        }
        let s = inv_mod_prime(a[col * n + col] as u32, p) as u64;
        for c in 0..n {
            a[col * n + c] = a[col * n + c] * s % pp;
            inv[col * n + c] = inv[col * n + c] * s % pp;
        }
        for r in 0..n {
            if r != col && a[r * n + col] != 0 {
                let f = a[r * n + col];
                for c in 0..n {
                    a[r * n + c] = (a[r * n + c] + pp * pp - f * a[col * n + c]) % pp;
                    inv[r * n + c] = (inv[r * n + c] + pp * pp - f * inv[col * n + c]) % pp;
                }
            }
        }
    }
    Some(inv.into_iter().map(|v| v as u32).collect())
}

/// An element bound to its field. Operators panic when fields differ; the
/// `try_*` methods report the mismatch instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldSpec,
    value: u32,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈GF({})", self.value, self.field.size())
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl<'f> FieldElement<'f> {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GaloisError::FieldMismatch)
        }
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        self.same(&other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(self, other: Self) -> Result<Self> {
        self.same(&other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(self, other: Self) -> Result<Self> {
        self.same(&other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn with(self, value: u32) -> Self {
        FieldElement {
            field: self.field,
            value,
        }
    }
}

impl<'f> Add for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl<'f> Sub for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl<'f> Mul for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl<'f> Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self::Output {
        self.with(self.field.neg(self.value))
    }
}
