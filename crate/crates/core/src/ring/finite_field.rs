//! Table-driven arithmetic in F_p[x]/(f) for fields with at most 343 elements.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 343;

/// A finite field F_p[x]/(f) with precomputed operation tables.
///
/// Elements are indices `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` encoding the
/// residue `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`.
#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    degree: usize,
    order: u64,
    /// Monic modulus, lowest coefficient first, length `degree + 1`.
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p (lowest first).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_of_degree(d: usize, p: u64, code: u64) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(d + 1);
    let mut c = code;
    for _ in 0..d {
        coeffs.push(c % p);
        c /= p;
    }
    coeffs.push(1);
    coeffs
}

/// Brute-force irreducibility test: no monic factor of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let g = monic_of_degree(d, p, code);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds F_p[x]/(f); `modulus` lists coefficients lowest first and must be monic.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidRing(
                "field modulus must be monic of degree >= 1".into(),
            ));
        }
        let degree = modulus.len() - 1;
        let order = p
            .checked_pow(degree as u32)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::UnsupportedFieldSize(p.saturating_pow(degree as u32)))?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidRing(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        let mut field = FiniteField {
            p,
            degree,
            order,
            modulus,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// F_q with the first irreducible monic modulus in lexicographic order
    /// (plain `x` for prime fields).
    pub fn with_order(q: u64) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::UnsupportedFieldSize(q));
        }
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedFieldSize(q))?;
        if k == 1 {
            return Self::new(p, vec![0, 1]);
        }
        for code in 0..p.pow(k as u32) {
            let f = monic_of_degree(k, p, code);
            if is_irreducible(&f, p) {
                return Self::new(p, f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build_tables(&mut self) {
        let q = self.order as usize;
        let p = self.p;
        let coeffs: Vec<Vec<u64>> = (0..self.order).map(|i| self.decode(i)).collect();
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        self.neg = vec![0; q];
        self.inv = vec![0; q];
        for a in 0..q {
            let ca = &coeffs[a];
            self.neg[a] = self.encode(&ca.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u16;
            for b in 0..q {
                let cb = &coeffs[b];
                let sum: Vec<u64> = ca.iter().zip(cb).map(|(x, y)| (x + y) % p).collect();
                self.add[a * q + b] = self.encode(&sum) as u16;
                let mut prod = vec![0u64; 2 * self.degree];
                for (i, x) in ca.iter().enumerate() {
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_rem(&prod, &self.modulus, p);
                self.mul[a * q + b] = self.encode(&r) as u16;
            }
        }
        for a in 1..q {
            for b in 1..q {
                if self.mul[a * q + b] == 1 {
                    self.inv[a] = b as u16;
                    break;
                }
            }
        }
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        let mut idx = 0;
        for &c in coeffs.iter().take(self.degree).rev() {
            idx = idx * self.p + c % self.p;
        }
        idx
    }

    /// Reduces an arbitrary-degree polynomial (lowest first) into the field.
    pub fn reduce(&self, coeffs: &[u64]) -> u64 {
        let c: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        if c.len() <= self.degree {
            return self.encode(&c);
        }
        self.encode(&poly_rem(&c, &self.modulus, self.p))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.order + b) as usize] as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.order + b) as usize] as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize] as u64
    }

    #[inline]
    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.inv[a as usize] as u64)
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
}

/// Splits `q = p^k`, returning `None` unless `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}
