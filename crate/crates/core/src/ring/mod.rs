//! Exact commutative rings.
//!
//! A [`RingContext`] carries the arithmetic; a [`Scalar`] is a canonical-form
//! payload interpreted relative to the context that produced it. Containers
//! (matrices, octonions, forms) hold the context once and their entries as
//! payloads, so equality of entries is plain structural equality.

mod finite_field;
mod parse;
mod poly;

pub use finite_field::{prime_power, FiniteField, MAX_FIELD_ORDER};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Rational dot product over a common unreduced denominator, reduced once.
fn rat_dot<'a>(pairs: impl Iterator<Item = (&'a Scalar, &'a Scalar)>) -> Scalar {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (x, y) in pairs {
        let (Scalar::Rat(x), Scalar::Rat(y)) = (x, y) else {
            panic!("scalar payload does not match ring Q");
        };
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let p = x.numer() * y.numer();
        let q = x.denom() * y.denom();
        if q == den {
            num += p;
        } else if den.is_one() {
            num = num * &q + p;
            den = q;
        } else {
            // over lcm(den, q), which keeps the denominator from compounding
            let g = den.gcd(&q);
            let (dg, qg) = (&den / &g, q / &g);
            num = num * &qg + p * dg;
            den *= qg;
        }
    }
    Scalar::Rat(BigRational::new(num, den))
}

/// Canonical-form ring element payload.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Element of ℤ.
    Int(BigInt),
    /// Reduced fraction in ℚ.
    Rat(BigRational),
    /// Residue in `[0, n)` for ℤ/n, or a table index for F_q.
    Res(u64),
    /// Coefficients lowest degree first, no trailing zeros.
    Poly(Vec<Scalar>),
    /// `Σ coeffs[i] t^(low + i)`, first and last coefficient nonzero; zero is `low = 0`, empty.
    Laurent { low: i64, coeffs: Vec<Scalar> },
}

#[derive(Debug, PartialEq, Eq)]
pub enum RingKind {
    Integers,
    Rationals,
    ModN(u64),
    FiniteField(FiniteField),
    Poly { base: RingContext, var: char },
    Laurent { base: RingContext, var: char },
}

/// Shared handle on a commutative ring and its arithmetic.
#[derive(Clone)]
pub struct RingContext(Arc<RingKind>);

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for RingContext {}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingContext({self})")
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::ModN(n) => write!(f, "Z/{n}"),
            RingKind::FiniteField(ff) => {
                if ff.degree() == 1 {
                    write!(f, "F{}", ff.order())
                } else {
                    let terms: Vec<(i64, String)> = ff
                        .modulus()
                        .iter()
                        .enumerate()
                        .rev()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, c)| (i as i64, c.to_string()))
                        .collect();
                    write!(f, "F{}={}", ff.order(), parse::format_terms(&terms, 'x'))
                }
            }
            RingKind::Poly { base, var } => write!(f, "{base}[{var}]"),
            RingKind::Laurent { base, var } => write!(f, "{base}[{var},1/{var}]"),
        }
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (g, x) = ext_gcd(a as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0, s0)
}

fn radical(mut n: u64) -> u64 {
    let mut rad = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            rad *= p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        rad *= n;
    }
    rad
}

/// Largest integer in ℤ/n handled; products must fit in `u64`.
const MAX_MODULUS: u64 = 1 << 32;

impl RingContext {
    fn from_kind(kind: RingKind) -> Self {
        RingContext(Arc::new(kind))
    }

    pub fn integers() -> Self {
        Self::from_kind(RingKind::Integers)
    }

    pub fn rationals() -> Self {
        Self::from_kind(RingKind::Rationals)
    }

    pub fn mod_n(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("Z/{n} requires n >= 2")));
        }
        if n > MAX_MODULUS {
            return Err(Error::InvalidRing(format!("Z/{n}: modulus too large")));
        }
        Ok(Self::from_kind(RingKind::ModN(n)))
    }

    /// F_p[x]/(f) with `modulus` monic, lowest coefficient first.
    pub fn finite_field(p: u64, modulus: Vec<u64>) -> Result<Self> {
        Ok(Self::from_kind(RingKind::FiniteField(FiniteField::new(
            p, modulus,
        )?)))
    }

    /// F_q with a default modulus.
    pub fn galois_field(q: u64) -> Result<Self> {
        Ok(Self::from_kind(RingKind::FiniteField(
            FiniteField::with_order(q)?,
        )))
    }

    pub fn poly(base: RingContext, var: char) -> Self {
        Self::from_kind(RingKind::Poly { base, var })
    }

    pub fn laurent(base: RingContext, var: char) -> Self {
        Self::from_kind(RingKind::Laurent { base, var })
    }

    /// Parses `Z`, `Q`, `Z/8`, `F5`, `F9=x^2+1`, `Q[t]`, `Q[t,1/t]`.
    pub fn parse(spec: &str) -> Result<Self> {
        parse::parse_ring(spec)
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn finite_field_data(&self) -> Option<&FiniteField> {
        match self.kind() {
            RingKind::FiniteField(ff) => Some(ff),
            _ => None,
        }
    }

    // ---------------------------------------------------------------------
    // constants

    pub fn zero(&self) -> Scalar {
        match self.kind() {
            RingKind::Integers => Scalar::Int(BigInt::zero()),
            RingKind::Rationals => Scalar::Rat(BigRational::zero()),
            RingKind::ModN(_) | RingKind::FiniteField(_) => Scalar::Res(0),
            RingKind::Poly { .. } => Scalar::Poly(Vec::new()),
            RingKind::Laurent { .. } => Scalar::Laurent {
                low: 0,
                coeffs: Vec::new(),
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.kind() {
            RingKind::Integers => Scalar::Int(n.clone()),
            RingKind::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            RingKind::ModN(m) => Scalar::Res(n.mod_floor(&BigInt::from(*m)).to_u64().unwrap()),
            RingKind::FiniteField(ff) => {
                let p = BigInt::from(ff.characteristic());
                Scalar::Res(n.mod_floor(&p).to_u64().unwrap())
            }
            RingKind::Poly { base, .. } => poly::normalize_poly(base, vec![base.from_bigint(n)]),
            RingKind::Laurent { base, .. } => {
                poly::normalize_laurent(base, 0, vec![base.from_bigint(n)])
            }
        }
    }

    /// The monomial `t^e` of a polynomial or Laurent ring.
    pub fn monomial(&self, coeff: Scalar, exp: i64) -> Result<Scalar> {
        match self.kind() {
            RingKind::Poly { base, .. } if exp >= 0 => {
                let mut c = vec![base.zero(); exp as usize];
                c.push(coeff);
                Ok(poly::normalize_poly(base, c))
            }
            RingKind::Laurent { base, .. } => Ok(poly::normalize_laurent(base, exp, vec![coeff])),
            _ => Err(Error::UnsupportedRing {
                ring: self.to_string(),
                what: format!("monomial of exponent {exp}"),
            }),
        }
    }

    // ---------------------------------------------------------------------
    // arithmetic

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind(), a, b) {
            (RingKind::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (RingKind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (RingKind::ModN(n), Scalar::Res(x), Scalar::Res(y)) => Scalar::Res((x + y) % n),
            (RingKind::FiniteField(ff), Scalar::Res(x), Scalar::Res(y)) => {
                Scalar::Res(ff.add(*x, *y))
            }
            (RingKind::Poly { base, .. }, Scalar::Poly(x), Scalar::Poly(y)) => {
                poly::normalize_poly(base, poly::add(base, x, y))
            }
            (
                RingKind::Laurent { base, .. },
                Scalar::Laurent { low: lx, coeffs: x },
                Scalar::Laurent { low: ly, coeffs: y },
            ) => {
                let (low, c) = poly::laurent_add(base, *lx, x, *ly, y);
                poly::normalize_laurent(base, low, c)
            }
            _ => panic!("scalar payload does not match ring {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.kind(), a) {
            (RingKind::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (RingKind::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (RingKind::ModN(n), Scalar::Res(x)) => Scalar::Res((n - x) % n),
            (RingKind::FiniteField(ff), Scalar::Res(x)) => Scalar::Res(ff.neg(*x)),
            (RingKind::Poly { base, .. }, Scalar::Poly(x)) => {
                Scalar::Poly(x.iter().map(|c| base.neg(c)).collect())
            }
            (RingKind::Laurent { base, .. }, Scalar::Laurent { low, coeffs }) => Scalar::Laurent {
                low: *low,
                coeffs: coeffs.iter().map(|c| base.neg(c)).collect(),
            },
            _ => panic!("scalar payload does not match ring {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind(), a, b) {
            (RingKind::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x - y),
            (RingKind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (RingKind::ModN(n), Scalar::Res(x), Scalar::Res(y)) => Scalar::Res((x + n - y) % n),
            (RingKind::FiniteField(ff), Scalar::Res(x), Scalar::Res(y)) => {
                Scalar::Res(ff.add(*x, ff.neg(*y)))
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind(), a, b) {
            (RingKind::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (RingKind::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (RingKind::ModN(n), Scalar::Res(x), Scalar::Res(y)) => Scalar::Res((x * y) % n),
            (RingKind::FiniteField(ff), Scalar::Res(x), Scalar::Res(y)) => {
                Scalar::Res(ff.mul(*x, *y))
            }
            (RingKind::Poly { base, .. }, Scalar::Poly(x), Scalar::Poly(y)) => {
                poly::normalize_poly(base, poly::mul(base, x, y))
            }
            (
                RingKind::Laurent { base, .. },
                Scalar::Laurent { low: lx, coeffs: x },
                Scalar::Laurent { low: ly, coeffs: y },
            ) => poly::normalize_laurent(base, lx + ly, poly::mul(base, x, y)),
            _ => panic!("scalar payload does not match ring {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Sum of products `Σ a_i b_i`.
    pub fn dot<'a>(&self, a: impl IntoIterator<Item = &'a Scalar>, b: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        if let RingKind::Rationals = self.kind() {
            return rat_dot(a.into_iter().zip(b));
        }
        let mut acc = self.zero();
        for (x, y) in a.into_iter().zip(b) {
            if self.is_zero(x) || self.is_zero(y) {
                continue;
            }
            acc = self.add(&acc, &self.mul(x, y));
        }
        acc
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Res(x) => *x == 0,
            Scalar::Poly(c) => c.is_empty(),
            Scalar::Laurent { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    // ---------------------------------------------------------------------
    // structure

    pub fn is_field(&self) -> bool {
        match self.kind() {
            RingKind::Rationals | RingKind::FiniteField(_) => true,
            RingKind::ModN(n) => finite_field::is_prime(*n),
            _ => false,
        }
    }

    pub fn is_domain(&self) -> bool {
        match self.kind() {
            RingKind::Integers => true,
            RingKind::Poly { base, .. } | RingKind::Laurent { base, .. } => base.is_domain(),
            _ => self.is_field(),
        }
    }

    /// Characteristic, 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            RingKind::Integers | RingKind::Rationals => 0,
            RingKind::ModN(n) => *n,
            RingKind::FiniteField(ff) => ff.characteristic(),
            RingKind::Poly { base, .. } | RingKind::Laurent { base, .. } => base.characteristic(),
        }
    }

    pub fn is_nilpotent(&self, a: &Scalar) -> bool {
        match (self.kind(), a) {
            (RingKind::ModN(n), Scalar::Res(x)) => x % radical(*n) == 0,
            (RingKind::Poly { base, .. }, Scalar::Poly(c))
            | (RingKind::Laurent { base, .. }, Scalar::Laurent { coeffs: c, .. }) => {
                c.iter().all(|x| base.is_nilpotent(x))
            }
            _ => self.is_zero(a),
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.inv(a).is_some()
    }

    /// Multiplicative inverse, `None` when `a` is not a unit.
    ///
    /// Polynomial units are `u + n` with `u` a base unit and `n` nilpotent.
    /// Laurent units are recognised as unit monomials plus nilpotents, which
    /// is complete over connected bases.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self.kind(), a) {
            (RingKind::Integers, Scalar::Int(x)) => {
                (x.abs().is_one()).then(|| Scalar::Int(x.clone()))
            }
            (RingKind::Rationals, Scalar::Rat(x)) => (!x.is_zero()).then(|| Scalar::Rat(x.recip())),
            (RingKind::ModN(n), Scalar::Res(x)) => mod_inverse(*x, *n).map(Scalar::Res),
            (RingKind::FiniteField(ff), Scalar::Res(x)) => ff.inv(*x).map(Scalar::Res),
            (RingKind::Poly { base, .. }, Scalar::Poly(c)) => poly::poly_inverse(self, base, c),
            (RingKind::Laurent { base, .. }, Scalar::Laurent { low, coeffs }) => {
                poly::laurent_inverse(self, base, *low, coeffs)
            }
            _ => panic!("scalar payload does not match ring {self}"),
        }
    }

    /// Exact quotient `a / b` when `b` divides `a`.
    ///
    /// Supported over fields, integral domains and for unit divisors in any ring.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if self.is_zero(b) {
            return None;
        }
        if let Some(inv) = self.inv(b) {
            return Some(self.mul(a, &inv));
        }
        match (self.kind(), a, b) {
            (RingKind::Integers, Scalar::Int(x), Scalar::Int(y)) => {
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Scalar::Int(q))
            }
            (RingKind::Poly { base, .. }, Scalar::Poly(x), Scalar::Poly(y)) if base.is_domain() => {
                poly::poly_div_exact(base, x, y).map(|q| poly::normalize_poly(base, q))
            }
            (
                RingKind::Laurent { base, .. },
                Scalar::Laurent { low: lx, coeffs: x },
                Scalar::Laurent { low: ly, coeffs: y },
            ) if base.is_domain() => {
                poly::poly_div_exact(base, x, y).map(|q| poly::normalize_laurent(base, lx - ly, q))
            }
            _ => None,
        }
    }

    // ---------------------------------------------------------------------
    // enumeration and sampling

    /// Number of elements for finite rings.
    pub fn size(&self) -> Option<u64> {
        match self.kind() {
            RingKind::ModN(n) => Some(*n),
            RingKind::FiniteField(ff) => Some(ff.order()),
            _ => None,
        }
    }

    /// The `i`-th element of a finite ring in canonical order.
    pub fn element(&self, i: u64) -> Scalar {
        debug_assert!(self.size().is_some_and(|s| i < s));
        Scalar::Res(i)
    }

    /// Index of a finite-ring element, inverse of [`RingContext::element`].
    pub fn index_of(&self, a: &Scalar) -> Option<u64> {
        match a {
            Scalar::Res(x) if self.size().is_some() => Some(*x),
            _ => None,
        }
    }

    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.size().map(|s| (0..s).map(Scalar::Res).collect())
    }

    /// A random element of small height.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.kind() {
            RingKind::Integers => Scalar::Int(BigInt::from(rng.gen_range(-3i64..=3))),
            RingKind::Rationals => {
                let num = rng.gen_range(-4i64..=4);
                let den = rng.gen_range(1i64..=3);
                Scalar::Rat(BigRational::new(num.into(), den.into()))
            }
            RingKind::ModN(n) => Scalar::Res(rng.gen_range(0..*n)),
            RingKind::FiniteField(ff) => Scalar::Res(rng.gen_range(0..ff.order())),
            RingKind::Poly { base, .. } => {
                let deg = rng.gen_range(0..=1usize);
                let c = (0..=deg).map(|_| base.random(rng)).collect();
                poly::normalize_poly(base, c)
            }
            RingKind::Laurent { base, .. } => {
                let low = rng.gen_range(-1i64..=0);
                let len = rng.gen_range(1..=2usize);
                let c = (0..len).map(|_| base.random(rng)).collect();
                poly::normalize_laurent(base, low, c)
            }
        }
    }

    /// A random unit of small height.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.kind() {
            RingKind::Integers => self.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 }),
            RingKind::Poly { base, .. } => {
                let u = base.random_unit(rng);
                poly::normalize_poly(base, vec![u])
            }
            RingKind::Laurent { base, .. } => {
                let u = base.random_unit(rng);
                poly::normalize_laurent(base, rng.gen_range(-2i64..=2), vec![u])
            }
            _ => loop {
                let x = self.random(rng);
                if self.is_unit(&x) {
                    return x;
                }
            },
        }
    }

    // ---------------------------------------------------------------------
    // text

    /// Parses a scalar literal, e.g. `-3`, `2/5`, `x+1`, `t^-1+2*t`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        parse::parse_scalar(self, s.trim())
    }

    /// Formats a scalar so that [`RingContext::parse_scalar`] reads it back.
    pub fn format(&self, a: &Scalar) -> String {
        parse::format_scalar(self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rings() -> Vec<RingContext> {
        ["Z", "Q", "Z/8", "Z/6", "F2", "F5", "F9=x^2+1", "F4", "Q[t]", "Z/8[t]", "Q[t,1/t]", "F3[t,1/t]"]
            .iter()
            .map(|s| RingContext::parse(s).unwrap())
            .collect()
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for r in rings() {
            for _ in 0..500 {
                let (a, b, c) = (r.random(&mut rng), r.random(&mut rng), r.random(&mut rng));
                assert_eq!(r.add(&a, &b), r.add(&b, &a), "{r}");
                assert_eq!(r.mul(&a, &b), r.mul(&b, &a), "{r}");
                assert_eq!(r.mul(&a, &r.mul(&b, &c)), r.mul(&r.mul(&a, &b), &c), "{r}");
                assert_eq!(r.add(&a, &r.add(&b, &c)), r.add(&r.add(&a, &b), &c), "{r}");
                assert_eq!(
                    r.mul(&a, &r.add(&b, &c)),
                    r.add(&r.mul(&a, &b), &r.mul(&a, &c)),
                    "{r}"
                );
                assert_eq!(r.mul(&a, &r.one()), a);
                assert_eq!(r.add(&a, &r.zero()), a);
                assert!(r.is_zero(&r.sub(&a, &a)));
            }
        }
    }

    #[test]
    fn dot_matches_termwise_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for r in rings() {
            for n in 0..10 {
                let a: Vec<Scalar> = (0..n).map(|_| r.random(&mut rng)).collect();
                let b: Vec<Scalar> = (0..n).map(|_| r.random(&mut rng)).collect();
                let sum = a.iter().zip(&b).fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)));
                assert_eq!(r.dot(&a, &b), sum, "{r}");
            }
        }
    }

    #[test]
    fn unit_detection() {
        let z = RingContext::integers();
        assert!(z.is_unit(&z.one()));
        assert!(!z.is_unit(&z.from_i64(2)));
        let z8 = RingContext::parse("Z/8").unwrap();
        assert!(!z8.is_unit(&z8.from_i64(2)));
        assert!(z8.is_unit(&z8.from_i64(3)));
        // 3 t^2 in Q[t, 1/t] has inverse (1/3) t^-2
        let l = RingContext::parse("Q[t,1/t]").unwrap();
        let x = l.parse_scalar("3*t^2").unwrap();
        let inv = l.inv(&x).unwrap();
        assert_eq!(inv, l.parse_scalar("1/3*t^-2").unwrap());
        assert!(l.is_one(&l.mul(&x, &inv)));
        assert!(!l.is_unit(&l.parse_scalar("t+1").unwrap()));
        // 1 + 2t is a unit in Z/8[t]
        let p = RingContext::parse("Z/8[t]").unwrap();
        let f = p.parse_scalar("1+2*t").unwrap();
        let g = p.inv(&f).unwrap();
        assert!(p.is_one(&p.mul(&f, &g)));
        assert!(p.inv(&p.parse_scalar("1+t").unwrap()).is_none());
    }

    #[test]
    fn inverses_multiply_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for r in rings() {
            for _ in 0..200 {
                let a = r.random(&mut rng);
                if let Some(b) = r.inv(&a) {
                    assert!(r.is_one(&r.mul(&a, &b)), "{r}: {}", r.format(&a));
                }
            }
        }
    }

    #[test]
    fn exact_division_in_domains() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for spec in ["Z", "Q[t]", "Z[t]", "Q[t,1/t]", "F3[t]"] {
            let r = RingContext::parse(spec).unwrap();
            for _ in 0..200 {
                let a = r.random(&mut rng);
                let b = r.random(&mut rng);
                if r.is_zero(&b) {
                    continue;
                }
                let ab = r.mul(&a, &b);
                assert_eq!(r.div_exact(&ab, &b), Some(a), "{spec}");
            }
        }
        let z = RingContext::integers();
        assert_eq!(z.div_exact(&z.from_i64(7), &z.from_i64(2)), None);
    }
}
