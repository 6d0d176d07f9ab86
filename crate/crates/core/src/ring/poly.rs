//! Coefficient-list helpers for polynomial and Laurent rings.

use super::{RingContext, RingKind, Scalar};

pub(super) fn normalize_poly(base: &RingContext, mut c: Vec<Scalar>) -> Scalar {
    while c.last().is_some_and(|x| base.is_zero(x)) {
        c.pop();
    }
    Scalar::Poly(c)
}

pub(super) fn normalize_laurent(base: &RingContext, mut low: i64, mut c: Vec<Scalar>) -> Scalar {
    while c.last().is_some_and(|x| base.is_zero(x)) {
        c.pop();
    }
    let lead_zeros = c.iter().take_while(|x| base.is_zero(x)).count();
    c.drain(..lead_zeros);
    low += lead_zeros as i64;
    if c.is_empty() {
        low = 0;
    }
    Scalar::Laurent { low, coeffs: c }
}

pub(super) fn add(base: &RingContext, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = x.len().max(y.len());
    (0..n)
        .map(|i| match (x.get(i), y.get(i)) {
            (Some(a), Some(b)) => base.add(a, b),
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub(super) fn mul(base: &RingContext, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        if base.is_zero(a) {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(a, b));
        }
    }
    out
}

pub(super) fn laurent_add(
    base: &RingContext,
    lx: i64,
    x: &[Scalar],
    ly: i64,
    y: &[Scalar],
) -> (i64, Vec<Scalar>) {
    if x.is_empty() {
        return (ly, y.to_vec());
    }
    if y.is_empty() {
        return (lx, x.to_vec());
    }
    let low = lx.min(ly);
    let pad = |l: i64, c: &[Scalar]| {
        let mut v = vec![base.zero(); (l - low) as usize];
        v.extend_from_slice(c);
        v
    };
    (low, add(base, &pad(lx, x), &pad(ly, y)))
}

/// Exact polynomial division over an integral domain.
pub(super) fn poly_div_exact(base: &RingContext, x: &[Scalar], y: &[Scalar]) -> Option<Vec<Scalar>> {
    if y.is_empty() {
        return None;
    }
    if x.is_empty() {
        return Some(Vec::new());
    }
    if x.len() < y.len() {
        return None;
    }
    let mut r = x.to_vec();
    let mut q = vec![base.zero(); x.len() - y.len() + 1];
    let lead = y.last().unwrap();
    for i in (0..q.len()).rev() {
        let top = &r[i + y.len() - 1];
        if base.is_zero(top) {
            continue;
        }
        let c = base.div_exact(top, lead)?;
        for (j, yj) in y.iter().enumerate() {
            r[i + j] = base.sub(&r[i + j], &base.mul(&c, yj));
        }
        q[i] = c;
    }
    r.iter().all(|c| base.is_zero(c)).then_some(q)
}

/// `u^{-1} Σ_k (-n)^k` for `f = u (1 + n)` with `n` nilpotent.
fn geometric_inverse(ring: &RingContext, unit_part: &Scalar, unit_inv: &Scalar, f: &Scalar) -> Option<Scalar> {
    let n = ring.mul(unit_inv, &ring.sub(f, unit_part));
    let neg_n = ring.neg(&n);
    let mut term = ring.one();
    let mut acc = ring.zero();
    for _ in 0..256 {
        if ring.is_zero(&term) {
            return Some(ring.mul(&acc, unit_inv));
        }
        acc = ring.add(&acc, &term);
        term = ring.mul(&term, &neg_n);
    }
    None
}

pub(super) fn poly_inverse(ring: &RingContext, base: &RingContext, c: &[Scalar]) -> Option<Scalar> {
    let c0 = c.first()?;
    let u = base.inv(c0)?;
    if !c[1..].iter().all(|x| base.is_nilpotent(x)) {
        return None;
    }
    let unit_part = normalize_poly(base, vec![c0.clone()]);
    let unit_inv = normalize_poly(base, vec![u]);
    geometric_inverse(ring, &unit_part, &unit_inv, &Scalar::Poly(c.to_vec()))
}

fn factor_prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            out.push(pk);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn crt(residues: &[u64], moduli: &[u64]) -> u64 {
    let total: u64 = moduli.iter().product();
    let mut x: u128 = 0;
    for (&r, &m) in residues.iter().zip(moduli) {
        let rest = total / m;
        let inv = super::mod_inverse(rest % m, m).expect("coprime moduli");
        x = (x + r as u128 * rest as u128 % total as u128 * inv as u128) % total as u128;
    }
    x as u64
}

pub(super) fn laurent_inverse(
    ring: &RingContext,
    base: &RingContext,
    low: i64,
    coeffs: &[Scalar],
) -> Option<Scalar> {
    if coeffs.is_empty() {
        return None;
    }
    if base.is_domain() {
        if coeffs.len() != 1 {
            return None;
        }
        let u = base.inv(&coeffs[0])?;
        return Some(normalize_laurent(base, -low, vec![u]));
    }
    if let RingKind::ModN(n) = base.kind() {
        let parts = factor_prime_powers(*n);
        if parts.len() > 1 {
            return laurent_inverse_crt(base, low, coeffs, &parts);
        }
    }
    // connected base: unit monomial plus nilpotent part
    let f = Scalar::Laurent {
        low,
        coeffs: coeffs.to_vec(),
    };
    let (i, c) = coeffs
        .iter()
        .enumerate()
        .find(|(_, c)| base.is_unit(c))?;
    let others_nilpotent = coeffs
        .iter()
        .enumerate()
        .all(|(j, x)| j == i || base.is_nilpotent(x));
    if !others_nilpotent {
        return None;
    }
    let exp = low + i as i64;
    let unit_part = normalize_laurent(base, exp, vec![c.clone()]);
    let unit_inv = normalize_laurent(base, -exp, vec![base.inv(c)?]);
    geometric_inverse(ring, &unit_part, &unit_inv, &f)
}

fn laurent_inverse_crt(base: &RingContext, low: i64, coeffs: &[Scalar], moduli: &[u64]) -> Option<Scalar> {
    let mut pieces = Vec::new();
    for &m in moduli {
        let sub_base = RingContext::mod_n(m).ok()?;
        let sub_ring = RingContext::laurent(sub_base.clone(), 'z');
        let reduced: Vec<Scalar> = coeffs
            .iter()
            .map(|c| match c {
                Scalar::Res(x) => Scalar::Res(x % m),
                _ => unreachable!(),
            })
            .collect();
        let f = normalize_laurent(&sub_base, low, reduced);
        match sub_ring.inv(&f)? {
            Scalar::Laurent { low, coeffs } => pieces.push((low, coeffs)),
            _ => unreachable!(),
        }
    }
    let lo = pieces.iter().map(|(l, _)| *l).min()?;
    let hi = pieces.iter().map(|(l, c)| l + c.len() as i64).max()?;
    let mut out = Vec::new();
    for e in lo..hi {
        let residues: Vec<u64> = pieces
            .iter()
            .map(|(l, c)| {
                let k = e - l;
                if k >= 0 && (k as usize) < c.len() {
                    match c[k as usize] {
                        Scalar::Res(x) => x,
                        _ => unreachable!(),
                    }
                } else {
                    0
                }
            })
            .collect();
        out.push(Scalar::Res(crt(&residues, moduli)));
    }
    Some(normalize_laurent(base, lo, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_units_over_product_ring() {
        // Z/6 = F2 x F3: 3t + 4 reduces to t mod 2 and 1 mod 3, so it is a unit.
        let r = RingContext::parse("Z/6[t,1/t]").unwrap();
        let f = r.parse_scalar("3*t+4").unwrap();
        let g = r.inv(&f).expect("unit");
        assert!(r.is_one(&r.mul(&f, &g)));
        assert!(r.inv(&r.parse_scalar("2*t+2").unwrap()).is_none());
    }

    #[test]
    fn laurent_units_with_nilpotents() {
        let r = RingContext::parse("Z/4[t,1/t]").unwrap();
        let f = r.parse_scalar("t^-1+2*t^3").unwrap();
        let g = r.inv(&f).expect("unit");
        assert!(r.is_one(&r.mul(&f, &g)));
    }
}
