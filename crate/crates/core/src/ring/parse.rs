//! Text forms of rings and scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FiniteField, RingContext, RingKind, Scalar};
use crate::error::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub(super) fn parse_ring(spec: &str) -> Result<RingContext> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err("empty ring spec"));
    }
    if let Some(stripped) = s.strip_suffix(']') {
        let open = stripped
            .rfind('[')
            .ok_or_else(|| parse_err(format!("unbalanced brackets in {spec}")))?;
        let base = parse_ring(&stripped[..open])?;
        let inner = &stripped[open + 1..];
        let mut chars = inner.chars();
        let var = chars
            .next()
            .filter(|c| c.is_ascii_alphabetic())
            .ok_or_else(|| parse_err(format!("bad variable in {spec}")))?;
        let rest: String = chars.collect();
        return if rest.is_empty() {
            Ok(RingContext::poly(base, var))
        } else if rest == format!(",1/{var}") {
            Ok(RingContext::laurent(base, var))
        } else {
            Err(parse_err(format!("expected [{var}] or [{var},1/{var}] in {spec}")))
        };
    }
    match s.as_str() {
        "Z" => return Ok(RingContext::integers()),
        "Q" => return Ok(RingContext::rationals()),
        _ => {}
    }
    if let Some(n) = s.strip_prefix("Z/") {
        let n: u64 = n.parse().map_err(|_| parse_err(format!("bad modulus in {spec}")))?;
        return RingContext::mod_n(n);
    }
    if let Some(rest) = s.strip_prefix('F') {
        let (order, modulus) = match rest.split_once('=') {
            Some((q, f)) => (q, Some(f)),
            None => (rest, None),
        };
        let q: u64 = order
            .parse()
            .map_err(|_| parse_err(format!("bad field order in {spec}")))?;
        let Some(f) = modulus else {
            return RingContext::galois_field(q);
        };
        let (p, k) = super::prime_power(q).ok_or(Error::UnsupportedFieldSize(q))?;
        let terms = parse_terms(f, 'x', &mut |c| {
            c.parse::<i64>()
                .map_err(|_| parse_err(format!("bad coefficient {c} in modulus")))
        })?;
        let mut coeffs = vec![0u64; k + 1];
        for (e, c) in terms {
            if e < 0 || e as usize > k {
                return Err(Error::InvalidRing(format!(
                    "modulus {f} must have degree {k} for F{q}"
                )));
            }
            let c = c.rem_euclid(p as i64) as u64;
            coeffs[e as usize] = (coeffs[e as usize] + c) % p;
        }
        if coeffs[k] != 1 {
            return Err(Error::InvalidRing(format!("modulus {f} must be monic of degree {k}")));
        }
        return RingContext::finite_field(p, coeffs);
    }
    Err(parse_err(format!("unknown ring spec {spec}")))
}

/// Splits at top-level `+`/`-` into `(negated, body)` chunks.
fn split_signed(s: &str) -> Result<Vec<(bool, String)>> {
    let mut chunks = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negated = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let is_sign = (ch == '+' || ch == '-') && depth == 0;
        let in_exponent = matches!(prev, Some('^') | Some('/') | Some('*'));
        if is_sign && !in_exponent {
            if current.is_empty() {
                if ch == '-' {
                    negated = !negated;
                }
            } else {
                chunks.push((negated, std::mem::take(&mut current)));
                negated = ch == '-';
            }
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(parse_err(format!("unbalanced parentheses in {s}")));
    }
    if current.is_empty() {
        return Err(parse_err(format!("dangling sign in {s}")));
    }
    chunks.push((negated, current));
    Ok(chunks)
}

fn strip_parens(s: &str) -> &str {
    if s.starts_with('(') && s.ends_with(')') {
        let inner = &s[1..s.len() - 1];
        let mut depth = 0;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return s;
                    }
                }
                _ => {}
            }
        }
        return inner;
    }
    s
}

fn top_level_find(s: &str, target: char) -> Option<usize> {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == target && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Parses `Σ ± coeff*var^exp` into `(exp, coeff)` terms; coefficients carry their sign.
pub(super) fn parse_terms<T, F>(s: &str, var: char, parse_coeff: &mut F) -> Result<Vec<(i64, T)>>
where
    F: FnMut(&str) -> Result<T>,
    T: std::ops::Neg<Output = T>,
{
    let mut out = Vec::new();
    for (neg, body) in split_signed(s)? {
        let (coeff_str, exp) = match top_level_find(&body, var) {
            Some(pos) => {
                let coeff = body[..pos].trim_end_matches('*');
                let tail = &body[pos + var.len_utf8()..];
                let exp = if tail.is_empty() {
                    1
                } else {
                    let e = tail
                        .strip_prefix('^')
                        .ok_or_else(|| parse_err(format!("unexpected {tail} after {var}")))?;
                    strip_parens(e)
                        .parse::<i64>()
                        .map_err(|_| parse_err(format!("bad exponent {e}")))?
                };
                (coeff, exp)
            }
            None => (body.as_str(), 0),
        };
        let coeff_str = strip_parens(coeff_str);
        let coeff = if coeff_str.is_empty() {
            parse_coeff("1")?
        } else {
            parse_coeff(coeff_str)?
        };
        out.push((exp, if neg { -coeff } else { coeff }));
    }
    Ok(out)
}

/// Wrapper so that ring scalars can flow through [`parse_terms`].
struct Coeff {
    ring: RingContext,
    value: Scalar,
}

impl std::ops::Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        let value = self.ring.neg(&self.value);
        Coeff { ring: self.ring, value }
    }
}

fn parse_integer(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| parse_err(format!("bad integer literal {s}")))
}

pub(super) fn parse_scalar(ring: &RingContext, s: &str) -> Result<Scalar> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err("empty scalar literal"));
    }
    match ring.kind() {
        RingKind::Integers | RingKind::ModN(_) => {
            let terms = parse_terms(&s, '\u{0}', &mut parse_integer)?;
            let total: BigInt = terms.into_iter().map(|(_, c)| c).sum();
            Ok(ring.from_bigint(&total))
        }
        RingKind::Rationals => {
            let terms = parse_terms(&s, '\u{0}', &mut |c: &str| match c.split_once('/') {
                Some((n, d)) => {
                    let d = parse_integer(d)?;
                    if d.is_zero() {
                        return Err(parse_err("zero denominator"));
                    }
                    Ok(BigRational::new(parse_integer(n)?, d))
                }
                None => Ok(BigRational::from_integer(parse_integer(c)?)),
            })?;
            Ok(Scalar::Rat(terms.into_iter().map(|(_, c)| c).sum()))
        }
        RingKind::FiniteField(ff) => parse_field_element(ring, ff, &s),
        RingKind::Poly { base, var } | RingKind::Laurent { base, var } => {
            let terms = parse_terms(&s, *var, &mut |c: &str| {
                Ok(Coeff {
                    ring: base.clone(),
                    value: parse_scalar(base, c)?,
                })
            })?;
            let mut acc = ring.zero();
            for (e, c) in terms {
                acc = ring.add(&acc, &ring.monomial(c.value, e)?);
            }
            Ok(acc)
        }
    }
}

fn parse_field_element(ring: &RingContext, ff: &FiniteField, s: &str) -> Result<Scalar> {
    let terms = parse_terms(s, 'x', &mut parse_integer)?;
    let p = BigInt::from(ff.characteristic());
    let mut coeffs: Vec<u64> = Vec::new();
    for (e, c) in terms {
        if e < 0 {
            return Err(parse_err(format!("negative power of x in {s}")));
        }
        let e = e as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        let c: u64 = ((c % &p + &p) % &p).try_into().unwrap();
        coeffs[e] = (coeffs[e] + c) % ff.characteristic();
    }
    if ff.degree() == 1 && coeffs.len() > 1 {
        return Err(parse_err(format!("{s} is not an element of the prime field {ring}")));
    }
    Ok(Scalar::Res(ff.reduce(&coeffs)))
}

fn needs_parens(coeff: &str) -> bool {
    let body = coeff.strip_prefix('-').unwrap_or(coeff);
    body.contains(['+', '-']) || body.chars().any(|c| c.is_ascii_alphabetic())
}

/// Formats `(exp, coeff)` terms, highest exponent first.
pub(super) fn format_terms(terms: &[(i64, String)], var: char) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let (neg, mag) = if needs_parens(c) {
            (false, format!("({c})"))
        } else if let Some(m) = c.strip_prefix('-') {
            (true, m.to_string())
        } else {
            (false, c.clone())
        };
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        if *e == 0 {
            out.push_str(&mag);
            continue;
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push(var);
        if *e != 1 {
            out.push_str(&format!("^{e}"));
        }
    }
    out
}

pub(super) fn format_scalar(ring: &RingContext, a: &Scalar) -> String {
    match (ring.kind(), a) {
        (RingKind::Integers, Scalar::Int(x)) => x.to_string(),
        (RingKind::Rationals, Scalar::Rat(x)) => {
            if x.denom().is_one() {
                x.numer().to_string()
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        }
        (RingKind::ModN(_), Scalar::Res(x)) => x.to_string(),
        (RingKind::FiniteField(ff), Scalar::Res(x)) => {
            if ff.degree() == 1 {
                return x.to_string();
            }
            let terms: Vec<(i64, String)> = ff
                .decode(*x)
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(i, c)| (i as i64, c.to_string()))
                .collect();
            format_terms(&terms, 'x')
        }
        (RingKind::Poly { base, var }, Scalar::Poly(c)) => {
            let terms: Vec<(i64, String)> = c
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, x)| !base.is_zero(x))
                .map(|(i, x)| (i as i64, base.format(x)))
                .collect();
            format_terms(&terms, *var)
        }
        (RingKind::Laurent { base, var }, Scalar::Laurent { low, coeffs }) => {
            let terms: Vec<(i64, String)> = coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, x)| !base.is_zero(x))
                .map(|(i, x)| (low + i as i64, base.format(x)))
                .collect();
            format_terms(&terms, *var)
        }
        _ => panic!("scalar payload does not match ring {ring}"),
    }
}
