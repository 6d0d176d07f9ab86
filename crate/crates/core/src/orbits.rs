//! Unit spheres of the split octonions over finite fields and orbits of
//! sphere pairs under related triples.
//!
//! Points are stored as base-`q` codes of their coordinate indices, and the
//! generator actions as permutations of the point table, so the search never
//! touches general ring arithmetic.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::octonion::{Octonion, OctonionAlgebra, DIM};
use crate::ring::{prime_power, RingContext};
use crate::triality::RelatedTriple;
use crate::trivialize::IsoWitness;
use crate::isotope::Isotope;

/// Largest sphere [`enumerate_sphere`] builds by default (q = 7 has 823 200 points).
pub const DEFAULT_POINT_CEILING: u64 = 1_000_000;
/// Largest number of pairs [`orbit_of_pair`] tracks by default; q = 3 needs
/// 2160² ≈ 4.7 million and must be requested explicitly.
pub const DEFAULT_PAIR_CEILING: u64 = 1_000_000;

/// `(q^4 - 1) q^3`.
pub fn sphere_count_formula(q: u64) -> u64 {
    (q.pow(4) - 1) * q.pow(3)
}

/// Addition and multiplication tables of `F_q` on element indices.
#[derive(Clone, Debug)]
pub struct FieldTables {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    zero: u8,
    one: u8,
}

impl FieldTables {
    pub fn new(ring: &RingContext) -> Result<Self> {
        let q = ring.size().filter(|_| ring.is_field()).ok_or_else(|| Error::UnsupportedRing {
            ring: ring.to_string(),
            what: "finite field tables".into(),
        })?;
        if q > 256 {
            return Err(Error::UnsupportedFieldSize(q));
        }
        let idx = |s: &crate::ring::Scalar| ring.index_of(s).expect("finite field element") as u8;
        let els = ring.elements().expect("finite");
        let q = q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = idx(&ring.add(&els[i], &els[j]));
                mul[i * q + j] = idx(&ring.mul(&els[i], &els[j]));
            }
        }
        let neg = els.iter().map(|e| idx(&ring.neg(e))).collect();
        Ok(FieldTables {
            q,
            add,
            mul,
            neg,
            zero: idx(&ring.zero()),
            one: idx(&ring.one()),
        })
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// `αβ - v·w` on Zorn coordinates `(α, β, v, w)`.
    fn zorn_norm(&self, x: &[u8; DIM]) -> u8 {
        let mut vw = self.zero;
        for i in 0..3 {
            vw = self.add(vw, self.mul(x[2 + i], x[5 + i]));
        }
        self.add(self.mul(x[0], x[1]), self.neg[vw as usize])
    }

    fn mat_vec(&self, m: &[[u8; DIM]; DIM], x: &[u8; DIM]) -> [u8; DIM] {
        let mut out = [self.zero; DIM];
        for (k, row) in m.iter().enumerate() {
            let mut acc = self.zero;
            for j in 0..DIM {
                acc = self.add(acc, self.mul(row[j], x[j]));
            }
            out[k] = acc;
        }
        out
    }
}

/// All norm-one points of `zorn(F_q)`, sorted by code.
#[derive(Clone, Debug)]
pub struct SpherePointTable {
    q: u64,
    alg: OctonionAlgebra,
    tables: FieldTables,
    codes: Vec<u64>,
}

impl SpherePointTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn algebra(&self) -> &OctonionAlgebra {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    fn encode(&self, x: &[u8; DIM]) -> u64 {
        x.iter().rev().fold(0u64, |acc, &d| acc * self.q + d as u64)
    }

    fn decode(&self, mut code: u64) -> [u8; DIM] {
        let mut x = [0u8; DIM];
        for d in x.iter_mut() {
            *d = (code % self.q) as u8;
            code /= self.q;
        }
        x
    }

    pub fn index_of_code(&self, code: u64) -> Option<u32> {
        self.codes.binary_search(&code).ok().map(|i| i as u32)
    }

    pub fn index_of(&self, x: &Octonion) -> Option<u32> {
        let r = self.alg.ring();
        let mut digits = [0u8; DIM];
        for (d, c) in digits.iter_mut().zip(x.coords()) {
            *d = r.index_of(c)? as u8;
        }
        self.index_of_code(self.encode(&digits))
    }

    pub fn point(&self, i: u32) -> Octonion {
        let r = self.alg.ring();
        let digits = self.decode(self.codes[i as usize]);
        self.alg
            .element(digits.iter().map(|&d| r.element(d as u64)).collect())
            .expect("8 coordinates")
    }

    pub fn one_index(&self) -> u32 {
        self.index_of(&self.alg.one()).expect("1 has norm 1")
    }

    /// The permutation `p -> index(m p)` of the table; `m` must preserve the norm.
    pub fn permutation(&self, m: &Matrix) -> Result<Vec<u32>> {
        let r = self.alg.ring();
        let mut rows = [[0u8; DIM]; DIM];
        for (k, row) in rows.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = r.index_of(m.get(k, j)).expect("finite field entry") as u8;
            }
        }
        self.codes
            .iter()
            .map(|&c| {
                let img = self.tables.mat_vec(&rows, &self.decode(c));
                self.index_of_code(self.encode(&img))
                    .ok_or_else(|| Error::PreconditionFailed("matrix does not preserve the unit sphere".into()))
            })
            .collect()
    }
}

/// The unit sphere of `zorn(F_q)`, for `|S| <= DEFAULT_POINT_CEILING`.
pub fn enumerate_sphere(q: u64) -> Result<SpherePointTable> {
    enumerate_sphere_limited(q, DEFAULT_POINT_CEILING)
}

/// Scans `F_q^8` for `q < 5` and uses the hyperbolic parametrisation
/// otherwise; asserts the count formula.
pub fn enumerate_sphere_limited(q: u64, max_points: u64) -> Result<SpherePointTable> {
    if q < 5 {
        enumerate_sphere_by(q, max_points, SphereMethod::Scan)
    } else {
        enumerate_sphere_by(q, max_points, SphereMethod::Hyperbolic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereMethod {
    /// Every vector of `F_q^8`.
    Scan,
    /// `(x, y)` with `x ∈ F_q^4 \ 0` and `y` on the affine hyperplane `⟨x, y⟩ = 1`.
    Hyperbolic,
}

pub fn enumerate_sphere_by(q: u64, max_points: u64, method: SphereMethod) -> Result<SpherePointTable> {
    if prime_power(q).is_none() || q > 256 || q.checked_pow(8).is_none() {
        return Err(Error::UnsupportedFieldSize(q));
    }
    let expected = sphere_count_formula(q);
    if expected > max_points {
        return Err(Error::CeilingExceeded(max_points));
    }
    let ring = RingContext::galois_field(q)?;
    let tables = FieldTables::new(&ring)?;
    let mut table = SpherePointTable {
        q,
        alg: OctonionAlgebra::zorn(&ring),
        tables,
        codes: Vec::new(),
    };
    let t = &table.tables;
    let mut codes = Vec::with_capacity(expected as usize);
    match method {
        SphereMethod::Scan => {
            for code in 0..q.pow(8) {
                if t.zorn_norm(&table.decode(code)) == t.one {
                    codes.push(code);
                }
            }
        }
        SphereMethod::Hyperbolic => {
            // x = (α, v), y = (β, w), ⟨x, y⟩ = αβ - v·w
            let qs = q as usize;
            let inv: Vec<u8> = (0..qs as u8)
                .map(|a| (0..qs as u8).find(|&b| t.mul(a, b) == t.one).unwrap_or(t.zero))
                .collect();
            let x_pos = [0usize, 2, 3, 4];
            let y_pos = [1usize, 5, 6, 7];
            let sign = |k: usize, c: u8| if k == 0 { c } else { t.neg[c as usize] };
            for xc in 0..q.pow(4) {
                let x: Vec<u8> = (0..4).map(|k| (xc / q.pow(k as u32) % q) as u8).collect();
                let Some(pivot) = (0..4).find(|&k| x[k] != t.zero) else { continue };
                let others: Vec<usize> = (0..4).filter(|&k| k != pivot).collect();
                for yc in 0..q.pow(3) {
                    let mut pt = [t.zero; DIM];
                    for k in 0..4 {
                        pt[x_pos[k]] = x[k];
                    }
                    let mut partial = t.zero;
                    for (n, &k) in others.iter().enumerate() {
                        let yk = (yc / q.pow(n as u32) % q) as u8;
                        pt[y_pos[k]] = yk;
                        partial = t.add(partial, sign(k, t.mul(x[k], yk)));
                    }
                    // sign(pivot) x_p y_p = 1 - partial
                    let rest = t.add(t.one, t.neg[partial as usize]);
                    let coeff = sign(pivot, x[pivot]);
                    pt[y_pos[pivot]] = t.mul(rest, inv[coeff as usize]);
                    codes.push(table.encode(&pt));
                }
            }
        }
    }
    codes.sort_unstable();
    if codes.len() as u64 != expected {
        return Err(Error::PreconditionFailed(format!(
            "sphere over F_{q} has {} points, formula gives {expected}",
            codes.len()
        )));
    }
    table.codes = codes;
    Ok(table)
}

/// Which related triple a generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GenTag {
    Identity,
    /// `basic(c)` rotated `rotation` times, `c` the sphere point with this index.
    Basic { point: u32, rotation: u8 },
}

/// Generator actions on pairs: `(u, v) -> (perm_u[u], perm_v[v])`.
#[derive(Clone, Debug)]
pub struct OrbitGenerators {
    perms: Vec<Vec<u32>>,
    gens: Vec<(u32, u32, GenTag)>,
}

impl OrbitGenerators {
    pub fn identity(table: &SpherePointTable) -> Self {
        OrbitGenerators {
            perms: vec![(0..table.len() as u32).collect()],
            gens: vec![(0, 0, GenTag::Identity)],
        }
    }

    /// `basic(c)`, `rotate(basic(c))` and `rotate²(basic(c))` for every sphere
    /// point `c`. Their `(t3, t2)` components are `(L_c̄, R_c̄)`, `(B_c, L_c̄)`
    /// and `(R_c̄, B_c)`.
    pub fn basic_with_rotations(table: &SpherePointTable) -> Result<Self> {
        let alg = table.algebra();
        let per_point: Vec<[Vec<u32>; 3]> = (0..table.len() as u32)
            .into_par_iter()
            .map(|i| {
                let c = table.point(i);
                let cb = c.conj();
                Ok([
                    table.permutation(&alg.left_mul(&cb))?,
                    table.permutation(&alg.right_mul(&cb))?,
                    table.permutation(&alg.bimul(&c))?,
                ])
            })
            .collect::<Result<_>>()?;
        let mut perms = Vec::with_capacity(3 * per_point.len());
        let mut gens = Vec::with_capacity(3 * per_point.len());
        for (i, [l, r, b]) in per_point.into_iter().enumerate() {
            let base = perms.len() as u32;
            perms.extend([l, r, b]);
            let (l, r, b) = (base, base + 1, base + 2);
            let point = i as u32;
            gens.push((l, r, GenTag::Basic { point, rotation: 0 }));
            gens.push((b, l, GenTag::Basic { point, rotation: 1 }));
            gens.push((r, b, GenTag::Basic { point, rotation: 2 }));
        }
        Ok(OrbitGenerators { perms, gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn tag(&self, g: u32) -> GenTag {
        self.gens[g as usize].2
    }

    fn apply(&self, g: usize, u: u32, v: u32) -> (u32, u32) {
        let (pu, pv, _) = self.gens[g];
        (self.perms[pu as usize][u as usize], self.perms[pv as usize][v as usize])
    }

    /// The related triple behind generator `g`.
    pub fn triple(&self, table: &SpherePointTable, g: u32) -> RelatedTriple {
        match self.tag(g) {
            GenTag::Identity => RelatedTriple::identity(table.algebra()),
            GenTag::Basic { point, rotation } => {
                let mut t = RelatedTriple::basic(&table.point(point)).expect("sphere point");
                for _ in 0..rotation {
                    t = t.rotate();
                }
                t
            }
        }
    }
}

const UNSEEN: u64 = u64::MAX;
const ROOT: u32 = u32::MAX;

/// Breadth-first closure of one pair with parent pointers.
#[derive(Clone, Debug)]
pub struct Orbit {
    n: u64,
    start: u32,
    /// `(parent pair, generator)` per visited pair; `ROOT` for the start.
    parent: Vec<u32>,
    via: Vec<u32>,
    order: Vec<u32>,
    depth: usize,
    complete: bool,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.order.len()
    }

    /// Depth of the breadth-first tree.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// False when the search stopped early at a target.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn pair(&self, node: u32) -> (u32, u32) {
        ((node as u64 / self.n) as u32, (node as u64 % self.n) as u32)
    }

    pub fn node(&self, u: u32, v: u32) -> u32 {
        (u as u64 * self.n + v as u64) as u32
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        self.via[self.node(u, v) as usize] != UNSEEN as u32 || self.node(u, v) == self.start
    }

    /// Visited pairs in breadth-first order.
    pub fn nodes(&self) -> &[u32] {
        &self.order
    }

    /// Generators `g_1, ..., g_k` with `g_k ... g_1 . start = (u, v)`.
    pub fn word_to(&self, u: u32, v: u32) -> Option<Vec<u32>> {
        if !self.contains(u, v) {
            return None;
        }
        let mut node = self.node(u, v);
        let mut word = Vec::new();
        while node != self.start {
            word.push(self.via[node as usize]);
            node = self.parent[node as usize];
        }
        word.reverse();
        Some(word)
    }
}

/// Orbit of `(u, v)` under `gens`, stopping early once `target` is reached.
pub fn orbit_of_pair(
    table: &SpherePointTable,
    gens: &OrbitGenerators,
    start: (u32, u32),
    target: Option<(u32, u32)>,
    max_pairs: u64,
) -> Result<Orbit> {
    let n = table.len() as u64;
    let pairs = n * n;
    if pairs > max_pairs || pairs > u32::MAX as u64 {
        return Err(Error::CeilingExceeded(max_pairs));
    }
    let node = |u: u32, v: u32| (u as u64 * n + v as u64) as u32;
    let start_node = node(start.0, start.1);
    let mut orbit = Orbit {
        n,
        start: start_node,
        parent: vec![ROOT; pairs as usize],
        via: vec![UNSEEN as u32; pairs as usize],
        order: vec![start_node],
        depth: 0,
        complete: true,
    };
    let mut seen = vec![false; pairs as usize];
    seen[start_node as usize] = true;
    let claims: Vec<AtomicU64> = (0..pairs).map(|_| AtomicU64::new(UNSEEN)).collect();
    let target_node = target.map(|(u, v)| node(u, v));
    let mut frontier = vec![start_node];
    while !frontier.is_empty() {
        if target_node.is_some_and(|t| seen[t as usize]) {
            orbit.complete = false;
            break;
        }
        // the smallest (frontier position, generator) claiming a pair wins,
        // so parents do not depend on scheduling
        let mut next: Vec<u32> = frontier
            .par_iter()
            .enumerate()
            .flat_map_iter(|(pos, &x)| {
                let (u, v) = ((x as u64 / n) as u32, (x as u64 % n) as u32);
                let seen = &seen;
                let claims = &claims;
                (0..gens.len()).filter_map(move |g| {
                    let (u2, v2) = gens.apply(g, u, v);
                    let y = node(u2, v2);
                    if seen[y as usize] {
                        return None;
                    }
                    let key = (pos as u64) << 32 | g as u64;
                    let prev = claims[y as usize].fetch_min(key, Ordering::Relaxed);
                    (prev == UNSEEN).then_some(y)
                })
            })
            .collect();
        next.sort_unstable();
        for &y in &next {
            let key = claims[y as usize].load(Ordering::Relaxed);
            orbit.parent[y as usize] = frontier[(key >> 32) as usize];
            orbit.via[y as usize] = key as u32;
            seen[y as usize] = true;
        }
        if !next.is_empty() {
            orbit.depth += 1;
        }
        orbit.order.extend_from_slice(&next);
        frontier = next;
    }
    Ok(orbit)
}

/// The product `g_k ∘ ... ∘ g_1` of the generator triples along a word.
pub fn triple_for_word(table: &SpherePointTable, gens: &OrbitGenerators, word: &[u32]) -> RelatedTriple {
    word.iter().fold(RelatedTriple::identity(table.algebra()), |acc, &g| {
        gens.triple(table, g).compose(&acc).expect("same algebra")
    })
}

/// An isomorphism `C -> C^{a,b}` from a related triple with `pi = (a, b)`
/// found by searching the orbit of `(1, 1)`.
pub fn isotope_witness_via_orbit(
    table: &SpherePointTable,
    gens: &OrbitGenerators,
    a: &Octonion,
    b: &Octonion,
    max_pairs: u64,
) -> Result<IsoWitness> {
    let (ia, ib) = match (table.index_of(a), table.index_of(b)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::NotUnitNorm(format!("({a}; {b})"))),
    };
    let one = table.one_index();
    let orbit = orbit_of_pair(table, gens, (one, one), Some((ia, ib)), max_pairs)?;
    let word = orbit
        .word_to(ia, ib)
        .ok_or_else(|| Error::NotReached(format!("({a}; {b}) from (1, 1) with {} generators", gens.len())))?;
    let t = triple_for_word(table, gens, &word);
    debug_assert_eq!(t.pi(), (a.clone(), b.clone()));
    let trace = word.iter().map(|&g| format!("{:?}", gens.tag(g))).collect();
    IsoWitness::new(t.t1().clone(), Isotope::new(a, b)?, trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_counts() {
        assert_eq!(enumerate_sphere(2).unwrap().len(), 120);
        assert_eq!(enumerate_sphere(3).unwrap().len(), 2160);
        assert_eq!(enumerate_sphere(4).unwrap().len(), 16320);
        assert!(matches!(enumerate_sphere(6), Err(Error::UnsupportedFieldSize(6))));
        assert!(matches!(enumerate_sphere(11), Err(Error::CeilingExceeded(_))));
    }

    #[test]
    fn parametrisation_matches_scan() {
        for q in [2, 3, 4] {
            let scan = enumerate_sphere_by(q, u64::MAX, SphereMethod::Scan).unwrap();
            let hyp = enumerate_sphere_by(q, u64::MAX, SphereMethod::Hyperbolic).unwrap();
            assert_eq!(scan.codes(), hyp.codes());
        }
    }

    #[test]
    fn table_points_have_norm_one() {
        let t = enumerate_sphere(3).unwrap();
        let r = t.algebra().ring().clone();
        for i in 0..t.len() as u32 {
            let p = t.point(i);
            assert!(r.is_one(&p.norm()));
            assert_eq!(t.index_of(&p), Some(i));
        }
    }

    #[test]
    fn permutations_match_triple_action() {
        let t = enumerate_sphere(3).unwrap();
        let gens = OrbitGenerators::basic_with_rotations(&t).unwrap();
        assert_eq!(gens.len(), 3 * 2160);
        for g in (0..gens.len() as u32).step_by(97) {
            let triple = gens.triple(&t, g);
            for (u, v) in [(0u32, 5u32), (17, 1000), (2159, 3)] {
                let (pu, pv) = triple.act(&t.point(u), &t.point(v));
                assert_eq!(gens.apply(g as usize, u, v), (t.index_of(&pu).unwrap(), t.index_of(&pv).unwrap()));
            }
        }
    }

    #[test]
    fn identity_generators_fix_the_start() {
        let t = enumerate_sphere(2).unwrap();
        let one = t.one_index();
        let o = orbit_of_pair(&t, &OrbitGenerators::identity(&t), (one, one), None, DEFAULT_PAIR_CEILING).unwrap();
        assert_eq!(o.size(), 1);
    }

    #[test]
    fn q2_orbit_is_everything() {
        let t = enumerate_sphere(2).unwrap();
        let gens = OrbitGenerators::basic_with_rotations(&t).unwrap();
        let one = t.one_index();
        let o = orbit_of_pair(&t, &gens, (one, one), None, DEFAULT_PAIR_CEILING).unwrap();
        assert_eq!(o.size(), 14400);
        let other = orbit_of_pair(&t, &gens, (7, 99), None, DEFAULT_PAIR_CEILING).unwrap();
        assert_eq!(other.size(), 14400);
        for &node in o.nodes().iter().step_by(211) {
            let (u, v) = o.pair(node);
            let w = o.word_to(u, v).unwrap();
            assert_eq!(triple_for_word(&t, &gens, &w).pi(), (t.point(u), t.point(v)));
        }
        let t3 = enumerate_sphere(3).unwrap();
        let gated = orbit_of_pair(&t3, &OrbitGenerators::identity(&t3), (0, 0), None, DEFAULT_PAIR_CEILING);
        assert!(matches!(gated, Err(Error::CeilingExceeded(_))));
    }

    #[test]
    fn witnesses_from_the_orbit() {
        let t = enumerate_sphere(2).unwrap();
        let gens = OrbitGenerators::basic_with_rotations(&t).unwrap();
        let one = t.algebra().one();
        let w = isotope_witness_via_orbit(&t, &gens, &one, &one, DEFAULT_PAIR_CEILING).unwrap();
        assert!(w.map.is_identity());
        for (i, j) in [(3u32, 77u32), (119, 0), (50, 51)] {
            assert!(isotope_witness_via_orbit(&t, &gens, &t.point(i), &t.point(j), DEFAULT_PAIR_CEILING).is_ok());
        }
    }
}
