//! The acceptance criteria as runnable reports. The `acceptance` test target
//! and the CLI `paper-suite` command both run this code.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::clifford::{CliffordElement, SpinElement};
use crate::error::{Error, Result};
use crate::isotope::{formula_maps, is_algebra_isomorphism, standard_form, trialitarian_step, Isotope};
use crate::linalg::Matrix;
use crate::octonion::{counterexample, Octonion, OctonionAlgebra, DIM};
use crate::orbits::{
    enumerate_sphere, orbit_of_pair, sphere_count_formula, triple_for_word, OrbitGenerators, SpherePointTable,
    DEFAULT_PAIR_CEILING,
};
use crate::report::{Check, Report};
use crate::ring::RingContext;
use crate::triality::{
    delta_invariant, is_related, iso_from_triple, isotope_algebra, s_ab, triple_from_iso, twist_conjugate, untwist,
    RelatedTriple,
};
use crate::trivialize::{field_trivialize, trivialize, IsoWitness};

/// Titles of the acceptance criteria, numbered from 1.
pub const CRITERIA: [&str; 10] = [
    "identity suites",
    "isotope norm",
    "isomorphisms between isotopes",
    "triality relation suite",
    "triples and isomorphisms round trip",
    "Clifford model and spin group",
    "sphere and orbit counts",
    "field trivialisation",
    "twisted conjugation",
    "trialitarian pair action",
];

/// Pairs examined by the optional orbit run at `q = 3`.
pub const Q3_PAIR_CEILING: u64 = 5_000_000;

/// Sample sizes and ring selection for the suite.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random triples per algebra in the identity suites.
    pub samples: usize,
    /// Random pairs or generated cases per ring elsewhere.
    pub pairs: usize,
    /// Randomized product trials for the kernel check.
    pub trials: usize,
    /// Replaces the default ring lists. Exhaustive runs over `F_q` only
    /// happen when `F_q` is listed.
    pub rings: Option<Vec<RingContext>>,
    /// Also close the orbit of `(1, 1)` at `q = 3`.
    pub orbit_q3: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 500,
            pairs: 100,
            trials: 10_000,
            rings: None,
            orbit_q3: false,
        }
    }
}

impl SuiteConfig {
    /// A generator that depends only on the seed, the criterion and `label`,
    /// so a single ring can be replayed on its own.
    pub fn rng(&self, id: usize, label: &str) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes().chain((id as u64).to_le_bytes()) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    fn algebras(&self, defaults: &[&str]) -> Result<Vec<OctonionAlgebra>> {
        match &self.rings {
            Some(rings) => Ok(rings.iter().map(OctonionAlgebra::zorn).collect()),
            None => defaults.iter().map(|s| OctonionAlgebra::parse(s)).collect(),
        }
    }

    fn includes_field(&self, q: u64) -> bool {
        match &self.rings {
            None => true,
            Some(rings) => rings.iter().any(|r| r.is_field() && r.size() == Some(q)),
        }
    }
}

/// Runs criterion `id` (1 to 10).
pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> Result<Report> {
    match id {
        1 => identities(cfg),
        2 => isotope_norm(cfg),
        3 => formulae(cfg),
        4 => relations(cfg),
        5 => round_trip(cfg),
        6 => clifford(cfg),
        7 => counting(cfg),
        8 => trivialisation(cfg),
        9 => twisted(cfg),
        10 => pair_action(cfg),
        _ => Err(Error::PreconditionFailed(format!("no criterion {id}; expected 1 to {}", CRITERIA.len()))),
    }
}

/// Every criterion in order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, cfg)).collect()
}

// -------------------------------------------------------------------------
// bookkeeping

/// Counts cases of one check and keeps the first counterexample.
struct Tally {
    name: String,
    unit: &'static str,
    total: usize,
    failed: usize,
    first: Option<Value>,
}

impl Tally {
    fn new(name: impl Into<String>, unit: &'static str) -> Self {
        Tally {
            name: name.into(),
            unit,
            total: 0,
            failed: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, cx: impl FnOnce() -> Value) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(cx());
            }
        }
    }

    /// Records `Ok(true)` as a pass; errors are attached to the counterexample.
    fn record_result(&mut self, outcome: Result<bool>, cx: impl FnOnce() -> Value) {
        let err = outcome.as_ref().err().map(|e| e.to_string());
        self.record(matches!(outcome, Ok(true)), || with_error(cx(), err));
    }

    fn check(self) -> Check {
        if self.total == 0 {
            Check::unknown(self.name, format!("no {} available", self.unit))
        } else if self.failed == 0 {
            Check::pass(self.name, format!("{} {}", self.total, self.unit))
        } else {
            Check::fail(self.name, format!("{} of {} {} failed", self.failed, self.total, self.unit), self.first)
        }
    }
}

fn with_error(mut cx: Value, err: Option<String>) -> Value {
    if let (Some(e), Value::Object(map)) = (err, &mut cx) {
        map.insert("error".into(), json!(e));
    }
    cx
}

fn triple_cx(t: &RelatedTriple) -> Value {
    let alg = t.algebra();
    json!({ "ring": alg.ring().to_string(), "algebra": alg.label(), "triple": t.to_json() })
}

fn new_report(id: usize, algs: &[OctonionAlgebra]) -> Report {
    let mut rings: Vec<String> = Vec::new();
    for a in algs {
        let r = a.ring().to_string();
        if !rings.contains(&r) {
            rings.push(r);
        }
    }
    let labels: Vec<&str> = algs.iter().map(|a| a.label()).collect();
    Report::new(format!("criterion {id}: {}", CRITERIA[id - 1]), rings.join(", "), labels.join(", "))
}

fn budget(start: Instant, limit: Duration) -> Check {
    let name = format!("runtime under {} s", limit.as_secs());
    let elapsed = start.elapsed();
    if elapsed < limit {
        Check::pass(name, format!("within the {} s budget", limit.as_secs()))
    } else {
        Check::fail(name, format!("took {:.1} s", elapsed.as_secs_f64()), None)
    }
}

fn sphere_pair<R: Rng>(alg: &OctonionAlgebra, rng: &mut R) -> Option<(Octonion, Octonion)> {
    Some((alg.random_sphere(rng)?, alg.random_sphere(rng)?))
}

fn invertible_pair<R: Rng>(alg: &OctonionAlgebra, rng: &mut R) -> Option<(Octonion, Octonion)> {
    Some((alg.random_invertible(rng)?, alg.random_invertible(rng)?))
}

/// `basic(c)` rotated `k` times.
fn rotated_basic(c: &Octonion, k: usize) -> Result<RelatedTriple> {
    let mut t = RelatedTriple::basic(c)?;
    for _ in 0..k {
        t = t.rotate();
    }
    Ok(t)
}

/// A product of one to four rotated basic triples.
fn random_product<R: Rng>(alg: &OctonionAlgebra, rng: &mut R) -> Result<RelatedTriple> {
    let len = rng.gen_range(1..=4);
    let mut t = RelatedTriple::identity(alg);
    for _ in 0..len {
        let c = alg
            .random_sphere(rng)
            .ok_or_else(|| Error::NotFound(format!("sphere sampler for {alg}")))?;
        t = rotated_basic(&c, rng.gen_range(0..3))?.compose(&t)?;
    }
    Ok(t)
}

fn sampled_products<R: Rng>(alg: &OctonionAlgebra, rng: &mut R, n: usize) -> Result<Vec<RelatedTriple>> {
    (0..n).map(|_| random_product(alg, rng)).collect()
}

/// The triples of the relation suite, by family.
struct TriplePool {
    basic: Vec<RelatedTriple>,
    rotations: Vec<RelatedTriple>,
    products: Vec<RelatedTriple>,
    inverses: Vec<RelatedTriple>,
}

impl TriplePool {
    fn generate<R: Rng>(alg: &OctonionAlgebra, rng: &mut R, n: usize) -> Result<Self> {
        let mut pool = TriplePool {
            basic: Vec::new(),
            rotations: Vec::new(),
            products: Vec::new(),
            inverses: Vec::new(),
        };
        for _ in 0..n {
            let c = alg
                .random_sphere(rng)
                .ok_or_else(|| Error::NotFound(format!("sphere sampler for {alg}")))?;
            let t = RelatedTriple::basic(&c)?;
            let r1 = t.rotate();
            let r2 = r1.rotate();
            // products of boundedly many factors keep rational entries small
            let p = match pool.basic.last() {
                Some(prev) => prev.rotate().compose(&r1)?.compose(&t)?,
                None => r2.compose(&t)?,
            };
            pool.inverses.push(t.inverse());
            pool.inverses.push(p.inverse());
            pool.rotations.extend([r1, r2]);
            pool.basic.push(t);
            pool.products.push(p);
        }
        Ok(pool)
    }

    fn families(&self) -> [(&'static str, &[RelatedTriple]); 4] {
        [
            ("basic triples", &self.basic),
            ("rotations", &self.rotations),
            ("products", &self.products),
            ("inverses", &self.inverses),
        ]
    }

    fn all(&self) -> impl Iterator<Item = &RelatedTriple> {
        self.basic.iter().chain(&self.rotations).chain(&self.products).chain(&self.inverses)
    }
}

// -------------------------------------------------------------------------
// criteria

const IDENTITY_ALGEBRAS: [&str; 6] = ["zorn(Z)", "zorn(Q)", "zorn(F2)", "zorn(F3)", "zorn(Z/8)", "cd(Q,-1,-1,-1)"];

fn identities(cfg: &SuiteConfig) -> Result<Report> {
    let start = Instant::now();
    let algs = cfg.algebras(&IDENTITY_ALGEBRAS)?;
    let mut rep = new_report(1, &algs);
    for alg in &algs {
        let mut rng = cfg.rng(1, alg.label());
        for mut c in alg.identity_suite(cfg.samples, &mut rng) {
            c.name = format!("{}: {}", alg.label(), c.name);
            rep.push(c);
        }
    }
    rep.push(budget(start, Duration::from_secs(5)));
    Ok(rep)
}

fn isotope_norm(cfg: &SuiteConfig) -> Result<Report> {
    let algs = cfg.algebras(&["zorn(Z)", "zorn(Q)", "zorn(F2)", "zorn(F3)", "zorn(F5)", "cd(Q,-1,-1,-1)"])?;
    let mut rep = new_report(2, &algs);
    for alg in &algs {
        let mut rng = cfg.rng(2, alg.label());
        let mut unit = Tally::new(format!("{}: isotope norm equals q for q(a) = q(b) = 1", alg.label()), "pairs");
        let mut inv = Tally::new(format!("{}: isotope norm equals q(ab) q for invertible a, b", alg.label()), "pairs");
        for _ in 0..cfg.pairs {
            let Some((a, b)) = sphere_pair(alg, &mut rng) else { break };
            let outcome = Isotope::new(&a, &b).and_then(|iso| {
                let generic = iso.generic_norm_form()?;
                Ok(generic == *alg.norm() && iso.norm_form() == generic)
            });
            unit.record_result(outcome, || counterexample(alg, &[("a", &a), ("b", &b)]));
        }
        for _ in 0..cfg.pairs {
            let Some((a, b)) = invertible_pair(alg, &mut rng) else { break };
            let expected = alg.norm().scale(&a.mul(&b).norm());
            let outcome = Isotope::new(&a, &b).and_then(|iso| {
                let generic = iso.generic_norm_form()?;
                Ok(generic == expected && iso.norm_form() == generic)
            });
            inv.record_result(outcome, || counterexample(alg, &[("a", &a), ("b", &b)]));
        }
        rep.push(unit.check());
        rep.push(inv.check());
    }
    Ok(rep)
}

/// One tally per named map, in the order the maps are listed.
fn record_maps(tallies: &mut Vec<Tally>, prefix: &str, alg: &OctonionAlgebra, a: &Octonion, b: &Octonion) {
    match formula_maps(a, b) {
        Ok(maps) => {
            if tallies.is_empty() {
                tallies.extend(maps.iter().map(|m| Tally::new(format!("{prefix}: {}", m.name), "pairs")));
            }
            for (tally, m) in tallies.iter_mut().zip(&maps) {
                tally.record(m.holds(), || counterexample(alg, &[("a", a), ("b", b)]));
            }
        }
        Err(e) => {
            if tallies.is_empty() {
                tallies.push(Tally::new(format!("{prefix}: maps constructed"), "pairs"));
            }
            tallies[0].record(false, || with_error(counterexample(alg, &[("a", a), ("b", b)]), Some(e.to_string())));
        }
    }
}

fn formulae(cfg: &SuiteConfig) -> Result<Report> {
    let algs = cfg.algebras(&["zorn(F3)", "zorn(F5)", "zorn(Q)"])?;
    let mut rep = new_report(3, &algs);
    if cfg.includes_field(2) {
        let table = enumerate_sphere(2)?;
        let alg = table.algebra().clone();
        let points: Vec<Octonion> = (0..table.len() as u32).map(|i| table.point(i)).collect();
        let mut tallies = Vec::new();
        let prefix = format!("{}: all {}^2 unit-norm pairs", alg.label(), points.len());
        for a in &points {
            for b in &points {
                record_maps(&mut tallies, &prefix, &alg, a, b);
            }
        }
        rep.extend(tallies.into_iter().map(Tally::check));
    }
    for alg in &algs {
        let mut rng = cfg.rng(3, alg.label());
        let mut unit = Vec::new();
        let mut inv = Vec::new();
        for _ in 0..cfg.pairs {
            let Some((a, b)) = sphere_pair(alg, &mut rng) else { break };
            record_maps(&mut unit, &format!("{}: unit-norm pairs", alg.label()), alg, &a, &b);
        }
        for _ in 0..cfg.pairs {
            let Some((a, b)) = invertible_pair(alg, &mut rng) else { break };
            record_maps(&mut inv, &format!("{}: invertible pairs", alg.label()), alg, &a, &b);
        }
        rep.extend(unit.into_iter().chain(inv).map(Tally::check));
    }
    Ok(rep)
}

const TRIPLE_ALGEBRAS: [&str; 3] = ["zorn(F2)", "zorn(F3)", "zorn(Q)"];

/// `η I` for some `η` with `η^2 = 1`.
fn kernel_scalar(m: &Matrix) -> bool {
    let r = m.ring();
    let one = r.one();
    [one.clone(), r.neg(&one)]
        .iter()
        .any(|eta| *m == Matrix::scalar(r, DIM, eta))
}

fn relations(cfg: &SuiteConfig) -> Result<Report> {
    let algs = cfg.algebras(&TRIPLE_ALGEBRAS)?;
    let mut rep = new_report(4, &algs);
    let mut pools = Vec::new();
    for alg in &algs {
        let mut rng = cfg.rng(4, alg.label());
        let pool = TriplePool::generate(alg, &mut rng, cfg.pairs)?;
        for (family, ts) in pool.families() {
            let mut tally = Tally::new(format!("{}: {family} related and Δ-invariant", alg.label()), "triples");
            for t in ts {
                tally.record(t.check() && t.delta_invariant(), || triple_cx(t));
            }
            rep.push(tally.check());
        }
        let r = alg.ring();
        let mut kernel = Tally::new(format!("{}: kernel triples (I, ηI, ηI) accepted", alg.label()), "signs");
        for eta in [r.one(), r.neg(&r.one())] {
            let t = RelatedTriple::kernel(alg, &eta)?;
            let [t1, t2, t3] = t.components();
            kernel.record(is_related(alg, t1, t2, t3) && delta_invariant(alg, t1, t2, t3), || triple_cx(&t));
        }
        rep.push(kernel.check());
        pools.push((alg, pool, rng));
    }
    // trials shared round-robin between the algebras
    let mut tallies: Vec<(Tally, Tally)> = algs
        .iter()
        .map(|alg| {
            (
                Tally::new(format!("{}: t1 = I accepted only for kernel triples", alg.label()), "product trials"),
                Tally::new(format!("{}: relation and Δ-invariance agree on candidates", alg.label()), "product trials"),
            )
        })
        .collect();
    for trial in 0..cfg.trials {
        let k = trial % pools.len();
        let (alg, pool, rng) = &mut pools[k];
        let products = &pool.products;
        let s = &products[rng.gen_range(0..products.len())];
        let t = &products[rng.gen_range(0..products.len())];
        let mut p = s.compose(t)?;
        if rng.gen_range(0..8) == 0 {
            // a product whose first component is I, to exercise acceptance
            let eta = if rng.gen() { alg.ring().one() } else { alg.ring().neg(&alg.ring().one()) };
            p = p.compose(&p.inverse())?.compose(&RelatedTriple::kernel(alg, &eta)?)?;
        }
        let id = Matrix::identity(alg.ring(), DIM);
        let (t2, t3) = (p.t2(), p.t3());
        let accepted = is_related(alg, &id, t2, t3);
        let expected = t2 == t3 && kernel_scalar(t2);
        let cx = || {
            let mut v = triple_cx(&p);
            if let Value::Object(map) = &mut v {
                map.insert("candidate".into(), json!("(I, t2, t3)"));
            }
            v
        };
        tallies[k].0.record(accepted == expected, cx);
        tallies[k].1.record(accepted == delta_invariant(alg, &id, t2, t3), cx);
    }
    for (a, b) in tallies {
        rep.push(a.check());
        rep.push(b.check());
    }
    Ok(rep)
}

/// `iso_from_triple` then `triple_from_iso` recovers `pi` and the triple up
/// to the kernel.
fn round_trip_ok(t: &RelatedTriple) -> Result<bool> {
    let (a, b, f) = iso_from_triple(t)?;
    let back = triple_from_iso(&f, &a, &b)?;
    Ok(back.pi() == t.pi() && back.pi() == (a, b) && t.kernel_ratio(&back).is_some())
}

/// The orbit of `(1, 1)` at `q = 2` with the triple reaching every pair.
fn orbit_triples_q2(mut visit: impl FnMut(&SpherePointTable, (u32, u32), RelatedTriple)) -> Result<usize> {
    let table = enumerate_sphere(2)?;
    let gens = OrbitGenerators::basic_with_rotations(&table)?;
    let one = table.one_index();
    let orbit = orbit_of_pair(&table, &gens, (one, one), None, DEFAULT_PAIR_CEILING)?;
    for &node in orbit.nodes() {
        let (u, v) = orbit.pair(node);
        let word = orbit.word_to(u, v).expect("visited pair");
        visit(&table, (u, v), triple_for_word(&table, &gens, &word));
    }
    Ok(orbit.size())
}

const SAMPLED_ALGEBRAS: [&str; 3] = ["zorn(F3)", "zorn(F5)", "zorn(Q)"];

fn round_trip(cfg: &SuiteConfig) -> Result<Report> {
    let algs = cfg.algebras(&SAMPLED_ALGEBRAS)?;
    let mut rep = new_report(5, &algs);
    if cfg.includes_field(2) {
        let mut reach = Tally::new("zorn(F2): orbit triples reach their pair", "triples");
        let mut tally = Tally::new("zorn(F2): round trip over every orbit-generated triple", "triples");
        orbit_triples_q2(|table, (u, v), t| {
            reach.record(t.pi() == (table.point(u), table.point(v)), || triple_cx(&t));
            tally.record_result(round_trip_ok(&t), || triple_cx(&t));
        })?;
        rep.push(reach.check());
        rep.push(tally.check());
    }
    for alg in &algs {
        let mut rng = cfg.rng(5, alg.label());
        let triples = sampled_products(alg, &mut rng, cfg.pairs)?;
        let mut tally = Tally::new(format!("{}: round trip over sampled product triples", alg.label()), "triples");
        for t in &triples {
            tally.record_result(round_trip_ok(t), || triple_cx(t));
        }
        rep.push(tally.check());
    }
    Ok(rep)
}

/// `α(x) α(y)` with `q(x) q(y) = 1`.
fn random_spin<R: Rng>(alg: &OctonionAlgebra, rng: &mut R) -> Result<SpinElement> {
    let r = alg.ring();
    let sample = |rng: &mut R| -> Result<SpinElement> {
        let x = alg
            .random_invertible(rng)
            .ok_or_else(|| Error::NotFound(format!("invertible sampler for {alg}")))?;
        let inv = r.inv(&x.norm()).ok_or_else(|| Error::NotInvertible(x.to_string()))?;
        let y = alg
            .random_with_norm(&inv, rng)
            .ok_or_else(|| Error::NotFound(format!("norm sampler for {alg}")))?;
        SpinElement::from_vectors(&x, &y)
    };
    sample(rng)?.mul(&sample(rng)?)
}

fn clifford(cfg: &SuiteConfig) -> Result<Report> {
    let algs = cfg.algebras(&TRIPLE_ALGEBRAS)?;
    let mut rep = new_report(6, &algs);
    for alg in &algs {
        let mut rng = cfg.rng(6, alg.label());
        let r = alg.ring();
        let mut squares = Tally::new(format!("{}: α(x)^2 = q(x) I on the basis", alg.label()), "basis vectors");
        for i in 0..DIM {
            let e = alg.basis(i);
            let a = CliffordElement::alpha(&e);
            squares.record(a.mul(&a)? == CliffordElement::scalar(alg, &e.norm()), || counterexample(alg, &[("x", &e)]));
        }
        rep.push(squares.check());

        let mut spin_rt = Tally::new(format!("{}: spin -> triple -> spin is the identity", alg.label()), "spin elements");
        for _ in 0..cfg.pairs {
            let u = random_spin(alg, &mut rng)?;
            let outcome = u.to_triple().and_then(|t| Ok(SpinElement::from_triple(&t)? == u));
            spin_rt.record_result(outcome, || json!({ "ring": r.to_string(), "algebra": alg.label(), "u": u.element().matrix().to_json() }));
        }
        rep.push(spin_rt.check());

        let mut triple_rt = Tally::new(format!("{}: triple -> spin -> triple is the identity", alg.label()), "triples");
        for t in sampled_products(alg, &mut rng, cfg.pairs)? {
            let outcome = SpinElement::from_triple(&t).and_then(|u| Ok(u.to_triple()? == t));
            triple_rt.record_result(outcome, || triple_cx(&t));
        }
        rep.push(triple_rt.check());

        let mut mult = Tally::new(format!("{}: spin -> triple is multiplicative", alg.label()), "spin pairs");
        for _ in 0..cfg.pairs {
            let u = random_spin(alg, &mut rng)?;
            let v = random_spin(alg, &mut rng)?;
            let outcome = (|| Ok(u.mul(&v)?.to_triple()? == u.to_triple()?.compose(&v.to_triple()?)?))();
            mult.record_result(outcome, || {
                json!({
                    "ring": r.to_string(),
                    "algebra": alg.label(),
                    "u": u.element().matrix().to_json(),
                    "v": v.element().matrix().to_json(),
                })
            });
        }
        rep.push(mult.check());

        let mut kernel = Tally::new(format!("{}: u = ηI maps to (I, ηI, ηI)", alg.label()), "signs");
        for eta in [r.one(), r.neg(&r.one())] {
            let outcome = SpinElement::new(CliffordElement::scalar(alg, &eta))
                .and_then(|u| Ok(u.to_triple()? == RelatedTriple::kernel(alg, &eta)?));
            kernel.record_result(outcome, || json!({ "ring": r.to_string(), "eta": r.format(&eta) }));
        }
        rep.push(kernel.check());
    }
    Ok(rep)
}

fn counting(cfg: &SuiteConfig) -> Result<Report> {
    let start = Instant::now();
    let mut rep = Report::new(format!("criterion 7: {}", CRITERIA[6]), "F2, F3, F5", "zorn(F2), zorn(F3), zorn(F5)");
    let mut counts = Vec::new();
    for (q, expected) in [(2u64, 120usize), (3, 2160), (5, 78000)] {
        let n = enumerate_sphere(q)?.len();
        let name = format!("sphere count at q = {q}");
        let detail = format!("{n} points, expected {expected}, formula (q^4 - 1) q^3 = {}", sphere_count_formula(q));
        rep.push(if n == expected && n as u64 == sphere_count_formula(q) {
            Check::pass(name, detail)
        } else {
            Check::fail(name, detail, Some(json!({ "q": q })))
        });
        counts.push(json!({ "q": q, "sphere_count": n, "expected": expected }));
    }
    let table = enumerate_sphere(2)?;
    let gens = OrbitGenerators::basic_with_rotations(&table)?;
    let expected = (sphere_count_formula(2) * sphere_count_formula(2)) as usize;
    let one = table.one_index();
    let mut rng = cfg.rng(7, "zorn(F2)");
    let other = (rng.gen_range(0..table.len() as u32), rng.gen_range(0..table.len() as u32));
    for (label, pair) in [("(1, 1)", (one, one)), ("a random pair", other)] {
        let orbit = orbit_of_pair(&table, &gens, pair, None, DEFAULT_PAIR_CEILING)?;
        let name = format!("orbit of {label} at q = 2");
        let detail = format!("{} pairs, expected {expected}", orbit.size());
        rep.push(if orbit.size() == expected {
            Check::pass(name, detail)
        } else {
            Check::fail(
                name,
                detail,
                Some(json!({ "q": 2, "start": [table.point(pair.0).to_json(), table.point(pair.1).to_json()] })),
            )
        });
        if pair == (one, one) {
            counts.push(json!({ "q": 2, "orbit_count": orbit.size(), "expected": expected }));
        }
    }
    rep.push(budget(start, Duration::from_secs(60)));
    if cfg.orbit_q3 {
        let table = enumerate_sphere(3)?;
        let gens = OrbitGenerators::basic_with_rotations(&table)?;
        let one = table.one_index();
        let orbit = orbit_of_pair(&table, &gens, (one, one), None, Q3_PAIR_CEILING)?;
        let expected = (sphere_count_formula(3) * sphere_count_formula(3)) as usize;
        let name = "orbit of (1, 1) at q = 3";
        let detail = format!("{} pairs, expected {expected}", orbit.size());
        rep.push(if orbit.size() == expected {
            Check::pass(name, detail)
        } else {
            Check::fail(name, detail, Some(json!({ "q": 3 })))
        });
        counts.push(json!({ "q": 3, "orbit_count": orbit.size(), "expected": expected }));
    }
    rep.data = Some(json!(counts));
    Ok(rep)
}

/// The witness is an isomorphism `C -> C^{a,ā}`.
fn witness_ok(w: &IsoWitness, a: &Octonion) -> bool {
    w.target.a() == a && *w.target.b() == a.conj() && is_algebra_isomorphism(&w.map, &w.source, &w.target)
}

fn trivialisation(cfg: &SuiteConfig) -> Result<Report> {
    let exhaustive: Vec<u64> = [2u64, 3].into_iter().filter(|&q| cfg.includes_field(q)).collect();
    let sampled = match &cfg.rings {
        None => vec![OctonionAlgebra::parse("zorn(Q)")?],
        Some(rings) => rings
            .iter()
            .filter(|r| !(r.is_field() && r.size().is_some_and(|q| exhaustive.contains(&q))))
            .map(OctonionAlgebra::zorn)
            .collect(),
    };
    let mut algs: Vec<OctonionAlgebra> = exhaustive
        .iter()
        .map(|&q| RingContext::galois_field(q).map(|r| OctonionAlgebra::zorn(&r)))
        .collect::<Result<_>>()?;
    algs.extend(sampled.iter().cloned());
    let mut rep = new_report(8, &algs);
    for &q in &exhaustive {
        let table = enumerate_sphere(q)?;
        let alg = table.algebra().clone();
        let mut tally = Tally::new(format!("{}: every sphere point", alg.label()), "points");
        for i in 0..table.len() as u32 {
            let a = table.point(i);
            tally.record_result(field_trivialize(&a).map(|w| witness_ok(&w, &a)), || counterexample(&alg, &[("a", &a)]));
        }
        rep.push(tally.check());
    }
    for alg in &sampled {
        let mut rng = cfg.rng(8, alg.label());
        let field = alg.ring().is_field();
        let mut tally = Tally::new(format!("{}: random sphere points", alg.label()), "points");
        let mut missing = 0usize;
        for _ in 0..cfg.pairs {
            let Some(a) = alg.random_sphere(&mut rng) else { break };
            let outcome = if field {
                field_trivialize(&a).map(|w| witness_ok(&w, &a))
            } else {
                match trivialize(&a) {
                    Ok(Some(w)) => Ok(witness_ok(&w, &a)),
                    Ok(None) => {
                        missing += 1;
                        continue;
                    }
                    Err(e) => Err(e),
                }
            };
            tally.record_result(outcome, || counterexample(alg, &[("a", &a)]));
        }
        rep.push(tally.check());
        if missing > 0 {
            rep.push(Check::unknown(
                format!("{}: points without a witness", alg.label()),
                format!("{missing} points where no sufficient condition applied"),
            ));
        }
    }
    Ok(rep)
}

fn twisted(cfg: &SuiteConfig) -> Result<Report> {
    let algs = cfg.algebras(&["zorn(F2)", "zorn(F3)", "zorn(F5)", "zorn(Q)"])?;
    let mut rep = new_report(9, &algs);
    for alg in &algs {
        let mut rng = cfg.rng(9, alg.label());
        let mut s = Tally::new(format!("{}: s_(a,b) is related", alg.label()), "pairs");
        let mut image = Tally::new(format!("{}: T^(a,b) maps isotope triples to related triples", alg.label()), "triples");
        let mut mult = Tally::new(format!("{}: T^(a,b) is multiplicative", alg.label()), "pairs of triples");
        let mut inverse = Tally::new(format!("{}: untwisting inverts T^(a,b)", alg.label()), "triples");
        for _ in 0..cfg.pairs {
            let Some((a, b)) = sphere_pair(alg, &mut rng) else { break };
            let cx = || counterexample(alg, &[("a", &a), ("b", &b)]);
            s.record_result(s_ab(&a, &b).map(|t| t.check()), cx);
            let iso = isotope_algebra(&a, &b)?;
            let t = random_product(&iso, &mut rng)?;
            let u = random_product(&iso, &mut rng)?;
            let tt = twist_conjugate(&t, &a, &b);
            let tu = twist_conjugate(&u, &a, &b);
            image.record_result(tt.as_ref().map(|x| x.check()).map_err(Clone::clone), || {
                with_error(cx(), Some(format!("isotope triple {}", t.to_json())))
            });
            image.record_result(tu.as_ref().map(|x| x.check()).map_err(Clone::clone), || {
                with_error(cx(), Some(format!("isotope triple {}", u.to_json())))
            });
            let product = (|| Ok(twist_conjugate(&t.compose(&u)?, &a, &b)? == tt.clone()?.compose(&tu.clone()?)?))();
            mult.record_result(product, cx);
            let back = tt.clone().and_then(|x| untwist(&x, &a, &b, &iso)).map(|x| x == t);
            inverse.record_result(back, cx);
        }
        rep.push(s.check());
        rep.push(image.check());
        rep.push(mult.check());
        rep.push(inverse.check());
    }
    Ok(rep)
}

/// The isotopes `C^{a,b}`, `C^{b⁻¹a⁻¹,a}`, `C^{b,b⁻¹a⁻¹}` joined by the
/// cyclic step and reduced to standard forms `C^{1,c}`: every step, every
/// reduction and every induced map between standard forms is an
/// isomorphism, and three steps return to `(a, b)`.
fn standard_form_chain(a: &Octonion, b: &Octonion) -> Result<bool> {
    let alg = a.algebra();
    let one = alg.one();
    let mut pair = (a.clone(), b.clone());
    for _ in 0..3 {
        let (x, y) = &pair;
        let (next, step) = trialitarian_step(x, y)?;
        let (c, s) = standard_form(x, y)?;
        let (c_next, s_next) = standard_form(&next.0, &next.1)?;
        let here = Isotope::new(x, y)?;
        let there = Isotope::new(&next.0, &next.1)?;
        let std_here = Isotope::new(&one, &c)?;
        let std_there = Isotope::new(&one, &c_next)?;
        let induced = s_next.mul(&step)?.mul(&s.inverse()?)?;
        if !(is_algebra_isomorphism(&step, &here, &there)
            && is_algebra_isomorphism(&s, &here, &std_here)
            && is_algebra_isomorphism(&induced, &std_here, &std_there))
        {
            return Ok(false);
        }
        pair = next;
    }
    Ok(pair == (a.clone(), b.clone()))
}

fn pair_action(cfg: &SuiteConfig) -> Result<Report> {
    let triple_algs = cfg.algebras(&TRIPLE_ALGEBRAS)?;
    let sampled_algs = cfg.algebras(&SAMPLED_ALGEBRAS)?;
    let mut all = triple_algs.clone();
    all.extend(sampled_algs.iter().filter(|a| !triple_algs.contains(a)).cloned());
    let mut rep = new_report(10, &all);
    // the same generators and seeds as the relation suite and the round trip
    for alg in &triple_algs {
        let pool = TriplePool::generate(alg, &mut cfg.rng(4, alg.label()), cfg.pairs)?;
        let mut tally = Tally::new(format!("{}: pi(rotate t) = (ȳx̄, x) on relation suite triples", alg.label()), "triples");
        for t in pool.all() {
            tally.record(t.sigma_pair_action(), || triple_cx(t));
        }
        rep.push(tally.check());
    }
    if cfg.includes_field(2) {
        let mut tally = Tally::new("zorn(F2): pi(rotate t) = (ȳx̄, x) on every orbit-generated triple", "triples");
        orbit_triples_q2(|_, _, t| tally.record(t.sigma_pair_action(), || triple_cx(&t)))?;
        rep.push(tally.check());
    }
    for alg in &sampled_algs {
        let triples = sampled_products(alg, &mut cfg.rng(5, alg.label()), cfg.pairs)?;
        let mut action = Tally::new(format!("{}: pi(rotate t) = (ȳx̄, x) on round-trip triples", alg.label()), "triples");
        let mut chain = Tally::new(format!("{}: cyclic isotopes reduce to linked standard forms", alg.label()), "pairs");
        for t in &triples {
            action.record(t.sigma_pair_action(), || triple_cx(t));
            let (a, b) = t.pi();
            chain.record_result(standard_form_chain(&a, &b), || counterexample(alg, &[("a", &a), ("b", &b)]));
        }
        let mut rng = cfg.rng(10, alg.label());
        let mut inv = Tally::new(format!("{}: cyclic isotopes of invertible pairs reduce to linked standard forms", alg.label()), "pairs");
        for _ in 0..cfg.pairs {
            let Some((a, b)) = invertible_pair(alg, &mut rng) else { break };
            inv.record_result(standard_form_chain(&a, &b), || counterexample(alg, &[("a", &a), ("b", &b)]));
        }
        rep.push(action.check());
        rep.push(chain.check());
        rep.push(inv.check());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            samples: 20,
            pairs: 4,
            trials: 40,
            rings: Some(vec![RingContext::parse("F3").unwrap()]),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_runs_pass() {
        let cfg = small();
        for id in [1, 2, 3, 4, 5, 6, 8, 9, 10] {
            let rep = run_criterion(id, &cfg).unwrap();
            assert!(rep.ok(), "criterion {id}: {:?}", rep.failures().collect::<Vec<_>>());
            assert!(!rep.checks.is_empty());
        }
    }

    #[test]
    fn same_seed_same_report() {
        let cfg = small();
        let a = serde_json::to_string(&run_criterion(4, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_criterion(4, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(0, &SuiteConfig::default()).is_err());
        assert!(run_criterion(11, &SuiteConfig::default()).is_err());
    }

    #[test]
    fn rng_depends_on_label_and_criterion() {
        let cfg = SuiteConfig::default();
        let draw = |id, label: &str| cfg.rng(id, label).gen::<u64>();
        assert_eq!(draw(1, "zorn(Q)"), draw(1, "zorn(Q)"));
        assert_ne!(draw(1, "zorn(Q)"), draw(2, "zorn(Q)"));
        assert_ne!(draw(1, "zorn(Q)"), draw(1, "zorn(F3)"));
    }
}
