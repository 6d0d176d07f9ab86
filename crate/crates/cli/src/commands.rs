//! One report builder per subcommand.

use std::fs;
use std::path::Path;

use octonion_core::clifford::{CliffordElement, SpinElement};
use octonion_core::isotope::{formula_maps, is_algebra_isomorphism, isomorphism_defect, kps_star, Isotope};
use octonion_core::orbits::{
    enumerate_sphere, orbit_of_pair, sphere_count_formula, triple_for_word, OrbitGenerators, DEFAULT_POINT_CEILING,
};
use octonion_core::octonion::DIM;
use octonion_core::suite::{run_criterion, SuiteConfig, CRITERIA};
use octonion_core::triality::{components_from_json, matrix_from_json, relation_defect, triple_from_iso, RelatedTriple};
use octonion_core::trivialize::{trivialize, IsoWitness};
use octonion_core::{Check, Error, Octonion, OctonionAlgebra, Report, Result, RingContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{AlgebraArgs, Command, IsotopeCheck, Output, SeedArgs};

pub fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::VerifyIdentities { alg, seed } => verify_identities(alg, seed).map(Output::from),
        Command::Isotope { alg, a, b, check } => isotope(alg, a, b, *check).map(Output::from),
        Command::Triple { alg, check, pi, from_iso, a, b } => {
            let alg = alg.resolve()?;
            if let Some(path) = check {
                triple_check(&alg, path)
            } else if let Some(path) = pi {
                triple_pi(&alg, path)
            } else if let Some(path) = from_iso {
                let (a, b) = (a.as_deref().unwrap_or_default(), b.as_deref().unwrap_or_default());
                triple_from_iso_file(&alg, path, a, b)
            } else {
                Err(Error::Parse("triple: one of --check, --pi, --from-iso is required".into()))
            }
            .map(Output::from)
        }
        Command::Spin { alg, from_vectors, check, roundtrip, seed } => {
            let alg = alg.resolve()?;
            if let Some(v) = from_vectors {
                spin_from_vectors(&alg, &v[0], &v[1])
            } else if let Some(path) = check {
                spin_check(&alg, path)
            } else if *roundtrip {
                spin_roundtrip(&alg, seed)
            } else {
                Err(Error::Parse("spin: one of --from-vectors, --check, --roundtrip is required".into()))
            }
            .map(Output::from)
        }
        Command::Trivialize { alg, a } => trivialize_cmd(alg, a).map(Output::from),
        Command::CountSphere { q } => count_sphere(q),
        Command::Orbit { q, target, emit_witness, max_pairs } => orbit(*q, target.as_deref(), *emit_witness, *max_pairs),
        Command::PaperSuite { ring, criterion, samples, pairs, trials, seed, orbit_q3 } => {
            let rings = if ring.is_empty() {
                None
            } else {
                Some(ring.iter().map(|r| RingContext::parse(r)).collect::<Result<Vec<_>>>()?)
            };
            let cfg = SuiteConfig {
                seed: *seed,
                samples: *samples,
                pairs: *pairs,
                trials: *trials,
                rings,
                orbit_q3: *orbit_q3,
            };
            paper_suite(&cfg, criterion).map(Output::from)
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads `path` and digs out `key`: accepts a CLI report (payload under
/// `data`), an object holding `key`, or the bare payload.
fn read_payload(path: &Path, key: &str) -> Result<Value> {
    let mut value = read_json(path)?;
    if let Some(data) = value.get_mut("data").map(Value::take) {
        value = data;
    }
    Ok(match value.get_mut(key).map(Value::take) {
        Some(inner) => inner,
        None => value,
    })
}

fn verify_identities(alg: &AlgebraArgs, seed: &SeedArgs) -> Result<Report> {
    let alg = alg.resolve()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
    let mut rep = Report::new(
        format!("verify-identities --samples {} --seed {}", seed.samples, seed.seed),
        alg.ring().to_string(),
        alg.label(),
    );
    rep.extend(alg.identity_suite(seed.samples, &mut rng));
    Ok(rep)
}

fn isotope(alg: &AlgebraArgs, a: &str, b: &str, check: IsotopeCheck) -> Result<Report> {
    let alg = alg.resolve()?;
    let (a, b) = (alg.parse_element(a)?, alg.parse_element(b)?);
    let iso = Isotope::new(&a, &b)?;
    let r = alg.ring();
    let mut rep = Report::new("isotope", r.to_string(), alg.label());
    let wants = |c: IsotopeCheck| check == IsotopeCheck::All || check == c;
    if wants(IsotopeCheck::Unit) {
        let e = iso.unit();
        let bad = (0..DIM).map(|i| alg.basis(i)).find(|x| iso.mul(e, x) != *x || iso.mul(x, e) != *x);
        rep.push(Check::from_outcome(
            "(ab)^-1 is a two-sided unit",
            format!("unit {e}"),
            bad.map(|x| json!({ "ring": r.to_string(), "algebra": alg.label(), "a": a.to_json(), "b": b.to_json(), "x": x.to_json() })),
        ));
    }
    if wants(IsotopeCheck::Norm) {
        let name = "norm read off x * x = t x - n e equals q(ab) q";
        rep.push(match iso.generic_norm_form() {
            Ok(g) if g == iso.norm_form() => Check::pass(name, format!("lambda = {}", r.format(iso.lambda()))),
            Ok(g) => Check::fail(name, "forms differ", Some(json!({ "generic": g.to_json(), "expected": iso.norm_form().to_json() }))),
            Err(e) => Check::fail(name, e.to_string(), None),
        });
    }
    if wants(IsotopeCheck::Formulae) {
        for m in formula_maps(&a, &b)? {
            rep.push(if m.holds() {
                Check::pass(&m.name, "isomorphism")
            } else {
                Check::fail(&m.name, "not an isomorphism", Some(json!({ "map": m.map.to_json() })))
            });
        }
        let (kps, target, f) = kps_star(&a)?;
        let name = "R_a: (C, star_a) -> C^{a^-1,1}";
        rep.push(if is_algebra_isomorphism(&f, &kps, &target) {
            Check::pass(name, "isomorphism")
        } else {
            Check::fail(name, "not an isomorphism", None)
        });
    }
    rep.data = Some(json!({
        "a": a.to_json(),
        "b": b.to_json(),
        "unit": iso.unit().to_json(),
        "lambda": r.format(iso.lambda()),
    }));
    Ok(rep)
}

fn triple_check(alg: &OctonionAlgebra, path: &Path) -> Result<Report> {
    let [t1, t2, t3] = components_from_json(alg, &read_payload(path, "triple")?)?;
    let mut rep = Report::new(format!("triple --check {}", path.display()), alg.ring().to_string(), alg.label());
    match relation_defect(alg, [&t1, &t2, &t3]) {
        None => rep.push(Check::pass("related", "isometries satisfying the relation on all basis pairs")),
        Some(d) => rep.push(Check::fail("related", format!("{d:?}"), None)),
    }
    let delta = octonion_core::triality::delta_invariant(alg, &t1, &t2, &t3);
    rep.push(if delta {
        Check::pass("Δ-invariant", "512 basis triples")
    } else {
        Check::fail("Δ-invariant", "trilinear form not preserved", None)
    });
    if let Ok(t) = RelatedTriple::new(alg, t1, t2, t3) {
        rep.push(if t.composition_correspondence() {
            Check::pass("composition correspondence", "(t1, κt2κ, κt3κ) is an autotopy")
        } else {
            Check::fail("composition correspondence", "not an autotopy", None)
        });
        let (x, y) = t.pi();
        rep.data = Some(json!({ "pi": [x.to_json(), y.to_json()] }));
    }
    Ok(rep)
}

fn triple_pi(alg: &OctonionAlgebra, path: &Path) -> Result<Report> {
    let t = RelatedTriple::from_json(alg, &read_payload(path, "triple")?)?;
    let (x, y) = t.pi();
    let mut rep = Report::new(format!("triple --pi {}", path.display()), alg.ring().to_string(), alg.label());
    rep.push(Check::pass("related", "checked on parse"));
    rep.push(if x.norm() == alg.ring().one() && y.norm() == alg.ring().one() {
        Check::pass("pi lands on the sphere pair", "q(t3(1)) = q(t2(1)) = 1")
    } else {
        Check::fail("pi lands on the sphere pair", "norms differ from 1", None)
    });
    rep.data = Some(json!({ "pi": [x.to_json(), y.to_json()] }));
    Ok(rep)
}

fn triple_from_iso_file(alg: &OctonionAlgebra, path: &Path, a: &str, b: &str) -> Result<Report> {
    let map = matrix_from_json(alg.ring(), &read_payload(path, "map")?, DIM)?;
    let (a, b) = (alg.parse_element(a)?, alg.parse_element(b)?);
    let mut rep = Report::new(format!("triple --from-iso {}", path.display()), alg.ring().to_string(), alg.label());
    let iso = Isotope::new(&a, &b)?;
    match isomorphism_defect(&map, alg, &iso)? {
        None => rep.push(Check::pass("map is an isomorphism C -> C^{a,b}", "all basis products")),
        Some((i, j)) => {
            rep.push(Check::fail("map is an isomorphism C -> C^{a,b}", format!("fails on (e_{i}, e_{j})"), None));
            return Ok(rep);
        }
    }
    let t = triple_from_iso(&map, &a, &b)?;
    rep.push(Check::pass("triple is related", "checked on construction"));
    rep.push(if t.pi() == (a.clone(), b.clone()) {
        Check::pass("pi(t) = (a, b)", "recovered")
    } else {
        Check::fail("pi(t) = (a, b)", "pi differs", Some(json!({ "triple": t.to_json() })))
    });
    rep.data = Some(json!({ "triple": t.to_json() }));
    Ok(rep)
}

fn spin_report(command: String, alg: &OctonionAlgebra, u: &CliffordElement) -> Result<Report> {
    let mut rep = Report::new(command, alg.ring().to_string(), alg.label());
    match u.spin_defect() {
        None => {
            rep.push(Check::pass("spin element", "even, u σ(u) = 1, stabilises α(C)"));
            let t = SpinElement::new(u.clone())?.to_triple()?;
            rep.push(Check::pass("image triple is related", "checked on construction"));
            rep.data = Some(json!({ "u": u.matrix().to_json(), "triple": t.to_json() }));
        }
        Some(why) => {
            rep.push(Check::fail("spin element", why, Some(json!({ "u": u.matrix().to_json() }))));
        }
    }
    Ok(rep)
}

fn spin_from_vectors(alg: &OctonionAlgebra, x: &str, y: &str) -> Result<Report> {
    let (x, y) = (alg.parse_element(x)?, alg.parse_element(y)?);
    let u = SpinElement::from_vectors(&x, &y)?;
    spin_report("spin --from-vectors".into(), alg, u.element())
}

fn spin_check(alg: &OctonionAlgebra, path: &Path) -> Result<Report> {
    let m = matrix_from_json(alg.ring(), &read_payload(path, "u")?, 2 * DIM)?;
    spin_report(format!("spin --check {}", path.display()), alg, &CliffordElement::new(alg, m)?)
}

fn random_spin(alg: &OctonionAlgebra, rng: &mut ChaCha8Rng) -> Result<SpinElement> {
    let r = alg.ring();
    let x = alg
        .random_invertible(rng)
        .ok_or_else(|| Error::NotFound(format!("invertible sampler for {alg}")))?;
    let inv = r.inv(&x.norm()).ok_or_else(|| Error::NotInvertible(x.to_string()))?;
    let y = alg
        .random_with_norm(&inv, rng)
        .ok_or_else(|| Error::NotFound(format!("norm sampler for {alg}")))?;
    SpinElement::from_vectors(&x, &y)
}

fn spin_roundtrip(alg: &OctonionAlgebra, seed: &SeedArgs) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
    let r = alg.ring();
    let mut rep = Report::new(
        format!("spin --roundtrip --samples {} --seed {}", seed.samples, seed.seed),
        r.to_string(),
        alg.label(),
    );
    let mut spin_bad = None;
    let mut triple_bad = None;
    let mut mult_bad = None;
    for _ in 0..seed.samples {
        let u = random_spin(alg, &mut rng)?.mul(&random_spin(alg, &mut rng)?)?;
        let t = u.to_triple()?;
        if spin_bad.is_none() && SpinElement::from_triple(&t)? != u {
            spin_bad = Some(json!({ "ring": r.to_string(), "u": u.element().matrix().to_json() }));
        }
        if triple_bad.is_none() && SpinElement::from_triple(&t)?.to_triple()? != t {
            triple_bad = Some(json!({ "ring": r.to_string(), "triple": t.to_json() }));
        }
        let v = random_spin(alg, &mut rng)?;
        if mult_bad.is_none() && u.mul(&v)?.to_triple()? != t.compose(&v.to_triple()?)? {
            mult_bad = Some(json!({
                "ring": r.to_string(),
                "u": u.element().matrix().to_json(),
                "v": v.element().matrix().to_json(),
            }));
        }
    }
    let n = seed.samples;
    rep.push(Check::from_outcome("spin -> triple -> spin", format!("{n} spin elements"), spin_bad));
    rep.push(Check::from_outcome("triple -> spin -> triple", format!("{n} triples"), triple_bad));
    rep.push(Check::from_outcome("spin -> triple is multiplicative", format!("{n} pairs"), mult_bad));
    Ok(rep)
}

fn trivialize_cmd(alg: &AlgebraArgs, a: &str) -> Result<Report> {
    let alg = alg.resolve()?;
    let a = alg.parse_element(a)?;
    let mut rep = Report::new("trivialize", alg.ring().to_string(), alg.label());
    match trivialize(&a)? {
        Some(w) => {
            rep.push(witness_check(&w));
            rep.data = Some(w.to_json());
        }
        None => rep.push(Check::unknown(
            "isomorphism C -> C^{a,conj(a)}",
            "no sufficient condition applied; over a non-field this does not rule one out",
        )),
    }
    Ok(rep)
}

fn witness_check(w: &IsoWitness) -> Check {
    let name = "witness passes the isomorphism decision procedure";
    if is_algebra_isomorphism(&w.map, &w.source, &w.target) {
        Check::pass(name, format!("{} steps", w.trace.len()))
    } else {
        Check::fail(name, "not an isomorphism", Some(w.to_json()))
    }
}

const COUNT_HEADER: [&str; 5] = ["q", "sphere_count", "orbit_count", "expected", "match"];

fn count_sphere(qs: &[u64]) -> Result<Output> {
    let mut rep = Report::new("count-sphere", qs.iter().map(|q| format!("F{q}")).collect::<Vec<_>>().join(", "), "zorn");
    let mut rows = Vec::new();
    let mut data = Vec::new();
    for &q in qs {
        let table = octonion_core::orbits::enumerate_sphere_limited(q, DEFAULT_POINT_CEILING)?;
        let (n, expected) = (table.len() as u64, sphere_count_formula(q));
        let name = format!("sphere count at q = {q}");
        let detail = format!("{n} points, (q^4 - 1) q^3 = {expected}");
        rep.push(if n == expected { Check::pass(name, detail) } else { Check::fail(name, detail, Some(json!({ "q": q }))) });
        rows.push(vec![q.to_string(), n.to_string(), String::new(), expected.to_string(), (n == expected).to_string()]);
        data.push(json!({ "q": q, "sphere_count": n, "expected": expected, "match": n == expected }));
    }
    rep.data = Some(json!(data));
    Ok(Output { report: rep, table: Some((COUNT_HEADER.to_vec(), rows)) })
}

fn parse_target(alg: &OctonionAlgebra, target: &str) -> Result<(Octonion, Octonion)> {
    let (a, b) = target
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("target {target}: expected \"a;b\"")))?;
    Ok((alg.parse_element(a)?, alg.parse_element(b)?))
}

fn orbit(q: u64, target: Option<&str>, emit_witness: bool, max_pairs: u64) -> Result<Output> {
    let table = if q <= 3 { enumerate_sphere(q)? } else { octonion_core::orbits::enumerate_sphere_limited(q, DEFAULT_POINT_CEILING)? };
    let alg = table.algebra().clone();
    let gens = OrbitGenerators::basic_with_rotations(&table)?;
    let one = table.one_index();
    let orbit = orbit_of_pair(&table, &gens, (one, one), None, max_pairs)?;
    let n = table.len() as u64;
    let expected = n * n;
    let size = orbit.size() as u64;
    let mut rep = Report::new(format!("orbit --q {q}"), alg.ring().to_string(), alg.label());
    let name = format!("orbit of (1, 1) at q = {q}");
    let detail = format!("{size} pairs, expected {expected}, depth {}", orbit.depth());
    rep.push(if size == expected { Check::pass(name, detail) } else { Check::fail(name, detail, Some(json!({ "q": q }))) });
    let mut data = json!({
        "q": q,
        "sphere_count": n,
        "orbit_count": size,
        "expected": expected,
        "match": size == expected,
        "generators": gens.len(),
    });
    if let Some(target) = target {
        let (a, b) = parse_target(&alg, target)?;
        let (ia, ib) = match (table.index_of(&a), table.index_of(&b)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::NotUnitNorm(format!("target ({a}; {b})"))),
        };
        let word = orbit.word_to(ia, ib);
        let name = "target reached from (1, 1)";
        match &word {
            Some(w) => {
                let t = triple_for_word(&table, &gens, w);
                rep.push(if t.pi() == (a.clone(), b.clone()) {
                    Check::pass(name, format!("word of length {}", w.len()))
                } else {
                    Check::fail(name, "word product misses the target", Some(json!({ "triple": t.to_json() })))
                });
                let tags: Vec<Value> = w.iter().map(|&g| json!(gens.tag(g))).collect();
                data["word"] = json!(tags);
                if emit_witness {
                    let witness = IsoWitness::new(t.t1().clone(), Isotope::new(&a, &b)?, tags.iter().map(|v| v.to_string()).collect())?;
                    rep.push(witness_check(&witness));
                    data["witness"] = witness.to_json();
                }
            }
            None => rep.push(Check::fail(name, "not in the orbit", Some(json!({ "a": a.to_json(), "b": b.to_json() })))),
        }
    }
    rep.data = Some(data);
    let row = vec![q.to_string(), n.to_string(), size.to_string(), expected.to_string(), (size == expected).to_string()];
    Ok(Output { report: rep, table: Some((COUNT_HEADER.to_vec(), vec![row])) })
}

fn paper_suite(cfg: &SuiteConfig, only: &[usize]) -> Result<Report> {
    let ids: Vec<usize> = if only.is_empty() { (1..=CRITERIA.len()).collect() } else { only.to_vec() };
    let rings = match &cfg.rings {
        Some(rs) => rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "),
        None => "defaults".into(),
    };
    let mut rep = Report::new(format!("paper-suite --seed {}", cfg.seed), rings, "per criterion");
    let mut reports = Vec::new();
    for id in ids {
        let r = run_criterion(id, cfg)?;
        let failed = r.failures().count();
        let name = r.command.clone();
        let detail = format!("{} checks, {failed} failed", r.checks.len());
        rep.push(if r.ok() {
            Check::pass(name, detail)
        } else {
            let first = r.failures().next().map(|c| json!({ "check": c.name, "counterexample": c.counterexample }));
            Check::fail(name, detail, first)
        });
        reports.push(r);
    }
    rep.data = Some(serde_json::to_value(&reports).expect("reports serialize"));
    Ok(rep)
}
