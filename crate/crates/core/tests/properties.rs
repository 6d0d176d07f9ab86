use octonion_core::clifford::{CliffordElement, SpinElement};
use octonion_core::isotope::{formula_maps, is_algebra_isomorphism, Isotope};
use octonion_core::octonion::DIM;
use octonion_core::orbits::{enumerate_sphere, OrbitGenerators, SpherePointTable};
use octonion_core::triality::{delta_invariant, is_related, RelatedTriple};
use octonion_core::trivialize::{lr_inverse, tau_minus, tau_plus};
use octonion_core::{Matrix, Octonion, OctonionAlgebra, RingContext};
use proptest::prelude::*;
use proptest::sample::select;
use rand::{Rng, SeedableRng};
use std::sync::LazyLock;
use rand_chacha::ChaCha8Rng;

const ALGEBRAS: [&str; 8] = [
    "zorn(Z)",
    "zorn(Q)",
    "zorn(F2)",
    "zorn(F3)",
    "zorn(F5)",
    "zorn(Z/8)",
    "zorn(F3[t])",
    "cd(Q,-1,-1,-1)",
];

fn coordinate(spec: &str, (n, d): (i64, i64)) -> String {
    if spec.contains("(Q") {
        format!("{n}/{d}")
    } else {
        n.to_string()
    }
}

/// An algebra spec with `count` elements given by small coordinates.
fn elements(count: usize) -> impl Strategy<Value = (OctonionAlgebra, Vec<Octonion>)> {
    (select(&ALGEBRAS[..]), prop::collection::vec((-4i64..=4, 1i64..=3), DIM * count)).prop_map(move |(spec, raw)| {
        let alg = OctonionAlgebra::parse(spec).unwrap();
        let xs = raw
            .chunks(DIM)
            .map(|c| {
                let coords: Vec<String> = c.iter().map(|&p| coordinate(spec, p)).collect();
                alg.parse_element(&coords.join(",")).unwrap()
            })
            .collect();
        (alg, xs)
    })
}

/// A seeded generator over one of the algebras where sphere sampling applies.
fn sampled() -> impl Strategy<Value = (OctonionAlgebra, ChaCha8Rng)> {
    (select(&["zorn(F2)", "zorn(F3)", "zorn(F5)", "zorn(Q)"][..]), any::<u64>())
        .prop_map(|(spec, seed)| (OctonionAlgebra::parse(spec).unwrap(), ChaCha8Rng::seed_from_u64(seed)))
}

static Q3: LazyLock<(SpherePointTable, OrbitGenerators)> = LazyLock::new(|| {
    let table = enumerate_sphere(3).unwrap();
    let gens = OrbitGenerators::basic_with_rotations(&table).unwrap();
    (table, gens)
});

fn random_triple(alg: &OctonionAlgebra, rng: &mut ChaCha8Rng, len: usize) -> RelatedTriple {
    let mut t = RelatedTriple::identity(alg);
    for k in 0..len {
        let mut g = RelatedTriple::basic(&alg.random_sphere(rng).unwrap()).unwrap();
        for _ in 0..k % 3 {
            g = g.rotate();
        }
        t = g.compose(&t).unwrap();
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_is_multiplicative((_, xs) in elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let r = x.ring();
        prop_assert_eq!(x.mul(y).norm(), r.mul(&x.norm(), &y.norm()));
    }

    #[test]
    fn alternative_and_moufang((_, xs) in elements(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(x.mul(&x.mul(y)), x.mul(x).mul(y));
        prop_assert_eq!(y.mul(x).mul(x), y.mul(&x.mul(x)));
        prop_assert_eq!(z.mul(&x.mul(&z.mul(y))), z.mul(x).mul(z).mul(y));
        prop_assert_eq!(x.mul(&z.mul(&y.mul(z))), x.mul(z).mul(y).mul(z));
        prop_assert_eq!(z.mul(x).mul(&y.mul(z)), z.mul(&x.mul(y)).mul(z));
    }

    #[test]
    fn conjugation_is_an_isometric_anti_automorphism((_, xs) in elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(x.mul(y).conj(), y.conj().mul(&x.conj()));
        prop_assert_eq!(x.conj().norm(), x.norm());
        prop_assert_eq!(x.conj().conj(), x.clone());
    }

    #[test]
    fn trace_and_norm_identities((alg, xs) in elements(1)) {
        let x = &xs[0];
        prop_assert_eq!(x.add(&x.conj()), alg.from_scalar(&x.trace()));
        prop_assert_eq!(x.mul(&x.conj()), alg.from_scalar(&x.norm()));
        prop_assert_eq!(x.conj().mul(x), alg.from_scalar(&x.norm()));
    }

    #[test]
    fn polar_identity((_, xs) in elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let r = x.ring();
        prop_assert_eq!(x.add(y).norm(), r.add(&r.add(&x.norm(), &y.norm()), &x.polar(y)));
    }

    #[test]
    fn inverse_is_two_sided((_, xs) in elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        if let Ok(xi) = x.inverse() {
            let one = x.algebra().one();
            prop_assert_eq!(x.mul(&xi), one.clone());
            prop_assert_eq!(xi.mul(x), one);
            // inverse property of alternative algebras
            prop_assert_eq!(xi.mul(&x.mul(y)), y.clone());
        }
    }

    #[test]
    fn rational_matrix_inverse(entries in prop::collection::vec((-5i64..=5, 1i64..=4), 25)) {
        let q = RingContext::rationals();
        let rows: Vec<Vec<_>> = entries
            .chunks(5)
            .map(|row| row.iter().map(|(n, d)| q.parse_scalar(&format!("{n}/{d}")).unwrap()).collect())
            .collect();
        let m = Matrix::from_rows(&q, rows).unwrap();
        let det = m.det().unwrap();
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(!q.is_zero(&det));
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            }
            Err(_) => prop_assert!(q.is_zero(&det)),
        }
    }

    #[test]
    fn clifford_relation((_, xs) in elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let (ax, ay) = (CliffordElement::alpha(x), CliffordElement::alpha(y));
        let anti = ax.mul(&ay).unwrap().add(&ay.mul(&ax).unwrap()).unwrap();
        prop_assert_eq!(anti, CliffordElement::scalar(x.algebra(), &x.polar(y)));
        prop_assert_eq!(ax.mul(&ay).unwrap().sigma(), ay.mul(&ax).unwrap());
    }

    #[test]
    fn conjugation_identity_on_basis((alg, xs) in elements(1)) {
        let c = &xs[0];
        prop_assume!(c.is_invertible());
        let lr = lr_inverse(c).unwrap();
        for i in 0..DIM {
            for j in 0..DIM {
                let (x, y) = (alg.basis(i).conj(), alg.basis(j).conj());
                let lhs = lr.mul_vec(x.mul(&y).coords()).unwrap();
                let rhs = tau_plus(c, &x).mul(&tau_minus(c, &y).unwrap());
                prop_assert_eq!(lhs, rhs.into_coords());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unit_norm_isotope_keeps_the_norm((alg, mut rng) in sampled()) {
        let a = alg.random_sphere(&mut rng).unwrap();
        let b = alg.random_sphere(&mut rng).unwrap();
        let iso = Isotope::new(&a, &b).unwrap();
        prop_assert_eq!(iso.norm_form(), alg.norm().clone());
        prop_assert_eq!(iso.generic_norm_form().unwrap(), alg.norm().clone());
    }

    #[test]
    fn invertible_isotope_scales_the_norm((alg, mut rng) in sampled()) {
        let a = alg.random_invertible(&mut rng).unwrap();
        let b = alg.random_invertible(&mut rng).unwrap();
        let iso = Isotope::new(&a, &b).unwrap();
        let expected = alg.norm().scale(&a.mul(&b).norm());
        prop_assert_eq!(iso.generic_norm_form().unwrap(), expected);
    }

    #[test]
    fn formula_maps_are_isomorphisms((alg, mut rng) in sampled()) {
        let a = alg.random_sphere(&mut rng).unwrap();
        let b = alg.random_sphere(&mut rng).unwrap();
        for m in formula_maps(&a, &b).unwrap() {
            prop_assert!(is_algebra_isomorphism(&m.map, &m.source, &m.target), "{}", m.name);
        }
    }

    #[test]
    fn related_triples_form_a_group((alg, mut rng) in sampled()) {
        let t = random_triple(&alg, &mut rng, 3);
        let u = random_triple(&alg, &mut rng, 2);
        prop_assert!(t.compose(&u).unwrap().check());
        prop_assert!(t.inverse().check());
        prop_assert!(t.compose(&t.inverse()).unwrap().is_identity());
        for m in t.components() {
            for i in 0..DIM {
                let e = alg.basis(i);
                prop_assert_eq!(e.with_coords(m.mul_vec(e.coords()).unwrap()).norm(), e.norm());
            }
        }
    }

    #[test]
    fn delta_invariance_matches_relatedness((alg, mut rng) in sampled()) {
        let t = random_triple(&alg, &mut rng, 3);
        let u = random_triple(&alg, &mut rng, 2);
        for (t1, t2, t3) in [(t.t1(), t.t2(), t.t3()), (u.t1(), t.t2(), t.t3()), (t.t1(), u.t2(), t.t3())] {
            prop_assert_eq!(delta_invariant(&alg, t1, t2, t3), is_related(&alg, t1, t2, t3));
        }
    }

    #[test]
    fn spin_to_triple_is_a_homomorphism((alg, mut rng) in sampled()) {
        let mut spin = || {
            let x = alg.random_sphere(&mut rng).unwrap();
            let y = alg.random_sphere(&mut rng).unwrap();
            SpinElement::from_vectors(&x, &y).unwrap()
        };
        let (u, v) = (spin(), spin());
        let product = u.mul(&v).unwrap().to_triple().unwrap();
        prop_assert_eq!(product, u.to_triple().unwrap().compose(&v.to_triple().unwrap()).unwrap());
        prop_assert_eq!(SpinElement::from_triple(&u.to_triple().unwrap()).unwrap(), u);
    }

    #[test]
    fn generators_preserve_the_sphere(seed in any::<u64>()) {
        let (table, gens) = &*Q3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = rng.gen_range(0..gens.len() as u32);
        let u = table.point(rng.gen_range(0..table.len() as u32));
        let v = table.point(rng.gen_range(0..table.len() as u32));
        let (x, y) = gens.triple(table, g).act(&u, &v);
        let r = table.algebra().ring();
        prop_assert!(r.is_one(&x.norm()) && r.is_one(&y.norm()));
    }
}
