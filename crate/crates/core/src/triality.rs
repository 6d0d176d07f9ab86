//! Related triples `(t1, t2, t3)` of isometries with
//! `t1(x̄ ȳ) = conj(t2 x) conj(t3 y)`, their symmetries, and their link to
//! isomorphisms `C -> C^{a,b}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::isotope::{is_algebra_isomorphism, Isotope};
use crate::linalg::Matrix;
use crate::octonion::{Octonion, OctonionAlgebra, DIM};
use crate::quadform::is_isometry;
use crate::ring::{RingContext, Scalar};

/// Why a candidate triple is not related.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationDefect {
    NotInvertible(usize),
    NotIsometry(usize),
    /// The relation fails on the basis pair `(e_i, e_j)`.
    Relation(usize, usize),
}

fn image(alg: &OctonionAlgebra, m: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(alg.ring(), m.ring());
    m.mul_vec(x).expect("8x8 times 8")
}

fn basis_coords(alg: &OctonionAlgebra, i: usize) -> Vec<Scalar> {
    alg.basis(i).into_coords()
}

/// First obstruction to `(t1, t2, t3)` being related in `alg`, checked as an
/// isotopy of the para-octonion product `x • y = x̄ ȳ` on basis pairs.
pub fn relation_defect(alg: &OctonionAlgebra, t: [&Matrix; 3]) -> Option<RelationDefect> {
    for (k, m) in t.iter().enumerate() {
        match is_isometry(alg.norm(), alg.norm(), m) {
            Err(_) => return Some(RelationDefect::NotInvertible(k)),
            Ok(false) => return Some(RelationDefect::NotIsometry(k)),
            Ok(true) => {}
        }
    }
    let para = alg.para_tensor();
    for i in 0..DIM {
        // column j is t2(e_i) • t3(e_j)
        let rhs = para.left_matrix(&t[1].column(i)).mul(t[2]).expect("8x8");
        for j in 0..DIM {
            let lhs = image(alg, t[0], &para.basis_product(i, j));
            if lhs != rhs.column(j) {
                return Some(RelationDefect::Relation(i, j));
            }
        }
    }
    None
}

pub fn is_related(alg: &OctonionAlgebra, t1: &Matrix, t2: &Matrix, t3: &Matrix) -> bool {
    relation_defect(alg, [t1, t2, t3]).is_none()
}

/// `Δ(w, x, y) = b_q(w, x̄ ȳ)`.
pub fn delta(alg: &OctonionAlgebra, w: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Scalar {
    let prod = alg.mul_coords(&alg.conj_coords(x), &alg.conj_coords(y));
    alg.polar_coords(w, &prod)
}

/// `Δ(t1 w, t2 x, t3 y) = Δ(w, x, y)` on all 512 basis triples.
pub fn delta_invariant(alg: &OctonionAlgebra, t1: &Matrix, t2: &Matrix, t3: &Matrix) -> bool {
    let r = alg.ring();
    let g = alg.norm().polar_matrix();
    let e: Vec<Vec<Scalar>> = (0..DIM).map(|i| basis_coords(alg, i)).collect();
    let img1: Vec<Vec<Scalar>> = (0..DIM).map(|i| t1.column(i)).collect();
    let bar2: Vec<Vec<Scalar>> = (0..DIM).map(|i| alg.conj_coords(&t2.column(i))).collect();
    let bar3: Vec<Vec<Scalar>> = (0..DIM).map(|i| alg.conj_coords(&t3.column(i))).collect();
    for x in 0..DIM {
        for y in 0..DIM {
            // b(w, z) = w^T G z, so both sides are a dot product per w
            let reference = image(alg, &g, &alg.mul_coords(&alg.conj_coords(&e[x]), &alg.conj_coords(&e[y])));
            let moved = image(alg, &g, &alg.mul_coords(&bar2[x], &bar3[y]));
            if (0..DIM).any(|w| r.dot(&img1[w], &moved) != reference[w]) {
                return false;
            }
        }
    }
    true
}

/// `f1(xy) = f2(x) f3(y)` on basis pairs.
pub fn is_autotopy(alg: &OctonionAlgebra, f1: &Matrix, f2: &Matrix, f3: &Matrix) -> bool {
    let img2: Vec<Vec<Scalar>> = (0..DIM).map(|i| f2.column(i)).collect();
    let img3: Vec<Vec<Scalar>> = (0..DIM).map(|j| f3.column(j)).collect();
    let tensor = alg.tensor();
    (0..DIM).all(|i| (0..DIM).all(|j| image(alg, f1, &tensor.basis_product(i, j)) == alg.mul_coords(&img2[i], &img3[j])))
}

/// `t(xy) = t(x) t(y)` on basis pairs.
pub fn is_multiplicative(alg: &OctonionAlgebra, t: &Matrix) -> bool {
    is_autotopy(alg, t, t, t)
}

/// `(t, t, t)` is related; agrees with [`is_multiplicative`] on isometries.
pub fn is_automorphism_triple(alg: &OctonionAlgebra, t: &Matrix) -> bool {
    is_related(alg, t, t, t)
}

/// A related triple over a fixed octonion algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct RelatedTriple {
    alg: OctonionAlgebra,
    t: [Matrix; 3],
}

impl RelatedTriple {
    /// Checks relatedness; `Err(NotRelated)` with the first defect otherwise.
    pub fn new(alg: &OctonionAlgebra, t1: Matrix, t2: Matrix, t3: Matrix) -> Result<Self> {
        if let Some(d) = relation_defect(alg, [&t1, &t2, &t3]) {
            return Err(Error::NotRelated(format!("{d:?}")));
        }
        Ok(Self::trusted(alg, [t1, t2, t3]))
    }

    fn trusted(alg: &OctonionAlgebra, t: [Matrix; 3]) -> Self {
        RelatedTriple { alg: alg.clone(), t }
    }

    pub fn identity(alg: &OctonionAlgebra) -> Self {
        let i = Matrix::identity(alg.ring(), DIM);
        Self::trusted(alg, [i.clone(), i.clone(), i])
    }

    /// `(I, ηI, ηI)` for `η^2 = 1`.
    pub fn kernel(alg: &OctonionAlgebra, eta: &Scalar) -> Result<Self> {
        let r = alg.ring();
        if !r.is_one(&r.mul(eta, eta)) {
            return Err(Error::PreconditionFailed(format!("{}^2 != 1", r.format(eta))));
        }
        let e = Matrix::scalar(r, DIM, eta);
        Ok(Self::trusted(alg, [Matrix::identity(r, DIM), e.clone(), e]))
    }

    /// `(B_c, R_c̄, L_c̄)` for `q(c) = 1`.
    pub fn basic(c: &Octonion) -> Result<Self> {
        let alg = c.algebra();
        if !alg.ring().is_one(&c.norm()) {
            return Err(Error::NotUnitNorm(c.to_string()));
        }
        let cb = c.conj();
        let t = Self::trusted(alg, [alg.bimul(c), alg.right_mul(&cb), alg.left_mul(&cb)]);
        debug_assert!(t.check());
        Ok(t)
    }

    pub fn algebra(&self) -> &OctonionAlgebra {
        &self.alg
    }

    pub fn t1(&self) -> &Matrix {
        &self.t[0]
    }

    pub fn t2(&self) -> &Matrix {
        &self.t[1]
    }

    pub fn t3(&self) -> &Matrix {
        &self.t[2]
    }

    pub fn components(&self) -> [&Matrix; 3] {
        [&self.t[0], &self.t[1], &self.t[2]]
    }

    /// Re-runs the full relatedness check.
    pub fn check(&self) -> bool {
        relation_defect(&self.alg, self.components()).is_none()
    }

    pub fn delta_invariant(&self) -> bool {
        delta_invariant(&self.alg, &self.t[0], &self.t[1], &self.t[2])
    }

    /// `(t2, t3, t1)`.
    pub fn rotate(&self) -> Self {
        let [a, b, c] = self.t.clone();
        Self::trusted(&self.alg, [b, c, a])
    }

    /// Component-wise `self ∘ other`.
    pub fn compose(&self, other: &RelatedTriple) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        let t = [0, 1, 2].map(|k| self.t[k].mul(&other.t[k]).expect("8x8"));
        Ok(Self::trusted(&self.alg, t))
    }

    pub fn inverse(&self) -> Self {
        let t = [0, 1, 2].map(|k| self.t[k].inverse().expect("isometries of a regular form are invertible"));
        Self::trusted(&self.alg, t)
    }

    pub fn is_identity(&self) -> bool {
        self.t.iter().all(Matrix::is_identity)
    }

    /// `(t3(1), t2(1))`.
    pub fn pi(&self) -> (Octonion, Octonion) {
        let one = self.alg.one();
        let apply = |m: &Matrix| one.with_coords(image(&self.alg, m, one.coords()));
        (apply(&self.t[2]), apply(&self.t[1]))
    }

    /// `t.(u, v) = (t3 u, t2 v)`.
    pub fn act(&self, u: &Octonion, v: &Octonion) -> (Octonion, Octonion) {
        (
            u.with_coords(image(&self.alg, &self.t[2], u.coords())),
            v.with_coords(image(&self.alg, &self.t[1], v.coords())),
        )
    }

    /// `pi(rotate t) = (ȳ x̄, x)` where `pi(t) = (x, y)`.
    pub fn sigma_pair_action(&self) -> bool {
        let (x, y) = self.pi();
        self.rotate().pi() == (y.conj().mul(&x.conj()), x)
    }

    /// `(t1, κ t2 κ, κ t3 κ)` is an autotopy of the octonion product.
    pub fn composition_correspondence(&self) -> bool {
        let k = self.alg.conj_matrix();
        let conj = |m: &Matrix| k.mul(m).and_then(|km| km.mul(k)).expect("8x8");
        is_autotopy(&self.alg, &self.t[0], &conj(&self.t[1]), &conj(&self.t[2]))
    }

    /// `η` with `other = (t1, η t2, η t3)`, if any.
    pub fn kernel_ratio(&self, other: &RelatedTriple) -> Option<Scalar> {
        if self.alg != other.alg || self.t[0] != other.t[0] {
            return None;
        }
        let r = self.alg.ring();
        [r.one(), r.neg(&r.one())]
            .into_iter()
            .find(|eta| other.t[1] == self.t[1].scale(eta) && other.t[2] == self.t[2].scale(eta))
    }

    pub fn to_json(&self) -> Value {
        json!({ "t1": self.t[0].to_json(), "t2": self.t[1].to_json(), "t3": self.t[2].to_json() })
    }

    /// Parses `{"t1": [[..]], "t2": [[..]], "t3": [[..]]}` and checks relatedness.
    pub fn from_json(alg: &OctonionAlgebra, value: &Value) -> Result<Self> {
        let [t1, t2, t3] = components_from_json(alg, value)?;
        Self::new(alg, t1, t2, t3)
    }
}

/// An `n x n` matrix from rows of scalar strings (numbers are accepted too).
pub fn matrix_from_json(r: &RingContext, value: &Value, n: usize) -> Result<Matrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::Parse("matrix JSON: expected an array of rows".into()))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix JSON: rows must be arrays".into()))?
                .iter()
                .map(|c| match c {
                    Value::String(s) => r.parse_scalar(s),
                    Value::Number(n) => r.parse_scalar(&n.to_string()),
                    _ => Err(Error::Parse(format!("matrix JSON: bad entry {c}"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = Matrix::from_rows(r, rows)?;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.rows() });
    }
    Ok(m)
}

/// The three components of a triple in JSON form, without checking relatedness.
pub fn components_from_json(alg: &OctonionAlgebra, value: &Value) -> Result<[Matrix; 3]> {
    let get = |key: &str| -> Result<Matrix> {
        let v = value
            .get(key)
            .ok_or_else(|| Error::Parse(format!("triple JSON: missing {key}")))?;
        matrix_from_json(alg.ring(), v, DIM)
    };
    Ok([get("t1")?, get("t2")?, get("t3")?])
}

/// `(f, κ R_a f κ, κ L_b f κ)` for an isomorphism `f: C -> C^{a,b}`.
pub fn triple_from_iso(f: &Matrix, a: &Octonion, b: &Octonion) -> Result<RelatedTriple> {
    let alg = a.algebra();
    let iso = Isotope::new(a, b)?;
    if !is_algebra_isomorphism(f, alg, &iso) {
        return Err(Error::NotIsomorphism(format!("{} -> {}", alg, crate::isotope::AlgebraLike::label(&iso))));
    }
    let k = alg.conj_matrix();
    let wrap = |m: Matrix| k.mul(&m).and_then(|km| km.mul(k)).expect("8x8");
    let t2 = wrap(alg.right_mul(a).mul(f)?);
    let t3 = wrap(alg.left_mul(b).mul(f)?);
    RelatedTriple::new(alg, f.clone(), t2, t3)
}

/// `(a, b) = pi(t)` with `t1` as a witness `C -> C^{a,b}`.
pub fn iso_from_triple(t: &RelatedTriple) -> Result<(Octonion, Octonion, Matrix)> {
    let (a, b) = t.pi();
    let iso = Isotope::new(&a, &b)?;
    if !is_algebra_isomorphism(t.t1(), t.algebra(), &iso) {
        return Err(Error::NotIsomorphism(format!("t1 is not an isomorphism onto the isotope at ({a}; {b})")));
    }
    Ok((a, b, t.t1().clone()))
}

/// `s_{a,b} = (R_ā B_b̄, L_ā R_b, B_a L_b)`.
pub fn s_ab(a: &Octonion, b: &Octonion) -> Result<RelatedTriple> {
    let alg = a.algebra();
    let (ab, bb) = (a.conj(), b.conj());
    let m = |x: Matrix, y: Matrix| x.mul(&y).expect("8x8");
    RelatedTriple::new(
        alg,
        m(alg.right_mul(&ab), alg.bimul(&bb)),
        m(alg.left_mul(&ab), alg.right_mul(b)),
        m(alg.bimul(a), alg.left_mul(b)),
    )
}

fn unit_norm_pair(a: &Octonion, b: &Octonion) -> Result<()> {
    let r = a.ring();
    for x in [a, b] {
        if !r.is_one(&x.norm()) {
            return Err(Error::NotUnitNorm(x.to_string()));
        }
    }
    Ok(())
}

/// The isotope `C^{a,b}` as an octonion algebra with its own unit and
/// involution, for unit-norm `a, b`.
pub fn isotope_algebra(a: &Octonion, b: &Octonion) -> Result<OctonionAlgebra> {
    unit_norm_pair(a, b)?;
    Isotope::new(a, b)?.materialize()
}

/// `T^{a,b}`: a related triple of `C^{a,b}` to one of `C`,
/// `(t1, B_b R_a t2 R_ā B_b̄, B_a L_b t3 L_b̄ B_ā)`.
pub fn twist_conjugate(t: &RelatedTriple, a: &Octonion, b: &Octonion) -> Result<RelatedTriple> {
    unit_norm_pair(a, b)?;
    let c = a.algebra();
    let (ab, bb) = (a.conj(), b.conj());
    let chain = |ms: &[Matrix]| -> Matrix {
        let mut acc = Matrix::identity(c.ring(), DIM);
        for m in ms {
            acc = acc.mul(m).expect("8x8");
        }
        acc
    };
    let t2 = chain(&[c.bimul(b), c.right_mul(a), t.t2().clone(), c.right_mul(&ab), c.bimul(&bb)]);
    let t3 = chain(&[c.bimul(a), c.left_mul(b), t.t3().clone(), c.left_mul(&bb), c.bimul(&ab)]);
    RelatedTriple::new(c, t.t1().clone(), t2, t3)
}

/// Inverse of [`twist_conjugate`]: a related triple of `C` to one of the
/// isotope algebra `iso` of `C^{a,b}`.
pub fn untwist(t: &RelatedTriple, a: &Octonion, b: &Octonion, iso: &OctonionAlgebra) -> Result<RelatedTriple> {
    unit_norm_pair(a, b)?;
    let c = a.algebra();
    let (ab, bb) = (a.conj(), b.conj());
    let chain = |ms: &[Matrix]| -> Matrix {
        let mut acc = Matrix::identity(c.ring(), DIM);
        for m in ms {
            acc = acc.mul(m).expect("8x8");
        }
        acc
    };
    let t2 = chain(&[c.right_mul(&ab), c.bimul(&bb), t.t2().clone(), c.bimul(b), c.right_mul(a)]);
    let t3 = chain(&[c.left_mul(&bb), c.bimul(&ab), t.t3().clone(), c.bimul(a), c.left_mul(b)]);
    RelatedTriple::new(iso, t.t1().clone(), t2, t3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zorn(spec: &str) -> OctonionAlgebra {
        OctonionAlgebra::zorn(&RingContext::parse(spec).unwrap())
    }

    fn random_triple(c: &OctonionAlgebra, rng: &mut ChaCha8Rng, len: usize) -> RelatedTriple {
        let mut t = RelatedTriple::identity(c);
        for k in 0..len {
            let mut g = RelatedTriple::basic(&c.random_sphere(rng).unwrap()).unwrap();
            for _ in 0..k % 3 {
                g = g.rotate();
            }
            t = t.compose(&g).unwrap();
        }
        t
    }

    #[test]
    fn trivial_and_kernel_triples() {
        let c = zorn("Q");
        let r = c.ring().clone();
        let i = Matrix::identity(&r, DIM);
        let m = i.neg();
        assert!(is_related(&c, &i, &i, &i));
        assert!(is_related(&c, &i, &m, &m));
        assert!(!is_related(&c, &i, &i, &m));
        assert_eq!(relation_defect(&c, [&i, &i, &m]), Some(RelationDefect::Relation(0, 0)));
        assert!(RelatedTriple::kernel(&c, &r.from_i64(2)).is_err());
    }

    #[test]
    fn basic_triples_and_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = zorn("F3");
        assert!(RelatedTriple::basic(&c.one()).unwrap().is_identity());
        for _ in 0..20 {
            let x = c.random_sphere(&mut rng).unwrap();
            let t = RelatedTriple::basic(&x).unwrap();
            assert!(t.check() && t.delta_invariant());
            assert_eq!(t.pi(), (x.conj(), x.conj()));
            let r1 = t.rotate();
            assert_eq!(r1.t1(), &c.right_mul(&x.conj()));
            assert!(r1.check() && r1.delta_invariant());
            assert!(r1.rotate().check());
            assert_eq!(r1.rotate().rotate(), t);
        }
        let iso = c.basis(0);
        assert!(matches!(RelatedTriple::basic(&iso), Err(Error::NotUnitNorm(_))));
    }

    #[test]
    fn delta_agrees_with_relation_on_non_related_triples() {
        let c = zorn("Q");
        let k = c.conj_matrix().clone();
        assert!(is_isometry(c.norm(), c.norm(), &k).unwrap());
        assert!(!is_related(&c, &k, &k, &k));
        assert!(!delta_invariant(&c, &k, &k, &k));
        assert!(!is_multiplicative(&c, &k));
    }

    #[test]
    fn automorphism_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = zorn("F5");
        let i = Matrix::identity(c.ring(), DIM);
        assert!(is_automorphism_triple(&c, &i) && is_multiplicative(&c, &i));
        for _ in 0..10 {
            let x = c.random_sphere(&mut rng).unwrap();
            let b = c.bimul(&x);
            assert_eq!(is_automorphism_triple(&c, &b), is_multiplicative(&c, &b));
        }
    }

    #[test]
    fn stabilizer_of_unit_pair_is_automorphisms() {
        // t^{-1} t' with pi(t) = pi(t') fixes (1, 1)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = zorn("F3");
        for _ in 0..20 {
            let x = c.random_sphere(&mut rng).unwrap();
            let y = c.random_sphere(&mut rng).unwrap();
            let t = RelatedTriple::basic(&x).unwrap().compose(&RelatedTriple::basic(&y).unwrap()).unwrap();
            let (u, v) = t.pi();
            let iso = Isotope::new(&u, &v).unwrap();
            assert!(is_algebra_isomorphism(t.t1(), &c, &iso));
            let s = triple_from_iso(t.t1(), &u, &v).unwrap();
            let g = t.inverse().compose(&s).unwrap();
            assert_eq!(g.pi(), (c.one(), c.one()));
            assert!(g.is_identity());
            let t2 = t.compose(&RelatedTriple::basic(&c.one().neg()).unwrap()).unwrap();
            let h = t.inverse().compose(&t2).unwrap();
            assert!(is_multiplicative(&c, h.t1()));
            // pi(h) = (-1, -1), so t2 = t3 = -t1
            let eta = c.ring().from_i64(-1);
            assert_eq!(h.pi(), (c.one().neg(), c.one().neg()));
            assert!(h.t2() == &h.t1().scale(&eta) && h.t3() == h.t2());
        }
    }

    #[test]
    fn compose_and_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for spec in ["F2", "F3", "Q", "Z/8"] {
            let c = zorn(spec);
            for _ in 0..5 {
                let t = random_triple(&c, &mut rng, 3);
                let s = random_triple(&c, &mut rng, 2);
                let ts = t.compose(&s).unwrap();
                assert!(ts.check(), "{spec}");
                assert!(t.compose(&t.inverse()).unwrap().is_identity());
                assert_eq!(ts.pi(), t.act(&s.pi().0, &s.pi().1));
                assert!(ts.sigma_pair_action());
                assert!(ts.composition_correspondence());
            }
        }
    }

    #[test]
    fn iso_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = zorn("F5");
        let (a, b, w) = iso_from_triple(&RelatedTriple::identity(&c)).unwrap();
        assert!(a == c.one() && b == c.one() && w.is_identity());
        for _ in 0..10 {
            let t = random_triple(&c, &mut rng, 4);
            let (a, b, f) = iso_from_triple(&t).unwrap();
            let back = triple_from_iso(&f, &a, &b).unwrap();
            assert_eq!(back.pi(), t.pi());
            assert_eq!(t.kernel_ratio(&back), Some(c.ring().one()));
        }
        let x = c.random_sphere(&mut rng).unwrap();
        let xb = x.conj();
        let t = triple_from_iso(&c.bimul(&x), &xb, &xb).unwrap();
        assert_eq!(t.pi(), (xb.clone(), xb));
    }

    #[test]
    fn s_ab_and_twisted_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let c = zorn("F3");
        let id = RelatedTriple::identity(&c);
        assert_eq!(twist_conjugate(&id, &c.one(), &c.one()).unwrap(), id);
        for _ in 0..5 {
            let a = c.random_sphere(&mut rng).unwrap();
            let b = c.random_sphere(&mut rng).unwrap();
            assert!(s_ab(&a, &b).unwrap().check());
            let iso = isotope_algebra(&a, &b).unwrap();
            let mut prev: Option<RelatedTriple> = None;
            for _ in 0..3 {
                let s = random_triple(&iso, &mut rng, 3);
                assert!(s.check());
                let ts = twist_conjugate(&s, &a, &b).unwrap();
                assert_eq!(untwist(&ts, &a, &b, &iso).unwrap(), s);
                if let Some(p) = prev {
                    let lhs = twist_conjugate(&p.compose(&s).unwrap(), &a, &b).unwrap();
                    let rhs = twist_conjugate(&p, &a, &b).unwrap().compose(&ts).unwrap();
                    assert_eq!(lhs, rhs);
                }
                prev = Some(s);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = zorn("F5");
        let t = random_triple(&c, &mut rng, 2);
        assert_eq!(RelatedTriple::from_json(&c, &t.to_json()).unwrap(), t);
    }
}
