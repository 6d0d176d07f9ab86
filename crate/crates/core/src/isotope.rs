//! Isotopes `C^{a,b}` with product `x * y = (xa)(by)`, the isomorphisms
//! between them, and an isomorphism decision procedure.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{BilinearMap, Matrix};
use crate::octonion::{Octonion, OctonionAlgebra, DIM};
use crate::quadform::{quadratic_spanning_family, QuadraticForm};
use crate::ring::{RingContext, Scalar};

/// Anything with a bilinear product and a unit on the 8-dimensional module.
pub trait AlgebraLike {
    fn ring(&self) -> &RingContext;
    fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar>;
    fn unit_coords(&self) -> Vec<Scalar>;
    fn label(&self) -> String;

    /// Splits the product as `x ∘ y = combine(left_factor(x), right_factor(y))`
    /// so that table computations can reuse the factors of each operand.
    fn left_factor(&self, x: &[Scalar]) -> Vec<Scalar> {
        x.to_vec()
    }

    fn right_factor(&self, y: &[Scalar]) -> Vec<Scalar> {
        y.to_vec()
    }

    fn combine(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mul_coords(x, y)
    }
}

impl AlgebraLike for OctonionAlgebra {
    fn ring(&self) -> &RingContext {
        OctonionAlgebra::ring(self)
    }

    fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        OctonionAlgebra::mul_coords(self, x, y)
    }

    fn unit_coords(&self) -> Vec<Scalar> {
        OctonionAlgebra::unit_coords(self).to_vec()
    }

    fn label(&self) -> String {
        OctonionAlgebra::label(self).to_string()
    }
}

fn basis_vector(r: &RingContext, i: usize) -> Vec<Scalar> {
    let mut v = vec![r.zero(); DIM];
    v[i] = r.one();
    v
}

/// The isotope `C^{a,b}` of an octonion algebra.
#[derive(Clone, Debug)]
pub struct Isotope {
    base: OctonionAlgebra,
    a: Octonion,
    b: Octonion,
    unit: Octonion,
    lambda: Scalar,
}

impl Isotope {
    /// `C^{a,b}`; `a` and `b` must be invertible.
    pub fn new(a: &Octonion, b: &Octonion) -> Result<Self> {
        let base = a.algebra().clone();
        if *b.algebra() != base {
            return Err(Error::AlgebraMismatch);
        }
        let r = base.ring();
        for x in [a, b] {
            if !x.is_invertible() {
                return Err(Error::NotInvertible(r.format(&x.norm())));
            }
        }
        let ab = a.mul(b);
        let unit = ab.inverse()?;
        Ok(Isotope {
            lambda: ab.norm(),
            base,
            a: a.clone(),
            b: b.clone(),
            unit,
        })
    }

    pub fn base(&self) -> &OctonionAlgebra {
        &self.base
    }

    pub fn a(&self) -> &Octonion {
        &self.a
    }

    pub fn b(&self) -> &Octonion {
        &self.b
    }

    /// The identity element `(ab)^{-1}`.
    pub fn unit(&self) -> &Octonion {
        &self.unit
    }

    /// `λ = q(ab)`.
    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    /// `q(a) = q(b) = 1`, the regime where the isotope norm is `q` itself.
    pub fn is_unit_norm(&self) -> bool {
        let r = self.base.ring();
        r.is_one(&self.a.norm()) && r.is_one(&self.b.norm())
    }

    /// `x * y = (xa)(by)`.
    pub fn mul(&self, x: &Octonion, y: &Octonion) -> Octonion {
        x.mul(&self.a).mul(&self.b.mul(y))
    }

    /// The norm `λ q`.
    pub fn norm_form(&self) -> QuadraticForm {
        self.base.norm().scale(&self.lambda)
    }

    /// The isotope's own involution `x -> b'(x, e) e - x` with `b' = λ b_q`
    /// and `e` the isotope unit.
    pub fn conj(&self, x: &Octonion) -> Octonion {
        let r = self.base.ring();
        let t = r.mul(&self.lambda, &x.polar(&self.unit));
        self.unit.scale(&t).sub(x)
    }

    /// Matrix of [`Isotope::conj`].
    pub fn conj_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..DIM)
            .map(|j| self.conj(&self.base.basis(j)).into_coords())
            .collect();
        Matrix::from_columns(self.base.ring(), &cols).expect("8x8")
    }

    /// The norm recovered from the product alone: every element satisfies
    /// `x * x = t x - n e`, and `n` is read off on the spanning family
    /// `{e_i, e_i + e_j}`.
    pub fn generic_norm_form(&self) -> Result<QuadraticForm> {
        let r = self.base.ring().clone();
        let family = quadratic_spanning_family(&r, DIM);
        let values: Vec<Scalar> = family
            .iter()
            .map(|v| self.generic_norm(&self.base.element(v.clone())?))
            .collect::<Result<_>>()?;
        let mut entries = Vec::new();
        for i in 0..DIM {
            entries.push((i, i, values[i].clone()));
        }
        let mut k = DIM;
        for i in 0..DIM {
            for j in i + 1..DIM {
                let c = r.sub(&r.sub(&values[k], &values[i]), &values[j]);
                entries.push((i, j, c));
                k += 1;
            }
        }
        QuadraticForm::from_entries(&r, DIM, &entries)
    }

    /// `n` in `x * x = t x - n e`.
    pub fn generic_norm(&self, x: &Octonion) -> Result<Scalar> {
        let r = self.base.ring();
        let y = self.mul(x, x);
        let (xc, ec, yc) = (x.coords(), self.unit.coords(), y.coords());
        let check = |t: &Scalar, n: &Scalar| -> bool {
            (0..DIM).all(|k| yc[k] == r.sub(&r.mul(t, &xc[k]), &r.mul(n, &ec[k])))
        };
        // x = s e: then n = s^2 and t = 2s
        if let Some(m) = (0..DIM).find(|&m| r.is_unit(&ec[m])) {
            let s = r.mul(&xc[m], &r.inv(&ec[m]).expect("unit"));
            if self.unit.scale(&s) == *x {
                return Ok(r.mul(&s, &s));
            }
        }
        // Cramer on the 2x2 system in coordinates (k, l)
        let mut fallback = None;
        for k in 0..DIM {
            for l in k + 1..DIM {
                let d = r.sub(&r.mul(&ec[k], &xc[l]), &r.mul(&xc[k], &ec[l]));
                if r.is_zero(&d) {
                    continue;
                }
                let n_num = r.sub(&r.mul(&xc[k], &yc[l]), &r.mul(&xc[l], &yc[k]));
                let t_num = r.sub(&r.mul(&ec[k], &yc[l]), &r.mul(&ec[l], &yc[k]));
                if let Some(dinv) = r.inv(&d) {
                    let (t, n) = (r.mul(&t_num, &dinv), r.mul(&n_num, &dinv));
                    if check(&t, &n) {
                        return Ok(n);
                    }
                    return Err(Error::PreconditionFailed(format!("x*x is not in the span of x and e for x = {x}")));
                }
                if fallback.is_none() && r.is_domain() {
                    if let (Some(t), Some(n)) = (r.div_exact(&t_num, &d), r.div_exact(&n_num, &d)) {
                        fallback = Some((t, n));
                    }
                }
            }
        }
        match fallback {
            Some((t, n)) if check(&t, &n) => Ok(n),
            _ => Err(Error::NotFound(format!("no usable 2x2 minor for the quadratic equation of {x}"))),
        }
    }

    /// The isotope as a standalone [`OctonionAlgebra`] with norm `λ q`.
    pub fn materialize(&self) -> Result<OctonionAlgebra> {
        let r = self.base.ring();
        let tensor = BilinearMap::from_fn(r, DIM, |i, j| self.mul(&self.base.basis(i), &self.base.basis(j)).into_coords());
        OctonionAlgebra::from_parts(AlgebraLike::label(self), tensor, self.unit.coords().to_vec(), self.norm_form())
    }

    pub fn to_json(&self) -> Value {
        json!({ "a": self.a.to_json(), "b": self.b.to_json() })
    }
}

impl AlgebraLike for Isotope {
    fn ring(&self) -> &RingContext {
        self.base.ring()
    }

    fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let xa = self.base.mul_coords(x, self.a.coords());
        let by = self.base.mul_coords(self.b.coords(), y);
        self.base.mul_coords(&xa, &by)
    }

    fn unit_coords(&self) -> Vec<Scalar> {
        self.unit.coords().to_vec()
    }

    fn label(&self) -> String {
        format!("{}^{{{};{}}}", self.base, self.a, self.b)
    }

    fn left_factor(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.base.mul_coords(x, self.a.coords())
    }

    fn right_factor(&self, y: &[Scalar]) -> Vec<Scalar> {
        self.base.mul_coords(self.b.coords(), y)
    }

    fn combine(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.base.mul_coords(x, y)
    }
}

/// The algebra `(C, ⋆_u)` with `x ⋆_u y = (x(yu))u^{-1}`.
#[derive(Clone, Debug)]
pub struct KpsAlgebra {
    base: OctonionAlgebra,
    u: Octonion,
    u_inv: Octonion,
}

impl KpsAlgebra {
    pub fn new(u: &Octonion) -> Result<Self> {
        Ok(KpsAlgebra {
            base: u.algebra().clone(),
            u: u.clone(),
            u_inv: u.inverse()?,
        })
    }

    pub fn mul(&self, x: &Octonion, y: &Octonion) -> Octonion {
        x.mul(&y.mul(&self.u)).mul(&self.u_inv)
    }
}

impl AlgebraLike for KpsAlgebra {
    fn ring(&self) -> &RingContext {
        self.base.ring()
    }

    fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let yu = self.base.mul_coords(y, self.u.coords());
        let x_yu = self.base.mul_coords(x, &yu);
        self.base.mul_coords(&x_yu, self.u_inv.coords())
    }

    fn unit_coords(&self) -> Vec<Scalar> {
        self.base.unit_coords().to_vec()
    }

    fn label(&self) -> String {
        format!("({}, star_{})", self.base, self.u)
    }
}

/// First basis pair `(i, j)` with `f(e_i ∘ e_j) != f(e_i) ∘ f(e_j)`; `Err`
/// when `f` is not invertible.
pub fn isomorphism_defect(f: &Matrix, from: &dyn AlgebraLike, to: &dyn AlgebraLike) -> Result<Option<(usize, usize)>> {
    let r = from.ring();
    if f.rows() != DIM || f.cols() != DIM {
        return Err(Error::DimensionMismatch { expected: DIM, got: f.rows() });
    }
    if !f.is_invertible() {
        return Err(Error::NotInvertible(r.format(&f.det()?)));
    }
    let images: Vec<Vec<Scalar>> = (0..DIM).map(|j| f.column(j)).collect();
    let basis: Vec<Vec<Scalar>> = (0..DIM).map(|i| basis_vector(r, i)).collect();
    let from_l: Vec<Vec<Scalar>> = basis.iter().map(|e| from.left_factor(e)).collect();
    let from_r: Vec<Vec<Scalar>> = basis.iter().map(|e| from.right_factor(e)).collect();
    let to_l: Vec<Vec<Scalar>> = images.iter().map(|x| to.left_factor(x)).collect();
    let to_r: Vec<Vec<Scalar>> = images.iter().map(|x| to.right_factor(x)).collect();
    for i in 0..DIM {
        for j in 0..DIM {
            let lhs = f.mul_vec(&from.combine(&from_l[i], &from_r[j]))?;
            let rhs = to.combine(&to_l[i], &to_r[j]);
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    // bilinearity makes basis pairs complete; a bijective multiplicative map
    // between unital algebras sends unit to unit
    debug_assert_eq!(f.mul_vec(&from.unit_coords())?, to.unit_coords());
    Ok(None)
}

/// Decides whether `f` is an algebra isomorphism `from -> to`.
pub fn is_algebra_isomorphism(f: &Matrix, from: &dyn AlgebraLike, to: &dyn AlgebraLike) -> bool {
    matches!(isomorphism_defect(f, from, to), Ok(None))
}

/// A linear map with its claimed source and target isotopes.
#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub map: Matrix,
    pub source: Isotope,
    pub target: Isotope,
}

impl NamedMap {
    fn new(name: &str, map: Matrix, source: (&Octonion, &Octonion), target: (&Octonion, &Octonion)) -> Result<Self> {
        Ok(NamedMap {
            name: name.to_string(),
            map,
            source: Isotope::new(source.0, source.1)?,
            target: Isotope::new(target.0, target.1)?,
        })
    }

    pub fn holds(&self) -> bool {
        is_algebra_isomorphism(&self.map, &self.source, &self.target)
    }
}

/// The isomorphisms between isotopes relating `C^{a,b}` to its neighbours,
/// plus the scalar rescaling `C^{1,c^2} -> C^{1,q(c)^{-1}c^2}`.
pub fn formula_maps(a: &Octonion, b: &Octonion) -> Result<Vec<NamedMap>> {
    let c = a.algebra();
    let one = c.one();
    let ai = a.inverse()?;
    let bi = b.inverse()?;
    let aba = a.mul(b).mul(a);
    let bab = b.mul(a).mul(b);
    let (la, ra, ba, bb) = (c.left_mul(a), c.right_mul(a), c.bimul(a), c.bimul(b));
    let rb = c.right_mul(b);
    let rbi = c.right_mul(&bi);
    let b_ai = b.mul(&ai);
    let bi_a = bi.mul(a);
    let a_bi = a.mul(&bi);
    let ai_b = ai.mul(b);
    let m = |x: &Matrix, y: &Matrix| x.mul(y).expect("8x8");
    let a_sq = a.mul(a);
    let r = c.ring();
    let mut maps = vec![
        NamedMap::new("L_a: C^{1,aba} -> C^{a,b}", la.clone(), (&one, &aba), (a, b))?,
        NamedMap::new("R_b: C^{bab,1} -> C^{a,b}", rb, (&bab, &one), (a, b))?,
        NamedMap::new("R_{b^-1} L_a: C^{1,aba} -> C^{bab,1}", m(&rbi, &la), (&one, &aba), (&bab, &one))?,
        NamedMap::new("L_a: C^{1,a} -> C^{a,a^-1}", la, (&one, a), (a, &ai))?,
        NamedMap::new("R_a: C^{a,a^-1} -> C^{a^-1,1}", ra, (a, &ai), (&ai, &one))?,
        NamedMap::new("B_a: C^{1,a} -> C^{a^-1,1}", ba.clone(), (&one, a), (&ai, &one))?,
        NamedMap::new("B_a: C^{a,b} -> C^{1,ba^-1}", ba.clone(), (a, b), (&one, &b_ai))?,
        NamedMap::new("B_b: C^{a,b} -> C^{b^-1a,1}", bb.clone(), (a, b), (&bi_a, &one))?,
        NamedMap::new("B_{ba^-1} B_a: C^{a,b} -> C^{ab^-1,1}", m(&c.bimul(&b_ai), &ba), (a, b), (&a_bi, &one))?,
        NamedMap::new("B_{b^-1a} B_b: C^{a,b} -> C^{1,a^-1b}", m(&c.bimul(&bi_a), &bb), (a, b), (&one, &ai_b))?,
    ];
    let qa = a.norm();
    let rescaled = a_sq.scale(&r.inv(&qa).ok_or_else(|| Error::NotInvertible(r.format(&qa)))?);
    maps.push(NamedMap::new(
        "q(a) Id: C^{1,a^2} -> C^{1,q(a)^-1 a^2}",
        Matrix::scalar(r, DIM, &qa),
        (&one, &a_sq),
        (&one, &rescaled),
    )?);
    Ok(maps)
}

/// `(C, ⋆_u)` with the witness `R_u: (C, ⋆_u) -> C^{u^{-1},1}`.
pub fn kps_star(u: &Octonion) -> Result<(KpsAlgebra, Isotope, Matrix)> {
    let kps = KpsAlgebra::new(u)?;
    let target = Isotope::new(&u.inverse()?, &u.algebra().one())?;
    Ok((kps, target, u.algebra().right_mul(u)))
}

/// `c = a^{-1}b` with witness `B_{b^{-1}a} B_b: C^{a,b} -> C^{1,c}`.
pub fn standard_form(a: &Octonion, b: &Octonion) -> Result<(Octonion, Matrix)> {
    let c = a.algebra();
    let bi_a = b.inverse()?.mul(a);
    let witness = c.bimul(&bi_a).mul(&c.bimul(b))?;
    Ok((a.inverse()?.mul(b), witness))
}

/// The cyclic step `(a, b) -> (b^{-1}a^{-1}, a)` with the witness
/// `R_a B_{ba^{-1}} B_a: C^{a,b} -> C^{b^{-1}a^{-1},a}`.
pub fn trialitarian_step(a: &Octonion, b: &Octonion) -> Result<((Octonion, Octonion), Matrix)> {
    let c = a.algebra();
    let ai = a.inverse()?;
    let bi = b.inverse()?;
    let b_ai = b.mul(&ai);
    let witness = c.right_mul(a).mul(&c.bimul(&b_ai))?.mul(&c.bimul(a))?;
    Ok(((bi.mul(&ai), a.clone()), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zorn(spec: &str) -> OctonionAlgebra {
        OctonionAlgebra::zorn(&RingContext::parse(spec).unwrap())
    }

    #[test]
    fn factored_product_matches_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = zorn("Q");
        let a = c.random_invertible(&mut rng).unwrap();
        let b = c.random_invertible(&mut rng).unwrap();
        let iso = Isotope::new(&a, &b).unwrap();
        let kps = KpsAlgebra::new(&a).unwrap();
        let algs: [&dyn AlgebraLike; 3] = [&c, &iso, &kps];
        for _ in 0..10 {
            let (x, y) = (c.random_element(&mut rng), c.random_element(&mut rng));
            for alg in algs {
                let split = alg.combine(&alg.left_factor(x.coords()), &alg.right_factor(y.coords()));
                assert_eq!(split, alg.mul_coords(x.coords(), y.coords()), "{}", alg.label());
            }
            assert_eq!(iso.mul_coords(x.coords(), y.coords()), iso.mul(&x, &y).into_coords());
        }
    }

    #[test]
    fn trivial_isotope_is_the_algebra() {
        let c = zorn("F3");
        let iso = Isotope::new(&c.one(), &c.one()).unwrap();
        assert_eq!(iso.unit(), &c.one());
        assert!(is_algebra_isomorphism(&Matrix::identity(c.ring(), DIM), &c, &iso));
        assert!(matches!(Isotope::new(&c.basis(0), &c.one()), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn unit_law_exhaustive_over_f2() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = zorn("F2");
        let r = c.ring().clone();
        for _ in 0..5 {
            let iso = Isotope::new(&c.random_sphere(&mut rng).unwrap(), &c.random_sphere(&mut rng).unwrap()).unwrap();
            for code in 0..256u64 {
                let y = c.element((0..DIM).map(|k| r.element(code >> k & 1)).collect()).unwrap();
                assert_eq!(iso.mul(iso.unit(), &y), y);
                assert_eq!(iso.mul(&y, iso.unit()), y);
            }
        }
    }

    #[test]
    fn generic_norm_matches_scaled_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for spec in ["Z", "Q", "F2", "Z/8", "Q[t,1/t]"] {
            let c = zorn(spec);
            for _ in 0..10 {
                let a = c.random_invertible(&mut rng).unwrap();
                let b = c.random_invertible(&mut rng).unwrap();
                let iso = Isotope::new(&a, &b).unwrap();
                assert_eq!(iso.generic_norm_form().unwrap(), iso.norm_form(), "{spec}");
            }
        }
    }

    #[test]
    fn identity_is_not_an_isomorphism_onto_a_generic_isotope() {
        let c = zorn("Q");
        let a = c.basis(0).add(&c.basis(1).scale(&c.ring().from_i64(2)));
        let iso = Isotope::new(&a, &c.one()).unwrap();
        let defect = isomorphism_defect(&Matrix::identity(c.ring(), DIM), &c, &iso).unwrap();
        assert!(defect.is_some());
    }

    #[test]
    fn formula_maps_over_f5() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = zorn("F5");
        for _ in 0..10 {
            let a = c.random_invertible(&mut rng).unwrap();
            let b = c.random_invertible(&mut rng).unwrap();
            for m in formula_maps(&a, &b).unwrap() {
                assert!(m.holds(), "{}", m.name);
            }
        }
        for m in formula_maps(&c.one(), &c.one()).unwrap() {
            assert!(m.holds(), "{}", m.name);
        }
    }

    #[test]
    fn kps_star_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let c = zorn("Q");
        let (kps, _, _) = kps_star(&c.one()).unwrap();
        let (x, y) = (c.random_element(&mut rng), c.random_element(&mut rng));
        assert_eq!(kps.mul(&x, &y), x.mul(&y));
        for _ in 0..20 {
            let u = c.random_invertible(&mut rng).unwrap();
            let (kps, target, ru) = kps_star(&u).unwrap();
            assert!(is_algebra_isomorphism(&ru, &kps, &target));
        }
    }

    #[test]
    fn standard_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = zorn("F5");
        let (c1, w) = standard_form(&c.one(), &c.one()).unwrap();
        assert_eq!(c1, c.one());
        assert!(w.is_invertible());
        for _ in 0..20 {
            let a = c.random_sphere(&mut rng).unwrap();
            let b = c.random_sphere(&mut rng).unwrap();
            let (s, w) = standard_form(&a, &b).unwrap();
            assert!(c.ring().is_one(&s.norm()));
            let src = Isotope::new(&a, &b).unwrap();
            let dst = Isotope::new(&c.one(), &s).unwrap();
            assert!(is_algebra_isomorphism(&w, &src, &dst));
            let (s, _) = standard_form(&a, &a).unwrap();
            assert_eq!(s, c.one());
        }
    }

    #[test]
    fn trialitarian_step_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let c = zorn("F3");
        for _ in 0..10 {
            let a = c.random_sphere(&mut rng).unwrap();
            let b = c.random_sphere(&mut rng).unwrap();
            let mut cur = (a.clone(), b.clone());
            for _ in 0..3 {
                let (next, w) = trialitarian_step(&cur.0, &cur.1).unwrap();
                let src = Isotope::new(&cur.0, &cur.1).unwrap();
                let dst = Isotope::new(&next.0, &next.1).unwrap();
                assert!(is_algebra_isomorphism(&w, &src, &dst));
                cur = next;
            }
            assert_eq!(cur, (a, b));
        }
    }

    #[test]
    fn materialized_isotope_is_an_octonion_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = zorn("F3");
        let a = c.random_invertible(&mut rng).unwrap();
        let b = c.random_invertible(&mut rng).unwrap();
        let m = Isotope::new(&a, &b).unwrap().materialize().unwrap();
        for check in m.identity_suite(100, &mut rng) {
            assert!(check.passed(), "{check:?}");
        }
    }
}
