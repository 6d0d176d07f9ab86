//! Explicit isomorphisms `C -> C^{a,ā}` built from chains of multiplication
//! operators, and the sufficient conditions they yield.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::isotope::{isomorphism_defect, AlgebraLike, Isotope};
use crate::linalg::Matrix;
use crate::octonion::{Octonion, OctonionAlgebra, DIM};
use crate::ring::Scalar;

/// A checked isomorphism from an octonion algebra onto one of its isotopes.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub map: Matrix,
    pub source: OctonionAlgebra,
    pub target: Isotope,
    /// Generator tags in order of application.
    pub trace: Vec<String>,
}

impl IsoWitness {
    /// Verifies `map` with the isomorphism decision procedure.
    pub fn new(map: Matrix, target: Isotope, trace: Vec<String>) -> Result<Self> {
        let source = target.base().clone();
        match isomorphism_defect(&map, &source, &target)? {
            None => Ok(IsoWitness { map, source, target, trace }),
            Some((i, j)) => Err(Error::NotIsomorphism(format!(
                "{} -> {} fails on (e_{i}, e_{j})",
                source,
                target.label()
            ))),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.label(),
            "target": self.target.to_json(),
            "trace": self.trace,
            "map": self.map.to_json(),
        })
    }
}

fn sphere_check(a: &Octonion) -> Result<()> {
    if a.ring().is_one(&a.norm()) {
        Ok(())
    } else {
        Err(Error::NotUnitNorm(a.to_string()))
    }
}

/// `τ⁺_c(x) = ((c x) c) c`.
pub fn tau_plus(c: &Octonion, x: &Octonion) -> Octonion {
    c.mul(x).mul(c).mul(c)
}

/// `τ⁻_c(x) = c^{-2} (x c^{-1})`.
pub fn tau_minus(c: &Octonion, x: &Octonion) -> Result<Octonion> {
    let ci = c.inverse()?;
    Ok(ci.mul(&ci).mul(&x.mul(&ci)))
}

/// `((c x) c) c`, `(c x) c²` and `c (x c²)` agree.
pub fn tau_plus_bracketings_agree(c: &Octonion, x: &Octonion) -> bool {
    let c2 = c.mul(c);
    let t = tau_plus(c, x);
    t == c.mul(x).mul(&c2) && t == c.mul(&x.mul(&c2))
}

fn operator(alg: &OctonionAlgebra, f: impl Fn(&Octonion) -> Result<Octonion>) -> Result<Matrix> {
    let cols: Vec<Vec<Scalar>> = (0..DIM).map(|j| f(&alg.basis(j)).map(Octonion::into_coords)).collect::<Result<_>>()?;
    Matrix::from_columns(alg.ring(), &cols)
}

/// Matrix of `τ⁺_c`, after checking the bracketings on the basis.
pub fn tau_plus_matrix(c: &Octonion) -> Result<Matrix> {
    let alg = c.algebra();
    if let Some(j) = (0..DIM).find(|&j| !tau_plus_bracketings_agree(c, &alg.basis(j))) {
        return Err(Error::PreconditionFailed(format!("bracketings of c e_{j} c^2 disagree for c = {c}")));
    }
    operator(alg, |x| Ok(tau_plus(c, x)))
}

pub fn tau_minus_matrix(c: &Octonion) -> Result<Matrix> {
    operator(c.algebra(), |x| tau_minus(c, x))
}

/// `L_c R_c^{-1}`.
pub fn lr_inverse(c: &Octonion) -> Result<Matrix> {
    let alg = c.algebra();
    alg.left_mul(c).mul(&alg.right_mul(&c.inverse()?))
}

fn product(alg: &OctonionAlgebra, factors: impl IntoIterator<Item = Matrix>) -> Matrix {
    // later factors act last
    factors
        .into_iter()
        .fold(Matrix::identity(alg.ring(), DIM), |acc, m| m.mul(&acc).expect("8x8"))
}

/// `B_{c̄_r} ... B_{c̄_1}: C -> C^{a,ā}` when
/// `L_{c_r} ... L_{c_1}(1) = L_{c̄_r} ... L_{c̄_1}(1) = a` with `q(a) = 1`.
pub fn chain_iso_item1(cs: &[Octonion]) -> Result<IsoWitness> {
    let alg = first_algebra(cs)?;
    let mut left = alg.one();
    let mut left_bar = alg.one();
    for c in cs {
        left = c.mul(&left);
        left_bar = c.conj().mul(&left_bar);
    }
    if left != left_bar || !alg.ring().is_one(&left.norm()) {
        return Err(Error::PreconditionFailed(format!(
            "L_c...(1) = {left} and L_c̄...(1) = {left_bar} must agree and have norm 1"
        )));
    }
    let map = product(&alg, cs.iter().map(|c| alg.bimul(&c.conj())));
    let trace = cs.iter().map(|c| format!("B_conj({c})")).collect();
    IsoWitness::new(map, Isotope::new(&left, &left.conj())?, trace)
}

/// `L_{c_r} R_{c_r}^{-1} ... L_{c_1} R_{c_1}^{-1}: C -> C^{a,ā}` with
/// `a = τ⁺_{c_r} ... τ⁺_{c_1}(1)` of norm 1.
pub fn chain_iso_item2(cs: &[Octonion]) -> Result<IsoWitness> {
    let alg = first_algebra(cs)?;
    let mut a = alg.one();
    for c in cs {
        if !c.is_invertible() {
            return Err(Error::NotInvertible(c.to_string()));
        }
        tau_plus_matrix(c)?;
        a = tau_plus(c, &a);
    }
    if !alg.ring().is_one(&a.norm()) {
        return Err(Error::PreconditionFailed(format!("tau chain gives a = {a} with q(a) != 1")));
    }
    let map = product(&alg, cs.iter().map(lr_inverse).collect::<Result<Vec<_>>>()?);
    let trace = cs.iter().map(|c| format!("L_c R_c^-1 with c = {c}")).collect();
    IsoWitness::new(map, Isotope::new(&a, &a.conj())?, trace)
}

fn first_algebra(cs: &[Octonion]) -> Result<OctonionAlgebra> {
    let alg = cs
        .first()
        .ok_or_else(|| Error::PreconditionFailed("empty chain".into()))?
        .algebra()
        .clone();
    if cs.iter().any(|c| *c.algebra() != alg) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(alg)
}

/// `C ≅ C^{c³, conj(c³)}` via `L_c R_c^{-1}`.
pub fn cube_case(c: &Octonion) -> Result<IsoWitness> {
    let r = c.ring();
    if !r.is_one(&r.pow(&c.norm(), 3)) {
        return Err(Error::NotUnitNorm(format!("q({c})^3")));
    }
    chain_iso_item2(std::slice::from_ref(c))
}

/// `C ≅ C^{a,ā}` from an invertible `u` orthogonal to `1` and `a`, via the
/// chain `c_1 = u^{-1}`, `c_2 = a u`.
pub fn orthogonal_case(a: &Octonion, u: &Octonion) -> Result<IsoWitness> {
    sphere_check(a)?;
    let r = a.ring();
    let one = a.algebra().one();
    if !r.is_zero(&u.polar(&one)) || !r.is_zero(&u.polar(a)) {
        return Err(Error::PreconditionFailed(format!("{u} is not orthogonal to 1 and a")));
    }
    let w = chain_iso_item2(&[u.inverse()?, a.mul(u)])?;
    debug_assert_eq!(w.target.a(), a);
    Ok(w)
}

/// `C ≅ C^{a,ā}` for `b(a, 1) = 0`, via `a = (-a)³`.
pub fn traceless_case(a: &Octonion) -> Result<IsoWitness> {
    sphere_check(a)?;
    if !a.ring().is_zero(&a.trace()) {
        return Err(Error::PreconditionFailed(format!("tr({a}) != 0")));
    }
    cube_case(&a.neg())
}

/// Basis of `1^⊥ ∩ a^⊥` over a field.
pub fn orthogonal_pair_complement(a: &Octonion) -> Result<Vec<Octonion>> {
    let alg = a.algebra();
    let one = alg.one();
    let rows = vec![
        (0..DIM).map(|j| alg.basis(j).polar(&one)).collect(),
        (0..DIM).map(|j| alg.basis(j).polar(a)).collect(),
    ];
    let kernel = Matrix::from_rows(alg.ring(), rows)?.kernel()?;
    kernel.into_iter().map(|v| alg.element(v)).collect()
}

/// The field argument: an anisotropic vector in `1^⊥ ∩ a^⊥` exists because
/// that space has dimension at least 6 and is too large to be totally
/// singular. The sweep tries the kernel basis, then pairwise sums.
pub fn field_trivialize(a: &Octonion) -> Result<IsoWitness> {
    let r = a.ring();
    if !r.is_field() {
        return Err(Error::UnsupportedRing {
            ring: r.to_string(),
            what: "field trivialisation".into(),
        });
    }
    sphere_check(a)?;
    let basis = orthogonal_pair_complement(a)?;
    let mut candidates = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(basis[i].add(&basis[j]));
        }
    }
    let u = candidates
        .into_iter()
        .find(|u| !r.is_zero(&u.norm()))
        .ok_or_else(|| Error::NotFound(format!("anisotropic vector orthogonal to 1 and {a}")))?;
    orthogonal_case(a, &u)
}

/// Tries the sufficient conditions in turn; `Ok(None)` means no witness was
/// found, which over a non-field does not rule out an isomorphism.
pub fn trivialize(a: &Octonion) -> Result<Option<IsoWitness>> {
    sphere_check(a)?;
    if a.ring().is_field() {
        return field_trivialize(a).map(Some);
    }
    if a.ring().is_zero(&a.trace()) {
        return traceless_case(a).map(Some);
    }
    if *a == a.algebra().one() {
        return cube_case(a).map(Some);
    }
    // small search for u ⊥ 1, a with q(u) a unit, coordinates in {-1, 0, 1}
    let alg = a.algebra();
    let r = alg.ring();
    let digits = [r.zero(), r.one(), r.neg(&r.one())];
    let one = alg.one();
    for code in 1..3usize.pow(DIM as u32) {
        let mut k = code;
        let coords: Vec<Scalar> = (0..DIM)
            .map(|_| {
                let d = digits[k % 3].clone();
                k /= 3;
                d
            })
            .collect();
        let u = alg.element(coords)?;
        if u.is_invertible() && r.is_zero(&u.polar(&one)) && r.is_zero(&u.polar(a)) {
            return orthogonal_case(a, &u).map(Some);
        }
    }
    Ok(None)
}
