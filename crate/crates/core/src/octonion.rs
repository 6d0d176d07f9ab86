//! Octonion algebras given by structure constants: the split Zorn algebra,
//! Cayley–Dickson doublings, and element arithmetic.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{BilinearMap, Matrix};
use crate::quadform::QuadraticForm;
use crate::report::Check;
use crate::ring::{RingContext, Scalar};

pub const DIM: usize = 8;

/// Human-readable names of the Zorn basis `(E11, E22, u1, u2, u3, w1, w2, w3)`.
pub const ZORN_BASIS: [&str; DIM] = ["E11", "E22", "u1", "u2", "u3", "w1", "w2", "w3"];

struct AlgebraInner {
    ring: RingContext,
    label: String,
    tensor: BilinearMap,
    unit: Vec<Scalar>,
    norm: QuadraticForm,
    /// Matrix of `x -> x̄`.
    conj: Matrix,
    /// Built by [`OctonionAlgebra::zorn`], which enables the Zorn sampler.
    split: bool,
    /// `x • y = x̄ ȳ`, built on first use.
    para: OnceLock<BilinearMap>,
    /// Inverse of the polar Gram matrix, if it is invertible; built on first use.
    polar_inverse: OnceLock<Option<Matrix>>,
}

/// An 8-dimensional unital algebra with a quadratic norm; a cheap shared handle.
#[derive(Clone)]
pub struct OctonionAlgebra(Arc<AlgebraInner>);

impl PartialEq for OctonionAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring
                && self.0.tensor == other.0.tensor
                && self.0.unit == other.0.unit
                && self.0.norm == other.0.norm)
    }
}

impl Eq for OctonionAlgebra {}

impl fmt::Debug for OctonionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OctonionAlgebra({})", self.0.label)
    }
}

impl fmt::Display for OctonionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

fn cross(r: &RingContext, x: &[Scalar], y: &[Scalar]) -> [Scalar; 3] {
    let c = |i: usize, j: usize| r.sub(&r.mul(&x[i], &y[j]), &r.mul(&x[j], &y[i]));
    [c(1, 2), c(2, 0), c(0, 1)]
}

fn zorn_product(r: &RingContext, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let (a1, b1, v1, w1) = (&x[0], &x[1], &x[2..5], &x[5..8]);
    let (a2, b2, v2, w2) = (&y[0], &y[1], &y[2..5], &y[5..8]);
    let vw = cross(r, w1, w2);
    let vv = cross(r, v1, v2);
    let mut out = Vec::with_capacity(DIM);
    out.push(r.add(&r.mul(a1, a2), &r.dot(v1, w2)));
    out.push(r.add(&r.mul(b1, b2), &r.dot(w1, v2)));
    for i in 0..3 {
        let t = r.add(&r.mul(a1, &v2[i]), &r.mul(b2, &v1[i]));
        out.push(r.sub(&t, &vw[i]));
    }
    for i in 0..3 {
        let t = r.add(&r.mul(a2, &w1[i]), &r.mul(b1, &w2[i]));
        out.push(r.add(&t, &vv[i]));
    }
    out
}

/// One Cayley–Dickson level: `(a,b)(c,d) = (ac + p d̄ b, da + b c̄)`.
fn cd_product(r: &RingContext, params: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    if params.is_empty() {
        return vec![r.mul(&x[0], &y[0])];
    }
    let (p, rest) = params.split_last().unwrap();
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_product(r, rest, a, c);
    let dbar_b = cd_product(r, rest, &cd_conj(r, d), b);
    let da = cd_product(r, rest, d, a);
    let b_cbar = cd_product(r, rest, b, &cd_conj(r, c));
    let mut out: Vec<Scalar> = ac.iter().zip(&dbar_b).map(|(s, t)| r.add(s, &r.mul(p, t))).collect();
    out.extend(da.iter().zip(&b_cbar).map(|(s, t)| r.add(s, t)));
    out
}

fn cd_conj(r: &RingContext, x: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(x.len());
    out.push(x[0].clone());
    out.extend(x[1..].iter().map(|c| r.neg(c)));
    out
}

fn basis_vector(r: &RingContext, i: usize) -> Vec<Scalar> {
    let mut v = vec![r.zero(); DIM];
    v[i] = r.one();
    v
}

/// Splits at top-level commas, ignoring commas inside brackets or parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl OctonionAlgebra {
    /// Assembles an algebra from structure constants, unit and norm; the
    /// norm must be regular.
    pub fn from_parts(label: impl Into<String>, tensor: BilinearMap, unit: Vec<Scalar>, norm: QuadraticForm) -> Result<Self> {
        let ring = tensor.ring().clone();
        if tensor.dim() != DIM || unit.len() != DIM || norm.rank() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                got: tensor.dim(),
            });
        }
        if !norm.is_regular() {
            return Err(Error::NotRegular);
        }
        let mut inner = AlgebraInner {
            ring: ring.clone(),
            label: label.into(),
            tensor,
            unit,
            norm,
            conj: Matrix::zeros(&ring, DIM, DIM),
            split: false,
            para: OnceLock::new(),
            polar_inverse: OnceLock::new(),
        };
        // x̄ = b(x, 1) 1 - x
        let traces: Vec<Scalar> = (0..DIM)
            .map(|j| inner.norm.polar(&basis_vector(&ring, j), &inner.unit))
            .collect::<Result<_>>()?;
        inner.conj = Matrix::from_fn(&ring, DIM, DIM, |i, j| {
            let t = ring.mul(&traces[j], &inner.unit[i]);
            if i == j {
                ring.sub(&t, &ring.one())
            } else {
                t
            }
        });
        Ok(OctonionAlgebra(Arc::new(inner)))
    }

    /// The split octonions as Zorn vector matrices `[[a, v], [w, b]]` in the
    /// basis `(E11, E22, u1, u2, u3, w1, w2, w3)`, with norm `ab - v·w`.
    pub fn zorn(ring: &RingContext) -> Self {
        let r = ring;
        let tensor = BilinearMap::from_fn(r, DIM, |i, j| zorn_product(r, &basis_vector(r, i), &basis_vector(r, j)));
        let mut unit = vec![r.zero(); DIM];
        unit[0] = r.one();
        unit[1] = r.one();
        let mut entries = vec![(0, 1, r.one())];
        for i in 0..3 {
            entries.push((2 + i, 5 + i, r.from_i64(-1)));
        }
        let norm = QuadraticForm::from_entries(r, DIM, &entries).expect("indices in range");
        let alg = Self::from_parts(format!("zorn({r})"), tensor, unit, norm).expect("the Zorn norm is regular over every ring");
        let mut inner = Arc::try_unwrap(alg.0).ok().expect("fresh handle");
        inner.split = true;
        OctonionAlgebra(Arc::new(inner))
    }

    /// Three Cayley–Dickson doublings of the base ring with parameters
    /// `(α, β, γ)`, one per stage. The norm of `(a, b)` at a stage with
    /// parameter `p` is `N(a) - p N(b)`, so `(-1, -1, -1)` gives `Σ x_i^2`.
    pub fn cayley_dickson(ring: &RingContext, alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Result<Self> {
        let r = ring;
        let params = [alpha.clone(), beta.clone(), gamma.clone()];
        for p in &params {
            if !r.is_unit(p) {
                return Err(Error::NonUnitParameter(r.format(p)));
            }
        }
        let tensor = BilinearMap::from_fn(r, DIM, |i, j| cd_product(r, &params, &basis_vector(r, i), &basis_vector(r, j)));
        let unit = basis_vector(r, 0);
        let diag: Vec<Scalar> = (0..DIM)
            .map(|i| {
                (0..3).filter(|k| i >> k & 1 == 1).fold(r.one(), |acc, k| r.mul(&acc, &r.neg(&params[k])))
            })
            .collect();
        let norm = QuadraticForm::diagonal(r, &diag);
        let label = format!("cd({r},{},{},{})", r.format(alpha), r.format(beta), r.format(gamma));
        Self::from_parts(label, tensor, unit, norm)
    }

    /// Parses `zorn(<ring>)` or `cd(<ring>,α,β,γ)`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("algebra spec {spec}: expected zorn(<ring>) or cd(<ring>,a,b,c)"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let parts = split_top_level(args);
        match (head, parts.as_slice()) {
            ("zorn", [ring]) => Ok(Self::zorn(&RingContext::parse(ring)?)),
            ("cd", [ring, a, b, c]) => {
                let r = RingContext::parse(ring)?;
                Self::cayley_dickson(&r, &r.parse_scalar(a)?, &r.parse_scalar(b)?, &r.parse_scalar(c)?)
            }
            _ => Err(bad()),
        }
    }

    pub fn ring(&self) -> &RingContext {
        &self.0.ring
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn tensor(&self) -> &BilinearMap {
        &self.0.tensor
    }

    pub fn norm(&self) -> &QuadraticForm {
        &self.0.norm
    }

    /// Matrix of the conjugation `κ`.
    pub fn conj_matrix(&self) -> &Matrix {
        &self.0.conj
    }

    pub fn same_as(&self, other: &OctonionAlgebra) -> bool {
        self == other
    }

    // ---------------------------------------------------------------------
    // elements

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Octonion> {
        if coords.len() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                got: coords.len(),
            });
        }
        Ok(Octonion {
            alg: self.clone(),
            coords,
        })
    }

    fn wrap(&self, coords: Vec<Scalar>) -> Octonion {
        debug_assert_eq!(coords.len(), DIM);
        Octonion {
            alg: self.clone(),
            coords,
        }
    }

    pub fn zero(&self) -> Octonion {
        self.wrap(vec![self.ring().zero(); DIM])
    }

    pub fn one(&self) -> Octonion {
        self.wrap(self.0.unit.clone())
    }

    pub fn basis(&self, i: usize) -> Octonion {
        self.wrap(basis_vector(self.ring(), i))
    }

    pub fn from_scalar(&self, s: &Scalar) -> Octonion {
        self.one().scale(s)
    }

    /// Parses 8 comma-separated scalar literals in basis order.
    pub fn parse_element(&self, s: &str) -> Result<Octonion> {
        let parts = split_top_level(s.trim());
        if parts.len() != DIM {
            return Err(Error::Parse(format!("expected {DIM} comma-separated coordinates, got {}", parts.len())));
        }
        let coords = parts.iter().map(|p| self.ring().parse_scalar(p)).collect::<Result<_>>()?;
        self.element(coords)
    }

    // ---------------------------------------------------------------------
    // coordinate-level arithmetic

    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.0.tensor.apply(x, y)
    }

    pub fn conj_coords(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.0.conj.mul_vec(x).expect("dimension 8")
    }

    pub fn norm_coords(&self, x: &[Scalar]) -> Scalar {
        self.0.norm.evaluate(x).expect("dimension 8")
    }

    pub fn polar_coords(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.0.norm.polar(x, y).expect("dimension 8")
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.0.unit
    }

    // ---------------------------------------------------------------------
    // multiplication operators

    /// `L_a`: column `j` is `a e_j`.
    pub fn left_mul(&self, a: &Octonion) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..DIM)
            .map(|j| self.mul_coords(&a.coords, &basis_vector(self.ring(), j)))
            .collect();
        Matrix::from_columns(self.ring(), &cols).expect("8 columns of length 8")
    }

    /// `R_a`: column `j` is `e_j a`.
    pub fn right_mul(&self, a: &Octonion) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..DIM)
            .map(|j| self.mul_coords(&basis_vector(self.ring(), j), &a.coords))
            .collect();
        Matrix::from_columns(self.ring(), &cols).expect("8 columns of length 8")
    }

    /// `B_a = L_a R_a`, column `j` is `a e_j a`.
    pub fn bimul(&self, a: &Octonion) -> Matrix {
        self.left_mul(a).mul(&self.right_mul(a)).expect("8x8")
    }

    /// The para-octonion product `x • y = x̄ ȳ`.
    pub fn para_tensor(&self) -> &BilinearMap {
        self.0.para.get_or_init(|| {
            let r = self.ring();
            BilinearMap::from_fn(r, DIM, |i, j| {
                let xi = self.conj_coords(&basis_vector(r, i));
                let yj = self.conj_coords(&basis_vector(r, j));
                self.mul_coords(&xi, &yj)
            })
        })
    }

    /// `G^{-1}` for the polar Gram matrix `G` of the norm, when the norm is regular.
    pub fn polar_inverse(&self) -> Option<&Matrix> {
        self.0
            .polar_inverse
            .get_or_init(|| self.norm().polar_matrix().inverse().ok())
            .as_ref()
    }

    // ---------------------------------------------------------------------
    // sampling

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Octonion {
        self.wrap((0..DIM).map(|_| self.ring().random(rng)).collect())
    }

    fn is_zorn(&self) -> bool {
        self.0.split
    }

    /// A random element of norm `lambda`, or `None` when no sampler applies.
    ///
    /// Finite rings use rejection sampling, the Zorn algebra the
    /// parametrisation `b = a^{-1}(λ + v·w)`, and other algebras with
    /// `λ = 1` products of `y^2 / q(y)`.
    pub fn random_with_norm<R: Rng + ?Sized>(&self, lambda: &Scalar, rng: &mut R) -> Option<Octonion> {
        let r = self.ring();
        if r.size().is_some() {
            for _ in 0..100_000 {
                let x = self.random_element(rng);
                if x.norm() == *lambda {
                    return Some(x);
                }
            }
        }
        if self.is_zorn() && r.is_unit(lambda) {
            let a = r.random_unit(rng);
            let v: Vec<Scalar> = (0..3).map(|_| r.random(rng)).collect();
            let w: Vec<Scalar> = (0..3).map(|_| r.random(rng)).collect();
            let b = r.mul(&r.inv(&a)?, &r.add(lambda, &r.dot(&v, &w)));
            let mut coords = vec![a, b];
            coords.extend(v);
            coords.extend(w);
            return Some(self.wrap(coords));
        }
        if !r.is_one(lambda) {
            return None;
        }
        let mut acc = self.one();
        for _ in 0..2 {
            let y = (0..1000).map(|_| self.random_element(rng)).find(|y| y.is_invertible())?;
            let s = y.mul(&y).scale(&r.inv(&y.norm())?);
            acc = acc.mul(&s);
        }
        Some(acc)
    }

    /// A random element of norm 1.
    pub fn random_sphere<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Octonion> {
        self.random_with_norm(&self.ring().one(), rng)
    }

    /// A random element whose norm is a unit.
    pub fn random_invertible<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Octonion> {
        let r = self.ring();
        if r.size().is_some() {
            return (0..100_000).map(|_| self.random_element(rng)).find(|x| x.is_invertible());
        }
        if self.is_zorn() {
            return self.random_with_norm(&r.random_unit(rng), rng);
        }
        (0..1000).map(|_| self.random_element(rng)).find(|y| y.is_invertible())
    }

    // ---------------------------------------------------------------------
    // structure checks

    /// Solves `tr(c) = 1`: by linear algebra over fields, otherwise by
    /// looking for a basis element of unit trace.
    pub fn trace_one_element(&self) -> Result<Octonion> {
        let r = self.ring();
        let traces: Vec<Scalar> = (0..DIM).map(|j| self.basis(j).trace()).collect();
        if r.is_field() {
            let m = Matrix::from_rows(r, vec![traces])?;
            let rhs = Matrix::from_rows(r, vec![vec![r.one()]])?;
            let sol = m.solve_linear(&rhs).map_err(|_| Error::NotFound("element of trace 1".into()))?;
            return self.element(sol.particular.column(0));
        }
        for (j, t) in traces.iter().enumerate() {
            if let Some(u) = r.inv(t) {
                return Ok(self.basis(j).scale(&u));
            }
        }
        Err(Error::NotFound(format!("element of trace 1 among basis multiples over {r}")))
    }

    /// Basis of `x^⊥` for invertible `x` over a field, after checking that the
    /// restriction of the norm to it is non-singular.
    pub fn orthogonal_complement(&self, x: &Octonion) -> Result<Vec<Octonion>> {
        let r = self.ring();
        if !r.is_field() {
            return Err(Error::UnsupportedRing {
                ring: r.to_string(),
                what: "orthogonal complement".into(),
            });
        }
        if !x.is_invertible() {
            return Err(Error::NotInvertible(r.format(&x.norm())));
        }
        let functional: Vec<Scalar> = (0..DIM).map(|j| self.polar_coords(&basis_vector(r, j), &x.coords)).collect();
        let kernel = Matrix::from_rows(r, vec![functional])?.kernel()?;
        let restricted = self.norm().restrict(&kernel)?;
        if kernel.len() != DIM - 1 || !restricted.is_nonsingular()? {
            return Err(Error::PreconditionFailed(format!(
                "complement of {} has dimension {} or a singular norm",
                x,
                kernel.len()
            )));
        }
        Ok(kernel.into_iter().map(|v| self.wrap(v)).collect())
    }

    /// Basis of `1^⊥` (seven trace-zero vectors); fields only.
    pub fn unit_complement_basis(&self) -> Result<Vec<Octonion>> {
        self.orthogonal_complement(&self.one())
    }

    /// Writes `z = λ x + w` with `w ⊥ ā x`, for invertible `x` and `tr(a) = 1`.
    pub fn summand_split(&self, x: &Octonion, a: &Octonion, z: &Octonion) -> Result<(Scalar, Octonion)> {
        let r = self.ring();
        let qinv = r.inv(&x.norm()).ok_or_else(|| Error::NotInvertible(r.format(&x.norm())))?;
        let lambda = r.mul(&qinv, &a.mul(z).polar(x));
        let w = z.sub(&x.scale(&lambda));
        Ok((lambda, w))
    }

    /// Dimensions of the commutant `{x : xy = yx}` and of
    /// `{x : y(xz) = (yx)z}`; each should be 1 (the scalars). Fields only.
    pub fn centre_dimensions(&self) -> Result<(usize, usize)> {
        let r = self.ring();
        if !r.is_field() {
            return Err(Error::UnsupportedRing {
                ring: r.to_string(),
                what: "centre computation".into(),
            });
        }
        let mut comm_rows = Vec::new();
        let mut assoc_rows = Vec::new();
        let left: Vec<Matrix> = (0..DIM).map(|i| self.left_mul(&self.basis(i))).collect();
        let right: Vec<Matrix> = (0..DIM).map(|i| self.right_mul(&self.basis(i))).collect();
        for i in 0..DIM {
            let d = left[i].sub(&right[i])?;
            comm_rows.extend(d.to_rows());
            for j in 0..DIM {
                // x -> e_i (x e_j) - (e_i x) e_j
                let m = left[i].mul(&right[j])?.sub(&right[j].mul(&left[i])?)?;
                assoc_rows.extend(m.to_rows());
            }
        }
        let comm = Matrix::from_rows(r, comm_rows)?.kernel()?.len();
        let assoc = Matrix::from_rows(r, assoc_rows)?.kernel()?.len();
        Ok((comm, assoc))
    }

    /// Randomised identity checks plus exact checks on the basis.
    pub fn identity_suite<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Vec<Check> {
        identity_suite(self, samples, rng)
    }
}

/// An element of a specific [`OctonionAlgebra`].
#[derive(Clone, PartialEq, Eq)]
pub struct Octonion {
    alg: OctonionAlgebra,
    coords: Vec<Scalar>,
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion[{self}] in {}", self.alg)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.alg.ring();
        let parts: Vec<String> = self.coords.iter().map(|c| r.format(c)).collect();
        f.write_str(&parts.join(","))
    }
}

impl Octonion {
    pub fn algebra(&self) -> &OctonionAlgebra {
        &self.alg
    }

    pub fn ring(&self) -> &RingContext {
        self.alg.ring()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    /// Same algebra, new coordinates.
    pub fn with_coords(&self, coords: Vec<Scalar>) -> Octonion {
        self.alg.wrap(coords)
    }

    fn assert_same(&self, other: &Octonion) {
        assert!(
            Arc::ptr_eq(&self.alg.0, &other.alg.0) || self.alg == other.alg,
            "octonions from different algebras: {} and {}",
            self.alg,
            other.alg
        );
    }

    pub fn checked_mul(&self, other: &Octonion) -> Result<Octonion> {
        if !(Arc::ptr_eq(&self.alg.0, &other.alg.0) || self.alg == other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.alg.wrap(self.alg.mul_coords(&self.coords, &other.coords)))
    }

    /// Product in the algebra; panics on operands from different algebras.
    pub fn mul(&self, other: &Octonion) -> Octonion {
        self.assert_same(other);
        self.alg.wrap(self.alg.mul_coords(&self.coords, &other.coords))
    }

    pub fn add(&self, other: &Octonion) -> Octonion {
        self.assert_same(other);
        let r = self.ring();
        self.alg.wrap(self.coords.iter().zip(&other.coords).map(|(a, b)| r.add(a, b)).collect())
    }

    pub fn sub(&self, other: &Octonion) -> Octonion {
        self.assert_same(other);
        let r = self.ring();
        self.alg.wrap(self.coords.iter().zip(&other.coords).map(|(a, b)| r.sub(a, b)).collect())
    }

    pub fn neg(&self) -> Octonion {
        let r = self.ring();
        self.alg.wrap(self.coords.iter().map(|a| r.neg(a)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Octonion {
        let r = self.ring();
        self.alg.wrap(self.coords.iter().map(|a| r.mul(s, a)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| self.ring().is_zero(c))
    }

    pub fn norm(&self) -> Scalar {
        self.alg.norm_coords(&self.coords)
    }

    pub fn polar(&self, other: &Octonion) -> Scalar {
        self.alg.polar_coords(&self.coords, &other.coords)
    }

    /// `tr(x) = b(x, 1)`.
    pub fn trace(&self) -> Scalar {
        self.alg.polar_coords(&self.coords, self.alg.unit_coords())
    }

    /// `x̄ = tr(x) 1 - x`.
    pub fn conj(&self) -> Octonion {
        self.alg.wrap(self.alg.conj_coords(&self.coords))
    }

    pub fn is_invertible(&self) -> bool {
        self.ring().is_unit(&self.norm())
    }

    /// `x̄ / q(x)`.
    pub fn inverse(&self) -> Result<Octonion> {
        let r = self.ring();
        let n = self.norm();
        let inv = r.inv(&n).ok_or_else(|| Error::NotInvertible(r.format(&n)))?;
        Ok(self.conj().scale(&inv))
    }

    pub fn pow(&self, e: u32) -> Octonion {
        (0..e).fold(self.alg.one(), |acc, _| acc.mul(self))
    }

    pub fn to_json(&self) -> Value {
        let r = self.ring();
        json!(self.coords.iter().map(|c| r.format(c)).collect::<Vec<_>>())
    }
}

pub(crate) fn counterexample(alg: &OctonionAlgebra, elems: &[(&str, &Octonion)]) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("ring".into(), json!(alg.ring().to_string()));
    map.insert("algebra".into(), json!(alg.label()));
    for (name, x) in elems {
        map.insert((*name).into(), x.to_json());
    }
    Value::Object(map)
}

fn identity_suite<R: Rng + ?Sized>(alg: &OctonionAlgebra, samples: usize, rng: &mut R) -> Vec<Check> {
    let r = alg.ring();
    type Law = fn(&Octonion, &Octonion, &Octonion) -> (Octonion, Octonion);
    let laws: [(&str, Law); 6] = [
        ("left alternative x(xy) = (xx)y", |x, y, _| (x.mul(&x.mul(y)), x.mul(x).mul(y))),
        ("right alternative (yx)x = y(xx)", |x, y, _| (y.mul(x).mul(x), y.mul(&x.mul(x)))),
        ("flexible (xy)x = x(yx)", |x, y, _| (x.mul(y).mul(x), x.mul(&y.mul(x)))),
        ("middle Moufang c(xy)c = (cx)(yc)", |x, y, c| (c.mul(&x.mul(y)).mul(c), c.mul(x).mul(&y.mul(c)))),
        ("left Moufang c(x(cy)) = ((cx)c)y", |x, y, c| (c.mul(&x.mul(&c.mul(y))), c.mul(x).mul(c).mul(y))),
        ("right Moufang ((yc)x)c = y(c(xc))", |x, y, c| (y.mul(c).mul(x).mul(c), y.mul(&c.mul(&x.mul(c))))),
    ];
    let triples: Vec<(Octonion, Octonion, Octonion)> = (0..samples)
        .map(|_| (alg.random_element(rng), alg.random_element(rng), alg.random_element(rng)))
        .collect();
    let mut checks = Vec::new();
    for (name, law) in laws {
        let bad = triples.iter().find(|(x, y, c)| {
            let (lhs, rhs) = law(x, y, c);
            lhs != rhs
        });
        checks.push(Check::from_outcome(
            name,
            format!("{samples} random triples"),
            bad.map(|(x, y, c)| counterexample(alg, &[("x", x), ("y", y), ("c", c)])),
        ));
    }
    let bad = triples.iter().find(|(x, y, _)| x.mul(y).norm() != r.mul(&x.norm(), &y.norm()));
    checks.push(Check::from_outcome(
        "composition q(xy) = q(x)q(y)",
        format!("{samples} random pairs"),
        bad.map(|(x, y, _)| counterexample(alg, &[("x", x), ("y", y)])),
    ));
    let bad = triples.iter().find(|(x, _, _)| x.mul(&x.conj()) != alg.from_scalar(&x.norm()));
    checks.push(Check::from_outcome(
        "x conj(x) = q(x) 1",
        format!("{samples} random elements"),
        bad.map(|(x, _, _)| counterexample(alg, &[("x", x)])),
    ));
    let bad = triples.iter().find(|(x, y, _)| x.mul(y).conj() != y.conj().mul(&x.conj()));
    checks.push(Check::from_outcome(
        "conj(xy) = conj(y) conj(x)",
        format!("{samples} random pairs"),
        bad.map(|(x, y, _)| counterexample(alg, &[("x", x), ("y", y)])),
    ));
    let one = alg.one();
    let bad = (0..DIM).map(|i| alg.basis(i)).find(|e| one.mul(e) != *e || e.mul(&one) != *e);
    checks.push(Check::from_outcome(
        "unit law on basis",
        "1 e_i = e_i 1 = e_i",
        bad.map(|e| counterexample(alg, &[("x", &e)])),
    ));
    checks.push(if alg.norm().is_regular() {
        Check::pass("norm is regular", "det(U + U^T) is a unit")
    } else {
        Check::fail("norm is regular", "det(U + U^T) is not a unit", None)
    });
    if r.is_field() {
        match alg.centre_dimensions() {
            Ok((1, 1)) => checks.push(Check::pass("centre is R1", "commutant and nucleus conditions have 1-dimensional solution spaces")),
            Ok((c, a)) => checks.push(Check::fail("centre is R1", format!("solution dimensions {c} and {a}"), None)),
            Err(e) => checks.push(Check::fail("centre is R1", e.to_string(), None)),
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{is_composition, is_composition_exhaustive};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zorn(spec: &str) -> OctonionAlgebra {
        OctonionAlgebra::zorn(&RingContext::parse(spec).unwrap())
    }

    #[test]
    fn zorn_basis_products() {
        let c = zorn("Z");
        let (e11, e22, u1, w1) = (c.basis(0), c.basis(1), c.basis(2), c.basis(5));
        assert_eq!(e11.mul(&e11), e11);
        assert!(e11.mul(&e22).is_zero());
        assert_eq!(c.one().mul(&u1), u1);
        assert_eq!(u1.mul(&w1), e11);
        assert_eq!(w1.mul(&u1), e22);
        assert_eq!(c.one().norm(), c.ring().one());
        // b(1, E11) = q(1 + E11) - q(1) - q(E11) = 2 - 1 - 0
        assert_eq!(c.one().polar(&e11), c.ring().one());
        assert_eq!(e11.trace(), c.ring().one());
    }

    #[test]
    fn identity_suites_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for alg in [zorn("F2"), zorn("Z/8"), zorn("Q[t,1/t]"), OctonionAlgebra::parse("cd(Q,-1,-1,-1)").unwrap()] {
            for check in alg.identity_suite(200, &mut rng) {
                assert!(check.passed(), "{alg}: {check:?}");
            }
        }
    }

    #[test]
    fn cayley_dickson_norms() {
        let q = RingContext::rationals();
        let c = OctonionAlgebra::parse("cd(Q,-1,-1,-1)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let x = c.random_element(&mut rng);
            let sum = q.dot(x.coords(), x.coords());
            assert_eq!(x.norm(), sum);
            assert_eq!(x.is_zero(), q.is_zero(&x.norm()));
        }
        // (1,1,1): e_0 + e_1 is isotropic, q = 1 - 1
        let s = OctonionAlgebra::parse("cd(Q,1,1,1)").unwrap();
        let v = s.basis(0).add(&s.basis(1));
        assert!(q.is_zero(&v.norm()));
        assert!(!v.is_zero());
        assert!(matches!(OctonionAlgebra::parse("cd(Z,2,-1,-1)"), Err(Error::NonUnitParameter(_))));
        assert!(matches!(OctonionAlgebra::parse("cd(Z,-1,-1,-1)"), Err(Error::NotRegular)));
    }

    #[test]
    fn conjugation_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = zorn("Z");
        assert_eq!(c.one().conj(), c.one());
        assert!(matches!(c.basis(0).inverse(), Err(Error::NotInvertible(_))));
        assert_eq!(c.one().inverse().unwrap(), c.one());
        for _ in 0..100 {
            let x = c.random_element(&mut rng);
            assert_eq!(x.conj().conj(), x);
            assert_eq!(x.add(&x.conj()), c.from_scalar(&x.trace()));
            assert_eq!(x.mul(&x.conj()), c.from_scalar(&x.norm()));
        }
        let f3 = zorn("F3");
        for _ in 0..100 {
            let a = f3.random_sphere(&mut rng).unwrap();
            let ai = a.inverse().unwrap();
            assert!(a.mul(&ai) == f3.one() && ai.mul(&a) == f3.one());
        }
    }

    #[test]
    fn multiplication_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let c = zorn("Z");
        assert!(c.left_mul(&c.one()).is_identity());
        let r = c.ring().clone();
        for _ in 0..50 {
            let a = c.random_element(&mut rng);
            let (l, rr) = (c.left_mul(&a), c.right_mul(&a));
            assert_eq!(l.mul(&rr).unwrap(), rr.mul(&l).unwrap());
            let b = c.bimul(&a);
            let x = c.random_element(&mut rng);
            let bx = c.element(b.mul_vec(x.coords()).unwrap()).unwrap();
            assert_eq!(bx, a.mul(&x).mul(&a));
            assert_eq!(bx.norm(), r.mul(&r.mul(&a.norm(), &a.norm()), &x.norm()));
            assert_eq!(b.is_invertible(), a.is_invertible());
        }
    }

    #[test]
    fn composition_checker_on_octonions() {
        for spec in ["Z", "F3", "Q[t]"] {
            let c = zorn(spec);
            let q = c.norm();
            assert!(is_composition(q, q, q, c.tensor()).unwrap());
            assert!(is_composition(q, q, q, c.para_tensor()).unwrap());
            assert!(!is_composition(q, q, q, &BilinearMap::zero(c.ring(), DIM)).unwrap());
        }
        let c = zorn("F2");
        let q = c.norm();
        assert!(is_composition_exhaustive(q, q, q, c.tensor(), 1 << 8).unwrap());
        assert!(is_composition_exhaustive(q, q, q, c.para_tensor(), 1 << 8).unwrap());
    }

    #[test]
    fn complements_and_trace_sections() {
        for spec in ["Q", "F2", "F3", "F4"] {
            let c = zorn(spec);
            let basis = c.unit_complement_basis().unwrap();
            assert_eq!(basis.len(), 7);
            for v in &basis {
                assert!(c.ring().is_zero(&v.trace()));
            }
            let t = c.trace_one_element().unwrap();
            assert!(c.ring().is_one(&t.trace()));
        }
        let z = zorn("Z");
        assert_eq!(z.trace_one_element().unwrap(), z.basis(0));
        assert!(zorn("Z/8").trace_one_element().is_ok());
        let cd = OctonionAlgebra::parse("cd(Q,-1,-1,-1)").unwrap();
        let half = cd.one().scale(&cd.ring().parse_scalar("1/2").unwrap());
        assert!(cd.ring().is_one(&half.trace()));
        assert!(zorn("Z").unit_complement_basis().is_err());
    }

    #[test]
    fn summand_decomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in ["F2", "Z", "Z/8"] {
            let c = zorn(spec);
            let a = c.trace_one_element().unwrap();
            for _ in 0..50 {
                let x = c.random_invertible(&mut rng).unwrap();
                let z = c.random_element(&mut rng);
                let (lambda, w) = c.summand_split(&x, &a, &z).unwrap();
                assert!(c.ring().is_zero(&w.polar(&a.conj().mul(&x))), "{spec}");
                assert_eq!(x.scale(&lambda).add(&w), z);
            }
        }
    }

    #[test]
    fn complements_of_invertible_elements_over_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for spec in ["F2", "F3", "Q"] {
            let c = zorn(spec);
            for _ in 0..20 {
                let x = c.random_invertible(&mut rng).unwrap();
                assert_eq!(c.orthogonal_complement(&x).unwrap().len(), 7);
            }
        }
    }

    #[test]
    fn samplers_hit_their_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ["zorn(Z)", "zorn(Q[t,1/t])", "zorn(F5)", "cd(Q,-1,-1,-1)", "zorn(Z/8)"] {
            let c = OctonionAlgebra::parse(spec).unwrap();
            for _ in 0..20 {
                assert!(c.ring().is_one(&c.random_sphere(&mut rng).unwrap().norm()), "{spec}");
                assert!(c.random_invertible(&mut rng).unwrap().is_invertible(), "{spec}");
            }
        }
    }

    #[test]
    fn parse_specs_and_elements() {
        let c = OctonionAlgebra::parse("zorn(Q[t,1/t])").unwrap();
        assert_eq!(c.label(), "zorn(Q[t,1/t])");
        let x = c.parse_element("1,t^-1,0,0,0,1/2,0,0").unwrap();
        assert_eq!(c.parse_element(&x.to_string()).unwrap(), x);
        assert!(c.parse_element("1,2").is_err());
        assert!(OctonionAlgebra::parse("quat(Q)").is_err());
        let other = zorn("Q");
        assert!(matches!(other.one().checked_mul(&OctonionAlgebra::parse("cd(Q,-1,-1,-1)").unwrap().one()), Err(Error::AlgebraMismatch)));
    }
}
