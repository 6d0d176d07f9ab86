//! The Clifford algebra of the norm form through its faithful image in
//! `End(C ⊕ C)`: 16x16 matrices, the canonical involution, the spin group and
//! the map to related triples.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::octonion::{Octonion, OctonionAlgebra, DIM};
use crate::triality::RelatedTriple;

const N: usize = 2 * DIM;

/// An element of `End(C ⊕ C)` viewed as a Clifford algebra element.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement {
    alg: OctonionAlgebra,
    m: Matrix,
}

impl CliffordElement {
    pub fn new(alg: &OctonionAlgebra, m: Matrix) -> Result<Self> {
        if m.rows() != N || m.cols() != N {
            return Err(Error::DimensionMismatch { expected: N, got: m.rows() });
        }
        Ok(CliffordElement { alg: alg.clone(), m })
    }

    pub fn identity(alg: &OctonionAlgebra) -> Self {
        Self::scalar(alg, &alg.ring().one())
    }

    pub fn scalar(alg: &OctonionAlgebra, s: &crate::ring::Scalar) -> Self {
        CliffordElement {
            alg: alg.clone(),
            m: Matrix::scalar(alg.ring(), N, s),
        }
    }

    /// `α(x) = [[0, L_x̄ κ], [κ L_x, 0]]`.
    pub fn alpha(x: &Octonion) -> Self {
        let alg = x.algebra();
        let k = alg.conj_matrix();
        let top_right = alg.left_mul(&x.conj()).mul(k).expect("8x8");
        let bottom_left = k.mul(&alg.left_mul(x)).expect("8x8");
        let z = Matrix::zeros(alg.ring(), DIM, DIM);
        CliffordElement {
            alg: alg.clone(),
            m: Matrix::from_blocks(&z, &top_right, &bottom_left, &z).expect("8x8 blocks"),
        }
    }

    /// `diag(u3, u2)`.
    pub fn even(alg: &OctonionAlgebra, u3: &Matrix, u2: &Matrix) -> Result<Self> {
        Self::new(alg, Matrix::block_diag(u3, u2)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn algebra(&self) -> &OctonionAlgebra {
        &self.alg
    }

    pub fn mul(&self, other: &CliffordElement) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Self::new(&self.alg, self.m.mul(&other.m)?)
    }

    pub fn add(&self, other: &CliffordElement) -> Result<Self> {
        Self::new(&self.alg, self.m.add(&other.m)?)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_even() {
            let m = Matrix::block_diag(&self.u3().inverse()?, &self.u2().inverse()?)?;
            return Self::new(&self.alg, m);
        }
        Self::new(&self.alg, self.m.inverse()?)
    }

    /// Adjoint for the polar form of `q ⊥ q`: `G^{-1} m^T G`.
    pub fn sigma(&self) -> Self {
        let p = self.alg.norm().polar_matrix();
        let pi = self.alg.polar_inverse().expect("the norm of an octonion algebra is regular");
        let g = Matrix::block_diag(&p, &p).expect("8x8 blocks");
        let gi = Matrix::block_diag(pi, pi).expect("8x8 blocks");
        let m = gi.mul(&self.m.transpose()).and_then(|x| x.mul(&g)).expect("16x16");
        CliffordElement { alg: self.alg.clone(), m }
    }

    /// Off-diagonal 8x8 blocks vanish.
    pub fn is_even(&self) -> bool {
        self.m.block(0, DIM, DIM, DIM).is_zero() && self.m.block(DIM, 0, DIM, DIM).is_zero()
    }

    /// `z` with `self = α(z)`, if any.
    pub fn as_vector(&self) -> Option<Octonion> {
        let top_right = self.m.block(0, DIM, DIM, DIM);
        let one = self.alg.one();
        let zb = one.with_coords(top_right.mul_vec(one.coords()).ok()?);
        let z = zb.conj();
        (CliffordElement::alpha(&z) == *self).then_some(z)
    }

    /// `u3`, the upper-left block.
    pub fn u3(&self) -> Matrix {
        self.m.block(0, 0, DIM, DIM)
    }

    /// `u2`, the lower-right block.
    pub fn u2(&self) -> Matrix {
        self.m.block(DIM, DIM, DIM, DIM)
    }

    /// Even, invertible, `u σ(u) = 1`, and `u α(x) u^{-1} ∈ α(C)` on the basis.
    pub fn is_spin(&self) -> bool {
        self.spin_defect().is_none()
    }

    /// First reason `self` is not in the spin group.
    pub fn spin_defect(&self) -> Option<String> {
        if !self.is_even() {
            return Some("not even".into());
        }
        let Ok(inv) = self.inverse() else {
            return Some("not invertible".into());
        };
        if !self.m.mul(&self.sigma().m).map(|p| p.is_identity()).unwrap_or(false) {
            return Some("u sigma(u) != 1".into());
        }
        for i in 0..DIM {
            let conj = self.mul(&CliffordElement::alpha(&self.alg.basis(i))).and_then(|x| x.mul(&inv));
            if conj.ok().and_then(|c| c.as_vector()).is_none() {
                return Some(format!("u alpha(e_{i}) u^-1 is not a vector"));
            }
        }
        None
    }
}

/// A checked element of the spin group.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinElement(CliffordElement);

impl SpinElement {
    pub fn new(u: CliffordElement) -> Result<Self> {
        match u.spin_defect() {
            None => Ok(SpinElement(u)),
            Some(why) => Err(Error::NotSpin(why)),
        }
    }

    /// `α(x) α(y)` with `q(x) q(y) = 1`.
    pub fn from_vectors(x: &Octonion, y: &Octonion) -> Result<Self> {
        let r = x.ring();
        if !r.is_one(&r.mul(&x.norm(), &y.norm())) {
            return Err(Error::NotUnitNorm(format!("q({x}) q({y})")));
        }
        Self::new(CliffordElement::alpha(x).mul(&CliffordElement::alpha(y))?)
    }

    pub fn element(&self) -> &CliffordElement {
        &self.0
    }

    pub fn mul(&self, other: &SpinElement) -> Result<Self> {
        Ok(SpinElement(self.0.mul(&other.0)?))
    }

    /// `(u1, u2, u3)` where `α'(u) = diag(u3, u2)` and `u α(x) u^{-1} = α(u1 x)`.
    pub fn to_triple(&self) -> Result<RelatedTriple> {
        let u = &self.0;
        let alg = u.algebra();
        let inv = u.inverse()?;
        let mut cols = Vec::with_capacity(DIM);
        for i in 0..DIM {
            let conj = u.mul(&CliffordElement::alpha(&alg.basis(i)))?.mul(&inv)?;
            let z = conj
                .as_vector()
                .ok_or_else(|| Error::NotSpin(format!("u alpha(e_{i}) u^-1 is not a vector")))?;
            cols.push(z.into_coords());
        }
        let u1 = Matrix::from_columns(alg.ring(), &cols)?;
        RelatedTriple::new(alg, u1, u.u2(), u.u3())
    }

    /// `diag(t3, t2)`.
    pub fn from_triple(t: &RelatedTriple) -> Result<Self> {
        if !t.check() {
            return Err(Error::NotRelated("input triple".into()));
        }
        Self::new(CliffordElement::even(t.algebra(), t.t3(), t.t2())?)
    }
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

    #[test]
    fn alpha_squares_to_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for spec in ["Z", "F2", "Q"] {
            let c = zorn(spec);
            assert!(CliffordElement::alpha(&c.zero()).matrix().is_zero());
            assert!(CliffordElement::alpha(&c.one()).mul(&CliffordElement::alpha(&c.one())).unwrap().matrix().is_identity());
            for _ in 0..10 {
                let x = c.random_element(&mut rng);
                let y = c.random_element(&mut rng);
                let (ax, ay) = (CliffordElement::alpha(&x), CliffordElement::alpha(&y));
                assert_eq!(ax.mul(&ax).unwrap(), CliffordElement::scalar(&c, &x.norm()));
                let anti = ax.mul(&ay).unwrap().add(&ay.mul(&ax).unwrap()).unwrap();
                assert_eq!(anti, CliffordElement::scalar(&c, &x.polar(&y)), "{spec}");
                assert_eq!(ax.sigma(), ax);
                assert_eq!(ax.mul(&ay).unwrap().sigma(), ay.mul(&ax).unwrap());
            }
        }
    }

    #[test]
    fn spin_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = zorn("Q");
        assert!(CliffordElement::identity(&c).is_spin());
        assert!(!CliffordElement::alpha(&c.one()).is_spin());
        for _ in 0..5 {
            let x = c.random_invertible(&mut rng).unwrap();
            let y = c.random_with_norm(&c.ring().inv(&x.norm()).unwrap(), &mut rng).unwrap();
            let u = SpinElement::from_vectors(&x, &y).unwrap();
            let t = u.to_triple().unwrap();
            assert!(t.check());
            // u1 is conjugation by the vector pair: α(u1 z) = u α(z) u^{-1}
            let z = c.random_element(&mut rng);
            let u1z = z.with_coords(t.t1().mul_vec(z.coords()).unwrap());
            let lhs = CliffordElement::alpha(&u1z);
            let rhs = u.element().mul(&CliffordElement::alpha(&z)).unwrap().mul(&u.element().inverse().unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kernel_maps_to_kernel() {
        let c = zorn("Q");
        let r = c.ring();
        for eta in [r.one(), r.from_i64(-1)] {
            let u = SpinElement::new(CliffordElement::scalar(&c, &eta)).unwrap();
            assert_eq!(u.to_triple().unwrap(), RelatedTriple::kernel(&c, &eta).unwrap());
        }
    }

    #[test]
    fn round_trips_and_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = zorn("F3");
        let x = c.random_sphere(&mut rng).unwrap();
        let b = RelatedTriple::basic(&x).unwrap();
        let u = SpinElement::from_triple(&b).unwrap();
        assert_eq!(u.element().u3(), c.left_mul(&x.conj()));
        assert_eq!(u.to_triple().unwrap(), b);
        let mut prev: Option<SpinElement> = None;
        for _ in 0..10 {
            let u = SpinElement::from_vectors(&c.random_sphere(&mut rng).unwrap(), &c.random_sphere(&mut rng).unwrap()).unwrap();
            let t = u.to_triple().unwrap();
            assert_eq!(SpinElement::from_triple(&t).unwrap(), u);
            if let Some(p) = prev {
                let lhs = p.mul(&u).unwrap().to_triple().unwrap();
                let rhs = p.to_triple().unwrap().compose(&t).unwrap();
                assert_eq!(lhs, rhs);
            }
            prev = Some(u);
        }
    }
}
