//! Quadratic forms on free modules, stored by upper-triangular coefficients
//! so that characteristic 2 needs no special casing.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{BilinearMap, Matrix};
use crate::ring::{RingContext, Scalar};

/// `q(x) = Σ_{i<=j} U_ij x_i x_j` with `U` upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    upper: Matrix,
}

impl QuadraticForm {
    pub fn new(upper: Matrix) -> Result<Self> {
        if !upper.is_square() {
            return Err(Error::DimensionMismatch {
                expected: upper.rows(),
                got: upper.cols(),
            });
        }
        let r = upper.ring().clone();
        for i in 0..upper.rows() {
            for j in 0..i {
                if !r.is_zero(upper.get(i, j)) {
                    return Err(Error::Parse(format!(
                        "quadratic form coefficient below the diagonal at ({i},{j})"
                    )));
                }
            }
        }
        Ok(QuadraticForm { upper })
    }

    /// Form with the listed `(i, j, U_ij)` coefficients, `i <= j`; repeated entries add.
    pub fn from_entries(ring: &RingContext, rank: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut u = Matrix::zeros(ring, rank, rank);
        for (i, j, c) in entries {
            let (i, j) = if i <= j { (*i, *j) } else { (*j, *i) };
            if j >= rank {
                return Err(Error::DimensionMismatch { expected: rank, got: j + 1 });
            }
            let v = ring.add(u.get(i, j), c);
            u.set(i, j, v);
        }
        Ok(QuadraticForm { upper: u })
    }

    /// The diagonal form `<a_1, ..., a_n>`.
    pub fn diagonal(ring: &RingContext, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let entries: Vec<_> = coeffs.iter().enumerate().map(|(i, c)| (i, i, c.clone())).collect();
        Self::from_entries(ring, n, &entries).expect("indices in range")
    }

    /// `Σ_{i<n} x_{2i} x_{2i+1}` on `R^{2n}`.
    pub fn hyperbolic(ring: &RingContext, n: usize) -> Self {
        let entries: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1, ring.one())).collect();
        Self::from_entries(ring, 2 * n, &entries).expect("indices in range")
    }

    /// The form whose polar form and values on `basis` match `self`:
    /// `U'_ii = q(v_i)`, `U'_ij = b(v_i, v_j)`.
    pub fn restrict(&self, basis: &[Vec<Scalar>]) -> Result<Self> {
        let r = self.ring().clone();
        let n = basis.len();
        let mut u = Matrix::zeros(&r, n, n);
        for i in 0..n {
            u.set(i, i, self.evaluate(&basis[i])?);
            for j in i + 1..n {
                u.set(i, j, self.polar(&basis[i], &basis[j])?);
            }
        }
        Ok(QuadraticForm { upper: u })
    }

    pub fn ring(&self) -> &RingContext {
        self.upper.ring()
    }

    pub fn rank(&self) -> usize {
        self.upper.rows()
    }

    pub fn upper(&self) -> &Matrix {
        &self.upper
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        QuadraticForm {
            upper: self.upper.scale(s),
        }
    }

    fn check_len(&self, x: &[Scalar]) -> Result<()> {
        if x.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: x.len(),
            })
        }
    }

    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar> {
        self.check_len(x)?;
        let r = self.ring();
        Ok(r.dot(x, &self.upper_times(x)))
    }

    /// `U x`.
    fn upper_times(&self, x: &[Scalar]) -> Vec<Scalar> {
        let r = self.ring();
        (0..self.rank()).map(|i| r.dot(&self.upper.row(i)[i..], &x[i..])).collect()
    }

    /// `b_q(x, y) = x^T (U + U^T) y = x^T U y + y^T U x`.
    pub fn polar(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        self.check_len(x)?;
        self.check_len(y)?;
        let r = self.ring();
        Ok(r.add(&r.dot(x, &self.upper_times(y)), &r.dot(y, &self.upper_times(x))))
    }

    /// Gram matrix `U + U^T` of the polar form.
    pub fn polar_matrix(&self) -> Matrix {
        self.upper.add(&self.upper.transpose()).expect("same shape")
    }

    /// `b_q` induces an isomorphism onto the dual module.
    pub fn is_regular(&self) -> bool {
        self.polar_matrix().is_invertible()
    }

    /// Basis of `rad(b_q)`; fields only.
    pub fn polar_radical(&self) -> Result<Vec<Vec<Scalar>>> {
        self.polar_matrix().kernel()
    }

    /// `rad(q_K) = 0` over an algebraic closure; fields only.
    ///
    /// Outside characteristic 2 this is `rad(b_q) = 0`. In characteristic 2,
    /// `q` is semilinear on `rad(b_q)`, so it has a nonzero zero there over the
    /// closure unless the radical is a line spanned by a vector with `q(v) != 0`.
    pub fn is_nonsingular(&self) -> Result<bool> {
        let rad = self.polar_radical()?;
        Ok(match rad.len() {
            0 => true,
            1 if self.ring().characteristic() == 2 => !self.ring().is_zero(&self.evaluate(&rad[0])?),
            _ => false,
        })
    }

    pub fn to_json(&self) -> Value {
        let r = self.ring();
        let mut upper = Vec::new();
        for i in 0..self.rank() {
            for j in i..self.rank() {
                let c = self.upper.get(i, j);
                if !r.is_zero(c) {
                    upper.push(json!([i, j, r.format(c)]));
                }
            }
        }
        json!({ "rank": self.rank(), "upper": upper })
    }

    pub fn from_json(ring: &RingContext, value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("quadratic form JSON: {what}"));
        let rank = value["rank"].as_u64().ok_or_else(|| bad("missing rank"))? as usize;
        let mut entries = Vec::new();
        for e in value["upper"].as_array().ok_or_else(|| bad("missing upper"))? {
            let (Some(i), Some(j), Some(c)) = (e[0].as_u64(), e[1].as_u64(), e[2].as_str()) else {
                return Err(bad("entries must be [i, j, \"coeff\"]"));
            };
            entries.push((i as usize, j as usize, ring.parse_scalar(c)?));
        }
        Self::from_entries(ring, rank, &entries)
    }
}

fn unit_vector(ring: &RingContext, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![ring.zero(); n];
    v[i] = ring.one();
    v
}

/// `e_i` and `e_i + e_j` for `i < j`: values of a quadratic polynomial on
/// this family determine all of its coefficients.
pub fn quadratic_spanning_family(ring: &RingContext, n: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vector(ring, n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit_vector(ring, n, i);
            v[j] = ring.one();
            out.push(v);
        }
    }
    out
}

/// `q2(f e_i) = q1(e_i)` and `b2(f e_i, f e_j) = b1(e_i, e_j)`; `f` must be invertible.
pub fn is_isometry(q1: &QuadraticForm, q2: &QuadraticForm, f: &Matrix) -> Result<bool> {
    if !f.is_invertible() {
        return Err(Error::NotInvertible(format!("{} (isometry candidate)", f.ring().format(&f.det()?))));
    }
    preserves_form(q1, q2, f)
}

/// The isometry conditions without the invertibility requirement.
pub fn preserves_form(q1: &QuadraticForm, q2: &QuadraticForm, f: &Matrix) -> Result<bool> {
    let n = q1.rank();
    if q2.rank() != n || f.rows() != n || f.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.rows(),
        });
    }
    for j in 0..n {
        if q2.evaluate(&f.column(j))? != *q1.upper.get(j, j) {
            return Ok(false);
        }
    }
    // b_q2(f e_i, f e_j) is entry (i, j) of F^T G2 F
    let gram = f.transpose().mul(&q2.polar_matrix().mul(f)?)?;
    for i in 0..n {
        for j in i + 1..n {
            if gram.get(i, j) != q1.upper.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Decides `q1(f(x, y)) = q2(x) q3(y)` for all `x, y`.
///
/// Both sides are quadratic in `x` and in `y`, so agreement on the
/// [`quadratic_spanning_family`] in each slot is equivalent to the identity.
pub fn is_composition(q1: &QuadraticForm, q2: &QuadraticForm, q3: &QuadraticForm, f: &BilinearMap) -> Result<bool> {
    Ok(composition_defect(q1, q2, q3, f)?.is_none())
}

/// First pair `(x, y)` from the spanning family where the composition identity fails.
pub fn composition_defect(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    q3: &QuadraticForm,
    f: &BilinearMap,
) -> Result<Option<(Vec<Scalar>, Vec<Scalar>)>> {
    let n = q1.rank();
    if q2.rank() != n || q3.rank() != n || f.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: f.dim() });
    }
    let r = q1.ring();
    let family = quadratic_spanning_family(r, n);
    let q3_values: Vec<Scalar> = family.iter().map(|y| q3.evaluate(y)).collect::<Result<_>>()?;
    for x in &family {
        let qx = q2.evaluate(x)?;
        for (y, qy) in family.iter().zip(&q3_values) {
            if q1.evaluate(&f.apply(x, y))? != r.mul(&qx, qy) {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    Ok(None)
}

/// Exhaustive version of [`is_composition`] over a finite ring, for
/// `|R|^n <= limit`.
pub fn is_composition_exhaustive(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    q3: &QuadraticForm,
    f: &BilinearMap,
    limit: u64,
) -> Result<bool> {
    let r = q1.ring();
    let n = q1.rank();
    let size = r.size().ok_or_else(|| Error::UnsupportedRing {
        ring: r.to_string(),
        what: "exhaustive enumeration".into(),
    })?;
    let total = size
        .checked_pow(n as u32)
        .filter(|&t| t <= limit)
        .ok_or(Error::CeilingExceeded(limit))?;
    let vectors: Vec<Vec<Scalar>> = (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let c = code % size;
                    code /= size;
                    r.element(c)
                })
                .collect()
        })
        .collect();
    let q2v: Vec<Scalar> = vectors.iter().map(|x| q2.evaluate(x)).collect::<Result<_>>()?;
    let q3v: Vec<Scalar> = vectors.iter().map(|x| q3.evaluate(x)).collect::<Result<_>>()?;
    for (x, qx) in vectors.iter().zip(&q2v) {
        for (y, qy) in vectors.iter().zip(&q3v) {
            if q1.evaluate(&f.apply(x, y))? != r.mul(qx, qy) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(s: &str) -> RingContext {
        RingContext::parse(s).unwrap()
    }

    fn random_form(r: &RingContext, n: usize, rng: &mut ChaCha8Rng) -> QuadraticForm {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                entries.push((i, j, r.random(rng)));
            }
        }
        QuadraticForm::from_entries(r, n, &entries).unwrap()
    }

    #[test]
    fn hyperbolic_values() {
        let z = ring("Z");
        let h = QuadraticForm::hyperbolic(&z, 1);
        assert_eq!(h.evaluate(&[z.one(), z.one()]).unwrap(), z.one());
        assert_eq!(h.evaluate(&[z.zero(), z.zero()]).unwrap(), z.zero());
        assert!(QuadraticForm::hyperbolic(&ring("F2"), 4).is_regular());
    }

    #[test]
    fn one_dimensional_forms() {
        let z = ring("Z");
        assert!(!QuadraticForm::diagonal(&z, &[z.one()]).is_regular());
        let q = ring("Q");
        assert!(QuadraticForm::diagonal(&q, &[q.one()]).is_regular());
        // <1> over F2: b = 0 but q(1) = 1, so non-singular and not regular
        let f2 = ring("F2");
        let d = QuadraticForm::diagonal(&f2, &[f2.one()]);
        assert!(!d.is_regular());
        assert!(d.is_nonsingular().unwrap());
        assert!(!QuadraticForm::diagonal(&f2, &[f2.one(), f2.one()]).is_nonsingular().unwrap());
        assert!(!QuadraticForm::diagonal(&f2, &[f2.zero()]).is_nonsingular().unwrap());
    }

    #[test]
    fn polar_identity_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for spec in ["Z", "Q", "Z/8", "F2", "F4", "F9=x^2+1", "Q[t]", "F3[t,1/t]"] {
            let r = ring(spec);
            let q = random_form(&r, 5, &mut rng);
            for _ in 0..1000 {
                let x: Vec<Scalar> = (0..5).map(|_| r.random(&mut rng)).collect();
                let y: Vec<Scalar> = (0..5).map(|_| r.random(&mut rng)).collect();
                let xy: Vec<Scalar> = x.iter().zip(&y).map(|(a, b)| r.add(a, b)).collect();
                let rhs = r.sub(
                    &r.sub(&q.evaluate(&xy).unwrap(), &q.evaluate(&x).unwrap()),
                    &q.evaluate(&y).unwrap(),
                );
                assert_eq!(q.polar(&x, &y).unwrap(), rhs, "{spec}");
                let two_q = r.add(&q.evaluate(&x).unwrap(), &q.evaluate(&x).unwrap());
                assert_eq!(q.polar(&x, &x).unwrap(), two_q, "{spec}");
                if r.characteristic() == 2 {
                    assert!(r.is_zero(&q.polar(&x, &x).unwrap()));
                }
            }
        }
    }

    #[test]
    fn isometry_examples() {
        let q = ring("Q");
        let h = QuadraticForm::hyperbolic(&q, 4);
        assert!(is_isometry(&h, &h, &Matrix::identity(&q, 8)).unwrap());
        let mut d = Matrix::identity(&q, 8);
        d.set(0, 0, q.from_i64(2));
        assert!(!is_isometry(&h, &h, &d).unwrap());
        // swapping the two coordinates of a hyperbolic plane is an isometry
        let mut s = Matrix::zeros(&q, 8, 8);
        for (i, j) in [(0, 1), (1, 0), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 7)] {
            s.set(i, j, q.one());
        }
        assert!(is_isometry(&h, &h, &s).unwrap());
        assert!(is_isometry(&h, &h, &Matrix::zeros(&q, 8, 8)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for spec in ["Q", "F9=x^2+1", "Z/8[t]"] {
            let r = ring(spec);
            let q = random_form(&r, 4, &mut rng);
            let back = QuadraticForm::from_json(&r, &q.to_json()).unwrap();
            assert_eq!(back, q);
        }
    }

    #[test]
    fn restriction_keeps_values() {
        let q = ring("Q");
        let h = QuadraticForm::hyperbolic(&q, 2);
        let basis = vec![
            vec![q.one(), q.one(), q.zero(), q.zero()],
            vec![q.zero(), q.one(), q.from_i64(2), q.zero()],
        ];
        let res = h.restrict(&basis).unwrap();
        let coeffs = [q.from_i64(3), q.from_i64(-2)];
        let v: Vec<Scalar> = (0..4)
            .map(|k| q.add(&q.mul(&coeffs[0], &basis[0][k]), &q.mul(&coeffs[1], &basis[1][k])))
            .collect();
        assert_eq!(res.evaluate(&coeffs).unwrap(), h.evaluate(&v).unwrap());
    }

    #[test]
    fn composition_of_complex_numbers() {
        // (x0 + x1 i)(y0 + y1 i) with the norm x0^2 + x1^2
        let q = ring("Q");
        let one = q.one();
        let m1 = q.from_i64(-1);
        let norm = QuadraticForm::diagonal(&q, &[one.clone(), one.clone()]);
        let mul = BilinearMap::from_fn(&q, 2, |i, j| match (i, j) {
            (0, 0) => vec![one.clone(), q.zero()],
            (0, 1) | (1, 0) => vec![q.zero(), one.clone()],
            _ => vec![m1.clone(), q.zero()],
        });
        assert!(is_composition(&norm, &norm, &norm, &mul).unwrap());
        assert!(!is_composition(&norm, &norm, &norm, &BilinearMap::zero(&q, 2)).unwrap());
        let scaled = norm.scale(&q.from_i64(2));
        assert!(!is_composition(&scaled, &norm, &norm, &mul).unwrap());
    }

    #[test]
    fn spanning_family_matches_exhaustive_check() {
        // random bilinear maps on F2^3 and F3^2 with random forms
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (spec, n) in [("F2", 3usize), ("F3", 2)] {
            let r = ring(spec);
            let mut holds = 0;
            for trial in 0..300 {
                let q1 = random_form(&r, n, &mut rng);
                let mut q2 = random_form(&r, n, &mut rng);
                let q3 = random_form(&r, n, &mut rng);
                let f = if trial % 3 == 0 {
                    // f = 0 and q2 = 0 make both sides vanish
                    q2 = q2.scale(&r.zero());
                    BilinearMap::zero(&r, n)
                } else {
                    BilinearMap::from_fn(&r, n, |_, _| (0..n).map(|_| r.random(&mut rng)).collect())
                };
                let a = is_composition(&q1, &q2, &q3, &f).unwrap();
                let b = is_composition_exhaustive(&q1, &q2, &q3, &f, 1 << 16).unwrap();
                assert_eq!(a, b);
                holds += a as usize;
            }
            assert!(holds >= 100);
        }
    }
}
