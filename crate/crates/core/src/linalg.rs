//! Dense matrices over a [`RingContext`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{RingContext, RingKind, Scalar};

/// Row-major matrix whose entries all live in one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingContext,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.ring.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// How [`Matrix::inverse_via`] computes an inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseRoute {
    /// Gauss–Jordan elimination; fields only.
    GaussJordan,
    /// Fraction-free (Bareiss) Gauss–Jordan; integral domains.
    FractionFree,
    /// Division-free characteristic polynomial plus Cayley–Hamilton; any ring.
    CayleyHamilton,
}

/// Output of [`Matrix::solve_linear`]: one particular solution and a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Matrix,
    pub kernel: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(ring: &RingContext, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &RingContext, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn scalar(ring: &RingContext, n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_rows(ring: &RingContext, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(ring: &RingContext, columns: &[Vec<Scalar>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ring, r, c);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * c + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(ring: &RingContext, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows of formatted scalars.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|c| self.ring.format(c)).collect())
            .collect();
        rows.into()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::AlgebraMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix { data, ..self.clone_shape() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(s, a)).collect();
        Matrix { data, ..self.clone_shape() }
    }

    fn clone_shape(&self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::AlgebraMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let r = &self.ring;
        if let RingKind::Rationals = r.kind() {
            let columns: Vec<Vec<Scalar>> = (0..other.cols).map(|j| other.column(j)).collect();
            return Ok(Self::from_fn(r, self.rows, other.cols, |i, j| r.dot(self.row(i), &columns[j])));
        }
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| self.ring.dot(self.row(i), v)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.ring.is_one(x)
                    } else {
                        self.ring.is_zero(x)
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    /// The submatrix with top-left corner `(r0, c0)` and the given shape.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.ring, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// `[[a, b], [c, d]]` from four blocks with compatible shapes.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch {
                expected: a.rows + c.rows,
                got: b.rows + d.rows,
            });
        }
        let (r, c0) = (a.rows, a.cols);
        Ok(Self::from_fn(&a.ring, a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < r, j < c0) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - c0).clone(),
                (false, true) => c.get(i - r, j).clone(),
                (false, false) => d.get(i - r, j - c0).clone(),
            }
        }))
    }

    pub fn block_diag(a: &Matrix, d: &Matrix) -> Result<Self> {
        let b = Self::zeros(&a.ring, a.rows, d.cols);
        let c = Self::zeros(&a.ring, d.rows, a.cols);
        Self::from_blocks(a, &b, &c, d)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            })
        }
    }

    fn require_field(&self, what: &str) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::UnsupportedRing {
                ring: self.ring.to_string(),
                what: what.to_string(),
            })
        }
    }

    // ---------------------------------------------------------------------
    // determinants and inverses

    /// Determinant, by elimination over fields and domains and by the
    /// division-free characteristic polynomial otherwise.
    pub fn det(&self) -> Result<Scalar> {
        self.require_square()?;
        if let RingKind::Rationals = self.ring.kind() {
            return Ok(self.det_rational());
        }
        if self.ring.is_domain() {
            return Ok(self.det_bareiss());
        }
        let p = self.charpoly()?;
        let c = p.last().unwrap();
        Ok(if self.rows.is_multiple_of(2) {
            c.clone()
        } else {
            self.ring.neg(c)
        })
    }

    /// Clears each row's denominators and runs Bareiss over ℤ.
    fn det_rational(&self) -> Scalar {
        let (b, scales) = self.clear_row_denominators();
        let Scalar::Int(d) = b.det_bareiss() else { unreachable!("integer elimination") };
        Scalar::Rat(BigRational::new(d, scales.iter().product()))
    }

    fn det_bareiss(&self) -> Scalar {
        let r = &self.ring;
        let n = self.rows;
        if n == 0 {
            return r.one();
        }
        let mut m = self.to_rows();
        let mut prev = r.one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !r.is_zero(&m[i][k])) else {
                return r.zero();
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = r.sub(&r.mul(&m[k][k], &m[i][j]), &r.mul(&m[i][k], &m[k][j]));
                    m[i][j] = r.div_exact(&num, &prev).expect("Bareiss division is exact in a domain");
                }
                m[i][k] = r.zero();
            }
            prev = m[k][k].clone();
        }
        if negate {
            r.neg(&prev)
        } else {
            prev
        }
    }

    /// Coefficients `(1, c_1, ..., c_n)` of `det(λI - A) = λ^n + c_1 λ^{n-1} + ... + c_n`,
    /// by Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Result<Vec<Scalar>> {
        self.require_square()?;
        let r = &self.ring;
        let mut p = vec![r.one()];
        for k in 0..self.rows {
            // leading (k+1)x(k+1) block split as [[M, C], [R, a]]
            let a = self.get(k, k);
            let col: Vec<Scalar> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let row: Vec<Scalar> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let mut toeplitz = vec![r.one(), r.neg(a)];
            let mut v = col;
            for _ in 0..k {
                toeplitz.push(r.neg(&r.dot(&row, &v)));
                v = (0..k)
                    .map(|i| r.dot((0..k).map(|j| self.get(i, j)), &v))
                    .collect();
            }
            let mut next = Vec::with_capacity(k + 2);
            for i in 0..k + 2 {
                let mut acc = r.zero();
                for (j, pj) in p.iter().enumerate() {
                    if i >= j {
                        acc = r.add(&acc, &r.mul(&toeplitz[i - j], pj));
                    }
                }
                next.push(acc);
            }
            p = next;
        }
        Ok(p)
    }

    /// Inverse by the route suited to the ring: cleared denominators over ℚ,
    /// Gauss–Jordan over other fields,
    /// fraction-free elimination over domains, Cayley–Hamilton otherwise.
    pub fn inverse(&self) -> Result<Self> {
        if let RingKind::Rationals = self.ring.kind() {
            self.require_square()?;
            return self.inverse_rational();
        }
        let route = if self.ring.is_field() {
            InverseRoute::GaussJordan
        } else if self.ring.is_domain() {
            InverseRoute::FractionFree
        } else {
            InverseRoute::CayleyHamilton
        };
        self.inverse_via(route)
    }

    pub fn inverse_via(&self, route: InverseRoute) -> Result<Self> {
        self.require_square()?;
        match route {
            InverseRoute::GaussJordan => {
                self.require_field("Gauss-Jordan inverse")?;
                self.inverse_gauss_jordan()
            }
            InverseRoute::FractionFree => {
                if !self.ring.is_domain() {
                    return Err(Error::UnsupportedRing {
                        ring: self.ring.to_string(),
                        what: "fraction-free inverse".into(),
                    });
                }
                self.inverse_fraction_free()
            }
            InverseRoute::CayleyHamilton => self.inverse_cayley_hamilton(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.det().is_ok_and(|d| self.ring.is_unit(&d))
    }

    fn not_invertible(&self, det: &Scalar) -> Error {
        Error::NotInvertible(self.ring.format(det))
    }

    fn inverse_gauss_jordan(&self) -> Result<Self> {
        let r = &self.ring;
        let n = self.rows;
        let mut m = self.to_rows();
        let mut inv = Self::identity(r, n).to_rows();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !r.is_zero(&m[i][k])) else {
                return Err(self.not_invertible(&r.zero()));
            };
            m.swap(p, k);
            inv.swap(p, k);
            let pinv = r.inv(&m[k][k]).expect("nonzero field element");
            for j in 0..n {
                m[k][j] = r.mul(&pinv, &m[k][j]);
                inv[k][j] = r.mul(&pinv, &inv[k][j]);
            }
            for i in 0..n {
                if i == k || r.is_zero(&m[i][k]) {
                    continue;
                }
                let f = m[i][k].clone();
                for j in 0..n {
                    m[i][j] = r.sub(&m[i][j], &r.mul(&f, &m[k][j]));
                    inv[i][j] = r.sub(&inv[i][j], &r.mul(&f, &inv[k][j]));
                }
            }
        }
        Self::from_rows(r, inv)
    }

    /// Bareiss-style Gauss–Jordan on `[A | I]`; ends with `[d I | d A^{-1}]`.
    fn inverse_fraction_free(&self) -> Result<Self> {
        let r = &self.ring;
        let (d, scaled) = self.fraction_free_adjoint()?;
        let dinv = r.inv(&d).ok_or_else(|| self.not_invertible(&d))?;
        let rows = scaled.into_iter().map(|row| row.iter().map(|x| r.mul(&dinv, x)).collect()).collect();
        Self::from_rows(r, rows)
    }

    /// `(d, d A^{-1})` with `d = ±det A`, by fraction-free elimination in a domain.
    fn fraction_free_adjoint(&self) -> Result<(Scalar, Vec<Vec<Scalar>>)> {
        let r = &self.ring;
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { r.one() } else { r.zero() }));
                row
            })
            .collect();
        let mut prev = r.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !r.is_zero(&m[i][k])) else {
                return Err(self.not_invertible(&r.zero()));
            };
            m.swap(p, k);
            for i in 0..n {
                if i == k {
                    continue;
                }
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let num = r.sub(&r.mul(&m[k][k], &m[i][j]), &r.mul(&m[i][k], &m[k][j]));
                    m[i][j] = r
                        .div_exact(&num, &prev)
                        .expect("fraction-free elimination divides exactly in a domain");
                }
                m[i][k] = r.zero();
            }
            prev = m[k][k].clone();
        }
        // every pivot row is scaled to the final pivot `prev = ±det`
        for (k, row) in m.iter_mut().enumerate() {
            if row[k] != prev {
                let f = r.div_exact(&prev, &row[k]).expect("pivots divide the determinant");
                for x in row.iter_mut() {
                    *x = r.mul(&f, x);
                }
            }
        }
        Ok((prev, m.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Over ℚ: `A = D^{-1} B` with `B` integral and `D` diagonal, so
    /// `A^{-1} = B^{-1} D`, with `B^{-1}` from fraction-free elimination over ℤ.
    fn inverse_rational(&self) -> Result<Self> {
        let (b, scales) = self.clear_row_denominators();
        let (d, scaled) = b.fraction_free_adjoint()?;
        let Scalar::Int(d) = d else { unreachable!("integer elimination") };
        let rows = scaled
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .zip(&scales)
                    .map(|(x, l)| {
                        let Scalar::Int(x) = x else { unreachable!("integer elimination") };
                        Scalar::Rat(BigRational::new(x * l, d.clone()))
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&self.ring, rows)
    }

    /// `(B, l)` with `B` over ℤ and row `i` of `B` equal to `l_i` times row `i` of `self`.
    fn clear_row_denominators(&self) -> (Matrix, Vec<BigInt>) {
        let z = RingContext::integers();
        let mut scales = Vec::with_capacity(self.rows);
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let rats: Vec<&BigRational> = self
                .row(i)
                .iter()
                .map(|x| match x {
                    Scalar::Rat(q) => q,
                    _ => panic!("scalar payload does not match ring Q"),
                })
                .collect();
            let l = rats.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            rows.push(rats.iter().map(|q| Scalar::Int(q.numer() * (&l / q.denom()))).collect());
            scales.push(l);
        }
        (Matrix::from_rows(&z, rows).expect("rectangular"), scales)
    }

    fn inverse_cayley_hamilton(&self) -> Result<Self> {
        let r = &self.ring;
        let n = self.rows;
        let p = self.charpoly()?;
        let cn = &p[n];
        let cn_inv = r.inv(cn).ok_or_else(|| {
            let det = if n.is_multiple_of(2) { cn.clone() } else { r.neg(cn) };
            self.not_invertible(&det)
        })?;
        if n == 0 {
            return Ok(self.clone());
        }
        // A^{-1} = -c_n^{-1} (A^{n-1} + c_1 A^{n-2} + ... + c_{n-1} I)
        let mut b = Self::identity(r, n);
        for c in &p[1..n] {
            b = self.mul(&b)?.add(&Self::scalar(r, n, c))?;
        }
        Ok(b.scale(&r.neg(&cn_inv)))
    }

    // ---------------------------------------------------------------------
    // linear systems over fields

    /// Reduced row echelon form and pivot columns; fields only.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        self.require_field("row reduction")?;
        let r = &self.ring;
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !r.is_zero(&m[i][col])) else {
                continue;
            };
            m.swap(p, row);
            let pinv = r.inv(&m[row][col]).expect("nonzero field element");
            for x in m[row].iter_mut() {
                *x = r.mul(&pinv, x);
            }
            for i in 0..self.rows {
                if i == row || r.is_zero(&m[i][col]) {
                    continue;
                }
                let f = m[i][col].clone();
                for j in 0..self.cols {
                    let t = r.mul(&f, &m[row][j]);
                    m[i][j] = r.sub(&m[i][j], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((Self::from_rows(r, m)?, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of `{x : self · x = 0}`; fields only.
    pub fn kernel(&self) -> Result<Vec<Vec<Scalar>>> {
        let (e, pivots) = self.rref()?;
        let r = &self.ring;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![r.zero(); self.cols];
                v[f] = r.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.neg(e.get(i, f));
                }
                v
            })
            .collect())
    }

    /// Solves `self · X = rhs`, returning one solution and a basis of the kernel.
    pub fn solve_linear(&self, rhs: &Matrix) -> Result<LinearSolution> {
        self.require_field("solve_linear")?;
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: rhs.rows,
            });
        }
        let r = &self.ring;
        let aug = Self::from_fn(r, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        });
        let (e, pivots) = aug.rref()?;
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut particular = Self::zeros(r, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                particular.set(p, k, e.get(i, self.cols + k).clone());
            }
        }
        Ok(LinearSolution {
            particular,
            kernel: self.kernel()?,
        })
    }
}

/// A bilinear map `R^n x R^n -> R^n` stored as structure constants
/// `f(x, y)_k = Σ_{ij} c_{ijk} x_i y_j`, indexed by the pair `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    ring: RingContext,
    dim: usize,
    /// For each pair `i * dim + j`, the nonzero `(k, c_{ijk})`.
    pairs: Vec<Vec<(usize, Scalar)>>,
    /// `Some(±1)` where the constant is `±1`, letting `apply` skip a product.
    signs: Vec<Vec<Option<bool>>>,
}

impl BilinearMap {
    pub fn zero(ring: &RingContext, dim: usize) -> Self {
        BilinearMap {
            ring: ring.clone(),
            dim,
            pairs: vec![Vec::new(); dim * dim],
            signs: vec![Vec::new(); dim * dim],
        }
    }

    /// Tabulates `f` on basis pairs.
    pub fn from_fn(ring: &RingContext, dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut m = Self::zero(ring, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                debug_assert_eq!(v.len(), dim);
                m.pairs[i * dim + j] = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !ring.is_zero(c))
                    .collect();
            }
        }
        let one = ring.one();
        let minus_one = ring.neg(&one);
        m.signs = m
            .pairs
            .iter()
            .map(|entries| {
                entries
                    .iter()
                    .map(|(_, c)| {
                        if *c == one {
                            Some(true)
                        } else if *c == minus_one {
                            Some(false)
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        m
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_{ijk}`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.pairs[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.ring.zero(), |(_, c)| c.clone())
    }

    /// `f(e_i, e_j)` as a dense vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![self.ring.zero(); self.dim];
        for (k, c) in &self.pairs[i * self.dim + j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let r = &self.ring;
        if let RingKind::Rationals = r.kind() {
            return self.apply_dot(x, y);
        }
        let mut out = vec![r.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if r.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if r.is_zero(yj) {
                    continue;
                }
                let pair = i * self.dim + j;
                if self.pairs[pair].is_empty() {
                    continue;
                }
                let xy = r.mul(xi, yj);
                for ((k, c), sign) in self.pairs[pair].iter().zip(&self.signs[pair]) {
                    out[*k] = match sign {
                        Some(true) => r.add(&out[*k], &xy),
                        Some(false) => r.sub(&out[*k], &xy),
                        None => r.add(&out[*k], &r.mul(&xy, c)),
                    };
                }
            }
        }
        out
    }

    /// `apply` with each output coordinate reduced once, as one dot product.
    fn apply_dot(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let r = &self.ring;
        let mut terms: Vec<(Vec<&Scalar>, Vec<Scalar>)> = vec![(Vec::new(), Vec::new()); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if r.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let pair = i * self.dim + j;
                if r.is_zero(yj) || self.pairs[pair].is_empty() {
                    continue;
                }
                for ((k, c), sign) in self.pairs[pair].iter().zip(&self.signs[pair]) {
                    let (left, right) = &mut terms[*k];
                    left.push(xi);
                    right.push(match sign {
                        Some(true) => yj.clone(),
                        Some(false) => r.neg(yj),
                        None => r.mul(c, yj),
                    });
                }
            }
        }
        terms.iter().map(|(xs, ys)| r.dot(xs.iter().copied(), ys)).collect()
    }

    /// The matrix of `y ↦ f(x, y)`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        // entry (k, j) is Σ_i x_i c_{ijk}
        let mut terms: Vec<(Vec<&Scalar>, Vec<&Scalar>)> = vec![(Vec::new(), Vec::new()); n * n];
        for (i, xi) in x.iter().enumerate() {
            if self.ring.is_zero(xi) {
                continue;
            }
            for j in 0..n {
                for (k, c) in &self.pairs[i * n + j] {
                    let t = &mut terms[k * n + j];
                    t.0.push(xi);
                    t.1.push(c);
                }
            }
        }
        Matrix::from_fn(&self.ring, n, n, |k, j| {
            let (xs, cs) = &terms[k * n + j];
            self.ring.dot(xs.iter().copied(), cs.iter().copied())
        })
    }

    /// Number of nonzero structure constants.
    pub fn nonzeros(&self) -> usize {
        self.pairs.iter().map(Vec::len).sum()
    }
}
