//! Dense exact linear algebra over `F_{p^2}`: products, reduced row echelon
//! form, kernels, determinants and characteristic polynomials.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Serialize, Serializer};

use crate::field::Fq2;
use crate::poly::Poly;

pub type Vector = Vec<Fq2>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq2>,
    zero: Fq2,
}

impl Matrix {
    /// `zero` fixes the field the matrix lives in.
    pub fn zeros(zero: Fq2, rows: usize, cols: usize) -> Self {
        let zero = zero.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![zero; rows * cols],
            zero,
        }
    }

    pub fn identity(zero: Fq2, n: usize) -> Self {
        Self::scalar(zero.one_like(), n)
    }

    pub fn scalar(s: Fq2, n: usize) -> Self {
        let mut m = Self::zeros(s, n, n);
        for i in 0..n {
            m[(i, i)] = s;
        }
        m
    }

    pub fn from_rows(zero: Fq2, rows: Vec<Vec<Fq2>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            zero: zero.zero_like(),
        }
    }

    pub fn from_columns(zero: Fq2, n_rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(zero, n_rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n_rows);
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> Fq2 {
        self.zero
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Fq2] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fq2>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Fq2] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.zero, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    out.data[i * other.cols + j] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fq2]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.zero, |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Matrix {
            data,
            ..*self.clone_shape()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a - b)
            .collect();
        Matrix {
            data,
            ..*self.clone_shape()
        }
    }

    pub fn scale(&self, s: Fq2) -> Matrix {
        let data = self.data.iter().map(|&a| a * s).collect();
        Matrix {
            data,
            ..*self.clone_shape()
        }
    }

    /// `self + s I`.
    pub fn add_scalar(&self, s: Fq2) -> Matrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] += s;
        }
        out
    }

    /// `self - s I`.
    pub fn sub_scalar(&self, s: Fq2) -> Matrix {
        self.add_scalar(-s)
    }

    fn clone_shape(&self) -> Box<Matrix> {
        Box::new(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
            zero: self.zero,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.zero, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Entries where `self` differs from `s I`, as `(row, col, expected, got)`.
    pub fn scalar_mismatches(&self, s: Fq2) -> Vec<(usize, usize, Fq2, Fq2)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expected = if i == j { s } else { self.zero };
                let got = self[(i, j)];
                if got != expected {
                    out.push((i, j, expected, got));
                }
            }
        }
        out
    }

    pub fn is_scalar(&self, s: Fq2) -> bool {
        self.is_square() && self.scalar_mismatches(s).is_empty()
    }

    /// Evaluates a polynomial at this matrix by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::zeros(self.zero, self.rows, self.cols);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add_scalar(c);
        }
        acc
    }

    /// `prod_k (self - roots[k] I)`, applied left to right.
    pub fn shifted_product(&self, roots: &[Fq2]) -> Matrix {
        roots
            .iter()
            .fold(Matrix::identity(self.zero, self.rows), |acc, &r| {
                acc.mul(&self.sub_scalar(r))
            })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(piv, r);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m[(r, j)];
                m[(r, j)] = x * inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m[(r, j)];
                    m[(i, j)] -= f * x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : self v = 0 }`, one vector per free column, each with a
    /// one in its free coordinate (reduced echelon form of the kernel).
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero; self.cols];
                v[f] = self.zero.one_like();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Fq2 {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.zero.one_like();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return self.zero;
            };
            if piv != c {
                m.swap_rows(piv, c);
                det = -det;
            }
            let pv = m[(c, c)];
            det *= pv;
            let inv = pv.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let f = m[(i, c)] * inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let x = m[(c, j)];
                    m[(i, j)] -= f * x;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(self.zero, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = self.zero.one_like();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Matrix::zeros(self.zero, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)];
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Characteristic polynomial `det(x I - self)` via reduction to upper
    /// Hessenberg form by similarity transforms.
    pub fn char_poly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let one = self.zero.one_like();
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&i| !h[(i, k)].is_zero()) else {
                continue;
            };
            if piv != k + 1 {
                h.swap_rows(piv, k + 1);
                h.swap_cols(piv, k + 1);
            }
            let inv = h[(k + 1, k)].inv().expect("pivot is nonzero");
            for r in k + 2..n {
                let f = h[(r, k)] * inv;
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = h[(k + 1, j)];
                    h[(r, j)] -= f * x;
                }
                for i in 0..n {
                    let x = h[(i, r)];
                    h[(i, k + 1)] += f * x;
                }
            }
        }
        // p_m is the characteristic polynomial of the leading m x m block.
        let x = Poly::new(vec![self.zero, one]);
        let mut ps: Vec<Poly> = vec![Poly::constant(one)];
        for m in 1..=n {
            let mut pm = x.sub(&Poly::constant(h[(m - 1, m - 1)])).mul(&ps[m - 1]);
            let mut sub_prod = one;
            for i in (1..m).rev() {
                sub_prod *= h[(i, i - 1)];
                let coef = h[(i - 1, m - 1)] * sub_prod;
                if !coef.is_zero() {
                    pm = pm.sub(&ps[i - 1].scale(coef));
                }
            }
            ps.push(pm);
        }
        ps.pop().expect("at least the constant polynomial")
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Principal submatrix on the index range `lo..=hi`.
    pub fn principal_block(&self, lo: usize, hi: usize) -> Matrix {
        let n = hi + 1 - lo;
        let mut out = Matrix::zeros(self.zero, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(lo + i, lo + j)];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Fq2;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fq2 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fq2 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    /// Serialized as a list of rows.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

pub fn is_zero_vec(v: &[Fq2]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_sub(u: &[Fq2], v: &[Fq2]) -> Vector {
    u.iter().zip(v).map(|(&a, &b)| a - b).collect()
}

pub fn vec_add(u: &[Fq2], v: &[Fq2]) -> Vector {
    u.iter().zip(v).map(|(&a, &b)| a + b).collect()
}

pub fn vec_scale(v: &[Fq2], s: Fq2) -> Vector {
    v.iter().map(|&a| a * s).collect()
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vec(zero: Fq2, n: usize, i: usize) -> Vector {
    let mut v = vec![zero.zero_like(); n];
    v[i] = zero.one_like();
    v
}

/// If `u = s v` for some scalar `s`, returns it. `v` must be nonzero.
pub fn proportionality(u: &[Fq2], v: &[Fq2]) -> Option<Fq2> {
    let k = v.iter().position(|x| !x.is_zero())?;
    let s = u[k] / v[k];
    u.iter().zip(v).all(|(&a, &b)| a == s * b).then_some(s)
}

/// An incrementally maintained row echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Fq2]) -> Vector {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x -= f * r;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Fq2]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[Fq2]) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].inv().expect("pivot is nonzero");
        let r: Vector = r.iter().map(|&x| x * inv).collect();
        for (_, row) in self.rows.iter_mut() {
            let f = row[pivot];
            if !f.is_zero() {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x -= f * y;
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }
}
