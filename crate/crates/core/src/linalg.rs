//! Dense exact linear algebra.
//!
//! Vectors are rows. A matrix `A` with `r` rows and `c` columns acts on row
//! vectors of length `r` from the right, `v ↦ v·A`, which is the convention
//! used for module actions and homomorphisms throughout the crate.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_data(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row vectors; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row has wrong length");
            data.extend_from_slice(r);
        }
        Self::from_data(field, rows.len(), cols, data)
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_data(field, rows, cols, data)
    }

    /// The `1 × n` matrix holding `v`.
    pub fn row_vector(field: &F, v: &[F::Elem]) -> Self {
        Self::from_data(field, 1, v.len(), v.to_vec())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        if other.cols == 0 {
            return out;
        }
        for i in 0..self.rows {
            let (lo, hi) = (i * other.cols, (i + 1) * other.cols);
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                f.axpy(&mut out.data[lo..hi], a, other.row(k));
            }
        }
        out
    }

    /// `v·A` for a row vector `v`.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            f.axpy(&mut out, a, self.row(k));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.shape(),
            other.shape(),
            "matrix difference shape mismatch"
        );
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(c, a)).collect();
        Self::from_data(f, self.rows, self.cols, data)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &F::Elem, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        self.field.clone().axpy(&mut self.data, c, &other.data);
    }

    /// Linear combination `Σ cᵢ·Mᵢ` of equally shaped matrices.
    pub fn combination(
        field: &F,
        rows: usize,
        cols: usize,
        coeffs: &[F::Elem],
        mats: &[Self],
    ) -> Self {
        let mut out = Self::zeros(field, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            out.add_scaled(c, m);
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::from_data(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn block_diag(field: &F, blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            f.scale(m.row_mut(r), &inv);
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let factor = f.neg(m.get(i, c));
                    f.axpy(m.row_mut(i), &factor, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    /// The subspace spanned by the rows.
    pub fn row_space(&self) -> Subspace<F> {
        Subspace::spanned_by(
            &self.field,
            self.cols,
            (0..self.rows).map(|i| self.row(i).to_vec()),
        )
    }

    /// Basis (as columns) of `{x : A·x = 0}`.
    pub fn nullspace(&self) -> Self {
        let basis = self.row_space().orthogonal_kernel();
        Self::from_rows(&self.field, self.cols, &basis).transpose()
    }

    /// Basis (as rows) of `{x : x·A = 0}`.
    pub fn left_nullspace(&self) -> Self {
        self.transpose().nullspace().transpose()
    }

    /// Some `x` with `A·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(alloc::format!(
                "solve: A has {} rows but b has {}",
                self.rows,
                b.rows
            )));
        }
        let f = &self.field;
        let aug = self.hstack(b).rref();
        let n = self.cols;
        if aug.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Self::zeros(f, n, b.cols);
        for (r, &c) in aug.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, aug.matrix.get(r, n + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Some `x` with `x·A = b` for row-stacked `b`.
    pub fn solve_left(&self, b: &Self) -> Result<Option<Self>> {
        Ok(self
            .transpose()
            .solve(&b.transpose())?
            .map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let id = Self::identity(&self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) if self.mul(&x).is_identity() => Some(x),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A subspace of `F^n`, stored as a basis in reduced row-echelon form.
///
/// Because the basis is reduced, the coordinate of a member along basis row
/// `r` is just its entry at pivot column `pivots[r]`, and the non-pivot
/// columns give canonical coordinates on the quotient `F^n / W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::spanned_by(field, ambient, Mat::identity(field, ambient).row_vecs())
    }

    pub fn spanned_by(
        field: &F,
        ambient: usize,
        vectors: impl IntoIterator<Item = Vec<F::Elem>>,
    ) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            if s.dim() == ambient {
                break;
            }
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis rows as a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> Mat<F> {
        Mat::from_rows(&self.field, self.ambient, &self.basis)
    }

    /// `v` minus its component along the subspace (zero iff `v` is a member).
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&out[c]) {
                let factor = f.neg(&out[c]);
                f.axpy(&mut out, &factor, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` along the basis, if `v` is a member.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
        } else {
            None
        }
    }

    pub fn from_coords(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            f.axpy(&mut out, c, row);
        }
        out
    }

    /// Adds `v`; returns false if it was already a member.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(&v);
        let Some(c) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[c]).expect("nonzero");
        f.scale(&mut v, &inv);
        for row in self.basis.iter_mut() {
            if !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                f.axpy(row, &factor, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(at, c);
        self.basis.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // x = Σ aᵢ uᵢ = Σ bⱼ wⱼ  ⇔  (a, -b) in the left kernel of [U; W].
        let f = &self.field;
        let stacked = self.basis_matrix().vstack(&other.basis_matrix());
        let kernel = stacked.left_nullspace();
        let u = self.basis_matrix();
        let vecs = (0..kernel.rows()).map(|i| {
            let a = &kernel.row(i)[..self.dim()];
            u.apply(a)
        });
        Self::spanned_by(f, self.ambient, vecs)
    }

    /// Non-pivot column indices; these index the quotient coordinates.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.codim());
        let mut next = 0;
        for c in 0..self.ambient {
            if next < self.pivots.len() && self.pivots[next] == c {
                next += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Coordinates of the class of `v` in `F^n / W`.
    pub fn quotient_coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.reduce(v);
        self.complement_positions()
            .into_iter()
            .map(|c| r[c].clone())
            .collect()
    }

    /// The `ambient × codim` matrix of `v ↦ quotient_coords(v)`.
    pub fn quotient_matrix(&self) -> Mat<F> {
        let f = &self.field;
        let comp = self.complement_positions();
        let rows: Vec<Vec<F::Elem>> = (0..self.ambient)
            .map(|i| {
                let mut e = vec![f.zero(); self.ambient];
                e[i] = f.one();
                let r = self.reduce(&e);
                comp.iter().map(|&c| r[c].clone()).collect()
            })
            .collect();
        Mat::from_rows(f, comp.len(), &rows)
    }

    /// The `codim × ambient` matrix lifting quotient coordinates to the
    /// canonical complement.
    pub fn section_matrix(&self) -> Mat<F> {
        let f = &self.field;
        let comp = self.complement_positions();
        Mat::from_fn(f, comp.len(), self.ambient, |i, j| {
            if comp[i] == j {
                f.one()
            } else {
                f.zero()
            }
        })
    }

    /// Basis of `{x : x·bᵀ = 0 for all basis rows b}`, i.e. the solution space
    /// of the linear system whose equations are the basis rows.
    pub fn orthogonal_kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        self.complement_positions()
            .into_iter()
            .map(|free| {
                let mut x = vec![f.zero(); self.ambient];
                x[free] = f.one();
                for (row, &c) in self.basis.iter().zip(&self.pivots) {
                    x[c] = f.neg(&row[free]);
                }
                x
            })
            .collect()
    }
}

/// Solution space of a homogeneous system given equation by equation:
/// all `x ∈ F^n` with `⟨eq, x⟩ = 0` for every `eq`.
pub fn solve_homogeneous<F: Field>(
    field: &F,
    n: usize,
    equations: impl IntoIterator<Item = Vec<F::Elem>>,
) -> Vec<Vec<F::Elem>> {
    let mut eqs = Subspace::zero(field, n);
    for e in equations {
        eqs.insert(e);
        if eqs.is_full() {
            return Vec::new();
        }
    }
    eqs.orthogonal_kernel()
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| {
        if field.is_zero(x) || field.is_zero(y) {
            acc
        } else {
            field.add(&acc, &field.mul(x, y))
        }
    })
}

pub fn is_zero_vec<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

/// Unit vector `e_i` of length `n`.
pub fn unit_vec<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn vec_add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn vec_sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn vec_scale<F: Field>(field: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| field.mul(c, x)).collect()
}

impl<F: Field> Mat<F> {
    pub fn col_vec(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
}
