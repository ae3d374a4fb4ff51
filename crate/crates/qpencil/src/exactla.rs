//! Dense exact linear algebra over GF(2^m): kernels, determinants, inverses,
//! and Pfaffians of alternating matrices.

use crate::error::{Error, Result};
use crate::gf2m::{Fe, FieldEmbedding, FieldSpec};

/// Row-major dense matrix with all entries in one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.spec.name())?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(spec: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { spec: spec.clone(), rows, cols, entries: vec![spec.zero(); rows * cols] }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn from_rows(spec: &FieldSpec, rows: Vec<Vec<Fe>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries: Vec<Fe> = rows.into_iter().flatten().collect();
        assert!(entries.iter().all(|e| e.spec() == spec), "mixed fields in matrix");
        Matrix { spec: spec.clone(), rows: r, cols: c, entries }
    }

    pub fn from_fn(spec: &FieldSpec, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Fe) -> Matrix {
        let mut m = Matrix::zero(spec, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Fe {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        assert!(v.spec() == &self.spec, "entry from a different field");
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> Vec<Fe> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.spec, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(&self.spec, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &*out.at(i, j) + &(a * other.at(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Fe) -> Matrix {
        Matrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.spec.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = &acc + &(self.at(i, j) * x);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form on raw entry bits; the workhorse behind
    /// rank, kernel, and inverse. Row-major bit rows keep the elimination
    /// free of per-entry handle traffic.
    fn rref_bits(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let spec = &self.spec;
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.entries[r * self.cols + c].bits())
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, p);
            let inv = spec.inv_bits(m[row][col]);
            if inv != 1 {
                for c in col..self.cols {
                    m[row][c] = spec.mul_bits(m[row][c], inv);
                }
            }
            for r in 0..self.rows {
                if r != row && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in col..self.cols {
                        m[r][c] ^= spec.mul_bits(factor, m[row][c]);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_bits().1.len()
    }

    /// Basis of the right kernel { v : Mv = 0 }, deterministic: one vector
    /// per free column in column order.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref_bits();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.spec.zero(); self.cols];
            v[free] = self.spec.one();
            for (prow, pcol) in pivots.iter().copied().enumerate() {
                // pivot row: x_pcol + (free-column entries) = 0
                v[pcol] = self.spec.el(r[prow][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by Gaussian elimination. Row swaps cost nothing in
    /// characteristic 2.
    pub fn det(&self) -> Fe {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut acc = self.spec.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return self.spec.zero();
            };
            if p != col {
                for c in 0..n {
                    let tmp = m.at(col, c).clone();
                    let v = m.at(p, c).clone();
                    m.set(col, c, v);
                    m.set(p, c, tmp);
                }
            }
            let pivot = m.at(col, col).clone();
            acc = &acc * &pivot;
            let inv = pivot.inv().unwrap();
            for r in (col + 1)..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = &*m.at(r, col) * &inv;
                for c in col..n {
                    let v = &*m.at(r, c) + &(&factor * m.at(col, c));
                    m.set(r, c, v);
                }
            }
        }
        acc
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.det().is_zero()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(&self.spec, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, self.spec.one());
        }
        let (r, pivots) = aug.rref_bits();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(&self.spec, n, n, |i, j| {
            self.spec.el(r[i][n + j])
        }))
    }

    /// Entry-wise image under a field embedding.
    pub fn embed(&self, emb: &FieldEmbedding) -> Matrix {
        Matrix {
            spec: emb.to_spec().clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| emb.embed(e)).collect(),
        }
    }

    /// Scales so the first nonzero entry in row-major order is 1; the
    /// canonical representative of a point of PGL.
    pub fn canonical_mod_scalar(&self) -> Matrix {
        match self.entries.iter().find(|e| !e.is_zero()) {
            None => self.clone(),
            Some(first) => self.scale(&first.inv().unwrap()),
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(spec: &FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        Matrix {
            spec: spec.clone(),
            rows,
            cols,
            entries: (0..rows * cols).map(|_| spec.random(rng)).collect(),
        }
    }

    pub fn random_invertible<R: rand::Rng + ?Sized>(spec: &FieldSpec, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(spec, n, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Symmetric matrix with zero diagonal: the characteristic-2 meaning of
/// alternating.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlternatingMatrix(Matrix);

impl AlternatingMatrix {
    pub fn new(m: Matrix) -> Result<AlternatingMatrix> {
        if m.rows() != m.cols() {
            return Err(Error::Dimension("alternating matrix must be square".into()));
        }
        for i in 0..m.rows() {
            if !m.at(i, i).is_zero() {
                return Err(Error::Dimension("alternating matrix needs zero diagonal".into()));
            }
            for j in (i + 1)..m.cols() {
                if m.at(i, j) != m.at(j, i) {
                    return Err(Error::Dimension("alternating matrix must be symmetric".into()));
                }
            }
        }
        Ok(AlternatingMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn spec(&self) -> &FieldSpec {
        self.0.spec()
    }

    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        self.0.kernel()
    }

    pub fn det(&self) -> Fe {
        self.0.det()
    }

    /// Pfaffian by alternating-preserving congruence elimination.
    ///
    /// Pivots on a nonzero off-diagonal entry, clears its row/column pair
    /// with determinant-one elementary congruences, and accumulates the
    /// pivot product; every congruence used has det 1, so no correction
    /// factor remains. A row with no off-diagonal support means the matrix
    /// is degenerate and the Pfaffian is 0; degenerate forms are data here,
    /// not errors.
    pub fn pfaffian(&self) -> Result<Fe> {
        let n = self.dim();
        if n % 2 != 0 {
            return Err(Error::Dimension(format!(
                "Pfaffian needs even dimension, got {n}"
            )));
        }
        let spec = self.spec().clone();
        let mut m = self.0.clone();
        let mut acc = spec.one();
        let mut k = 0;
        while k < n {
            let Some(p) = ((k + 1)..n).find(|&j| !m.at(k, j).is_zero()) else {
                return Ok(spec.zero());
            };
            if p != k + 1 {
                swap_pair(&mut m, p, k + 1);
            }
            let pivot = m.at(k, k + 1).clone();
            acc = &acc * &pivot;
            let inv = pivot.inv().unwrap();
            for i in (k + 2)..n {
                // clear m[k][i] using row/col k+1, then m[k+1][i] using row/col k
                let f1 = &*m.at(k, i) * &inv;
                if !f1.is_zero() {
                    add_pair(&mut m, i, k + 1, &f1);
                }
                let f2 = &*m.at(k + 1, i) * &inv;
                if !f2.is_zero() {
                    add_pair(&mut m, i, k, &f2);
                }
            }
            k += 2;
        }
        Ok(acc)
    }

    /// S * A * S^T, still alternating.
    pub fn congruence(&self, s: &Matrix) -> Result<AlternatingMatrix> {
        if s.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "congruence shape mismatch: S is {}x{}, A is {}x{}",
                s.rows(),
                s.cols(),
                self.dim(),
                self.dim()
            )));
        }
        let m = s.mul(&self.0).mul(&s.transpose());
        AlternatingMatrix::new(m)
    }

    pub fn embed(&self, emb: &FieldEmbedding) -> AlternatingMatrix {
        AlternatingMatrix(self.0.embed(emb))
    }

    pub fn random<R: rand::Rng + ?Sized>(spec: &FieldSpec, n: usize, rng: &mut R) -> AlternatingMatrix {
        let mut m = Matrix::zero(spec, n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = spec.random(rng);
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        AlternatingMatrix(m)
    }
}

/// Swaps rows i<->j and columns i<->j (congruence by a transposition, which
/// has determinant 1 in characteristic 2).
fn swap_pair(m: &mut Matrix, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let a = m.at(i, c).clone();
        let b = m.at(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
    for r in 0..n {
        let a = m.at(r, i).clone();
        let b = m.at(r, j).clone();
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

/// Adds f * (row src) to row dst and f * (col src) to col dst.
fn add_pair(m: &mut Matrix, dst: usize, src: usize, f: &Fe) {
    let n = m.rows();
    for c in 0..n {
        let v = &*m.at(dst, c) + &(f * m.at(src, c));
        m.set(dst, c, v);
    }
    for r in 0..n {
        let v = &*m.at(r, dst) + &(f * m.at(r, src));
        m.set(r, dst, v);
    }
}
