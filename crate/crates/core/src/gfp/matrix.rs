//! Dense matrices, vectors and echelonized subspaces over a [`Field`].

use std::fmt;

use super::{Fe, Field, GfError};

/// Vector helpers. Vectors are plain `Vec<Fe>` / `&[Fe]` slices.
impl Field {
    pub fn vzero(&self, n: usize) -> Vec<Fe> {
        vec![Fe::ZERO; n]
    }

    pub fn unit(&self, n: usize, i: usize) -> Vec<Fe> {
        let mut v = self.vzero(n);
        v[i] = Fe::ONE;
        v
    }

    pub fn vadd(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn vsub(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn vscale(&self, c: Fe, a: &[Fe]) -> Vec<Fe> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    pub fn vneg(&self, a: &[Fe]) -> Vec<Fe> {
        a.iter().map(|&x| self.neg(x)).collect()
    }

    /// `y += c * x`.
    #[inline]
    pub fn axpy(&self, y: &mut [Fe], c: Fe, x: &[Fe]) {
        if c.is_zero() {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi = self.add(*yi, self.mul(c, xi));
            }
        }
    }

    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Componentwise Frobenius.
    pub fn vfrob(&self, a: &[Fe]) -> Vec<Fe> {
        a.iter().map(|&x| self.frobenius(x)).collect()
    }

    pub fn vfrob_inv(&self, a: &[Fe]) -> Vec<Fe> {
        a.iter().map(|&x| self.frobenius_inv(x)).collect()
    }
}

pub fn is_zero_vec(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
    pub field: Field,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Particular solution plus an echelonized nullspace basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Fe>,
    pub nullspace: Vec<Vec<Fe>>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, Fe::ONE)
    }

    pub fn scalar(field: &Field, n: usize, c: Fe) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Result<Matrix, GfError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GfError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat(), field: field.clone() })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().take(rows).enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    /// Convenience constructor from small integers (reduced mod p).
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_rows(field, &rows).expect("rectangular literal")
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn scalar_value(&self) -> Option<Fe> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { Fe::ZERO } else { self.get(0, 0) };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let want = if r == k { c } else { Fe::ZERO };
                if self.get(r, k) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    fn check_same_shape(&self, o: &Matrix) {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.check_same_shape(o);
        let data = self.field.vadd(&self.data, &o.data);
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.check_same_shape(o);
        let data = self.field.vsub(&self.data, &o.data);
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        Matrix { data: self.field.vscale(c, &self.data), ..self.clone() }
    }

    /// `self += c * o`.
    pub fn axpy(&mut self, c: Fe, o: &Matrix) {
        self.check_same_shape(o);
        let f = self.field.clone();
        f.axpy(&mut self.data, c, &o.data);
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * o.cols..(i + 1) * o.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if !a.is_zero() {
                    f.axpy(dst, a, o.row(k));
                }
            }
        }
        out
    }

    /// `self · v` with `v` a column vector.
    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// `v^T · self` with `v` a row vector.
    pub fn vec_mul(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = self.field.vzero(self.cols);
        for (r, &c) in v.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(r));
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, mut k: u64) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Entrywise Frobenius.
    pub fn frobenius(&self) -> Matrix {
        Matrix { data: self.field.vfrob(&self.data), ..self.clone() }
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if pr != r {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, r * m.cols + k);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for k in c..m.cols {
                let v = m.get(r, k);
                m.set(r, k, f.mul(inv, v));
            }
            let pivot_row = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                let cols = m.cols;
                f.axpy(&mut m.data[i * cols + c..(i + 1) * cols], nf, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, echelonized.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = f.vzero(self.cols);
            v[free] = Fe::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis).basis
    }

    /// Solves `self·x = b`.
    pub fn solve(&self, b: &[Fe]) -> Result<Solution, GfError> {
        if b.len() != self.rows {
            return Err(GfError::Shape(format!("rhs has length {}, expected {}", b.len(), self.rows)));
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for (r, &v) in b.iter().enumerate() {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, v);
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(GfError::NoSolution);
        }
        let mut particular = f.vzero(self.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            particular[pc] = red.get(i, self.cols);
        }
        Ok(Solution { particular, nullspace: self.nullspace() })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Fe::ONE);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Characteristic polynomial `det(X·I − A)`, low-to-high, monic of degree n.
    /// Computed through an upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<Fe> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else { continue };
            if piv != j + 1 {
                for k in 0..n {
                    h.data.swap(piv * n + k, (j + 1) * n + k);
                }
                for k in 0..n {
                    h.data.swap(k * n + piv, k * n + j + 1);
                }
            }
            let pinv = f.inv(h.get(j + 1, j)).expect("nonzero pivot");
            for i in j + 2..n {
                let u = f.mul(h.get(i, j), pinv);
                if u.is_zero() {
                    continue;
                }
                // row_i -= u row_{j+1}; col_{j+1} += u col_i (similarity)
                for k in 0..n {
                    let v = f.sub(h.get(i, k), f.mul(u, h.get(j + 1, k)));
                    h.set(i, k, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, j + 1), f.mul(u, h.get(k, i)));
                    h.set(k, j + 1, v);
                }
            }
        }
        // p_k = charpoly of the leading k×k block
        let mut polys: Vec<Vec<Fe>> = vec![vec![Fe::ONE]];
        for k in 0..n {
            // (X − h_kk) p_k
            let pk = &polys[k];
            let mut next = vec![Fe::ZERO; k + 2];
            for (d, &c) in pk.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h.get(k, k), c));
            }
            let mut prod = Fe::ONE;
            for i in (0..k).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(prod, h.get(i, k));
                if coef.is_zero() {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("nonempty")
    }

    pub fn trace(&self) -> Fe {
        (0..self.rows.min(self.cols)).fold(Fe::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows + o.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..o.rows {
            for c in 0..o.cols {
                m.set(self.rows + r, self.cols + c, o.get(r, c));
            }
        }
        m
    }

    /// Applies a field map to every entry.
    pub fn map_entries(&self, field: &Field, g: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| g(x)).collect(), field: field.clone() }
    }
}

/// Subspace of `F^n` stored as a reduced row-echelon basis (canonical).
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    pub n: usize,
    pub basis: Vec<Vec<Fe>>,
    pub pivots: Vec<usize>,
    pub field: Field,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| self.field.format(x)).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "Subspace(dim {} of {}: [{}])", self.dim(), self.n, rows.join("; "))
    }
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace { n, basis: vec![], pivots: vec![], field: field.clone() }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        let basis = (0..n).map(|i| field.unit(n, i)).collect();
        Subspace { n, basis, pivots: (0..n).collect(), field: field.clone() }
    }

    pub fn from_vectors(field: &Field, n: usize, vecs: &[Vec<Fe>]) -> Subspace {
        if vecs.is_empty() {
            return Subspace::zero(field, n);
        }
        let m = Matrix::from_rows(field, vecs).expect("vectors of equal length");
        assert_eq!(m.cols, n, "vector length mismatch");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { n, basis, pivots, field: field.clone() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let f = &self.field;
        let c: Vec<Fe> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            f.axpy(&mut r, f.neg(*ci), b);
        }
        is_zero_vec(&r).then_some(c)
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vecs = self.basis.clone();
        vecs.extend(o.basis.iter().cloned());
        Subspace::from_vectors(&self.field, self.n, &vecs)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔  [U; −W]^T (a, b) = 0
        let f = &self.field;
        let mut cols: Vec<Vec<Fe>> = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| f.vneg(w)));
        if cols.is_empty() {
            return Subspace::zero(f, self.n);
        }
        let m = Matrix::from_cols(f, self.n, &cols);
        let vecs: Vec<Vec<Fe>> = m
            .nullspace()
            .iter()
            .map(|sol| {
                let mut x = f.vzero(self.n);
                for (i, u) in self.basis.iter().enumerate() {
                    f.axpy(&mut x, sol[i], u);
                }
                x
            })
            .collect();
        Subspace::from_vectors(f, self.n, &vecs)
    }

    /// Standard basis vectors completing the echelon basis to `F^n`.
    pub fn complement_units(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Fe>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(&self.field, m.rows, &vecs)
    }

    pub fn is_invariant(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }
}

/// Incrementally built semi-echelon basis, for spinning and closure loops.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    pub field: Field,
    pub n: usize,
    /// Reduced rows (each is zero at the pivots of the rows before it) and their pivot.
    rows: Vec<(usize, Vec<Fe>)>,
    /// The vectors as originally inserted, in insertion order.
    pub originals: Vec<Vec<Fe>>,
}

impl EchelonBasis {
    pub fn new(field: &Field, n: usize) -> Self {
        EchelonBasis { field: field.clone(), n, rows: vec![], originals: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut r = v.to_vec();
        for (pc, row) in &self.rows {
            let c = r[*pc];
            if !c.is_zero() {
                f.axpy(&mut r, f.neg(c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        let r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = self.field.inv(r[pc]).expect("nonzero");
        let r = self.field.vscale(inv, &r);
        self.rows.push((pc, r));
        self.originals.push(v.to_vec());
        true
    }

    pub fn to_subspace(&self) -> Subspace {
        let vecs: Vec<Vec<Fe>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        Subspace::from_vectors(&self.field, self.n, &vecs)
    }
}
