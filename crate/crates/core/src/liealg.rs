//! Structure-constant Lie algebras over a finite field.

use std::collections::HashSet;

use rand::Rng;
use thiserror::Error;

use crate::gfp::{Fe, Field, GfError, Matrix, Subspace};

/// Largest supported dimension.
pub const MAX_DIM: usize = 16;
/// Bound on the number of subspaces scanned by [`LieAlgebra::ideals`].
pub const SUBSPACE_BOUND: f64 = 1e6;

/// Coordinates of an element in the algebra's basis.
pub type LieElement = Vec<Fe>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiViolation(String, String, String),
    #[error("bad coefficient: {0}")]
    BadCoefficient(String),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("bracket [{0},{1}] is given inconsistently")]
    InconsistentBracket(String, String),
    #[error("dimension {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("{0} subspaces exceed the enumeration bound")]
    TooManySubspaces(u64),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub field: Field,
    pub labels: Vec<String>,
    /// `table[i * n + j]` holds `[e_i, e_j]`.
    table: Vec<LieElement>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra({:?} over {:?})", self.labels, self.field)
    }
}

impl LieAlgebra {
    /// Builds an algebra from the brackets of basis pairs (unlisted pairs are zero),
    /// checking antisymmetric consistency and the Jacobi identity.
    pub fn new(field: &Field, labels: Vec<String>, brackets: &[(usize, usize, LieElement)]) -> Result<Self, LieError> {
        let n = labels.len();
        if n > MAX_DIM {
            return Err(LieError::TooLarge(n));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        let mut table = vec![field.vzero(n); n * n];
        let mut set = vec![false; n * n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if v.len() != n {
                return Err(LieError::DimensionMismatch { expected: n, got: v.len() });
            }
            let inconsistent = || LieError::InconsistentBracket(labels[i].clone(), labels[j].clone());
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(inconsistent());
                }
                continue;
            }
            let neg = field.vneg(v);
            if (set[i * n + j] && table[i * n + j] != *v) || (set[j * n + i] && table[j * n + i] != neg) {
                return Err(inconsistent());
            }
            table[i * n + j] = v.clone();
            table[j * n + i] = neg;
            set[i * n + j] = true;
            set[j * n + i] = true;
        }
        let alg = LieAlgebra { field: field.clone(), labels, table };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Abelian algebra with the given labels.
    pub fn abelian(field: &Field, labels: Vec<String>) -> Result<Self, LieError> {
        LieAlgebra::new(field, labels, &[])
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let s1 = self.bracket(&a, &self.bracket(&b, &c));
                    let s2 = self.bracket(&b, &self.bracket(&c, &a));
                    let s3 = self.bracket(&c, &self.bracket(&a, &b));
                    let sum = self.field.vadd(&self.field.vadd(&s1, &s2), &s3);
                    if sum.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::JacobiViolation(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LieError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| LieError::UnknownLabel(label.to_string()))
    }

    pub fn basis(&self, i: usize) -> LieElement {
        self.field.unit(self.dim(), i)
    }

    pub fn zero(&self) -> LieElement {
        self.field.vzero(self.dim())
    }

    /// Element from `(label, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, Fe)]) -> Result<LieElement, LieError> {
        let mut v = self.zero();
        for (l, c) in terms {
            let i = self.index_of(l)?;
            v[i] = self.field.add(v[i], *c);
        }
        Ok(v)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &LieElement {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> LieElement {
        let n = self.dim();
        let f = &self.field;
        let mut out = self.zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                f.axpy(&mut out, f.mul(xi, yj), &self.table[i * n + j]);
            }
        }
        out
    }

    /// Matrix of `y ↦ [x, y]` acting on column vectors.
    pub fn ad(&self, x: &[Fe]) -> Matrix {
        let n = self.dim();
        let cols: Vec<LieElement> = (0..n).map(|j| self.bracket(x, &self.basis(j))).collect();
        Matrix::from_cols(&self.field, n, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<LieElement> = (0..n).map(|j| self.table[i * n + j].clone()).collect();
        Matrix::from_cols(&self.field, n, &cols)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(&self.field, self.dim())
    }

    pub fn span(&self, vecs: &[LieElement]) -> Subspace {
        Subspace::from_vectors(&self.field, self.dim(), vecs)
    }

    pub fn is_subalgebra(&self, v: &Subspace) -> bool {
        let b = &v.basis;
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| v.contains(&self.bracket(&b[i], &b[j]))))
    }

    pub fn is_ideal(&self, v: &Subspace) -> bool {
        v.basis.iter().all(|x| (0..self.dim()).all(|i| v.contains(&self.bracket(&self.basis(i), x))))
    }

    /// `[V, V]`.
    pub fn derived_of(&self, v: &Subspace) -> Result<Subspace, LieError> {
        if !self.is_subalgebra(v) {
            return Err(LieError::NotSubalgebra);
        }
        let b = &v.basis;
        let mut vecs = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                vecs.push(self.bracket(&b[i], &b[j]));
            }
        }
        Ok(self.span(&vecs))
    }

    pub fn derived(&self) -> Subspace {
        self.derived_of(&self.whole()).expect("L is a subalgebra of itself")
    }

    /// `{y ∈ L : [v, y] = 0 for all v ∈ V}`.
    pub fn centralizer(&self, v: &Subspace) -> Subspace {
        if v.is_zero() {
            return self.whole();
        }
        let mut rows = Vec::new();
        for x in &v.basis {
            rows.extend(self.ad(x).row_vecs());
        }
        let m = Matrix::from_rows(&self.field, &rows).expect("rectangular");
        self.span(&m.nullspace())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.whole())
    }

    /// Total number of subspaces of `F^n`.
    pub fn subspace_count(&self) -> f64 {
        let q = self.field.order() as f64;
        let n = self.dim();
        (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
    }

    /// Every ideal, ordered by dimension and then lexicographically by echelon form.
    pub fn ideals(&self) -> Result<Vec<Subspace>, LieError> {
        let count = self.subspace_count();
        if count > SUBSPACE_BOUND {
            return Err(LieError::TooManySubspaces(count as u64));
        }
        let mut out = Vec::new();
        for k in 0..=self.dim() {
            let mut level = Vec::new();
            for_each_subspace(&self.field, self.dim(), k, |s| {
                if self.is_ideal(&s) {
                    level.push(s);
                }
            });
            level.sort_by(|a, b| a.basis.cmp(&b.basis));
            out.extend(level);
        }
        Ok(out)
    }

    /// The same algebra in a new basis (rows of `new_basis`, in old coordinates).
    pub fn change_basis(&self, new_basis: &[LieElement], labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        let p = Matrix::from_cols(&self.field, n, new_basis);
        let pinv = p.inverse().ok_or(LieError::BadCoefficient("new basis is singular".into()))?;
        self.transport(new_basis, &pinv, labels)
    }

    /// Restriction of the bracket to a subalgebra, in its echelon basis.
    pub fn subalgebra(&self, v: &Subspace, labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        if !self.is_subalgebra(v) {
            return Err(LieError::NotSubalgebra);
        }
        let f = &self.field;
        let k = v.dim();
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let c = v.coords(&self.bracket(&v.basis[i], &v.basis[j])).expect("closed");
                brackets.push((i, j, c));
            }
        }
        LieAlgebra::new(f, labels, &brackets)
    }

    /// `L / I` on the cosets of the standard basis vectors not among I's pivots.
    /// Returns the quotient and the indices of those basis vectors.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Vec<usize>), LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotSubalgebra);
        }
        let reps = ideal.complement_units();
        let labels = reps.iter().map(|&i| self.labels[i].clone()).collect();
        let mut brackets = Vec::new();
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                let c = self.reduce_mod(ideal, self.bracket_basis(reps[a], reps[b]));
                brackets.push((a, b, reps.iter().map(|&i| c[i]).collect()));
            }
        }
        Ok((LieAlgebra::new(&self.field, labels, &brackets)?, reps))
    }

    /// Canonical representative of `x + I`: zero at the pivot columns of `I`.
    pub fn reduce_mod(&self, ideal: &Subspace, x: &[Fe]) -> LieElement {
        let f = &self.field;
        let mut r = x.to_vec();
        for (pc, b) in ideal.pivots.iter().zip(&ideal.basis) {
            let c = r[*pc];
            f.axpy(&mut r, f.neg(c), b);
        }
        r
    }

    fn transport(&self, new_basis: &[LieElement], pinv: &Matrix, labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        let k = new_basis.len();
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let c = pinv.mul_vec(&self.bracket(&new_basis[i], &new_basis[j]));
                brackets.push((i, j, c));
            }
        }
        LieAlgebra::new(&self.field, labels, &brackets)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> LieElement {
        let q = self.field.order();
        (0..self.dim()).map(|_| Fe(rng.gen_range(0..q))).collect()
    }

    /// Text form such as `2*e + h`.
    pub fn format_element(&self, x: &[Fe]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                if c == Fe::ONE {
                    self.labels[i].clone()
                } else {
                    format!("({})*{}", self.field.format(c), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn gaussian_binomial(n: usize, k: usize, q: f64) -> f64 {
    let mut num = 1.0;
    let mut den = 1.0;
    for i in 0..k {
        num *= q.powi((n - i) as i32) - 1.0;
        den *= q.powi((i + 1) as i32) - 1.0;
    }
    num / den
}

/// Calls `visit` on every `k`-dimensional subspace of `F^n`, each given by its
/// reduced echelon basis.
pub fn for_each_subspace(field: &Field, n: usize, k: usize, mut visit: impl FnMut(Subspace)) {
    let q = field.order();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: row r, column c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut counter = vec![0u32; free.len()];
        loop {
            let mut basis: Vec<Vec<Fe>> = (0..k).map(|r| field.unit(n, pivots[r])).collect();
            for (slot, &(r, c)) in free.iter().enumerate() {
                basis[r][c] = Fe(counter[slot]);
            }
            visit(Subspace { n, basis, pivots: pivots.clone(), field: field.clone() });
            let mut pos = 0;
            while pos < counter.len() {
                counter[pos] += 1;
                if counter[pos] < q {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == counter.len() {
                break;
            }
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::Fe;

    pub(crate) fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn sl2(p: u32) -> LieAlgebra {
        let f = Field::prime(p).unwrap();
        let c = |x: i64| f.from_int(x);
        // basis (e, f, h)
        LieAlgebra::new(
            &f,
            labels(&["e", "f", "h"]),
            &[
                (0, 1, vec![c(0), c(0), c(1)]),
                (2, 0, vec![c(2), c(0), c(0)]),
                (2, 1, vec![c(0), c(-2), c(0)]),
            ],
        )
        .unwrap()
    }

    fn dim2() -> LieAlgebra {
        let f = Field::prime(3).unwrap();
        LieAlgebra::new(&f, labels(&["h", "x"]), &[(0, 1, vec![Fe(0), Fe(1)])]).unwrap()
    }

    fn dim4(p: u32) -> LieAlgebra {
        let f = Field::prime(p).unwrap();
        let c = |x: i64| f.from_int(x);
        LieAlgebra::new(
            &f,
            labels(&["t", "x", "y", "z"]),
            &[
                (0, 1, vec![c(0), c(1), c(0), c(0)]),
                (0, 2, vec![c(0), c(0), c(-1), c(0)]),
                (1, 2, vec![c(0), c(0), c(0), c(1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction() {
        sl2(5);
        LieAlgebra::abelian(&Field::prime(3).unwrap(), labels(&["a", "b", "c"])).unwrap();
        let f = Field::prime(3).unwrap();
        let err = LieAlgebra::new(
            &f,
            labels(&["a", "b", "c"]),
            &[(0, 1, vec![Fe(0), Fe(0), Fe(1)]), (1, 2, vec![Fe(0), Fe(1), Fe(0)])],
        )
        .unwrap_err();
        assert_eq!(err, LieError::JacobiViolation("a".into(), "b".into(), "c".into()));
        assert!(matches!(LieAlgebra::abelian(&f, labels(&["a", "a"])), Err(LieError::DuplicateLabel(_))));
        assert!(matches!(
            LieAlgebra::new(&f, labels(&["a", "b"]), &[(0, 1, vec![Fe(1), Fe(0)]), (1, 0, vec![Fe(1), Fe(0)])]),
            Err(LieError::InconsistentBracket(..))
        ));
    }

    #[test]
    fn brackets_and_ad() {
        let d = dim2();
        let f = &d.field;
        assert_eq!(d.bracket(&d.basis(0), &d.basis(1)), d.basis(1));
        assert_eq!(d.bracket(&d.basis(1), &d.basis(1)), d.zero());
        assert_eq!(d.ad(&d.basis(0)), Matrix::from_ints(f, &[&[0, 0], &[0, 1]]));
        assert!(d.ad(&d.zero()).is_zero());

        let s = sl2(3);
        let ef = s.element(&[("e", Fe::ONE), ("f", Fe::ONE)]).unwrap();
        let r = s.bracket(&ef, &s.basis(2));
        assert_eq!(r, s.element(&[("e", Fe(1)), ("f", Fe(2))]).unwrap());

        let d4 = dim4(3);
        assert!(d4.ad(&d4.basis(3)).is_zero());
    }

    #[test]
    fn derived_center_ideals() {
        let d = dim2();
        assert_eq!(d.derived(), d.span(&[d.basis(1)]));
        assert!(sl2(3).derived().is_full());
        let ab = LieAlgebra::abelian(&Field::prime(2).unwrap(), labels(&["a", "b"])).unwrap();
        assert!(ab.derived().is_zero());
        assert!(ab.center().is_full());

        let d4 = dim4(3);
        assert_eq!(d4.center(), d4.span(&[d4.basis(3)]));
        assert!(sl2(5).center().is_zero());

        let s = sl2(3);
        let fe = s.span(&[s.basis(0)]);
        assert!(s.is_subalgebra(&fe) && !s.is_ideal(&fe));
        assert!(d.is_ideal(&d.span(&[d.basis(1)])));

        let z = d4.basis(3);
        let x = d4.basis(1);
        let y = d4.basis(2);
        let expected = vec![
            d4.span(&[]),
            d4.span(std::slice::from_ref(&z)),
            d4.span(&[z.clone(), x.clone()]),
            d4.span(&[z.clone(), y.clone()]),
            d4.span(&[z, x, y]),
            d4.whole(),
        ];
        let ideals = d4.ideals().unwrap();
        assert_eq!(ideals.len(), 6);
        for e in &expected {
            assert!(ideals.contains(e));
        }
        assert_eq!(d.ideals().unwrap(), vec![d.span(&[]), d.span(&[d.basis(1)]), d.whole()]);
        let one = LieAlgebra::abelian(&Field::prime(3).unwrap(), labels(&["a"])).unwrap();
        assert_eq!(one.ideals().unwrap().len(), 2);
    }

    #[test]
    fn subspace_enumeration_counts() {
        let f = Field::prime(2).unwrap();
        // Gaussian binomials [4 choose k]_2 = 1, 15, 35, 15, 1
        for (k, want) in [1usize, 15, 35, 15, 1].iter().enumerate() {
            let mut c = 0;
            for_each_subspace(&f, 4, k, |_| c += 1);
            assert_eq!(c, *want);
        }
    }

    #[test]
    fn quotient_and_change_of_basis() {
        let d4 = dim4(3);
        let (q, reps) = d4.quotient(&d4.center()).unwrap();
        assert_eq!(reps, vec![0, 1, 2]);
        assert!(q.bracket(&q.basis(1), &q.basis(2)).iter().all(|c| c.is_zero()));
        let s = sl2(3);
        let b = vec![s.basis(1), s.basis(0), s.vneg_elem(2)];
        let t = s.change_basis(&b, labels(&["e'", "f'", "h'"])).unwrap();
        // swapping e and f and negating h preserves the sl2 relations
        assert_eq!(t.bracket_basis(0, 1), &t.basis(2));
        let h = Subspace::from_vectors(&s.field, 3, &[s.basis(2)]);
        assert_eq!(s.subalgebra(&h, labels(&["h"])).unwrap().dim(), 1);
    }

    impl LieAlgebra {
        fn vneg_elem(&self, i: usize) -> LieElement {
            self.field.vneg(&self.basis(i))
        }
    }
}
