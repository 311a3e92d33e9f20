//! Eigenvalue functions λ on an ideal I, the eigenspaces V^λ and the
//! stabilizers L^λ.

use super::{RepError, Representation};
use crate::gfp::{Fe, Field, Matrix, Subspace};
use crate::liealg::{LieAlgebra, LieElement};
use crate::pstruct::PMapping;

/// A linear form on an ideal, given by its values on the ideal's echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueFunction {
    pub ideal: Subspace,
    pub values: Vec<Fe>,
}

impl EigenvalueFunction {
    pub fn eval(&self, field: &Field, y: &[Fe]) -> Option<Fe> {
        self.ideal.coords(y).map(|c| field.dot(&c, &self.values))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// λ extended to all of L by reading coordinates at the ideal's pivots.
/// Agrees with λ on I.
pub fn lambda_functional(lambda: &EigenvalueFunction) -> Vec<Fe> {
    let n = lambda.ideal.n;
    let mut out = vec![Fe::ZERO; n];
    for (pc, &v) in lambda.ideal.pivots.iter().zip(&lambda.values) {
        out[*pc] = v;
    }
    out
}

fn intersect_kernel(field: &Field, w: &[Vec<Fe>], a: &Matrix, c: Fe) -> Vec<Vec<Fe>> {
    if w.is_empty() {
        return vec![];
    }
    let d = a.rows;
    let shifted = a.sub(&Matrix::scalar(field, d, c));
    let bmat = Matrix::from_cols(field, d, w);
    let ns = shifted.mul(&bmat).nullspace();
    let vecs: Vec<Vec<Fe>> = ns.iter().map(|x| bmat.mul_vec(x)).collect();
    Subspace::from_vectors(field, d, &vecs).basis
}

fn roots(field: &Field, poly: &[Fe]) -> Vec<Fe> {
    field
        .elements()
        .filter(|&x| poly.iter().rev().fold(Fe::ZERO, |acc, &c| field.add(field.mul(acc, x), c)).is_zero())
        .collect()
}

/// All λ on `ideal` with `V^λ ≠ 0`, in lexicographic order of their values.
pub fn eigenvalue_functions(rep: &Representation, ideal: &Subspace) -> Result<Vec<EigenvalueFunction>, RepError> {
    let alg = &rep.alg;
    let f = rep.field();
    if !alg.is_ideal(ideal) {
        return Err(RepError::NotIdeal);
    }
    let derived = alg.derived_of(ideal)?;
    for z in &derived.basis {
        if !rep.act(z).pow(rep.dim as u64).is_zero() {
            return Err(RepError::DerivedNotNilpotent);
        }
    }
    let d = rep.dim;
    let mut parts: Vec<(Vec<Fe>, Vec<Vec<Fe>>)> = vec![(vec![], (0..d).map(|i| f.unit(d, i)).collect())];
    for y in &ideal.basis {
        let a = rep.act(y);
        let candidates = roots(f, &a.charpoly());
        let mut next = Vec::new();
        for (vals, w) in &parts {
            for &c in &candidates {
                let k = intersect_kernel(f, w, &a, c);
                if !k.is_empty() {
                    let mut v = vals.clone();
                    v.push(c);
                    next.push((v, k));
                }
            }
        }
        parts = next;
    }
    let mut out: Vec<EigenvalueFunction> = parts
        .into_iter()
        .map(|(values, _)| EigenvalueFunction { ideal: ideal.clone(), values })
        .collect();
    for lam in &out {
        for z in &derived.basis {
            if lam.eval(f, z) != Some(Fe::ZERO) {
                return Err(RepError::NotEigenvalueFunction);
            }
        }
    }
    out.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(out)
}

/// `V^λ = {v : y·v = λ(y) v for all y ∈ I}`.
pub fn v_lambda(rep: &Representation, lambda: &EigenvalueFunction) -> Subspace {
    let f = rep.field();
    let d = rep.dim;
    let mut w: Vec<Vec<Fe>> = (0..d).map(|i| f.unit(d, i)).collect();
    for (y, &c) in lambda.ideal.basis.iter().zip(&lambda.values) {
        w = intersect_kernel(f, &w, &rep.act(y), c);
    }
    Subspace::from_vectors(f, d, &w)
}

/// `L^λ = {x ∈ L : λ([x, y]) = 0 for all y ∈ I}`, checked to be a p-subalgebra.
pub fn l_lambda(pmap: &PMapping, lambda: &EigenvalueFunction) -> Result<Subspace, RepError> {
    let alg: &LieAlgebra = &pmap.alg;
    let f = &alg.field;
    let phi = lambda_functional(lambda);
    let n = alg.dim();
    let rows: Vec<LieElement> = lambda
        .ideal
        .basis
        .iter()
        .map(|y| (0..n).map(|i| f.dot(&phi, &alg.bracket(&alg.basis(i), y))).collect())
        .collect();
    let s = if rows.is_empty() {
        alg.whole()
    } else {
        alg.span(&Matrix::from_rows(f, &rows).expect("rectangular").nullspace())
    };
    if !pmap.is_p_subalgebra(&s) {
        return Err(RepError::NotPSubalgebra);
    }
    Ok(s)
}
