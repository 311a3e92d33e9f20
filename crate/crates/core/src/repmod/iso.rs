//! Isomorphism of modules through the intertwiner system `ρ1(x) T = T ρ2(x)`.

use super::{RepError, Representation};
use crate::gfp::{Fe, Matrix};

/// Bound on the number of intertwiners scanned for an invertible one.
pub const ISO_ENUMERATION_BOUND: f64 = 1e5;

/// Basis of `Hom_L(V2, V1)`, each element a `d1 × d2` matrix.
pub fn intertwiners(r1: &Representation, r2: &Representation) -> Vec<Matrix> {
    let f = r1.field();
    let (d1, d2) = (r1.dim, r2.dim);
    let unknowns = d1 * d2;
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for (a, b) in r1.mats.iter().zip(&r2.mats) {
        // (A T − T B)_{rc} = Σ_k A_{rk} T_{kc} − Σ_k T_{rk} B_{kc}
        for r in 0..d1 {
            for c in 0..d2 {
                let mut row = f.vzero(unknowns);
                for k in 0..d1 {
                    let v = a.get(r, k);
                    row[k * d2 + c] = f.add(row[k * d2 + c], v);
                }
                for k in 0..d2 {
                    let v = b.get(k, c);
                    row[r * d2 + k] = f.sub(row[r * d2 + k], v);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ns = if rows.is_empty() {
        (0..unknowns).map(|i| f.unit(unknowns, i)).collect()
    } else {
        Matrix::from_rows(f, &rows).expect("rectangular").nullspace()
    };
    ns.into_iter()
        .map(|v| Matrix { rows: d1, cols: d2, data: v, field: f.clone() })
        .collect()
}

/// Whether the two modules are isomorphic.
pub fn module_iso(r1: &Representation, r2: &Representation) -> Result<bool, RepError> {
    if r1.alg != r2.alg {
        return Err(RepError::AlgebraMismatch);
    }
    if r1.dim != r2.dim {
        return Ok(false);
    }
    if r1.dim == 0 {
        return Ok(true);
    }
    let basis = intertwiners(r1, r2);
    if basis.is_empty() {
        return Ok(false);
    }
    if basis.iter().any(|t| t.is_invertible()) {
        return Ok(true);
    }
    if basis.len() == 1 {
        return Ok(false);
    }
    let q = r1.field().order() as u64;
    let total = (q as f64).powi(basis.len() as i32);
    if total > ISO_ENUMERATION_BOUND {
        return Err(RepError::TooLarge(format!("{total} intertwiners")));
    }
    let f = r1.field();
    for idx in 1..total as u64 {
        let mut t = Matrix::zeros(f, r1.dim, r2.dim);
        let mut rest = idx;
        for b in &basis {
            t.axpy(Fe((rest % q) as u32), b);
            rest /= q;
        }
        if t.is_invertible() {
            return Ok(true);
        }
    }
    Ok(false)
}
