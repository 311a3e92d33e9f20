//! p-semilinear maps `v ↦ B·φ(v)` and their equation solving.

use super::matrix::Subspace;
use super::{Fe, Field, GfError, Matrix};

/// Enumeration bound for [`SemilinearSolutions::enumerate`].
pub const ENUMERATION_BOUND: f64 = 1e5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub b: Matrix,
}

/// Solution set `α_0 + span{k_1, ..}` of `B·φ(α) = c`.
///
/// Inverse Frobenius is additive and maps `F·n` onto `F·φ^{-1}(n)`, so the
/// solution set is again an affine subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSolutions {
    pub field: Field,
    pub particular: Vec<Fe>,
    pub kernel: Vec<Vec<Fe>>,
}

impl SemilinearMap {
    pub fn new(b: Matrix) -> Result<Self, GfError> {
        if !b.is_square() {
            return Err(GfError::Shape(format!("{}x{} is not square", b.rows, b.cols)));
        }
        Ok(SemilinearMap { b })
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        self.b.mul_vec(&self.b.field.vfrob(v))
    }

    /// Kernel, as an F-subspace.
    pub fn kernel(&self) -> Subspace {
        let f = &self.b.field;
        let vecs: Vec<Vec<Fe>> = self.b.nullspace().iter().map(|n| f.vfrob_inv(n)).collect();
        Subspace::from_vectors(f, self.b.cols, &vecs)
    }

    /// All `α` with `B·φ(α) = c`.
    pub fn solve(&self, c: &[Fe]) -> Result<SemilinearSolutions, GfError> {
        let f = &self.b.field;
        let sol = self.b.solve(c)?;
        Ok(SemilinearSolutions {
            field: f.clone(),
            particular: f.vfrob_inv(&sol.particular),
            kernel: self.kernel().basis,
        })
    }
}

impl SemilinearSolutions {
    /// Number of solutions, as a float to survive large fields.
    pub fn count(&self) -> f64 {
        (self.field.order() as f64).powi(self.kernel.len() as i32)
    }

    pub fn enumerate(&self) -> Result<Vec<Vec<Fe>>, GfError> {
        let count = self.count();
        if count > ENUMERATION_BOUND {
            return Err(GfError::TooManySolutions { order: self.field.order(), free: self.kernel.len() });
        }
        let f = &self.field;
        let q = f.order() as u64;
        let k = self.kernel.len();
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..(count as u64) {
            let mut v = self.particular.clone();
            let mut rest = idx;
            for j in 0..k {
                f.axpy(&mut v, Fe((rest % q) as u32), &self.kernel[j]);
                rest /= q;
            }
            out.push(v);
        }
        Ok(out)
    }
}
