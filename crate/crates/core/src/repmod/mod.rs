//! Representations of structure-constant Lie algebras: character extraction,
//! submodules, induction, irreducibility, isomorphism and eigenvalue functions.

mod eigen;
mod induce;
mod iso;
mod oracle;
mod spin;

pub use eigen::{eigenvalue_functions, l_lambda, lambda_functional, v_lambda, EigenvalueFunction};
pub use induce::{induce, restrict_pmap, InducedModule, InducedSpec, MAX_INDUCED_DIM};
pub use iso::{module_iso, ISO_ENUMERATION_BOUND};
pub use oracle::{composition_factors, oracle_irreducibles, regular_module, ORACLE_MAX_DIM, ORACLE_MAX_FIELD};
pub use spin::{is_irreducible, spin, Irreducibility, EXHAUSTIVE_LINES};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gfp::{Fe, Field, GfError, Matrix, Subspace};
use crate::liealg::{LieAlgebra, LieElement, LieError};
use crate::pstruct::{PEnvelope, PError, PMapping};
use crate::uenv::{Character, UenvError};

const CHARACTER_SAMPLES: usize = 20;
const CHARACTER_SEED: u64 = 0x5eed_0005;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("action does not respect the bracket of ({0}, {1})")]
    NotHomomorphism(String, String),
    #[error("rho({0})^p - rho({0}^[p]) is not scalar")]
    NotScalar(String),
    #[error("expected {expected} action matrices of size {dim}, got {got}")]
    Shape { expected: usize, dim: usize, got: String },
    #[error("{0} exceeds the supported size")]
    TooLarge(String),
    #[error("subalgebra is not closed under bracket and p-map")]
    NotPSubalgebra,
    #[error("module character does not match S on the subalgebra")]
    CharacterMismatch,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("derived ideal does not act nilpotently")]
    DerivedNotNilpotent,
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("eigenvalue function does not vanish on the derived ideal")]
    NotEigenvalueFunction,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    PMap(#[from] PError),
    #[error(transparent)]
    Env(#[from] UenvError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A representation: one `d × d` matrix per basis element, acting on columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub alg: LieAlgebra,
    pub dim: usize,
    pub mats: Vec<Matrix>,
}

impl Representation {
    /// Checks `ρ([e_i, e_j]) = [ρ(e_i), ρ(e_j)]` on all basis pairs.
    pub fn new(alg: &LieAlgebra, mats: Vec<Matrix>) -> Result<Self, RepError> {
        let rep = Representation::new_unchecked(alg, mats)?;
        rep.check_homomorphism()?;
        Ok(rep)
    }

    pub fn new_unchecked(alg: &LieAlgebra, mats: Vec<Matrix>) -> Result<Self, RepError> {
        let dim = mats.first().map_or(0, |m| m.rows);
        if mats.len() != alg.dim() || mats.iter().any(|m| m.rows != dim || m.cols != dim || m.field != alg.field) {
            return Err(RepError::Shape {
                expected: alg.dim(),
                dim,
                got: mats.iter().map(|m| format!("{}x{}", m.rows, m.cols)).collect::<Vec<_>>().join(","),
            });
        }
        Ok(Representation { alg: alg.clone(), dim, mats })
    }

    /// Zero action on `F^dim`.
    pub fn trivial(alg: &LieAlgebra, dim: usize) -> Self {
        let mats = (0..alg.dim()).map(|_| Matrix::zeros(&alg.field, dim, dim)).collect();
        Representation { alg: alg.clone(), dim, mats }
    }

    pub fn field(&self) -> &Field {
        &self.alg.field
    }

    fn check_homomorphism(&self) -> Result<(), RepError> {
        match self.homomorphism_defects().first() {
            Some(&(i, j)) => Err(RepError::NotHomomorphism(self.alg.labels[i].clone(), self.alg.labels[j].clone())),
            None => Ok(()),
        }
    }

    /// Basis pairs `(i, j)`, `i < j`, where the bracket is not respected.
    pub fn homomorphism_defects(&self) -> Vec<(usize, usize)> {
        let n = self.alg.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.act(self.alg.bracket_basis(i, j));
                if lhs != self.mats[i].commutator(&self.mats[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `ρ(x)`.
    pub fn act(&self, x: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.axpy(c, &self.mats[i]);
            }
        }
        m
    }

    pub fn direct_sum(&self, o: &Representation) -> Result<Representation, RepError> {
        if self.alg != o.alg {
            return Err(RepError::AlgebraMismatch);
        }
        let mats = self.mats.iter().zip(&o.mats).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Representation { alg: self.alg.clone(), dim: self.dim + o.dim, mats })
    }

    /// `P^{-1} ρ P` for an invertible `P` whose columns are the new basis.
    pub fn conjugate(&self, p: &Matrix) -> Option<Representation> {
        let pinv = p.inverse()?;
        let mats = self.mats.iter().map(|m| pinv.mul(m).mul(p)).collect();
        Some(Representation { alg: self.alg.clone(), dim: self.dim, mats })
    }

    /// Action on an invariant subspace, in its echelon basis.
    pub fn submodule(&self, w: &Subspace) -> Representation {
        let f = self.field();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> =
                    w.basis.iter().map(|v| w.coords(&m.mul_vec(v)).expect("invariant subspace")).collect();
                Matrix::from_cols(f, w.dim(), &cols)
            })
            .collect();
        Representation { alg: self.alg.clone(), dim: w.dim(), mats }
    }

    /// Action on `V / W`, on the cosets of the unit vectors outside W's pivots.
    pub fn quotient(&self, w: &Subspace) -> Representation {
        let f = self.field();
        let reps = w.complement_units();
        let reduce = |v: &[Fe]| -> Vec<Fe> {
            let mut r = v.to_vec();
            for (pc, b) in w.pivots.iter().zip(&w.basis) {
                let c = r[*pc];
                f.axpy(&mut r, f.neg(c), b);
            }
            reps.iter().map(|&i| r[i]).collect()
        };
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = reps.iter().map(|&u| reduce(&m.col(u))).collect();
                Matrix::from_cols(f, reps.len(), &cols)
            })
            .collect();
        Representation { alg: self.alg.clone(), dim: reps.len(), mats }
    }

    /// Restriction to a subalgebra presented as its own algebra whose basis is
    /// `basis` (vectors in this algebra's coordinates).
    pub fn restrict(&self, sub: &LieAlgebra, basis: &[LieElement]) -> Representation {
        let mats = basis.iter().map(|b| self.act(b)).collect();
        Representation { alg: sub.clone(), dim: self.dim, mats }
    }

    /// Replaces the field by a larger one through an embedding.
    pub fn map_field(&self, alg: &LieAlgebra, g: impl Fn(Fe) -> Fe) -> Representation {
        let mats = self.mats.iter().map(|m| m.map_entries(&alg.field, &g)).collect();
        Representation { alg: alg.clone(), dim: self.dim, mats }
    }

    /// Canonical label: dimension plus the characteristic polynomial of every
    /// basis action, coefficients low-to-high.
    pub fn label(&self) -> String {
        let f = self.field();
        let polys: Vec<String> = self
            .mats
            .iter()
            .map(|m| m.charpoly().iter().map(|&c| f.format(c)).collect::<Vec<_>>().join(" "))
            .collect();
        format!("dim {}; charpolys [{}]", self.dim, polys.join(" | "))
    }
}

/// The character `S` with `ρ(x)^p − ρ(x^{[p]}) = S(x)^p·id`.
pub fn character_of(rep: &Representation, pmap: &PMapping) -> Result<Character, RepError> {
    let alg = &rep.alg;
    let f = alg.field.clone();
    let p = alg.p() as u64;
    let mut values = Vec::with_capacity(alg.dim());
    for i in 0..alg.dim() {
        let defect = rep.mats[i].pow(p).sub(&rep.act(&pmap.images[i]));
        let c = defect.scalar_value().ok_or_else(|| RepError::NotScalar(alg.labels[i].clone()))?;
        values.push(f.frobenius_inv(c));
    }
    let chi = Character::new(values);
    let mut rng = ChaCha8Rng::seed_from_u64(CHARACTER_SEED);
    for _ in 0..CHARACTER_SAMPLES {
        let x = alg.random_element(&mut rng);
        let defect = rep.act(&x).pow(p).sub(&rep.act(&pmap.extend(&x)));
        if defect.scalar_value() != Some(f.frobenius(chi.eval(&f, &x))) {
            return Err(RepError::NotScalar(alg.format_element(&x)));
        }
    }
    Ok(chi)
}

/// Restricts a module of a p-envelope to the embedded algebra. When the module is
/// small enough its irreducibility is reported as well.
pub fn envelope_correspondence(
    env: &PEnvelope,
    base: &LieAlgebra,
    rep: &Representation,
) -> Result<(Representation, Option<bool>), RepError> {
    if rep.alg != env.ambient {
        return Err(RepError::AlgebraMismatch);
    }
    let images = env.embedding.row_vecs();
    let restricted = rep.restrict(base, &images);
    let irreducible = match is_irreducible(&restricted) {
        Ok(r) => Some(r.irreducible),
        Err(RepError::TooLarge(_)) => None,
        Err(e) => return Err(e),
    };
    Ok((restricted, irreducible))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    pub(crate) fn sl2(p: u32) -> (LieAlgebra, PMapping) {
        let f = Field::prime(p).unwrap();
        let c = |x: i64| f.from_int(x);
        let alg = LieAlgebra::new(
            &f,
            labels(&["e", "f", "h"]),
            &[
                (0, 1, vec![c(0), c(0), c(1)]),
                (2, 0, vec![c(2), c(0), c(0)]),
                (2, 1, vec![c(0), c(-2), c(0)]),
            ],
        )
        .unwrap();
        let pm = PMapping::new(&alg, vec![alg.zero(), alg.zero(), alg.basis(2)]).unwrap();
        (alg, pm)
    }

    pub(crate) fn dim2(f: &Field) -> (LieAlgebra, PMapping) {
        let alg = LieAlgebra::new(f, labels(&["h", "x"]), &[(0, 1, vec![Fe(0), Fe(1)])]).unwrap();
        let pm = PMapping::new(&alg, vec![alg.basis(0), alg.zero()]).unwrap();
        (alg, pm)
    }

    pub(crate) fn natural_sl2(alg: &LieAlgebra) -> Representation {
        let f = &alg.field;
        Representation::new(
            alg,
            vec![
                Matrix::from_ints(f, &[&[0, 1], &[0, 0]]),
                Matrix::from_ints(f, &[&[0, 0], &[1, 0]]),
                Matrix::from_ints(f, &[&[1, 0], &[0, -1]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn homomorphism_check() {
        let (alg, _) = sl2(3);
        natural_sl2(&alg);
        Representation::new(&alg, (0..3).map(|_| Matrix::zeros(&alg.field, 4, 4)).collect()).unwrap();
        let f = &alg.field;
        let mats = vec![
            Matrix::from_ints(f, &[&[0, 1], &[0, 0]]),
            Matrix::from_ints(f, &[&[0, 0], &[1, 0]]),
            Matrix::identity(f, 2),
        ];
        let bad = Representation::new(&alg, mats.clone());
        assert!(matches!(bad, Err(RepError::NotHomomorphism(..))));
        // [ρ(e), ρ(h)] = 0 while ρ([e,h]) = ρ(-2e) ≠ 0
        let defects = Representation::new_unchecked(&alg, mats).unwrap().homomorphism_defects();
        assert!(defects.contains(&(0, 2)));
    }

    #[test]
    fn characters() {
        let (alg, pm) = sl2(3);
        assert!(character_of(&natural_sl2(&alg), &pm).unwrap().is_zero());

        let f9 = Field::new(3, 2, None).unwrap();
        let (d, dp) = dim2(&f9);
        let one_dim = |a: Fe| Representation::new(&d, vec![Matrix::scalar(&f9, 1, a), Matrix::zeros(&f9, 1, 1)]).unwrap();
        let th = f9.theta();
        let chi = character_of(&one_dim(th), &dp).unwrap();
        let want = f9.frobenius_inv(f9.sub(f9.frobenius(th), th));
        assert_eq!(chi.values, vec![want, Fe::ZERO]);
        let sum = one_dim(Fe::ZERO).direct_sum(&one_dim(th)).unwrap();
        assert_eq!(character_of(&sum, &dp).unwrap_err(), RepError::NotScalar("h".into()));
    }

    #[test]
    fn sub_and_quotient() {
        let f = Field::prime(3).unwrap();
        let (d, _) = dim2(&f);
        // upper triangular: x·v2 = v1, h = diag(1, 0)
        let rep = Representation::new(
            &d,
            vec![Matrix::from_ints(&f, &[&[1, 0], &[0, 0]]), Matrix::from_ints(&f, &[&[0, 1], &[0, 0]])],
        )
        .unwrap();
        let w = Subspace::from_vectors(&f, 2, &[f.unit(2, 0)]);
        assert_eq!(rep.submodule(&w).mats[0], Matrix::from_ints(&f, &[&[1]]));
        assert_eq!(rep.quotient(&w).mats[0], Matrix::from_ints(&f, &[&[0]]));
    }
}
