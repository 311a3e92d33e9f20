//! Induced modules `Ind_H^L(M, S) = u(L,S) ⊗_{u(H,S|_H)} M`.
//!
//! L is rewritten in a basis whose first vectors are a transversal of H (unit
//! vectors outside H's echelon pivots) followed by H's echelon basis. With that
//! PBW order every straightened product `g·t^a` is a sum of `t^{a'}·h^{b'}` and the
//! H-part acts on M directly.

use std::collections::HashMap;

use super::{character_of, RepError, Representation};
use crate::gfp::{Fe, Matrix, Subspace};
use crate::liealg::LieAlgebra;
use crate::pstruct::PMapping;
use crate::uenv::{Character, EnvAlgebra};

/// Largest supported induced dimension.
pub const MAX_INDUCED_DIM: usize = 1 << 14;

/// A p-subalgebra H with an H-module M. `module.alg` must be the algebra
/// returned by [`restrict_pmap`] for `subalgebra`.
#[derive(Clone, Debug)]
pub struct InducedSpec {
    pub subalgebra: Subspace,
    pub module: Representation,
}

#[derive(Clone, Debug)]
pub struct InducedModule {
    pub rep: Representation,
    /// Indices of the unit vectors of L forming the transversal, in PBW order.
    pub transversal: Vec<usize>,
    /// Basis vectors `1 ⊗ m_j` are the first `base_dim` coordinates.
    pub base_dim: usize,
}

impl InducedModule {
    /// `1 ⊗ M` inside the induced module.
    pub fn base_subspace(&self) -> Subspace {
        let f = self.rep.field();
        let d = self.rep.dim;
        Subspace::from_vectors(f, d, &(0..self.base_dim).map(|i| f.unit(d, i)).collect::<Vec<_>>())
    }
}

/// H as an algebra in its echelon basis, with the restricted p-map.
pub fn restrict_pmap(pmap: &PMapping, h: &Subspace) -> Result<(LieAlgebra, PMapping), RepError> {
    if !pmap.is_p_subalgebra(h) {
        return Err(RepError::NotPSubalgebra);
    }
    let alg = &pmap.alg;
    let labels = h
        .basis
        .iter()
        .map(|v| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            if nz.len() == 1 && v[nz[0]] == Fe::ONE {
                alg.labels[nz[0]].clone()
            } else {
                alg.format_element(v)
            }
        })
        .collect();
    let sub = alg.subalgebra(h, labels)?;
    let images = h.basis.iter().map(|v| h.coords(&pmap.extend(v)).expect("p-closed")).collect();
    let sub_pmap = PMapping::new(&sub, images)?;
    Ok((sub, sub_pmap))
}

pub fn induce(pmap: &PMapping, chi: &Character, spec: &InducedSpec) -> Result<InducedModule, RepError> {
    let alg = &pmap.alg;
    let f = alg.field.clone();
    let n = alg.dim();
    let h = &spec.subalgebra;
    let (sub, sub_pmap) = restrict_pmap(pmap, h)?;
    let m = &spec.module;
    if m.alg.dim() != sub.dim() || m.alg.field != f {
        return Err(RepError::AlgebraMismatch);
    }
    let m = Representation::new(&sub, m.mats.clone())?;
    let want: Vec<Fe> = h.basis.iter().map(|v| chi.eval(&f, v)).collect();
    match character_of(&m, &sub_pmap) {
        Ok(c) if c.values == want => {}
        _ => return Err(RepError::CharacterMismatch),
    }
    let transversal = h.complement_units();
    let t = transversal.len();
    let p = alg.p() as usize;
    let big = p.checked_pow(t as u32).and_then(|x| x.checked_mul(m.dim));
    let Some(total) = big.filter(|&d| d <= MAX_INDUCED_DIM) else {
        return Err(RepError::TooLarge(format!("induced module of dimension p^{t}·{}", m.dim)));
    };
    let mut new_basis: Vec<Vec<Fe>> = transversal.iter().map(|&i| alg.basis(i)).collect();
    new_basis.extend(h.basis.iter().cloned());
    let labels = (0..n).map(|i| format!("b{i}")).collect();
    let moved = alg.change_basis(&new_basis, labels)?;
    let pmat = Matrix::from_cols(&f, n, &new_basis);
    let pinv = pmat.inverse().expect("basis");
    let moved_images = new_basis.iter().map(|v| pinv.mul_vec(&pmap.extend(v))).collect();
    let moved_pmap = PMapping::new_unchecked(&moved, moved_images)?;
    let moved_chi = Character::new(new_basis.iter().map(|v| chi.eval(&f, v)).collect());
    let env = EnvAlgebra::new(&moved_pmap, &moved_chi)?;

    let dm = m.dim;
    let k = sub.dim();
    let blocks = total / dm;
    let p32 = p as u32;
    // monomial index in u(L') of t^a: a occupies the first t slots
    let mono_of_block = |blk: usize| -> u32 { (blk as u32) * p32.pow(k as u32) };
    let mut h_action: HashMap<u32, Matrix> = HashMap::new();
    let mut h_mono = |b: u32| -> Matrix {
        h_action
            .entry(b)
            .or_insert_with(|| {
                let mut acc = Matrix::identity(&f, dm);
                let mut rest = b;
                let mut exps = vec![0u32; k];
                for i in (0..k).rev() {
                    exps[i] = rest % p32;
                    rest /= p32;
                }
                for (i, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        acc = acc.mul(&m.mats[i]);
                    }
                }
                acc
            })
            .clone()
    };
    let hsize = p32.pow(k as u32);
    let mut gen_action: Vec<Matrix> = Vec::with_capacity(n);
    for g in 0..n {
        let mut mat = Matrix::zeros(&f, total, total);
        let gen = env.generator(g);
        for blk in 0..blocks {
            let prod = env.mul(&gen, &env.monomial(&env.exponents(mono_of_block(blk))));
            for (&idx, &c) in &prod.terms {
                let (tpart, hpart) = ((idx / hsize) as usize, idx % hsize);
                let act = h_mono(hpart);
                for j in 0..dm {
                    for r in 0..dm {
                        let v = act.get(r, j);
                        if v.is_zero() {
                            continue;
                        }
                        let (row, col) = (tpart * dm + r, blk * dm + j);
                        let cur = mat.get(row, col);
                        mat.set(row, col, f.add(cur, f.mul(c, v)));
                    }
                }
            }
        }
        gen_action.push(mat);
    }
    let mats = (0..n)
        .map(|i| {
            let coords = pinv.mul_vec(&alg.basis(i));
            let mut acc = Matrix::zeros(&f, total, total);
            for (j, &c) in coords.iter().enumerate() {
                acc.axpy(c, &gen_action[j]);
            }
            acc
        })
        .collect();
    let rep = Representation::new(alg, mats)?;
    Ok(InducedModule { rep, transversal, base_dim: dm })
}
