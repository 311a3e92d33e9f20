//! One-dimensional S-representations of a restricted algebra K: linear forms β
//! with `β([K,K]) = 0` and `β(x)^p − β(x^{[p]}) = S(x)^p`.
//!
//! The conditions are additive in β, so the solutions over a finite field come
//! from an F_p-linear system. Over the algebraic closure the solution set is a
//! coset of an F_p-space of dimension u, computed exactly, which tells whether the
//! working field already holds every solution.

use super::ClassifyError;
use crate::gfp::{is_zero_vec, Fe, Field, GfError, Matrix, Subspace, MAX_ORDER};
use crate::pstruct::PMapping;
use crate::uenv::Character;

/// Largest solution set enumerated.
pub const FORM_BOUND: u64 = 100_000;

/// `N β = 0`, `β^{(p)} − M β = s`.
#[derive(Clone, Debug)]
struct FormSystem {
    field: Field,
    n: usize,
    derived: Vec<Vec<Fe>>,
    m: Matrix,
    s: Vec<Fe>,
}

impl FormSystem {
    fn new(pmap: &PMapping, chi: &Character) -> FormSystem {
        let alg = &pmap.alg;
        let f = alg.field.clone();
        let n = alg.dim();
        let m = if n == 0 { Matrix::zeros(&f, 0, 0) } else { Matrix::from_rows(&f, &pmap.images).expect("square") };
        let s = chi.values.iter().map(|&c| f.frobenius(c)).collect();
        FormSystem { field: f, n, derived: alg.derived().basis, m, s }
    }

    fn embed(&self, ext: &Field) -> Option<FormSystem> {
        let e = ext.embedding_from(&self.field)?;
        let g = |v: &[Fe]| v.iter().map(|&c| e.apply(c)).collect::<Vec<_>>();
        Some(FormSystem {
            field: ext.clone(),
            n: self.n,
            derived: self.derived.iter().map(|d| g(d)).collect(),
            m: self.m.map_entries(ext, |c| e.apply(c)),
            s: g(&self.s),
        })
    }

    /// The F_p-linear map β ↦ (Nβ, β^{(p)} − Mβ) on F_p-coordinates.
    fn prime_system(&self) -> (Matrix, Vec<Fe>, Field) {
        let f = &self.field;
        let fp = Field::prime(f.p()).expect("prime");
        let mdeg = f.m() as usize;
        let rows = (self.derived.len() + self.n) * mdeg;
        let cols = self.n * mdeg;
        let expand = |out: &mut Vec<Fe>, v: &[Fe]| {
            for &c in v {
                out.extend(f.coeffs(c).iter().map(|&x| Fe(x)));
            }
        };
        let mut a = Matrix::zeros(&fp, rows, cols);
        for i in 0..self.n {
            for j in 0..mdeg {
                let mut unit = vec![0i64; mdeg];
                unit[j] = 1;
                let mut beta = f.vzero(self.n);
                beta[i] = f.from_coeffs(&unit).expect("in range");
                let image = self.apply(&beta);
                let mut flat = Vec::with_capacity(rows);
                expand(&mut flat, &image);
                for (r, &v) in flat.iter().enumerate() {
                    a.set(r, i * mdeg + j, v);
                }
            }
        }
        let mut rhs = Vec::with_capacity(rows);
        expand(&mut rhs, &f.vzero(self.derived.len()));
        expand(&mut rhs, &self.s);
        (a, rhs, fp)
    }

    fn apply(&self, beta: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out: Vec<Fe> = self.derived.iter().map(|d| f.dot(d, beta)).collect();
        let mb = self.m.mul_vec(beta);
        out.extend(f.vsub(&f.vfrob(beta), &mb));
        out
    }

    /// F_p-dimension of the solution space over this field, if solvable here.
    fn local_dim(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let (a, rhs, _) = self.prime_system();
        a.solve(&rhs).ok().map(|sol| sol.nullspace.len())
    }

    fn solutions(&self) -> Result<Vec<Vec<Fe>>, ClassifyError> {
        let f = &self.field;
        if self.n == 0 {
            return Ok(vec![vec![]]);
        }
        let (a, rhs, _) = self.prime_system();
        let sol = match a.solve(&rhs) {
            Ok(s) => s,
            Err(GfError::NoSolution) => return Ok(vec![]),
            Err(e) => return Err(e.into()),
        };
        let p = f.p() as u64;
        let count = p.checked_pow(sol.nullspace.len() as u32).filter(|&c| c <= FORM_BOUND);
        let Some(count) = count else {
            return Err(ClassifyError::TooLarge(format!("p^{} linear forms", sol.nullspace.len())));
        };
        let mdeg = f.m() as usize;
        let collapse = |flat: &[Fe]| -> Vec<Fe> {
            flat.chunks(mdeg)
                .map(|c| f.from_coeffs(&c.iter().map(|x| x.0 as i64).collect::<Vec<_>>()).expect("in range"))
                .collect()
        };
        let fp = Field::prime(f.p()).expect("prime");
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut v = sol.particular.clone();
            let mut rest = idx;
            for b in &sol.nullspace {
                fp.axpy(&mut v, Fe((rest % p) as u32), b);
                rest /= p;
            }
            out.push(collapse(&v));
        }
        out.sort();
        Ok(out)
    }

    /// `None` when no solution exists over the algebraic closure, else the
    /// F_p-dimension of the solution set there.
    fn closure_dim(&self) -> Option<usize> {
        let f = &self.field;
        let n = self.n;
        let ann = if self.derived.is_empty() {
            Subspace::full(f, n)
        } else {
            Subspace::from_vectors(f, n, &Matrix::from_rows(f, &self.derived).expect("rect").nullspace())
        };
        let b = ann.basis.clone();
        let g: Vec<Vec<Fe>> = b.iter().map(|v| f.vfrob(v)).collect();
        let k: Vec<Vec<Fe>> = b.iter().map(|v| self.m.mul_vec(v)).collect();
        if !solvable_closure(f, n, g, k, self.s.clone()) {
            return None;
        }
        Some(stable_dim(f, &self.m, ann))
    }
}

/// Whether `G c^{(p)} − K c = s` (columns of G independent) has a solution over
/// the algebraic closure. The square case always does; otherwise the rows not
/// touched by G give linear constraints that shrink the unknowns.
fn solvable_closure(f: &Field, n: usize, g: Vec<Vec<Fe>>, k: Vec<Vec<Fe>>, s: Vec<Fe>) -> bool {
    let a = g.len();
    if a == 0 {
        return is_zero_vec(&s);
    }
    let mut aug = Matrix::zeros(f, n, 2 * a + 1);
    for r in 0..n {
        for c in 0..a {
            aug.set(r, c, g[c][r]);
            aug.set(r, a + c, k[c][r]);
        }
        aug.set(r, 2 * a, s[r]);
    }
    let (red, _) = aug.rref();
    let k_top: Vec<Vec<Fe>> = (0..a).map(|c| (0..a).map(|r| red.get(r, a + c)).collect()).collect();
    let s_top: Vec<Fe> = (0..a).map(|r| red.get(r, 2 * a)).collect();
    let bottom: Vec<Vec<Fe>> = (a..n).map(|r| red.row(r)[a..2 * a].to_vec()).collect();
    let s_bot: Vec<Fe> = (a..n).map(|r| f.neg(red.get(r, 2 * a))).collect();
    if bottom.iter().all(|r| is_zero_vec(r)) {
        return is_zero_vec(&s_bot);
    }
    let sol = match Matrix::from_rows(f, &bottom).expect("rect").solve(&s_bot) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let ktop_m = Matrix::from_cols(f, a, &k_top);
    let c0 = sol.particular;
    let d = sol.nullspace;
    let g2: Vec<Vec<Fe>> = d.iter().map(|v| f.vfrob(v)).collect();
    let k2: Vec<Vec<Fe>> = d.iter().map(|v| ktop_m.mul_vec(v)).collect();
    let s2 = f.vadd(&f.vsub(&s_top, &f.vfrob(&c0)), &ktop_m.mul_vec(&c0));
    solvable_closure(f, a, g2, k2, s2)
}

/// Dimension of the largest subspace U ⊆ `start` with `M U = U^{(p)}`. The
/// homogeneous solutions over the closure are the fixed points of the
/// p^{-1}-semilinear bijection `β ↦ (Mβ)^{(1/p)}` on U, so there are p^{dim U}.
fn stable_dim(f: &Field, m: &Matrix, start: Subspace) -> usize {
    let n = start.n;
    let frob = |w: &Subspace| Subspace::from_vectors(f, n, &w.basis.iter().map(|v| f.vfrob(v)).collect::<Vec<_>>());
    let mut w = start;
    loop {
        let y = frob(&w);
        let omega = if y.is_zero() {
            (0..n).map(|i| f.unit(n, i)).collect()
        } else {
            Matrix::from_rows(f, &y.basis).expect("rect").nullspace()
        };
        let next = if omega.is_empty() || w.is_zero() {
            w.clone()
        } else {
            let om = Matrix::from_rows(f, &omega).expect("rect");
            let bm = Matrix::from_cols(f, n, &w.basis);
            let ns = om.mul(m).mul(&bm).nullspace();
            Subspace::from_vectors(f, n, &ns.iter().map(|c| bm.mul_vec(c)).collect::<Vec<_>>())
        };
        if next.dim() == w.dim() {
            break;
        }
        w = next;
    }
    let mut v = w;
    loop {
        let img: Vec<Vec<Fe>> = v.basis.iter().map(|b| f.vfrob_inv(&m.mul_vec(b))).collect();
        let next = Subspace::from_vectors(f, n, &img);
        if next.dim() == v.dim() {
            return v.dim();
        }
        v = next;
    }
}

/// All one-dimensional S-representations of `pmap.alg`, as values on its basis,
/// sorted. Fails with `NeedsExtension` when some exist only in a larger field.
pub fn one_dim_forms(pmap: &PMapping, chi: &Character) -> Result<Vec<Vec<Fe>>, ClassifyError> {
    let sys = FormSystem::new(pmap, chi);
    let Some(u) = sys.closure_dim() else {
        return Ok(vec![]);
    };
    if sys.local_dim() == Some(u) {
        return sys.solutions();
    }
    Err(extension_needed(&sys, u))
}

fn extension_needed(sys: &FormSystem, u: usize) -> ClassifyError {
    let f = &sys.field;
    let (p, m) = (f.p() as u64, f.m());
    let mut k = 2;
    loop {
        let d = m * k;
        if p.checked_pow(d).is_none_or(|q| q > MAX_ORDER) {
            return ClassifyError::TooLarge(format!("splitting field of degree > {}", d - m));
        }
        let ext = Field::new(f.p(), d, None).expect("supported");
        if let Some(big) = sys.embed(&ext) {
            if big.local_dim() == Some(u) {
                return ClassifyError::NeedsExtension(d);
            }
        }
        k += 1;
    }
}

/// Number of one-dimensional S-representations over the algebraic closure.
pub fn closure_count(pmap: &PMapping, chi: &Character) -> u64 {
    let sys = FormSystem::new(pmap, chi);
    sys.closure_dim().map_or(0, |u| (pmap.alg.p() as u64).pow(u as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::families;
    use crate::liealg::LieAlgebra;

    #[test]
    fn dim2_forms() {
        let f = Field::prime(3).unwrap();
        let (_, pm) = families::dim2(&f);
        let s0 = one_dim_forms(&pm, &Character::zero(2)).unwrap();
        assert_eq!(s0, vec![vec![Fe(0), Fe(0)], vec![Fe(1), Fe(0)], vec![Fe(2), Fe(0)]]);
        // S(x) ≠ 0 leaves no one-dimensional module at all
        assert!(one_dim_forms(&pm, &Character::new(vec![Fe(0), Fe(1)])).unwrap().is_empty());
        assert_eq!(closure_count(&pm, &Character::new(vec![Fe(0), Fe(1)])), 0);
        // X^3 - X = 1 needs GF(27)
        let err = one_dim_forms(&pm, &Character::new(vec![Fe(1), Fe(0)])).unwrap_err();
        assert_eq!(err, ClassifyError::NeedsExtension(3));
    }

    #[test]
    fn toral_plane() {
        let f = Field::prime(3).unwrap();
        let a = LieAlgebra::abelian(&f, vec!["a".into(), "b".into()]).unwrap();
        let pm = PMapping::new(&a, vec![a.basis(0), a.basis(1)]).unwrap();
        assert_eq!(one_dim_forms(&pm, &Character::zero(2)).unwrap().len(), 9);
    }

    #[test]
    fn nilpotent_and_mixed_pmaps() {
        let f = Field::prime(2).unwrap();
        let a = LieAlgebra::abelian(&f, vec!["a".into(), "b".into()]).unwrap();
        // a ↦ b ↦ 0: β_a^2 = β_b, β_b^2 = S(b)^2; unique solution
        let pm = PMapping::new(&a, vec![a.basis(1), a.zero()]).unwrap();
        assert_eq!(closure_count(&pm, &Character::zero(2)), 1);
        let sols = one_dim_forms(&pm, &Character::new(vec![Fe(1), Fe(1)])).unwrap();
        for b in &sols {
            assert_eq!(b[0], Fe(0));
        }
        // swap a ↔ b: Frobenius-twisted, 4 solutions over the closure
        let swap = PMapping::new(&a, vec![a.basis(1), a.basis(0)]).unwrap();
        assert_eq!(closure_count(&swap, &Character::zero(2)), 4);
        let f4 = Field::new(2, 2, None).unwrap();
        let a4 = LieAlgebra::abelian(&f4, vec!["a".into(), "b".into()]).unwrap();
        let swap4 = PMapping::new(&a4, vec![a4.basis(1), a4.basis(0)]).unwrap();
        assert_eq!(one_dim_forms(&swap4, &Character::zero(2)).unwrap().len(), 4);
        assert_eq!(one_dim_forms(&swap, &Character::zero(2)).unwrap_err(), ClassifyError::NeedsExtension(2));
    }
}
