//! Spinning and irreducibility.
//!
//! Small modules are tested by spinning every line. Larger ones use Norton's
//! criterion: for a singular `θ` in the image of the enveloping algebra, `V` is
//! irreducible iff every nonzero vector of `ker θ` spins to `V` and one nonzero
//! vector of `ker θ^T` spins to `V^*` under the transposed action. The search for
//! a suitable `θ` is seeded, but the verdict is exact either way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{RepError, Representation};
use crate::gfp::{EchelonBasis, Fe, Field, Matrix, Subspace};

/// Line count up to which every line is spun.
pub const EXHAUSTIVE_LINES: f64 = 2e4;
/// Line count allowed in `ker θ` for Norton's criterion.
const KERNEL_LINES: f64 = 2e4;
const CANDIDATES: usize = 60;
/// Random kernel vectors tried when the kernel is too large to scan.
const KERNEL_SAMPLES: usize = 64;
const NORTON_SEED: u64 = 0x5eed_0007;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// A proper nonzero submodule when reducible.
    pub witness: Option<Subspace>,
}

/// Smallest subspace containing `seeds` and invariant under `mats`.
pub fn spin(field: &Field, mats: &[Matrix], seeds: &[Vec<Fe>]) -> Subspace {
    let d = seeds.first().map_or_else(|| mats.first().map_or(0, |m| m.rows), |s| s.len());
    let mut eb = EchelonBasis::new(field, d);
    let mut queue: Vec<Vec<Fe>> = seeds.to_vec();
    while let Some(v) = queue.pop() {
        if !eb.insert(&v) {
            continue;
        }
        if eb.dim() == d {
            break;
        }
        for m in mats {
            queue.push(m.mul_vec(&v));
        }
    }
    eb.to_subspace()
}

fn line_count(q: u32, k: usize) -> f64 {
    ((q as f64).powi(k as i32) - 1.0) / (q as f64 - 1.0)
}

/// Calls `visit` on one representative of each line of `span(basis)` until it
/// returns `false`.
fn for_each_line(field: &Field, basis: &[Vec<Fe>], mut visit: impl FnMut(&[Fe]) -> bool) {
    let k = basis.len();
    let q = field.order();
    let d = basis.first().map_or(0, |b| b.len());
    // leading coefficient 1 at position `lead`, arbitrary coefficients after it
    for lead in 0..k {
        let free = k - lead - 1;
        let total = (q as u64).pow(free as u32);
        for idx in 0..total {
            let mut v = basis[lead].clone();
            let mut rest = idx;
            for b in basis.iter().skip(lead + 1) {
                let c = Fe((rest % q as u64) as u32);
                rest /= q as u64;
                field.axpy(&mut v, c, b);
            }
            debug_assert_eq!(v.len(), d);
            if !visit(&v) {
                return;
            }
        }
    }
}

pub fn is_irreducible(rep: &Representation) -> Result<Irreducibility, RepError> {
    let d = rep.dim;
    let f = rep.field();
    if d == 0 {
        return Ok(Irreducibility { irreducible: false, witness: None });
    }
    if d == 1 {
        return Ok(Irreducibility { irreducible: true, witness: None });
    }
    if line_count(f.order(), d) <= EXHAUSTIVE_LINES {
        return Ok(exhaustive(rep));
    }
    norton(rep)
}

fn exhaustive(rep: &Representation) -> Irreducibility {
    let f = rep.field();
    let d = rep.dim;
    let units: Vec<Vec<Fe>> = (0..d).map(|i| f.unit(d, i)).collect();
    let mut best: Option<Subspace> = None;
    for_each_line(f, &units, |v| {
        let s = spin(f, &rep.mats, &[v.to_vec()]);
        if s.dim() < d && best.as_ref().is_none_or(|b| s.dim() < b.dim()) {
            let done = s.dim() == 1;
            best = Some(s);
            return !done;
        }
        true
    });
    Irreducibility { irreducible: best.is_none(), witness: best }
}

/// Roots in `F` of a polynomial given low-to-high.
fn roots(field: &Field, poly: &[Fe]) -> Vec<Fe> {
    field
        .elements()
        .filter(|&x| poly.iter().rev().fold(Fe::ZERO, |acc, &c| field.add(field.mul(acc, x), c)).is_zero())
        .collect()
}

/// Seeded walk through elements of the enveloping algebra's image.
fn candidates(rep: &Representation) -> Vec<Matrix> {
    let f = rep.field();
    let n = rep.mats.len();
    let mut out: Vec<Matrix> = rep.mats.clone();
    for i in 0..n {
        for j in 0..n {
            out.push(rep.mats[i].mul(&rep.mats[j]));
            if i < j {
                out.push(rep.mats[i].add(&rep.mats[j]));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(NORTON_SEED);
    let q = f.order();
    while out.len() < CANDIDATES {
        let a = &out[rng.gen_range(0..out.len())];
        let b = &out[rng.gen_range(0..out.len())];
        let c = Fe(rng.gen_range(0..q));
        let mut m = a.mul(b);
        m.axpy(c, &rep.mats[rng.gen_range(0..n)]);
        out.push(m);
    }
    out
}

fn norton(rep: &Representation) -> Result<Irreducibility, RepError> {
    let f = rep.field();
    let d = rep.dim;
    let q = f.order();
    let mut best: Option<(Vec<Vec<Fe>>, Matrix)> = None;
    for a in candidates(rep) {
        for c in roots(f, &a.charpoly()) {
            let theta = a.sub(&Matrix::scalar(f, d, c));
            let ker = theta.nullspace();
            if best.as_ref().is_none_or(|(k, _)| ker.len() < k.len()) {
                best = Some((ker, theta));
            }
        }
        if best.as_ref().is_some_and(|(k, _)| k.len() == 1) {
            break;
        }
    }
    let Some((ker, theta)) = best else {
        return Err(RepError::TooLarge(format!("no singular element found for a {d}-dimensional module")));
    };
    if line_count(q, ker.len()) > KERNEL_LINES {
        // a spun proper submodule is still a sound witness; irreducibility is not
        let mut rng = ChaCha8Rng::seed_from_u64(NORTON_SEED);
        for _ in 0..KERNEL_SAMPLES {
            let mut v = f.vzero(d);
            for k in &ker {
                f.axpy(&mut v, Fe(rng.gen_range(0..q)), k);
            }
            let s = spin(f, &rep.mats, &[v]);
            if s.dim() > 0 && s.dim() < d {
                return Ok(Irreducibility { irreducible: false, witness: Some(s) });
            }
        }
        return Err(RepError::TooLarge(format!("kernel of dimension {} is too large to scan", ker.len())));
    }
    let mut witness = None;
    for_each_line(f, &ker, |v| {
        let s = spin(f, &rep.mats, &[v.to_vec()]);
        if s.dim() < d {
            witness = Some(s);
            return false;
        }
        true
    });
    if witness.is_some() {
        return Ok(Irreducibility { irreducible: false, witness });
    }
    let dual_ker = theta.transpose().nullspace();
    let transposed: Vec<Matrix> = rep.mats.iter().map(|m| m.transpose()).collect();
    let w = spin(f, &transposed, &dual_ker[..1]);
    if w.dim() == d {
        return Ok(Irreducibility { irreducible: true, witness: None });
    }
    // annihilator of a proper submodule of V^* is a proper submodule of V
    let ann = Matrix::from_rows(f, &w.basis).expect("rectangular").nullspace();
    Ok(Irreducibility { irreducible: false, witness: Some(Subspace::from_vectors(f, d, &ann)) })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{dim2, natural_sl2, sl2};
    use super::*;
    use crate::liealg::LieAlgebra;

    #[test]
    fn examples() {
        let (alg, _) = sl2(3);
        let nat = natural_sl2(&alg);
        assert!(is_irreducible(&nat).unwrap().irreducible);

        let f = Field::prime(3).unwrap();
        let (d, _) = dim2(&f);
        let one = |a: i64| Representation::new(&d, vec![Matrix::scalar(&f, 1, f.from_int(a)), Matrix::zeros(&f, 1, 1)]).unwrap();
        let sum = one(0).direct_sum(&one(1)).unwrap();
        let r = is_irreducible(&sum).unwrap();
        assert!(!r.irreducible);
        assert_eq!(r.witness.unwrap().dim(), 1);

        // regular module of u(Fx, 0) at p = 2: x·1 = x, x·x = 0
        let f2 = Field::prime(2).unwrap();
        let a = LieAlgebra::abelian(&f2, vec!["x".into()]).unwrap();
        let reg = Representation::new(&a, vec![Matrix::from_ints(&f2, &[&[0, 0], &[1, 0]])]).unwrap();
        let r = is_irreducible(&reg).unwrap();
        assert!(!r.irreducible);
        assert_eq!(r.witness.unwrap(), Subspace::from_vectors(&f2, 2, &[f2.unit(2, 1)]));
    }

    #[test]
    fn norton_agrees_with_exhaustive() {
        let (alg, _) = sl2(3);
        let nat = natural_sl2(&alg);
        let sum = nat.direct_sum(&nat).unwrap().direct_sum(&nat).unwrap();
        for rep in [nat.clone(), sum] {
            let ex = exhaustive(&rep);
            let no = norton(&rep).unwrap();
            assert_eq!(ex.irreducible, no.irreducible);
            if let Some(w) = no.witness {
                assert!(w.dim() > 0 && w.dim() < rep.dim);
                assert!(rep.mats.iter().all(|m| w.is_invariant(m)));
            }
        }
    }
}
