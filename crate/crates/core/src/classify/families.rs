//! The example algebras with their standard p-maps.

use super::ClassifyError;
use crate::gfp::{Fe, Field};
use crate::liealg::{LieAlgebra, LieElement};
use crate::pstruct::{minimal_p_envelope, PEnvelope, PMapping};

fn labels(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

fn vec_of(f: &Field, n: usize, terms: &[(usize, Fe)]) -> LieElement {
    let mut v = f.vzero(n);
    for &(i, c) in terms {
        v[i] = c;
    }
    v
}

/// `[e_i, e_j] = Σ c·e_k` given as `(i, j, [(k, c)])`.
type Bracket<'a> = (usize, usize, &'a [(usize, Fe)]);

fn build(f: &Field, names: &[&str], brackets: &[Bracket]) -> LieAlgebra {
    let n = names.len();
    let table: Vec<(usize, usize, LieElement)> =
        brackets.iter().map(|&(i, j, t)| (i, j, vec_of(f, n, t))).collect();
    LieAlgebra::new(f, labels(names), &table).expect("valid structure constants")
}

/// `h, x` with `[h,x] = x`, `h^{[p]} = h`, `x^{[p]} = 0`.
pub fn dim2(f: &Field) -> (LieAlgebra, PMapping) {
    let alg = build(f, &["h", "x"], &[(0, 1, &[(1, Fe::ONE)])]);
    let pm = PMapping::new(&alg, vec![alg.basis(0), alg.zero()]).expect("restricted");
    (alg, pm)
}

/// `e, f, h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`, `h^{[p]} = h`.
pub fn sl2(f: &Field) -> (LieAlgebra, PMapping) {
    let c = |k: i64| f.from_int(k);
    let alg = build(
        f,
        &["e", "f", "h"],
        &[(0, 1, &[(2, c(1))]), (2, 0, &[(0, c(2))]), (2, 1, &[(1, c(-2))])],
    );
    let pm = PMapping::new(&alg, vec![alg.zero(), alg.zero(), alg.basis(2)]).expect("restricted");
    (alg, pm)
}

/// `t, x, y, z` with `[t,x] = x`, `[t,y] = −y`, `[x,y] = z`, z central,
/// `t^{[p]} = t` and x, y, z p-nilpotent.
pub fn dim4(f: &Field) -> (LieAlgebra, PMapping) {
    let c = |k: i64| f.from_int(k);
    let alg = build(
        f,
        &["t", "x", "y", "z"],
        &[(0, 1, &[(1, c(1))]), (0, 2, &[(2, c(-1))]), (1, 2, &[(3, c(1))])],
    );
    let pm = PMapping::new(&alg, vec![alg.basis(0), alg.zero(), alg.zero(), alg.zero()]).expect("restricted");
    (alg, pm)
}

/// `h, x, y` with `[h,x] = x`, `[h,y] = αy`.
pub fn dim3alpha(f: &Field, alpha: Fe) -> Result<LieAlgebra, ClassifyError> {
    if alpha.is_zero() {
        return Err(ClassifyError::AlphaZero);
    }
    Ok(build(f, &["h", "x", "y"], &[(0, 1, &[(1, Fe::ONE)]), (0, 2, &[(2, alpha)])]))
}

/// The restricted structure `h^{[p]} = h` available when `α^p = α`.
pub fn dim3alpha_restricted(f: &Field, alpha: Fe) -> Result<(LieAlgebra, PMapping), ClassifyError> {
    let alg = dim3alpha(f, alpha)?;
    if f.frobenius(alpha) != alpha {
        return Err(ClassifyError::NotRestricted);
    }
    let pm = PMapping::new(&alg, vec![alg.basis(0), alg.zero(), alg.zero()])?;
    Ok((alg, pm))
}

/// Minimal p-envelope of the non-restrictable `dim3alpha`, basis `h, x, y, t`
/// with `t = h^{[p]}`.
pub fn dim3alpha_envelope(f: &Field, alpha: Fe) -> Result<(LieAlgebra, PEnvelope), ClassifyError> {
    let alg = dim3alpha(f, alpha)?;
    if f.frobenius(alpha) == alpha {
        return Err(ClassifyError::Restricted);
    }
    let mut env = minimal_p_envelope(&alg)?;
    let n = env.ambient.dim();
    let mut names = env.ambient.labels.clone();
    names[n - 1] = "t".into();
    let ident: Vec<LieElement> = (0..n).map(|i| env.ambient.basis(i)).collect();
    let renamed = env.ambient.change_basis(&ident, names)?;
    env.pmap = PMapping::new(&renamed, env.pmap.images.clone())?;
    env.ambient = renamed;
    env.adjoined = vec!["t".into()];
    Ok((alg, env))
}

/// The explicit envelope relations `[h,t] = 0`, `[t,x] = x`, `[t,y] = α^p y`,
/// `h^{[p]} = t`, `t^{[p]} = (1+c)t − ch` with `c = (α − α^p)^{p−1}`.
pub fn dim3alpha_envelope_explicit(f: &Field, alpha: Fe) -> Result<(LieAlgebra, PMapping), ClassifyError> {
    if alpha.is_zero() {
        return Err(ClassifyError::AlphaZero);
    }
    let ap = f.frobenius(alpha);
    let alg = build(
        f,
        &["h", "x", "y", "t"],
        &[
            (0, 1, &[(1, Fe::ONE)]),
            (0, 2, &[(2, alpha)]),
            (3, 1, &[(1, Fe::ONE)]),
            (3, 2, &[(2, ap)]),
        ],
    );
    let c = f.pow(f.sub(alpha, ap), f.p() as i64 - 1)?;
    let t_p = vec_of(f, 4, &[(0, f.neg(c)), (3, f.add(Fe::ONE, c))]);
    let pm = PMapping::new(&alg, vec![alg.basis(3), alg.zero(), alg.zero(), t_p])?;
    Ok((alg, pm))
}

/// `sl2 ⋉ (Fu ⊕ Fv)` with the natural action, u, v p-nilpotent.
pub fn dim5(f: &Field) -> (LieAlgebra, PMapping) {
    let c = |k: i64| f.from_int(k);
    let alg = build(
        f,
        &["e", "f", "h", "u", "v"],
        &[
            (0, 1, &[(2, c(1))]),
            (2, 0, &[(0, c(2))]),
            (2, 1, &[(1, c(-2))]),
            (2, 3, &[(3, c(1))]),
            (2, 4, &[(4, c(-1))]),
            (0, 4, &[(3, c(1))]),
            (1, 3, &[(4, c(1))]),
        ],
    );
    let z = alg.zero();
    let pm = PMapping::new(&alg, vec![z.clone(), z.clone(), alg.basis(2), z.clone(), z]).expect("restricted");
    (alg, pm)
}
