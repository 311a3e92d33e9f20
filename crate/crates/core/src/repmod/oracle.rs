//! Independent oracle: composition factors of the regular u(L,S)-module.
//!
//! Every irreducible S-representation is a quotient of u(L,S), so the distinct
//! composition factors of the regular module are exactly the irreducibles.

use super::{is_irreducible, module_iso, RepError, Representation};
use crate::gfp::Matrix;
use crate::pstruct::PMapping;
use crate::uenv::{Character, EnvAlgebra};

/// Largest regular module the oracle will decompose.
pub const ORACLE_MAX_DIM: u64 = 512;
/// Largest field the oracle accepts.
pub const ORACLE_MAX_FIELD: u32 = 729;

/// u(L,S) acting on itself by left multiplication, on the PBW basis.
pub fn regular_module(env: &EnvAlgebra) -> Result<Representation, RepError> {
    let f = env.field().clone();
    let d = env.dim() as usize;
    let n = env.ngens();
    let mut mats = Vec::with_capacity(n);
    for i in 0..n {
        let g = env.generator(i);
        let mut m = Matrix::zeros(&f, d, d);
        for a in 0..d as u32 {
            let prod = env.mul(&g, &env.monomial(&env.exponents(a)));
            for (&idx, &c) in &prod.terms {
                m.set(idx as usize, a as usize, c);
            }
        }
        mats.push(m);
    }
    Representation::new(env.alg(), mats)
}

/// All composition factors (with repetition).
pub fn composition_factors(rep: &Representation) -> Result<Vec<Representation>, RepError> {
    let mut out = Vec::new();
    let mut stack = vec![rep.clone()];
    while let Some(m) = stack.pop() {
        if m.dim == 0 {
            continue;
        }
        let verdict = is_irreducible(&m)?;
        match verdict.witness {
            None => out.push(m),
            Some(w) => {
                stack.push(m.submodule(&w));
                stack.push(m.quotient(&w));
            }
        }
    }
    Ok(out)
}

/// Pairwise non-isomorphic irreducible S-representations, sorted by dimension
/// and label.
pub fn oracle_irreducibles(pmap: &PMapping, chi: &Character) -> Result<Vec<Representation>, RepError> {
    let alg = &pmap.alg;
    let p = alg.p() as u64;
    let dim = p.checked_pow(alg.dim() as u32).unwrap_or(u64::MAX);
    if dim > ORACLE_MAX_DIM || alg.field.order() > ORACLE_MAX_FIELD {
        return Err(RepError::TooLarge(format!("oracle needs p^n <= {ORACLE_MAX_DIM} and |F| <= {ORACLE_MAX_FIELD}")));
    }
    let env = EnvAlgebra::new(pmap, chi)?;
    let reg = regular_module(&env)?;
    let mut reps: Vec<Representation> = Vec::new();
    for factor in composition_factors(&reg)? {
        let mut seen = false;
        for r in &reps {
            if module_iso(r, &factor)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(factor);
        }
    }
    reps.sort_by_cached_key(|r| (r.dim, r.label()));
    Ok(reps)
}
