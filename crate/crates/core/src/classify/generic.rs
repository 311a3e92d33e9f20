//! Reduction driver for an arbitrary restricted algebra.
//!
//! Abelian algebras are the base case: their irreducibles are one-dimensional.
//! Otherwise an ideal I is chosen (the hint, else every proper nonzero p-ideal
//! whose derived algebra is p-nilpotent with S = 0 on its p-closure, largest
//! first). For each eigenvalue function λ on I either L^λ ⊊ L, and the classes are
//! induced from the recursive classification of L^λ, or L^λ = L and
//! `K = I ∩ ker λ` acts by zero, so the classes come from L/K. The first ideal
//! for which every λ reduces is used; if none does the driver stops with
//! `NoReductionFound` rather than guess.

use std::collections::BTreeMap;

use super::{
    dedup_iso, one_dim_forms, restrict_character, verify_report, ClassificationReport, ClassifyError, Correspondence,
    IsoClass, Verification,
};
use crate::gfp::{Fe, Matrix, Subspace};
use crate::liealg::LieAlgebra;
use crate::pstruct::PMapping;
use crate::repmod::{induce, l_lambda, restrict_pmap, EigenvalueFunction, InducedSpec, Representation};
use crate::uenv::Character;

type Found = (Representation, Option<Correspondence>);

/// Ideals the driver may reduce by, in the order tried.
pub fn ideal_candidates(pmap: &PMapping, chi: &Character) -> Result<Vec<Subspace>, ClassifyError> {
    let alg = &pmap.alg;
    let f = &alg.field;
    let mut out = Vec::new();
    for i in alg.ideals()? {
        if i.is_zero() || i.is_full() || !pmap.is_p_subalgebra(&i) {
            continue;
        }
        let closure = pmap.p_closure(&alg.derived_of(&i)?);
        let nilpotent = closure.basis.iter().all(|z| pmap.is_p_nilpotent(z) && chi.eval(f, z).is_zero());
        if nilpotent {
            out.push(i);
        }
    }
    out.sort_by_key(|i| std::cmp::Reverse(i.dim()));
    Ok(out)
}

fn one_dim(pmap: &PMapping, chi: &Character) -> Result<Vec<Found>, ClassifyError> {
    let f = &pmap.alg.field;
    one_dim_forms(pmap, chi)?
        .into_iter()
        .map(|b| {
            let mats = b.iter().map(|&c| Matrix::scalar(f, 1, c)).collect();
            Ok((Representation::new(&pmap.alg, mats)?, None))
        })
        .collect()
}

/// Whether every `y ∈ I` acts as `λ(y)` plus a nilpotent map.
fn acts_by(rep: &Representation, lambda: &EigenvalueFunction, coords: impl Fn(&[Fe]) -> Vec<Fe>) -> bool {
    let f = rep.field();
    lambda.ideal.basis.iter().zip(&lambda.values).all(|(y, &v)| {
        let a = rep.act(&coords(y)).sub(&Matrix::scalar(f, rep.dim, v));
        a.pow(rep.dim.max(1) as u64).is_zero()
    })
}

fn solve(pmap: &PMapping, chi: &Character, hint: Option<&Subspace>) -> Result<Vec<Found>, ClassifyError> {
    let alg = &pmap.alg;
    if alg.derived().is_zero() {
        return one_dim(pmap, chi);
    }
    let candidates = match hint {
        Some(h) => vec![h.clone()],
        None => ideal_candidates(pmap, chi)?,
    };
    let mut last = String::from("no ideal satisfies the selection rule");
    for ideal in &candidates {
        match reduce_by(pmap, chi, ideal) {
            Ok(found) => return Ok(found),
            Err(ClassifyError::NoReductionFound(why)) => last = why,
            Err(e) => return Err(e),
        }
    }
    Err(ClassifyError::NoReductionFound(last))
}

fn reduce_by(pmap: &PMapping, chi: &Character, ideal: &Subspace) -> Result<Vec<Found>, ClassifyError> {
    let alg = &pmap.alg;
    let f = &alg.field;
    if !alg.is_ideal(ideal) || !pmap.is_p_subalgebra(ideal) {
        return Err(ClassifyError::NoReductionFound("hint is not a p-ideal".into()));
    }
    let (_, ipm) = restrict_pmap(pmap, ideal)?;
    let lambdas = one_dim_forms(&ipm, &restrict_character(pmap, chi, ideal))?;
    if lambdas.is_empty() {
        return Err(ClassifyError::NoReductionFound(format!("no eigenvalue function on {}", describe(alg, ideal))));
    }
    let mut found = Vec::new();
    for values in lambdas {
        let lambda = EigenvalueFunction { ideal: ideal.clone(), values };
        let ll = l_lambda(pmap, &lambda)?;
        if !ll.is_full() {
            let (sub, spm) = restrict_pmap(pmap, &ll)?;
            let inner = solve(&spm, &restrict_character(pmap, chi, &ll), None)?;
            for (m, _) in inner {
                if !acts_by(&m, &lambda, |y| ll.coords(y).expect("I ⊆ L^λ")) {
                    continue;
                }
                let m = Representation::new(&sub, m.mats)?;
                let ind = induce(pmap, chi, &InducedSpec { subalgebra: ll.clone(), module: m })?;
                let corr = Correspondence {
                    ideal: ideal.clone(),
                    lambda: lambda.clone(),
                    l_lambda: ll.clone(),
                    v_lambda: ind.base_subspace(),
                };
                found.push((ind.rep, Some(corr)));
            }
            continue;
        }
        // L^λ = L: the kernel of λ on I acts by zero
        let kernel: Vec<Vec<Fe>> = {
            let row = crate::repmod::lambda_functional(&lambda);
            let bm = Matrix::from_cols(f, alg.dim(), &ideal.basis);
            let coeffs = Matrix::from_rows(f, &[bm.vec_mul(&row)]).expect("rect").nullspace();
            coeffs.iter().map(|c| bm.mul_vec(c)).collect()
        };
        let k = alg.span(&kernel);
        if k.is_zero() || !pmap.is_p_subalgebra(&k) || k.basis.iter().any(|z| !chi.eval(f, z).is_zero()) {
            return Err(ClassifyError::NoReductionFound(format!(
                "L^lambda = L for lambda on {} with no p-ideal to factor out",
                describe(alg, ideal)
            )));
        }
        let (q, reps) = alg.quotient(&k)?;
        let images = reps.iter().map(|&u| pick(&alg.reduce_mod(&k, &pmap.images[u]), &reps)).collect();
        let qpm = PMapping::new(&q, images)?;
        let qchi = Character::new(reps.iter().map(|&u| chi.values[u]).collect());
        for (m, _) in solve(&qpm, &qchi, None)? {
            let mats = (0..alg.dim()).map(|i| m.act(&pick(&alg.reduce_mod(&k, &alg.basis(i)), &reps))).collect();
            let lifted = Representation::new(alg, mats)?;
            if acts_by(&lifted, &lambda, |y| y.to_vec()) {
                let corr = Correspondence {
                    ideal: ideal.clone(),
                    lambda: lambda.clone(),
                    l_lambda: ll.clone(),
                    v_lambda: Subspace::full(f, lifted.dim),
                };
                found.push((lifted, Some(corr)));
            }
        }
    }
    dedup_iso(found, |t| &t.0)
}

fn pick(v: &[Fe], idx: &[usize]) -> Vec<Fe> {
    idx.iter().map(|&i| v[i]).collect()
}

fn describe(alg: &LieAlgebra, s: &Subspace) -> String {
    let parts: Vec<String> = s.basis.iter().map(|v| alg.format_element(v)).collect();
    format!("span({})", parts.join(", "))
}

/// Classes of irreducible S-representations, with the ideal hint used at the top
/// level when given. Cross-checked against the oracle when small enough.
pub fn classify_generic(
    pmap: &PMapping,
    chi: &Character,
    hint: Option<&Subspace>,
) -> Result<ClassificationReport, ClassifyError> {
    let alg = &pmap.alg;
    super::check_length(chi, alg.dim())?;
    let found = dedup_iso(solve(pmap, chi, hint)?, |t| &t.0)?;
    let mut classes: Vec<IsoClass> = found
        .into_iter()
        .map(|(rep, corr)| {
            let mut c = IsoClass::new("generic", "generic", BTreeMap::new(), rep);
            if let Some(corr) = &corr {
                c.params.insert("ideal".into(), describe(alg, &corr.ideal));
                c.params.insert("l_lambda".into(), describe(alg, &corr.l_lambda));
            }
            c.correspondence = corr;
            c
        })
        .collect();
    classes.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
    let mut report = ClassificationReport {
        algebra: "generic".into(),
        field: alg.field.desc().clone(),
        character: chi.clone(),
        case: "generic".into(),
        classes,
        expected_count: None,
        verified: Verification::default(),
        notes: vec![],
    };
    verify_report(&mut report, pmap, true)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::families;
    use crate::gfp::Field;

    #[test]
    fn dim2_p2() {
        let f = Field::prime(2).unwrap();
        let (_, pm) = families::dim2(&f);
        let r = classify_generic(&pm, &Character::zero(2), None).unwrap();
        assert_eq!(r.dims(), vec![1, 1]);
        assert_eq!(r.verified.oracle_agreement, Some(true));
    }

    #[test]
    fn toral_plane() {
        let f = Field::prime(3).unwrap();
        let a = LieAlgebra::abelian(&f, vec!["a".into(), "b".into()]).unwrap();
        let pm = PMapping::new(&a, vec![a.basis(0), a.basis(1)]).unwrap();
        let r = classify_generic(&pm, &Character::zero(2), None).unwrap();
        assert_eq!(r.count(), 9);
        assert_eq!(r.verified.oracle_agreement, Some(true));
    }

    #[test]
    fn dim4_p2_central_character() {
        let f = Field::prime(2).unwrap();
        let (_, pm) = families::dim4(&f);
        let chi = Character::new(vec![Fe(0), Fe(0), Fe(0), Fe(1)]);
        let r = classify_generic(&pm, &chi, None).unwrap();
        assert_eq!(r.dims(), vec![2, 2]);
        assert_eq!(r.verified.oracle_agreement, Some(true));
    }

    #[test]
    fn sl2_has_no_reduction() {
        let f = Field::prime(3).unwrap();
        let (_, pm) = families::sl2(&f);
        let err = classify_generic(&pm, &Character::zero(3), None).unwrap_err();
        assert!(matches!(err, ClassifyError::NoReductionFound(_)));
    }
}
