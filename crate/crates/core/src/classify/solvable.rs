//! The solvable examples: `dim2`, `dim4` and `dim3alpha` (restricted and through
//! its minimal p-envelope).

use std::collections::BTreeMap;

use super::{
    check_length, dedup_iso, families, induce_from_stabilizer, verify_report, ClassificationReport, ClassifyError,
    IsoClass, Verification,
};
use crate::gfp::{Fe, Field, Subspace};
use crate::pstruct::PMapping;
use crate::repmod::envelope_correspondence;
use crate::uenv::Character;

struct Plan<'a> {
    family: &'a str,
    pmap: &'a PMapping,
    chi: &'a Character,
    ideal: Subspace,
    case: String,
    expected: usize,
}

fn run(plan: Plan) -> Result<ClassificationReport, ClassifyError> {
    let alg = &plan.pmap.alg;
    let f = &alg.field;
    let items = induce_from_stabilizer(plan.pmap, plan.chi, &plan.ideal)?;
    let items = dedup_iso(items, |t| &t.1)?;
    let mut classes: Vec<IsoClass> = items
        .into_iter()
        .map(|(beta, rep, corr)| {
            let params: BTreeMap<String, String> = corr
                .l_lambda
                .basis
                .iter()
                .zip(&beta)
                .map(|(v, &b)| (alg.format_element(v), f.format(b)))
                .collect();
            let mut c = IsoClass::new(plan.family, &plan.case, params, rep);
            c.correspondence = Some(corr);
            c
        })
        .collect();
    classes.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
    Ok(ClassificationReport {
        algebra: plan.family.into(),
        field: f.desc().clone(),
        character: plan.chi.clone(),
        case: plan.case,
        classes,
        expected_count: Some(plan.expected),
        verified: Verification::default(),
        notes: vec![],
    })
}

/// `[h,x] = x`: S(x) = 0 gives p one-dimensional classes, otherwise one class of
/// dimension p induced from Fx.
pub fn classify_dim2(field: &Field, chi: &Character) -> Result<ClassificationReport, ClassifyError> {
    let (alg, pm) = families::dim2(field);
    check_length(chi, 2)?;
    let p = field.p() as usize;
    let sx = chi.values[1];
    let (case, expected) = if sx.is_zero() { ("(a)", p) } else { ("(b)", 1) };
    let ideal = alg.span(&[alg.basis(1)]);
    let mut report = run(Plan { family: "dim2", pmap: &pm, chi, ideal, case: case.into(), expected })?;
    verify_report(&mut report, &pm, true)?;
    Ok(report)
}

/// The four-dimensional example `t, x, y, z`.
pub fn classify_dim4(field: &Field, chi: &Character) -> Result<ClassificationReport, ClassifyError> {
    let (alg, pm) = families::dim4(field);
    check_length(chi, 4)?;
    let p = field.p() as usize;
    let v = &chi.values;
    let (sx, sy, sz) = (v[1], v[2], v[3]);
    let (ideal, case, expected) = if sz.is_zero() {
        let i = alg.span(&[alg.basis(1), alg.basis(2), alg.basis(3)]);
        if sx.is_zero() && sy.is_zero() {
            (i, "(a.1)", p)
        } else {
            (i, "(a.2)", 1)
        }
    } else {
        (alg.span(&[alg.basis(3), alg.basis(1)]), "(b)", p)
    };
    let mut report = run(Plan { family: "dim4", pmap: &pm, chi, ideal, case: case.into(), expected })?;
    if !sz.is_zero() {
        let c = field.div(sx, sz)?;
        let h = alg.element(&[("t", Fe::ONE), ("y", c)])?;
        report.notes.push(format!("L^lambda contains {}", alg.format_element(&h)));
    }
    verify_report(&mut report, &pm, true)?;
    Ok(report)
}

/// `S''` for the envelope `h, x, y, t`: the twist `ρ(t) ↦ ρ(t) + S(h)^p` makes the
/// value on h vanish while keeping the restriction to `h, x, y`.
pub fn normalize_envelope_character(field: &Field, alpha: Fe, chi: &Character) -> Result<Character, ClassifyError> {
    check_length(chi, 4)?;
    let f = field;
    let v = &chi.values;
    let s = f.frobenius(v[0]);
    let c = f.pow(f.sub(alpha, f.frobenius(alpha)), f.p() as i64 - 1)?;
    let tp = f.sub(f.add(f.frobenius(v[3]), f.frobenius(s)), f.mul(f.add(Fe::ONE, c), s));
    Ok(Character::new(vec![Fe::ZERO, v[1], v[2], f.frobenius_inv(tp)]))
}

/// `[h,x] = x`, `[h,y] = αy`. For `α^p = α` the character is on `h, x, y`; otherwise
/// it is on the envelope basis `h, x, y, t` and is first normalized to `S''(h) = 0`.
pub fn classify_dim3alpha(field: &Field, alpha: Fe, chi: &Character) -> Result<ClassificationReport, ClassifyError> {
    let f = field;
    let p = f.p() as usize;
    if alpha.is_zero() {
        return Err(ClassifyError::AlphaZero);
    }
    if f.frobenius(alpha) == alpha {
        let (alg, pm) = families::dim3alpha_restricted(f, alpha)?;
        check_length(chi, 3)?;
        let ideal = alg.span(&[alg.basis(1), alg.basis(2)]);
        let zero_on_i = chi.values[1].is_zero() && chi.values[2].is_zero();
        let (case, expected) = if zero_on_i { ("(a.1)", p) } else { ("(a.2)", 1) };
        let mut report = run(Plan { family: "dim3alpha", pmap: &pm, chi, ideal, case: case.into(), expected })?;
        report.notes.push(format!("alpha = {}", f.format(alpha)));
        verify_report(&mut report, &pm, true)?;
        return Ok(report);
    }
    let (base, env) = families::dim3alpha_envelope(f, alpha)?;
    let s2 = normalize_envelope_character(f, alpha, chi)?;
    let amb = &env.ambient;
    let ideal = amb.span(&[amb.basis(1), amb.basis(2)]);
    let (sx, sy) = (s2.values[1], s2.values[2]);
    let (case, expected) = match (sx.is_zero(), sy.is_zero()) {
        // a^{p²} − (1+c)a^p + ca = S''(t)^p for the action a of h: p² roots
        (true, true) => ("(b.1)", p * p),
        (false, true) => ("(b.2)", p),
        (true, false) => ("(b.3)", p),
        (false, false) => ("(b.4)", 1),
    };
    let mut report = run(Plan { family: "dim3alpha", pmap: &env.pmap, chi: &s2, ideal, case: case.into(), expected })?;
    for c in &mut report.classes {
        let (restricted, _) = envelope_correspondence(&env, &base, &c.rep)?;
        c.restriction = Some(restricted);
    }
    report.notes.push(format!("alpha = {}", f.format(alpha)));
    if s2 != *chi {
        report.notes.push("character normalized so that S''(h) = 0".into());
    }
    verify_report(&mut report, &env.pmap, true)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(f: &Field, v: &[i64]) -> Character {
        Character::new(v.iter().map(|&x| f.from_int(x)).collect())
    }

    fn all_verified(r: &ClassificationReport) -> bool {
        let v = &r.verified;
        v.irreducible && v.character && v.pairwise_noniso && v.oracle_agreement != Some(false)
    }

    #[test]
    fn dim2_cases() {
        let f = Field::prime(3).unwrap();
        let a = classify_dim2(&f, &Character::zero(2)).unwrap();
        assert_eq!(a.dims(), vec![1, 1, 1]);
        let alphas: Vec<_> = a.classes.iter().map(|c| c.rep.mats[0].get(0, 0)).collect();
        let mut sorted = alphas.clone();
        sorted.sort();
        assert_eq!(sorted, vec![Fe(0), Fe(1), Fe(2)]);
        let b = classify_dim2(&f, &chi(&f, &[0, 1])).unwrap();
        assert_eq!(b.dims(), vec![3]);
        assert_eq!(b.case, "(b)");
        assert!(all_verified(&a) && all_verified(&b));
        assert_eq!(b.verified.oracle_agreement, Some(true));
        assert_eq!(classify_dim2(&f, &chi(&f, &[1, 0])).unwrap_err(), ClassifyError::NeedsExtension(3));
    }

    #[test]
    fn dim4_cases() {
        let f = Field::prime(3).unwrap();
        let a1 = classify_dim4(&f, &Character::zero(4)).unwrap();
        assert_eq!(a1.dims(), vec![1, 1, 1]);
        let a2 = classify_dim4(&f, &chi(&f, &[0, 1, 0, 0])).unwrap();
        assert_eq!(a2.dims(), vec![3]);
        let b = classify_dim4(&f, &chi(&f, &[0, 0, 0, 1])).unwrap();
        assert_eq!(b.dims(), vec![3, 3, 3]);
        for r in [&a1, &a2, &b] {
            assert!(all_verified(r), "{}", r.case);
            assert_eq!(r.verified.oracle_agreement, Some(true));
        }
    }

    #[test]
    fn dim3alpha_restricted_branch() {
        let f = Field::prime(3).unwrap();
        let r = classify_dim3alpha(&f, Fe(2), &Character::zero(3)).unwrap();
        assert_eq!(r.dims(), vec![1, 1, 1]);
        assert_eq!(r.case, "(a.1)");
        let r2 = classify_dim3alpha(&f, Fe(2), &chi(&f, &[0, 1, 1])).unwrap();
        assert_eq!(r2.dims(), vec![3]);
        assert!(all_verified(&r) && all_verified(&r2));
    }

    #[test]
    fn dim3alpha_envelope_b4() {
        let f = Field::new(3, 2, None).unwrap();
        let th = f.theta();
        let r = classify_dim3alpha(&f, th, &chi(&f, &[0, 1, 1, 0])).unwrap();
        assert_eq!(r.case, "(b.4)");
        assert_eq!(r.dims(), vec![9]);
        assert!(all_verified(&r));
        assert_eq!(r.classes[0].restriction.as_ref().unwrap().dim, 9);
    }

    #[test]
    fn normalization_kills_sh() {
        let f = Field::new(3, 2, None).unwrap();
        let th = f.theta();
        let s = normalize_envelope_character(&f, th, &Character::new(vec![Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO])).unwrap();
        assert!(s.values[0].is_zero());
    }
}
