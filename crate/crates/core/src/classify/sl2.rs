//! Irreducible S-representations of sl2 for odd p.
//!
//! With `S(e) = 0` a highest weight vector v (`e·v = 0`, `h·v = αv`) generates
//! `V = ⊕_{i<k} F f^i v` with `h f^i v = (α − 2i) f^i v` and
//! `e f^{i+1} v = (i+1)(α − i) f^i v`. When `S(e) ≠ 0` the basis change
//! `e' = f + λh − λ²e`, `f' = e`, `h' = 2λe − h` with `λ²S(e) − λS(h) − S(f) = 0`
//! reduces to that case.

use std::collections::BTreeMap;

use super::{check_length, families, verify_report, ClassificationReport, ClassifyError, IsoClass, Verification};
use crate::gfp::{Fe, Field, Matrix, MAX_ORDER};
use crate::repmod::Representation;
use crate::uenv::Character;

/// The module on `{f^i v : i < k}` with highest weight α, in the e, f, h basis
/// of sl2. `wrap` is the coefficient of `v` in `f·f^{k−1} v` (only for k = p).
pub fn sl2_module(field: &Field, alpha: Fe, k: usize, wrap: Fe) -> Result<[Matrix; 3], ClassifyError> {
    let f = field;
    let mut e = Matrix::zeros(f, k, k);
    let mut fm = Matrix::zeros(f, k, k);
    let mut h = Matrix::zeros(f, k, k);
    for i in 0..k {
        h.set(i, i, f.sub(alpha, f.from_int(2 * i as i64)));
        if i + 1 < k {
            fm.set(i + 1, i, Fe::ONE);
            let c = f.mul(f.from_int(i as i64 + 1), f.sub(alpha, f.from_int(i as i64)));
            e.set(i, i + 1, c);
        }
    }
    if k == f.p() as usize {
        fm.set(0, k - 1, wrap);
    }
    Ok([e, fm, h])
}

fn sqrt(field: &Field, a: Fe) -> Option<Fe> {
    field.elements().find(|&x| field.mul(x, x) == a)
}

struct Recipe {
    case: &'static str,
    modules: Vec<(BTreeMap<String, String>, [Matrix; 3])>,
}

/// Classes for a character with `S(e) = 0`, in the e, f, h basis.
fn highest_weight(field: &Field, sf: Fe, sh: Fe) -> Result<Recipe, ClassifyError> {
    let f = field;
    let p = f.p() as usize;
    let param = |alpha: Fe, k: usize| {
        BTreeMap::from([("alpha".to_string(), f.format(alpha)), ("k".to_string(), k.to_string())])
    };
    if sf.is_zero() && sh.is_zero() {
        let mut modules = Vec::new();
        for k in 1..=p {
            let alpha = f.from_int(k as i64 - 1);
            modules.push((param(alpha, k), sl2_module(f, alpha, k, Fe::ZERO)?));
        }
        return Ok(Recipe { case: "(a'.2.2)", modules });
    }
    let wrap = f.frobenius(sf);
    if !sh.is_zero() {
        let roots = f.artin_schreier_roots(f.frobenius(sh));
        if roots.len() < p {
            return Err(ClassifyError::NeedsExtension(f.m() * f.p()));
        }
        let modules = roots
            .into_iter()
            .map(|a| Ok((param(a, p), sl2_module(f, a, p, wrap)?)))
            .collect::<Result<_, ClassifyError>>()?;
        return Ok(Recipe { case: "(a'.1)", modules });
    }
    // S(h) = 0, S(f) ≠ 0: α ∈ GF(p), with α and −α−2 giving isomorphic modules
    let mut modules = Vec::new();
    for a in 0..p {
        let partner = (2 * p - a - 2) % p;
        if a <= partner {
            let alpha = f.from_int(a as i64);
            modules.push((param(alpha, p), sl2_module(f, alpha, p, wrap)?));
        }
    }
    Ok(Recipe { case: "(a'.2.1)", modules })
}

/// Degree that holds `λ` and the Artin–Schreier roots for `S(h')` when the
/// discriminant is not a square in the working field.
fn quadratic_extension_degree(field: &Field, se: Fe, sh: Fe, disc: Fe) -> u32 {
    let (p, m) = (field.p(), field.m());
    let fallback = 2 * m * p;
    if (p as u64).checked_pow(2 * m).is_none_or(|q| q > MAX_ORDER) {
        return fallback;
    }
    let Ok(ext) = Field::new(p, 2 * m, None) else { return fallback };
    let Some(emb) = ext.embedding_from(field) else { return fallback };
    let Some(r) = sqrt(&ext, emb.apply(disc)) else { return fallback };
    let two_se = ext.mul(ext.from_int(2), emb.apply(se));
    let lambda = ext.div(ext.add(emb.apply(sh), r), two_se).expect("S(e) != 0");
    let sh2 = ext.sub(ext.mul(two_se, lambda), emb.apply(sh));
    if ext.artin_schreier_solvable(ext.frobenius(sh2)) {
        2 * m
    } else {
        fallback
    }
}

pub fn classify_sl2(field: &Field, chi: &Character) -> Result<ClassificationReport, ClassifyError> {
    let f = field;
    if f.p() == 2 {
        return Err(ClassifyError::EvenCharacteristic);
    }
    let (alg, pm) = families::sl2(f);
    check_length(chi, 3)?;
    let (se, sf, sh) = (chi.values[0], chi.values[1], chi.values[2]);
    let p = f.p() as usize;
    let disc = f.add(f.mul(sh, sh), f.mul(f.from_int(4), f.mul(se, sf)));
    let expected = if chi.is_zero() || !disc.is_zero() { p } else { p.div_ceil(2) };

    let (case, mut mats) = if se.is_zero() {
        let r = highest_weight(f, sf, sh)?;
        (r.case.to_string(), r.modules)
    } else {
        let Some(root) = sqrt(f, disc) else {
            return Err(ClassifyError::NeedsExtension(quadratic_extension_degree(f, se, sh, disc)));
        };
        let root = root.min(f.neg(root));
        let two_se = f.mul(f.from_int(2), se);
        let lambda = f.div(f.add(sh, root), two_se)?;
        // S on e', f', h'
        let sf2 = se;
        let sh2 = f.sub(f.mul(two_se, lambda), sh);
        let r = highest_weight(f, sf2, sh2)?;
        let l2 = f.mul(lambda, lambda);
        let modules = r
            .modules
            .into_iter()
            .map(|(mut params, [e2, f2, h2])| {
                // e = f', f = e' + λh' − λ²f', h = 2λf' − h'
                let rho_f = e2.add(&h2.scale(lambda)).sub(&f2.scale(l2));
                let rho_h = f2.scale(f.add(lambda, lambda)).sub(&h2);
                params.insert("lambda".into(), f.format(lambda));
                (params, [f2, rho_f, rho_h])
            })
            .collect();
        (format!("(b)/{}", r.case), modules)
    };

    let mut classes = Vec::with_capacity(mats.len());
    for (params, [e, fm, h]) in mats.drain(..) {
        let rep = Representation::new(&alg, vec![e, fm, h])?;
        classes.push(IsoClass::new("sl2", &case, params, rep));
    }
    classes.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
    let mut report = ClassificationReport {
        algebra: "sl2".into(),
        field: f.desc().clone(),
        character: chi.clone(),
        case,
        classes,
        expected_count: Some(expected),
        verified: Verification::default(),
        notes: vec![],
    };
    verify_report(&mut report, &pm, true)?;
    Ok(report)
}
