//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every check is exact (field arithmetic, subspace equality, module
//! isomorphism); the only pinned tolerances are the wall-clock budgets. A
//! failure that a check marks as known (a stated count the computation
//! contradicts, confirmed by the oracle) is reported but does not fail the run.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use modlie::classify::{
    check_correspondence, classify_dim2, classify_dim3alpha, classify_dim4, classify_sl2, families, ClassificationReport,
    ClassifyError,
};
use modlie::gfp::{Fe, Field, Matrix, Subspace};
use modlie::io::{load_algebra, parse_characters, parse_induce_request, LoadOptions};
use modlie::liealg::{for_each_subspace, LieAlgebra, LieElement};
use modlie::pstruct::{jacobson_sum, minimal_p_envelope, PMapping};
use modlie::repmod::{
    induce, l_lambda, module_iso, oracle_irreducibles, regular_module, restrict_pmap, spin, v_lambda,
    EigenvalueFunction, InducedSpec, Representation,
};
use modlie::uenv::{binom_mod_p, Character, EnvAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x00ac_ce97;

struct Verdict {
    pass: bool,
    known: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, known: false, detail: detail.into() }
}

fn chi(f: &Field, v: &[i64]) -> Character {
    Character::new(v.iter().map(|&x| f.from_int(x)).collect())
}

fn oracle_match(r: &ClassificationReport, pm: &PMapping) -> bool {
    let truth = oracle_irreducibles(pm, &r.character).expect("oracle within bounds");
    let reps: Vec<Representation> = r.classes.iter().map(|c| c.rep.clone()).collect();
    modlie::classify::matches_bijectively(&reps, &truth).expect("iso")
}

/// dim4 over GF(p), or over the extension the character asks for.
fn dim4_run(p: u32, v: &[i64]) -> Result<(ClassificationReport, PMapping), String> {
    let f = Field::prime(p).unwrap();
    let f = match classify_dim4(&f, &chi(&f, v)) {
        Ok(r) => return Ok((r, families::dim4(&f).1)),
        Err(ClassifyError::NeedsExtension(d)) => Field::new(p, d, None).unwrap(),
        Err(e) => return Err(format!("dim4 p={p} S={v:?}: {e}")),
    };
    let r = classify_dim4(&f, &chi(&f, v)).map_err(|e| format!("dim4 GF({p}^{}) S={v:?}: {e}", f.m()))?;
    Ok((r, families::dim4(&f).1))
}

fn verified(r: &ClassificationReport) -> bool {
    r.verified.irreducible && r.verified.character && r.verified.pairwise_noniso && r.verified.oracle_agreement != Some(false)
}

// 1. dim u(L,S) = p^n, confirmed by spinning 1 under the regular action.
fn enveloping_dimension() -> Verdict {
    let mut notes = Vec::new();
    for p in [2u32, 3, 5] {
        let f = Field::prime(p).unwrap();
        let mut cases = vec![("dim2", families::dim2(&f).1, 2u32)];
        if p > 2 {
            cases.push(("sl2", families::sl2(&f).1, 3));
        }
        for (name, pm, n) in cases {
            for s in [Character::zero(n as usize), Character::new(vec![Fe::ONE; n as usize])] {
                let env = EnvAlgebra::new(&pm, &s).unwrap();
                let want = (p as u64).pow(n);
                let reg = regular_module(&env).unwrap();
                let generated = spin(&f, &reg.mats, &[f.unit(reg.dim, 0)]).dim() as u64;
                if env.dim() != want || generated != want {
                    return verdict(false, format!("{name} p={p}: dim {} spun {generated}, want {want}", env.dim()));
                }
            }
            notes.push(format!("{name}@{p}={}", (p as u64).pow(n)));
        }
    }
    verdict(true, notes.join(" "))
}

fn gl2(f: &Field) -> (LieAlgebra, PMapping) {
    let unit = |i: usize| {
        let mut m = Matrix::zeros(f, 2, 2);
        m.set(i / 2, i % 2, Fe::ONE);
        m
    };
    let mut brackets = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            brackets.push((i, j, unit(i).commutator(&unit(j)).data));
        }
    }
    let labels = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
    let alg = LieAlgebra::new(f, labels, &brackets).unwrap();
    let p = f.p() as u64;
    let images = (0..4).map(|i| unit(i).pow(p).data).collect();
    let pm = PMapping::new(&alg, images).unwrap();
    (alg, pm)
}

// 2. (a+b)^[p] = a^[p] + b^[p] + Σ s_i(a,b) with [p] the matrix power.
fn jacobson_brute_force() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for p in [2u32, 3] {
        let f = Field::prime(p).unwrap();
        let (alg, pm) = gl2(&f);
        let power = |x: &[Fe]| Matrix::from_rows(&f, &[x[..2].to_vec(), x[2..].to_vec()]).unwrap().pow(p as u64).data;
        let mut pairs: Vec<(LieElement, LieElement)> = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                pairs.push((alg.basis(i), alg.basis(j)));
            }
        }
        for _ in 0..100 {
            pairs.push((alg.random_element(&mut rng), alg.random_element(&mut rng)));
        }
        for (a, b) in &pairs {
            let lhs = power(&f.vadd(a, b));
            let rhs = f.vadd(&f.vadd(&power(a), &power(b)), &jacobson_sum(&alg, a, b));
            if lhs != rhs || pm.extend(a) != power(a) {
                return verdict(false, format!("p={p}: fails at a={a:?} b={b:?}"));
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} pairs in gl(2,GF(2)) and gl(2,GF(3))"))
}

// 3. Associativity in u(sl2,S) and zx^s = Σ C(s,t) x^{s-t} {z,x;t}.
fn pbw_arithmetic() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let f = Field::prime(3).unwrap();
    let (_, pm) = families::sl2(&f);
    for s in [Character::zero(3), chi(&f, &[1, 2, 1])] {
        let env = EnvAlgebra::new(&pm, &s).unwrap();
        for _ in 0..200 {
            let [a, b, c] = [0, 1, 2].map(|_| env.random_element(&mut rng, 4));
            if env.mul(&env.mul(&a, &b), &c) != env.mul(&a, &env.mul(&b, &c)) {
                return verdict(false, "associativity fails in u(sl2,S)");
            }
        }
    }
    let mut samples = 0;
    for (pm, n) in [(families::sl2(&f).1, 3), (families::dim4(&f).1, 4), (families::dim5(&f).1, 5)] {
        let env = EnvAlgebra::new(&pm, &Character::zero(n)).unwrap();
        let xs: Vec<_> = (0..n).map(|i| env.generator(i)).collect();
        let p = 3u32;
        for _ in 0..34 {
            let z = env.embed(&pm.alg.random_element(&mut rng));
            let s: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let power = |e: &[u32]| xs.iter().zip(e).fold(env.one(), |acc, (x, &k)| env.mul(&acc, &env.pow(x, k as u64)));
            let lhs = env.mul(&z, &power(&s));
            let mut rhs = env.zero();
            let mut t = vec![0u32; n];
            loop {
                let coeff = t.iter().zip(&s).map(|(&ti, &si)| binom_mod_p(si as u64, ti as u64, p as u64)).product::<u64>();
                let rest: Vec<u32> = s.iter().zip(&t).map(|(&si, &ti)| si - ti).collect();
                let term = env.mul(&power(&rest), &env.nested_commutator(&z, &xs, &t));
                rhs = env.add(&rhs, &env.scale(f.from_int(coeff as i64), &term));
                // next t ≤ s in mixed radix
                let mut k = 0;
                while k < n && t[k] == s[k] {
                    t[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
                t[k] += 1;
            }
            if lhs != rhs {
                return verdict(false, format!("expansion fails for s={s:?}"));
            }
            samples += 1;
        }
    }
    verdict(true, format!("400 triples, {samples} expansion samples"))
}

// 4. sl2 counts for p = 3, 5.
fn sl2_counts() -> Verdict {
    let mut notes = Vec::new();
    for p in [3u32, 5] {
        let pp = p as usize;
        let f = Field::prime(p).unwrap();
        let big = Field::new(p, p, None).unwrap();
        let runs: Vec<(&str, Field, Character, usize, Vec<usize>)> = vec![
            ("S=0", f.clone(), Character::zero(3), pp, (1..=pp).collect()),
            ("S(h)=1", big.clone(), chi(&big, &[0, 0, 1]), pp, vec![pp; pp]),
            ("S(f)=1", f.clone(), chi(&f, &[0, 1, 0]), pp.div_ceil(2), vec![pp; pp.div_ceil(2)]),
        ];
        for (name, field, s, count, dims) in runs {
            let r = match classify_sl2(&field, &s) {
                Ok(r) => r,
                Err(e) => return verdict(false, format!("p={p} {name}: {e}")),
            };
            if r.count() != count || r.dims() != dims || !verified(&r) {
                return verdict(false, format!("p={p} {name}: dims {:?} verified {:?}", r.dims(), r.verified));
            }
            notes.push(format!("p={p} {name}:{}", r.count()));
        }
    }
    verdict(true, notes.join(" "))
}

// 5. dim2 / dim4 case tables and oracle agreement.
fn solvable_tables() -> Verdict {
    let mut runs = 0;
    for p in [2u32, 3] {
        let pp = p as usize;
        let f = Field::prime(p).unwrap();
        let ext = Field::new(p, p, None).unwrap();
        let dim2_pm = families::dim2(&f).1;
        let dim2_ext = families::dim2(&ext).1;
        for sx in 0..p as i64 {
            for sh in 0..p as i64 {
                // S(h) ≠ 0 with S(x) = 0 needs Artin–Schreier roots: run in GF(p^p)
                let (field, pm) = if sh != 0 && sx == 0 { (&ext, &dim2_ext) } else { (&f, &dim2_pm) };
                let r = classify_dim2(field, &chi(field, &[sh, sx])).unwrap();
                let (count, dim) = if sx == 0 { (pp, 1) } else { (1, pp) };
                if r.count() != count || r.dims().iter().any(|&d| d != dim) || !verified(&r) || !oracle_match(&r, pm) {
                    return verdict(false, format!("dim2 p={p} S=({sh},{sx}): dims {:?}", r.dims()));
                }
                runs += 1;
            }
        }
        let chars: [[i64; 4]; 7] =
            [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1], [0, 1, 0, 1], [0, 1, 1, 1]];
        for v in chars {
            let (r, dim4_pm) = match dim4_run(p, &v) {
                Ok(x) => x,
                Err(e) => return verdict(false, e),
            };
            let (count, dim) = match (v[3] != 0, v[1] != 0 || v[2] != 0) {
                (true, _) => (pp, pp),
                (false, false) => (pp, 1),
                (false, true) => (1, pp),
            };
            if r.count() != count || r.dims().iter().any(|&d| d != dim) || !verified(&r) || !oracle_match(&r, &dim4_pm) {
                return verdict(false, format!("dim4 p={p} S={v:?}: dims {:?}", r.dims()));
            }
            runs += 1;
        }
    }
    verdict(true, format!("{runs} characters, all matched by the oracle"))
}

// 6. dim3alpha with α = θ ∈ GF(9).
fn dim3alpha_envelope() -> Verdict {
    let f = Field::new(3, 2, None).unwrap();
    let th = f.theta();
    let alg = families::dim3alpha(&f, th).unwrap();
    let env = minimal_p_envelope(&alg).unwrap();
    let g = &env.ambient;
    let (h, x, y) = (env.embed(&alg.basis(0)), env.embed(&alg.basis(1)), env.embed(&alg.basis(2)));
    let t = env.pmap.extend(&h);
    let a3 = f.frobenius(th);
    let relations = g.dim() == 4
        && env.pmap.verify().ok()
        && g.bracket(&h, &t).iter().all(|c| c.is_zero())
        && g.bracket(&t, &x) == x
        && g.bracket(&t, &y) == f.vscale(a3, &y);
    let b4 = classify_dim3alpha(&f, th, &chi(&f, &[0, 1, 1, 0])).unwrap();
    let b4_ok = b4.case == "(b.4)" && b4.dims() == vec![9] && verified(&b4);
    // (b.1) with S'' = 0: the stated count is p, with β(h) the roots of X^3 − X
    let b1 = classify_dim3alpha(&f, th, &Character::zero(4)).unwrap();
    let (_, envp) = families::dim3alpha_envelope(&f, th).unwrap();
    let oracle = oracle_irreducibles(&envp.pmap, &b1.character).unwrap();
    let beta_h: Vec<String> = b1.classes.iter().map(|c| f.format(c.rep.mats[0].get(0, 0))).collect();
    let b1_ok = b1.count() == 3 && b1.dims() == vec![1; 3];
    let detail = format!(
        "envelope relations {relations}; (b.4) {} class(es) of dims {:?}; (b.1) {} one-dim classes against the stated 3, \
         oracle finds {}, beta(h) in {{{}}}",
        b4.count(),
        b4.dims(),
        b1.count(),
        oracle.len(),
        beta_h.join(" ")
    );
    let known = relations && b4_ok && !b1_ok && oracle.len() == b1.count() && b1.dims().iter().all(|&d| d == 1);
    Verdict { pass: relations && b4_ok && b1_ok, known, detail }
}

/// Every invariant subspace of `rep`.
fn invariant_subspaces(rep: &Representation) -> Vec<Subspace> {
    let f = rep.field();
    let mut out = Vec::new();
    for k in 0..=rep.dim {
        for_each_subspace(f, rep.dim, k, |s| {
            if rep.mats.iter().all(|m| s.is_invariant(m)) {
                out.push(s);
            }
        });
    }
    out
}

// 7. Dimension law and the submodule correspondence for dim2 at p = 2.
fn induction_laws() -> Verdict {
    let f = Field::prime(2).unwrap();
    let (alg, pm) = families::dim2(&f);
    let s = chi(&f, &[0, 1]);
    let hx = alg.span(&[alg.basis(1)]);
    let (sub, _) = restrict_pmap(&pm, &hx).unwrap();
    // the correspondence needs I = Fx to act on M by λ; the Jordan block only
    // enters the dimension law
    let modules = [
        (Matrix::from_ints(&f, &[&[1]]), true),
        (Matrix::from_ints(&f, &[&[1, 0], &[0, 1]]), true),
        (Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]), false),
    ];
    let mut total = 0;
    for (mx, scalar) in modules {
        let m = Representation::new(&sub, vec![mx]).unwrap();
        let ind = induce(&pm, &s, &InducedSpec { subalgebra: hx.clone(), module: m.clone() }).unwrap();
        if ind.rep.dim != 2 * m.dim {
            return verdict(false, format!("dim {} for dim M = {}", ind.rep.dim, m.dim));
        }
        if !scalar {
            continue;
        }
        let base = ind.base_subspace();
        let images: Vec<Subspace> = invariant_subspaces(&m)
            .iter()
            .map(|n| {
                let lifted: Vec<Vec<Fe>> = n.basis.iter().map(|v| base.basis.iter().zip(v).fold(f.vzero(ind.rep.dim), |acc, (b, &c)| f.vadd(&acc, &f.vscale(c, b)))).collect();
                spin(&f, &ind.rep.mats, &lifted)
            })
            .collect();
        for w in invariant_subspaces(&ind.rep) {
            if !images.contains(&w) {
                return verdict(false, format!("invariant subspace of dim {} is not Ind(N)", w.dim()));
            }
            total += 1;
        }
    }
    // the fixture request through the file formats
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/");
    let read = |n: &str| std::fs::read_to_string(format!("{root}{n}")).unwrap();
    let la = load_algebra(&read("dim2.json"), &LoadOptions::default()).unwrap();
    let fpm = la.pmap.clone().unwrap();
    let fchi = parse_characters(&read("Sx1.json"), &la.alg.labels, &la.coeffs()).unwrap().remove(0);
    let (h, m) = parse_induce_request(&read("dim2_induce.json"), &fpm, &la.coeffs()).unwrap();
    let ind = induce(&fpm, &fchi, &InducedSpec { subalgebra: h, module: m }).unwrap();
    if ind.rep.dim != 3 {
        return verdict(false, "fixture induce: wrong dimension");
    }
    verdict(true, format!("{total} invariant subspaces, each Ind(N) for some N"))
}

// 8. Jordan–Chevalley in dim2 over GF(3).
fn jordan_chevalley() -> Verdict {
    let f = Field::prime(3).unwrap();
    let (alg, pm) = families::dim2(&f);
    let elems: Vec<LieElement> = f.elements().flat_map(|a| f.elements().map(move |b| vec![a, b])).collect();
    let valid = |x: &[Fe], s: &[Fe], n: &[Fe]| {
        f.vadd(s, n) == x && pm.is_semisimple(s) && pm.is_p_nilpotent(n) && alg.bracket(s, n).iter().all(|c| c.is_zero())
    };
    for x in &elems {
        let jc = pm.jordan_chevalley(x);
        if !valid(x, &jc.semisimple, &jc.nilpotent) {
            return verdict(false, format!("invalid decomposition of {}", alg.format_element(x)));
        }
        let all: Vec<_> = elems.iter().flat_map(|s| elems.iter().map(move |n| (s, n))).filter(|(s, n)| valid(x, s, n)).collect();
        if all.len() != 1 {
            return verdict(false, format!("{} decompositions of {}", all.len(), alg.format_element(x)));
        }
    }
    verdict(true, "9 elements, 81 pairs each, unique decomposition")
}

fn gamma_checks(r: &ClassificationReport, pm: &PMapping) -> Result<usize, String> {
    let mut n = 0;
    for c in &r.classes {
        let Some(corr) = &c.correspondence else { continue };
        if !check_correspondence(&c.rep, corr).map_err(|e| e.to_string())? {
            return Err(format!("{} {}: V^lambda != 1 ⊗ M", r.algebra, r.case));
        }
        let (sub, _) = restrict_pmap(pm, &corr.l_lambda).map_err(|e| e.to_string())?;
        let vl = v_lambda(&c.rep, &corr.lambda);
        let m = c.rep.restrict(&sub, &corr.l_lambda.basis).submodule(&vl);
        let back = induce(pm, &r.character, &InducedSpec { subalgebra: corr.l_lambda.clone(), module: m }).map_err(|e| e.to_string())?;
        if !module_iso(&back.rep, &c.rep).map_err(|e| e.to_string())? {
            return Err(format!("{} {}: Ind(V^lambda) is not V", r.algebra, r.case));
        }
        n += 1;
    }
    Ok(n)
}

// 9. (Ind M)^λ = 1 ⊗ M and Ind(V^λ) ≅ V on every induced class.
fn gamma_bijection() -> Verdict {
    let mut total = 0;
    let mut run = |r: ClassificationReport, pm: &PMapping| -> Result<(), String> {
        total += gamma_checks(&r, pm)?;
        Ok(())
    };
    let res = (|| -> Result<(), String> {
        for p in [2u32, 3] {
            let f = Field::prime(p).unwrap();
            let pm2 = families::dim2(&f).1;
            run(classify_dim2(&f, &chi(&f, &[0, 1])).unwrap(), &pm2)?;
            run(classify_dim2(&f, &Character::zero(2)).unwrap(), &pm2)?;
            for v in [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 1, 1, 1]] {
                let (r, pm4) = dim4_run(p, &v)?;
                run(r, &pm4)?;
            }
        }
        let f = Field::new(3, 2, None).unwrap();
        let th = f.theta();
        let envp = families::dim3alpha_envelope(&f, th).unwrap().1.pmap;
        for v in [[0, 1, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]] {
            run(classify_dim3alpha(&f, th, &chi(&f, &v)).unwrap(), &envp)?;
        }
        let f3 = Field::prime(3).unwrap();
        let (_, rpm) = families::dim3alpha_restricted(&f3, Fe(2)).unwrap();
        run(classify_dim3alpha(&f3, Fe(2), &chi(&f3, &[0, 1, 2])).unwrap(), &rpm)?;
        Ok(())
    })();
    match res {
        Ok(()) => verdict(true, format!("{total} induced classes")),
        Err(e) => verdict(false, e),
    }
}

// 10. L^λ for dim5 and dim4 case (b).
fn l_lambda_formulas() -> Verdict {
    let f = Field::prime(3).unwrap();
    let (alg, pm) = families::dim5(&f);
    let ideal = alg.span(&[alg.basis(3), alg.basis(4)]);
    let mut checked = 0;
    for lu in f.elements() {
        for lv in f.elements() {
            if lu.is_zero() && lv.is_zero() {
                continue;
            }
            let lambda = EigenvalueFunction { ideal: ideal.clone(), values: vec![lu, lv] };
            let got = l_lambda(&pm, &lambda).unwrap();
            let e = alg.element(&[("e", f.mul(lv, lv)), ("h", f.mul(lu, lv)), ("f", f.neg(f.mul(lu, lu)))]).unwrap();
            let want = alg.span(&[e, alg.basis(3), alg.basis(4)]);
            if got != want {
                return verdict(false, format!("dim5 lambda=({lu:?},{lv:?})"));
            }
            checked += 1;
        }
    }
    let (alg4, pm4) = families::dim4(&f);
    let ideal4 = alg4.span(&[alg4.basis(3), alg4.basis(1)]);
    for sz in f.elements().filter(|z| !z.is_zero()) {
        for sx in f.elements() {
            let values: Vec<Fe> = ideal4.basis.iter().map(|v| f.add(f.mul(v[3], sz), f.mul(v[1], sx))).collect();
            let lambda = EigenvalueFunction { ideal: ideal4.clone(), values };
            let got = l_lambda(&pm4, &lambda).unwrap();
            let c = f.div(sx, sz).unwrap();
            let t = alg4.element(&[("t", Fe::ONE), ("y", c)]).unwrap();
            let want = alg4.span(&[t, alg4.basis(1), alg4.basis(3)]);
            if got != want {
                return verdict(false, format!("dim4 S(z)={sz:?} S(x)={sx:?}"));
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} eigenvalue functions, exact echelon equality"))
}

fn main() {
    type Check = fn() -> Verdict;
    let criteria: BTreeMap<u8, (&str, Check, Duration)> = BTreeMap::from([
        (1, ("enveloping dimension p^n", enveloping_dimension as Check, Duration::from_secs(1))),
        (2, ("Jacobson formula in gl(2)", jacobson_brute_force as Check, Duration::from_secs(5))),
        (3, ("PBW associativity and commutator expansion", pbw_arithmetic as Check, Duration::from_secs(60))),
        (4, ("sl2 class counts", sl2_counts as Check, Duration::from_secs(60))),
        (5, ("dim2/dim4 case tables vs oracle", solvable_tables as Check, Duration::from_secs(60))),
        (6, ("dim3alpha envelope, (b.1) and (b.4)", dim3alpha_envelope as Check, Duration::from_secs(30))),
        (7, ("induction dimension and submodule correspondence", induction_laws as Check, Duration::from_secs(60))),
        (8, ("Jordan-Chevalley uniqueness", jordan_chevalley as Check, Duration::from_secs(60))),
        (9, ("lambda-correspondence on induced classes", gamma_bijection as Check, Duration::from_secs(60))),
        (10, ("L^lambda formulas", l_lambda_formulas as Check, Duration::from_secs(60))),
    ]);
    let mut unexpected = Vec::new();
    for (id, (name, check, budget)) in criteria {
        let start = Instant::now();
        let v = check();
        let took = start.elapsed();
        let pass = v.pass && took <= budget;
        let tag = if pass { "PASS" } else { "FAIL" };
        let note = if !pass && v.known { " (known)" } else { "" };
        println!("{tag}{note} criterion {id:>2} {name} [{:.2}s / {}s]: {}", took.as_secs_f64(), budget.as_secs(), v.detail);
        if !pass && !(v.known && took <= budget) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
