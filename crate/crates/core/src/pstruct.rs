//! p-mappings, restrictability, p-closures, minimal p-envelopes and the
//! Jordan–Chevalley decomposition.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gfp::{EchelonBasis, Fe, GfError, Matrix, SemilinearMap, Subspace};
use crate::liealg::{LieAlgebra, LieElement, LieError};

/// Random pairs checked by [`PMapping::verify`] beyond the basis pairs.
pub const RANDOM_PAIRS: usize = 50;
const VERIFY_SEED: u64 = 0x5eed_0003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PError {
    #[error("L has a nontrivial center; supply an explicit p-map or an envelope fixture")]
    NonTrivialCenter,
    #[error("expected {expected} basis images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("p-map axioms fail: {0}")]
    Invalid(PMapViolation),
    #[error("algebra is not restrictable")]
    NotRestrictable,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PMapViolation {
    /// `ad(x^{[p]}) ≠ (ad x)^p` for the named element.
    Axiom1(String),
    /// The Jacobson sum rule fails for the named pair.
    Axiom3(String, String),
}

impl std::fmt::Display for PMapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PMapViolation::Axiom1(x) => write!(f, "Axiom1Violation({x})"),
            PMapViolation::Axiom3(a, b) => write!(f, "Axiom3Violation({a}, {b})"),
        }
    }
}

/// The Jacobson terms `s_1(a,b), ..., s_{p-1}(a,b)`.
///
/// `(ad(a⊗X + b⊗1))^{p-1}(a⊗1) = Σ i·s_i(a,b)⊗X^{i-1}` is evaluated in `L⊗F[X]`
/// with elements stored as coefficient lists of length `p`.
pub fn jacobson_si(alg: &LieAlgebra, a: &[Fe], b: &[Fe]) -> Vec<LieElement> {
    let f = &alg.field;
    let p = alg.p() as usize;
    let mut poly: Vec<LieElement> = vec![alg.zero(); p];
    poly[0] = a.to_vec();
    for _ in 0..p - 1 {
        let mut next = vec![alg.zero(); p];
        for k in 0..p {
            if poly[k].iter().all(|c| c.is_zero()) {
                continue;
            }
            next[k] = f.vadd(&next[k], &alg.bracket(b, &poly[k]));
            if k + 1 < p {
                next[k + 1] = f.vadd(&next[k + 1], &alg.bracket(a, &poly[k]));
            }
        }
        poly = next;
    }
    (1..p)
        .map(|i| {
            let inv = f.inv(f.from_int(i as i64)).expect("i < p is a unit");
            f.vscale(inv, &poly[i - 1])
        })
        .collect()
}

/// `Σ_i s_i(a, b)`.
pub fn jacobson_sum(alg: &LieAlgebra, a: &[Fe], b: &[Fe]) -> LieElement {
    let f = &alg.field;
    jacobson_si(alg, a, b).iter().fold(alg.zero(), |acc, s| f.vadd(&acc, s))
}

/// A p-mapping given by the images of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMapping {
    pub alg: LieAlgebra,
    pub images: Vec<LieElement>,
    /// `Σ_i s_i(e_i, e_j)` for `i < j`, indexed `i * n + j`.
    basis_sums: Vec<LieElement>,
}

/// Outcome of [`PMapping::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMapReport {
    pub violation: Option<PMapViolation>,
    pub basis_pairs: usize,
    pub random_pairs: usize,
}

impl PMapReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementClass {
    Toral,
    Semisimple,
    PNilpotent { order: usize },
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JcDecomposition {
    pub semisimple: LieElement,
    pub nilpotent: LieElement,
}

/// A p-envelope `(G, [p], i)`. The first `dim L` basis vectors of `G` are the
/// images of L's basis; the rest are adjoined.
#[derive(Clone, Debug)]
pub struct PEnvelope {
    pub ambient: LieAlgebra,
    pub pmap: PMapping,
    /// `dim L × dim G`, row i is the image of `e_i`.
    pub embedding: Matrix,
    pub adjoined: Vec<String>,
}

/// Witness data for restrictability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restrictability {
    pub restrictable: bool,
    /// For each basis element, some `y` with `ad y = (ad e_i)^p`.
    pub witness: Option<Vec<LieElement>>,
}

impl PMapping {
    /// Builds the mapping without checking the axioms.
    pub fn new_unchecked(alg: &LieAlgebra, images: Vec<LieElement>) -> Result<Self, PError> {
        let n = alg.dim();
        if images.len() != n {
            return Err(PError::ImageCount { expected: n, got: images.len() });
        }
        if let Some(bad) = images.iter().find(|v| v.len() != n) {
            return Err(LieError::DimensionMismatch { expected: n, got: bad.len() }.into());
        }
        let mut basis_sums = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                basis_sums[i * n + j] = jacobson_sum(alg, &alg.basis(i), &alg.basis(j));
            }
        }
        Ok(PMapping { alg: alg.clone(), images, basis_sums })
    }

    /// Builds the mapping and checks it with [`PMapping::verify`].
    pub fn new(alg: &LieAlgebra, images: Vec<LieElement>) -> Result<Self, PError> {
        let pm = PMapping::new_unchecked(alg, images)?;
        match pm.verify().violation {
            None => Ok(pm),
            Some(v) => Err(PError::Invalid(v)),
        }
    }

    /// Zero p-map (valid exactly when every `(ad e_i)^p` vanishes).
    pub fn zero(alg: &LieAlgebra) -> Result<Self, PError> {
        PMapping::new(alg, vec![alg.zero(); alg.dim()])
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn term(&self, i: usize, c: Fe) -> LieElement {
        let f = &self.alg.field;
        f.vscale(f.frobenius(c), &self.images[i])
    }

    fn fold(&self, x: &[Fe], order: impl Iterator<Item = usize>) -> LieElement {
        let f = &self.alg.field;
        let mut acc: Option<(LieElement, LieElement)> = None;
        for i in order {
            if x[i].is_zero() {
                continue;
            }
            let b = f.vscale(x[i], &self.alg.basis(i));
            let bp = self.term(i, x[i]);
            acc = Some(match acc {
                None => (b, bp),
                Some((a, ap)) => {
                    let s = jacobson_sum(&self.alg, &a, &b);
                    (f.vadd(&a, &b), f.vadd(&f.vadd(&ap, &bp), &s))
                }
            });
        }
        acc.map_or_else(|| self.alg.zero(), |(_, v)| v)
    }

    /// `x^{[p]}`, folding basis terms left to right.
    pub fn extend(&self, x: &[Fe]) -> LieElement {
        self.fold(x, 0..self.dim())
    }

    /// `x^{[p]}`, folding basis terms right to left.
    pub fn extend_reversed(&self, x: &[Fe]) -> LieElement {
        self.fold(x, (0..self.dim()).rev())
    }

    /// `x^{[p]^k}`.
    pub fn iterate(&self, x: &[Fe], k: usize) -> LieElement {
        (0..k).fold(x.to_vec(), |acc, _| self.extend(&acc))
    }

    /// Checks axiom (1) on the basis and the sum rule on basis pairs and on
    /// seeded random pairs.
    pub fn verify(&self) -> PMapReport {
        let alg = &self.alg;
        let f = &alg.field;
        let n = self.dim();
        let p = alg.p() as u64;
        let mut report = PMapReport { violation: None, basis_pairs: 0, random_pairs: 0 };
        for i in 0..n {
            if alg.ad(&self.images[i]) != alg.ad_basis(i).pow(p) {
                report.violation = Some(PMapViolation::Axiom1(alg.labels[i].clone()));
                return report;
            }
        }
        let check = |a: &LieElement, b: &LieElement, s: &LieElement| -> bool {
            let lhs = self.extend(&f.vadd(a, b));
            let rhs = f.vadd(&f.vadd(&self.extend_reversed(a), &self.extend_reversed(b)), s);
            // The combined value must also satisfy axiom (1).
            lhs == rhs && alg.ad(&lhs) == alg.ad(&f.vadd(a, b)).pow(p)
        };
        for i in 0..n {
            for j in i + 1..n {
                report.basis_pairs += 1;
                if !check(&alg.basis(i), &alg.basis(j), &self.basis_sums[i * n + j]) {
                    report.violation = Some(PMapViolation::Axiom3(alg.labels[i].clone(), alg.labels[j].clone()));
                    return report;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
        for _ in 0..RANDOM_PAIRS {
            let a = alg.random_element(&mut rng);
            let b = alg.random_element(&mut rng);
            report.random_pairs += 1;
            if !check(&a, &b, &jacobson_sum(alg, &a, &b)) {
                report.violation = Some(PMapViolation::Axiom3(alg.format_element(&a), alg.format_element(&b)));
                return report;
            }
        }
        report
    }

    /// Smallest p-subalgebra containing `s`.
    pub fn p_closure(&self, s: &Subspace) -> Subspace {
        let alg = &self.alg;
        let mut eb = EchelonBasis::new(&alg.field, alg.dim());
        let mut queue: Vec<LieElement> = s.basis.clone();
        let mut members: Vec<LieElement> = Vec::new();
        while let Some(v) = queue.pop() {
            if !eb.insert(&v) {
                continue;
            }
            queue.push(self.extend(&v));
            for m in &members {
                queue.push(alg.bracket(m, &v));
            }
            members.push(v);
        }
        eb.to_subspace()
    }

    pub fn is_p_subalgebra(&self, s: &Subspace) -> bool {
        self.alg.is_subalgebra(s) && s.basis.iter().all(|v| s.contains(&self.extend(v)))
    }

    pub fn is_toral(&self, x: &[Fe]) -> bool {
        self.extend(x) == x
    }

    /// Smallest `k` with `x^{[p]^k} = 0`.
    pub fn nilpotency_order(&self, x: &[Fe]) -> Option<usize> {
        let bound = (self.dim() * self.alg.field.m() as usize).max(self.dim() + 1);
        let mut y = x.to_vec();
        for k in 0..=bound {
            if y.iter().all(|c| c.is_zero()) {
                return Some(k);
            }
            y = self.extend(&y);
        }
        None
    }

    pub fn is_p_nilpotent(&self, x: &[Fe]) -> bool {
        self.nilpotency_order(x).is_some()
    }

    /// Basis of `span{x^{[p]^i} : i ≥ 1}` as the iterates themselves.
    fn iterate_span(&self, x: &[Fe]) -> Vec<LieElement> {
        let mut eb = EchelonBasis::new(&self.alg.field, self.dim());
        let mut y = self.extend(x);
        while eb.insert(&y) {
            y = self.extend(&y);
        }
        eb.originals.clone()
    }

    /// `x ∈ (F x^{[p]})_p`.
    pub fn is_semisimple(&self, x: &[Fe]) -> bool {
        self.alg.span(&self.iterate_span(x)).contains(x)
    }

    pub fn element_class(&self, x: &[Fe]) -> ElementClass {
        if let Some(order) = self.nilpotency_order(x) {
            return ElementClass::PNilpotent { order };
        }
        if self.is_toral(x) {
            ElementClass::Toral
        } else if self.is_semisimple(x) {
            ElementClass::Semisimple
        } else {
            ElementClass::Mixed
        }
    }

    /// `x = x_s + x_n` with `x_s` semisimple, `x_n` p-nilpotent and `[x_s, x_n] = 0`.
    pub fn jordan_chevalley(&self, x: &[Fe]) -> JcDecomposition {
        let alg = &self.alg;
        let f = &alg.field;
        let mut k = 0;
        let mut z = x.to_vec();
        while !self.is_semisimple(&z) {
            z = self.extend(&z);
            k += 1;
        }
        // V = span of the iterates of z; [p] acts on coordinates as β ↦ B·φ(β)
        let v = self.iterate_span(&z);
        let r = v.len();
        if r == 0 {
            return JcDecomposition { semisimple: alg.zero(), nilpotent: x.to_vec() };
        }
        let basis_mat = Matrix::from_cols(f, alg.dim(), &v);
        let coords = |w: &LieElement| basis_mat.solve(w).expect("element of V").particular;
        let b_cols: Vec<LieElement> = v.iter().map(|w| coords(&self.extend(w))).collect();
        let sl = SemilinearMap::new(Matrix::from_cols(f, r, &b_cols)).expect("square");
        let mut w = coords(&z);
        for _ in 0..k {
            let sols = sl.solve(&w).expect("[p] is bijective on the p-closure of a semisimple element");
            w = sols.particular;
        }
        let xs = basis_mat.mul_vec(&w);
        let xn = f.vsub(x, &xs);
        JcDecomposition { semisimple: xs, nilpotent: xn }
    }

    /// `x ↦ x^{[p]}_1 − x^{[p]}_2` for two p-maps on the same algebra.
    pub fn difference(&self, other: &PMapping, x: &[Fe]) -> LieElement {
        self.alg.field.vsub(&self.extend(x), &other.extend(x))
    }
}

/// Decides whether `(ad e_i)^p ∈ ad(L)` for every basis element.
pub fn is_restrictable(alg: &LieAlgebra) -> Restrictability {
    let f = &alg.field;
    let n = alg.dim();
    let p = alg.p() as u64;
    let cols: Vec<Vec<Fe>> = (0..n).map(|j| alg.ad_basis(j).data).collect();
    let system = Matrix::from_cols(f, n * n, &cols);
    let mut witness = Vec::with_capacity(n);
    for i in 0..n {
        match system.solve(&alg.ad_basis(i).pow(p).data) {
            Ok(sol) => witness.push(sol.particular),
            Err(_) => return Restrictability { restrictable: false, witness: None },
        }
    }
    Restrictability { restrictable: true, witness: Some(witness) }
}

/// The p-map obtained from restrictability witnesses.
pub fn witness_pmap(alg: &LieAlgebra) -> Result<PMapping, PError> {
    let r = is_restrictable(alg);
    PMapping::new(alg, r.witness.ok_or(PError::NotRestrictable)?)
}

fn fresh_label(alg: &LieAlgebra, taken: &[String], k: &mut usize) -> String {
    loop {
        *k += 1;
        let l = format!("t{k}");
        if !alg.labels.contains(&l) && !taken.contains(&l) {
            return l;
        }
    }
}

/// Minimal p-envelope of a centerless algebra: the closure of `ad L ⊆ gl(L)`
/// under commutators and matrix p-th powers.
pub fn minimal_p_envelope(alg: &LieAlgebra) -> Result<PEnvelope, PError> {
    if !alg.center().is_zero() {
        return Err(PError::NonTrivialCenter);
    }
    let f = &alg.field;
    let n = alg.dim();
    let p = alg.p() as u64;
    let mut eb = EchelonBasis::new(f, n * n);
    let mut mats: Vec<Matrix> = Vec::new();
    let mut queue: std::collections::VecDeque<Matrix> = (0..n).map(|i| alg.ad_basis(i)).collect();
    while let Some(m) = queue.pop_front() {
        if !eb.insert(&m.data) {
            continue;
        }
        queue.push_back(m.pow(p));
        for other in &mats {
            queue.push_back(other.commutator(&m));
        }
        mats.push(m);
    }
    let big = mats.len();
    let mut labels = alg.labels.clone();
    let mut adjoined = Vec::new();
    let mut counter = 0;
    for _ in n..big {
        let l = fresh_label(alg, &adjoined, &mut counter);
        adjoined.push(l.clone());
        labels.push(l);
    }
    let flat: Vec<Vec<Fe>> = mats.iter().map(|m| m.data.clone()).collect();
    let coord_sys = Matrix::from_cols(f, n * n, &flat);
    let coords = |m: &Matrix| coord_sys.solve(&m.data).expect("closed under the operations").particular;
    let mut brackets = Vec::new();
    for i in 0..big {
        for j in i + 1..big {
            brackets.push((i, j, coords(&mats[i].commutator(&mats[j]))));
        }
    }
    let ambient = LieAlgebra::new(f, labels, &brackets)?;
    let images = mats.iter().map(|m| coords(&m.pow(p))).collect();
    let pmap = PMapping::new(&ambient, images)?;
    let mut embedding = Matrix::zeros(f, n, big);
    for i in 0..n {
        embedding.set(i, i, Fe::ONE);
    }
    Ok(PEnvelope { ambient, pmap, embedding, adjoined })
}

impl PEnvelope {
    /// Image of an element of L in G.
    pub fn embed(&self, x: &[Fe]) -> LieElement {
        self.embedding.vec_mul(x)
    }

    pub fn image(&self) -> Subspace {
        self.ambient.span(&self.embedding.row_vecs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::Field;

    fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn sl2(p: u32) -> (LieAlgebra, PMapping) {
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

    fn dim2(p: u32) -> (LieAlgebra, PMapping) {
        let f = Field::prime(p).unwrap();
        let alg = LieAlgebra::new(&f, labels(&["h", "x"]), &[(0, 1, vec![Fe(0), Fe(1)])]).unwrap();
        let pm = PMapping::new(&alg, vec![alg.basis(0), alg.zero()]).unwrap();
        (alg, pm)
    }

    #[test]
    fn jacobson_terms() {
        let (alg, _) = sl2(3);
        let f = &alg.field;
        // commuting pair
        let s = jacobson_si(&alg, &alg.basis(2), &f.vscale(Fe(2), &alg.basis(2)));
        assert!(s.iter().all(|v| v.iter().all(|c| c.is_zero())));
        // matrices: (e+f)^3 = e+f in gl(2, GF(3)) while e^3 = f^3 = 0
        let sum = jacobson_sum(&alg, &alg.basis(0), &alg.basis(1));
        assert_eq!(sum, alg.element(&[("e", Fe(1)), ("f", Fe(1))]).unwrap());
        let (alg2, _) = dim2(2);
        let s = jacobson_si(&alg2, &alg2.basis(0), &alg2.basis(1));
        assert_eq!(s, vec![alg2.bracket(&alg2.basis(1), &alg2.basis(0))]);
    }

    #[test]
    fn extension_examples() {
        let (alg, pm) = sl2(3);
        let f = alg.field.clone();
        assert_eq!(pm.extend(&alg.basis(2)), alg.basis(2));
        assert_eq!(pm.extend(&f.vscale(Fe(2), &alg.basis(0))), alg.zero());
        let (d, dp) = dim2(3);
        let hx = d.element(&[("h", Fe(1)), ("x", Fe(1))]).unwrap();
        assert_eq!(dp.extend(&hx), hx);
        // ad-cube oracle: ad(h+x)^3 = ad(h+x) and the center is trivial
        assert_eq!(d.ad(&hx).pow(3), d.ad(&hx));
    }

    #[test]
    fn verification() {
        let (alg, _) = sl2(3);
        let bad = PMapping::new_unchecked(&alg, vec![alg.zero(), alg.zero(), alg.basis(0)]).unwrap();
        assert_eq!(bad.verify().violation, Some(PMapViolation::Axiom1("h".into())));
        let f = Field::prime(3).unwrap();
        let ab = LieAlgebra::abelian(&f, labels(&["a", "b"])).unwrap();
        assert!(PMapping::zero(&ab).unwrap().verify().ok());
    }

    #[test]
    fn restrictability_and_closure() {
        let (alg, pm) = sl2(3);
        assert!(is_restrictable(&alg).restrictable);
        assert_eq!(pm.p_closure(&alg.span(&[alg.basis(0), alg.basis(1)])), alg.whole());
        let (d, dp) = dim2(2);
        let hx = d.element(&[("h", Fe(1)), ("x", Fe(1))]).unwrap();
        assert_eq!(dp.p_closure(&d.span(std::slice::from_ref(&hx))), d.span(&[hx]));
        assert_eq!(dp.p_closure(&d.span(&[d.basis(1)])), d.span(&[d.basis(1)]));
    }

    #[test]
    fn classes_and_jc() {
        let (alg, pm) = sl2(3);
        assert_eq!(pm.element_class(&alg.basis(2)), ElementClass::Toral);
        assert_eq!(pm.element_class(&alg.basis(0)), ElementClass::PNilpotent { order: 1 });
        let jc = pm.jordan_chevalley(&alg.basis(0));
        assert_eq!(jc.semisimple, alg.zero());
        let jc = pm.jordan_chevalley(&alg.basis(2));
        assert_eq!(jc.semisimple, alg.basis(2));
        let (d, dp) = dim2(3);
        let hx = d.element(&[("h", Fe(1)), ("x", Fe(1))]).unwrap();
        assert_eq!(dp.element_class(&hx), ElementClass::Toral);
        assert_eq!(dp.jordan_chevalley(&hx).nilpotent, d.zero());
    }

    #[test]
    fn envelope_of_sl2_is_itself() {
        let (alg, _) = sl2(3);
        let env = minimal_p_envelope(&alg).unwrap();
        assert_eq!(env.ambient.dim(), 3);
        assert!(env.adjoined.is_empty());
        assert_eq!(env.embedding, Matrix::identity(&alg.field, 3));
    }
}
