//! Reduced enveloping algebras u(L,S) with a PBW monomial basis.
//!
//! Monomials `e^a = e_1^{a_1} ⋯ e_n^{a_n}` with `0 ≤ a_i < p` are indexed by
//! `Σ a_i p^{n-1-i}`, so index order is lexicographic order on exponent vectors.
//! Products are straightened by the rewriting rules `e_k e_j = e_j e_k + [e_k, e_j]`
//! for `k > j` and `e_j^p = e_j^{[p]} + S(e_j)^p`; the products `e^a · e_j` are
//! memoized and all other products are built from them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rand::Rng;
use thiserror::Error;

use crate::gfp::{Fe, Field, GfError};
use crate::liealg::{LieAlgebra, LieElement};
use crate::pstruct::PMapping;

/// Largest supported `p^n`.
pub const MAX_ENV_DIM: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UenvError {
    #[error("u(L,S) has dimension {0}, above the supported bound")]
    TooLarge(u64),
    #[error("character has {got} values, expected {expected}")]
    CharacterLength { expected: usize, got: usize },
    #[error("cannot parse enveloping element {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A linear form `S ∈ L*`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub values: Vec<Fe>,
}

impl Character {
    pub fn new(values: Vec<Fe>) -> Self {
        Character { values }
    }

    pub fn zero(n: usize) -> Self {
        Character { values: vec![Fe::ZERO; n] }
    }

    pub fn eval(&self, field: &Field, x: &[Fe]) -> Fe {
        field.dot(&self.values, x)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|c| c.is_zero())
    }
}

/// Sparse element: monomial index → nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvElement {
    pub terms: BTreeMap<u32, Fe>,
}

impl EnvElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: u32) -> Fe {
        self.terms.get(&idx).copied().unwrap_or(Fe::ZERO)
    }
}

pub struct EnvAlgebra {
    pub pmap: PMapping,
    pub character: Character,
    field: Field,
    n: usize,
    p: u32,
    /// `place[i] = p^{n-1-i}`.
    place: Vec<u32>,
    /// `S(e_i)^p`.
    chi_p: Vec<Fe>,
    memo: RwLock<HashMap<(u32, u8), Arc<EnvElement>>>,
}

impl std::fmt::Debug for EnvAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "u({:?}, {:?})", self.pmap.alg.labels, self.character.values)
    }
}

impl EnvAlgebra {
    pub fn new(pmap: &PMapping, character: &Character) -> Result<Self, UenvError> {
        let alg = &pmap.alg;
        let n = alg.dim();
        if character.values.len() != n {
            return Err(UenvError::CharacterLength { expected: n, got: character.values.len() });
        }
        let p = alg.p();
        let dim = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if dim > MAX_ENV_DIM {
            return Err(UenvError::TooLarge(dim));
        }
        let place = (0..n).map(|i| p.pow((n - 1 - i) as u32)).collect();
        let field = alg.field.clone();
        let chi_p = character.values.iter().map(|&c| field.frobenius(c)).collect();
        Ok(EnvAlgebra {
            pmap: pmap.clone(),
            character: character.clone(),
            field,
            n,
            p,
            place,
            chi_p,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.pmap.alg
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `p^n`.
    pub fn dim(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn exponents(&self, idx: u32) -> Vec<u32> {
        self.place.iter().map(|&pl| (idx / pl) % self.p).collect()
    }

    pub fn index(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.place).map(|(a, pl)| a * pl).sum()
    }

    #[inline]
    fn exp_at(&self, idx: u32, i: usize) -> u32 {
        (idx / self.place[i]) % self.p
    }

    pub fn zero(&self) -> EnvElement {
        EnvElement::default()
    }

    pub fn scalar(&self, c: Fe) -> EnvElement {
        let mut e = EnvElement::default();
        if !c.is_zero() {
            e.terms.insert(0, c);
        }
        e
    }

    pub fn one(&self) -> EnvElement {
        self.scalar(Fe::ONE)
    }

    pub fn monomial(&self, exps: &[u32]) -> EnvElement {
        let mut e = EnvElement::default();
        e.terms.insert(self.index(exps), Fe::ONE);
        e
    }

    pub fn generator(&self, i: usize) -> EnvElement {
        let mut e = EnvElement::default();
        e.terms.insert(self.place[i], Fe::ONE);
        e
    }

    /// The canonical map ι: L → u(L,S).
    pub fn embed(&self, x: &[Fe]) -> EnvElement {
        let mut e = EnvElement::default();
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                e.terms.insert(self.place[i], c);
            }
        }
        e
    }

    fn acc(&self, into: &mut BTreeMap<u32, Fe>, idx: u32, c: Fe) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match into.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn acc_scaled(&self, into: &mut BTreeMap<u32, Fe>, c: Fe, e: &EnvElement) {
        if c.is_zero() {
            return;
        }
        for (&idx, &v) in &e.terms {
            self.acc(into, idx, self.field.mul(c, v));
        }
    }

    pub fn add(&self, u: &EnvElement, v: &EnvElement) -> EnvElement {
        let mut out = u.terms.clone();
        for (&i, &c) in &v.terms {
            self.acc(&mut out, i, c);
        }
        EnvElement { terms: out }
    }

    pub fn sub(&self, u: &EnvElement, v: &EnvElement) -> EnvElement {
        self.add(u, &self.scale(self.field.neg(Fe::ONE), v))
    }

    pub fn scale(&self, c: Fe, u: &EnvElement) -> EnvElement {
        if c.is_zero() {
            return self.zero();
        }
        EnvElement { terms: u.terms.iter().map(|(&i, &v)| (i, self.field.mul(c, v))).collect() }
    }

    /// `e^a · e_j`, straightened.
    fn mul_mon_gen(&self, a: u32, j: usize) -> Arc<EnvElement> {
        let key = (a, j as u8);
        if let Some(v) = self.memo.read().expect("memo poisoned").get(&key) {
            return v.clone();
        }
        let value = Arc::new(self.compute_mon_gen(a, j));
        self.memo.write().expect("memo poisoned").entry(key).or_insert(value).clone()
    }

    fn compute_mon_gen(&self, a: u32, j: usize) -> EnvElement {
        let alg = self.alg();
        let last = (0..self.n).rev().find(|&i| self.exp_at(a, i) > 0);
        let mut out = BTreeMap::new();
        match last {
            None => {
                out.insert(self.place[j], Fe::ONE);
            }
            Some(k) if k < j || (k == j && self.exp_at(a, j) + 1 < self.p) => {
                out.insert(a + self.place[j], Fe::ONE);
            }
            Some(k) if k == j => {
                // e^{a'} e_j^p = e^{a'} (e_j^{[p]} + S(e_j)^p)
                let prefix = a - (self.p - 1) * self.place[j];
                let image = &self.pmap.images[j];
                for (i, &c) in image.iter().enumerate() {
                    if !c.is_zero() {
                        let t = self.mul_mon_gen(prefix, i);
                        self.acc_scaled(&mut out, c, &t);
                    }
                }
                self.acc(&mut out, prefix, self.chi_p[j]);
            }
            Some(k) => {
                // e^{a-ε_k} e_k e_j = (e^{a-ε_k} e_j) e_k + e^{a-ε_k} [e_k, e_j]
                let rest = a - self.place[k];
                let head = self.mul_mon_gen(rest, j);
                for (&b, &c) in &head.terms {
                    let t = self.mul_mon_gen(b, k);
                    self.acc_scaled(&mut out, c, &t);
                }
                let br = alg.bracket_basis(k, j);
                for (i, &c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        let t = self.mul_mon_gen(rest, i);
                        self.acc_scaled(&mut out, c, &t);
                    }
                }
            }
        }
        EnvElement { terms: out }
    }

    /// `u · e_j`.
    pub fn mul_gen(&self, u: &EnvElement, j: usize) -> EnvElement {
        let mut out = BTreeMap::new();
        for (&a, &c) in &u.terms {
            let t = self.mul_mon_gen(a, j);
            self.acc_scaled(&mut out, c, &t);
        }
        EnvElement { terms: out }
    }

    /// `u · e^b`.
    pub fn mul_monomial(&self, u: &EnvElement, b: u32) -> EnvElement {
        let mut cur = u.clone();
        for i in 0..self.n {
            for _ in 0..self.exp_at(b, i) {
                cur = self.mul_gen(&cur, i);
            }
        }
        cur
    }

    pub fn mul(&self, u: &EnvElement, v: &EnvElement) -> EnvElement {
        let mut out = BTreeMap::new();
        for (&b, &c) in &v.terms {
            let t = self.mul_monomial(u, b);
            self.acc_scaled(&mut out, c, &t);
        }
        EnvElement { terms: out }
    }

    pub fn pow(&self, u: &EnvElement, k: u64) -> EnvElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, u))
    }

    pub fn commutator(&self, u: &EnvElement, v: &EnvElement) -> EnvElement {
        self.sub(&self.mul(u, v), &self.mul(v, u))
    }

    /// `ι(x)ι(y) − ι(y)ι(x) = ι([x,y])`.
    pub fn bracket_check(&self, x: &[Fe], y: &[Fe]) -> bool {
        self.commutator(&self.embed(x), &self.embed(y)) == self.embed(&self.alg().bracket(x, y))
    }

    /// `ι(x)^p = ι(x^{[p]}) + S(x)^p`.
    pub fn p_relation_check(&self, x: &[Fe]) -> bool {
        let f = &self.field;
        let lhs = self.pow(&self.embed(x), self.p as u64);
        let sx = f.frobenius(self.character.eval(f, x));
        let rhs = self.add(&self.embed(&self.pmap.extend(x)), &self.scalar(sx));
        lhs == rhs
    }

    /// `{z, x; t}`: commutators with `xs[0]` taken `t[0]` times, then `xs[1]`, and so on.
    pub fn nested_commutator(&self, z: &EnvElement, xs: &[EnvElement], t: &[u32]) -> EnvElement {
        let mut cur = z.clone();
        for (x, &k) in xs.iter().zip(t) {
            for _ in 0..k {
                cur = self.commutator(&cur, x);
            }
        }
        cur
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, terms: usize) -> EnvElement {
        let q = self.field.order();
        let dim = self.dim() as u32;
        let mut out = BTreeMap::new();
        for _ in 0..terms {
            self.acc(&mut out, rng.gen_range(0..dim), Fe(rng.gen_range(0..q)));
        }
        EnvElement { terms: out }
    }

    /// Text form `c*e^(a_1,..,a_n) + ...`; `0` for the zero element.
    pub fn format(&self, u: &EnvElement) -> String {
        if u.is_zero() {
            return "0".into();
        }
        u.terms
            .iter()
            .map(|(&idx, &c)| {
                let exps: Vec<String> = self.exponents(idx).iter().map(|a| a.to_string()).collect();
                format!("{}*e^({})", self.field.format(c), exps.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(&self, s: &str) -> Result<EnvElement, UenvError> {
        let bad = || UenvError::Parse(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        let mut out = BTreeMap::new();
        for term in s.split('+') {
            let term = term.trim();
            let (coeff, mono) = match term.find("e^(") {
                Some(pos) => {
                    let c = term[..pos].trim().trim_end_matches('*').trim();
                    (if c.is_empty() { "1" } else { c }, Some(&term[pos + 3..]))
                }
                None => (term, None),
            };
            let c = self.field.parse(coeff).map_err(|_| bad())?;
            let idx = match mono {
                None => 0,
                Some(m) => {
                    let inner = m.strip_suffix(')').ok_or_else(bad)?;
                    let exps: Result<Vec<u32>, _> = inner.split(',').map(|x| x.trim().parse::<u32>()).collect();
                    let exps = exps.map_err(|_| bad())?;
                    if exps.len() != self.n || exps.iter().any(|&a| a >= self.p) {
                        return Err(bad());
                    }
                    self.index(&exps)
                }
            };
            self.acc(&mut out, idx, c);
        }
        Ok(EnvElement { terms: out })
    }

    /// Lie-algebra part of a degree ≤ 1 element, if it is one.
    pub fn as_lie_element(&self, u: &EnvElement) -> Option<(Fe, LieElement)> {
        let mut x = self.field.vzero(self.n);
        let mut constant = Fe::ZERO;
        for (&idx, &c) in &u.terms {
            if idx == 0 {
                constant = c;
            } else {
                let i = self.place.iter().position(|&pl| pl == idx)?;
                x[i] = c;
            }
        }
        Some((constant, x))
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..ki {
            c = c * (ni - i) / (i + 1);
        }
        acc = acc * (c % p) % p;
        n /= p;
        k /= p;
    }
    acc
}
