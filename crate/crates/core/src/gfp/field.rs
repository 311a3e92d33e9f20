//! Arithmetic in GF(p^m).
//!
//! Elements are stored as their base-`p` integer index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` is the coefficient of `θ^i` and `θ` is a root of the field modulus. Addition
//! works digit-wise (or through a table for small fields); multiplication goes through
//! discrete log tables built once per field and shared through a process-wide cache.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::GfError;

/// Largest supported characteristic.
pub const MAX_CHAR: u32 = 13;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;
const TABLE_ORDER: usize = 1024;

/// Plain description of a finite field: characteristic, degree and modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub m: u32,
    /// Monic modulus, low-to-high coefficients, length `m + 1`.
    pub modulus: Vec<u32>,
}

/// A field element, meaningful only together with its [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    desc: FieldDesc,
    q: u32,
    /// `exp[k] = g^k` for `k < 2(q-1)`, avoiding a reduction in `mul`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// Handle to a finite field with precomputed arithmetic tables. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{}; {:?})", self.p(), self.m(), self.0.desc.modulus)
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

// Polynomials over GF(p) as low-to-high coefficient vectors, trailing zeros trimmed.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let lead_inv = mod_inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = (r[r.len() - 1] * lead_inv) % p;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - (factor * bc) % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| (a * x) % p == 1).expect("invertible residue")
}

fn digits(mut k: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((k % p as u64) as u32);
        k /= p as u64;
    }
    out
}

/// Irreducibility by trial division against every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible_poly(f: &[u32], p: u32) -> bool {
    let f = poly_trim(f.to_vec());
    let deg = f.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for k in 0..(p as u64).pow(d as u32) {
            let mut g = digits(k, p, d);
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible polynomial of degree `m`, ordering candidates
/// lexicographically by their low-to-high coefficient list.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(m);
    for k in 0..total {
        // lexicographic on (c_0, ..., c_{m-1}): c_0 is the most significant digit
        let mut low = digits(k, p, m as usize);
        low.reverse();
        low.push(1);
        if is_irreducible_poly(&low, p) {
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn cache() -> &'static Mutex<HashMap<FieldDesc, Field>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldDesc, Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// Builds (or fetches from the cache) GF(p^m). Without a modulus the
    /// deterministic default is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if p > MAX_CHAR || m == 0 || (p as u64).checked_pow(m).is_none_or(|q| q > MAX_ORDER) {
            return Err(GfError::Unsupported { p, m });
        }
        let modulus = match modulus {
            Some(f) => {
                let f: Vec<u32> = f.iter().map(|c| c % p).collect();
                if f.len() != m as usize + 1 || f[m as usize] != 1 {
                    return Err(GfError::DegreeMismatch { expected: m, got: f.len().saturating_sub(1) as u32 });
                }
                if !is_irreducible_poly(&f, p) {
                    return Err(GfError::ReducibleModulus(f));
                }
                f
            }
            None => default_modulus(p, m),
        };
        let desc = FieldDesc { p, m, modulus };
        let mut guard = cache().lock().expect("field cache poisoned");
        if let Some(f) = guard.get(&desc) {
            return Ok(f.clone());
        }
        let field = Field(Arc::new(Tables::build(desc.clone())));
        guard.insert(desc, field.clone());
        Ok(field)
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Field, GfError> {
        Field::new(p, 1, None)
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Field, GfError> {
        Field::new(desc.p, desc.m, Some(&desc.modulus))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.desc.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.desc.m
    }

    /// Field order `p^m`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0.desc
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p() as i64) as u32)
    }

    /// Coefficients low-to-high in powers of the generator θ.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a.0 as u64, self.p(), self.m() as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Fe, GfError> {
        if coeffs.len() > self.m() as usize {
            return Err(GfError::BadElement(format!("{coeffs:?} has more than {} coefficients", self.m())));
        }
        let p = self.p() as i64;
        let mut v: u64 = 0;
        for &c in coeffs.iter().rev() {
            v = v * p as u64 + c.rem_euclid(p) as u64;
        }
        Ok(Fe(v as u32))
    }

    /// The generator θ, a root of the modulus. In a prime field the modulus is `X`, so θ = 0.
    pub fn theta(&self) -> Fe {
        if self.m() == 1 {
            // θ is a root of X, i.e. 0
            Fe::ZERO
        } else {
            Fe(self.p())
        }
    }

    /// Iterates over all elements in lexicographic coefficient order (index order).
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order()).map(Fe)
    }

    /// True when `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: Fe) -> bool {
        a.0 < self.p()
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let t = &self.0;
        if t.desc.m == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= t.desc.p { s - t.desc.p } else { s });
        }
        if let Some(tab) = &t.add {
            return Fe(tab[a.0 as usize * t.q as usize + b.0 as usize] as u32);
        }
        digitwise_add(a.0, b.0, t.desc.p, t.desc.m)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let t = &self.0;
        Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.0;
        let l = t.log[a.0 as usize];
        Some(Fe(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b).ok_or(GfError::DivisionByZero)?))
    }

    /// `a^k` for any integer exponent; negative exponents invert.
    pub fn pow(&self, a: Fe, k: i64) -> Result<Fe, GfError> {
        let t = &self.0;
        let ord = (t.q - 1) as i64;
        if a.0 == 0 {
            return match k.cmp(&0) {
                std::cmp::Ordering::Less => Err(GfError::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(Fe::ONE),
                std::cmp::Ordering::Greater => Ok(Fe::ZERO),
            };
        }
        let l = t.log[a.0 as usize] as i64;
        let e = (l * k.rem_euclid(ord)).rem_euclid(ord);
        Ok(Fe(t.exp[e as usize]))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p() as i64).expect("non-negative exponent")
    }

    /// The unique `b` with `b^p = a`.
    pub fn frobenius_inv(&self, a: Fe) -> Fe {
        let e = (self.p() as i64).pow(self.m() - 1);
        self.pow(a, e).expect("non-negative exponent")
    }

    /// Absolute trace to the prime field, `Σ a^{p^i}`.
    pub fn trace(&self, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.m() {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// All roots of `X^p - X = c`, by exhaustive evaluation.
    pub fn artin_schreier_roots(&self, c: Fe) -> Vec<Fe> {
        self.elements()
            .filter(|&x| self.sub(self.frobenius(x), x) == c)
            .collect()
    }

    /// `X^p - X = c` is solvable in this field iff `Tr(c) = 0`.
    pub fn artin_schreier_solvable(&self, c: Fe) -> bool {
        self.trace(c).is_zero()
    }

    /// Canonical text: the integer for prime-subfield values, else the
    /// comma-separated coefficients low-to-high without trailing zeros.
    pub fn format(&self, a: Fe) -> String {
        let c = poly_trim(self.coeffs(a));
        if c.is_empty() {
            return "0".into();
        }
        c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(&self, s: &str) -> Result<Fe, GfError> {
        let parts: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|_| GfError::BadElement(s.to_string()))?;
        if parts.is_empty() {
            return Err(GfError::BadElement(s.to_string()));
        }
        self.from_coeffs(&parts)
    }

    /// An embedding of `sub` into `self`, sending sub's generator to the
    /// smallest root (in index order) of sub's modulus. Requires `m_sub | m`.
    pub fn embedding_from(&self, sub: &Field) -> Option<Embedding> {
        if sub.p() != self.p() || !self.m().is_multiple_of(sub.m()) {
            return None;
        }
        let modulus = &sub.desc().modulus;
        let root = self.elements().find(|&x| {
            let mut acc = Fe::ZERO;
            for &c in modulus.iter().rev() {
                acc = self.add(self.mul(acc, x), self.from_int(c as i64));
            }
            acc.is_zero()
        })?;
        let images = (0..sub.order())
            .map(|k| {
                let c = sub.coeffs(Fe(k));
                let mut acc = Fe::ZERO;
                for &ci in c.iter().rev() {
                    acc = self.add(self.mul(acc, root), self.from_int(ci as i64));
                }
                acc
            })
            .collect();
        Some(Embedding { images })
    }
}

/// A field embedding GF(p^k) → GF(p^m), as a lookup table.
#[derive(Clone, Debug)]
pub struct Embedding {
    images: Vec<Fe>,
}

impl Embedding {
    pub fn apply(&self, a: Fe) -> Fe {
        self.images[a.0 as usize]
    }
}

fn digitwise_add(mut a: u32, mut b: u32, p: u32, m: u32) -> Fe {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        let s = (a % p + b % p) % p;
        out += s * place;
        place *= p;
        a /= p;
        b /= p;
    }
    Fe(out)
}

impl Tables {
    fn build(desc: FieldDesc) -> Tables {
        let p = desc.p;
        let m = desc.m as usize;
        let q = p.pow(desc.m);
        // multiplication by θ on index encodings, used to walk powers of a candidate generator
        let mul_poly = |a: u32, b: u32| -> u32 {
            let da = digits(a as u64, p, m);
            let db = digits(b as u64, p, m);
            let mut prod = vec![0u32; 2 * m];
            for i in 0..m {
                for j in 0..m {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                }
            }
            let r = poly_rem(&prod, &desc.modulus, p);
            let mut v = 0u32;
            for &c in r.iter().rev() {
                v = v * p + c;
            }
            v
        };
        let order = q - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        'candidates: for g in 1..q {
            let mut x = 1u32;
            for k in 0..order {
                if k > 0 && x == 1 {
                    continue 'candidates;
                }
                exp[k as usize] = x;
                x = mul_poly(x, g);
            }
            break;
        }
        for k in 0..order as usize {
            log[exp[k] as usize] = k as u32;
            exp[k + order as usize] = exp[k];
        }
        let neg = (0..q)
            .map(|a| {
                let d = digits(a as u64, p, m);
                let mut v = 0u32;
                for &c in d.iter().rev() {
                    v = v * p + (p - c) % p;
                }
                v
            })
            .collect();
        let add = (m > 1 && (q as usize) <= TABLE_ORDER).then(|| {
            let mut tab = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = digitwise_add(a, b, p, m as u32).0 as u16;
                }
            }
            tab
        });
        Tables { desc, q, exp, log, neg, add }
    }
}

/// Field element bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub field: Field,
    pub value: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

/// The operations exposed by [`FieldElement::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(i64),
}

impl FieldElement {
    pub fn new(field: &Field, value: Fe) -> Self {
        FieldElement { field: field.clone(), value }
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch);
        }
        Ok(())
    }

    pub fn arith(&self, op: ArithOp, other: Option<&FieldElement>) -> Result<FieldElement, GfError> {
        let f = &self.field;
        let rhs = |o: Option<&FieldElement>| -> Result<Fe, GfError> {
            let o = o.ok_or(GfError::MissingOperand)?;
            self.same_field(o)?;
            Ok(o.value)
        };
        let value = match op {
            ArithOp::Add => f.add(self.value, rhs(other)?),
            ArithOp::Sub => f.sub(self.value, rhs(other)?),
            ArithOp::Mul => f.mul(self.value, rhs(other)?),
            ArithOp::Inv => f.inv(self.value).ok_or(GfError::DivisionByZero)?,
            ArithOp::Pow(k) => f.pow(self.value, k)?,
        };
        Ok(FieldElement::new(f, value))
    }

    pub fn frobenius(&self, inverse: bool) -> FieldElement {
        let v = if inverse { self.field.frobenius_inv(self.value) } else { self.field.frobenius(self.value) };
        FieldElement::new(&self.field, v)
    }
}
