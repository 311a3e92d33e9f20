//! Complete lists of irreducible S-representations for the example families and
//! a reduction driver for general restricted algebras.
//!
//! Every solvable-family driver follows the same pattern: pick an ideal I whose
//! derived algebra acts nilpotently, take the forced eigenvalue function λ on I,
//! build the stabilizer L^λ, list the one-dimensional L^λ-modules on which I acts
//! by λ and induce. sl2 is built directly from its weight-vector recursion.

pub mod families;
mod forms;
mod generic;
mod sl2;
mod solvable;

pub use forms::{closure_count, one_dim_forms, FORM_BOUND};
pub use generic::{classify_generic, ideal_candidates};
pub use sl2::{classify_sl2, sl2_module};
pub use solvable::{classify_dim2, classify_dim3alpha, classify_dim4, normalize_envelope_character};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gfp::{Fe, FieldDesc, GfError, Matrix, Subspace};
use crate::liealg::{LieAlgebra, LieError};
use crate::pstruct::{PError, PMapping};
use crate::repmod::{
    character_of, eigenvalue_functions, induce, is_irreducible, l_lambda, module_iso, oracle_irreducibles,
    restrict_pmap, v_lambda, EigenvalueFunction, InducedSpec, RepError, Representation, ORACLE_MAX_DIM,
    ORACLE_MAX_FIELD,
};
use crate::uenv::{Character, UenvError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    /// Absolute degree over GF(p) of a field that holds every needed root.
    #[error("needs the field extension of degree {0}")]
    NeedsExtension(u32),
    #[error("characteristic 2 is not supported by this family")]
    EvenCharacteristic,
    #[error("alpha must be nonzero")]
    AlphaZero,
    #[error("alpha^p != alpha: the algebra is not restricted")]
    NotRestricted,
    #[error("alpha^p = alpha: use the restricted branch")]
    Restricted,
    #[error("character has {got} values, expected {expected}")]
    CharacterLength { expected: usize, got: usize },
    #[error("no reduction found: {0}")]
    NoReductionFound(String),
    #[error("{0} exceeds the supported size")]
    TooLarge(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    PMap(#[from] PError),
    #[error(transparent)]
    Field(#[from] GfError),
}

impl From<UenvError> for ClassifyError {
    fn from(e: UenvError) -> Self {
        ClassifyError::Rep(RepError::Env(e))
    }
}

/// The data of the correspondence `V ↦ V^λ` for an induced class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub ideal: Subspace,
    pub lambda: EigenvalueFunction,
    pub l_lambda: Subspace,
    /// `V^λ`, equal to `1 ⊗ M` inside the induced module.
    pub v_lambda: Subspace,
}

#[derive(Clone, Debug)]
pub struct IsoClass {
    pub dim: usize,
    pub family: String,
    pub case: String,
    /// Recipe parameters in canonical text, e.g. the eigenvalue used.
    pub params: BTreeMap<String, String>,
    pub rep: Representation,
    pub label: String,
    /// Restriction to the original algebra when `rep` lives on a p-envelope.
    pub restriction: Option<Representation>,
    pub correspondence: Option<Correspondence>,
}

impl IsoClass {
    pub fn new(family: &str, case: &str, params: BTreeMap<String, String>, rep: Representation) -> IsoClass {
        IsoClass {
            dim: rep.dim,
            family: family.into(),
            case: case.into(),
            params,
            label: rep.label(),
            rep,
            restriction: None,
            correspondence: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub irreducible: bool,
    pub character: bool,
    pub pairwise_noniso: bool,
    /// `None` when the oracle bounds are exceeded.
    pub oracle_agreement: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub algebra: String,
    pub field: FieldDesc,
    /// The character the classes carry (on the envelope for envelope cases).
    pub character: Character,
    pub case: String,
    pub classes: Vec<IsoClass>,
    /// Closed-form count for the case, when one is known.
    pub expected_count: Option<usize>,
    pub verified: Verification,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.dim).collect()
    }
}

pub(crate) fn check_length(chi: &Character, n: usize) -> Result<(), ClassifyError> {
    if chi.values.len() != n {
        return Err(ClassifyError::CharacterLength { expected: n, got: chi.values.len() });
    }
    Ok(())
}

/// `S` restricted to a subspace, in its echelon basis.
pub(crate) fn restrict_character(pmap: &PMapping, chi: &Character, w: &Subspace) -> Character {
    let f = &pmap.alg.field;
    Character::new(w.basis.iter().map(|v| chi.eval(f, v)).collect())
}

/// Keeps the first of every isomorphism class.
pub(crate) fn dedup_iso<T>(items: Vec<T>, rep: impl Fn(&T) -> &Representation) -> Result<Vec<T>, ClassifyError> {
    let mut out: Vec<T> = Vec::new();
    for it in items {
        let mut seen = false;
        for o in &out {
            if module_iso(rep(o), rep(&it))? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(it);
        }
    }
    Ok(out)
}

/// One reduction step: every eigenvalue function λ on `ideal`, its stabilizer
/// L^λ, the one-dimensional L^λ-modules with I acting by λ, induced up to L.
pub(crate) fn induce_from_stabilizer(
    pmap: &PMapping,
    chi: &Character,
    ideal: &Subspace,
) -> Result<Vec<(Vec<Fe>, Representation, Correspondence)>, ClassifyError> {
    let (_, ipm) = restrict_pmap(pmap, ideal)?;
    let lambdas = one_dim_forms(&ipm, &restrict_character(pmap, chi, ideal))?;
    let mut out = Vec::new();
    for values in lambdas {
        let lambda = EigenvalueFunction { ideal: ideal.clone(), values };
        let ll = l_lambda(pmap, &lambda)?;
        let (sub, spm) = restrict_pmap(pmap, &ll)?;
        let betas = one_dim_forms(&spm, &restrict_character(pmap, chi, &ll))?;
        for beta in betas {
            if !acts_by(&pmap.alg, &ll, &beta, &lambda) {
                continue;
            }
            let f = &pmap.alg.field;
            let m = Representation::new(&sub, beta.iter().map(|&b| Matrix::scalar(f, 1, b)).collect())?;
            let ind = induce(pmap, chi, &InducedSpec { subalgebra: ll.clone(), module: m })?;
            let corr = Correspondence {
                ideal: ideal.clone(),
                lambda: lambda.clone(),
                l_lambda: ll.clone(),
                v_lambda: ind.base_subspace(),
            };
            out.push((beta, ind.rep, corr));
        }
    }
    Ok(out)
}

/// Whether the one-dimensional L^λ-module β restricts to λ on the ideal.
fn acts_by(alg: &LieAlgebra, ll: &Subspace, beta: &[Fe], lambda: &EigenvalueFunction) -> bool {
    let f = &alg.field;
    lambda.ideal.basis.iter().zip(&lambda.values).all(|(y, &v)| match ll.coords(y) {
        Some(c) => f.dot(&c, beta) == v,
        None => false,
    })
}

/// Fills in the verification block: irreducibility, character, pairwise
/// non-isomorphism, and agreement with the regular-module oracle when small.
pub fn verify_report(
    report: &mut ClassificationReport,
    pmap: &PMapping,
    oracle: bool,
) -> Result<(), ClassifyError> {
    let mut irreducible = true;
    let mut character = true;
    for c in &report.classes {
        irreducible &= is_irreducible(&c.rep)?.irreducible;
        if let Some(r) = &c.restriction {
            irreducible &= is_irreducible(r)?.irreducible;
        }
        character &= matches!(character_of(&c.rep, pmap), Ok(chi) if chi == report.character);
    }
    let mut noniso = true;
    for i in 0..report.classes.len() {
        for j in i + 1..report.classes.len() {
            if module_iso(&report.classes[i].rep, &report.classes[j].rep)? {
                noniso = false;
            }
        }
    }
    let alg = &pmap.alg;
    let p = alg.p() as u64;
    let small = p.checked_pow(alg.dim() as u32).is_some_and(|d| d <= ORACLE_MAX_DIM)
        && alg.field.order() <= ORACLE_MAX_FIELD;
    let agreement = if oracle && small {
        let truth = oracle_irreducibles(pmap, &report.character)?;
        Some(matches_bijectively(&report.classes.iter().map(|c| c.rep.clone()).collect::<Vec<_>>(), &truth)?)
    } else {
        None
    };
    report.verified = Verification { irreducible, character, pairwise_noniso: noniso, oracle_agreement: agreement };
    Ok(())
}

/// Same count and a bijection under module isomorphism.
pub fn matches_bijectively(a: &[Representation], b: &[Representation]) -> Result<bool, ClassifyError> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for r in a {
        let mut hit = false;
        for (j, s) in b.iter().enumerate() {
            if !used[j] && module_iso(r, s)? {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(Ind M)^λ = 1 ⊗ M` recomputed from the module itself.
pub fn check_correspondence(rep: &Representation, corr: &Correspondence) -> Result<bool, ClassifyError> {
    let lams = eigenvalue_functions(rep, &corr.ideal)?;
    if !lams.contains(&corr.lambda) {
        return Ok(false);
    }
    Ok(v_lambda(rep, &corr.lambda) == corr.v_lambda)
}
