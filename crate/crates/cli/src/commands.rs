//! Command dispatch: each command wraps one library operation and produces a
//! [`RunReport`].

use std::collections::BTreeMap;
use std::path::Path;

use modlie::classify::{
    classify_dim2, classify_dim3alpha, classify_dim4, classify_generic, classify_sl2, families, ClassifyError,
};
use modlie::io::{
    algebra_json, load_algebra, matrix_json, module_json, parse_characters, parse_element, parse_induce_request,
    report_json, IoError, LoadOptions, LoadedAlgebra,
};
use modlie::liealg::LieError;
use modlie::pstruct::{is_restrictable, minimal_p_envelope, PError, PMapping};
use modlie::repmod::{induce, is_irreducible, oracle_irreducibles, InducedSpec, RepError};
use modlie::uenv::{Character, EnvAlgebra, UenvError};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Cli, Command, Family};

pub struct RunReport {
    pub command: String,
    pub digest: String,
    pub files: Vec<String>,
    pub result: Value,
    pub diagnostics: Vec<Value>,
    pub exit_code: u8,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": {"files": self.files, "sha256": self.digest},
            "result": self.result,
            "diagnostics": self.diagnostics,
            "exit_code": self.exit_code,
        })
    }
}

/// An error with its exit code and a stable kind name.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: String,
    pub message: String,
    pub extra: Value,
}

impl Failure {
    fn new(code: u8, kind: &str, message: impl Into<String>) -> Self {
        Failure { code, kind: kind.into(), message: message.into(), extra: Value::Null }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"error": self.kind, "message": self.message});
        if let Value::Object(m) = &self.extra {
            for (k, x) in m {
                v[k] = x.clone();
            }
        }
        v
    }
}

fn kind_of(debug: &str) -> String {
    debug.split(['(', ' ', '{']).next().unwrap_or(debug).to_string()
}

fn pmap_failure(e: &PError) -> Failure {
    let code = if matches!(e, PError::NonTrivialCenter) { 3 } else { 1 };
    Failure::new(code, &kind_of(&format!("{e:?}")), e.to_string())
}

fn rep_failure(e: &RepError) -> Failure {
    match e {
        RepError::PMap(p) => pmap_failure(p),
        _ => Failure::new(1, &kind_of(&format!("{e:?}")), e.to_string()),
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = match &e {
            IoError::Lie(LieError::JacobiViolation(..)) => 1,
            IoError::Rep(RepError::NotHomomorphism(..) | RepError::NotScalar(_)) => 1,
            _ => 2,
        };
        let kind = match &e {
            IoError::Lie(l) => kind_of(&format!("{l:?}")),
            IoError::Rep(r) => kind_of(&format!("{r:?}")),
            _ => kind_of(&format!("{e:?}")),
        };
        Failure::new(code, &kind, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match &e {
            ClassifyError::NeedsExtension(d) => Failure {
                extra: json!({"field_degree": d}),
                ..Failure::new(1, "NeedsExtension", e.to_string())
            },
            ClassifyError::EvenCharacteristic => Failure::new(3, "EvenCharacteristic", e.to_string()),
            ClassifyError::CharacterLength { .. } => Failure::new(2, "CharacterLength", e.to_string()),
            ClassifyError::PMap(p) => pmap_failure(p),
            ClassifyError::Rep(r) => rep_failure(r),
            _ => Failure::new(1, &kind_of(&format!("{e:?}")), e.to_string()),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        rep_failure(&e)
    }
}

impl From<PError> for Failure {
    fn from(e: PError) -> Self {
        pmap_failure(&e)
    }
}

impl From<UenvError> for Failure {
    fn from(e: UenvError) -> Self {
        let code = if matches!(e, UenvError::Parse(_)) { 2 } else { 1 };
        Failure::new(code, &kind_of(&format!("{e:?}")), e.to_string())
    }
}

struct Inputs {
    files: Vec<String>,
    hasher: Sha256,
}

impl Inputs {
    fn new(cli: &Cli, command: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        hasher.update(format!("\0field_degree={:?}\0params={:?}\0", cli.field_degree, cli.params).as_bytes());
        Inputs { files: Vec::new(), hasher }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(2, "Unreadable", format!("cannot read {}: {e}", path.display())))?;
        self.files.push(path.display().to_string());
        self.hasher.update(text.len().to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn note(&mut self, s: &str) {
        self.hasher.update(s.as_bytes());
        self.hasher.update([0]);
    }
}

fn load(cli: &Cli, inputs: &mut Inputs, path: &Path) -> Result<LoadedAlgebra, Failure> {
    let text = inputs.read(path)?;
    let mut params = BTreeMap::new();
    for kv in &cli.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::new(2, "Schema", format!("--param {kv:?} is not NAME=VALUE")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(load_algebra(&text, &LoadOptions { field_degree: cli.field_degree, params })?)
}

/// The file's p-map after checking the axioms.
fn checked_pmap(la: &LoadedAlgebra) -> Result<PMapping, Failure> {
    let Some(pm) = &la.pmap else {
        return Err(Failure::new(1, "NoPMap", "the algebra file has no pmap; supply one or use an envelope fixture"));
    };
    if let Some(v) = pm.verify().violation {
        return Err(Failure::new(1, "PMapViolation", v.to_string()));
    }
    Ok(pm.clone())
}

fn characters(inputs: &mut Inputs, path: &Path, la: &LoadedAlgebra, labels: &[String]) -> Result<(Vec<Character>, bool), Failure> {
    let text = inputs.read(path)?;
    let sweep = text.trim_start().starts_with('[');
    Ok((parse_characters(&text, labels, &la.coeffs())?, sweep))
}

fn single(chis: Vec<Character>, sweep: bool) -> Result<Character, Failure> {
    match (sweep, chis.len()) {
        (false, 1) => Ok(chis.into_iter().next().expect("one")),
        _ => Err(Failure::new(2, "Schema", "this command takes a single character object")),
    }
}

pub fn run(cli: &Cli) -> RunReport {
    let name = match &cli.command {
        Command::Verify { .. } => "verify",
        Command::Restrictable { .. } => "restrictable",
        Command::Penv { .. } => "penv",
        Command::Jcd { .. } => "jcd",
        Command::Env { .. } => "env",
        Command::Induce { .. } => "induce",
        Command::Classify { .. } => "classify",
        Command::Oracle { .. } => "oracle",
    };
    let mut inputs = Inputs::new(cli, name);
    let mut diagnostics = Vec::new();
    let outcome = dispatch(cli, &mut inputs, &mut diagnostics);
    let (result, exit_code) = match outcome {
        Ok((v, code)) => (v, code),
        Err(f) => {
            diagnostics.push(f.to_json());
            (Value::Null, f.code)
        }
    };
    RunReport {
        command: name.into(),
        digest: hex::encode(inputs.hasher.finalize()),
        files: inputs.files,
        result,
        diagnostics,
        exit_code,
    }
}

type Outcome = Result<(Value, u8), Failure>;

fn dispatch(cli: &Cli, inputs: &mut Inputs, diagnostics: &mut Vec<Value>) -> Outcome {
    match &cli.command {
        Command::Verify { algebra } => verify(cli, inputs, algebra),
        Command::Restrictable { algebra } => {
            let la = load(cli, inputs, algebra)?;
            let r = is_restrictable(&la.alg);
            let witness = r.witness.map(|w| {
                la.alg.labels.iter().zip(&w).map(|(l, y)| (l.clone(), la.alg.format_element(y))).collect::<BTreeMap<_, _>>()
            });
            Ok((json!({"restrictable": r.restrictable, "witness": witness}), 0))
        }
        Command::Penv { algebra } => {
            let la = load(cli, inputs, algebra)?;
            let env = minimal_p_envelope(&la.alg)?;
            let result = json!({
                "dim": env.ambient.dim(),
                "adjoined": env.adjoined,
                "envelope": algebra_json(&env.ambient, Some(&env.pmap)),
                "embedding": matrix_json(&env.embedding),
            });
            Ok((result, 0))
        }
        Command::Jcd { algebra, element } => {
            let la = load(cli, inputs, algebra)?;
            inputs.note(element);
            let pm = checked_pmap(&la)?;
            let x = parse_element(&la.alg, &la.coeffs(), element)?;
            let jc = pm.jordan_chevalley(&x);
            let alg = &la.alg;
            let result = json!({
                "element": alg.format_element(&x),
                "class": format!("{:?}", pm.element_class(&x)),
                "semisimple": alg.format_element(&jc.semisimple),
                "nilpotent": alg.format_element(&jc.nilpotent),
            });
            Ok((result, 0))
        }
        Command::Env { algebra, character, dim, mul } => {
            let la = load(cli, inputs, algebra)?;
            let pm = checked_pmap(&la)?;
            let (chis, sweep) = characters(inputs, character, &la, &la.alg.labels)?;
            let chi = single(chis, sweep)?;
            let env = EnvAlgebra::new(&pm, &chi)?;
            let mut result = json!({"dim": env.dim(), "generators": la.alg.labels});
            if let Some(uv) = mul {
                for s in uv {
                    inputs.note(s);
                }
                let u = env.parse(&uv[0])?;
                let v = env.parse(&uv[1])?;
                result["product"] = Value::String(env.format(&env.mul(&u, &v)));
            }
            if !*dim && mul.is_none() {
                diagnostics.push(json!({"note": "neither --dim nor --mul given; reporting the dimension"}));
            }
            Ok((result, 0))
        }
        Command::Induce { algebra, character, request } => {
            let la = load(cli, inputs, algebra)?;
            let pm = checked_pmap(&la)?;
            let (chis, sweep) = characters(inputs, character, &la, &la.alg.labels)?;
            let chi = single(chis, sweep)?;
            let text = inputs.read(request)?;
            let (h, module) = parse_induce_request(&text, &pm, &la.coeffs())?;
            let m_dim = module.dim;
            let ind = induce(&pm, &chi, &InducedSpec { subalgebra: h.clone(), module })?;
            let alg = &la.alg;
            let codim = (alg.dim() - h.dim()) as u32;
            let expected = (alg.p() as usize).pow(codim) * m_dim;
            let result = json!({
                "dim": ind.rep.dim,
                "dim_law": ind.rep.dim == expected,
                "subalgebra": h.basis.iter().map(|v| alg.format_element(v)).collect::<Vec<_>>(),
                "transversal": ind.transversal.iter().map(|&i| alg.labels[i].clone()).collect::<Vec<_>>(),
                "irreducible": is_irreducible(&ind.rep).ok().map(|r| r.irreducible),
                "module": module_json(&ind.rep),
            });
            Ok((result, 0))
        }
        Command::Classify { algebra, character, family } => classify(cli, inputs, algebra, character, *family),
        Command::Oracle { algebra, character } => {
            let la = load(cli, inputs, algebra)?;
            let pm = checked_pmap(&la)?;
            let (chis, sweep) = characters(inputs, character, &la, &la.alg.labels)?;
            let chi = single(chis, sweep)?;
            let reps = oracle_irreducibles(&pm, &chi)?;
            let result = json!({
                "count": reps.len(),
                "dims": reps.iter().map(|r| r.dim).collect::<Vec<_>>(),
                "modules": reps.iter().map(module_json).collect::<Vec<_>>(),
            });
            Ok((result, 0))
        }
    }
}

fn verify(cli: &Cli, inputs: &mut Inputs, path: &Path) -> Outcome {
    let la = match load(cli, inputs, path) {
        Ok(la) => la,
        Err(f) if f.kind == "JacobiViolation" => {
            return Ok((json!({"jacobi": false, "violation": f.message, "restricted": null, "restrictable": null}), 1));
        }
        Err(f) => return Err(f),
    };
    let restrictable = is_restrictable(&la.alg).restrictable;
    let mut result = json!({"jacobi": true, "restrictable": restrictable, "dim": la.alg.dim()});
    let mut code = 0;
    match &la.pmap {
        None => result["restricted"] = Value::Null,
        Some(pm) => {
            let report = pm.verify();
            result["restricted"] = Value::Bool(report.ok());
            result["pairs_checked"] = json!({"basis": report.basis_pairs, "random": report.random_pairs});
            if let Some(v) = report.violation {
                result["violation"] = Value::String(v.to_string());
                code = 1;
            }
        }
    }
    Ok((result, code))
}

fn classify(cli: &Cli, inputs: &mut Inputs, algebra: &Path, character: &Path, family: Family) -> Outcome {
    let la = load(cli, inputs, algebra)?;
    let f = la.field.clone();
    let mismatch = |name: &str| Failure::new(2, "FamilyMismatch", format!("the algebra file does not describe {name}"));
    let mut labels = la.alg.labels.clone();
    let mut alpha = None;
    match family {
        Family::Dim2 if families::dim2(&f).0 != la.alg => return Err(mismatch("dim2")),
        Family::Sl2 if families::sl2(&f).0 != la.alg => return Err(mismatch("sl2")),
        Family::Dim4 if families::dim4(&f).0 != la.alg => return Err(mismatch("dim4")),
        Family::Dim3alpha => {
            let a = *la.params.get("alpha").ok_or_else(|| Failure::new(2, "Schema", "dim3alpha needs the parameter alpha"))?;
            if families::dim3alpha(&f, a)? != la.alg {
                return Err(mismatch("dim3alpha"));
            }
            if f.frobenius(a) != a {
                labels.push("t".into());
            }
            alpha = Some(a);
        }
        _ => {}
    }
    let pmap = if family == Family::Generic { Some(checked_pmap(&la)?) } else { None };
    let (chis, sweep) = characters(inputs, character, &la, &labels)?;
    let one = |chi: &Character| -> Result<Value, Failure> {
        let report = match family {
            Family::Dim2 => classify_dim2(&f, chi)?,
            Family::Sl2 => classify_sl2(&f, chi)?,
            Family::Dim4 => classify_dim4(&f, chi)?,
            Family::Dim3alpha => classify_dim3alpha(&f, alpha.expect("set above"), chi)?,
            Family::Generic => classify_generic(pmap.as_ref().expect("set above"), chi, None)?,
        };
        Ok(report_json(&report, &labels))
    };
    let results: Vec<Result<Value, Failure>> = if cli.jobs > 1 && chis.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
            .map_err(|e| Failure::new(1, "ThreadPool", e.to_string()))?;
        pool.install(|| chis.par_iter().map(one).collect())
    } else {
        chis.iter().map(one).collect()
    };
    if !sweep {
        let r = results.into_iter().next().expect("one character");
        return r.map(|v| (v, 0));
    }
    let mut code = 0;
    let items: Vec<Value> = results
        .into_iter()
        .map(|r| match r {
            Ok(v) => v,
            Err(e) => {
                code = code.max(e.code);
                e.to_json()
            }
        })
        .collect();
    Ok((json!({"sweep": items}), code))
}
