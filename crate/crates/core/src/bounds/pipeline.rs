use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{classify, BoundsError, GammaBounds, RuleSet, Status, TargetValue};
use crate::exactalg::det;
use crate::knotio::{BandMoveCertificate, KnotRecord};
use crate::linkform::{
    definiteness_consistency, klein_discriminant, linking_form, mobius_obstruction_cyclic, mobius_obstruction_p2q,
    p2q_split, LinkError, LinkingForm, ObstructionVerdict, Test,
};
use crate::planar::{goeritz_with, Convention, GoeritzData, OuterChoice, PlanarError};

/// Which of `±G⁻¹` is taken as the linking form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    /// `+G⁻¹` for `G` built with the active convention, so the sign follows
    /// the signature calibration.
    #[default]
    Auto,
    /// `+G⁻¹` for `G` built with the raw incidence signs.
    FixedPlus,
    /// `-G⁻¹` for `G` built with the raw incidence signs.
    FixedMinus,
}

impl SignConvention {
    fn sign(self, conv: Convention) -> i8 {
        match self {
            SignConvention::Auto => 1,
            SignConvention::FixedPlus => conv.eta_sign,
            SignConvention::FixedMinus => -conv.eta_sign,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub convention: Convention,
    pub sign: SignConvention,
    pub rules: RuleSet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("diagram rejected: {0}")]
    Planar(#[from] PlanarError),
    #[error("linking form: {0}")]
    Link(#[from] LinkError),
    #[error("|det G| = {computed} but the table determinant is {table}")]
    Determinant { computed: String, table: u64 },
}

/// Diagram-derived data for one knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub goeritz: Option<GoeritzData>,
    pub form: Option<LinkingForm>,
    pub verdicts: Vec<ObstructionVerdict>,
}

/// Goeritz matrix, linking form and every linking-form verdict for a record.
/// Records without a diagram yield no verdicts.
pub fn analyze(rec: &KnotRecord, opts: &Options) -> Result<Analysis, AnalysisError> {
    let Some(pd) = &rec.pd else {
        return Ok(Analysis {
            goeritz: None,
            form: None,
            verdicts: Vec::new(),
        });
    };
    let gd = goeritz_with(pd, OuterChoice::Auto, opts.convention)?;
    let d = det(&gd.g).map_err(PlanarError::from)?;
    if d.abs().to_u64() != Some(rec.determinant) {
        return Err(AnalysisError::Determinant {
            computed: d.abs().to_string(),
            table: rec.determinant,
        });
    }
    let form = linking_form(&gd.g)?.with_sign(opts.sign.sign(opts.convention));
    let verdicts = verdicts(&form, rec);
    Ok(Analysis {
        goeritz: Some(gd),
        form: Some(form),
        verdicts,
    })
}

fn verdicts(f: &LinkingForm, rec: &KnotRecord) -> Vec<ObstructionVerdict> {
    let n = f.group().order();
    let p2q = match p2q_split(n) {
        Some((p, q)) => mobius_obstruction_p2q(f, p, q),
        None => ObstructionVerdict::inapplicable(Test::MobiusP2q, format!("{n} is not of the form p^2 q")),
    };
    let klein = match f.group().factors() {
        &[p, q] if p == q => klein_discriminant(f, p),
        _ => ObstructionVerdict::inapplicable(Test::KleinDiscriminant, format!("H1 = {} is not Z_p + Z_p", f.group())),
    };
    vec![
        mobius_obstruction_cyclic(f),
        p2q,
        klein,
        definiteness_consistency(f, rec.definiteness),
    ]
}

/// A certificate with its target genus pinned down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvedCertificate {
    pub cert: BandMoveCertificate,
    pub target: TargetValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unresolved {
    pub cert: BandMoveCertificate,
    pub why: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotResult {
    pub name: String,
    pub analysis: Analysis,
    pub certificates: Vec<ResolvedCertificate>,
    pub bounds: GammaBounds,
}

impl KnotResult {
    pub fn status(&self) -> Status {
        self.bounds.status()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub results: Vec<KnotResult>,
    pub unresolved: Vec<Unresolved>,
    /// Passes of the certificate fixed-point loop.
    pub rounds: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("{name}: {source}")]
    Analysis { name: String, source: AnalysisError },
    #[error("{name}: {source}")]
    Bounds { name: String, source: BoundsError },
    #[error("duplicate knot {0}")]
    Duplicate(String),
}

/// Splits certificates into those whose target genus is known and the rest.
///
/// A target is known when the certificate states it, when the target is a
/// slice record, or when `settled` holds a value for the target.
pub fn resolve_targets(
    certs: &[BandMoveCertificate],
    records: &HashMap<&str, &KnotRecord>,
    settled: &HashMap<String, u32>,
) -> (Vec<ResolvedCertificate>, Vec<Unresolved>) {
    let mut done = Vec::new();
    let mut open = Vec::new();
    for c in certs {
        if !records.contains_key(c.source.as_str()) {
            open.push(Unresolved {
                cert: c.clone(),
                why: format!("source {} is not in the dataset", c.source),
            });
            continue;
        }
        let target = match (c.target_gamma4, records.get(c.target.as_str())) {
            (Some(t), _) => Some(t.into()),
            (None, Some(r)) if r.slice => Some(TargetValue::Slice),
            (None, Some(_)) => settled.get(&c.target).copied().map(TargetValue::Gamma),
            (None, None) => None,
        };
        match target {
            Some(target) => done.push(ResolvedCertificate {
                cert: c.clone(),
                target,
            }),
            None => {
                let why = if records.contains_key(c.target.as_str()) {
                    format!("γ₄({}) is not determined", c.target)
                } else {
                    format!("target {} has no stated genus and is not in the dataset", c.target)
                };
                open.push(Unresolved { cert: c.clone(), why });
            }
        }
    }
    (done, open)
}

/// Classifies every record, resolving certificate targets against the run's
/// own results until nothing changes.
pub fn classify_all(
    records: &[KnotRecord],
    certs: &[BandMoveCertificate],
    opts: &Options,
) -> Result<Classification, PipelineError> {
    let mut by_name: HashMap<&str, &KnotRecord> = HashMap::new();
    for r in records {
        if by_name.insert(r.name.as_str(), r).is_some() {
            return Err(PipelineError::Duplicate(r.name.clone()));
        }
    }
    let analyses: Vec<Analysis> = records
        .iter()
        .map(|r| {
            analyze(r, opts).map_err(|source| PipelineError::Analysis {
                name: r.name.clone(),
                source,
            })
        })
        .collect::<Result<_, _>>()?;

    // values stay settled once determined, so the loop terminates
    let mut settled: HashMap<String, u32> = HashMap::new();
    let mut current: HashMap<String, GammaBounds> = HashMap::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let (resolved, unresolved) = resolve_targets(certs, &by_name, &settled);
        let mut per_source: HashMap<&str, Vec<ResolvedCertificate>> = HashMap::new();
        for rc in &resolved {
            per_source.entry(rc.cert.source.as_str()).or_default().push(rc.clone());
        }
        let mut next = HashMap::new();
        for (r, a) in records.iter().zip(&analyses) {
            let mine = per_source.get(r.name.as_str()).map_or(&[][..], Vec::as_slice);
            let b = classify(r, &a.verdicts, mine, opts.rules).map_err(|source| PipelineError::Bounds {
                name: r.name.clone(),
                source,
            })?;
            next.insert(r.name.clone(), b);
        }
        let before = settled.len();
        for (name, b) in &next {
            if let Some(v) = b.value() {
                settled.entry(name.clone()).or_insert(v);
            }
        }
        if next == current && settled.len() == before {
            let results = records
                .iter()
                .zip(analyses)
                .map(|(r, analysis)| KnotResult {
                    name: r.name.clone(),
                    analysis,
                    certificates: per_source.remove(r.name.as_str()).unwrap_or_default(),
                    bounds: current.remove(&r.name).expect("every record classified"),
                })
                .collect();
            return Ok(Classification {
                results,
                unresolved,
                rounds,
            });
        }
        current = next;
    }
}
