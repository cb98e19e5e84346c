//! JSON report and CSV summary of a classification run.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{
    classify_all, Classification, GammaBounds, Options, PipelineError, Reason, ResolvedCertificate, Status, Unresolved,
};
use crate::knotio::{BandMoveCertificate, KnotRecord};
use crate::linkform::{ObstructionVerdict, QmodZ};
use crate::planar::{check_convention, Calibration};

/// Everything a run depends on; echoed so a report can be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub options: Options,
    pub records: Vec<KnotRecord>,
    pub certificates: Vec<BandMoveCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub calibration: Calibration,
    pub fixed_point_rounds: usize,
    pub dataset_sha256: String,
    pub certificates_sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: String,
    pub determinant: u64,
    /// Invariant factors of `H₁` of the double branched cover.
    pub h1: Option<Vec<u64>>,
    /// `λ` on the invariant-factor generators.
    pub linking_form: Option<Vec<Vec<QmodZ>>>,
    pub verdicts: Vec<ObstructionVerdict>,
    pub certificates: Vec<ResolvedCertificate>,
    pub lower: u32,
    pub upper: Option<u32>,
    pub gamma_bar_upper: Option<u32>,
    pub status: Status,
    pub reasons: Vec<Reason>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    /// Determined knots by value of γ₄.
    pub determined: BTreeMap<u32, usize>,
    pub undetermined: usize,
    pub inconsistent: usize,
}

impl Summary {
    pub fn determined_at(&self, v: u32) -> usize {
        self.determined.get(&v).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub metadata: Metadata,
    pub summary: Summary,
    pub entries: Vec<Entry>,
    pub unresolved: Vec<Unresolved>,
    pub inputs: Inputs,
}

/// Orders names like `11n9 < 11n10 < 12a1` by comparing digit runs numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, x), (db, y)) in ca.iter().zip(&cb) {
        let ord = match (da, db) {
            (true, true) => {
                let (x, y) = (x.trim_start_matches('0'), y.trim_start_matches('0'));
                x.len().cmp(&y.len()).then_with(|| x.cmp(y))
            }
            _ => x.cmp(y),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

fn sha256_json<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("inputs serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Inputs {
    /// Sorts records by name and certificates by source so that hashes and
    /// output do not depend on input row order.
    pub fn canonical(mut self) -> Self {
        self.records.sort_by(|a, b| natural_cmp(&a.name, &b.name));
        self.certificates.sort_by(|a, b| {
            natural_cmp(&a.source, &b.source)
                .then_with(|| natural_cmp(&a.target, &b.target))
                .then_with(|| i8::from(a.h).cmp(&i8::from(b.h)))
                .then_with(|| a.figure_ref.cmp(&b.figure_ref))
        });
        self
    }
}

impl Report {
    pub fn build(inputs: Inputs) -> Result<Report, PipelineError> {
        let inputs = inputs.canonical();
        let Classification {
            results,
            unresolved,
            rounds,
        } = classify_all(&inputs.records, &inputs.certificates, &inputs.options)?;
        let mut summary = Summary {
            total: results.len(),
            ..Summary::default()
        };
        let mut entries = Vec::with_capacity(results.len());
        for (rec, r) in inputs.records.iter().zip(results) {
            let status = r.status();
            match status {
                Status::Determined => *summary.determined.entry(r.bounds.lower).or_insert(0) += 1,
                Status::Undetermined => summary.undetermined += 1,
                Status::Inconsistent => summary.inconsistent += 1,
            }
            let form = r.analysis.form.as_ref();
            let GammaBounds {
                lower,
                upper,
                gamma_bar_upper,
                reasons,
            } = r.bounds;
            entries.push(Entry {
                name: r.name,
                determinant: rec.determinant,
                h1: form.map(|f| f.group().factors().to_vec()),
                linking_form: form.map(|f| f.values().to_vec()),
                verdicts: r.analysis.verdicts,
                certificates: r.certificates,
                lower,
                upper,
                gamma_bar_upper,
                status,
                reasons,
            });
        }
        let metadata = Metadata {
            tool: "knotgenus",
            version: env!("CARGO_PKG_VERSION"),
            calibration: check_convention(&inputs.records, inputs.options.convention),
            fixed_point_rounds: rounds,
            dataset_sha256: sha256_json(&inputs.records),
            certificates_sha256: sha256_json(&inputs.certificates),
        };
        Ok(Report {
            metadata,
            summary,
            entries,
            unresolved,
            inputs,
        })
    }

    /// Rebuilds a report from the inputs echoed in its JSON form.
    pub fn replay(json: &str) -> Result<Report, ReplayError> {
        #[derive(Deserialize)]
        struct Echo {
            inputs: Inputs,
        }
        let echo: Echo = serde_json::from_str(json)?;
        Ok(Report::build(echo.inputs)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn inconsistent(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Inconsistent)
    }

    /// One row per knot: name, H₁, bounds, status and the rules applied.
    pub fn summary_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(["name", "h1", "lower", "upper", "status", "rules"])
            .expect("in-memory write");
        for e in &self.entries {
            let h1 =
                e.h1.as_ref()
                    .map(|f| f.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("+"))
                    .unwrap_or_default();
            let rules: Vec<&str> = e.reasons.iter().map(|r| r.rule).collect();
            let status = match e.status {
                Status::Determined => "determined",
                Status::Undetermined => "undetermined",
                Status::Inconsistent => "inconsistent",
            };
            w.write_record([
                e.name.clone(),
                h1,
                e.lower.to_string(),
                e.upper.map_or_else(|| "unknown".to_string(), |u| u.to_string()),
                status.to_string(),
                rules.join(";"),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error("report is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}
