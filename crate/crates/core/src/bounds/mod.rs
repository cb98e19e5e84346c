//! Lower and upper bounds on γ₄ with the rules that produced them.

mod pipeline;

pub use pipeline::{
    analyze, classify_all, resolve_targets, Analysis, AnalysisError, Classification, KnotResult, Options,
    PipelineError, ResolvedCertificate, SignConvention, Unresolved,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knotio::{BandMoveCertificate, IntRange, KnotRecord, TargetGenus};
use crate::linkform::{ObstructionVerdict, Test, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("signature {0} is odd")]
    OddSignature(i64),
    #[error("{name}: clasp number range is empty (g4 = {g4}, u <= {u_hi})")]
    EmptyClasp { name: String, g4: u32, u_hi: u32 },
    #[error("certificate from {from} applied to knot {knot}")]
    WrongSource { from: String, knot: String },
}

/// One applied rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub rule: &'static str,
    pub citation: &'static str,
    pub detail: String,
}

/// `lower <= γ₄ <= upper`; `upper = None` means no finite bound is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaBounds {
    pub lower: u32,
    pub upper: Option<u32>,
    /// Upper bound on `Γ₄ = min(2·g₄, γ₄)`.
    pub gamma_bar_upper: Option<u32>,
    pub reasons: Vec<Reason>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Determined,
    Undetermined,
    Inconsistent,
}

impl GammaBounds {
    pub fn unbounded() -> Self {
        GammaBounds {
            lower: 1,
            upper: None,
            gamma_bar_upper: None,
            reasons: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        match self.upper {
            Some(u) if u < self.lower => Status::Inconsistent,
            Some(u) if u == self.lower => Status::Determined,
            _ => Status::Undetermined,
        }
    }

    /// The value of γ₄ when determined.
    pub fn value(&self) -> Option<u32> {
        (self.status() == Status::Determined).then_some(self.lower)
    }

    pub fn is_consistent(&self) -> bool {
        self.status() != Status::Inconsistent
    }

    pub fn raise_lower(&mut self, to: u32, rule: &'static str, citation: &'static str, detail: String) {
        if to > self.lower {
            self.lower = to;
            self.reasons.push(Reason { rule, citation, detail });
        }
    }

    pub fn lower_upper(&mut self, to: u32, rule: &'static str, citation: &'static str, detail: String) {
        if self.upper.is_none_or(|u| to < u) {
            self.upper = Some(to);
            self.reasons.push(Reason { rule, citation, detail });
        }
    }

    fn lower_bar(&mut self, to: u32) {
        if self.gamma_bar_upper.is_none_or(|u| to < u) {
            self.gamma_bar_upper = Some(to);
        }
    }
}

pub mod cite {
    pub const SIG_ARF: &str = "σ(K) + 4·Arf(K) ≡ 4 (mod 8) ⇒ γ₄(K) ≥ 2";
    pub const MOBIUS_CYCLIC: &str =
        "K bounds a Möbius band, H₁ = ℤ_n, n with odd prime exponents ⇒ some generator a has λ(a,a) = ±1/n";
    pub const MOBIUS_P2Q: &str =
        "K bounds a Möbius band, H₁ = ℤ_{p²q} ⇒ some generator a has λ(a,a) = ±1/p²q, or λ on the ℤ_q summand is ±1/q";
    pub const DEFINITENESS: &str =
        "K bounds a Möbius band F ⇒ D_F(B⁴) is definite and its form restricts to the linking form on ∂";
    pub const KLEIN: &str = "K bounds a punctured Klein bottle, H₁ = ℤ_p ⊕ ℤ_p ⇒ disc(λ) = ±1 in F_p*/(F_p*)²";
    pub const CLASP: &str = "γ₄ ≤ c₄ for even c₄ ≠ 2, else c₄ + 1; Γ₄ ≤ 2⌈c₄/2⌉";
    pub const CLASP_EQUAL: &str = "g₄ = c₄ ≥ 1 ⇒ Γ₄ = γ₄";
    pub const CROSSING: &str = "γ₄(K) ≤ ⌊n(K)/2⌋";
    pub const GENUS: &str = "γ₄(K) ≤ 2·g₄(K) + 1";
    pub const CROSSCAP: &str = "γ₄(K) ≤ c(K)";
    pub const SLICE: &str = "slice K bounds a disk, hence a Möbius band ⇒ γ₄(K) = 1";
    pub const BAND: &str = "K → K' by a non-oriented band move ⇒ γ₄(K) ≤ γ₄(K') + 1";
    pub const BAND_SLICE: &str = "K → K' slice by a non-oriented band move ⇒ γ₄(K) = 1";
}

/// `σ + 4·Arf ≡ 4 (mod 8)`.
pub fn sig_arf_obstruction(sigma: i64, arf: u8) -> Result<bool, BoundsError> {
    if sigma % 2 != 0 {
        return Err(BoundsError::OddSignature(sigma));
    }
    Ok((sigma + 4 * i64::from(arf)).rem_euclid(8) == 4)
}

/// The tightest range for `c₄` from `g₄ <= c₄ <= u_s <= u` and any ingested range.
pub fn clasp_number(rec: &KnotRecord) -> Result<IntRange, BoundsError> {
    let hi = rec.us.map_or(rec.u.hi, |us| us.hi.min(rec.u.hi));
    let empty = || BoundsError::EmptyClasp {
        name: rec.name.clone(),
        g4: rec.g4,
        u_hi: hi,
    };
    let ladder = IntRange::new(rec.g4, hi).ok_or_else(empty)?;
    match rec.c4 {
        Some(c4) => c4.intersect(&ladder).ok_or_else(empty),
        None => Ok(ladder),
    }
}

/// `(γ₄ upper, Γ₄ upper)` from an exact clasp number.
pub fn upper_from_clasp(c4: u32, g4: u32) -> (u32, u32) {
    let bar = if c4.is_multiple_of(2) { c4 } else { c4 + 1 };
    let gamma = if c4.is_multiple_of(2) && c4 != 2 { c4 } else { c4 + 1 };
    if g4 == c4 && c4 >= 1 {
        (gamma.min(bar), bar)
    } else {
        (gamma, bar)
    }
}

/// Bounds valid for every `c₄` in the range.
fn upper_from_clasp_range(c4: IntRange, g4: u32) -> (u32, u32) {
    (c4.lo..=c4.hi)
        .map(|c| upper_from_clasp(c, g4))
        .fold((0, 0), |(a, b), (x, y)| (a.max(x), b.max(y)))
}

/// `min(⌊n/2⌋, 2g₄ + 1, c(K))`, or 1 for slice knots.
pub fn upper_misc(rec: &KnotRecord) -> u32 {
    if rec.slice {
        return 1;
    }
    let mut u = (rec.crossings / 2).min(2 * rec.g4 + 1);
    if let Some(c) = rec.crosscap_hi {
        u = u.min(c);
    }
    u.max(1)
}

fn apply_misc(b: &mut GammaBounds, rec: &KnotRecord) {
    if rec.slice {
        b.lower_upper(1, "slice", cite::SLICE, format!("{} is slice", rec.name));
        return;
    }
    let mut cands = vec![
        (
            rec.crossings / 2,
            "crossing-number",
            cite::CROSSING,
            format!("n = {}", rec.crossings),
        ),
        (2 * rec.g4 + 1, "genus", cite::GENUS, format!("g4 = {}", rec.g4)),
    ];
    if let Some(c) = rec.crosscap_hi {
        cands.push((c, "crosscap", cite::CROSSCAP, format!("c(K) <= {c}")));
    }
    cands.sort_by_key(|c| c.0);
    let (to, rule, cit, detail) = cands.swap_remove(0);
    if to >= 1 {
        b.lower_upper(to, rule, cit, detail);
    }
}

/// How a certificate's target was resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "gamma4")]
pub enum TargetValue {
    Slice,
    Gamma(u32),
}

impl From<TargetGenus> for TargetValue {
    fn from(t: TargetGenus) -> Self {
        match t {
            TargetGenus::One => TargetValue::Gamma(1),
            TargetGenus::Slice => TargetValue::Slice,
        }
    }
}

/// `upper <- min(upper, γ₄(target) + 1)`; a slice target forces `upper = 1`.
pub fn apply_certificate(mut b: GammaBounds, cert: &BandMoveCertificate, target: TargetValue) -> GammaBounds {
    let arrow = format!(
        "{} --{}--> {} ({})",
        cert.source,
        i8::from(cert.h),
        cert.target,
        cert.figure_ref
    );
    match target {
        TargetValue::Slice => b.lower_upper(1, "band-move", cite::BAND_SLICE, format!("{arrow}, target slice")),
        TargetValue::Gamma(g) => b.lower_upper(g + 1, "band-move", cite::BAND, format!("{arrow}, target γ₄ = {g}")),
    }
    b
}

/// Which linking-form verdicts feed the lower bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSet {
    pub klein: bool,
}

/// Combines every rule into an interval for γ₄.
pub fn classify(
    rec: &KnotRecord,
    verdicts: &[ObstructionVerdict],
    certs: &[ResolvedCertificate],
    rules: RuleSet,
) -> Result<GammaBounds, BoundsError> {
    let mut b = GammaBounds::unbounded();

    if rec.slice {
        b.lower_upper(1, "slice", cite::SLICE, format!("{} is slice", rec.name));
        b.lower_bar(0);
        return Ok(b);
    }
    if sig_arf_obstruction(rec.signature, rec.arf)? {
        b.raise_lower(
            2,
            "sig-arf",
            cite::SIG_ARF,
            format!("σ = {}, Arf = {}", rec.signature, rec.arf),
        );
    }
    for v in verdicts.iter().filter(|v| v.result == Verdict::Obstructed) {
        let cit = match v.test {
            Test::MobiusCyclic => cite::MOBIUS_CYCLIC,
            Test::MobiusP2q => cite::MOBIUS_P2Q,
            Test::Definiteness => cite::DEFINITENESS,
            Test::KleinDiscriminant => continue,
        };
        b.raise_lower(2, v.test.id(), cit, v.detail.clone());
    }

    apply_misc(&mut b, rec);
    let c4 = clasp_number(rec)?;
    let (gamma, bar) = upper_from_clasp_range(c4, rec.g4);
    let cit = if rec.g4 == c4.lo && c4.lo == c4.hi && c4.lo >= 1 {
        cite::CLASP_EQUAL
    } else {
        cite::CLASP
    };
    b.lower_upper(gamma, "clasp", cit, format!("c4 = {c4}, g4 = {}", rec.g4));
    b.lower_bar(bar);
    b.lower_bar(2 * rec.g4);

    for rc in certs {
        if rc.cert.source != rec.name {
            return Err(BoundsError::WrongSource {
                from: rc.cert.source.clone(),
                knot: rec.name.clone(),
            });
        }
        b = apply_certificate(b, &rc.cert, rc.target);
    }

    // a punctured Klein bottle bounds b₁ = 2 surfaces only
    if rules.klein && b.lower == 2 {
        if let Some(v) = verdicts
            .iter()
            .find(|v| v.test == Test::KleinDiscriminant && v.is_obstructed())
        {
            b.raise_lower(3, v.test.id(), cite::KLEIN, v.detail.clone());
        }
    }
    if let Some(u) = b.upper {
        b.lower_bar(u);
    }
    Ok(b)
}
