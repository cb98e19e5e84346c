//! Invariant table and band-move certificate ingestion.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pd::{parse_pd, PdCode, PdError};

/// Closed integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl IntRange {
    pub fn new(lo: u32, hi: u32) -> Option<Self> {
        (lo <= hi).then_some(IntRange { lo, hi })
    }

    pub fn exact(v: u32) -> Self {
        IntRange { lo: v, hi: v }
    }

    pub fn value(&self) -> Option<u32> {
        (self.lo == self.hi).then_some(self.lo)
    }

    pub fn intersect(&self, other: &IntRange) -> Option<IntRange> {
        IntRange::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "[{},{}]", self.lo, self.hi),
        }
    }
}

/// Sign of a definite intersection form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Definiteness {
    Positive,
    Negative,
}

impl Definiteness {
    pub fn sign(self) -> i8 {
        match self {
            Definiteness::Positive => 1,
            Definiteness::Negative => -1,
        }
    }

    pub fn from_sign(s: i8) -> Self {
        if s > 0 {
            Definiteness::Positive
        } else {
            Definiteness::Negative
        }
    }
}

/// One row of the invariant table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    pub crossings: u32,
    pub pd: Option<PdCode>,
    pub signature: i64,
    pub arf: u8,
    pub g4: u32,
    pub u: IntRange,
    pub us: Option<IntRange>,
    pub c4: Option<IntRange>,
    pub crosscap_hi: Option<u32>,
    pub slice: bool,
    pub determinant: u64,
    pub definiteness: Option<Definiteness>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("signature {0} is odd")]
    OddSignature(i64),
    #[error("Arf invariant must be 0 or 1, got {0}")]
    Arf(u8),
    #[error("determinant {0} must be odd and positive")]
    Determinant(u64),
    #[error("slice knot with g4 = {0}")]
    SliceGenus(u32),
    #[error("ladder g4 <= c4 <= us <= u violated: {0}")]
    Ladder(String),
    #[error("pd has {pd} crossings but crossing number is {crossings}")]
    PdCrossings { pd: usize, crossings: u32 },
}

impl KnotRecord {
    /// Checks parity, range and ladder invariants.
    pub fn validate(&self) -> Result<(), RecordError> {
        if self.signature % 2 != 0 {
            return Err(RecordError::OddSignature(self.signature));
        }
        if self.arf > 1 {
            return Err(RecordError::Arf(self.arf));
        }
        if self.determinant.is_multiple_of(2) {
            return Err(RecordError::Determinant(self.determinant));
        }
        if self.slice && self.g4 != 0 {
            return Err(RecordError::SliceGenus(self.g4));
        }
        if let Some(pd) = &self.pd {
            // a table diagram may be non-minimal, but never smaller than n(K)
            if (pd.len() as u32) < self.crossings {
                return Err(RecordError::PdCrossings {
                    pd: pd.len(),
                    crossings: self.crossings,
                });
            }
        }
        let ladder = |msg: String| Err(RecordError::Ladder(msg));
        if self.g4 > self.u.hi {
            return ladder(format!("g4 = {} > u <= {}", self.g4, self.u.hi));
        }
        if let Some(us) = self.us {
            if self.g4 > us.hi || us.lo > self.u.hi {
                return ladder(format!("g4 = {}, us = {us}, u = {}", self.g4, self.u));
            }
        }
        if let Some(c4) = self.c4 {
            let upper = self.us.map_or(self.u.hi, |us| us.hi.min(self.u.hi));
            if self.g4 > c4.hi || c4.lo > upper {
                return ladder(format!("g4 = {}, c4 = {c4}, u = {}", self.g4, self.u));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing mandatory column '{0}'")]
    MissingColumn(&'static str),
    #[error("row {row}: column '{column}': {msg}")]
    Field {
        row: usize,
        column: &'static str,
        msg: String,
    },
    #[error("row {row}: pd: {source}")]
    Pd { row: usize, source: PdError },
    #[error("row {row}: {source}")]
    Record { row: usize, source: RecordError },
}

const KNOT_COLUMNS: [&str; 16] = [
    "name",
    "crossings",
    "pd",
    "signature",
    "arf",
    "g4",
    "u_lo",
    "u_hi",
    "us_lo",
    "us_hi",
    "c4_lo",
    "c4_hi",
    "crosscap_hi",
    "slice",
    "determinant",
    "definiteness",
];

/// Row accessor keyed by column name. Empty cells read as absent.
struct Row<'a> {
    index: &'a HashMap<&'static str, usize>,
    rec: &'a csv::StringRecord,
    row: usize,
}

impl Row<'_> {
    fn opt(&self, col: &'static str) -> Option<&str> {
        let s = self.rec.get(self.index[col]).unwrap_or("").trim();
        (!s.is_empty()).then_some(s)
    }

    fn err(&self, column: &'static str, msg: impl Into<String>) -> DatasetError {
        DatasetError::Field {
            row: self.row,
            column,
            msg: msg.into(),
        }
    }

    fn req(&self, col: &'static str) -> Result<&str, DatasetError> {
        self.opt(col).ok_or_else(|| self.err(col, "required value missing"))
    }

    fn int<T: std::str::FromStr>(&self, col: &'static str) -> Result<Option<T>, DatasetError> {
        self.opt(col)
            .map(|s| {
                s.parse::<T>()
                    .map_err(|_| self.err(col, format!("not an integer: '{s}'")))
            })
            .transpose()
    }

    fn req_int<T: std::str::FromStr>(&self, col: &'static str) -> Result<T, DatasetError> {
        self.int(col)?.ok_or_else(|| self.err(col, "required value missing"))
    }

    fn range(&self, lo: &'static str, hi: &'static str) -> Result<Option<IntRange>, DatasetError> {
        match (self.int::<u32>(lo)?, self.int::<u32>(hi)?) {
            (None, None) => Ok(None),
            (Some(l), Some(h)) => IntRange::new(l, h)
                .map(Some)
                .ok_or_else(|| self.err(lo, format!("{l} > {h}"))),
            (Some(v), None) | (None, Some(v)) => Ok(Some(IntRange::exact(v))),
        }
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "y" => Some(true),
        "false" | "no" | "0" | "n" => Some(false),
        _ => None,
    }
}

fn parse_definiteness(s: &str) -> Option<Definiteness> {
    match s.to_ascii_lowercase().as_str() {
        "+1" | "1" | "positive" | "+" => Some(Definiteness::Positive),
        "-1" | "negative" | "-" => Some(Definiteness::Negative),
        _ => None,
    }
}

fn column_index(
    headers: &csv::StringRecord,
    columns: &[&'static str],
) -> Result<HashMap<&'static str, usize>, DatasetError> {
    let mut index = HashMap::new();
    for &col in columns {
        let pos = headers
            .iter()
            .position(|h| h.trim() == col)
            .ok_or(DatasetError::MissingColumn(col))?;
        index.insert(col, pos);
    }
    Ok(index)
}

/// Reads a knot table from any CSV source.
pub fn read_dataset<R: Read>(reader: R) -> Result<Vec<KnotRecord>, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let index = column_index(rdr.headers()?, &KNOT_COLUMNS)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = Row {
            index: &index,
            rec: &rec,
            row: i + 1,
        };
        let pd = row
            .opt("pd")
            .map(|s| parse_pd(s).map_err(|source| DatasetError::Pd { row: row.row, source }))
            .transpose()?;
        let slice = row.req("slice")?;
        let slice = parse_bool(slice).ok_or_else(|| row.err("slice", format!("not a boolean: '{slice}'")))?;
        let definiteness = row
            .opt("definiteness")
            .map(|s| {
                parse_definiteness(s).ok_or_else(|| row.err("definiteness", format!("expected +1 or -1, got '{s}'")))
            })
            .transpose()?;
        let u = row
            .range("u_lo", "u_hi")?
            .ok_or_else(|| row.err("u_lo", "required value missing"))?;
        let record = KnotRecord {
            name: row.req("name")?.to_string(),
            crossings: row.req_int("crossings")?,
            pd,
            signature: row.req_int("signature")?,
            arf: row.req_int("arf")?,
            g4: row.req_int("g4")?,
            u,
            us: row.range("us_lo", "us_hi")?,
            c4: row.range("c4_lo", "c4_hi")?,
            crosscap_hi: row.int("crosscap_hi")?,
            slice,
            determinant: row.req_int("determinant")?,
            definiteness,
        };
        record
            .validate()
            .map_err(|source| DatasetError::Record { row: row.row, source })?;
        out.push(record);
    }
    Ok(out)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, DatasetError> {
    read_dataset(std::fs::File::open(path)?)
}

/// Twist of the band attached in a non-oriented band move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Twist {
    Left,
    Zero,
    Right,
}

impl TryFrom<i8> for Twist {
    type Error = String;
    fn try_from(h: i8) -> Result<Self, String> {
        match h {
            -1 => Ok(Twist::Left),
            0 => Ok(Twist::Zero),
            1 => Ok(Twist::Right),
            _ => Err(format!("band twist must be -1, 0 or 1, got {h}")),
        }
    }
}

impl From<Twist> for i8 {
    fn from(t: Twist) -> i8 {
        match t {
            Twist::Left => -1,
            Twist::Zero => 0,
            Twist::Right => 1,
        }
    }
}

/// What a certificate asserts about its target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetGenus {
    /// The target bounds a Möbius band.
    One,
    /// The target is smoothly slice.
    Slice,
}

/// `source --h--> target`: a single non-oriented band move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandMoveCertificate {
    pub source: String,
    pub h: Twist,
    pub target: String,
    /// `None` leaves the target to be resolved from the same classification run.
    pub target_gamma4: Option<TargetGenus>,
    pub figure_ref: String,
}

const CERT_COLUMNS: [&str; 5] = ["source", "h", "target", "target_gamma4", "figure_ref"];

pub fn read_certificates<R: Read>(reader: R) -> Result<Vec<BandMoveCertificate>, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let index = column_index(rdr.headers()?, &CERT_COLUMNS)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = Row {
            index: &index,
            rec: &rec,
            row: i + 1,
        };
        let h: i8 = row.req_int("h")?;
        let h = Twist::try_from(h).map_err(|msg| row.err("h", msg))?;
        let target_gamma4 = match row.opt("target_gamma4") {
            None => None,
            Some("1") => Some(TargetGenus::One),
            Some(s) if s.eq_ignore_ascii_case("slice") => Some(TargetGenus::Slice),
            Some(s) => return Err(row.err("target_gamma4", format!("expected 1 or 'slice', got '{s}'"))),
        };
        out.push(BandMoveCertificate {
            source: row.req("source")?.to_string(),
            h,
            target: row.req("target")?.to_string(),
            target_gamma4,
            figure_ref: row.opt("figure_ref").unwrap_or("").to_string(),
        });
    }
    Ok(out)
}

pub fn load_certificates(path: impl AsRef<Path>) -> Result<Vec<BandMoveCertificate>, DatasetError> {
    read_certificates(std::fs::File::open(path)?)
}
