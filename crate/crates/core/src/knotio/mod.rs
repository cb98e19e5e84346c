//! Knot notations and tabular inputs.

mod pd;
mod records;

pub use pd::{parse_pd, PdCode, PdError};
pub use records::{
    load_certificates, load_dataset, read_certificates, read_dataset, BandMoveCertificate, DatasetError, Definiteness,
    IntRange, KnotRecord, RecordError, TargetGenus, Twist,
};
