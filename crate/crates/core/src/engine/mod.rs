//! The certification pipeline: per-fiber certificates, scans, the
//! specialization check on pencils and multiquadratic rank growth.

pub mod billing;
pub mod certify;
pub mod neron;
pub mod scan;

pub use billing::{billing_build, reverify_billing, BillingCertificate, BillingWitness};
pub use certify::{
    certify_fiber, gram_with_escalation, CertifiedSet, Status, WitnessCertificate, CSV_HEADER,
};
pub use neron::{neron_check, NeronCheckReport};
pub use scan::{scan, ScanReport, ScanStats};
