//! Model constructors: free CDGAs, standard spaces, Chevalley-Eilenberg
//! complexes, projectivizations, and blow-up certificates.

mod blowup;
mod lie;
mod projective;
mod standard;

pub use lie::{
    chevalley_eilenberg, chevalley_eilenberg_unchecked, direct_sum, heisenberg_plus_line, iwasawa,
    iwasawa_data, iwasawa_factor, LieAlgebraData,
};
pub use blowup::{
    blowup_certificate, payload_digest, verify_certificate, BlowupCertificate, CertificatePayload, Check,
    Route, TripleEntry, VerdictRecord, VerifyReport, WitnessEntry, CERTIFICATE_FORMAT,
};
pub use projective::{projectivize, ChernData, IdealLift, LerayHirschRow, ProjectivizationModel};
pub use standard::{
    checked_model, cp, free_cdga, heisenberg, kodaira_thurston, kodaira_thurston_classes, point,
    torus,
};
pub(crate) use standard::differential_images;
