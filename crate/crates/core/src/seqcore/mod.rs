//! Admissibility certificates, Boyd indices, equivalence, standardization
//! and parameter-function conversions.

mod admissible;
mod boyd;
mod edmunds;
mod equivalence;
mod standardize;

pub use admissible::{certify_admissible, AdmissibilityCertificate};
pub use boyd::{boyd_bracket_numeric, boyd_indices, is_almost_strongly_increasing, BoydIndices, Decision};
pub use edmunds::{from_edmunds_netrusov, EdmundsNetrusov, OMEGA_WINDOW};
pub use equivalence::{equivalent, Equivalence};
pub use standardize::{default_kappa0, standardize, Standardized, STANDARDIZE_PREFIX};
