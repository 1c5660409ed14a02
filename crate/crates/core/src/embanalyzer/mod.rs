//! Compactness, nuclearity and entropy analysis of embeddings between
//! generalised Besov and Triebel–Lizorkin spaces.

mod criteria;
mod en_a;
mod entropy;
mod exponents;
mod membership;
mod problem;
mod report;
mod verdict;

pub use criteria::{
    compactness, criterion_sequence, f_space_compactness, f_space_nuclearity, nuclearity, nuclearity_any, Criterion,
    CriterionKind, CITE_COMPACT, CITE_F_COMPACT, CITE_F_NUCLEAR, CITE_NUCLEAR,
};
pub use en_a::{en_a, EnA};
pub use entropy::{
    entropy_rate, EnBranch, RateFormula, Residual, Validity, CITE_EDMUNDS_NETRUSOV, CITE_LOG_LIMITING,
    CITE_NON_LIMITING, CITE_SV_LIMITING,
};
pub use exponents::{compact_not_nuclear_band, delta, dual_star, tong, tong_recip};
pub use membership::{ellr_membership, MEMBERSHIP_CITATION};
pub use problem::{EmbeddingProblem, SpaceScale};
pub use report::{analyze, AnalysisKind, Report};
pub use verdict::{Evidence, Status, Target, Verdict};
