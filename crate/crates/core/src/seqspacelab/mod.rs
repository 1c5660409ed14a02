//! Finite sections of vector-valued sequence-space embeddings: operator
//! norms, nuclear norms and entropy-number bounds.

mod entropy;
mod nuclear;
mod ratefit;
mod search;
mod section;

pub use entropy::{
    entropy_bounds, entropy_lower, entropy_properties, entropy_upper, log_ball_volume, EntropyBoundReport,
    EntropyProperties, LowerMethod, MultiplicativityCheck, UpperMethod, K_CAP,
};
pub use nuclear::{nuclear_norm_oracle, nuclear_norm_tong, NuclearOracle, OracleCase};
pub use ratefit::{rate_fit, rate_fit_unchecked, RateFit, RatePoint};
pub use search::embedding_norm_search;
pub use section::{
    block_factors, embedding_norm_closed, finite_section, lp_norm, FiniteSection, Provenance, ENTROPY_CAP, NORM_CAP,
};
