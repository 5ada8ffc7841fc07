//! Slow, independent reference checks. Only public types of `normpit-core` are used;
//! every algorithm here is a direct transcription of the definition it checks.

mod dense;
mod division;
mod integrality;
mod linear;

pub use dense::{brute_force_nonzero, dense_expand, eval_circuit, eval_poly, verify_hitting_set, DensePoly};
pub use division::{is_reduced_gb, lead, schoolbook_divide, spoly, Division};
pub use integrality::{integrality_witness_check, monic_relation};
pub use linear::{bounded_member, solve};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("dense expansion needs {0} coefficients, above the cap")]
    Cap(u128),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("dense expansion and grid evaluation disagree: dense says {dense}, grid says {grid}")]
    Disagreement { dense: bool, grid: bool },
    #[error(transparent)]
    Core(#[from] normpit_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
