//! Monte Carlo and exact evaluation of the blocking objective, plus the
//! monotonicity and submodularity checker.

mod estimate;
mod exact;
mod submodular;

pub use estimate::{estimate_sigma_minus, SigmaEstimate, Z95};
pub use exact::{exact_activation_probabilities, exact_expected_negatives, exact_sigma_minus};
pub use submodular::{
    check_monotone_submodular, SubmodularityReport, Violation, ViolationKind, MAX_CHECK_CANDIDATES, MAX_CHECK_EDGES,
    VIOLATION_TOLERANCE,
};
