//! Constructive side of the non-closedness arguments: avoider sequences,
//! the family `K` with its closure and fiber conditions, the `τ⁰` oracle, and
//! filter-base products.

pub mod avoider;
pub mod family;
pub mod filter;

pub use avoider::{
    build_avoider_sequence, verify_avoider, AvoiderOutcome, AvoiderSequence, CoefficientReading, ExhaustionReason,
    StepLog,
};
pub use family::{
    check_l0_conditions, default_threshold, gen_family_k, FamilyEntry, FamilyK, L0Report, Tau0Answer, TauZeroOracle,
};
pub use filter::{
    cofinite_blocks_base, filter_classify, filter_product, it1_witness_check, parse_scenario, principal_base,
    random_cofinite_base, shifted_product, t1_witness_check, FilterBase, FilterClass,
};
