//! Maximal output p-norms of completely positive maps.
//!
//! The crate computes `ν_p(Φ) = sup_ρ ‖Φ(ρ)‖_p`, the induced norms `‖Φ‖_{q→p}`,
//! multiplicativity ratios `ν_p(Φ⊗Ω) / ν_p(Φ)ν_p(Ω)`, and the structural
//! conditions under which `ν_2` is known to be multiplicative. Channels are
//! stored as Kraus sets; see [`channel`] for the representation conventions.

pub mod channel;
pub mod conditions;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod norms;
pub mod qubit;
pub mod random;
pub mod zoo;

pub use channel::{kraus_from_choi, Channel, ChannelJson, ChoiMatrix, SuperopMatrix};
pub use conditions::{
    check_postr, choi_entrywise_nonneg, condition_matrix, recognize_form, search_basis, BasisSearch,
    ConditionMatrix, FormParams, PostrCheck, SearchConfig,
};
pub use error::{Error, Result};
pub use experiment::{bell_value, sweep, MultRow};
pub use linalg::{
    c64, schatten_norm, ComplexMatrix, ComplexVector, DensityMatrix, HermitianMatrix, PureState,
    RealMatrix, C64,
};
pub use norms::{
    bell_obstruction, mult_ratio, norm_2_to_2_exact, norm_q_to_p, nu_p, singular_basis, Domain, MultResult,
    NormResult, OptimizerConfig, SingularBasis,
};
pub use qubit::{BlochDecomposition, QubitMapParams};
pub use zoo::ZooSpec;
