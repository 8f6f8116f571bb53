//! Subspace codes for random linear network coding.
//!
//! Information is encoded in the choice of a vector space: the transmitter
//! injects a basis for a subspace `V` of `F_q^N`, the network forwards random
//! linear combinations, and the receiver collects a spanning set for some
//! subspace `U`. This crate models that operator channel, the subspace metric
//! `d(U, V) = dim(U + V) - dim(U ∩ V)`, a Reed-Solomon-like family of
//! constant-dimension codes built from linearized message polynomials with a
//! list-1 interpolation decoder, and the exact and asymptotic packing,
//! covering, and Singleton bounds for codes in the Grassmannian — all checked
//! against brute-force oracles at desk scale.

pub mod bounds;
pub mod channel;
pub mod code;
pub mod error;
pub mod field;
pub mod linpoly;
pub mod subspace;

pub use channel::{
    apply_channel, correctability_check, erasure_operator, packet_channel, split_seed,
    ChannelConfig, ChannelOutcome, PacketModelConfig, TrialRecord, TRIAL_CSV_HEADER,
};
pub use code::{
    brute_force_md_decode, complementary_code, interpolate, min_distance, puncture, CodeParams,
    DecodeOutcome, Message, RsCode,
};
pub use error::{CodeError, Result};
pub use field::{FieldElement, FieldParams};
pub use linpoly::{subspace_polynomial, LinearizedPoly};
pub use subspace::{
    enumerate_grassmannian, random_subspace, Subspace, VectorFq, DEFAULT_ENUM_CAP,
};
