//! Certified Mordell–Weil rank verdicts for Jacobians of Berger curves
//! `f(x) - t*g(y) = 0` over the tower `Q̄(t^(1/p^r))`.
//!
//! The layers, bottom up: exact polynomial arithmetic ([`exact_poly`]),
//! factorization patterns over prime fields ([`modp_factor`]), Galois
//! group certificates ([`galois_cert`]), closed-form dimension and genus
//! formulas ([`jacobian_invariants`]), Morse tests and specialization scans
//! ([`morse_scan`]) and the verdict engine ([`rank_engine`]).

pub mod exact_poly;
pub mod galois_cert;
pub mod jacobian_invariants;
pub mod modp_factor;
pub mod morse_scan;
pub mod rank_engine;

pub use exact_poly::{parse_poly, ExactInt, ExactRat, ParseError, PolyError, UniPoly};
pub use galois_cert::{
    certify_galois, replay, GaloisCertificate, GaloisError, GaloisVerdict, DEFAULT_PRIME_BOUND,
};
pub use jacobian_invariants::{CurvePair, DecompositionTable, InvariantError, TowerLayer};
pub use modp_factor::{DegreePattern, ModpError, PrimePoly};
pub use morse_scan::{MorseReport, ScanResult};
pub use rank_engine::{
    audit_verdict, rank_table, rank_verdict, HypothesisRecord, RankError, RankKind, RankVerdict,
    Status,
};
