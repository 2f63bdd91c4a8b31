//! Numerical semigroups, Kunz coordinates, and minimal decomposition into
//! m-irreducible numerical semigroups.
//!
//! A numerical semigroup is a subset of the non-negative integers that is
//! closed under addition, contains zero, and has finite complement. Every
//! semigroup of multiplicity `m` (smallest nonzero element) is encoded here
//! by its Kunz coordinates: the integer vector `x` of length `m - 1` with
//! `x_i = (w_i - i) / m`, where `w_i` is the least element of the semigroup
//! congruent with `i` modulo `m`. Under this encoding, membership, genus,
//! Frobenius number, gaps, special gaps and intersections all become cheap
//! vector arithmetic, and the semigroups of multiplicity `m` are exactly the
//! lattice points of an explicit rational polytope.
//!
//! On top of the encoding, the crate provides:
//!
//! * [`semigroup`] — exact semigroup arithmetic (Apéry sets, genus,
//!   Frobenius, gaps, special gaps, irreducibility, intersection);
//! * [`model`] — builders for the integer programs whose solutions are the
//!   m-irreducible undercoordinates used by the decomposition pipelines;
//! * [`solver`] — a small exact branch-and-bound solver for bounded integer
//!   linear programs, with complete enumeration of optimal solutions;
//! * [`decompose`] — the decomposition pipelines (exact, heuristic, compact
//!   single-model, and a brute-force oracle) plus verification;
//! * [`oracle`] — independent brute-force reference implementations used by
//!   the test suites.

pub mod decompose;
pub mod model;
pub mod oracle;
pub mod semigroup;
pub mod solver;

pub use decompose::{
    decompose_compact, decompose_exact, decompose_heuristic, decompose_oracle, verify,
    DecomposeError, Decomposition, Method, PartCertificate, VerifyReport,
};
pub use model::{
    compact_model, coverage_heuristic_model, genus_m_model, genus_m_part,
    irreducible_offsets_model, per_gap_model, set_cover_model, to_lp_format, IntegerProgram,
    LinearConstraint, Model, ModelError, ModelKind, ModelMeta, Relation, Sense, VarKind,
};
pub use semigroup::{
    intersect, is_kunz_vector, AperySet, KunzCoordinates, NumericalSemigroup, SemigroupError,
};
pub use solver::{
    enumerate_optima, solve, solve_lex_max, SolveLimits, SolveOutcome, SolveStats, SolveStatus,
    SolverError,
};
