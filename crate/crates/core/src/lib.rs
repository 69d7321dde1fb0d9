//! Exact symbolic computation for Hecke-algebra operator calculus on Laurent
//! polynomials: Yang-Baxter bases, two q-deformed Key families and their
//! transition matrices, Hall-Littlewood symmetric functions with a
//! straightening algorithm for arbitrary integer indices, and a q-deformed
//! scalar product realized both combinatorially and as a constant-term
//! functional.
//!
//! Everything is exact: coefficients live in the field of rational functions
//! in q with arbitrary-precision integer coefficients ([`qrat::QRat`]), and
//! polynomials are sparse Laurent polynomials in finitely many variables
//! ([`poly::LaurentPoly`]).

pub mod demazure;
pub mod hall;
pub mod hecke;
pub mod perm;
pub mod poly;
pub mod qkey;
pub mod qrat;
pub mod scalar;

pub use demazure::{OpError, OpFactor, OpKind, OpWord};
pub use hall::{
    hl_p, hl_q, max_partition_below, p_of, q_at_zero, straighten_q, HLExpansion, HallError,
    Partition,
};
pub use hecke::{HeckeElt, YbVariant};
pub use qkey::{
    expand_in_family, key_poly, specialize_q, transition_matrix, u_poly, uhat_poly,
    weights_of_degree, FamilyId, QKeyError,
};
pub use perm::{PermError, Permutation};
pub use poly::{Exponent, LaurentPoly, PolyError};
pub use qrat::{d_lambda, q_factorial, q_int, QRat, QRatError, ZPoly};
pub use scalar::{
    ct_oracle, ct_oracle_auto, scalar_0, scalar_monomials, scalar_q, verify_adjoint_ops,
    verify_cauchy, verify_duality, verify_monomial_duality, ScalarReport,
};
