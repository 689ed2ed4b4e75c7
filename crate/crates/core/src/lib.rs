//! Numerical toolkit for de Branges spaces in which multiplication by the
//! independent variable is not densely defined.
//!
//! A space is given by a pair of real entire functions `(s0, s_half)` with
//! Hermite-Biehler function `e = -s_half - i s0`. The canonical selfadjoint
//! extensions `S_beta` have spectra at the zeros of
//! `s_beta = sin(beta) s_half + cos(beta) s0`.

pub mod entire;
pub mod error;
pub mod extensions;
pub mod models;
pub mod quadrature;
pub mod space;
pub mod spectra;
pub mod zerofree;

pub use entire::{validate_hb, Builtin, CanonicalProduct, EntireFunction, HermiteBiehlerReport, RecurrencePoly, C};
pub use error::{DbError, Result};
pub use extensions::{
    apply_s, apply_s_beta, check_lemma_inner, check_lemma_orthogonality, function_of_s_apply, matrix_model,
    rank_one_extension, relation_pair_s0, resolvent_s0, verify_generating, verify_rank_one, MatrixModel, Multiplier,
    BETA_MIN,
};
pub use models::{catalog, from_jacobi, from_zero_data, oracle_eigensystem, JacobiData, Provenance, ZeroData};
pub use space::{AssociatedPair, DbSpace, Dimension, Numerics, SampledFunction};
pub use spectra::{find_spectrum, SpectrumData};
pub use zerofree::{
    canonical_product, gauge_check, theorem43_consistency, uniqueness_check, zero_free_membership, Verdict,
    ZeroFreeCandidate,
};
