//! Nonlinear codes over finite commutative Frobenius rings, represented by
//! parity check systems (H|S).
//!
//! The supported rings are finite products Z_{t_1} x ... x Z_{t_k}. A code is
//! either given as a coset decomposition `C = U_j (d_j + D_C)` of a partial
//! kernel `D_C`, or as a parity check system whose rows generate `D_C^perp`
//! and whose columns are the syndromes of the coset representatives. This
//! crate converts between the two and answers membership, kernel, minimum
//! distance, decoding, Fourier coefficient and distance distribution queries
//! on either form.

pub mod distance;
pub mod enumerator;
pub mod error;
pub mod fourier;
pub mod howell;
pub mod oracle;
pub mod pcs;
pub mod ring;
pub mod submodule;

pub use error::{Error, Result};
pub use ring::{enumerate_vectors, Budget, Matrix, RingElem, RingSpec, RingVec};
pub use submodule::{solve_left, solve_right, syzygies, ColumnSolver, LinearSolver, Submodule};
pub use pcs::{code_to_pcs, pcs_to_code, validate_pcs, CodePresentation, ParityCheckSystem};
pub use distance::{decode, distance_witnesses, min_distance, sdiff, weight_shell, DecodeResult, MinDistance, SyndromeSet};
pub use fourier::{
    character_value, fourier_coeff_coset, fourier_coeff_pcs, generating_character, poisson_sum, row_combination, s_image,
    Character, ExponentSum, RowCombination,
};
pub use enumerator::{
    distance_distribution, macwilliams_transform, pcs_enumerator_poly, weight_distribution, weight_enumerator_from_distance,
    weight_enumerator_from_dual, weight_enumerator_linear, EnumeratorPoly,
};
