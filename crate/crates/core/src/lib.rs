//! Exact Chern-number calculus for compact complex 3-folds.
//!
//! Surfaces are recorded by `(χ, τ)` and a few flags; 3-folds by their
//! Chern numbers `(c₁³, c₁c₂, c₃)`. The constructions here (twistor spaces,
//! `P(O ⊕ K⁻¹)`, pulled-back K3 families, point blow-ups and almost-complex
//! structures on CP₃) produce pairs of complex structures on one 6-manifold
//! with different `c₁³` and `c₁c₂`.
//!
//! Everything is generic over an exact integer [`Scalar`]; the aliases below
//! fix it to [`BigInt`], `i64` or `i128`.

pub mod checks;
pub mod constructions;
pub mod error;
pub mod invariants;
pub mod kahler;
pub mod recipe;
pub mod ring;
pub mod scalar;

pub use constructions::{
    corollary_family, cp3_almost_complex, k3_pullback_derivation, k3_pullback_family,
    max_admissible_n_tilde, proj_canonical_threefold, realize_targets, standard_surface,
    twistor_threefold, Admission, AsdPolicy, K3FamilyDerivation, RealizationPlan,
};
pub use error::{Error, ErrorKind, Result};
pub use invariants::{
    blow_up, chern_relation, connect_sum_cp2bar, mk_surface, todd_genus, CharNumbers, Lineage,
    Surface4, ThreeFold, TriState,
};
pub use recipe::{eval_recipe, parse_recipe, Recipe, Report};
pub use kahler::{leading_coefficient, non_kahler_threshold, todd_of_family, CupFormFamily};
pub use scalar::Scalar;

pub use num_bigint::BigInt;
pub use num_rational::Ratio;

/// Arbitrary-precision rational.
pub type BigRational = Ratio<BigInt>;

pub type ExactSurface = Surface4<BigInt>;
pub type ExactCharNumbers = CharNumbers<BigInt>;
pub type ExactThreeFold = ThreeFold<BigInt>;
pub type ExactRealizationPlan = RealizationPlan<BigInt>;
pub type ExactCupFormFamily = CupFormFamily<BigInt>;
pub type ExactGradedRing = ring::GradedRing<BigInt>;

pub type Surface64 = Surface4<i64>;
pub type CharNumbers64 = CharNumbers<i64>;
pub type ThreeFold64 = ThreeFold<i64>;
pub type RealizationPlan64 = RealizationPlan<i64>;
pub type CupFormFamily64 = CupFormFamily<i64>;

pub type Surface128 = Surface4<i128>;
pub type ThreeFold128 = ThreeFold<i128>;
