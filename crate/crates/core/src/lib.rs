//! Loop space decompositions as executable rewrites.
//!
//! Manifold descriptors are turned into [`SpaceExpr`] values by the
//! decomposition theorems in [`decompose`], normalized into products of
//! loops on spheres by [`normalize`], and checked against independent
//! oracles: Witt counts for the Hilton–Milnor expansion, replayed Serre
//! spectral sequences in [`ss_oracle`], and free graded Lie algebra ranks
//! in [`homotopy`].
//!
//! Arithmetic is exact throughout. The series and linear-algebra code is
//! generic over the coefficient ring; the aliases below fix the choices the
//! rest of the crate uses.

pub mod decompose;
pub mod error;
pub mod expr;
pub mod hilton;
pub mod homotopy;
pub mod json;
pub mod normalize;
pub mod series;
pub mod ss_oracle;
pub mod verify;

pub use decompose::{
    decompose, decompose_bundle, decompose_config, decompose_conn_sum, decompose_four_manifold,
    decompose_general, decompose_wall, loop_equivalent, ConnSumSpec, FourManifoldSpec,
    ManifoldSpec, PDSpec, WallSpec,
};
pub use error::{Error, Result};
pub use expr::{SpaceExpr, SphereWedge};
pub use hilton::{hilton_milnor, lyndon_multiplicities, witt_counts, FactorList, WeightedAlphabet};
pub use homotopy::{free_lie_ranks, rational_ranks, RankTable, Subject};
pub use normalize::{
    factor_series, half_smash_split, james_split, normal_form, smash_desuspendables,
};
pub use series::{Coefficient, TruncatedSeries};

/// Exact integer power series used for every Poincaré series.
pub type Series = TruncatedSeries<num_bigint::BigInt>;

/// Exact rational scalars for spectral-sequence linear algebra.
pub type Rational = num_rational::BigRational;

/// Exact nonnegative counts (multiplicities, ranks).
pub type Count = num_bigint::BigUint;

/// Default truncation degree.
pub const DEFAULT_CAP: usize = 30;
