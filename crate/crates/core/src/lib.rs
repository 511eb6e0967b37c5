//! Spanning bipartite block designs: construction from (r, λ)-designs and
//! ordered designs, exact verification, spectral and A-optimality analysis,
//! Monte Carlo checks of the least-squares estimator, and mask export.

pub mod analysis;
pub mod compose;
pub mod design;
pub mod error;
pub mod estimator;
pub mod field;
pub mod io;
pub mod masks;
pub mod od;
pub mod params;
pub mod rational;
pub mod rl;

pub use analysis::{
    a_optimality, check_sbbd, classify_blocks, generalized_inverse, information_matrix, spectrum, Condition,
    InformationMatrix, OptimalityReport, SbbdCheck, SpectralSummary, Violation, Witness,
};
pub use compose::{compose, cyclic_shifts, permute_columns, permute_extension, ComposedDesign};
pub use design::{blocks_to_matrix, matrix_to_blocks, DesignMatrix, IntMatrix, SbBlock, SbBlockFile};
pub use error::{Error, Result};
pub use estimator::{estimate, random_effects, simulate, EffectVector, SimulationReport};
pub use field::{gf, FiniteField};
pub use masks::{export_masks, MaskSchedule};
pub use od::{construct_od1, verify_od, OrderedDesign};
pub use params::SbbdParameters;
pub use rational::Rational;
pub use rl::{catalog_by_id, catalog_lookup, verify_rl_design, BlockDesign, BlockDesignFile, CATALOG};
