//! Exact combinatorics and linear algebra for tangent spaces of the
//! trianguline variety at companion points.

pub mod artin;
pub mod error;
pub mod formula;
pub mod good_pairs;
pub mod linalg;
pub mod rational;
pub mod sample;
pub mod schubert;
pub mod verify;
pub mod weyl;

pub use artin::{ArtinMatrix, Elem, Refinement, TruncatedAlgebra};
pub use error::{Error, Result};
pub use formula::{CharacterParam, FormulaReport, HodgeTateWeights, LinkageOutcome};
pub use good_pairs::{CensusReport, GoodPairCertificate, GoodPairOutcome};
pub use rational::Q;
pub use schubert::FlagOverRing;
pub use weyl::{MultiPermutation, Permutation, Root, WeightVector};
