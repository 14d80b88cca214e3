//! Exact computations for the tempiric dual of real rank-one groups:
//! K-type windows, branching to `M`, principal-series and discrete-series
//! multiplicities, minimal K-types, and the multiplicity matrix of the map
//! `R(K) -> R(G)_tempiric` together with its verification suite.
//!
//! All arithmetic is exact (machine integers for labels and multiplicities,
//! big rationals for norms).

pub mod branching;
pub mod catalog;
pub mod cktheory;
pub mod diagram;
pub mod error;
pub mod rational;
pub mod tempered;
pub mod weights;

pub use catalog::{builtin, load_path, load_str, GroupDatum};
pub use error::{Error, Result};
pub use rational::{parse_rational, Rational};
pub use tempered::{PrincipalClass, TempiricRep};
pub use weights::{CompactGroup, FormalSum, KTypeLabel, Label, MTypeLabel, WeightVec};
