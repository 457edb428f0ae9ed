//! Unramified cohomology of finite groups, computed through group
//! cohomology with finite cyclic coefficients.

pub mod cochain;
pub mod engine;
pub mod error;
pub mod exactla;
pub mod groups;
pub mod residues;

pub use cochain::{CohClass, CohomologyGroup, StableCohomology};
pub use engine::{cache_key, CohomologyStore, Engine};
pub use error::{Error, Result};
pub use exactla::{AbHom, AbSubgroup, FinAbGroup, ModSubquotient};
pub use groups::{Family, FiniteGroup, GroupHom, ResiduePair, Subgroup};
