//! Normalized bar cochains with trivial coefficients and the operations on
//! their cohomology.

mod chart;
mod cohomology;
mod integral;
mod ops;
mod stable;

pub use chart::{chart_cost, faces, Chart, Expansion};
pub use cohomology::{coboundary_cost, coboundary_matrix, Cochain, CohClass, CohomologyGroup};
pub use integral::integral_cohomology;
pub use ops::{bockstein, cup, pullback, right_coset_reps, transfer, transfer_with_reps};
pub use stable::StableCohomology;

#[cfg(test)]
mod tests;
