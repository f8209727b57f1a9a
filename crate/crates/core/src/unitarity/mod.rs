//! Hilbert structure, adjointness, Jørgensen–Moore norm towers and the
//! checks that tie the infinitesimal action to the group.

mod adjoint;
mod global;
mod profile;
pub mod series;
mod sphere;
mod tower;

pub use adjoint::{adjoint_defect, inner_product, AdjointReport, PairDefect, UnitarityVerdict};
pub use global::{global_vs_infinitesimal, GlobalComparison, SubgroupId, COCYCLE_MIN};
pub use profile::{boundedness_profile, BoundednessProfile, ProfilePoint};
pub use sphere::{closed_form_norm_sq, sphere_gram, sphere_inner, SphereEstimate, SphereGeometry, SphereMethod, MIN_SAMPLES};
pub use tower::{jm_norm, level0_e0_bound, perturbation_bound, GeneratorSet, LadderRow, NormTower, PerturbationLadder};
