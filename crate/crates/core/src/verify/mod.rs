//! Structural checks on truncated realizations.

mod growth;
mod levi;
mod relations;
mod weights;

pub use growth::{gk_growth_degree, GrowthFit};
pub use levi::{
    action_type, branch_levi, central_character, finite_type_check, finite_type_check_label,
    highest_weight_vectors, ActionType, BranchSummand, FiniteTypeVerdict, FiniteTypeReport,
    HighestWeightSearch, LeviId, SummandStatus,
};
pub use relations::{verify_relations, RelationClass};
pub use weights::{weight_decomposition, weight_of, WeightSpace, WeightTable};
