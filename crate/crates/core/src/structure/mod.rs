//! Structure decompositions, biadjacency layouts, girth and induced cycles.

pub mod biadjacency;
pub mod cycles;
pub mod g35;
pub mod pmm;
pub mod shapes;

pub use biadjacency::{biadjacency, is_path_matrix, BiadjacencyLayout, Block, LayoutRule};
pub use cycles::{
    canonical_cycle, four_cycle_through, girth, girth_with_witness, induced_cycle_census,
    induced_cycle_census_with_budget, induced_cycles_of_length, DEFAULT_CENSUS_BUDGET,
};
pub use g35::{decompose_g35, is_break, strip_profile, G35Decomposition, ProfileTarget, Strip, StripKind, INITIAL_PATH};
pub use pmm::{decompose_g3, decompose_g5, decompose_pmm, residue_pair_path, G3Decomposition, G5Decomposition, PrimeDecomposition};
pub use shapes::{classify, Shape};
