//! Fully leafed induced subtrees: the leaf function and exact search.

mod classes;
mod io;
mod leaffn;
mod search;
mod subtree;

pub use classes::{enumerate_flis, ClassKey, FlisClass};
pub use leaffn::{is_saturated, leaf_function_formula, overline_leaf_function};
pub use search::{brute_force_leaf_table, search_max_leaves, Budget, LeafRecord};
pub use subtree::{leaf_count, InducedSubtree};

