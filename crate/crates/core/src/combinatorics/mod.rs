//! Exact enumeration of rooted alternating plane trees and of the index
//! pairs that contribute to the moment computation.

mod egf;
mod pairs;
mod tree;

pub use egf::egf_partial_sum;
pub use pairs::{
    classify_index_pair, count_delta_hat, count_delta_hat_with_budget, delta_hat_by_label_set, pair_to_tree,
    traversal_profile, tree_to_pair, DeltaHatCount, IndexPair, PairClass, TraversalProfile, DEFAULT_BUDGET,
};
pub use tree::{
    alternating_trees, count_alternating_trees, plane_tree_shapes, visit_alternating_trees, PlaneTree, MAX_TREE_K,
};
