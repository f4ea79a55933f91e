//! Constructive searches for the structures that keep the infection alive:
//! heavy-tailed degrees, half-lines of stars, and the good-box hierarchy.

mod boxes;
mod star_chain;
mod tail;

pub use boxes::{
    build_box_hierarchy, classify_good_boxes, good_box_fraction, snake_order, BoxClassification, BoxHierarchy,
    BoxParams, Layer,
};
pub use star_chain::{find_star_chain, star_region, StarChainParams, StarChainResult, StarRecord, StarRegion};
pub use tail::{ccdf_points, degree_tail_fit, degree_tail_fit_slice, MIN_TAIL_VERTICES};
