//! Spanner constructions over metrics and planar point sets.

mod cones;
mod greedy;
mod net_tree;

pub use cones::{theta_graph, yao_graph, ConePartition2D};
pub use greedy::greedy_spanner;
pub use net_tree::{net_tree_spanner, NetTreeSpanner};
