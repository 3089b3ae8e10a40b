//! Canonical bases of level-l Fock spaces under the level-rank duality between
//! U_q(ŝl_n) and U_p(ŝl_l).

pub mod actions;
pub mod canonical;
pub mod cli;
pub mod compare;
pub mod cones;
pub mod crystal;
pub mod indexation;
pub mod laurent;
pub mod partitions;
pub mod wedge;
pub mod weights;
