//! Non-monochromatic and conflict-free colorings of connected objects on
//! one-dimensional network spaces.

pub mod bounds;
pub mod chain;
pub mod error;
pub mod generators;
pub mod instance;
pub mod object;
pub mod planar_balls;
pub mod planarity;
pub mod rational;
pub mod run;
pub mod space;
pub mod tree_balls;
pub mod tree_trees;
pub mod validator;

pub use error::{Error, Result};
pub use object::{Coloring, Interval, NetObject, ObjectId, SubtreeRegion};
pub use rational::{q, Rational};
pub use space::{
    assign_balls, ball_extent, clip_ball_to_subspace, coverage, Ball, BallAssignment, Edge, EdgeId,
    NetworkSpace, NodeId, PathLine, PointOnSpace, Region, SpaceKind, Span, tree_geodesic,
};
