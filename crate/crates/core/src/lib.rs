//! Certifying decision procedure for the continuous Fréchet distance between
//! polygonal curves in the plane, plus the tooling around it: filters,
//! certificates and their checkers, a query structure over curve datasets,
//! and benchmark generators.

pub mod bench;
pub mod certificates;
pub mod complete;
pub mod curves;
pub mod decider;
pub mod filters;
pub mod freespace;
pub mod geometry;
pub mod query;

pub use complete::{complete_decide, ExploreOptions, RuleSet, Verdict};
pub use curves::{Curve, CurveError};
pub use decider::{compute_distance, decide, decide_with, frechet_distance, DecideConfig, Decision, Stage};
pub use freespace::ParamPair;
pub use geometry::Point;
