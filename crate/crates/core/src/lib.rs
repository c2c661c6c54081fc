//! Finite-model workbench for partial group actions on finite topological
//! spaces, their hyperspace lifts and their enveloping actions.

pub mod actions;
pub mod category;
pub mod dot;
pub mod envelope;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod harness;
pub mod hyperspace;
pub mod io;
pub mod point;
pub mod report;
pub mod topology;
pub mod tower;

pub use actions::{GlobalAction, Limits, PartialAction};
pub use category::{GMap, Sampling};
pub use envelope::EnvelopingSpace;
pub use hyperspace::{Hyperspace, Kind};
pub use error::{Error, Result};
pub use groups::FinGroup;
pub use point::Point;
pub use report::{CheckReport, Status};
pub use topology::{FinSpace, PointMap, PointSet};
