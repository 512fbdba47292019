//! Convex-body quantities: cells in projections, cube fitting, volume
//! ratios over coordinate subspaces, `L_p`-ball measures, coordinate
//! diameters, and the claim verifiers built on them.

mod cells;
mod config;
mod cube;
mod diameter;
mod lp_ball;
mod measure;
mod verify;
mod volume_ratio;

pub use cells::*;
pub use config::ConstantsConfig;
pub use cube::*;
pub use diameter::*;
pub use lp_ball::*;
pub use measure::*;
pub use verify::*;
pub use volume_ratio::*;
