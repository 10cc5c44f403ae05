//! Convex rings, inscribed balls, tube areas and convexity defects.

mod hull;
mod ring;
mod sweep;

pub use hull::{convex_hull, convexity_defect, polygon_area};
pub use ring::{
    inscribed_ball, ring_constant, tube_area, verify_ring_bound, ConvexRing, RingBallReport,
    RingBoundReport, TubeReport,
};
pub use sweep::{
    instance_seed, random_convex_polygon, random_ring, ring_sweep, summarize, write_jsonl,
    SweepRecord, SweepSummary,
};
