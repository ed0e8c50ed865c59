//! Exact-shape 2-D convex geometry on the floating backend: polygons,
//! cones at vertices, rounded bodies, Minkowski combinations, nesting
//! margins and support-function distances.
//!
//! All types are immutable after construction and all operations are pure.

mod body;
mod polygon;
mod sector;
mod vec2;

mod ops;

pub use body::{minkowski_combination, Body, MergedFan, Piece, RayHit};
pub use ops::{aligned, angle_at, cones_at_vertex, hausdorff, nesting_margin, rounded_body};
pub use polygon::ConvexPolygon;
pub use sector::ConeSector;
pub use vec2::{Segment, Vec2};
