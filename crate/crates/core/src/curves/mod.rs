//! Closed curves, curvature profiles, and vertex/inflection counting.

mod curve;
mod fourier;
mod profile;
mod random;
mod vertices;

pub use curve::{ClosedCurve, CurvatureSample, PathFn, MIN_SPEED};
pub(crate) use curve::check_speed;
pub use fourier::TrigInterpolant;
pub use profile::{curvature_profile, curvature_profile_with, CurvatureProfile, Differentiation, DEFAULT_SAMPLES};
pub use random::{random_antipodal_sphere_curve, random_simple_closed_curve};
pub use vertices::{
    count_inflections, count_vertices, count_vertices_adaptive, Inflection, InflectionReport, Vertex,
    VertexKind, VertexReport, DEFAULT_TOL,
};
