//! Angular lattice sums over the square lattice, evaluated through their
//! exponentially convergent Macdonald-function expansions, and the analyses
//! built on them: the combination `Δ₃`, its null contours, critical-line
//! zeros and zero statistics.

pub mod angsum;
pub mod contour;
pub mod delta3;
pub mod error;
pub mod specfun;
pub mod zeroscan;

pub use angsum::{BesselCache, SumSpec, SumValue, TruncationPolicy};
pub use contour::{ContourPolyline, FieldKind, GridSpec};
pub use delta3::{Delta3Value, PhaseState};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use specfun::QuadratureSpec;
pub use zeroscan::{Family, IntervalCount, SpacingHistogram, ZeroRecord};
