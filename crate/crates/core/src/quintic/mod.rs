//! Genus-4 pointed odd spin curves from plane quintics with two nodes and a
//! bitangent line.

pub mod conic;
pub mod datum;
pub mod frame;
pub mod sampler;
pub mod system;
pub mod verify;

pub use conic::{ConicPoint, ConicSearch};
pub use datum::{verify_doc, DatumDoc, SpinCurveDatum};
pub use frame::{FrameConfig, Point};
pub use sampler::{sample_spin4, sample_spin4_rational, RationalQuartic, RationalSample, SampleOptions, SampleOutcome, Sampled};
pub use system::{nodal_quartics, quintic_system, rho, squaring_map, veronese_hyperplane_conic, QuinticSystem};
pub use verify::VerifyReport;
