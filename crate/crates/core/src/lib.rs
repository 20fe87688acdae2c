//! Exact computations on the weighted projective line of type (2,2,n).

pub mod arq;
pub mod dot;
pub mod error;
pub mod graded;
pub mod homext;
pub mod io;
pub mod k0;
pub mod lgroup;
pub mod linalg;
pub mod meshcat;
pub mod missing;
pub mod tilting;
pub mod wpl;

pub use arq::{BundlePoint, OrbitId};
pub use error::{Error, Result};
pub use io::{FormJson, MissingReport, TiltingFile};
pub use k0::{K0Class, Slope};
pub use lgroup::{LElement, Weight};
pub use meshcat::MeshWindow;
pub use missing::{MissingPart, TorsionClass};
pub use tilting::{ClassifiedForm, MinusTag, PlusTag, TiltingCandidate};
pub use wpl::Wpl;
