//! Integral cohomology of cyclic groups, the spaces built from them, and the
//! bookkeeping needed to check statements about cyclic actions on surfaces.

pub mod abgroup;
pub mod cyclic_cohomology;
pub mod equichern;
pub mod error;
pub mod intlinalg;
pub mod spaces;
pub mod surface_verifier;

pub use abgroup::FinAbGroup;
pub use cyclic_cohomology::GModule;
pub use error::{Error, Result};
pub use intlinalg::{IntMatrix, SnfCertificate};
pub use spaces::{AbMap, GradedGroup};
