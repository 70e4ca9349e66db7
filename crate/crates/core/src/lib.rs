//! Symbolic calculus for Cremona transformations of plane curves.
//!
//! The crate works on combinatorial curve data (degree, components,
//! singularity multiplicity sequences) together with a classified
//! descriptor of the fundamental group of the complement. Each
//! construction replays a blow-up, a schedule of elementary
//! transformations between Hirzebruch surfaces and a blow-down, and
//! produces the transformed datum, whose group is a central extension of
//! the old one by a finite cyclic group.
//!
//! - [`fpgroup`]: free-group words, finite presentations, Smith normal form
//! - [`extensions`]: group descriptors, central extensions, property flags
//! - [`singularities`]: multiplicity sequences and self-intersection drops
//! - [`curves`]: curve data and seed families
//! - [`constructions`]: the four constructions and the self-intersection audit
//! - [`meridians`]: Hirzebruch-surface replay of meridian words
//! - [`zariski`]: Zariski-pair lifting and family enumeration
//! - [`document`]: JSON documents used by the command line front end

pub mod constructions;
pub mod curves;
pub mod document;
pub mod error;
pub mod extensions;
pub mod fpgroup;
pub mod meridians;
pub mod singularities;
pub mod zariski;

mod intser;

pub use constructions::{AuditReport, ConstructionSpec};
pub use curves::{CurveDatum, FamilyTag};
pub use error::{Error, Result};
pub use extensions::{GroupDescriptor, PropertyFlags, SplitVerdict, Tri};
pub use fpgroup::{AbelianInvariants, IntMatrix, Presentation, Word};
pub use meridians::MeridianState;
pub use singularities::{SingularityMultiset, SingularityType};
pub use zariski::ZariskiPairRecord;
