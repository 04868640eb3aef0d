//! Relation harvesting, exact rank computation, dimension bounds and
//! integer relation detection.

pub mod basis;
pub mod dims;
pub mod echelon;
pub mod harvest;
pub mod pslq;
pub mod store;

pub use basis::{basis_check, BasisFamily, BasisReport};
pub use dims::{conjectured_ammv, conjectured_family, rank_and_dims, DimReport, FamilyDim};
pub use echelon::Echelon;
pub use harvest::{duality_relation, harvest, harvest_into, Harvest, Source};
pub use pslq::pslq;
pub use store::{threshold, RelationStore};
