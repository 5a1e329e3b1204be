//! Modules over monoids, sheaves of modules on finite monoidal spaces, and
//! line bundles.

mod aset;
mod iso;
mod picard;
mod sheaf;

pub use aset::{all_actions, localize_module, zext_tensor_invariants, ASet, LocalizedModule};
pub use picard::{picard, trace_is_iso, LineBundle, LocallyFree, Picard, UnitGroup};
pub use sheaf::{Coherence, RingedSpace, SheafModule, SpaceMorphism};
