pub mod finite;
pub use finite::{FiniteModule, Quotient, Submodule};
pub mod hom;
pub use hom::{hom_set, is_isomorphic, ModuleMap};
pub mod pid;
pub use pid::PidModule;
pub mod presented;
pub use presented::{Presentation, PresentedModule};
pub mod torsion;
pub use torsion::{is_divisible, is_torsionfree, torsion_part, TorsionPart};
pub mod dual;
pub use dual::{character_dual, CharacterModule};
pub mod universe;
pub use universe::{build_universe, ModuleUniverse, UniversePolicy};
