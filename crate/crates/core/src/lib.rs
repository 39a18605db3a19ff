//! Gabriel filters, divisibility and torsionfree classes, and finite-stage
//! silting and cosilting constructions over finite commutative rings and the
//! Euclidean domains `Z` and `F_p[x]`.

pub mod abelian;
pub mod catalogue;
pub mod closure;
pub mod correspondence;
pub mod cosilting;
pub mod duality;
pub mod error;
pub mod filter;
pub mod homological;
pub mod ideal;
pub mod module;
pub mod limits;
pub mod par;
pub mod report;
pub mod ring;
pub mod silting;
pub mod snf;

pub use error::{Error, ParseError, Result};
pub use limits::Limits;
pub use ring::{Element, Ring, RingDescriptor};
