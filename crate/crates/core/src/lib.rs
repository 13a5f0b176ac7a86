pub mod analytic;
pub mod arith;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod exterior;
pub mod groups;
pub mod hnp;
pub mod localdata;

pub use enumerate::{count, enumerate_extensions, GExtensionQ};
pub use error::{Error, Result};
pub use groups::{Character, FinAbGroup, GroupElement, Subgroup};
pub use hnp::{hasse_norm_test, HnpReport};
