//! Library side of the `convex-order` command: instance families, exact
//! threshold search, CSV sweeps and theorem-agreement diagnostics.

pub mod agree;
pub mod check;
pub mod error;
pub mod expr;
pub mod family;
pub mod scan;
pub mod threshold;

pub use error::{CliError, Result};
