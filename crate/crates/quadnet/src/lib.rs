//! quadnet: functions as integral combinations of parametrized dictionary
//! units, finite network approximants synthesized by quadrature, and
//! certified norm inequalities (ambient norm <= variation bound * unit
//! bound <= L^1 weight norm * essential sup) on concrete case studies.
//!
//! The `examples/` directory carries one runnable study per capability;
//! the `quadnet` binary exposes the same studies as subcommands emitting
//! CSV/JSON reports.


pub mod bessel_gamma;
pub mod cli;
pub mod dictionaries;
pub mod error;
pub mod numerics;
pub mod representation;
pub mod variation_bv;

pub use error::{Error, Result};
