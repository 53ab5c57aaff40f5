//! File formats, bundled examples, reports and the self test behind the
//! `normcalc` binary. The mathematics lives in `normcalc-core`.

pub mod bundled;
pub mod commands;
pub mod diagram;
pub mod error;
pub mod format;
pub mod selftest;
pub mod svg;

pub use error::CliError;

/// Environment variable overriding the domain search bound.
pub const SEARCH_BOUND_VAR: &str = "NORMCALC_SEARCH_BOUND";

/// The bound from `NORMCALC_SEARCH_BOUND`, or the default.
pub fn search_bound_from_env() -> Result<i64, CliError> {
    match std::env::var(SEARCH_BOUND_VAR) {
        Ok(v) => match v.trim().parse::<i64>() {
            Ok(b) if b >= 0 => Ok(b),
            _ => Err(CliError::Usage(format!("{SEARCH_BOUND_VAR}={v} is not a non-negative integer"))),
        },
        Err(_) => Ok(normcalc_core::heegaard::DEFAULT_SEARCH_BOUND),
    }
}
