use std::path::PathBuf;

use normcalc_core::alexander::AlexanderError;
use normcalc_core::cabling::CableError;
use normcalc_core::heegaard::HeegaardError;
use normcalc_core::links::PdError;
use normcalc_core::norms::NormError;
use normcalc_core::polytope::PolytopeError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{origin}: at `{field}`: {message}")]
    Schema {
        origin: String,
        field: String,
        message: String,
    },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    /// 1 for usage, file and schema problems, 2 when the input is well
    /// formed but the computation rejects it.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Schema { .. } => "schema",
            CliError::Domain(_) => "domain",
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_from!(AlexanderError, CableError, HeegaardError, NormError, PolytopeError);

/// Malformed PD JSON is a schema error; a well-formed code that does not
/// describe a diagram is a domain error.
pub fn pd_error(origin: &str, e: PdError) -> CliError {
    let schema = |field: String, message: String| CliError::Schema {
        origin: origin.to_string(),
        field,
        message,
    };
    match e {
        PdError::Syntax(m) => schema("$".into(), m),
        PdError::Arity { index, len } => schema(format!("[{index}]"), format!("expected 4 entries, got {len}")),
        PdError::NonPositiveLabel { index, label } => {
            schema(format!("[{index}]"), format!("label {label} is not positive"))
        }
        other => CliError::Domain(format!("{origin}: {other}")),
    }
}
