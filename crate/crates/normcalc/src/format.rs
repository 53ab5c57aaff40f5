//! Input parsing and JSON rendering.
//!
//! Half-integers are always written as exact strings such as `"3/2"`.

use std::path::Path;

use normcalc_core::laurent::default_variable_names;
use normcalc_core::links::parse_pd;
use normcalc_core::{Exponent, Half, LatticePolytope, LinkDiagram, MultivariateLaurent};
use serde_json::{json, Value};

use crate::bundled;
use crate::error::{pd_error, CliError};

/// A PD code together with where it came from.
pub struct LoadedLink {
    pub name: String,
    pub diagram: LinkDiagram,
}

/// Accepts an inline PD code (`[[1,4,2,5],...]`), a file path, or the name
/// of a bundled example. A missing path whose stem names a bundled link
/// falls back to the bundled copy, so `examples/9a42.json` always works.
pub fn load_pd(arg: &str) -> Result<LoadedLink, CliError> {
    let trimmed = arg.trim();
    if trimmed.starts_with('[') {
        let diagram = parse_pd(trimmed).map_err(|e| pd_error("inline PD code", e))?;
        return Ok(LoadedLink {
            name: "inline".into(),
            diagram,
        });
    }
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let diagram = parse_pd(&text).map_err(|e| pd_error(arg, e))?;
        return Ok(LoadedLink {
            name: bundled::stem(arg).to_string(),
            diagram,
        });
    }
    match bundled::link(bundled::stem(arg)) {
        Some(b) => Ok(LoadedLink {
            name: b.name.to_string(),
            diagram: parse_pd(b.pd).map_err(|e| pd_error(b.name, e))?,
        }),
        None => Err(CliError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled example"),
        }),
    }
}

/// Reads a file, or the bundled text when the file is missing.
pub fn read_text_or_bundled(arg: &str, bundled_text: Option<&'static str>) -> Result<String, CliError> {
    let path = Path::new(arg);
    match std::fs::read_to_string(path) {
        Ok(t) => Ok(t),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => bundled_text.map(str::to_string).ok_or(CliError::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        Err(source) => Err(CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
    }
}

pub fn parse_int_list(flag: &str, s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--{flag}: `{t}` is not an integer")))
        })
        .collect()
}

pub fn parse_half_list(flag: &str, s: &str) -> Result<Vec<Half>, CliError> {
    s.split(',')
        .map(|t| t.parse::<Half>().map_err(|e| CliError::Usage(format!("--{flag}: {e}"))))
        .collect()
}

/// `0,1;1,0` style matrix.
pub fn parse_matrix(flag: &str, s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    s.split(';').map(|row| parse_int_list(flag, row)).collect()
}

pub fn half(h: Half) -> Value {
    Value::String(h.to_string())
}

pub fn exponent(e: &Exponent) -> Value {
    Value::Array(e.coords().into_iter().map(half).collect())
}

pub fn exponents<'a>(it: impl IntoIterator<Item = &'a Exponent>) -> Value {
    Value::Array(it.into_iter().map(exponent).collect())
}

pub fn polynomial(p: &MultivariateLaurent) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(e, c)| json!({"exponent": exponent(e), "coefficient": c}))
        .collect();
    json!({
        "variables": default_variable_names(p.nvars()),
        "text": p.to_string(),
        "terms": terms,
        "zero": p.is_zero(),
    })
}

pub fn polytope(p: &LatticePolytope) -> Result<Value, CliError> {
    let vertices = if p.dim() == 2 { p.polygon()? } else { p.vertices()? };
    Ok(json!({
        "dim": p.dim(),
        "vertices": exponents(&vertices),
        "lattice_points": p.points().len(),
    }))
}

/// Pretty JSON with a trailing newline. Object keys are sorted, so equal
/// inputs give byte-identical output.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fallback() {
        let l = load_pd("examples/9a42.json").unwrap();
        assert_eq!(l.name, "9a42");
        assert_eq!(l.diagram.crossing_count(), 9);
        assert!(matches!(load_pd("nope/missing.json"), Err(CliError::Io { .. })));
    }

    #[test]
    fn inline_codes() {
        let l = load_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        assert_eq!(l.diagram.component_count(), 1);
        match load_pd("[[1,2,3]]") {
            Err(CliError::Schema { field, .. }) => assert_eq!(field, "[0]"),
            other => panic!("{:?}", other.err()),
        }
        assert!(matches!(load_pd("[[1,1,2,3]]"), Err(CliError::Domain(_))));
    }

    #[test]
    fn lists() {
        assert_eq!(parse_int_list("p", "2, 3").unwrap(), vec![2, 3]);
        assert!(parse_int_list("p", "2,x").is_err());
        assert_eq!(parse_matrix("lk", "0,1;1,0").unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(parse_half_list("h0", "1/2,0.5").unwrap(), vec![Half::from_doubled(1); 2]);
    }

    #[test]
    fn exact_halves() {
        let e = Exponent::from_doubled(vec![3, -2]);
        assert_eq!(exponent(&e), json!(["3/2", "-1"]));
    }
}
