//! Heegaard diagram files.
//!
//! ```json
//! {"genus": 1,
//!  "alpha": [[0, 1, 2]], "beta": [[0, 2, 1]],
//!  "vertices": [{"name": "p", "edges": [1, 4, -3, -6], "sign": 1}, ...],
//!  "regions": [{"name": "pocket", "boundary": [-1, -6], "chi": 1, "basepoints": ["w"]}, ...],
//!  "components": [["w", "z"]]}
//! ```
//!
//! Curves list vertex indices in traversal order. Edges are numbered from 1,
//! alpha curves first: edge `k` runs from the `k`-th visit to the next one.
//! A vertex lists its four edge ends counterclockwise, `+k` for the start of
//! edge `k` and `-k` for its end. A region boundary lists `+k` when the
//! region lies to the left of edge `k` and `-k` when it lies to the right.
//! Names are optional and only used in reports.

use normcalc_core::heegaard::{DiagramSpec, PointedHeegaardDiagram, RegionSpec, VertexSpec};
use serde::Deserialize;

use crate::bundled;
use crate::error::CliError;
use crate::format::read_text_or_bundled;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    genus: usize,
    alpha: Vec<Vec<usize>>,
    beta: Vec<Vec<usize>>,
    vertices: Vec<VertexFile>,
    regions: Vec<RegionFile>,
    components: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    #[serde(default)]
    name: Option<String>,
    edges: [i64; 4],
    #[serde(default)]
    sign: Option<i8>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionFile {
    #[serde(default)]
    name: Option<String>,
    boundary: Vec<i64>,
    chi: i64,
    #[serde(default)]
    basepoints: Vec<String>,
}

pub struct NamedDiagram {
    pub name: String,
    pub diagram: PointedHeegaardDiagram,
    pub vertex_names: Vec<String>,
    pub region_names: Vec<String>,
}

pub fn parse_diagram(origin: &str, text: &str) -> Result<NamedDiagram, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: DiagramFile = serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        origin: origin.to_string(),
        field: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    let vertex_names = file
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| v.name.clone().unwrap_or_else(|| format!("v{i}")))
        .collect();
    let region_names = file
        .regions
        .iter()
        .enumerate()
        .map(|(i, r)| r.name.clone().unwrap_or_else(|| format!("R{i}")))
        .collect();
    let spec = DiagramSpec {
        genus: file.genus,
        alpha: file.alpha,
        beta: file.beta,
        vertices: file
            .vertices
            .into_iter()
            .map(|v| VertexSpec {
                edges: v.edges,
                sign: v.sign,
            })
            .collect(),
        regions: file
            .regions
            .into_iter()
            .map(|r| RegionSpec {
                boundary: r.boundary,
                chi: r.chi,
                basepoints: r.basepoints,
            })
            .collect(),
        components: file.components,
    };
    let diagram = PointedHeegaardDiagram::new(spec).map_err(|e| CliError::Domain(format!("{origin}: {e}")))?;
    Ok(NamedDiagram {
        name: bundled::stem(origin).to_string(),
        diagram,
        vertex_names,
        region_names,
    })
}

/// A file path, or the name of a bundled diagram.
pub fn load_diagram(arg: &str) -> Result<NamedDiagram, CliError> {
    let fallback = bundled::diagram(bundled::stem(arg)).map(|d| d.json);
    let text = read_text_or_bundled(arg, fallback)?;
    parse_diagram(arg, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_diagrams_load() {
        for d in bundled::DIAGRAMS {
            let n = parse_diagram(d.name, d.json).unwrap();
            assert_eq!(n.vertex_names.len(), n.diagram.vertex_count());
            assert_eq!(n.region_names.len(), n.diagram.region_count());
        }
        assert_eq!(load_diagram("examples/trefoil.json").unwrap().name, "trefoil");
    }

    #[test]
    fn schema_paths() {
        let text = r#"{"genus": 1, "alpha": [[0]], "beta": [[0]],
            "vertices": [{"edges": [1, 2, -1, -2]}],
            "regions": [{"boundary": [1], "chi": "one"}],
            "components": [["w", "z"]]}"#;
        match parse_diagram("bad", text) {
            Err(CliError::Schema { field, .. }) => assert_eq!(field, "regions[0].chi"),
            Err(e) => panic!("{e}"),
            Ok(_) => panic!("accepted"),
        }
        let extra = r#"{"genus": 1, "alpha": [], "beta": [], "vertices": [], "regions": [],
            "components": [], "colour": 3}"#;
        assert!(matches!(parse_diagram("bad", extra), Err(CliError::Schema { .. })));
    }

    #[test]
    fn structural_errors_are_domain_errors() {
        let text = r#"{"genus": 1, "alpha": [[0]], "beta": [[0]],
            "vertices": [{"edges": [1, 2, -1, -2], "sign": 1}],
            "regions": [{"boundary": [1, -1, 2, -2], "chi": 1, "basepoints": ["w", "z"]}],
            "components": [["w", "q"]]}"#;
        let err = parse_diagram("bad", text).err().unwrap();
        assert_eq!(err.exit_code(), 2);
    }
}
