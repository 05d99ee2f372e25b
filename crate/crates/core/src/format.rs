//! JSON graph files.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "vertices": [{"id": "a", "coords": [0.0, 0.0]}, {"id": "b", "coords": [1.0, 0.0]}],
//!   "edges": [["a", "b"]],
//!   "root": "a"
//! }
//! ```
//!
//! `root` is optional. Loading validates the graph, so a file that loads is
//! always a well-formed [`EmbeddedGraph`].

use serde::{Deserialize, Serialize};

use crate::embedded_graph::{EmbeddedGraph, GraphError, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    dimension: usize,
    vertices: Vec<VertexRecord>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: String,
    coords: Vec<f64>,
}

pub fn load_graph<T: Scalar>(bytes: &[u8]) -> Result<EmbeddedGraph<T>, GraphError> {
    let file: GraphFile = serde_json::from_slice(bytes).map_err(|e| GraphError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut g = EmbeddedGraph::new(file.dimension);
    for (i, v) in file.vertices.into_iter().enumerate() {
        if v.id.is_empty() {
            return Err(GraphError::Field {
                field: format!("vertices[{i}].id"),
                message: "vertex ids must be non-empty".into(),
            });
        }
        let coords: Vec<T> = v.coords.iter().map(|&c| T::from_f64_lossy(c)).collect();
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GraphError::Field {
                field: format!("vertices[{i}].coords"),
                message: "coordinate out of range for the scalar type".into(),
            });
        }
        g.add_vertex(VertexId(v.id), coords);
    }
    for (a, b) in file.edges {
        g.add_edge(VertexId(a), VertexId(b));
    }
    g.set_root(file.root.map(VertexId));
    g.validate()?;
    Ok(g)
}

/// Pretty-printed JSON with a trailing newline. Vertex and edge order are
/// preserved.
pub fn save_graph<T: Scalar>(g: &EmbeddedGraph<T>) -> Vec<u8> {
    let file = GraphFile {
        dimension: g.dimension(),
        vertices: g
            .vertices()
            .iter()
            .map(|(id, p)| VertexRecord {
                id: id.0.clone(),
                coords: p.coords().iter().map(|c| c.to_f64_lossy()).collect(),
            })
            .collect(),
        edges: g.edges().iter().map(|(a, b)| (a.0.clone(), b.0.clone())).collect(),
        root: g.root().map(|r| r.0.clone()),
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("graph files always serialize");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"{
  "dimension": 2,
  "vertices": [
    {"id": "a", "coords": [0.0, 0.0]},
    {"id": "b", "coords": [0.1, 0.0]},
    {"id": "c", "coords": [0.3333333333333333, 2.5e-7]}
  ],
  "edges": [["a", "b"], ["b", "c"], ["c", "a"]]
}"#;

    #[test]
    fn round_trip() {
        let g: EmbeddedGraph = load_graph(TRIANGLE.as_bytes()).unwrap();
        let bytes = save_graph(&g);
        assert_eq!(load_graph::<f64>(&bytes).unwrap(), g);
        assert_eq!(save_graph(&load_graph::<f64>(&bytes).unwrap()), bytes);

        let mut rooted = g.clone();
        rooted.set_root(Some("b".into()));
        assert_eq!(load_graph::<f64>(&save_graph(&rooted)).unwrap(), rooted);
    }

    #[test]
    fn unknown_endpoint() {
        let text = TRIANGLE.replace(r#"["c", "a"]"#, r#"["c", "z"]"#);
        let err = load_graph::<f64>(text.as_bytes()).unwrap_err();
        assert_eq!(err, GraphError::UnknownEndpoint { edge: 2, id: "z".into() });
    }

    #[test]
    fn unknown_root() {
        let text = TRIANGLE.replace(r#""dimension": 2,"#, r#""dimension": 2, "root": "q","#);
        assert_eq!(load_graph::<f64>(text.as_bytes()).unwrap_err(), GraphError::UnknownRoot("q".into()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = TRIANGLE.replace(r#"[0.1, 0.0]"#, r#"[0.1 0.0]"#);
        match load_graph::<f64>(text.as_bytes()).unwrap_err() {
            GraphError::Parse { line, .. } => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        let err = load_graph::<f64>(br#"{"dimension": 2, "vertices": [], "edges": [], "colour": 1}"#).unwrap_err();
        assert!(matches!(err, GraphError::Parse { .. }));
        let err = load_graph::<f64>(br#"{"dimension": 1, "vertices": [{"id": "", "coords": [0]}], "edges": []}"#).unwrap_err();
        assert!(matches!(err, GraphError::Field { ref field, .. } if field == "vertices[0].id"));
    }

    #[test]
    fn f32_loading() {
        let g: EmbeddedGraph<f32> = load_graph(TRIANGLE.as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        let err = load_graph::<f32>(br#"{"dimension": 1, "vertices": [{"id": "a", "coords": [1e300]}], "edges": []}"#).unwrap_err();
        assert!(matches!(err, GraphError::Field { .. }));
    }
}
