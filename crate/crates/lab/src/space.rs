//! Space definition files.
//!
//! ```json
//! {"ground": ["x", "y"], "subbasis": [["x"]]}
//! {"graph": {"nodes": ["a", "b"], "edges": [{"label": "e", "ends": ["a", "b"]}]}}
//! ```

use std::path::Path;

use serde::Deserialize;

use cva_core::topology::{alexandrov_from_graph, generate_topology, Edge, GroundSet};
use cva_core::Topology;

use crate::error::{LabError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    ground: Option<Vec<String>>,
    #[serde(default)]
    subbasis: Vec<Vec<String>>,
    graph: Option<GraphSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphSpec {
    nodes: Vec<String>,
    edges: Vec<EdgeSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeSpec {
    label: String,
    ends: [String; 2],
}

pub fn parse_space(text: &str, path: &str) -> Result<Topology> {
    let file: SpaceFile = serde_json::from_str(text).map_err(|e| LabError::parse(path, &e))?;
    let topo = match (file.ground, file.graph) {
        (Some(ground), None) => {
            let ground = GroundSet::new(&ground).map_err(|e| LabError::invalid(path, e.to_string()))?;
            generate_topology(ground, &file.subbasis)
        }
        (None, Some(graph)) if file.subbasis.is_empty() => {
            let edges: Vec<Edge> = graph.edges.into_iter().map(|e| {
                let [a, b] = e.ends;
                Edge::new(e.label, a, b)
            }).collect();
            alexandrov_from_graph(&graph.nodes, &edges)
        }
        _ => return Err(LabError::invalid(path, "expected either `ground` (with optional `subbasis`) or `graph`")),
    };
    topo.map_err(|e| LabError::invalid(path, e.to_string()))
}

pub fn load_space(path: &Path) -> Result<Topology> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io { path: name.clone(), source })?;
    parse_space(&text, &name)
}
