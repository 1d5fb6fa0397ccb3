//! DOT and JSON encodings of graphs.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// `{"n": int, "edges": [[u, v], ...]}` with `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Graphviz rendering: one labelled node per line, then one edge per
    /// unordered pair in lexicographic order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for u in 0..self.order() {
            let label = self.label(u).replace('"', "\\\"");
            writeln!(out, "  {u} [label=\"{label}\"];").unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.order(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(json.n, &edges)
    }

    pub fn from_json_str(text: &str) -> Result<Graph> {
        let json: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::from_json(&json)
    }
}

#[cfg(test)]
mod tests {
    use crate::graph::{circulant, complete};

    #[test]
    fn dot_golden() {
        let expected = "graph G {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  2 [label=\"2\"];\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n";
        assert_eq!(circulant(3, &[1, 2]).unwrap().to_dot(), expected);
    }

    #[test]
    fn json_shape() {
        let text = serde_json::to_string(&complete(3).to_json()).unwrap();
        assert_eq!(text, r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#);
        let back = crate::graph::Graph::from_json_str(&text).unwrap();
        assert_eq!(back, complete(3));
    }
}
