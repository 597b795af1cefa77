//! JSON edge lists: `{"n": 3, "edges": [[0, 1], [1, 2]]}`.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Wire form of an edge list. Signed fields so that negative input is
/// reported as such rather than as a type error.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeListDoc {
    pub n: i64,
    pub edges: Vec<[i64; 2]>,
}

impl EdgeListDoc {
    pub fn into_graph(self) -> Result<Graph> {
        if self.n < 0 {
            return Err(Error::EdgeList(format!("negative vertex count {}", self.n)));
        }
        let n = self.n as usize;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, [u, v]) in self.edges.into_iter().enumerate() {
            for x in [u, v] {
                if x < 0 || x >= self.n {
                    return Err(Error::EdgeList(format!(
                        "edge {i} has endpoint {x} outside 0..{n}"
                    )));
                }
            }
            edges.push((u as usize, v as usize));
        }
        Graph::new(n, edges)
    }
}

impl From<&Graph> for EdgeListDoc {
    fn from(g: &Graph) -> Self {
        EdgeListDoc {
            n: g.n() as i64,
            edges: g
                .edges()
                .iter()
                .map(|&(u, v)| [u as i64, v as i64])
                .collect(),
        }
    }
}

pub fn parse_edge_list(json: &str) -> Result<Graph> {
    let doc: EdgeListDoc =
        serde_json::from_str(json).map_err(|e| Error::EdgeList(e.to_string()))?;
    doc.into_graph()
}

pub fn emit_edge_list(g: &Graph) -> String {
    serde_json::to_string(&EdgeListDoc::from(g)).expect("edge list serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = parse_edge_list(r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!((t.n(), t.num_edges()), (3, 3));
        assert!(t.is_connected());

        let d = parse_edge_list(r#"{"n":2,"edges":[[0,1],[0,1]]}"#).unwrap();
        assert_eq!(d.num_edges(), 2);
        assert!(!d.is_simple());

        assert!(matches!(
            parse_edge_list(r#"{"n":2,"edges":[[0,5]]}"#),
            Err(Error::EdgeList(_))
        ));
        assert!(matches!(
            parse_edge_list(r#"{"n":-1,"edges":[]}"#),
            Err(Error::EdgeList(_))
        ));
        assert!(matches!(
            parse_edge_list("not json"),
            Err(Error::EdgeList(_))
        ));
    }

    #[test]
    fn round_trip_preserves_order_and_multiplicity() {
        let g = Graph::new(3, vec![(2, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }
}
