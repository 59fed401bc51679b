//! JSON interchange and DOT export.
//!
//! The JSON form is `{"n": .., "rotation": [[neighbors in cyclic order]..],
//! "outer_face": [vertex walk]}`; the outer walk lists the origin vertices of
//! the outer boundary darts and is matched up to rotation (then reversal).

use super::{OuterSpec, PlaneGraph, VertexId};
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PlaneGraphJson {
    pub n: usize,
    pub rotation: Vec<Vec<VertexId>>,
    pub outer_face: Vec<VertexId>,
}

pub fn to_json(g: &PlaneGraph) -> PlaneGraphJson {
    PlaneGraphJson {
        n: g.num_vertices(),
        rotation: (0..g.num_vertices())
            .map(|v| g.rotation_at(v).iter().map(|&d| g.dart_target(d)).collect())
            .collect(),
        outer_face: g
            .outer_face()
            .boundary_walk
            .iter()
            .map(|&d| g.dart_origin(d))
            .collect(),
    }
}

pub fn from_json(j: &PlaneGraphJson) -> Result<PlaneGraph> {
    if j.rotation.len() != j.n {
        return Err(crate::CfError::Embedding(
            "rotation length disagrees with n".into(),
        ));
    }
    PlaneGraph::from_neighbor_rotation(&j.rotation, OuterSpec::Walk(j.outer_face.clone()))
}

pub fn to_dot(g: &PlaneGraph) -> String {
    let mut s = String::from("graph g {\n");
    for v in 0..g.num_vertices() {
        s.push_str(&format!("  {v};\n"));
    }
    for e in 0..g.num_edges() {
        let (u, v) = g.ends(e);
        s.push_str(&format!("  {u} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = crate::plane_graph::build::wheel(5).unwrap();
        let j = to_json(&g);
        let text = serde_json::to_string(&j).unwrap();
        let j2: PlaneGraphJson = serde_json::from_str(&text).unwrap();
        let h = from_json(&j2).unwrap();
        assert_eq!(
            crate::plane_graph::canonical_key(&g),
            crate::plane_graph::canonical_key(&h)
        );
    }

    #[test]
    fn dot_for_triangle() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1]],
            OuterSpec::First,
        )
        .unwrap();
        let dot = to_dot(&g);
        assert_eq!(dot.matches("--").count(), 3);
        assert!(dot.starts_with("graph g {"));
    }
}
