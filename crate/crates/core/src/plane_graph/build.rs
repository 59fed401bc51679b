//! Construction helpers: common small graphs and the two augmentation moves
//! (pendant vertex at a corner, edge across a face) that the enumerator and
//! the instance generators share.

use super::{FaceId, OuterSpec, PlaneGraph, VertexId};
use crate::{CfError, Result};

/// A corner of the embedding: the gap before `rotation[vertex][pos]`.
/// For an isolated vertex, `pos` is 0 and the corner is its whole face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub vertex: VertexId,
    pub pos: usize,
}

/// The face whose walk turns at this corner.
pub fn corner_face(g: &PlaneGraph, c: Corner) -> FaceId {
    if g.degree(c.vertex) == 0 {
        return g
            .faces()
            .iter()
            .find(|f| f.boundary_walk.is_empty() && f.boundary_graph.vertices.contains(c.vertex))
            .map(|f| f.id)
            .expect("isolated vertex has an empty face");
    }
    g.face_of_dart(g.rotation_at(c.vertex)[c.pos % g.degree(c.vertex)])
}

/// All corners of the embedding, in (vertex, position) order.
pub fn corners(g: &PlaneGraph) -> Vec<Corner> {
    (0..g.num_vertices())
        .flat_map(|v| {
            let d = g.degree(v).max(1);
            (0..d).map(move |pos| Corner { vertex: v, pos })
        })
        .collect()
}

fn neighbor_lists(g: &PlaneGraph) -> Vec<Vec<VertexId>> {
    (0..g.num_vertices())
        .map(|v| g.rotation_at(v).iter().map(|&d| g.dart_target(d)).collect())
        .collect()
}

/// An anchor corner on the outer face that survives insertions elsewhere.
fn outer_anchor(g: &PlaneGraph) -> Option<Corner> {
    let walk = &g.outer_face().boundary_walk;
    walk.first().map(|&d| Corner {
        vertex: g.dart_origin(d),
        pos: g.rotation_at(g.dart_origin(d))
            .iter()
            .position(|&x| x == d)
            .unwrap(),
    })
}

fn shift(anchor: Corner, at: Corner) -> Corner {
    if anchor.vertex == at.vertex && anchor.pos >= at.pos {
        Corner {
            vertex: anchor.vertex,
            pos: anchor.pos + 1,
        }
    } else {
        anchor
    }
}

/// Add a new pendant vertex inside the face at `c`, attached to `c.vertex`.
pub fn add_pendant(g: &PlaneGraph, c: Corner) -> Result<PlaneGraph> {
    if c.vertex >= g.num_vertices() || c.pos > g.degree(c.vertex) {
        return Err(CfError::Argument("corner out of range".into()));
    }
    let mut rot = neighbor_lists(g);
    let w = g.num_vertices();
    let insert_at = if g.degree(c.vertex) == 0 { 0 } else { c.pos % g.degree(c.vertex) };
    rot[c.vertex].insert(insert_at, w);
    rot.push(vec![c.vertex]);
    let outer = match outer_anchor(g) {
        Some(a) => {
            let a = shift(a, Corner { vertex: c.vertex, pos: insert_at });
            OuterSpec::Corner {
                vertex: a.vertex,
                pos: a.pos,
            }
        }
        // Host had no darts (single vertex): the one face stays outer.
        None => OuterSpec::Corner { vertex: c.vertex, pos: 0 },
    };
    PlaneGraph::from_neighbor_rotation(&rot, outer)
}

/// Add an edge across a face, between two corners of that face's walk
/// (walk positions `wi`, `wj`). The face splits in two; when it was the
/// outer face, both choices of the new outer side are returned.
pub fn add_edge_in_face(
    g: &PlaneGraph,
    f: FaceId,
    wi: usize,
    wj: usize,
) -> Result<Vec<PlaneGraph>> {
    let walk = &g.face(f).boundary_walk;
    if wi >= walk.len() || wj >= walk.len() || wi == wj {
        return Err(CfError::Argument("walk positions out of range".into()));
    }
    let (du, dv) = (walk[wi], walk[wj]);
    let (u, v) = (g.dart_origin(du), g.dart_origin(dv));
    if u == v {
        return Err(CfError::Argument("corners share a vertex".into()));
    }
    if g.adjacent(u, v) {
        return Err(CfError::Argument("edge already present".into()));
    }
    let cu = Corner {
        vertex: u,
        pos: g.rotation_at(u).iter().position(|&x| x == du).unwrap(),
    };
    let cv = Corner {
        vertex: v,
        pos: g.rotation_at(v).iter().position(|&x| x == dv).unwrap(),
    };
    let mut rot = neighbor_lists(g);
    rot[u].insert(cu.pos, v);
    rot[v].insert(cv.pos, u);
    if f != g.outer_face_id() {
        let a = outer_anchor(g).expect("outer face has darts");
        let a = shift(shift(a, cu), cv);
        return Ok(vec![PlaneGraph::from_neighbor_rotation(
            &rot,
            OuterSpec::Corner {
                vertex: a.vertex,
                pos: a.pos,
            },
        )?]);
    }
    // The old outer face splits; emit one graph per side.
    let side1 = PlaneGraph::from_neighbor_rotation(
        &rot,
        OuterSpec::Corner {
            vertex: u,
            pos: cu.pos,
        },
    )?;
    let other = {
        let d_vu = side1.rotation_at(v)[cv.pos];
        debug_assert_eq!(side1.dart_target(d_vu), u);
        side1.face_of_dart(d_vu)
    };
    if other == side1.outer_face_id() {
        // Degenerate: both new darts on one side cannot happen for a simple
        // cycle split, but guard anyway.
        return Ok(vec![side1]);
    }
    let side2 = side1.with_outer_face(other)?;
    Ok(vec![side1, side2])
}

// --- small named graphs used across tests and campaigns ---

pub fn single_vertex() -> PlaneGraph {
    PlaneGraph::from_neighbor_rotation(&[vec![]], OuterSpec::First).unwrap()
}

pub fn path_graph(n: usize) -> Result<PlaneGraph> {
    if n == 0 {
        return Err(CfError::Argument("empty path".into()));
    }
    let rot: Vec<Vec<VertexId>> = (0..n)
        .map(|v| {
            let mut l = Vec::new();
            if v > 0 {
                l.push(v - 1);
            }
            if v + 1 < n {
                l.push(v + 1);
            }
            l
        })
        .collect();
    PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::First)
}

pub fn cycle_graph(n: usize) -> Result<PlaneGraph> {
    if n < 3 {
        return Err(CfError::Argument("cycle needs at least 3 vertices".into()));
    }
    let rot: Vec<Vec<VertexId>> = (0..n).map(|v| vec![(v + n - 1) % n, (v + 1) % n]).collect();
    // Mark the face whose walk runs 0, n-1, ..., 1 as outer.
    let mut walk: Vec<VertexId> = vec![0];
    walk.extend((1..n).rev());
    PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::Walk(walk))
}

/// Wheel: rim cycle `0..k` with hub `k` inside; outer face is the rim.
pub fn wheel(k: usize) -> Result<PlaneGraph> {
    if k < 3 {
        return Err(CfError::Argument("wheel needs rim of at least 3".into()));
    }
    let hub = k;
    let mut rot: Vec<Vec<VertexId>> = (0..k)
        .map(|v| vec![(v + 1) % k, hub, (v + k - 1) % k])
        .collect();
    rot.push((0..k).collect());
    let mut walk: Vec<VertexId> = vec![0];
    walk.extend((1..k).rev());
    PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::Walk(walk))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_satisfy_euler() {
        for g in [
            single_vertex(),
            path_graph(5).unwrap(),
            cycle_graph(6).unwrap(),
            wheel(5).unwrap(),
        ] {
            assert_eq!(
                g.num_vertices() + g.faces().len(),
                g.num_edges() + 2,
                "{g:?}"
            );
        }
    }

    #[test]
    fn wheel_structure() {
        let g = wheel(5).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 10);
        assert_eq!(g.faces().len(), 6);
        assert_eq!(g.outer_face().walk_len(), 5);
        assert!(!g
            .outer_face()
            .boundary_graph
            .vertices
            .contains(5), "hub stays interior");
    }

    #[test]
    fn pendant_into_outer_face() {
        let g = cycle_graph(4).unwrap();
        let c = Corner { vertex: 0, pos: 0 };
        let child = add_pendant(&g, c).unwrap();
        assert_eq!(child.num_vertices(), 5);
        assert_eq!(child.num_edges(), 5);
        assert_eq!(child.faces().len(), 2);
    }

    #[test]
    fn edge_split_of_outer_face_gives_both_sides() {
        let g = cycle_graph(4).unwrap();
        let f = g.outer_face_id();
        // connect the two walk positions whose origins are opposite corners
        let walk = &g.face(f).boundary_walk;
        let (mut wi, mut wj) = (usize::MAX, usize::MAX);
        for (i, &d) in walk.iter().enumerate() {
            match g.dart_origin(d) {
                0 => wi = i,
                2 => wj = i,
                _ => {}
            }
        }
        let children = add_edge_in_face(&g, f, wi, wj).unwrap();
        assert_eq!(children.len(), 2);
        for ch in &children {
            assert_eq!(ch.num_edges(), 5);
            assert_eq!(ch.faces().len(), 3);
            assert_eq!(ch.num_vertices() + ch.faces().len(), ch.num_edges() + 2);
            // the outer 4-walk splits into two triangles
            assert_eq!(ch.outer_face().walk_len(), 3);
        }
        assert_ne!(children[0].outer_face_id(), children[1].outer_face_id());
    }
}
