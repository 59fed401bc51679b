//! Exhaustive generation of connected simple plane graphs.
//!
//! Works level by level over (vertex count, edge count). Every plane graph
//! with a leaf arises from a smaller one by adding a pendant into a corner;
//! every plane graph with minimum degree two has a non-bridge edge and arises
//! by drawing an edge across a face. Children are deduplicated by the
//! dart-level canonical key, so the stream yields one representative per
//! isomorphism class of embedded graph (outer face included) in a fixed
//! order.

use super::build::{add_edge_in_face, add_pendant, corners, single_vertex};
use super::canonical::canonical_form;
use super::PlaneGraph;
use crate::{CfError, Result};
use std::collections::BTreeMap;

pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// The enumeration hard cap; `CANVAS_FORGE_CAP` overrides it (unsafe: the
/// space grows very quickly).
pub fn enumeration_cap() -> usize {
    std::env::var("CANVAS_FORGE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

/// Stream all connected simple plane graphs with at most `n_max` vertices,
/// one per isomorphism class, in a deterministic order.
pub fn enumerate_plane_graphs(n_max: usize) -> Result<PlaneGraphStream> {
    let cap = enumeration_cap();
    if n_max > cap {
        return Err(CfError::Argument(format!(
            "n_max {n_max} exceeds enumeration cap {cap}"
        )));
    }
    Ok(PlaneGraphStream::new(n_max))
}

pub struct PlaneGraphStream {
    n_max: usize,
    pending: BTreeMap<(usize, usize), BTreeMap<Vec<u32>, PlaneGraph>>,
    buffer: std::collections::VecDeque<PlaneGraph>,
}

impl PlaneGraphStream {
    fn new(n_max: usize) -> Self {
        let mut pending = BTreeMap::new();
        if n_max >= 1 {
            let k1 = single_vertex();
            let (key, rep) = canonical_form(&k1);
            let mut level = BTreeMap::new();
            level.insert(key, rep);
            pending.insert((1usize, 0usize), level);
        }
        PlaneGraphStream {
            n_max,
            pending,
            buffer: std::collections::VecDeque::new(),
        }
    }

    fn expand(&mut self, g: &PlaneGraph) {
        let n = g.num_vertices();
        let m = g.num_edges();
        if n + 1 <= self.n_max {
            for c in corners(g) {
                let child = add_pendant(g, c).expect("pendant insertion is always planar");
                self.insert_child((n + 1, m + 1), &child);
            }
        }
        for f in 0..g.faces().len() {
            let len = g.face(f).walk_len();
            for wi in 0..len {
                for wj in wi + 1..len {
                    match add_edge_in_face(g, f, wi, wj) {
                        Ok(children) => {
                            for child in &children {
                                self.insert_child((n, m + 1), child);
                            }
                        }
                        Err(CfError::Argument(_)) => {} // same vertex or existing edge
                        Err(e) => panic!("unexpected augmentation failure: {e}"),
                    }
                }
            }
        }
    }

    fn insert_child(&mut self, level: (usize, usize), child: &PlaneGraph) {
        let (key, rep) = canonical_form(child);
        self.pending.entry(level).or_default().entry(key).or_insert(rep);
    }
}

impl Iterator for PlaneGraphStream {
    type Item = PlaneGraph;

    fn next(&mut self) -> Option<PlaneGraph> {
        loop {
            if let Some(g) = self.buffer.pop_front() {
                return Some(g);
            }
            let (_, level) = self.pending.pop_first()?;
            for (_, g) in level {
                self.expand(&g);
                self.buffer.push_back(g);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{twin, Dart, OuterSpec, VertexId};

    #[test]
    fn tiny_counts() {
        let one: Vec<_> = enumerate_plane_graphs(1).unwrap().collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].num_vertices(), 1);

        // K1 and K2.
        let two: Vec<_> = enumerate_plane_graphs(2).unwrap().collect();
        assert_eq!(two.len(), 2);

        // K1, K2, P3, K3.
        let three: Vec<_> = enumerate_plane_graphs(3).unwrap().collect();
        assert_eq!(three.len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_plane_graphs(DEFAULT_ENUMERATION_CAP + 1),
            Err(CfError::Argument(_))
        ));
    }

    #[test]
    fn stream_is_deterministic() {
        let a: Vec<_> = enumerate_plane_graphs(4)
            .unwrap()
            .map(|g| super::canonical_form(&g).0)
            .collect();
        let b: Vec<_> = enumerate_plane_graphs(4)
            .unwrap()
            .map(|g| super::canonical_form(&g).0)
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn euler_holds_for_every_generated_graph() {
        for g in enumerate_plane_graphs(5).unwrap() {
            assert!(g.is_connected());
            assert_eq!(g.num_vertices() + g.faces().len(), g.num_edges() + 2);
        }
    }

    // --- independent generate-and-filter oracle for small n ---

    /// All cyclic arrangements (fixing the first element) of `items`.
    fn cyclic_orders(items: &[VertexId]) -> Vec<Vec<VertexId>> {
        if items.len() <= 2 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        let mut rest: Vec<VertexId> = items[1..].to_vec();
        permute(&mut rest, 0, &mut |perm| {
            let mut v = vec![items[0]];
            v.extend_from_slice(perm);
            out.push(v);
        });
        out
    }

    fn permute(v: &mut Vec<VertexId>, k: usize, f: &mut impl FnMut(&[VertexId])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    /// Brute-force: is there a vertex bijection (and orientation choice)
    /// making the two marked embeddings equal?
    fn iso_with_outer(g: &PlaneGraph, h: &PlaneGraph) -> bool {
        let n = g.num_vertices();
        if n != h.num_vertices() || g.num_edges() != h.num_edges() {
            return false;
        }
        if g.num_darts() == 0 {
            return true; // both are single vertices
        }
        let mut perm: Vec<VertexId> = (0..n).collect();
        let mut found = false;
        permute(&mut perm, 0, &mut |p| {
            if found {
                return;
            }
            for mirror in [false, true] {
                if check_iso(g, h, p, mirror) {
                    found = true;
                    return;
                }
            }
        });
        found
    }

    fn check_iso(g: &PlaneGraph, h: &PlaneGraph, p: &[VertexId], mirror: bool) -> bool {
        let n = g.num_vertices();
        // dart map: g-dart (u->v) to h-dart (p(u)->p(v))
        let map_dart = |d: Dart| -> Option<Dart> {
            let (u, v) = (g.dart_origin(d), g.dart_target(d));
            let e = h.edge_between(p[u], p[v])?;
            Some(if h.dart_origin(2 * e) == p[u] { 2 * e } else { 2 * e + 1 })
        };
        for v in 0..n {
            if g.degree(v) != h.degree(p[v]) {
                return false;
            }
        }
        for d in 0..g.num_darts() {
            let Some(hd) = map_dart(d) else { return false };
            let Some(hs) = map_dart(g.rot_next(d)) else { return false };
            let expect = if mirror { h.rot_prev(hd) } else { h.rot_next(hd) };
            if hs != expect {
                return false;
            }
        }
        // Outer correspondence: orientation-preserving maps send face orbits
        // to face orbits; mirrors send them to twin sets.
        let g_outer = &g.outer_face().boundary_walk;
        let d0 = map_dart(g_outer[0]).unwrap();
        let image = if mirror { twin(d0) } else { d0 };
        h.face_of_dart(image) == h.outer_face_id()
    }

    fn oracle_count(n_max: usize) -> usize {
        let mut reps: Vec<PlaneGraph> = Vec::new();
        for n in 1..=n_max {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0..(1u32 << pairs.len()) {
                let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        adj[u].push(v);
                        adj[v].push(u);
                    }
                }
                // connectivity of the labeled graph
                let mut seen = vec![false; n];
                let mut stack = vec![0];
                seen[0] = true;
                while let Some(u) = stack.pop() {
                    for &v in &adj[u] {
                        if !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
                if seen.iter().any(|&s| !s) {
                    continue;
                }
                // all rotation systems
                let mut rotations: Vec<Vec<Vec<VertexId>>> = vec![vec![]];
                for v in 0..n {
                    let choices = cyclic_orders(&adj[v]);
                    let mut next = Vec::new();
                    for r in &rotations {
                        for c in &choices {
                            let mut r2 = r.clone();
                            r2.push(c.clone());
                            next.push(r2);
                        }
                    }
                    rotations = next;
                }
                for rot in rotations {
                    let Ok(base) = PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::First)
                    else {
                        continue; // not genus zero
                    };
                    for f in 0..base.faces().len() {
                        let marked = base.with_outer_face(f).unwrap();
                        if !reps.iter().any(|r| iso_with_outer(r, &marked)) {
                            reps.push(marked);
                        }
                    }
                }
            }
        }
        reps.len()
    }

    #[test]
    fn matches_independent_oracle_up_to_four_vertices() {
        let ours: Vec<_> = enumerate_plane_graphs(4).unwrap().collect();
        let expected = oracle_count(4);
        assert_eq!(ours.len(), expected);
    }
}
