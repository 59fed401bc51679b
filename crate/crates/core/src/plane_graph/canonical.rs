//! Dart-level canonical form for embedded graphs.
//!
//! Two plane graphs are considered the same when some dart bijection
//! preserves twins and rotations (orientation may be reversed) and carries
//! the marked outer face to the marked outer face. The canonical key is the
//! least traversal signature over all (root dart, orientation) choices; it is
//! stable across runs and also yields a canonical relabeled representative.

use super::{twin, Dart, OuterSpec, PlaneGraph};
use crate::bitset::BitSet;

/// Canonical key; equal keys mean isomorphic embedded graphs (with outer
/// faces corresponding). The graph must be connected.
pub fn canonical_key(g: &PlaneGraph) -> Vec<u32> {
    canonical_form(g).0
}

/// Canonical key together with the canonically relabeled representative.
pub fn canonical_form(g: &PlaneGraph) -> (Vec<u32>, PlaneGraph) {
    debug_assert!(g.is_connected());
    let nd = g.num_darts();
    if nd == 0 {
        return (vec![g.num_vertices() as u32, 0], g.clone());
    }
    let outer_darts: Vec<Dart> = g.outer_face().boundary_walk.clone();
    let mut best: Option<(Vec<u32>, Dart, bool)> = None;
    for forward in [true, false] {
        let marked: BitSet = if forward {
            outer_darts.iter().copied().collect()
        } else {
            // Mirroring carries each face orbit to the twin set.
            outer_darts.iter().map(|&d| twin(d)).collect()
        };
        for root in 0..nd {
            let sig = signature(g, root, forward, &marked);
            if best.as_ref().is_none_or(|(b, _, _)| sig < *b) {
                best = Some((sig, root, forward));
            }
        }
    }
    let (key, root, forward) = best.unwrap();
    let rep = rebuild(g, root, forward, &key);
    (key, rep)
}

fn traversal(g: &PlaneGraph, root: Dart, forward: bool) -> (Vec<u32>, Vec<Dart>) {
    let nd = g.num_darts();
    let step = |d: Dart| if forward { g.rot_next(d) } else { g.rot_prev(d) };
    let mut label = vec![u32::MAX; nd];
    let mut order = Vec::with_capacity(nd);
    label[root] = 0;
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        for nb in [twin(d), step(d)] {
            if label[nb] == u32::MAX {
                label[nb] = order.len() as u32;
                order.push(nb);
            }
        }
        i += 1;
    }
    debug_assert_eq!(order.len(), nd, "dart traversal must cover a connected map");
    (label, order)
}

fn signature(g: &PlaneGraph, root: Dart, forward: bool, marked: &BitSet) -> Vec<u32> {
    let step = |d: Dart| if forward { g.rot_next(d) } else { g.rot_prev(d) };
    let (label, order) = traversal(g, root, forward);
    let mut sig = Vec::with_capacity(2 * order.len() + 3);
    sig.push(g.num_vertices() as u32);
    sig.push(g.num_edges() as u32);
    for &d in &order {
        sig.push(label[twin(d)]);
        sig.push(label[step(d)]);
    }
    let outer_label = marked.iter().map(|d| label[d]).min().unwrap();
    sig.push(outer_label);
    sig
}

fn rebuild(g: &PlaneGraph, root: Dart, forward: bool, key: &[u32]) -> PlaneGraph {
    let step = |d: Dart| if forward { g.rot_next(d) } else { g.rot_prev(d) };
    let (label, order) = traversal(g, root, forward);
    let nd = order.len();
    // Vertices are rotation orbits, ordered by least dart label.
    let mut vertex_of = vec![usize::MAX; nd];
    let mut orbit_start: Vec<Dart> = Vec::new();
    for &d in &order {
        if vertex_of[d] != usize::MAX {
            continue;
        }
        let vid = orbit_start.len();
        orbit_start.push(d);
        let mut x = d;
        loop {
            vertex_of[x] = vid;
            x = step(x);
            if x == d {
                break;
            }
        }
    }
    let rot: Vec<Vec<usize>> = orbit_start
        .iter()
        .map(|&d0| {
            let mut lst = Vec::new();
            let mut x = d0;
            loop {
                lst.push(vertex_of[twin(x)]);
                x = step(x);
                if x == d0 {
                    break;
                }
            }
            lst
        })
        .collect();
    let outer_label = *key.last().unwrap();
    let outer_dart = order
        .iter()
        .copied()
        .find(|&d| label[d] == outer_label)
        .unwrap();
    let v = vertex_of[outer_dart];
    let mut pos = 0;
    let mut x = orbit_start[v];
    while x != outer_dart {
        x = step(x);
        pos += 1;
    }
    PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::Corner { vertex: v, pos })
        .expect("canonical rebuild of a valid embedding")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::build;

    #[test]
    fn key_invariant_under_relabeling() {
        let g = build::wheel(5).unwrap();
        // Relabel vertices by a rotation of the rim.
        let perm = |v: usize| if v == 5 { 5 } else { (v + 2) % 5 };
        let mut rot = vec![Vec::new(); 6];
        for v in 0..6 {
            rot[perm(v)] = g.rotation_at(v).iter().map(|&d| perm(g.dart_target(d))).collect();
        }
        let walk: Vec<usize> = g
            .outer_face()
            .boundary_walk
            .iter()
            .map(|&d| perm(g.dart_origin(d)))
            .collect();
        let h = PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::Walk(walk)).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&h));
    }

    #[test]
    fn mirror_identified() {
        let g = build::wheel(4).unwrap();
        let rot: Vec<Vec<usize>> = (0..g.num_vertices())
            .map(|v| {
                g.rotation_at(v)
                    .iter()
                    .rev()
                    .map(|&d| g.dart_target(d))
                    .collect()
            })
            .collect();
        let walk: Vec<usize> = g
            .outer_face()
            .boundary_walk
            .iter()
            .rev()
            .map(|&d| g.dart_origin(d))
            .collect();
        let h = PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::Walk(walk)).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&h));
    }

    #[test]
    fn outer_face_choice_distinguishes() {
        // A 4-cycle with one pendant: outer can be the long or the short side
        // of the cycle; these are different plane graphs.
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 3, 4], vec![2, 0], vec![3, 1], vec![0, 2], vec![0]],
            OuterSpec::Corner { vertex: 4, pos: 0 },
        )
        .unwrap();
        let f_outer = g.outer_face_id();
        let other = (0..g.faces().len()).find(|&f| f != f_outer).unwrap();
        let h = g.with_outer_face(other).unwrap();
        assert_ne!(canonical_key(&g), canonical_key(&h));
    }

    #[test]
    fn rebuild_is_idempotent() {
        let g = build::wheel(5).unwrap();
        let (k1, rep) = canonical_form(&g);
        let (k2, rep2) = canonical_form(&rep);
        assert_eq!(k1, k2);
        for v in 0..rep.num_vertices() {
            assert_eq!(rep.rotation_at(v).len(), rep2.rotation_at(v).len());
            let a: Vec<_> = rep.rotation_at(v).iter().map(|&d| rep.dart_target(d)).collect();
            let b: Vec<_> = rep2.rotation_at(v).iter().map(|&d| rep2.dart_target(d)).collect();
            assert_eq!(a, b);
        }
        assert_eq!(rep.outer_face_id(), rep2.outer_face_id());
    }
}
