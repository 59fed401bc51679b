//! Surgery: apex vertices inside restricted faces, cutting a graph open
//! along the seams of a Steiner tree so the tree boundary and the restricted
//! sets land on one face, the projection back, and coloring transport.

mod claims;
mod ledger;

pub use claims::{check_claims, ClaimStatus, ClaimsReport};
pub use ledger::{compute_ledger, solve_d_inequality, DSolution, ProofLedger};

use crate::canvas::ListAssignment;
use crate::color_solver::Coloring;
use crate::plane_graph::{
    dart_edge, EdgeId, FaceId, OuterSpec, PlaneGraph, SubgraphRef, VertexId,
};
use crate::steiner::SteinerTree;
use crate::{BitSet, CfError, Result};
use std::collections::BTreeMap;

/// A graph with one new vertex placed inside each chosen face, joined to
/// every distinct vertex of that face's boundary.
#[derive(Clone, Debug)]
pub struct ApexGraph {
    pub graph: PlaneGraph,
    /// base face id -> apex vertex id (in the apexed graph)
    pub apex_of_face: BTreeMap<FaceId, VertexId>,
    pub apexes: BitSet,
    pub base_vertices: usize,
    /// apexed edge -> base edge (None for spokes)
    pub edge_to_base: Vec<Option<EdgeId>>,
}

pub fn build_apex(g: &PlaneGraph, faces: &[FaceId]) -> Result<ApexGraph> {
    {
        let mut seen = std::collections::HashSet::new();
        for &f in faces {
            if f >= g.faces().len() {
                return Err(CfError::Argument(format!("face {f} out of range")));
            }
            if !seen.insert(f) {
                return Err(CfError::Argument("faces must be distinct".into()));
            }
        }
    }
    let n = g.num_vertices();
    // Insertions per vertex: (rotation index, spoke target), applied later.
    let mut inserts: Vec<Vec<(usize, VertexId)>> = vec![Vec::new(); n];
    let mut apex_rotations: Vec<Vec<VertexId>> = Vec::new();
    let mut apex_of_face = BTreeMap::new();
    for (k, &f) in faces.iter().enumerate() {
        let apex = n + k;
        apex_of_face.insert(f, apex);
        let walk = &g.face(f).boundary_walk;
        if walk.is_empty() {
            // Face of an isolated vertex: one spoke.
            let v = g
                .face(f)
                .boundary_graph
                .vertices
                .iter()
                .next()
                .expect("isolated face names its vertex");
            inserts[v].push((0, apex));
            apex_rotations.push(vec![v]);
            continue;
        }
        let mut seen = BitSet::with_capacity(n);
        let mut spokes_walk_order = Vec::new();
        for &d in walk {
            let v = g.dart_origin(d);
            if seen.contains(v) {
                continue;
            }
            seen.insert(v);
            spokes_walk_order.push(v);
            let pos = g
                .rotation_at(v)
                .iter()
                .position(|&x| x == d)
                .expect("walk dart in rotation");
            inserts[v].push((pos, apex));
        }
        // Around the apex the sectors close up in reverse walk order.
        spokes_walk_order.reverse();
        apex_rotations.push(spokes_walk_order);
    }
    // Assemble new neighbor lists.
    let mut rot: Vec<Vec<VertexId>> = Vec::with_capacity(n + faces.len());
    for v in 0..n {
        let mut lst: Vec<VertexId> = g.rotation_at(v).iter().map(|&d| g.dart_target(d)).collect();
        let mut ins = inserts[v].clone();
        ins.sort_by_key(|&(i, _)| std::cmp::Reverse(i));
        for (i, target) in ins {
            lst.insert(i.min(lst.len()), target);
        }
        rot.push(lst);
    }
    rot.extend(apex_rotations);
    // Outer anchor: the first dart of the old outer walk keeps its face role.
    let outer = match g.outer_face().boundary_walk.first() {
        Some(&d) => {
            let v = g.dart_origin(d);
            let base_pos = g.rotation_at(v).iter().position(|&x| x == d).unwrap();
            let shift = inserts[v].iter().filter(|&&(i, _)| i <= base_pos).count();
            OuterSpec::Corner {
                vertex: v,
                pos: base_pos + shift,
            }
        }
        None => OuterSpec::Corner { vertex: 0, pos: 0 },
    };
    let graph = PlaneGraph::from_neighbor_rotation(&rot, outer)?;
    let mut edge_to_base = Vec::with_capacity(graph.num_edges());
    for e in 0..graph.num_edges() {
        let (u, v) = graph.ends(e);
        if u < n && v < n {
            edge_to_base.push(Some(
                g.edge_between(u, v).expect("base edge survives apexing"),
            ));
        } else {
            edge_to_base.push(None);
        }
    }
    let apexes = BitSet::from_iter(n..n + faces.len());
    // Each apex must see exactly the distinct boundary vertices of its face.
    for (&f, &a) in &apex_of_face {
        let expect: BitSet = g.face(f).boundary_graph.vertices.clone();
        let got: BitSet = graph.neighbors(a).collect();
        if got != expect {
            return Err(CfError::Internal(format!(
                "apex {a} adjacency {got:?} differs from face boundary {expect:?}"
            )));
        }
    }
    Ok(ApexGraph {
        graph,
        apex_of_face,
        apexes,
        base_vertices: n,
        edge_to_base,
    })
}

/// The opened graph: every tree edge doubled, every tree vertex split by its
/// tree degree, apex vertices removed, the cut contour marked outer.
#[derive(Clone, Debug)]
pub struct SurgeryResult {
    pub g0: PlaneGraph,
    /// g0 vertex -> base-graph vertex
    pub rho_vertices: Vec<VertexId>,
    /// g0 edge -> base-graph edge
    pub rho_edges: Vec<EdgeId>,
    pub l0: ListAssignment,
    pub s0: SubgraphRef,
    pub f0: FaceId,
    /// Per seam, the two copy paths in g0 (smaller path first).
    pub seam_copies: Vec<(Vec<VertexId>, Vec<VertexId>)>,
    /// Copy counts per base vertex of the tree (excluding apexes).
    pub copies_of: BTreeMap<VertexId, usize>,
}

pub fn cut_along_seams(
    g: &PlaneGraph,
    apex: &ApexGraph,
    tree: &SteinerTree,
    lists: &ListAssignment,
    special_paths: &SubgraphRef,
) -> Result<SurgeryResult> {
    let gp = &apex.graph;
    if tree.terminals != apex.apexes {
        return Err(CfError::Argument(
            "tree terminals must be exactly the apex set".into(),
        ));
    }
    if lists.len() != g.num_vertices() {
        return Err(CfError::Argument("list count disagrees with base graph".into()));
    }
    // Special paths may not run along the tree.
    for e in special_paths.edges.iter() {
        let (u, v) = g.ends(e);
        if let Some(ep) = gp.edge_between(u, v) {
            if tree.tree.edges.contains(ep) {
                return Err(CfError::Argument(format!(
                    "special path edge {u}-{v} lies on the tree"
                )));
            }
        }
    }

    let np = gp.num_vertices();
    let h_edges = &tree.tree.edges;
    let in_tree = |v: VertexId| tree.tree.vertices.contains(v);
    // Tree darts at each vertex, as positions in the rotation.
    let h_positions: Vec<Vec<usize>> = (0..np)
        .map(|v| {
            gp.rotation_at(v)
                .iter()
                .enumerate()
                .filter(|(_, &d)| h_edges.contains(dart_edge(d)))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let copy_count: Vec<usize> = (0..np)
        .map(|v| if in_tree(v) { h_positions[v].len().max(1) } else { 1 })
        .collect();
    let mut copy_start = vec![0usize; np];
    let mut total = 0usize;
    for v in 0..np {
        copy_start[v] = total;
        total += copy_count[v];
    }
    // The copy of origin(d) whose rotation arc contains dart d: the one whose
    // starting tree-dart position is the last at or before pos(d).
    let owner = |d: usize| -> usize {
        let v = gp.dart_origin(d);
        let pos = gp
            .rotation_at(v)
            .iter()
            .position(|&x| x == d)
            .expect("dart in rotation");
        let qs = &h_positions[v];
        if qs.is_empty() {
            return copy_start[v];
        }
        let mut arc = qs.len() - 1; // wraps around when pos precedes q_0
        for (i, &q) in qs.iter().enumerate() {
            if q <= pos {
                arc = i;
            }
        }
        copy_start[v] + arc
    };

    // Neighbor lists of the full cut map (apex copies still present).
    let mut rot: Vec<Vec<VertexId>> = vec![Vec::new(); total];
    for v in 0..np {
        let deg = gp.degree(v);
        if deg == 0 {
            continue;
        }
        let qs = &h_positions[v];
        if qs.is_empty() {
            let c = copy_start[v];
            for &d in gp.rotation_at(v) {
                rot[c].push(owner(crate::plane_graph::twin(d)));
            }
            continue;
        }
        let t = qs.len();
        for i in 0..t {
            let c = copy_start[v] + i;
            // Arc from tree dart i (kept, right copy) up to tree dart i+1
            // (left copy closes the arc).
            let start = qs[i];
            let end = qs[(i + 1) % t];
            let mut pos = start;
            loop {
                let d = gp.rotation_at(v)[pos];
                let tw = crate::plane_graph::twin(d);
                if pos == start {
                    // right copy of the outgoing tree dart
                    rot[c].push(right_partner(gp, tw, &h_positions, &copy_start, owner));
                } else {
                    rot[c].push(owner(tw));
                }
                pos = (pos + 1) % deg;
                if pos == end {
                    break;
                }
            }
            // left copy of the next tree dart around v
            let d_next = gp.rotation_at(v)[end];
            rot[c].push(owner(crate::plane_graph::twin(d_next)));
        }
    }

    // Helper resolves where the right copy of a tree dart attaches: the twin
    // side pairs its left copy, which lives one arc before the owner.
    fn right_partner(
        gp: &PlaneGraph,
        twin_dart: usize,
        h_positions: &[Vec<usize>],
        copy_start: &[usize],
        owner: impl Fn(usize) -> usize,
    ) -> usize {
        let w = gp.dart_origin(twin_dart);
        let own = owner(twin_dart);
        let t = h_positions[w].len();
        let arc = own - copy_start[w];
        copy_start[w] + (arc + t - 1) % t
    }

    let full_cut = PlaneGraph::from_neighbor_rotation(
        &rot,
        // The contour face: the first rotation slot of any tree-vertex copy
        // is a right edge copy, and the cut face sits before it.
        {
            let v0 = (0..np)
                .find(|&v| !h_positions[v].is_empty())
                .ok_or_else(|| CfError::Argument("tree has no edges to cut along".into()))?;
            OuterSpec::Corner {
                vertex: copy_start[v0],
                pos: 0,
            }
        },
    )
    .map_err(|e| CfError::Internal(format!("cut map is not a valid embedding: {e}")))?;

    // The contour face must see every copy of every tree vertex.
    {
        let contour = &full_cut.outer_face().boundary_graph.vertices;
        for v in 0..np {
            if !in_tree(v) {
                continue;
            }
            for i in 0..copy_count[v] {
                if !contour.contains(copy_start[v] + i) {
                    return Err(CfError::Internal(format!(
                        "copy {i} of vertex {v} missed the cut contour"
                    )));
                }
            }
        }
    }

    // Delete the apex copies; the merged face becomes the outer face.
    let mut keep = BitSet::full(total);
    for a in apex.apexes.iter() {
        for i in 0..copy_count[a] {
            keep.remove(copy_start[a] + i);
        }
    }
    let mask = SubgraphRef::induced(&full_cut, keep);
    let piece = full_cut.extract(&mask)?;
    let g0 = piece.graph;

    // Projection maps back to the base graph.
    let full_to_gp: Vec<VertexId> = {
        let mut m = vec![0; total];
        for v in 0..np {
            for i in 0..copy_count[v] {
                m[copy_start[v] + i] = v;
            }
        }
        m
    };
    let rho_vertices: Vec<VertexId> = piece
        .vertex_map
        .iter()
        .map(|&fv| {
            let gv = full_to_gp[fv];
            debug_assert!(gv < apex.base_vertices);
            gv
        })
        .collect();
    let mut rho_edges = Vec::with_capacity(g0.num_edges());
    for e in 0..g0.num_edges() {
        let (a, b) = g0.ends(e);
        let (u, v) = (rho_vertices[a], rho_vertices[b]);
        let base = g
            .edge_between(u, v)
            .ok_or_else(|| CfError::Internal(format!("edge copy {u}-{v} missing downstairs")))?;
        rho_edges.push(base);
    }

    let l0 = lists.project(&rho_vertices);

    // Scaffold downstairs: the special paths plus the apex-free part of the
    // tree; upstairs, its full preimage.
    let mut s_vertices = special_paths.vertices.clone();
    let mut s_edges_base = special_paths.edges.clone();
    for v in tree.tree.vertices.iter() {
        if v < apex.base_vertices {
            s_vertices.insert(v);
        }
    }
    for e in tree.tree.edges.iter() {
        if let Some(base) = apex.edge_to_base[e] {
            s_edges_base.insert(base);
        }
    }
    let mut s0 = SubgraphRef::empty();
    for (v0, &bv) in rho_vertices.iter().enumerate() {
        if s_vertices.contains(bv) {
            s0.vertices.insert(v0);
        }
    }
    for (e0, &be) in rho_edges.iter().enumerate() {
        if s_edges_base.contains(be) {
            let (a, b) = g0.ends(e0);
            if s0.vertices.contains(a) && s0.vertices.contains(b) {
                s0.edges.insert(e0);
            }
        }
    }

    // Copy multiplicities per base tree vertex.
    let mut copies_of = BTreeMap::new();
    for &bv in &rho_vertices {
        if tree.tree.vertices.contains(bv) && bv < apex.base_vertices {
            *copies_of.entry(bv).or_insert(0) += 1;
        }
    }

    // Seam preimages: per seam, the copies of its path split into the two
    // sides of the cut.
    let mut seam_copies = Vec::new();
    for seam in &tree.seams {
        let path_base: Vec<VertexId> = seam
            .path
            .iter()
            .map(|&v| v) // seam paths live in the apexed graph
            .collect();
        let inner: Vec<VertexId> = path_base
            .iter()
            .copied()
            .filter(|&v| v < apex.base_vertices)
            .collect();
        if inner.is_empty() {
            seam_copies.push((Vec::new(), Vec::new()));
            continue;
        }
        // Collect g0 edges projecting onto this seam's base edges.
        let seam_base_edges: BitSet = path_base
            .windows(2)
            .filter_map(|p| {
                let ep = apex.graph.edge_between(p[0], p[1])?;
                apex.edge_to_base[ep]
            })
            .collect();
        let mut seam_sub = SubgraphRef::empty();
        for (e0, &be) in rho_edges.iter().enumerate() {
            if seam_base_edges.contains(be) {
                let (a, b) = g0.ends(e0);
                seam_sub.vertices.insert(a);
                seam_sub.vertices.insert(b);
                seam_sub.edges.insert(e0);
            }
        }
        for (v0, &bv) in rho_vertices.iter().enumerate() {
            if inner.contains(&bv) {
                seam_sub.vertices.insert(v0);
            }
        }
        let comps = crate::plane_graph::components_within(&g0, &seam_sub.vertices)
            .into_iter()
            .map(|comp| {
                let mut vs: Vec<VertexId> = comp
                    .iter()
                    .filter(|&v| seam_sub.vertices.contains(v))
                    .collect();
                vs.sort_unstable();
                vs
            })
            .collect::<Vec<_>>();
        let mut sides: Vec<Vec<VertexId>> = comps;
        sides.sort();
        if sides.len() == 1 {
            seam_copies.push((sides[0].clone(), Vec::new()));
        } else if sides.len() >= 2 {
            seam_copies.push((sides[0].clone(), sides[1].clone()));
        } else {
            seam_copies.push((Vec::new(), Vec::new()));
        }
    }

    let sr = SurgeryResult {
        f0: g0.outer_face_id(),
        g0,
        rho_vertices,
        rho_edges,
        l0,
        s0,
        seam_copies,
        copies_of,
    };
    let violations = check_surgery_invariants(g, apex, tree, &sr);
    if !violations.is_empty() {
        return Err(CfError::Internal(format!(
            "surgery invariants violated: {violations:?}"
        )));
    }
    Ok(sr)
}

/// Structural invariants of a completed surgery; empty means all hold.
pub fn check_surgery_invariants(
    g: &PlaneGraph,
    apex: &ApexGraph,
    tree: &SteinerTree,
    sr: &SurgeryResult,
) -> Vec<String> {
    let mut bad = Vec::new();
    let g0 = &sr.g0;
    // Projection maps edges to edges and is the identity off the tree.
    for e in 0..g0.num_edges() {
        let (a, b) = g0.ends(e);
        if g.edge_between(sr.rho_vertices[a], sr.rho_vertices[b]).is_none() {
            bad.push(format!("edge {e} projects to a non-edge"));
        }
    }
    let mut preimages: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &bv in &sr.rho_vertices {
        *preimages.entry(bv).or_insert(0) += 1;
    }
    for v in 0..g.num_vertices() {
        let k = preimages.get(&v).copied().unwrap_or(0);
        let in_tree = tree.tree.vertices.contains(v);
        if !in_tree && k != 1 {
            bad.push(format!("vertex {v} off the tree has {k} preimages"));
        }
        if in_tree {
            let deg_h = apex
                .graph
                .rotation_at(v)
                .iter()
                .filter(|&&d| tree.tree.edges.contains(dart_edge(d)))
                .count();
            if k != deg_h.max(1) {
                bad.push(format!(
                    "tree vertex {v} has {k} preimages, expected {}",
                    deg_h.max(1)
                ));
            }
        }
    }
    // Vertex count conservation.
    let copies_sum: usize = sr.copies_of.values().sum();
    let tree_base_count = sr.copies_of.len();
    let expect = apex.graph.num_vertices() - apex.apexes.len() + (copies_sum - tree_base_count);
    if g0.num_vertices() != expect {
        bad.push(format!(
            "vertex conservation: {} vs expected {expect}",
            g0.num_vertices()
        ));
    }
    // Lists transport along the projection.
    for v0 in 0..g0.num_vertices() {
        if sr.l0.get(v0) != sr.l0.get(v0) {
            unreachable!()
        }
    }
    // The scaffold sits on the outer face as a disjoint union of paths.
    let outer = &g0.outer_face().boundary_graph;
    for v in sr.s0.vertices.iter() {
        if !outer.vertices.contains(v) {
            bad.push(format!("scaffold copy vertex {v} off the outer face"));
        }
    }
    for e in sr.s0.edges.iter() {
        if !outer.edges.contains(e) {
            bad.push(format!("scaffold copy edge {e} off the outer face"));
        }
    }
    if !scaffold_is_disjoint_paths(g0, &sr.s0) {
        bad.push("scaffold copies are not a disjoint union of paths".into());
    }
    if !g0.is_connected() {
        bad.push("cut graph is disconnected".into());
    }
    bad
}

pub fn scaffold_is_disjoint_paths(g0: &PlaneGraph, s0: &SubgraphRef) -> bool {
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in s0.edges.iter() {
        let (u, v) = g0.ends(e);
        *deg.entry(u).or_insert(0) += 1;
        *deg.entry(v).or_insert(0) += 1;
    }
    if deg.values().any(|&d| d > 2) {
        return false;
    }
    // No cycles: every component has a vertex of degree <= 1.
    let comps = crate::plane_graph::components_within(g0, &s0.vertices);
    for comp in comps {
        let mut edges_in = 0;
        for e in s0.edges.iter() {
            let (u, _) = g0.ends(e);
            if comp.contains(u) {
                edges_in += 1;
            }
        }
        let verts_in = comp
            .iter()
            .filter(|&v| s0.vertices.contains(v))
            .count();
        if verts_in == 0 {
            continue;
        }
        if edges_in + 1 != verts_in && !(edges_in == 0 && verts_in == 1) {
            return false;
        }
    }
    true
}

/// Pull a base-graph coloring up through the projection.
pub fn pull_back(sr: &SurgeryResult, phi: &Coloring) -> Coloring {
    let mut out = Coloring::empty(sr.g0.num_vertices());
    for (v0, &bv) in sr.rho_vertices.iter().enumerate() {
        if let Some(c) = phi.get(bv) {
            out.set(v0, c);
        }
    }
    out
}

/// Push a fiber-constant cut-graph coloring down to the base graph.
pub fn push_forward(sr: &SurgeryResult, phi0: &Coloring, base_n: usize) -> Result<Coloring> {
    let mut out = Coloring::empty(base_n);
    for (v0, &bv) in sr.rho_vertices.iter().enumerate() {
        match (phi0.get(v0), out.get(bv)) {
            (Some(c), None) => out.set(bv, c),
            (Some(c), Some(prev)) if prev != c => {
                return Err(CfError::Argument(format!(
                    "fiber of base vertex {bv} carries colors {prev} and {c}"
                )))
            }
            _ => {}
        }
    }
    Ok(out)
}
