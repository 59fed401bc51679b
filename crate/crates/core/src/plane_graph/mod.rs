//! Combinatorial plane graphs.
//!
//! An embedding is stored as a rotation system over paired darts: edge `e`
//! owns darts `2e` and `2e+1` (`twin(d) = d ^ 1`), and each vertex holds its
//! outgoing darts in cyclic order. Faces are the orbits of
//! `d -> rotation-successor(twin(d))`; one face is marked as the outer face.
//! Graphs are simple (no loops, no parallel edges) and genus zero; both are
//! enforced at construction.

pub mod build;
mod canonical;
mod enumerate;
mod io;

pub use build::{add_edge_in_face, add_pendant, corner_face, Corner};
pub use canonical::canonical_key;
pub use enumerate::{enumerate_plane_graphs, PlaneGraphStream, DEFAULT_ENUMERATION_CAP};
pub use io::{from_json, to_dot, to_json, PlaneGraphJson};

use crate::bitset::BitSet;
use crate::{CfError, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Dart = usize;
pub type FaceId = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn dart_edge(d: Dart) -> EdgeId {
    d / 2
}

/// A reference to a subgraph of a host graph, as vertex and edge masks.
/// Every masked edge must have both ends masked.
#[derive(Clone, PartialEq, Eq, Debug, Default, serde::Serialize, serde::Deserialize)]
pub struct SubgraphRef {
    pub vertices: BitSet,
    pub edges: BitSet,
}

impl SubgraphRef {
    pub fn empty() -> Self {
        SubgraphRef::default()
    }

    pub fn full(g: &PlaneGraph) -> Self {
        SubgraphRef {
            vertices: BitSet::full(g.num_vertices()),
            edges: BitSet::full(g.num_edges()),
        }
    }

    pub fn from_parts<V, E>(vertices: V, edges: E) -> Self
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = EdgeId>,
    {
        SubgraphRef {
            vertices: BitSet::from_iter(vertices),
            edges: BitSet::from_iter(edges),
        }
    }

    /// Vertex-induced subgraph of `g`.
    pub fn induced(g: &PlaneGraph, vertices: BitSet) -> Self {
        let edges = (0..g.num_edges())
            .filter(|&e| {
                let (u, v) = g.ends(e);
                vertices.contains(u) && vertices.contains(v)
            })
            .collect();
        SubgraphRef { vertices, edges }
    }

    pub fn is_valid_in(&self, g: &PlaneGraph) -> bool {
        self.vertices.iter().all(|v| v < g.num_vertices())
            && self.edges.iter().all(|e| {
                if e >= g.num_edges() {
                    return false;
                }
                let (u, v) = g.ends(e);
                self.vertices.contains(u) && self.vertices.contains(v)
            })
    }

    pub fn contains_subgraph(&self, other: &SubgraphRef) -> bool {
        other.vertices.is_subset_of(&self.vertices) && other.edges.is_subset_of(&self.edges)
    }

    pub fn is_proper_subgraph_of(&self, other: &SubgraphRef) -> bool {
        other.contains_subgraph(self) && self != other
    }
}

/// A face of a plane graph.
#[derive(Clone, Debug)]
pub struct Face {
    pub id: FaceId,
    /// Cyclic dart sequence; empty for the face of an isolated vertex.
    pub boundary_walk: Vec<Dart>,
    /// Vertices and edges met by the boundary walk.
    pub boundary_graph: SubgraphRef,
}

impl Face {
    pub fn walk_len(&self) -> usize {
        self.boundary_walk.len()
    }
}

#[derive(Clone, Debug)]
pub enum OuterSpec {
    /// Identify the outer face by its cyclic vertex walk (origin sequence of
    /// the boundary darts, matched up to rotation, then up to reversal).
    Walk(Vec<VertexId>),
    /// The face whose walk passes the corner before `rotation[vertex][pos]`.
    Corner { vertex: VertexId, pos: usize },
    /// The face containing this dart's orbit.
    ContainingDart(Dart),
    /// Deterministic default: face 0.
    First,
}

#[derive(Clone)]
pub struct PlaneGraph {
    n: usize,
    /// Per dart: origin vertex. Twin darts share an edge: `2e`, `2e+1`.
    dart_origin: Vec<VertexId>,
    /// Per vertex: outgoing darts in cyclic order.
    rotation: Vec<Vec<Dart>>,
    /// Per dart: index into `rotation[origin]`.
    dart_pos: Vec<usize>,
    faces: Vec<Face>,
    /// Per dart: face id of its orbit.
    dart_face: Vec<FaceId>,
    outer_face: FaceId,
}

impl PlaneGraph {
    /// Build from per-vertex neighbor lists in cyclic order.
    pub fn from_neighbor_rotation(rotation: &[Vec<VertexId>], outer: OuterSpec) -> Result<Self> {
        let n = rotation.len();
        for (u, nbrs) in rotation.iter().enumerate() {
            let mut seen = BitSet::with_capacity(n);
            for &v in nbrs {
                if v >= n {
                    return Err(CfError::Embedding(format!(
                        "vertex {u} lists neighbor {v} out of range"
                    )));
                }
                if v == u {
                    return Err(CfError::Embedding(format!("loop at vertex {u}")));
                }
                if seen.contains(v) {
                    return Err(CfError::Embedding(format!(
                        "parallel edge between {u} and {v}"
                    )));
                }
                seen.insert(v);
            }
        }
        // Symmetry check and edge discovery in scan order.
        let mut pos_of = vec![std::collections::HashMap::new(); n];
        for (u, nbrs) in rotation.iter().enumerate() {
            for (i, &v) in nbrs.iter().enumerate() {
                pos_of[u].insert(v, i);
            }
        }
        let mut rot_darts: Vec<Vec<Dart>> = rotation.iter().map(|l| vec![0; l.len()]).collect();
        let mut dart_origin = Vec::new();
        for (u, nbrs) in rotation.iter().enumerate() {
            for (i, &v) in nbrs.iter().enumerate() {
                let back = pos_of[v].get(&u).copied().ok_or_else(|| {
                    CfError::Embedding(format!("edge {u}-{v} not symmetric in rotation lists"))
                })?;
                if u < v {
                    let d = dart_origin.len();
                    dart_origin.push(u);
                    dart_origin.push(v);
                    rot_darts[u][i] = d;
                    rot_darts[v][back] = d + 1;
                }
            }
        }
        Self::from_dart_rotation(n, dart_origin, rot_darts, outer)
    }

    /// Build from explicit dart structure. `dart_origin[2e]`/`[2e+1]` are the
    /// ends of edge `e`; `rotation[v]` lists darts with origin `v` cyclically.
    pub fn from_dart_rotation(
        n: usize,
        dart_origin: Vec<VertexId>,
        rotation: Vec<Vec<Dart>>,
        outer: OuterSpec,
    ) -> Result<Self> {
        let nd = dart_origin.len();
        if nd % 2 != 0 || rotation.len() != n {
            return Err(CfError::Embedding("malformed dart arrays".into()));
        }
        let mut dart_pos = vec![usize::MAX; nd];
        for (v, darts) in rotation.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                if d >= nd || dart_origin[d] != v || dart_pos[d] != usize::MAX {
                    return Err(CfError::Embedding("rotation inconsistent with darts".into()));
                }
                dart_pos[d] = i;
            }
        }
        if dart_pos.iter().any(|&p| p == usize::MAX) {
            return Err(CfError::Embedding("dart missing from rotation".into()));
        }
        let mut g = PlaneGraph {
            n,
            dart_origin,
            rotation,
            dart_pos,
            faces: Vec::new(),
            dart_face: Vec::new(),
            outer_face: 0,
        };
        for e in 0..g.num_edges() {
            if g.dart_origin[2 * e] == g.dart_origin[2 * e + 1] {
                return Err(CfError::Embedding(format!("loop edge {e}")));
            }
        }
        // Parallel edge check.
        let mut seen = std::collections::HashSet::new();
        for e in 0..g.num_edges() {
            let (u, v) = g.ends(e);
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(CfError::Embedding(format!("parallel edge {e}")));
            }
        }
        g.trace_faces();
        g.check_euler()?;
        g.outer_face = g.resolve_outer(&outer)?;
        Ok(g)
    }

    fn trace_faces(&mut self) {
        let nd = self.dart_origin.len();
        self.dart_face = vec![usize::MAX; nd];
        self.faces.clear();
        for start in 0..nd {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.dart_face[d] = id;
                walk.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            // Canonical walk start: smallest dart of the orbit.
            let min_pos = walk
                .iter()
                .enumerate()
                .min_by_key(|(_, &d)| d)
                .map(|(i, _)| i)
                .unwrap();
            walk.rotate_left(min_pos);
            let boundary_graph = SubgraphRef::from_parts(
                walk.iter().map(|&d| self.dart_origin[d]),
                walk.iter().map(|&d| dart_edge(d)),
            );
            self.faces.push(Face {
                id,
                boundary_walk: walk,
                boundary_graph,
            });
        }
        // Isolated vertices carry an empty face each.
        for v in 0..self.n {
            if self.rotation[v].is_empty() {
                let id = self.faces.len();
                self.faces.push(Face {
                    id,
                    boundary_walk: Vec::new(),
                    boundary_graph: SubgraphRef::from_parts([v], []),
                });
            }
        }
    }

    fn check_euler(&self) -> Result<()> {
        // Per connected component: V - E + F = 2 on the sphere.
        let comps = self.components();
        for comp in &comps {
            let vc = comp.len();
            let ec = (0..self.num_edges())
                .filter(|&e| comp.contains(self.ends(e).0))
                .count();
            let fc = self
                .faces
                .iter()
                .filter(|f| f.boundary_graph.vertices.iter().next().is_some_and(|v| comp.contains(v)))
                .count();
            if vc + fc != ec + 2 {
                return Err(CfError::Embedding(format!(
                    "rotation system is not genus zero: V={vc} E={ec} F={fc}"
                )));
            }
        }
        Ok(())
    }

    fn resolve_outer(&self, spec: &OuterSpec) -> Result<FaceId> {
        match spec {
            OuterSpec::First => {
                if self.faces.is_empty() {
                    return Err(CfError::Embedding("graph has no faces".into()));
                }
                Ok(0)
            }
            OuterSpec::ContainingDart(d) => {
                if *d >= self.dart_origin.len() {
                    return Err(CfError::Embedding("outer dart out of range".into()));
                }
                Ok(self.dart_face[*d])
            }
            OuterSpec::Corner { vertex, pos } => {
                if *vertex >= self.n {
                    return Err(CfError::Embedding("outer corner vertex out of range".into()));
                }
                if self.rotation[*vertex].is_empty() {
                    return self
                        .faces
                        .iter()
                        .find(|f| {
                            f.boundary_walk.is_empty() && f.boundary_graph.vertices.contains(*vertex)
                        })
                        .map(|f| f.id)
                        .ok_or_else(|| CfError::Embedding("no face at isolated vertex".into()));
                }
                let deg = self.rotation[*vertex].len();
                Ok(self.dart_face[self.rotation[*vertex][*pos % deg]])
            }
            OuterSpec::Walk(walk) => self.face_matching_walk(walk),
        }
    }

    fn face_matching_walk(&self, walk: &[VertexId]) -> Result<FaceId> {
        let matches = |f: &Face, w: &[VertexId]| -> bool {
            let orig: Vec<VertexId> = f.boundary_walk.iter().map(|&d| self.dart_origin[d]).collect();
            if orig.len() != w.len() {
                return false;
            }
            if w.is_empty() {
                return true;
            }
            (0..orig.len()).any(|s| (0..w.len()).all(|i| orig[(s + i) % orig.len()] == w[i]))
        };
        let direct: Vec<FaceId> = self
            .faces
            .iter()
            .filter(|f| matches(f, walk))
            .map(|f| f.id)
            .collect();
        let found = if direct.len() == 1 {
            direct
        } else if direct.is_empty() {
            let rev: Vec<VertexId> = walk.iter().rev().copied().collect();
            self.faces
                .iter()
                .filter(|f| matches(f, &rev))
                .map(|f| f.id)
                .collect()
        } else {
            direct
        };
        match found.len() {
            1 => Ok(found[0]),
            0 => Err(CfError::Embedding("no face matches the outer walk".into())),
            _ => Err(CfError::Embedding("outer walk is ambiguous".into())),
        }
    }

    // --- basic views ---

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.dart_origin.len() / 2
    }

    pub fn num_darts(&self) -> usize {
        self.dart_origin.len()
    }

    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.dart_origin[2 * e], self.dart_origin[2 * e + 1])
    }

    pub fn dart_origin(&self, d: Dart) -> VertexId {
        self.dart_origin[d]
    }

    pub fn dart_target(&self, d: Dart) -> VertexId {
        self.dart_origin[twin(d)]
    }

    pub fn rotation_at(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        let v = self.dart_origin[d];
        let r = &self.rotation[v];
        r[(self.dart_pos[d] + 1) % r.len()]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let v = self.dart_origin[d];
        let r = &self.rotation[v];
        r[(self.dart_pos[d] + r.len() - 1) % r.len()]
    }

    /// Successor in the face walk: rotation successor of the twin.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.rot_next(twin(d))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn face_of_dart(&self, d: Dart) -> FaceId {
        self.dart_face[d]
    }

    pub fn outer_face_id(&self) -> FaceId {
        self.outer_face
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer_face]
    }

    /// A copy with a different face marked outer.
    pub fn with_outer_face(&self, f: FaceId) -> Result<Self> {
        if f >= self.faces.len() {
            return Err(CfError::Argument(format!("face {f} out of range")));
        }
        let mut g = self.clone();
        g.outer_face = f;
        Ok(g)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.rotation[u]
            .iter()
            .find(|&&d| self.dart_target(d) == v)
            .map(|&d| dart_edge(d))
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation[v].iter().map(|&d| self.dart_target(d))
    }

    pub fn components(&self) -> Vec<BitSet> {
        let mut seen = BitSet::with_capacity(self.n);
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = BitSet::with_capacity(self.n);
            let mut stack = vec![s];
            seen.insert(s);
            comp.insert(s);
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    // --- metric ---

    /// Minimum BFS distance between two nonempty vertex sets; `None` when
    /// they lie in different components.
    pub fn distance(&self, a: &BitSet, b: &BitSet) -> Result<Option<usize>> {
        if a.is_empty() || b.is_empty() {
            return Err(CfError::Argument("distance of empty vertex set".into()));
        }
        let dist = self.bfs_distances(a);
        let best = b.iter().filter_map(|v| dist[v]).min();
        Ok(best)
    }

    /// BFS levels from a source set.
    pub fn bfs_distances(&self, sources: &BitSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in sources.iter() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    // --- chords ---

    /// Edges not on the boundary of `f` with both ends on it.
    pub fn chords_of_face(&self, f: FaceId) -> Vec<EdgeId> {
        let b = &self.faces[f].boundary_graph;
        (0..self.num_edges())
            .filter(|&e| {
                let (u, v) = self.ends(e);
                !b.edges.contains(e) && b.vertices.contains(u) && b.vertices.contains(v)
            })
            .collect()
    }

    // --- masked sub-embeddings ---

    /// Rotation lists restricted to edges alive in `sub` (order preserved).
    pub fn sub_rotation(&self, sub: &SubgraphRef) -> Vec<Vec<Dart>> {
        (0..self.n)
            .map(|v| {
                if !sub.vertices.contains(v) {
                    return Vec::new();
                }
                self.rotation[v]
                    .iter()
                    .copied()
                    .filter(|&d| sub.edges.contains(dart_edge(d)))
                    .collect()
            })
            .collect()
    }

    /// Face walks of the sub-embedding induced by `sub`. Returns the walks
    /// and, per dart, the sub-face index (usize::MAX for dead darts).
    pub fn sub_faces(&self, sub: &SubgraphRef) -> (Vec<Vec<Dart>>, Vec<usize>) {
        let rot = self.sub_rotation(sub);
        let mut pos = vec![usize::MAX; self.num_darts()];
        for darts in &rot {
            for (i, &d) in darts.iter().enumerate() {
                pos[d] = i;
            }
        }
        let next = |d: Dart| -> Dart {
            let t = twin(d);
            let v = self.dart_origin[t];
            let r = &rot[v];
            r[(pos[t] + 1) % r.len()]
        };
        let mut face_of = vec![usize::MAX; self.num_darts()];
        let mut walks = Vec::new();
        for start in 0..self.num_darts() {
            if face_of[start] != usize::MAX
                || !sub.edges.contains(dart_edge(start))
                || !sub.vertices.contains(self.dart_origin[start])
            {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                walk.push(d);
                d = next(d);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
        (walks, face_of)
    }

    /// Flood over host faces, crossing an edge only when `may_cross` allows
    /// it. Returns the set of reached faces.
    pub fn face_region<F>(&self, seeds: impl IntoIterator<Item = FaceId>, may_cross: F) -> BitSet
    where
        F: Fn(EdgeId) -> bool,
    {
        let mut reached = BitSet::with_capacity(self.faces.len());
        let mut queue: Vec<FaceId> = Vec::new();
        for f in seeds {
            if !reached.contains(f) {
                reached.insert(f);
                queue.push(f);
            }
        }
        while let Some(f) = queue.pop() {
            for &d in &self.faces[f].boundary_walk {
                if may_cross(dart_edge(d)) {
                    let g = self.dart_face[twin(d)];
                    if !reached.contains(g) {
                        reached.insert(g);
                        queue.push(g);
                    }
                }
            }
        }
        reached
    }

    /// A dart of `sub` bounding the region of the plane that contains the
    /// face `from` of the host; `None` if the region meets no live edge.
    /// Flooding crosses exactly the edges that are dead in `sub`.
    pub fn region_boundary_dart(&self, sub: &SubgraphRef, from: FaceId) -> Option<Dart> {
        let dead = |e: EdgeId| !sub.edges.contains(e);
        let mut reached = BitSet::with_capacity(self.faces.len());
        let mut queue = std::collections::VecDeque::new();
        reached.insert(from);
        queue.push_back(from);
        while let Some(f) = queue.pop_front() {
            for &d in &self.faces[f].boundary_walk {
                let e = dart_edge(d);
                if !dead(e) {
                    return Some(d);
                }
                let g = self.dart_face[twin(d)];
                if !reached.contains(g) {
                    reached.insert(g);
                    queue.push_back(g);
                }
            }
        }
        None
    }

    /// Materialize the sub-embedding referenced by `sub` as a standalone
    /// graph. The outer face of the piece is the face bounding the region
    /// that contains this graph's outer face. Returns the piece and its
    /// vertex and edge maps back into `self`.
    pub fn extract(&self, sub: &SubgraphRef) -> Result<SubPiece> {
        if !sub.is_valid_in(self) {
            return Err(CfError::Argument("subgraph reference invalid in host".into()));
        }
        let verts: Vec<VertexId> = sub.vertices.iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            new_id[v] = i;
        }
        let rot = self.sub_rotation(sub);
        let nbr_rot: Vec<Vec<VertexId>> = verts
            .iter()
            .map(|&v| rot[v].iter().map(|&d| new_id[self.dart_target(d)]).collect())
            .collect();
        let outer = match self.region_boundary_dart(sub, self.outer_face) {
            Some(d) => {
                let v = self.dart_origin[d];
                let pos = rot[v].iter().position(|&x| x == d).unwrap();
                OuterSpec::Corner {
                    vertex: new_id[v],
                    pos,
                }
            }
            None => OuterSpec::First,
        };
        let graph = PlaneGraph::from_neighbor_rotation(&nbr_rot, outer)?;
        let mut edge_map = Vec::with_capacity(graph.num_edges());
        for e in 0..graph.num_edges() {
            let (u, v) = graph.ends(e);
            let host_e = self
                .edge_between(verts[u], verts[v])
                .expect("extracted edge exists in host");
            edge_map.push(host_e);
        }
        Ok(SubPiece {
            graph,
            vertex_map: verts,
            edge_map,
            mask: sub.clone(),
        })
    }

    // --- edge separations ---

    /// If edge `e` together with its ends separates the graph into two proper
    /// sides sharing exactly `e`, return the two sides (each with its
    /// inherited embedding); otherwise `None`. When more than two components
    /// remain after removing the ends, the side containing the smallest
    /// vertex is split off and the rest stays together.
    pub fn split_along_edge(&self, e: EdgeId) -> Result<Option<(SubPiece, SubPiece)>> {
        if e >= self.num_edges() {
            return Err(CfError::Argument(format!("edge {e} out of range")));
        }
        let (u, v) = self.ends(e);
        let mut alive = BitSet::full(self.n);
        alive.remove(u);
        alive.remove(v);
        let comps = components_within(self, &alive);
        if comps.len() < 2 {
            return Ok(None);
        }
        let mut side1_verts = comps[0].clone();
        side1_verts.insert(u);
        side1_verts.insert(v);
        let mut side2_verts = BitSet::with_capacity(self.n);
        for comp in &comps[1..] {
            side2_verts.union_with(comp);
        }
        side2_verts.insert(u);
        side2_verts.insert(v);
        let side1 = SubgraphRef::induced(self, side1_verts);
        let side2 = SubgraphRef::induced(self, side2_verts);
        Ok(Some((self.extract(&side1)?, self.extract(&side2)?)))
    }
}

/// Connected components among `alive` vertices using only the given edges.
pub fn components_within_edges_of(g: &PlaneGraph, edges: &BitSet, alive: &BitSet) -> Vec<BitSet> {
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); g.num_vertices()];
    for e in edges.iter() {
        let (u, v) = g.ends(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = BitSet::with_capacity(g.num_vertices());
    let mut comps = Vec::new();
    for s in alive.iter() {
        if seen.contains(s) {
            continue;
        }
        let mut comp = BitSet::with_capacity(g.num_vertices());
        let mut stack = vec![s];
        seen.insert(s);
        comp.insert(s);
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if alive.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    comp.insert(y);
                    stack.push(y);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Connected components among `alive` vertices (edges with both ends alive).
pub fn components_within(g: &PlaneGraph, alive: &BitSet) -> Vec<BitSet> {
    let mut seen = BitSet::with_capacity(g.num_vertices());
    let mut comps = Vec::new();
    for s in alive.iter() {
        if seen.contains(s) {
            continue;
        }
        let mut comp = BitSet::with_capacity(g.num_vertices());
        let mut stack = vec![s];
        seen.insert(s);
        comp.insert(s);
        while let Some(x) = stack.pop() {
            for y in g.neighbors(x) {
                if alive.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    comp.insert(y);
                    stack.push(y);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// A materialized sub-embedding together with its maps into the host.
#[derive(Clone, Debug)]
pub struct SubPiece {
    pub graph: PlaneGraph,
    /// piece vertex -> host vertex
    pub vertex_map: Vec<VertexId>,
    /// piece edge -> host edge
    pub edge_map: Vec<EdgeId>,
    pub mask: SubgraphRef,
}

impl std::fmt::Debug for PlaneGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PlaneGraph(n={}, m={}, faces={}, outer={})",
            self.n,
            self.num_edges(),
            self.faces.len(),
            self.outer_face
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> PlaneGraph {
        PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1]],
            OuterSpec::First,
        )
        .unwrap()
    }

    #[test]
    fn triangle_has_two_faces_of_length_three() {
        let g = triangle();
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.walk_len() == 3));
        // Euler: 3 - 3 + 2 = 2.
        assert_eq!(g.num_vertices() + g.faces().len(), g.num_edges() + 2);
    }

    #[test]
    fn single_edge_has_one_face_walking_it_twice() {
        let g = PlaneGraph::from_neighbor_rotation(&[vec![1], vec![0]], OuterSpec::First).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces()[0].walk_len(), 2);
        assert_eq!(dart_edge(g.faces()[0].boundary_walk[0]), 0);
        assert_eq!(dart_edge(g.faces()[0].boundary_walk[1]), 0);
    }

    // Hand-derived orbit count for a planar K4: outer triangle 0,1,2 with 3
    // inside. Rotations chosen so all four faces are triangles.
    #[test]
    fn k4_planar_embedding_has_four_triangular_faces() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[
                vec![1, 3, 2],
                vec![2, 3, 0],
                vec![0, 3, 1],
                vec![0, 1, 2],
            ],
            OuterSpec::Walk(vec![0, 2, 1]),
        )
        .unwrap();
        assert_eq!(g.faces().len(), 4);
        assert!(g.faces().iter().all(|f| f.walk_len() == 3));
    }

    #[test]
    fn nonplanar_rotation_rejected() {
        // K5 has no genus-zero rotation system.
        let rot: Vec<Vec<usize>> = (0..5)
            .map(|u| (0..5).filter(|&v| v != u).collect())
            .collect();
        assert!(matches!(
            PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::First),
            Err(CfError::Embedding(_))
        ));
    }

    #[test]
    fn loops_and_parallel_edges_rejected() {
        assert!(PlaneGraph::from_neighbor_rotation(&[vec![0]], OuterSpec::First).is_err());
        assert!(
            PlaneGraph::from_neighbor_rotation(&[vec![1, 1], vec![0, 0]], OuterSpec::First)
                .is_err()
        );
    }

    #[test]
    fn distance_cases() {
        // path 0-1-2
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1], vec![0, 2], vec![1]],
            OuterSpec::First,
        )
        .unwrap();
        let s = |v: usize| BitSet::from_iter([v]);
        assert_eq!(g.distance(&s(1), &s(1)).unwrap(), Some(0));
        assert_eq!(g.distance(&s(0), &s(2)).unwrap(), Some(2));
        assert!(g.distance(&BitSet::new(), &s(0)).is_err());
        // two components -> infinity
        let h = PlaneGraph::from_neighbor_rotation(
            &[vec![1], vec![0], vec![3], vec![2]],
            OuterSpec::First,
        )
        .unwrap();
        assert_eq!(h.distance(&s(0), &s(3)).unwrap(), None);
    }

    #[test]
    fn distance_is_a_metric_on_sampled_triples() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[
                vec![1, 3, 2],
                vec![2, 3, 0],
                vec![0, 3, 1],
                vec![0, 1, 2],
            ],
            OuterSpec::First,
        )
        .unwrap();
        let s = |v: usize| BitSet::from_iter([v]);
        for a in 0..4 {
            for b in 0..4 {
                let dab = g.distance(&s(a), &s(b)).unwrap().unwrap();
                let dba = g.distance(&s(b), &s(a)).unwrap().unwrap();
                assert_eq!(dab, dba);
                for c in 0..4 {
                    let dac = g.distance(&s(a), &s(c)).unwrap().unwrap();
                    let dcb = g.distance(&s(c), &s(b)).unwrap().unwrap();
                    assert!(dab <= dac + dcb);
                }
            }
        }
    }

    #[test]
    fn chords_of_square_with_diagonal() {
        // 4-cycle 0-1-2-3 plus diagonal 0-2, drawn inside.
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]],
            OuterSpec::Walk(vec![0, 3, 2, 1]),
        )
        .unwrap();
        let outer = g.outer_face_id();
        let chords = g.chords_of_face(outer);
        assert_eq!(chords.len(), 1);
        let (u, v) = g.ends(chords[0]);
        assert_eq!((u.min(v), u.max(v)), (0, 2));
    }

    #[test]
    fn triangle_face_has_no_chords() {
        let g = triangle();
        assert!(g.chords_of_face(0).is_empty());
        assert!(g.chords_of_face(1).is_empty());
    }

    // Enumerate edges against the boundary vertex set by hand: spokes have an
    // end off the outer 5-cycle, so the outer face of a 5-wheel is chordless.
    #[test]
    fn wheel_outer_cycle_has_no_chords() {
        let g = crate::plane_graph::build::wheel(5).unwrap();
        let outer = g.outer_face_id();
        assert_eq!(g.face(outer).walk_len(), 5);
        assert!(g.chords_of_face(outer).is_empty());
    }

    #[test]
    fn split_two_triangles_sharing_an_edge() {
        // vertices 0,1 shared edge; 2 left apex, 3 right apex
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![2, 1, 3], vec![3, 0, 2], vec![1, 0], vec![0, 1]],
            OuterSpec::Walk(vec![0, 2, 1, 3]),
        )
        .unwrap();
        let e = g.edge_between(0, 1).unwrap();
        let (a, b) = g.split_along_edge(e).unwrap().expect("separating edge");
        assert_eq!(a.graph.num_vertices(), 3);
        assert_eq!(b.graph.num_vertices(), 3);
        assert_eq!(a.graph.num_edges(), 3);
        assert_eq!(b.graph.num_edges(), 3);
        // Union/intersection invariants.
        let mut union = a.mask.vertices.clone();
        union.union_with(&b.mask.vertices);
        assert_eq!(union.len(), g.num_vertices());
        let mut inter = a.mask.vertices.clone();
        inter.intersect_with(&b.mask.vertices);
        assert_eq!(inter.iter().collect::<Vec<_>>(), vec![0, 1]);
        for edge in 0..g.num_edges() {
            let in_a = a.mask.edges.contains(edge);
            let in_b = b.mask.edges.contains(edge);
            if edge == e {
                assert!(in_a && in_b);
            } else {
                assert!(in_a ^ in_b);
            }
        }
    }

    #[test]
    fn split_outer_edge_of_triangle_is_none() {
        let g = triangle();
        for e in 0..3 {
            assert!(g.split_along_edge(e).unwrap().is_none());
        }
    }

    // Brute-force check over all separations: two 4-cycles glued along an
    // edge split exactly at that edge.
    #[test]
    fn split_glued_squares() {
        // shared edge 0-1; left square 0-2-3-1; right square 0-4-5-1
        let g = PlaneGraph::from_neighbor_rotation(
            &[
                vec![2, 1, 4],
                vec![5, 0, 3],
                vec![3, 0],
                vec![1, 2],
                vec![0, 5],
                vec![4, 1],
            ],
            OuterSpec::Walk(vec![0, 2, 3, 1, 5, 4]),
        )
        .unwrap();
        for e in 0..g.num_edges() {
            let res = g.split_along_edge(e).unwrap();
            let (u, v) = g.ends(e);
            if (u.min(v), u.max(v)) == (0, 1) {
                let (a, b) = res.expect("glue edge separates");
                assert_eq!(a.graph.num_vertices(), 4);
                assert_eq!(b.graph.num_vertices(), 4);
                assert_eq!(a.graph.num_edges(), 4);
                assert_eq!(b.graph.num_edges(), 4);
            } else {
                assert!(res.is_none(), "edge {e} should not separate");
            }
        }
    }

    #[test]
    fn extract_keeps_outer_region() {
        // Triangle 0,1,2 with pendant 3 on vertex 0; drop the pendant.
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 3, 2], vec![2, 0], vec![0, 1], vec![0]],
            OuterSpec::Walk(vec![0, 3, 0, 2, 1]),
        )
        .unwrap();
        assert_eq!(g.outer_face().walk_len(), 5);
        let sub = SubgraphRef::induced(&g, BitSet::from_iter([0, 1, 2]));
        let piece = g.extract(&sub).unwrap();
        assert_eq!(piece.graph.num_vertices(), 3);
        // The inherited outer face is the one that absorbed the pendant, the
        // triangle side whose walk visits 0,2,1.
        let walk: Vec<_> = piece
            .graph
            .outer_face()
            .boundary_walk
            .iter()
            .map(|&d| piece.graph.dart_origin(d))
            .collect();
        assert_eq!(walk.len(), 3);
        let mut w = walk.clone();
        w.sort_unstable();
        assert_eq!(w, vec![0, 1, 2]);
        // orientation check: outer is the face 0->2->1, not 0->1->2
        let shift = walk.iter().position(|&v| v == 0).unwrap();
        assert_eq!(walk[(shift + 1) % 3], 2);
    }
}
