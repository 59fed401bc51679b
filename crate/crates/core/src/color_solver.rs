//! Coloring engines: an exhaustive backtracking oracle, extension tests, the
//! constructive recursion for path-canvases, and the desk-scale solver for
//! many-restricted-sets instances.

use crate::canvas::{validate_canvas, Canvas, ListAssignment, MainInstance};
use crate::colors::{Color, ColorSet};
use crate::plane_graph::{dart_edge, twin, Dart, PlaneGraph, SubgraphRef, VertexId};
use crate::{BitSet, CfError, Result};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};

/// A partial or total assignment of colors to vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    assignment: Vec<Option<Color>>,
}

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring {
            assignment: vec![None; n],
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.assignment[v]
    }

    pub fn set(&mut self, v: VertexId, c: Color) {
        self.assignment[v] = Some(c);
    }

    pub fn clear(&mut self, v: VertexId) {
        self.assignment[v] = None;
    }

    pub fn assigned(&self) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// Proper on the live edges (both ends assigned) and within lists on
    /// every assigned vertex.
    pub fn is_valid_within(&self, g: &PlaneGraph, live: &SubgraphRef, lists: &ListAssignment) -> bool {
        for (v, c) in self.assigned() {
            if !lists.get(v).contains(c) {
                return false;
            }
        }
        for e in live.edges.iter() {
            let (u, v) = g.ends(e);
            if let (Some(a), Some(b)) = (self.assignment[u], self.assignment[v]) {
                if a == b {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_total_on(&self, vertices: &BitSet) -> bool {
        vertices.iter().all(|v| self.assignment[v].is_some())
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (v, c) in self.assigned() {
            map.serialize_entry(&v.to_string(), &c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = std::collections::BTreeMap::<String, Color>::deserialize(d)?;
        let n = raw.keys().map(|k| k.parse::<usize>().unwrap_or(0) + 1).max().unwrap_or(0);
        let mut c = Coloring::empty(n);
        for (k, col) in raw {
            let v: usize = k.parse().map_err(D::Error::custom)?;
            c.set(v, col);
        }
        Ok(c)
    }
}

/// Backtracking over the live vertices: smallest remaining list first, ties
/// by vertex index, colors ascending. Extends `fixed` in place of starting
/// fresh; returns a coloring total on the live vertices or `None`.
fn search(
    g: &PlaneGraph,
    live: &SubgraphRef,
    lists: &ListAssignment,
    fixed: &Coloring,
) -> Option<Coloring> {
    let n = g.num_vertices();
    let mut coloring = fixed.clone();
    // Remaining options per live vertex.
    let mut remaining: Vec<ColorSet> = (0..n).map(|v| lists.get(v)).collect();
    for (v, c) in fixed.assigned() {
        if !live.vertices.contains(v) {
            continue;
        }
        remaining[v] = ColorSet::single(c);
    }
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in live.edges.iter() {
        let (u, v) = g.ends(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    for (v, c) in fixed.assigned() {
        if !live.vertices.contains(v) {
            continue;
        }
        for &w in &adj[v] {
            if coloring.get(w).is_none() {
                remaining[w].remove(c);
            }
        }
    }
    fn go(
        live: &BitSet,
        adj: &[Vec<VertexId>],
        remaining: &mut [ColorSet],
        coloring: &mut Coloring,
    ) -> bool {
        let pick = live
            .iter()
            .filter(|&v| coloring.get(v).is_none())
            .min_by_key(|&v| (remaining[v].len(), v));
        let Some(v) = pick else { return true };
        let options = remaining[v];
        for c in options.iter() {
            coloring.set(v, c);
            let mut touched = Vec::new();
            for &w in &adj[v] {
                if coloring.get(w).is_none() && remaining[w].contains(c) {
                    remaining[w].remove(c);
                    touched.push(w);
                }
            }
            if touched.iter().all(|&w| !remaining[w].is_empty())
                && go(live, adj, remaining, coloring)
            {
                return true;
            }
            coloring.clear(v);
            for w in touched {
                remaining[w].insert(c);
            }
        }
        false
    }
    if go(&live.vertices, &adj, &mut remaining, &mut coloring) {
        Some(coloring)
    } else {
        None
    }
}

/// A proper list coloring of just the subgraph `sub` (its vertices, proper
/// on its edges), or `None`.
pub fn color_subgraph(g: &PlaneGraph, sub: &SubgraphRef, lists: &ListAssignment) -> Option<Coloring> {
    search(g, sub, lists, &Coloring::empty(g.num_vertices()))
}

/// Extend `fixed` to a total proper list coloring of the live subgraph.
pub fn solve_exhaustive_within(
    g: &PlaneGraph,
    live: &SubgraphRef,
    lists: &ListAssignment,
    fixed: &Coloring,
) -> Result<Option<Coloring>> {
    if !fixed.is_valid_within(g, live, lists) {
        return Err(CfError::Argument(
            "fixed coloring violates properness or lists".into(),
        ));
    }
    Ok(search(g, live, lists, fixed))
}

/// Extend `fixed` to a total proper list coloring of `g` if one exists.
pub fn solve_exhaustive(
    g: &PlaneGraph,
    lists: &ListAssignment,
    fixed: &Coloring,
) -> Result<Option<Coloring>> {
    solve_exhaustive_within(g, &SubgraphRef::full(g), lists, fixed)
}

/// Does `phi` (total and proper on the subgraph `t`) extend to a total
/// proper list coloring of the live graph?
pub fn extends_within(
    g: &PlaneGraph,
    live: &SubgraphRef,
    lists: &ListAssignment,
    t: &SubgraphRef,
    phi: &Coloring,
) -> Result<bool> {
    if !t.vertices.iter().all(|v| phi.get(v).is_some()) {
        return Err(CfError::Argument("coloring not total on the subgraph".into()));
    }
    for v in t.vertices.iter() {
        if !lists.get(v).contains(phi.get(v).unwrap()) {
            return Err(CfError::Argument("coloring leaves the lists".into()));
        }
    }
    for e in t.edges.iter() {
        let (u, v) = g.ends(e);
        if phi.get(u) == phi.get(v) {
            return Err(CfError::Argument("coloring improper on the subgraph".into()));
        }
    }
    // Conflicts on live edges inside the subgraph's vertex set are not an
    // argument error; they just mean no extension agrees with phi.
    let mut fixed = Coloring::empty(g.num_vertices());
    for v in t.vertices.iter() {
        fixed.set(v, phi.get(v).unwrap());
    }
    if !fixed.is_valid_within(g, live, lists) {
        return Ok(false);
    }
    Ok(search(g, live, lists, &fixed).is_some())
}

pub fn extends(
    g: &PlaneGraph,
    lists: &ListAssignment,
    t: &SubgraphRef,
    phi: &Coloring,
) -> Result<bool> {
    extends_within(g, &SubgraphRef::full(g), lists, t, phi)
}

/// Desk-scale solver for a verified many-restricted-sets instance.
pub fn solve_main(inst: &MainInstance) -> Result<Option<Coloring>> {
    solve_exhaustive(&inst.graph, &inst.lists, &Coloring::empty(inst.graph.num_vertices()))
}

// ---------------------------------------------------------------------------
// Constructive recursion for path-canvases.
// ---------------------------------------------------------------------------

/// Solve a path-canvas constructively: scaffold a path of at most two
/// vertices on the outer walk, lists of size >= 3 on the outer walk and
/// >= 5 inside. Succeeds on every valid input; an internal failure is a bug
/// and is surfaced with the instance serialized.
pub fn solve_thomassen(c: &Canvas) -> Result<Coloring> {
    let report = validate_canvas(c);
    if !report.is_valid() {
        return Err(CfError::Argument(format!(
            "invalid canvas: {:?}",
            report.violations
        )));
    }
    let path = c.scaffold_path().ok_or_else(|| {
        CfError::Argument("scaffold is not a path".into())
    })?;
    if path.len() > 2 {
        return Err(CfError::Argument("scaffold path longer than two vertices".into()));
    }
    if path.len() == 2 && c.graph.edge_between(path[0], path[1]).is_none() {
        return Err(CfError::Argument("scaffold path not an edge".into()));
    }
    let g = &c.graph;
    let mut coloring = Coloring::empty(g.num_vertices());
    // Witness colors for the scaffold path (lex-least proper choice).
    match path.as_slice() {
        [] => {}
        [v] => coloring.set(*v, c.lists.get(*v).smallest().unwrap()),
        [u, v] => {
            let mut done = false;
            for cu in c.lists.get(*u).iter() {
                if let Some(cv) = c.lists.get(*v).minus(ColorSet::single(cu)).smallest() {
                    coloring.set(*u, cu);
                    coloring.set(*v, cv);
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(CfError::Argument("scaffold path has no proper coloring".into()));
            }
        }
        _ => unreachable!(),
    }
    let mut lists: Vec<ColorSet> = (0..g.num_vertices()).map(|v| c.lists.get(v)).collect();
    let live = SubgraphRef::full(g);
    let outer_dart = g.outer_face().boundary_walk.first().copied();
    let mut rec = Rec { g, coloring };
    rec.solve(live, outer_dart, &mut lists, path.clone())
        .map_err(|e| bug_with_instance(c, e))?;
    let out = rec.coloring;
    debug_assert!(out.is_total_on(&SubgraphRef::full(g).vertices));
    debug_assert!(out.is_valid_within(g, &SubgraphRef::full(g), &c.lists));
    Ok(out)
}

fn bug_with_instance(c: &Canvas, msg: String) -> CfError {
    let graph = crate::plane_graph::to_json(&c.graph);
    let payload = serde_json::json!({
        "graph": graph,
        "lists": c.lists,
        "scaffold_vertices": c.scaffold.vertices.iter().collect::<Vec<_>>(),
        "scaffold_edges": c.scaffold.edges.iter().collect::<Vec<_>>(),
    });
    CfError::Internal(format!("{msg}; instance: {payload}"))
}

struct Rec<'g> {
    g: &'g PlaneGraph,
    coloring: Coloring,
}

type Step = std::result::Result<(), String>;

impl<'g> Rec<'g> {
    /// Color every live vertex. `p` holds the precolored path (<= 2 vertices,
    /// already colored, lying on the live outer walk).
    fn solve(
        &mut self,
        live: SubgraphRef,
        outer_dart: Option<Dart>,
        lists: &mut [ColorSet],
        mut p: Vec<VertexId>,
    ) -> Step {
        let vcount = live.vertices.len();
        if vcount == 0 {
            return Ok(());
        }
        if vcount == 1 {
            let v = live.vertices.iter().next().unwrap();
            if self.coloring.get(v).is_none() {
                self.coloring.set(v, lists[v].smallest().ok_or("empty list")?);
            }
            return Ok(());
        }
        let Some(outer_dart) = outer_dart else {
            return Err("no outer dart on a multi-vertex live graph".into());
        };
        if p.is_empty() {
            let walk = self.outer_walk(&live, outer_dart);
            let v = *walk.iter().min().ok_or("empty outer walk")?;
            self.coloring.set(v, lists[v].smallest().ok_or("empty list")?);
            p.push(v);
        }
        // Work block by block when a cutvertex separates the live graph.
        let blocks = blocks_within(self.g, &live);
        if blocks.len() > 1 {
            return self.solve_blocks(&live, outer_dart, lists, &p, &blocks);
        }
        self.solve_biconnected(&live, outer_dart, lists, p)
    }

    fn outer_walk(&self, live: &SubgraphRef, outer_dart: Dart) -> Vec<VertexId> {
        walk_of(self.g, live, outer_dart)
            .into_iter()
            .map(|d| self.g.dart_origin(d))
            .collect()
    }

    fn solve_blocks(
        &mut self,
        live: &SubgraphRef,
        outer_dart: Dart,
        lists: &mut [ColorSet],
        p: &[VertexId],
        blocks: &[SubgraphRef],
    ) -> Step {
        // Root blocks: those containing all of p.
        let mut order: Vec<usize> = Vec::new();
        let mut queued = vec![false; blocks.len()];
        for (i, b) in blocks.iter().enumerate() {
            if p.iter().all(|&v| b.vertices.contains(v)) {
                order.push(i);
                queued[i] = true;
            }
        }
        if order.is_empty() {
            // p is a single vertex on several blocks (a cutvertex) or an edge
            // inside exactly one block; the loop above must have found one.
            return Err("no block contains the precolored path".into());
        }
        let mut head = 0;
        while head < order.len() {
            let i = order[head];
            head += 1;
            for (j, b) in blocks.iter().enumerate() {
                if !queued[j] && b.vertices.intersects(&blocks[i].vertices) {
                    queued[j] = true;
                    order.push(j);
                }
            }
        }
        if order.len() != blocks.len() {
            return Err("block tree not connected".into());
        }
        for &i in &order {
            let b = &blocks[i];
            let anchors: Vec<VertexId> = b
                .vertices
                .iter()
                .filter(|&v| self.coloring.get(v).is_some())
                .collect();
            let sub_p: Vec<VertexId> = if p.len() == 2 && p.iter().all(|&v| b.vertices.contains(v)) {
                p.to_vec()
            } else {
                match anchors.len() {
                    0 => Vec::new(),
                    1 => anchors.clone(),
                    _ => {
                        // Two colored vertices can only be the original path.
                        anchors.clone()
                    }
                }
            };
            let block_outer = next_outer_dart(self.g, live, outer_dart, b)
                .ok_or("block lost the outer region")?;
            self.solve(b.clone(), Some(block_outer), lists, sub_p)?;
        }
        Ok(())
    }

    fn solve_biconnected(
        &mut self,
        live: &SubgraphRef,
        outer_dart: Dart,
        lists: &mut [ColorSet],
        mut p: Vec<VertexId>,
    ) -> Step {
        let walk_darts = walk_of(self.g, live, outer_dart);
        let cycle: Vec<VertexId> = walk_darts.iter().map(|&d| self.g.dart_origin(d)).collect();
        // Extend a single precolored vertex to a precolored outer edge.
        if p.len() == 1 {
            let p0 = p[0];
            let idx = cycle
                .iter()
                .position(|&v| v == p0)
                .ok_or("precolored vertex off the outer walk")?;
            let a = cycle[(idx + 1) % cycle.len()];
            let b = cycle[(idx + cycle.len() - 1) % cycle.len()];
            let q = a.min(b);
            let c0 = self.coloring.get(p0).unwrap();
            let cq = lists[q]
                .minus(ColorSet::single(c0))
                .smallest()
                .ok_or("no color for the path extension")?;
            self.coloring.set(q, cq);
            p.push(q);
        }
        let (p0, p1) = (p[0], p[1]);
        if live.vertices.len() == 2 {
            return Ok(());
        }
        // Chord?
        let on_cycle = BitSet::from_iter(cycle.iter().copied());
        let mut cycle_edges = BitSet::new();
        for &d in &walk_darts {
            cycle_edges.insert(dart_edge(d));
        }
        let chord = live
            .edges
            .iter()
            .find(|&e| {
                let (u, v) = self.g.ends(e);
                !cycle_edges.contains(e) && on_cycle.contains(u) && on_cycle.contains(v)
            });
        if let Some(chord) = chord {
            return self.split_at_chord(live, outer_dart, lists, &p, &walk_darts, chord);
        }
        // No chord: delete the outer neighbor of p0 that is not on the path.
        let idx = cycle.iter().position(|&v| v == p0).ok_or("path off walk")?;
        let before = cycle[(idx + cycle.len() - 1) % cycle.len()];
        let after = cycle[(idx + 1) % cycle.len()];
        let v = if before == p1 { after } else { before };
        if v == p1 {
            return Err("outer cycle too small for deletion step".into());
        }
        let c_p0 = self.coloring.get(p0).unwrap();
        let reserve: Vec<Color> = lists[v]
            .minus(ColorSet::single(c_p0))
            .iter()
            .take(2)
            .collect();
        if reserve.len() < 2 {
            return Err(format!("fewer than two reserve colors at vertex {v}"));
        }
        let (c1, c2) = (reserve[0], reserve[1]);
        // v's neighbors along the cycle keep their lists; interior neighbors
        // lose the two reserved colors as they join the boundary.
        let vi = cycle.iter().position(|&x| x == v).unwrap();
        let u_prev = cycle[(vi + cycle.len() - 1) % cycle.len()];
        let u_next = cycle[(vi + 1) % cycle.len()];
        let other_cycle_neighbor = if u_prev == p0 { u_next } else { u_prev };
        let mut next_live = live.clone();
        next_live.vertices.remove(v);
        for d in self.g.rotation_at(v) {
            let e = dart_edge(*d);
            if live.edges.contains(e) {
                next_live.edges.remove(e);
                let w = self.g.dart_target(*d);
                if w != p0 && w != other_cycle_neighbor {
                    if on_cycle.contains(w) {
                        return Err("unexpected chord via deleted vertex".into());
                    }
                    let shrunk = lists[w].minus(ColorSet::from_colors([c1, c2]));
                    if shrunk.is_empty() {
                        return Err("interior list exhausted by reservation".into());
                    }
                    lists[w] = shrunk;
                }
            }
        }
        let new_outer = next_outer_dart(self.g, live, outer_dart, &next_live)
            .ok_or("deletion lost the outer region")?;
        self.solve(next_live, Some(new_outer), lists, p)?;
        let cu = self
            .coloring
            .get(other_cycle_neighbor)
            .ok_or("cycle neighbor left uncolored")?;
        let choice = if c1 != cu { c1 } else { c2 };
        if choice == cu {
            return Err("reserved colors clash with the cycle neighbor".into());
        }
        self.coloring.set(v, choice);
        Ok(())
    }

    fn split_at_chord(
        &mut self,
        live: &SubgraphRef,
        outer_dart: Dart,
        lists: &mut [ColorSet],
        p: &[VertexId],
        walk_darts: &[Dart],
        chord: usize,
    ) -> Step {
        let g = self.g;
        let (cu, cv) = g.ends(chord);
        // Split the outer cycle at the chord ends into two arcs of darts.
        let cycle: Vec<VertexId> = walk_darts.iter().map(|&d| g.dart_origin(d)).collect();
        let iu = cycle.iter().position(|&x| x == cu).ok_or("chord end off walk")?;
        let iv = cycle.iter().position(|&x| x == cv).ok_or("chord end off walk")?;
        let len = cycle.len();
        let (start, end) = (iu.min(iv), iu.max(iv));
        let arc1: Vec<Dart> = (start..end).map(|i| walk_darts[i]).collect();
        let arc2: Vec<Dart> = (end..end + len - (end - start))
            .map(|i| walk_darts[i % len])
            .collect();
        // Which arc carries the precolored edge?
        let p_edge = g.edge_between(p[0], p[1]).ok_or("path is not an edge")?;
        let arc_has = |arc: &[Dart]| arc.iter().any(|&d| dart_edge(d) == p_edge);
        let (arc_p, _arc_q) = if arc_has(&arc1) {
            (&arc1, &arc2)
        } else if arc_has(&arc2) {
            (&arc2, &arc1)
        } else {
            return Err("precolored edge missing from both arcs".into());
        };
        // Faces of the live map; flood the side of the path arc.
        let (walks, face_of) = g.sub_faces(live);
        let outer_face = face_of[outer_dart];
        let mut z_edges = BitSet::new();
        for &d in arc_p {
            z_edges.insert(dart_edge(d));
        }
        z_edges.insert(chord);
        let seeds: Vec<usize> = arc_p
            .iter()
            .map(|&d| {
                let inner = twin(d);
                face_of[inner]
            })
            .collect();
        debug_assert!(seeds.iter().all(|&f| f != outer_face));
        let mut reached = BitSet::with_capacity(walks.len());
        let mut queue: Vec<usize> = Vec::new();
        for f in seeds {
            if !reached.contains(f) {
                reached.insert(f);
                queue.push(f);
            }
        }
        while let Some(f) = queue.pop() {
            for &d in &walks[f] {
                let e = dart_edge(d);
                if z_edges.contains(e) {
                    continue;
                }
                let nf = face_of[twin(d)];
                if !reached.contains(nf) {
                    reached.insert(nf);
                    queue.push(nf);
                }
            }
        }
        // Side of the path: edges with a dart in a reached face.
        let mut side1_edges = BitSet::new();
        for f in reached.iter() {
            for &d in &walks[f] {
                side1_edges.insert(dart_edge(d));
            }
        }
        let mut side1_verts = BitSet::with_capacity(g.num_vertices());
        for e in side1_edges.iter() {
            let (a, b) = g.ends(e);
            side1_verts.insert(a);
            side1_verts.insert(b);
        }
        let side1 = SubgraphRef {
            vertices: side1_verts,
            edges: side1_edges,
        };
        let mut side2_edges = BitSet::new();
        for e in live.edges.iter() {
            if !side1.edges.contains(e) {
                side2_edges.insert(e);
            }
        }
        side2_edges.insert(chord);
        let mut side2_verts = BitSet::with_capacity(g.num_vertices());
        for e in side2_edges.iter() {
            let (a, b) = g.ends(e);
            side2_verts.insert(a);
            side2_verts.insert(b);
        }
        let side2 = SubgraphRef {
            vertices: side2_verts,
            edges: side2_edges,
        };
        let o1 = next_outer_dart(g, live, outer_dart, &side1).ok_or("side 1 lost outer")?;
        self.solve(side1, Some(o1), lists, p.to_vec())?;
        let o2 = next_outer_dart(g, live, outer_dart, &side2).ok_or("side 2 lost outer")?;
        let cu_col = self.coloring.get(cu).ok_or("chord end uncolored")?;
        let cv_col = self.coloring.get(cv).ok_or("chord end uncolored")?;
        if cu_col == cv_col {
            return Err("chord ends share a color after the first side".into());
        }
        self.solve(side2, Some(o2), lists, vec![cu, cv])?;
        Ok(())
    }
}

/// The dart walk of the face of `d` in the sub-embedding `live`.
pub fn walk_of(g: &PlaneGraph, live: &SubgraphRef, d0: Dart) -> Vec<Dart> {
    let rot = g.sub_rotation(live);
    let mut pos = vec![usize::MAX; g.num_darts()];
    for darts in &rot {
        for (i, &d) in darts.iter().enumerate() {
            pos[d] = i;
        }
    }
    let next = |d: Dart| -> Dart {
        let t = twin(d);
        let v = g.dart_origin(t);
        let r = &rot[v];
        r[(pos[t] + 1) % r.len()]
    };
    let mut walk = vec![d0];
    let mut d = next(d0);
    while d != d0 {
        walk.push(d);
        d = next(d);
    }
    walk
}

/// A live dart of `next` bounding the region (in the `cur` embedding) that
/// contains the face of `cur_outer`. Flooding crosses edges that die in the
/// step from `cur` to `next`.
pub fn next_outer_dart(
    g: &PlaneGraph,
    cur: &SubgraphRef,
    cur_outer: Dart,
    next: &SubgraphRef,
) -> Option<Dart> {
    let (walks, face_of) = g.sub_faces(cur);
    let start = face_of[cur_outer];
    let mut reached = BitSet::with_capacity(walks.len());
    let mut queue = std::collections::VecDeque::new();
    reached.insert(start);
    queue.push_back(start);
    while let Some(f) = queue.pop_front() {
        for &d in &walks[f] {
            let e = dart_edge(d);
            if next.edges.contains(e) {
                return Some(d);
            }
            let nf = face_of[twin(d)];
            if !reached.contains(nf) {
                reached.insert(nf);
                queue.push_back(nf);
            }
        }
    }
    None
}

/// Blocks (2-connected components and bridges) of the live graph, as
/// subgraph references. Isolated live vertices form singleton blocks.
pub fn blocks_within(g: &PlaneGraph, live: &SubgraphRef) -> Vec<SubgraphRef> {
    let n = g.num_vertices();
    let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for e in live.edges.iter() {
        let (u, v) = g.ends(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut num = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut counter = 0usize;
    let mut stack: Vec<usize> = Vec::new(); // edge stack
    let mut blocks: Vec<Vec<usize>> = Vec::new();

    // Iterative DFS to avoid recursion limits on long paths.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        root: usize,
        adj: &[Vec<(usize, usize)>],
        num: &mut [usize],
        low: &mut [usize],
        counter: &mut usize,
        stack: &mut Vec<usize>,
        blocks: &mut Vec<Vec<usize>>,
    ) {
        let mut call_stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        num[root] = *counter;
        low[root] = *counter;
        *counter += 1;
        while let Some(&mut (u, parent_edge, ref mut ci)) = call_stack.last_mut() {
            if *ci < adj[u].len() {
                let (v, e) = adj[u][*ci];
                *ci += 1;
                if Some(e) == parent_edge {
                    continue;
                }
                if num[v] == usize::MAX {
                    stack.push(e);
                    num[v] = *counter;
                    low[v] = *counter;
                    *counter += 1;
                    call_stack.push((v, Some(e), 0));
                } else if num[v] < num[u] {
                    stack.push(e);
                    low[u] = low[u].min(num[v]);
                }
            } else {
                call_stack.pop();
                if let Some(&mut (pu, _, _)) = call_stack.last_mut() {
                    low[pu] = low[pu].min(low[u]);
                    if low[u] >= num[pu] {
                        // pu is a cutvertex (or root); pop one block.
                        let pe = adj[pu]
                            .iter()
                            .find(|&&(w, _)| w == u)
                            .map(|&(_, e)| e);
                        let mut blk = Vec::new();
                        while let Some(&top) = stack.last() {
                            stack.pop();
                            blk.push(top);
                            if Some(top) == pe {
                                break;
                            }
                        }
                        if !blk.is_empty() {
                            blocks.push(blk);
                        }
                    }
                }
            }
        }
    }

    for s in live.vertices.iter() {
        if num[s] == usize::MAX {
            dfs(s, &adj, &mut num, &mut low, &mut counter, &mut stack, &mut blocks);
            if !stack.is_empty() {
                blocks.push(std::mem::take(&mut stack));
            }
        }
    }
    let mut out: Vec<SubgraphRef> = blocks
        .into_iter()
        .map(|edges| {
            let mut vs = BitSet::with_capacity(n);
            let mut es = BitSet::new();
            for e in edges {
                let (u, v) = g.ends(e);
                vs.insert(u);
                vs.insert(v);
                es.insert(e);
            }
            SubgraphRef {
                vertices: vs,
                edges: es,
            }
        })
        .collect();
    // Isolated live vertices.
    for v in live.vertices.iter() {
        if !out.iter().any(|b| b.vertices.contains(v)) {
            out.push(SubgraphRef::from_parts([v], []));
        }
    }
    out
}
