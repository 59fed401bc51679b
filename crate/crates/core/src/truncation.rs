//! Boundary structure: essential cutvertices, spans behind the outer walk,
//! superfluous vertices and the truncated graph, the containment of deep
//! vertices in the truncation, and neighborhood growth in critical graphs.

use crate::canvas::{validate_canvas, Canvas, ListAssignment};
use crate::criticality::is_t_critical;
use crate::plane_graph::{twin, Dart, PlaneGraph, SubgraphRef, VertexId};
use crate::{BitSet, CfError, Result};
use serde::{Deserialize, Serialize};

/// A three-vertex path with list-deficient ends, together with a boundary
/// detour whose interior avoids the scaffold and essential cutvertices, and
/// the vertex set it fences off.
#[derive(Clone, Debug)]
pub struct Span {
    pub path: [VertexId; 3],
    pub boundary_detour: Vec<VertexId>,
    pub exterior: BitSet,
}

#[derive(Clone, Debug)]
pub struct TruncationResult {
    pub essential_cutvertices: BitSet,
    pub spans: Vec<Span>,
    pub superfluous: BitSet,
    pub g_star: SubgraphRef,
    /// Outer walk of the truncated graph (empty when it has no edges).
    pub c_star: Vec<VertexId>,
}

/// Cutvertices whose every split leaves scaffold vertices on both sides:
/// equivalently, every component of `G - v` meets the scaffold.
pub fn essential_cutvertices(g: &PlaneGraph, scaffold: &SubgraphRef) -> BitSet {
    let mut out = BitSet::with_capacity(g.num_vertices());
    for v in 0..g.num_vertices() {
        let mut alive = BitSet::full(g.num_vertices());
        alive.remove(v);
        let comps = crate::plane_graph::components_within(g, &alive);
        if comps.len() < 2 {
            continue; // not a cutvertex
        }
        if comps.iter().all(|c| c.intersects(&scaffold.vertices)) {
            out.insert(v);
        }
    }
    out
}

pub fn truncate(c: &Canvas) -> Result<TruncationResult> {
    let report = validate_canvas(c);
    if !report.is_valid() {
        return Err(CfError::Argument(format!(
            "not a valid canvas: {:?}",
            report.violations
        )));
    }
    let g = &c.graph;
    let essential = essential_cutvertices(g, &c.scaffold);
    let outer_walk: Vec<Dart> = g.outer_face().boundary_walk.clone();
    let walk_verts: Vec<VertexId> = outer_walk.iter().map(|&d| g.dart_origin(d)).collect();

    let mut spans = Vec::new();
    // Candidate three-vertex paths with both ends list-deficient.
    for w in 0..g.num_vertices() {
        let nbrs: Vec<VertexId> = g.neighbors(w).collect();
        for (i, &u) in nbrs.iter().enumerate() {
            for &x in nbrs.iter().skip(i + 1) {
                if u == x || c.lists.get(u).len() >= 5 || c.lists.get(x).len() >= 5 {
                    continue;
                }
                let (u, x) = (u.min(x), u.max(x));
                for detour in boundary_detours(g, &outer_walk, &walk_verts, u, x) {
                    let interior_ok = detour[1..detour.len() - 1].iter().all(|&m| {
                        !c.scaffold.vertices.contains(m) && !essential.contains(m)
                    });
                    if !interior_ok {
                        continue;
                    }
                    if let Some(ext) = span_exterior(g, c, u, w, x, &detour) {
                        spans.push(Span {
                            path: [u, w, x],
                            boundary_detour: detour,
                            exterior: ext,
                        });
                    }
                }
            }
        }
    }

    let mut superfluous = BitSet::with_capacity(g.num_vertices());
    for s in &spans {
        superfluous.union_with(&s.exterior);
    }
    superfluous.difference_with(&c.scaffold.vertices);
    let mut substantial = BitSet::full(g.num_vertices());
    substantial.difference_with(&superfluous);
    let g_star = SubgraphRef::induced(g, substantial);
    let c_star = match g.region_boundary_dart(&g_star, g.outer_face_id()) {
        Some(d) => crate::color_solver::walk_of(g, &g_star, d)
            .into_iter()
            .map(|d| g.dart_origin(d))
            .collect(),
        None => Vec::new(),
    };
    Ok(TruncationResult {
        essential_cutvertices: essential,
        spans,
        superfluous,
        g_star,
        c_star,
    })
}

/// Simple boundary paths from `u` to `x` along the outer walk.
fn boundary_detours(
    g: &PlaneGraph,
    outer_walk: &[Dart],
    walk_verts: &[VertexId],
    u: VertexId,
    x: VertexId,
) -> Vec<Vec<VertexId>> {
    let len = outer_walk.len();
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    let mut seen_paths = std::collections::HashSet::new();
    for start in 0..len {
        if walk_verts[start] != u && walk_verts[start] != x {
            continue;
        }
        let target = if walk_verts[start] == u { x } else { u };
        let mut path = vec![walk_verts[start]];
        let mut used = BitSet::with_capacity(g.num_vertices());
        used.insert(walk_verts[start]);
        for step in 0..len {
            let v = g.dart_target(outer_walk[(start + step) % len]);
            if used.contains(v) {
                break; // not a simple path
            }
            used.insert(v);
            path.push(v);
            if v == target {
                let mut canon = path.clone();
                if canon[0] > *canon.last().unwrap() {
                    canon.reverse();
                }
                if seen_paths.insert(canon.clone()) {
                    out.push(canon);
                }
                break;
            }
        }
    }
    out
}

/// The vertex set fenced off by the path and its detour: the detour interior
/// plus everything strictly inside the enclosed region. `None` when the
/// configuration does not bound a scaffold-free region.
fn span_exterior(
    g: &PlaneGraph,
    c: &Canvas,
    u: VertexId,
    w: VertexId,
    x: VertexId,
    detour: &[VertexId],
) -> Option<BitSet> {
    let mut ext = BitSet::with_capacity(g.num_vertices());
    // Detour identical to the path: nothing is enclosed, only w hides.
    let along_path = detour.len() == 3 && detour[1] == w;
    if along_path {
        ext.insert(w);
        return Some(ext);
    }
    if detour[1..detour.len() - 1].contains(&w) {
        // The path vertex sits on the detour interior; the curve degenerates
        // and encloses nothing on its own.
        return None;
    }
    for &m in &detour[1..detour.len() - 1] {
        ext.insert(m);
    }
    // Closed curve: detour from u to x, then x-w and w-u.
    let mut cycle_edges = BitSet::new();
    for pair in detour.windows(2) {
        cycle_edges.insert(g.edge_between(pair[0], pair[1])?);
    }
    cycle_edges.insert(g.edge_between(x, w)?);
    cycle_edges.insert(g.edge_between(w, u)?);
    // Walk the curve as darts, oriented u -> x along the detour, then back
    // through w; the enclosed side is the twin side of these darts.
    let mut curve_darts: Vec<Dart> = Vec::new();
    let mut dir = Vec::new();
    let (du, dx) = (detour[0], *detour.last().unwrap());
    let ordered: Vec<VertexId> = if du == u {
        detour.to_vec()
    } else {
        debug_assert_eq!(dx, u);
        detour.iter().rev().copied().collect()
    };
    dir.extend(ordered.windows(2).map(|p| (p[0], p[1])));
    dir.push((x, w));
    dir.push((w, u));
    for (a, b) in dir {
        let e = g.edge_between(a, b)?;
        let d = if g.dart_origin(2 * e) == a { 2 * e } else { 2 * e + 1 };
        curve_darts.push(d);
    }
    let inside = g.face_region(
        curve_darts.iter().map(|&d| g.face_of_dart(twin(d))),
        |e| !cycle_edges.contains(e),
    );
    if inside.contains(g.outer_face_id()) {
        // The twin side spilled into the outer region: the curve is oriented
        // the other way around; take the dart side instead.
        let other = g.face_region(
            curve_darts.iter().map(|&d| g.face_of_dart(d)),
            |e| !cycle_edges.contains(e),
        );
        if other.contains(g.outer_face_id()) {
            return None;
        }
        collect_strict_interior(g, &other, &cycle_edges, &mut ext);
    } else {
        collect_strict_interior(g, &inside, &cycle_edges, &mut ext);
    }
    // A valid exterior leaves the scaffold outside the fenced region.
    let mut fenced = ext.clone();
    fenced.remove(u);
    fenced.remove(x);
    fenced.remove(w);
    if fenced.intersects(&c.scaffold.vertices) {
        return None;
    }
    Some(ext)
}

fn collect_strict_interior(
    g: &PlaneGraph,
    faces: &BitSet,
    cycle_edges: &BitSet,
    ext: &mut BitSet,
) {
    let mut on_cycle = BitSet::with_capacity(g.num_vertices());
    for e in cycle_edges.iter() {
        let (a, b) = g.ends(e);
        on_cycle.insert(a);
        on_cycle.insert(b);
    }
    for f in faces.iter() {
        for v in g.face(f).boundary_graph.vertices.iter() {
            if !on_cycle.contains(v) {
                ext.insert(v);
            }
        }
    }
}

/// In a critical canvas, vertices away from the 3-listed part and its
/// neighborhood always survive truncation.
pub fn check_subneighbors(c: &Canvas) -> Result<bool> {
    let crit = is_t_critical(&c.graph, &c.lists, &c.scaffold)?;
    if !crit.is_critical {
        return Err(CfError::Argument("canvas is not critical".into()));
    }
    let g = &c.graph;
    let mut r = BitSet::with_capacity(g.num_vertices());
    for v in 0..g.num_vertices() {
        if !c.scaffold.vertices.contains(v) && c.lists.get(v).len() == 3 {
            r.insert(v);
        }
    }
    let mut r_closed = r.clone();
    for v in r.iter() {
        for w in g.neighbors(v) {
            r_closed.insert(w);
        }
    }
    let trunc = truncate(c)?;
    for v in 0..g.num_vertices() {
        if !r_closed.contains(v) && !trunc.g_star.vertices.contains(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ring sizes around a vertex of a critical graph, up to its distance from
/// the fixed subgraph, with the weak growth bound evaluated.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub center: VertexId,
    /// `rings[r]` is the number of vertices at distance exactly r.
    pub rings: Vec<usize>,
    /// Cumulative ball sizes.
    pub balls: Vec<usize>,
    pub distance_to_subgraph: usize,
    /// Rings 1..=distance all have at least two vertices.
    pub weak_bound_holds: bool,
    /// Empirical doubling rate: min over 1 <= r <= d of log2(|N_r|)/r.
    pub growth_exponent: Option<f64>,
}

pub fn growth_profile(
    g: &PlaneGraph,
    lists: &ListAssignment,
    h: &SubgraphRef,
    v: VertexId,
) -> Result<GrowthProfile> {
    if h.vertices.contains(v) {
        return Err(CfError::Argument("center lies in the subgraph".into()));
    }
    let crit = is_t_critical(g, lists, h)?;
    if !crit.is_critical {
        return Err(CfError::Argument("graph is not critical for the subgraph".into()));
    }
    let dist = g.bfs_distances(&BitSet::from_iter([v]));
    let d = h
        .vertices
        .iter()
        .filter_map(|u| dist[u])
        .min()
        .ok_or_else(|| CfError::Argument("subgraph unreachable from center".into()))?;
    let mut rings = vec![0usize; d + 1];
    for u in 0..g.num_vertices() {
        if let Some(du) = dist[u] {
            if du <= d {
                rings[du] += 1;
            }
        }
    }
    let balls: Vec<usize> = rings
        .iter()
        .scan(0usize, |acc, &r| {
            *acc += r;
            Some(*acc)
        })
        .collect();
    let weak = (1..=d).all(|r| rings[r] >= 2);
    let exponent = (1..=d)
        .map(|r| (rings[r] as f64).log2() / r as f64)
        .fold(None, |acc: Option<f64>, x| {
            Some(acc.map_or(x, |a| a.min(x)))
        });
    Ok(GrowthProfile {
        center: v,
        rings,
        balls,
        distance_to_subgraph: d,
        weak_bound_holds: weak,
        growth_exponent: exponent,
    })
}

/// One corpus row of truncation and criticality size ratios.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioRow {
    pub instance_hash: String,
    pub scaffold_vertices: usize,
    pub g_star_vertices: usize,
    pub graph_vertices: usize,
    /// |V(G*)| / |V(S)|, only when the chordless-boundary hypothesis holds.
    pub ratio_truncated: Option<f64>,
    /// |V(G)| / |V(S)|.
    pub ratio_linear: Option<f64>,
    pub chord_hypothesis_ok: bool,
}

/// Empirical lower estimates for the linear-bound constants: emits one row
/// per critical instance; instances violating the chordless-boundary
/// hypothesis are excluded from the truncated ratio and logged as such.
pub fn ratio_diagnostics(corpus: &[Canvas]) -> Result<Vec<RatioRow>> {
    let mut rows = Vec::new();
    for c in corpus {
        let g = &c.graph;
        let outer = g.outer_face_id();
        let chord_ok = g.chords_of_face(outer).iter().all(|&e| {
            let (u, v) = g.ends(e);
            let small = |w: VertexId| {
                c.lists.get(w).len() <= 3 && !c.scaffold.vertices.contains(w)
            };
            !(small(u) && small(v))
        });
        let trunc = truncate(c)?;
        let s_count = c.scaffold.vertices.len();
        let row = RatioRow {
            instance_hash: crate::report::canvas_hash(c),
            scaffold_vertices: s_count,
            g_star_vertices: trunc.g_star.vertices.len(),
            graph_vertices: g.num_vertices(),
            ratio_truncated: if chord_ok && s_count > 0 {
                Some(trunc.g_star.vertices.len() as f64 / s_count as f64)
            } else {
                None
            },
            ratio_linear: if s_count > 0 {
                Some(g.num_vertices() as f64 / s_count as f64)
            } else {
                None
            },
            chord_hypothesis_ok: chord_ok,
        };
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colors::ColorSet;
    use crate::plane_graph::OuterSpec;

    fn lists(v: Vec<Vec<u8>>) -> ListAssignment {
        ListAssignment::new(v.into_iter().map(ColorSet::from_colors).collect()).unwrap()
    }

    #[test]
    fn no_deficient_ends_means_no_spans() {
        // Square with all 5-lists off a singleton scaffold.
        let g = crate::plane_graph::build::cycle_graph(4).unwrap();
        let l = ListAssignment::uniform(4, ColorSet::palette(5));
        let c = Canvas {
            scaffold: SubgraphRef::from_parts([0], []),
            graph: g,
            lists: l,
        };
        let t = truncate(&c).unwrap();
        assert!(t.spans.is_empty());
        assert!(t.superfluous.is_empty());
        assert_eq!(t.g_star.vertices.len(), 4);
        assert_eq!(t.c_star.len(), 4);
    }

    // A fan hung off the outer walk behind a three-vertex span: the fenced
    // vertices (the detour interior and the fan vertex) become superfluous.
    #[test]
    fn fan_behind_span_is_superfluous() {
        // Outer pentagon 0-1-2-3-4 (scaffold vertex 0); span 1-5-3 with 5
        // inside, behind the boundary detour 1-2-3; fan vertex 6 adjacent to
        // 1, 2, 3 sits between the span and the detour.
        let rot: Vec<Vec<usize>> = vec![
            vec![1, 4],       // 0
            vec![6, 2, 0, 5], // 1
            vec![1, 6, 3],    // 2
            vec![2, 6, 5, 4], // 3
            vec![3, 0],       // 4
            vec![3, 1],       // 5 (span middle)
            vec![3, 2, 1],    // 6 (fan interior)
        ];
        let g =
            PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::Walk(vec![0, 1, 2, 3, 4]))
                .unwrap();
        let mut l = ListAssignment::uniform(7, ColorSet::palette(5));
        l.set(1, ColorSet::palette(3)); // deficient end
        l.set(3, ColorSet::palette(3)); // deficient end
        let c = Canvas {
            scaffold: SubgraphRef::from_parts([0], []),
            graph: g,
            lists: l,
        };
        let t = truncate(&c).unwrap();
        assert!(
            t.spans
                .iter()
                .any(|s| s.path == [1, 5, 3] && s.exterior.contains(6)),
            "span 1-5-3 should fence off the fan vertex: {:?}",
            t.spans
        );
        assert!(t.superfluous.contains(6));
        assert!(t.superfluous.contains(2));
        assert!(!t.g_star.vertices.contains(6));
        for v in [0, 1, 3, 4, 5] {
            assert!(t.g_star.vertices.contains(v));
        }
    }

    #[test]
    fn scaffold_on_both_sides_makes_cutvertices_essential() {
        // Bowtie: triangles 0-1-2 and 2-3-4 share cutvertex 2; scaffold
        // touches both sides.
        let g = PlaneGraph::from_neighbor_rotation(
            &[
                vec![1, 2],
                vec![2, 0],
                vec![0, 1, 3, 4],
                vec![4, 2],
                vec![2, 3],
            ],
            OuterSpec::First,
        )
        .unwrap();
        let s = SubgraphRef::from_parts([0, 4], []);
        let ess = essential_cutvertices(&g, &s);
        assert!(ess.contains(2));
        // Scaffold on one side only: not essential.
        let s2 = SubgraphRef::from_parts([0, 1], []);
        assert!(essential_cutvertices(&g, &s2).is_empty());
    }

    #[test]
    fn growth_profile_rings() {
        // Critical gadget: path 0-1 scaffold, vertex 2 blocked.
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1]],
            OuterSpec::First,
        )
        .unwrap();
        let l = lists(vec![vec![1], vec![2], vec![1, 2]]);
        let s = SubgraphRef::from_parts([0, 1], [g.edge_between(0, 1).unwrap()]);
        let p = growth_profile(&g, &l, &s, 2).unwrap();
        assert_eq!(p.rings[0], 1);
        assert_eq!(p.distance_to_subgraph, 1);
        assert_eq!(p.rings[1], 2);
        assert!(p.weak_bound_holds);
        assert_eq!(p.balls, vec![1, 3]);
        // Center inside the subgraph is rejected.
        assert!(growth_profile(&g, &l, &s, 0).is_err());
    }

    #[test]
    fn ratio_rows_for_blocked_fan() {
        // Path 0-1-2 pinned, fan vertex 3 blocked: a valid critical canvas.
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 3], vec![2, 3, 0], vec![3, 1], vec![0, 1, 2]],
            OuterSpec::Walk(vec![0, 3, 2, 1]),
        )
        .unwrap();
        let l = lists(vec![vec![1], vec![2], vec![3], vec![1, 2, 3]]);
        let s = SubgraphRef::from_parts(
            [0, 1, 2],
            [g.edge_between(0, 1).unwrap(), g.edge_between(1, 2).unwrap()],
        );
        let c = Canvas {
            graph: g,
            scaffold: s,
            lists: l,
        };
        let rows = ratio_diagnostics(std::slice::from_ref(&c)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].graph_vertices, 4);
        assert_eq!(rows[0].scaffold_vertices, 3);
        assert!((rows[0].ratio_linear.unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert!(rows[0].chord_hypothesis_ok);
        // Empty corpus gives an empty table.
        assert!(ratio_diagnostics(&[]).unwrap().is_empty());
    }
}
