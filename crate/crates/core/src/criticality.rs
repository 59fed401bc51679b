//! Criticality checking relative to a fixed subgraph, critical-core
//! extraction, cut criticality, and the list-size consequences that hold in
//! critical three-vertex path-canvases.

use crate::canvas::{validate_canvas, Canvas, ListAssignment};
use crate::color_solver::{extends_within, Coloring};
use crate::plane_graph::{PlaneGraph, SubgraphRef, VertexId};
use crate::{BitSet, CfError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One maximal deletion step below the live graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Deletion {
    Edge(usize),
    Vertex(usize),
}

#[derive(Clone, Debug)]
pub struct CriticalityReport {
    pub is_critical: bool,
    /// Per deletion, a subgraph coloring that extends to the deleted graph
    /// but not to the full one.
    pub witness_map: BTreeMap<Deletion, Coloring>,
    /// A deletion with no such witness, when not critical.
    pub failing_deletion: Option<Deletion>,
}

impl CriticalityReport {
    /// Re-verify every stored witness against the definition.
    pub fn self_check(
        &self,
        g: &PlaneGraph,
        live: &SubgraphRef,
        lists: &ListAssignment,
        t: &SubgraphRef,
    ) -> Result<bool> {
        for (&del, phi) in &self.witness_map {
            let smaller = apply_deletion(live, del);
            if !extends_within(g, &smaller, lists, t, phi)? {
                return Ok(false);
            }
            if extends_within(g, live, lists, t, phi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn apply_deletion(live: &SubgraphRef, del: Deletion) -> SubgraphRef {
    let mut out = live.clone();
    match del {
        Deletion::Edge(e) => out.edges.remove(e),
        Deletion::Vertex(v) => out.vertices.remove(v),
    }
    out
}

/// The maximal proper subgraphs of the live graph that still contain `t`:
/// drop one edge outside `t`, or one isolated vertex outside `t`.
fn deletions(g: &PlaneGraph, live: &SubgraphRef, t: &SubgraphRef) -> Vec<Deletion> {
    let mut deg = vec![0usize; g.num_vertices()];
    for e in live.edges.iter() {
        let (u, v) = g.ends(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut out: Vec<Deletion> = live
        .edges
        .iter()
        .filter(|&e| !t.edges.contains(e))
        .map(Deletion::Edge)
        .collect();
    out.extend(
        live.vertices
            .iter()
            .filter(|&v| deg[v] == 0 && !t.vertices.contains(v))
            .map(Deletion::Vertex),
    );
    out
}

/// Enumerate proper in-list colorings of the subgraph `t` in a fixed order.
pub(crate) fn subgraph_colorings(
    g: &PlaneGraph,
    t: &SubgraphRef,
    lists: &ListAssignment,
) -> Vec<Coloring> {
    let verts: Vec<VertexId> = t.vertices.iter().collect();
    let mut out = Vec::new();
    let mut cur = Coloring::empty(g.num_vertices());
    fn go(
        g: &PlaneGraph,
        t: &SubgraphRef,
        lists: &ListAssignment,
        verts: &[VertexId],
        i: usize,
        cur: &mut Coloring,
        out: &mut Vec<Coloring>,
    ) {
        if i == verts.len() {
            out.push(cur.clone());
            return;
        }
        let v = verts[i];
        'colors: for c in lists.get(v).iter() {
            for e in t.edges.iter() {
                let (a, b) = g.ends(e);
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if cur.get(w) == Some(c) {
                    continue 'colors;
                }
            }
            cur.set(v, c);
            go(g, t, lists, verts, i + 1, cur, out);
            cur.clear(v);
        }
    }
    go(g, t, lists, &verts, 0, &mut cur, &mut out);
    out
}

/// Is the live graph `t`-critical: for every maximal deletion there is a
/// `t`-coloring extending to the deleted graph but not to the live one.
pub fn is_t_critical_within(
    g: &PlaneGraph,
    live: &SubgraphRef,
    lists: &ListAssignment,
    t: &SubgraphRef,
) -> Result<CriticalityReport> {
    if !live.contains_subgraph(t) || !live.is_valid_in(g) || !t.is_valid_in(g) {
        return Err(CfError::Argument(
            "subgraph not contained in the live graph".into(),
        ));
    }
    if t == live {
        return Err(CfError::Argument("criticality needs a proper subgraph".into()));
    }
    let phis = subgraph_colorings(g, t, lists);
    let mut witness_map = BTreeMap::new();
    for del in deletions(g, live, t) {
        let smaller = apply_deletion(live, del);
        let mut found = None;
        for phi in &phis {
            if extends_within(g, &smaller, lists, t, phi)?
                && !extends_within(g, live, lists, t, phi)?
            {
                found = Some(phi.clone());
                break;
            }
        }
        match found {
            Some(phi) => {
                witness_map.insert(del, phi);
            }
            None => {
                return Ok(CriticalityReport {
                    is_critical: false,
                    witness_map,
                    failing_deletion: Some(del),
                })
            }
        }
    }
    Ok(CriticalityReport {
        is_critical: true,
        witness_map,
        failing_deletion: None,
    })
}

pub fn is_t_critical(
    g: &PlaneGraph,
    lists: &ListAssignment,
    t: &SubgraphRef,
) -> Result<CriticalityReport> {
    is_t_critical_within(g, &SubgraphRef::full(g), lists, t)
}

/// Greedily delete edges and isolated vertices outside `t` while `phi`
/// still fails to extend. The result is `t`-critical and contains `t`.
pub fn extract_critical(
    g: &PlaneGraph,
    live: &SubgraphRef,
    lists: &ListAssignment,
    t: &SubgraphRef,
    phi: &Coloring,
) -> Result<SubgraphRef> {
    if extends_within(g, live, lists, t, phi)? {
        return Err(CfError::Argument(
            "coloring already extends; nothing to prune".into(),
        ));
    }
    let mut cur = live.clone();
    loop {
        let mut changed = false;
        for del in deletions(g, &cur, t) {
            let smaller = apply_deletion(&cur, del);
            if !extends_within(g, &smaller, lists, t, phi)? {
                cur = smaller;
                changed = true;
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// A scaffold-avoiding separation: the two sides cover the live graph, their
/// intersection is a proper subgraph of the far side, and the scaffold lies
/// in the near side.
pub struct CutSplit {
    pub near: SubgraphRef,
    pub far: SubgraphRef,
}

pub(crate) fn intersection(a: &SubgraphRef, b: &SubgraphRef) -> SubgraphRef {
    let mut vs = a.vertices.clone();
    vs.intersect_with(&b.vertices);
    let mut es = a.edges.clone();
    es.intersect_with(&b.edges);
    SubgraphRef {
        vertices: vs,
        edges: es,
    }
}

pub(crate) fn union(a: &SubgraphRef, b: &SubgraphRef) -> SubgraphRef {
    let mut vs = a.vertices.clone();
    vs.union_with(&b.vertices);
    let mut es = a.edges.clone();
    es.union_with(&b.edges);
    SubgraphRef {
        vertices: vs,
        edges: es,
    }
}

/// Verify that the far side of a scaffold-avoiding separation is critical
/// with respect to the shared boundary. The input must be scaffold-critical
/// and the split hypotheses must hold; the result must then be true, so a
/// false return is a surfaced bug.
pub fn check_critical_cut(
    g: &PlaneGraph,
    live: &SubgraphRef,
    lists: &ListAssignment,
    scaffold: &SubgraphRef,
    split: &CutSplit,
) -> Result<bool> {
    let whole = union(&split.near, &split.far);
    if &whole != live {
        return Err(CfError::Argument("split sides do not cover the graph".into()));
    }
    let shared = intersection(&split.near, &split.far);
    if !shared.is_proper_subgraph_of(&split.far) {
        return Err(CfError::Argument(
            "shared part is not a proper subgraph of the far side".into(),
        ));
    }
    if !split.near.contains_subgraph(scaffold) {
        return Err(CfError::Argument("scaffold not inside the near side".into()));
    }
    let base = is_t_critical_within(g, live, lists, scaffold)?;
    if !base.is_critical {
        return Err(CfError::Argument("graph is not scaffold-critical".into()));
    }
    Ok(is_t_critical_within(g, &split.far, lists, &shared)?.is_critical)
}

/// Scaffold-avoiding splits of the live graph: for each edge, each hanging
/// component off its ends, and for each cutvertex, each hanging component.
pub fn enumerate_cut_splits(
    g: &PlaneGraph,
    live: &SubgraphRef,
    scaffold: &SubgraphRef,
) -> Vec<CutSplit> {
    let mut out = Vec::new();
    for e in live.edges.iter() {
        let (u, v) = g.ends(e);
        let mut alive = live.vertices.clone();
        alive.remove(u);
        alive.remove(v);
        for comp in components_within_edges(g, live, &alive) {
            if comp.intersects(&scaffold.vertices) {
                continue;
            }
            let mut far_vs = comp.clone();
            far_vs.insert(u);
            far_vs.insert(v);
            let far = induced_within(g, live, &far_vs);
            let mut near_vs = live.vertices.clone();
            near_vs.difference_with(&comp);
            let near = induced_within(g, live, &near_vs);
            out.push(CutSplit { near, far });
        }
    }
    for v in live.vertices.iter() {
        let mut alive = live.vertices.clone();
        alive.remove(v);
        let comps = components_within_edges(g, live, &alive);
        if comps.len() < 2 {
            continue;
        }
        for comp in &comps {
            if comp.intersects(&scaffold.vertices) {
                continue;
            }
            let mut far_vs = comp.clone();
            far_vs.insert(v);
            let far = induced_within(g, live, &far_vs);
            let mut near_vs = live.vertices.clone();
            near_vs.difference_with(comp);
            let near = induced_within(g, live, &near_vs);
            out.push(CutSplit { near, far });
        }
    }
    out
}

fn components_within_edges(g: &PlaneGraph, live: &SubgraphRef, alive: &BitSet) -> Vec<BitSet> {
    let mut seen = BitSet::with_capacity(g.num_vertices());
    let mut comps = Vec::new();
    for s in alive.iter() {
        if seen.contains(s) || !live.vertices.contains(s) {
            continue;
        }
        let mut comp = BitSet::with_capacity(g.num_vertices());
        let mut stack = vec![s];
        seen.insert(s);
        comp.insert(s);
        while let Some(x) = stack.pop() {
            for d in g.rotation_at(x) {
                let e = crate::plane_graph::dart_edge(*d);
                if !live.edges.contains(e) {
                    continue;
                }
                let y = g.dart_target(*d);
                if alive.contains(y) && live.vertices.contains(y) && !seen.contains(y) {
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

fn induced_within(g: &PlaneGraph, live: &SubgraphRef, vs: &BitSet) -> SubgraphRef {
    let mut es = BitSet::new();
    for e in live.edges.iter() {
        let (u, v) = g.ends(e);
        if vs.contains(u) && vs.contains(v) {
            es.insert(e);
        }
    }
    SubgraphRef {
        vertices: vs.clone(),
        edges: es,
    }
}

/// List-size consequences in a critical path-canvas on three vertices:
/// every outer vertex off the path has a list of size exactly three, and
/// every vertex off the path has size three or such a neighbor off the path.
pub fn check_bellows_lists(c: &Canvas) -> Result<bool> {
    let report = validate_canvas(c);
    if !report.is_valid() {
        return Err(CfError::Argument(format!(
            "not a valid canvas: {:?}",
            report.violations
        )));
    }
    let path = c
        .scaffold_path()
        .ok_or_else(|| CfError::Argument("scaffold is not a path".into()))?;
    if path.len() != 3 {
        return Err(CfError::Argument(
            "path must have exactly three vertices".into(),
        ));
    }
    let crit = is_t_critical(&c.graph, &c.lists, &c.scaffold)?;
    if !crit.is_critical {
        return Err(CfError::Argument("canvas is not critical".into()));
    }
    let g = &c.graph;
    let on_path = &c.scaffold.vertices;
    let outer = &g.outer_face().boundary_graph.vertices;
    for v in 0..g.num_vertices() {
        if on_path.contains(v) {
            continue;
        }
        let len = c.lists.get(v).len();
        if outer.contains(v) && len != 3 {
            return Ok(false);
        }
        if len != 3 {
            let ok = g
                .neighbors(v)
                .any(|w| !on_path.contains(w) && c.lists.get(w).len() == 3);
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colors::ColorSet;
    use crate::plane_graph::OuterSpec;

    fn lists(v: Vec<Vec<u8>>) -> ListAssignment {
        ListAssignment::new(v.into_iter().map(ColorSet::from_colors).collect()).unwrap()
    }

    /// The blocking gadget: path 0-1 precolored, vertex 2 adjacent to both
    /// with exactly the two path colors in its list.
    fn gadget() -> (PlaneGraph, ListAssignment, SubgraphRef) {
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1]],
            OuterSpec::First,
        )
        .unwrap();
        let l = lists(vec![vec![1], vec![2], vec![1, 2]]);
        let t = SubgraphRef::from_parts([0, 1], [g.edge_between(0, 1).unwrap()]);
        (g, l, t)
    }

    // Brute force over the three maximal subgraphs of the gadget.
    #[test]
    fn gadget_is_critical_with_witnesses() {
        let (g, l, t) = gadget();
        let rep = is_t_critical(&g, &l, &t).unwrap();
        assert!(rep.is_critical);
        // Deletions: edges 0-2 and 1-2.
        assert_eq!(rep.witness_map.len(), 2);
        assert!(rep.self_check(&g, &SubgraphRef::full(&g), &l, &t).unwrap());
    }

    #[test]
    fn extra_isolated_vertex_kills_criticality() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1], vec![]],
            OuterSpec::Corner { vertex: 0, pos: 0 },
        )
        .unwrap();
        let l = lists(vec![vec![1], vec![2], vec![1, 2], vec![1]]);
        let t = SubgraphRef::from_parts([0, 1], [g.edge_between(0, 1).unwrap()]);
        let rep = is_t_critical(&g, &l, &t).unwrap();
        assert!(!rep.is_critical);
        assert_eq!(rep.failing_deletion, Some(Deletion::Vertex(3)));
    }

    #[test]
    fn fully_extendable_graph_not_critical() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1]],
            OuterSpec::First,
        )
        .unwrap();
        let l = lists(vec![vec![1], vec![2], vec![1, 2, 3]]);
        let t = SubgraphRef::from_parts([0, 1], [g.edge_between(0, 1).unwrap()]);
        let rep = is_t_critical(&g, &l, &t).unwrap();
        assert!(!rep.is_critical);
    }

    #[test]
    fn extract_prunes_pendant() {
        // Gadget plus a pendant vertex 3 on vertex 2 with a large list.
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2], vec![2, 0], vec![0, 1, 3], vec![2]],
            OuterSpec::Corner { vertex: 0, pos: 0 },
        )
        .unwrap();
        let l = lists(vec![vec![1], vec![2], vec![1, 2], vec![1, 2, 3, 4, 5]]);
        let t = SubgraphRef::from_parts([0, 1], [g.edge_between(0, 1).unwrap()]);
        let mut phi = Coloring::empty(4);
        phi.set(0, 1);
        phi.set(1, 2);
        let live = SubgraphRef::full(&g);
        let core = extract_critical(&g, &live, &l, &t, &phi).unwrap();
        assert!(!core.vertices.contains(3));
        assert_eq!(core.edges.len(), 3);
        let rep = is_t_critical_within(&g, &core, &l, &t).unwrap();
        assert!(rep.is_critical);
        // Already-critical input comes back unchanged.
        let again = extract_critical(&g, &core, &l, &t, &phi).unwrap();
        assert_eq!(again, core);
        // A coloring that extends is rejected.
        let l5 = lists(vec![vec![1], vec![2], vec![1, 2, 3], vec![1, 2, 3, 4, 5]]);
        assert!(extract_critical(&g, &live, &l5, &t, &phi).is_err());
    }

    #[test]
    fn cut_criticality_behind_a_blob() {
        // Precolored edge 0-1; vertex 2 adjacent to both; the triangle 2-3-4
        // removes 2's remaining color. The whole graph is scaffold-critical
        // and the blob hangs behind vertex 2 and behind edge 2-3.
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
        let l = lists(vec![vec![1], vec![2], vec![1, 2, 5], vec![5, 6], vec![5, 6]]);
        let s = SubgraphRef::from_parts([0, 1], [g.edge_between(0, 1).unwrap()]);
        let live = SubgraphRef::full(&g);
        assert!(is_t_critical(&g, &l, &s).unwrap().is_critical);
        let splits = enumerate_cut_splits(&g, &live, &s);
        assert!(!splits.is_empty());
        for split in &splits {
            assert!(
                check_critical_cut(&g, &live, &l, &s, split).unwrap(),
                "cut criticality must hold on every valid split"
            );
        }
    }

    #[test]
    fn degenerate_split_rejected() {
        let (g, l, t) = gadget();
        let live = SubgraphRef::full(&g);
        let split = CutSplit {
            near: live.clone(),
            far: live.clone(),
        };
        assert!(check_critical_cut(&g, &live, &l, &t, &split).is_err());
    }

    #[test]
    fn bellows_list_sizes_on_three_path_fan() {
        // Path 0-1-2 precolored singletons; fan vertex 3 adjacent to all
        // three with a 3-list chosen to block extension.
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
        assert!(check_bellows_lists(&c).unwrap());
    }

    #[test]
    fn bellows_rejects_noncritical() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 3], vec![2, 3, 0], vec![3, 1], vec![0, 1, 2]],
            OuterSpec::Walk(vec![0, 3, 2, 1]),
        )
        .unwrap();
        let l = lists(vec![vec![1], vec![2], vec![3], vec![1, 2, 3, 4]]);
        let s = SubgraphRef::from_parts(
            [0, 1, 2],
            [g.edge_between(0, 1).unwrap(), g.edge_between(1, 2).unwrap()],
        );
        let c = Canvas {
            graph: g,
            scaffold: s,
            lists: l,
        };
        assert!(matches!(check_bellows_lists(&c), Err(CfError::Argument(_))));
    }
}
