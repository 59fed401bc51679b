//! List assignments, restricted faces and sets, and canvas validity.

use crate::colors::{Color, ColorSet};
use crate::plane_graph::{EdgeId, FaceId, PlaneGraph, SubgraphRef, VertexId};
use crate::{BitSet, CfError, Result};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};

/// Per-vertex nonempty color lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn new(lists: Vec<ColorSet>) -> Result<Self> {
        if let Some(v) = lists.iter().position(|l| l.is_empty()) {
            return Err(CfError::Argument(format!("empty list at vertex {v}")));
        }
        Ok(ListAssignment { lists })
    }

    pub fn uniform(n: usize, set: ColorSet) -> Self {
        Self::new(vec![set; n]).expect("nonempty uniform list")
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: VertexId) -> ColorSet {
        self.lists[v]
    }

    pub fn set(&mut self, v: VertexId, s: ColorSet) {
        assert!(!s.is_empty(), "lists must stay nonempty");
        self.lists[v] = s;
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, ColorSet)> + '_ {
        self.lists.iter().copied().enumerate()
    }

    /// Restrict to the vertices of a piece, by a piece-to-host vertex map.
    pub fn project(&self, vertex_map: &[VertexId]) -> ListAssignment {
        ListAssignment {
            lists: vertex_map.iter().map(|&v| self.lists[v]).collect(),
        }
    }
}

// JSON: map vertex -> sorted color array.
impl Serialize for ListAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.lists.len()))?;
        for (v, l) in self.lists.iter().enumerate() {
            map.serialize_entry(&v.to_string(), &l.iter().collect::<Vec<_>>())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ListAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = std::collections::BTreeMap::<String, Vec<Color>>::deserialize(d)?;
        let n = raw.len();
        let mut lists = vec![ColorSet::empty(); n];
        for (k, cols) in raw {
            let v: usize = k.parse().map_err(D::Error::custom)?;
            if v >= n {
                return Err(D::Error::custom("vertex key out of range"));
            }
            lists[v] = ColorSet::from_colors(cols);
        }
        ListAssignment::new(lists).map_err(D::Error::custom)
    }
}

/// A certificate that a face (or set) is restricted: a special path of at
/// most two vertices on the face boundary together with a proper coloring
/// from the lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionCert {
    pub face_id: FaceId,
    pub special_path: Vec<VertexId>,
    pub path_coloring: Vec<Color>,
}

impl RestrictionCert {
    pub fn check(&self, g: &PlaneGraph, lists: &ListAssignment) -> bool {
        if self.special_path.len() != self.path_coloring.len()
            || self.special_path.is_empty()
            || self.special_path.len() > 2
        {
            return false;
        }
        let b = &g.face(self.face_id).boundary_graph;
        for (&v, &c) in self.special_path.iter().zip(&self.path_coloring) {
            if !b.vertices.contains(v) || !lists.get(v).contains(c) {
                return false;
            }
        }
        if self.special_path.len() == 2 {
            let (u, v) = (self.special_path[0], self.special_path[1]);
            match g.edge_between(u, v) {
                Some(e) if b.edges.contains(e) => {}
                _ => return false,
            }
            if self.path_coloring[0] == self.path_coloring[1] {
                return false;
            }
        }
        true
    }
}

/// Lexicographically least proper list coloring of a path of length <= 1.
fn least_path_coloring(lists: &ListAssignment, path: &[VertexId]) -> Option<Vec<Color>> {
    match path {
        [v] => lists.get(*v).smallest().map(|c| vec![c]),
        [u, v] => {
            for cu in lists.get(*u).iter() {
                if let Some(cv) = lists.get(*v).minus(ColorSet::single(cu)).smallest() {
                    return Some(vec![cu, cv]);
                }
            }
            None
        }
        _ => None,
    }
}

/// Candidate special paths of a face, in deterministic order: single
/// vertices by index, then boundary edges by sorted ends.
fn candidate_paths(g: &PlaneGraph, f: FaceId) -> Vec<Vec<VertexId>> {
    let b = &g.face(f).boundary_graph;
    let mut singles: Vec<VertexId> = b.vertices.iter().collect();
    singles.sort_unstable();
    let mut edges: Vec<(VertexId, VertexId)> = b
        .edges
        .iter()
        .map(|e| {
            let (u, v) = g.ends(e);
            (u.min(v), u.max(v))
        })
        .collect();
    edges.sort_unstable();
    let mut out: Vec<Vec<VertexId>> = singles.into_iter().map(|v| vec![v]).collect();
    out.extend(edges.into_iter().map(|(u, v)| vec![u, v]));
    out
}

/// Is `f` restricted: some path of length at most one on its boundary has a
/// proper list coloring while every other boundary vertex keeps a list of
/// size at least three. Returns the lexicographically least certificate.
pub fn is_restricted_face(
    g: &PlaneGraph,
    lists: &ListAssignment,
    f: FaceId,
) -> Option<RestrictionCert> {
    let b = &g.face(f).boundary_graph;
    for path in candidate_paths(g, f) {
        if b.vertices
            .iter()
            .filter(|v| !path.contains(v))
            .any(|v| lists.get(v).len() < 3)
        {
            continue;
        }
        if let Some(coloring) = least_path_coloring(lists, &path) {
            return Some(RestrictionCert {
                face_id: f,
                special_path: path,
                path_coloring: coloring,
            });
        }
    }
    None
}

/// Set variant: every vertex of `x` needs a list of size at least three, and
/// some face must carry a colorable path of length at most one (the path is
/// not tied to `x` beyond coexistence).
pub fn is_restricted_set(
    g: &PlaneGraph,
    lists: &ListAssignment,
    x: &BitSet,
) -> Option<RestrictionCert> {
    if x.iter().any(|v| lists.get(v).len() < 3) {
        return None;
    }
    for f in 0..g.faces().len() {
        for path in candidate_paths(g, f) {
            if let Some(coloring) = least_path_coloring(lists, &path) {
                return Some(RestrictionCert {
                    face_id: f,
                    special_path: path,
                    path_coloring: coloring,
                });
            }
        }
    }
    None
}

/// A canvas: a connected plane graph, a scaffold on the outer boundary, and
/// lists meeting the size bounds (5 interior, 3 off the scaffold) with a
/// colorable scaffold.
#[derive(Clone, Debug)]
pub struct Canvas {
    pub graph: PlaneGraph,
    pub scaffold: SubgraphRef,
    pub lists: ListAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanvasViolation {
    Disconnected,
    ScaffoldNotInGraph,
    ScaffoldVertexOffOuterWalk(VertexId),
    ScaffoldEdgeOffOuterWalk(EdgeId),
    InteriorListTooSmall(VertexId),
    NonScaffoldListTooSmall(VertexId),
    ScaffoldHasNoListColoring,
    ListCountMismatch,
}

/// Validation report; `scaffold_witness` holds a proper list coloring of the
/// scaffold when one exists.
#[derive(Clone, Debug)]
pub struct CanvasReport {
    pub violations: Vec<CanvasViolation>,
    pub scaffold_witness: Option<crate::color_solver::Coloring>,
}

impl CanvasReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_canvas(c: &Canvas) -> CanvasReport {
    let mut violations = Vec::new();
    let g = &c.graph;
    if c.lists.len() != g.num_vertices() {
        return CanvasReport {
            violations: vec![CanvasViolation::ListCountMismatch],
            scaffold_witness: None,
        };
    }
    if !g.is_connected() {
        violations.push(CanvasViolation::Disconnected);
    }
    if !c.scaffold.is_valid_in(g) {
        violations.push(CanvasViolation::ScaffoldNotInGraph);
        return CanvasReport {
            violations,
            scaffold_witness: None,
        };
    }
    let outer = &g.outer_face().boundary_graph;
    for v in c.scaffold.vertices.iter() {
        if !outer.vertices.contains(v) {
            violations.push(CanvasViolation::ScaffoldVertexOffOuterWalk(v));
        }
    }
    for e in c.scaffold.edges.iter() {
        if !outer.edges.contains(e) {
            violations.push(CanvasViolation::ScaffoldEdgeOffOuterWalk(e));
        }
    }
    for v in 0..g.num_vertices() {
        let len = c.lists.get(v).len();
        if !outer.vertices.contains(v) && len < 5 {
            violations.push(CanvasViolation::InteriorListTooSmall(v));
        }
        if !c.scaffold.vertices.contains(v) && len < 3 {
            violations.push(CanvasViolation::NonScaffoldListTooSmall(v));
        }
    }
    let witness = crate::color_solver::color_subgraph(g, &c.scaffold, &c.lists);
    if witness.is_none() && !c.scaffold.vertices.is_empty() {
        violations.push(CanvasViolation::ScaffoldHasNoListColoring);
    }
    CanvasReport {
        violations,
        scaffold_witness: witness,
    }
}

impl Canvas {
    /// The scaffold as an ordered path, when it is one.
    pub fn scaffold_path(&self) -> Option<Vec<VertexId>> {
        scaffold_as_path(&self.graph, &self.scaffold)
    }
}

pub fn scaffold_as_path(g: &PlaneGraph, s: &SubgraphRef) -> Option<Vec<VertexId>> {
    let verts: Vec<VertexId> = s.vertices.iter().collect();
    if verts.is_empty() {
        return Some(Vec::new());
    }
    if s.edges.len() + 1 != verts.len() {
        return None;
    }
    let mut deg = std::collections::HashMap::new();
    for e in s.edges.iter() {
        let (u, v) = g.ends(e);
        *deg.entry(u).or_insert(0usize) += 1;
        *deg.entry(v).or_insert(0usize) += 1;
    }
    if deg.values().any(|&d| d > 2) {
        return None;
    }
    let start = verts
        .iter()
        .copied()
        .filter(|v| deg.get(v).copied().unwrap_or(0) <= 1)
        .min()?;
    let mut path = vec![start];
    let mut prev = None;
    loop {
        let cur = *path.last().unwrap();
        let next = g
            .rotation_at(cur)
            .iter()
            .map(|&d| (crate::plane_graph::dart_edge(d), g.dart_target(d)))
            .find(|&(e, w)| s.edges.contains(e) && Some(w) != prev);
        match next {
            Some((_, w)) => {
                prev = Some(cur);
                path.push(w);
            }
            None => break,
        }
    }
    if path.len() == verts.len() {
        Some(path)
    } else {
        None // disconnected scaffold
    }
}

/// A verified many-restricted-sets instance.
#[derive(Clone, Debug)]
pub struct MainInstance {
    pub graph: PlaneGraph,
    pub lists: ListAssignment,
    pub sets: Vec<BitSet>,
    pub certs: Vec<RestrictionCert>,
    /// Minimum pairwise distance between the sets; `None` when there are
    /// fewer than two sets or some pair is disconnected.
    pub min_pairwise_distance: Option<usize>,
}

/// Verify that every set is restricted and every vertex outside their union
/// has a list of size at least five; annotate with the minimum pairwise
/// distance.
pub fn build_main_instance(
    g: &PlaneGraph,
    lists: &ListAssignment,
    sets: Vec<BitSet>,
) -> Result<MainInstance> {
    if lists.len() != g.num_vertices() {
        return Err(CfError::Argument("list count disagrees with graph".into()));
    }
    let mut certs = Vec::with_capacity(sets.len());
    for (i, x) in sets.iter().enumerate() {
        if x.iter().any(|v| v >= g.num_vertices()) {
            return Err(CfError::Argument(format!("set {i} mentions unknown vertex")));
        }
        match is_restricted_set(g, lists, x) {
            Some(cert) => certs.push(cert),
            None => {
                return Err(CfError::Argument(format!(
                    "set {i} is not restricted under the lists"
                )))
            }
        }
    }
    let mut union = BitSet::with_capacity(g.num_vertices());
    for x in &sets {
        union.union_with(x);
    }
    for v in 0..g.num_vertices() {
        if !union.contains(v) && lists.get(v).len() < 5 {
            return Err(CfError::Argument(format!(
                "vertex {v} outside the sets has a list of size {} < 5",
                lists.get(v).len()
            )));
        }
    }
    let mut min_dist: Option<usize> = None;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].is_empty() || sets[j].is_empty() {
                continue;
            }
            if let Some(d) = g.distance(&sets[i], &sets[j])? {
                min_dist = Some(min_dist.map_or(d, |m| m.min(d)));
            }
        }
    }
    Ok(MainInstance {
        graph: g.clone(),
        lists: lists.clone(),
        sets,
        certs,
        min_pairwise_distance: min_dist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{build, OuterSpec};

    fn triangle() -> PlaneGraph {
        PlaneGraph::from_neighbor_rotation(&[vec![1, 2], vec![2, 0], vec![0, 1]], OuterSpec::First)
            .unwrap()
    }

    fn lists(v: Vec<Vec<Color>>) -> ListAssignment {
        ListAssignment::new(v.into_iter().map(ColorSet::from_colors).collect()).unwrap()
    }

    #[test]
    fn restricted_face_with_adjacent_singletons() {
        let g = triangle();
        let l = lists(vec![vec![1], vec![2], vec![1, 2, 3]]);
        let cert = is_restricted_face(&g, &l, 0).expect("restricted");
        assert_eq!(cert.special_path, vec![0, 1]);
        assert_eq!(cert.path_coloring, vec![1, 2]);
        assert!(cert.check(&g, &l));
    }

    #[test]
    fn all_threes_gives_single_vertex_path() {
        let g = triangle();
        let l = lists(vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]]);
        let cert = is_restricted_face(&g, &l, 0).expect("restricted");
        assert_eq!(cert.special_path, vec![0]);
        assert_eq!(cert.path_coloring, vec![1]);
    }

    // Singletons with equal lists admit no proper edge coloring; with two
    // 1-lists off any other candidate path the face is never restricted.
    #[test]
    fn equal_singletons_block_restriction() {
        let g = triangle();
        let l = lists(vec![vec![1], vec![1], vec![1, 2, 3]]);
        assert!(is_restricted_face(&g, &l, 0).is_none());
        assert!(is_restricted_face(&g, &l, 1).is_none());
    }

    #[test]
    fn restricted_set_cases() {
        let g = triangle();
        let l = lists(vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2]]);
        // Empty set: vacuous, pick any face and least path.
        let cert = is_restricted_set(&g, &l, &BitSet::new()).expect("vacuous");
        assert_eq!(cert.face_id, 0);
        assert_eq!(cert.special_path, vec![0]);
        // A vertex with a 2-list in X blocks restriction.
        let x = BitSet::from_iter([1, 2]);
        assert!(is_restricted_set(&g, &l, &x).is_none());
        // All-3 boundary: set certificate matches the face certificate.
        let l3 = lists(vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]]);
        let x3: BitSet = g.face(0).boundary_graph.vertices.clone();
        let from_set = is_restricted_set(&g, &l3, &x3).unwrap();
        let from_face = is_restricted_face(&g, &l3, from_set.face_id).unwrap();
        assert_eq!(from_set.special_path, from_face.special_path);
        assert_eq!(from_set.path_coloring, from_face.path_coloring);
    }

    #[test]
    fn monotone_in_lists() {
        let g = build::wheel(4).unwrap();
        let mut l = ListAssignment::uniform(5, ColorSet::palette(3));
        l.set(4, ColorSet::palette(5));
        for f in 0..g.faces().len() {
            if is_restricted_face(&g, &l, f).is_some() {
                let mut bigger = l.clone();
                for v in 0..5 {
                    let mut s = bigger.get(v);
                    s.insert(9);
                    bigger.set(v, s);
                }
                assert!(is_restricted_face(&g, &bigger, f).is_some());
            }
        }
    }

    #[test]
    fn validate_canvas_cases() {
        let g = triangle();
        // S = edge 0-1 with singleton lists {1},{2}; vertex 2 has a 3-list.
        let e = g.edge_between(0, 1).unwrap();
        let s = SubgraphRef::from_parts([0, 1], [e]);
        let good = Canvas {
            graph: g.clone(),
            scaffold: s.clone(),
            lists: lists(vec![vec![1], vec![2], vec![1, 2, 3]]),
        };
        let rep = validate_canvas(&good);
        assert!(rep.is_valid(), "{:?}", rep.violations);
        assert!(rep.scaffold_witness.is_some());
        assert_eq!(good.scaffold_path(), Some(vec![0, 1]));

        let bad = Canvas {
            graph: g.clone(),
            scaffold: s.clone(),
            lists: lists(vec![vec![1], vec![1], vec![1, 2, 3]]),
        };
        assert!(validate_canvas(&bad)
            .violations
            .contains(&CanvasViolation::ScaffoldHasNoListColoring));

        // Interior vertex with a 4-list is rejected.
        let w = build::wheel(5).unwrap();
        let mut wl = ListAssignment::uniform(6, ColorSet::palette(3));
        wl.set(5, ColorSet::palette(4));
        let we = w.edge_between(0, 1).unwrap();
        let wc = Canvas {
            graph: w,
            scaffold: SubgraphRef::from_parts([0, 1], [we]),
            lists: wl,
        };
        assert!(validate_canvas(&wc)
            .violations
            .contains(&CanvasViolation::InteriorListTooSmall(5)));
    }

    #[test]
    fn main_instance_construction() {
        let g = triangle();
        let l = lists(vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]]);
        let x: BitSet = g.face(0).boundary_graph.vertices.clone();
        let inst = build_main_instance(&g, &l, vec![x]).unwrap();
        assert_eq!(inst.min_pairwise_distance, None);
        // Overlapping sets: distance 0 accepted.
        let a = BitSet::from_iter([0, 1]);
        let b = BitSet::from_iter([1, 2]);
        let inst2 = build_main_instance(&g, &l, vec![a, b]).unwrap();
        assert_eq!(inst2.min_pairwise_distance, Some(0));
        // List-size violation outside the sets.
        let small = lists(vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2, 3]]);
        let err = build_main_instance(&g, &small, vec![BitSet::from_iter([0, 1])]);
        assert!(err.is_err());
    }

    #[test]
    fn list_assignment_json_round_trip() {
        let l = lists(vec![vec![0, 3], vec![1], vec![2, 4, 5]]);
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"{"0":[0,3],"1":[1],"2":[2,4,5]}"#);
        let back: ListAssignment = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
    }
}
