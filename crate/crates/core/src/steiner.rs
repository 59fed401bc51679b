//! Exact minimum Steiner trees (edge count) with a secondary objective that
//! maximizes edges incident to a designated vertex set, plus the seam
//! decomposition (suppressed tree, seam paths, midpoints) and the property
//! checker for optimal trees.

use crate::plane_graph::{EdgeId, PlaneGraph, SubgraphRef, VertexId};
use crate::{BitSet, CfError, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

pub const DEFAULT_TERMINAL_CAP: usize = 8;

fn terminal_cap() -> usize {
    std::env::var("CANVAS_FORGE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_TERMINAL_CAP)
}

/// Lexicographic cost: fewer edges first, then more edges touching the
/// tie-break set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Cost {
    len: u32,
    touch: u32,
}

impl Cost {
    const ZERO: Cost = Cost { len: 0, touch: 0 };
    const INF: Cost = Cost {
        len: u32::MAX,
        touch: 0,
    };

    fn add(self, other: Cost) -> Cost {
        Cost {
            len: self.len + other.len,
            touch: self.touch + other.touch,
        }
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then(other.touch.cmp(&self.touch))
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A maximal path of the tree whose interior vertices have degree two and
/// are not terminals. The midpoint is the central vertex; for odd lengths
/// the lower-indexed of the two central vertices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Seam {
    pub path: Vec<VertexId>,
    pub midpoint: VertexId,
}

impl Seam {
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.path[0], *self.path.last().unwrap())
    }
}

#[derive(Clone, Debug)]
pub struct SteinerTree {
    pub tree: SubgraphRef,
    pub terminals: BitSet,
    /// Vertices of the suppressed tree: terminals and branch vertices.
    pub contracted_vertices: BitSet,
    pub seams: Vec<Seam>,
}

impl SteinerTree {
    /// Assemble the seam decomposition of an arbitrary tree subgraph.
    pub fn from_subgraph(g: &PlaneGraph, tree: SubgraphRef, terminals: BitSet) -> Result<Self> {
        let seams = seams_and_midpoints(g, &tree, &terminals)?;
        let mut contracted = BitSet::with_capacity(g.num_vertices());
        let deg = degrees(g, &tree);
        for v in tree.vertices.iter() {
            if terminals.contains(v) || deg[v] != 2 {
                contracted.insert(v);
            }
        }
        Ok(SteinerTree {
            tree,
            terminals,
            contracted_vertices: contracted,
            seams,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edges.len()
    }
}

fn degrees(g: &PlaneGraph, sub: &SubgraphRef) -> Vec<usize> {
    let mut deg = vec![0usize; g.num_vertices()];
    for e in sub.edges.iter() {
        let (u, v) = g.ends(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// Suppress degree-two non-terminal vertices: each edge of the contracted
/// tree corresponds to a seam path. Deterministic orientation: each seam
/// runs from its smaller end; seams sorted by (ends, length).
pub fn seams_and_midpoints(
    g: &PlaneGraph,
    tree: &SubgraphRef,
    terminals: &BitSet,
) -> Result<Vec<Seam>> {
    let deg = degrees(g, tree);
    let keep = |v: VertexId| terminals.contains(v) || deg[v] != 2;
    let mut seams: Vec<Seam> = Vec::new();
    let mut used = BitSet::new(); // darts consumed, keyed by dart id
    for v in tree.vertices.iter() {
        if !keep(v) {
            continue;
        }
        for &d in g.rotation_at(v) {
            let e = crate::plane_graph::dart_edge(d);
            if !tree.edges.contains(e) || used.contains(d) {
                continue;
            }
            // Walk away from v until the next kept vertex.
            let mut path = vec![v];
            let mut dart = d;
            loop {
                used.insert(dart);
                used.insert(crate::plane_graph::twin(dart));
                let w = g.dart_target(dart);
                path.push(w);
                if keep(w) {
                    break;
                }
                let next = g
                    .rotation_at(w)
                    .iter()
                    .copied()
                    .find(|&x| {
                        tree.edges.contains(crate::plane_graph::dart_edge(x))
                            && x != crate::plane_graph::twin(dart)
                    })
                    .ok_or_else(|| {
                        CfError::Argument("seam walk fell off the tree".into())
                    })?;
                dart = next;
            }
            if path[0] > *path.last().unwrap() {
                path.reverse();
            }
            let k = path.len() - 1;
            let midpoint = if k % 2 == 0 {
                path[k / 2]
            } else {
                path[(k - 1) / 2].min(path[(k + 1) / 2])
            };
            seams.push(Seam { path, midpoint });
        }
    }
    seams.sort_by(|a, b| (a.ends(), a.len()).cmp(&(b.ends(), b.len())));
    Ok(seams)
}

/// Exact minimum-edge Steiner tree over terminal subsets; among minimizers,
/// maximizes the number of tree edges incident to `tiebreak` when given.
pub fn optimal_steiner(
    g: &PlaneGraph,
    terminals: &BitSet,
    tiebreak: Option<&BitSet>,
) -> Result<SteinerTree> {
    let terms: Vec<VertexId> = terminals.iter().collect();
    if terms.is_empty() {
        return Err(CfError::Argument("no terminals".into()));
    }
    let cap = terminal_cap();
    if terms.len() > cap {
        return Err(CfError::Cap(format!(
            "{} terminals exceed the exact-solver cap {cap}",
            terms.len()
        )));
    }
    let n = g.num_vertices();
    let k = terms.len();
    let touch = |e: EdgeId| -> u32 {
        let Some(y) = tiebreak else { return 0 };
        let (u, v) = g.ends(e);
        y.contains(u) as u32 + y.contains(v) as u32
    };

    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    enum Choice {
        Root,
        Relax(VertexId),
        Merge(u32),
        None,
    }

    let full = (1u32 << k) - 1;
    let mut dp = vec![vec![Cost::INF; n]; (full + 1) as usize];
    let mut choice = vec![vec![Choice::None; n]; (full + 1) as usize];

    for mask in 1..=full {
        let m = mask as usize;
        if mask.count_ones() == 1 {
            let i = mask.trailing_zeros() as usize;
            dp[m][terms[i]] = Cost::ZERO;
            choice[m][terms[i]] = Choice::Root;
        } else {
            // Merge two sub-trees at a shared vertex; fix the lowest terminal
            // on one side to halve the submask space.
            let low = 1u32 << mask.trailing_zeros();
            let rest = mask ^ low;
            let mut sub = rest;
            loop {
                let a = sub | low;
                let b = mask ^ a;
                if b != 0 {
                    for v in 0..n {
                        if dp[a as usize][v] == Cost::INF || dp[b as usize][v] == Cost::INF {
                            continue;
                        }
                        let cand = dp[a as usize][v].add(dp[b as usize][v]);
                        if cand < dp[m][v] {
                            dp[m][v] = cand;
                            choice[m][v] = Choice::Merge(a);
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        // Close under shortest-path relaxation.
        let mut heap: BinaryHeap<std::cmp::Reverse<(Cost, VertexId)>> = dp[m]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != Cost::INF)
            .map(|(v, &c)| std::cmp::Reverse((c, v)))
            .collect();
        while let Some(std::cmp::Reverse((c, v))) = heap.pop() {
            if c != dp[m][v] {
                continue;
            }
            for &d in g.rotation_at(v) {
                let e = crate::plane_graph::dart_edge(d);
                let w = g.dart_target(d);
                let cand = c.add(Cost {
                    len: 1,
                    touch: touch(e),
                });
                if cand < dp[m][w] {
                    dp[m][w] = cand;
                    choice[m][w] = Choice::Relax(v);
                    heap.push(std::cmp::Reverse((cand, w)));
                }
            }
        }
    }

    let root = terms[0];
    if dp[full as usize][root] == Cost::INF {
        return Err(CfError::Argument("terminals are not connected".into()));
    }

    // Reconstruct the edge set.
    let mut edges = BitSet::new();
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        match choice[mask as usize][v] {
            Choice::Root => {}
            Choice::Relax(u) => {
                let e = g.edge_between(u, v).expect("relaxed along an edge");
                edges.insert(e);
                stack.push((mask, u));
            }
            Choice::Merge(a) => {
                stack.push((a, v));
                stack.push((mask ^ a, v));
            }
            Choice::None => {
                return Err(CfError::Internal(
                    "steiner reconstruction hit an unset state".into(),
                ))
            }
        }
    }
    let mut verts = BitSet::with_capacity(n);
    for e in edges.iter() {
        let (u, v) = g.ends(e);
        verts.insert(u);
        verts.insert(v);
    }
    for t in terminals.iter() {
        verts.insert(t);
    }
    let tree = SubgraphRef {
        vertices: verts,
        edges,
    };
    // The reconstruction realizes the DP cost exactly; anything smaller
    // would contradict optimality, anything larger is a reconstruction bug.
    let total = Cost {
        len: tree.edges.len() as u32,
        touch: tree.edges.iter().map(touch).sum(),
    };
    if total != dp[full as usize][root] {
        return Err(CfError::Internal(format!(
            "steiner reconstruction cost {total:?} disagrees with dp {:?}",
            dp[full as usize][root]
        )));
    }
    let st = SteinerTree::from_subgraph(g, tree, terminals.clone())?;
    debug_assert!(is_tree(g, &st.tree));
    Ok(st)
}

fn is_tree(g: &PlaneGraph, sub: &SubgraphRef) -> bool {
    let vs: Vec<VertexId> = sub.vertices.iter().collect();
    if vs.is_empty() {
        return false;
    }
    if sub.edges.len() + 1 != vs.len() {
        return false;
    }
    // connectivity over sub edges
    let mut seen = BitSet::with_capacity(g.num_vertices());
    let mut stack = vec![vs[0]];
    seen.insert(vs[0]);
    while let Some(u) = stack.pop() {
        for &d in g.rotation_at(u) {
            let e = crate::plane_graph::dart_edge(d);
            if !sub.edges.contains(e) {
                continue;
            }
            let w = g.dart_target(d);
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen.len() == vs.len()
}

/// The five properties of an optimal Steiner tree: tree shape, leaf
/// terminality, seam count at most 2(|S|-1), midpoint-to-terminal distance,
/// and pairwise midpoint separation. All must hold on genuinely optimal
/// trees; a false flags either a suboptimal tree or a bug.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SteinerLemmaReport {
    pub is_tree: bool,
    pub leaves_are_terminals: bool,
    pub seam_count_bounded: bool,
    pub midpoints_far_from_terminals: bool,
    pub midpoints_pairwise_separated: bool,
}

impl SteinerLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.is_tree
            && self.leaves_are_terminals
            && self.seam_count_bounded
            && self.midpoints_far_from_terminals
            && self.midpoints_pairwise_separated
    }
}

pub fn verify_steiner_lemma(g: &PlaneGraph, t: &SteinerTree) -> Result<SteinerLemmaReport> {
    let tree_ok = is_tree(g, &t.tree) && t.terminals.is_subset_of(&t.tree.vertices);
    let deg = degrees(g, &t.tree);
    let leaves_ok = t
        .tree
        .vertices
        .iter()
        .filter(|&v| deg[v] == 1)
        .all(|v| t.terminals.contains(v));
    let seam_bound = t.seams.len() <= 2 * t.terminals.len().saturating_sub(1);
    let mut mid_term = true;
    for seam in &t.seams {
        let d = g
            .distance(&BitSet::from_iter([seam.midpoint]), &t.terminals)?
            .ok_or_else(|| CfError::Argument("midpoint disconnected from terminals".into()))?;
        // d >= (len - 1)/2, compared in integers.
        if 2 * d + 1 < seam.len() {
            mid_term = false;
        }
    }
    let mut mid_pair = true;
    for i in 0..t.seams.len() {
        for j in i + 1..t.seams.len() {
            let (a, b) = (&t.seams[i], &t.seams[j]);
            let d = g
                .distance(
                    &BitSet::from_iter([a.midpoint]),
                    &BitSet::from_iter([b.midpoint]),
                )?
                .unwrap_or(usize::MAX);
            // d >= (|e| + |f| - 2)/4, compared in integers.
            if 4 * d + 2 < a.len() + b.len() {
                mid_pair = false;
            }
        }
    }
    Ok(SteinerLemmaReport {
        is_tree: tree_ok,
        leaves_are_terminals: leaves_ok,
        seam_count_bounded: seam_bound,
        midpoints_far_from_terminals: mid_term,
        midpoints_pairwise_separated: mid_pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{build, OuterSpec};

    #[test]
    fn path_between_its_ends() {
        let g = build::path_graph(5).unwrap();
        let t = optimal_steiner(&g, &BitSet::from_iter([0, 4]), None).unwrap();
        assert_eq!(t.edge_count(), 4);
        assert_eq!(t.seams.len(), 1);
        assert_eq!(t.seams[0].len(), 4);
        // length 4: the unique central vertex
        assert_eq!(t.seams[0].midpoint, 2);
        assert!(verify_steiner_lemma(&g, &t).unwrap().all_hold());
    }

    #[test]
    fn odd_seam_midpoint_takes_lower_index() {
        let g = build::path_graph(6).unwrap();
        let t = optimal_steiner(&g, &BitSet::from_iter([0, 5]), None).unwrap();
        assert_eq!(t.seams[0].len(), 5);
        assert_eq!(t.seams[0].midpoint, 2);
    }

    #[test]
    fn star_with_three_leaf_terminals() {
        // K1,3: center 0, leaves 1,2,3.
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1, 2, 3], vec![0], vec![0], vec![0]],
            OuterSpec::First,
        )
        .unwrap();
        let t = optimal_steiner(&g, &BitSet::from_iter([1, 2, 3]), None).unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.seams.len(), 3);
        assert!(t.seams.len() <= 2 * (3 - 1));
        assert!(verify_steiner_lemma(&g, &t).unwrap().all_hold());
    }

    fn grid4() -> PlaneGraph {
        // 4x4 grid, vertex r*4+c, row-major.
        let n = 16;
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                // cyclic order: up, right, down, left
                if r > 0 {
                    rot[v].push(v - 4);
                }
                if c < 3 {
                    rot[v].push(v + 1);
                }
                if r < 3 {
                    rot[v].push(v + 4);
                }
                if c > 0 {
                    rot[v].push(v - 1);
                }
            }
        }
        PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::Corner { vertex: 0, pos: 0 }).unwrap()
    }

    /// Independent oracle: min |U|-1 over U containing the terminals with
    /// G[U] connected.
    fn brute_min(g: &PlaneGraph, terminals: &BitSet) -> Option<usize> {
        let n = g.num_vertices();
        let free: Vec<usize> = (0..n).filter(|v| !terminals.contains(*v)).collect();
        let base: Vec<usize> = terminals.iter().collect();
        let mut best: Option<usize> = None;
        for mask in 0..(1u32 << free.len()) {
            let mut u: Vec<usize> = base.clone();
            for (i, &v) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    u.push(v);
                }
            }
            if let Some(b) = best {
                if u.len() - 1 >= b {
                    continue;
                }
            }
            // connectivity of G[u]
            let inset = BitSet::from_iter(u.iter().copied());
            let mut seen = BitSet::new();
            let mut stack = vec![u[0]];
            seen.insert(u[0]);
            while let Some(x) = stack.pop() {
                for y in g.neighbors(x) {
                    if inset.contains(y) && !seen.contains(y) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            if seen.len() == u.len() {
                best = Some(best.map_or(u.len() - 1, |b| b.min(u.len() - 1)));
            }
        }
        best
    }

    #[test]
    fn grid_corners_match_bruteforce() {
        let g = grid4();
        let terms = BitSet::from_iter([0, 3, 12]);
        let t = optimal_steiner(&g, &terms, None).unwrap();
        // Oracle-derived minimum: the L through the corner vertex 0.
        assert_eq!(brute_min(&g, &terms), Some(6));
        assert_eq!(t.edge_count(), 6);
        assert!(verify_steiner_lemma(&g, &t).unwrap().all_hold());
    }

    #[test]
    fn deliberate_detour_fails_midpoint_distance() {
        // Cycle 0-1-2-3-4-5-9-8-7-6-0 plus chord 0-7. The detour path
        // 0-6-7-8-9-5 has its midpoint 7 next to terminal 0.
        let rot: Vec<Vec<usize>> = vec![
            vec![6, 7, 1], // 0
            vec![0, 2],    // 1
            vec![1, 3],    // 2
            vec![2, 4],    // 3
            vec![3, 5],    // 4
            vec![4, 9],    // 5
            vec![0, 7],    // 6
            vec![0, 6, 8], // 7
            vec![7, 9],    // 8
            vec![8, 5],    // 9
        ];
        let g = PlaneGraph::from_neighbor_rotation(&rot, OuterSpec::First).unwrap();
        let terms = BitSet::from_iter([0, 5]);
        let mut edges = BitSet::new();
        for (u, v) in [(0, 6), (6, 7), (7, 8), (8, 9), (9, 5)] {
            edges.insert(g.edge_between(u, v).unwrap());
        }
        let mut verts = BitSet::new();
        for v in [0, 5, 6, 7, 8, 9] {
            verts.insert(v);
        }
        let detour = SteinerTree::from_subgraph(
            &g,
            SubgraphRef {
                vertices: verts,
                edges,
            },
            terms.clone(),
        )
        .unwrap();
        let rep = verify_steiner_lemma(&g, &detour).unwrap();
        assert!(rep.is_tree && rep.leaves_are_terminals && rep.seam_count_bounded);
        assert!(!rep.midpoints_far_from_terminals);
        // The genuine optimum passes.
        let best = optimal_steiner(&g, &terms, None).unwrap();
        assert_eq!(best.edge_count(), 4);
        assert!(verify_steiner_lemma(&g, &best).unwrap().all_hold());
    }

    #[test]
    fn single_edge_tree_bound_is_vacuous() {
        let g = build::path_graph(2).unwrap();
        let t = optimal_steiner(&g, &BitSet::from_iter([0, 1]), None).unwrap();
        assert_eq!(t.seams.len(), 1);
        assert_eq!(t.seams[0].len(), 1);
        assert!(verify_steiner_lemma(&g, &t).unwrap().all_hold());
    }

    #[test]
    fn tiebreak_prefers_terminal_incident_edges() {
        // Square 0-1-2-3 with both 0-1-2 and 0-3-2 joining terminals 0 and 2:
        // the tie-break set {1} pulls the tree through vertex 1.
        let g = build::cycle_graph(4).unwrap();
        let terms = BitSet::from_iter([0, 2]);
        let via1 = optimal_steiner(&g, &terms, Some(&BitSet::from_iter([1]))).unwrap();
        assert!(via1.tree.vertices.contains(1));
        let via3 = optimal_steiner(&g, &terms, Some(&BitSet::from_iter([3]))).unwrap();
        assert!(via3.tree.vertices.contains(3));
    }

    #[test]
    fn terminal_cap_enforced() {
        let g = build::path_graph(10).unwrap();
        let terms = BitSet::from_iter(0..9);
        assert!(matches!(
            optimal_steiner(&g, &terms, None),
            Err(CfError::Cap(_))
        ));
    }

    #[test]
    fn disconnected_terminals_error() {
        let g = PlaneGraph::from_neighbor_rotation(
            &[vec![1], vec![0], vec![3], vec![2]],
            OuterSpec::First,
        )
        .unwrap();
        assert!(matches!(
            optimal_steiner(&g, &BitSet::from_iter([0, 2]), None),
            Err(CfError::Argument(_))
        ));
    }

    #[test]
    fn dp_matches_bruteforce_on_wheels_and_grids() {
        for g in [build::wheel(6).unwrap(), grid4()] {
            let n = g.num_vertices();
            let samples: Vec<Vec<usize>> = vec![
                vec![0, n - 1],
                vec![0, 1, n - 1],
                vec![0, n / 2, n - 1],
                vec![1, 2, n - 2, n - 1],
            ];
            for terms in samples {
                let tset = BitSet::from_iter(terms.iter().copied());
                let t = optimal_steiner(&g, &tset, None).unwrap();
                assert_eq!(Some(t.edge_count()), brute_min(&g, &tset));
                assert!(verify_steiner_lemma(&g, &t).unwrap().all_hold());
            }
        }
    }
}
