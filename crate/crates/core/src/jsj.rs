//! Visual JSJ decomposition of `W_Gamma` for 3-convex graphs satisfying
//! the standing assumptions, with the supporting structure lemmas enforced
//! as runtime invariants.

use crate::graph::{
    branches, realization_components_minus_pair, realization_pair_separates, validate, Branch,
    Graph,
};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// The JSJ graph: a bipartite tree with Type-1 vertices labeled by
/// essential cut pairs and Type-2 vertices labeled by vertex sets `A`,
/// carrying the cyclic ordering each `A` inherits from an induced cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsjGraph {
    pub type1: Vec<Type1Vertex>,
    pub type2: Vec<Type2Vertex>,
    /// `(type1 index, type2 index)` incidences; the shared label is the
    /// Type-1 pair.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type1Vertex {
    pub pair: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type2Vertex {
    pub set: BTreeSet<String>,
    /// Cyclic ordering of the set, realized by an induced cycle of the
    /// defining graph.
    pub cyclic_order: Vec<String>,
    /// The branch whose vertex set this is, when the set has exactly two
    /// essential vertices.
    pub branch: Option<Branch>,
}

impl JsjGraph {
    pub fn type1_valence(&self, i: usize) -> usize {
        self.edges.iter().filter(|(a, _)| *a == i).count()
    }

    pub fn type2_valence(&self, j: usize) -> usize {
        self.edges.iter().filter(|(_, b)| *b == j).count()
    }

    /// Converts to the plain bipartite graph used by the covering-space
    /// machinery; Type-1 ids are `p0, p1, ...`, Type-2 ids `A0, A1, ...`.
    pub fn bipartite(&self) -> crate::amalgam::BipartiteGraph {
        let type1: Vec<String> = (0..self.type1.len()).map(|i| format!("p{i}")).collect();
        let type2: Vec<String> = (0..self.type2.len()).map(|j| format!("A{j}")).collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(i, j)| (format!("p{i}"), format!("A{j}")))
            .collect();
        crate::amalgam::BipartiteGraph::new(type1, type2, edges)
            .expect("JSJ graph is a valid bipartite graph")
    }
}

// ============================================================================
// Type-1 pairs
// ============================================================================

/// All essential pairs `{a,b}` whose removal leaves the realization with
/// at least 3 components.
pub fn type1_pairs(g: &Graph) -> Result<Vec<(String, String)>> {
    require_in_g_3convex(g)?;
    Ok(type1_pairs_unchecked(g))
}

fn type1_pairs_unchecked(g: &Graph) -> Vec<(String, String)> {
    let ess = g.essential_vertices();
    let mut out = Vec::new();
    for (i, a) in ess.iter().enumerate() {
        for b in ess.iter().skip(i + 1) {
            if realization_components_minus_pair(g, a, b) >= 3 {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn require_in_g_3convex(g: &Graph) -> Result<()> {
    let rep = validate(g);
    if !rep.in_g_3convex {
        return Err(Error::Unsupported(
            "JSJ decomposition requires a 3-convex graph satisfying the standing assumptions"
                .into(),
        ));
    }
    Ok(())
}

// ============================================================================
// Type-2 sets
// ============================================================================

/// All maximal vertex sets whose elements pairwise separate the
/// realization and whose special subgroup is infinite and not 2-ended.
pub fn type2_sets(g: &Graph) -> Result<Vec<BTreeSet<String>>> {
    require_in_g_3convex(g)?;
    Ok(type2_sets_unchecked(g))
}

fn type2_sets_unchecked(g: &Graph) -> Vec<BTreeSet<String>> {
    // Maximal cliques of the pairwise-separation relation.
    let vs: Vec<String> = g.vertices().cloned().collect();
    let n = vs.len();
    let mut sep = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if realization_pair_separates(g, &vs[i], &vs[j]) {
                sep[i][j] = true;
                sep[j][i] = true;
            }
        }
    }
    let mut cliques: Vec<BTreeSet<usize>> = Vec::new();
    bron_kerbosch(
        &sep,
        BTreeSet::new(),
        (0..n).collect(),
        BTreeSet::new(),
        &mut cliques,
    );
    let pairs = type1_pairs_unchecked(g);
    let mut out: Vec<BTreeSet<String>> = Vec::new();
    for c in cliques {
        let set: BTreeSet<String> = c.iter().map(|&i| vs[i].clone()).collect();
        if !subgroup_infinite_not_two_ended(g, &set) {
            continue;
        }
        // Each Type-2 set carries at least one Type-1 pair (the valence of
        // the corresponding JSJ vertex is at least 1).
        let has_pair = pairs
            .iter()
            .any(|(a, b)| set.contains(a) && set.contains(b));
        if has_pair {
            out.push(set);
        }
    }
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: BTreeSet<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        if !r.is_empty() {
            out.push(r);
        }
        return;
    }
    // Deterministic pivot: smallest index in p union x with most neighbors
    // in p.
    let pivot = p
        .iter()
        .chain(x.iter())
        .cloned()
        .max_by_key(|&u| (p.iter().filter(|&&v| adj[u][v]).count(), usize::MAX - u))
        .unwrap();
    let candidates: Vec<usize> = p.iter().cloned().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.insert(v);
        let p2: BTreeSet<usize> = p.iter().cloned().filter(|&u| adj[v][u]).collect();
        let x2: BTreeSet<usize> = x.iter().cloned().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

/// Infinite and not 2-ended for a triangle-free induced subgraph: at least
/// 3 vertices and not a 2-edge path (the only 2-ended shape possible).
fn subgroup_infinite_not_two_ended(g: &Graph, set: &BTreeSet<String>) -> bool {
    if set.len() < 3 {
        return false;
    }
    if set.len() == 3 {
        let ind = g.induced(set);
        if ind.edge_count() == 2 {
            return false; // path on 3 vertices: 2-ended
        }
    }
    true
}

// ============================================================================
// Cyclic orderings
// ============================================================================

/// Computes the cyclic ordering of a Type-2 set, realized by an induced
/// cycle of `g`, starting from its smallest vertex in the direction of the
/// smaller neighbor. Errors when no ordering exists or it is ambiguous.
pub fn cyclic_ordering(g: &Graph, set: &BTreeSet<String>) -> Result<Vec<String>> {
    let elems: Vec<String> = set.iter().cloned().collect();
    let m = elems.len();
    // Consecutiveness: an arc from one element to another avoiding the
    // rest of the set internally (a direct edge counts).
    let mut arc = vec![vec![false; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            if g.adjacent(&elems[i], &elems[j]) {
                arc[i][j] = true;
                arc[j][i] = true;
                continue;
            }
            let forbidden: BTreeSet<String> = set
                .iter()
                .filter(|v| **v != elems[i] && **v != elems[j])
                .cloned()
                .collect();
            if g.path_avoiding(&elems[i], &elems[j], &forbidden).is_some() {
                arc[i][j] = true;
                arc[j][i] = true;
            }
        }
    }
    // Hamiltonian cycles of the consecutiveness relation.
    let mut solutions: Vec<Vec<usize>> = Vec::new();
    let mut path = vec![0usize];
    let mut used = vec![false; m];
    used[0] = true;
    hamiltonian_cycles(&arc, &mut path, &mut used, &mut solutions, 3);
    if solutions.is_empty() {
        return Err(Error::Internal(format!(
            "no cyclic ordering realizable for the set {set:?}"
        )));
    }
    // Deduplicate reflections (rotations are excluded by fixing start 0).
    let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in &solutions {
        let mut r = s.clone();
        r[1..].reverse();
        canon.insert(std::cmp::min(s.clone(), r));
    }
    if canon.len() > 1 {
        return Err(Error::Internal(format!(
            "cyclic ordering of {set:?} is ambiguous"
        )));
    }
    let sol = canon.into_iter().next().unwrap();
    let order: Vec<String> = sol.into_iter().map(|i| elems[i].clone()).collect();
    verify_induced_cycle_realization(g, set, &order)?;
    Ok(canonical_rotation(order))
}

fn hamiltonian_cycles(
    arc: &[Vec<bool>],
    path: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    let m = arc.len();
    if path.len() == m {
        if arc[*path.last().unwrap()][path[0]] {
            out.push(path.clone());
        }
        return;
    }
    let last = *path.last().unwrap();
    for v in 0..m {
        if !used[v] && arc[last][v] {
            used[v] = true;
            path.push(v);
            hamiltonian_cycles(arc, path, used, out, cap);
            path.pop();
            used[v] = false;
        }
    }
}

/// Checks that some induced cycle of `g` visits the set in the given
/// cyclic order: consecutive elements are joined by internally disjoint
/// paths avoiding the set, and the resulting cycle has no chords.
fn verify_induced_cycle_realization(
    g: &Graph,
    set: &BTreeSet<String>,
    order: &[String],
) -> Result<()> {
    let m = order.len();
    let mut segments: Vec<Vec<String>> = Vec::new();
    // Greedy-with-backtracking over shortest-first segment choices would be
    // costly to enumerate fully; in the graphs the decomposition applies
    // to, consecutive elements are adjacent or joined through branches
    // disjoint from everything else, so a shortest path avoiding the set
    // and previously used interiors suffices, with a final induced check.
    let mut used: BTreeSet<String> = set.iter().cloned().collect();
    for i in 0..m {
        let a = &order[i];
        let b = &order[(i + 1) % m];
        if g.adjacent(a, b) {
            segments.push(vec![a.clone(), b.clone()]);
            continue;
        }
        let mut forbidden = used.clone();
        forbidden.remove(a);
        forbidden.remove(b);
        // Avoid interiors of earlier segments as well.
        let path = g.path_avoiding(a, b, &forbidden).ok_or_else(|| {
            Error::Internal(format!(
                "cyclic ordering of {set:?} not realizable between {a} and {b}"
            ))
        })?;
        for v in &path[1..path.len() - 1] {
            used.insert(v.clone());
        }
        segments.push(path);
    }
    // Induced check: the only edges among cycle vertices are consecutive.
    let mut cyc: Vec<String> = Vec::new();
    for s in &segments {
        cyc.extend(s[..s.len() - 1].iter().cloned());
    }
    let k = cyc.len();
    let index: BTreeMap<&String, usize> = cyc.iter().enumerate().map(|(i, v)| (v, i)).collect();
    for (a, b) in g.edges() {
        if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
            let d = (i + k - j) % k;
            if d != 1 && d != k - 1 {
                return Err(Error::Internal(format!(
                    "realizing cycle for {set:?} has a chord {a}-{b}"
                )));
            }
        }
    }
    Ok(())
}

fn canonical_rotation(order: Vec<String>) -> Vec<String> {
    let m = order.len();
    let start = order
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| (*v).clone())
        .map(|(i, _)| i)
        .unwrap();
    let fwd: Vec<String> = (0..m).map(|i| order[(start + i) % m].clone()).collect();
    let bwd: Vec<String> = (0..m)
        .map(|i| order[(start + m - i) % m].clone())
        .collect();
    std::cmp::min(fwd, bwd)
}

// ============================================================================
// Decomposition
// ============================================================================

/// Assembles the JSJ graph and asserts every structural invariant from
/// the construction it encodes.
pub fn jsj_decomposition(g: &Graph) -> Result<JsjGraph> {
    require_in_g_3convex(g)?;
    let pairs = type1_pairs_unchecked(g);
    if pairs.is_empty() {
        return Err(Error::Unsupported(
            "graph outside supported family: no essential cut pair with 3 or more components"
                .into(),
        ));
    }
    let sets = type2_sets_unchecked(g);
    let branch_list = branches(g);
    let branch_by_set: BTreeMap<BTreeSet<String>, Branch> = branch_list
        .iter()
        .map(|b| (b.vertex_set(), b.clone()))
        .collect();

    let mut type2 = Vec::new();
    for set in &sets {
        let ess_in: Vec<&String> = set.iter().filter(|v| g.valence(v) >= 3).collect();
        let l = ess_in.len();
        // Structure lemma: L >= 2, with equality exactly for branch sets.
        if l < 2 {
            return Err(Error::Internal(format!(
                "Type-2 set {set:?} has fewer than 2 essential vertices"
            )));
        }
        let branch = branch_by_set.get(set).cloned();
        if (l == 2) != branch.is_some() {
            return Err(Error::Internal(format!(
                "Type-2 set {set:?}: two essential vertices iff a branch vertex set"
            )));
        }
        if let Some(b) = &branch {
            // Branch sets label Type-1 pairs with at least 3 components.
            if realization_components_minus_pair(g, &b.endpoints.0, &b.endpoints.1) < 3 {
                return Err(Error::Internal(format!(
                    "branch set {set:?} endpoints do not form a Type-1 pair"
                )));
            }
        }
        // The set is not the vertex set of an induced cycle.
        let ind = g.induced(set);
        let is_cycle = ind.is_connected()
            && ind.vertex_count() >= 3
            && set.iter().all(|v| ind.valence(v) == 2);
        if is_cycle {
            return Err(Error::Internal(format!(
                "Type-2 set {set:?} equals an induced cycle"
            )));
        }
        let cyclic_order = match branch {
            Some(ref b) => {
                // The cyclic order of a branch set is its path order; the
                // cycle closes through another component of the pair.
                canonical_rotation(b.path())
            }
            None => cyclic_ordering(g, set)?,
        };
        type2.push(Type2Vertex {
            set: set.clone(),
            cyclic_order,
            branch,
        });
    }

    let type1: Vec<Type1Vertex> = pairs
        .iter()
        .map(|p| Type1Vertex { pair: p.clone() })
        .collect();

    let mut edges = Vec::new();
    for (i, t1) in type1.iter().enumerate() {
        for (j, t2) in type2.iter().enumerate() {
            if t2.set.contains(&t1.pair.0) && t2.set.contains(&t1.pair.1) {
                edges.push((i, j));
            }
        }
    }

    let jsj = JsjGraph { type1, type2, edges };

    // Type-1 valence equals the component count of the pair and is >= 3.
    for (i, t1) in jsj.type1.iter().enumerate() {
        let k = realization_components_minus_pair(g, &t1.pair.0, &t1.pair.1);
        let val = jsj.type1_valence(i);
        if val != k || val < 3 {
            return Err(Error::Internal(format!(
                "Type-1 pair {:?} has valence {val}, expected component count {k} >= 3",
                t1.pair
            )));
        }
    }
    // Type-1 pairs inside a set are consecutive in its cyclic order.
    for t2 in &jsj.type2 {
        let order = &t2.cyclic_order;
        let m = order.len();
        let pos: BTreeMap<&String, usize> =
            order.iter().enumerate().map(|(i, v)| (v, i)).collect();
        for t1 in &jsj.type1 {
            if t2.set.contains(&t1.pair.0) && t2.set.contains(&t1.pair.1) {
                let (i, j) = (pos[&t1.pair.0], pos[&t1.pair.1]);
                let d = (i + m - j) % m;
                if d != 1 && d != m - 1 {
                    return Err(Error::Internal(format!(
                        "Type-1 pair {:?} not consecutive in the cyclic order of {:?}",
                        t1.pair, t2.set
                    )));
                }
            }
        }
    }
    // Bipartite tree.
    if !is_tree(&jsj) {
        return Err(Error::Unsupported(
            "graph outside supported family: JSJ graph is not a tree".into(),
        ));
    }
    Ok(jsj)
}

fn is_tree(j: &JsjGraph) -> bool {
    let n = j.type1.len() + j.type2.len();
    if j.edges.len() + 1 != n {
        return false;
    }
    // Connectivity over the bipartite incidence.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &j.edges {
        let u = a; // Type-1 index space [0, t1)
        let v = j.type1.len() + b;
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut seen = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in adj.get(&u).into_iter().flatten() {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen.len() == n
}

/// Tree diameter of the JSJ graph; always even because all leaves are
/// Type-2.
pub fn jsj_diameter(j: &JsjGraph) -> usize {
    let t1 = j.type1.len();
    let n = t1 + j.type2.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &j.edges {
        adj[a].push(t1 + b);
        adj[t1 + b].push(a);
    }
    let bfs_far = |start: usize| -> (usize, usize) {
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut far = (start, 0);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    if dist[v] > far.1 {
                        far = (v, dist[v]);
                    }
                    queue.push_back(v);
                }
            }
        }
        far
    };
    if n <= 1 {
        return 0;
    }
    let (a, _) = bfs_far(0);
    let (_, d) = bfs_far(a);
    d
}

pub fn jsj_to_json(j: &JsjGraph) -> serde_json::Value {
    serde_json::json!({
        "type1": j.type1.iter().enumerate().map(|(i, t)| serde_json::json!({
            "id": i,
            "pair": [t.pair.0, t.pair.1],
        })).collect::<Vec<_>>(),
        "type2": j.type2.iter().enumerate().map(|(k, t)| serde_json::json!({
            "id": j.type1.len() + k,
            "A": t.set.iter().cloned().collect::<Vec<_>>(),
            "cyclic_order": t.cyclic_order,
            "is_branch": t.branch.is_some(),
        })).collect::<Vec<_>>(),
        "edges": j.edges.iter().map(|&(a, b)| vec![a, j.type1.len() + b]).collect::<Vec<_>>(),
    })
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_text;
    use crate::racg::{recognize_gen_theta, recognize_theta_cycle};

    #[test]
    fn theta_jsj_is_star() {
        let g = parse_graph_text("theta:2,2,3,4").unwrap();
        let pairs = type1_pairs(&g).unwrap();
        assert_eq!(pairs.len(), 1);
        let sets = type2_sets(&g).unwrap();
        assert_eq!(sets.len(), 4, "four branch vertex sets");
        let j = jsj_decomposition(&g).unwrap();
        assert_eq!(j.type1.len(), 1);
        assert_eq!(j.type2.len(), 4);
        assert_eq!(j.type1_valence(0), 4);
        assert_eq!(jsj_diameter(&j), 2);
    }

    #[test]
    fn theta222_branch_sets() {
        let g = parse_graph_text("theta:2,2,2").unwrap();
        let sets = type2_sets(&g).unwrap();
        assert_eq!(sets.len(), 3);
        for s in &sets {
            assert_eq!(s.len(), 4, "branch set: endpoints plus two interiors");
            let ess: Vec<&String> = s.iter().filter(|v| g.valence(v) >= 3).collect();
            assert_eq!(ess.len(), 2);
        }
    }

    #[test]
    fn cycle_jsj_has_diameter_4() {
        let g = parse_graph_text("cycle:[[2,2],[2,2],[2,2]]").unwrap();
        let j = jsj_decomposition(&g).unwrap();
        assert_eq!(j.type1.len(), 3);
        assert_eq!(j.type2.len(), 7, "six branch sets plus the central set");
        assert_eq!(jsj_diameter(&j), 4);
        // The central Type-2 vertex is the set of the three essential
        // vertices, with valence 3.
        let central = j
            .type2
            .iter()
            .enumerate()
            .find(|(_, t)| t.branch.is_none())
            .expect("central set");
        assert_eq!(central.1.set.len(), 3);
        assert_eq!(j.type2_valence(central.0), 3);
    }

    #[test]
    fn cycle_with_trivial_component_central_set() {
        let g = parse_graph_text("cycle:[[2,3],[4],[2,2]]").unwrap();
        let j = jsj_decomposition(&g).unwrap();
        assert_eq!(j.type1.len(), 2);
        let central = j.type2.iter().find(|t| t.branch.is_none()).unwrap();
        // Central set: 3 essential vertices + 4 interior vertices of the
        // trivial component.
        assert_eq!(central.set.len(), 7);
        assert_eq!(jsj_diameter(&j), 4);
    }

    #[test]
    fn six_component_cycle_with_three_trivials() {
        let g = parse_graph_text("cycle:[[2,2],[3],[2,2],[3],[2,2],[3]]").unwrap();
        let j = jsj_decomposition(&g).unwrap();
        let central = j.type2.iter().find(|t| t.branch.is_none()).unwrap();
        assert_eq!(central.set.len(), 6 + 9);
        assert_eq!(jsj_diameter(&j), 4);
    }

    #[test]
    fn diameter_matches_family_recognition() {
        for text in ["theta:2,2,2", "theta:2,3,4,5", "cycle:[[2,2],[2,2],[2,2]]", "cycle:[[2,3],[4],[2,2]]"] {
            let g = parse_graph_text(text).unwrap();
            let j = jsj_decomposition(&g).unwrap();
            let d = jsj_diameter(&j);
            assert_eq!(d % 2, 0);
            assert_eq!(recognize_gen_theta(&g).is_some(), d == 2, "{text}");
            assert_eq!(recognize_theta_cycle(&g).is_some(), d == 4, "{text}");
        }
    }

    #[test]
    fn non_family_graph_rejected() {
        let g = parse_graph_text("theta:1,2,2").unwrap();
        assert!(jsj_decomposition(&g).is_err());
    }

    #[test]
    fn diameter_of_path_of_two_type1() {
        // Hand-built tree: t2 - t1 - t2 - t1 - t2 with padding leaves to
        // give the Type-1 vertices valence 3.
        let j = JsjGraph {
            type1: vec![
                Type1Vertex { pair: ("a".into(), "b".into()) },
                Type1Vertex { pair: ("c".into(), "d".into()) },
            ],
            type2: vec![
                Type2Vertex { set: BTreeSet::new(), cyclic_order: vec![], branch: None },
                Type2Vertex { set: BTreeSet::new(), cyclic_order: vec![], branch: None },
                Type2Vertex { set: BTreeSet::new(), cyclic_order: vec![], branch: None },
                Type2Vertex { set: BTreeSet::new(), cyclic_order: vec![], branch: None },
                Type2Vertex { set: BTreeSet::new(), cyclic_order: vec![], branch: None },
                Type2Vertex { set: BTreeSet::new(), cyclic_order: vec![], branch: None },
                Type2Vertex { set: BTreeSet::new(), cyclic_order: vec![], branch: None },
            ],
            edges: vec![
                (0, 0),
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (1, 4),
                (0, 5),
                (1, 6),
            ],
        };
        assert_eq!(jsj_diameter(&j), 4);
    }
}
