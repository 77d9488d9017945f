//! Finite simplicial graphs, the standing assumptions on defining graphs,
//! and cut-pair/branch combinatorics.
//!
//! Vertex identifiers are opaque strings; every ordering used for
//! deterministic output is lexicographic on identifiers.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A finite simplicial graph: no loops, no multiple edges, every edge
/// endpoint declared. Malformed input is rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>, // normalized (min, max)
    adj: BTreeMap<String, BTreeSet<String>>,
}

impl Graph {
    pub fn new<I, J, S>(vertices: I, edges: J) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let vs: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let mut es: BTreeSet<(String, String)> = BTreeSet::new();
        let mut adj: BTreeMap<String, BTreeSet<String>> =
            vs.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex `{a}`")));
            }
            for x in [&a, &b] {
                if !vs.contains(x) {
                    return Err(Error::InvalidInput(format!(
                        "edge endpoint `{x}` is not a declared vertex"
                    )));
                }
            }
            let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            if !es.insert(key) {
                return Err(Error::InvalidInput(format!("duplicate edge {{{a},{b}}}")));
            }
            adj.get_mut(&a).unwrap().insert(b.clone());
            adj.get_mut(&b).unwrap().insert(a.clone());
        }
        Ok(Graph { vertices: vs, edges: es, adj })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &String> {
        self.vertices.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(String, String)> {
        self.edges.iter()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn adjacent(&self, a: &str, b: &str) -> bool {
        self.adj.get(a).map_or(false, |s| s.contains(b))
    }

    pub fn neighbors(&self, v: &str) -> impl Iterator<Item = &String> {
        self.adj.get(v).into_iter().flatten()
    }

    pub fn valence(&self, v: &str) -> usize {
        self.adj.get(v).map_or(0, |s| s.len())
    }

    /// Vertices of valence at least 3.
    pub fn essential_vertices(&self) -> Vec<String> {
        self.vertices
            .iter()
            .filter(|v| self.valence(v) >= 3)
            .cloned()
            .collect()
    }

    /// Connected components after deleting `removed`, as sorted vertex sets.
    pub fn components_without(&self, removed: &BTreeSet<String>) -> Vec<BTreeSet<String>> {
        let mut seen: BTreeSet<String> = removed.clone();
        let mut comps = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                comp.insert(v.clone());
                for w in self.neighbors(&v) {
                    if !seen.contains(w) {
                        seen.insert(w.clone());
                        queue.push_back(w.clone());
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&BTreeSet::new()).len() == 1
    }

    /// The subgraph induced on `set`.
    pub fn induced(&self, set: &BTreeSet<String>) -> Graph {
        let vs: Vec<String> = set.iter().cloned().collect();
        let es: Vec<(String, String)> = self
            .edges
            .iter()
            .filter(|(a, b)| set.contains(a) && set.contains(b))
            .cloned()
            .collect();
        Graph::new(vs, es).expect("induced subgraph of a valid graph is valid")
    }

    /// Shortest path from `a` to `b` avoiding `forbidden` internally
    /// (endpoints may be listed in `forbidden`).
    pub fn path_avoiding(
        &self,
        a: &str,
        b: &str,
        forbidden: &BTreeSet<String>,
    ) -> Option<Vec<String>> {
        if a == b {
            return Some(vec![a.to_string()]);
        }
        let mut prev: BTreeMap<String, String> = BTreeMap::new();
        let mut queue = VecDeque::from([a.to_string()]);
        let mut seen: BTreeSet<String> = BTreeSet::from([a.to_string()]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(&v) {
                if seen.contains(w) {
                    continue;
                }
                if w == b {
                    let mut path = vec![b.to_string(), v.clone()];
                    let mut cur = v.clone();
                    while let Some(p) = prev.get(&cur) {
                        path.push(p.clone());
                        cur = p.clone();
                    }
                    path.reverse();
                    return Some(path);
                }
                if forbidden.contains(w) {
                    continue;
                }
                seen.insert(w.clone());
                prev.insert(w.clone(), v.clone());
                queue.push_back(w.clone());
            }
        }
        None
    }
}

// ============================================================================
// Branches
// ============================================================================

/// A branch: a reduced path between essential vertices with no essential
/// vertex in its interior.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Branch {
    pub endpoints: (String, String),
    /// Interior vertices in path order from `endpoints.0` to `endpoints.1`.
    pub interior: Vec<String>,
}

impl Branch {
    /// Number of vertices including endpoints.
    pub fn vertex_count(&self) -> usize {
        self.interior.len() + 2
    }

    pub fn vertex_set(&self) -> BTreeSet<String> {
        let mut s: BTreeSet<String> = self.interior.iter().cloned().collect();
        s.insert(self.endpoints.0.clone());
        s.insert(self.endpoints.1.clone());
        s
    }

    /// All vertices in path order.
    pub fn path(&self) -> Vec<String> {
        let mut p = vec![self.endpoints.0.clone()];
        p.extend(self.interior.iter().cloned());
        p.push(self.endpoints.1.clone());
        p
    }
}

/// All branches of `g`, deterministically ordered. Empty when `g` has no
/// essential vertices.
pub fn branches(g: &Graph) -> Vec<Branch> {
    let essential: BTreeSet<String> = g.essential_vertices().into_iter().collect();
    let mut out: BTreeSet<Branch> = BTreeSet::new();
    for start in &essential {
        let nbrs: Vec<String> = g.neighbors(start).cloned().collect();
        for first in nbrs {
            // Walk from `start` through valence-2 vertices.
            let mut prev = start.clone();
            let mut cur = first.clone();
            let mut interior = Vec::new();
            loop {
                if essential.contains(&cur) {
                    let b = Branch {
                        endpoints: (start.clone(), cur.clone()),
                        interior,
                    };
                    out.insert(canonical_branch(b));
                    break;
                }
                interior.push(cur.clone());
                let next: Vec<String> = g
                    .neighbors(&cur)
                    .filter(|w| **w != prev)
                    .cloned()
                    .collect();
                if next.len() != 1 {
                    // Valence-1 dead end: not a branch.
                    break;
                }
                prev = cur;
                cur = next[0].clone();
            }
        }
    }
    out.into_iter().collect()
}

fn canonical_branch(b: Branch) -> Branch {
    let fwd = (b.endpoints.0.clone(), b.interior.clone());
    let mut rev_int = b.interior.clone();
    rev_int.reverse();
    let rev = (b.endpoints.1.clone(), rev_int.clone());
    if rev < fwd {
        Branch {
            endpoints: (b.endpoints.1.clone(), b.endpoints.0.clone()),
            interior: rev_int,
        }
    } else {
        b
    }
}

// ============================================================================
// Realization components
// ============================================================================

/// Number of connected components of the geometric realization of `g` with
/// the points `a`, `b` removed: graph components of the vertex-deleted
/// graph, plus one for the open edge `ab` when `a` and `b` are adjacent.
pub fn realization_components_minus_pair(g: &Graph, a: &str, b: &str) -> usize {
    let removed: BTreeSet<String> = [a.to_string(), b.to_string()].into_iter().collect();
    let comps = g.components_without(&removed).len();
    comps + usize::from(g.adjacent(a, b))
}

/// True iff removing `{a,b}` from the realization disconnects it.
pub fn realization_pair_separates(g: &Graph, a: &str, b: &str) -> bool {
    realization_components_minus_pair(g, a, b) >= 2
}

// ============================================================================
// 3-convexity
// ============================================================================

/// True iff every path between essential vertices has at least 3 edges:
/// no two essential vertices are adjacent or share a common neighbor.
pub fn is_3_convex(g: &Graph) -> bool {
    let ess = g.essential_vertices();
    for (i, u) in ess.iter().enumerate() {
        for w in ess.iter().skip(i + 1) {
            if g.adjacent(u, w) {
                return false;
            }
            if g.neighbors(u).any(|x| g.adjacent(x, w)) {
                return false;
            }
        }
    }
    true
}

/// Witness for a 3-convexity failure: a path of <= 2 edges between
/// essential vertices.
fn three_convexity_witness(g: &Graph) -> Option<Vec<String>> {
    let ess = g.essential_vertices();
    for (i, u) in ess.iter().enumerate() {
        for w in ess.iter().skip(i + 1) {
            if g.adjacent(u, w) {
                return Some(vec![u.clone(), w.clone()]);
            }
            if let Some(x) = g.neighbors(u).find(|x| g.adjacent(x, w)) {
                return Some(vec![u.clone(), x.clone(), w.clone()]);
            }
        }
    }
    None
}

// ============================================================================
// Subdivided K4 detection
// ============================================================================

/// Searches for an induced subgraph of `g` that is a subdivision of `K4`:
/// four corner vertices joined by six internally disjoint paths whose union
/// is induced. Exhaustive over 4-sets of essential vertices; deterministic.
pub fn has_induced_subdivided_k4(g: &Graph) -> Option<Vec<String>> {
    let ess = g.essential_vertices();
    let n = ess.len();
    if n < 4 {
        return None;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in (k + 1)..n {
                    let corners = [
                        ess[i].clone(),
                        ess[j].clone(),
                        ess[k].clone(),
                        ess[l].clone(),
                    ];
                    if let Some(w) = subdivided_k4_at(g, &corners) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn subdivided_k4_at(g: &Graph, corners: &[String; 4]) -> Option<Vec<String>> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let corner_set: BTreeSet<String> = corners.iter().cloned().collect();
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut chosen: Vec<Vec<String>> = Vec::new();
    fn assign(
        g: &Graph,
        corners: &[String; 4],
        corner_set: &BTreeSet<String>,
        pairs: &[(usize, usize)],
        idx: usize,
        used: &mut BTreeSet<String>,
        chosen: &mut Vec<Vec<String>>,
    ) -> bool {
        if idx == pairs.len() {
            return union_is_induced_k4(g, corners, chosen);
        }
        let (a, b) = (&corners[pairs[idx].0], &corners[pairs[idx].1]);
        // Enumerate induced paths a -> b whose interiors avoid corners and
        // previously used interiors.
        let mut stack = vec![(vec![a.clone()], BTreeSet::from([a.clone()]))];
        let mut candidates: Vec<Vec<String>> = Vec::new();
        while let Some((path, on_path)) = stack.pop() {
            let last = path.last().unwrap().clone();
            let mut nbrs: Vec<String> = g.neighbors(&last).cloned().collect();
            nbrs.sort();
            for w in nbrs {
                if w == *b {
                    // Induced path check: b adjacent only to last.
                    if path
                        .iter()
                        .take(path.len().saturating_sub(1))
                        .all(|p| !g.adjacent(p, &w))
                    {
                        let mut full = path.clone();
                        full.push(w.clone());
                        candidates.push(full);
                    }
                    continue;
                }
                if on_path.contains(&w) || corner_set.contains(&w) || used.contains(&w) {
                    continue;
                }
                // Keep the path induced: w may touch only `last`.
                if path
                    .iter()
                    .take(path.len().saturating_sub(1))
                    .any(|p| g.adjacent(p, &w))
                {
                    continue;
                }
                let mut np = path.clone();
                np.push(w.clone());
                let mut nop = on_path.clone();
                nop.insert(w.clone());
                stack.push((np, nop));
            }
        }
        candidates.sort();
        for cand in candidates {
            let interior: Vec<String> = cand[1..cand.len() - 1].to_vec();
            for v in &interior {
                used.insert(v.clone());
            }
            chosen.push(cand.clone());
            if assign(g, corners, corner_set, pairs, idx + 1, used, chosen) {
                return true;
            }
            chosen.pop();
            for v in &interior {
                used.remove(v);
            }
        }
        false
    }
    if assign(g, corners, &corner_set, &pairs, 0, &mut used, &mut chosen) {
        let mut w: Vec<String> = corners.to_vec();
        for p in &chosen {
            w.extend(p[1..p.len() - 1].iter().cloned());
        }
        Some(w)
    } else {
        None
    }
}

fn union_is_induced_k4(g: &Graph, corners: &[String; 4], paths: &[Vec<String>]) -> bool {
    // Union of the six paths must be induced: the only edges of g between
    // union vertices are consecutive path edges.
    let mut verts: BTreeSet<String> = corners.iter().cloned().collect();
    let mut path_edges: BTreeSet<(String, String)> = BTreeSet::new();
    for p in paths {
        for v in p {
            verts.insert(v.clone());
        }
        for win in p.windows(2) {
            let (a, b) = (win[0].clone(), win[1].clone());
            path_edges.insert(if a < b { (a, b) } else { (b, a) });
        }
    }
    for (a, b) in g.edges() {
        if verts.contains(a) && verts.contains(b) && !path_edges.contains(&(a.clone(), b.clone()))
        {
            return false;
        }
    }
    true
}

// ============================================================================
// Validation
// ============================================================================

/// Result of one validation check; `witness` is non-empty exactly when the
/// check failed and a concrete offending object exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub ok: bool,
    pub witness: Vec<String>,
}

impl Check {
    fn pass() -> Check {
        Check { ok: true, witness: vec![] }
    }
    fn fail(witness: Vec<String>) -> Check {
        Check { ok: false, witness }
    }
}

/// Per-check report against the standing assumptions on defining graphs,
/// plus 3-convexity. `in_g` aggregates the assumption checks; `in_g_3convex`
/// additionally requires 3-convexity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub triangle_free: Check,
    pub square_free: Check,
    pub connected: Check,
    pub no_separating_vertex: Check,
    pub no_separating_closed_edge: Check,
    pub has_cut_pair: Check,
    pub not_cycle_length_ge_5: Check,
    pub no_induced_subdivided_k4: Check,
    pub three_convex: Check,
    pub in_g: bool,
    pub in_g_3convex: bool,
}

/// Runs every assumption check; pure and deterministic.
pub fn validate(g: &Graph) -> ValidationReport {
    let triangle_free = match find_triangle(g) {
        None => Check::pass(),
        Some(t) => Check::fail(t),
    };
    let square_free = match find_square(g) {
        None => Check::pass(),
        Some(s) => Check::fail(s),
    };
    let connected = if g.is_connected() {
        Check::pass()
    } else {
        let comps = g.components_without(&BTreeSet::new());
        let mut w = Vec::new();
        for c in comps.iter().take(2) {
            if let Some(v) = c.iter().next() {
                w.push(v.clone());
            }
        }
        Check::fail(w)
    };
    let no_separating_vertex = {
        let mut found = None;
        for v in g.vertices() {
            let removed: BTreeSet<String> = BTreeSet::from([v.clone()]);
            if g.components_without(&removed).len() >= 2 {
                found = Some(vec![v.clone()]);
                break;
            }
        }
        match found {
            None => Check::pass(),
            Some(w) => Check::fail(w),
        }
    };
    let no_separating_closed_edge = {
        let mut found = None;
        for (a, b) in g.edges() {
            let removed: BTreeSet<String> = [a.clone(), b.clone()].into_iter().collect();
            if g.components_without(&removed).len() >= 2 {
                found = Some(vec![a.clone(), b.clone()]);
                break;
            }
        }
        match found {
            None => Check::pass(),
            Some(w) => Check::fail(w),
        }
    };
    let has_cut_pair = {
        // Cut pair in the sense of graph theory: a component must contain a
        // vertex, so the open edge between adjacent pairs does not count.
        let vs: Vec<String> = g.vertices().cloned().collect();
        let mut found = None;
        'outer: for (i, a) in vs.iter().enumerate() {
            for b in vs.iter().skip(i + 1) {
                let removed: BTreeSet<String> = [a.clone(), b.clone()].into_iter().collect();
                if g.components_without(&removed).len() >= 2 {
                    found = Some(vec![a.clone(), b.clone()]);
                    break 'outer;
                }
            }
        }
        match found {
            Some(_) => Check::pass(),
            None => Check::fail(vec![]),
        }
    };
    let not_cycle_length_ge_5 = {
        let is_cycle = g.vertex_count() >= 3
            && g.is_connected()
            && g.vertices().all(|v| g.valence(v) == 2);
        if is_cycle && g.vertex_count() >= 5 {
            Check::fail(g.vertices().cloned().collect())
        } else {
            Check::pass()
        }
    };
    let no_induced_subdivided_k4 = match has_induced_subdivided_k4(g) {
        None => Check::pass(),
        Some(w) => Check::fail(w),
    };
    let three_convex = match three_convexity_witness(g) {
        None => Check::pass(),
        Some(w) => Check::fail(w),
    };
    let in_g = triangle_free.ok
        && square_free.ok
        && connected.ok
        && no_separating_vertex.ok
        && no_separating_closed_edge.ok
        && has_cut_pair.ok
        && not_cycle_length_ge_5.ok
        && no_induced_subdivided_k4.ok;
    let in_g_3convex = in_g && three_convex.ok;
    ValidationReport {
        triangle_free,
        square_free,
        connected,
        no_separating_vertex,
        no_separating_closed_edge,
        has_cut_pair,
        not_cycle_length_ge_5,
        no_induced_subdivided_k4,
        three_convex,
        in_g,
        in_g_3convex,
    }
}

fn find_triangle(g: &Graph) -> Option<Vec<String>> {
    for (a, b) in g.edges() {
        for c in g.neighbors(a) {
            if c != b && g.adjacent(c, b) {
                return Some(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    None
}

fn find_square(g: &Graph) -> Option<Vec<String>> {
    // An induced 4-cycle a-x-b-y with a,b non-adjacent, x,y non-adjacent.
    let vs: Vec<String> = g.vertices().cloned().collect();
    for (i, a) in vs.iter().enumerate() {
        for b in vs.iter().skip(i + 1) {
            if g.adjacent(a, b) {
                continue;
            }
            let common: Vec<String> = g
                .neighbors(a)
                .filter(|x| g.adjacent(x, b))
                .cloned()
                .collect();
            for (s, x) in common.iter().enumerate() {
                for y in common.iter().skip(s + 1) {
                    if !g.adjacent(x, y) {
                        return Some(vec![a.clone(), x.clone(), b.clone(), y.clone()]);
                    }
                }
            }
        }
    }
    None
}

// ============================================================================
// Graph JSON and shorthands
// ============================================================================

#[derive(Serialize, Deserialize)]
struct GraphJson {
    format: String,
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

pub const GRAPH_FORMAT: &str = "racg-graph/1";

pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::json!({
        "format": GRAPH_FORMAT,
        "vertices": g.vertices().cloned().collect::<Vec<_>>(),
        "edges": g.edges().cloned().collect::<Vec<_>>(),
    })
}

pub fn graph_from_json(v: &serde_json::Value) -> Result<Graph> {
    let parsed: GraphJson = serde_json::from_value(v.clone())
        .map_err(|e| Error::InvalidInput(format!("bad graph JSON: {e}")))?;
    if parsed.format != GRAPH_FORMAT {
        return Err(Error::InvalidInput(format!(
            "unknown graph format `{}` (expected {GRAPH_FORMAT})",
            parsed.format
        )));
    }
    Graph::new(parsed.vertices, parsed.edges)
}

/// Parses `theta:2,2,3,4` and `cycle:[[2,3],[4],[2,2]]` shorthands, or
/// `racg-graph/1` JSON text.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("theta:") {
        let n: Vec<u64> = rest
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad theta shorthand `{t}`")))
            })
            .collect::<Result<_>>()?;
        let theta = crate::racg::GeneralizedTheta::new(n)?;
        return Ok(theta.graph());
    }
    if let Some(rest) = t.strip_prefix("cycle:") {
        let comps: Vec<Vec<u64>> = serde_json::from_str(rest)
            .map_err(|_| Error::InvalidInput(format!("bad cycle shorthand `{t}`")))?;
        let cyc = crate::racg::ThetaCycle::new(comps)?;
        return Ok(cyc.graph());
    }
    let v: serde_json::Value = serde_json::from_str(t)
        .map_err(|e| Error::InvalidInput(format!("unreadable graph input: {e}")))?;
    graph_from_json(&v)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(
            ["1", "2", "3", "4"],
            [
                ("1", "2"),
                ("1", "3"),
                ("1", "4"),
                ("2", "3"),
                ("2", "4"),
                ("3", "4"),
            ],
        )
        .unwrap()
    }

    fn cycle_graph(n: usize) -> Graph {
        let vs: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let es: Vec<(String, String)> = (0..n)
            .map(|i| (vs[i].clone(), vs[(i + 1) % n].clone()))
            .collect();
        Graph::new(vs, es).unwrap()
    }

    #[test]
    fn construction_rejects_malformed() {
        assert!(Graph::new(["a"], [("a", "a")]).is_err());
        assert!(Graph::new(["a", "b"], [("a", "b"), ("b", "a")]).is_err());
        assert!(Graph::new(["a"], [("a", "b")]).is_err());
    }

    #[test]
    fn validate_theta222_in_g_3convex() {
        let g = parse_graph_text("theta:2,2,2").unwrap();
        let r = validate(&g);
        assert!(r.triangle_free.ok);
        assert!(r.square_free.ok);
        assert!(r.connected.ok);
        assert!(r.no_separating_vertex.ok);
        assert!(r.no_separating_closed_edge.ok);
        assert!(r.has_cut_pair.ok);
        assert!(r.not_cycle_length_ge_5.ok);
        assert!(r.no_induced_subdivided_k4.ok);
        assert!(r.three_convex.ok);
        assert!(r.in_g_3convex);
    }

    #[test]
    fn validate_is_pure() {
        let g = parse_graph_text("theta:2,2,3").unwrap();
        assert_eq!(validate(&g), validate(&g));
    }

    #[test]
    fn five_cycle_fails_cycle_check() {
        let r = validate(&cycle_graph(5));
        assert!(!r.not_cycle_length_ge_5.ok);
        assert!(!r.in_g);
    }

    #[test]
    fn k4_fails_triangle_free() {
        let r = validate(&k4());
        assert!(!r.triangle_free.ok);
        assert_eq!(r.triangle_free.witness.len(), 3);
    }

    #[test]
    fn branch_enumeration_theta234() {
        let g = parse_graph_text("theta:2,3,4").unwrap();
        let bs = branches(&g);
        assert_eq!(bs.len(), 3);
        let mut sizes: Vec<usize> = bs.iter().map(|b| b.interior.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3, 4]);
        let eps: BTreeSet<BTreeSet<String>> = bs
            .iter()
            .map(|b| {
                [b.endpoints.0.clone(), b.endpoints.1.clone()]
                    .into_iter()
                    .collect()
            })
            .collect();
        assert_eq!(eps.len(), 1, "all branches share the two essential endpoints");
    }

    #[test]
    fn branches_of_cycle_empty() {
        assert!(branches(&cycle_graph(8)).is_empty());
    }

    #[test]
    fn branch_count_of_theta_cycle() {
        let g = parse_graph_text("cycle:[[2,2],[3],[2,2]]").unwrap();
        assert_eq!(branches(&g).len(), 5);
    }

    #[test]
    fn realization_components_examples() {
        let g = parse_graph_text("theta:2,2,2").unwrap();
        // Essential pair: three branch interiors.
        let ess = g.essential_vertices();
        assert_eq!(ess.len(), 2);
        assert_eq!(realization_components_minus_pair(&g, &ess[0], &ess[1]), 3);
        // Two adjacent vertices on one branch: open edge + the rest.
        let b = &branches(&g)[0];
        let (a, x) = (b.endpoints.0.clone(), b.interior[0].clone());
        assert!(g.adjacent(&a, &x));
        assert_eq!(realization_components_minus_pair(&g, &a, &x), 2);
        // Interior vertices on distinct branches do not separate: the
        // stubs of the two cut branches stay attached to the essential
        // vertices, which remain joined through the third branch.
        let bs = branches(&g);
        let (x1, x2) = (bs[0].interior[0].clone(), bs[1].interior[0].clone());
        assert_eq!(realization_components_minus_pair(&g, &x1, &x2), 1);
        // Non-adjacent removal agrees with plain flood fill.
        let removed: BTreeSet<String> = [x1.clone(), x2.clone()].into_iter().collect();
        assert_eq!(g.components_without(&removed).len(), 1);
    }

    #[test]
    fn three_convexity_examples() {
        assert!(is_3_convex(&parse_graph_text("theta:2,2,3,4").unwrap()));
        assert!(!is_3_convex(&parse_graph_text("theta:1,2,2").unwrap()));
        assert!(is_3_convex(&cycle_graph(8))); // vacuous: no essential vertices
    }

    #[test]
    fn subdivided_k4_detection() {
        // K4 with every edge subdivided twice.
        let mut vs: Vec<String> = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
        let mut es: Vec<(String, String)> = Vec::new();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (idx, (i, j)) in pairs.iter().enumerate() {
            let m1 = format!("s{idx}a");
            let m2 = format!("s{idx}b");
            es.push((vs[*i].clone(), m1.clone()));
            es.push((m1.clone(), m2.clone()));
            es.push((m2.clone(), vs[*j].clone()));
            vs.push(m1);
            vs.push(m2);
        }
        let g = Graph::new(vs, es).unwrap();
        assert!(has_induced_subdivided_k4(&g).is_some());
        assert!(has_induced_subdivided_k4(&k4()).is_some());
        assert!(has_induced_subdivided_k4(&parse_graph_text("theta:2,2,3,4").unwrap()).is_none());
        assert!(has_induced_subdivided_k4(&cycle_graph(6)).is_none());
    }

    #[test]
    fn graph_json_round_trip() {
        let g = parse_graph_text("theta:2,2,3").unwrap();
        let j = graph_to_json(&g);
        let g2 = graph_from_json(&j).unwrap();
        assert_eq!(g, g2);
    }
}
