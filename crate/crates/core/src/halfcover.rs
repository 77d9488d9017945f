//! Half-coverings of bipartite graphs: verification, the canonical double
//! along Type-2 vertices, and exhaustive searches for half-cover targets.
//!
//! A half-covering is a type-preserving morphism that is bijective on the
//! edge star of every Type-1 vertex and surjective on the edge star of
//! every Type-2 vertex. A half-covering of a connected graph onto a
//! connected target is automatically surjective, so target searches
//! enumerate quotients.

use crate::amalgam::BipartiteGraph;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// A graph morphism between bipartite graphs: vertex images plus an image
/// edge index for every source edge index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: Vec<usize>,
}

/// A morphism packaged with its endpoints for re-verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfCovering {
    pub source: BipartiteGraph,
    pub target: BipartiteGraph,
    pub map: GraphMorphism,
}

/// Checks the half-covering conditions, returning every violation found.
pub fn verify_half_covering(h: &HalfCovering) -> (bool, Vec<String>) {
    let mut violations = Vec::new();
    let src = &h.source;
    let tgt = &h.target;
    let vm = &h.map.vertex_map;
    // Morphism well-formedness and type preservation.
    for v in src.type1.iter().chain(src.type2.iter()) {
        match vm.get(v) {
            None => violations.push(format!("vertex `{v}` has no image")),
            Some(w) => {
                let src_t1 = src.is_type1(v);
                let tgt_has = tgt.type1.iter().any(|x| x == w) || tgt.type2.iter().any(|x| x == w);
                if !tgt_has {
                    violations.push(format!("image `{w}` of `{v}` is not a target vertex"));
                } else if src_t1 != tgt.is_type1(w) {
                    violations.push(format!("vertex `{v}` changes type under the map"));
                }
            }
        }
    }
    if h.map.edge_map.len() != src.edges.len() {
        violations.push(format!(
            "edge map covers {} of {} source edges",
            h.map.edge_map.len(),
            src.edges.len()
        ));
        return (false, violations);
    }
    for (e, &fe) in h.map.edge_map.iter().enumerate() {
        if fe >= tgt.edges.len() {
            violations.push(format!("edge {e} maps outside the target edge set"));
            continue;
        }
        let (a, b) = &src.edges[e];
        let (fa, fb) = &tgt.edges[fe];
        if vm.get(a) != Some(fa) || vm.get(b) != Some(fb) {
            violations.push(format!(
                "edge ({a},{b}) maps to ({fa},{fb}) which does not match its endpoint images"
            ));
        }
    }
    // Condition at Type-1 vertices: star maps bijectively onto the image
    // star.
    for x in &src.type1 {
        if let Some(fx) = vm.get(x) {
            let star: Vec<usize> = src.star(x);
            let images: BTreeSet<usize> = star.iter().map(|&e| h.map.edge_map[e]).collect();
            if images.len() != star.len() {
                violations.push(format!("star of Type-1 vertex `{x}` does not map injectively"));
            }
            let target_star: BTreeSet<usize> = tgt.star(fx).into_iter().collect();
            if images != target_star {
                violations.push(format!(
                    "star of Type-1 vertex `{x}` does not map onto the star of `{fx}`"
                ));
            }
        }
    }
    // Condition at Type-2 vertices: star maps onto the image star.
    for y in &src.type2 {
        if let Some(fy) = vm.get(y) {
            let images: BTreeSet<usize> = src.star(y).iter().map(|&e| h.map.edge_map[e]).collect();
            let target_star: BTreeSet<usize> = tgt.star(fy).into_iter().collect();
            if !target_star.is_subset(&images) {
                violations.push(format!(
                    "star of Type-2 vertex `{y}` does not map onto the star of `{fy}`"
                ));
            }
        }
    }
    (violations.is_empty(), violations)
}

// ============================================================================
// The canonical double along Type-2 vertices
// ============================================================================

/// Two copies of a bipartite tree identified along the Type-2 vertices,
/// with the folding map back to the tree. Type-1 copies are named
/// `{u}#0` and `{u}#1`.
pub fn build_h(t: &BipartiteGraph) -> Result<(BipartiteGraph, HalfCovering)> {
    if !t.is_tree() {
        return Err(Error::InvalidInput(
            "the canonical double is defined for bipartite trees".into(),
        ));
    }
    let mut type1 = Vec::new();
    for u in &t.type1 {
        type1.push(format!("{u}#0"));
        type1.push(format!("{u}#1"));
    }
    let mut edges = Vec::new();
    for (u, v) in &t.edges {
        edges.push((format!("{u}#0"), v.clone()));
        edges.push((format!("{u}#1"), v.clone()));
    }
    let h = BipartiteGraph::new(type1, t.type2.clone(), edges)?;
    let mut vertex_map = BTreeMap::new();
    for u in &t.type1 {
        vertex_map.insert(format!("{u}#0"), u.clone());
        vertex_map.insert(format!("{u}#1"), u.clone());
    }
    for v in &t.type2 {
        vertex_map.insert(v.clone(), v.clone());
    }
    let edge_map: Vec<usize> = h
        .edges
        .iter()
        .map(|(a, b)| {
            let base = vertex_map[a].clone();
            t.edges
                .iter()
                .position(|(u, v)| *u == base && v == b)
                .expect("every doubled edge folds onto a tree edge")
        })
        .collect();
    let cover = HalfCovering {
        source: h.clone(),
        target: t.clone(),
        map: GraphMorphism { vertex_map, edge_map },
    };
    let (ok, violations) = verify_half_covering(&cover);
    if !ok {
        return Err(Error::Internal(format!(
            "canonical double fails verification: {violations:?}"
        )));
    }
    Ok((h, cover))
}

// ============================================================================
// Quotient enumeration
// ============================================================================

/// All set partitions of `{0..n}` as restricted-growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, n: usize, maxc: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=maxc + 1 {
            cur[i] = c;
            rec(i + 1, n, maxc.max(c), cur, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    rec(1, n, 0, &mut cur, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out.sort();
    out
}

/// All surjective half-coverings from `lambda` onto connected quotient
/// graphs, deduplicated up to isomorphism of the target; targets with more
/// than `max_vertices` vertices are skipped.
pub fn enumerate_half_cover_targets(
    lambda: &BipartiteGraph,
    max_vertices: usize,
) -> Result<Vec<HalfCovering>> {
    if !lambda.is_connected() {
        return Err(Error::InvalidInput(
            "half-cover target search requires a connected source".into(),
        ));
    }
    if lambda.vertex_count() > crate::max_search_vertices() {
        return Err(Error::Unsupported(format!(
            "source has {} vertices; the search cap is {} (set RACGC_MAX_SEARCH to raise it)",
            lambda.vertex_count(),
            crate::max_search_vertices()
        )));
    }
    let n1 = lambda.type1.len();
    let n2 = lambda.type2.len();
    let mut found: Vec<HalfCovering> = Vec::new();
    for p1 in set_partitions(n1) {
        let c1 = p1.iter().max().map_or(0, |m| m + 1);
        'p2: for p2 in set_partitions(n2) {
            let c2 = p2.iter().max().map_or(0, |m| m + 1);
            if c1 + c2 > max_vertices {
                continue;
            }
            // Type-1 classes must agree on their star multiset over
            // Type-2 classes.
            let t2_class: BTreeMap<&String, usize> = lambda
                .type2
                .iter()
                .enumerate()
                .map(|(i, v)| (v, p2[i]))
                .collect();
            let star_multiset = |x: &String| -> BTreeMap<usize, Vec<usize>> {
                // class -> sorted edge indices from x into that class
                let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for e in lambda.star(x) {
                    let (_, y) = &lambda.edges[e];
                    m.entry(t2_class[y]).or_default().push(e);
                }
                m
            };
            let mut class_members: Vec<Vec<usize>> = vec![Vec::new(); c1];
            for (i, &c) in p1.iter().enumerate() {
                class_members[c].push(i);
            }
            let mut class_stars: Vec<BTreeMap<usize, Vec<usize>>> = Vec::new();
            for members in &class_members {
                let first = star_multiset(&lambda.type1[members[0]]);
                for &m in &members[1..] {
                    let other = star_multiset(&lambda.type1[m]);
                    let same = first.len() == other.len()
                        && first
                            .iter()
                            .all(|(k, v)| other.get(k).map_or(false, |w| w.len() == v.len()));
                    if !same {
                        continue 'p2;
                    }
                }
                class_stars.push(first);
            }
            // Build the target skeleton.
            let t1_names: Vec<String> = (0..c1).map(|i| format!("c{i}")).collect();
            let t2_names: Vec<String> = (0..c2).map(|j| format!("z{j}")).collect();
            let mut tedges: Vec<(String, String)> = Vec::new();
            for (ci, star) in class_stars.iter().enumerate() {
                for (&d, es) in star {
                    for _ in 0..es.len() {
                        tedges.push((t1_names[ci].clone(), t2_names[d].clone()));
                    }
                }
            }
            let target = match BipartiteGraph::new(t1_names.clone(), t2_names.clone(), tedges) {
                Ok(t) => t,
                Err(_) => continue,
            };
            // Slot base: first index of (c, z) in the sorted target edges.
            let slot_base = |c: &String, z: &String| -> usize {
                target
                    .edges
                    .iter()
                    .position(|(a, b)| a == c && b == z)
                    .expect("skeleton edge present")
            };
            // Enumerate parallel-edge bundlings: the first member of each
            // class uses the identity assignment (parallel target edges are
            // interchangeable), the rest range over permutations.
            let mut choice_space: Vec<(usize, usize, usize)> = Vec::new(); // (class, member idx>=1, t2class)
            for (ci, members) in class_members.iter().enumerate() {
                for mi in 1..members.len() {
                    for &d in class_stars[ci].keys() {
                        choice_space.push((ci, mi, d));
                    }
                }
            }
            let perm_cache: BTreeMap<usize, Vec<Vec<usize>>> = class_stars
                .iter()
                .flat_map(|s| s.values().map(|v| v.len()))
                .collect::<BTreeSet<usize>>()
                .into_iter()
                .map(|m| (m, permutations(m)))
                .collect();
            let mut assignment: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
            enumerate_bundlings(
                lambda,
                &p1,
                &p2,
                &class_members,
                &t1_names,
                &t2_names,
                &target,
                &slot_base,
                &choice_space,
                0,
                &perm_cache,
                &mut assignment,
                &mut found,
            );
        }
    }
    // Deduplicate by target isomorphism, deterministically ordered.
    found.sort_by_key(|h| {
        (
            h.target.vertex_count(),
            h.target.edges.len(),
            format!("{:?}", h.target),
        )
    });
    let mut unique: Vec<HalfCovering> = Vec::new();
    for h in found {
        if !unique
            .iter()
            .any(|u| bipartite_isomorphic(&u.target, &h.target).is_some())
        {
            unique.push(h);
        }
    }
    Ok(unique)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_bundlings(
    lambda: &BipartiteGraph,
    p1: &[usize],
    p2: &[usize],
    class_members: &[Vec<usize>],
    t1_names: &[String],
    t2_names: &[String],
    target: &BipartiteGraph,
    slot_base: &dyn Fn(&String, &String) -> usize,
    choices: &[(usize, usize, usize)],
    idx: usize,
    perm_cache: &BTreeMap<usize, Vec<Vec<usize>>>,
    assignment: &mut BTreeMap<(usize, usize, usize), Vec<usize>>,
    found: &mut Vec<HalfCovering>,
) {
    if idx == choices.len() {
        if let Some(h) = finish_quotient(
            lambda,
            p1,
            p2,
            class_members,
            t1_names,
            t2_names,
            target,
            slot_base,
            assignment,
        ) {
            found.push(h);
        }
        return;
    }
    let (ci, mi, d) = choices[idx];
    let x = &lambda.type1[class_members[ci][mi]];
    let m = lambda
        .star(x)
        .into_iter()
        .filter(|&e| {
            let (_, y) = &lambda.edges[e];
            p2[lambda.type2.iter().position(|v| v == y).unwrap()] == d
        })
        .count();
    for perm in &perm_cache[&m] {
        assignment.insert((ci, mi, d), perm.clone());
        enumerate_bundlings(
            lambda,
            p1,
            p2,
            class_members,
            t1_names,
            t2_names,
            target,
            slot_base,
            choices,
            idx + 1,
            perm_cache,
            assignment,
            found,
        );
        assignment.remove(&(ci, mi, d));
    }
}

#[allow(clippy::too_many_arguments)]
fn finish_quotient(
    lambda: &BipartiteGraph,
    p1: &[usize],
    p2: &[usize],
    class_members: &[Vec<usize>],
    t1_names: &[String],
    t2_names: &[String],
    target: &BipartiteGraph,
    slot_base: &dyn Fn(&String, &String) -> usize,
    assignment: &BTreeMap<(usize, usize, usize), Vec<usize>>,
) -> Option<HalfCovering> {
    let t2_index: BTreeMap<&String, usize> = lambda
        .type2
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut vertex_map = BTreeMap::new();
    for (i, x) in lambda.type1.iter().enumerate() {
        vertex_map.insert(x.clone(), t1_names[p1[i]].clone());
    }
    for (j, y) in lambda.type2.iter().enumerate() {
        vertex_map.insert(y.clone(), t2_names[p2[j]].clone());
    }
    let mut edge_map = vec![usize::MAX; lambda.edges.len()];
    for (ci, members) in class_members.iter().enumerate() {
        for (mi, &member) in members.iter().enumerate() {
            let x = &lambda.type1[member];
            // Sorted edges of x grouped by target Type-2 class.
            let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for e in lambda.star(x) {
                let (_, y) = &lambda.edges[e];
                by_class.entry(p2[t2_index[y]]).or_default().push(e);
            }
            for (d, es) in by_class {
                let base = slot_base(&t1_names[ci], &t2_names[d]);
                for (k, &e) in es.iter().enumerate() {
                    let slot = if mi == 0 {
                        k
                    } else {
                        assignment[&(ci, mi, d)][k]
                    };
                    edge_map[e] = base + slot;
                }
            }
        }
    }
    // Type-2 surjectivity.
    for y in &lambda.type2 {
        let fy = &vertex_map[y];
        let images: BTreeSet<usize> = lambda.star(y).iter().map(|&e| edge_map[e]).collect();
        let tstar: BTreeSet<usize> = target.star(fy).into_iter().collect();
        if !tstar.is_subset(&images) {
            return None;
        }
    }
    let h = HalfCovering {
        source: lambda.clone(),
        target: target.clone(),
        map: GraphMorphism { vertex_map, edge_map },
    };
    debug_assert!(verify_half_covering(&h).0);
    Some(h)
}

// ============================================================================
// Isomorphism of bipartite multigraphs
// ============================================================================

/// Adjacency multiset signature of a vertex: sorted multiplicities toward
/// each neighbor don't suffice alone; used only as a pruning key.
fn degree_key(g: &BipartiteGraph, v: &str) -> Vec<usize> {
    let mut mult: BTreeMap<&String, usize> = BTreeMap::new();
    for e in g.star(v) {
        let (a, b) = &g.edges[e];
        let w = if a == v { b } else { a };
        *mult.entry(w).or_default() += 1;
    }
    let mut key: Vec<usize> = mult.values().cloned().collect();
    key.sort();
    key
}

/// Type-respecting isomorphism search between bipartite multigraphs.
pub fn bipartite_isomorphic(
    g1: &BipartiteGraph,
    g2: &BipartiteGraph,
) -> Option<BTreeMap<String, String>> {
    if g1.type1.len() != g2.type1.len()
        || g1.type2.len() != g2.type2.len()
        || g1.edges.len() != g2.edges.len()
    {
        return None;
    }
    let order: Vec<String> = g1.type1.iter().chain(g1.type2.iter()).cloned().collect();
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    let mut used: BTreeSet<String> = BTreeSet::new();
    fn multiplicity(g: &BipartiteGraph, a: &str, b: &str) -> usize {
        g.edges
            .iter()
            .filter(|(x, y)| (x == a && y == b) || (x == b && y == a))
            .count()
    }
    fn rec(
        g1: &BipartiteGraph,
        g2: &BipartiteGraph,
        order: &[String],
        idx: usize,
        map: &mut BTreeMap<String, String>,
        used: &mut BTreeSet<String>,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = &order[idx];
        let candidates: Vec<String> = if g1.is_type1(v) {
            g2.type1.clone()
        } else {
            g2.type2.clone()
        };
        for w in candidates {
            if used.contains(&w) {
                continue;
            }
            if degree_key(g1, v) != degree_key(g2, &w) {
                continue;
            }
            // Multiplicities toward already-mapped vertices must agree.
            let ok = map.iter().all(|(a, fa)| {
                multiplicity(g1, v, a) == multiplicity(g2, &w, fa)
            });
            if !ok {
                continue;
            }
            map.insert(v.clone(), w.clone());
            used.insert(w.clone());
            if rec(g1, g2, order, idx + 1, map, used) {
                return true;
            }
            map.remove(v);
            used.remove(&w);
        }
        false
    }
    if rec(g1, g2, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

// ============================================================================
// Target searches
// ============================================================================

/// Finite bipartite trees receiving a half-covering from `lambda`,
/// exhaustively up to the search cap, each with a witnessing map.
pub fn tree_half_cover_targets(lambda: &BipartiteGraph) -> Result<Vec<HalfCovering>> {
    let cap = crate::max_search_vertices().min(lambda.vertex_count());
    let all = enumerate_half_cover_targets(lambda, cap)?;
    Ok(all.into_iter().filter(|h| h.target.is_tree()).collect())
}

/// Searches for a connected bipartite graph half-covered by both inputs,
/// with at most `min(|V(lambda)|, |V(lambda')|)` vertices (and at most the
/// search cap). Returns the smallest such target with both witnessing
/// maps, or `None` when none exists within the bound.
pub fn common_half_cover_target(
    lambda: &BipartiteGraph,
    lambda2: &BipartiteGraph,
) -> Result<Option<(BipartiteGraph, HalfCovering, HalfCovering)>> {
    let cap = crate::max_search_vertices()
        .min(lambda.vertex_count())
        .min(lambda2.vertex_count());
    let candidates = enumerate_half_cover_targets(lambda, cap)?;
    for h in candidates {
        if let Some(h2) = exists_half_covering(lambda2, &h.target) {
            return Ok(Some((h.target.clone(), h, h2)));
        }
    }
    Ok(None)
}

/// Searches for a half-covering from `src` onto `tgt` (as a labeled
/// target). Backtracks over vertex images, then over parallel-edge
/// bundlings.
pub fn exists_half_covering(src: &BipartiteGraph, tgt: &BipartiteGraph) -> Option<HalfCovering> {
    let order: Vec<String> = src.type1.iter().chain(src.type2.iter()).cloned().collect();
    let mut vm: BTreeMap<String, String> = BTreeMap::new();
    fn star_class_multiset(
        g: &BipartiteGraph,
        v: &str,
        class_of: &dyn Fn(&String) -> Option<String>,
    ) -> Option<BTreeMap<String, usize>> {
        let mut m = BTreeMap::new();
        for e in g.star(v) {
            let (a, b) = &g.edges[e];
            let w = if a == v { b } else { a };
            let c = class_of(w)?;
            *m.entry(c).or_default() += 1;
        }
        Some(m)
    }
    fn rec(
        src: &BipartiteGraph,
        tgt: &BipartiteGraph,
        order: &[String],
        idx: usize,
        vm: &mut BTreeMap<String, String>,
    ) -> bool {
        if idx == order.len() {
            // Full star checks.
            for x in &src.type1 {
                let fx = &vm[x];
                let got = star_class_multiset(src, x, &|w| vm.get(w).cloned())
                    .expect("all vertices mapped");
                let want = star_class_multiset(tgt, fx, &|w| Some(w.clone())).unwrap();
                if got != want {
                    return false;
                }
            }
            return true;
        }
        let v = &order[idx];
        let cands: Vec<String> = if src.is_type1(v) {
            tgt.type1.clone()
        } else {
            tgt.type2.clone()
        };
        for w in cands {
            if src.is_type1(v) && src.valence(v) != tgt.valence(&w) {
                continue;
            }
            if !src.is_type1(v) && src.valence(v) < tgt.valence(&w) {
                continue;
            }
            // Adjacency compatibility with mapped neighbors.
            let ok = src.star(v).iter().all(|&e| {
                let (a, b) = &src.edges[e];
                let u = if a == v { b } else { a };
                match vm.get(u) {
                    None => true,
                    Some(fu) => tgt
                        .edges
                        .iter()
                        .any(|(x, y)| (x == &w && y == fu) || (x == fu && y == &w)),
                }
            });
            if !ok {
                continue;
            }
            vm.insert(v.clone(), w.clone());
            if rec(src, tgt, order, idx + 1, vm) {
                return true;
            }
            vm.remove(v);
        }
        false
    }
    if !rec(src, tgt, &order, 0, &mut vm) {
        return None;
    }
    // Vertex map found with star multisets matching at Type-1 vertices;
    // now choose an edge bundling satisfying Type-2 surjectivity.
    bundle_edges(src, tgt, &vm)
}

/// Given a vertex map whose Type-1 star multisets match, searches for an
/// edge assignment making the map a half-covering.
fn bundle_edges(
    src: &BipartiteGraph,
    tgt: &BipartiteGraph,
    vm: &BTreeMap<String, String>,
) -> Option<HalfCovering> {
    // Choice points: per Type-1 source vertex and target parallel class.
    struct Choice {
        src_edges: Vec<usize>,
        tgt_slots: Vec<usize>,
    }
    let mut choices: Vec<Choice> = Vec::new();
    for x in &src.type1 {
        let fx = &vm[x];
        // Group source edges at x by their target endpoint pair.
        let mut by_pair: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
        for e in src.star(x) {
            let (_, y) = &src.edges[e];
            by_pair
                .entry((fx.clone(), vm[y].clone()))
                .or_default()
                .push(e);
        }
        for (pair, es) in by_pair {
            let slots: Vec<usize> = tgt
                .edges
                .iter()
                .enumerate()
                .filter(|(_, (a, b))| *a == pair.0 && *b == pair.1)
                .map(|(i, _)| i)
                .collect();
            if slots.len() != es.len() {
                return None;
            }
            choices.push(Choice { src_edges: es, tgt_slots: slots });
        }
    }
    let mut edge_map = vec![usize::MAX; src.edges.len()];
    fn rec(
        src: &BipartiteGraph,
        tgt: &BipartiteGraph,
        vm: &BTreeMap<String, String>,
        choices: &[Choice],
        idx: usize,
        edge_map: &mut Vec<usize>,
    ) -> bool {
        if idx == choices.len() {
            for y in &src.type2 {
                let fy = &vm[y];
                let images: BTreeSet<usize> =
                    src.star(y).iter().map(|&e| edge_map[e]).collect();
                let tstar: BTreeSet<usize> = tgt.star(fy).into_iter().collect();
                if !tstar.is_subset(&images) {
                    return false;
                }
            }
            return true;
        }
        let c = &choices[idx];
        for perm in permutations(c.tgt_slots.len()) {
            for (k, &e) in c.src_edges.iter().enumerate() {
                edge_map[e] = c.tgt_slots[perm[k]];
            }
            if rec(src, tgt, vm, choices, idx + 1, edge_map) {
                return true;
            }
        }
        for &e in &c.src_edges {
            edge_map[e] = usize::MAX;
        }
        false
    }
    if rec(src, tgt, vm, &choices, 0, &mut edge_map) {
        let h = HalfCovering {
            source: src.clone(),
            target: tgt.clone(),
            map: GraphMorphism { vertex_map: vm.clone(), edge_map },
        };
        debug_assert!(verify_half_covering(&h).0);
        Some(h)
    } else {
        None
    }
}

// ============================================================================
// JSON
// ============================================================================

pub const BIPARTITE_FORMAT: &str = "bipartite/1";

pub fn bipartite_to_json(g: &BipartiteGraph) -> serde_json::Value {
    serde_json::json!({
        "format": BIPARTITE_FORMAT,
        "type1": g.type1,
        "type2": g.type2,
        "edges": g.edges,
    })
}

pub fn bipartite_from_json(v: &serde_json::Value) -> Result<BipartiteGraph> {
    let fmt = v.get("format").and_then(|f| f.as_str()).unwrap_or("");
    if fmt == crate::amalgam::AMALGAM_FORMAT {
        return Ok(crate::amalgam::amalgam_from_json(v)?.graph);
    }
    if fmt != BIPARTITE_FORMAT {
        return Err(Error::InvalidInput(format!(
            "unknown bipartite graph format `{fmt}`"
        )));
    }
    let get_list = |key: &str| -> Result<Vec<String>> {
        serde_json::from_value(
            v.get(key)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("missing `{key}`")))?,
        )
        .map_err(|e| Error::InvalidInput(format!("bad `{key}`: {e}")))
    };
    let type1 = get_list("type1")?;
    let type2 = get_list("type2")?;
    let edges: Vec<(String, String)> = serde_json::from_value(
        v.get("edges")
            .cloned()
            .ok_or_else(|| Error::InvalidInput("missing `edges`".into()))?,
    )
    .map_err(|e| Error::InvalidInput(format!("bad `edges`: {e}")))?;
    BipartiteGraph::new(type1, type2, edges)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> BipartiteGraph {
        BipartiteGraph::new(
            vec!["c".into()],
            vec!["y1".into(), "y2".into(), "y3".into()],
            vec![
                ("c".into(), "y1".into()),
                ("c".into(), "y2".into()),
                ("c".into(), "y3".into()),
            ],
        )
        .unwrap()
    }

    /// Alternating 6-cycle: Type-1 a0,a2,a4 and Type-2 a1,a3,a5.
    fn six_cycle() -> BipartiteGraph {
        BipartiteGraph::new(
            vec!["a0".into(), "a2".into(), "a4".into()],
            vec!["a1".into(), "a3".into(), "a5".into()],
            vec![
                ("a0".into(), "a1".into()),
                ("a2".into(), "a1".into()),
                ("a2".into(), "a3".into()),
                ("a4".into(), "a3".into()),
                ("a4".into(), "a5".into()),
                ("a0".into(), "a5".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_half_covering() {
        let g = star3();
        let h = HalfCovering {
            source: g.clone(),
            target: g.clone(),
            map: GraphMorphism {
                vertex_map: g
                    .type1
                    .iter()
                    .chain(g.type2.iter())
                    .map(|v| (v.clone(), v.clone()))
                    .collect(),
                edge_map: (0..g.edges.len()).collect(),
            },
        };
        assert!(verify_half_covering(&h).0);
    }

    #[test]
    fn build_h_examples() {
        // Star with 3 Type-2 leaves: the double has 2 Type-1 vertices and
        // every Type-2 vertex gains valence 2.
        let t = star3();
        let (h, cover) = build_h(&t).unwrap();
        assert_eq!(h.type1.len(), 2);
        assert_eq!(h.type2.len(), 3);
        for y in &h.type2 {
            assert_eq!(h.valence(y), 2);
        }
        assert!(verify_half_covering(&cover).0);

        // Single edge: path of two Type-1 vertices through one Type-2.
        let t = BipartiteGraph::new(
            vec!["u".into()],
            vec!["v".into()],
            vec![("u".into(), "v".into())],
        )
        .unwrap();
        let (h, cover) = build_h(&t).unwrap();
        assert_eq!(h.type1.len(), 2);
        assert_eq!(h.type2.len(), 1);
        assert_eq!(h.valence("v"), 2);
        assert!(verify_half_covering(&cover).0);
    }

    #[test]
    fn folding_two_type1_stars_onto_one_violates_bijectivity() {
        // Map the alternating 6-cycle onto a single edge, collapsing all
        // Type-1 vertices: condition at Type-1 stars fails.
        let g = six_cycle();
        let edge = BipartiteGraph::new(
            vec!["c".into()],
            vec!["z".into()],
            vec![("c".into(), "z".into())],
        )
        .unwrap();
        let h = HalfCovering {
            source: g.clone(),
            target: edge.clone(),
            map: GraphMorphism {
                vertex_map: g
                    .type1
                    .iter()
                    .map(|v| (v.clone(), "c".to_string()))
                    .chain(g.type2.iter().map(|v| (v.clone(), "z".to_string())))
                    .collect(),
                edge_map: vec![0; 6],
            },
        };
        let (ok, violations) = verify_half_covering(&h);
        assert!(!ok);
        assert!(violations.iter().any(|v| v.contains("Type-1")));
    }

    #[test]
    fn six_cycle_has_no_tree_targets() {
        let targets = tree_half_cover_targets(&six_cycle()).unwrap();
        assert!(targets.is_empty());
    }

    #[test]
    fn tree_targets_contain_identity_and_canonical_double() {
        let t = star3();
        let targets = tree_half_cover_targets(&t).unwrap();
        assert!(targets
            .iter()
            .any(|h| bipartite_isomorphic(&h.target, &t).is_some()));
        let (hgraph, _) = build_h(&t).unwrap();
        let from_h = tree_half_cover_targets(&hgraph).unwrap();
        assert!(from_h
            .iter()
            .any(|h| bipartite_isomorphic(&h.target, &t).is_some()));
    }

    #[test]
    fn star3_only_half_covers_itself() {
        let t = star3();
        let all = enumerate_half_cover_targets(&t, t.vertex_count()).unwrap();
        assert_eq!(all.len(), 1);
        assert!(bipartite_isomorphic(&all[0].target, &t).is_some());
    }

    #[test]
    fn common_target_examples() {
        let t = star3();
        // (t, t): t itself.
        let (g, h1, h2) = common_half_cover_target(&t, &t).unwrap().unwrap();
        assert!(bipartite_isomorphic(&g, &t).is_some());
        assert!(verify_half_covering(&h1).0);
        assert!(verify_half_covering(&h2).0);
        // (H(t), H(t)): some common target exists, both maps verify, and t
        // itself appears among the targets of H(t).
        let (hgraph, _) = build_h(&t).unwrap();
        let (_, h1, h2) = common_half_cover_target(&hgraph, &hgraph).unwrap().unwrap();
        assert!(verify_half_covering(&h1).0);
        assert!(verify_half_covering(&h2).0);
        let all = enumerate_half_cover_targets(&hgraph, hgraph.vertex_count()).unwrap();
        assert!(all
            .iter()
            .any(|h| bipartite_isomorphic(&h.target, &t).is_some()));
        assert!(all
            .iter()
            .any(|h| bipartite_isomorphic(&h.target, &hgraph).is_some()));
    }
}
