//! Recognition of defining-graph families, Euler characteristics of
//! right-angled Coxeter groups and special subgroups, Euler-characteristic
//! vectors, and doubling constructions.

use crate::graph::{branches, is_3_convex, Graph};
use crate::ratvec::{rat, rat_int, QVector, Rat};
use crate::{Error, Result};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Euler characteristic of the right-angled Coxeter group on a
/// triangle-free graph: `1 - |V|/2 + |E|/4`.
pub fn euler_characteristic(g: &Graph) -> Result<Rat> {
    if !crate::graph::validate(g).triangle_free.ok {
        return Err(Error::Unsupported(
            "Euler characteristic formula requires a triangle-free graph".into(),
        ));
    }
    Ok(rat_int(1) - rat(g.vertex_count() as i64, 2) + rat(g.edge_count() as i64, 4))
}

/// Euler characteristic of the special subgroup of a branch with `n`
/// vertices in total: `(3 - n)/4`.
pub fn branch_group_euler(b: &crate::graph::Branch) -> Rat {
    rat(3 - b.vertex_count() as i64, 4)
}

/// `(3 - n)/4` for a branch with `n` total vertices, `n = interior + 2`.
pub fn branch_euler_from_interior(interior: u64) -> Rat {
    rat(1 - interior as i64, 4)
}

// ============================================================================
// Generalized theta-graphs
// ============================================================================

/// The generalized theta-graph with `k` branches joining two vertices `a`,
/// `b`, the `i`th branch carrying `n[i]` interior vertices. `n` is kept
/// sorted non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeneralizedTheta {
    n: Vec<u64>,
}

impl GeneralizedTheta {
    pub fn new(mut n: Vec<u64>) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::InvalidInput(
                "generalized theta-graph needs at least one branch".into(),
            ));
        }
        n.sort();
        // Simpliciality: at most one branch with no interior vertices
        // (two would be a doubled edge between a and b).
        if n.len() >= 2 && n[1] == 0 {
            return Err(Error::InvalidInput(
                "at most one unsubdivided branch is possible in a simplicial graph".into(),
            ));
        }
        Ok(GeneralizedTheta { n })
    }

    pub fn branch_count(&self) -> usize {
        self.n.len()
    }

    pub fn interior_counts(&self) -> &[u64] {
        &self.n
    }

    pub fn is_3_convex(&self) -> bool {
        self.n[0] >= 2
    }

    /// Builds the graph with vertices `a`, `b` and interiors `b{i}.{j}`.
    pub fn graph(&self) -> Graph {
        let mut vs: Vec<String> = vec!["a".into(), "b".into()];
        let mut es: Vec<(String, String)> = Vec::new();
        for (i, &m) in self.n.iter().enumerate() {
            let mut prev = "a".to_string();
            for j in 0..m {
                let v = format!("b{i}.{j}");
                vs.push(v.clone());
                es.push((prev.clone(), v.clone()));
                prev = v;
            }
            es.push((prev, "b".to_string()));
        }
        Graph::new(vs, es).expect("theta graph construction is valid")
    }

    /// Euler characteristic vector `((1-n_1)/4, ..., (1-n_k)/4)`,
    /// non-increasing. Requires 3-convexity.
    pub fn theta_vector(&self) -> Result<QVector> {
        if !self.is_3_convex() {
            return Err(Error::Unsupported(
                "theta vector is defined for 3-convex graphs; double along the short branch first"
                    .into(),
            ));
        }
        QVector::new(
            self.n
                .iter()
                .map(|&m| branch_euler_from_interior(m))
                .collect(),
        )
    }
}

/// Recognizes a generalized theta-graph: exactly two essential vertices
/// with every branch joining them and no stray vertices.
pub fn recognize_gen_theta(g: &Graph) -> Option<GeneralizedTheta> {
    let ess = g.essential_vertices();
    if ess.len() != 2 || !g.is_connected() {
        return None;
    }
    let bs = branches(g);
    let pair: BTreeSet<String> = ess.iter().cloned().collect();
    let mut covered: BTreeSet<String> = pair.clone();
    let mut n = Vec::new();
    for b in &bs {
        let eps: BTreeSet<String> =
            [b.endpoints.0.clone(), b.endpoints.1.clone()].into_iter().collect();
        if eps != pair {
            return None;
        }
        covered.extend(b.interior.iter().cloned());
        n.push(b.interior.len() as u64);
    }
    if covered.len() != g.vertex_count() {
        return None;
    }
    GeneralizedTheta::new(n).ok()
}

// ============================================================================
// Cycles of generalized theta-graphs
// ============================================================================

/// A cycle of `N >= 3` generalized theta-graphs. `components[i]` holds the
/// interior-vertex counts of the branches joining `a_i` to `a_{i+1}`,
/// sorted non-decreasing; the component list is canonicalized to the
/// lexicographically minimal rotation/reflection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ThetaCycle {
    components: Vec<Vec<u64>>,
}

impl ThetaCycle {
    pub fn new(mut components: Vec<Vec<u64>>) -> Result<Self> {
        let n = components.len();
        if n < 3 {
            return Err(Error::InvalidInput(
                "a cycle of generalized theta-graphs needs N >= 3 components".into(),
            ));
        }
        for c in &mut components {
            if c.is_empty() {
                return Err(Error::InvalidInput(
                    "every component needs at least one branch".into(),
                ));
            }
            c.sort();
            if c.len() >= 2 && c[1] == 0 {
                return Err(Error::InvalidInput(
                    "at most one unsubdivided branch per component in a simplicial graph".into(),
                ));
            }
        }
        for i in 0..n {
            if components[i].len() == 1 && components[(i + 1) % n].len() == 1 {
                return Err(Error::InvalidInput(
                    "at most one of two cyclically consecutive components may be trivial".into(),
                ));
            }
        }
        Ok(ThetaCycle {
            components: canonical_cycle_description(components),
        })
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<u64>] {
        &self.components
    }

    pub fn branch_counts(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.len()).collect()
    }

    /// Indices (0-based) of the nontrivial components, `r_i > 1`.
    pub fn nontrivial_indices(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.components[i].len() > 1)
            .collect()
    }

    pub fn is_3_convex(&self) -> bool {
        self.components.iter().all(|c| c.iter().all(|&m| m >= 2))
    }

    /// Builds the graph: essential vertices `a0..a{N-1}`, interiors
    /// `b{i}.{j}.{m}` on branch `j` of component `i`.
    pub fn graph(&self) -> Graph {
        let n = self.components.len();
        let mut vs: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let mut es: Vec<(String, String)> = Vec::new();
        for (i, comp) in self.components.iter().enumerate() {
            let start = format!("a{i}");
            let end = format!("a{}", (i + 1) % n);
            for (j, &m) in comp.iter().enumerate() {
                let mut prev = start.clone();
                for k in 0..m {
                    let v = format!("b{i}.{j}.{k}");
                    vs.push(v.clone());
                    es.push((prev.clone(), v.clone()));
                    prev = v;
                }
                es.push((prev, end.clone()));
            }
        }
        Graph::new(vs, es).expect("theta-cycle construction is valid")
    }
}

fn canonical_cycle_description(components: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = components.len();
    let mut best: Option<Vec<Vec<u64>>> = None;
    let mut consider = |cand: Vec<Vec<u64>>| {
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    };
    for start in 0..n {
        let rot: Vec<Vec<u64>> = (0..n).map(|i| components[(start + i) % n].clone()).collect();
        consider(rot.clone());
        let refl: Vec<Vec<u64>> = (0..n)
            .map(|i| components[(start + n - i) % n].clone())
            .collect();
        consider(refl);
    }
    best.expect("n >= 3")
}

/// Recognizes a cycle of generalized theta-graphs. The essential vertices
/// must lie on a single cycle with each consecutive pair joined only by
/// branches, and the trivial-component constraint must hold.
pub fn recognize_theta_cycle(g: &Graph) -> Option<ThetaCycle> {
    if !g.is_connected() {
        return None;
    }
    let ess = g.essential_vertices();
    let n = ess.len();
    if n < 3 {
        return None;
    }
    let bs = branches(g);
    // Group branches by endpoint pair; all vertices must be covered.
    let mut covered: BTreeSet<String> = ess.iter().cloned().collect();
    let mut by_pair: BTreeMap<(String, String), Vec<u64>> = BTreeMap::new();
    for b in &bs {
        if b.endpoints.0 == b.endpoints.1 {
            return None;
        }
        covered.extend(b.interior.iter().cloned());
        by_pair
            .entry(b.endpoints.clone())
            .or_default()
            .push(b.interior.len() as u64);
    }
    if covered.len() != g.vertex_count() {
        return None;
    }
    // The essential-adjacency structure must be a single N-cycle.
    let mut nbrs: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (a, b) in by_pair.keys() {
        nbrs.entry(a.clone()).or_default().insert(b.clone());
        nbrs.entry(b.clone()).or_default().insert(a.clone());
    }
    if nbrs.len() != n || nbrs.values().any(|s| s.len() != 2) {
        return None;
    }
    // Walk the cycle starting from the smallest essential vertex.
    let start = ess.iter().min().unwrap().clone();
    let mut order = vec![start.clone()];
    let mut prev = start.clone();
    let mut cur = nbrs[&start].iter().next().unwrap().clone();
    while cur != start {
        order.push(cur.clone());
        let next = nbrs[&cur]
            .iter()
            .find(|x| **x != prev)
            .cloned()
            .expect("valence 2 in essential cycle");
        prev = cur;
        cur = next;
    }
    if order.len() != n {
        return None;
    }
    let comps: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let a = order[i].clone();
            let b = order[(i + 1) % n].clone();
            let key = if a < b { (a, b) } else { (b, a) };
            by_pair[&key].clone()
        })
        .collect();
    ThetaCycle::new(comps).ok()
}

// ============================================================================
// Cycle Euler data
// ============================================================================

/// Euler data of a 3-convex cycle of generalized theta-graphs: the vectors
/// `v_i` for nontrivial components, `chi(W_A)`, and the `w`-vector when all
/// nontrivial components share a branch count `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleData {
    /// `(component index, v_i)` for each nontrivial component, in cycle
    /// order. Each `v_i` is sorted non-increasing.
    pub vectors: Vec<(usize, QVector)>,
    pub chi_a: Rat,
    /// Common branch count of the nontrivial components, when one exists.
    pub r: Option<usize>,
    /// Length-`r+1` reordered column-sum vector, present iff `r` is.
    pub w: Option<QVector>,
}

impl CycleData {
    /// Vector-level constructor: the `v_i` (indexed from 0) and `chi(W_A)`
    /// are supplied directly, as when reproducing examples given only by
    /// their Euler data.
    pub fn from_vectors(vectors: Vec<QVector>, chi_a: Rat) -> Result<CycleData> {
        if chi_a >= Rat::zero() {
            return Err(Error::InvalidInput("chi(W_A) must be negative".into()));
        }
        let indexed: Vec<(usize, QVector)> = vectors
            .into_iter()
            .map(|v| v.sorted_non_increasing())
            .enumerate()
            .collect();
        Ok(build_cycle_data(indexed, chi_a))
    }

    /// All `v_i` without indices.
    pub fn vector_list(&self) -> Vec<QVector> {
        self.vectors.iter().map(|(_, v)| v.clone()).collect()
    }

    /// `chi(W_Gamma) = chi(W_A) + sum_i chi(W_Theta_i)`: the total Euler
    /// characteristic carried by this data.
    pub fn total_chi(&self) -> Rat {
        self.vectors
            .iter()
            .fold(self.chi_a.clone(), |acc, (_, v)| acc + v.entry_sum())
    }
}

fn build_cycle_data(vectors: Vec<(usize, QVector)>, chi_a: Rat) -> CycleData {
    let mut r: Option<usize> = None;
    let mut common = true;
    for (_, v) in &vectors {
        match r {
            None => r = Some(v.len()),
            Some(k) => {
                if v.len() != k {
                    common = false;
                }
            }
        }
    }
    let r = if common { r } else { None };
    let w = r.map(|k| {
        let mut cols: Vec<Rat> = vec![Rat::zero(); k];
        for (_, v) in &vectors {
            for (j, e) in v.entries().iter().enumerate() {
                cols[j] += e;
            }
        }
        cols.push(chi_a.clone());
        QVector::new(cols)
            .expect("r+1 >= 1")
            .sorted_non_increasing()
    });
    CycleData {
        vectors,
        chi_a,
        r,
        w,
    }
}

/// Computes the Euler data of a 3-convex cycle: `v_i` per nontrivial
/// component, `chi(W_A)` from the induced subgraph on `A` (the essential
/// vertices plus all vertices of trivial components), and `w`.
pub fn cycle_data(c: &ThetaCycle) -> Result<CycleData> {
    if !c.is_3_convex() {
        return Err(Error::Unsupported(
            "cycle Euler data is defined for 3-convex cycles".into(),
        ));
    }
    let g = c.graph();
    let n = c.component_count();
    let mut a_set: BTreeSet<String> = (0..n).map(|i| format!("a{i}")).collect();
    for (i, comp) in c.components().iter().enumerate() {
        if comp.len() == 1 {
            for k in 0..comp[0] {
                a_set.insert(format!("b{i}.0.{k}"));
            }
        }
    }
    let chi_a = euler_characteristic(&g.induced(&a_set))?;
    let vectors: Vec<(usize, QVector)> = c
        .nontrivial_indices()
        .into_iter()
        .map(|i| {
            let v = QVector::new(
                c.components()[i]
                    .iter()
                    .map(|&m| branch_euler_from_interior(m))
                    .collect(),
            )
            .expect("r_i >= 2")
            .sorted_non_increasing();
            (i, v)
        })
        .collect();
    Ok(build_cycle_data(vectors, chi_a))
}

// ============================================================================
// Doubling
// ============================================================================

/// Double of a theta-graph over the unique valence-2 vertex of a length-2
/// branch: `Theta(1, n_2, ..., n_k)` becomes
/// `Theta(n_2, n_2, ..., n_k, n_k)`, an index-2 subgroup construction.
pub fn double_theta(t: &GeneralizedTheta) -> Result<GeneralizedTheta> {
    let n = t.interior_counts();
    if n[0] != 1 {
        return Err(Error::Unsupported(
            "doubling applies when the shortest branch has exactly one interior vertex".into(),
        ));
    }
    if n.len() < 2 || n[1] < 2 {
        return Err(Error::Unsupported(
            "doubling requires every other branch to have at least two interior vertices".into(),
        ));
    }
    let mut doubled = Vec::new();
    for &m in &n[1..] {
        doubled.push(m);
        doubled.push(m);
    }
    GeneralizedTheta::new(doubled)
}

/// One step of the reduction from a 3-convex theta-graph to a 3-convex
/// cycle of theta-graphs, with the chain of doublings applied.
///
/// Normal form: double along the interior vertex `c` of branch 1 adjacent
/// to `a`. The two mirror copies of the remaining branch-1 path meet at the
/// shared link vertex, so the result is the cycle
/// `[[n_2..n_k], [2 n_1 - 3], [n_2..n_k]]`. If the middle component is not
/// yet 3-convex (`n_1 = 2`), double once more along its single interior
/// vertex, giving four copies of `[n_2..n_k]`.
pub fn theta_to_cycle(t: &GeneralizedTheta) -> Result<(ThetaCycle, Vec<String>)> {
    if !t.is_3_convex() {
        return Err(Error::Unsupported(
            "theta-to-cycle reduction requires a 3-convex theta-graph".into(),
        ));
    }
    if t.branch_count() < 3 {
        return Err(Error::Unsupported(
            "theta-to-cycle reduction requires at least 3 branches".into(),
        ));
    }
    let n = t.interior_counts();
    let rest: Vec<u64> = n[1..].to_vec();
    let n1 = n[0];
    let mid = 2 * n1 - 3;
    let mut chain = vec![format!(
        "doubled along the branch-1 vertex adjacent to an essential vertex: cycle [{:?}, [{}], {:?}]",
        rest, mid, rest
    )];
    if mid >= 2 {
        let cyc = ThetaCycle::new(vec![rest.clone(), vec![mid], rest])?;
        return Ok((cyc, chain));
    }
    // n1 = 2: the new trivial branch has a single interior vertex; double
    // along it to restore 3-convexity.
    chain.push(format!(
        "doubled along the single interior vertex of the trivial component: cycle [{:?} x4]",
        rest
    ));
    let cyc = ThetaCycle::new(vec![rest.clone(), rest.clone(), rest.clone(), rest])?;
    Ok((cyc, chain))
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_text;

    #[test]
    fn euler_characteristic_examples() {
        let g = parse_graph_text("theta:2,2,3,4").unwrap();
        assert_eq!(g.vertex_count(), 13);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(euler_characteristic(&g).unwrap(), rat(-7, 4));

        let edge = Graph::new(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(euler_characteristic(&edge).unwrap(), rat(1, 4));

        let k3 = Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(euler_characteristic(&k3).is_err());
    }

    #[test]
    fn chi_wa_of_paper_cycle_example() {
        // Cycle of four theta-graphs with r = (2,2,1,2) and a trivial
        // component of two interior vertices: chi(W_A) = -5/4.
        let c = ThetaCycle::new(vec![vec![2, 3], vec![2, 3], vec![2], vec![4, 7]]).unwrap();
        let data = cycle_data(&c).unwrap();
        assert_eq!(data.chi_a, rat(-5, 4));
        let w = data.w.as_ref().unwrap();
        assert_eq!(*w, QVector::from_pairs(&[(-5, 4), (-5, 4), (-5, 2)]));
    }

    #[test]
    fn branch_group_euler_values() {
        assert_eq!(branch_euler_from_interior(2), rat(-1, 4));
        assert_eq!(branch_euler_from_interior(3), rat(-1, 2));
        assert_eq!(branch_euler_from_interior(1), rat_int(0));
    }

    #[test]
    fn recognize_theta() {
        let g = parse_graph_text("theta:2,2,3,4").unwrap();
        let t = recognize_gen_theta(&g).unwrap();
        assert_eq!(t.branch_count(), 4);
        assert_eq!(t.interior_counts(), &[2, 2, 3, 4]);

        let cyc: Vec<String> = (0..6).map(|i| format!("c{i}")).collect();
        let es: Vec<(String, String)> = (0..6)
            .map(|i| (cyc[i].clone(), cyc[(i + 1) % 6].clone()))
            .collect();
        assert!(recognize_gen_theta(&Graph::new(cyc, es).unwrap()).is_none());

        let g = parse_graph_text("cycle:[[2,2],[3],[2,2]]").unwrap();
        assert!(recognize_gen_theta(&g).is_none());
    }

    #[test]
    fn recognize_cycle() {
        let g = parse_graph_text("cycle:[[2,3],[4],[2,2]]").unwrap();
        let c = recognize_theta_cycle(&g).unwrap();
        assert_eq!(c.component_count(), 3);
        let mut rs = c.branch_counts();
        rs.sort();
        assert_eq!(rs, vec![1, 2, 2]);
        assert_eq!(c.nontrivial_indices().len(), 2);

        assert!(recognize_theta_cycle(&parse_graph_text("theta:2,2,3").unwrap()).is_none());

        // Recognition is stable under the description used to build it.
        let c2 = recognize_theta_cycle(&c.graph()).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn theta_vector_examples() {
        let t = GeneralizedTheta::new(vec![2, 2, 3, 4]).unwrap();
        assert_eq!(
            t.theta_vector().unwrap(),
            QVector::from_pairs(&[(-1, 4), (-1, 4), (-1, 2), (-3, 4)])
        );
        let t = GeneralizedTheta::new(vec![2, 2, 2]).unwrap();
        assert_eq!(
            t.theta_vector().unwrap(),
            QVector::from_pairs(&[(-1, 4), (-1, 4), (-1, 4)])
        );
        let t = GeneralizedTheta::new(vec![5, 5, 9]).unwrap();
        assert_eq!(
            t.theta_vector().unwrap(),
            QVector::from_pairs(&[(-1, 1), (-1, 1), (-2, 1)])
        );
        assert!(GeneralizedTheta::new(vec![1, 2, 2])
            .unwrap()
            .theta_vector()
            .is_err());
    }

    #[test]
    fn theta_vector_sum_is_euler_characteristic() {
        for n in [vec![2, 2, 2], vec![2, 3, 4, 5], vec![3, 3, 3, 3, 3]] {
            let t = GeneralizedTheta::new(n).unwrap();
            let v = t.theta_vector().unwrap();
            let chi = euler_characteristic(&t.graph()).unwrap();
            assert_eq!(v.entry_sum(), chi);
        }
    }

    #[test]
    fn cycle_data_w_examples() {
        // Mixed branch counts: no w.
        let c = ThetaCycle::new(vec![vec![2, 2], vec![2, 2, 2], vec![2, 2]]).unwrap();
        let d = cycle_data(&c).unwrap();
        assert!(d.w.is_none());
        assert!(d.r.is_none());

        // chi(W_A) < 0 always.
        for c in [
            ThetaCycle::new(vec![vec![2, 2], vec![2, 2], vec![2, 2]]).unwrap(),
            ThetaCycle::new(vec![vec![2, 3], vec![4], vec![2, 2]]).unwrap(),
        ] {
            assert!(cycle_data(&c).unwrap().chi_a < Rat::zero());
        }
    }

    #[test]
    fn cycle_data_invariant_under_description_symmetry() {
        let base = vec![vec![2, 3], vec![2, 3], vec![2], vec![4, 7]];
        let d0 = cycle_data(&ThetaCycle::new(base.clone()).unwrap()).unwrap();
        // Rotate and reflect the description; the data must agree.
        let rot = vec![vec![2], vec![4, 7], vec![2, 3], vec![2, 3]];
        let refl = vec![vec![4, 7], vec![2], vec![2, 3], vec![2, 3]];
        for desc in [rot, refl] {
            let d = cycle_data(&ThetaCycle::new(desc).unwrap()).unwrap();
            assert_eq!(d.chi_a, d0.chi_a);
            assert_eq!(d.w, d0.w);
        }
    }

    #[test]
    fn doubling_examples() {
        let t = GeneralizedTheta::new(vec![1, 2, 2]).unwrap();
        assert_eq!(
            double_theta(&t).unwrap().interior_counts(),
            &[2, 2, 2, 2]
        );
        let t = GeneralizedTheta::new(vec![1, 2, 3]).unwrap();
        assert_eq!(
            double_theta(&t).unwrap().interior_counts(),
            &[2, 2, 3, 3]
        );
        assert!(double_theta(&GeneralizedTheta::new(vec![2, 2, 2]).unwrap()).is_err());
    }

    #[test]
    fn doubling_class_is_duplicated_tail() {
        // The doubled vector's class is determined by (n_2..n_k) duplicated.
        let t = GeneralizedTheta::new(vec![1, 3, 4]).unwrap();
        let d = double_theta(&t).unwrap();
        let v = d.theta_vector().unwrap();
        let dup = QVector::new(
            [3u64, 3, 4, 4]
                .iter()
                .map(|&m| branch_euler_from_interior(m))
                .collect(),
        )
        .unwrap();
        let (r1, _) = crate::ratvec::minimal_integral(&v).unwrap();
        let (r2, _) = crate::ratvec::minimal_integral(&dup).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn theta_to_cycle_examples() {
        let t = GeneralizedTheta::new(vec![2, 2, 2]).unwrap();
        let (c, chain) = theta_to_cycle(&t).unwrap();
        assert_eq!(c.component_count(), 4);
        assert!(c.is_3_convex());
        assert_eq!(chain.len(), 2);
        // Total degree 4: chi scales accordingly.
        let chi_t = euler_characteristic(&t.graph()).unwrap();
        let chi_c = euler_characteristic(&c.graph()).unwrap();
        assert_eq!(chi_c, chi_t * rat_int(4));

        let t = GeneralizedTheta::new(vec![3, 3, 3]).unwrap();
        let (c, chain) = theta_to_cycle(&t).unwrap();
        assert_eq!(c.component_count(), 3);
        assert_eq!(c.components(), &[vec![3], vec![3, 3], vec![3, 3]]);
        assert!(c.is_3_convex());
        assert_eq!(chain.len(), 1);
        let chi_t = euler_characteristic(&t.graph()).unwrap();
        let chi_c = euler_characteristic(&c.graph()).unwrap();
        assert_eq!(chi_c, chi_t * rat_int(2));

        assert!(theta_to_cycle(&GeneralizedTheta::new(vec![2, 2]).unwrap()).is_err());
    }
}
