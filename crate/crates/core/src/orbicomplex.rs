//! Combinatorial reflection orbicomplexes: one right-angled polygon per
//! Type-2 vertex of the JSJ decomposition, glued along typed
//! non-reflection edges, with exact Euler characteristic bookkeeping.

use crate::graph::Graph;
use crate::ratvec::{rat, rat_int, Rat};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// One edge of a reflection polygon.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PolyEdge {
    /// Mirror edge with local group generated by one vertex generator.
    Reflection { generator: String },
    /// Gluing edge typed by an essential cut pair.
    NonReflection { etype: (String, String) },
}

/// A polygon as a cyclic edge sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub edges: Vec<PolyEdge>,
}

impl Polygon {
    pub fn sides(&self) -> usize {
        self.edges.len()
    }

    pub fn non_reflection_types(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .filter_map(|e| match e {
                PolyEdge::NonReflection { etype } => Some(etype.clone()),
                _ => None,
            })
            .collect()
    }

    /// Euler characteristic of the polygon as a standalone reflection
    /// orbifold: `1 - sides/4` (each mirror contributes -1/2, each corner
    /// 1/4 or 1/2 according to its local group; the total collapses to
    /// this).
    pub fn chi(&self) -> Rat {
        rat_int(1) - rat(self.sides() as i64, 4)
    }

    /// No two non-reflection edges may be cyclically adjacent.
    fn validate(&self) -> Result<()> {
        let n = self.sides();
        if n < 3 {
            return Err(Error::Internal("polygon needs at least 3 sides".into()));
        }
        for i in 0..n {
            let a = &self.edges[i];
            let b = &self.edges[(i + 1) % n];
            if matches!(a, PolyEdge::NonReflection { .. })
                && matches!(b, PolyEdge::NonReflection { .. })
            {
                return Err(Error::Internal(
                    "adjacent non-reflection edges in a polygon".into(),
                ));
            }
        }
        Ok(())
    }
}

/// A collection of reflection polygons glued along all non-reflection
/// edges of equal type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbicomplex {
    pub polygons: Vec<Polygon>,
}

/// The face/edge/vertex counts entering the Euler characteristic formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbiCounts {
    pub faces: usize,
    pub e1: usize,
    pub e2: usize,
    pub v2: usize,
    pub v4: usize,
}

impl Orbicomplex {
    pub fn counts(&self) -> OrbiCounts {
        let faces = self.polygons.len();
        let types: BTreeSet<(String, String)> = self
            .polygons
            .iter()
            .flat_map(|p| p.non_reflection_types())
            .collect();
        let e1 = types.len();
        let e2: usize = self
            .polygons
            .iter()
            .map(|p| p.sides() - p.non_reflection_types().len())
            .sum();
        let v2 = 2 * e1;
        let v4: usize = self
            .polygons
            .iter()
            .map(|p| p.sides() - 2 * p.non_reflection_types().len())
            .sum();
        OrbiCounts { faces, e1, e2, v2, v4 }
    }

    /// `F - (E1 + E2/2) + (V2/2 + V4/4)`.
    pub fn chi(&self) -> Rat {
        let c = self.counts();
        rat_int(c.faces as i64) - (rat_int(c.e1 as i64) + rat(c.e2 as i64, 2))
            + (rat(c.v2 as i64, 2) + rat(c.v4 as i64, 4))
    }

    pub fn validate(&self) -> Result<()> {
        let mut type_count: BTreeMap<(String, String), usize> = BTreeMap::new();
        for p in &self.polygons {
            p.validate()?;
            for t in p.non_reflection_types() {
                *type_count.entry(t).or_default() += 1;
            }
        }
        for (t, k) in &type_count {
            if *k < 3 {
                return Err(Error::Internal(format!(
                    "non-reflection type {t:?} appears in {k} polygons, branching requires >= 3"
                )));
            }
        }
        // Gluing contributes nothing to chi, so the complex chi equals the
        // sum of standalone polygon chis.
        let sum: Rat = self
            .polygons
            .iter()
            .fold(rat_int(0), |acc, p| acc + p.chi());
        if sum != self.chi() {
            return Err(Error::Internal(
                "orbicomplex chi disagrees with the polygon sum".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "polygons": self.polygons.iter().map(|p| {
                p.edges.iter().map(|e| match e {
                    PolyEdge::Reflection { generator } => serde_json::json!({
                        "kind": "reflection", "generator": generator,
                    }),
                    PolyEdge::NonReflection { etype } => serde_json::json!({
                        "kind": "non-reflection", "type": [etype.0, etype.1],
                    }),
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// Builds the orbicomplex of a 3-convex defining graph: one polygon per
/// Type-2 vertex, with one reflection edge per set element in cyclic order
/// and one non-reflection edge at each non-adjacent consecutive pair.
/// Asserts that the complex Euler characteristic equals the group's.
pub fn build_orbicomplex(g: &Graph) -> Result<Orbicomplex> {
    let jsj = crate::jsj::jsj_decomposition(g)?;
    build_orbicomplex_from_jsj(g, &jsj)
}

pub fn build_orbicomplex_from_jsj(
    g: &Graph,
    jsj: &crate::jsj::JsjGraph,
) -> Result<Orbicomplex> {
    let pairs: BTreeSet<(String, String)> = jsj
        .type1
        .iter()
        .map(|t| normalize_pair(&t.pair))
        .collect();
    let mut polygons = Vec::new();
    for t2 in &jsj.type2 {
        let order = &t2.cyclic_order;
        let m = order.len();
        let mut edges = Vec::new();
        for i in 0..m {
            edges.push(PolyEdge::Reflection {
                generator: order[i].clone(),
            });
            let next = &order[(i + 1) % m];
            if !g.adjacent(&order[i], next) {
                let etype = normalize_pair(&(order[i].clone(), next.clone()));
                if !pairs.contains(&etype) {
                    return Err(Error::Internal(format!(
                        "non-reflection edge type {etype:?} is not a Type-1 pair"
                    )));
                }
                edges.push(PolyEdge::NonReflection { etype });
            }
        }
        polygons.push(Polygon { edges });
    }
    let orbi = Orbicomplex { polygons };
    orbi.validate()?;
    // Each Type-1 pair must occur in exactly its JSJ valence many polygons.
    let mut type_count: BTreeMap<(String, String), usize> = BTreeMap::new();
    for p in &orbi.polygons {
        for t in p.non_reflection_types() {
            *type_count.entry(t).or_default() += 1;
        }
    }
    for (i, t1) in jsj.type1.iter().enumerate() {
        let key = normalize_pair(&t1.pair);
        if type_count.get(&key).copied().unwrap_or(0) != jsj.type1_valence(i) {
            return Err(Error::Internal(format!(
                "pair {key:?} occurs in {} polygons but has JSJ valence {}",
                type_count.get(&key).copied().unwrap_or(0),
                jsj.type1_valence(i)
            )));
        }
    }
    let chi_w = crate::racg::euler_characteristic(g)?;
    if orbi.chi() != chi_w {
        return Err(Error::Internal(format!(
            "chi(orbicomplex) = {} but chi(W) = {}",
            orbi.chi(),
            chi_w
        )));
    }
    Ok(orbi)
}

fn normalize_pair(p: &(String, String)) -> (String, String) {
    if p.0 <= p.1 {
        p.clone()
    } else {
        (p.1.clone(), p.0.clone())
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_text;

    #[test]
    fn theta222_three_pentagons() {
        let g = parse_graph_text("theta:2,2,2").unwrap();
        let o = build_orbicomplex(&g).unwrap();
        assert_eq!(o.polygons.len(), 3);
        for p in &o.polygons {
            assert_eq!(p.sides(), 5);
            assert_eq!(p.chi(), rat(-1, 4));
            assert_eq!(p.non_reflection_types().len(), 1);
        }
        assert_eq!(o.chi(), rat(-3, 4));
        let c = o.counts();
        assert_eq!((c.faces, c.e1, c.e2, c.v2, c.v4), (3, 1, 12, 2, 9));
    }

    #[test]
    fn branch_polygon_sides_and_chi() {
        // A branch with 4 vertices gives a pentagon of chi -1/4; an
        // essential-vertex hexagon (L = 3, no trivial branches in the set)
        // has chi -1/2.
        let g = parse_graph_text("cycle:[[2,2],[2,2],[2,2]]").unwrap();
        let o = build_orbicomplex(&g).unwrap();
        let mut sides: Vec<usize> = o.polygons.iter().map(|p| p.sides()).collect();
        sides.sort();
        assert_eq!(sides, vec![5, 5, 5, 5, 5, 5, 6]);
        let hexagon = o.polygons.iter().find(|p| p.sides() == 6).unwrap();
        assert_eq!(hexagon.chi(), rat(-1, 2));
        assert_eq!(o.chi(), crate::racg::euler_characteristic(&g).unwrap());
    }

    #[test]
    fn trivial_branch_glues_into_central_polygon() {
        let g = parse_graph_text("cycle:[[2,3],[4],[2,2]]").unwrap();
        let o = build_orbicomplex(&g).unwrap();
        // Central polygon: |A| = 7 reflection edges + 2 non-reflection.
        let central = o.polygons.iter().find(|p| p.sides() == 9).unwrap();
        assert_eq!(central.non_reflection_types().len(), 2);
        assert_eq!(o.chi(), crate::racg::euler_characteristic(&g).unwrap());
    }
}
