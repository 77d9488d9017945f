//! Surface amalgams, surface coverings, and the degree-16 surface-amalgam
//! cover of the reflection orbicomplex of a defining graph.
//!
//! Covers are certificates: degree, per-boundary covering degrees, and
//! exact Euler characteristics, validated against multiplicativity and the
//! boundary-parity criterion. No cell structures are materialized.

use crate::graph::Graph;
use crate::ratvec::{rat_int, Rat};
use crate::{Error, Result};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

// ============================================================================
// Surfaces
// ============================================================================

/// The connected oriented surface of genus `g` with `b` boundary
/// components; `chi = 2 - 2g - b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surface {
    pub genus: u64,
    pub boundary: u64,
}

impl Surface {
    pub fn new(genus: u64, boundary: u64) -> Surface {
        Surface { genus, boundary }
    }

    pub fn chi_int(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    pub fn chi(&self) -> Rat {
        rat_int(self.chi_int())
    }
}

// ============================================================================
// Bipartite graphs (multi-edges allowed)
// ============================================================================

/// A bipartite graph with named Type-1 and Type-2 vertices. Parallel edges
/// are allowed; each edge joins a Type-1 vertex to a Type-2 vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub type1: Vec<String>,
    pub type2: Vec<String>,
    /// `(type1 id, type2 id)` with multiplicity; kept sorted.
    pub edges: Vec<(String, String)>,
}

impl BipartiteGraph {
    pub fn new(
        mut type1: Vec<String>,
        mut type2: Vec<String>,
        mut edges: Vec<(String, String)>,
    ) -> Result<BipartiteGraph> {
        type1.sort();
        type2.sort();
        let t1: BTreeSet<&String> = type1.iter().collect();
        let t2: BTreeSet<&String> = type2.iter().collect();
        if t1.len() != type1.len() || t2.len() != type2.len() {
            return Err(Error::InvalidInput("duplicate vertex id".into()));
        }
        if let Some(v) = t1.intersection(&t2).next() {
            return Err(Error::InvalidInput(format!(
                "vertex `{v}` declared with both types"
            )));
        }
        for (a, b) in &edges {
            if !t1.contains(a) || !t2.contains(b) {
                return Err(Error::InvalidInput(format!(
                    "edge ({a},{b}) must join a Type-1 vertex to a Type-2 vertex"
                )));
            }
        }
        edges.sort();
        Ok(BipartiteGraph { type1, type2, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.type1.len() + self.type2.len()
    }

    pub fn is_type1(&self, v: &str) -> bool {
        self.type1.iter().any(|x| x == v)
    }

    /// Indices into `edges` of the edges incident to `v`.
    pub fn star(&self, v: &str) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn valence(&self, v: &str) -> usize {
        self.star(v).len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let start = self
            .type1
            .first()
            .or(self.type2.first())
            .cloned()
            .unwrap();
        let mut seen: BTreeSet<String> = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.star(&v) {
                let (a, b) = &self.edges[e];
                let w = if *a == v { b } else { a };
                if seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
        }
        seen.len() == n
    }

    /// A tree: connected, simple, `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        let simple = self
            .edges
            .windows(2)
            .all(|w| w[0] != w[1]);
        simple && self.is_connected() && self.edges.len() + 1 == self.vertex_count()
    }

    pub fn diameter(&self) -> usize {
        let ids: Vec<String> = self
            .type1
            .iter()
            .chain(self.type2.iter())
            .cloned()
            .collect();
        let far = |s: &String| -> (String, usize) {
            let mut dist: BTreeMap<String, usize> = BTreeMap::from([(s.clone(), 0)]);
            let mut queue = VecDeque::from([s.clone()]);
            let mut best = (s.clone(), 0);
            while let Some(v) = queue.pop_front() {
                let d = dist[&v];
                for &e in &self.star(&v) {
                    let (a, b) = &self.edges[e];
                    let w = if *a == v { b } else { a };
                    if !dist.contains_key(w) {
                        dist.insert(w.clone(), d + 1);
                        if d + 1 > best.1 {
                            best = (w.clone(), d + 1);
                        }
                        queue.push_back(w.clone());
                    }
                }
            }
            best
        };
        match ids.first() {
            None => 0,
            Some(s) => {
                let (a, _) = far(s);
                far(&a).1
            }
        }
    }
}

// ============================================================================
// Surface amalgams
// ============================================================================

/// A surface amalgam: one circle per Type-1 vertex, one surface with
/// boundary per Type-2 vertex, every boundary component glued to an
/// incident circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceAmalgam {
    pub graph: BipartiteGraph,
    pub surfaces: BTreeMap<String, Surface>,
    /// For each Type-2 vertex, the Type-1 vertices its boundary components
    /// attach to, with multiplicity; length matches the boundary count.
    pub boundary: BTreeMap<String, Vec<String>>,
}

impl SurfaceAmalgam {
    /// Builds and validates an amalgam from surfaces and boundary
    /// assignments; the graph is derived.
    pub fn new(
        type1: Vec<String>,
        surfaces: BTreeMap<String, Surface>,
        boundary: BTreeMap<String, Vec<String>>,
    ) -> Result<SurfaceAmalgam> {
        let type2: Vec<String> = surfaces.keys().cloned().collect();
        let mut edges = Vec::new();
        for (y, bs) in &boundary {
            for c in bs {
                edges.push((c.clone(), y.clone()));
            }
        }
        let graph = BipartiteGraph::new(type1, type2, edges)?;
        let x = SurfaceAmalgam { graph, surfaces, boundary };
        x.validate()?;
        Ok(x)
    }

    /// Checks the defining conditions: every Type-1 valence at least 3,
    /// every surface has negative Euler characteristic and at least one
    /// boundary component, and boundary counts match valences.
    pub fn validate(&self) -> Result<()> {
        if self.graph.type2.is_empty() {
            return Err(Error::InvalidInput("amalgam needs at least one surface".into()));
        }
        if !self.graph.is_connected() {
            return Err(Error::InvalidInput("amalgam graph must be connected".into()));
        }
        for c in &self.graph.type1 {
            if self.graph.valence(c) < 3 {
                return Err(Error::InvalidInput(format!(
                    "Type-1 vertex `{c}` has valence {} < 3",
                    self.graph.valence(c)
                )));
            }
        }
        for y in &self.graph.type2 {
            let s = self
                .surfaces
                .get(y)
                .ok_or_else(|| Error::InvalidInput(format!("no surface at `{y}`")))?;
            if s.boundary == 0 {
                return Err(Error::InvalidInput(format!(
                    "surface at `{y}` has no boundary"
                )));
            }
            if s.chi_int() >= 0 {
                return Err(Error::InvalidInput(format!(
                    "surface at `{y}` has chi = {} >= 0",
                    s.chi_int()
                )));
            }
            let assigned = self
                .boundary
                .get(y)
                .ok_or_else(|| Error::InvalidInput(format!("no boundary assignment at `{y}`")))?;
            if assigned.len() as u64 != s.boundary {
                return Err(Error::InvalidInput(format!(
                    "surface at `{y}` has {} boundary components but {} assignments",
                    s.boundary,
                    assigned.len()
                )));
            }
        }
        Ok(())
    }

    /// Sum of the Euler characteristics of the surfaces (circles
    /// contribute zero).
    pub fn euler(&self) -> Rat {
        self.surfaces
            .values()
            .fold(Rat::zero(), |acc, s| acc + s.chi())
    }
}

/// Sum of surface Euler characteristics of a valid amalgam.
pub fn amalgam_euler(x: &SurfaceAmalgam) -> Rat {
    x.euler()
}

pub const AMALGAM_FORMAT: &str = "amalgam/1";

pub fn amalgam_to_json(x: &SurfaceAmalgam) -> serde_json::Value {
    serde_json::json!({
        "format": AMALGAM_FORMAT,
        "type1": x.graph.type1,
        "type2": x.graph.type2.iter().map(|y| serde_json::json!({
            "id": y,
            "genus": x.surfaces[y].genus,
            "boundary": x.boundary[y],
        })).collect::<Vec<_>>(),
    })
}

pub fn amalgam_from_json(v: &serde_json::Value) -> Result<SurfaceAmalgam> {
    let fmt = v
        .get("format")
        .and_then(|f| f.as_str())
        .ok_or_else(|| Error::InvalidInput("amalgam JSON missing format".into()))?;
    if fmt != AMALGAM_FORMAT {
        return Err(Error::InvalidInput(format!(
            "unknown amalgam format `{fmt}` (expected {AMALGAM_FORMAT})"
        )));
    }
    let type1: Vec<String> = serde_json::from_value(
        v.get("type1")
            .cloned()
            .ok_or_else(|| Error::InvalidInput("amalgam JSON missing type1".into()))?,
    )
    .map_err(|e| Error::InvalidInput(format!("bad type1 list: {e}")))?;
    let t2 = v
        .get("type2")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::InvalidInput("amalgam JSON missing type2".into()))?;
    let mut surfaces = BTreeMap::new();
    let mut boundary = BTreeMap::new();
    for item in t2 {
        let id = item
            .get("id")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::InvalidInput("type2 entry missing id".into()))?
            .to_string();
        let genus = item
            .get("genus")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::InvalidInput("type2 entry missing genus".into()))?;
        let bnd: Vec<String> = serde_json::from_value(
            item.get("boundary")
                .cloned()
                .ok_or_else(|| Error::InvalidInput("type2 entry missing boundary".into()))?,
        )
        .map_err(|e| Error::InvalidInput(format!("bad boundary list: {e}")))?;
        surfaces.insert(id.clone(), Surface::new(genus, bnd.len() as u64));
        boundary.insert(id, bnd);
    }
    SurfaceAmalgam::new(type1, surfaces, boundary)
}

// ============================================================================
// Surface covers
// ============================================================================

/// A certificate for a connected covering of surfaces: the base, the total
/// degree, the multiset of boundary degrees over each base boundary
/// component, and the resulting cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCover {
    pub base: Surface,
    pub degree: u64,
    pub boundary_degrees: Vec<Vec<u64>>,
    pub cover: Surface,
}

impl SurfaceCover {
    /// Re-validates the certificate: boundary multisets sum to the degree,
    /// boundary counts match, Euler characteristic is multiplicative, and
    /// the boundary count of the cover has the parity of `D * chi(base)`.
    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Internal("cover degree must be positive".into()));
        }
        if self.boundary_degrees.len() as u64 != self.base.boundary {
            return Err(Error::Internal(
                "one degree multiset per base boundary component required".into(),
            ));
        }
        let mut total = 0u64;
        for ds in &self.boundary_degrees {
            if ds.is_empty() || ds.iter().any(|&d| d == 0) {
                return Err(Error::Internal("boundary degrees must be positive".into()));
            }
            if ds.iter().sum::<u64>() != self.degree {
                return Err(Error::Internal(format!(
                    "boundary degree multiset {ds:?} does not sum to {}",
                    self.degree
                )));
            }
            total += ds.len() as u64;
        }
        if total != self.cover.boundary {
            return Err(Error::Internal(format!(
                "cover has {} boundary components, certificate lists {total}",
                self.cover.boundary
            )));
        }
        let want = self.degree as i64 * self.base.chi_int();
        if self.cover.chi_int() != want {
            return Err(Error::Internal(format!(
                "chi(cover) = {} but D * chi(base) = {want}",
                self.cover.chi_int()
            )));
        }
        if (self.cover.boundary as i64 - want).rem_euclid(2) != 0 {
            return Err(Error::Internal(
                "cover boundary count parity violates the covering criterion".into(),
            ));
        }
        Ok(())
    }
}

/// Degree-3 positive-genus cover `S_{g,b} -> S_{g',b}` with
/// `g' = 3g + b - 2`, one boundary of degree 3 over each base boundary.
pub fn pos_genus_cover(s: Surface) -> Result<SurfaceCover> {
    if s.chi_int() >= 0 {
        return Err(Error::Unsupported(format!(
            "positive-genus cover requires chi < 0, got {}",
            s.chi_int()
        )));
    }
    if s.boundary == 0 {
        return Err(Error::Unsupported(
            "positive-genus cover requires nonempty boundary".into(),
        ));
    }
    let g2 = 3 * s.genus + s.boundary - 2;
    let cover = Surface::new(g2, s.boundary);
    let cert = SurfaceCover {
        base: s,
        degree: 3,
        boundary_degrees: vec![vec![3]; s.boundary as usize],
        cover,
    };
    cert.validate()?;
    Ok(cert)
}

/// Connected `D`-fold covers of a positive-genus surface with prescribed
/// boundary degrees: feasible exactly when the total boundary count of the
/// would-be cover has the parity of `D * chi(S)`. Returns `None` when
/// infeasible.
pub fn neumann_cover(s: Surface, degree: u64, specs: &[Vec<u64>]) -> Result<Option<SurfaceCover>> {
    if s.genus == 0 {
        return Err(Error::Unsupported(
            "the boundary-degree covering criterion requires positive genus; compose with a positive-genus cover first"
                .into(),
        ));
    }
    if s.boundary == 0 || degree == 0 {
        return Err(Error::InvalidInput(
            "base must have boundary and the degree must be positive".into(),
        ));
    }
    if specs.len() as u64 != s.boundary {
        return Err(Error::InvalidInput(format!(
            "expected {} boundary degree multisets, got {}",
            s.boundary,
            specs.len()
        )));
    }
    for ds in specs {
        if ds.is_empty() || ds.iter().any(|&d| d == 0) {
            return Err(Error::InvalidInput("boundary degrees must be positive".into()));
        }
        if ds.iter().sum::<u64>() != degree {
            return Err(Error::InvalidInput(format!(
                "boundary degree multiset {ds:?} does not sum to {degree}"
            )));
        }
    }
    let b2: i64 = specs.iter().map(|ds| ds.len() as i64).sum();
    let dchi = degree as i64 * s.chi_int();
    if (b2 - dchi).rem_euclid(2) != 0 {
        return Ok(None);
    }
    let g2_twice = 2 - b2 - dchi;
    if g2_twice < 0 || g2_twice % 2 != 0 {
        return Err(Error::Internal(format!(
            "derived genus not a non-negative integer: 2 - b' - D*chi = {g2_twice}"
        )));
    }
    let cert = SurfaceCover {
        base: s,
        degree,
        boundary_degrees: specs.to_vec(),
        cover: Surface::new((g2_twice / 2) as u64, b2 as u64),
    };
    cert.validate()?;
    Ok(Some(cert))
}

// ============================================================================
// Degree-16 cover of the orbicomplex
// ============================================================================

/// Per-surface piece of the degree-16 certificate: the base orbifold's
/// Euler characteristic and the boundary data over each of its
/// non-reflection edges (labeled by Type-1 vertices of the JSJ graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldCoverCert {
    pub type2_id: String,
    pub base_chi: Rat,
    pub cover: Surface,
    /// `(JSJ Type-1 id, degrees of the cover boundaries over that edge)`.
    pub boundary_degrees: Vec<(String, Vec<u64>)>,
}

/// Certificate for the degree-16 surface-amalgam cover of the orbicomplex
/// of a defining graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover16Certificate {
    pub degree: u64,
    /// `chi(W_Gamma) = chi` of the base orbicomplex.
    pub base_chi: Rat,
    pub per_surface: Vec<OrbifoldCoverCert>,
}

impl Cover16Certificate {
    pub fn validate(&self, amalgam: &SurfaceAmalgam) -> Result<()> {
        if self.degree != 16 {
            return Err(Error::Internal("certificate degree must be 16".into()));
        }
        let mut total = Rat::zero();
        for cert in &self.per_surface {
            let want = &cert.base_chi * rat_int(16);
            if cert.cover.chi() != want {
                return Err(Error::Internal(format!(
                    "surface over `{}`: chi(cover) != 16 * chi(orbifold)",
                    cert.type2_id
                )));
            }
            if cert.cover.genus < 2 {
                return Err(Error::Internal(format!(
                    "surface over `{}` has genus {} < 2",
                    cert.type2_id, cert.cover.genus
                )));
            }
            let mut count = 0u64;
            for (_, ds) in &cert.boundary_degrees {
                if ds.iter().sum::<u64>() != 16 {
                    return Err(Error::Internal(
                        "boundary degrees over a non-reflection edge must sum to 16".into(),
                    ));
                }
                count += ds.len() as u64;
            }
            if count != cert.cover.boundary {
                return Err(Error::Internal("boundary count mismatch in certificate".into()));
            }
            total += cert.cover.chi();
        }
        let want_total = &self.base_chi * rat_int(16);
        if total != want_total {
            return Err(Error::Internal(format!(
                "chi(amalgam) = {total} but 16 * chi(W) = {want_total}"
            )));
        }
        if amalgam.euler() != total {
            return Err(Error::Internal("amalgam Euler characteristic mismatch".into()));
        }
        Ok(())
    }
}

/// Constructs the degree-16 surface-amalgam cover of the orbicomplex of
/// `g`: branch orbifolds over `p`-gons are covered by genus-`2(p-4)`
/// surfaces with 2 boundary components, non-branch orbifolds by surfaces
/// with `2l` boundary components and Euler characteristic `16 chi(W_A)`.
/// The amalgam's graph is the doubled JSJ graph.
pub fn cover16(g: &Graph) -> Result<(SurfaceAmalgam, Cover16Certificate)> {
    let jsj = crate::jsj::jsj_decomposition(g)?;
    let lambda = jsj.bipartite();
    let (h, _theta) = crate::halfcover::build_h(&lambda)?;

    let chi_w = crate::racg::euler_characteristic(g)?;
    let mut surfaces = BTreeMap::new();
    let mut boundary = BTreeMap::new();
    let mut per_surface = Vec::new();
    for (j, t2) in jsj.type2.iter().enumerate() {
        let id = format!("A{j}");
        let (base_chi, surf) = match &t2.branch {
            Some(b) => {
                // p-gon with p = n + 1; cover of genus 2(p-4) with two
                // boundary components.
                let n = b.vertex_count() as i64;
                let p = n + 1;
                let chi = crate::ratvec::rat(4 - p, 4);
                (chi, Surface::new(2 * (p as u64 - 4), 2))
            }
            None => {
                let chi = crate::racg::euler_characteristic(&g.induced(&t2.set))?;
                let ell = jsj.type2_valence(j) as u64;
                let chi16 = &chi * rat_int(16);
                if !chi16.is_integer() {
                    return Err(Error::Internal("16 chi(W_A) must be an integer".into()));
                }
                let chi16: i64 = chi16.numer().to_string().parse().map_err(|_| {
                    Error::Internal("chi out of range for surface bookkeeping".into())
                })?;
                let g2_twice = 2 - 2 * ell as i64 - chi16;
                if g2_twice < 0 || g2_twice % 2 != 0 {
                    return Err(Error::Internal(
                        "non-branch cover genus is not a non-negative integer".into(),
                    ));
                }
                (chi, Surface::new((g2_twice / 2) as u64, 2 * ell))
            }
        };
        // Boundary labels: one pair per incident Type-1 vertex, one copy
        // in each sheet of the doubled JSJ graph.
        let mut labels = Vec::new();
        let mut nbrs: Vec<usize> = jsj
            .edges
            .iter()
            .filter(|(_, b)| *b == j)
            .map(|(a, _)| *a)
            .collect();
        nbrs.sort();
        let mut bdeg = Vec::new();
        for i in nbrs {
            labels.push(format!("p{i}#0"));
            labels.push(format!("p{i}#1"));
            bdeg.push((format!("p{i}"), vec![8, 8]));
        }
        if labels.len() as u64 != surf.boundary {
            return Err(Error::Internal(format!(
                "surface over `{id}`: {} boundary components vs {} labels",
                surf.boundary,
                labels.len()
            )));
        }
        if surf.genus < 2 {
            return Err(Error::Internal(format!(
                "surface over `{id}` has genus {} < 2",
                surf.genus
            )));
        }
        surfaces.insert(id.clone(), surf);
        boundary.insert(id.clone(), labels);
        per_surface.push(OrbifoldCoverCert {
            type2_id: id,
            base_chi,
            cover: surf,
            boundary_degrees: bdeg,
        });
    }
    let amalgam = SurfaceAmalgam::new(h.type1.clone(), surfaces, boundary)?;
    if amalgam.graph != h {
        return Err(Error::Internal(
            "amalgam graph differs from the doubled JSJ graph".into(),
        ));
    }
    let cert = Cover16Certificate {
        degree: 16,
        base_chi: chi_w,
        per_surface,
    };
    cert.validate(&amalgam)?;
    Ok((amalgam, cert))
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_text;
    use crate::ratvec::rat;

    #[test]
    fn surface_chi() {
        assert_eq!(Surface::new(0, 3).chi_int(), -1);
        assert_eq!(Surface::new(2, 2).chi_int(), -4);
        assert_eq!(Surface::new(1, 1).chi_int(), -1);
    }

    #[test]
    fn amalgam_euler_examples() {
        // Three genus-2 two-boundary surfaces glued along 2 circles.
        let mut surfaces = BTreeMap::new();
        let mut boundary = BTreeMap::new();
        for i in 0..3 {
            surfaces.insert(format!("s{i}"), Surface::new(2, 2));
            boundary.insert(format!("s{i}"), vec!["c0".to_string(), "c1".to_string()]);
        }
        let x = SurfaceAmalgam::new(vec!["c0".into(), "c1".into()], surfaces, boundary).unwrap();
        assert_eq!(amalgam_euler(&x), rat_int(-12));

        // chi >= 0 surfaces rejected.
        let mut surfaces = BTreeMap::new();
        let mut boundary = BTreeMap::new();
        for i in 0..3 {
            surfaces.insert(format!("s{i}"), Surface::new(0, 2));
            boundary.insert(format!("s{i}"), vec!["c0".to_string(), "c1".to_string()]);
        }
        assert!(SurfaceAmalgam::new(vec!["c0".into(), "c1".into()], surfaces, boundary).is_err());

        // Missing boundary assignment rejected.
        let mut surfaces = BTreeMap::new();
        surfaces.insert("s0".to_string(), Surface::new(1, 3));
        let boundary = BTreeMap::new();
        assert!(SurfaceAmalgam::new(vec!["c0".into()], surfaces, boundary).is_err());
    }

    #[test]
    fn pos_genus_examples() {
        let c = pos_genus_cover(Surface::new(0, 3)).unwrap();
        assert_eq!(c.cover, Surface::new(1, 3));
        assert_eq!(c.degree, 3);
        let c = pos_genus_cover(Surface::new(1, 2)).unwrap();
        assert_eq!(c.cover, Surface::new(3, 2));
        assert!(pos_genus_cover(Surface::new(0, 2)).is_err());
    }

    #[test]
    fn neumann_examples() {
        // S_{1,1}, degree 2, boundary degrees {1,1} -> S_{1,2}.
        let c = neumann_cover(Surface::new(1, 1), 2, &[vec![1, 1]])
            .unwrap()
            .unwrap();
        assert_eq!(c.cover, Surface::new(1, 2));
        // S_{1,2}, degree 3, specs {3},{1,2}: b' = 3 odd vs D chi = -6 even.
        assert!(neumann_cover(Surface::new(1, 2), 3, &[vec![3], vec![1, 2]])
            .unwrap()
            .is_none());
        // Identity cover.
        let s = Surface::new(2, 3);
        let c = neumann_cover(s, 1, &[vec![1], vec![1], vec![1]])
            .unwrap()
            .unwrap();
        assert_eq!(c.cover, s);
        // Genus zero rejected.
        assert!(neumann_cover(Surface::new(0, 3), 2, &[vec![2], vec![2], vec![2]]).is_err());
        // Bad sums rejected.
        assert!(neumann_cover(Surface::new(1, 1), 2, &[vec![1]]).is_err());
    }

    #[test]
    fn pos_genus_then_neumann_composes() {
        let base = Surface::new(0, 3);
        let pg = pos_genus_cover(base).unwrap();
        let n = neumann_cover(pg.cover, 2, &[vec![2], vec![2], vec![1, 1]])
            .unwrap()
            .unwrap();
        assert_eq!(
            n.cover.chi_int(),
            (3 * 2) * base.chi_int(),
            "degrees multiply through the composition"
        );
    }

    #[test]
    fn cover16_theta222() {
        let g = parse_graph_text("theta:2,2,2").unwrap();
        let (x, cert) = cover16(&g).unwrap();
        assert_eq!(x.graph.type1.len(), 2);
        assert_eq!(x.graph.type2.len(), 3);
        for s in x.surfaces.values() {
            assert_eq!(*s, Surface::new(2, 2));
        }
        assert_eq!(amalgam_euler(&x), rat_int(-12));
        assert_eq!(cert.base_chi, rat(-3, 4));
    }

    #[test]
    fn cover16_cycle_surfaces() {
        let g = parse_graph_text("cycle:[[2,2],[2,2],[2,2]]").unwrap();
        let (x, cert) = cover16(&g).unwrap();
        // Six branch surfaces S_{2,2} and one central S_{2,6} (L = 3).
        let mut genus_boundary: Vec<Surface> = x.surfaces.values().cloned().collect();
        genus_boundary.sort();
        assert_eq!(genus_boundary.iter().filter(|s| **s == Surface::new(2, 2)).count(), 6);
        assert_eq!(genus_boundary.iter().filter(|s| **s == Surface::new(2, 6)).count(), 1);
        cert.validate(&x).unwrap();
    }
}
