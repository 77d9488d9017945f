//! Constructive commensurability certificates: unfolding witnesses for
//! theta-graph pairs, common-cover witnesses for the two cycle criteria,
//! and the conversion of a tree-JSJ surface amalgam to a right-angled
//! Coxeter defining graph.
//!
//! Every witness re-validates from its own data: cover certificates pass
//! the covering checks, graph isomorphisms are explicit bijections, and
//! all Euler characteristic chains are exact.

use crate::amalgam::{
    neumann_cover, pos_genus_cover, BipartiteGraph, Surface, SurfaceAmalgam, SurfaceCover,
};
use crate::graph::Graph;
use crate::halfcover::{build_h, verify_half_covering, GraphMorphism, HalfCovering};
use crate::orbicomplex::Orbicomplex;
use crate::racg::{CycleData, GeneralizedTheta};
use crate::ratvec::{minimal_integral, rat_int, ClassRep, QVector, Rat};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

// ============================================================================
// Numeric helpers
// ============================================================================

fn rat_to_int(r: &Rat, what: &str) -> Result<BigInt> {
    if !r.is_integer() {
        return Err(Error::Internal(format!("{what} = {r} is not an integer")));
    }
    Ok(r.numer().clone())
}

fn int_to_u64(x: &BigInt, what: &str) -> Result<u64> {
    u64::try_from(x.clone())
        .map_err(|_| Error::Unsupported(format!("{what} = {x} exceeds the supported range")))
}

/// Surface with the given boundary count and Euler characteristic.
fn surface_from_chi(chi: &Rat, boundary: u64, what: &str) -> Result<Surface> {
    let chi = rat_to_int(chi, what)?;
    let twice_genus = BigInt::from(2) - BigInt::from(boundary) - chi;
    if twice_genus.is_negative() || (&twice_genus % 2) != BigInt::zero() {
        return Err(Error::Internal(format!(
            "{what}: genus is not a non-negative integer"
        )));
    }
    Ok(Surface::new(int_to_u64(&(twice_genus / 2), what)?, boundary))
}

/// Explicit isomorphism check for bipartite multigraphs.
fn verify_graph_iso(
    g1: &BipartiteGraph,
    g2: &BipartiteGraph,
    map: &BTreeMap<String, String>,
) -> bool {
    let t1_img: BTreeSet<&String> = g1.type1.iter().filter_map(|v| map.get(v)).collect();
    let t2_img: BTreeSet<&String> = g1.type2.iter().filter_map(|v| map.get(v)).collect();
    if t1_img.len() != g2.type1.len()
        || t2_img.len() != g2.type2.len()
        || !g2.type1.iter().all(|v| t1_img.contains(v))
        || !g2.type2.iter().all(|v| t2_img.contains(v))
    {
        return false;
    }
    let mut mapped: Vec<(String, String)> = Vec::new();
    for (a, b) in &g1.edges {
        match (map.get(a), map.get(b)) {
            (Some(fa), Some(fb)) => mapped.push((fa.clone(), fb.clone())),
            _ => return false,
        }
    }
    mapped.sort();
    mapped == g2.edges
}

// ============================================================================
// Theta witnesses (unfolding)
// ============================================================================

/// Unfolding witness for a commensurable pair of 3-convex theta-graphs:
/// minimal positive `K`, `K'` with `K v = K' v'`, and the side counts of
/// the unfolded strip polygons along the spine, which must agree as
/// multisets for the degree-`K` and degree-`K'` unfoldings to be
/// homeomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaWitness {
    pub k_left: BigInt,
    pub k_right: BigInt,
    pub unfolded_left: Vec<BigInt>,
    pub unfolded_right: Vec<BigInt>,
}

impl ThetaWitness {
    pub fn validate(&self) -> Result<()> {
        if !self.k_left.is_positive() || !self.k_right.is_positive() {
            return Err(Error::Internal("unfolding degrees must be positive".into()));
        }
        let mut a = self.unfolded_left.clone();
        let mut b = self.unfolded_right.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::Internal(
                "unfolded polygon multisets disagree; the unfoldings are not homeomorphic".into(),
            ));
        }
        Ok(())
    }
}

/// Builds the unfolding witness. Each branch with `n` interior vertices
/// contributes a strip of `K` polygon copies whose corner-reflector count
/// is `K(n-1) + 2`, i.e. a polygon with `K(n-1) + 4` sides.
pub fn witness_theta(t: &GeneralizedTheta, t2: &GeneralizedTheta) -> Result<ThetaWitness> {
    let v = t.theta_vector()?;
    let v2 = t2.theta_vector()?;
    if !crate::ratvec::commensurable(&v, &v2) {
        return Err(Error::Unsupported(
            "no unfolding witness: the Euler characteristic vectors are not commensurable".into(),
        ));
    }
    let (_, r) = minimal_integral(&v)?;
    let (_, r2) = minimal_integral(&v2)?;
    // K v = K' v'  iff  K R = K' R'; minimal positive solution reads off
    // the reduced fraction of R'/R (positive: both are negative).
    let ratio = &r2 / &r;
    let k_left = ratio.numer().abs();
    let k_right = ratio.denom().abs();
    let strip = |k: &BigInt, n: &[u64]| -> Vec<BigInt> {
        let mut sides: Vec<BigInt> = n
            .iter()
            .map(|&m| k * BigInt::from(m - 1) + BigInt::from(4))
            .collect();
        sides.sort();
        sides
    };
    let w = ThetaWitness {
        unfolded_left: strip(&k_left, t.interior_counts()),
        unfolded_right: strip(&k_right, t2.interior_counts()),
        k_left,
        k_right,
    };
    // Independent cross-check: K v = K' v' entrywise.
    let kv = v.scale(&BigRational::from(w.k_left.clone()));
    let kv2 = v2.scale(&BigRational::from(w.k_right.clone()));
    if kv != kv2 {
        return Err(Error::Internal(
            "unfolding degrees do not equalize the vectors".into(),
        ));
    }
    w.validate()?;
    Ok(w)
}

// ============================================================================
// Shared synthesis of degree-16 cover surfaces from cycle data
// ============================================================================

/// The surfaces of the degree-16 cover, synthesized from the Euler data:
/// a central surface with two boundary components per nontrivial
/// component, and one two-boundary surface per branch entry.
struct SyntheticX {
    central: Surface,
    /// `branch[i][j]`: the surface over entry `j` of the `i`th stored
    /// vector.
    branch: Vec<Vec<Surface>>,
    chi_total: Rat,
}

fn synthesize_x(c: &CycleData) -> Result<SyntheticX> {
    let n = c.vectors.len();
    if n == 0 {
        return Err(Error::InvalidInput(
            "cycle data must contain at least one nontrivial component".into(),
        ));
    }
    let central = surface_from_chi(&(&c.chi_a * rat_int(16)), 2 * n as u64, "chi(S_A)")?;
    if central.genus < 2 {
        return Err(Error::Internal(
            "central cover surface must have genus >= 2".into(),
        ));
    }
    let mut branch = Vec::new();
    for (_, v) in &c.vectors {
        let mut row = Vec::new();
        for e in v.entries() {
            let s = surface_from_chi(&(e * rat_int(16)), 2, "chi(S_ij)")?;
            if s.genus < 2 {
                return Err(Error::Internal(
                    "branch cover surface must have genus >= 2".into(),
                ));
            }
            row.push(s);
        }
        branch.push(row);
    }
    Ok(SyntheticX {
        central,
        branch,
        chi_total: c.total_chi() * rat_int(16),
    })
}

/// The JSJ graph of the cycle (a star of stars) and its double, labeled by
/// the stored component indices.
fn cycle_jsj_and_double(c: &CycleData) -> Result<(BipartiteGraph, BipartiteGraph)> {
    let mut type1 = Vec::new();
    let mut type2 = vec!["A".to_string()];
    let mut edges = Vec::new();
    for (i, v) in &c.vectors {
        let x = format!("x{i}");
        edges.push((x.clone(), "A".to_string()));
        for j in 0..v.len() {
            let y = format!("y{i}.{j}");
            edges.push((x.clone(), y.clone()));
            type2.push(y);
        }
        type1.push(x);
    }
    let lambda = BipartiteGraph::new(type1, type2, edges)?;
    let (h, _) = build_h(&lambda)?;
    Ok((lambda, h))
}

// ============================================================================
// Condition (1) witnesses
// ============================================================================

/// Constants attached to one member vector of a class.
#[derive(Clone, Debug)]
pub struct MemberConstants {
    /// Index into the cycle data's vector list.
    pub member: usize,
    /// Ratio of the member to the class minimal integral element.
    pub ratio: Rat,
    /// `16 |ratio|`; a positive integer divisible by 4.
    pub k: BigInt,
    /// `K / k`.
    pub d: BigInt,
    /// Number of Type-1 pairs of the half-cover assigned to this member:
    /// `|chi(W_A-of-the-other-side)| * k`.
    pub copies: BigInt,
}

/// Per-class constants for the condition (1) construction.
#[derive(Clone, Debug)]
pub struct Cond1ClassConstants {
    pub rep: ClassRep,
    pub r: usize,
    pub left: Vec<MemberConstants>,
    pub right: Vec<MemberConstants>,
    pub b: BigInt,
}

#[derive(Clone, Debug)]
pub struct Cond1Constants {
    pub classes: Vec<Cond1ClassConstants>,
    pub b_total: BigInt,
    pub k_product: BigInt,
    /// Degree of the cover of the left degree-16 cover: `K |chi(W_A')|`.
    pub degree_left: BigInt,
    /// Degree of the cover of the right degree-16 cover: `K |chi(W_A)|`.
    pub degree_right: BigInt,
}

/// The full condition (1) witness: isomorphic doubled half-cover graphs,
/// a common central cover, common branch covers, and the two assembled
/// amalgams with their covering certificates.
pub struct Cond1Witness {
    pub constants: Cond1Constants,
    pub psi_left: BipartiteGraph,
    pub psi_right: BipartiteGraph,
    pub psi_iso: BTreeMap<String, String>,
    pub psi_half_cover_left: HalfCovering,
    pub psi_half_cover_right: HalfCovering,
    pub central: Surface,
    pub central_cover_left: SurfaceCover,
    pub central_cover_right: SurfaceCover,
    /// `column_surfaces[p][j]`: the common cover of column `j` of every
    /// member of class `p` on both sides.
    pub column_surfaces: Vec<Vec<Surface>>,
    pub column_covers_left: Vec<Vec<Vec<SurfaceCover>>>,
    pub column_covers_right: Vec<Vec<Vec<SurfaceCover>>>,
    pub amalgam_left: SurfaceAmalgam,
    pub amalgam_right: SurfaceAmalgam,
    pub chi_common: Rat,
}

fn build_cond1_constants(c: &CycleData, c2: &CycleData) -> Result<Cond1Constants> {
    let o = crate::classify::condition1(c, c2)?;
    if !o.holds {
        return Err(Error::Unsupported(
            "condition (1) does not hold; no witness exists on this route".into(),
        ));
    }
    let xs = c.vector_list();
    let ys = c2.vector_list();
    let four: BigInt = BigInt::from(4);
    let abs_chi_a = c.chi_a.abs();
    let abs_chi_a2 = c2.chi_a.abs();
    let mut classes = Vec::new();
    let mut k_product = BigInt::one();
    for cls in &o.classes {
        let rep_q = cls.group.rep.to_qvector();
        let member = |v: &QVector, opposite_abs_chi: &Rat| -> Result<(Rat, BigInt, BigInt)> {
            let ratio = &v.entries()[0] / &rep_q.entries()[0];
            let k = rat_to_int(&(ratio.abs() * rat_int(16)), "k = 16|R|")?;
            if !k.is_positive() || (&k % &four) != BigInt::zero() {
                return Err(Error::Internal(format!(
                    "k = {k} must be a positive integer divisible by 4"
                )));
            }
            let copies = rat_to_int(
                &(opposite_abs_chi * BigRational::from(k.clone())),
                "|chi| k",
            )?;
            Ok((ratio, k, copies))
        };
        let mut left = Vec::new();
        for &i in &cls.group.xs_indices {
            let (ratio, k, copies) = member(&xs[i], &abs_chi_a2)?;
            k_product *= &k;
            left.push(MemberConstants {
                member: i,
                ratio,
                k,
                d: BigInt::zero(),
                copies,
            });
        }
        let mut right = Vec::new();
        for &i in &cls.group.ys_indices {
            let (ratio, k, copies) = member(&ys[i], &abs_chi_a)?;
            k_product *= &k;
            right.push(MemberConstants {
                member: i,
                ratio,
                k,
                d: BigInt::zero(),
                copies,
            });
        }
        // B_p from either side; both expressions must agree.
        let sum_k_left: BigInt = left.iter().map(|m| m.k.clone()).sum();
        let sum_k_right: BigInt = right.iter().map(|m| m.k.clone()).sum();
        let b_left = rat_to_int(&(&abs_chi_a2 * BigRational::from(sum_k_left)), "B_p")?;
        let b_right = rat_to_int(&(&abs_chi_a * BigRational::from(sum_k_right)), "B_p")?;
        if b_left != b_right {
            return Err(Error::Internal(format!(
                "B_p disagrees across the two sides: {b_left} vs {b_right}"
            )));
        }
        if b_left < BigInt::from(left.len().max(right.len())) {
            return Err(Error::Internal(
                "B_p must dominate the member counts on both sides".into(),
            ));
        }
        classes.push(Cond1ClassConstants {
            rep: cls.group.rep.clone(),
            r: xs[cls.group.xs_indices[0]].len(),
            left,
            right,
            b: b_left,
        });
    }
    // Fill in d = K / k and check the remaining identities.
    for cls in &mut classes {
        let sum_r: Rat = cls
            .left
            .iter()
            .fold(Rat::zero(), |acc, m| acc + m.ratio.clone());
        let sum_r2: Rat = cls
            .right
            .iter()
            .fold(Rat::zero(), |acc, m| acc + m.ratio.clone());
        if &c2.chi_a * sum_r != &c.chi_a * sum_r2 {
            return Err(Error::Internal("per-class ratio identity fails".into()));
        }
        for m in cls.left.iter_mut().chain(cls.right.iter_mut()) {
            if (&k_product % &m.k) != BigInt::zero() {
                return Err(Error::Internal("k does not divide the product K".into()));
            }
            m.d = &k_product / &m.k;
        }
    }
    let b_total: BigInt = classes.iter().map(|c| c.b.clone()).sum();
    let degree_left = rat_to_int(&(&abs_chi_a2 * BigRational::from(k_product.clone())), "D")?;
    let degree_right = rat_to_int(&(&abs_chi_a * BigRational::from(k_product.clone())), "D'")?;
    if !degree_left.is_positive() || !degree_right.is_positive() {
        return Err(Error::Internal("cover degrees must be positive".into()));
    }
    Ok(Cond1Constants {
        classes,
        b_total,
        k_product,
        degree_left,
        degree_right,
    })
}

/// Builds the doubled-cover graph for one side: a central Type-2 vertex
/// adjacent to `copies` pairs of Type-1 vertices per class member, each
/// pair carrying `r` two-boundary Type-2 vertices.
fn build_psi(constants: &Cond1Constants, left_side: bool) -> Result<BipartiteGraph> {
    let mut type1 = Vec::new();
    let mut type2 = vec!["y1".to_string()];
    let mut edges = Vec::new();
    for (p, cls) in constants.classes.iter().enumerate() {
        let members = if left_side { &cls.left } else { &cls.right };
        for (q, m) in members.iter().enumerate() {
            let copies = int_to_u64(&m.copies, "copies")?;
            for i in 0..copies {
                let xp = format!("x{p}.{q}.{i}+");
                let xm = format!("x{p}.{q}.{i}-");
                edges.push((xp.clone(), "y1".to_string()));
                edges.push((xm.clone(), "y1".to_string()));
                for j in 0..cls.r {
                    let y = format!("y{p}.{q}.{i}.{j}");
                    edges.push((xp.clone(), y.clone()));
                    edges.push((xm.clone(), y.clone()));
                    type2.push(y);
                }
                type1.push(xp);
                type1.push(xm);
            }
        }
    }
    BipartiteGraph::new(type1, type2, edges)
}

/// The explicit isomorphism between the two doubled-cover graphs: per
/// class, the flattened (member, copy) pairs of the two sides correspond
/// in order.
fn psi_isomorphism(constants: &Cond1Constants) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    map.insert("y1".to_string(), "y1".to_string());
    for (p, cls) in constants.classes.iter().enumerate() {
        let flatten = |members: &[MemberConstants]| -> Result<Vec<(usize, u64)>> {
            let mut out = Vec::new();
            for (q, m) in members.iter().enumerate() {
                for i in 0..int_to_u64(&m.copies, "copies")? {
                    out.push((q, i));
                }
            }
            Ok(out)
        };
        let lhs = flatten(&cls.left)?;
        let rhs = flatten(&cls.right)?;
        if lhs.len() != rhs.len() {
            return Err(Error::Internal(
                "class copy counts disagree across sides".into(),
            ));
        }
        for ((q, i), (q2, i2)) in lhs.iter().zip(rhs.iter()) {
            map.insert(format!("x{p}.{q}.{i}+"), format!("x{p}.{q2}.{i2}+"));
            map.insert(format!("x{p}.{q}.{i}-"), format!("x{p}.{q2}.{i2}-"));
            for j in 0..cls.r {
                map.insert(format!("y{p}.{q}.{i}.{j}"), format!("y{p}.{q2}.{i2}.{j}"));
            }
        }
    }
    Ok(map)
}

/// Half-covering from a doubled-cover graph onto the double of the JSJ
/// star of its side.
fn psi_half_cover(
    constants: &Cond1Constants,
    psi: &BipartiteGraph,
    c: &CycleData,
    left_side: bool,
) -> Result<HalfCovering> {
    let (_, h) = cycle_jsj_and_double(c)?;
    let mut vertex_map = BTreeMap::new();
    vertex_map.insert("y1".to_string(), "A".to_string());
    for (p, cls) in constants.classes.iter().enumerate() {
        let members = if left_side { &cls.left } else { &cls.right };
        for (q, m) in members.iter().enumerate() {
            let comp = c.vectors[m.member].0;
            for i in 0..int_to_u64(&m.copies, "copies")? {
                vertex_map.insert(format!("x{p}.{q}.{i}+"), format!("x{comp}#0"));
                vertex_map.insert(format!("x{p}.{q}.{i}-"), format!("x{comp}#1"));
                for j in 0..cls.r {
                    vertex_map.insert(format!("y{p}.{q}.{i}.{j}"), format!("y{comp}.{j}"));
                }
            }
        }
    }
    // The double of a JSJ star is simple, so edge images are forced.
    let edge_map: Vec<usize> = psi
        .edges
        .iter()
        .map(|(a, b)| {
            let fa = &vertex_map[a];
            let fb = &vertex_map[b];
            h.edges
                .iter()
                .position(|(x, y)| x == fa && y == fb)
                .ok_or_else(|| Error::Internal(format!("no image edge for ({a},{b})")))
        })
        .collect::<Result<_>>()?;
    let cover = HalfCovering {
        source: psi.clone(),
        target: h,
        map: GraphMorphism { vertex_map, edge_map },
    };
    let (ok, violations) = verify_half_covering(&cover);
    if !ok {
        return Err(Error::Internal(format!(
            "doubled-cover graph fails to half-cover the doubled JSJ star: {violations:?}"
        )));
    }
    Ok(cover)
}

/// Builds the condition (1) witness for a commensurable pair of cycle
/// datasets.
pub fn witness_cycle_cond1(c: &CycleData, c2: &CycleData) -> Result<Cond1Witness> {
    let constants = build_cond1_constants(c, c2)?;
    let x_left = synthesize_x(c)?;
    let x_right = synthesize_x(c2)?;

    let psi_left = build_psi(&constants, true)?;
    let psi_right = build_psi(&constants, false)?;
    let psi_iso = psi_isomorphism(&constants)?;
    if !verify_graph_iso(&psi_left, &psi_right, &psi_iso) {
        return Err(Error::Internal(
            "doubled-cover graphs are not isomorphic".into(),
        ));
    }
    let psi_half_cover_left = psi_half_cover(&constants, &psi_left, c, true)?;
    let psi_half_cover_right = psi_half_cover(&constants, &psi_right, c2, false)?;

    let degree_left = int_to_u64(&constants.degree_left, "D")?;
    let degree_right = int_to_u64(&constants.degree_right, "D'")?;

    // Central surface: covers both central surfaces, with boundary degree
    // d over every boundary pair assigned to the member.
    let central_specs = |left_side: bool,
                         data: &CycleData,
                         x: &SyntheticX|
     -> Result<Vec<Vec<u64>>> {
        let mut specs = vec![Vec::new(); 2 * x.branch.len()];
        for cls in &constants.classes {
            let members = if left_side { &cls.left } else { &cls.right };
            for m in members {
                let d = int_to_u64(&m.d, "d")?;
                let copies = int_to_u64(&m.copies, "copies")?;
                if m.member >= data.vectors.len() {
                    return Err(Error::Internal("member index out of range".into()));
                }
                specs[2 * m.member] = vec![d; copies as usize];
                specs[2 * m.member + 1] = vec![d; copies as usize];
            }
        }
        Ok(specs)
    };
    let central_cover_left = neumann_cover(
        x_left.central,
        degree_left,
        &central_specs(true, c, &x_left)?,
    )?
    .ok_or_else(|| Error::Internal("central cover of the left side is infeasible".into()))?;
    let central_cover_right = neumann_cover(
        x_right.central,
        degree_right,
        &central_specs(false, c2, &x_right)?,
    )?
    .ok_or_else(|| Error::Internal("central cover of the right side is infeasible".into()))?;
    if central_cover_left.cover != central_cover_right.cover {
        return Err(Error::Internal(
            "the two central covers disagree; D chi(S_A) = D' chi(S_A') must force equality"
                .into(),
        ));
    }
    let central = central_cover_left.cover;
    if central.boundary != 2 * int_to_u64(&constants.b_total, "B")? {
        return Err(Error::Internal(
            "central cover must have 2B boundary components".into(),
        ));
    }

    // Column surfaces: one per (class, column), covering every member's
    // branch surface on both sides.
    let mut column_surfaces = Vec::new();
    let mut column_covers_left = Vec::new();
    let mut column_covers_right = Vec::new();
    for cls in &constants.classes {
        let rep = cls.rep.to_qvector();
        let mut surfaces_row = Vec::new();
        let mut covers_l = Vec::new();
        let mut covers_r = Vec::new();
        for j in 0..cls.r {
            let chi =
                -(BigRational::from(constants.k_product.clone()) * rep.entries()[j].clone());
            let t_pj = surface_from_chi(&chi, 2, "chi(T_p^j)")?;
            let mut row_l = Vec::new();
            for m in &cls.left {
                let d = int_to_u64(&m.d, "d")?;
                let base = x_left.branch[m.member][j];
                let cover = neumann_cover(base, d, &[vec![d], vec![d]])?
                    .ok_or_else(|| Error::Internal("column cover infeasible".into()))?;
                if cover.cover != t_pj {
                    return Err(Error::Internal(
                        "column cover disagrees with the common column surface".into(),
                    ));
                }
                row_l.push(cover);
            }
            let mut row_r = Vec::new();
            for m in &cls.right {
                let d = int_to_u64(&m.d, "d")?;
                let base = x_right.branch[m.member][j];
                let cover = neumann_cover(base, d, &[vec![d], vec![d]])?
                    .ok_or_else(|| Error::Internal("column cover infeasible".into()))?;
                if cover.cover != t_pj {
                    return Err(Error::Internal(
                        "column cover disagrees with the common column surface".into(),
                    ));
                }
                row_r.push(cover);
            }
            surfaces_row.push(t_pj);
            covers_l.push(row_l);
            covers_r.push(row_r);
        }
        column_surfaces.push(surfaces_row);
        column_covers_left.push(covers_l);
        column_covers_right.push(covers_r);
    }

    // Assemble the amalgams over the doubled-cover graphs.
    let assemble = |psi: &BipartiteGraph| -> Result<SurfaceAmalgam> {
        let mut surfaces = BTreeMap::new();
        let mut boundary = BTreeMap::new();
        for y in &psi.type2 {
            if y == "y1" {
                surfaces.insert(y.clone(), central);
                let mut bs: Vec<String> = psi.type1.clone();
                bs.sort();
                boundary.insert(y.clone(), bs);
            } else {
                // y{p}.{q}.{i}.{j}
                let body = y.strip_prefix('y').unwrap();
                let parts: Vec<&str> = body.split('.').collect();
                let p: usize = parts[0].parse().unwrap();
                let j: usize = parts[3].parse().unwrap();
                surfaces.insert(y.clone(), column_surfaces[p][j]);
                boundary.insert(
                    y.clone(),
                    vec![
                        format!("x{}.{}.{}+", parts[0], parts[1], parts[2]),
                        format!("x{}.{}.{}-", parts[0], parts[1], parts[2]),
                    ],
                );
            }
        }
        SurfaceAmalgam::new(psi.type1.clone(), surfaces, boundary)
    };
    let amalgam_left = assemble(&psi_left)?;
    let amalgam_right = assemble(&psi_right)?;
    if amalgam_left.graph != psi_left || amalgam_right.graph != psi_right {
        return Err(Error::Internal("assembled amalgam graph mismatch".into()));
    }

    // The homeomorphism: the graph isomorphism matches surfaces.
    for (v, fv) in &psi_iso {
        if psi_left.is_type1(v) {
            continue;
        }
        if amalgam_left.surfaces[v] != amalgam_right.surfaces[fv] {
            return Err(Error::Internal(
                "isomorphic vertices carry different surfaces".into(),
            ));
        }
    }

    // Euler characteristic chain.
    let chi_left = amalgam_left.euler();
    let chi_right = amalgam_right.euler();
    let want_left = &x_left.chi_total * BigRational::from(constants.degree_left.clone());
    let want_right = &x_right.chi_total * BigRational::from(constants.degree_right.clone());
    if chi_left != want_left || chi_right != want_right || chi_left != chi_right {
        return Err(Error::Internal(
            "Euler characteristics do not satisfy chi(Y) = D chi(X) = D' chi(X')".into(),
        ));
    }

    let w = Cond1Witness {
        constants,
        psi_left,
        psi_right,
        psi_iso,
        psi_half_cover_left,
        psi_half_cover_right,
        central,
        central_cover_left,
        central_cover_right,
        column_surfaces,
        column_covers_left,
        column_covers_right,
        amalgam_left,
        amalgam_right,
        chi_common: chi_left,
    };
    w.validate()?;
    Ok(w)
}

impl Cond1Witness {
    /// Re-validates every stored certificate and isomorphism.
    pub fn validate(&self) -> Result<()> {
        if !verify_graph_iso(&self.psi_left, &self.psi_right, &self.psi_iso) {
            return Err(Error::Internal("stored graph isomorphism fails".into()));
        }
        for hc in [&self.psi_half_cover_left, &self.psi_half_cover_right] {
            let (ok, violations) = verify_half_covering(hc);
            if !ok {
                return Err(Error::Internal(format!(
                    "stored half-covering fails: {violations:?}"
                )));
            }
        }
        self.central_cover_left.validate()?;
        self.central_cover_right.validate()?;
        if self.central_cover_left.cover != self.central
            || self.central_cover_right.cover != self.central
        {
            return Err(Error::Internal("central cover mismatch".into()));
        }
        for rows in [&self.column_covers_left, &self.column_covers_right] {
            for cover in rows.iter().flatten().flatten() {
                cover.validate()?;
            }
        }
        self.amalgam_left.validate()?;
        self.amalgam_right.validate()?;
        if self.amalgam_left.euler() != self.chi_common
            || self.amalgam_right.euler() != self.chi_common
        {
            return Err(Error::Internal(
                "stored Euler characteristic mismatch".into(),
            ));
        }
        Ok(())
    }
}

// ============================================================================
// Condition (2) witnesses
// ============================================================================

/// One side of the condition (2) witness: a degree-`K` cover of the
/// degree-16 cover whose surfaces are all scaled by `K`, mapping onto the
/// shared two-circle target amalgam with degree `D = M K`.
pub struct Cond2Witness {
    /// Minimal integral element of the class of `w` (shared across sides).
    pub w0: ClassRep,
    /// Position of `chi(W_A)`'s entry in the sorted `w`.
    pub k_index: usize,
    /// Minimal integral element of the branch-vector class.
    pub u: ClassRep,
    pub scale_k: BigInt,
    pub multiplier_m: BigInt,
    pub degree: BigInt,
    pub d: Vec<BigInt>,
    pub z_amalgam: SurfaceAmalgam,
    pub z_over_x: Vec<SurfaceCover>,
    pub w_amalgam: SurfaceAmalgam,
    pub z_over_w: Vec<SurfaceCover>,
    pub jsj_half_cover: HalfCovering,
}

fn build_cond2_side(c: &CycleData, w0: &ClassRep) -> Result<Cond2Witness> {
    let w = c
        .w
        .as_ref()
        .ok_or_else(|| Error::Internal("condition (2) side needs a w-vector".into()))?;
    let r = c
        .r
        .ok_or_else(|| Error::Internal("common branch count required".into()))?;
    let x = synthesize_x(c)?;

    // Position of chi(W_A)'s entry: first index holding that value.
    let k_index = w
        .entries()
        .iter()
        .position(|e| *e == c.chi_a)
        .ok_or_else(|| Error::Internal("chi(W_A) must appear in w".into()))?;

    // 16 w = -2M w0.
    let w0_q = w0.to_qvector();
    let m_big = rat_to_int(
        &(-(w.entries()[0].clone() * rat_int(16))
            / (BigRational::from(BigInt::from(2)) * w0_q.entries()[0].clone())),
        "M",
    )?;
    if !m_big.is_positive() {
        return Err(Error::Internal("M must be a positive integer".into()));
    }
    if w.scale(&rat_int(16)) != w0_q.scale(&BigRational::from(-BigInt::from(2) * &m_big)) {
        return Err(Error::Internal("16 w != -2M w0".into()));
    }

    // u and K with w0-minus-entry = K u.
    let (u, _) = minimal_integral(&c.vectors[0].1)?;
    let u_q = u.to_qvector();
    let w0_hat: Vec<BigInt> = w0
        .entries()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k_index)
        .map(|(_, e)| e.clone())
        .collect();
    if w0_hat.len() != r {
        return Err(Error::Internal(
            "w0 minus one entry must have r entries".into(),
        ));
    }
    let scale_k = {
        let k = BigRational::from(w0_hat[0].clone()) / u_q.entries()[0].clone();
        rat_to_int(&k, "K")?
    };
    if !scale_k.is_positive() {
        return Err(Error::Internal("K must be a positive integer".into()));
    }
    for (a, b) in w0_hat.iter().zip(u_q.entries()) {
        if BigRational::from(a.clone()) != b * BigRational::from(scale_k.clone()) {
            return Err(Error::Internal("w0-hat != K u".into()));
        }
    }

    // d_i with 16 v_i = d_i (-2u); D = M K = sum d_i.
    let mut d = Vec::new();
    for (_, v) in &c.vectors {
        let di = rat_to_int(
            &(-(v.entries()[0].clone() * rat_int(16))
                / (BigRational::from(BigInt::from(2)) * u_q.entries()[0].clone())),
            "d_i",
        )?;
        if !di.is_positive() {
            return Err(Error::Internal("d_i must be a positive integer".into()));
        }
        if v.scale(&rat_int(16)) != u_q.scale(&BigRational::from(-BigInt::from(2) * &di)) {
            return Err(Error::Internal("16 v_i != -2 d_i u".into()));
        }
        d.push(di);
    }
    let degree = &m_big * &scale_k;
    let sum_d: BigInt = d.iter().cloned().sum();
    if sum_d != degree {
        return Err(Error::Internal(format!(
            "degree identity fails: sum d_i = {sum_d} but M K = {degree}"
        )));
    }

    // The target amalgam over two circles: surfaces of Euler
    // characteristic -2 w0_m, two boundary components each.
    let mut w_surfaces = BTreeMap::new();
    let mut w_boundary = BTreeMap::new();
    for (m, e) in w0.entries().iter().enumerate() {
        let s = surface_from_chi(&BigRational::from(-BigInt::from(2) * e), 2, "chi(W_m)")?;
        w_surfaces.insert(format!("w{m}"), s);
        w_boundary.insert(format!("w{m}"), vec!["x+".to_string(), "x-".to_string()]);
    }
    let w_amalgam = SurfaceAmalgam::new(
        vec!["x+".to_string(), "x-".to_string()],
        w_surfaces,
        w_boundary,
    )?;

    // The scaled cover Z over the doubled JSJ star.
    let (_, h) = cycle_jsj_and_double(c)?;
    let k_u64 = int_to_u64(&scale_k, "K")?;
    let mut z_surfaces = BTreeMap::new();
    let mut z_boundary = BTreeMap::new();
    let mut z_over_x = Vec::new();
    let central_scaled = neumann_cover(
        x.central,
        k_u64,
        &vec![vec![k_u64]; x.central.boundary as usize],
    )?
    .ok_or_else(|| Error::Internal("scaled central cover infeasible".into()))?;
    z_surfaces.insert("A".to_string(), central_scaled.cover);
    let mut central_labels = Vec::new();
    for (i, _) in &c.vectors {
        central_labels.push(format!("x{i}#0"));
        central_labels.push(format!("x{i}#1"));
    }
    central_labels.sort();
    z_boundary.insert("A".to_string(), central_labels);
    z_over_x.push(central_scaled);
    for (pos, (i, v)) in c.vectors.iter().enumerate() {
        for j in 0..v.len() {
            let base = x.branch[pos][j];
            let cover = neumann_cover(base, k_u64, &[vec![k_u64], vec![k_u64]])?
                .ok_or_else(|| Error::Internal("scaled branch cover infeasible".into()))?;
            z_surfaces.insert(format!("y{i}.{j}"), cover.cover);
            z_boundary.insert(
                format!("y{i}.{j}"),
                vec![format!("x{i}#0"), format!("x{i}#1")],
            );
            z_over_x.push(cover);
        }
    }
    let z_amalgam = SurfaceAmalgam::new(h.type1.clone(), z_surfaces, z_boundary)?;
    if z_amalgam.graph != h {
        return Err(Error::Internal("scaled cover graph mismatch".into()));
    }

    // Z covers the target amalgam with degree D.
    let d_u64: Vec<u64> = d
        .iter()
        .map(|x| int_to_u64(x, "d_i"))
        .collect::<Result<_>>()?;
    let mut z_over_w = Vec::new();
    let central_target = w_amalgam.surfaces[&format!("w{k_index}")];
    let spec: Vec<u64> = d_u64.clone();
    let cover = neumann_cover(central_target, int_to_u64(&degree, "D")?, &[spec.clone(), spec])?
        .ok_or_else(|| Error::Internal("central cover onto the target is infeasible".into()))?;
    if cover.cover != z_amalgam.surfaces["A"] {
        return Err(Error::Internal(
            "scaled central surface does not cover the target central surface".into(),
        ));
    }
    z_over_w.push(cover);
    for (pos, (i, v)) in c.vectors.iter().enumerate() {
        for j in 0..v.len() {
            let sigma = if j < k_index { j } else { j + 1 };
            let target = w_amalgam.surfaces[&format!("w{sigma}")];
            let di = d_u64[pos];
            let cover = neumann_cover(target, di, &[vec![di], vec![di]])?.ok_or_else(|| {
                Error::Internal("column cover onto the target infeasible".into())
            })?;
            if cover.cover != z_amalgam.surfaces[&format!("y{i}.{j}")] {
                return Err(Error::Internal(
                    "scaled branch surface does not cover its target surface".into(),
                ));
            }
            z_over_w.push(cover);
        }
    }

    // JSJ-level half-covering onto the two-circle target graph.
    let mut vertex_map = BTreeMap::new();
    vertex_map.insert("A".to_string(), format!("w{k_index}"));
    for (i, v) in &c.vectors {
        vertex_map.insert(format!("x{i}#0"), "x+".to_string());
        vertex_map.insert(format!("x{i}#1"), "x-".to_string());
        for j in 0..v.len() {
            let sigma = if j < k_index { j } else { j + 1 };
            vertex_map.insert(format!("y{i}.{j}"), format!("w{sigma}"));
        }
    }
    let phi = w_amalgam.graph.clone();
    let edge_map: Vec<usize> = h
        .edges
        .iter()
        .map(|(a, b)| {
            let (fa, fb) = (&vertex_map[a], &vertex_map[b]);
            phi.edges
                .iter()
                .position(|(x, y)| x == fa && y == fb)
                .ok_or_else(|| Error::Internal("no image edge in the target JSJ graph".into()))
        })
        .collect::<Result<_>>()?;
    let jsj_half_cover = HalfCovering {
        source: h,
        target: phi,
        map: GraphMorphism { vertex_map, edge_map },
    };
    let (ok, violations) = verify_half_covering(&jsj_half_cover);
    if !ok {
        return Err(Error::Internal(format!(
            "doubled JSJ star fails to half-cover the target graph: {violations:?}"
        )));
    }

    // chi(Z) = K chi(X) = D chi(W-amalgam).
    let chi_z = z_amalgam.euler();
    if chi_z != &x.chi_total * BigRational::from(scale_k.clone())
        || chi_z != w_amalgam.euler() * BigRational::from(degree.clone())
    {
        return Err(Error::Internal(
            "Euler characteristics do not satisfy chi(Z) = K chi(X) = D chi(W)".into(),
        ));
    }

    Ok(Cond2Witness {
        w0: w0.clone(),
        k_index,
        u,
        scale_k,
        multiplier_m: m_big,
        degree,
        d,
        z_amalgam,
        z_over_x,
        w_amalgam,
        z_over_w,
        jsj_half_cover,
    })
}

impl Cond2Witness {
    pub fn validate(&self) -> Result<()> {
        for cover in self.z_over_x.iter().chain(self.z_over_w.iter()) {
            cover.validate()?;
        }
        self.z_amalgam.validate()?;
        self.w_amalgam.validate()?;
        let (ok, violations) = verify_half_covering(&self.jsj_half_cover);
        if !ok {
            return Err(Error::Internal(format!(
                "stored half-covering fails: {violations:?}"
            )));
        }
        let sum_d: BigInt = self.d.iter().cloned().sum();
        if sum_d != self.degree || self.degree != &self.multiplier_m * &self.scale_k {
            return Err(Error::Internal("stored degree identities fail".into()));
        }
        Ok(())
    }
}

/// Builds both sides of the condition (2) witness over the shared target
/// amalgam.
pub fn witness_cycle_cond2(c: &CycleData, c2: &CycleData) -> Result<(Cond2Witness, Cond2Witness)> {
    let o = crate::classify::condition2(c, c2)?;
    if !o.holds {
        return Err(Error::Unsupported(
            "condition (2) does not hold; no witness exists on this route".into(),
        ));
    }
    let (w0, _) = minimal_integral(c.w.as_ref().unwrap())?;
    let (w0b, _) = minimal_integral(c2.w.as_ref().unwrap())?;
    if w0 != w0b {
        return Err(Error::Internal(
            "commensurable w-vectors must share their minimal integral element".into(),
        ));
    }
    let left = build_cond2_side(c, &w0)?;
    let right = build_cond2_side(c2, &w0)?;
    if left.w_amalgam != right.w_amalgam {
        return Err(Error::Internal(
            "the two sides target different amalgams".into(),
        ));
    }
    left.validate()?;
    right.validate()?;
    Ok((left, right))
}

// ============================================================================
// Tree amalgams to defining graphs
// ============================================================================

/// An amalgam cover certificate: per-surface covers over a matching graph.
pub struct AmalgamCoverCert {
    pub base: SurfaceAmalgam,
    pub cover: SurfaceAmalgam,
    pub degree: u64,
    /// `(cover Type-2 id, base Type-2 id, certificate)`.
    pub surface_covers: Vec<(String, String, SurfaceCover)>,
}

impl AmalgamCoverCert {
    pub fn validate(&self) -> Result<()> {
        for (cid, bid, cert) in &self.surface_covers {
            cert.validate()?;
            if cert.degree != self.degree {
                return Err(Error::Internal("per-surface degree mismatch".into()));
            }
            if cert.cover != self.cover.surfaces[cid] || cert.base != self.base.surfaces[bid] {
                return Err(Error::Internal(
                    "certificate surfaces do not match the amalgams".into(),
                ));
            }
        }
        let want = self.base.euler() * rat_int(self.degree as i64);
        if self.cover.euler() != want {
            return Err(Error::Internal(
                "amalgam cover Euler characteristic mismatch".into(),
            ));
        }
        Ok(())
    }
}

/// Per-vertex data of the conversion.
pub enum VertexConversion {
    Terminal {
        y: String,
        g_prime: u64,
        polygon_sides: u64,
        branch_interior: u64,
    },
    NonTerminal {
        y: String,
        g_prime: u64,
        h: u64,
        s1: Surface,
        s2: Surface,
        qa_sides: u64,
        p_sides: u64,
        trivial_interior: u64,
    },
}

/// The full conversion of a tree-JSJ surface amalgam to a right-angled
/// Coxeter defining graph, with the covering chain that proves the
/// commensurability.
pub struct RacgConversion {
    /// Degree-3 preprocessing when some surface had genus 0.
    pub pos_genus: Option<AmalgamCoverCert>,
    /// Degree-8 cover over the doubled tree.
    pub h_cover: AmalgamCoverCert,
    pub vertex_data: Vec<VertexConversion>,
    pub gamma: Graph,
    pub orbicomplex: Orbicomplex,
    pub chi_base: Rat,
    pub chi_h: Rat,
    pub chi_gamma: Rat,
}

/// Converts a surface amalgam over a tree to a defining graph whose group
/// is commensurable to the amalgam's: positive-genus preprocessing, a
/// degree-8 cover over the doubled tree, and per-vertex polygon data read
/// back into branches and cycles.
pub fn tree_to_racg(x: &SurfaceAmalgam) -> Result<RacgConversion> {
    x.validate()?;
    if !x.graph.is_tree() {
        return Err(Error::Unsupported(
            "the conversion requires a tree JSJ graph".into(),
        ));
    }
    // Positive-genus preprocessing (degree 3) when needed.
    let needs = x.surfaces.values().any(|s| s.genus == 0);
    let (base, pos_genus) = if needs {
        let mut surfaces = BTreeMap::new();
        let mut covers = Vec::new();
        for (y, s) in &x.surfaces {
            let cert = pos_genus_cover(*s)?;
            surfaces.insert(y.clone(), cert.cover);
            covers.push((y.clone(), y.clone(), cert));
        }
        let upgraded = SurfaceAmalgam::new(x.graph.type1.clone(), surfaces, x.boundary.clone())?;
        let cert = AmalgamCoverCert {
            base: x.clone(),
            cover: upgraded.clone(),
            degree: 3,
            surface_covers: covers,
        };
        cert.validate()?;
        (upgraded, Some(cert))
    } else {
        (x.clone(), None)
    };

    // Degree-8 cover over the doubled tree: each surface doubles its
    // boundary, each base boundary covered by two curves of degree 4.
    let (h, _) = build_h(&base.graph)?;
    let mut h_surfaces = BTreeMap::new();
    let mut h_boundary = BTreeMap::new();
    let mut h_covers = Vec::new();
    for (y, s) in &base.surfaces {
        let specs = vec![vec![4u64, 4u64]; s.boundary as usize];
        let cert = neumann_cover(*s, 8, &specs)?.ok_or_else(|| {
            Error::Internal("the degree-8 doubled cover is always feasible".into())
        })?;
        let g_prime = cert.cover.genus;
        if g_prime != 3 * s.boundary + 8 * s.genus - 7 {
            return Err(Error::Internal("doubled-cover genus formula violated".into()));
        }
        h_surfaces.insert(y.clone(), cert.cover);
        let mut labels = Vec::new();
        for u in &base.boundary[y] {
            labels.push(format!("{u}#0"));
            labels.push(format!("{u}#1"));
        }
        h_boundary.insert(y.clone(), labels);
        h_covers.push((y.clone(), y.clone(), cert));
    }
    let x_h = SurfaceAmalgam::new(h.type1.clone(), h_surfaces, h_boundary)?;
    if x_h.graph != h {
        return Err(Error::Internal("doubled cover graph mismatch".into()));
    }
    let h_cover = AmalgamCoverCert {
        base: base.clone(),
        cover: x_h.clone(),
        degree: 8,
        surface_covers: h_covers,
    };
    h_cover.validate()?;

    // Pair vertices per Type-1 vertex, with slot identifications from
    // non-terminal Type-2 vertices resolved by union-find.
    let mut uf = UnionFind::new();
    for u in &base.graph.type1 {
        uf.add(format!("{u}.a"));
        uf.add(format!("{u}.b"));
    }
    let mut vertex_data = Vec::new();
    struct PendingBranch {
        end_a: String,
        end_b: String,
        interior: u64,
        tag: String,
    }
    let mut pending: Vec<PendingBranch> = Vec::new();
    for y in &base.graph.type2 {
        let s = base.surfaces[y];
        let b = s.boundary;
        let g_prime = x_h.surfaces[y].genus;
        if b == 1 {
            if g_prime % 2 != 0 || g_prime == 0 {
                return Err(Error::Internal(
                    "terminal doubled-cover genus must be even and positive".into(),
                ));
            }
            let u = &base.boundary[y][0];
            pending.push(PendingBranch {
                end_a: format!("{u}.a"),
                end_b: format!("{u}.b"),
                interior: g_prime / 2 + 1,
                tag: y.clone(),
            });
            vertex_data.push(VertexConversion::Terminal {
                y: y.clone(),
                g_prime,
                polygon_sides: g_prime / 2 + 4,
                branch_interior: g_prime / 2 + 1,
            });
        } else {
            let hh = g_prime as i64 - 3 * b as i64 + 3;
            if hh <= 0 || hh % 2 != 0 || g_prime <= 3 * b {
                return Err(Error::Internal(
                    "non-terminal split parameters must be even and positive".into(),
                ));
            }
            let hh = hh as u64;
            let s1 = Surface::new(3 * (b + 1) - 7, 2 * b + 2);
            let s2 = Surface::new(hh, 2);
            // Splitting along two curves: genus bookkeeping.
            if s1.genus + s2.genus + 1 != g_prime {
                return Err(Error::Internal("split genus bookkeeping fails".into()));
            }
            let mut nbrs = base.boundary[y].clone();
            nbrs.sort();
            // Consecutive slot pairs go to the sorted neighbors; the
            // wrap-around pair carries the trivial branch.
            for j in 0..nbrs.len() - 1 {
                let u = &nbrs[j];
                let next = &nbrs[j + 1];
                uf.union(&format!("{u}.b"), &format!("{next}.a"));
            }
            let first = &nbrs[0];
            let last = &nbrs[nbrs.len() - 1];
            pending.push(PendingBranch {
                end_a: format!("{last}.b"),
                end_b: format!("{first}.a"),
                interior: hh / 2 + 1,
                tag: y.clone(),
            });
            vertex_data.push(VertexConversion::NonTerminal {
                y: y.clone(),
                g_prime,
                h: hh,
                s1,
                s2,
                qa_sides: 2 * (b + 1),
                p_sides: hh / 2 + 4,
                trivial_interior: hh / 2 + 1,
            });
        }
    }

    // Materialize the defining graph.
    let mut vertices: BTreeSet<String> = BTreeSet::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for u in &base.graph.type1 {
        vertices.insert(uf.find(&format!("{u}.a")));
        vertices.insert(uf.find(&format!("{u}.b")));
    }
    for p in &pending {
        let a = uf.find(&p.end_a);
        let b = uf.find(&p.end_b);
        let mut prev = a.clone();
        for k in 0..p.interior {
            let v = format!("{}.t{k}", p.tag);
            vertices.insert(v.clone());
            edges.push((prev.clone(), v.clone()));
            prev = v;
        }
        edges.push((prev, b));
    }
    let gamma = Graph::new(vertices, edges)?;

    // Euler characteristic chain and the orbicomplex.
    let chi_base = base.euler();
    let chi_h = x_h.euler();
    if chi_h != &chi_base * rat_int(8) {
        return Err(Error::Internal("chi of the doubled cover must be 8 chi".into()));
    }
    let chi_gamma = crate::racg::euler_characteristic(&gamma)?;
    if &chi_gamma * rat_int(16) != chi_h {
        return Err(Error::Internal(
            "the doubled cover must have chi = 16 chi(W)".into(),
        ));
    }
    let rep = crate::graph::validate(&gamma);
    if !rep.in_g_3convex {
        return Err(Error::Internal(
            "converted defining graph fails the standing assumptions".into(),
        ));
    }
    let orbicomplex = crate::orbicomplex::build_orbicomplex(&gamma)?;

    // Round trip: the JSJ graph of the output is the input tree.
    let jsj = crate::jsj::jsj_decomposition(&gamma)?;
    let jsj_tree = jsj.bipartite();
    if tree_canonical_form(&jsj_tree)? != tree_canonical_form(&base.graph)? {
        return Err(Error::Internal(
            "JSJ decomposition of the output does not match the input tree".into(),
        ));
    }

    Ok(RacgConversion {
        pos_genus,
        h_cover,
        vertex_data,
        gamma,
        orbicomplex,
        chi_base,
        chi_h,
        chi_gamma,
    })
}

struct UnionFind {
    parent: BTreeMap<String, String>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: BTreeMap::new() }
    }
    fn add(&mut self, x: String) {
        self.parent.entry(x.clone()).or_insert(x);
    }
    fn find(&mut self, x: &str) -> String {
        let p = self.parent.get(x).cloned().unwrap_or_else(|| x.to_string());
        if p == x {
            return p;
        }
        let root = self.find(&p);
        self.parent.insert(x.to_string(), root.clone());
        root
    }
    fn union(&mut self, a: &str, b: &str) {
        self.add(a.to_string());
        self.add(b.to_string());
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller name wins so output is deterministic.
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(drop, keep);
        }
    }
}

/// Canonical form of a bipartite tree up to type-respecting isomorphism:
/// rooted encodings at the tree center(s).
pub fn tree_canonical_form(t: &BipartiteGraph) -> Result<String> {
    if !t.is_tree() {
        return Err(Error::InvalidInput("canonical form requires a tree".into()));
    }
    let ids: Vec<String> = t.type1.iter().chain(t.type2.iter()).cloned().collect();
    let adj = |v: &String| -> Vec<String> {
        t.star(v)
            .into_iter()
            .map(|e| {
                let (a, b) = &t.edges[e];
                if a == v {
                    b.clone()
                } else {
                    a.clone()
                }
            })
            .collect()
    };
    // Tree centers by leaf pruning.
    let mut degree: BTreeMap<String, usize> =
        ids.iter().map(|v| (v.clone(), t.valence(v))).collect();
    let mut removed: BTreeSet<String> = BTreeSet::new();
    let mut current: Vec<String> = ids.clone();
    while current.len() > 2 {
        let leaves: Vec<String> = current
            .iter()
            .filter(|v| degree[*v] <= 1)
            .cloned()
            .collect();
        for l in &leaves {
            removed.insert(l.clone());
            for w in adj(l) {
                if !removed.contains(&w) {
                    *degree.get_mut(&w).unwrap() -= 1;
                }
            }
        }
        current.retain(|v| !removed.contains(v));
    }
    fn encode(
        t: &BipartiteGraph,
        v: &String,
        parent: Option<&String>,
        adj: &dyn Fn(&String) -> Vec<String>,
    ) -> String {
        let tag = if t.is_type1(v) { "1" } else { "2" };
        let mut children: Vec<String> = adj(v)
            .into_iter()
            .filter(|w| Some(w) != parent)
            .map(|w| encode(t, &w, Some(v), adj))
            .collect();
        children.sort();
        format!("{tag}({})", children.join(""))
    }
    let mut forms: Vec<String> = current.iter().map(|c| encode(t, c, None, &adj)).collect();
    forms.sort();
    Ok(forms.remove(0))
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratvec::rat;

    fn theta(n: &[u64]) -> GeneralizedTheta {
        GeneralizedTheta::new(n.to_vec()).unwrap()
    }

    #[test]
    fn theta_witness_examples() {
        let w = witness_theta(&theta(&[2, 2, 3]), &theta(&[5, 5, 9])).unwrap();
        assert_eq!(w.k_left, BigInt::from(4));
        assert_eq!(w.k_right, BigInt::from(1));
        let want: Vec<BigInt> = [8, 8, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(w.unfolded_left, want);
        assert_eq!(w.unfolded_right, want);

        let w = witness_theta(&theta(&[2, 3, 4]), &theta(&[2, 3, 4])).unwrap();
        assert_eq!(w.k_left, BigInt::one());
        assert_eq!(w.k_right, BigInt::one());

        let w = witness_theta(&theta(&[2, 2, 2]), &theta(&[3, 3, 3])).unwrap();
        assert_eq!(w.k_left, BigInt::from(2));
        assert_eq!(w.k_right, BigInt::one());

        assert!(witness_theta(&theta(&[2, 2, 3]), &theta(&[2, 2, 4])).is_err());
    }

    fn fig_pair_1() -> (CycleData, CycleData) {
        let u = QVector::from_pairs(&[(-1, 4), (-1, 4), (-1, 2)]);
        let v = QVector::from_pairs(&[(-1, 4), (-1, 2), (-1, 2)]);
        let c1 =
            CycleData::from_vectors(vec![u.clone(), u.clone(), v.clone()], rat(-1, 2)).unwrap();
        let c2 = CycleData::from_vectors(
            vec![u.scale(&rat_int(4)), v.scale(&rat_int(2))],
            rat_int(-1),
        )
        .unwrap();
        (c1, c2)
    }

    fn fig_pair_2() -> (CycleData, CycleData) {
        let u = QVector::from_pairs(&[(-1, 4), (-1, 4), (-1, 2)]);
        let v = QVector::from_pairs(&[(-1, 4), (-1, 2), (-1, 2)]);
        let c1 = CycleData::from_vectors(
            vec![u.clone(), u.clone(), u.scale(&rat_int(2))],
            rat(-1, 2),
        )
        .unwrap();
        let c2 =
            CycleData::from_vectors(vec![v.clone(), v.scale(&rat_int(2))], rat_int(-3)).unwrap();
        (c1, c2)
    }

    #[test]
    fn cond1_witness_fig_pair_1() {
        let (c1, c2) = fig_pair_1();
        let w = witness_cycle_cond1(&c1, &c2).unwrap();
        w.validate().unwrap();
        let want =
            c1.total_chi() * rat_int(16) * BigRational::from(w.constants.degree_left.clone());
        assert_eq!(w.chi_common, want);
    }

    #[test]
    fn cond1_witness_symmetric_input() {
        let u = QVector::from_pairs(&[(-1, 4), (-1, 2)]);
        let c = CycleData::from_vectors(vec![u.clone(), u.clone()], rat(-1, 2)).unwrap();
        let w = witness_cycle_cond1(&c, &c).unwrap();
        assert_eq!(w.constants.degree_left, w.constants.degree_right);
        assert_eq!(w.psi_left, w.psi_right);
    }

    #[test]
    fn cond1_single_member_toy() {
        // One class, one member per side, equal vectors: K = k11 * k'11.
        let u = QVector::from_pairs(&[(-1, 4), (-1, 4)]);
        let c = CycleData::from_vectors(vec![u.clone()], rat(-1, 4)).unwrap();
        let w = witness_cycle_cond1(&c, &c).unwrap();
        let k11 = BigInt::from(4);
        assert_eq!(w.constants.k_product, &k11 * &k11);
        assert_eq!(w.constants.degree_left, w.constants.degree_right);
    }

    #[test]
    fn cond2_witness_fig_pair_2() {
        let (c1, c2) = fig_pair_2();
        let (l, r) = witness_cycle_cond2(&c1, &c2).unwrap();
        let want: Vec<BigInt> = [1, 2, 2, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(l.w0.entries(), &want[..]);
        // Target surfaces have chi = -2 w0.
        let chis: Vec<i64> = l
            .w_amalgam
            .graph
            .type2
            .iter()
            .map(|y| l.w_amalgam.surfaces[y].chi_int())
            .collect();
        assert_eq!(chis, vec![-2, -4, -4, -8]);
        assert_eq!(l.w_amalgam, r.w_amalgam);
        l.validate().unwrap();
        r.validate().unwrap();
    }

    #[test]
    fn cond2_identical_sides() {
        let u = QVector::from_pairs(&[(-1, 4), (-1, 2)]);
        let c =
            CycleData::from_vectors(vec![u.clone(), u.scale(&rat_int(3))], rat(-3, 4)).unwrap();
        let (l, r) = witness_cycle_cond2(&c, &c).unwrap();
        assert_eq!(l.z_amalgam, r.z_amalgam);
        assert_eq!(l.w_amalgam, r.w_amalgam);
        assert_eq!(l.degree, r.degree);
    }

    #[test]
    fn cond2_single_component() {
        let u = QVector::from_pairs(&[(-1, 2), (-1, 1)]);
        let c = CycleData::from_vectors(vec![u.clone()], rat(-1, 2)).unwrap();
        let (l, _) = witness_cycle_cond2(&c, &c).unwrap();
        assert_eq!(l.d.len(), 1);
        assert_eq!(l.d[0], l.degree);
    }

    fn star_amalgam(leaves: &[(u64, u64)]) -> SurfaceAmalgam {
        let mut surfaces = BTreeMap::new();
        let mut boundary = BTreeMap::new();
        for (i, &(g, b)) in leaves.iter().enumerate() {
            surfaces.insert(format!("s{i}"), Surface::new(g, b));
            boundary.insert(format!("s{i}"), vec!["c".to_string(); b as usize]);
        }
        SurfaceAmalgam::new(vec!["c".to_string()], surfaces, boundary).unwrap()
    }

    #[test]
    fn tree_to_racg_star_of_tori() {
        // Star with three one-holed tori: output is the theta-graph with
        // three branches of three interior vertices each.
        let x = star_amalgam(&[(1, 1), (1, 1), (1, 1)]);
        let conv = tree_to_racg(&x).unwrap();
        assert!(conv.pos_genus.is_none());
        let t = crate::racg::recognize_gen_theta(&conv.gamma).unwrap();
        assert_eq!(t.interior_counts(), &[3, 3, 3]);
        assert_eq!(conv.chi_base, rat_int(-3));
        assert_eq!(conv.chi_h, rat_int(-24));
        assert_eq!(conv.chi_gamma, rat(-3, 2));
    }

    #[test]
    fn tree_to_racg_genus_zero_preprocessing() {
        // A genus-0 surface needs at least 3 boundary components, so it
        // sits at a non-terminal vertex: central three-holed sphere with
        // two one-holed tori on each circle.
        let mut surfaces = BTreeMap::new();
        let mut boundary = BTreeMap::new();
        surfaces.insert("mid".to_string(), Surface::new(0, 3));
        boundary.insert(
            "mid".to_string(),
            vec!["c0".to_string(), "c1".to_string(), "c2".to_string()],
        );
        for c in 0..3 {
            for k in 0..2 {
                let id = format!("leaf{c}.{k}");
                surfaces.insert(id.clone(), Surface::new(1, 1));
                boundary.insert(id, vec![format!("c{c}")]);
            }
        }
        let x = SurfaceAmalgam::new(
            vec!["c0".into(), "c1".into(), "c2".into()],
            surfaces,
            boundary,
        )
        .unwrap();
        let conv = tree_to_racg(&x).unwrap();
        let cert = conv.pos_genus.as_ref().unwrap();
        assert_eq!(cert.degree, 3);
        cert.validate().unwrap();
        assert!(crate::graph::validate(&conv.gamma).in_g_3convex);
        // chi chain accounts for the preprocessing: chi(X') = 3 chi(X).
        assert_eq!(conv.chi_base, x.euler() * rat_int(3));
    }

    #[test]
    fn tree_to_racg_depth_two_tree() {
        // Central genus-1 surface with 3 boundary circles, each circle
        // carrying two one-holed tori: output is a cycle of generalized
        // theta-graphs with one trivial component.
        let mut surfaces = BTreeMap::new();
        let mut boundary = BTreeMap::new();
        surfaces.insert("mid".to_string(), Surface::new(1, 3));
        boundary.insert(
            "mid".to_string(),
            vec!["c0".to_string(), "c1".to_string(), "c2".to_string()],
        );
        for c in 0..3 {
            for k in 0..2 {
                let id = format!("leaf{c}.{k}");
                surfaces.insert(id.clone(), Surface::new(1, 1));
                boundary.insert(id, vec![format!("c{c}")]);
            }
        }
        let x = SurfaceAmalgam::new(
            vec!["c0".into(), "c1".into(), "c2".into()],
            surfaces,
            boundary,
        )
        .unwrap();
        let conv = tree_to_racg(&x).unwrap();
        let cyc = crate::racg::recognize_theta_cycle(&conv.gamma).unwrap();
        assert_eq!(cyc.component_count(), 4);
        let mut rs = cyc.branch_counts();
        rs.sort();
        assert_eq!(rs, vec![1, 2, 2, 2]);
        // h = 8g - 4 = 4 for the non-terminal vertex.
        match conv
            .vertex_data
            .iter()
            .find(|v| matches!(v, VertexConversion::NonTerminal { .. }))
            .unwrap()
        {
            VertexConversion::NonTerminal { h, qa_sides, p_sides, .. } => {
                assert_eq!(*h, 4);
                assert_eq!(*qa_sides, 8);
                assert_eq!(*p_sides, 6);
            }
            _ => unreachable!(),
        }
    }
}
