//! The commensurability decision procedures: the theta-graph vector
//! criterion, the two cycle criteria, cross-family comparison through
//! doubling, and tree-JSJ amalgam classification.

use crate::amalgam::SurfaceAmalgam;
use crate::racg::{cycle_data, theta_to_cycle, CycleData, GeneralizedTheta, ThetaCycle};
use crate::ratvec::{class_grouping, commensurable, rat_to_string, ClassGroup, QVector};
use crate::{Error, Result};
use serde_json::json;

/// Outcome of a classification, with enough evidence to re-verify it by
/// re-running the cited checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub commensurable: bool,
    pub route: Route,
    pub evidence: serde_json::Value,
    /// Chain of doubling reductions applied before the criterion ran.
    pub reductions: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    GenTheta,
    CycleCond1,
    CycleCond2,
    CycleBoth,
    CycleNegative,
    DoublingReduction,
    AmalgamTree,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::GenTheta => "GenTheta",
            Route::CycleCond1 => "Cycle-cond1",
            Route::CycleCond2 => "Cycle-cond2",
            Route::CycleBoth => "Cycle-both",
            Route::CycleNegative => "Cycle-negative",
            Route::DoublingReduction => "doubling-reduction",
            Route::AmalgamTree => "amalgam-tree",
        }
    }
}

fn qvec_json(v: &QVector) -> serde_json::Value {
    json!(v.entries().iter().map(rat_to_string).collect::<Vec<_>>())
}

// ============================================================================
// Theta graphs
// ============================================================================

/// Two theta-graph groups are commensurable iff their Euler characteristic
/// vectors are. Non-3-convex inputs are reduced by doubling first; the
/// reduction is part of the evidence.
pub fn classify_theta(t: &GeneralizedTheta, t2: &GeneralizedTheta) -> Result<Decision> {
    let mut reductions = Vec::new();
    let a = reduce_theta(t, "left", &mut reductions)?;
    let b = reduce_theta(t2, "right", &mut reductions)?;
    let va = a.theta_vector()?;
    let vb = b.theta_vector()?;
    let verdict = commensurable(&va, &vb);
    Ok(Decision {
        commensurable: verdict,
        route: Route::GenTheta,
        evidence: json!({
            "left_vector": qvec_json(&va),
            "right_vector": qvec_json(&vb),
            "vectors_commensurable": verdict,
        }),
        reductions,
    })
}

fn reduce_theta(
    t: &GeneralizedTheta,
    side: &str,
    reductions: &mut Vec<String>,
) -> Result<GeneralizedTheta> {
    if t.branch_count() < 3 {
        return Err(Error::Unsupported(
            "classification requires theta-graphs with at least 3 branches".into(),
        ));
    }
    if t.is_3_convex() {
        return Ok(t.clone());
    }
    let d = crate::racg::double_theta(t)?;
    reductions.push(format!(
        "{side}: doubled over the valence-2 vertex of the short branch: Theta{:?} -> Theta{:?}",
        t.interior_counts(),
        d.interior_counts()
    ));
    Ok(d)
}

// ============================================================================
// Cycle criteria
// ============================================================================

/// Per-class data for the first cycle criterion.
#[derive(Clone, Debug)]
pub struct Cond1Class {
    pub group: ClassGroup,
    pub lhs: crate::ratvec::Rat,
    pub rhs: crate::ratvec::Rat,
}

/// Result of the first criterion: the class sets must coincide and, per
/// class, `chi(W_A') * sum_i chi(W_Theta_i) = chi(W_A) * sum_k
/// chi(W_Theta'_k)` over the members on each side.
pub struct Cond1Outcome {
    pub holds: bool,
    pub classes_match: bool,
    pub classes: Vec<Cond1Class>,
}

pub fn condition1(c: &CycleData, c2: &CycleData) -> Result<Cond1Outcome> {
    let xs = c.vector_list();
    let ys = c2.vector_list();
    let groups = class_grouping(&xs, &ys)?;
    let classes_match = groups
        .iter()
        .all(|g| !g.xs_indices.is_empty() && !g.ys_indices.is_empty());
    let mut classes = Vec::new();
    let mut all_equal = true;
    for g in groups {
        let sum_x = g
            .xs_indices
            .iter()
            .fold(crate::ratvec::rat_int(0), |acc, &i| acc + xs[i].entry_sum());
        let sum_y = g
            .ys_indices
            .iter()
            .fold(crate::ratvec::rat_int(0), |acc, &i| acc + ys[i].entry_sum());
        let lhs = &c2.chi_a * sum_x;
        let rhs = &c.chi_a * sum_y;
        if lhs != rhs {
            all_equal = false;
        }
        classes.push(Cond1Class { group: g, lhs, rhs });
    }
    Ok(Cond1Outcome {
        holds: classes_match && all_equal,
        classes_match,
        classes,
    })
}

/// Result of the second criterion: a common branch count `r` across every
/// nontrivial component of both cycles, a single commensurability class
/// per side, and commensurable `w`-vectors.
pub struct Cond2Outcome {
    pub holds: bool,
    pub common_r: Option<usize>,
    pub single_class_left: bool,
    pub single_class_right: bool,
    pub w_commensurable: bool,
}

pub fn condition2(c: &CycleData, c2: &CycleData) -> Result<Cond2Outcome> {
    let common_r = match (c.r, c2.r) {
        (Some(a), Some(b)) if a == b && a >= 2 => Some(a),
        _ => None,
    };
    let single = |d: &CycleData| -> bool {
        let vs = d.vector_list();
        !vs.is_empty() && vs[1..].iter().all(|v| commensurable(&vs[0], v))
    };
    let single_class_left = single(c);
    let single_class_right = single(c2);
    let w_commensurable = match (common_r, &c.w, &c2.w) {
        (Some(_), Some(w), Some(w2)) => commensurable(w, w2),
        _ => false,
    };
    Ok(Cond2Outcome {
        holds: common_r.is_some() && single_class_left && single_class_right && w_commensurable,
        common_r,
        single_class_left,
        single_class_right,
        w_commensurable,
    })
}

fn cond1_evidence(o: &Cond1Outcome) -> serde_json::Value {
    json!({
        "classes_match": o.classes_match,
        "classes": o.classes.iter().map(|c| json!({
            "minimal_integral": c.group.rep.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "left_indices": c.group.xs_indices,
            "right_indices": c.group.ys_indices,
            "lhs": rat_to_string(&c.lhs),
            "rhs": rat_to_string(&c.rhs),
        })).collect::<Vec<_>>(),
    })
}

fn cond2_evidence(o: &Cond2Outcome, c: &CycleData, c2: &CycleData) -> serde_json::Value {
    json!({
        "common_r": o.common_r,
        "single_class_left": o.single_class_left,
        "single_class_right": o.single_class_right,
        "w_left": c.w.as_ref().map(qvec_json),
        "w_right": c2.w.as_ref().map(qvec_json),
        "w_commensurable": o.w_commensurable,
    })
}

/// Classifies two cycle datasets: commensurable iff the first or the
/// second criterion holds; both are always evaluated and reported.
pub fn classify_cycle_data(c: &CycleData, c2: &CycleData) -> Result<Decision> {
    let o1 = condition1(c, c2)?;
    let o2 = condition2(c, c2)?;
    let route = match (o1.holds, o2.holds) {
        (true, true) => Route::CycleBoth,
        (true, false) => Route::CycleCond1,
        (false, true) => Route::CycleCond2,
        (false, false) => Route::CycleNegative,
    };
    Ok(Decision {
        commensurable: o1.holds || o2.holds,
        route,
        evidence: json!({
            "condition1": cond1_evidence(&o1),
            "condition1_holds": o1.holds,
            "condition2": cond2_evidence(&o2, c, c2),
            "condition2_holds": o2.holds,
            "chi_A_left": rat_to_string(&c.chi_a),
            "chi_A_right": rat_to_string(&c2.chi_a),
        }),
        reductions: vec![],
    })
}

pub fn classify_cycle(c: &ThetaCycle, c2: &ThetaCycle) -> Result<Decision> {
    if !c.is_3_convex() || !c2.is_3_convex() {
        return Err(Error::Unsupported(
            "cycle classification requires 3-convex cycles".into(),
        ));
    }
    classify_cycle_data(&cycle_data(c)?, &cycle_data(c2)?)
}

/// Cross-family comparison: the theta-graph is converted to a
/// commensurable 3-convex cycle by doubling, then the cycle criteria run.
pub fn classify_cross(t: &GeneralizedTheta, c: &ThetaCycle) -> Result<Decision> {
    if !c.is_3_convex() {
        return Err(Error::Unsupported(
            "cycle classification requires 3-convex cycles".into(),
        ));
    }
    let mut reductions = Vec::new();
    let t3 = reduce_theta(t, "theta", &mut reductions)?;
    let (as_cycle, chain) = theta_to_cycle(&t3)?;
    reductions.extend(chain);
    let mut d = classify_cycle(&as_cycle, c)?;
    d.reductions = reductions;
    if d.commensurable {
        d.route = Route::DoublingReduction;
    }
    Ok(d)
}

// ============================================================================
// Amalgams over trees
// ============================================================================

/// Classifies two surface amalgams whose JSJ graphs are trees of diameter
/// at most 4, by converting each to a right-angled Coxeter defining graph
/// and dispatching to the family criteria.
pub fn classify_amalgam(x: &SurfaceAmalgam, x2: &SurfaceAmalgam) -> Result<Decision> {
    for (name, a) in [("left", x), ("right", x2)] {
        if !a.graph.is_tree() {
            return Err(Error::Unsupported(format!(
                "{name} amalgam's JSJ graph is not a tree; no decision procedure applies"
            )));
        }
        if a.graph.diameter() > 4 {
            return Err(Error::Unsupported(format!(
                "{name} amalgam's JSJ tree has diameter {} > 4; no decision procedure applies",
                a.graph.diameter()
            )));
        }
    }
    let conv1 = crate::witness::tree_to_racg(x)?;
    let conv2 = crate::witness::tree_to_racg(x2)?;
    let mut d = classify_graphs(&conv1.gamma, &conv2.gamma)?;
    d.reductions.insert(
        0,
        "both amalgams converted to right-angled Coxeter defining graphs over their JSJ trees"
            .to_string(),
    );
    d.route = Route::AmalgamTree;
    Ok(d)
}

/// Recognizes the families of two defining graphs and dispatches.
pub fn classify_graphs(g1: &crate::graph::Graph, g2: &crate::graph::Graph) -> Result<Decision> {
    enum Fam {
        Theta(GeneralizedTheta),
        Cycle(ThetaCycle),
    }
    let recog = |g: &crate::graph::Graph| -> Result<Fam> {
        if let Some(t) = crate::racg::recognize_gen_theta(g) {
            return Ok(Fam::Theta(t));
        }
        if let Some(c) = crate::racg::recognize_theta_cycle(g) {
            return Ok(Fam::Cycle(c));
        }
        Err(Error::Unsupported(
            "graph is neither a generalized theta-graph nor a cycle of generalized theta-graphs"
                .into(),
        ))
    };
    match (recog(g1)?, recog(g2)?) {
        (Fam::Theta(a), Fam::Theta(b)) => classify_theta(&a, &b),
        (Fam::Cycle(a), Fam::Cycle(b)) => classify_cycle(&a, &b),
        (Fam::Theta(a), Fam::Cycle(b)) => classify_cross(&a, &b),
        (Fam::Cycle(a), Fam::Theta(b)) => classify_cross(&b, &a),
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratvec::{minimal_integral, rat, rat_int};

    fn theta(n: &[u64]) -> GeneralizedTheta {
        GeneralizedTheta::new(n.to_vec()).unwrap()
    }

    #[test]
    fn theta_classification_examples() {
        let d = classify_theta(&theta(&[2, 2, 3]), &theta(&[5, 5, 9])).unwrap();
        assert!(d.commensurable);
        assert_eq!(d.route, Route::GenTheta);

        let d = classify_theta(&theta(&[2, 2, 3]), &theta(&[2, 2, 4])).unwrap();
        assert!(!d.commensurable);

        let d = classify_theta(&theta(&[2, 3, 4]), &theta(&[2, 3, 4])).unwrap();
        assert!(d.commensurable);
    }

    /// The vector-level data of the first pair of graphs in the
    /// conditions figure: u,u,v vs 4u,2v with chi(W_A) = -1/2 and
    /// chi(W_A') = -1.
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

    /// The second pair: u,u,2u vs v,2v with chi(W_A) = -1/2, chi(W_A') = -3.
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
    fn condition1_fig_pair_1() {
        let (c1, c2) = fig_pair_1();
        let o = condition1(&c1, &c2).unwrap();
        assert!(o.holds);
        assert_eq!(o.classes.len(), 2);
        // Class of u: both sides 2; class of v: both sides 5/4.
        assert_eq!(o.classes[0].lhs, rat_int(2));
        assert_eq!(o.classes[0].rhs, rat_int(2));
        assert_eq!(o.classes[1].lhs, rat(5, 4));
        assert_eq!(o.classes[1].rhs, rat(5, 4));
        let o2 = condition2(&c1, &c2).unwrap();
        assert!(!o2.holds);
        assert!(!o2.single_class_left);
    }

    #[test]
    fn condition2_fig_pair_2() {
        let (c1, c2) = fig_pair_2();
        let o1 = condition1(&c1, &c2).unwrap();
        assert!(!o1.holds);
        assert!(!o1.classes_match);
        let o2 = condition2(&c1, &c2).unwrap();
        assert!(o2.holds);
        assert_eq!(
            c1.w.as_ref().unwrap(),
            &QVector::from_pairs(&[(-1, 2), (-1, 1), (-1, 1), (-2, 1)])
        );
        assert_eq!(
            c2.w.as_ref().unwrap(),
            &QVector::from_pairs(&[(-3, 4), (-3, 2), (-3, 2), (-3, 1)])
        );
        let (rep, _) = minimal_integral(c1.w.as_ref().unwrap()).unwrap();
        let want: Vec<num::BigInt> = [1, 2, 2, 4].iter().map(|&x| num::BigInt::from(x)).collect();
        assert_eq!(rep.entries(), &want[..]);
    }

    #[test]
    fn identical_cycles_commensurable() {
        // Mixed vector classes: only the first criterion applies.
        let c = crate::racg::ThetaCycle::new(vec![vec![2, 2], vec![2, 3], vec![2, 2]]).unwrap();
        let d = classify_cycle(&c, &c).unwrap();
        assert!(d.commensurable);
        assert_eq!(d.route, Route::CycleCond1);
        // Single class: both criteria hold.
        let c = crate::racg::ThetaCycle::new(vec![vec![2, 2], vec![2, 2], vec![2, 2]]).unwrap();
        let d = classify_cycle(&c, &c).unwrap();
        assert!(d.commensurable);
        assert_eq!(d.route, Route::CycleBoth);
    }

    #[test]
    fn classification_is_symmetric() {
        for (c1, c2) in [fig_pair_1(), fig_pair_2()] {
            let a = classify_cycle_data(&c1, &c2).unwrap();
            let b = classify_cycle_data(&c2, &c1).unwrap();
            assert_eq!(a.commensurable, b.commensurable);
            assert_eq!(a.route, b.route);
        }
    }

    #[test]
    fn scale_covariance_of_cycle_criteria() {
        // Scaling one side's Euler data by a common positive rational
        // never changes either verdict.
        for (c1, c2) in [fig_pair_1(), fig_pair_2()] {
            let s = rat(3, 2);
            let scaled = CycleData::from_vectors(
                c1.vector_list().iter().map(|v| v.scale(&s)).collect(),
                &c1.chi_a * &s,
            )
            .unwrap();
            assert_eq!(
                condition1(&c1, &c2).unwrap().holds,
                condition1(&scaled, &c2).unwrap().holds
            );
            assert_eq!(
                condition2(&c1, &c2).unwrap().holds,
                condition2(&scaled, &c2).unwrap().holds
            );
        }
    }

    #[test]
    fn cross_family_self_comparison() {
        let t = theta(&[2, 2, 2]);
        let (c, _) = theta_to_cycle(&t).unwrap();
        let d = classify_cross(&t, &c).unwrap();
        assert!(d.commensurable);
        assert_eq!(d.route, Route::DoublingReduction);
        assert!(!d.reductions.is_empty());
    }

    #[test]
    fn non_3_convex_theta_reduces_by_doubling() {
        let a = theta(&[1, 3, 4]);
        let b = theta(&[1, 3, 4]);
        let d = classify_theta(&a, &b).unwrap();
        assert!(d.commensurable);
        assert_eq!(d.reductions.len(), 2);
    }

    #[test]
    fn perturbed_cycle_pair_not_commensurable() {
        // Same class structure but chi(W_A) perturbed so that (1)(b)
        // fails, and w classes differ so that (2)(b) fails.
        let u = QVector::from_pairs(&[(-1, 4), (-1, 4), (-1, 2)]);
        let c1 = CycleData::from_vectors(vec![u.clone(), u.clone()], rat(-1, 2)).unwrap();
        let c2 = CycleData::from_vectors(vec![u.clone(), u.clone()], rat(-3, 4)).unwrap();
        let d = classify_cycle_data(&c1, &c2).unwrap();
        assert!(!d.commensurable);
        assert_eq!(d.route, Route::CycleNegative);
    }
}
