//! JSON report payloads for the command-line front end. Key order is
//! stable and all rationals are exact `p/q` strings, so identical inputs
//! produce byte-identical reports.

use crate::amalgam::{Surface, SurfaceAmalgam, SurfaceCover};
use crate::classify::Decision;
use crate::halfcover::HalfCovering;
use crate::ratvec::{rat_to_string, QVector, Rat};
use crate::witness::{Cond1Witness, Cond2Witness, RacgConversion, ThetaWitness, VertexConversion};
use serde_json::{json, Value};

pub fn rat_json(r: &Rat) -> Value {
    json!(rat_to_string(r))
}

pub fn qvector_json(v: &QVector) -> Value {
    json!(v.entries().iter().map(rat_to_string).collect::<Vec<_>>())
}

pub fn surface_json(s: &Surface) -> Value {
    json!({ "genus": s.genus, "boundary": s.boundary, "chi": s.chi_int() })
}

pub fn surface_cover_json(c: &SurfaceCover) -> Value {
    json!({
        "base": surface_json(&c.base),
        "degree": c.degree,
        "boundary_degrees": c.boundary_degrees,
        "cover": surface_json(&c.cover),
    })
}

pub fn half_covering_json(h: &HalfCovering) -> Value {
    json!({
        "source": crate::halfcover::bipartite_to_json(&h.source),
        "target": crate::halfcover::bipartite_to_json(&h.target),
        "vertex_map": h.map.vertex_map,
        "edge_map": h.map.edge_map,
    })
}

pub fn decision_json(d: &Decision) -> Value {
    json!({
        "verdict": if d.commensurable { "commensurable" } else { "not-commensurable" },
        "route": d.route.as_str(),
        "evidence": d.evidence,
        "reductions": d.reductions,
    })
}

pub fn theta_witness_json(w: &ThetaWitness) -> Value {
    json!({
        "kind": "theta-unfolding",
        "K": w.k_left.to_string(),
        "K_prime": w.k_right.to_string(),
        "unfolded_polygon_sides": w.unfolded_left.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "unfolded_polygon_sides_prime": w.unfolded_right.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

pub fn cond1_witness_json(w: &Cond1Witness) -> Value {
    json!({
        "kind": "cycle-condition1-cover",
        "constants": {
            "classes": w.constants.classes.iter().map(|cls| json!({
                "minimal_integral": cls.rep.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "r": cls.r,
                "left": cls.left.iter().map(member_json).collect::<Vec<_>>(),
                "right": cls.right.iter().map(member_json).collect::<Vec<_>>(),
                "B_p": cls.b.to_string(),
            })).collect::<Vec<_>>(),
            "B": w.constants.b_total.to_string(),
            "K": w.constants.k_product.to_string(),
            "D": w.constants.degree_left.to_string(),
            "D_prime": w.constants.degree_right.to_string(),
        },
        "psi": crate::halfcover::bipartite_to_json(&w.psi_left),
        "psi_prime": crate::halfcover::bipartite_to_json(&w.psi_right),
        "psi_isomorphism": w.psi_iso,
        "half_cover_onto_doubled_jsj": half_covering_json(&w.psi_half_cover_left),
        "half_cover_onto_doubled_jsj_prime": half_covering_json(&w.psi_half_cover_right),
        "central_surface": surface_json(&w.central),
        "central_cover": surface_cover_json(&w.central_cover_left),
        "central_cover_prime": surface_cover_json(&w.central_cover_right),
        "column_surfaces": w.column_surfaces.iter().map(|row| {
            row.iter().map(surface_json).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "amalgam": crate::amalgam::amalgam_to_json(&w.amalgam_left),
        "amalgam_prime": crate::amalgam::amalgam_to_json(&w.amalgam_right),
        "chi_common": rat_json(&w.chi_common),
    })
}

fn member_json(m: &crate::witness::MemberConstants) -> Value {
    json!({
        "member": m.member,
        "ratio": rat_to_string(&m.ratio),
        "k": m.k.to_string(),
        "d": m.d.to_string(),
        "copies": m.copies.to_string(),
    })
}

pub fn cond2_witness_json(w: &Cond2Witness) -> Value {
    json!({
        "kind": "cycle-condition2-cover",
        "w0": w.w0.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "k_index": w.k_index,
        "u": w.u.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "K": w.scale_k.to_string(),
        "M": w.multiplier_m.to_string(),
        "D": w.degree.to_string(),
        "d": w.d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "intermediate_amalgam": crate::amalgam::amalgam_to_json(&w.z_amalgam),
        "intermediate_over_degree16": w.z_over_x.iter().map(surface_cover_json).collect::<Vec<_>>(),
        "target_amalgam": crate::amalgam::amalgam_to_json(&w.w_amalgam),
        "intermediate_over_target": w.z_over_w.iter().map(surface_cover_json).collect::<Vec<_>>(),
        "jsj_half_cover": half_covering_json(&w.jsj_half_cover),
    })
}

pub fn racg_conversion_json(c: &RacgConversion) -> Value {
    let vertex = |v: &VertexConversion| -> Value {
        match v {
            VertexConversion::Terminal {
                y,
                g_prime,
                polygon_sides,
                branch_interior,
            } => json!({
                "vertex": y,
                "kind": "terminal",
                "doubled_genus": g_prime,
                "polygon_sides": polygon_sides,
                "branch_interior_vertices": branch_interior,
            }),
            VertexConversion::NonTerminal {
                y,
                g_prime,
                h,
                s1,
                s2,
                qa_sides,
                p_sides,
                trivial_interior,
            } => json!({
                "vertex": y,
                "kind": "non-terminal",
                "doubled_genus": g_prime,
                "split_genus": h,
                "s1": surface_json(s1),
                "s2": surface_json(s2),
                "essential_polygon_sides": qa_sides,
                "trivial_branch_polygon_sides": p_sides,
                "trivial_branch_interior_vertices": trivial_interior,
            }),
        }
    };
    let cover_cert = |c: &crate::witness::AmalgamCoverCert| -> Value {
        json!({
            "degree": c.degree,
            "base": crate::amalgam::amalgam_to_json(&c.base),
            "cover": crate::amalgam::amalgam_to_json(&c.cover),
            "surface_covers": c.surface_covers.iter().map(|(cid, bid, cert)| json!({
                "cover_vertex": cid,
                "base_vertex": bid,
                "certificate": surface_cover_json(cert),
            })).collect::<Vec<_>>(),
        })
    };
    json!({
        "kind": "tree-amalgam-to-racg",
        "positive_genus_preprocessing": c.pos_genus.as_ref().map(cover_cert),
        "doubled_cover": cover_cert(&c.h_cover),
        "vertices": c.vertex_data.iter().map(vertex).collect::<Vec<_>>(),
        "defining_graph": crate::graph::graph_to_json(&c.gamma),
        "orbicomplex": c.orbicomplex.to_json(),
        "chi_amalgam": rat_json(&c.chi_base),
        "chi_doubled_cover": rat_json(&c.chi_h),
        "chi_racg": rat_json(&c.chi_gamma),
    })
}

pub fn cover16_json(x: &SurfaceAmalgam, cert: &crate::amalgam::Cover16Certificate) -> Value {
    json!({
        "kind": "degree16-cover",
        "amalgam": crate::amalgam::amalgam_to_json(x),
        "degree": cert.degree,
        "chi_racg": rat_json(&cert.base_chi),
        "chi_amalgam": rat_json(&(&cert.base_chi * crate::ratvec::rat_int(16))),
        "surfaces": cert.per_surface.iter().map(|s| json!({
            "type2": s.type2_id,
            "orbifold_chi": rat_json(&s.base_chi),
            "cover": surface_json(&s.cover),
            "boundary_degrees": s.boundary_degrees.iter().map(|(u, ds)| json!({
                "circle": u, "degrees": ds,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// The top-level report: command echo, canonicalized inputs, payload.
pub fn report(command: &str, inputs: Value, result: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "result": result,
    })
}
