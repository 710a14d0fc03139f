//! Browser bindings: GIT slices of toric presets, realization cones, homogeneous catalogue
//! reports. Every export returns a JSON string.

use cstar_core::lattice::linalg::nullspace;
use cstar_core::lattice::{parse_rational, Rational, RationalVector};
use cstar_core::realization::{self, BispecialType};
use cstar_core::{rhaction, toricaction};
use num_traits::ToPrimitive;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Orthonormal basis (floating point) of the hyperplane `λ^⊥`, for drawing only.
fn drawing_basis(lambda: &RationalVector) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in nullspace(std::slice::from_ref(lambda), lambda.dim()) {
        let mut w: Vec<f64> = v.iter().map(to_f64).collect();
        for b in &basis {
            let d: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
            w.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= n);
        basis.push(w);
    }
    basis
}

/// Slice of a toric preset at shifted level `tau` (so `0` is the sink), with its vertices
/// projected to the plane for drawing, plus the vertex counts of all chambers.
pub fn toric_slice_json(preset: &str, lambda: &str, tau: &str) -> Result<String, String> {
    let t = toricaction::preset(preset).map_err(err)?;
    let lambda = RationalVector::parse(lambda).map_err(err)?;
    let tau = parse_rational(tau).map_err(err)?;
    let report = toricaction::toric_analyze(&t, &lambda).map_err(err)?;
    let chambers = toricaction::git_chambers(&t, &lambda).map_err(err)?;
    let slice = t
        .polytope()
        .slice(&lambda, &(&chambers.offset + &tau))
        .map_err(err)?;
    let basis = drawing_basis(&lambda);
    let points: Vec<[f64; 2]> = slice
        .vertices()
        .iter()
        .map(|v| {
            let x: Vec<f64> = v.iter().map(to_f64).collect();
            let coord = |k: usize| {
                basis
                    .get(k)
                    .map_or(0.0, |b| x.iter().zip(b).map(|(p, q)| p * q).sum())
            };
            [coord(0), coord(1)]
        })
        .collect();
    Ok(json!({
        "bandwidth": report.bandwidth,
        "critical_levels": chambers.critical_levels.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "chamber_vertex_counts": chambers.vertex_counts(),
        "slice": slice,
        "points": points,
        "edges": slice.edges(),
    })
    .to_string())
}

/// Cones of the realization of a bispecial transformation of type `(m₋, m₊)` with their
/// closed-form check and the contraction verdict.
pub fn realization_json(m_minus: u32, m_plus: u32) -> Result<String, String> {
    let t = BispecialType::of_type(m_minus, m_plus).map_err(err)?;
    let cones = realization::cones(&t).map_err(err)?;
    let check = realization::table_check(&t).map_err(err)?;
    let verdict = realization::contraction_analysis(&t).map_err(err)?;
    Ok(json!({
        "type": t,
        "cones": cones,
        "closed_forms_match": check.all_match,
        "contraction": verdict,
    })
    .to_string())
}

/// Report of a homogeneous catalogue entry such as `C3(3)` or `P1xQ[5]`.
pub fn rh_json(name: &str) -> Result<String, String> {
    let entry = rhaction::catalog(name).map_err(err)?;
    let report = entry.analyze().map_err(err)?;
    let graph = entry.orbit_graph().ok();
    Ok(json!({ "name": entry.name(), "report": report, "orbit_graph": graph }).to_string())
}

#[wasm_bindgen]
pub fn toric_slice(preset: &str, lambda: &str, tau: &str) -> Result<String, JsValue> {
    toric_slice_json(preset, lambda, tau).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn realization_cones(m_minus: u32, m_plus: u32) -> Result<String, JsValue> {
    realization_json(m_minus, m_plus).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rh_report(name: &str) -> Result<String, JsValue> {
    rh_json(name).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn cube_hexagon() {
        let v: Value = serde_json::from_str(&toric_slice_json("cube", "1,1,1", "3/2").unwrap()).unwrap();
        assert_eq!(v["chamber_vertex_counts"], json!([3, 6, 3]));
        assert_eq!(v["points"].as_array().unwrap().len(), 6);
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
        let pts: Vec<(f64, f64)> = v["points"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
            .collect();
        // regular hexagon: all vertices equidistant from the center
        let r0 = pts[0].0.hypot(pts[0].1);
        assert!(pts.iter().all(|p| (p.0.hypot(p.1) - r0).abs() < 1e-9));
        assert!(toric_slice_json("cube", "1,1,1", "4").is_err());
        assert!(toric_slice_json("dodecahedron", "1,1,1", "1").is_err());
    }

    #[test]
    fn realization_and_catalogue() {
        let v: Value = serde_json::from_str(&realization_json(2, 2).unwrap()).unwrap();
        assert_eq!(v["closed_forms_match"], true);
        assert_eq!(v["contraction"]["smooth"], true);
        assert!(realization_json(1, 1).is_err());
        let v: Value = serde_json::from_str(&rh_json("C3(3)").unwrap()).unwrap();
        assert_eq!(v["report"]["bandwidth"], 3);
        assert_eq!(v["orbit_graph"]["nodes"].as_array().unwrap().len(), 4);
    }
}
