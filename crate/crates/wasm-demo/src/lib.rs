//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes the same JSON input document the CLI reads. The plain
//! `*_impl` functions carry the logic so they can be tested natively.

use num_bigint::BigInt;
use serde::Serialize;
use toric_ml::demazure::{demazure_roots, DemazureRoot};
use toric_ml::derivation::{AlgebraElement, Operator, SemigroupAlgebra, SupportMode};
use toric_ml::input::MonoidInputDocument;
use toric_ml::invariants::analyze;
use toric_ml::lattice::LatticePoint;
use toric_ml::monoid::AffineMonoid;
use toric_ml::report::ReportDocument;
use wasm_bindgen::prelude::*;

fn load(json: &str) -> Result<(MonoidInputDocument, AffineMonoid), String> {
    let input = MonoidInputDocument::parse(json).map_err(|e| e.to_string())?;
    let monoid = input.monoid().map_err(|e| e.to_string())?;
    Ok((input, monoid))
}

fn parse_point(monoid: &AffineMonoid, text: &str, what: &str) -> Result<LatticePoint, String> {
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| format!("{what}: bad integer {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != monoid.ambient_rank() {
        return Err(format!("{what}: expected {} coordinates", monoid.ambient_rank()));
    }
    monoid
        .transform()
        .apply(&LatticePoint::new(coords))
        .ok_or_else(|| format!("{what}: not in the lattice spanned by the generators"))
}

pub fn analyze_impl(json: &str, format: &str) -> Result<String, String> {
    let (input, monoid) = load(json)?;
    let bounds = input.bounds_override().resolve(&monoid);
    let report = analyze(&monoid, &bounds, false).map_err(|e| e.to_string())?;
    let doc = ReportDocument::new(&input, &report);
    Ok(match format {
        "json" => doc.to_json(),
        _ => doc.to_text(),
    })
}

#[derive(Serialize)]
struct Window {
    rays: Vec<[i64; 2]>,
    members: Vec<[i64; 2]>,
    holes: Vec<[i64; 2]>,
}

fn xy(p: &LatticePoint) -> Option<[i64; 2]> {
    match p.to_i64s()?.as_slice() {
        [x, y] => Some([*x, *y]),
        _ => None,
    }
}

/// Members and holes of degree at most `bound`, in input coordinates. Rank 2 only.
pub fn lattice_window_impl(json: &str, bound: u32) -> Result<String, String> {
    let (_, monoid) = load(json)?;
    if monoid.ambient_rank() != 2 {
        return Err("the picture is only drawn for rank 2 inputs".into());
    }
    let t = monoid.transform();
    let to_input = |ps: Vec<LatticePoint>| ps.iter().filter_map(|p| xy(&t.unapply(p))).collect::<Vec<_>>();
    let b = BigInt::from(bound);
    let w = Window {
        rays: to_input(monoid.dual_cone().rays().to_vec()),
        members: to_input(monoid.members_up_to(&b)),
        holes: to_input(monoid.holes_up_to(&b)),
    };
    serde_json::to_string(&w).map_err(|e| e.to_string())
}

/// Applies the root derivation `∂_{ρ,e}` (or `exp(t ∂)` when `t` is nonempty) to `χ^m`.
pub fn apply_root_impl(json: &str, ray: usize, root: &str, monomial: &str, t: &str) -> Result<String, String> {
    let (input, monoid) = load(json)?;
    let sigma = monoid.sigma();
    if ray >= sigma.rays().len() {
        return Err(format!("ray {ray}: there are {} rays", sigma.rays().len()));
    }
    let e = parse_point(&monoid, root, "root")?;
    let candidate = DemazureRoot { ray, e };
    if !candidate.is_valid(sigma) {
        let h = input.bounds_override().resolve(&monoid).root_height;
        let some: Vec<String> = demazure_roots(sigma, ray, &h)
            .map_err(|e| e.to_string())?
            .iter()
            .take(6)
            .map(|r| monoid.transform().unapply(&r.e).to_string())
            .collect();
        return Err(format!("not a root of ray {ray}; try one of {}", some.join(" ")));
    }
    let m = parse_point(&monoid, monomial, "monomial")?;
    let alg = SemigroupAlgebra::new(monoid.clone(), SupportMode::Strict);
    let f = AlgebraElement::monomial(m);
    let op: Operator = candidate.derivation(sigma).into();
    let cap = 256;
    let out = if t.trim().is_empty() {
        alg.apply(&op, &f, cap)
    } else {
        let t = t.trim().parse().map_err(|_| format!("bad parameter {t:?}"))?;
        alg.exponential(&op, &t, &f, cap)
    }
    .map_err(|e| e.to_string())?;
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn analyze_input(json: &str, format: &str) -> Result<String, JsValue> {
    analyze_impl(json, format).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lattice_window(json: &str, bound: u32) -> Result<String, JsValue> {
    lattice_window_impl(json, bound).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn apply_root(json: &str, ray: usize, root: &str, monomial: &str, t: &str) -> Result<String, JsValue> {
    apply_root_impl(json, ray, root, monomial, t).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE2: &str = r#"{"rank":2,"generators":[[1,0],[0,2],[0,3]]}"#;

    #[test]
    fn analyze_both_formats() {
        assert!(analyze_impl(EXAMPLE2, "json").unwrap().starts_with('{'));
        assert!(analyze_impl(EXAMPLE2, "text").unwrap().contains("facet"));
        assert!(analyze_impl("{}", "json").is_err());
    }

    #[test]
    fn window_lists_holes() {
        let w: serde_json::Value = serde_json::from_str(&lattice_window_impl(EXAMPLE2, 3).unwrap()).unwrap();
        assert_eq!(w["holes"], serde_json::json!([[0, 1], [1, 1], [2, 1]]));
    }

    #[test]
    fn root_application() {
        assert_eq!(apply_root_impl(EXAMPLE2, 1, "-1,0", "2,3", "").unwrap(), "2 x^(1,3)");
        assert!(apply_root_impl(EXAMPLE2, 1, "-1,0", "1,0", "1").unwrap().contains("x^(1,0)"));
        assert!(apply_root_impl(EXAMPLE2, 0, "-1,0", "1,0", "").is_err());
    }
}
