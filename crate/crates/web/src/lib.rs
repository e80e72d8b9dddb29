//! WebAssembly bindings for the browser demo. Every export takes and
//! returns JSON text so the page needs no generated type glue; the same
//! functions are plain Rust and are tested natively.

mod svg;

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use nsflow::builders::{build_lemma34, build_prop35, build_section5};
use nsflow::doc::{emit_graph, parse_graph, parse_template, TemplateDocument};
use nsflow::dot::export_dot;
use nsflow::lyapgraph::{
    balance_diagnostics, check_s3, cycle_rank, nsf_balance_check, summand_lower_bound, validate_abstract, LyapunovGraph,
};
use nsflow::template::{build_lorenz, lemma41_sides, template_genus, thicken_boundary, BoundaryError};

fn error(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn ok<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports always serialize")
}

fn analysis(g: &LyapunovGraph) -> serde_json::Value {
    let mut diagnostics = validate_abstract(g);
    diagnostics.extend(balance_diagnostics(g, &nsf_balance_check(g)));
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "cycle_rank": cycle_rank(g).ok(),
        "diagnostics": diagnostics,
        "s3": check_s3(g),
        "summands": summand_lower_bound(g),
        "document": emit_graph(g),
        "dot": export_dot(g),
        "svg": svg::render(g),
    })
}

/// Analyse a graph document: validation, balance, S³ check, summand bound,
/// plus DOT and SVG drawings.
#[wasm_bindgen]
pub fn analyze_graph(document: &str) -> String {
    match parse_graph(document) {
        Ok(g) => analysis(&g).to_string(),
        Err(e) => error(e),
    }
}

/// Build one of the graph families (`lemma34`, `prop35`, `section5-g`,
/// `section5-l`) and analyse it.
#[wasm_bindgen]
pub fn generate_family(family: &str, n: u32) -> String {
    let built = match family {
        "lemma34" => build_lemma34(n as usize).map_err(|e| e.to_string()),
        "prop35" => build_prop35(n as usize).map_err(|e| e.to_string()),
        "section5-g" => Ok(build_section5().g),
        "section5-l" => Ok(build_section5().l),
        other => Err(format!("unknown family `{other}`")),
    };
    match built {
        Ok(g) if n <= 32 => analysis(&g).to_string(),
        Ok(_) => error("n is limited to 32 in the demo"),
        Err(e) => error(e),
    }
}

/// The Lorenz template with the twist bit of strip `i` taken from bit `i`
/// of `twists`, as a template document.
#[wasm_bindgen]
pub fn lorenz_document(twists: u32) -> String {
    let mut t = build_lorenz();
    for i in 0..t.strips.len() {
        t.strips[i].twist = twists >> i & 1 == 1;
    }
    TemplateDocument::from_template(&t).to_json()
}

/// Boundary of the thickened template described by a template document.
#[wasm_bindgen]
pub fn template_boundary(document: &str) -> String {
    let t = match parse_template(document) {
        Ok(t) => t,
        Err(e) => return error(e),
    };
    match thicken_boundary(&t) {
        Ok(r) => {
            let (lhs, rhs) = lemma41_sides(&r);
            ok(&json!({
                "charts": t.charts.len(),
                "strips": t.strips.len(),
                "report": r,
                "genus": template_genus(&r),
                "identity": [lhs, rhs],
            }))
        }
        Err(BoundaryError::Invalid(ds)) => {
            let lines: Vec<String> = ds.iter().map(ToString::to_string).collect();
            error(lines.join("\n"))
        }
        Err(e) => error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn families_render() {
        let v = parse(&generate_family("lemma34", 2));
        assert_eq!(v["s3"]["pass"], true);
        assert!(v["svg"].as_str().unwrap().starts_with("<svg"));
        let edges = v["edges"].as_u64().unwrap() as usize;
        assert_eq!(v["svg"].as_str().unwrap().matches("class=\"edge ").count(), edges);
        let v = parse(&generate_family("prop35", 3));
        assert_eq!(v["summands"]["n"], 3);
        assert_eq!(v["summands"]["ok"], true);
        assert_eq!(v["cycle_rank"], 3);
        assert!(parse(&generate_family("nope", 1))["error"].is_string());
        assert!(parse(&generate_family("lemma34", 0))["error"].is_string());
    }

    #[test]
    fn analysis_round_trips_documents() {
        let v = parse(&generate_family("section5-l", 0));
        let again = parse(&analyze_graph(v["document"].as_str().unwrap()));
        assert_eq!(again["document"], v["document"]);
        assert!(parse(&analyze_graph("{"))["error"].as_str().unwrap().contains("line 1"));
    }

    #[test]
    fn lorenz_twists() {
        for twists in 0..8 {
            let v = parse(&template_boundary(&lorenz_document(twists)));
            assert_eq!(v["report"]["total_boundary_euler"], -2);
            assert_eq!(v["identity"][0], v["identity"][1]);
        }
        let v = parse(&template_boundary(&lorenz_document(0)));
        assert_eq!(v["genus"], 0);
        let bad = r#"{"charts":[{"id":"J","kind":"joining"}],"strips":[]}"#;
        assert!(parse(&template_boundary(bad))["error"].as_str().unwrap().contains("dangling-port"));
    }

    #[test]
    fn svg_survives_cycles() {
        let doc = r#"{"vertices":[{"id":"a","label":{"kind":"attractor"}},{"id":"b","label":{"kind":"attractor"}}],
            "edges":[{"id":"x","from":"a","to":"b","weight":1},{"id":"y","from":"b","to":"a","weight":1}]}"#;
        let v = parse(&analyze_graph(doc));
        assert!(v["svg"].as_str().unwrap().ends_with("</svg>"));
    }
}
