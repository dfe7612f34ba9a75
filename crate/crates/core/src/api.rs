//! JSON request handling for the stateless service. Every request carries
//! the whole family document; responses depend on the request body alone.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arcs::{Arc, ArcFamily, Classification, Window};
use crate::document::{parse_document, serialize_family, ParseError};
use crate::homcalc::{hom_dim, morphism_kind, Ind};
use crate::mutation::{exchange_sides, exchange_terms, mutate, MutationError};
use crate::quiver::{cluster_quiver, QuiverView};
use crate::render::{render_family, render_quiver};
use crate::triangulation::{
    certify_global_maximal, functorially_finite, is_window_maximal, FFVerdict, GlobalCertificate,
};

pub const ENDPOINTS: [&str; 8] = [
    "validate",
    "classify",
    "window-arcs",
    "maximal",
    "mutate",
    "quiver",
    "hom",
    "render",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub status: u16,
    pub body: String,
}

impl Response {
    fn ok(v: impl Serialize) -> Self {
        Response {
            status: 200,
            body: serde_json::to_string(&v).expect("serializable"),
        }
    }

    fn error(status: u16, kind: &str, message: impl ToString, line: Option<usize>) -> Self {
        let mut v = json!({ "error": kind, "message": message.to_string() });
        if let Some(line) = line {
            v["line"] = json!(line);
        }
        Response {
            status,
            body: v.to_string(),
        }
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Request {
    family: Option<String>,
    window: Option<Window>,
    arc: Option<Arc>,
    x: Option<Ind>,
    y: Option<Ind>,
    mode: Option<RenderMode>,
    #[serde(default)]
    highlight: BTreeSet<Arc>,
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum RenderMode {
    Family,
    Quiver,
}

type Outcome = Result<Response, Response>;

fn parse_error(e: ParseError) -> Response {
    Response::error(400, "ParseError", e.message, Some(e.line))
}

fn require<T>(v: Option<T>, field: &str) -> Result<T, Response> {
    v.ok_or_else(|| {
        Response::error(
            400,
            "MissingField",
            format!("request needs `{field}`"),
            None,
        )
    })
}

/// Parses and validates the request's family; validation failures are
/// domain errors.
fn family(req: &Request) -> Result<ArcFamily, Response> {
    let text = require(req.family.as_deref(), "family")?;
    let doc = parse_document(text).map_err(parse_error)?;
    crate::document::parse_family(text)
        .map_err(|e| Response::error(422, "InvalidFamily", e.message, Some(e.line)))?;
    Ok(doc.family())
}

#[derive(Serialize)]
struct Summary {
    classification: Classification,
    certificate: GlobalCertificate,
    functorially_finite: Option<FFVerdict>,
}

fn summary(f: &ArcFamily) -> Summary {
    Summary {
        classification: f.classify(),
        certificate: certify_global_maximal(f).expect("validated family"),
        functorially_finite: functorially_finite(f).ok(),
    }
}

fn mutation_error(e: MutationError) -> Response {
    let kind = match e {
        MutationError::NotMember(_) => "NotMember",
        MutationError::NotMutable(_) => "NotMutable",
        MutationError::NotMaximal(_) => "NotMaximal",
    };
    Response::error(422, kind, e, None)
}

/// Dispatches `POST /api/{endpoint}`.
pub fn handle(endpoint: &str, body: &str) -> Response {
    match dispatch(endpoint, body) {
        Ok(r) | Err(r) => r,
    }
}

fn dispatch(endpoint: &str, body: &str) -> Outcome {
    if !ENDPOINTS.contains(&endpoint) {
        return Err(Response::error(
            404,
            "UnknownEndpoint",
            format!("no endpoint `{endpoint}`"),
            None,
        ));
    }
    let req: Request = if body.trim().is_empty() {
        Request::default()
    } else {
        serde_json::from_str(body).map_err(|e| Response::error(400, "BadRequest", e, None))?
    };
    match endpoint {
        "validate" => validate(&req),
        "classify" => {
            let f = family(&req)?;
            Ok(Response::ok(summary(&f)))
        }
        "window-arcs" => {
            let f = family(&req)?;
            let w = require(req.window, "window")?;
            Ok(Response::ok(
                json!({ "window": w, "arcs": f.arcs_in_window(w) }),
            ))
        }
        "maximal" => {
            let f = family(&req)?;
            let window = req
                .window
                .map(|w| is_window_maximal(&f, w).expect("validated family"));
            let certificate = certify_global_maximal(&f).expect("validated family");
            Ok(Response::ok(
                json!({ "window": window, "certificate": certificate }),
            ))
        }
        "mutate" => {
            let f = family(&req)?;
            let a = require(req.arc, "arc")?;
            let g = mutate(&f, a).map_err(mutation_error)?;
            let sides = exchange_sides(&f, a).map_err(mutation_error)?;
            let terms = exchange_terms(&f, a).map_err(mutation_error)?;
            let star = crate::mutation::exchange_arc(&f, a).map_err(mutation_error)?;
            Ok(Response::ok(json!({
                "arc": a,
                "exchange": star,
                "family": serialize_family(&g),
                "sides": sides,
                "terms": terms,
                "summary": summary(&g),
            })))
        }
        "quiver" => {
            let f = family(&req)?;
            let w = require(req.window, "window")?;
            let q = cluster_quiver(&f, w);
            Ok(Response::ok(
                json!({ "quiver": QuiverView::from(&q), "dot": q.to_dot() }),
            ))
        }
        "hom" => {
            let x = require(req.x, "x")?;
            let y = require(req.y, "y")?;
            Ok(Response::ok(json!({
                "x": x,
                "y": y,
                "forward": hom_dim(x, y),
                "backward": hom_dim(y, x),
                "kind": morphism_kind(x, y),
            })))
        }
        "render" => {
            let f = family(&req)?;
            let w = require(req.window, "window")?;
            let svg = match req.mode.unwrap_or(RenderMode::Family) {
                RenderMode::Family => render_family(&f, w, &req.highlight),
                RenderMode::Quiver => render_quiver(&cluster_quiver(&f, w), w),
            };
            Ok(Response::ok(json!({ "svg": svg })))
        }
        _ => unreachable!("endpoint list checked above"),
    }
}

fn validate(req: &Request) -> Outcome {
    let text = require(req.family.as_deref(), "family")?;
    parse_document(text).map_err(parse_error)?;
    let v: Value = match crate::document::parse_family(text) {
        Ok(f) => json!({ "valid": true, "family": serialize_family(&f) }),
        Err(e) => json!({ "valid": false, "line": e.line, "message": e.message }),
    };
    Ok(Response::ok(v))
}
