//! JSON file formats and command-line point syntax.
//!
//! Graph file:
//!
//! ```json
//! {"vertices": ["u", "v"], "edges": [{"id": "a", "ends": ["u", "v"], "length": "3/2"}]}
//! ```
//!
//! Divisor file: a list of `{"at": {"vertex": "u"}, "coeff": 2}` or
//! `{"at": {"edge": "a", "offset": "1/3"}, "coeff": -1}`.

use std::path::Path;

use serde_json::{json, Map, Value};
use tropweier_core::rational::parse_rational;
use tropweier_core::{Divisor, MetricGraph, Point, Rational, RawEdge, RawGraph, Segment};

use crate::error::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json(what: &'static str, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::format(what, e.to_string()))
}

fn string_field<'a>(what: &'static str, obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, CliError> {
    obj.get(key).and_then(Value::as_str).ok_or_else(|| CliError::format(what, format!("missing string field `{key}`")))
}

fn rational_field(what: &'static str, obj: &Map<String, Value>, key: &str) -> Result<Rational, CliError> {
    // Integers may be given as JSON numbers; anything else must be a "p/q" string.
    match obj.get(key) {
        Some(Value::Number(n)) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or_default().into())),
        Some(Value::String(s)) => Ok(parse_rational(s)?),
        _ => Err(CliError::format(what, format!("field `{key}` must be a rational string \"p/q\""))),
    }
}

pub fn parse_raw_graph(text: &str) -> Result<RawGraph, CliError> {
    const WHAT: &str = "graph file";
    let v = parse_json(WHAT, text)?;
    let obj = v.as_object().ok_or_else(|| CliError::format(WHAT, "expected an object"))?;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::format(WHAT, "missing list `vertices`"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| CliError::format(WHAT, "vertex ids must be strings")))
        .collect::<Result<Vec<_>, _>>()?;
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::format(WHAT, "missing list `edges`"))?
        .iter()
        .map(|e| {
            let e = e.as_object().ok_or_else(|| CliError::format(WHAT, "edges must be objects"))?;
            let ends = e
                .get("ends")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| CliError::format(WHAT, "`ends` must list two vertex ids"))?;
            let end = |i: usize| {
                ends[i].as_str().map(str::to_string).ok_or_else(|| CliError::format(WHAT, "vertex ids must be strings"))
            };
            Ok(RawEdge {
                id: string_field(WHAT, e, "id")?.to_string(),
                ends: (end(0)?, end(1)?),
                length: rational_field(WHAT, e, "length")?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(RawGraph { vertices, edges })
}

pub fn parse_graph(text: &str) -> Result<MetricGraph, CliError> {
    Ok(MetricGraph::validate_model(&parse_raw_graph(text)?)?)
}

pub fn load_graph(path: &Path) -> Result<MetricGraph, CliError> {
    parse_graph(&read_file(path)?)
}

pub fn graph_to_json(graph: &MetricGraph) -> Value {
    let raw = graph.to_raw();
    json!({
        "vertices": raw.vertices,
        "edges": raw.edges.iter().map(|e| json!({
            "id": e.id,
            "ends": [e.ends.0, e.ends.1],
            "length": e.length.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn parse_at(graph: &MetricGraph, v: &Value) -> Result<Point, CliError> {
    const WHAT: &str = "divisor file";
    let obj = v.as_object().ok_or_else(|| CliError::format(WHAT, "`at` must be an object"))?;
    if let Some(name) = obj.get("vertex") {
        let name = name.as_str().ok_or_else(|| CliError::format(WHAT, "vertex ids must be strings"))?;
        return Ok(graph.vertex(name)?);
    }
    let edge = string_field(WHAT, obj, "edge")?;
    Ok(graph.point_on(edge, rational_field(WHAT, obj, "offset")?)?)
}

pub fn parse_divisor(graph: &MetricGraph, text: &str) -> Result<Divisor, CliError> {
    const WHAT: &str = "divisor file";
    let v = parse_json(WHAT, text)?;
    let items = v.as_array().ok_or_else(|| CliError::format(WHAT, "expected a list of chips"))?;
    let mut d = Divisor::new();
    for item in items {
        let obj = item.as_object().ok_or_else(|| CliError::format(WHAT, "entries must be objects"))?;
        let at = obj.get("at").ok_or_else(|| CliError::format(WHAT, "missing field `at`"))?;
        let coeff = obj
            .get("coeff")
            .and_then(Value::as_i64)
            .ok_or_else(|| CliError::format(WHAT, "`coeff` must be an integer"))?;
        d.add_at(parse_at(graph, at)?, coeff);
    }
    Ok(d)
}

pub fn load_divisor(graph: &MetricGraph, path: &Path) -> Result<Divisor, CliError> {
    parse_divisor(graph, &read_file(path)?)
}

pub fn point_to_json(graph: &MetricGraph, p: &Point) -> Value {
    match p {
        Point::Vertex(v) => json!({ "vertex": graph.vertex_name(*v) }),
        Point::Interior { edge, offset } => json!({ "edge": graph.edge(*edge).id, "offset": offset.to_string() }),
    }
}

pub fn divisor_to_json(graph: &MetricGraph, d: &Divisor) -> Value {
    Value::Array(d.iter().map(|(p, c)| json!({ "at": point_to_json(graph, p), "coeff": c })).collect())
}

/// Parses `vertex:NAME` or `edge:ID@p/q`.
pub fn parse_point(graph: &MetricGraph, s: &str) -> Result<Point, CliError> {
    if let Some(name) = s.strip_prefix("vertex:") {
        return Ok(graph.vertex(name)?);
    }
    if let Some(rest) = s.strip_prefix("edge:") {
        if let Some((id, offset)) = rest.rsplit_once('@') {
            return Ok(graph.point_on(id, parse_rational(offset)?)?);
        }
    }
    Err(CliError::Usage(format!("cannot parse point {s:?}; expected vertex:NAME or edge:ID@p/q")))
}

pub fn format_point(graph: &MetricGraph, p: &Point) -> String {
    match p {
        Point::Vertex(v) => format!("vertex:{}", graph.vertex_name(*v)),
        Point::Interior { edge, offset } => format!("edge:{}@{}", graph.edge(*edge).id, offset),
    }
}

pub fn segment_to_json(graph: &MetricGraph, s: &Segment) -> Value {
    json!({ "edge": graph.edge(s.edge).id, "start": s.start.to_string(), "end": s.end.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropweier_core::rational::rat;

    const THETA: &str = r#"{"vertices":["u","v"],"edges":[
        {"id":"a","ends":["u","v"],"length":"1"},
        {"id":"b","ends":["u","v"],"length":"2"},
        {"id":"c","ends":["v","u"],"length":"7/3"}]}"#;

    #[test]
    fn graph_round_trip() {
        let g = parse_graph(THETA).unwrap();
        assert_eq!(g.genus(), 2);
        let again = parse_graph(&graph_to_json(&g).to_string()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn points_parse_and_print() {
        let g = parse_graph(THETA).unwrap();
        let p = parse_point(&g, "edge:c@2/6").unwrap();
        assert_eq!(p, g.point_on("c", rat(1, 3)).unwrap());
        assert_eq!(format_point(&g, &p), "edge:c@1/3");
        assert_eq!(parse_point(&g, "edge:a@1").unwrap(), Point::Vertex(1));
        assert!(matches!(parse_point(&g, "u"), Err(CliError::Usage(_))));
        assert!(matches!(parse_point(&g, "vertex:w"), Err(CliError::Core(_))));
    }

    #[test]
    fn divisor_round_trip() {
        let g = parse_graph(THETA).unwrap();
        let text = r#"[{"at":{"vertex":"u"},"coeff":2},{"at":{"edge":"b","offset":"1/2"},"coeff":-1},
                      {"at":{"edge":"a","offset":"0"},"coeff":1}]"#;
        let d = parse_divisor(&g, text).unwrap();
        assert_eq!(d.coeff(&Point::Vertex(0)), 3);
        assert_eq!(d.degree(), 2);
        assert_eq!(parse_divisor(&g, &divisor_to_json(&g, &d).to_string()).unwrap(), d);
    }

    #[test]
    fn rejects_decimals() {
        let bad = THETA.replace("\"7/3\"", "\"2.5\"");
        assert!(parse_graph(&bad).is_err());
        let float = THETA.replace("\"7/3\"", "2.5");
        assert!(matches!(parse_graph(&float), Err(CliError::Format { .. })));
    }
}
