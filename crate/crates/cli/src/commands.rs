//! One function per subcommand. Each returns the value to print.

use rayon::prelude::*;
use serde_json::{json, Value};
use tropweier_core::divisor::{rank, reduce, slope_table};
use tropweier_core::electrical::{canonical_measure, resistance, voltage_function};
use tropweier_core::equidist::{report_rows, run_degree, summarize, ExperimentConfig, ReportRow};
use tropweier_core::weierstrass::{mesh_scan, prepare, weierstrass_locus};
use tropweier_core::{Divisor, MeasureTable, MetricGraph, Point, Segment, SegmentClass, SweepConfig};

use crate::error::CliError;
use crate::io::{divisor_to_json, format_point, graph_to_json, point_to_json, segment_to_json};

/// Canonical JSON text: sorted keys, two-space indent, trailing newline.
pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub fn info(graph: &MetricGraph) -> Value {
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let class = match graph.segment_class(&Segment::whole(graph, i)).expect("whole edge") {
                SegmentClass::Bridge => "bridge",
                SegmentClass::Loop => "loop",
                SegmentClass::Ordinary => "ordinary",
            };
            json!({
                "id": e.id,
                "ends": [graph.vertex_name(e.tail), graph.vertex_name(e.head)],
                "length": e.length.to_string(),
                "class": class,
            })
        })
        .collect();
    json!({
        "vertices": (0..graph.vertex_count()).map(|v| graph.vertex_name(v)).collect::<Vec<_>>(),
        "edges": edges,
        "genus": graph.genus(),
        "bridges": graph.bridges().iter().map(|&e| graph.edge(e).id.clone()).collect::<Vec<_>>(),
        "total_length": graph.total_length().to_string(),
    })
}

pub fn normalized(graph: &MetricGraph) -> Value {
    graph_to_json(graph)
}

pub fn measure(graph: &MetricGraph, format: Format) -> String {
    let table = canonical_measure(graph);
    match format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "segment": graph.edge(r.edge).id,
                        "density": r.density.to_string(),
                        "mass": r.mass.to_string(),
                    })
                })
                .collect();
            pretty(&json!({ "rows": rows, "total": table.total().to_string() }))
        }
        Format::Csv => {
            let mut out = String::from("segment,density,mass\n");
            for r in &table.rows {
                out.push_str(&format!("{},{},{}\n", graph.edge(r.edge).id, r.density, r.mass));
            }
            out.push_str(&format!("total,,{}\n", table.total()));
            out
        }
    }
}

pub fn resistance_between(graph: &MetricGraph, from: &Point, to: &Point) -> Value {
    json!({
        "from": format_point(graph, from),
        "to": format_point(graph, to),
        "resistance": resistance(graph, from, to).to_string(),
    })
}

pub fn voltage(graph: &MetricGraph, source: &Point, sink: &Point) -> Value {
    let j = voltage_function(graph, source, sink);
    let slopes: Vec<Value> = (0..graph.edge_count())
        .flat_map(|e| {
            j.function.edge_slopes(graph, e).into_iter().map(move |(a, b, s)| {
                json!({ "edge": graph.edge(e).id, "from": a.to_string(), "to": b.to_string(), "slope": s.to_string() })
            })
        })
        .collect();
    let values: serde_json::Map<String, Value> = (0..graph.vertex_count())
        .map(|v| (graph.vertex_name(v).to_string(), Value::String(j.function.vertex_value(v).to_string())))
        .collect();
    json!({
        "source": format_point(graph, source),
        "sink": format_point(graph, sink),
        "slopes": slopes,
        "vertex_values": values,
    })
}

pub fn reduce_at(graph: &MetricGraph, d: &Divisor, q: &Point) -> Value {
    let r = reduce(graph, q, d);
    let slopes: Vec<Value> = slope_table(graph, &r.witness)
        .into_iter()
        .map(|(e, a, b, s)| json!({ "edge": graph.edge(e).id, "from": a.to_string(), "to": b.to_string(), "slope": s }))
        .collect();
    json!({
        "basepoint": format_point(graph, q),
        "reduced": divisor_to_json(graph, &r.divisor),
        "witness_slopes": slopes,
    })
}

pub fn rank_of(graph: &MetricGraph, d: &Divisor) -> Value {
    json!({ "rank": rank(graph, d), "degree": d.degree(), "genus": graph.genus() })
}

fn row_json(graph: &MetricGraph, r: &ReportRow) -> Value {
    json!({
        "segment": graph.edge(r.segment).id,
        "count": r.count,
        "mu": r.mu.to_string(),
        "lower": r.lower.to_string(),
        "upper": r.upper.to_string(),
        "bound_ok": r.bound_ok,
    })
}

/// Locus of `d`, optionally cross-checked against the mesh oracle.
pub fn weierstrass(
    graph: &MetricGraph,
    d: &Divisor,
    cfg: &SweepConfig,
    mesh_check: Option<u32>,
) -> Result<Value, CliError> {
    let locus = weierstrass_locus(graph, d, cfg);
    let measure: MeasureTable = canonical_measure(graph);
    let n = d.degree();
    let rows: Vec<Value> = if n >= 1 {
        report_rows(graph, n, &locus, &measure).iter().map(|r| row_json(graph, r)).collect()
    } else {
        Vec::new()
    };
    let mut out = json!({
        "degree": n,
        "genus": graph.genus(),
        "rank": locus.rank,
        "generic": locus.generic,
        "points": locus.points.iter().map(|p| point_to_json(graph, p)).collect::<Vec<_>>(),
        "intervals": locus.intervals.iter().map(|s| segment_to_json(graph, s)).collect::<Vec<_>>(),
        "undecided": locus.undecided.iter().map(|s| segment_to_json(graph, s)).collect::<Vec<_>>(),
        "segments": rows,
    });
    if let Some(res) = mesh_check {
        let scan = mesh_scan(graph, &prepare(graph, d), res)?;
        let unexplained: Vec<Value> = scan
            .iter()
            .filter(|s| s.hit && !locus.contains(graph, &s.point))
            .map(|s| point_to_json(graph, &s.point))
            .collect();
        let missed: Vec<Value> = scan
            .iter()
            .filter(|s| !s.hit && locus.contains(graph, &s.point))
            .map(|s| point_to_json(graph, &s.point))
            .collect();
        out["mesh_check"] = json!({
            "resolution": res,
            "hits": scan.iter().filter(|s| s.hit).count(),
            "unexplained_hits": unexplained,
            "missed": missed,
            "agree": unexplained.is_empty() && missed.is_empty(),
        });
    }
    Ok(out)
}

/// Runs every degree in parallel; output order follows `cfg.degrees`.
pub fn equidistribute(graph: &MetricGraph, cfg: &ExperimentConfig, format: Format) -> Result<String, CliError> {
    cfg.validate(graph)?;
    let measure = canonical_measure(graph);
    let reports =
        cfg.degrees.par_iter().map(|&n| run_degree(graph, &measure, n, cfg)).collect::<Result<Vec<_>, _>>()?;
    let summary = summarize(graph, &reports);
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("N,segment,count,mu_num,mu_den,lower,upper,bound_ok,delta_minus_mu_times_N\n");
            for r in reports.iter().flat_map(|r| &r.rows) {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.degree,
                    graph.edge(r.segment).id,
                    r.count,
                    r.mu.numer(),
                    r.mu.denom(),
                    r.lower,
                    r.upper,
                    r.bound_ok,
                    r.scaled_deviation()
                ));
            }
            out
        }
        Format::Json => {
            let degrees: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "N": r.degree,
                        "attempts": r.attempts,
                        "divisor": divisor_to_json(graph, &r.divisor),
                        "points": r.locus.points.len(),
                        "rows": r.rows.iter().map(|row| {
                            let mut v = row_json(graph, row);
                            v["delta_minus_mu_times_N"] = Value::String(row.scaled_deviation().to_string());
                            v
                        }).collect::<Vec<_>>(),
                        "max_scaled_deviation": r.max_scaled_deviation().to_string(),
                        "existence_ok": r.existence_ok(graph.genus()),
                    })
                })
                .collect();
            pretty(&json!({
                "genus": graph.genus(),
                "seed": cfg.seed,
                "denom": cfg.denom,
                "degrees": degrees,
                "summary": {
                    "all_bounds_ok": summary.all_bounds_ok,
                    "existence_ok": summary.existence_ok,
                    "scaled_deviation": summary.scaled_deviation.iter()
                        .map(|(n, x)| json!({ "N": n, "max": x.to_string() }))
                        .collect::<Vec<_>>(),
                },
            }))
        }
    })
}
