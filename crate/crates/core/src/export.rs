//! Byte-stable renderings of homology data: DOT for graphs, JSON for
//! everything the command line prints.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::cubical::PrecubicalSet;
use crate::hograph::HomologyGraph;
use crate::homology::{Generator, HomologyPresentation};
use crate::reach::{Concept, Reachability};

/// A JSON number when it fits in `i64`, a decimal string otherwise.
pub fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if matches!(ch, '"' | '\\') {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Order attribute of a node: `1` for zero, `inf` for free generators.
fn order_label(degree: Option<usize>, order: Option<&BigInt>) -> String {
    match (degree, order) {
        (None, _) => "1".into(),
        (Some(_), Some(t)) => t.to_string(),
        (Some(_), None) => "inf".into(),
    }
}

pub fn graph_to_dot(g: &HomologyGraph) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(&g.name)).unwrap();
    writeln!(s, "  ring={};", quote(&g.ring.to_string())).unwrap();
    for n in &g.nodes {
        let degree = n.degree.map_or("*".to_string(), |d| d.to_string());
        let label = if n.degree.is_none() { "0" } else { &n.id };
        writeln!(
            s,
            "  {} [label={}, degree={}, order={}];",
            quote(&n.id),
            quote(label),
            quote(&degree),
            quote(&order_label(n.degree, n.order.as_ref()))
        )
        .unwrap();
    }
    for &(a, b) in &g.edges {
        writeln!(s, "  {} -> {};", quote(&g.nodes[a].id), quote(&g.nodes[b].id)).unwrap();
    }
    s.push_str("}\n");
    s
}

fn cycle_terms(complex: &PrecubicalSet, degree: usize, cycle: &[BigInt]) -> Value {
    let mut m = Map::new();
    for (pos, c) in cycle.iter().enumerate() {
        if c.sign() != num_bigint::Sign::NoSign {
            m.insert(complex.name(complex.cube_at(degree, pos)).to_string(), big(c));
        }
    }
    Value::Object(m)
}

fn generator_json(complex: &PrecubicalSet, g: &Generator) -> Value {
    json!({
        "id": g.name,
        "degree": g.degree,
        "order": order_label(Some(g.degree), g.order.as_ref()),
        "cycle": cycle_terms(complex, g.degree, &g.cycle),
    })
}

pub fn presentation_to_json(complex: &PrecubicalSet, h: &HomologyPresentation) -> Value {
    json!({
        "ring": h.ring().to_string(),
        "betti": h.betti(),
        "torsion": h.torsion().iter().map(|t| bigs(t)).collect::<Vec<_>>(),
        "generators": h.generators().map(|g| generator_json(complex, g)).collect::<Vec<_>>(),
    })
}

pub fn graph_to_json(complex: &PrecubicalSet, g: &HomologyGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .map(|n| {
            let degree = n.degree.map_or(Value::Null, |d| json!(d));
            let cycle = match n.degree {
                Some(d) => cycle_terms(complex, d, n.class.vector()),
                None => json!({}),
            };
            json!({
                "id": n.id,
                "degree": degree,
                "order": order_label(n.degree, n.order.as_ref()),
                "cycle": cycle,
            })
        })
        .collect();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|&(a, b)| json!([g.nodes[a].id, g.nodes[b].id]))
        .collect();
    let images = |v: &Vec<Vec<Vec<BigInt>>>| -> Value {
        Value::Array(
            v.iter()
                .map(|deg| Value::Array(deg.iter().map(|c| bigs(c)).collect()))
                .collect(),
        )
    };
    let concepts: Vec<Value> = g
        .concepts
        .iter()
        .map(|c| {
            json!({
                "extent": c.extent,
                "intent": c.intent,
                "extent_images": images(&c.extent_images),
                "intent_images": images(&c.intent_images),
            })
        })
        .collect();
    json!({
        "name": g.name,
        "ring": g.ring.to_string(),
        "betti": g.betti,
        "torsion": g.torsion.iter().map(|t| bigs(t)).collect::<Vec<_>>(),
        "nodes": nodes,
        "edges": edges,
        "concepts": concepts,
    })
}

/// `{vertex: [vertices it reaches]}`, reflexive.
pub fn reachability_to_json(complex: &PrecubicalSet, r: &Reachability) -> Value {
    let mut m = Map::new();
    for v in complex.vertices() {
        let reached: Vec<&str> = r
            .successors(complex.position(v))
            .ones()
            .map(|i| complex.name(complex.cube_at(0, i)))
            .collect();
        m.insert(complex.name(v).to_string(), json!(reached));
    }
    Value::Object(m)
}

pub fn concepts_to_json(complex: &PrecubicalSet, concepts: &[Concept]) -> Value {
    let names = |bits: &fixedbitset::FixedBitSet| -> Vec<&str> {
        bits.ones()
            .map(|i| complex.name(complex.cube_at(0, i)))
            .collect()
    };
    Value::Array(
        concepts
            .iter()
            .map(|c| json!({"extent": names(&c.extent), "intent": names(&c.intent)}))
            .collect(),
    )
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}
