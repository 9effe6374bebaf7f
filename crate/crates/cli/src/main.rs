use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use hdagraph::document::{ComplexDocument, DocumentError};
use hdagraph::export::{
    big, concepts_to_json, graph_to_dot, graph_to_json, presentation_to_json,
    reachability_to_json, render,
};
use hdagraph::hograph::{homology_graph_with, PointingRelation};
use hdagraph::homology::{HomologyClass, HomologyPresentation};
use hdagraph::reach::{concepts_with_limit, reachability, DEFAULT_CONCEPT_LIMIT};
use hdagraph::reduction::reduce;
use hdagraph::subdivision::{check_abstraction, is_chain_map, subdivide, subdivide_hda};
use hdagraph::{Path, PrecubicalSet, PrecubicalSubset, Ring};

#[derive(Parser)]
#[command(name = "hdagraph", version, about = "Homology graphs of higher dimensional automata")]
struct Cli {
    /// Coefficients: `z` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "z")]
    ring: Ring,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// JSON document.
    file: PathBuf,
    /// Work on the subdivision target instead of the document's own complex.
    #[arg(long)]
    target: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the complex, HDA and subdivision blocks.
    Validate {
        file: PathBuf,
    },
    /// Betti numbers, torsion and generators.
    Homology(Input),
    /// Vertex reachability.
    Reach(Input),
    /// Concepts of the reachability relation.
    Concepts {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CONCEPT_LIMIT)]
        limit: usize,
    },
    /// The homology graph on zero and the generators.
    Hograph {
        #[command(flatten)]
        input: Input,
        /// DOT output (the default).
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide `FROM ↗ TO`; prints true (exit 0) or false (exit 1).
    PointsTo {
        #[command(flatten)]
        input: Input,
        /// Class expression such as `H1.g0`, `2*H1.g0+-1*H1.g1` or `zero`.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Subdivide edges and print the document with a subdivision block.
    Subdivide {
        file: PathBuf,
        /// `EDGE=COUNT`, repeatable.
        #[arg(long = "count", value_parser = parse_count)]
        counts: Vec<(String, u32)>,
        /// Count for every edge not given with `--count`.
        #[arg(long, default_value_t = 1)]
        all: u32,
        /// Name of the target document.
        #[arg(long)]
        name: Option<String>,
    },
    /// Check that the subdivision is a homeomorphic abstraction of the labelled target.
    CheckAbstraction {
        file: PathBuf,
    },
    /// Push a class of the source forward along the subdivision.
    MapClass {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Lift a path of the subdivision target to the source.
    LiftPath {
        file: PathBuf,
        /// Comma-separated target edges.
        #[arg(long, conflicts_with = "vertex", required_unless_present = "vertex")]
        edges: Option<String>,
        /// A target vertex, for the constant path.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Reduce a past-complete subset of the subdivision target.
    Reduce {
        file: PathBuf,
        /// Comma-separated target cubes; their face closure is used.
        #[arg(long)]
        subset: String,
    },
}

/// Failures by exit status.
enum Fail {
    /// Validation or decision failure: exit 1.
    Invalid { error: anyhow::Error, details: String },
    /// Unreadable input or bad arguments: exit 2.
    Usage(anyhow::Error),
}

impl From<DocumentError> for Fail {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Json(_) | DocumentError::MissingBlock(_) => Fail::Usage(e.into()),
            _ => invalid(e),
        }
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Fail {
    Fail::Usage(e.into())
}

fn invalid<E: std::error::Error + Send + Sync + 'static>(e: E) -> Fail {
    Fail::Invalid {
        details: format!("{e:?}"),
        error: e.into(),
    }
}

/// Printed output and exit status of a command.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn parse_count(s: &str) -> Result<(String, u32), String> {
    let (e, k) = s.split_once('=').ok_or("expected EDGE=COUNT")?;
    let k = k.parse().map_err(|_| format!("bad count `{k}`"))?;
    Ok((e.to_string(), k))
}

fn load(file: &PathBuf) -> Result<ComplexDocument, Fail> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))
        .map_err(Fail::Usage)?;
    Ok(ComplexDocument::parse(&text)?)
}

fn select(input: &Input) -> Result<(String, PrecubicalSet), Fail> {
    let doc = load(&input.file)?;
    let doc = if input.target {
        doc.target().cloned().ok_or(DocumentError::MissingBlock("subdivision"))?
    } else {
        doc
    };
    Ok((doc.name.clone(), doc.complex()?))
}

fn subdivision_of(doc: &ComplexDocument) -> Result<hdagraph::subdivision::SubdivisionMorphism, Fail> {
    doc.subdivision()?
        .ok_or_else(|| DocumentError::MissingBlock("subdivision").into())
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn parse_class(
    complex: &PrecubicalSet,
    h: &HomologyPresentation,
    expr: &str,
) -> Result<HomologyClass, Fail> {
    h.parse_class(complex, expr).map_err(usage)
}

fn class_json(complex: &PrecubicalSet, h: &HomologyPresentation, c: &HomologyClass) -> Result<Value, Fail> {
    let cycle: BTreeMap<&str, Value> = c
        .terms(complex)
        .into_iter()
        .map(|(n, k)| (n, big(&k)))
        .collect();
    let coords = h.coordinates(complex, c).map_err(invalid)?;
    let names: BTreeMap<String, Value> = h
        .generators()
        .filter(|g| g.degree == c.degree())
        .zip(&coords)
        .filter(|(_, k)| !k.is_zero())
        .map(|(g, k)| (g.name.clone(), big(k)))
        .collect();
    Ok(json!({"degree": c.degree(), "cycle": cycle, "coordinates": names}))
}

fn run(cli: Cli) -> Result<Outcome, Fail> {
    let ring = cli.ring;
    match cli.command {
        Command::Validate { file } => {
            let doc = load(&file)?;
            let p = doc.complex()?;
            let hda = doc.hda()?;
            let mut report = json!({
                "name": doc.name,
                "counts": p.counts(),
                "dimension": p.dimension(),
                "hda": hda.is_some(),
            });
            if let Some(f) = doc.subdivision()? {
                let target = doc.target().expect("subdivision has a target");
                target.hda()?;
                report["subdivision"] = json!({
                    "target": target.name,
                    "counts": f.target().counts(),
                    "chain_map": is_chain_map(&f),
                });
            }
            Ok(Outcome::ok(render(&report)))
        }
        Command::Homology(input) => {
            let (_, p) = select(&input)?;
            let h = HomologyPresentation::compute(&p, ring);
            Ok(Outcome::ok(render(&presentation_to_json(&p, &h))))
        }
        Command::Reach(input) => {
            let (_, p) = select(&input)?;
            Ok(Outcome::ok(render(&reachability_to_json(&p, &reachability(&p)))))
        }
        Command::Concepts { input, limit } => {
            let (_, p) = select(&input)?;
            let cs = concepts_with_limit(&reachability(&p), limit).map_err(invalid)?;
            Ok(Outcome::ok(render(&concepts_to_json(&p, &cs))))
        }
        Command::Hograph { input, json, .. } => {
            let (name, p) = select(&input)?;
            let relation = PointingRelation::new(&p, ring).map_err(invalid)?;
            let h = HomologyPresentation::compute(&p, ring);
            let g = homology_graph_with(&name, &relation, &h).map_err(invalid)?;
            Ok(Outcome::ok(if json {
                render(&graph_to_json(&p, &g))
            } else {
                graph_to_dot(&g)
            }))
        }
        Command::PointsTo { input, from, to } => {
            let (_, p) = select(&input)?;
            let h = HomologyPresentation::compute(&p, ring);
            let (a, b) = (parse_class(&p, &h, &from)?, parse_class(&p, &h, &to)?);
            let relation = PointingRelation::new(&p, ring).map_err(invalid)?;
            let holds = relation.points_to(&a, &b).map_err(invalid)?;
            Ok(Outcome {
                stdout: format!("{holds}\n"),
                code: if holds { 0 } else { 1 },
            })
        }
        Command::Subdivide {
            file,
            counts,
            all,
            name,
        } => {
            let doc = load(&file)?;
            let p = doc.complex()?;
            let mut map: BTreeMap<String, u32> =
                p.edges().map(|e| (p.name(e).to_string(), all)).collect();
            for (e, k) in counts {
                if !map.contains_key(&e) {
                    return Err(usage(anyhow!("`{e}` is not an edge")));
                }
                map.insert(e, k);
            }
            let target_name = name.unwrap_or_else(|| format!("{}_subdivided", doc.name));
            let source = ComplexDocument {
                subdivision: None,
                ..doc.clone()
            };
            let out = match doc.hda()? {
                Some(a) => {
                    let (b, f) = subdivide_hda(&a, &map).map_err(invalid)?;
                    source.with_subdivision(&f, ComplexDocument::from_hda(&target_name, &b))
                }
                None => {
                    let (q, f) = subdivide(&p, &map).map_err(invalid)?;
                    source.with_subdivision(&f, ComplexDocument::from_complex(&target_name, &q))
                }
            };
            Ok(Outcome::ok(out.to_json()))
        }
        Command::CheckAbstraction { file } => {
            let doc = load(&file)?;
            let f = subdivision_of(&doc)?;
            let a = doc.hda()?.ok_or(DocumentError::MissingBlock("hda"))?;
            let target = doc.target().expect("subdivision has a target");
            let b = target.hda()?.ok_or(DocumentError::MissingBlock("target hda"))?;
            check_abstraction(&f, &a, &b).map_err(invalid)?;
            Ok(Outcome::ok("ok\n".into()))
        }
        Command::MapClass { file, class } => {
            let doc = load(&file)?;
            let f = subdivision_of(&doc)?;
            let (p, q) = (f.source(), f.target());
            let hp = HomologyPresentation::compute(p, ring);
            let hq = HomologyPresentation::compute(q, ring);
            let a = parse_class(p, &hp, &class)?;
            let b = f.pushforward_class(&a).map_err(invalid)?;
            let out = json!({
                "source": class_json(p, &hp, &a)?,
                "target": class_json(q, &hq, &b)?,
            });
            Ok(Outcome::ok(render(&out)))
        }
        Command::LiftPath {
            file,
            edges,
            vertex,
        } => {
            let doc = load(&file)?;
            let f = subdivision_of(&doc)?;
            let (p, q) = (f.source(), f.target());
            let path = match (edges, vertex) {
                (Some(edges), _) => Path::from_names(q, &split_list(&edges)),
                (None, Some(v)) => q.lookup(&v).and_then(|v| Path::constant(q, v)),
                (None, None) => unreachable!("clap requires one of them"),
            }
            .map_err(usage)?;
            let lifted = f.lift_path(&path);
            let describe = |c: &PrecubicalSet, path: &Path| {
                json!({
                    "source": c.name(path.source()),
                    "target": c.name(path.target()),
                    "edges": path.names(c),
                })
            };
            let out = json!({"path": describe(q, &path), "lift": describe(p, &lifted)});
            Ok(Outcome::ok(render(&out)))
        }
        Command::Reduce { file, subset } => {
            let doc = load(&file)?;
            let f = subdivision_of(&doc)?;
            let q = f.target();
            let ids = split_list(&subset)
                .into_iter()
                .map(|n| q.lookup(n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let a = PrecubicalSubset::closure(q, ids);
            let names = |s: &PrecubicalSubset<'_>| -> Vec<String> {
                s.iter().map(|x| q.name(x).to_string()).collect()
            };
            let r = reduce(&f, &a).map_err(invalid)?;
            let ok = r.steps.iter().all(|s| s.holds());
            let steps: Vec<Value> = r
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "removed": s.removed,
                        "degree": s.degree,
                        "broken_before": s.broken_before,
                        "broken_after": s.broken_after,
                        "certified": s.holds(),
                    })
                })
                .collect();
            let out = json!({
                "input": names(&a),
                "result": names(&r.result),
                "steps": steps,
            });
            Ok(Outcome {
                stdout: render(&out),
                code: if ok { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(Fail::Invalid { error, details }) => {
            eprintln!("error: {error:#}");
            eprintln!("details: {details}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
