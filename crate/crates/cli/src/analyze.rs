use clap::Args;
use goldbach_lab::structure::{
    biadjacency, classify, decompose_g3, decompose_g35, decompose_g5, decompose_pmm, girth_with_witness,
    induced_cycle_census, LayoutRule, Shape,
};
use goldbach_lab::sweep::goldbach_consistency;
use goldbach_lab::{connected_components, diameter, EvenGraph, Error, OddSetKind};
use serde_json::{json, Map, Value};

use crate::{CliError, Format, GraphArgs};

/// Graphs above this size skip the induced-cycle census unless `--cycles` is given.
const CENSUS_VERTEX_LIMIT: usize = 200;

#[derive(Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Longest induced cycle searched for.
    #[arg(long, default_value_t = 10)]
    max_cycle: usize,
    /// Run the induced-cycle census even on large graphs.
    #[arg(long)]
    cycles: bool,
    /// Include the biadjacency layout.
    #[arg(long)]
    biadjacency: bool,
}

fn check_result(r: goldbach_lab::Result<()>) -> Value {
    match r {
        Ok(()) => json!("holds"),
        Err(e) => json!(format!("fails: {e}")),
    }
}

fn decomposition(g: &EvenGraph) -> goldbach_lab::Result<Option<Value>> {
    let n = g.n();
    Ok(match g.spec().kind() {
        OddSetKind::PrimeMultipleMissing(3) => {
            let d = decompose_g3(n)?;
            Some(json!({
                "independent": d.v1.len() + d.v2.len(),
                "paths": [d.path.len()],
                "check": check_result(d.check(g)),
            }))
        }
        OddSetKind::PrimeMultipleMissing(5) => {
            let d = decompose_g5(n)?;
            Some(json!({
                "independent": d.a.len() + d.f.len(),
                "paths": [d.path_bd.len(), d.path_ce.len()],
                "check": check_result(d.check(g)),
            }))
        }
        OddSetKind::PrimeMultipleMissing(p) => {
            let d = decompose_pmm(*p, n)?;
            Some(json!({
                "independent": d.independent_x.len() + d.independent_y.len(),
                "paths": d.paths.iter().map(Vec::len).collect::<Vec<_>>(),
                "check": check_result(d.check(g)),
            }))
        }
        OddSetKind::PrimeIntersection(ps) if ps == &[3, 5] => {
            let d = decompose_g35(n)?;
            Some(json!({
                "independent": d.v1.len() + d.v2.len(),
                "initial_path": d.initial_path.len(),
                "strips": d.strips.len(),
                "full_strips": d.full_strips().count(),
                "check": check_result(d.check(g)),
            }))
        }
        _ => None,
    })
}

fn report(args: &AnalyzeArgs, g: &EvenGraph) -> Result<Vec<(&'static str, Value)>, CliError> {
    let mut fields: Vec<(&'static str, Value)> = Vec::new();
    let x = g.vertices().iter().filter(|&&v| v % 4 == 0).count();
    let components = connected_components(g).len();
    let (girth, witness) = girth_with_witness(g);
    fields.push(("kind", json!(g.spec().kind().to_string())));
    fields.push(("n", json!(g.n())));
    fields.push(("vertices", json!(g.vertex_count())));
    fields.push(("edges", json!(g.edge_count())));
    fields.push(("partite_sizes", json!([x, g.vertex_count() - x])));
    fields.push(("components", json!(components)));
    fields.push(("diameter", json!(diameter(g).to_string())));
    fields.push(("girth", json!(girth.to_string())));
    if let Some(w) = witness {
        fields.push(("girth_witness", json!(w)));
    }
    let shape = classify(g);
    if shape != Shape::Other {
        fields.push(("shape", json!(shape.to_string())));
    }
    if let Some(d) = decomposition(g)? {
        fields.push(("decomposition", d));
    }
    let cycles = if g.vertex_count() > CENSUS_VERTEX_LIMIT && !args.cycles {
        json!(format!("skipped above {CENSUS_VERTEX_LIMIT} vertices (use --cycles)"))
    } else {
        match induced_cycle_census(g, args.max_cycle) {
            Ok(lengths) => json!(lengths),
            Err(Error::Budget { expanded }) => json!(format!("budget exhausted after {expanded} expansions")),
            Err(e) => return Err(e.into()),
        }
    };
    fields.push(("induced_cycle_lengths", cycles));
    if g.spec().kind() == &OddSetKind::Goldbach {
        let c = goldbach_consistency(g.n())?;
        fields.push((
            "goldbach_sums",
            json!(match c.first_failure {
                None => "every even 6..=2n is a sum of two odd primes".to_string(),
                Some(e) => format!("{e} is not a sum of two odd primes"),
            }),
        ));
    }
    if args.biadjacency {
        let rule = match g.spec().kind() {
            OddSetKind::PrimeMultipleMissing(_) => LayoutRule::ResidueBlocks,
            _ => LayoutRule::Natural,
        };
        let layout = biadjacency(g, rule)?;
        fields.push(("biadjacency", serde_json::to_value(&layout)?));
    }
    Ok(fields)
}

pub fn run(args: &AnalyzeArgs) -> Result<(), CliError> {
    let g = args.graph.build()?;
    let fields = report(args, &g)?;
    match args.format {
        Format::Json => {
            let map: Map<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            println!("{}", serde_json::to_string_pretty(&Value::Object(map))?);
        }
        Format::Text => {
            for (key, value) in fields {
                match value {
                    Value::String(s) => println!("{key}: {s}"),
                    Value::Object(map) if key == "biadjacency" => {
                        let layout: goldbach_lab::structure::BiadjacencyLayout =
                            serde_json::from_value(Value::Object(map))?;
                        println!("{key}:");
                        print!("{}", layout.to_text());
                    }
                    other => println!("{key}: {other}"),
                }
            }
        }
    }
    Ok(())
}
