use std::fmt;
use std::path::Path;

use polymoments::cumulants::moments_to_cumulants;
use polymoments::geometry::random::{seeded, SampleBox};
use polymoments::geometry::triangulation::default_triangulation;
use polymoments::geometry::{sample_uniform, Polytope};
use polymoments::invariants::{affine_invariants, linear_affine_invariants, InvariantValue};
use polymoments::io::{
    cumulants_from_json, cumulants_to_csv, cumulants_to_json, moments_from_json, moments_to_csv,
    moments_to_json, parse_json, polytope_from_json, polytope_to_json, rat_from_json, rat_to_json,
    spline_to_json, to_pretty,
};
use polymoments::moments::adjoint::adjoint_poly;
use polymoments::moments::{polytope_moments, project_moments, transform_moments, AffineMap, MomentVector};
use polymoments::recovery::recover_spline;
use polymoments::relations::{
    builtin_catalog, check_relation, data_for_entry, fuzz_relation_with, negative_control, Family,
    GeneratorSpec, RelationData, RelationEntry,
};
use polymoments::{Error, Rat};
use serde_json::{json, Map, Number, Value};

use crate::args::{Cli, Command, Format, OutputOpts, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Lib(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Io(s) => f.write_str(s),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_json(&src)?)
}

fn read_polytope(path: &Path) -> CliResult<Polytope<Rat>> {
    Ok(polytope_from_json(&read_json(path)?)?)
}

fn read_moments(path: &Path) -> CliResult<MomentVector<Rat>> {
    Ok(moments_from_json(&read_json(path)?)?)
}

fn moments_of(p: &Polytope<Rat>, order: u32) -> CliResult<MomentVector<Rat>> {
    let t = default_triangulation(p)?;
    Ok(polytope_moments(p, &t, order)?)
}

fn parse_rat(s: &str) -> CliResult<Rat> {
    rat_from_json(&Value::String(s.trim().to_string()))
        .map_err(|_| CliError::Usage(format!("bad rational {s:?}")))
}

fn parse_vector(s: &str) -> CliResult<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

fn decimal(r: &Rat, digits: usize) -> Value {
    use polymoments::Scalar;
    let s = format!("{:.*e}", digits.max(1) - 1, r.to_f64());
    s.parse::<f64>()
        .ok()
        .and_then(Number::from_f64)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn value(r: &Rat, out: Option<usize>) -> Value {
    match out {
        Some(d) => decimal(r, d),
        None => rat_to_json(r),
    }
}

/// Replace the exact values of a moment or cumulant document by decimals.
fn decimalize(mut doc: Value, digits: Option<usize>) -> CliResult<Value> {
    let Some(d) = digits else { return Ok(doc) };
    if let Some(values) = doc.get_mut("values").and_then(Value::as_object_mut) {
        for v in values.values_mut() {
            *v = decimal(&rat_from_json(v)?, d);
        }
    }
    Ok(doc)
}

fn emit_vector(json_doc: Value, csv: String, out: &OutputOpts) -> CliResult<Output> {
    Ok(Output::ok(match out.format {
        Format::Json => to_pretty(&decimalize(json_doc, out.decimal)?),
        Format::Csv => csv,
    }))
}

pub fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Moments { polytope, order, out } => {
            let m = moments_of(&read_polytope(&polytope)?, order)?;
            emit_vector(moments_to_json(&m), moments_to_csv(&m), &out)
        }
        Command::Adjoint { polytope } => {
            let p = read_polytope(&polytope)?;
            let t = default_triangulation(&p)?;
            let a = adjoint_poly(&p, &t)?;
            let names: Vec<String> = (1..=p.dim()).map(|k| format!("t{k}")).collect();
            let terms: Vec<Value> = a
                .terms()
                .map(|(e, c)| json!({"exponents": e, "coefficient": rat_to_json(c)}))
                .collect();
            Ok(Output::ok(to_pretty(&json!({
                "d": p.dim(),
                "adjoint": a.display_with(&names),
                "terms": terms,
            }))))
        }
        Command::Cumulants { polytope, moments, order, out } => {
            let m = match (polytope, moments) {
                (Some(p), _) => {
                    let order = order.ok_or_else(|| CliError::Usage("--order is required with --polytope".into()))?;
                    moments_of(&read_polytope(&p)?, order)?
                }
                (None, Some(m)) => read_moments(&m)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            let k = moments_to_cumulants(&m)?;
            emit_vector(cumulants_to_json(&k), cumulants_to_csv(&k), &out)
        }
        Command::Recover1d { moments, d, n, direction } => {
            let m = read_moments(&moments)?;
            let m1d = match (m.dim(), direction) {
                (_, Some(v)) => project_moments(&m, &parse_vector(&v)?)?,
                (1, None) => m.values().to_vec(),
                (k, None) => {
                    return Err(CliError::Usage(format!(
                        "moments live in dimension {k}; pass --direction"
                    )))
                }
            };
            let s = recover_spline(&m1d, d, n)?;
            Ok(Output::ok(to_pretty(&spline_to_json(&s))))
        }
        Command::Invariants { polytope, moments, out } => {
            let m = match (polytope, moments) {
                (Some(p), _) => moments_of(&read_polytope(&p)?, 3)?,
                (None, Some(m)) => read_moments(&m)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            invariants(&m, &out)
        }
        Command::Verify(args) => verify(args),
        Command::Transform { moments, matrix, shift, out } => {
            let m = read_moments(&moments)?;
            let a: Vec<Vec<Rat>> = matrix.split(';').map(parse_vector).collect::<CliResult<_>>()?;
            let b = match shift {
                Some(s) => parse_vector(&s)?,
                None => vec![Rat::from_integer(0.into()); a.len()],
            };
            let g = AffineMap::new(a, b)?;
            let t = transform_moments(&m, &g)?;
            emit_vector(moments_to_json(&t), moments_to_csv(&t), &out)
        }
        Command::Sample { family, polytope, count, seed } => sample(family, polytope, count, seed),
    }
}

fn invariant_json(v: &InvariantValue<Rat>, digits: Option<usize>) -> Value {
    json!({
        "name": v.name(),
        "value": value(&v.value, digits),
        "multidegree": v.multidegree,
        "weight": v.weight,
    })
}

fn invariants(m: &MomentVector<Rat>, out: &OutputOpts) -> CliResult<Output> {
    let vals = match m.dim() {
        1 => linear_affine_invariants(m.values())?,
        2 => affine_invariants(m)?,
        d => {
            return Err(CliError::Lib(Error::Dimension(format!(
                "invariants are available on the line and in the plane, not in dimension {d}"
            ))))
        }
    };
    Ok(Output::ok(match out.format {
        Format::Json => to_pretty(&json!({
            "d": m.dim(),
            "invariants": vals.iter().map(|v| invariant_json(v, out.decimal)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("name,numerator,denominator,decimal\n");
            for v in &vals {
                use polymoments::Scalar;
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    v.name(),
                    v.value.numer(),
                    v.value.denom(),
                    v.value.to_f64()
                ));
            }
            s
        }
    }))
}

fn load_entries(args: &VerifyArgs) -> CliResult<Vec<RelationEntry>> {
    let all: Vec<RelationEntry> = if args.relation_file.is_empty() {
        builtin_catalog()?.to_vec()
    } else {
        args.relation_file
            .iter()
            .map(|p| {
                let src = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display())))?;
                RelationEntry::parse(&src).map_err(CliError::from)
            })
            .collect::<CliResult<_>>()?
    };
    match &args.relation {
        Some(id) => {
            let e = all
                .into_iter()
                .find(|e| &e.id == id)
                .ok_or_else(|| CliError::Usage(format!("unknown relation {id:?}")))?;
            Ok(vec![e])
        }
        None => Ok(all),
    }
}

fn simplex_points(p: &Polytope<Rat>) -> Option<&[Vec<Rat>]> {
    (p.num_vertices() == p.dim() + 1).then(|| p.vertices())
}

fn verify(args: VerifyArgs) -> CliResult<Output> {
    let entries = load_entries(&args)?;
    let has_data = args.polytope.is_some() || args.moments.is_some() || args.cumulants.is_some();
    if has_data {
        let polytope = args.polytope.as_deref().map(read_polytope).transpose()?;
        let moments = args.moments.as_deref().map(read_moments).transpose()?;
        let cumulants = args
            .cumulants
            .as_deref()
            .map(|p| -> CliResult<_> { Ok(cumulants_from_json(&read_json(p)?)?) })
            .transpose()?;
        let mut results = Vec::new();
        let mut nonzero = 0;
        for e in &entries {
            let order = e.r.max(if e.ambient == polymoments::relations::Ambient::Invariants { 3 } else { 0 });
            let data = if let Some(p) = &polytope {
                data_for_entry(e, moments_of(p, order)?, simplex_points(p))?
            } else if let Some(m) = &moments {
                data_for_entry(e, m.clone(), None)?
            } else {
                RelationData::from(cumulants.clone().expect("one data source"))
            };
            let v = check_relation(e, &data)?;
            let zero = v == Rat::from_integer(0.into());
            if !zero {
                nonzero += 1;
            }
            results.push(json!({"relation": e.id, "value": rat_to_json(&v), "vanishes": zero}));
        }
        let doc = json!({"results": results, "nonzero": nonzero});
        return Ok(Output {
            text: to_pretty(&doc),
            status: u8::from(nonzero > 0),
        });
    }

    let family = args
        .family
        .as_deref()
        .map(|f| f.parse::<Family>())
        .transpose()?;
    let run_one = |e: &RelationEntry| -> Value {
        let spec = GeneratorSpec::new(family.unwrap_or(e.family));
        let report = fuzz_relation_with(e, &spec, args.trials, args.seed, args.parallel);
        let control = negative_control(e, args.seed);
        let control_ok = matches!(&control, Ok(v) if *v != Rat::from_integer(0.into()));
        let mut obj = Map::new();
        obj.insert("relation".into(), json!(e.id));
        obj.insert("family".into(), json!(report.family));
        obj.insert("trials".into(), json!(report.trials));
        obj.insert("zeros".into(), json!(report.zeros));
        obj.insert("failures".into(), serde_json::to_value(&report.failures).expect("serializable"));
        obj.insert(
            "negative_control".into(),
            match &control {
                Ok(v) => json!(if *v == Rat::from_integer(0.into()) { "zero" } else { "nonzero" }),
                Err(err) => json!(format!("error: {err}")),
            },
        );
        obj.insert("passed".into(), json!(report.passed() && control_ok));
        Value::Object(obj)
    };
    let rows: Vec<Value> = if args.parallel {
        use std::thread;
        thread::scope(|s| {
            let handles: Vec<_> = entries.iter().map(|e| s.spawn(|| run_one(e))).collect();
            handles.into_iter().map(|h| h.join().expect("verification thread")).collect()
        })
    } else {
        entries.iter().map(run_one).collect()
    };
    let failed = rows.iter().filter(|r| r["passed"] != json!(true)).count();
    let doc = json!({
        "seed": args.seed,
        "trials": args.trials,
        "relations": rows,
        "passed": entries.len() - failed,
        "failed": failed,
    });
    Ok(Output {
        text: to_pretty(&doc),
        status: u8::from(failed > 0),
    })
}

fn random_polytope(family: &str, b: &SampleBox, rng: &mut polymoments::geometry::random::Rng64) -> CliResult<Polytope<Rat>> {
    Ok(match family {
        "segment" => b.simplex(rng, 1),
        "triangle" => b.simplex(rng, 2),
        "tetrahedron" => b.simplex(rng, 3),
        "quadrilateral" => b.convex_polygon(rng, 4),
        "pentagon" => b.convex_polygon(rng, 5),
        f => match f.strip_prefix("polygon-").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 3 => b.convex_polygon(rng, n),
            _ => return Err(CliError::Usage(format!("unknown family {f:?}"))),
        },
    })
}

fn sample(family: Option<String>, polytope: Option<std::path::PathBuf>, count: usize, seed: u64) -> CliResult<Output> {
    if let Some(path) = polytope {
        let p = read_polytope(&path)?;
        let t = default_triangulation(&p)?;
        let pts = sample_uniform(&t, count, seed);
        return Ok(Output::ok(to_pretty(&json!({"seed": seed, "points": pts}))));
    }
    let family = family.expect("clap requires one input");
    let b = SampleBox::default();
    let mut rng = seeded(seed);
    let polys: Vec<Value> = (0..count)
        .map(|_| random_polytope(&family, &b, &mut rng).map(|p| polytope_to_json(&p)))
        .collect::<CliResult<_>>()?;
    let doc = if count == 1 {
        polys.into_iter().next().expect("one polytope")
    } else {
        Value::Array(polys)
    };
    Ok(Output::ok(to_pretty(&doc)))
}
