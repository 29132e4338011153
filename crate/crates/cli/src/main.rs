use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plumbing::laurent::Laurent;
use plumbing::lifts::{canonical_lift, lift_from_dual, ReducedLift};
use plumbing::monoid::{choose_generators, enumerate_box, graded_holes, hole_sets, supersets, GeneratorSet, Quasilinear, Strategy};
use plumbing::oracle::{oracle_points, reduced_series_naive, sw_norm_counting};
use plumbing::polyparts::{assemble, SWResult};
use plumbing::rational::{fmt_q, Q};
use plumbing::semigroups::{curve_from_pair, curve_semigroup, seifert_semigroup, NumericalSemigroup};
use plumbing::series::{expand_direct, graded_kappa, graded_lifts, rational_form, RationalForm};
use plumbing::{Class, Plumbing, PlumbingGraph};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "plumbing", version, about = "Poincaré series, monoids and Seiberg–Witten invariants of plumbed 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// E*-coordinates of any lift of the class, comma separated
    #[arg(long, global = true, allow_hyphen_values = true)]
    class: Option<String>,
    /// Per-node exponent bound for truncated series
    #[arg(long, global = true, default_value_t = 20)]
    degree: i64,
    /// proof, small or pinned:<file> (one vector per line)
    #[arg(long, global = true, default_value = "proof")]
    generators: String,
    /// Cross-check against the brute-force oracles
    #[arg(long, global = true)]
    oracle: bool,
    /// canonical or pinned:<E*-vector>
    #[arg(long, global = true, default_value = "canonical", allow_hyphen_values = true)]
    lift: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the graph is a negative definite tree
    Validate { file: String },
    /// Discriminant group, nodes and Seifert invariants
    Info { file: String },
    /// Truncated expansion of Z_h
    Series { file: String },
    /// Closed rational form of Z_h
    Rational { file: String },
    /// Box points, hole sets and graded hole sets
    Holes { file: String },
    /// Polynomial part P_h and sw^norm_h
    Polypart { file: String },
    /// sw^norm_h for one class or for every class
    Sw { file: String },
    /// Numerical semigroups of Seifert spheres and plane curves
    Semigroup {
        #[arg(long, group = "source")]
        seifert: Option<String>,
        #[arg(long, group = "source")]
        pair: Option<String>,
        #[arg(long, group = "source")]
        curve: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(plumbing::Error),
}

impl From<plumbing::Error> for Failure {
    fn from(e: plumbing::Error) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = Result<T, Failure>;

struct Output {
    body: Value,
    summary: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let rendered = match cli.opts.format {
                Format::Json => serde_json::to_string_pretty(&out.body).unwrap() + "\n",
                Format::Text => text(&out.body, 0),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            eprintln!("{}", out.summary);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            println!("{}", serde_json::to_string_pretty(&json!({ "error": e.to_string() })).unwrap());
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Plain indented rendering of a JSON value.
fn text(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) => format!("{pad}{k}:\n{}", text(x, indent + 2)),
                Value::Array(a) if a.iter().any(|y| y.is_object()) => {
                    format!("{pad}{k}:\n{}", a.iter().map(|y| text(y, indent + 2)).collect::<Vec<_>>().join(&format!("{pad}  --\n")))
                }
                _ => format!("{pad}{k}: {}\n", x),
            })
            .collect(),
        _ => format!("{pad}{v}\n"),
    }
}

fn run(cli: &Cli) -> Run<Output> {
    let o = &cli.opts;
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Info { file } => info(file),
        Command::Series { file } => series(file, o),
        Command::Rational { file } => rational(file, o),
        Command::Holes { file } => holes(file, o),
        Command::Polypart { file } => polypart(file, o),
        Command::Sw { file } => sw(file, o),
        Command::Semigroup { seifert, pair, curve } => semigroup(seifert.as_deref(), pair.as_deref(), curve.as_deref()),
    }
}

fn read(file: &str) -> Run<(String, String)> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("cannot read {file}: {e}")))?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok((text, digest))
}

fn load(file: &str) -> Run<(Plumbing, String)> {
    let (text, digest) = read(file)?;
    Ok((Plumbing::parse(&text)?, digest))
}

fn parse_vector(s: &str) -> Run<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("bad integer `{t}` in `{s}`"))))
        .collect()
}

fn manifest(subcommand: &str, digest: &str) -> Value {
    json!({
        "subcommand": subcommand,
        "input_sha256": digest,
        "versions": { "plumbing": plumbing::VERSION, "cli": env!("CARGO_PKG_VERSION") },
    })
}

fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

fn vec_q(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_json).collect())
}

fn terms_json(poly: &Laurent) -> Value {
    Value::Array(poly.terms().map(|(e, c)| json!({ "exponent": vec_q(e), "coeff": c })).collect())
}

fn node_ids(p: &Plumbing, set: &[usize]) -> Value {
    json!(set.iter().map(|&n| p.node_id(n)).collect::<Vec<_>>())
}

fn strategy(o: &Options) -> Run<Strategy> {
    match o.generators.as_str() {
        "proof" => Ok(Strategy::Proof),
        "small" => Ok(Strategy::Small),
        s => match s.strip_prefix("pinned:") {
            Some(path) => {
                let (text, _) = read(path)?;
                let vs = text
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(|l| parse_vector(l.trim_matches(|c| c == '(' || c == ')')))
                    .collect::<Run<Vec<_>>>()?;
                Ok(Strategy::Pinned(vs))
            }
            None => Err(Failure::Usage(format!("unknown generator strategy `{s}`"))),
        },
    }
}

/// The class and the reduced lift selected by --class and --lift.
struct Selection {
    class: Class,
    lift: ReducedLift,
    spec: Value,
}

fn select(p: &Plumbing, o: &Options) -> Run<Option<Selection>> {
    let n = p.graph.len();
    let check = |y: &[i64]| {
        if y.len() == n {
            Ok(())
        } else {
            Err(Failure::Usage(format!("expected {n} E*-coordinates, got {}", y.len())))
        }
    };
    let given = match &o.class {
        Some(s) => {
            let y = parse_vector(s)?;
            check(&y)?;
            Some(y)
        }
        None => None,
    };
    let pinned = match o.lift.as_str() {
        "canonical" => None,
        s => match s.strip_prefix("pinned:") {
            Some(v) => {
                let y = parse_vector(v)?;
                check(&y)?;
                Some(y)
            }
            None => return Err(Failure::Usage(format!("unknown lift `{s}`"))),
        },
    };
    let class = match (&given, &pinned) {
        (Some(y), _) | (None, Some(y)) => p.group.class_of_dual(y),
        (None, None) => return Ok(None),
    };
    let lift = match &pinned {
        Some(y) => {
            if p.group.class_of_dual(y) != class {
                return Err(Failure::Usage("the pinned lift is not in the requested class".into()));
            }
            lift_from_dual(p, y)?
        }
        None => canonical_lift(p, &class)?,
    };
    let spec = json!({ "given": given, "lift": o.lift });
    Ok(Some(Selection { class, lift, spec }))
}

fn select_or_zero(p: &Plumbing, o: &Options) -> Run<Selection> {
    match select(p, o)? {
        Some(s) => Ok(s),
        None => Ok(Selection {
            class: p.group.zero(),
            lift: canonical_lift(p, &p.group.zero())?,
            spec: json!({ "given": Value::Null, "lift": "canonical" }),
        }),
    }
}

fn class_json(p: &Plumbing, s: &Selection) -> Value {
    let ql = Quasilinear::new(p, &s.lift);
    json!({
        "spec": s.spec,
        "resolved": s.class,
        "reduced_lift": s.lift.coeffs,
        "c_a": vec_q(ql.c()),
    })
}

fn generators_json(g: &GeneratorSet) -> Value {
    json!({ "strategy": g.strategy, "vectors": g.vectors, "kappa": g.kappa })
}

fn graded_generators(p: &Plumbing, a: &ReducedLift, o: &Options) -> Run<GeneratorSet> {
    Ok(choose_generators(p, &graded_lifts(p, a), &graded_kappa(p), &strategy(o)?)?)
}

fn validate(file: &str) -> Run<Output> {
    let (text, digest) = read(file)?;
    let g = PlumbingGraph::parse(&text)?;
    let p = Plumbing::new(g)?;
    let warnings = p.graph.minimality_warnings();
    let body = json!({
        "manifest": manifest("validate", &digest),
        "valid": true,
        "vertices": p.graph.len(),
        "nodes": p.num_nodes(),
        "det": p.lattice.det,
        "warnings": warnings,
    });
    Ok(Output { body, summary: format!("valid negative definite tree, {} vertices, det {}", p.graph.len(), p.lattice.det) })
}

fn info(file: &str) -> Run<Output> {
    let (p, digest) = load(file)?;
    let s = &p.seifert;
    let g = &p.graph;
    let legs: Vec<Value> = s
        .legs
        .iter()
        .map(|l| json!({ "node": p.node_id(l.node), "end": g.id(l.end), "alpha": l.alpha, "omega": l.omega }))
        .collect();
    let chains: Vec<Value> = s
        .chains
        .iter()
        .map(|c| {
            json!({
                "lo": p.node_id(c.lo), "hi": p.node_id(c.hi), "alpha": c.alpha,
                "omega_lo": c.omega_lo, "omega_hi": c.omega_hi,
            })
        })
        .collect();
    let kdual: Vec<i64> = (0..g.len()).map(|v| g.b(v) + 2).collect();
    let body = json!({
        "manifest": manifest("info", &digest),
        "det": p.lattice.det,
        "order": p.group.order(),
        "invariant_factors": p.group.factors,
        "nodes": node_ids(&p, &(0..p.num_nodes()).collect::<Vec<_>>()),
        "n_hat": node_ids(&p, &p.cls.n_hat),
        "zeta_exponents": p.cls.zeta_exponent,
        "legs": legs,
        "chains": chains,
        "euler": vec_q(&s.euler),
        "iorb": s.iorb.iter().map(|r| vec_q(r)).collect::<Vec<_>>(),
        "canonical_class_dual": kdual,
        "vertex_order": (0..g.len()).map(|v| g.id(v)).collect::<Vec<_>>(),
    });
    Ok(Output { body, summary: format!("|H| = {}, invariant factors {:?}", p.group.order(), p.group.factors) })
}

fn series(file: &str, o: &Options) -> Run<Output> {
    let (p, digest) = load(file)?;
    let sel = select_or_zero(&p, o)?;
    let z = expand_direct(&p, &sel.lift, o.degree)?;
    let mut m = manifest("series", &digest);
    m["class"] = class_json(&p, &sel);
    m["bounds"] = json!({ "degree": o.degree });
    let mut body = json!({ "manifest": m, "terms": terms_json(&z) });
    let mut summary = format!("Z_h up to degree {}: {} terms", o.degree, z.len());
    if o.oracle {
        let naive = reduced_series_naive(&p, &sel.class, o.degree);
        body["oracle"] = json!({ "agrees": naive == z, "terms": naive.len() });
        summary += &format!(", oracle {}", if naive == z { "agrees" } else { "DISAGREES" });
    }
    Ok(Output { body, summary })
}

fn form_json(p: &Plumbing, form: &RationalForm) -> Value {
    Value::Array(
        form.terms
            .iter()
            .map(|t| {
                json!({
                    "set": node_ids(p, &t.set),
                    "denominators": t.denominators.iter().map(|(n, v)| json!({ "node": p.node_id(*n), "vector": vec_q(v) })).collect::<Vec<_>>(),
                    "numerator": terms_json(&t.numerator),
                })
            })
            .collect(),
    )
}

fn rational(file: &str, o: &Options) -> Run<Output> {
    let (p, digest) = load(file)?;
    let sel = select_or_zero(&p, o)?;
    let gens = graded_generators(&p, &sel.lift, o)?;
    let form = rational_form(&p, &sel.lift, &gens)?;
    let mut m = manifest("rational", &digest);
    m["class"] = class_json(&p, &sel);
    m["generators"] = generators_json(&gens);
    let mut body = json!({ "manifest": m, "terms": form_json(&p, &form) });
    let mut summary = format!("rational form with {} terms", form.terms.len());
    if o.oracle {
        let ok = form.expand(o.degree) == expand_direct(&p, &sel.lift, o.degree)?;
        body["manifest"]["bounds"] = json!({ "degree": o.degree });
        body["oracle"] = json!({ "agrees": ok });
        summary += &format!(", expansion to degree {} {}", o.degree, if ok { "agrees" } else { "DISAGREES" });
    }
    Ok(Output { body, summary })
}

fn holes(file: &str, o: &Options) -> Run<Output> {
    let (p, digest) = load(file)?;
    let sel = select_or_zero(&p, o)?;
    let gens = graded_generators(&p, &sel.lift, o)?;
    let ql = Quasilinear::new(&p, &sel.lift);
    let bx = enumerate_box(&ql, &gens);
    let k = p.num_nodes();
    let minus: Vec<Value> = supersets(k, &[])
        .iter()
        .map(|set| json!({ "set": node_ids(&p, set), "points": hole_sets(&ql, &bx, set) }))
        .collect();
    let zero = vec![0; k];
    let graded: Vec<Value> = supersets(k, &p.cls.n_hat)
        .iter()
        .map(|set| json!({ "set": node_ids(&p, set), "points": graded_holes(&p, &sel.lift, &gens, &zero, set) }))
        .collect();
    let mut m = manifest("holes", &digest);
    m["class"] = class_json(&p, &sel);
    m["generators"] = generators_json(&gens);
    let body = json!({ "manifest": m, "box": bx, "minus": minus, "graded": graded });
    Ok(Output { body, summary: format!("{} box points", bx.len()) })
}

fn sw_one(p: &Plumbing, lift: &ReducedLift, o: &Options) -> Run<SWResult> {
    let gens = graded_generators(p, lift, o)?;
    let form = rational_form(p, lift, &gens)?;
    Ok(assemble(p, lift, &gens, &form)?)
}

fn oracle_json(p: &Plumbing, h: &[i64], sw: &Q) -> Run<(Value, bool)> {
    let mut values = Vec::new();
    for x in oracle_points(p, h) {
        values.push(sw_norm_counting(p, h, &x)?);
    }
    let ok = values.iter().all(|v| v == sw);
    let diff: Vec<Value> = values.iter().map(|v| q_json(&(v - sw))).collect();
    Ok((json!({ "values": values.iter().map(q_json).collect::<Vec<_>>(), "difference": diff }), ok))
}

fn polypart(file: &str, o: &Options) -> Run<Output> {
    let (p, digest) = load(file)?;
    let sel = select_or_zero(&p, o)?;
    let res = sw_one(&p, &sel.lift, o)?;
    let mut m = manifest("polypart", &digest);
    m["class"] = class_json(&p, &sel);
    m["generators"] = generators_json(&res.generators);
    let mut body = json!({
        "manifest": m,
        "p_h": terms_json(&res.p_h),
        "p_h_text": res.p_h.to_string(),
        "sw_norm": q_json(&res.sw_norm),
        "sw": q_json(&res.sw_raw),
    });
    let mut summary = format!("P_h has {} terms, sw^norm_h = {}", res.p_h.len(), fmt_q(&res.sw_norm));
    if o.oracle {
        let (v, ok) = oracle_json(&p, &sel.class, &res.sw_norm)?;
        body["oracle"] = v;
        summary += if ok { ", oracle agrees" } else { ", oracle DISAGREES" };
    }
    Ok(Output { body, summary })
}

fn sw(file: &str, o: &Options) -> Run<Output> {
    let (p, digest) = load(file)?;
    let selections = match select(&p, o)? {
        Some(s) => vec![s],
        None => p
            .group
            .elements()
            .into_iter()
            .map(|h| {
                let lift = canonical_lift(&p, &h)?;
                Ok(Selection { class: h, lift, spec: json!({ "given": Value::Null, "lift": "canonical" }) })
            })
            .collect::<Run<Vec<_>>>()?,
    };
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all_ok = true;
    for sel in &selections {
        let res = sw_one(&p, &sel.lift, o)?;
        let mut row = json!({
            "class": class_json(&p, sel),
            "generators": generators_json(&res.generators),
            "sw_norm": q_json(&res.sw_norm),
            "sw": q_json(&res.sw_raw),
        });
        if o.oracle {
            let (v, ok) = oracle_json(&p, &sel.class, &res.sw_norm)?;
            row["oracle"] = v;
            all_ok &= ok;
        }
        lines.push(format!("{:?}: {}", sel.class, fmt_q(&res.sw_norm)));
        rows.push(row);
    }
    let mut m = manifest("sw", &digest);
    m["strategy"] = json!(o.generators);
    let body = json!({ "manifest": m, "classes": rows });
    let mut summary = format!("sw^norm over {} class(es): {}", selections.len(), lines.join(", "));
    if o.oracle {
        summary += if all_ok { "; oracle agrees" } else { "; oracle DISAGREES" };
    }
    Ok(Output { body, summary })
}

fn semigroup_json(s: &NumericalSemigroup) -> Value {
    json!({
        "generators": s.minimal_generators(),
        "gaps": s.gaps(),
        "genus": s.genus(),
        "conductor": s.conductor(),
        "frobenius": s.frobenius(),
    })
}

fn semigroup(seifert: Option<&str>, pair: Option<&str>, curve: Option<&str>) -> Run<Output> {
    let digest_of = |s: &str| hex::encode(Sha256::digest(s.as_bytes()));
    let (body, source) = match (seifert, pair, curve) {
        (Some(s), None, None) => {
            let alphas = parse_vector(s)?;
            let sg = seifert_semigroup(&alphas)?;
            let mut m = manifest("semigroup", &digest_of(s));
            m["source"] = json!({ "seifert": alphas });
            (json!({ "manifest": m, "semigroup": semigroup_json(&sg) }), format!("Sigma{alphas:?}"))
        }
        (None, Some(s), None) => {
            let v = parse_vector(s)?;
            let [pp, a] = v[..] else {
                return Err(Failure::Usage("--pair takes two integers".into()));
            };
            let c = curve_from_pair(pp, a)?;
            let mut m = manifest("semigroup", &digest_of(s));
            m["source"] = json!({ "pair": v });
            (curve_json(m, &c), format!("pair ({pp},{a})"))
        }
        (None, None, Some(file)) => {
            let (text, digest) = read(file)?;
            let c = curve_semigroup(&PlumbingGraph::parse(&text)?)?;
            let mut m = manifest("semigroup", &digest);
            m["source"] = json!({ "curve": true });
            (curve_json(m, &c), "curve graph".to_string())
        }
        _ => return Err(Failure::Usage("give exactly one of --seifert, --pair, --curve".into())),
    };
    let gens = body["semigroup"]["generators"].clone();
    let genus = body["semigroup"]["genus"].clone();
    Ok(Output { summary: format!("{source}: generators {gens}, genus {genus}"), body })
}

fn curve_json(m: Value, c: &plumbing::semigroups::CurveInvariants) -> Value {
    json!({
        "manifest": m,
        "semigroup": semigroup_json(&c.semigroup),
        "delta": c.delta,
        "alexander": c.alexander,
        "polynomial_part": c.polynomial_part,
    })
}
