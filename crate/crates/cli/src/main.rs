use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use triple_arrays::affine::{
    build_partiteness_instance, count_derangement_solutions, derangements_from_partition, derangements_to_ta,
    solve_derangements, solve_partiteness, AffinePlaneContext,
};
use triple_arrays::arrays::{scan_quad_transpose, ArrayParams};
use triple_arrays::canon::{canonical_design, canonical_resolution, canonical_ta, canonical_uta, Canonical};
use triple_arrays::catalog::{self, FixtureObject};
use triple_arrays::constructions::{agrawal, family_ag, family_hadamard, family_pg3, paley, paley_parameters, ruta};
use triple_arrays::enumeration::{
    enumerate_extremal, enumerate_orderings, enumerate_resolvable, enumerate_rutas, enumerate_tas, Origin,
    UtaEnumeration,
};
use triple_arrays::ordering::{count_orderings, order_uta, OrderResult};
use triple_arrays::{params_for, BlockDesign, Resolution, TripleArray, Uta};

/// Triple arrays: parameters, constructions, orderings and enumeration.
#[derive(Parser)]
#[command(name = "triarray", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for the enumeration pipelines.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Accepted for script compatibility. Results never depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum Kind {
    Design,
    Designs,
    Resolution,
    Uta,
    Ta,
}

/// A file path or a bundled fixture id (optionally prefixed with `fixtures/`).
#[derive(Args, Clone)]
struct Input {
    source: String,
    /// Object kind; guessed from the extension and contents when absent.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Symbols and points in the file start at 1.
    #[arg(long)]
    one_based: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Derived parameters and admissibility of (r x c, v).
    Params { r: usize, c: usize, v: usize },
    /// Verify a design, resolution, UTA or triple array.
    Verify(Input),
    /// Build an object with one of the constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Search for a triple array with a given underlying UTA.
    Order {
        #[command(flatten)]
        input: Input,
        /// Count all labelled orderings instead of stopping at the first.
        #[arg(long)]
        count: bool,
        /// Search node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Isomorphism-class enumerations.
    #[command(subcommand)]
    Enumerate(Enumerate),
    /// Canonical key and automorphism group order.
    Canon(Input),
    /// Automorphism group order and generators.
    Aut(Input),
    /// Parameter sets quad-admissible in both orientations.
    ScanQuad {
        #[arg(long, default_value_t = 1000)]
        emax: usize,
        /// Also list the sets admissible in one orientation.
        #[arg(long)]
        list: bool,
    },
    /// Derangement form of the (q+1 x q^2, q(q+1)) ordering problem.
    Derange {
        q: usize,
        /// Affine plane of order q in the design format; AG(2,q) when absent.
        #[arg(long)]
        plane: Option<String>,
        /// Count all solutions.
        #[arg(long)]
        count: bool,
        /// Solve through the hypergraph partiteness reformulation.
        #[arg(long)]
        partiteness: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List bundled fixtures, or print one.
    Fixtures { id: Option<String> },
    /// Read a catalog of designs, verify every record and report duplicates.
    Ingest {
        path: PathBuf,
        /// Expected parameters as v,k,lambda.
        #[arg(long)]
        params: Option<String>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Extremal UTA from a symmetric design by removing a point.
    Agrawal {
        design: String,
        #[arg(long, default_value_t = 0)]
        sigma: usize,
        /// Which design of a multi-design file.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Resolvable UTA from a symmetric design and a resolution.
    Ruta {
        design: String,
        resolution: String,
        /// Comma-separated class order; identity when absent.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Paley triple array over GF(q); lists valid (a, b) when they are not given.
    Paley { q: usize, a: Option<u32>, b: Option<u32> },
    /// Resolvable UTA from the hyperplanes of AG(n, q).
    FamilyAg { q: usize, n: usize },
    /// Resolvable UTA from a symmetric 2-(4m-1, 2m-1, m-1) design.
    FamilyHadamard {
        design: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Resolvable UTA from a line packing of PG(3, q); bundled packing when absent.
    FamilyPg3 { q: usize, packing: Option<String> },
}

#[derive(Subcommand)]
enum Enumerate {
    /// Extremal UTA classes from a catalog of symmetric designs.
    Extremal {
        #[command(flatten)]
        designs: DesignSource,
    },
    /// Resolvable UTA classes over all class orders.
    Ruta { design: String, resolution: String },
    /// Triple-array classes of every extremal UTA, or of one UTA.
    Orderings {
        #[command(flatten)]
        designs: DesignSource,
        /// A single UTA instead of a design catalog.
        #[arg(long, conflicts_with_all = ["params", "designs"])]
        uta: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// The resolvable (7 x 15, 35) pipeline over the seven bundled parades.
    #[command(name = "resolvable-71535")]
    Resolvable71535 {
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Clone)]
struct DesignSource {
    /// Bundled catalog of symmetric 2-(v,k,lambda) designs, as v,k,lambda.
    #[arg(long)]
    params: Option<String>,
    /// Design catalog file or fixture id.
    #[arg(long)]
    designs: Option<String>,
}

struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }

    fn negative(text: String, json: Value) -> Self {
        Report { text, json, code: 1 }
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
    match run(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.text,
                Format::Structured => format!("{:#}\n", report.json),
            };
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Params { r, c, v } => cmd_params(*r, *c, *v),
        Command::Verify(input) => cmd_verify(input),
        Command::Construct(c) => cmd_construct(c),
        Command::Order { input, count, budget } => cmd_order(input, *count, *budget),
        Command::Enumerate(e) => cmd_enumerate(e, cli.threads),
        Command::Canon(input) => cmd_canon(input, false),
        Command::Aut(input) => cmd_canon(input, true),
        Command::ScanQuad { emax, list } => cmd_scan(*emax, *list),
        Command::Derange {
            q,
            plane,
            count,
            partiteness,
            budget,
        } => cmd_derange(*q, plane.as_deref(), *count, *partiteness, *budget),
        Command::Fixtures { id } => cmd_fixtures(id.as_deref()),
        Command::Ingest { path, params } => cmd_ingest(path, params.as_deref()),
    }
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize)> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("`{s}` is not a list of integers"))?;
    match parts.as_slice() {
        &[a, b, c] => Ok((a, b, c)),
        _ => bail!("expected three comma-separated integers, got `{s}`"),
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .with_context(|| format!("`{x}` is not an integer"))
        })
        .collect()
}

fn guess_kind(path: &str, text: &str) -> Result<Kind> {
    match Path::new(path).extension().and_then(|e| e.to_str()) {
        Some("ta") => return Ok(Kind::Ta),
        Some("uta") => return Ok(Kind::Uta),
        Some("res") => return Ok(Kind::Resolution),
        _ => {}
    }
    let content: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let Some(first) = content.first() else {
        bail!("{path}: empty input");
    };
    let header: Vec<usize> = first.split_whitespace().filter_map(|t| t.parse().ok()).collect();
    match header.as_slice() {
        &[_, b] => {
            if content.iter().any(|l| l.starts_with("classes")) {
                Ok(Kind::Resolution)
            } else if content.len() > b + 1 {
                Ok(Kind::Designs)
            } else {
                Ok(Kind::Design)
            }
        }
        &[r, c, _] if content.len() == r + c + 1 && r != c + 1 => Ok(Kind::Uta),
        &[r, _, _] if content.len() == r + 1 => Ok(Kind::Ta),
        &[r, c, _] if content.len() == r + c + 1 => Ok(Kind::Uta),
        _ => bail!("{path}: cannot tell the object kind, pass --kind"),
    }
}

fn parse_as(kind: Kind, text: &str, one_based: bool) -> triple_arrays::Result<FixtureObject> {
    Ok(match (kind, one_based) {
        (Kind::Ta, false) => FixtureObject::Ta(TripleArray::from_text(text)?),
        (Kind::Ta, true) => FixtureObject::Ta(TripleArray::from_text_one_based(text)?),
        (Kind::Uta, false) => FixtureObject::Uta(Uta::from_text(text)?),
        (Kind::Uta, true) => FixtureObject::Uta(Uta::from_text_one_based(text)?),
        (Kind::Design, _) => FixtureObject::Design(BlockDesign::from_text(text)?),
        (Kind::Designs, _) => FixtureObject::Designs(catalog::parse_designs(text, None)?.designs),
        (Kind::Resolution, _) => FixtureObject::Resolution(Resolution::from_text(text)?),
    })
}

fn load(input: &Input) -> Result<FixtureObject> {
    let src = input.source.as_str();
    if !Path::new(src).exists() {
        let id = src.strip_prefix("fixtures/").unwrap_or(src);
        if let Ok(f) = catalog::fixture(id) {
            return f.load().with_context(|| format!("fixture {id}"));
        }
        bail!("{src}: no such file or fixture");
    }
    let text = std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?;
    let kind = match input.kind {
        Some(k) => k,
        None => guess_kind(src, &text)?,
    };
    match parse_as(kind, &text, input.one_based) {
        Ok(obj) => Ok(obj),
        Err(first) if !input.one_based && matches!(kind, Kind::Ta | Kind::Uta) => {
            parse_as(kind, &text, true).map_err(|_| anyhow!("{src}: {first}"))
        }
        Err(e) => Err(anyhow!("{src}: {e}")),
    }
}

fn source(s: &str) -> Input {
    Input {
        source: s.to_string(),
        kind: None,
        one_based: false,
    }
}

fn load_design(s: &str, index: usize) -> Result<BlockDesign> {
    let ds = load(&source(s))?
        .into_designs()
        .ok_or_else(|| anyhow!("{s} is not a design"))?;
    let n = ds.len();
    ds.into_iter()
        .nth(index)
        .ok_or_else(|| anyhow!("{s} holds {n} designs, index {index} is out of range"))
}

fn load_resolution(s: &str) -> Result<Resolution> {
    load(&source(s))?
        .into_resolution()
        .ok_or_else(|| anyhow!("{s} is not a resolution"))
}

fn load_uta(s: &str) -> Result<Uta> {
    load(&source(s))?
        .into_uta()
        .ok_or_else(|| anyhow!("{s} is not a UTA or triple array"))
}

fn ratio(x: Option<num_rational::Rational64>) -> Value {
    match x {
        None => Value::Null,
        Some(x) if x.is_integer() => json!(x.to_integer()),
        Some(x) => json!(format!("{}/{}", x.numer(), x.denom())),
    }
}

fn params_json(p: &ArrayParams) -> Value {
    json!({
        "r": p.r, "c": p.c, "v": p.v,
        "e": ratio(Some(p.e)),
        "lambda_rr": ratio(p.lambda_rr),
        "lambda_cc": ratio(p.lambda_cc),
        "lambda_rrc": ratio(p.lambda_rrc),
        "k": ratio(Some(p.k)),
        "extremal": p.extremal,
        "non_trivial": p.non_trivial,
        "ta_admissible": p.ta_admissible,
        "quad_admissible": p.quad_admissible,
        "resolvable_admissible": p.resolvable_admissible,
    })
}

fn hist_json(h: &BTreeMap<BigUint, usize>) -> Value {
    Value::Array(
        h.iter()
            .map(|(a, n)| json!({"aut_order": a.to_string(), "classes": n}))
            .collect(),
    )
}

fn hist_text(h: &BTreeMap<BigUint, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(a, n)| format!("{a}:{n}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_params(r: usize, c: usize, v: usize) -> Result<Report> {
    let p = params_for(r, c, v)?;
    let text = format!("{}\n", p.summary());
    Ok(if p.ta_admissible {
        Report::ok(text, params_json(&p))
    } else {
        Report::negative(text, params_json(&p))
    })
}

fn uta_facts(u: &Uta, text: &mut String, json: &mut serde_json::Map<String, Value>) {
    let quad = u.is_quad();
    let res = u.detect_resolution();
    text.push_str(&format!("quad: {}\nresolvable: {}\n", quad, res.is_some()));
    json.insert("quad".into(), json!(quad));
    json.insert("resolvable".into(), json!(res.is_some()));
    if let Some(w) = res {
        json.insert("resolution_groups".into(), json!(w.groups));
    }
}

fn cmd_verify(input: &Input) -> Result<Report> {
    let obj = load(input)?;
    let mut text = String::new();
    let mut j = serde_json::Map::new();
    let verdict = match &obj {
        FixtureObject::Design(d) => design_verdict(d, &mut text, &mut j),
        FixtureObject::Designs(ds) => {
            let mut all = Ok(());
            for (i, d) in ds.iter().enumerate() {
                text.push_str(&format!("design {i}: "));
                let mut sub = serde_json::Map::new();
                if let Err(e) = design_verdict(d, &mut text, &mut sub) {
                    all = Err(format!("design {i}: {e}"));
                }
            }
            j.insert("designs".into(), json!(ds.len()));
            all
        }
        FixtureObject::Resolution(r) => {
            let p = r.design().verify_2design();
            text.push_str(&format!("resolution with {} parallel classes\n", r.num_classes()));
            j.insert("classes".into(), json!(r.num_classes()));
            p.map(|_| ()).map_err(|e| e.to_string())
        }
        FixtureObject::Uta(u) => match u.verify() {
            Ok(p) => {
                text.push_str(&format!("valid UTA {}\n", p.summary()));
                j.insert("params".into(), params_json(&p));
                uta_facts(u, &mut text, &mut j);
                Ok(())
            }
            Err(e) => Err(e.to_string()),
        },
        FixtureObject::Ta(t) => match t.verify() {
            Ok(p) => {
                text.push_str(&format!("valid triple array {}\n", p.summary()));
                j.insert("params".into(), params_json(&p));
                uta_facts(&t.uta()?, &mut text, &mut j);
                Ok(())
            }
            Err(e) => Err(e.to_string()),
        },
    };
    Ok(match verdict {
        Ok(()) => {
            j.insert("valid".into(), json!(true));
            Report::ok(text, Value::Object(j))
        }
        Err(e) => {
            text.push_str(&format!("not verified: {e}\n"));
            j.insert("valid".into(), json!(false));
            j.insert("reason".into(), json!(e));
            Report::negative(text, Value::Object(j))
        }
    })
}

fn design_verdict(
    d: &BlockDesign,
    text: &mut String,
    j: &mut serde_json::Map<String, Value>,
) -> std::result::Result<(), String> {
    match d.verify_2design() {
        Ok(p) => {
            text.push_str(&format!(
                "2-({},{},{}) design, b={} r={} symmetric={}\n",
                p.v,
                p.k,
                p.lambda,
                p.b,
                p.r,
                p.is_symmetric()
            ));
            j.insert(
                "params".into(),
                json!({"v": p.v, "b": p.b, "r": p.r, "k": p.k, "lambda": p.lambda}),
            );
            Ok(())
        }
        Err(e) => Err(e.to_string()),
    }
}

fn uta_report(u: &Uta) -> Result<Report> {
    let p = u.verify()?;
    let mut j = serde_json::Map::new();
    j.insert("params".into(), params_json(&p));
    j.insert("rows".into(), json!(u.row_sets()));
    j.insert("cols".into(), json!(u.col_sets()));
    Ok(Report::ok(u.to_text(), Value::Object(j)))
}

fn ta_report(t: &TripleArray) -> Result<Report> {
    let p = t.verify()?;
    let rows: Vec<&[usize]> = (0..t.r()).map(|i| t.row(i)).collect();
    Ok(Report::ok(
        t.to_text(),
        json!({"params": params_json(&p), "grid": rows}),
    ))
}

fn cmd_construct(c: &Construct) -> Result<Report> {
    match c {
        Construct::Agrawal { design, sigma, index } => uta_report(&agrawal(&load_design(design, *index)?, *sigma)?),
        Construct::Ruta {
            design,
            resolution,
            order,
            index,
        } => {
            let s = load_design(design, *index)?;
            let res = load_resolution(resolution)?;
            let order = match order {
                Some(o) => parse_list(o)?,
                None => (0..res.num_classes()).collect(),
            };
            uta_report(&ruta(&s, &res, &order)?)
        }
        Construct::Paley { q, a, b } => match (a, b) {
            (Some(a), Some(b)) => ta_report(&paley(*q, *a, *b)?),
            (None, None) => {
                let ps = paley_parameters(*q)?;
                let text: String = ps.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
                Ok(Report::ok(text, json!(ps)))
            }
            _ => bail!("give both a and b, or neither"),
        },
        Construct::FamilyAg { q, n } => uta_report(&family_ag(*q, *n)?),
        Construct::FamilyHadamard { design, index } => uta_report(&family_hadamard(&load_design(design, *index)?)?),
        Construct::FamilyPg3 { q, packing } => {
            let p = match packing {
                Some(s) => load_resolution(s)?,
                None => catalog::pg3_packing(*q)?,
            };
            uta_report(&family_pg3(*q, &p)?)
        }
    }
}

fn cmd_order(input: &Input, count: bool, budget: Option<u64>) -> Result<Report> {
    let u = load(input)?
        .into_uta()
        .ok_or_else(|| anyhow!("{} is not a UTA", input.source))?;
    u.verify()?;
    if count {
        let s = count_orderings(&u, budget)?;
        let j = json!({"orderings": s.solutions, "nodes": s.nodes, "complete": s.complete});
        let text = if s.complete {
            format!("{} labelled orderings ({} nodes)\n", s.solutions, s.nodes)
        } else {
            format!(
                "at least {} labelled orderings, budget exhausted after {} nodes\n",
                s.solutions, s.nodes
            )
        };
        return Ok(if s.complete && s.solutions > 0 {
            Report::ok(text, j)
        } else {
            Report::negative(text, j)
        });
    }
    Ok(match order_uta(&u, budget)? {
        OrderResult::Found(t) => ta_report(&t)?,
        OrderResult::Absent => Report::negative("no ordering exists\n".into(), json!({"ordering": null})),
        OrderResult::BudgetExhausted { nodes } => Report::negative(
            format!("budget exhausted after {nodes} nodes\n"),
            json!({"ordering": null, "budget_exhausted": true, "nodes": nodes}),
        ),
    })
}

fn designs_from(src: &DesignSource) -> Result<Vec<BlockDesign>> {
    match (&src.params, &src.designs) {
        (Some(p), None) => {
            let (v, k, l) = parse_triple(p)?;
            Ok(catalog::symmetric_designs(v, k, l)?)
        }
        (None, Some(s)) => load(&source(s))?
            .into_designs()
            .ok_or_else(|| anyhow!("{s} is not a design catalog")),
        _ => bail!("give exactly one of --params and --designs"),
    }
}

fn origin_text(o: &Origin) -> String {
    match o {
        Origin::Agrawal { design, sigma } => format!("design {design} point {sigma}"),
        Origin::Ruta { class_order } => format!("class order {class_order:?}"),
    }
}

fn uta_enum_report(en: &UtaEnumeration) -> (String, Value) {
    let mut text = format!(
        "{} UTA classes, aut histogram {}\n",
        en.classes.len(),
        hist_text(&en.histogram)
    );
    let mut classes = Vec::new();
    for c in &en.classes {
        let res = c.witness.is_resolvable();
        let quad = c.witness.is_quad();
        text.push_str(&format!(
            "{} aut={} hits={} quad={} resolvable={} from {}\n",
            c.key.to_hex(),
            c.aut_order,
            c.hits,
            quad,
            res,
            origin_text(&c.origin)
        ));
        classes.push(json!({
            "key": c.key.to_hex(),
            "aut_order": c.aut_order.to_string(),
            "hits": c.hits,
            "quad": quad,
            "resolvable": res,
            "origin": origin_text(&c.origin),
        }));
    }
    for check in &en.checks {
        text.push_str(&format!("check: {check}\n"));
    }
    (
        text,
        json!({"classes": classes, "histogram": hist_json(&en.histogram), "checks": en.checks}),
    )
}

fn cmd_enumerate(e: &Enumerate, threads: usize) -> Result<Report> {
    match e {
        Enumerate::Extremal { designs } => {
            let en = enumerate_extremal(&designs_from(designs)?, threads)?;
            let (text, j) = uta_enum_report(&en);
            Ok(Report::ok(text, j))
        }
        Enumerate::Ruta { design, resolution } => {
            let en = enumerate_rutas(&load_design(design, 0)?, &load_resolution(resolution)?, threads)?;
            let (text, j) = uta_enum_report(&en);
            Ok(Report::ok(text, j))
        }
        Enumerate::Orderings { designs, uta, budget } => {
            if let Some(u) = uta {
                let en = enumerate_tas(&load_uta(u)?, *budget)?;
                let mut text = format!(
                    "|Aut U|={} labelled orderings={} classes={} histogram {}{}\n",
                    en.uta_aut_order,
                    en.labelled,
                    en.classes.len(),
                    hist_text(&en.histogram),
                    if en.complete { "" } else { " (incomplete)" }
                );
                for c in &en.classes {
                    text.push_str(&format!("{} aut={} hits={}\n", c.key.to_hex(), c.aut_order, c.hits));
                }
                let j = json!({
                    "uta_aut_order": en.uta_aut_order.to_string(),
                    "labelled": en.labelled,
                    "complete": en.complete,
                    "classes": en.classes.iter().map(|c| json!({
                        "key": c.key.to_hex(), "aut_order": c.aut_order.to_string(), "hits": c.hits
                    })).collect::<Vec<_>>(),
                    "histogram": hist_json(&en.histogram),
                });
                return Ok(if en.complete {
                    Report::ok(text, j)
                } else {
                    Report::negative(text, j)
                });
            }
            let utas = enumerate_extremal(&designs_from(designs)?, threads)?;
            let rep = enumerate_orderings(&utas, threads, *budget)?;
            let mut text = format!(
                "{} UTA classes, {} triple-array classes, {} unorderable, histogram {}{}\n",
                utas.classes.len(),
                rep.total,
                rep.unorderable,
                hist_text(&rep.histogram),
                if rep.complete { "" } else { " (incomplete)" }
            );
            let mut per = Vec::new();
            for (c, t) in utas.classes.iter().zip(&rep.per_uta) {
                text.push_str(&format!(
                    "{} aut={} labelled={} classes={} histogram {}\n",
                    c.key.to_hex(),
                    c.aut_order,
                    t.labelled,
                    t.classes.len(),
                    hist_text(&t.histogram)
                ));
                per.push(json!({
                    "uta_key": c.key.to_hex(),
                    "uta_aut_order": c.aut_order.to_string(),
                    "labelled": t.labelled,
                    "classes": t.classes.len(),
                    "histogram": hist_json(&t.histogram),
                    "complete": t.complete,
                }));
            }
            let j = json!({
                "utas": utas.classes.len(),
                "tas": rep.total,
                "unorderable": rep.unorderable,
                "histogram": hist_json(&rep.histogram),
                "complete": rep.complete,
                "per_uta": per,
            });
            Ok(if rep.complete {
                Report::ok(text, j)
            } else {
                Report::negative(text, j)
            })
        }
        Enumerate::Resolvable71535 { budget } => {
            let fano = catalog::symmetric_designs(7, 3, 1)?.remove(0);
            let rep = enumerate_resolvable(&fano, &catalog::parades(), threads, *budget)?;
            let mut text = format!(
                "{} UTA classes, {} triple-array classes, {} unorderable\nUTA histogram {}\nTA histogram {}\n",
                rep.uta_total,
                rep.ta_total,
                rep.unorderable,
                hist_text(&rep.uta_histogram),
                hist_text(&rep.ta_histogram)
            );
            let mut per = Vec::new();
            for p in &rep.parades {
                text.push_str(&format!(
                    "parade {}: {} UTAs {} / {} TAs {}\n",
                    p.label,
                    p.utas.classes.len(),
                    hist_text(&p.utas.histogram),
                    p.tas.total,
                    hist_text(&p.tas.histogram)
                ));
                let profile: Vec<Value> = p
                    .utas
                    .classes
                    .iter()
                    .zip(&p.tas.per_uta)
                    .map(|(u, t)| {
                        json!({"uta_key": u.key.to_hex(), "uta_aut_order": u.aut_order.to_string(), "tas": t.classes.len()})
                    })
                    .collect();
                per.push(json!({
                    "label": p.label,
                    "utas": p.utas.classes.len(),
                    "tas": p.tas.total,
                    "uta_histogram": hist_json(&p.utas.histogram),
                    "ta_histogram": hist_json(&p.tas.histogram),
                    "profile": profile,
                }));
            }
            let j = json!({
                "utas": rep.uta_total,
                "tas": rep.ta_total,
                "unorderable": rep.unorderable,
                "uta_histogram": hist_json(&rep.uta_histogram),
                "ta_histogram": hist_json(&rep.ta_histogram),
                "parades": per,
            });
            Ok(Report::ok(text, j))
        }
    }
}

fn canonical_of(obj: &FixtureObject) -> Result<(&'static str, Canonical)> {
    Ok(match obj {
        FixtureObject::Design(d) => ("design", canonical_design(d)),
        FixtureObject::Designs(ds) if ds.len() == 1 => ("design", canonical_design(&ds[0])),
        FixtureObject::Designs(_) => bail!("several designs in one input, use `ingest`"),
        FixtureObject::Resolution(r) => ("resolution", canonical_resolution(r)),
        FixtureObject::Uta(u) => ("uta", canonical_uta(u)),
        FixtureObject::Ta(t) => ("ta", canonical_ta(t)),
    })
}

fn cmd_canon(input: &Input, generators: bool) -> Result<Report> {
    let obj = load(input)?;
    let (kind, c) = canonical_of(&obj)?;
    if generators {
        let mut text = format!("{kind} aut={}\n", c.aut_order);
        for g in &c.generators {
            let g: Vec<String> = g.iter().map(u32::to_string).collect();
            text.push_str(&format!("{}\n", g.join(" ")));
        }
        let j = json!({"kind": kind, "aut_order": c.aut_order.to_string(), "generators": c.generators});
        Ok(Report::ok(text, j))
    } else {
        let key = c.key.to_hex();
        let text = format!("{kind} {key} aut={}\n", c.aut_order);
        Ok(Report::ok(
            text,
            json!({"kind": kind, "key": key, "aut_order": c.aut_order.to_string()}),
        ))
    }
}

fn cmd_scan(emax: usize, list: bool) -> Result<Report> {
    let scan = scan_quad_transpose(emax);
    let mut text = format!(
        "e <= {emax}: {} quad-admissible sets, {} admissible in both orientations\n",
        scan.one_orientation.len(),
        scan.both_orientations.len()
    );
    for p in &scan.both_orientations {
        text.push_str(&format!("both: {}\n", p.summary()));
    }
    if list {
        for p in &scan.one_orientation {
            text.push_str(&format!("{}\n", p.summary()));
        }
    }
    let mut j = json!({
        "emax": emax,
        "one_orientation": scan.one_orientation.len(),
        "both_orientations": scan.both_orientations.iter().map(params_json).collect::<Vec<_>>(),
    });
    if list {
        j["sets"] = Value::Array(scan.one_orientation.iter().map(params_json).collect());
    }
    Ok(Report::ok(text, j))
}

fn cmd_derange(q: usize, plane: Option<&str>, count: bool, partiteness: bool, budget: Option<u64>) -> Result<Report> {
    let ctx = match plane {
        Some(p) => AffinePlaneContext::new(load_design(p, 0)?)?,
        None => AffinePlaneContext::galois(q)?,
    };
    if ctx.q() != q {
        bail!("the plane has order {}, not {q}", ctx.q());
    }
    if count {
        let s = count_derangement_solutions(&ctx, budget);
        let text = format!(
            "{}{} solutions ({} nodes)\n",
            if s.complete { "" } else { "at least " },
            s.solutions,
            s.nodes
        );
        let j = json!({"solutions": s.solutions, "nodes": s.nodes, "complete": s.complete});
        return Ok(if s.complete && s.solutions > 0 {
            Report::ok(text, j)
        } else {
            Report::negative(text, j)
        });
    }
    let (found, nodes, exhausted) = if partiteness {
        let inst = build_partiteness_instance(&ctx);
        let (part, stats) = solve_partiteness(&ctx, &inst, budget)?;
        let d = part.map(|p| derangements_from_partition(&inst, &p)).transpose()?;
        (d, stats.nodes, stats.budget_exhausted)
    } else {
        let (d, stats) = solve_derangements(&ctx, budget);
        (d, stats.nodes, stats.budget_exhausted)
    };
    match found {
        Some(d) => {
            let t = derangements_to_ta(&ctx, &d)?;
            let mut r = ta_report(&t)?;
            r.text = format!("# {nodes} nodes\n{}", r.text);
            r.json["derangements"] = json!(d);
            r.json["nodes"] = json!(nodes);
            Ok(r)
        }
        None if exhausted => Ok(Report::negative(
            format!("budget exhausted after {nodes} nodes\n"),
            json!({"solution": null, "budget_exhausted": true, "nodes": nodes}),
        )),
        None => Ok(Report::negative(
            format!("no solution ({nodes} nodes)\n"),
            json!({"solution": null, "nodes": nodes}),
        )),
    }
}

fn cmd_fixtures(id: Option<&str>) -> Result<Report> {
    match id {
        None => {
            let ids = catalog::list_fixtures();
            let text: String = ids.iter().map(|i| format!("{i}\n")).collect();
            Ok(Report::ok(text, json!(ids)))
        }
        Some(id) => {
            let f = catalog::fixture(id)?;
            f.load()?;
            Ok(Report::ok(
                f.text().to_string(),
                json!({"id": f.id, "kind": format!("{:?}", f.kind), "text": f.text()}),
            ))
        }
    }
}

fn cmd_ingest(path: &Path, params: Option<&str>) -> Result<Report> {
    let expected = params.map(parse_triple).transpose()?;
    let ing = catalog::ingest_designs(path, expected)?;
    let distinct = ing.designs.len() - ing.duplicates.len();
    let mut text = format!("{} designs, {} isomorphism classes\n", ing.designs.len(), distinct);
    for (a, b) in &ing.duplicates {
        text.push_str(&format!("duplicate: design {b} is isomorphic to design {a}\n"));
    }
    let j = json!({
        "designs": ing.designs.len(),
        "classes": distinct,
        "keys": ing.keys.iter().map(|k| k.to_hex()).collect::<Vec<_>>(),
        "duplicates": ing.duplicates,
    });
    Ok(Report::ok(text, j))
}
