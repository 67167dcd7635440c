//! Command-line front end: validation, homology, local cohomology, and
//! duality certification over category or complex inputs.
//!
//! Exit codes: 0 for any mathematical verdict (certified or refuted is
//! data), 1 for malformed input, 2 for validation failures and unknown
//! selectors.

use clap::{Parser, Subcommand};
use dualcat::category::{FiniteCategory, RawCategory};
use dualcat::cmod::{ext, relative_ext, tor, CModule, GradedGroups, Variance};
use dualcat::corpus;
use dualcat::duality::{
    certify_generic, certify_simplicial, orientability, poincare_report, CheckStatus,
    DualityCertificate, DualityError, Verdict,
};
use dualcat::simplicial::{
    face_poset, local_cohomology, reduced_cohomology, LocalMethod, RawComplex, SimplicialComplex,
};
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "dualcat", version, about = "Duality-category certification over exact integer homological algebra")]
struct Cli {
    /// Emit machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Re-derive simplicial certificates through the generic engine and
    /// compare.
    #[arg(long, global = true)]
    cross_check: bool,
    /// Truncate printed degree tables at this degree.
    #[arg(long, global = true)]
    max_degree: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category or complex input and report its shape.
    Validate { input: String },
    /// Run a generator and print its JSON form (e.g. `torus7`,
    /// `sphere_boundary(3)`, `building_gl(3,2)`).
    Gen { spec: String },
    /// Homology and cohomology tables with constant coefficients.
    Homology {
        input: String,
        /// Reduced cohomology (complex inputs only).
        #[arg(long)]
        reduced: bool,
        /// Relative cohomology against the full subcategory on these
        /// comma-separated object identifiers.
        #[arg(long)]
        relative: Option<String>,
    },
    /// Local cohomology at a face, by one method or all three.
    Local {
        input: String,
        /// Comma-separated vertex names of the face.
        #[arg(long)]
        simplex: String,
        /// link | pair | ext | all
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Certify or refute the duality-category property.
    Certify { input: String },
    /// Orientability and the Poincaré pairing table for a certified
    /// manifold-like complex.
    Poincare { input: String },
}

enum Failure {
    /// Malformed input: unreadable file, broken JSON, bad generator spec.
    Parse(String),
    /// Input parsed but failed validation, or an unknown selector.
    Validation(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Parse(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Validation(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

enum Input {
    Category(Arc<FiniteCategory>),
    Complex(SimplicialComplex),
}

fn load_input(text: &str) -> Result<Input, Failure> {
    if let Some(spec) = text.strip_prefix("gen:") {
        return match corpus::generate(spec) {
            Ok(corpus::Generated::Category(c)) => Ok(Input::Category(Arc::new(c))),
            Ok(corpus::Generated::Complex(c)) => Ok(Input::Complex(c)),
            Err(e) => Err(Failure::Parse(e.to_string())),
        };
    }
    let body = std::fs::read_to_string(text)
        .map_err(|e| Failure::Parse(format!("cannot read `{text}`: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&body)
        .map_err(|e| Failure::Parse(format!("`{text}` is not valid JSON: {e}")))?;
    if value.get("facets").is_some() {
        let raw: RawComplex = serde_json::from_value(value)
            .map_err(|e| Failure::Parse(format!("bad complex JSON: {e}")))?;
        let complex = SimplicialComplex::from_raw(&raw)
            .map_err(|e| Failure::Validation(e.to_string()))?;
        Ok(Input::Complex(complex))
    } else if value.get("morphisms").is_some() {
        let raw: RawCategory = serde_json::from_value(value)
            .map_err(|e| Failure::Parse(format!("bad category JSON: {e}")))?;
        let cat =
            FiniteCategory::validate(&raw).map_err(|e| Failure::Validation(e.to_string()))?;
        Ok(Input::Category(Arc::new(cat)))
    } else {
        Err(Failure::Parse(format!(
            "`{text}` is neither a complex (no \"facets\") nor a category (no \"morphisms\")"
        )))
    }
}

fn graded_lines(g: &GradedGroups, max_degree: Option<i64>) -> Vec<String> {
    let mut lines = Vec::new();
    for (d, grp) in g.iter() {
        if max_degree.is_some_and(|m| d > m) {
            continue;
        }
        lines.push(format!("  {d}: {grp}"));
    }
    if lines.is_empty() {
        lines.push("  (all groups trivial)".to_string());
    }
    lines
}

fn graded_json(g: &GradedGroups) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = g
        .iter()
        .map(|(d, grp)| (d.to_string(), serde_json::json!([grp.rank(), grp.torsion()])))
        .collect();
    serde_json::Value::Object(map)
}

fn face_poset_of(input: &Input) -> Arc<FiniteCategory> {
    match input {
        Input::Category(c) => c.clone(),
        Input::Complex(c) => Arc::new(face_poset(c)),
    }
}

fn run_validate(cli: &Cli, input: &str) -> Result<(), Failure> {
    match load_input(input)? {
        Input::Category(c) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "kind": "category",
                        "objects": c.object_count(),
                        "morphisms": c.morphism_count(),
                        "poset": c.is_poset(),
                    })
                );
            } else {
                println!("valid {c}");
                println!("poset: {}", c.is_poset());
            }
        }
        Input::Complex(c) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "kind": "complex",
                        "vertices": c.vertex_names().len(),
                        "faces": c.face_count(),
                        "dimension": c.dimension(),
                    })
                );
            } else {
                println!(
                    "valid complex: {} vertices, {} faces, dimension {}",
                    c.vertex_names().len(),
                    c.face_count(),
                    c.dimension()
                );
            }
        }
    }
    Ok(())
}

fn run_gen(spec: &str) -> Result<(), Failure> {
    match corpus::generate(spec).map_err(|e| Failure::Parse(e.to_string()))? {
        corpus::Generated::Category(c) => {
            let raw = c.to_raw();
            println!("{}", serde_json::to_string_pretty(&raw).unwrap());
        }
        corpus::Generated::Complex(c) => {
            let raw = c.to_raw();
            println!("{}", serde_json::to_string_pretty(&raw).unwrap());
        }
    }
    Ok(())
}

fn run_homology(
    cli: &Cli,
    input: &str,
    reduced: bool,
    relative: &Option<String>,
) -> Result<(), Failure> {
    let parsed = load_input(input)?;
    if reduced {
        let Input::Complex(c) = &parsed else {
            return Err(Failure::Validation(
                "--reduced requires a simplicial complex input".to_string(),
            ));
        };
        let h = reduced_cohomology(c);
        if cli.json {
            println!("{}", serde_json::json!({ "reduced_cohomology": graded_json(&h) }));
        } else {
            println!("reduced cohomology:");
            for line in graded_lines(&h, cli.max_degree) {
                println!("{line}");
            }
        }
        return Ok(());
    }
    let poset = face_poset_of(&parsed);
    let constant_left = CModule::constant(poset.clone(), Variance::Left);
    if let Some(selector) = relative {
        let ids: Vec<&str> = selector.split(',').map(str::trim).collect();
        let mut objects = BTreeSet::new();
        for id in &ids {
            let o = poset
                .obj_by_id(id)
                .ok_or_else(|| Failure::Validation(format!("unknown object `{id}`")))?;
            objects.insert(o);
        }
        let h = relative_ext(&poset, &objects, &constant_left)
            .map_err(|e| Failure::Validation(e.to_string()))?;
        if cli.json {
            println!("{}", serde_json::json!({ "relative_cohomology": graded_json(&h) }));
        } else {
            println!("relative cohomology H^*(C, C'; Z):");
            for line in graded_lines(&h, cli.max_degree) {
                println!("{line}");
            }
        }
        return Ok(());
    }
    let constant_right = CModule::constant(poset.clone(), Variance::Right);
    let homology = tor(&poset, &constant_right, &constant_left)
        .map_err(|e| Failure::Validation(e.to_string()))?;
    let cohomology = ext(&poset, &constant_left, &constant_left)
        .map_err(|e| Failure::Validation(e.to_string()))?;
    if cli.json {
        println!(
            "{}",
            serde_json::json!({
                "homology": graded_json(&homology),
                "cohomology": graded_json(&cohomology),
            })
        );
    } else {
        println!("homology H_*:");
        for line in graded_lines(&homology, cli.max_degree) {
            println!("{line}");
        }
        println!("cohomology H^*:");
        for line in graded_lines(&cohomology, cli.max_degree) {
            println!("{line}");
        }
    }
    Ok(())
}

fn run_local(cli: &Cli, input: &str, simplex: &str, method: &str) -> Result<(), Failure> {
    let Input::Complex(c) = load_input(input)? else {
        return Err(Failure::Validation("local cohomology requires a complex input".into()));
    };
    let names: Vec<String> = simplex.split(',').map(|s| s.trim().to_string()).collect();
    let face = c
        .face_by_names(&names)
        .map_err(|e| Failure::Validation(e.to_string()))?;
    let methods: Vec<(&str, LocalMethod)> = match method {
        "link" => vec![("link", LocalMethod::Link)],
        "pair" => vec![("pair", LocalMethod::Pair)],
        "ext" => vec![("ext", LocalMethod::Ext)],
        "all" => vec![
            ("link", LocalMethod::Link),
            ("pair", LocalMethod::Pair),
            ("ext", LocalMethod::Ext),
        ],
        other => {
            return Err(Failure::Validation(format!(
                "unknown method `{other}` (expected link, pair, ext, all)"
            )))
        }
    };
    let mut tables = Vec::new();
    for (name, m) in &methods {
        let h = local_cohomology(&c, &face, *m)
            .map_err(|e| Failure::Validation(e.to_string()))?;
        tables.push((*name, h));
    }
    let agreement = tables.windows(2).all(|w| w[0].1 == w[1].1);
    if cli.json {
        let map: serde_json::Map<String, serde_json::Value> = tables
            .iter()
            .map(|(name, h)| (name.to_string(), graded_json(h)))
            .collect();
        println!(
            "{}",
            serde_json::json!({
                "face": c.face_id(&face),
                "methods": map,
                "agreement": agreement,
            })
        );
    } else {
        println!("local cohomology at {}:", c.face_id(&face));
        for (name, h) in &tables {
            println!("method {name}:");
            for line in graded_lines(h, cli.max_degree) {
                println!("{line}");
            }
        }
        if methods.len() > 1 {
            println!("agreement: {}", if agreement { "yes" } else { "NO" });
        }
    }
    Ok(())
}

fn render_certificate(cli: &Cli, cert: &DualityCertificate) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&cert.to_json()).unwrap());
        return;
    }
    println!("verdict: {:?}", cert.verdict);
    if let Some(n) = cert.degree {
        println!("duality degree: {n}");
    }
    println!("bar length (pd bound): {}", cert.bar_length);
    if !cert.dualizing_values.is_empty() {
        println!("dualizing module values:");
        for (obj, g) in &cert.dualizing_values {
            println!("  {obj}: {g}");
        }
        println!("pointwise free: {}", cert.pointwise_free);
    }
    if !cert.witnesses.is_empty() {
        println!("witnesses:");
        for w in &cert.witnesses {
            println!("  {w:?}");
        }
    }
    if !cert.checks.is_empty() {
        println!("checks:");
        for (name, status) in &cert.checks {
            println!("  {name}: {status:?}");
        }
    }
}

fn run_certify(cli: &Cli, input: &str) -> Result<(), Failure> {
    match load_input(input)? {
        Input::Category(cat) => {
            let cert = certify_generic(&cat);
            render_certificate(cli, &cert);
        }
        Input::Complex(c) => {
            let mut cert = certify_simplicial(&c);
            if cli.cross_check {
                let poset = Arc::new(face_poset(&c));
                let generic = certify_generic(&poset);
                let same = generic.verdict == cert.verdict
                    && generic.degree == cert.degree
                    && generic.dualizing_values == cert.dualizing_values;
                cert.checks.insert(
                    "generic_cross_check".to_string(),
                    if same { CheckStatus::Pass } else { CheckStatus::Fail },
                );
            }
            render_certificate(cli, &cert);
            if cert.verdict == Verdict::Certified
                && cert.dualizing_values.values().all(|g| g.is_free_of_rank_one())
            {
                match orientability(&c, &cert) {
                    Ok(report) => {
                        if cli.json {
                            println!(
                                "{}",
                                serde_json::json!({
                                    "orientable": report.orientable,
                                    "top_homology": report.top_homology.to_string(),
                                    "constant_dualizing": report.constant_dualizing.is_constant(),
                                })
                            );
                        } else {
                            println!("orientable: {}", report.orientable);
                            println!(
                                "constant dualizing module: {}",
                                report.constant_dualizing.is_constant()
                            );
                        }
                    }
                    Err(e) => eprintln!("note: orientability unavailable: {e}"),
                }
            }
        }
    }
    Ok(())
}

fn run_poincare(cli: &Cli, input: &str) -> Result<(), Failure> {
    let Input::Complex(c) = load_input(input)? else {
        return Err(Failure::Validation("poincare requires a complex input".into()));
    };
    let cert = certify_simplicial(&c);
    if cert.verdict != Verdict::Certified {
        println!("verdict: {:?} -- no Poincaré table", cert.verdict);
        return Ok(());
    }
    match poincare_report(&c, &cert) {
        Ok(report) => {
            if cli.json {
                let rows: Vec<serde_json::Value> = report
                    .rows
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "degree": r.degree,
                            "homology": r.homology.to_string(),
                            "cohomology_complement": r.cohomology_complement.to_string(),
                            "matched": r.matched,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "dimension": report.dimension,
                        "rows": rows,
                        "all_match": report.all_match(),
                    })
                );
            } else {
                println!("Poincaré pairing (dimension {}):", report.dimension);
                for r in &report.rows {
                    println!(
                        "  H_{} = {}  ~  H^{} = {}  [{}]",
                        r.degree,
                        r.homology,
                        report.dimension - r.degree,
                        r.cohomology_complement,
                        if r.matched { "match" } else { "MISMATCH" }
                    );
                }
            }
        }
        Err(DualityError::NotOrientable) => {
            println!("not orientable -- no Poincaré table");
        }
        Err(e) => return Err(Failure::Validation(e.to_string())),
    }
    Ok(())
}

fn main() -> ExitCode {
    // Die quietly when the reader closes the pipe (e.g. `| head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { input } => run_validate(&cli, input),
        Command::Gen { spec } => run_gen(spec),
        Command::Homology { input, reduced, relative } => {
            run_homology(&cli, input, *reduced, relative)
        }
        Command::Local { input, simplex, method } => run_local(&cli, input, simplex, method),
        Command::Certify { input } => run_certify(&cli, input),
        Command::Poincare { input } => run_poincare(&cli, input),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
