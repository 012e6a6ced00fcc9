//! `cellstrat`: exact computations in partition and Brauer diagram algebras.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 on success or a
//! verified check, 1 on a verification failure, 2 on usage errors, 3 when a
//! size cap is exceeded. Output is byte-identical for identical
//! configurations, independent of `--jobs`.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cellstrat_core::algebra::AlgebraElement;
use cellstrat_core::decompose::{
    decompose_uv, render_restriction_body, render_uv_body, wrap_report, ClassEntry,
    RestrictionBodyJson, RestrictionDecomposition, UvBodyJson,
};
use cellstrat_core::delta::DeltaValue;
use cellstrat_core::diagram::{enumerate_basis, parse_diagram};
use cellstrat_core::oracle::{corrupt_claim, verify_decomposition, verify_full_restriction};
use cellstrat_core::partial::parse_partial;
use cellstrat_core::perm::Composition;
use cellstrat_core::stabilizer::class_representatives;
use cellstrat_core::stratify::{idempotent, verify_stratification, Algebra};
use cellstrat_core::{Caps, Error};

#[derive(Parser)]
#[command(name = "cellstrat", version, about = "Exact diagram-algebra computations", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for class-level parallelism.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Cap overrides as `name=value`, comma separated
    /// (basis, coset, group, matrix, action). The environment variable
    /// CELLSTRAT_CAPS is applied first.
    #[arg(long, global = true)]
    caps: Option<String>,
}

#[derive(Args)]
struct Instance {
    /// Ambient number of dots per row.
    #[arg(long)]
    r: usize,
    /// Target layer of the restriction.
    #[arg(long)]
    n: usize,
    /// Source layer of the induction.
    #[arg(long)]
    l: usize,
    /// Composition of l, e.g. `7,2`.
    #[arg(long)]
    lambda: String,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two diagrams (or specialize δ first).
    Multiply {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "symbolic")]
        delta: String,
    },
    /// List the diagram basis of P(r) or its Brauer subalgebra.
    Basis {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        brauer: bool,
    },
    /// Print a layer idempotent.
    Idempotent {
        #[arg(long, default_value = "partition")]
        algebra: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value = "symbolic")]
        delta: String,
    },
    /// Run every stratification check for one algebra and size.
    VerifyStratification {
        #[arg(long, default_value = "partition")]
        algebra: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "symbolic")]
        delta: String,
    },
    /// List the equivalence classes of labelled rows in V_n^l.
    PartialClasses {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
    },
    /// Decompose the slice generated by one labelled row.
    Decompose {
        #[command(flatten)]
        instance: Instance,
        /// The labelled row, e.g. `L{1}L{2}U{3,4}`.
        #[arg(long)]
        v: String,
    },
    /// Decompose the whole layer restriction, one slice per row class.
    DecomposeAll {
        #[command(flatten)]
        instance: Instance,
    },
    /// Check a decomposition against the linear-algebra character oracle.
    /// With `--v` a single slice is verified, without it the whole layer
    /// restriction.
    OracleCheck {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        v: Option<String>,
        /// Corrupt the claim first; the check must then fail.
        #[arg(long)]
        negative_control: bool,
    },
    /// Re-render a JSON report produced by decompose/decompose-all
    /// (`-` reads stdin).
    Report {
        input: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::default();
    if let Ok(env_caps) = std::env::var("CELLSTRAT_CAPS") {
        if let Err(e) = caps.apply_overrides(&env_caps) {
            eprintln!("error: CELLSTRAT_CAPS: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(spec) = &cli.caps {
        if let Err(e) = caps.apply_overrides(spec) {
            eprintln!("error: --caps: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli, &caps) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::SizeLimit { .. } | Error::OracleTooLarge { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn config_json(caps: &Caps, jobs: usize) -> serde_json::Value {
    json!({ "caps": caps, "jobs": jobs })
}

fn run(cli: &Cli, caps: &Caps) -> Result<u8, Error> {
    match &cli.command {
        Command::Multiply { r, x, y, delta } => {
            let delta = DeltaValue::parse(delta)?;
            let x = AlgebraElement::from_diagram(parse_diagram(*r, x)?);
            let y = AlgebraElement::from_diagram(parse_diagram(*r, y)?);
            let mut product = x.mul(&y)?;
            if let DeltaValue::Rational(q) = &delta {
                product = product.specialize(q)?;
            }
            if cli.json {
                println!("{}", product.to_json());
            } else {
                println!("{product}");
            }
            Ok(0)
        }
        Command::Basis { r, brauer } => {
            let basis = enumerate_basis(*r, *brauer, caps.basis)?;
            if cli.json {
                let diagrams: Vec<String> = basis.iter().map(|d| d.to_string()).collect();
                println!(
                    "{}",
                    json!({ "r": r, "brauer": brauer, "count": basis.len(), "diagrams": diagrams })
                );
            } else {
                for d in &basis {
                    println!("{d}");
                }
            }
            Ok(0)
        }
        Command::Idempotent { algebra, r, l, delta } => {
            let algebra = Algebra::parse(algebra)?;
            let delta = DeltaValue::parse(delta)?;
            let e = idempotent(algebra, *r, *l, &delta)?;
            if cli.json {
                println!("{}", e.to_json());
            } else {
                println!("{e}");
            }
            Ok(0)
        }
        Command::VerifyStratification { algebra, r, delta } => {
            let algebra = Algebra::parse(algebra)?;
            let delta = DeltaValue::parse(delta)?;
            let report = verify_stratification(algebra, *r, &delta, caps)?;
            if cli.json {
                println!(
                    "{}",
                    wrap_report(
                        "stratification",
                        serde_json::to_value(&report).expect("report serializes"),
                        config_json(caps, cli.jobs),
                    )
                );
            } else {
                print!("{}", render_stratification(&report));
            }
            Ok(if report.all_pass { 0 } else { 1 })
        }
        Command::PartialClasses { r, n, l } => {
            let classes = class_representatives(Algebra::Partition, *r, *n, *l, caps.basis)?;
            if cli.json {
                let rows: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|(sig, rep, size)| {
                        json!({
                            "signature": sig.entries.iter().map(|&(s, lab, c)| {
                                json!({"size": s, "labelled": lab, "count": c})
                            }).collect::<Vec<_>>(),
                            "representative": rep.to_string(),
                            "class_size": size,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({ "r": r, "n": n, "l": l, "classes": rows })
                );
            } else {
                for (sig, rep, size) in &classes {
                    println!("{sig}  representative {rep}  size {size}");
                }
            }
            Ok(0)
        }
        Command::Decompose { instance, v } => {
            let lambda = Composition::parse(&instance.lambda)?;
            let v = parse_partial(instance.r, v)?;
            if v.labelled_count() != instance.n {
                return Err(Error::Invalid(format!(
                    "row has {} labelled parts, expected n={}",
                    v.labelled_count(),
                    instance.n
                )));
            }
            let uv = decompose_uv(&v, instance.l, &lambda, caps)?;
            if cli.json {
                println!(
                    "{}",
                    wrap_report(
                        "uv-decomposition",
                        serde_json::to_value(uv.to_body()).expect("body serializes"),
                        config_json(caps, cli.jobs),
                    )
                );
            } else {
                print!("{}", uv.render_text());
            }
            Ok(0)
        }
        Command::DecomposeAll { instance } => {
            let lambda = Composition::parse(&instance.lambda)?;
            let rd = decompose_all_parallel(
                instance.r,
                instance.n,
                instance.l,
                &lambda,
                caps,
                cli.jobs.max(1),
            )?;
            if cli.json {
                println!(
                    "{}",
                    wrap_report(
                        "restriction-decomposition",
                        serde_json::to_value(rd.to_body()).expect("body serializes"),
                        config_json(caps, cli.jobs),
                    )
                );
            } else {
                print!("{}", rd.render_text());
            }
            Ok(0)
        }
        Command::OracleCheck { instance, v, negative_control } => {
            let lambda = Composition::parse(&instance.lambda)?;
            let report = match v {
                Some(v) => {
                    let v = parse_partial(instance.r, v)?;
                    if v.labelled_count() != instance.n {
                        return Err(Error::Invalid(format!(
                            "row has {} labelled parts, expected n={}",
                            v.labelled_count(),
                            instance.n
                        )));
                    }
                    let mut claim = decompose_uv(&v, instance.l, &lambda, caps)?;
                    if *negative_control {
                        claim = corrupt_claim(&claim)?;
                    }
                    verify_decomposition(&claim, caps)?
                }
                None => {
                    if *negative_control {
                        return Err(Error::Invalid(
                            "--negative-control needs a single slice (--v)".into(),
                        ));
                    }
                    verify_full_restriction(instance.r, instance.n, instance.l, &lambda, caps)?
                }
            };
            if cli.json {
                println!(
                    "{}",
                    wrap_report(
                        "oracle-check",
                        serde_json::to_value(&report).expect("report serializes"),
                        config_json(caps, cli.jobs),
                    )
                );
            } else {
                print!("{}", report.render_text());
            }
            // A rejected corrupted claim is the expected outcome.
            let verified = if *negative_control { !report.ok } else { report.ok };
            Ok(if verified { 0 } else { 1 })
        }
        Command::Report { input } => {
            let text = if input == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(input)
                    .map_err(|e| Error::Parse(format!("reading {input}: {e}")))?
            };
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
            let kind = value
                .get("kind")
                .and_then(|k| k.as_str())
                .ok_or_else(|| Error::Parse("report has no `kind` field".into()))?;
            let body = value
                .get("report")
                .cloned()
                .ok_or_else(|| Error::Parse("report has no `report` field".into()))?;
            match kind {
                "uv-decomposition" => {
                    let body: UvBodyJson = serde_json::from_value(body)
                        .map_err(|e| Error::Parse(format!("bad uv report: {e}")))?;
                    print!("{}", render_uv_body(&body));
                }
                "restriction-decomposition" => {
                    let body: RestrictionBodyJson = serde_json::from_value(body)
                        .map_err(|e| Error::Parse(format!("bad restriction report: {e}")))?;
                    print!("{}", render_restriction_body(&body));
                }
                other => {
                    return Err(Error::Parse(format!("cannot render reports of kind `{other}`")))
                }
            }
            Ok(0)
        }
    }
}

/// Per-class parallel version of the full restriction decomposition; the
/// merged result is identical to the sequential one.
fn decompose_all_parallel(
    r: usize,
    n: usize,
    l: usize,
    lambda: &Composition,
    caps: &Caps,
    jobs: usize,
) -> Result<RestrictionDecomposition, Error> {
    if lambda.sum() != l {
        return Err(Error::Invalid(format!(
            "λ = {lambda} is not a composition of l = {l}"
        )));
    }
    let reps = if n <= l {
        class_representatives(Algebra::Partition, r, n, l, caps.basis)?
    } else {
        Vec::new()
    };
    let mut slots: Vec<Option<Result<ClassEntry, Error>>> = Vec::new();
    slots.resize_with(reps.len(), || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slot_cells: Vec<std::sync::Mutex<Option<Result<ClassEntry, Error>>>> =
        slots.into_iter().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(reps.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= reps.len() {
                    break;
                }
                let (sig, rep, class_size) = &reps[i];
                let entry = decompose_uv(rep, l, lambda, caps).map(|decomposition| ClassEntry {
                    signature: sig.clone(),
                    representative: rep.clone(),
                    class_size: *class_size,
                    decomposition,
                });
                *slot_cells[i].lock().expect("worker poisoned a slot") = Some(entry);
            });
        }
    });
    let mut classes = Vec::with_capacity(reps.len());
    for cell in slot_cells {
        let entry = cell
            .into_inner()
            .expect("worker poisoned a slot")
            .expect("every class slot is filled");
        classes.push(entry?);
    }
    let total_dimension = classes.iter().map(|c| c.decomposition.total_dimension).sum();
    Ok(RestrictionDecomposition {
        r,
        n,
        l,
        lambda: lambda.clone(),
        classes,
        total_dimension,
    })
}

fn render_stratification(report: &cellstrat_core::stratify::StratificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "stratification  algebra={} r={} delta={}\n",
        report.algebra, report.r, report.delta
    ));
    let yes = |b: bool| if b { "ok" } else { "FAIL" };
    out.push_str("idempotent laws:");
    for (l, ok) in &report.idempotent_laws.squares {
        out.push_str(&format!(" e{l}^2[{}]", yes(*ok)));
    }
    for (l, m, ok) in &report.idempotent_laws.pairs {
        out.push_str(&format!(" e{l}e{m}[{}]", yes(*ok)));
    }
    out.push('\n');
    for layer in &report.layers {
        out.push_str(&format!(
            "layer n={}: dim V_n = {}, layer dimension {}\n",
            layer.n, layer.dim_vn, layer.layer_dim
        ));
    }
    out.push_str(&format!(
        "graded dimension {} (expected {}) [{}]\n",
        report.total_dimension,
        report.expected_dimension,
        yes(report.grading_ok)
    ));
    for c in &report.compressed_corners {
        out.push_str(&format!(
            "corner l={}: graded {} expected {} [{}]\n",
            c.l,
            c.total,
            c.expected,
            yes(c.ok)
        ));
    }
    for (l, ok) in &report.splits.corner_split {
        out.push_str(&format!("split of corner algebra l={l}: {}\n", yes(*ok)));
    }
    for (n, l, ok) in &report.splits.ideal_split {
        out.push_str(&format!("split of ideal slice n={n} l={l}: {}\n", yes(*ok)));
    }
    for (n, l, ok) in &report.splits.layer_count {
        out.push_str(&format!("layer dimension count n={n} l={l}: {}\n", yes(*ok)));
    }
    if let Some(ok) = report.action_law {
        out.push_str(&format!("module action law: {}\n", yes(ok)));
    }
    out.push_str(&format!(
        "overall: {}\n",
        if report.all_pass { "PASS" } else { "FAIL" }
    ));
    out
}
