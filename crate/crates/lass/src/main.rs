//! Command-line front-end: validate inputs, run the engine, render page
//! grids and verdicts.
//!
//! Exit codes: 0 success, 1 mathematical-precondition or verification
//! failure, 2 input/parse failure.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lass::catalog::{self, CatalogEntry, PayloadSpec};
use lass::ce::{ce_complex, LieAlgebra, LieAlgebraSpec, Representation, Subalgebra};
use lass::extension::AbelianExtension;
use lass::jets::{
    e1_invariant_check, jet_complex, linearisable_stabilization_check, JetSpec, PolyJetAlgebroid,
};
use lass::serre::hs_filtration;
use lass::spectral::Engine;

#[derive(Parser)]
#[command(name = "ss", about = "Exact spectral sequences for Lie algebra cohomology")]
struct Cli {
    /// Seed for any randomized re-checks (reproducibility).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Table,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Catalog name or path to a JSON input file.
    input: String,
    #[arg(long, value_enum, default_value = "table")]
    out: OutFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks: Jacobi, flatness, subalgebra closure, jet axioms.
    Check(CommonArgs),
    /// Betti numbers of the Chevalley-Eilenberg complex.
    Betti(CommonArgs),
    /// Spectral sequences.
    Ss {
        #[command(subcommand)]
        which: SsCommand,
    },
    /// Verify d₂ = (−1)^p i_[γ] for an abelian ideal.
    D2check(CommonArgs),
    /// Built-in instances.
    Catalog {
        #[command(subcommand)]
        which: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum SsCommand {
    /// Hochschild-Serre spectral sequence of a subalgebra.
    Hs {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of pages to print ("auto" = through stabilization).
        #[arg(long, default_value = "auto")]
        pages: String,
        /// Additionally run the E₁/E₂ identifications and the convergence
        /// check; nonzero exit on mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Jet spectral sequence of a polynomial algebroid at its fixed point.
    Jet {
        #[command(flatten)]
        common: CommonArgs,
        /// Jet truncation order (defaults to the instance's own order).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value = "auto")]
        pages: String,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show { name: String },
}

/// Anything the CLI can load: a bare Lie algebra, a Lie algebra with a
/// distinguished subalgebra, or a jet algebroid.
enum Input {
    Algebra(LieAlgebra, Representation),
    Hs(LieAlgebra, Subalgebra, Representation),
    Jet(PolyJetAlgebroid, Representation),
}

/// status-2 wrapper for everything that means "could not read the input".
struct ParseFailure(String);
/// status-1 wrapper for mathematical failures.
struct MathFailure(String);

enum Failure {
    Parse(ParseFailure),
    Math(MathFailure),
}

impl From<ParseFailure> for Failure {
    fn from(e: ParseFailure) -> Self {
        Failure::Parse(e)
    }
}

impl From<MathFailure> for Failure {
    fn from(e: MathFailure) -> Self {
        Failure::Math(e)
    }
}

fn math<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Math(MathFailure(e.to_string()))
}

/// JSON file payloads: either a full catalog entry, a Lie algebra spec with
/// an optional "subalgebra" index list, or a jet spec.
#[derive(serde::Deserialize)]
struct FileSpec {
    #[serde(default)]
    subalgebra: Option<Vec<usize>>,
    #[serde(flatten)]
    rest: serde_json::Value,
}

fn build_entry(entry: &CatalogEntry) -> Result<Input, Failure> {
    match &entry.payload {
        PayloadSpec::LieAlgebra(spec) => {
            let (g, v) = spec.build().map_err(math)?;
            Ok(Input::Algebra(g, v))
        }
        PayloadSpec::Hs { .. } => {
            let (g, h, v) = entry.hs().map_err(math)?;
            Ok(Input::Hs(g, h, v))
        }
        PayloadSpec::Jet(spec) => {
            let (a, v) = spec.build().map_err(math)?;
            Ok(Input::Jet(a, v))
        }
    }
}

fn load_input(input: &str) -> Result<Input, Failure> {
    if Path::new(input).exists() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| ParseFailure(format!("{input}: {e}")))?;
        // full catalog entry?
        if let Ok(entry) = serde_json::from_str::<CatalogEntry>(&text) {
            return build_entry(&entry);
        }
        let spec: FileSpec = serde_json::from_str(&text)
            .map_err(|e| ParseFailure(format!("{input}: line {}, column {}: {e}", e.line(), e.column())))?;
        if spec.rest.get("fiber_dim").is_some() {
            let jet: JetSpec = serde_json::from_value(spec.rest)
                .map_err(|e| ParseFailure(format!("{input}: {e}")))?;
            let (a, v) = jet.build().map_err(math)?;
            return Ok(Input::Jet(a, v));
        }
        let alg: LieAlgebraSpec = serde_json::from_value(spec.rest)
            .map_err(|e| ParseFailure(format!("{input}: {e}")))?;
        let (g, v) = alg.build().map_err(math)?;
        return match spec.subalgebra {
            Some(idx) => {
                let h = Subalgebra::from_indices(g.clone(), &idx).map_err(math)?;
                Ok(Input::Hs(g, h, v))
            }
            None => Ok(Input::Algebra(g, v)),
        };
    }
    let entry = catalog::load(input)
        .map_err(|e| ParseFailure(e.to_string()))?;
    build_entry(&entry)
}

fn page_grid(engine: &Engine<'_>, r: i64) -> Result<String, Failure> {
    let filtered = engine.filtered();
    let (lo, hi) = filtered.complex().window().unwrap_or((0, 0));
    let p_max = engine.p_bound();
    let q_min = lo - p_max;
    let q_max = hi;
    let mut out = String::new();
    out.push_str(&format!("E_{r}:\n"));
    let width = 4;
    out.push_str(&format!("{:>5}", "q\\p"));
    for p in 0..=p_max {
        out.push_str(&format!("{p:>width$}"));
    }
    out.push('\n');
    for q in (q_min..=q_max).rev() {
        let mut row = format!("{q:>5}");
        let mut any = false;
        for p in 0..=p_max {
            let d = engine.e_entry(r, p, q).map_err(math)?.dim();
            if d > 0 {
                any = true;
            }
            row.push_str(&format!("{d:>width$}"));
        }
        if any || (0..=q_max - q_min).count() <= 8 {
            out.push_str(&row);
            out.push('\n');
        }
    }
    if r >= 1 {
        for p in 0..=p_max {
            for q in q_min..=q_max {
                let rank = engine.d_r_matrix(r, p, q).map_err(math)?.rank();
                if rank > 0 {
                    out.push_str(&format!(
                        "  d_{r}: ({p},{q})->({},{}): rank {rank}\n",
                        p + r,
                        q - r + 1
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn run_ss(
    engine: &Engine<'_>,
    pages: &str,
    out: OutFormat,
) -> Result<(), Failure> {
    let report = engine.stabilization().map_err(math)?;
    let last = match pages {
        "auto" => report.r_star,
        n => n
            .parse::<i64>()
            .map_err(|_| ParseFailure(format!("bad --pages value {n:?}")))?,
    };
    match out {
        OutFormat::Table => {
            for r in 0..=last {
                print!("{}", page_grid(engine, r)?);
            }
            println!("stabilization page: {}", report.r_star);
        }
        OutFormat::Json => {
            let mut pages_json = Vec::new();
            for r in 0..=last {
                pages_json.push(engine.page(r).map_err(math)?.to_json());
            }
            println!(
                "{}",
                json!({ "pages": pages_json, "stabilization_page": report.r_star })
            );
        }
    }
    Ok(())
}

fn cmd_check(args: &CommonArgs) -> Result<(), Failure> {
    match load_input(&args.input)? {
        Input::Algebra(g, v) | Input::Hs(g, _, v) => {
            g.check_jacobi().map_err(math)?;
            v.check_flat(&g).map_err(math)?;
        }
        Input::Jet(a, v) => {
            a.check_axioms_mod().map_err(math)?;
            let (g0, _) = a.linearization();
            g0.check_jacobi().map_err(math)?;
            v.check_flat(&g0).map_err(math)?;
        }
    }
    println!("ok");
    Ok(())
}

fn cmd_betti(args: &CommonArgs) -> Result<(), Failure> {
    let (g, v) = match load_input(&args.input)? {
        Input::Algebra(g, v) | Input::Hs(g, _, v) => (g, v),
        Input::Jet(..) => {
            return Err(ParseFailure("betti expects a Lie algebra input".into()).into())
        }
    };
    let betti = ce_complex(&g, &v).map_err(math)?.betti_vector();
    match args.out {
        OutFormat::Table => println!(
            "{}",
            betti
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
        OutFormat::Json => println!("{}", json!({ "betti": betti })),
    }
    Ok(())
}

fn cmd_ss_hs(common: &CommonArgs, pages: &str, verify: bool) -> Result<(), Failure> {
    let Input::Hs(g, h, v) = load_input(&common.input)? else {
        return Err(ParseFailure("ss hs needs a subalgebra block".into()).into());
    };
    let inst = hs_filtration(&g, h, &v).map_err(math)?;
    inst.filtered().check_filtration().map_err(math)?;
    let engine = inst.engine();
    run_ss(&engine, pages, common.out)?;
    if verify {
        let n = g.dim() as i64;
        for p in 0..=n {
            for q in -n..=n {
                let verdict = inst.e1_identification(&engine, p, q).map_err(math)?;
                if !verdict.ok {
                    return Err(math(format!(
                        "E1 mismatch at ({p},{q}): engine {} vs oracle {}",
                        verdict.engine_dim, verdict.oracle_dim
                    )));
                }
            }
        }
        if inst.subalgebra().is_ideal().is_ok() {
            for p in 0..=n {
                for q in 0..=n {
                    let verdict = inst.e2_identification(&engine, p, q).map_err(math)?;
                    if !verdict.ok {
                        return Err(math(format!(
                            "E2 mismatch at ({p},{q}): engine {} vs oracle {}",
                            verdict.engine_dim, verdict.oracle_dim
                        )));
                    }
                }
            }
        }
        engine.convergence_check().map_err(math)?;
        engine.turn_page_check(1).map_err(math)?;
        println!("verify: all identifications and convergence checks pass");
    }
    Ok(())
}

fn cmd_ss_jet(
    common: &CommonArgs,
    order: Option<usize>,
    pages: &str,
    verify: bool,
) -> Result<(), Failure> {
    let Input::Jet(a, v) = load_input(&common.input)? else {
        return Err(ParseFailure("ss jet needs a jet algebroid input".into()).into());
    };
    let a = match order {
        Some(k) => a.with_order(k).map_err(math)?,
        None => a,
    };
    a.check_axioms_mod().map_err(math)?;
    let jc = jet_complex(&a, &v).map_err(math)?;
    let engine = jc.engine();
    run_ss(&engine, pages, common.out)?;
    if verify {
        for verdict in e1_invariant_check(&a, &v).map_err(math)? {
            if !verdict.ok {
                return Err(math(format!(
                    "E1 mismatch at ({},{}): engine {} vs oracle {}",
                    verdict.p, verdict.q, verdict.engine_dim, verdict.oracle_dim
                )));
            }
        }
        engine.convergence_check().map_err(math)?;
        if a.is_linear() {
            linearisable_stabilization_check(&a, &v).map_err(math)?;
        }
        println!("verify: all identifications and convergence checks pass");
    }
    Ok(())
}

/// Deterministic xorshift for the seeded splitting perturbation.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0.wrapping_add(0x9e3779b97f4a7c15);
        self.0 = x;
        x ^= x >> 30;
        x = x.wrapping_mul(0xbf58476d1ce4e5b9);
        x ^= x >> 27;
        x
    }

    fn small(&mut self) -> i64 {
        (self.next() % 7) as i64 - 3
    }
}

fn cmd_d2check(args: &CommonArgs, seed: Option<u64>) -> Result<(), Failure> {
    let Input::Hs(g, h, v) = load_input(&args.input)? else {
        return Err(ParseFailure("d2check needs a subalgebra block".into()).into());
    };
    let ext = AbelianExtension::new(&g, h.clone(), &v).map_err(math)?;
    let verdicts = ext.d2_check().map_err(math)?;
    match args.out {
        OutFormat::Table => {
            for v in &verdicts {
                println!(
                    "({},{}): engine rank {}, oracle rank {}, equal: {}",
                    v.pq[0], v.pq[1], v.engine_rank, v.oracle_rank, v.equal
                );
            }
        }
        OutFormat::Json => {
            println!("{}", serde_json::to_string(&verdicts).expect("serializable"));
        }
    }
    if let Some(seed) = seed {
        // class invariance under a random shifted splitting
        let mut rng = Rng(seed);
        let mut sigma =
            lass::exactq::ExactMatrix::identity(g.dim()).select_columns(&h.complement_indices());
        for c in 0..sigma.cols() {
            for t in 0..h.dim() {
                let mut col = h.basis().col(t);
                let factor = lass::exactq::qi(rng.small());
                for (r, entry) in col.iter_mut().enumerate() {
                    let bump = &*entry * &factor;
                    sigma.set(r, c, sigma.get(r, c) + bump);
                }
            }
        }
        let shifted =
            AbelianExtension::with_splitting(&g, h, &v, Some(sigma)).map_err(math)?;
        let same = shifted.extension_class().map_err(math)?.coords
            == ext.extension_class().map_err(math)?.coords;
        println!("seeded splitting shift: class invariant: {same}");
        if !same {
            return Err(math("extension class changed under a splitting shift"));
        }
    }
    if verdicts.iter().all(|v| v.equal) {
        Ok(())
    } else {
        Err(math("d2 mismatch"))
    }
}

fn cmd_catalog(which: &CatalogCommand) -> Result<(), Failure> {
    match which {
        CatalogCommand::List => {
            for name in catalog::list() {
                println!("{name}");
            }
        }
        CatalogCommand::Show { name } => {
            let entry = catalog::load(name).map_err(|e| ParseFailure(e.to_string()))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&entry).expect("serializable")
            );
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    // LASS_THREADS caps internal parallelism; the engine is pure and
    // currently single-threaded, so any value ≥ 1 is accepted as-is.
    if let Ok(raw) = std::env::var("LASS_THREADS") {
        let _threads: usize = raw
            .parse()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| ParseFailure(format!("bad LASS_THREADS value {raw:?}")))?;
    }
    match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Betti(args) => cmd_betti(args),
        Command::Ss { which } => match which {
            SsCommand::Hs {
                common,
                pages,
                verify,
            } => cmd_ss_hs(common, pages, *verify),
            SsCommand::Jet {
                common,
                order,
                pages,
                verify,
            } => cmd_ss_jet(common, *order, pages, *verify),
        },
        Command::D2check(args) => cmd_d2check(args, cli.seed),
        Command::Catalog { which } => cmd_catalog(which),
    }
}

fn main() -> ExitCode {
    // die quietly when the consumer of a pipe goes away (e.g. `| head`)
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(MathFailure(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(ParseFailure(msg))) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(2)
        }
    }
}

// keep the unused-import lint honest about BTreeMap usage in json! maps
#[allow(unused)]
fn _unused(_: BTreeMap<(), ()>) {}
