//! `qudit-msd`: command-line front end for the distillation simulator.

mod manifest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qudit_msd::code::{random_code, StabilizerCode};
use qudit_msd::dense::CMatrix;
use qudit_msd::distill::{
    distill_exact, distill_mc, nu_sweep, verify_bound_gap, DistillError, PRNG_NAME,
};
use qudit_msd::io::{
    canonical_to_json, code_to_json, distillation_to_json, fmt_real, parse_code, parse_state,
    sweep_to_csv, witness_to_json, IoError, StateFile,
};
use qudit_msd::witness::{
    build_graph, max_independent_set, projector_sum, witness_from_sigma, MisResult,
};
use qudit_msd::zd::Prime;

use manifest::Manifest;

/// Largest `d` the graph command will build.
const GRAPH_MAX_D: u32 = 5;

#[derive(Parser)]
#[command(
    name = "qudit-msd",
    version,
    about = "Qudit magic state distillation in discrete phase space"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "QUDIT_MSD_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Write the result here instead of stdout; a manifest goes next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Explicit manifest path.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Exact,
    Mc,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form of a code and whether it is trivial.
    Canonicalize {
        code_file: PathBuf,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Run one stabilizer reduction on an i.i.d. input state.
    Distill {
        code_file: PathBuf,
        state_file: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        engine: Engine,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep the nu-family through a code and tabulate nu_out.
    Sweep {
        code_file: PathBuf,
        #[arg(long, value_parser = parse_face, default_value = "0,0")]
        face: (u32, u32),
        #[arg(long, default_value_t = -0.25, allow_negative_numbers = true)]
        nu_min: f64,
        #[arg(long, default_value_t = 0.75, allow_negative_numbers = true)]
        nu_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the contextuality witness on a single-qudit state.
    Witness {
        state_file: PathBuf,
        #[arg(long, value_parser = parse_face, default_value = "0,0")]
        face: (u32, u32),
        /// Ancilla state (defaults to maximally mixed).
        #[arg(long)]
        ancilla: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Check that random codes have a positive gap exactly when nontrivial.
    Theorem2 {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        codes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Build the exclusivity graph, export it and optionally solve for its
    /// independence number.
    Graph {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, value_parser = parse_face, default_value = "0,0")]
        face: (u32, u32),
        /// DIMACS output path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        solve_mis: bool,
        /// Solver budget in seconds.
        #[arg(long, default_value_t = 600)]
        budget: u64,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

fn parse_face(s: &str) -> Result<(u32, u32), String> {
    let (u, v) = s.split_once(',').ok_or("expected u,v")?;
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad face coordinate {t:?}: {e}"))
    };
    Ok((parse(u)?, parse(v)?))
}

/// Failure with its process exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::input(e)
    }
}

impl From<DistillError> for Failure {
    fn from(e: DistillError) -> Self {
        let code = match e {
            DistillError::ZeroAcceptance(_) => 3,
            DistillError::NegativeInput { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<StabilizerCode, Failure> {
    let code =
        parse_code(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    code.validate()
        .map_err(|e| Failure::input(format!("{}: invalid code: {e}", path.display())))?;
    Ok(code)
}

fn load_state(path: &Path) -> Result<StateFile, Failure> {
    parse_state(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn prime(d: u32) -> Result<Prime, Failure> {
    Prime::new(d).map_err(Failure::input)
}

/// Writes `text` to `--out` or stdout, then the manifest.
fn emit(text: &str, output: &Output, mut manifest: Manifest) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            manifest.add_output(path, text.as_bytes());
        }
        None => {
            print!("{text}");
            manifest.add_output(Path::new("-"), text.as_bytes());
        }
    }
    let target = output
        .manifest
        .clone()
        .or_else(|| output.out.as_ref().map(|p| manifest::sidecar(p)));
    if let Some(path) = target {
        manifest
            .write(&path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn canonicalize(
    code_file: &Path,
    json: bool,
    output: &Output,
    manifest: Manifest,
) -> Result<(), Failure> {
    let code = load_code(code_file)?;
    let canon = code.canonicalize().map_err(Failure::input)?;
    let text = if json {
        canonical_to_json(&canon) + "\n"
    } else {
        let rows = |m: &qudit_msd::ZdMatrix| {
            let r: Vec<String> = (0..m.rows()).map(|i| format!("{:?}", m.row(i))).collect();
            format!("[{}]", r.join(", "))
        };
        format!(
            "n: {}\nm: {}\nA: {}\nB: {}\nC: {}\nvecA: {:?}\nvecB: {:?}\nvecC: {:?}\npermutation: {:?}\nsyndrome: {:?}\ntrivial: {}\n",
            canon.n,
            canon.m,
            rows(&canon.a),
            rows(&canon.b),
            rows(&canon.c),
            canon.vec_a.as_slice(),
            canon.vec_b.as_slice(),
            canon.vec_c.as_slice(),
            canon.column_permutation,
            canon.syndrome.as_slice(),
            canon.is_trivial()
        )
    };
    emit(&text, output, manifest)
}

fn distill(
    code_file: &Path,
    state_file: &Path,
    engine: Engine,
    samples: u64,
    seed: u64,
    output: &Output,
    mut manifest: Manifest,
) -> Result<(), Failure> {
    let code = load_code(code_file)?;
    let w = load_state(state_file)?.wigner()?;
    let text = match engine {
        Engine::Exact => distillation_to_json(&distill_exact(&code, &w)?, "exact", None),
        Engine::Mc => {
            manifest.set_seed(seed);
            manifest.set("prng", PRNG_NAME);
            let mc = distill_mc(&code, &w, samples, seed)?;
            distillation_to_json(&mc.result, "mc", Some((mc.samples, mc.accepted)))
        }
    };
    emit(&(text + "\n"), output, manifest)
}

fn sweep(
    code_file: &Path,
    face: (u32, u32),
    range: (f64, f64),
    steps: usize,
    output: &Output,
    manifest: Manifest,
) -> Result<(), Failure> {
    if steps < 2 {
        return Err(Failure::input("--steps must be at least 2"));
    }
    let code = load_code(code_file)?;
    let (lo, hi) = range;
    let grid: Vec<f64> = (0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect();
    let points = nu_sweep(&code, face, &grid)?;
    emit(&sweep_to_csv(&points), output, manifest)
}

fn witness(
    state_file: &Path,
    face: (u32, u32),
    ancilla: Option<&Path>,
    output: &Output,
    manifest: Manifest,
) -> Result<(), Failure> {
    let state = load_state(state_file)?;
    let d = state.modulus();
    let rho = state.density()?;
    if rho.rows() != d.as_usize() {
        return Err(Failure::input("the witness needs a single-qudit state"));
    }
    let sigma = match ancilla {
        Some(path) => {
            let anc = load_state(path)?;
            if anc.modulus() != d {
                return Err(Failure::input("ancilla dimension differs from the state's"));
            }
            anc.density()?
        }
        None => CMatrix::identity(d.as_usize()).scale_real(1.0 / d.get() as f64),
    };
    if sigma.rows() != d.as_usize() {
        return Err(Failure::input("the ancilla must be a single-qudit state"));
    }
    let face = (face.0 % d.get(), face.1 % d.get());
    let report = witness_from_sigma(&projector_sum(d, face.0, face.1), &rho, &sigma, d, face);
    emit(&(witness_to_json(&report) + "\n"), output, manifest)
}

fn theorem2(
    d: u32,
    n_max: usize,
    codes: u64,
    seed: u64,
    output: &Output,
    mut manifest: Manifest,
) -> Result<(), Failure> {
    let d = prime(d)?;
    if n_max < 2 {
        return Err(Failure::input("--n-max must be at least 2"));
    }
    manifest.set_seed(seed);
    let mut text = String::from("digest,N,trivial,min_gap\n");
    let mut failures = 0;
    for k in 0..codes {
        let n = 2 + (k as usize % (n_max - 1));
        let code = random_code(d, n, seed.wrapping_add(k)).map_err(Failure::input)?;
        let trivial = code.is_trivial().map_err(Failure::input)?;
        let mut min_gap = f64::INFINITY;
        for u in 0..d.get() {
            for v in 0..d.get() {
                min_gap = min_gap.min(verify_bound_gap::<f64>(&code, (u, v))?);
            }
        }
        let ok = if trivial {
            min_gap.abs() <= 1e-12
        } else {
            min_gap > 0.0
        };
        failures += usize::from(!ok);
        let digest = &manifest::sha256_hex(code_to_json(&code).as_bytes())[..16];
        text.push_str(&format!("{digest},{n},{trivial},{}\n", fmt_real(min_gap)));
    }
    text.push_str(&format!(
        "# codes: {codes}, dichotomy failures: {failures}\n"
    ));
    emit(&text, output, manifest)?;
    if failures > 0 {
        return Err(Failure {
            code: 4,
            message: format!("{failures} codes break the trivial/zero-gap dichotomy"),
        });
    }
    Ok(())
}

fn graph(
    d: u32,
    face: (u32, u32),
    out: Option<&Path>,
    solve: bool,
    budget: u64,
    manifest_path: Option<&Path>,
    mut manifest: Manifest,
) -> Result<(), Failure> {
    if d > GRAPH_MAX_D {
        return Err(Failure::input(format!(
            "graph construction is limited to d <= {GRAPH_MAX_D}"
        )));
    }
    let d = prime(d)?;
    let g = build_graph(d, face.0, face.1);
    let mut text = format!("vertices: {}, edges: {}\n", g.num_vertices(), g.num_edges());
    if let Some(path) = out {
        let dimacs = g.to_dimacs();
        fs::write(path, &dimacs).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        manifest.add_output(path, dimacs.as_bytes());
    }
    if solve {
        match max_independent_set(g.num_vertices(), &g.edges, Duration::from_secs(budget)) {
            MisResult::Exact(cert) => text.push_str(&format!(
                "independence_number: {}\ncertificate: {:?}\n",
                cert.len(),
                cert
            )),
            MisResult::TimedOut(best) => text.push_str(&format!(
                "independence_number: >= {} (timed out after {budget} s)\ncertificate: {:?}\n",
                best.len(),
                best
            )),
        }
    }
    print!("{text}");
    manifest.add_output(Path::new("-"), text.as_bytes());
    let target = manifest_path
        .map(Path::to_path_buf)
        .or_else(|| out.map(manifest::sidecar));
    if let Some(path) = target {
        manifest
            .write(&path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::input(format!("cannot start {n} threads: {e}")))?;
    }
    let manifest = Manifest::start(std::env::args().collect(), cli.threads);
    match &cli.command {
        Command::Canonicalize {
            code_file,
            json,
            output,
        } => canonicalize(code_file, *json, output, manifest),
        Command::Distill {
            code_file,
            state_file,
            engine,
            samples,
            seed,
            output,
        } => distill(
            code_file, state_file, *engine, *samples, *seed, output, manifest,
        ),
        Command::Sweep {
            code_file,
            face,
            nu_min,
            nu_max,
            steps,
            output,
        } => sweep(
            code_file,
            *face,
            (*nu_min, *nu_max),
            *steps,
            output,
            manifest,
        ),
        Command::Witness {
            state_file,
            face,
            ancilla,
            output,
        } => witness(state_file, *face, ancilla.as_deref(), output, manifest),
        Command::Theorem2 {
            d,
            n_max,
            codes,
            seed,
            output,
        } => theorem2(*d, *n_max, *codes, *seed, output, manifest),
        Command::Graph {
            d,
            face,
            out,
            solve_mis,
            budget,
            manifest: path,
        } => graph(
            *d,
            *face,
            out.as_deref(),
            *solve_mis,
            *budget,
            path.as_deref(),
            manifest,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
