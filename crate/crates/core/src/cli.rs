//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or input error.
//! The worker count comes from `PCCSS_WORKERS`, overridden by `--workers`,
//! and defaults to the available parallelism.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::bounds::{channel_rate_curves, gv_curves, max_rate_gap};
use crate::bundle::Bundle;
use crate::channel::PauliChannel;
use crate::codes::{make_alternant, make_expander, make_random_gv, make_repetition, LinearCode};
use crate::css::{
    check_valid, distance_css, distance_stabilizer, fast_family, make_css, make_enlarged,
    make_pccss, FastFamily, Side, DEFAULT_DISTANCE_CAP, STABILIZER_DISTANCE_MAX_N,
};
use crate::decode::{
    bdd_alternant, exhaustive_decode, flip_decode, pccss_decode_x, pccss_decode_z, FlipMode,
    DEFAULT_MAX_ROUNDS,
};
use crate::galois::FieldSpec;
use crate::harness::{adversarial_sweep, run_trials_with, CodeSpec, ExperimentConfig, TrialRecord};
use crate::matgf::BitVec;
use crate::stabcirc::{build_encoder, verify_encoder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "PCCSS_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "pccss",
    version,
    about = "Partially concatenated CSS codes: construction, decoding, bounds and experiments"
)]
pub struct Cli {
    /// Worker threads (overrides PCCSS_WORKERS)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code and write its bundle
    Construct(ConstructArgs),
    /// Print the validity report of a bundle; exit 1 on violation
    Check { bundle: PathBuf },
    /// Certify minimum distances and record them in the bundle
    Distance {
        bundle: PathBuf,
        /// Largest nullspace dimension enumerated for CSS codes
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        cap: usize,
        /// Write the updated bundle here instead of in place
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decode a syndrome file (one element index per line)
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        syndrome: PathBuf,
        #[arg(long, value_enum)]
        decoder: DecoderKind,
        /// Decoding radius for the alternant decoder (default ⌊r/2⌋)
        #[arg(long)]
        t: Option<usize>,
        /// Round cap for flip decoding
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
        /// Concurrent ranges for Z-side decoding
        #[arg(long, default_value_t = 1)]
        partitions: usize,
        /// Recorded in the output row; all decoders are deterministic
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit the encoding circuit of a fast-family bundle with its size and depth
    EncodeCircuit {
        bundle: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Verify the circuit with the tableau simulator (N ≤ 64)
        #[arg(long)]
        verify: bool,
    },
    /// Emit rate curves as CSV
    Bounds {
        /// Hashing and PC-CSS channel rates against p
        #[arg(long, conflicts_with = "gv")]
        fig1: bool,
        /// Gilbert-Varshamov rates against relative distance
        #[arg(long)]
        gv: bool,
        #[arg(long, default_value_t = 100.0)]
        zeta: f64,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo logical error rates on a fast-family code
    Simulate(SimulateArgs),
    /// Correction rate against errors of fixed weight
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
    /// Output bundle (stdout when absent)
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// Repetition-inner PC-CSS code with an expander or repetition outer code
    Fast {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        n0: usize,
        #[arg(long, value_enum, default_value_t = OuterKind::Expander)]
        outer: OuterKind,
        #[arg(long, default_value_t = 3)]
        c: usize,
        #[arg(long, default_value_t = 6)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// PC-CSS code from an inner and an outer linear-code bundle
    Pccss {
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        outer: PathBuf,
    },
    /// CSS code from two linear-code bundles (Z checks from C1, X checks from C2)
    Css {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
    },
    /// Enlarged stabilizer code from a dual-containing code and an outer code
    Enlarged {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
    },
    /// Repetition code
    Repetition {
        #[arg(long)]
        n: usize,
    },
    /// Expander code from a random (c, d)-biregular graph
    Expander {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
        #[arg(long, default_value_t = 6)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Alternant code over GF(p^m0) from GF(p^(m0·m)) with evaluation points α^i
    Alternant {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m0: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: usize,
        /// Code length (default: all nonzero points)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Random code meeting the Gilbert-Varshamov distance target
    RandomGv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OuterKind {
    Expander,
    Rep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecoderKind {
    Exhaustive,
    Bdd,
    Flip,
    FlipParallel,
    PccssX,
    PccssZ,
}

#[derive(Args, Debug)]
pub struct FastSource {
    /// Fast-family bundle (instead of --N/--n0)
    #[arg(long, conflicts_with_all = ["n", "n0"])]
    pub bundle: Option<PathBuf>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub n0: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub c: usize,
    #[arg(long, default_value_t = 6)]
    pub d: usize,
    /// Seed of the outer expander graph
    #[arg(long, default_value_t = 0)]
    pub code_seed: u64,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: FastSource,
    #[arg(long)]
    pub p: f64,
    /// Asymmetry; `inf` gives pure dephasing
    #[arg(long, default_value_t = 1.0)]
    pub zeta: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub partitions: usize,
    /// Flip all majority-unsatisfied bits each round instead of one at a time
    #[arg(long)]
    pub parallel_flip: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    pub max_rounds: usize,
    /// Record decode wall-clock per trial
    #[arg(long)]
    pub timing: bool,
    /// Write only the summary block
    #[arg(long)]
    pub summary_only: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    X,
    Z,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: FastSource,
    #[arg(long, value_enum)]
    pub side: SideArg,
    #[arg(long, default_value_t = 1)]
    pub wmin: usize,
    #[arg(long)]
    pub wmax: usize,
    /// Random errors per weight when enumeration is too large
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.to_string(),
    }
}

type CliResult = Result<i32, Failure>;

/// Full help text of every command, in a stable order.
pub fn help_text() -> String {
    fn walk(cmd: &mut clap::Command, path: String, out: &mut String) {
        out.push_str(&format!("==== {path} ====\n"));
        out.push_str(&cmd.render_long_help().to_string());
        out.push('\n');
        let names: Vec<String> = cmd
            .get_subcommands()
            .map(|s| s.get_name().to_string())
            .collect();
        for name in names {
            if let Some(sub) = cmd.find_subcommand_mut(&name) {
                walk(sub, format!("{path} {name}"), out);
            }
        }
    }
    let mut cmd = Cli::command().term_width(100);
    cmd.build();
    let mut out = String::new();
    walk(&mut cmd, "pccss".into(), &mut out);
    out
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let workers = match cli.workers {
        Some(w) => Some(w),
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(w) => Some(w),
                Err(_) => {
                    eprintln!("error: {WORKERS_ENV} must be a positive integer, got `{v}`");
                    return EXIT_USAGE;
                }
            },
            Err(_) => None,
        },
    };
    if let Some(w) = workers {
        if w == 0 {
            eprintln!("error: worker count must be at least 1");
            return EXIT_USAGE;
        }
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_bundle(path: &Path) -> Result<Bundle, Failure> {
    Bundle::parse(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_linear(path: &Path) -> Result<LinearCode, Failure> {
    match read_bundle(path)? {
        Bundle::Linear(c) => Ok(c),
        other => Err(usage(format!(
            "{}: expected a linearcode bundle, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| usage(e.to_string()))
        }
    }
}

fn fast_from_source(src: &FastSource) -> Result<FastFamily, Failure> {
    if let Some(path) = &src.bundle {
        return match read_bundle(path)? {
            Bundle::Css(q) => {
                FastFamily::from_css(&q).map_err(|e| usage(format!("{}: {e}", path.display())))
            }
            other => Err(usage(format!(
                "{}: expected a fast-family csscode bundle, found {}",
                path.display(),
                other.kind()
            ))),
        };
    }
    let (n, n0) = match (src.n, src.n0) {
        (Some(n), Some(n0)) => (n, n0),
        _ => return Err(usage("give either --bundle or both --N and --n0")),
    };
    fast_family(n, n0, src.c, src.d, src.code_seed).map_err(usage)
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Construct(args) => construct(args),
        Command::Check { bundle } => check(&bundle),
        Command::Distance {
            bundle,
            cap,
            output,
        } => distance(&bundle, cap, output.as_deref()),
        Command::Decode {
            code,
            syndrome,
            decoder,
            t,
            max_rounds,
            partitions,
            seed,
        } => decode(&code, &syndrome, decoder, t, max_rounds, partitions, seed),
        Command::EncodeCircuit {
            bundle,
            output,
            verify,
        } => encode_circuit(&bundle, output.as_deref(), verify),
        Command::Bounds {
            fig1,
            gv,
            zeta,
            q,
            step,
            output,
        } => bounds(fig1, gv, zeta, q, step, output.as_deref()),
        Command::Simulate(args) => simulate(args),
        Command::Sweep(args) => sweep(args),
    }
}

fn construct(args: ConstructArgs) -> CliResult {
    let bundle = match args.kind {
        ConstructKind::Fast {
            n,
            n0,
            outer,
            c,
            d,
            seed,
        } => {
            let ff = match outer {
                OuterKind::Expander => fast_family(n, n0, c, d, seed).map_err(usage)?,
                OuterKind::Rep => {
                    if n0 < 2 || n % n0 != 0 {
                        return Err(usage(format!(
                            "n0 = {n0} must be at least 2 and divide N = {n}"
                        )));
                    }
                    let outer = make_repetition(n / n0).map_err(usage)?;
                    FastFamily::with_outer(n0, outer).map_err(usage)?
                }
            };
            Bundle::Css(ff.css().clone())
        }
        ConstructKind::Pccss { inner, outer } => {
            Bundle::Css(make_pccss(&read_linear(&inner)?, &read_linear(&outer)?).map_err(usage)?)
        }
        ConstructKind::Css { c1, c2 } => {
            let q = make_css(&read_linear(&c1)?, &read_linear(&c2)?).map_err(|e| Failure {
                code: EXIT_INVALID,
                message: e.to_string(),
            })?;
            Bundle::Css(q)
        }
        ConstructKind::Enlarged { c1, c2 } => Bundle::Stabilizer(
            make_enlarged(&read_linear(&c1)?, &read_linear(&c2)?).map_err(usage)?,
        ),
        ConstructKind::Repetition { n } => Bundle::Linear(make_repetition(n).map_err(usage)?),
        ConstructKind::Expander { n, c, d, seed } => {
            Bundle::Linear(make_expander(n, c, d, seed).map_err(usage)?)
        }
        ConstructKind::Alternant { p, m0, m, r, n } => {
            let ext = FieldSpec::new(p, m0, m).map_err(usage)?;
            let g = ext.primitive_element();
            let len = n.unwrap_or(ext.size() as usize - 1);
            if len == 0 || len > ext.size() as usize - 1 {
                return Err(usage(format!(
                    "length must be between 1 and {}",
                    ext.size() - 1
                )));
            }
            let a: Vec<u32> = (0..len as u64).map(|i| ext.pow(g, i)).collect();
            Bundle::Linear(make_alternant(&ext, &a, &a, r).map_err(usage)?)
        }
        ConstructKind::RandomGv { n, k, q, seed } => {
            Bundle::Linear(make_random_gv(n, k, q, seed).map_err(usage)?)
        }
    };
    emit(args.output.as_deref(), &bundle.to_string())?;
    Ok(EXIT_OK)
}

fn check(path: &Path) -> CliResult {
    match read_bundle(path)? {
        Bundle::Css(q) => {
            let report = check_valid(&q);
            println!("{report}");
            Ok(if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_INVALID
            })
        }
        Bundle::Linear(c) => match c.validate() {
            Ok(()) => {
                println!(
                    "linear code [{}, {}] over GF({}): valid",
                    c.n(),
                    c.k(),
                    c.q()
                );
                Ok(EXIT_OK)
            }
            Err(e) => {
                println!("INVALID: {e}");
                Ok(EXIT_INVALID)
            }
        },
        Bundle::Stabilizer(s) => {
            // parsing already enforced commutation and the recorded dimension
            let mut ok = true;
            if let (Some(rec), true) = (&s.d, s.n() <= STABILIZER_DISTANCE_MAX_N) {
                if let Ok(Some(found)) = distance_stabilizer(&s, STABILIZER_DISTANCE_MAX_N) {
                    if found.d != rec.value {
                        println!(
                            "distance: recorded {} but enumeration gives {}",
                            rec.value, found.d
                        );
                        ok = false;
                    }
                }
            }
            println!(
                "stabilizer code [[{}, {}]]: {}",
                s.n(),
                s.k(),
                if ok { "valid" } else { "INVALID" }
            );
            Ok(if ok { EXIT_OK } else { EXIT_INVALID })
        }
    }
}

fn distance(path: &Path, cap: usize, output: Option<&Path>) -> CliResult {
    let mut bundle = read_bundle(path)?;
    match &mut bundle {
        Bundle::Linear(c) => match c.certify_distance() {
            Some(d) => println!("d = {d}"),
            None => return Err(usage("code too large for brute-force distance (or k = 0)")),
        },
        Bundle::Css(q) => {
            let report = check_valid(q);
            if report.commutation_witness.is_some() {
                println!("{report}");
                return Ok(EXIT_INVALID);
            }
            for side in [Side::X, Side::Z] {
                match distance_css(q, side, cap).map_err(usage)? {
                    Some(w) => {
                        let support: Vec<String> = w
                            .witness
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v != 0)
                            .map(|(i, _)| i.to_string())
                            .collect();
                        println!(
                            "d_{} = {} (witness support {})",
                            side.as_str(),
                            w.d,
                            support.join(" ")
                        );
                        let rec = Some(crate::codes::CertifiedDistance {
                            value: w.d,
                            method: "coset-enumeration".into(),
                        });
                        match side {
                            Side::X => q.dx = rec,
                            Side::Z => q.dz = rec,
                        }
                    }
                    None => println!("d_{}: no logical operators (k = 0)", side.as_str()),
                }
            }
        }
        Bundle::Stabilizer(s) => {
            match distance_stabilizer(s, STABILIZER_DISTANCE_MAX_N).map_err(usage)? {
                Some(w) => {
                    println!("d = {}", w.d);
                    s.d = Some(crate::codes::CertifiedDistance {
                        value: w.d,
                        method: "pauli-enumeration".into(),
                    });
                }
                None => println!("no logical operators (k = 0)"),
            }
        }
    }
    let target = output.unwrap_or(path);
    fs::write(target, bundle.to_string())
        .map_err(|e| usage(format!("{}: {e}", target.display())))?;
    Ok(EXIT_OK)
}

fn read_syndrome(path: &Path) -> Result<Vec<u32>, Failure> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(t.parse::<u32>().map_err(|_| {
            usage(format!(
                "{}: line {}: `{t}` is not an element index",
                path.display(),
                i + 1
            ))
        })?);
    }
    Ok(out)
}

fn bits_of(values: &[u32]) -> Result<BitVec, Failure> {
    if values.iter().any(|&v| v > 1) {
        return Err(usage("binary decoder needs a 0/1 syndrome"));
    }
    Ok(BitVec::from_u32s(values))
}

fn decode(
    code: &Path,
    syndrome: &Path,
    decoder: DecoderKind,
    t: Option<usize>,
    max_rounds: usize,
    partitions: usize,
    seed: u64,
) -> CliResult {
    let s = read_syndrome(syndrome)?;
    let bundle = read_bundle(code)?;
    let (status, estimate, work) = match (decoder, &bundle) {
        (DecoderKind::Exhaustive, Bundle::Linear(c)) => {
            let o = exhaustive_decode(c, &s).map_err(usage)?;
            (o.status, o.estimate, o.work)
        }
        (DecoderKind::Bdd, Bundle::Linear(c)) => {
            let r = c
                .alternant
                .as_ref()
                .map(|a| a.r)
                .ok_or_else(|| usage("bundle has no alternant data"))?;
            let o = bdd_alternant(c, &s, t.unwrap_or(r / 2)).map_err(usage)?;
            (o.status, o.estimate, o.work)
        }
        (DecoderKind::Flip | DecoderKind::FlipParallel, Bundle::Linear(c)) => {
            let graph = c
                .tanner()
                .ok_or_else(|| usage("flip decoding needs a binary code"))?;
            if s.len() != graph.checks() {
                return Err(usage(format!(
                    "syndrome has length {}, expected {}",
                    s.len(),
                    graph.checks()
                )));
            }
            let mode = if decoder == DecoderKind::Flip {
                FlipMode::Sequential
            } else {
                FlipMode::Parallel
            };
            let o = flip_decode(&graph, &bits_of(&s)?, mode, max_rounds);
            (o.status, o.estimate.to_u32s(), o.work)
        }
        (DecoderKind::PccssX | DecoderKind::PccssZ, Bundle::Css(q)) => {
            let ff = FastFamily::from_css(q).map_err(usage)?;
            let o = if decoder == DecoderKind::PccssX {
                if s.len() != ff.outer().parity_check().rows() {
                    return Err(usage("X syndrome length must equal the number of X checks"));
                }
                pccss_decode_x(&ff, &bits_of(&s)?, FlipMode::Sequential, max_rounds)
            } else {
                if s.len() != ff.blocks() * (ff.n0() - 1) {
                    return Err(usage("Z syndrome length must equal the number of Z checks"));
                }
                pccss_decode_z(&ff, &bits_of(&s)?, partitions.max(1))
            };
            (o.status, o.estimate.to_u32s(), o.work)
        }
        (_, b) => {
            return Err(usage(format!(
                "decoder {decoder:?} does not apply to a {} bundle",
                b.kind()
            )))
        }
    };
    let est: Vec<String> = estimate.iter().map(|v| v.to_string()).collect();
    println!("status,flips,rounds,block_decodes,seed,estimate");
    println!(
        "{},{},{},{},{},{}",
        status.as_str(),
        work.flips,
        work.rounds,
        work.block_decodes,
        seed,
        est.join(" ")
    );
    Ok(if status == crate::decode::DecodeStatus::Corrected {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn encode_circuit(path: &Path, output: Option<&Path>, verify: bool) -> CliResult {
    let q = match read_bundle(path)? {
        Bundle::Css(q) => q,
        other => {
            return Err(usage(format!(
                "expected a fast-family csscode bundle, found {}",
                other.kind()
            )))
        }
    };
    let ff = FastFamily::from_css(&q).map_err(usage)?;
    let circuit = build_encoder(&ff).map_err(usage)?;
    let s = circuit.stats();
    emit(output, &circuit.to_string())?;
    eprintln!(
        "gates {} (hadamard {}, stage I cnot {}, stage II cnot {}), depth {}, k2 + n0 = {}",
        s.gates,
        s.hadamards,
        s.stage1_cnots,
        s.stage2_cnots,
        s.depth,
        ff.k() + ff.n0()
    );
    if verify {
        if ff.n() > 64 {
            return Err(usage("tableau verification is limited to N ≤ 64"));
        }
        let report = verify_encoder(ff.css(), &circuit);
        eprintln!("{report}");
        if !report.passed() {
            return Ok(EXIT_INVALID);
        }
    }
    Ok(EXIT_OK)
}

fn bounds(fig1: bool, gv: bool, zeta: f64, q: u32, step: f64, output: Option<&Path>) -> CliResult {
    if !(step > 0.0 && step < 0.5) {
        return Err(usage("step must lie in (0, 0.5)"));
    }
    let csv = if fig1 {
        if zeta.is_nan() || zeta < 1.0 {
            return Err(usage("zeta must be at least 1"));
        }
        let (gap, p) = max_rate_gap(zeta, step);
        eprintln!("max gap {gap:.6} at p = {p:.4}");
        channel_rate_curves(zeta, step).to_csv()
    } else if gv {
        if q < 2 {
            return Err(usage("q must be at least 2"));
        }
        gv_curves(q, step).to_csv()
    } else {
        return Err(usage("choose --fig1 or --gv"));
    };
    emit(output, &csv)?;
    Ok(EXIT_OK)
}

fn simulate(args: SimulateArgs) -> CliResult {
    let ff = fast_from_source(&args.source)?;
    let channel = PauliChannel::new(args.p, args.zeta).map_err(usage)?;
    let code = match &args.source.bundle {
        Some(p) => CodeSpec::Bundle(p.clone()),
        None => CodeSpec::Fast {
            n: ff.n(),
            n0: ff.n0(),
            c: args.source.c,
            d: args.source.d,
            seed: args.source.code_seed,
        },
    };
    let mut cfg = ExperimentConfig::new(code, channel, args.trials, args.seed);
    cfg.partitions = args.partitions;
    cfg.flip_mode = if args.parallel_flip {
        FlipMode::Parallel
    } else {
        FlipMode::Sequential
    };
    cfg.max_rounds = args.max_rounds;
    cfg.record_timing = args.timing;
    cfg.output = args.output.clone();
    cfg.validate().map_err(usage)?;
    let mut body = String::new();
    if !args.summary_only {
        body.push_str(TrialRecord::CSV_HEADER);
        body.push('\n');
    }
    let summary = run_trials_with(&ff, &cfg, |r| {
        if !args.summary_only {
            body.push_str(&r.to_csv());
            body.push('\n');
        }
    });
    body.push_str(&summary.to_comment_block());
    emit(args.output.as_deref(), &body)?;
    Ok(EXIT_OK)
}

fn sweep(args: SweepArgs) -> CliResult {
    let ff = fast_from_source(&args.source)?;
    if args.wmin > args.wmax || args.wmax > ff.n() {
        return Err(usage(format!("need wmin ≤ wmax ≤ N = {}", ff.n())));
    }
    let side = match args.side {
        SideArg::X => Side::X,
        SideArg::Z => Side::Z,
    };
    let rows = adversarial_sweep(&ff, side, args.wmin..=args.wmax, args.samples, args.seed);
    let mut csv = String::from("weight,tested,corrected,rate,exhaustive\n");
    for r in rows {
        csv.push_str(&format!(
            "{},{},{},{:.6},{}\n",
            r.weight,
            r.tested,
            r.corrected,
            r.rate(),
            r.exhaustive as u8
        ));
    }
    emit(args.output.as_deref(), &csv)?;
    Ok(EXIT_OK)
}
