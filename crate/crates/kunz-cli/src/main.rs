//! `kunz` — decompose numerical semigroups into m-irreducible ones.

use clap::{Args, Parser, Subcommand, ValueEnum};
use kunz::model::{
    compact_model, coverage_heuristic_model, genus_m_model, irreducible_offsets_model,
    per_gap_model, set_cover_model, to_lp_format,
};
use kunz::{
    decompose_compact, decompose_exact, decompose_heuristic, decompose_oracle, verify,
    DecomposeError, Decomposition, KunzCoordinates, SolveLimits,
};
use kunz_cli::battery::{self, BatteryConfig, Bucket};
use kunz_cli::bench;
use kunz_cli::exit_codes;
use kunz_cli::instance::{parse_int_list, parse_kunz_arg, InstanceSpec};
use kunz_cli::output::{render_decomposition, render_info, DecompositionDoc};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "kunz",
    about = "Numerical semigroup arithmetic in Kunz coordinates and minimal \
             decomposition into m-irreducible semigroups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Generators, comma separated (e.g. 5,11,12,18)
    #[arg(long, value_name = "LIST", conflicts_with = "kunz")]
    gens: Option<String>,
    /// Kunz coordinates as m:x1,...,x_{m-1} (e.g. 5:2,2,3,4)
    #[arg(long, value_name = "M:LIST")]
    kunz: Option<String>,
}

impl InstanceArgs {
    fn load(&self) -> Result<KunzCoordinates, String> {
        let spec = match (&self.gens, &self.kunz) {
            (Some(g), None) => {
                InstanceSpec::from_generators(parse_int_list(g).map_err(|e| e.to_string())?)
            }
            (None, Some(k)) => {
                let (m, coords) = parse_kunz_arg(k).map_err(|e| e.to_string())?;
                InstanceSpec::from_kunz(m, coords)
            }
            _ => return Err("give exactly one of --gens or --kunz".into()),
        };
        spec.load().map_err(|e| e.to_string())
    }
}

#[derive(Args, Clone)]
struct LimitArgs {
    /// Node budget for each solver call (env: KUNZ_MAX_NODES)
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    /// Cap on enumerated optimal solutions (env: KUNZ_MAX_OPTIMA)
    #[arg(long, value_name = "N")]
    max_optima: Option<usize>,
    /// Wall-clock limit per solver call, in milliseconds
    #[arg(long, value_name = "MS")]
    time_limit_ms: Option<u64>,
}

impl LimitArgs {
    fn load(&self) -> SolveLimits {
        let mut limits = SolveLimits::default();
        if let Some(v) = env_parse("KUNZ_MAX_NODES") {
            limits.max_nodes = v;
        }
        if let Some(v) = env_parse("KUNZ_MAX_OPTIMA") {
            limits.max_optima = v as usize;
        }
        if let Some(v) = self.max_nodes {
            limits.max_nodes = v;
        }
        if let Some(v) = self.max_optima {
            limits.max_optima = v;
        }
        if let Some(ms) = self.time_limit_ms {
            limits.time_limit = Some(std::time::Duration::from_millis(ms));
        }
        limits
    }
}

fn env_parse(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.trim().parse().ok()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Heuristic,
    Compact,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKindArg {
    /// Residue slice of the offset polytope (needs --k)
    Pk,
    /// Per-gap minimum-length program for h > 2m (needs --h)
    PerGap,
    /// Genus-m program for m < h < 2m (needs --h)
    GenusM,
    /// Big-M coverage model for h > 2m (needs --h)
    Heuristic,
    /// Set covering over candidate parts (needs --candidates)
    SetCover,
    Compact,
    CompactSymmetric,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants of one semigroup
    Info {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Decompose into m-irreducible numerical semigroups
    Decompose {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "compact")]
        method: MethodArg,
        /// Restrict to parts with odd Frobenius number (compact only)
        #[arg(long)]
        symmetric: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Largest multiplicity the oracle accepts
        #[arg(long, value_name = "M", default_value = "14")]
        oracle_cap: i64,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Generate a seeded random battery of instances (JSON lines)
    Generate {
        /// Multiplicity bucket lo:hi, repeatable
        #[arg(long, value_name = "LO:HI", required = true)]
        bucket: Vec<String>,
        /// Instances per bucket
        #[arg(long, default_value = "10")]
        count: usize,
        /// Value range for the non-multiplicity generators
        #[arg(long, value_name = "LO:HI", default_value = "2:5000")]
        gen_range: String,
        /// Reject instances with more special gaps than this
        #[arg(long, value_name = "K")]
        max_special_gaps: Option<usize>,
        #[arg(long, default_value = "1")]
        seed: u64,
        /// Rejection attempts per instance
        #[arg(long, default_value = "100000")]
        max_attempts: u64,
        /// Output file (stdout when omitted)
        #[arg(long, value_name = "FILE")]
        out: Option<String>,
    },
    /// Run decomposition methods over an instance file and aggregate
    Bench {
        /// Instance file produced by `generate`
        #[arg(long, value_name = "FILE")]
        instances: String,
        /// Comma-separated methods (exact, heuristic, compact, oracle)
        #[arg(long, default_value = "compact,heuristic")]
        methods: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print one of the integer programming models in LP format
    ExportModel {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum)]
        kind: ModelKindArg,
        /// The fixed special gap, for the per-gap kinds
        #[arg(long, value_name = "H")]
        h: Option<i64>,
        /// Residue index for the pk kind
        #[arg(long, value_name = "K")]
        k: Option<usize>,
        /// Candidate file (JSON lines of {"kunz": [...]}) for set-cover
        #[arg(long, value_name = "FILE")]
        candidates: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Info { instance } => cmd_info(&instance),
        Command::Decompose { instance, method, symmetric, format, oracle_cap, limits } => {
            cmd_decompose(&instance, method, symmetric, format, oracle_cap, &limits.load())
        }
        Command::Generate {
            bucket,
            count,
            gen_range,
            max_special_gaps,
            seed,
            max_attempts,
            out,
        } => cmd_generate(&bucket, count, &gen_range, max_special_gaps, seed, max_attempts, out),
        Command::Bench { instances, methods, format, limits } => {
            cmd_bench(&instances, &methods, format, &limits.load())
        }
        Command::ExportModel { instance, kind, h, k, candidates } => {
            cmd_export_model(&instance, kind, h, k, candidates)
        }
    };
    ExitCode::from(code as u8)
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    exit_codes::USAGE
}

fn runtime_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    exit_codes::RUNTIME
}

fn cmd_info(instance: &InstanceArgs) -> i32 {
    match instance.load() {
        Ok(x) => {
            println!("{}", render_info(&x));
            exit_codes::OK
        }
        Err(e) => usage_error(&e),
    }
}

fn cmd_decompose(
    instance: &InstanceArgs,
    method: MethodArg,
    symmetric: bool,
    format: FormatArg,
    oracle_cap: i64,
    limits: &SolveLimits,
) -> i32 {
    let x = match instance.load() {
        Ok(x) => x,
        Err(e) => return usage_error(&e),
    };
    if symmetric && method != MethodArg::Compact {
        return usage_error("--symmetric is only available with --method compact");
    }
    if method == MethodArg::Oracle && x.multiplicity() > oracle_cap {
        return usage_error(&format!(
            "oracle refuses multiplicity {} (cap {oracle_cap}; raise --oracle-cap at your peril)",
            x.multiplicity()
        ));
    }
    let start = Instant::now();
    let result: Result<Decomposition, DecomposeError> = match method {
        MethodArg::Exact => decompose_exact(&x, limits),
        MethodArg::Heuristic => decompose_heuristic(&x, limits),
        MethodArg::Compact => decompose_compact(&x, symmetric, limits),
        MethodArg::Oracle => decompose_oracle(&x, limits),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(d) => {
            let verified = verify(&d).all_pass();
            match format {
                FormatArg::Text => println!("{}", render_decomposition(&d, elapsed_ms)),
                FormatArg::Json => {
                    let doc = DecompositionDoc::from_decomposition(&d, verified);
                    println!("{}", serde_json::to_string(&doc).expect("serializes"));
                }
            }
            if verified {
                exit_codes::OK
            } else {
                eprintln!("error: decomposition failed verification");
                exit_codes::VERIFY_FAILED
            }
        }
        Err(DecomposeError::NotSymmetricallyDecomposable) => {
            eprintln!("error: not decomposable into m-symmetric numerical semigroups");
            exit_codes::NOT_SYMMETRIC
        }
        Err(e) => runtime_error(&e.to_string()),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo = lo.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<i64>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

fn cmd_generate(
    buckets: &[String],
    count: usize,
    gen_range: &str,
    max_special_gaps: Option<usize>,
    seed: u64,
    max_attempts: u64,
    out: Option<String>,
) -> i32 {
    let mut parsed = Vec::new();
    for b in buckets {
        match parse_range(b) {
            Ok((lo, hi)) => parsed.push(Bucket { lo, hi }),
            Err(e) => return usage_error(&format!("bucket {b:?}: {e}")),
        }
    }
    let (gen_lo, gen_hi) = match parse_range(gen_range) {
        Ok(r) => r,
        Err(e) => return usage_error(&format!("gen-range: {e}")),
    };
    let config = BatteryConfig {
        buckets: parsed,
        gen_lo,
        gen_hi,
        count,
        max_special_gaps,
        seed,
        max_attempts,
    };
    match battery::generate(&config) {
        Ok(records) => {
            let text = battery::to_jsonl(&records);
            match out {
                None => print!("{text}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        return runtime_error(&format!("writing {path}: {e}"));
                    }
                }
            }
            exit_codes::OK
        }
        Err(battery::BatteryError::BadConfig(msg)) => usage_error(&msg),
        Err(e) => runtime_error(&e.to_string()),
    }
}

fn cmd_bench(instances: &str, methods: &str, format: FormatArg, limits: &SolveLimits) -> i32 {
    let text = match std::fs::read_to_string(instances) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("reading {instances}: {e}")),
    };
    let records = match battery::from_jsonl(&text) {
        Ok(r) => r,
        Err(e) => return usage_error(&format!("parsing {instances}: {e}")),
    };
    let mut parsed = Vec::new();
    for name in methods.split(',') {
        let method = match name.trim() {
            "exact" => kunz::Method::Exact,
            "heuristic" => kunz::Method::Heuristic,
            "compact" => kunz::Method::Compact,
            "compact-symmetric" => kunz::Method::CompactSymmetric,
            "oracle" => kunz::Method::Oracle,
            other => return usage_error(&format!("unknown method {other:?}")),
        };
        parsed.push(method);
    }
    let report = bench::run(&records, &parsed, limits);
    match format {
        FormatArg::Text => print!("{}", bench::to_text(&report)),
        FormatArg::Json => print!("{}", bench::to_csv(&report)),
    }
    exit_codes::OK
}

fn cmd_export_model(
    instance: &InstanceArgs,
    kind: ModelKindArg,
    h: Option<i64>,
    k: Option<usize>,
    candidates: Option<String>,
) -> i32 {
    let x = match instance.load() {
        Ok(x) => x,
        Err(e) => return usage_error(&e),
    };
    let sg = x.special_gaps_above_m();
    let need_h = || h.ok_or_else(|| "this kind needs --h".to_string());
    let built = match kind {
        ModelKindArg::Pk => match k {
            Some(k) => irreducible_offsets_model(&x, k).map_err(|e| e.to_string()),
            None => Err("kind pk needs --k".into()),
        },
        ModelKindArg::PerGap => {
            need_h().and_then(|h| per_gap_model(&x, h).map_err(|e| e.to_string()))
        }
        ModelKindArg::GenusM => {
            need_h().and_then(|h| genus_m_model(&x, h).map_err(|e| e.to_string()))
        }
        ModelKindArg::Heuristic => need_h()
            .and_then(|h| coverage_heuristic_model(&x, h, &sg).map_err(|e| e.to_string())),
        ModelKindArg::SetCover => match candidates {
            None => Err("kind set-cover needs --candidates (no candidate pool exists \
                         before the per-gap problems are solved)"
                .into()),
            Some(path) => read_candidates(&path, x.multiplicity()).and_then(|pool| {
                set_cover_model(&x, &sg, &pool)
                    .map(|(model, _)| model)
                    .map_err(|e| e.to_string())
            }),
        },
        ModelKindArg::Compact => compact_model(&x, &sg, false).map_err(|e| e.to_string()),
        ModelKindArg::CompactSymmetric => {
            compact_model(&x, &sg, true).map_err(|e| e.to_string())
        }
    };
    match built {
        Ok(model) => {
            print!("{}", to_lp_format(&model.ip));
            exit_codes::OK
        }
        Err(e) => usage_error(&e),
    }
}

fn read_candidates(path: &str, m: i64) -> Result<Vec<KunzCoordinates>, String> {
    #[derive(serde::Deserialize)]
    struct Line {
        kunz: Vec<i64>,
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed: Line =
            serde_json::from_str(line).map_err(|e| format!("line {}: {e}", no + 1))?;
        out.push(
            KunzCoordinates::new(m, parsed.kunz)
                .map_err(|e| format!("line {}: {e}", no + 1))?,
        );
    }
    Ok(out)
}
