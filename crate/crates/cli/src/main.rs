use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use marked::criteria::{check_marked_basis_sm, check_marked_basis_v, CheckOptions, SmMode, VMode, Verdict};
use marked::hilbert::{gotzmann_number, hilbert_polynomial};
use marked::oracle::{default_window, describe_rank_failure, translated_marked_basis};
use marked::parse::{parse_marked_set, parse_monomial_list, parse_poly};
use marked::reduction::{default_max_steps, v_reduce, SmOptions, SmReducer, Strategy};
use marked::scheme::{
    embedding_report, is_truncation_isomorphism, marked_scheme_with, minimal_stable_level, phi_embedding,
    tangent_dim_at_origin, PairFamily, SchemeOptions, SchemeResult,
};
use marked::{ErrorKind, MarkedSet, Rational, StronglyStableIdeal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Schemes with more reduced parameters than this need `--extended`.
const EXTENDED_THRESHOLD: usize = 50;

#[derive(Parser)]
#[command(name = "marked", version, about = "Marked bases and marked schemes over strongly stable ideals")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Number of variables x0..x{n-1}; inferred from the highest index otherwise.
    #[arg(long, global = true)]
    nvars: Option<usize>,
    /// Worker threads (default: all cores, or RAYON_NUM_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Reduction step budget (default: MARKED_MAX_STEPS or 1000000).
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical invariants of an ideal and of its saturation.
    Analyze {
        /// Generators, or @path to a file holding them.
        ideal: String,
    },
    /// The m-truncation of the saturation.
    Truncate {
        ideal: String,
        #[arg(long)]
        m: u32,
    },
    /// Reduces a polynomial by a marked set.
    Reduce {
        ideal: String,
        /// Truncate the saturation at this degree first.
        #[arg(long)]
        m: Option<u32>,
        /// Marked set: `head = tail` lines, `;`-separated inline or @path.
        #[arg(long)]
        set: String,
        poly: String,
        #[arg(long, value_enum, default_value_t = ReduceMode::Sm)]
        mode: ReduceMode,
        #[arg(long, value_enum, default_value_t = StrategyArg::Greatest)]
        strategy: StrategyArg,
        /// Extra power of x0 applied before superminimal reduction.
        #[arg(long, default_value_t = 0)]
        lift: u32,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        /// Allow superminimal reduction over a non-truncation (may not terminate).
        #[arg(long)]
        no_guard: bool,
    },
    /// Decides whether a marked set is a marked basis.
    CheckBasis {
        ideal: String,
        /// Truncate the saturation at this degree first.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = CheckMode::L1l2)]
        mode: CheckMode,
        /// Report every failing pair instead of the first.
        #[arg(long)]
        all_failures: bool,
        /// Cross-check with the Hilbert-function rank test.
        #[arg(long)]
        oracle: bool,
        /// Highest degree of the rank test (default reg + n + 1).
        #[arg(long)]
        window: Option<u32>,
    },
    /// Equations of the marked scheme of a truncation.
    Scheme {
        ideal: String,
        /// Truncate the saturation at this degree first.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = PairsArg::L1)]
        pairs: PairsArg,
        /// Allow schemes with more than 50 reduced parameters.
        #[arg(long)]
        extended: bool,
        /// Check the equations against the V-criterion at this many random points.
        #[arg(long, default_value_t = 0)]
        verify: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report elapsed_ms as 0 so that output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Parameter maps between consecutive truncations.
    CompareTruncations {
        ideal: String,
        #[arg(long, default_value_t = 1)]
        from: u32,
        /// Last level (default reg + 1).
        #[arg(long)]
        to: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceMode {
    Sm,
    V,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Greatest,
    Least,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    L1l2,
    Ek,
    All,
    VEk,
    VAll,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairsArg {
    L1,
    L1l2,
    Ek,
    All,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<marked::Error> for Failure {
    fn from(e: marked::Error) -> Self {
        match e.kind() {
            ErrorKind::Usage => Failure::Usage(e.to_string()),
            ErrorKind::Domain | ErrorKind::Internal => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { ideal } => analyze(g, &read_ideal(ideal, g)?),
        Command::Truncate { ideal, m } => truncate(g, &read_ideal(ideal, g)?, *m),
        Command::Reduce { ideal, m, set, poly, mode, strategy, lift, trace, no_guard } => {
            let j = at_level(read_ideal(ideal, g)?, *m);
            let set = read_set(set, &j)?;
            if matches!(mode, ReduceMode::Sm) && !no_guard && j.is_m_truncation().is_none() {
                return Err(marked::Error::NotTruncation.into());
            }
            reduce(g, &set, poly, *mode, *strategy, *lift, *trace)
        }
        Command::CheckBasis { ideal, m, set, mode, all_failures, oracle, window } => {
            let j = at_level(read_ideal(ideal, g)?, *m);
            let set = read_set(set, &j)?;
            check_basis(g, &set, *mode, *all_failures, *oracle, *window)
        }
        Command::Scheme { ideal, m, pairs, extended, verify, seed, no_timing } => {
            let j = at_level(read_ideal(ideal, g)?, *m);
            scheme(g, &j, *pairs, *extended, *verify, *seed, *no_timing)
        }
        Command::CompareTruncations { ideal, from, to } => compare(g, &read_ideal(ideal, g)?, *from, *to),
    }
}

fn at_level(j: StronglyStableIdeal, m: Option<u32>) -> StronglyStableIdeal {
    match m {
        Some(m) => j.saturation().truncate(m),
        None => j,
    }
}

fn read_source(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn read_ideal(arg: &str, g: &Global) -> Result<StronglyStableIdeal, Failure> {
    let text = read_source(arg)?;
    let gens = parse_monomial_list(text.trim(), g.nvars)?;
    Ok(StronglyStableIdeal::new_strongly_stable(&gens, gens[0].num_vars())?)
}

fn read_set(arg: &str, j: &StronglyStableIdeal) -> Result<MarkedSet<Rational>, Failure> {
    let text = if arg.starts_with('@') { read_source(arg)? } else { arg.replace(';', "\n") };
    Ok(parse_marked_set(&text, j)?)
}

fn max_steps(g: &Global) -> u64 {
    g.max_steps.unwrap_or_else(default_max_steps)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn render(g: &Global, text: String, value: Value) -> Outcome {
    Ok(match g.format {
        Format::Text => text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")),
    })
}

fn analyze(g: &Global, j: &StronglyStableIdeal) -> Outcome {
    let sat = j.saturation();
    let p = hilbert_polynomial(&sat)?;
    let gotzmann = gotzmann_number(&p).ok();
    let rep = embedding_report(&sat)?;
    let mut t = String::new();
    writeln!(t, "ideal: {j}").unwrap();
    writeln!(t, "variables: {}", j.num_vars()).unwrap();
    match j.is_m_truncation() {
        Some(m) => writeln!(t, "truncation level: {m}").unwrap(),
        None => writeln!(t, "truncation level: none").unwrap(),
    }
    writeln!(t, "saturation: {sat}").unwrap();
    let gz = gotzmann.map_or("none".to_string(), |x| x.to_string());
    writeln!(
        t,
        "reg={}, \u{3c3}={}, \u{3c1}\u{2212}1={}, p(t)={p}, Gotzmann={gz}, bound={}, |C\u{303}|={}",
        rep.regularity, rep.num_generators, rep.stable_level, rep.bound, rep.reduced_params
    )
    .unwrap();
    let v = json!({
        "ideal": strings(j.basis()),
        "nvars": j.num_vars(),
        "m": j.is_m_truncation(),
        "saturation": strings(sat.basis()),
        "regularity": rep.regularity,
        "num_generators": rep.num_generators,
        "stable_level": rep.stable_level,
        "hilbert_polynomial": p.to_string(),
        "gotzmann": gotzmann,
        "bound": rep.bound.to_string(),
        "reduced_params": rep.reduced_params,
    });
    render(g, t, v)
}

fn truncate(g: &Global, j: &StronglyStableIdeal, m: u32) -> Outcome {
    let tr = j.saturation().truncate(m);
    let sb = tr.superminimal_generators();
    let t = format!("{tr}\nsuperminimal: {}\n", strings(&sb).join(", "));
    render(g, t, json!({ "ideal": strings(tr.basis()), "m": m, "superminimal": strings(&sb) }))
}

fn reduce(
    g: &Global,
    set: &MarkedSet<Rational>,
    poly: &str,
    mode: ReduceMode,
    strategy: StrategyArg,
    lift: u32,
    trace: bool,
) -> Outcome {
    let j = set.ideal();
    let h = parse_poly(&read_source(poly)?, Some(j.num_vars()))?;
    match mode {
        ReduceMode::V => {
            if trace || lift > 0 {
                return Err(Failure::Usage("--trace and --lift apply to superminimal reduction only".into()));
            }
            let r = v_reduce(&h, set, max_steps(g))?;
            render(g, format!("reduced = {r}\n"), json!({ "mode": "v", "reduced": r.to_string() }))
        }
        ReduceMode::Sm => {
            let sg = set.superminimal_subset();
            let red = SmReducer::new(&sg)?;
            let strategy = match strategy {
                StrategyArg::Greatest => Strategy::LexGreatest,
                StrategyArg::Least => Strategy::LexLeast,
            };
            let opts = SmOptions { strategy, initial_lift: lift, max_steps: max_steps(g), trace };
            let r = red.reduce(&h, &opts)?;
            let mut t = String::new();
            let mut steps = Vec::new();
            for e in r.trace.iter().flatten() {
                let lift = if e.lift > 0 { format!("  (lift x0^{})", e.lift) } else { String::new() };
                writeln!(t, "{} => {} * {}{lift}", e.replaced, e.head, e.cofactor).unwrap();
                steps.push(json!({
                    "monomial": e.replaced.to_string(),
                    "head": e.head.to_string(),
                    "cofactor": e.cofactor.to_string(),
                    "lift": e.lift,
                }));
            }
            writeln!(t, "t = {}", r.t).unwrap();
            writeln!(t, "reduced = {}", r.reduced).unwrap();
            let mut v = json!({ "mode": "sm", "t": r.t, "steps": r.steps, "reduced": r.reduced.to_string() });
            if trace {
                v["trace"] = Value::Array(steps);
            }
            render(g, t, v)
        }
    }
}

fn check_basis(
    g: &Global,
    set: &MarkedSet<Rational>,
    mode: CheckMode,
    all_failures: bool,
    oracle: bool,
    window: Option<u32>,
) -> Outcome {
    let opts = CheckOptions { collect_all: all_failures, max_steps: max_steps(g) };
    let (name, verdict): (&str, Verdict<Rational>) = match mode {
        CheckMode::L1l2 => ("sm-L1L2", check_marked_basis_sm(set, SmMode::L1L2, &opts)?),
        CheckMode::Ek => ("sm-EK", check_marked_basis_sm(set, SmMode::Ek, &opts)?),
        CheckMode::All => ("sm-all", check_marked_basis_sm(set, SmMode::AllPairs, &opts)?),
        CheckMode::VEk => ("V-EK", check_marked_basis_v(set, VMode::Ek, &opts)?),
        CheckMode::VAll => ("V-all", check_marked_basis_v(set, VMode::AllPairs, &opts)?),
    };
    let mut t = String::new();
    let word = if verdict.is_basis { "marked basis" } else { "not a marked basis" };
    writeln!(t, "verdict: {word}").unwrap();
    writeln!(t, "mode: {name}").unwrap();
    writeln!(t, "pairs checked: {}", verdict.pairs_checked).unwrap();
    let mut failures = Vec::new();
    for f in &verdict.failures {
        writeln!(t, "failing pair: {}", f.pair).unwrap();
        writeln!(t, "residual: {}", f.residual).unwrap();
        failures.push(json!({ "pair": f.pair.to_string(), "residual": f.residual.to_string() }));
    }
    let mut v = json!({
        "is_basis": verdict.is_basis,
        "mode": name,
        "pairs_checked": verdict.pairs_checked,
        "failures": failures,
    });
    if oracle {
        let l_max = window.unwrap_or_else(|| default_window(set.ideal()));
        let failure = describe_rank_failure(set, l_max);
        let agrees = failure.is_none() == verdict.is_basis;
        match &failure {
            None => writeln!(t, "oracle: ranks match |J_l| up to degree {l_max}").unwrap(),
            Some(d) => writeln!(t, "oracle: {d}").unwrap(),
        }
        writeln!(t, "oracle agrees: {agrees}").unwrap();
        v["oracle"] = json!({ "window": l_max, "is_basis": failure.is_none(), "failure": failure, "agrees": agrees });
    }
    render(g, t, v)
}

#[allow(clippy::too_many_arguments)]
fn scheme(
    g: &Global,
    j: &StronglyStableIdeal,
    pairs: PairsArg,
    extended: bool,
    verify: usize,
    seed: u64,
    no_timing: bool,
) -> Outcome {
    let m = j.is_m_truncation().ok_or(Failure::Domain(marked::Error::NotTruncation.to_string()))?;
    let n_params: usize = j.superminimal_generators().iter().map(|a| j.complement(a.degree()).len()).sum();
    if n_params > EXTENDED_THRESHOLD && !extended {
        return Err(Failure::Usage(format!(
            "{n_params} reduced parameters; schemes above {EXTENDED_THRESHOLD} need --extended"
        )));
    }
    let pairs = match pairs {
        PairsArg::L1 => PairFamily::L1,
        PairsArg::L1l2 => PairFamily::L1L2,
        PairsArg::Ek => PairFamily::Ek,
        PairsArg::All => PairFamily::AllPairs,
    };
    let opts = SchemeOptions { pairs, max_steps: max_steps(g), ..SchemeOptions::default() };
    let r = marked_scheme_with(j, &opts)?;
    let elapsed = if no_timing { 0 } else { r.stats.elapsed_ms };
    let equations: Vec<String> = r.equations.iter().map(|e| e.display(&r.space).to_string()).collect();
    let mut t = String::new();
    writeln!(t, "ideal: {j}").unwrap();
    writeln!(t, "m: {m}").unwrap();
    writeln!(t, "parameters: {}", r.stats.n_params).unwrap();
    writeln!(t, "equations: {} ({} + {} before normalization)", r.stats.n_equations, r.stats.raw_d1, r.stats.raw_d2)
        .unwrap();
    writeln!(t, "pairs: {}", r.stats.n_pairs).unwrap();
    writeln!(t, "tangent dimension at the origin: {}", tangent_dim_at_origin(&r)).unwrap();
    writeln!(t, "elapsed: {elapsed} ms").unwrap();
    let mut v = json!({
        "ideal": strings(j.basis()),
        "m": m,
        "parameters": strings(r.parameters()),
        "equations": &equations,
        "stats": {
            "n_params": r.stats.n_params,
            "n_equations": r.stats.n_equations,
            "n_pairs": r.stats.n_pairs,
            "elapsed_ms": elapsed,
        },
    });
    if verify > 0 {
        let (on, disagreements) = sample(&r, verify, seed, max_steps(g))?;
        writeln!(t, "verification: {verify} points, {on} on the scheme, {} disagreements", disagreements.len())
            .unwrap();
        for d in &disagreements {
            writeln!(t, "  {d}").unwrap();
        }
        v["verification"] = json!({ "points": verify, "seed": seed, "on_scheme": on, "disagreements": disagreements });
    }
    for e in &equations {
        writeln!(t, "  {e}").unwrap();
    }
    render(g, t, v)
}

/// Alternates points coming from coordinate changes of `J`, which lie on the
/// scheme, with dense random points, and compares with the V-criterion.
fn sample(r: &SchemeResult, count: usize, seed: u64, max_steps: u64) -> Result<(usize, Vec<String>), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generic = r.generic_set();
    let n = r.parameters().len();
    let nv = r.ideal.num_vars();
    let small = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3)).expect("nonzero");
    let opts = CheckOptions { collect_all: false, max_steps };
    let (mut on, mut bad) = (0, Vec::new());
    for k in 0..count {
        let values = if k % 2 == 0 {
            let u: Vec<Vec<Rational>> = (0..nv).map(|i| (0..i).map(|_| small(&mut rng)).collect()).collect();
            let b = translated_marked_basis(&r.ideal, &u)?;
            generic.coordinates_of(&b.superminimal_subset())?
        } else {
            (0..n).map(|_| small(&mut rng)).collect()
        };
        let vanish = r.equations.iter().all(|e| e.eval(&values).is_zero());
        let basis = check_marked_basis_v(&generic.specialize_values(&values), VMode::Ek, &opts)?.is_basis;
        on += usize::from(vanish);
        if vanish != basis {
            bad.push(format!("point {k}: equations vanish {vanish}, V-criterion {basis}"));
        }
    }
    Ok((on, bad))
}

fn compare(g: &Global, j: &StronglyStableIdeal, from: u32, to: Option<u32>) -> Outcome {
    let sat = j.saturation();
    let to = to.unwrap_or(sat.regularity() + 1);
    let level = minimal_stable_level(&sat);
    let mut t = format!("saturation: {sat}\nminimal stable level: {level}\n");
    let mut levels = Vec::new();
    for m in from.max(1)..=to {
        let map = phi_embedding(&sat, m)?;
        let iso = is_truncation_isomorphism(&sat, m);
        writeln!(t, "m={m}: {} identified, {} extra, isomorphism {iso}", map.identified.len(), map.extra.len())
            .unwrap();
        levels.push(json!({
            "m": m,
            "isomorphism": iso,
            "identified": map.identified.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
            "extra": strings(&map.extra),
        }));
    }
    render(g, t, json!({ "saturation": strings(sat.basis()), "stable_level": level, "levels": levels }))
}
