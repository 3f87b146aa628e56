//! `scimm`: command-line front end for semi-complete digraph immersion.
//!
//! Exit status: 0 affirmative, 1 well-formed negative, 2 usage error,
//! 3 invalid input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};

use scimm::codec::{dominates, Codeword};
use scimm::cutwidth::{cutwidth_exact_with_limit, DEFAULT_EXACT_LIMIT};
use scimm::digraph::{SemiCompleteDigraph, SimpleDigraph};
use scimm::error::Error;
use scimm::generate::{
    gen_alternating_cycle, gen_random_bounded_ctw, gen_random_semicomplete, gen_random_tournament,
};
use scimm::immersion::{
    default_bound, find_immersion_bruteforce_with, immerse_via_codewords,
    verify_strong_immersion, wqo_scan, BruteForceLimits, EncodedDigraph, ImmersionOutcome, Layout,
    StrongImmersionModel,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Lines,
}

#[derive(Debug, Parser)]
#[command(name = "scimm", version, about = "Strong immersions of semi-complete digraphs")]
struct Cli {
    /// Shared cutwidth bound used for encoding.
    #[arg(long, global = true)]
    c: Option<usize>,
    /// Seed for randomized commands; required with `--format lines`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Vertex cap for exact and exhaustive computations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    limit_n: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// File that receives the reconstruction trace.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a digraph file is semi-complete.
    Validate { digraph: PathBuf },
    /// Exact cutwidth and an optimal ordering.
    Cutwidth { digraph: PathBuf },
    /// Linked optimal ordering and linked ordered cuts.
    Order { digraph: PathBuf },
    /// Codeword of a digraph under `--c` (default: its cutwidth).
    Encode { digraph: PathBuf },
    /// Domination between two codeword files.
    Dominate { pattern: PathBuf, host: PathBuf },
    /// Strong immersion built from the codewords.
    Immerse { pattern: PathBuf, host: PathBuf },
    /// Strong immersion by exhaustive search.
    ImmerseBrute { pattern: PathBuf, host: PathBuf },
    /// Check a model file against a pattern and a host.
    Verify {
        pattern: PathBuf,
        host: PathBuf,
        model: PathBuf,
    },
    /// Generate a digraph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Find the first pair of files in a directory where the earlier one
    /// immerses in the later one.
    Scan { dir: PathBuf },
}

#[derive(Debug, Subcommand)]
enum GenKind {
    Tournament {
        #[arg(long)]
        n: usize,
    },
    Semicomplete {
        #[arg(long)]
        n: usize,
        /// Probability that a pair is symmetric.
        #[arg(long, default_value_t = 0.2)]
        p_sym: f64,
    },
    BoundedCtw {
        #[arg(long)]
        n: usize,
        /// Cutwidth bound of the generated digraph.
        #[arg(long = "width")]
        width: usize,
    },
    Altcycle {
        #[arg(long)]
        k: usize,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(bool, String), Failure>;

struct Ctx {
    c: Option<usize>,
    seed: Option<u64>,
    limit_n: Option<usize>,
    format: Format,
    trace: Option<PathBuf>,
}

impl Ctx {
    fn lines(&self) -> bool {
        self.format == Format::Lines
    }

    fn exact_limit(&self) -> usize {
        self.limit_n.unwrap_or(DEFAULT_EXACT_LIMIT)
    }

    fn check_size(&self, s: &SimpleDigraph) -> Result<(), Failure> {
        let limit = self.exact_limit().min(DEFAULT_EXACT_LIMIT);
        if s.n() > limit {
            return Err(Error::LimitExceeded {
                what: "linked layout",
                n: s.n(),
                limit,
            }
            .into());
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: scimm::error::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn read_digraph(path: &Path) -> Result<SimpleDigraph, Failure> {
    with_path(path, SimpleDigraph::parse(&read(path)?))
}

fn read_semicomplete(path: &Path) -> Result<SemiCompleteDigraph, Failure> {
    with_path(path, SemiCompleteDigraph::new(read_digraph(path)?))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn validate(ctx: &Ctx, path: &Path) -> Outcome {
    let d = read_digraph(path)?;
    let r = d.validate_semi_complete();
    let missing = r.missing_pair.map_or("-".to_string(), |(u, v)| format!("{u},{v}"));
    let out = if ctx.lines() {
        format!(
            "validate semi_complete={} tournament={} missing={missing}\n",
            r.semi_complete, r.tournament
        )
    } else if r.semi_complete {
        format!(
            "semi-complete, {}\n",
            if r.tournament { "a tournament" } else { "with symmetric pairs" }
        )
    } else {
        format!("not semi-complete: no arc between {missing}\n")
    };
    Ok((r.semi_complete, out))
}

fn cutwidth(ctx: &Ctx, path: &Path) -> Outcome {
    let d = read_digraph(path)?;
    let cw = cutwidth_exact_with_limit(&d, ctx.exact_limit())?;
    let order = cw.ordering.order();
    let out = if ctx.lines() {
        format!("cutwidth ctw={} ordering={}\n", cw.ctw, join(order))
    } else {
        format!("cutwidth {}\noptimal ordering: {}", cw.ctw, cw.ordering.to_text())
    };
    Ok((true, out))
}

fn order(ctx: &Ctx, path: &Path) -> Outcome {
    let s = read_semicomplete(path)?;
    ctx.check_size(&s)?;
    let layout = Layout::build(&s)?;
    let mut out = String::new();
    if ctx.lines() {
        let _ = writeln!(out, "order ctw={} ordering={}", layout.ctw, join(layout.ordering.order()));
    } else {
        let _ = writeln!(out, "linked ordering of width {}: {}", layout.ctw, layout.ordering.to_text().trim_end());
        let _ = writeln!(out, "ordered cuts:");
    }
    out.push_str(&layout.ordered_cuts.to_text());
    Ok((true, out))
}

fn encode(ctx: &Ctx, path: &Path) -> Outcome {
    let s = read_semicomplete(path)?;
    ctx.check_size(&s)?;
    let c = match ctx.c {
        Some(c) => c,
        None => cutwidth_exact_with_limit(&s, ctx.exact_limit())?.ctw,
    };
    let e = EncodedDigraph::new(s, c)?;
    Ok((true, e.codeword.to_text()))
}

fn dominate(ctx: &Ctx, a: &Path, b: &Path) -> Outcome {
    let cw = with_path(a, Codeword::parse(&read(a)?))?;
    let cw2 = with_path(b, Codeword::parse(&read(b)?))?;
    let f = dominates(&cw, &cw2)?;
    let out = match (&f, ctx.lines()) {
        (Some(f), true) => format!("dominate result=yes embedding={}\n", join(&f.f)),
        (None, true) => "dominate result=no\n".to_string(),
        (Some(f), false) => format!("dominated via f = ({})\n", join(&f.f)),
        (None, false) => "not dominated\n".to_string(),
    };
    Ok((f.is_some(), out))
}

fn write_trace(ctx: &Ctx, out: &ImmersionOutcome) -> Result<(), Failure> {
    if let Some(path) = &ctx.trace {
        fs::write(path, out.trace.to_text())
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn report_model(ctx: &Ctx, head: &str, c: usize, out: Option<&ImmersionOutcome>) -> String {
    match (out, ctx.lines()) {
        (Some(o), true) => format!(
            "{head} result=yes c={c} embedding={}\n{}",
            join(&o.embedding.f),
            o.model.to_text()
        ),
        (None, true) => format!("{head} result=no c={c}\n"),
        (Some(o), false) => format!(
            "c = {c}\ncodewords dominate via f = ({}); verified model:\n{}",
            join(&o.embedding.f),
            o.model.to_text()
        ),
        (None, false) => format!(
            "c = {c}\ncodewords do not dominate; this does not rule out an immersion\n"
        ),
    }
}

fn immerse(ctx: &Ctx, a: &Path, b: &Path) -> Outcome {
    let s = read_semicomplete(a)?;
    let s2 = read_semicomplete(b)?;
    ctx.check_size(&s)?;
    ctx.check_size(&s2)?;
    let c = match ctx.c {
        Some(c) => c,
        None => default_bound(&s, &s2)?,
    };
    let out = immerse_via_codewords(&s, &s2, c)?;
    if let Some(o) = &out {
        write_trace(ctx, o)?;
    }
    Ok((out.is_some(), report_model(ctx, "immerse", c, out.as_ref())))
}

fn immerse_brute(ctx: &Ctx, a: &Path, b: &Path) -> Outcome {
    let h = read_digraph(a)?;
    let d = read_digraph(b)?;
    let mut limits = BruteForceLimits::default();
    if let Some(n) = ctx.limit_n {
        limits.max_host = n;
        limits.max_pattern = n;
    }
    let m = find_immersion_bruteforce_with(&h, &d, limits)?;
    let out = match (&m, ctx.lines()) {
        (Some(m), true) => format!("immerse-brute result=yes\n{}", m.to_text()),
        (None, true) => "immerse-brute result=no\n".to_string(),
        (Some(m), false) => format!("strong immersion found:\n{}", m.to_text()),
        (None, false) => "no strong immersion exists\n".to_string(),
    };
    Ok((m.is_some(), out))
}

fn verify(ctx: &Ctx, a: &Path, b: &Path, model: &Path) -> Outcome {
    let h = read_digraph(a)?;
    let d = read_digraph(b)?;
    let m = with_path(model, StrongImmersionModel::parse(&read(model)?))?;
    let r = verify_strong_immersion(&h, &d, &m);
    let out = match (&r, ctx.lines()) {
        (Ok(()), true) => "verify result=valid\n".to_string(),
        (Err(v), true) => format!("verify result=invalid clause={} reason={v}\n", v.clause()),
        (Ok(()), false) => "valid strong immersion model\n".to_string(),
        (Err(v), false) => format!("invalid model, {v}\n"),
    };
    Ok((r.is_ok(), out))
}

fn gen(ctx: &Ctx, kind: &GenKind) -> Outcome {
    let randomized = !matches!(kind, GenKind::Altcycle { .. });
    let seed = match ctx.seed {
        Some(s) => s,
        None if randomized && ctx.lines() => {
            return Err(Failure::Usage("randomized commands need --seed with --format lines".into()))
        }
        None => SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_nanos() as u64),
    };
    let d = match *kind {
        GenKind::Tournament { n } => gen_random_tournament(n, seed).into_inner(),
        GenKind::Semicomplete { n, p_sym } => gen_random_semicomplete(n, p_sym, seed)?.into_inner(),
        GenKind::BoundedCtw { n, width } => gen_random_bounded_ctw(n, width, seed).into_inner(),
        GenKind::Altcycle { k } => gen_alternating_cycle(k)?,
    };
    let mut out = String::new();
    if randomized {
        let _ = writeln!(out, "# seed {seed}");
    }
    out.push_str(&d.to_text());
    Ok((true, out))
}

fn scan(ctx: &Ctx, dir: &Path) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let seq = files
        .iter()
        .map(|p| {
            let s = read_semicomplete(p)?;
            ctx.check_size(&s)?;
            Ok(s)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let c = match ctx.c {
        Some(c) => c,
        None => seq
            .iter()
            .map(|s| cutwidth_exact_with_limit(s, ctx.exact_limit()).map(|w| w.ctw))
            .try_fold(0, |m, w| w.map(|w| m.max(w)))?,
    };
    let hit = wqo_scan(&seq, c).map_err(|e| match e {
        Error::Member { index, source } => {
            Failure::Invalid(format!("{}: {source}", files[index].display()))
        }
        e => e.into(),
    })?;
    let Some(hit) = hit else {
        let out = if ctx.lines() {
            format!("scan result=none c={c} members={}\n", seq.len())
        } else {
            format!("c = {c}\nno dominating pair among {} digraphs\n", seq.len())
        };
        return Ok((false, out));
    };
    write_trace(ctx, &hit.outcome)?;
    let (fi, fj) = (files[hit.i].display(), files[hit.j].display());
    let out = if ctx.lines() {
        format!(
            "scan result=pair c={c} i={} j={} first={fi} second={fj} embedding={}\n{}",
            hit.i,
            hit.j,
            join(&hit.outcome.embedding.f),
            hit.outcome.model.to_text()
        )
    } else {
        format!(
            "c = {c}\n{fi} immerses in {fj} (members {} and {})\n{}",
            hit.i,
            hit.j,
            hit.outcome.model.to_text()
        )
    };
    Ok((true, out))
}

fn dispatch(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        c: cli.c,
        seed: cli.seed,
        limit_n: cli.limit_n.map(|n| n as usize),
        format: cli.format,
        trace: cli.trace.clone(),
    };
    match &cli.command {
        Command::Validate { digraph } => validate(&ctx, digraph),
        Command::Cutwidth { digraph } => cutwidth(&ctx, digraph),
        Command::Order { digraph } => order(&ctx, digraph),
        Command::Encode { digraph } => encode(&ctx, digraph),
        Command::Dominate { pattern, host } => dominate(&ctx, pattern, host),
        Command::Immerse { pattern, host } => immerse(&ctx, pattern, host),
        Command::ImmerseBrute { pattern, host } => immerse_brute(&ctx, pattern, host),
        Command::Verify { pattern, host, model } => verify(&ctx, pattern, host, model),
        Command::Gen { kind } => gen(&ctx, kind),
        Command::Scan { dir } => scan(&ctx, dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((affirmative, out)) => {
            print!("{out}");
            ExitCode::from(if affirmative { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
