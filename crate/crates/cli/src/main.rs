mod args;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use ucycles::combmaps::{fixed_weight_expand, CombCycle};
use ucycles::cyclejoin::{
    build_tree, build_tree_with_cap, check_chain_property, check_periodic_leaves, generic_cycle,
    FeedbackKind,
};
use ucycles::grandmama::{generate_concat, successor_cycle, ConcatGenerator, SuccessorGenerator};
use ucycles::msr::{check_conjecture, generate_msr, generate_reverse_colex, MsrGenerator};
use ucycles::oracle::{verify_listing, verify_universal_cycle, Universe, VerifyOptions};
use ucycles::{Engine, ParamSet, Symbol, UCycle, Word};

use args::*;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<ucycles::Error> for Failure {
    fn from(e: ucycles::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CliResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => return report_clap_error(e),
    };
    let outcome = match cli.command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Decode(a) => cmd_decode(&a),
        Command::Tree(a) => cmd_tree(&a),
        Command::Conjecture(a) => cmd_conjecture(&a),
        Command::Sweep(a) => cmd_sweep(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Help and version go to stdout as usual; everything else is squeezed
/// into a single diagnostic line.
fn report_clap_error(e: clap::Error) -> ExitCode {
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        let _ = e.print();
        return ExitCode::SUCCESS;
    }
    let rendered = e.render().to_string();
    let line = rendered
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    eprintln!("error: {}", line.trim_start_matches("error: "));
    ExitCode::from(EXIT_USAGE)
}

fn cycle_len(params: ParamSet) -> Result<usize, Failure> {
    usize::try_from(params.size())
        .map_err(|_| Failure::Usage(format!("{params} is too large to generate")))
}

fn parse_seed(text: &str, target: &Target) -> Result<Vec<Symbol>, Failure> {
    let shift = target.shift();
    let word = Word::parse(text, target.params().t + shift)?;
    word.symbols()
        .iter()
        .map(|&s| {
            s.checked_sub(shift).ok_or_else(|| {
                Failure::Usage(format!("seed window symbols must be at least {shift}"))
            })
        })
        .collect()
}

/// The engine's symbols for one full period, before any output shift.
fn raw_stream(
    source: &SourceArgs,
    target: &Target,
) -> Result<Box<dyn Iterator<Item = Symbol>>, Failure> {
    let params = target.params();
    let len = cycle_len(params)?;
    let seed = source
        .seed_window
        .as_deref()
        .map(|s| parse_seed(s, target))
        .transpose()?;
    let steps = len.saturating_sub(params.n);
    Ok(match (source.engine, seed) {
        (EngineArg::Grandmama, None) => Box::new(ConcatGenerator::new(params)),
        (EngineArg::Grandmama, Some(seed)) => {
            Box::new(SuccessorGenerator::new(params, &seed, steps)?.take(len))
        }
        (EngineArg::Msr, None) => Box::new(MsrGenerator::new(params)?.take(len)),
        (EngineArg::Msr, Some(seed)) => {
            Box::new(MsrGenerator::from_window(params, &seed, steps)?.take(len))
        }
        (EngineArg::ReverseColex, None) => {
            Box::new(generate_reverse_colex(params)?.symbols.into_iter())
        }
        (EngineArg::ReverseColex, Some(_)) => {
            return Err(Failure::Usage(
                "--seed-window applies only to the grandmama and msr engines".into(),
            ))
        }
    })
}

fn engine_tag(engine: EngineArg) -> Engine {
    match engine {
        EngineArg::Grandmama => Engine::Grandmama,
        EngineArg::Msr => Engine::Msr,
        EngineArg::ReverseColex => Engine::ReverseColex,
    }
}

fn family_json(target: &Target) -> serde_json::Value {
    match *target {
        Target::Words(_) => json!({"kind": "words"}),
        Target::Subsets { n, k, .. } => json!({"kind": "subsets", "n": n, "k": k}),
        Target::MultisetsFreq { n, k, .. } => json!({"kind": "multisets_freq", "n": n, "k": k}),
        Target::MultisetsDiff { n, k, .. } => json!({"kind": "multisets_diff", "n": n, "k": k}),
    }
}

fn resolve(source: &SourceArgs) -> Result<Target, Failure> {
    source.target.resolve().map_err(Failure::Usage)
}

fn cmd_generate(a: &GenerateArgs) -> CliResult {
    let target = resolve(&a.source)?;
    let shift = target.shift();
    let max_symbol = target.params().t - 1 + shift;
    if a.format == FormatArg::Compact && max_symbol >= 10 {
        return Err(Failure::Usage(format!(
            "compact format needs every symbol below 10 but symbols reach {max_symbol}"
        )));
    }
    let limit = a
        .limit
        .map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX));
    let symbols = raw_stream(&a.source, &target)?
        .map(|s| s + shift)
        .take(limit);

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match a.format {
        FormatArg::Compact => {
            for s in symbols {
                write!(out, "{s}")?;
            }
            writeln!(out)?;
        }
        FormatArg::Delimited => {
            for (i, s) in symbols.enumerate() {
                if i > 0 {
                    out.write_all(b" ")?;
                }
                write!(out, "{s}")?;
            }
            writeln!(out)?;
        }
        FormatArg::Json => {
            let symbols: Vec<Symbol> = symbols.collect();
            let doc = json!({
                "engine": engine_tag(a.source.engine),
                "family": family_json(&target),
                "params": target.params(),
                "length": symbols.len(),
                "symbols": symbols,
            });
            serde_json::to_writer(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// Symbols of the cycle to verify, before any output shift: either read
/// from `--input` or generated.
fn verify_symbols(a: &VerifyArgs, target: &Target) -> Result<Vec<Symbol>, Failure> {
    let Some(path) = &a.input else {
        return Ok(raw_stream(&a.source, target)?.collect());
    };
    let text = if path == "-" {
        io::read_to_string(io::stdin())?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?
    };
    let shift = target.shift();
    let word = Word::parse(text.trim(), target.params().t + shift)?;
    word.symbols()
        .iter()
        .map(|&s| {
            s.checked_sub(shift)
                .ok_or_else(|| Failure::Usage(format!("input symbols must be at least {shift}")))
        })
        .collect()
}

fn cmd_verify(a: &VerifyArgs) -> CliResult {
    let target = resolve(&a.source)?;
    let params = target.params();
    let options = VerifyOptions {
        cap: a.cap,
        full_lists: a.full_lists,
    };
    let against = a.against.unwrap_or(match target {
        Target::Words(_) => AgainstArg::Words,
        Target::Subsets { .. } => AgainstArg::Subsets,
        Target::MultisetsFreq { .. } => AgainstArg::MultisetsFreq,
        Target::MultisetsDiff { .. } => AgainstArg::MultisetsDiff,
    });
    let universe = match against {
        AgainstArg::Words => Universe::BoundedWords {
            t: params.t,
            n: params.n,
            w: params.w,
        },
        AgainstArg::FixedWeight => Universe::FixedWeightWords {
            t: params.t,
            n: params.n,
            w: params.w,
        },
        objects => {
            let universe = target.default_universe();
            let matches = matches!(
                (objects, universe),
                (AgainstArg::Subsets, Universe::Subsets { .. })
                    | (AgainstArg::MultisetsFreq, Universe::MultisetsFreq { .. })
                    | (AgainstArg::MultisetsDiff, Universe::MultisetsDiff { .. })
            );
            if !matches {
                return Err(Failure::Usage(format!(
                    "--against {} needs the matching object family flag",
                    clap::ValueEnum::to_possible_value(&objects)
                        .map_or_else(String::new, |v| v.get_name().to_string())
                )));
            }
            universe
        }
    };
    // Refuse before generating anything.
    let size = universe.size();
    if size > a.cap {
        return Err(ucycles::Error::CapExceeded {
            what: universe.to_string(),
            size,
            cap: a.cap,
        }
        .into());
    }
    let raw = verify_symbols(a, &target)?;
    let report = match against {
        AgainstArg::Words => verify_universal_cycle(&raw, &universe, &options)?,
        AgainstArg::FixedWeight => {
            let cycle = UCycle::new(raw, params, engine_tag(a.source.engine));
            verify_listing(&fixed_weight_expand(&cycle)?, &universe, &options)?
        }
        _ => {
            let shown: Vec<Symbol> = raw.iter().map(|s| s + target.shift()).collect();
            verify_universal_cycle(&shown, &universe, &options)?
        }
    };
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    Ok(if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}

fn cmd_decode(a: &DecodeArgs) -> CliResult {
    let target = resolve(&a.source)?;
    let params = target.params();
    let shown: Vec<Symbol> = raw_stream(&a.source, &target)?
        .map(|s| s + target.shift())
        .collect();
    let cycle = UCycle::new(shown, params, engine_tag(a.source.engine));
    let window = cycle.window(a.position)?;
    let doc = match target.scheme() {
        None => json!({"position": a.position, "window": window}),
        Some((scheme, n, k)) => {
            let object = CombCycle {
                cycle,
                scheme,
                n,
                k,
            }
            .decode_window(a.position)?;
            json!({"position": a.position, "window": window, "object": object})
        }
    };
    writeln!(io::stdout().lock(), "{doc}")?;
    Ok(ExitCode::SUCCESS)
}

fn feedback_kind(kind: KindArg) -> FeedbackKind {
    match kind {
        KindArg::Pcr => FeedbackKind::Pcr,
        KindArg::Msr => FeedbackKind::Msr,
    }
}

fn cmd_tree(a: &TreeArgs) -> CliResult {
    let params = ParamSet::new(a.t, a.n, a.w)?;
    let tree = build_tree_with_cap(feedback_kind(a.kind), params, a.cap)?;
    let mut out = io::stdout().lock();
    match a.format {
        TreeFormatArg::Dot => write!(out, "{}", tree.to_dot())?,
        TreeFormatArg::Json => writeln!(out, "{}", serde_json::to_string_pretty(&tree.export())?)?,
    }
    Ok(ExitCode::SUCCESS)
}

/// Cells `(t, n, w)` with `2 <= t`, `1 <= n` and `t^n` under the bound.
fn grid(g: &GridArgs, w_limit: impl Fn(u32, usize) -> u32) -> Vec<ParamSet> {
    let mut cells = Vec::new();
    for t in 2..=g.max_t {
        for n in 1..=g.max_n {
            let within = u32::try_from(n)
                .ok()
                .and_then(|e| u128::from(t).checked_pow(e))
                .is_some_and(|tn| tn <= g.max_tn);
            if !within {
                continue;
            }
            for w in 0..=w_limit(t, n) {
                if let Ok(p) = ParamSet::new(t, n, w) {
                    cells.push(p);
                }
            }
        }
    }
    cells
}

fn cmd_conjecture(a: &ConjectureArgs) -> CliResult {
    let cells = match (a.t, a.n, a.w) {
        (Some(t), Some(n), Some(w)) => vec![ParamSet::new(t, n, w)?],
        _ => grid(&a.grid, |t, _| t - 1),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut divergent = 0usize;
    for params in &cells {
        let report = check_conjecture(*params)?;
        if a.json {
            serde_json::to_writer(&mut out, &report)?;
            writeln!(out)?;
        } else if let Some(pos) = report.first_divergence {
            writeln!(
                out,
                "t={} n={} w={} diverges at position {pos} (msr length {}, reverse-colex length {})",
                params.t, params.n, params.w, report.msr_len, report.reverse_colex_len
            )?;
        } else if cells.len() == 1 {
            writeln!(out, "t={} n={} w={} equal", params.t, params.n, params.w)?;
        }
        divergent += usize::from(!report.equal);
    }
    if !a.json {
        writeln!(
            out,
            "checked {} cells: {} equal, {divergent} divergent",
            cells.len(),
            cells.len() - divergent
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_cell(params: ParamSet, generic: bool) -> Result<Vec<String>, ucycles::Error> {
    let mut problems = Vec::new();
    let options = VerifyOptions::default();
    let universe = Universe::BoundedWords {
        t: params.t,
        n: params.n,
        w: params.w,
    };
    let concat = generate_concat(params);
    if successor_cycle(params).symbols != concat.symbols {
        problems.push("successor rule differs from concatenation".to_string());
    }
    if !verify_universal_cycle(&concat.symbols, &universe, &options)?.ok {
        problems.push("concatenation is not universal".to_string());
    }
    let msr = if params.w < params.t {
        let v = generate_msr(params)?;
        if !verify_universal_cycle(&v.symbols, &universe, &options)?.ok {
            problems.push("msr cycle is not universal".to_string());
        }
        Some(v)
    } else {
        None
    };
    if generic {
        let mut trees = vec![(build_tree(FeedbackKind::Pcr, params)?, concat)];
        if let Some(v) = msr {
            trees.push((build_tree(FeedbackKind::Msr, params)?, v));
        }
        for (tree, expected) in trees {
            let kind = tree.kind;
            if generic_cycle(&tree)?.symbols != expected.symbols {
                problems.push(format!("generic {kind:?} successor differs"));
            }
            if !check_chain_property(&tree) || !check_periodic_leaves(&tree) {
                problems.push(format!("{kind:?} tree breaks a structural property"));
            }
        }
    }
    Ok(problems)
}

fn cmd_sweep(a: &SweepArgs) -> CliResult {
    let cells = grid(&a.grid, |t, n| (t - 1) * n as u32);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = 0usize;
    for params in &cells {
        let problems = sweep_cell(*params, a.generic)?;
        for p in &problems {
            writeln!(out, "t={} n={} w={}: {p}", params.t, params.n, params.w)?;
        }
        failed += usize::from(!problems.is_empty());
    }
    writeln!(out, "checked {} cells: {failed} failed", cells.len())?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}
