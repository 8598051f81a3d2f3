//! `ngt`: root systems, λ-sequences, braid moves and non-gatherable triples
//! from the command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ngt_core::braid::{braid_class, endpoints_movable, gather, GatherOutcome, GatherQuery, MoveRecord, SegmentRule};
use ngt_core::ngt::{
    admissible_triples, find_blocks, is_minimal_ngt, search_minimal_ngt, verify_theorem1, CheckPolicy, MinNgtJson,
    MinNgtRecord, SearchOptions,
};
use ngt_core::planar::{render, word_to_config, RenderFormat};
use ngt_core::verify::{verify_classical, verify_gamma_list, verify_tables, Report};
use ngt_core::{Error, RootId, RootSystem, RootSystemId, Word};

/// `println!` that propagates write errors so a closed pipe ends the run quietly.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(io::stdout().lock(), $($arg)*)?
    };
}

#[derive(Parser)]
#[command(name = "ngt", version, about = "Non-gatherable triples in finite root systems")]
struct Cli {
    /// Output format; `render` takes `ascii` (the default for text) or `svg`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for group scans (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Maximum number of states explored by one gathering search.
    #[arg(long, global = true, env = "NGT_NODE_CAP", default_value_t = 5_000_000)]
    node_cap: usize,
    /// Soft wall-clock limit in seconds for `search-ngt`: the scan stops after
    /// the first length stratum that ends past it (resume with `--checkpoint`).
    #[arg(long, global = true, env = "NGT_TIME_LIMIT")]
    time_limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Tables,
    Theorem1,
    GammaLists,
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Simple and positive roots, Cartan matrix and highest roots.
    Roots { system: RootSystemId },
    /// λ-sequence of a reduced word.
    Lambda { system: RootSystemId, word: Word },
    /// Length and shortlex form of the element a word spells.
    Reduce { system: RootSystemId, word: Word },
    /// Reduced words reachable by braid moves.
    BraidClass {
        system: RootSystemId,
        word: Word,
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
    /// Try to make the triple (α, α + β, β) consecutive; without roots, every
    /// admissible triple of the word is tried.
    Gather {
        system: RootSystemId,
        word: Word,
        #[arg(long, requires = "beta")]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        /// Keep the segment fixed at its initial extent.
        #[arg(long = "static")]
        fixed: bool,
    },
    /// All minimal non-gatherable triples of the Weyl group.
    SearchNgt {
        system: RootSystemId,
        /// Checkpoint file, written after each length stratum and resumed from.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Blocks for the admissible triples of a word.
    Blocks { system: RootSystemId, word: Word },
    /// Compare computations with reference results.
    Verify {
        target: Target,
        system: RootSystemId,
        /// Random elements instead of the full group (theorem1 only).
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Draw the line configuration of a word in type B, C or D.
    Render {
        system: RootSystemId,
        word: Word,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Ctx {
    format: Format,
    node_cap: usize,
    time_limit: Option<Duration>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let ctx = Ctx {
        format: if cli.json { Format::Json } else { cli.format },
        node_cap: cli.node_cap,
        time_limit: cli.time_limit.map(Duration::from_secs),
    };
    match run(&ctx, cli.command) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::NotReduced { .. }) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<serde_json::Error>().and_then(|j| j.io_error_kind()) == Some(io::ErrorKind::BrokenPipe)
    })
}

fn build(id: RootSystemId) -> anyhow::Result<RootSystem> {
    Ok(RootSystem::build(id)?)
}

fn emit_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn emit_csv<T: Serialize>(rows: &[T]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn no_csv(ctx: &Ctx) -> anyhow::Result<()> {
    if ctx.format == Format::Csv {
        bail!("csv output is not available for this command");
    }
    Ok(())
}

fn run(ctx: &Ctx, command: Command) -> anyhow::Result<ExitCode> {
    let picture = matches!(ctx.format, Format::Ascii | Format::Svg);
    if picture && !matches!(command, Command::Render { .. }) {
        bail!("ascii and svg output are only available for render");
    }
    match command {
        Command::Roots { system } => cmd_roots(ctx, &build(system)?),
        Command::Lambda { system, word } => cmd_lambda(ctx, &build(system)?, &word),
        Command::Reduce { system, word } => cmd_reduce(ctx, &build(system)?, &word),
        Command::BraidClass { system, word, limit } => cmd_braid_class(ctx, &build(system)?, &word, limit),
        Command::Gather { system, word, alpha, beta, fixed } => {
            let rule = if fixed { SegmentRule::Static } else { SegmentRule::Dynamic };
            cmd_gather(ctx, &build(system)?, &word, alpha.zip(beta), rule)
        }
        Command::SearchNgt { system, checkpoint } => cmd_search(ctx, &build(system)?, checkpoint.as_deref()),
        Command::Blocks { system, word } => cmd_blocks(ctx, &build(system)?, &word),
        Command::Verify { target, system, sample, seed } => cmd_verify(ctx, &build(system)?, target, sample, seed),
        Command::Render { system, word, output } => {
            let format = match ctx.format {
                Format::Svg => RenderFormat::Svg,
                Format::Ascii | Format::Text => RenderFormat::Ascii,
                _ => bail!("render produces ascii or svg"),
            };
            cmd_render(&build(system)?, &word, format, output.as_deref())
        }
    }
}

#[derive(Serialize)]
struct RootRow {
    index: usize,
    coeffs: String,
    eps: String,
    height: i32,
    long: bool,
}

fn cmd_roots(ctx: &Ctx, rs: &RootSystem) -> anyhow::Result<ExitCode> {
    let export = rs.export();
    match ctx.format {
        Format::Json => emit_json(&export)?,
        Format::Csv => {
            let rows: Vec<RootRow> = export
                .positive_roots
                .iter()
                .enumerate()
                .map(|(k, r)| RootRow {
                    index: k + 1,
                    coeffs: r.coeffs.clone(),
                    eps: r.eps.clone(),
                    height: r.height,
                    long: r.length == ngt_core::LengthClass::Long,
                })
                .collect();
            emit_csv(&rows)?;
        }
        Format::Text | Format::Ascii | Format::Svg => {
            out!("{} rank {} with {} positive roots", rs.id(), rs.rank(), rs.num_positive());
            for (k, r) in export.simple_roots.iter().enumerate() {
                out!("alpha{} = {} ({:?})", k + 1, r.eps, r.length);
            }
            out!("cartan:");
            for row in rs.cartan() {
                out!("  {}", row.iter().map(|c| format!("{c:>3}")).collect::<String>());
            }
            out!("theta = {}  vartheta = {}", export.theta, export.vartheta);
            for r in &export.positive_roots {
                out!("{:>10}  {:<24} height {:>2} {:?}", r.coeffs, r.eps, r.height, r.length);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct LambdaJson {
    system: String,
    word: String,
    length: usize,
    /// First root is the root of the last written letter.
    lambda: Vec<String>,
    /// Aligned with the written letters.
    written: Vec<String>,
}

fn roots_text(rs: &RootSystem, v: &[RootId]) -> Vec<String> {
    v.iter().map(|&r| rs.format_root(r)).collect()
}

fn cmd_lambda(ctx: &Ctx, rs: &RootSystem, word: &Word) -> anyhow::Result<ExitCode> {
    let seq = rs.lambda_sequence(word)?;
    let out = LambdaJson {
        system: rs.id().to_string(),
        word: word.to_string(),
        length: seq.len(),
        lambda: roots_text(rs, &seq.roots),
        written: roots_text(rs, &seq.written_order()),
    };
    match ctx.format {
        Format::Json => emit_json(&out)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                position: usize,
                letter: u8,
                root: &'a str,
            }
            let rows: Vec<Row> = out
                .written
                .iter()
                .zip(word.letters())
                .enumerate()
                .map(|(p, (r, &l))| Row { position: p + 1, letter: l + 1, root: r })
                .collect();
            emit_csv(&rows)?;
        }
        Format::Text | Format::Ascii | Format::Svg => {
            out!("reduced, length {}", out.length);
            out!("lambda order:  {}", out.lambda.join(" "));
            out!("written order: {}", out.written.join(" "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(ctx: &Ctx, rs: &RootSystem, word: &Word) -> anyhow::Result<ExitCode> {
    no_csv(ctx)?;
    let e = rs.element_of(word)?;
    let shortlex = rs.shortlex(&e);
    let (first, last) = endpoints_movable(rs, &e);
    if ctx.format == Format::Json {
        emit_json(&serde_json::json!({
            "system": rs.id().to_string(),
            "word": word.to_string(),
            "reduced": rs.is_reduced(word),
            "length": e.length(),
            "shortlex": shortlex.to_string(),
            "involution": e.is_involution(),
            "first_root_movable": first,
            "last_root_movable": last,
        }))?;
    } else {
        out!("reduced: {}", rs.is_reduced(word));
        out!("length: {}", e.length());
        out!("shortlex: {shortlex}");
        out!("first root movable: {first}, last root movable: {last}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_braid_class(ctx: &Ctx, rs: &RootSystem, word: &Word, limit: usize) -> anyhow::Result<ExitCode> {
    let class = braid_class(rs, word, limit)?;
    let mut words: Vec<String> = class.words.iter().map(Word::to_string).collect();
    words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    match ctx.format {
        Format::Json => {
            emit_json(&serde_json::json!({ "complete": class.complete, "count": words.len(), "words": words }))?
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                word: &'a str,
            }
            emit_csv(&words.iter().map(|w| Row { word: w }).collect::<Vec<_>>())?;
        }
        Format::Text | Format::Ascii | Format::Svg => {
            let note = if class.complete { "" } else { " (limit reached, partial)" };
            out!("{} reduced words{note}", words.len());
            for w in &words {
                out!("{w}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct GatherJson {
    alpha: String,
    gamma: String,
    beta: String,
    outcome: &'static str,
    visited: usize,
    witness: Option<String>,
    trace: Vec<MoveRecord>,
}

fn gather_one(rs: &RootSystem, query: &GatherQuery) -> anyhow::Result<GatherJson> {
    let outcome = gather(rs, query)?;
    let (name, witness, trace) = match &outcome {
        GatherOutcome::Gathered { witness, trace, .. } => {
            ("gathered", Some(witness.to_string()), trace.iter().map(|&m| m.into()).collect())
        }
        GatherOutcome::NotGatherable { .. } => ("not_gatherable", None, Vec::new()),
        GatherOutcome::CapExceeded { .. } => ("cap_exceeded", None, Vec::new()),
    };
    Ok(GatherJson {
        alpha: rs.format_root(query.alpha),
        gamma: rs.format_root(query.gamma),
        beta: rs.format_root(query.beta),
        outcome: name,
        visited: outcome.visited(),
        witness,
        trace,
    })
}

fn cmd_gather(
    ctx: &Ctx,
    rs: &RootSystem,
    word: &Word,
    roots: Option<(String, String)>,
    rule: SegmentRule,
) -> anyhow::Result<ExitCode> {
    no_csv(ctx)?;
    let seq = rs.lambda_sequence(word)?;
    let queries: Vec<GatherQuery> = match roots {
        Some((a, b)) => {
            let (alpha, beta) = (rs.parse_root(&a)?, rs.parse_root(&b)?);
            let gamma = rs.add(alpha, beta).ok_or_else(|| anyhow!("{a} + {b} is not a root"))?;
            vec![GatherQuery::new(word.clone(), alpha, gamma, beta)]
        }
        None => admissible_triples(rs, &seq)
            .into_iter()
            .map(|p| GatherQuery::new(word.clone(), p.triple.alpha, p.triple.gamma, p.triple.beta))
            .collect(),
    };
    let results: Vec<GatherJson> = queries
        .into_iter()
        .map(|q| gather_one(rs, &q.with_rule(rule).with_cap(ctx.node_cap)))
        .collect::<anyhow::Result<_>>()?;
    if ctx.format == Format::Json {
        emit_json(&results)?;
    } else {
        if results.is_empty() {
            out!("no admissible triples");
        }
        for r in &results {
            out!("alpha {} gamma {} beta {}: {} ({} states)", r.alpha, r.gamma, r.beta, r.outcome, r.visited);
            if let Some(w) = &r.witness {
                out!("  witness {w} after {} moves", r.trace.len());
            }
        }
    }
    let capped = results.iter().any(|r| r.outcome == "cap_exceeded");
    Ok(if capped { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    system: String,
    completed_length: usize,
    words: Vec<String>,
}

fn load_checkpoint(rs: &RootSystem, path: &Path, cap: usize) -> anyhow::Result<Option<(usize, Vec<MinNgtRecord>)>> {
    if !path.exists() {
        return Ok(None);
    }
    let cp: Checkpoint =
        serde_json::from_str(&fs::read_to_string(path)?).with_context(|| format!("reading {}", path.display()))?;
    if cp.system != rs.id().to_string() {
        bail!("checkpoint is for {}, not {}", cp.system, rs.id());
    }
    let mut records = Vec::new();
    for w in &cp.words {
        let e = rs.element_of(&w.parse()?)?;
        records.push(is_minimal_ngt(rs, &e, cap)?.ok_or_else(|| anyhow!("checkpoint word {w} is not a minimal NGT"))?);
    }
    Ok(Some((cp.completed_length, records)))
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(cp)?)?;
    fs::rename(tmp, path)
}

fn cmd_search(ctx: &Ctx, rs: &RootSystem, checkpoint: Option<&Path>) -> anyhow::Result<ExitCode> {
    let resumed = match checkpoint {
        Some(p) => load_checkpoint(rs, p, ctx.node_cap)?,
        None => None,
    };
    let (resume_after, mut records) = match resumed {
        Some((len, recs)) => {
            eprintln!("resuming after length {len} with {} records", recs.len());
            (Some(len), recs)
        }
        None => (None, Vec::new()),
    };
    let saved = std::sync::Mutex::new(records.iter().map(|r| r.word.to_string()).collect::<Vec<_>>());
    let progress = |len: usize, examined: usize, found: usize| {
        eprintln!("length {len}: {examined} elements examined, {found} records");
    };
    let on_stratum = |len: usize, stratum: &[MinNgtRecord]| {
        if let Some(p) = checkpoint {
            let mut words = saved.lock().unwrap();
            words.extend(stratum.iter().map(|r| r.word.to_string()));
            let cp = Checkpoint { system: rs.id().to_string(), completed_length: len, words: words.clone() };
            if let Err(e) = write_checkpoint(p, &cp) {
                eprintln!("warning: cannot write checkpoint: {e}");
            }
        }
    };
    let opts = SearchOptions {
        node_cap: ctx.node_cap,
        resume_after,
        progress: Some(&progress),
        on_stratum: Some(&on_stratum),
        deadline: ctx.time_limit.map(|t| Instant::now() + t),
    };
    let report = search_minimal_ngt(rs, &opts);
    records.extend(report.records);
    let rows: Vec<MinNgtJson> = records.iter().map(|r| r.to_json(rs)).collect();
    match ctx.format {
        Format::Json => emit_json(&rows)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                word: &'a str,
                length: usize,
                beta: &'a str,
                gamma: &'a str,
                alpha: &'a str,
                blocks: usize,
                provenance: &'a str,
                embedded: String,
            }
            let flat: Vec<Row> = rows
                .iter()
                .map(|r| Row {
                    word: &r.word,
                    length: r.length,
                    beta: &r.beta,
                    gamma: &r.gamma,
                    alpha: &r.alpha,
                    blocks: r.blocks.len(),
                    provenance: &r.provenance,
                    embedded: r.embedded.join(" "),
                })
                .collect();
            emit_csv(&flat)?;
        }
        Format::Text | Format::Ascii | Format::Svg => {
            out!("{} minimal NGT in {}", rows.len(), rs.id());
            for r in &rows {
                let tag =
                    if r.embedded.is_empty() { String::new() } else { format!(" [in {}]", r.embedded.join(", ")) };
                out!(
                    "{:<32} NGT {}, {}, {}  blocks {}  {}{tag}",
                    r.word,
                    r.beta,
                    r.gamma,
                    r.alpha,
                    r.blocks.len(),
                    r.provenance
                );
            }
        }
    }
    if let Some(len) = report.stopped_after {
        eprintln!("time limit reached after length {len}; the list above is partial");
        return Ok(ExitCode::from(3));
    }
    if !report.capped.is_empty() {
        eprintln!(
            "warning: {} candidates hit the node cap; the list above is partial: {}",
            report.capped.len(),
            report.capped.iter().map(Word::to_string).collect::<Vec<_>>().join(" ")
        );
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_blocks(ctx: &Ctx, rs: &RootSystem, word: &Word) -> anyhow::Result<ExitCode> {
    no_csv(ctx)?;
    let seq = rs.lambda_sequence(word)?;
    let mut out = Vec::new();
    for p in admissible_triples(rs, &seq) {
        let segment = &seq.roots[p.positions[0]..=p.positions[2]];
        let blocks = find_blocks(rs, segment, &p.triple);
        out.push(serde_json::json!({
            "alpha": rs.format_root(p.triple.alpha),
            "gamma": rs.format_root(p.triple.gamma),
            "beta": rs.format_root(p.triple.beta),
            "blocks": blocks.iter().map(|b| serde_json::json!({
                "kind": b.kind.to_string(),
                "simple": roots_text(rs, &b.simple),
                "intersection": roots_text(rs, &b.intersection),
            })).collect::<Vec<_>>(),
        }));
        if ctx.format == Format::Text {
            out!(
                "alpha {} gamma {} beta {}: {} block(s)",
                rs.format_root(p.triple.alpha),
                rs.format_root(p.triple.gamma),
                rs.format_root(p.triple.beta),
                blocks.len()
            );
            for b in &blocks {
                out!("  {} base {}", b.kind, roots_text(rs, &b.simple).join(", "));
            }
        }
    }
    if ctx.format == Format::Json {
        emit_json(&out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(ctx: &Ctx, report: &Report) -> anyhow::Result<()> {
    if ctx.format == Format::Json {
        return emit_json(report);
    }
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            out!("{status} {}", c.name);
        } else {
            out!("{status} {}: {}", c.name, c.detail);
        }
    }
    out!("{} {} {}", report.target, report.system, if report.passed() { "PASS" } else { "FAIL" });
    Ok(())
}

fn cmd_verify(
    ctx: &Ctx,
    rs: &RootSystem,
    target: Target,
    sample: Option<usize>,
    seed: u64,
) -> anyhow::Result<ExitCode> {
    no_csv(ctx)?;
    let passed = match target {
        Target::Tables => {
            let r = verify_tables(rs, ctx.node_cap)?;
            print_report(ctx, &r)?;
            r.passed()
        }
        Target::GammaLists => {
            let r = verify_gamma_list(rs)?;
            print_report(ctx, &r)?;
            r.passed()
        }
        Target::Classical => {
            let r = verify_classical(rs, ctx.node_cap)?;
            print_report(ctx, &r)?;
            r.passed()
        }
        Target::Theorem1 => {
            let policy = match sample {
                Some(count) => CheckPolicy::Sample { count, seed },
                None => CheckPolicy::Full,
            };
            let r = verify_theorem1(rs, policy, ctx.node_cap);
            if ctx.format == Format::Json {
                emit_json(&r)?;
            } else {
                out!(
                    "{}: {} elements, {} anchored triples, {} not gatherable, {} with a block, {} capped",
                    r.system,
                    r.elements,
                    r.triples,
                    r.not_gatherable,
                    r.with_block,
                    r.capped
                );
                for m in &r.mismatches {
                    out!("MISMATCH {} triple {:?} gatherable {} blocks {}", m.word, m.triple, m.gatherable, m.blocks);
                }
                out!("theorem1 {} {}", r.system, if r.holds() { "PASS" } else { "FAIL" });
            }
            r.holds()
        }
    };
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_render(rs: &RootSystem, word: &Word, format: RenderFormat, output: Option<&Path>) -> anyhow::Result<ExitCode> {
    let config = word_to_config(rs, word)?;
    let text = render(rs, &config, format);
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => write!(io::stdout().lock(), "{text}")?,
    }
    if !config.is_genuine() {
        eprintln!("note: lines {:?} need pseudo-lines", config.pseudo_lines);
    }
    Ok(ExitCode::SUCCESS)
}
