use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tauweb::gentau::{match_across, MatchMode, TauSystem};
use tauweb::kl::{left_cells, ts_action_on_cell, KlTable};
use tauweb::rs::rs;
use tauweb::symgroup::Permutation;
use tauweb::tableaux::StandardTableau;
use tauweb::webs::{
    apply_word, find_negative_coefficients, tableau_to_web, to_dot, to_svg, to_svg_with_depths, web_to_tableau,
    web_to_yamanouchi, Hecke, QuantumBraid, SearchOptions, Skein, Symmetric, Web, WebError, WebSum,
};

mod draw;
mod verify;

#[derive(Parser)]
#[command(name = "tauweb", version, about = "Tableaux, Kazhdan-Lusztig cells and sl3 webs")]
struct Cli {
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Robinson-Schensted: prints P and Q of a permutation in one-line notation.
    Rs { perm: String },
    #[command(subcommand)]
    Kl(KlCommand),
    #[command(subcommand)]
    Web(WebCommand),
    #[command(subcommand)]
    Gentau(GentauCommand),
    /// Runs a named check and prints a JSON report; exit code 1 on failure.
    Verify(verify::VerifyArgs),
    /// Draws a web or a tableau.
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum KlCommand {
    /// The KL polynomial table of S_n in the versioned cache format.
    Table { n: usize },
    /// Left cells of S_n, one per line: index, Q tableau, members.
    Cells { n: usize },
    /// T_{s_i} C_w inside the left cell of w.
    Act { n: usize, i: usize, w: String },
}

#[derive(Subcommand)]
enum WebCommand {
    /// The reduced web of a three-row rectangular tableau, in the web text format.
    FromTableau { tableau: String },
    /// Yamanouchi word and tableau of a reduced web file (`-` for stdin).
    Yamanouchi { file: String },
    /// Applies a word in the generators (last letter first) and prints the reduced expansion.
    Act {
        /// Generator indices, e.g. `2,1` or `21`.
        word: String,
        file: String,
        #[arg(long, value_enum, default_value_t = Mode::Symmetric)]
        mode: Mode,
    },
    /// Every negative coefficient in s_k W over reduced webs with 3n boundary vertices.
    SearchNegative {
        n: usize,
        /// Restrict to these generators (repeatable).
        #[arg(long = "generator", short = 'k')]
        generators: Vec<usize>,
        /// Stop after the first hit.
        #[arg(long)]
        first: bool,
        /// No progress line on stderr.
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Symmetric,
    Hecke,
    Quantum,
}

#[derive(Subcommand)]
enum GentauCommand {
    /// Matches two systems by generalized τ-invariant and prints the pairs as TSV.
    ///
    /// Systems: `perms[:n]`, `tableaux:<shape>` (e.g. `tableaux:3,3,3`), `tableaux:all<n>`,
    /// `webs:<n>`, `klcell:<n>,<Q>` (e.g. `klcell:4,12/34`).
    Match {
        a: String,
        b: String,
        /// Rank for systems given without one (`perms`, `tableaux`).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = MatchKind::Bijection)]
        mode: MatchKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchKind {
    Bijection,
    Function,
}

#[derive(clap::Args)]
struct RenderArgs {
    #[arg(value_enum)]
    object: Object,
    /// Web file, tableau, or nothing for `empty`.
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    /// Write face depths along the boundary line (SVG webs only).
    #[arg(long)]
    depths: bool,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Object {
    /// A web file.
    Web,
    /// The reduced web of a tableau.
    TableauWeb,
    /// A tableau as a grid of boxes.
    Tableau,
    /// The web with no vertices.
    Empty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match cmd {
        Command::Rs { perm } => {
            let w: Permutation = perm.parse()?;
            let (p, q) = rs(&w);
            writeln!(out, "P\t{p}\nQ\t{q}")?;
        }
        Command::Kl(c) => kl(c, &mut out)?,
        Command::Web(c) => web(c, &mut out)?,
        Command::Gentau(GentauCommand::Match { a, b, n, mode }) => {
            let sa = parse_system(&a, n)?;
            let sb = parse_system(&b, n)?;
            let mode = match mode {
                MatchKind::Bijection => MatchMode::Bijection,
                MatchKind::Function => MatchMode::Function,
            };
            let m = match_across(&sa, &sb, mode).map_err(|e| anyhow!("{e}"))?;
            for (x, &y) in m.map.iter().enumerate() {
                writeln!(out, "{}\t{}", sa.label(x), sb.label(y))?;
            }
            eprintln!("stabilized at order {}", m.stabilized_at);
        }
        Command::Verify(args) => {
            let report = verify::run(&args)?;
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
            if !report.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Render(args) => render(args)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn kl(cmd: KlCommand, out: &mut impl Write) -> Result<()> {
    match cmd {
        KlCommand::Table { n } => {
            let table = KlTable::compute(n)?;
            out.write_all(table.to_cache_string().as_bytes())?;
        }
        KlCommand::Cells { n } => {
            let table = KlTable::compute(n)?;
            for (k, cell) in left_cells(&table)?.iter().enumerate() {
                let members: Vec<String> = cell.members().iter().map(|w| w.to_string()).collect();
                writeln!(out, "{k}\t{}\t{}", cell.right_tableau(), members.join(" "))?;
            }
        }
        KlCommand::Act { n, i, w } => {
            let w: Permutation = w.parse()?;
            if w.n() != n {
                bail!("{w} is not in S_{n}");
            }
            let table = KlTable::compute(n)?;
            let cells = left_cells(&table)?;
            let cell = cells.iter().find(|c| c.contains(&w)).expect("cells cover S_n");
            for (y, c) in ts_action_on_cell(&table, cell, i, &w)? {
                writeln!(out, "{c}\t{y}")?;
            }
        }
    }
    Ok(())
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_web(path: &str) -> Result<Web> {
    Ok(Web::from_text(&read_input(path)?)?)
}

fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parsed: Option<Vec<usize>> = if s.contains(',') {
        s.split(',').map(|t| t.trim().parse().ok()).collect()
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    parsed.ok_or_else(|| anyhow!("bad word {s:?}"))
}

fn print_sum<S: Skein>(sum: &WebSum<S>, show: impl Fn(&S::C) -> String, out: &mut impl Write) -> Result<()> {
    let mut rows = Vec::new();
    for (w, c) in sum.terms() {
        let t = web_to_tableau(w)?;
        rows.push((t.row_word(), t, show(c)));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, t, c) in rows {
        writeln!(out, "{c}\t{t}")?;
    }
    Ok(())
}

fn web(cmd: WebCommand, out: &mut impl Write) -> Result<()> {
    match cmd {
        WebCommand::FromTableau { tableau } => {
            let t: StandardTableau = tableau.parse()?;
            out.write_all(tableau_to_web(&t)?.to_text().as_bytes())?;
        }
        WebCommand::Yamanouchi { file } => {
            let w = read_web(&file)?;
            let y = web_to_yamanouchi(&w)?;
            writeln!(out, "{y}\t{}", y.to_tableau())?;
        }
        WebCommand::Act { word, file, mode } => {
            let word = parse_word(&word)?;
            let w = read_web(&file)?;
            match mode {
                Mode::Symmetric => {
                    let r = apply_word(&word, &WebSum::<Symmetric>::from_web(w))?;
                    print_sum(&r, |c| c.to_string(), out)?;
                }
                Mode::Hecke => {
                    let r = apply_word(&word, &WebSum::<Hecke>::from_web(w))?;
                    print_sum(&r, |c| c.to_string(), out)?;
                }
                Mode::Quantum => {
                    let r = apply_word(&word, &WebSum::<QuantumBraid>::from_web(w))?;
                    print_sum(&r, |c| c.display_with('q'), out)?;
                }
            }
        }
        WebCommand::SearchNegative { n, generators, first, quiet } => {
            if n > 6 {
                bail!("n = {n} is beyond the search budget (at most 6)");
            }
            if let Some(&k) = generators.iter().find(|&&k| k == 0 || k >= 3 * n) {
                return Err(WebError::IndexOutOfRange { index: k, max: 3 * n - 1 }.into());
            }
            let progress = Arc::new(AtomicUsize::new(0));
            let opts = SearchOptions {
                stop_at_first: first,
                generators: (!generators.is_empty()).then_some(generators),
                progress: Some(progress.clone()),
            };
            let total = StandardTableau::all_of_shape(&[n, n, n]).len();
            let finished = Arc::new(AtomicBool::new(false));
            let reporter = (!quiet).then(|| {
                let (progress, finished) = (progress.clone(), finished.clone());
                std::thread::spawn(move || {
                    while !finished.load(Ordering::Relaxed) {
                        eprint!("\rscanned {}/{total} webs", progress.load(Ordering::Relaxed));
                        std::thread::sleep(Duration::from_millis(500));
                    }
                    eprintln!("\rscanned {}/{total} webs", progress.load(Ordering::Relaxed));
                })
            });
            let hits = find_negative_coefficients(n, &opts);
            finished.store(true, Ordering::Relaxed);
            if let Some(h) = reporter {
                let _ = h.join();
            }
            for h in hits {
                writeln!(out, "{}\t{}\t{}\t{}", h.web, h.generator, h.term, h.coefficient)?;
            }
        }
    }
    Ok(())
}

fn parse_system(spec: &str, n: Option<usize>) -> Result<TauSystem> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let need_n = || n.ok_or_else(|| anyhow!("{spec}: give a rank with --n"));
    let number = |s: &str| s.trim().parse::<usize>().with_context(|| format!("{spec}: bad number {s:?}"));
    let sys = match kind {
        "perms" => {
            let n = if arg.is_empty() { need_n()? } else { number(arg)? };
            TauSystem::permutations(n)?
        }
        "tableaux" => {
            if arg.is_empty() {
                TauSystem::all_tableaux(need_n()?)?
            } else if let Some(k) = arg.strip_prefix("all") {
                TauSystem::all_tableaux(number(k)?)?
            } else {
                let shape: Vec<usize> = arg.split(',').map(number).collect::<Result<_>>()?;
                if shape.windows(2).any(|p| p[0] < p[1]) {
                    bail!("{spec}: shape must be weakly decreasing");
                }
                TauSystem::tableaux(&shape)?
            }
        }
        "webs" => TauSystem::webs(number(arg)?)?,
        "klcell" => {
            let (n, q) = arg.split_once(',').ok_or_else(|| anyhow!("{spec}: expected klcell:<n>,<Q>"))?;
            let n = number(n)?;
            let q: StandardTableau = q.parse()?;
            let table = KlTable::compute(n)?;
            let cells = left_cells(&table)?;
            let cell = cells.iter().find(|c| *c.right_tableau() == q).ok_or_else(|| anyhow!("{spec}: no cell with Q = {q}"))?;
            TauSystem::kl_cell(&table, cell)?
        }
        _ => bail!("unknown system {spec:?}"),
    };
    if let Some(n) = n {
        if sys.rank() != n {
            bail!("{spec} has rank {}, not {n}", sys.rank());
        }
    }
    Ok(sys)
}

fn render(args: RenderArgs) -> Result<()> {
    let input = || args.input.clone().ok_or_else(|| anyhow!("render needs an input"));
    let text = match args.object {
        Object::Tableau => {
            let t: StandardTableau = input()?.parse()?;
            match args.format {
                Format::Svg => draw::tableau_svg(&t),
                Format::Dot => draw::tableau_dot(&t),
            }
        }
        obj => {
            let w = match obj {
                Object::Web => read_web(&input()?)?,
                Object::TableauWeb => tableau_to_web(&input()?.parse()?)?,
                _ => Web::empty(),
            };
            match (args.format, args.depths) {
                (Format::Dot, _) => to_dot(&w),
                (Format::Svg, false) => to_svg(&w),
                (Format::Svg, true) => to_svg_with_depths(&w),
            }
        }
    };
    match args.output {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {path}"))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
