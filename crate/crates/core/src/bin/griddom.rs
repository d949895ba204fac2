use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use griddom::band::{build_transition_graph, closed_walk, greedy_band, BandOutcome};
use griddom::codec::{to_pds_array, validate_pds_array, PdsArray};
use griddom::figures::Figure;
use griddom::initial::{classify_initial, initial_row, parse_columns, InitialClass, InitialCondition};
use griddom::oracle::{oracle_enumerate, oracle_tpcs, tpc_exists, TopRow};
use griddom::render::{labelled_text, marks_text, pds_svg, window_svg, window_text};
use griddom::search::{enumerate_from_row, SearchOptions};
use griddom::theta::{default_max_rows, run_theta, Strategy, ThetaOutcome};
use griddom::tpc::{build_s1, build_tpc, kg_has_tpc, symmetry_group, TpcShape};
use griddom::Result;

/// Writes to standard output, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "griddom", version, about = "Perfect dominating sets and total perfect codes in grid graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
    Dot,
}

/// Where and how a command writes its artifact.
#[derive(Args)]
struct RenderSpec {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RenderSpec {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| griddom::Error::Parse(format!("{}: {e}", path.display()))),
            None => {
                out!("{text}");
                Ok(())
            }
        }
    }

    fn unsupported(&self, command: &str) -> griddom::Error {
        let name = self.format().to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        griddom::Error::Parse(format!("{command} does not support --format {name}"))
    }
}

#[derive(Args)]
struct Top {
    /// Grid width.
    #[arg(long)]
    m: usize,
    /// Comma-separated 0-based columns of the top-row subset.
    #[arg(long, alias = "s-prime", default_value = "", allow_hyphen_values = true)]
    s: String,
}

impl Top {
    fn columns(&self) -> Result<Vec<usize>> {
        parse_columns(&self.s)
    }

    fn initial(&self) -> Result<InitialCondition> {
        InitialCondition::new(self.m, &self.columns()?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a top-row subset and print its initial labels.
    Check(Top),
    /// Run the labelling engine under one strategy.
    Run {
        #[command(flatten)]
        top: Top,
        /// A word over {a,b}, or alpha, beta, gamma.
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        max_rows: Option<usize>,
        #[command(flatten)]
        render: RenderSpec,
    },
    /// Every PDS reachable from the top row up to a height bound.
    Enumerate {
        #[command(flatten)]
        top: Top,
        #[arg(long)]
        n_max: usize,
        /// Stop each branch at its first completed row.
        #[arg(long)]
        halt: bool,
        /// Worker threads; 1 searches sequentially.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        render: RenderSpec,
    },
    /// Greedy run in the band graph, or the full transition graph.
    Band {
        #[command(flatten)]
        top: Top,
        /// Build the transition graph and its closed walk.
        #[arg(long)]
        graph: bool,
        #[arg(long, default_value_t = 1 << 16)]
        state_cap: usize,
        #[command(flatten)]
        render: RenderSpec,
    },
    /// The PDS-array of a run, or validation of a given array.
    Array {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "")]
        s: String,
        #[arg(long)]
        strategy: Option<String>,
        /// Array text such as "12 22 21/22 11 22"; needs --n.
        #[arg(long)]
        validate: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        render: RenderSpec,
    },
    /// Build a total perfect code of a given shape.
    Tpc {
        #[arg(long)]
        m: usize,
        /// tall, square, square-rotated, square-extra or short.
        #[arg(long, default_value = "tall")]
        shape: String,
        #[command(flatten)]
        render: RenderSpec,
    },
    /// Whether a total perfect code exists in a grid.
    Kg {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// The lattice code on a centred window.
    S1 {
        #[arg(long, default_value_t = 12)]
        radius: usize,
        /// Write an SVG of the rooms and ladders to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print the window as marks.
        #[arg(long)]
        text: bool,
    },
    /// Regenerate reference tables and compare with the golden copies.
    Figures {
        /// fig1, fig2, fig3, arrays, or all.
        #[arg(default_value = "all")]
        which: String,
        /// Print the regenerated text instead of comparing.
        #[arg(long)]
        print: bool,
    },
    /// Brute-force enumeration on a small grid.
    Oracle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Fix the top row to these columns.
        #[arg(long)]
        s: Option<String>,
        /// List total perfect codes instead.
        #[arg(long)]
        tpc: bool,
    },
}

/// Exit status for a rejected top row.
const EXIT_INADMISSIBLE: u8 = 2;
/// Exit status for a run that did not produce a PDS.
const EXIT_NO_PDS: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Check(top) => check(&top),
        Command::Run { top, strategy, max_rows, render } => run(&top, &strategy, max_rows, &render),
        Command::Enumerate { top, n_max, halt, jobs, render } => enumerate(&top, n_max, halt, jobs, &render),
        Command::Band { top, graph, state_cap, render } => band(&top, graph, state_cap, &render),
        Command::Array { m, s, strategy, validate, n, render } => array(m, &s, strategy, validate, n, &render),
        Command::Tpc { m, shape, render } => tpc(m, &shape, &render),
        Command::Kg { m, n } => kg(m, n),
        Command::S1 { radius, svg, text } => s1(radius, svg, text),
        Command::Figures { which, print } => figures(&which, print),
        Command::Oracle { m, n, s, tpc } => oracle(m, n, s, tpc),
    }
}

fn check(top: &Top) -> Result<ExitCode> {
    let cols = top.columns()?;
    let class = classify_initial(top.m, &cols)?;
    match class {
        InitialClass::Iavs => outln!("IAVS, f(H0)={}", initial_row(top.m, &cols)?.word()),
        InitialClass::Complete => outln!("Complete, f(H0)={}", initial_row(top.m, &cols)?.word()),
        InitialClass::EmptyOrFull => outln!("EmptyOrFull"),
        InitialClass::Inadmissible => {
            outln!("Inadmissible");
            return Ok(ExitCode::from(EXIT_INADMISSIBLE));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(top: &Top, strategy: &str, max_rows: Option<usize>, render: &RenderSpec) -> Result<ExitCode> {
    let init = top.initial()?;
    let strategy = Strategy::parse(strategy)?;
    let outcome = run_theta(&init, &strategy, max_rows.unwrap_or_else(|| default_max_rows(top.m)));
    let sol = match &outcome {
        ThetaOutcome::Pds { solution, .. } => solution,
        ThetaOutcome::Stalled { rows, reason, .. } => {
            eprintln!("stalled after {} levels: {reason}", rows.len());
            return Ok(ExitCode::from(EXIT_NO_PDS));
        }
        ThetaOutcome::Running { rows, .. } => {
            eprintln!("no completion within {} levels", rows.len());
            return Ok(ExitCode::from(EXIT_NO_PDS));
        }
    };
    let text = match render.format() {
        Format::Text => {
            format!("PDS in {}\n{}{}", sol.dims(), labelled_text(&sol.vertices, outcome.rows()), sol.trace_text())
        }
        Format::Json => json(&sol.to_json()),
        Format::Svg => pds_svg(&sol.vertices)?,
        Format::Dot => return Err(render.unsupported("run")),
    };
    render.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn enumerate(top: &Top, n_max: usize, halt: bool, jobs: usize, render: &RenderSpec) -> Result<ExitCode> {
    let init = top.initial()?;
    let opts = SearchOptions { n_max, continue_past_completion: !halt, parallel: jobs > 1 };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| griddom::Error::Domain(e.to_string()))?;
    let report = pool.install(|| enumerate_from_row(init.row(), &opts));
    let text = match render.format() {
        Format::Json => json(&report.to_json()),
        Format::Text => {
            let mut out = format!(
                "{} solutions, {} nodes, depth {}\n",
                report.solutions.len(),
                report.nodes_expanded,
                report.max_depth
            );
            for sol in report.canonical() {
                out.push_str(&format!("# {}\n{}", sol.dims(), marks_text(&sol.vertices)));
            }
            out
        }
        _ => return Err(render.unsupported("enumerate")),
    };
    render.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn band(top: &Top, graph: bool, state_cap: usize, render: &RenderSpec) -> Result<ExitCode> {
    let init = top.initial()?;
    if graph {
        let g = build_transition_graph(&init, state_cap);
        let text = match render.format() {
            Format::Dot => g.to_dot(),
            Format::Text => {
                let walk = closed_walk(&g)?;
                format!(
                    "{} words, {} edges, {} threads, {} on cycles\nwalk of {} steps visits {} words\n",
                    g.nodes.len(),
                    g.edges.len(),
                    g.threads().count(),
                    g.cycle_words().len(),
                    walk.steps.len(),
                    walk.visited_words(&g).len()
                )
            }
            _ => return Err(render.unsupported("band --graph")),
        };
        render.emit(&text)?;
        return Ok(ExitCode::SUCCESS);
    }
    let text = match greedy_band(&init, usize::MAX)? {
        BandOutcome::Finite(sol) => format!("Finite: PDS in {}\n{}", sol.dims(), marks_text(&sol.vertices)),
        BandOutcome::Periodic(cert) => {
            let words: String = cert.slices.iter().map(|r| r.word() + "\n").collect();
            format!("Periodic: level {} repeats after {} levels\n{words}", cert.k, cert.period)
        }
    };
    render.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn array(
    m: usize,
    s: &str,
    strategy: Option<String>,
    validate: Option<String>,
    n: Option<usize>,
    render: &RenderSpec,
) -> Result<ExitCode> {
    if let Some(text) = validate {
        let n = n.ok_or_else(|| griddom::Error::Parse("--validate needs --n".into()))?;
        let arr = PdsArray::parse(&text)?;
        let violations = validate_pds_array(&arr, m, n);
        if violations.is_empty() {
            outln!("valid");
            return Ok(ExitCode::SUCCESS);
        }
        for v in &violations {
            outln!("axiom {} violated at ({}, {})", v.axiom, v.row, v.col);
        }
        return Ok(ExitCode::FAILURE);
    }
    let strategy = strategy.ok_or_else(|| griddom::Error::Parse("give --strategy or --validate".into()))?;
    let init = InitialCondition::new(m, &parse_columns(s)?)?;
    let outcome = run_theta(&init, &Strategy::parse(&strategy)?, default_max_rows(m));
    let Some(sol) = outcome.solution() else {
        eprintln!("the run did not produce a PDS");
        return Ok(ExitCode::from(EXIT_NO_PDS));
    };
    let arr = to_pds_array(&sol.vertices)?;
    let text = match render.format() {
        Format::Text => arr.to_string(),
        Format::Json => json(&arr.to_json(sol.m(), sol.n())),
        Format::Svg => pds_svg(&sol.vertices)?,
        Format::Dot => return Err(render.unsupported("array")),
    };
    render.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn tpc(m: usize, shape: &str, render: &RenderSpec) -> Result<ExitCode> {
    let sol = build_tpc(m, TpcShape::parse(shape)?)?;
    let text = match render.format() {
        Format::Text => format!("{}\n{}{}", sol.dims(), marks_text(&sol.vertices), to_pds_array(&sol.vertices)?),
        Format::Json => json(&sol.to_json()),
        Format::Svg => pds_svg(&sol.vertices)?,
        Format::Dot => return Err(render.unsupported("tpc")),
    };
    render.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn kg(m: usize, n: usize) -> Result<ExitCode> {
    let predicted = kg_has_tpc(m, n)?;
    out!("kg({m},{n}) = {predicted}");
    if m.min(n) <= 12 {
        let (a, b) = if m <= n { (m, n) } else { (n, m) };
        out!(", transfer search = {}", tpc_exists(a, b)?);
    }
    outln!("");
    Ok(ExitCode::SUCCESS)
}

fn s1(radius: usize, svg: Option<PathBuf>, text: bool) -> Result<ExitCode> {
    let window = build_s1(radius)?;
    if let Some(path) = svg {
        fs::write(&path, window_svg(&window)?)
            .map_err(|e| griddom::Error::Parse(format!("{}: {e}", path.display())))?;
    }
    if text {
        out!("{}", window_text(&window));
    }
    let group: Vec<String> = symmetry_group(&window).iter().map(|g| format!("{g:?}")).collect();
    outln!("radius {radius}: {} interior defects, symmetries {}", window.interior_defects().len(), group.join(" "));
    Ok(ExitCode::SUCCESS)
}

fn figures(which: &str, print: bool) -> Result<ExitCode> {
    let list: Vec<Figure> = if which == "all" { Figure::ALL.to_vec() } else { vec![Figure::parse(which)?] };
    let mut clean = true;
    for f in list {
        if print {
            out!("{}", f.generate()?);
            continue;
        }
        match f.check()? {
            None => outln!("{}: identical", f.name()),
            Some(diff) => {
                clean = false;
                out!("{diff}");
            }
        }
    }
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn oracle(m: usize, n: usize, s: Option<String>, tpc: bool) -> Result<ExitCode> {
    let sets = if tpc {
        oracle_tpcs(m, n)?
    } else {
        let top = match s {
            Some(cols) => TopRow::from(&InitialCondition::new(m, &parse_columns(&cols)?)?),
            None => TopRow::Unconstrained,
        };
        oracle_enumerate(m, n, top)?
    };
    outln!("{} sets", sets.len());
    for set in &sets {
        outln!("#");
        out!("{}", marks_text(set));
    }
    Ok(ExitCode::SUCCESS)
}
