use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bsg_core::diagram::{parse_diagram, validate, CheckKind, GraphDiagram};
use bsg_core::heegaard::{build_heegaard_summary, check_admissibility, Admissibility};
use bsg_core::moves::perturb;
use bsg_core::resolve::{
    distinguished_vertex, enumerate_states, enumerate_states_parallel, resolve_with, ResolveOptions,
    ResolvedDiagram, State,
};
use bsg_core::torsion::{cross_check, homology_model, tau, tau_parallel};

#[derive(Parser)]
#[command(name = "bsg", version, about = "State-sum torsion of balanced bipartite spatial graph diagrams")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Worker threads for state enumeration.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
}

#[derive(Args)]
struct Resolution {
    /// Distinguished V2 vertex; defaults to the least V2 id.
    #[arg(long)]
    u: Option<String>,
    /// Terminal slot for a V2 vertex, as `vertex=slot`; repeatable.
    #[arg(long = "terminal", value_name = "V=SLOT")]
    terminals: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram against the structural rules.
    Validate { file: PathBuf },
    /// Regions of the resolved diagram with their star marks.
    Regions {
        file: PathBuf,
        #[command(flatten)]
        res: Resolution,
    },
    /// Curve and basepoint counts of the Heegaard diagram.
    Census {
        file: PathBuf,
        #[arg(long)]
        u: Option<String>,
        /// Region left without a beta curve.
        #[arg(long)]
        beta0: Option<usize>,
    },
    /// Periodic-domain lattice and the admissibility verdict.
    Admissible { file: PathBuf },
    /// Count (and optionally list) the states.
    States {
        file: PathBuf,
        #[command(flatten)]
        res: Resolution,
        #[arg(long)]
        list: bool,
    },
    /// The torsion polynomial.
    Tau {
        file: PathBuf,
        #[command(flatten)]
        res: Resolution,
        /// Print the free-ring sum before projection.
        #[arg(long)]
        raw: bool,
        /// Variable name prefix.
        #[arg(long, default_value = "t")]
        vars: String,
    },
    /// Compare the state sum with the Fox determinant.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        res: Resolution,
    },
    /// Apply seeded random Reidemeister moves and print the result.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        steps: usize,
        /// Stop adding double points beyond this many.
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
}

type Failure = (String, u8);

fn fail(e: impl std::fmt::Display) -> Failure {
    (format!("error: {e}"), 1)
}

fn load(path: &PathBuf) -> Result<GraphDiagram, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn resolve(d: &GraphDiagram, res: &Resolution) -> Result<ResolvedDiagram, Failure> {
    let mut opts = ResolveOptions::default();
    for t in &res.terminals {
        let (v, slot) = t.split_once('=').ok_or_else(|| fail(format!("bad --terminal {t:?}, expected V=SLOT")))?;
        let i = d.node_by_id(v).ok_or_else(|| fail(format!("unknown vertex {v:?}")))?;
        let slot = slot.parse().map_err(|_| fail(format!("bad slot in --terminal {t:?}")))?;
        opts.terminals.insert(i, slot);
    }
    resolve_with(d, res.u.as_deref(), &opts).map_err(fail)
}

struct Out {
    format: Format,
    text: String,
}

impl Out {
    /// A `key<TAB>value` line in tsv mode, `human` otherwise.
    fn kv(&mut self, key: &str, value: impl std::fmt::Display, human: impl std::fmt::Display) {
        match self.format {
            Format::Tsv => writeln!(self.text, "{key}\t{value}"),
            Format::Human => writeln!(self.text, "{human}"),
        }
        .unwrap();
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<u8, Failure> {
    match &cli.command {
        Command::Validate { file } => {
            let report = validate(&load(file)?);
            match cli.format {
                Format::Human => writeln!(out.text, "{report}").unwrap(),
                Format::Tsv => {
                    for c in &report.checks {
                        let v = if c.passed { "ok".to_string() } else { format!("FAIL {}", c.detail) };
                        writeln!(out.text, "{}\t{}", c.kind.name(), v.trim_end()).unwrap();
                    }
                    writeln!(out.text, "valid\t{}", report.is_valid()).unwrap();
                }
            }
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Regions { file, res } => {
            let d = load(file)?;
            let rd = resolve(&d, res)?;
            out.kv("crossings", rd.num_crossings(), format!("crossings={} regions={}", rd.num_crossings(), rd.regions().len()));
            if out.format == Format::Tsv {
                out.kv("regions", rd.regions().len(), "");
            }
            for r in rd.regions() {
                let label = match rd.unstarred_index(r.id) {
                    Some(j) => format!("R{}", j + 1),
                    None => "*".to_string(),
                };
                let corners: Vec<String> =
                    r.boundary.iter().map(|c| format!("{}.{}", rd.rnode_name(c.node), c.gap)).collect();
                out.kv(&label, corners.join(" "), format!("{label}: {}", corners.join(" ")));
            }
            Ok(0)
        }
        Command::Census { file, u, beta0 } => {
            let d = load(file)?;
            let s = build_heegaard_summary(&d, u.as_deref(), *beta0).map_err(fail)?;
            match cli.format {
                Format::Human => writeln!(out.text, "{s}").unwrap(),
                Format::Tsv => {
                    for (k, v) in [
                        ("g", s.genus),
                        ("d", s.d_alpha),
                        ("m", s.basepoints),
                        ("V1", s.v1),
                        ("V2", s.v2),
                        ("alpha_double_points", s.alpha_double_points),
                        ("beta_regions", s.beta_regions),
                        ("beta_vertices", s.beta_vertices),
                        ("beta0", s.beta0),
                    ] {
                        writeln!(out.text, "{k}\t{v}").unwrap();
                    }
                }
            }
            Ok(0)
        }
        Command::Admissible { file } => {
            let d = load(file)?;
            let report = validate(&d);
            if let Some(c) = report.failures().find(|c| c.kind != CheckKind::Connected) {
                return Err(fail(format!("{}: {}", c.kind.name(), c.detail)));
            }
            let (verdict, lat) = check_admissibility(&d);
            let fmt_vec = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            let coords: Vec<&str> = lat.coordinates.iter().map(|&i| d.node(i).id.as_str()).collect();
            let word = match &verdict {
                Admissibility::Admissible => "admissible".to_string(),
                Admissibility::NotGuaranteed { .. } => "not-guaranteed".to_string(),
            };
            out.kv("verdict", &word, &word);
            out.kv("rank", lat.rank(), format!("rank={}", lat.rank()));
            out.kv("coordinates", coords.join(","), format!("coordinates={}", coords.join(",")));
            for b in &lat.basis {
                out.kv("basis", fmt_vec(b), format!("basis=[{}]", fmt_vec(b)));
            }
            if let Admissibility::NotGuaranteed { witness } = &verdict {
                out.kv("witness", fmt_vec(witness), format!("witness=[{}]", fmt_vec(witness)));
            }
            Ok(0)
        }
        Command::States { file, res, list } => {
            let d = load(file)?;
            let rd = resolve(&d, res)?;
            let states: Vec<State> =
                if cli.jobs > 1 { enumerate_states_parallel(&rd, cli.jobs) } else { enumerate_states(&rd).collect() };
            out.kv("states", states.len(), states.len());
            if *list {
                for s in &states {
                    out.kv("state", s.describe(), s.describe());
                }
            }
            Ok(0)
        }
        Command::Tau { file, res, raw, vars } => {
            let d = load(file)?;
            let rd = resolve(&d, res)?;
            let h = homology_model(&d).map_err(fail)?;
            let t = if cli.jobs > 1 { tau_parallel::<i64>(&rd, &h, cli.jobs) } else { tau::<i64>(&rd, &h) };
            let text = if *raw { t.free.display_with(|i| format!("{vars}{}", i + 1)) } else { h.format(&t.normalized, vars) };
            out.kv("tau", &text, &text);
            if out.format == Format::Tsv {
                out.kv("states", t.num_states, "");
            }
            Ok(0)
        }
        Command::Oracle { file, res } => {
            let d = load(file)?;
            let rd = resolve(&d, res)?;
            let h = homology_model(&d).map_err(fail)?;
            let c = cross_check::<i64>(&rd, &h).map_err(fail)?;
            let (s, f) = (h.format(&c.state_sum, "t"), h.format(&c.fox_det, "t"));
            out.kv("state_sum", &s, format!("state-sum: {s}"));
            out.kv("fox_det", &f, format!("fox-det:   {f}"));
            let verdict = if c.matches() { "MATCH" } else { "MISMATCH" };
            out.kv("verdict", verdict, verdict);
            Ok(if c.matches() { 0 } else { 2 })
        }
        Command::Perturb { file, seed, steps, cap } => {
            let d = load(file)?;
            distinguished_vertex(&d, None).map_err(fail)?;
            let p = perturb(&d, *seed, *steps, *cap).map_err(fail)?;
            write!(out.text, "{}", p.to_bsg()).unwrap();
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // exit status 2 is reserved for an oracle mismatch
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = Out { format: cli.format, text: String::new() };
    match run(&cli, &mut out) {
        Ok(code) => {
            print!("{}", out.text);
            ExitCode::from(code)
        }
        Err((msg, code)) => {
            print!("{}", out.text);
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
