//! The `argeo` command line. [`run`] is a pure function of the arguments and
//! the files it reads, so the fixture corpus can drive it in-process.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};

use crate::af::{self, Extension, Framework, Mode, Semantics};
use crate::aspic::{self, construct_arguments_with_budget, Arguments, AttackKind, Saf};
use crate::correspondence::verify_equivalence;
use crate::delp::Delp;
use crate::delp_gr::{self, delp_framework};
use crate::error::{EngineError, Error};
use crate::fixtures;
use crate::game;
use crate::parse::{parse_program, print_program};
use crate::postulates::{audit_table, Engine as AuditEngine};
use crate::program::{Literal, OrderingMode, Program, ProgramError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

pub const BUDGET_VAR: &str = "ARGEO_ARG_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "argeo", version, about = "Query ASPIC+ and DeLP programs")]
struct Cli {
    /// Override the program's ordering.
    #[arg(long, global = true, value_parser = parse_ordering)]
    ordering: Option<OrderingMode>,
    /// Cap on constructed ASPIC+ arguments (also read from ARGEO_ARG_BUDGET).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ArgsEngine {
    Aspic,
    Delp,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum WarrantEngine {
    Delp,
    #[value(name = "delp-gr")]
    DelpGr,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GameEngine {
    Aspic,
    #[value(name = "delp-gr")]
    DelpGr,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print a program in normal form.
    Parse { file: String },
    /// List arguments.
    Args {
        file: String,
        #[arg(long, value_enum, default_value = "aspic")]
        engine: ArgsEngine,
    },
    /// List ASPIC+ attacks and whether they succeed as defeats.
    Attacks {
        file: String,
        #[arg(long, default_value = "rebut")]
        attack: AttackKind,
    },
    /// Dialectical trees for every DeLP argument for GOAL.
    Tree {
        file: String,
        goal: Literal,
        #[arg(long)]
        dot: bool,
    },
    /// Is GOAL warranted?
    Warrant {
        file: String,
        goal: Literal,
        #[arg(long, value_enum, default_value = "delp")]
        engine: WarrantEngine,
    },
    /// Extensions of the ASPIC+ framework, one per line.
    Extensions {
        file: String,
        #[arg(long, default_value = "grounded")]
        semantics: Semantics,
        #[arg(long, default_value = "rebut")]
        attack: AttackKind,
        /// Print conclusions instead of argument labels.
        #[arg(long)]
        conclusions: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Is some argument for GOAL in every / some extension?
    Justify {
        file: String,
        goal: Literal,
        #[arg(long, default_value = "grounded")]
        semantics: Semantics,
        #[arg(long, default_value = "sceptical")]
        mode: Mode,
        #[arg(long, default_value = "rebut")]
        attack: AttackKind,
    },
    /// A winning strategy in the grounded game for an argument for GOAL.
    Game {
        file: String,
        goal: Literal,
        #[arg(long, value_enum, default_value = "aspic")]
        engine: GameEngine,
        #[arg(long, default_value = "rebut")]
        attack: AttackKind,
        #[arg(long)]
        dot: bool,
    },
    /// Rationality-postulate table.
    Postulates {
        file: String,
        /// Every attack under every semantics, plus both DeLP engines.
        #[arg(long)]
        all: bool,
    },
    /// Grounded DeLP warrant against grounded ASPIC+ justification.
    Compare {
        file: String,
        /// One pairing only (named by its ASPIC+ attack).
        #[arg(long)]
        attack: Option<AttackKind>,
    },
    /// Run the bundled fixtures against their golden outputs.
    Corpus {
        /// Read fixtures from a directory instead of the bundled copies.
        #[arg(long)]
        dir: Option<String>,
        /// Rewrite the golden files in `--dir` from the current outputs.
        #[arg(long, requires = "dir")]
        bless: bool,
    },
}

fn parse_ordering(s: &str) -> Result<OrderingMode, String> {
    s.parse().map_err(|e: ProgramError| e.to_string())
}

/// Output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Something that can hand over file contents by name.
pub trait Files {
    fn read(&self, path: &str) -> std::io::Result<String>;
}

pub struct Disk;

impl Files for Disk {
    fn read(&self, path: &str) -> std::io::Result<String> {
        std::fs::read_to_string(path)
    }
}

enum Failure {
    Usage(String),
    Input(String),
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Program(e) => Failure::Input(e.to_string()),
            Error::Engine(e) => Failure::Engine(e.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure::Engine(e.to_string())
    }
}

/// Run with `argv` (including the program name), reading files from disk.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let env_budget = std::env::var(BUDGET_VAR).ok();
    run_with(argv, &Disk, env_budget.as_deref())
}

pub fn run_with<I, S>(argv: I, files: &dyn Files, env_budget: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, files, env_budget, &mut out) {
        Ok(code) => Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Input(m) => (EXIT_PARSE, m),
                Failure::Engine(m) => (EXIT_ENGINE, m),
            };
            Outcome {
                code,
                stdout: out,
                stderr: format!("argeo: {msg}\n"),
            }
        }
    }
}

struct Ctx<'a> {
    files: &'a dyn Files,
    ordering: Option<OrderingMode>,
    budget: usize,
}

impl Ctx<'_> {
    fn load(&self, path: &str) -> Result<Program, Failure> {
        let text = self
            .files
            .read(path)
            .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        let p = parse_program(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        Ok(match self.ordering {
            Some(o) => p.with_ordering(o),
            None => p,
        })
    }

    fn saf<'p>(&self, p: &'p Program, kind: AttackKind) -> Result<Saf<'p>, Failure> {
        Ok(Saf::new(
            construct_arguments_with_budget(p, self.budget)?,
            kind,
        )?)
    }
}

fn execute(
    cli: &Cli,
    files: &dyn Files,
    env_budget: Option<&str>,
    out: &mut String,
) -> Result<i32, Failure> {
    let budget = match (cli.budget, env_budget) {
        (Some(b), _) => b,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BUDGET_VAR} must be a number, got `{s}`")))?,
        (None, None) => aspic::DEFAULT_ARGUMENT_BUDGET,
    };
    let ctx = Ctx {
        files,
        ordering: cli.ordering,
        budget,
    };
    match &cli.command {
        Command::Parse { file } => {
            out.push_str(&print_program(&ctx.load(file)?));
        }
        Command::Args { file, engine } => {
            let p = ctx.load(file)?;
            match engine {
                ArgsEngine::Aspic => {
                    let args = construct_arguments_with_budget(&p, ctx.budget)?;
                    for a in 0..args.len() {
                        let _ = writeln!(out, "{}: {}", args.label(a), args.render(a));
                    }
                }
                ArgsEngine::Delp => {
                    let d = Delp::new(&p)?;
                    for a in 0..d.len() {
                        let _ = writeln!(out, "{}", d.render(a));
                    }
                }
            }
        }
        Command::Attacks { file, attack } => {
            let p = ctx.load(file)?;
            let saf = ctx.saf(&p, *attack)?;
            let args = saf.arguments();
            for at in saf.attacks() {
                let ok = !saf.less(at.attacker, at.on);
                let _ = writeln!(
                    out,
                    "{} {} {} on {}: {}",
                    args.label(at.attacker),
                    attack,
                    args.label(at.target),
                    args.label(at.on),
                    if ok { "defeat" } else { "no defeat" }
                );
            }
        }
        Command::Tree { file, goal, dot } => {
            let p = ctx.load(file)?;
            let d = Delp::new(&p)?;
            let roots = d.for_conclusion(goal);
            if roots.is_empty() {
                let _ = writeln!(out, "no argument for {goal}");
            }
            for (i, &r) in roots.iter().enumerate() {
                let t = d.build_tree(r);
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&if *dot { t.to_dot(&d) } else { t.to_text(&d) });
            }
        }
        Command::Warrant { file, goal, engine } => {
            let p = ctx.load(file)?;
            let warranted = match engine {
                WarrantEngine::Delp => Delp::new(&p)?.warrant(goal).warranted,
                WarrantEngine::DelpGr => delp_gr::warrant_gr(&p, goal)?.warranted,
            };
            out.push_str(&verdict(warranted, "WARRANTED"));
        }
        Command::Extensions {
            file,
            semantics,
            attack,
            conclusions,
            dot,
        } => {
            let p = ctx.load(file)?;
            let saf = ctx.saf(&p, *attack)?;
            let f = saf.framework();
            if *dot {
                out.push_str(&f.to_dot());
                return Ok(EXIT_OK);
            }
            for e in af::extensions(&f, *semantics)? {
                if *conclusions {
                    let lits: Vec<String> = aspic::conclusions(saf.arguments(), &e)
                        .iter()
                        .map(Literal::to_string)
                        .collect();
                    let _ = writeln!(out, "{{{}}}", lits.join(", "));
                } else {
                    let _ = writeln!(out, "{}", labels(saf.arguments(), &e));
                }
            }
        }
        Command::Justify {
            file,
            goal,
            semantics,
            mode,
            attack,
        } => {
            let p = ctx.load(file)?;
            let saf = ctx.saf(&p, *attack)?;
            let exts = af::extensions(&saf.framework(), *semantics)?;
            let for_goal: BTreeSet<usize> = saf
                .arguments()
                .with_conclusion(goal)
                .iter()
                .copied()
                .collect();
            let hit = |e: &Extension| !e.is_disjoint(&for_goal);
            let ok = match mode {
                Mode::Sceptical => exts.iter().all(hit),
                Mode::Credulous => exts.iter().any(hit),
            };
            out.push_str(&verdict(ok, "JUSTIFIED"));
        }
        Command::Game {
            file,
            goal,
            engine,
            attack,
            dot,
        } => {
            let p = ctx.load(file)?;
            let (f, candidates): (Framework, Vec<usize>) = match engine {
                GameEngine::Aspic => {
                    let saf = ctx.saf(&p, *attack)?;
                    (
                        saf.framework(),
                        saf.arguments().with_conclusion(goal).to_vec(),
                    )
                }
                GameEngine::DelpGr => {
                    let d = Delp::new(&p)?;
                    (delp_framework(&d), d.for_conclusion(goal).to_vec())
                }
            };
            match candidates
                .iter()
                .find_map(|&a| game::provably_justified(&f, a))
            {
                Some(s) => {
                    if *dot {
                        out.push_str(&s.to_dot(&f));
                    } else {
                        let _ = writeln!(out, "WINNING STRATEGY for {}", f.label(s.argument));
                        out.push_str(&s.to_text(&f));
                    }
                }
                None => out.push_str("NO WINNING STRATEGY\n"),
            }
        }
        Command::Postulates { file, all } => {
            let p = ctx.load(file)?;
            let engines = if *all {
                AuditEngine::all()
            } else {
                let mut v: Vec<AuditEngine> = AttackKind::ALL
                    .iter()
                    .map(|&k| AuditEngine::Aspic(k, Semantics::Grounded))
                    .collect();
                v.extend([AuditEngine::Delp, AuditEngine::DelpGr]);
                v
            };
            out.push_str(&audit_table(&p, &engines, ctx.budget));
        }
        Command::Compare { file, attack } => {
            let p = ctx.load(file)?;
            let kinds: Vec<AttackKind> = match attack {
                Some(k) => vec![*k],
                None => AttackKind::ALL.to_vec(),
            };
            let mut bad = 0;
            for (i, k) in kinds.iter().enumerate() {
                let r = verify_equivalence(&p, *k)?;
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&r.to_text());
                bad += r.discrepancies();
            }
            if bad > 0 {
                return Ok(EXIT_ENGINE);
            }
        }
        Command::Corpus { dir, bless } => {
            let set = match dir {
                Some(d) => {
                    fixtures::load_dir(d).map_err(|e| Failure::Input(format!("{d}: {e}")))?
                }
                None => fixtures::bundled(),
            };
            let mut failed = 0;
            for fx in &set {
                let got = fx.run(ctx.budget);
                if *bless {
                    let path = format!("{}/{}.golden", dir.as_deref().unwrap_or("."), fx.name);
                    std::fs::write(&path, &got)
                        .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
                    let _ = writeln!(out, "blessed {}", fx.name);
                } else if got == fx.golden {
                    let _ = writeln!(out, "ok {}", fx.name);
                } else {
                    failed += 1;
                    let _ = writeln!(out, "FAIL {}", fx.name);
                    out.push_str(&fixtures::diff(&fx.golden, &got));
                }
            }
            let _ = writeln!(out, "{} fixtures, {} failed", set.len(), failed);
            if failed > 0 {
                return Ok(EXIT_ENGINE);
            }
        }
    }
    Ok(EXIT_OK)
}

fn verdict(yes: bool, word: &str) -> String {
    if yes {
        format!("{word}\n")
    } else {
        format!("NOT {word}\n")
    }
}

fn labels(args: &Arguments<'_>, e: &Extension) -> String {
    let v: Vec<String> = e.iter().map(|&a| args.label(a)).collect();
    format!("{{{}}}", v.join(", "))
}
