//! The `proper` command line.
//!
//! Exit codes: 0 for success or `true`, 1 for `false` or a failed check,
//! 2 for usage and validation errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use proper_core::lazy::{periodic_extension, properize_countable, LazyModel};
use proper_core::{
    bisimilar, bounded_bisimilar, check_bounded_morphism, check_property, explore, improper_witness, partition_blocks,
    properize_finite, satisfies, Formula, FrameProperty, MorphismViolation, RelationalStructure, Violation,
};

use crate::dot::{export_dot, DotOptions, Layout};
use crate::generate::{gen_random, GenConfig};
use crate::io;

/// Exit code for success or a true verdict.
pub const EXIT_TRUE: u8 = 0;
/// Exit code for a false verdict or failed check.
pub const EXIT_FALSE: u8 = 1;
/// Exit code for usage or validation errors.
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "proper", version, about = "Properize relational structures and check the result")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula; print its canonical form and its constructor tree.
    Parse {
        /// Formula text, e.g. "K1 (p & !q)".
        formula: String,
    },
    /// Model-check a formula at a state.
    Mc {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        formula: String,
    },
    /// Build the proper model over X × X and its projection map.
    Properize {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        skew_agent: usize,
        /// Output model; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output projection map.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Frame properties per agent and a properness verdict.
    Props {
        #[arg(long)]
        model: PathBuf,
        /// Only report this agent's relation.
        #[arg(long)]
        agent: Option<usize>,
    },
    /// Check that a map is a bounded morphism.
    VerifyBm {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        surjective: bool,
    },
    /// Decide (bounded) bisimilarity of two pointed models.
    Bisim {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        left_state: String,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        right_state: String,
        /// Only compare up to this modal depth.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Generate a random model.
    Gen {
        #[arg(long)]
        states: usize,
        #[arg(long)]
        agents: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        props: usize,
        /// Close every relation under these properties.
        #[arg(long, value_delimiter = ',')]
        close: Vec<FrameProperty>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explore a finite window of a properized model.
    ///
    /// With --periodic the input is first repeated over ℤ and the countable
    /// construction is explored; start labels then look like
    /// "(x1@0|x2@-1)", with a bare id meaning copy 0.
    Explore {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        periodic: bool,
        /// Start state; defaults to the first diagonal point.
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 1)]
        skew_agent: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a model as Graphviz DOT.
    ExportDot {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = LayoutArg::Colored)]
        layout: LayoutArg,
        /// Properize the model before rendering.
        #[arg(long)]
        properize: bool,
        #[arg(long, default_value_t = 1)]
        skew_agent: usize,
        /// Highlight the offset blocks (needs --properize).
        #[arg(long)]
        blocks: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LayoutArg {
    Colored,
    PerAgent,
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn verdict(out: &mut dyn Write, answer: bool) -> Result<u8> {
    writeln!(out, "{answer}")?;
    Ok(if answer { EXIT_TRUE } else { EXIT_FALSE })
}

fn load(path: &Path) -> Result<RelationalStructure> {
    io::load_model(path).with_context(|| format!("loading {}", path.display()))
}

fn describe_violation(m: &RelationalStructure, v: &Violation) -> String {
    let s = |x: &usize| m.state_name(*x);
    match v {
        Violation::NotReflexive(x) => format!("no loop at {}", s(x)),
        Violation::NotSymmetric(x, y) => format!("{} -> {} not reversed", s(x), s(y)),
        Violation::NotTransitive(x, y, z) => format!("{} -> {} -> {} not shortcut", s(x), s(y), s(z)),
        Violation::NotSerial(x) => format!("{} has no successor", s(x)),
        Violation::NotEuclidean(x, y, z) => {
            format!("{} -> {}, {} -> {} but not {} -> {}", s(x), s(y), s(x), s(z), s(y), s(z))
        }
    }
}

fn describe_morphism(src: &RelationalStructure, tgt: &RelationalStructure, v: &MorphismViolation) -> String {
    match v {
        MorphismViolation::Atomic { state, prop } => {
            format!("{} disagrees with its image on {prop}", src.state_name(*state))
        }
        MorphismViolation::Forth { agent, from, to } => {
            format!("agent {agent}: edge {} -> {} not preserved", src.state_name(*from), src.state_name(*to))
        }
        MorphismViolation::Back { agent, from, missing } => format!(
            "agent {agent}: image of {} reaches {} with no matching source edge",
            src.state_name(*from),
            tgt.state_name(*missing)
        ),
        MorphismViolation::NotSurjective { target } => format!("{} is not hit", tgt.state_name(*target)),
    }
}

/// Runs one command, writing its normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Parse { formula } => {
            let f: Formula = formula.parse()?;
            writeln!(out, "{f}")?;
            writeln!(out, "{}", f.to_tree_string())?;
            Ok(EXIT_TRUE)
        }
        Command::Mc { model, state, formula } => {
            let m = load(&model)?;
            let f: Formula = formula.parse()?;
            verdict(out, satisfies(&m, &state, &f)?)
        }
        Command::Properize { model, skew_agent, out: out_path, map } => {
            let m = load(&model)?;
            let (p, pi) = properize_finite(&m, skew_agent)?;
            emit(out, out_path.as_deref(), &io::model_to_json(p.model()))?;
            if let Some(map) = map {
                io::save_map(&pi, p.model(), &m, &map)?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Props { model, agent } => {
            let m = load(&model)?;
            let agents: Vec<usize> = match agent {
                Some(a) => {
                    m.check_agent(a)?;
                    vec![a]
                }
                None => (1..=m.n_agents()).collect(),
            };
            write!(out, "{:<6}", "agent")?;
            for p in FrameProperty::ALL {
                write!(out, " {:<11}", p.name())?;
            }
            writeln!(out)?;
            let mut notes = Vec::new();
            for a in agents {
                write!(out, "{a:<6}")?;
                for p in FrameProperty::ALL {
                    let v = check_property(&m, a, p)?;
                    write!(out, " {:<11}", if v.is_none() { "yes" } else { "no" })?;
                    if let Some(v) = v {
                        notes.push(format!("  agent {a} not {p}: {}", describe_violation(&m, &v)));
                    }
                }
                writeln!(out)?;
            }
            for n in notes {
                writeln!(out, "{n}")?;
            }
            match improper_witness(&m) {
                None => {
                    writeln!(out, "PROPER")?;
                    Ok(EXIT_TRUE)
                }
                Some((x, y)) => {
                    writeln!(out, "IMPROPER witness ({}, {})", m.state_name(x), m.state_name(y))?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::VerifyBm { source, target, map, surjective } => {
            let src = load(&source)?;
            let tgt = load(&target)?;
            let h = io::load_map(&map, &src, &tgt).with_context(|| format!("loading {}", map.display()))?;
            let report = check_bounded_morphism(&src, &tgt, &h, surjective)?;
            let rows = [
                ("atomic", Some(&report.atomic)),
                ("forth", Some(&report.forth)),
                ("back", Some(&report.back)),
                ("surjective", report.surjective.as_ref()),
            ];
            for (name, cond) in rows {
                match cond {
                    None => writeln!(out, "{name:<11} SKIP")?,
                    Some(None) => writeln!(out, "{name:<11} PASS")?,
                    Some(Some(v)) => writeln!(out, "{name:<11} FAIL  {}", describe_morphism(&src, &tgt, v))?,
                }
            }
            Ok(if report.passes() { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Bisim { left, left_state, right, right_state, depth } => {
            let l = load(&left)?;
            let r = load(&right)?;
            let answer = match depth {
                Some(d) => bounded_bisimilar(&l, &left_state, &r, &right_state, d)?,
                None => bisimilar(&l, &left_state, &r, &right_state)?,
            };
            verdict(out, answer)
        }
        Command::Gen { states, agents, density, props, close, seed, out: out_path } => {
            let m = gen_random(&GenConfig { states, agents, density, props, close, seed })?;
            emit(out, out_path.as_deref(), &io::model_to_json(&m))?;
            Ok(EXIT_TRUE)
        }
        Command::Explore { model, periodic, start, radius, skew_agent, out: out_path } => {
            let m = load(&model)?;
            let first = m.state_name(0);
            let start = start.unwrap_or_else(|| format!("({first}|{first})"));
            let text = if periodic {
                let lazy = properize_countable(periodic_extension(&m), skew_agent)?;
                let s = lazy.parse_label(&start).ok_or_else(|| anyhow!("unknown start state `{start}`"))?;
                io::window_to_json(&explore(&lazy, s, radius)?)
            } else {
                let (p, _) = properize_finite(&m, skew_agent)?;
                let lazy = p.model();
                let s = LazyModel::parse_label(lazy, &start).ok_or_else(|| anyhow!("unknown start state `{start}`"))?;
                io::window_to_json(&explore(lazy, s, radius)?)
            };
            emit(out, out_path.as_deref(), &text)?;
            Ok(EXIT_TRUE)
        }
        Command::ExportDot { model, layout, properize, skew_agent, blocks, out: out_path } => {
            let m = load(&model)?;
            if blocks && !properize {
                bail!("--blocks needs --properize");
            }
            let layout = match layout {
                LayoutArg::Colored => Layout::Colored,
                LayoutArg::PerAgent => Layout::PerAgent,
            };
            let text = if properize {
                let (p, _) = properize_finite(&m, skew_agent)?;
                let part = partition_blocks(&p);
                let opts = DotOptions { layout, blocks: blocks.then_some(&part) };
                export_dot(p.model(), &opts)
            } else {
                export_dot(&m, &DotOptions { layout, blocks: None })
            };
            emit(out, out_path.as_deref(), &text)?;
            Ok(EXIT_TRUE)
        }
    }
}
