use std::fs;
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tamloop::construction::{for_target_size, generate_tileset, Catalog};
use tamloop::explorer::{
    enumerate_assemblies, enumerate_paths_parallel, find_conflict, find_pump, sample_terminal,
    ExplorationBounds, ExploreError,
};
use tamloop::format::{parse_tileset, serialize};
use tamloop::render::{render_ascii, render_path_ascii, render_path_svg, render_svg, RenderOptions};
use tamloop::verifier::{
    classify_path, describe_path, faults, run_subject, verify_theorem, Plan, Report, Sampling,
    Subject, CHECK_NAMES,
};
use tamloop::{Params, PathName, TileAssemblySystem};

#[derive(Parser)]
#[command(name = "tamloop", version, about = "Temperature-1 tile assembly loops: generate, explore, verify, render")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the tile set file of T^(k,n).
    Gen(GenArgs),
    /// Enumerate producible paths.
    Enum(EnumArgs),
    /// Grow one terminal assembly with a seeded random schedule.
    Run(RunArgs),
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Draw a named catalog path.
    Render(RenderArgs),
    /// Small-scale brute-force searches on arbitrary tile sets.
    Oracle(OracleArgs),
}

#[derive(Args, Clone)]
struct SystemArgs {
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    n: Option<usize>,
    /// Tile set file instead of the generated one.
    #[arg(long)]
    tileset: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    /// Drop the east glue of the last red type.
    RemoveRedEast,
}

#[derive(Args)]
struct GenArgs {
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    n: Option<usize>,
    /// Pick (k, n = 2h_k) for a target tile count and pad with inert types.
    #[arg(short, long)]
    target_size: Option<usize>,
    #[arg(long, value_enum)]
    fault: Option<Fault>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EnumArgs {
    #[command(flatten)]
    sys: SystemArgs,
    /// Box `x0:x1,y0:y1`; defaults to the growth region for -k/-n.
    #[arg(long)]
    bounds: Option<String>,
    #[arg(long)]
    step_cap: Option<usize>,
    #[arg(long)]
    path_cap: Option<usize>,
    /// Print the maximal paths themselves, not only their count.
    #[arg(long)]
    maximal: bool,
    /// Classify each maximal path (needs -k/-n).
    #[arg(long)]
    classify: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    sys: SystemArgs,
    #[arg(long, default_value_t = 0)]
    rng: u64,
    #[arg(long)]
    bounds: Option<String>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    ascii: bool,
    #[arg(long, default_value_t = 12)]
    cell: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sys: SystemArgs,
    /// Every check except the theorem scan.
    #[arg(long, conflicts_with = "check")]
    all: bool,
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
    check: Vec<String>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// First RNG seed of the sampled terminals.
    #[arg(long, default_value_t = 0)]
    rng: u64,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    sys: SystemArgs,
    /// G, Y:i, B:i, P:j,i, A:i,j, D:i, DD:i,j or L:i
    #[arg(long)]
    path: String,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    ascii: bool,
    #[arg(long, default_value_t = 12)]
    cell: u32,
    #[arg(long)]
    dots: bool,
    #[arg(long)]
    ticks: bool,
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    sys: SystemArgs,
    #[arg(long, default_value_t = 12)]
    max_tiles: usize,
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
    #[arg(long)]
    find_conflict: bool,
    #[arg(long)]
    find_pump: bool,
    /// Box for the pump search, `x0:x1,y0:y1`.
    #[arg(long)]
    bounds: Option<String>,
    /// Steps allowed while probing for repeated types.
    #[arg(long, default_value_t = 24)]
    probe: usize,
    /// Length the pumped path must reach.
    #[arg(long, default_value_t = 200)]
    target: usize,
}

/// Exit status for a failed check; input and usage problems use 2.
const FAILED: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            2
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}

fn dispatch(cmd: Command, out: &mut impl Write) -> Result<u8> {
    match cmd {
        Command::Gen(a) => gen(a, out),
        Command::Enum(a) => enumerate(a, out),
        Command::Run(a) => run(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Render(a) => render(a, out),
        Command::Oracle(a) => oracle(a, out),
    }
}

fn params(k: Option<usize>, n: Option<usize>) -> Result<Option<Params>> {
    match (k, n) {
        (Some(k), Some(n)) => Ok(Some(Params::new(k, n)?)),
        (None, None) => Ok(None),
        _ => bail!("-k and -n go together"),
    }
}

fn load(path: &FsPath) -> Result<TileAssemblySystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_tileset(&text).with_context(|| format!("{}", path.display()))
}

impl SystemArgs {
    fn params(&self) -> Result<Option<Params>> {
        params(self.k, self.n)
    }

    /// The parsed file if given, else the generated system.
    fn system(&self) -> Result<(Option<Params>, TileAssemblySystem)> {
        let p = self.params()?;
        let sys = match (&self.tileset, &p) {
            (Some(f), _) => load(f)?,
            (None, Some(p)) => generate_tileset(p)?,
            (None, None) => bail!("give -k/-n or --tileset"),
        };
        Ok((p, sys))
    }

    fn subject(&self) -> Result<Subject> {
        let (p, sys) = self.system()?;
        let p = p.ok_or_else(|| anyhow!("-k/-n are required here"))?;
        Ok(Subject::with_system(&p, sys)?)
    }
}

fn parse_bounds(s: &str) -> Result<ExplorationBounds> {
    let bad = || anyhow!("bounds must look like x0:x1,y0:y1, got `{s}`");
    let (xs, ys) = s.split_once(',').ok_or_else(bad)?;
    let range = |r: &str| -> Result<(i32, i32)> {
        let (a, b) = r.split_once(':').ok_or_else(bad)?;
        Ok((a.trim().parse()?, b.trim().parse()?))
    };
    let (x0, x1) = range(xs)?;
    let (y0, y1) = range(ys)?;
    let cells = ((x1 - x0 + 1).max(1) as usize) * ((y1 - y0 + 1).max(1) as usize);
    Ok(ExplorationBounds::new(
        x0..=x1,
        y0..=y1,
        cells,
        ExplorationBounds::DEFAULT_PATH_CAP,
    )?)
}

fn bounds_for(p: Option<&Params>, spec: Option<&str>) -> Result<ExplorationBounds> {
    match (spec, p) {
        (Some(s), _) => parse_bounds(s),
        (None, Some(p)) => Ok(ExplorationBounds::for_params(p).expanded(2)),
        (None, None) => bail!("--bounds is required for tile set files without -k/-n"),
    }
}

fn write_output(path: Option<&PathBuf>, text: &str, out: &mut impl Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn gen(a: GenArgs, out: &mut impl Write) -> Result<u8> {
    let sys = match (a.target_size, params(a.k, a.n)?) {
        (Some(_), Some(_)) => bail!("--target-size excludes -k/-n"),
        (Some(t), None) => {
            if a.fault.is_some() {
                bail!("--fault needs -k/-n");
            }
            for_target_size(t)?.system
        }
        (None, Some(p)) => match a.fault {
            Some(Fault::RemoveRedEast) => faults::remove_red_east_glue(&p)?,
            None => generate_tileset(&p)?,
        },
        (None, None) => bail!("give -k/-n or --target-size"),
    };
    write_output(a.output.as_ref(), &serialize(&sys), out)?;
    if a.output.is_some() {
        writeln!(out, "types={}", sys.tileset().len())?;
    }
    Ok(0)
}

fn cap_failure(e: &ExploreError, out: &mut impl Write) -> Result<Option<u8>> {
    match e {
        ExploreError::StepCapExceeded { cap, witness } => {
            writeln!(out, "CAP step cap {cap} exceeded, witness path length {}", witness.len())?;
            Ok(Some(FAILED))
        }
        ExploreError::PathCapExceeded { cap } => {
            writeln!(out, "CAP path cap {cap} exceeded")?;
            Ok(Some(FAILED))
        }
        ExploreError::AssemblyCapExceeded { cap } => {
            writeln!(out, "CAP assembly cap {cap} exceeded")?;
            Ok(Some(FAILED))
        }
        _ => Ok(None),
    }
}

fn enumerate(a: EnumArgs, out: &mut impl Write) -> Result<u8> {
    let (p, sys) = a.sys.system()?;
    let mut bounds = bounds_for(p.as_ref(), a.bounds.as_deref())?;
    if let Some(c) = a.step_cap {
        bounds = bounds.with_step_cap(c);
    }
    if let Some(c) = a.path_cap {
        bounds = bounds.with_path_cap(c);
    }
    let catalog = match (a.classify, &p) {
        (true, Some(p)) => Some(Catalog::for_tileset(p, sys.tileset())?),
        (true, None) => bail!("--classify needs -k/-n"),
        _ => None,
    };
    let e = match enumerate_paths_parallel(&sys, &bounds) {
        Ok(e) => e,
        Err(err) => match cap_failure(&err, out)? {
            Some(code) => return Ok(code),
            None => return Err(err.into()),
        },
    };
    writeln!(
        out,
        "maximal={} placements={} branch_points={}",
        e.paths.len(),
        e.stats.placements,
        e.stats.branch_points
    )?;
    let mut code = 0;
    if a.maximal || a.classify {
        for path in &e.paths {
            write!(out, "{}", describe_path(path, &sys))?;
            if let Some(c) = &catalog {
                match classify_path(path, c) {
                    Ok(cl) => write!(out, " {cl}")?,
                    Err(u) => {
                        code = FAILED;
                        write!(out, " UNCLASSIFIABLE {u}")?
                    }
                }
            }
            writeln!(out)?;
        }
    }
    Ok(code)
}

fn run(a: RunArgs, out: &mut impl Write) -> Result<u8> {
    let (p, sys) = a.sys.system()?;
    let bounds = bounds_for(p.as_ref(), a.bounds.as_deref())?;
    let asm = match sample_terminal(&sys, a.rng, &bounds) {
        Ok(asm) => asm,
        Err(err) => match cap_failure(&err, out)? {
            Some(code) => return Ok(code),
            None => return Err(err.into()),
        },
    };
    let grown_width = tamloop::model::width_of(asm.grown_positions());
    writeln!(
        out,
        "rng={} tiles={} width={} height={} grown_width={}",
        a.rng,
        asm.len(),
        asm.width(),
        asm.height(),
        grown_width
    )?;
    if a.ascii {
        out.write_all(render_ascii(&asm, sys.tileset()).as_bytes())?;
    }
    if let Some(f) = &a.svg {
        let opts = RenderOptions::default().with_cell_size(a.cell)?;
        fs::write(f, render_svg(&asm, sys.tileset(), &opts))
            .with_context(|| format!("writing {}", f.display()))?;
    }
    Ok(0)
}

fn print_reports(reports: &[Report], out: &mut impl Write) -> Result<bool> {
    let mut ok = true;
    for r in reports {
        writeln!(out, "{r}")?;
        ok &= r.passed();
    }
    Ok(ok)
}

const EXHAUSTIVE_GRID: [(usize, usize); 4] = [(2, 2), (2, 3), (3, 3), (3, 4)];
const SAMPLED: (usize, usize) = (4, 10);
const THEOREM_KS: std::ops::RangeInclusive<usize> = 2..=6;

fn verify(a: VerifyArgs, out: &mut impl Write) -> Result<u8> {
    let sampling = Sampling {
        samples: a.samples,
        first_seed: a.rng,
    };
    let checks: Vec<&str> = a.check.iter().map(String::as_str).collect();
    let plan = if a.all || checks.is_empty() {
        Plan::all(sampling)
    } else {
        Plan::only(&checks, sampling)?
    };
    let mut ok = true;
    if a.sys.params()?.is_some() || a.sys.tileset.is_some() {
        let s = a.sys.subject()?;
        ok &= print_reports(&run_subject(&s, &plan)?, out)?;
    } else {
        // default grid
        let small = Plan {
            sampling: Sampling {
                samples: a.samples.min(20),
                ..sampling
            },
            ..plan.clone()
        };
        for (k, n) in EXHAUSTIVE_GRID {
            let s = Subject::generate(&Params::new(k, n)?)?;
            ok &= print_reports(&run_subject(&s, &small)?, out)?;
        }
        let (k, n) = SAMPLED;
        let s = Subject::generate(&Params::new(k, n)?)?;
        ok &= print_reports(&run_subject(&s, &plan)?, out)?;
        if a.all || checks.is_empty() || checks.contains(&"theorem") {
            ok &= print_reports(&verify_theorem(THEOREM_KS)?, out)?;
        }
    }
    Ok(if ok { 0 } else { FAILED })
}

fn render(a: RenderArgs, out: &mut impl Write) -> Result<u8> {
    let (p, sys) = a.sys.system()?;
    let p = p.ok_or_else(|| anyhow!("-k/-n are required for render"))?;
    let name: PathName = a.path.parse()?;
    let catalog = Catalog::for_tileset(&p, sys.tileset())?;
    let path = catalog
        .get(name)
        .ok_or_else(|| anyhow!("{name} is not defined for {p}"))?;
    if a.ascii || a.svg.is_none() {
        out.write_all(render_path_ascii(&path, &sys).as_bytes())?;
    }
    if let Some(f) = &a.svg {
        let mut opts = RenderOptions::default().with_cell_size(a.cell)?;
        opts.show_dots = a.dots;
        opts.show_glue_ticks = a.ticks;
        opts.show_path_trace = a.trace;
        fs::write(f, render_path_svg(&path, &sys, &opts))
            .with_context(|| format!("writing {}", f.display()))?;
        writeln!(out, "{name} tiles={} width={} height={}", path.len(), path.width(), path.height())?;
    }
    Ok(0)
}

fn oracle(a: OracleArgs, out: &mut impl Write) -> Result<u8> {
    let (p, sys) = a.sys.system()?;
    if !a.find_conflict && !a.find_pump {
        let all = match enumerate_assemblies(&sys, a.max_tiles, a.cap) {
            Ok(all) => all,
            Err(err) => match cap_failure(&err, out)? {
                Some(code) => return Ok(code),
                None => return Err(err.into()),
            },
        };
        writeln!(out, "assemblies={} max_tiles={}", all.len(), a.max_tiles)?;
        return Ok(0);
    }
    let mut code = 0;
    if a.find_conflict {
        let all = match enumerate_assemblies(&sys, a.max_tiles, a.cap) {
            Ok(all) => all,
            Err(err) => match cap_failure(&err, out)? {
                Some(code) => return Ok(code),
                None => return Err(err.into()),
            },
        };
        match find_conflict(&all) {
            Some(w) => {
                let ts = sys.tileset();
                writeln!(
                    out,
                    "CONFLICT at {} {} vs {} (assemblies of {} and {} tiles)",
                    w.position,
                    ts.name(w.first.get(w.position).expect("placed")),
                    ts.name(w.second.get(w.position).expect("placed")),
                    w.first.len(),
                    w.second.len()
                )?;
            }
            None => {
                writeln!(out, "NO CONFLICT within {} tiles", a.max_tiles)?;
                code = FAILED;
            }
        }
    }
    if a.find_pump {
        let bounds = match (&a.bounds, &p) {
            (Some(b), _) => parse_bounds(b)?,
            (None, Some(p)) => ExplorationBounds::for_params(p),
            (None, None) => {
                let r = a.target as i32 + 2;
                ExplorationBounds::new(-r..=r, -r..=r, a.target, ExplorationBounds::DEFAULT_PATH_CAP)?
            }
        };
        match find_pump(&sys, &bounds, a.probe, a.target)? {
            Some(w) => writeln!(
                out,
                "PUMP segment {}..{} vector {} pumped length {}",
                w.i,
                w.j,
                w.vector,
                w.pumped.len()
            )?,
            None => {
                writeln!(out, "NO PUMP within probe length {}", a.probe)?;
                code = FAILED;
            }
        }
    }
    Ok(code)
}
