mod config;
mod output;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use freeprod::bounds;
use freeprod::entropy::{critical_exponent, solve_h_f2, CriticalExponent};
use freeprod::growth::{empirical_entropy, poincare_series, sphere_counts, weighted_counts_capped, GrowthTable};
use freeprod::scenarios::{run_ex54_with, sweep_ex55, write_ex54_csv, write_ex55_csv};
use freeprod::{FactorSpec, FreeProduct, LengthAssignment, ReducedWord, Side, SubgroupClass};

use config::{parse_f64, GroupConfig, Weighted, DEFAULT_PRECISION};

/// Largest lattice a counting command will allocate.
const MAX_STEPS: u64 = 20_000;
/// Largest exponent `word pow` will expand.
const MAX_POWER: i64 = 100_000;

#[derive(Debug)]
pub struct CliError(String);

impl CliError {
    pub fn msg(m: impl Into<String>) -> Self {
        CliError(m.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<freeprod::Error> for CliError {
    fn from(e: freeprod::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "freeprod", version, about = "Free product word calculus, growth, entropy and systolic bounds")]
struct Cli {
    /// Relative precision; sets the printed significant digits.
    #[arg(long, global = true, value_parser = parse_f64)]
    precision: Option<f64>,
    /// TOML file with `a`, `b`, optional `precision` and `[lengths]`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word calculus in A * B.
    #[command(subcommand)]
    Word(WordCmd),
    /// Ball and sphere counts, Poincaré series, slope fits.
    #[command(subcommand)]
    Growth(GrowthCmd),
    /// Entropy of weighted free products.
    #[command(subcommand)]
    Entropy(EntropyCmd),
    /// Closed-form lower bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Counterexample families.
    #[command(subcommand)]
    Scenario(ScenarioCmd),
    /// Prints the configuration given with --config, normalised.
    Config,
}

#[derive(Args, Clone)]
struct GroupArg {
    /// Group as `<factor> * <factor>` with factors `Z`, `Z/p`, `table:<path>`.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args, Clone)]
struct WeightArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Length of factor A: generator length, or a comma list for tables.
    #[arg(long)]
    la: Option<String>,
    /// Length of factor B.
    #[arg(long)]
    lb: Option<String>,
}

#[derive(Subcommand)]
enum WordCmd {
    /// Normal form and letter count.
    Reduce {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
    },
    /// Product of two words.
    Mul {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        by: String,
    },
    Inv {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
    },
    /// `word^k`.
    Pow {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Primitive root and exponent.
    Root {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
    },
    /// Classifies the subgroup generated by the given words.
    Classify {
        #[command(flatten)]
        group: GroupArg,
        /// Repeat for each generator.
        #[arg(long, required = true)]
        word: Vec<String>,
    },
    /// Conjugator and cyclically reduced core.
    Cyclic {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Sphere sizes under the unit metric on all letters (finite factors).
    Spheres {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact counts under letter lengths up to a radius.
    Count {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, value_parser = parse_f64)]
        radius: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Closed-form Poincaré series at exponent `c`.
    Poincare {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, value_parser = parse_f64)]
        c: f64,
    },
    /// Least-squares slope of log N(R) over a window.
    Fit {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, value_parser = parse_f64)]
        from: f64,
        #[arg(long, value_parser = parse_f64)]
        to: f64,
    },
}

#[derive(Subcommand)]
enum EntropyCmd {
    /// Two-generator free group with generator lengths l1, l2.
    Solve {
        #[arg(long, value_parser = parse_f64)]
        l1: f64,
        #[arg(long, value_parser = parse_f64)]
        l2: f64,
    },
    /// Critical exponent of a weighted free product.
    Critical {
        #[command(flatten)]
        weights: WeightArgs,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    Diastole {
        #[arg(long = "H", value_parser = parse_f64)]
        h: f64,
    },
    Systole {
        #[arg(long = "H", value_parser = parse_f64)]
        h: f64,
        #[arg(long = "D", value_parser = parse_f64)]
        d: f64,
    },
    /// Displayed and sharp two-generator estimates.
    Lse {
        #[arg(long = "H", value_parser = parse_f64)]
        h: f64,
        #[arg(long, value_parser = parse_f64)]
        l2: f64,
    },
    Bcg {
        #[arg(long, value_parser = parse_f64)]
        delta: f64,
        #[arg(long = "H", value_parser = parse_f64)]
        h: f64,
    },
    Volume {
        #[arg(long)]
        n: u32,
        #[arg(long = "H", value_parser = parse_f64)]
        h: f64,
        #[arg(long = "D", value_parser = parse_f64)]
        d: f64,
        #[arg(long, value_parser = parse_f64)]
        cn: f64,
    },
    Packing {
        #[arg(long = "V", value_parser = parse_f64)]
        v: f64,
        #[arg(long, value_parser = parse_f64)]
        eps: f64,
        #[arg(long, value_parser = parse_f64)]
        cn: f64,
        #[arg(long)]
        n: u32,
    },
    L0 {
        #[arg(long, value_parser = parse_f64)]
        l: f64,
        #[arg(long = "H", value_parser = parse_f64)]
        h: f64,
        #[arg(long = "D", value_parser = parse_f64)]
        d: f64,
    },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    /// Thin/fat connected sum with Z * Z fundamental group.
    Ex55 {
        #[arg(long, value_parser = parse_f64)]
        eps: Option<f64>,
        #[arg(long, value_parser = parse_f64)]
        eps_prime: Option<f64>,
        /// CSV file with `eps,eps_prime` columns, or an inline list
        /// `e1:e1',e2:e2',...` (a bare `e` means `e:e`).
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Torsion family Z/p * G.
    Ex54 {
        #[arg(long)]
        p: u32,
        #[arg(long, value_parser = parse_f64)]
        eps: Option<f64>,
        /// CSV file with an `eps` column, or an inline list `e1,e2,...`.
        #[arg(long)]
        sweep: Option<String>,
        /// Second factor (default `Z`).
        #[arg(long, default_value = "Z")]
        other: String,
        /// Lengths for the second factor (default 1).
        #[arg(long)]
        other_lengths: Option<String>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

struct Ctx {
    config: Option<GroupConfig>,
    sig: usize,
}

impl Ctx {
    fn group(&self, arg: &GroupArg) -> Result<FreeProduct, CliError> {
        match (&arg.group, &self.config) {
            (Some(g), _) => Ok(FreeProduct::parse(g)?),
            (None, Some(c)) => c.group(),
            (None, None) => Err(CliError::msg("no group given; pass --group or --config")),
        }
    }

    fn weighted(&self, w: &WeightArgs) -> Result<Weighted, CliError> {
        let group = self.group(&w.group)?;
        // config lengths only apply to the config's own group
        let from_config = w.group.group.is_none();
        let pick = |flag: &Option<String>, side: Side| -> Option<String> {
            flag.clone().or_else(|| {
                let c = self.config.as_ref().filter(|_| from_config)?;
                match side {
                    Side::A => c.lengths.a.clone(),
                    Side::B => c.lengths.b.clone(),
                }
            })
        };
        Weighted::new(group, pick(&w.la, Side::A).as_deref(), pick(&w.lb, Side::B).as_deref())
    }

    fn num(&self, x: f64) -> String {
        output::fmt(x, self.sig)
    }
}

fn word(g: &FreeProduct, text: &str) -> Result<ReducedWord, CliError> {
    Ok(g.parse_word(text)?)
}

fn run_word(ctx: &Ctx, cmd: &WordCmd, out: &mut impl Write) -> Result<(), CliError> {
    match cmd {
        WordCmd::Reduce { group, word: w } => {
            let g = ctx.group(group)?;
            let x = word(&g, w)?;
            writeln!(out, "{}", g.format_word(&x))?;
            writeln!(out, "length: {}", x.word_length())?;
        }
        WordCmd::Mul { group, word: w, by } => {
            let g = ctx.group(group)?;
            writeln!(out, "{}", g.format_word(&g.mul(&word(&g, w)?, &word(&g, by)?)))?;
        }
        WordCmd::Inv { group, word: w } => {
            let g = ctx.group(group)?;
            writeln!(out, "{}", g.format_word(&g.inv(&word(&g, w)?)))?;
        }
        WordCmd::Pow { group, word: w, k } => {
            if k.abs() > MAX_POWER {
                return Err(CliError::msg(format!("|k| must be at most {MAX_POWER}")));
            }
            let g = ctx.group(group)?;
            let x = word(&g, w)?;
            check_exponents(&g, &x, *k)?;
            let p = g.pow(&x, *k);
            writeln!(out, "{}", g.format_word(&p))?;
            writeln!(out, "length: {}", p.word_length())?;
        }
        WordCmd::Root { group, word: w } => {
            let g = ctx.group(group)?;
            let (root, q) = g.primitive_root(&word(&g, w)?)?;
            writeln!(out, "root: {}", g.format_word(&root))?;
            writeln!(out, "exponent: {q}")?;
        }
        WordCmd::Classify { group, word: ws } => {
            let g = ctx.group(group)?;
            let set = ws.iter().map(|w| word(&g, w)).collect::<Result<Vec<_>, _>>()?;
            let class = g.classify_small_set(&set)?;
            writeln!(out, "{}", class.tag())?;
            match class {
                SubgroupClass::FactorConjugate { which, conjugator } => {
                    writeln!(out, "factor: {which}")?;
                    writeln!(out, "conjugator: {}", g.format_word(&conjugator))?;
                }
                SubgroupClass::InfiniteCyclic { root } => writeln!(out, "root: {}", g.format_word(&root))?,
                SubgroupClass::ContainsFreePair { witnesses: (x, y) } => {
                    writeln!(out, "witnesses: {} ; {}", g.format_word(&x), g.format_word(&y))?
                }
            }
        }
        WordCmd::Cyclic { group, word: w } => {
            let g = ctx.group(group)?;
            let d = g.cyclic_reduce(&word(&g, w)?)?;
            writeln!(out, "conjugator: {}", g.format_word(&d.conjugator))?;
            writeln!(out, "core: {}", g.format_word(&d.core))?;
            writeln!(out, "core length: {}", d.core.word_length())?;
        }
    }
    Ok(())
}

// Z exponents of a power must stay within i64.
fn check_exponents(g: &FreeProduct, x: &ReducedWord, k: i64) -> Result<(), CliError> {
    for side in [Side::A, Side::B] {
        if g.factor(side).is_finite() {
            continue;
        }
        let worst = x
            .letters()
            .iter()
            .filter(|l| l.side() == side)
            .map(|l| l.payload().unsigned_abs())
            .fold(0u64, |a, b| a.saturating_add(b));
        if worst.saturating_mul(k.unsigned_abs()) > i64::MAX as u64 / 2 {
            return Err(CliError::msg("exponent overflow"));
        }
    }
    Ok(())
}

fn write_table(table: &GrowthTable, path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::msg(format!("{}: {e}", path.display())))?;
    table.write_csv(BufWriter::new(file))?;
    Ok(())
}

fn run_growth(ctx: &Ctx, cmd: &GrowthCmd, out: &mut impl Write) -> Result<(), CliError> {
    match cmd {
        GrowthCmd::Spheres { group, n, csv } => {
            if *n as u64 > MAX_STEPS {
                return Err(CliError::msg(format!("n must be at most {MAX_STEPS}")));
            }
            let g = ctx.group(group)?;
            let t = sphere_counts(g.factor(Side::A), g.factor(Side::B), *n)?;
            writeln!(out, "n sphere ball")?;
            for (i, s) in t.spheres().iter().enumerate() {
                writeln!(out, "{i} {s} {}", t.closed_ball(i).expect("in range"))?;
            }
            if let Some(p) = csv {
                write_table(&t, p)?;
            }
        }
        GrowthCmd::Count { weights, radius, csv } => {
            let w = ctx.weighted(weights)?;
            let t = weighted_counts_capped(&w.lattice()?, *radius, MAX_STEPS)?;
            writeln!(out, "unit: {}", t.unit())?;
            writeln!(out, "N(<{radius}): {}", t.ball_below(*radius)?)?;
            let last = ((*radius / ctx_unit(&t)) + 1e-9).floor() as usize;
            writeln!(out, "N(<={radius}): {}", t.closed_ball(last.min(t.n_max())).expect("in range"))?;
            if let Some(p) = csv {
                write_table(&t, p)?;
            }
        }
        GrowthCmd::Poincare { weights, c } => {
            let w = ctx.weighted(weights)?;
            let p = poincare_series(&w.real()?, *c)?;
            writeln!(out, "W_A: {}", ctx.num(p.w_a))?;
            writeln!(out, "W_B: {}", ctx.num(p.w_b))?;
            match p.value {
                Some(v) => writeln!(out, "value: {}", ctx.num(v))?,
                None => writeln!(out, "value: diverges (W_A * W_B >= 1)")?,
            }
        }
        GrowthCmd::Fit { weights, from, to } => {
            let w = ctx.weighted(weights)?;
            let t = weighted_counts_capped(&w.lattice()?, *to, MAX_STEPS)?;
            writeln!(out, "{}", ctx.num(empirical_entropy(&t, (*from, *to))?))?;
        }
    }
    Ok(())
}

fn ctx_unit(t: &GrowthTable) -> f64 {
    let u = t.unit();
    *u.numer() as f64 / *u.denom() as f64
}

fn run_entropy(ctx: &Ctx, cmd: &EntropyCmd, out: &mut impl Write) -> Result<(), CliError> {
    match cmd {
        EntropyCmd::Solve { l1, l2 } => writeln!(out, "{}", ctx.num(solve_h_f2(*l1, *l2)?.h))?,
        EntropyCmd::Critical { weights } => {
            let w = ctx.weighted(weights)?;
            match critical_exponent(&w.real()?)? {
                CriticalExponent::Positive(s) => writeln!(out, "{}", ctx.num(s.h))?,
                CriticalExponent::Zero => writeln!(out, "0 (series converges for every c > 0)")?,
            }
        }
    }
    Ok(())
}

fn run_bounds(ctx: &Ctx, cmd: &BoundsCmd, out: &mut impl Write) -> Result<(), CliError> {
    let value = match *cmd {
        BoundsCmd::Diastole { h } => bounds::diastole_lb(h)?,
        BoundsCmd::Systole { h, d } => bounds::systole_lb(h, d)?,
        BoundsCmd::Lse { h, l2 } => {
            let p = bounds::pair_inequality_lse(h, l2)?;
            writeln!(out, "displayed: {}", ctx.num(p.displayed))?;
            writeln!(out, "sharp: {}", ctx.num(p.sharp))?;
            return Ok(());
        }
        BoundsCmd::Bcg { delta, h } => {
            let v = bounds::bcg_diastole_lb(delta, h)?;
            writeln!(out, "{}", ctx.num(v))?;
            let star: f64 = bounds::bcg_crossover_delta();
            writeln!(out, "crossover delta: {}", ctx.num(star))?;
            return Ok(());
        }
        BoundsCmd::Volume { n, h, d, cn } => bounds::volume_lb(n, h, d, cn)?,
        BoundsCmd::Packing { v, eps, cn, n } => bounds::packing_count_ub(v, eps, cn, n)?,
        BoundsCmd::L0 { l, h, d } => bounds::l0_combine(l, h, d)?,
    };
    writeln!(out, "{}", ctx.num(value))?;
    Ok(())
}

/// Reads sweep points from a CSV file (named columns) or an inline list.
fn sweep_points(spec: &str, columns: &[&str]) -> Result<Vec<Vec<f64>>, CliError> {
    if Path::new(spec).is_file() {
        let mut r = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(spec)
            .map_err(|e| CliError::msg(format!("{spec}: {e}")))?;
        let headers = r.headers().map_err(|e| CliError::msg(e.to_string()))?.clone();
        let idx = columns
            .iter()
            .map(|c| {
                headers
                    .iter()
                    .position(|h| h == *c)
                    .ok_or_else(|| CliError::msg(format!("{spec}: missing column {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| CliError::msg(format!("{spec}: {e}")))?;
            let row = idx
                .iter()
                .map(|&i| parse_f64(rec.get(i).unwrap_or("")).map_err(CliError::msg))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        return Ok(rows);
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let parts = item.split(':').map(|p| parse_f64(p).map_err(CliError::msg)).collect::<Result<Vec<_>, _>>()?;
            match (parts.len(), columns.len()) {
                (1, n) => Ok(vec![parts[0]; n]),
                (a, b) if a == b => Ok(parts),
                _ => Err(CliError::msg(format!("bad sweep item {item:?}"))),
            }
        })
        .collect()
}

fn csv_file(path: &Path) -> Result<BufWriter<File>, CliError> {
    let file = File::create(path).map_err(|e| CliError::msg(format!("{}: {e}", path.display())))?;
    Ok(BufWriter::new(file))
}

fn run_scenario(ctx: &Ctx, cmd: &ScenarioCmd, out: &mut impl Write) -> Result<(), CliError> {
    match cmd {
        ScenarioCmd::Ex55 { eps, eps_prime, sweep, csv } => {
            let points: Vec<(f64, f64)> = match (sweep, eps) {
                (Some(s), None) => sweep_points(s, &["eps", "eps_prime"])?
                    .into_iter()
                    .map(|r| (r[0], r[1]))
                    .collect(),
                (None, Some(e)) => vec![(*e, eps_prime.unwrap_or(*e))],
                _ => return Err(CliError::msg("give either --eps [--eps-prime] or --sweep")),
            };
            let sweep = sweep_ex55(&points)?;
            writeln!(out, "eps eps_prime sys diam_lo diam_hi h thm_bound sharpness_ratio")?;
            for r in &sweep.points {
                let row = [r.eps, r.eps_prime, r.sys, r.diam_lo, r.diam_hi, r.h, r.thm_bound, r.sharpness_ratio];
                writeln!(out, "{}", row.map(|x| ctx.num(x)).join(" "))?;
            }
            writeln!(out, "# sharpness_ratio uses diam_hi, so it overstates the gap")?;
            if let Some(h) = sweep.diagonal_sup_h {
                let verdict = if sweep.entropy_ceiling_holds() { "<=" } else { ">" };
                writeln!(out, "# diagonal sup h = {} {verdict} 1/pi", ctx.num(h))?;
            }
            if let Some(p) = csv {
                write_ex55_csv(csv_file(p)?, &sweep.points)?;
            }
        }
        ScenarioCmd::Ex54 { p, eps, sweep, other, other_lengths, csv } => {
            let eps: Vec<f64> = match (sweep, eps) {
                (Some(s), None) => sweep_points(s, &["eps"])?.into_iter().map(|r| r[0]).collect(),
                (None, Some(e)) => vec![*e],
                _ => return Err(CliError::msg("give either --eps or --sweep")),
            };
            if eps.is_empty() {
                return Err(freeprod::Error::EmptySweep.into());
            }
            let factor = FactorSpec::parse(other)?;
            let lengths = other_length_assignment(&factor, other_lengths.as_deref())?;
            let rows = eps
                .iter()
                .map(|&e| run_ex54_with(*p, e, factor.clone(), lengths.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(out, "p eps torsion_letter_length h ceiling")?;
            for r in &rows {
                let nums = [r.eps, r.torsion_letter_length, r.h, r.ceiling].map(|x| ctx.num(x));
                writeln!(out, "{} {}", r.p, nums.join(" "))?;
            }
            if let Some(path) = csv {
                write_ex54_csv(csv_file(path)?, &rows)?;
            }
        }
    }
    Ok(())
}

fn other_length_assignment(factor: &FactorSpec, text: Option<&str>) -> Result<LengthAssignment<f64>, CliError> {
    // reuse the group-length parser with a dummy first factor
    let g = FreeProduct::new(FactorSpec::infinite_cyclic(), factor.clone());
    let w = Weighted::new(g, None, text)?.real()?;
    Ok(w.lengths(Side::B).clone())
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    let config = cli.config.as_deref().map(GroupConfig::load).transpose()?;
    let precision = match (cli.precision, config.as_ref().and_then(|c| c.precision)) {
        (Some(p), _) | (None, Some(p)) => config::check_precision(p)?,
        (None, None) => DEFAULT_PRECISION,
    };
    let ctx = Ctx {
        config,
        sig: output::digits(precision),
    };
    match &cli.command {
        Command::Word(c) => run_word(&ctx, c, out),
        Command::Growth(c) => run_growth(&ctx, c, out),
        Command::Entropy(c) => run_entropy(&ctx, c, out),
        Command::Bounds(c) => run_bounds(&ctx, c, out),
        Command::Scenario(c) => run_scenario(&ctx, c, out),
        Command::Config => match &ctx.config {
            Some(c) => Ok(write!(out, "{}", c.to_toml())?),
            None => Err(CliError::msg("no --config given")),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out).and_then(|()| out.flush().map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
