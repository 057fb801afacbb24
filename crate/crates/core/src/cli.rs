//! Command-line front end. `run` returns the process exit code: 0 on success,
//! 1 when a check fails (or the library reports an error), 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cluster::{build_exchange_from_word, Seed};
use crate::error::{Error, Result};
use crate::minors::verify_initial_seed;
use crate::par::Execution;
use crate::polytope::{nz_polytope, string_polytope, DEFAULT_K_MAX};
use crate::rootdata::{parse_list, parse_word, RootDatum, Series, Weight, WeylGroup, DEFAULT_GROUP_CAP};
use crate::semitoric::{all_pairs_scan, Chart, CoordinateSystem};
use crate::verify::run_all;
use crate::zcrystal::{LambdaCrystal, WordContext, DEFAULT_CRYSTAL_CAP};

#[derive(Parser, Debug)]
#[command(name = "semitoric", version, about = "Crystal, polytope and cluster combinatorics of Richardson varieties")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Disable internal parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, positive roots and Weyl group size.
    Rootdata(GroupArgs),
    /// The crystal B(lambda) in the word's coordinates.
    Crystal(CrystalArgs),
    /// String or Nakashima-Zelevinsky polytope of a weight.
    Polytope {
        #[command(subcommand)]
        kind: PolytopeKind,
    },
    /// Exchange matrices, mutation and quivers.
    Seed {
        #[command(subcommand)]
        action: SeedAction,
    },
    /// Generalized minors against the initial seed.
    Minors {
        #[command(subcommand)]
        action: MinorsAction,
    },
    /// Face-union certificates for Richardson varieties.
    Richardson {
        #[command(subcommand)]
        action: RichardsonAction,
    },
    /// Run the full acceptance suite.
    VerifyAll {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Cartan type: A, B, C, D, E, F or G.
    #[arg(long = "type", value_parser = parse_series)]
    series: Series,
    #[arg(long)]
    rank: usize,
    /// Maximal Weyl group order.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct WordArgs {
    #[arg(long = "type", value_parser = parse_series)]
    series: Series,
    #[arg(long)]
    rank: usize,
    /// Reduced word for the longest element, comma separated; defaults to the
    /// lexicographically first one.
    #[arg(long, value_parser = parse_word_arg)]
    word: Option<Word>,
}

#[derive(Args, Debug, Clone)]
struct WeightArgs {
    #[command(flatten)]
    word: WordArgs,
    /// Dominant weight in fundamental coordinates, comma separated.
    #[arg(long, value_parser = parse_weight_arg)]
    weight: Weight,
}

#[derive(Args, Debug)]
struct CrystalArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node labels in DOT and text output.
    #[arg(long, value_enum, default_value_t = Label::String)]
    label: Label,
    #[arg(long, default_value_t = DEFAULT_CRYSTAL_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum PolytopeKind {
    String(PolytopeArgs),
    Nz(PolytopeArgs),
}

#[derive(Args, Debug)]
struct PolytopeArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// Largest dilation used when hulling.
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    kmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum SeedAction {
    /// The seed of a reduced word.
    Build(SeedArgs),
    /// The seed after a mutation sequence.
    Mutate(SeedArgs),
    /// Quiver of the (mutated) exchange matrix in DOT.
    Quiver(SeedArgs),
}

#[derive(Args, Debug)]
struct SeedArgs {
    #[command(flatten)]
    word: WordArgs,
    /// Mutation directions, comma separated.
    #[arg(long, value_parser = parse_word_arg, default_value = "")]
    mutation: Word,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum MinorsAction {
    /// Compare mutated seed variables with minors on random samples.
    Verify(MinorsArgs),
}

#[derive(Args, Debug)]
struct MinorsArgs {
    #[command(flatten)]
    word: WordArgs,
    /// A single mutable direction; all of them by default.
    #[arg(long)]
    direction: Option<usize>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum RichardsonAction {
    /// Certificate for one Bruhat pair.
    Report(ReportArgs),
    /// Certificates for all Bruhat pairs.
    Scan(ChartArgs),
}

#[derive(Args, Debug)]
struct ChartArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long, value_enum, default_value_t = Coords::String)]
    coords: Coords,
    /// Mutation word for cluster coordinates.
    #[arg(long, value_parser = parse_word_arg, default_value = "")]
    mutation: Word,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    kmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[command(flatten)]
    chart: ChartArgs,
    /// Lower Weyl group element as a word; empty for the identity.
    #[arg(long, value_parser = parse_word_arg, default_value = "")]
    v: Word,
    /// Upper Weyl group element as a word.
    #[arg(long, value_parser = parse_word_arg, default_value = "")]
    w: Word,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    String,
    Nz,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Coords {
    String,
    Nz,
    Cluster,
}

/// Newtype so clap does not treat a word as a repeated argument.
#[derive(Debug, Clone, Default)]
struct Word(Vec<usize>);

fn parse_series(s: &str) -> std::result::Result<Series, String> {
    s.parse::<Series>().map_err(|e| e.to_string())
}

fn parse_word_arg(s: &str) -> std::result::Result<Word, String> {
    parse_word(s).map(Word).map_err(|e| e.to_string())
}

fn parse_weight_arg(s: &str) -> std::result::Result<Weight, String> {
    parse_list(s).map(Weight).map_err(|e| e.to_string())
}

/// Failure modes past argument parsing.
enum Failure {
    Usage(String),
    Library(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn vec_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn datum_of(w: &WordArgs) -> Result<RootDatum> {
    RootDatum::new(w.series, w.rank)
}

fn context_of(w: &WordArgs) -> Result<(WordContext, WeylGroup)> {
    let d = datum_of(w)?;
    let g = WeylGroup::new(&d)?;
    let word = match &w.word {
        Some(Word(x)) => x.clone(),
        None => g.reduced_words(g.longest()).into_iter().min().unwrap_or_default(),
    };
    Ok((WordContext::new(&d, &word)?, g))
}

fn reject_format(f: Format, allowed: &[Format], what: &str) -> std::result::Result<(), Failure> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{what} does not support --format {f:?}").to_lowercase()))
    }
}

fn cmd_rootdata(a: &GroupArgs) -> std::result::Result<Output, Failure> {
    reject_format(a.format, &[Format::Json, Format::Text], "rootdata")?;
    let d = RootDatum::new(a.series, a.rank)?;
    let g = WeylGroup::with_cap(&d, a.group_cap)?;
    let roots: Vec<Vec<i64>> = d.positive_roots().into_iter().map(|r| r.0).collect();
    if a.format == Format::Json {
        return Ok(Output::ok(pretty(&json!({
            "series": d.series.to_string(),
            "rank": d.rank,
            "cartan": d.cartan,
            "positive_roots": roots,
            "weyl_order": g.len(),
            "longest_length": g.length(g.longest()),
        }))));
    }
    let mut s = format!("{}{}\ncartan matrix:\n", d.series, d.rank);
    for row in &d.cartan {
        let _ = writeln!(s, "  {}", vec_text(row));
    }
    let _ = writeln!(s, "positive roots ({}), fundamental coordinates:", roots.len());
    for r in &roots {
        let _ = writeln!(s, "  {}", vec_text(r));
    }
    let _ = writeln!(s, "|W| = {}, l(w0) = {}", g.len(), g.length(g.longest()));
    Ok(Output::ok(s))
}

fn cmd_crystal(a: &CrystalArgs, exec: Execution) -> std::result::Result<Output, Failure> {
    let (ctx, _) = context_of(&a.weight.word)?;
    let c = LambdaCrystal::generate_with(&ctx, &a.weight.weight, a.cap, exec)?;
    let label = |b: usize| match a.label {
        Label::String => c.phi_string(b),
        Label::Nz => c.psi(b),
    };
    let text = match a.format {
        Format::Json => pretty(&c.to_json()),
        Format::Dot => c.to_dot(label),
        Format::Text => {
            let mut s = format!("B({}) for word {:?}: {} elements\n", a.weight.weight, ctx.word, c.len());
            for b in 0..c.len() {
                let _ = write!(s, "{}", vec_text(&label(b)));
                for i in 1..=ctx.datum.rank {
                    if let Some(t) = c.f_tilde(b, i) {
                        let _ = write!(s, "  f{i}-> {}", vec_text(&label(t)));
                    }
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn cmd_polytope(kind: &PolytopeKind) -> std::result::Result<Output, Failure> {
    let (a, nz) = match kind {
        PolytopeKind::String(a) => (a, false),
        PolytopeKind::Nz(a) => (a, true),
    };
    reject_format(a.format, &[Format::Json, Format::Text], "polytope")?;
    let (ctx, _) = context_of(&a.weight.word)?;
    let lam = &a.weight.weight;
    let p = if nz { nz_polytope(&ctx, lam, a.kmax)? } else { string_polytope(&ctx, lam, a.kmax)? };
    let text = if a.format == Format::Json {
        let mut v = p.polytope.to_json(Some(&p.lattice_points));
        v["word"] = json!(ctx.word);
        v["lambda"] = json!(lam);
        v["saturated"] = json!(p.saturated);
        v["level"] = json!(p.level);
        pretty(&v)
    } else {
        let mut s = format!(
            "{} polytope of {} for word {:?}: dim {}, {} vertices, {} lattice points{}\n",
            if nz { "NZ" } else { "string" },
            lam,
            ctx.word,
            p.polytope.dim,
            p.polytope.vertices.len(),
            p.lattice_points.len(),
            if p.saturated { "" } else { " (not saturated at kmax)" }
        );
        s.push_str(&p.polytope.inequality_text());
        s
    };
    Ok(Output::ok(text))
}

fn cmd_seed(action: &SeedAction) -> std::result::Result<Output, Failure> {
    let (a, quiver) = match action {
        SeedAction::Build(a) | SeedAction::Mutate(a) => (a, false),
        SeedAction::Quiver(a) => (a, true),
    };
    if quiver {
        reject_format(a.format, &[Format::Dot, Format::Text], "seed quiver")?;
    } else {
        reject_format(a.format, &[Format::Json, Format::Text], "seed")?;
    }
    let (ctx, _) = context_of(&a.word)?;
    let seed = Seed::initial(build_exchange_from_word(&ctx.datum, &ctx.word)?).mutate_word(&a.mutation.0)?;
    if quiver {
        return Ok(Output::ok(seed.matrix.to_dot()));
    }
    if a.format == Format::Json {
        return Ok(Output::ok(pretty(&seed.to_json())));
    }
    let e = &seed.matrix;
    let mut s = format!("seed of word {:?} after mutations {:?}\nexchange matrix (rows {:?}):\n", ctx.word, seed.word, e.unfrozen);
    for row in &e.entries {
        let _ = writeln!(s, "  {}", vec_text(row));
    }
    s.push_str("variables:\n");
    for (i, x) in seed.variables.iter().enumerate() {
        let _ = writeln!(s, "  x_{} = {x}", i + 1);
    }
    Ok(Output::ok(s))
}

fn cmd_minors(a: &MinorsArgs, exec: Execution) -> std::result::Result<Output, Failure> {
    let (ctx, _) = context_of(&a.word)?;
    let reports = verify_initial_seed(&ctx.datum, &ctx.word, a.direction, a.samples, a.seed, exec)?;
    let ok = reports.iter().all(|r| r.consistent);
    Ok(Output { text: pretty(&reports), ok })
}

fn chart_of(a: &ChartArgs) -> std::result::Result<(Chart, WeylGroup), Failure> {
    if a.coords != Coords::Cluster && !a.mutation.0.is_empty() {
        return Err(Failure::Usage("--mutation requires --coords cluster".into()));
    }
    reject_format(a.format, &[Format::Json, Format::Text], "richardson")?;
    let (ctx, g) = context_of(&a.weight.word)?;
    let coords = match a.coords {
        Coords::String => CoordinateSystem::String,
        Coords::Nz => CoordinateSystem::Nz,
        Coords::Cluster => CoordinateSystem::Cluster { mutation: a.mutation.0.clone() },
    };
    Ok((Chart::new(&ctx, &a.weight.weight, coords, a.kmax)?, g))
}

fn cmd_richardson(action: &RichardsonAction, exec: Execution) -> std::result::Result<Output, Failure> {
    match action {
        RichardsonAction::Report(a) => {
            let (chart, g) = chart_of(&a.chart)?;
            let v = g.index_of_word(&a.v.0)?;
            let w = g.index_of_word(&a.w.0)?;
            let r = chart.report(&g, v, w)?;
            let text = if a.chart.format == Format::Json { pretty(&r) } else { r.to_text() };
            Ok(Output { text, ok: r.passed() })
        }
        RichardsonAction::Scan(a) => {
            let (chart, g) = chart_of(a)?;
            let s = all_pairs_scan(&chart, &g, exec)?;
            let text = if a.format == Format::Json { pretty(&s) } else { s.to_text() };
            Ok(Output { text, ok: s.all_passed() })
        }
    }
}

fn cmd_verify_all(format: Format, exec: Execution) -> std::result::Result<Output, Failure> {
    reject_format(format, &[Format::Json, Format::Text], "verify-all")?;
    let results = run_all(exec);
    let ok = results.iter().all(|r| r.passed);
    let text = if format == Format::Json {
        pretty(&results)
    } else {
        let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
        let passed = results.iter().filter(|r| r.passed).count();
        let _ = writeln!(s, "{passed}/{} criteria passed", results.len());
        s
    };
    Ok(Output { text, ok })
}

fn dispatch(cli: &Cli) -> std::result::Result<Output, Failure> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match &cli.command {
        Command::Rootdata(a) => cmd_rootdata(a),
        Command::Crystal(a) => cmd_crystal(a, exec),
        Command::Polytope { kind } => cmd_polytope(kind),
        Command::Seed { action } => cmd_seed(action),
        Command::Minors { action: MinorsAction::Verify(a) } => cmd_minors(a, exec),
        Command::Richardson { action } => cmd_richardson(action, exec),
        Command::VerifyAll { format } => cmd_verify_all(*format, exec),
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` unless `--output` is given.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = dispatch(&cli).and_then(|o| {
        match &cli.output {
            Some(path) => std::fs::write(path, &o.text).map_err(Failure::Io)?,
            None => out.write_all(o.text.as_bytes()).map_err(Failure::Io)?,
        }
        Ok(o.ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Library(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse(_) | Error::NotDominant(_) | Error::DimensionMismatch { .. } => 2,
                Error::InvalidRootDatum(_) | Error::NotReduced { .. } | Error::NotLongestWord { .. } => 2,
                Error::IndexOutOfRange { .. } | Error::FrozenDirection(_) | Error::EmptyRichardson => 2,
                _ => 1,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("semitoric").chain(args.split_whitespace()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn crystal_dot_has_eight_nodes() {
        let (code, out, _) = call("crystal --type A --rank 2 --weight 1,1 --word 1,2,1 --format dot");
        assert_eq!(code, 0);
        assert_eq!(out.matches("[label=\"(").count(), 8);
        assert_eq!(out.matches(" -> ").count(), 8);
        assert!(out.contains("[label=\"(1, 2, 1)\"]"));
    }

    #[test]
    fn seed_build_json() {
        let (code, out, _) = call("seed build --type A --rank 3 --word 1,2,1,3,2,1 --format json");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["matrix"]["entries"], json!([[0, -1, 1, 0, 0, 0], [1, 0, -1, -1, 1, 0], [-1, 1, 0, 0, -1, 1]]));
    }

    #[test]
    fn richardson_report_two_faces() {
        let (code, out, _) =
            call("richardson report --type A --rank 2 --weight 1,1 --v 1 --w 2,1 --coords string --format json");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["certificate"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call("crystal --type A --rank 2 --weight 1,1 --bogus").0, 2);
        assert_eq!(call("nonsense").0, 2);
        assert_eq!(call("crystal --type A --rank 2 --weight 1,x").0, 2);
        assert_eq!(call("crystal --type A --rank 2 --weight 1,1 --word 1,2").0, 2);
        assert_eq!(call("seed quiver --type A --rank 2 --format json").0, 2);
        assert_eq!(call("richardson report --type A --rank 2 --weight 1,1 --v 1,2 --w 1").0, 2);
        let (code, out, _) = call("--help");
        assert_eq!(code, 0);
        assert!(out.contains("verify-all"));
    }

    #[test]
    fn output_is_deterministic() {
        let cmd = "richardson scan --type A --rank 2 --weight 1,1 --coords nz --format json";
        assert_eq!(call(cmd).1, call(cmd).1);
        let (code, a, _) = call("seed mutate --type A --rank 3 --mutation 1,2 --format text");
        assert_eq!(code, 0);
        assert_eq!(a, call("seed mutate --type A --rank 3 --mutation 1,2 --format text --sequential").1);
    }

    #[test]
    fn default_word_is_first_reduced_word() {
        let (_, a, _) = call("polytope string --type A --rank 2 --weight 1,1 --format json");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["word"], json!([1, 2, 1]));
        assert_eq!(v["lattice_points"].as_array().unwrap().len(), 8);
    }
}
