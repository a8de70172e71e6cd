//! Command-line front end for the [`lch`] library.
//!
//! The `lch` binary is a thin shell around [`run`], which takes an argv
//! slice and a standard-input source and returns the captured output plus
//! an exit code. Tests drive the CLI in-process through the very same
//! path the binary uses, so exit codes and byte-level output are covered
//! without spawning processes.
//!
//! Exit codes: 0 success, 1 negative verdict (`compare --expect-distinct`
//! when the inputs are not distinguished), 2 usage or parse errors,
//! 3 verification failures, 4 budget exhaustion.

use std::collections::BTreeMap;
use std::io::Read;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use lch::fixtures;
use lch::{
    augvar_count, augvar_system, chord_degree, compare, enumerate_augmentations, fingerprint,
    homology_betti, linear_part, maslov_of_loop, parse_dga, pure_mixed_betti, render_dga,
    specialize, twist, Augmentation, BettiTable, CappingRecord, CompareOptions, CompareVerdict,
    Dga, Fingerprint, FiniteField, GenId, ParseError, RhoPoint, DEFAULT_BUDGET,
};

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (argv style: the first element is the program
/// name) reading `-` files from `stdin`, and captures the outcome.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                // --help and --version print to stdout and succeed.
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    let mut err = String::new();
    let code = match dispatch(&cli, stdin, &mut out, &mut err) {
        Ok(code) => code,
        Err(f) => {
            err.push_str(&f.message);
            err.push('\n');
            f.code
        }
    };
    Outcome {
        code,
        stdout: out,
        stderr: err,
    }
}

#[derive(Parser)]
#[command(
    name = "lch",
    version,
    about = "Exact-arithmetic workbench for Legendrian contact homology DGAs",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit machine-readable JSON (schema 1) instead of the human report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .dga file and verify that d has degree -1 and d^2 = 0.
    Check(CheckArgs),
    /// Enumerate augmentations of the rho-specialized DGA over GF(q).
    Augs(AugsArgs),
    /// Emit the augmentation-variety equations, or count GF(q) points.
    Augvar(AugvarArgs),
    /// Betti table of the linearized homology at an augmentation.
    Linhom(LinhomArgs),
    /// Compare two DGAs by fingerprint and report the first difference.
    Compare(CompareArgs),
    /// Add an acyclic generator pair (d a = b) in the given degree.
    Stabilize(StabilizeArgs),
    /// Print a built-in DGA in the .dga format.
    Fixture(FixtureArgs),
    /// Grade a Reeb chord from its capping data.
    Grade(GradeArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Parse only; skip the d^2 = 0 and degree -1 checks.
    #[arg(long)]
    no_verify: bool,
    /// Input file; '-' reads standard input.
    file: String,
}

#[derive(Args)]
struct AugsArgs {
    /// Field order q (a prime power).
    #[arg(long)]
    q: u64,
    /// H1 point: comma-separated nonzero codes, one per H1 variable.
    /// Defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    rho: Option<Vec<u64>>,
    /// Candidate-evaluation budget (hard limit, never sampled).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Input file; '-' reads standard input.
    file: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["emit", "count"])))]
struct AugvarArgs {
    /// Print the defining equations, one per line.
    #[arg(long)]
    emit: bool,
    /// Count the GF(q) points of the defining conditions.
    #[arg(long, requires = "q")]
    count: bool,
    /// Field order q (a prime power); required with --count.
    #[arg(long)]
    q: Option<u64>,
    /// List the points alongside the count.
    #[arg(long, requires = "count")]
    points: bool,
    /// Candidate-evaluation budget (hard limit, never sampled).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Input file; '-' reads standard input.
    file: String,
}

#[derive(Args)]
struct LinhomArgs {
    /// Field order q (a prime power).
    #[arg(long)]
    q: u64,
    /// H1 point: comma-separated nonzero codes, one per H1 variable.
    /// Defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    rho: Option<Vec<u64>>,
    /// Augmentation values for the degree-0 generators in declaration
    /// order. Defaults to all zeros.
    #[arg(long, value_delimiter = ',')]
    aug: Option<Vec<u64>>,
    /// Input file; '-' reads standard input.
    file: String,
}

#[derive(Args)]
struct CompareArgs {
    /// Field orders to fingerprint over, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
    /// Compare mixed-chord Betti degrees up to one uniform shift.
    #[arg(long)]
    mixed_shift: bool,
    /// Exit 1 when the DGAs are not distinguished.
    #[arg(long)]
    expect_distinct: bool,
    /// Candidate-evaluation budget (hard limit, never sampled).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// First input file; '-' reads standard input.
    file1: String,
    /// Second input file; '-' reads standard input.
    file2: String,
}

#[derive(Args)]
struct StabilizeArgs {
    /// Degree of the new generator a; its partner b has degree deg - 1.
    #[arg(long)]
    deg: i64,
    /// Names for the pair as 'a,b'; defaults to the first free sa<n>,sb<n>.
    #[arg(long, value_delimiter = ',')]
    names: Option<Vec<String>>,
    /// Input file; '-' reads standard input.
    file: String,
}

#[derive(Args)]
struct FixtureArgs {
    #[command(subcommand)]
    which: FixtureKind,
}

#[derive(Subcommand)]
enum FixtureKind {
    /// Genus-g surface with k knotted handles.
    Lgk {
        /// Genus (at least 1).
        #[arg(long)]
        g: u32,
        /// Number of knotted handles (at most g).
        #[arg(long)]
        k: u32,
        /// Coefficient field order; 0 means integer coefficients.
        #[arg(long = "char", default_value_t = 0)]
        order: u64,
    },
    /// k-component fiber link: zero differential, mixed chords b_i, a_i.
    Fiberlink {
        /// Number of components beyond the first (at least 1).
        #[arg(long)]
        k: u32,
        /// Coefficient field order; 0 means integer coefficients.
        #[arg(long = "char", default_value_t = 0)]
        order: u64,
    },
    /// Two-component knot-sphere link: pure chord c, mixed chords a, b.
    Knotsphere {
        /// Coefficient field order; 0 means integer coefficients.
        #[arg(long = "char", default_value_t = 0)]
        order: u64,
    },
    /// Standard sphere: the single pure chord c.
    Stdsphere {
        /// Coefficient field order; 0 means integer coefficients.
        #[arg(long = "char", default_value_t = 0)]
        order: u64,
    },
}

#[derive(Args)]
struct GradeArgs {
    /// Down cusps crossed by the capping path.
    #[arg(long)]
    down: u32,
    /// Up cusps crossed by the capping path.
    #[arg(long)]
    up: u32,
    /// Morse index of the local height difference (0, 1, or 2).
    #[arg(long)]
    index: u8,
}

/// An error already mapped to an exit code and a printable message.
struct Failure {
    code: i32,
    message: String,
}

impl From<lch::Error> for Failure {
    fn from(e: lch::Error) -> Self {
        let code = match &e {
            lch::Error::BudgetExceeded { .. } => 4,
            lch::Error::VerifyFailed(_)
            | lch::Error::NotAnAugmentation(_)
            | lch::Error::NotGood(_)
            | lch::Error::Internal(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: format!("error: {e}"),
        }
    }
}

fn usage_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: format!("error: {}", message.into()),
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| usage_error(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage_error(format!("{path}: {e}")))
    }
}

fn load_dga(path: &str, stdin: &mut dyn Read, verify: bool) -> Result<Dga, Failure> {
    let text = read_input(path, stdin)?;
    parse_dga(&text, verify).map_err(|e| {
        let code = match &e {
            ParseError::Syntax(_) => 2,
            ParseError::Verify(_) => 3,
        };
        let shown = if path == "-" { "stdin" } else { path };
        let message = e
            .diagnostics()
            .iter()
            .map(|d| format!("{shown}:{}: {}", d.line, d.message))
            .collect::<Vec<_>>()
            .join("\n");
        Failure { code, message }
    })
}

fn ring_label(spec: &lch::RingSpec) -> String {
    match spec.field() {
        None => "Z".to_string(),
        Some(f) => format!("F{}", f.q()),
    }
}

fn gen_name(d: &Dga, id: GenId) -> String {
    d.algebra().generator(id).name.clone()
}

fn rho_for(d: &Dga, q: u64, values: &Option<Vec<u64>>) -> Result<RhoPoint, Failure> {
    let field = FiniteField::new(q)?;
    let rank = d.spec().h1_rank();
    match values {
        Some(v) => {
            if v.len() != rank {
                return Err(usage_error(format!(
                    "--rho expects {rank} values (one per H1 variable), got {}",
                    v.len()
                )));
            }
            Ok(RhoPoint::new(field, v.clone())?)
        }
        None => Ok(RhoPoint::all_ones(field, rank)),
    }
}

fn tuple(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("({})", inner.join(", "))
}

fn note_degenerate_q2(qs: &[u64], err: &mut String) {
    if qs.contains(&2) {
        err.push_str(
            "note: the unit group of F2 is a single point, so counts over q=2 are degenerate\n",
        );
    }
}

fn push_json<T: Serialize>(out: &mut String, value: &T) -> Result<(), Failure> {
    let rendered = serde_json::to_string(value).map_err(|e| Failure {
        code: 3,
        message: format!("error: serializing output: {e}"),
    })?;
    out.push_str(&rendered);
    out.push('\n');
    Ok(())
}

fn dispatch(
    cli: &Cli,
    stdin: &mut dyn Read,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    match &cli.command {
        Command::Check(a) => cmd_check(a, cli.json, stdin, out),
        Command::Augs(a) => cmd_augs(a, cli.json, stdin, out, err),
        Command::Augvar(a) => cmd_augvar(a, cli.json, stdin, out, err),
        Command::Linhom(a) => cmd_linhom(a, cli.json, stdin, out),
        Command::Compare(a) => cmd_compare(a, cli.json, stdin, out, err),
        Command::Stabilize(a) => cmd_stabilize(a, cli.json, stdin, out),
        Command::Fixture(a) => cmd_fixture(a, cli.json, out),
        Command::Grade(a) => cmd_grade(a, cli.json, out),
    }
}

fn cmd_check(
    a: &CheckArgs,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut String,
) -> Result<i32, Failure> {
    let dga = load_dga(&a.file, stdin, !a.no_verify)?;
    let generators = dga.algebra().gens().len();
    let degree_zero = dga.degree_zero_gens().len();
    let ring = ring_label(dga.spec());
    let unit = match dga.spec().characteristic() {
        0 => None,
        _ => Some(dga.unit_in_image_linear()?),
    };

    if json {
        #[derive(Serialize)]
        struct CheckOut<'a> {
            schema: u32,
            command: &'a str,
            ok: bool,
            verified: bool,
            ring: String,
            generators: usize,
            degree_zero_generators: usize,
            unit_in_image_linear: Option<bool>,
        }
        push_json(
            out,
            &CheckOut {
                schema: 1,
                command: "check",
                ok: true,
                verified: !a.no_verify,
                ring,
                generators,
                degree_zero_generators: degree_zero,
                unit_in_image_linear: unit,
            },
        )?;
    } else {
        out.push_str(&format!(
            "ok: {generators} generator{} ({degree_zero} in degree 0) over {ring}\n",
            if generators == 1 { "" } else { "s" }
        ));
        out.push_str(if a.no_verify {
            "verification skipped\n"
        } else {
            "d^2 = 0 and degree -1 verified for every generator\n"
        });
        if let Some(found) = unit {
            out.push_str(&format!(
                "unit in image of the linearized differential: {}\n",
                if found {
                    "certificate found"
                } else {
                    "no linear certificate"
                }
            ));
        }
    }
    Ok(0)
}

fn cmd_augs(
    a: &AugsArgs,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    let dga = load_dga(&a.file, stdin, true)?;
    note_degenerate_q2(&[a.q], err);
    let rho = rho_for(&dga, a.q, &a.rho)?;
    let specialized = specialize(&dga, &rho)?;
    let augs = enumerate_augmentations(&specialized, a.budget)?;
    let named: Vec<Vec<(String, u64)>> = augs
        .iter()
        .map(|eps| {
            eps.values()
                .iter()
                .map(|&(g, v)| (gen_name(&specialized, g), v))
                .collect()
        })
        .collect();

    if json {
        #[derive(Serialize)]
        struct AugsOut<'a> {
            schema: u32,
            command: &'a str,
            q: u64,
            rho: &'a [u64],
            count: usize,
            augmentations: &'a [Vec<(String, u64)>],
        }
        push_json(
            out,
            &AugsOut {
                schema: 1,
                command: "augs",
                q: a.q,
                rho: rho.values(),
                count: named.len(),
                augmentations: &named,
            },
        )?;
    } else {
        out.push_str(&format!(
            "{} augmentation{} over F{} at rho = {}\n",
            named.len(),
            if named.len() == 1 { "" } else { "s" },
            a.q,
            tuple(rho.values())
        ));
        for eps in &named {
            if eps.is_empty() {
                out.push_str("eps: (trivial)\n");
            } else {
                let parts: Vec<String> = eps.iter().map(|(n, v)| format!("{n} = {v}")).collect();
                out.push_str(&format!("eps: {}\n", parts.join(", ")));
            }
        }
    }
    Ok(0)
}

fn cmd_augvar(
    a: &AugvarArgs,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    let dga = load_dga(&a.file, stdin, true)?;
    if a.emit {
        let system = augvar_system(&dga)?;
        let rendered = system.render();
        if json {
            #[derive(Serialize)]
            struct EmitOut<'a> {
                schema: u32,
                command: &'a str,
                equations: Vec<&'a str>,
            }
            push_json(
                out,
                &EmitOut {
                    schema: 1,
                    command: "augvar",
                    equations: rendered.lines().collect(),
                },
            )?;
        } else {
            out.push_str(&rendered);
        }
        return Ok(0);
    }

    let q = a.q.expect("clap enforces --q with --count");
    note_degenerate_q2(&[q], err);
    let result = augvar_count(&dga, q, a.points, a.budget)?;
    let points: Option<Vec<Vec<u64>>> = result
        .points
        .as_ref()
        .map(|ps| ps.iter().map(|p| p.values().to_vec()).collect());

    if json {
        #[derive(Serialize)]
        struct CountOut<'a> {
            schema: u32,
            command: &'a str,
            q: u64,
            count: u64,
            #[serde(skip_serializing_if = "Option::is_none")]
            points: Option<&'a Vec<Vec<u64>>>,
        }
        push_json(
            out,
            &CountOut {
                schema: 1,
                command: "augvar",
                q,
                count: result.count,
                points: points.as_ref(),
            },
        )?;
    } else {
        out.push_str(&format!(
            "point count of the defining conditions at q = {q}: {}\n",
            result.count
        ));
        if let Some(ps) = &points {
            for p in ps {
                out.push_str(&format!("rho = {}\n", tuple(p)));
            }
        }
    }
    Ok(0)
}

fn cmd_linhom(
    a: &LinhomArgs,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut String,
) -> Result<i32, Failure> {
    let dga = load_dga(&a.file, stdin, true)?;
    let rho = rho_for(&dga, a.q, &a.rho)?;
    let specialized = specialize(&dga, &rho)?;
    let zeros = specialized.degree_zero_gens();
    let assignment: BTreeMap<GenId, u64> = match &a.aug {
        None => zeros.iter().map(|&g| (g, 0)).collect(),
        Some(values) => {
            if values.len() != zeros.len() {
                return Err(usage_error(format!(
                    "--aug expects {} values (one per degree-0 generator), got {}",
                    zeros.len(),
                    values.len()
                )));
            }
            zeros.iter().copied().zip(values.iter().copied()).collect()
        }
    };
    let eps = Augmentation::new(&specialized, &assignment)?;
    let twisted = twist(&specialized, &eps)?;
    let complex = linear_part(&twisted)?;
    let betti = homology_betti(&complex);
    let record = pure_mixed_betti(&twisted)?;
    let aug_named: Vec<(String, u64)> = eps
        .values()
        .iter()
        .map(|&(g, v)| (gen_name(&specialized, g), v))
        .collect();

    if json {
        #[derive(Serialize)]
        struct LinhomOut<'a> {
            schema: u32,
            command: &'a str,
            q: u64,
            rho: &'a [u64],
            aug: &'a [(String, u64)],
            betti: &'a BettiTable,
            split: bool,
            pure: &'a BettiTable,
            mixed: &'a BettiTable,
        }
        push_json(
            out,
            &LinhomOut {
                schema: 1,
                command: "linhom",
                q: a.q,
                rho: rho.values(),
                aug: &aug_named,
                betti: &betti,
                split: record.split,
                pure: &record.pure,
                mixed: &record.mixed,
            },
        )?;
    } else {
        let eps_desc = if aug_named.is_empty() {
            "the trivial augmentation".to_string()
        } else {
            let parts: Vec<String> = aug_named
                .iter()
                .map(|(n, v)| format!("{n} = {v}"))
                .collect();
            format!("eps: {}", parts.join(", "))
        };
        out.push_str(&format!(
            "linearized homology over F{} at rho = {} with {}\n",
            a.q,
            tuple(rho.values()),
            eps_desc
        ));
        out.push_str(&format!("betti: {betti}\n"));
        if record.split {
            out.push_str(&format!("pure: {}\n", record.pure));
            out.push_str(&format!("mixed: {}\n", record.mixed));
        } else {
            out.push_str("pure and mixed chords do not split; joint table only\n");
        }
    }
    Ok(0)
}

fn cmd_compare(
    a: &CompareArgs,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    if a.file1 == "-" && a.file2 == "-" {
        return Err(usage_error("at most one input may come from stdin"));
    }
    let d1 = load_dga(&a.file1, stdin, true)?;
    let d2 = load_dga(&a.file2, stdin, true)?;
    note_degenerate_q2(&a.q, err);
    let options = CompareOptions {
        mixed_shift: a.mixed_shift,
    };
    let verdict = compare(&d1, &d2, &a.q, &options, a.budget)?;
    let (distinguished, witness) = match &verdict {
        CompareVerdict::Distinguished(w) => (true, Some(w.clone())),
        CompareVerdict::NotDistinguished => (false, None),
    };

    if json {
        #[derive(Serialize)]
        struct CompareOut<'a> {
            schema: u32,
            command: &'a str,
            qs: &'a [u64],
            mixed_shift: bool,
            distinguished: bool,
            witness: Option<&'a str>,
            left: &'a Fingerprint,
            right: &'a Fingerprint,
        }
        let left = fingerprint(&d1, &a.q, a.budget)?;
        let right = fingerprint(&d2, &a.q, a.budget)?;
        push_json(
            out,
            &CompareOut {
                schema: 1,
                command: "compare",
                qs: &a.q,
                mixed_shift: a.mixed_shift,
                distinguished,
                witness: witness.as_deref(),
                left: &left,
                right: &right,
            },
        )?;
    } else {
        match &witness {
            Some(w) => out.push_str(&format!("distinguished: {w}\n")),
            None => out.push_str("not distinguished\n"),
        }
    }
    Ok(if !distinguished && a.expect_distinct {
        1
    } else {
        0
    })
}

fn fresh_pair(d: &Dga) -> (String, String) {
    let algebra = d.algebra();
    let spec = d.spec();
    for n in 0.. {
        let a = format!("sa{n}");
        let b = format!("sb{n}");
        let taken = |name: &str| algebra.gen_id(name).is_some() || spec.h1_index(name).is_some();
        if !taken(&a) && !taken(&b) {
            return (a, b);
        }
    }
    unreachable!("some index is always free")
}

fn cmd_stabilize(
    a: &StabilizeArgs,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut String,
) -> Result<i32, Failure> {
    let dga = load_dga(&a.file, stdin, true)?;
    let (name_a, name_b) = match &a.names {
        None => fresh_pair(&dga),
        Some(pair) => match pair.as_slice() {
            [x, y] => (x.clone(), y.clone()),
            other => {
                return Err(usage_error(format!(
                    "--names expects exactly two names, got {}",
                    other.len()
                )))
            }
        },
    };
    let stabilized = dga.stabilize(a.deg, (&name_a, &name_b))?;
    let rendered = render_dga(&stabilized);

    if json {
        #[derive(Serialize)]
        struct StabilizeOut<'a> {
            schema: u32,
            command: &'a str,
            deg: i64,
            added: [&'a str; 2],
            dga: &'a str,
        }
        push_json(
            out,
            &StabilizeOut {
                schema: 1,
                command: "stabilize",
                deg: a.deg,
                added: [&name_a, &name_b],
                dga: &rendered,
            },
        )?;
    } else {
        out.push_str(&rendered);
    }
    Ok(0)
}

fn cmd_fixture(a: &FixtureArgs, json: bool, out: &mut String) -> Result<i32, Failure> {
    let (name, dga) = match &a.which {
        FixtureKind::Lgk { g, k, order } => ("lgk", fixtures::lgk(*g, *k, *order)?),
        FixtureKind::Fiberlink { k, order } => ("fiberlink", fixtures::fiber_link(*k, *order)?),
        FixtureKind::Knotsphere { order } => ("knotsphere", fixtures::knot_sphere_link(*order)?),
        FixtureKind::Stdsphere { order } => ("stdsphere", fixtures::std_sphere(*order)?),
    };
    let rendered = render_dga(&dga);

    if json {
        #[derive(Serialize)]
        struct FixtureOut<'a> {
            schema: u32,
            command: &'a str,
            fixture: &'a str,
            dga: &'a str,
        }
        push_json(
            out,
            &FixtureOut {
                schema: 1,
                command: "fixture",
                fixture: name,
                dga: &rendered,
            },
        )?;
    } else {
        out.push_str(&rendered);
    }
    Ok(0)
}

fn cmd_grade(a: &GradeArgs, json: bool, out: &mut String) -> Result<i32, Failure> {
    let record = CappingRecord::new(a.down, a.up, a.index)?;
    let maslov = maslov_of_loop(a.down, a.up);
    let degree = chord_degree(&record);

    if json {
        #[derive(Serialize)]
        struct GradeOut<'a> {
            schema: u32,
            command: &'a str,
            down: u32,
            up: u32,
            index: u8,
            maslov: i64,
            degree: i64,
        }
        push_json(
            out,
            &GradeOut {
                schema: 1,
                command: "grade",
                down: a.down,
                up: a.up,
                index: a.index,
                maslov,
                degree,
            },
        )?;
    } else {
        out.push_str(&format!("maslov: {maslov}\ndegree: {degree}\n"));
    }
    Ok(0)
}
