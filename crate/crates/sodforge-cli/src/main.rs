//! Command-line front end: constructions, verification, expansion,
//! complementary-pair tools, the circulant-family pipeline, and exhaustive
//! searches, all emitting the library's file formats.
//!
//! Exit codes: 0 success, 1 failed verification (certificate printed) or
//! runtime error, 2 usage error.  Identical invocations with the same
//! `--seed` produce byte-identical output (search reports additionally carry
//! wall-clock timings).  Designs of order above 4096 are streamed row by row
//! instead of materialized.

use std::io::{BufWriter, Read, Write};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sodforge::cod_family::{cod_pipeline, CodBuild};
use sodforge::constructions::{
    hurwitz_radon_family, sod_amicable32, sod_amicable32_equated, sod_power2,
};
use sodforge::golay::{
    catalog, derived_pair, golay_double, search_golay, Alphabet, GolayPair, Sequence,
    DEFAULT_SEARCH_BUDGET,
};
use sodforge::nonexistence::{search_full_sh, search_sod, search_sw, SearchReport};
use sodforge::remrep::{canonical_remrep_s, canonical_remrep_sprime4, cod_to_od, expand_sod};
use sodforge::ring_matrix::{
    render_entry, verify_scalar_randomized, DesignMatrix, Side, DEFAULT_PRIME_COMPLEX,
    DEFAULT_PRIME_REAL, EXACT_VERIFY_DEFAULT_LIMIT,
};
use sodforge::signed_group::GroupPresentation;

/// Designs above this order stream row-blocks instead of buffering.
const STREAM_THRESHOLD: usize = 4096;

#[derive(Parser)]
#[command(name = "sodforge", version, about = "Exact orthogonal designs over signed groups")]
struct Cli {
    /// Output format for designs and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized verification; fixed so reruns are reproducible.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on worker threads.  All current computations are sequential, so
    /// any value ends up using one worker.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a design or matrix family.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a design file (`-` reads stdin) against its claimed type.
    Verify(VerifyArgs),
    /// Push a design through a canonical real/complex representation.
    Expand(ExpandArgs),
    /// Complementary sequence pairs: verify, search, double.
    #[command(subcommand)]
    Golay(GolayCmd),
    /// Complex designs from circulant families of complementary pairs.
    CodFamily(CodFamilyArgs),
    /// Exhaustive small-order searches with reproducible reports.
    #[command(subcommand)]
    Nonexist(NonexistCmd),
    /// List the shipped complementary pairs.
    Catalog(CatalogArgs),
}

#[derive(Subcommand)]
enum Construct {
    /// Order-2^n design with all-ones type over the n-generator group.
    Sod2n {
        #[arg(long)]
        n: u32,
    },
    /// Order-32 design of type (1^8, 8, 8, 8); `--equate` merges variables
    /// into the type (1, 1, 1, 9, 9, 11).
    Amicable32 {
        #[arg(long)]
        equate: bool,
    },
    /// Anticommuting skew signed permutations of order 2^t, one short of the
    /// largest possible pairwise-amicable count.
    HrFamily {
        #[arg(long)]
        t: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Design file, or `-` for stdin.
    input: String,
    /// `auto` verifies exactly up to order 512 and randomized beyond.
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Evaluation points for randomized mode.
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Modulus for randomized mode (default picked per group).
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Exact,
    Randomized,
}

#[derive(Args)]
struct ExpandArgs {
    /// Design file, or `-` for stdin.
    #[arg(long)]
    design: String,
    /// Which canonical representation to expand through.
    #[arg(long, value_enum)]
    remrep: RemrepKind,
    /// Generator count for `--remrep s` (inferred from the group if omitted).
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RemrepKind {
    /// Degree 2, 4, 8, 128 for the groups S(1)..S(4).
    S,
    /// Degree 128 for the 13-generator group Sprime(4).
    Sprime,
    /// The 2x2 real rotation for the complex unit group SC.
    Sc,
}

#[derive(Subcommand)]
enum GolayCmd {
    /// Check that two sequences are complementary.
    Verify {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = AlphabetArg::Complex)]
        alphabet: AlphabetArg,
    },
    /// Exhaustive search at a given length.
    Search {
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = AlphabetArg::Real)]
        alphabet: AlphabetArg,
        /// Node budget (default SODFORGE_BUDGET or 50000000).
        #[arg(long)]
        budget: Option<u64>,
        /// Stop after this many pairs.
        #[arg(long)]
        max_pairs: Option<usize>,
    },
    /// Emit the length-doubled pair (a|b, a_rev_conj|-b_rev_conj).
    Double {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = AlphabetArg::Complex)]
        alphabet: AlphabetArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlphabetArg {
    Real,
    Complex,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Alphabet {
        match a {
            AlphabetArg::Real => Alphabet::Real,
            AlphabetArg::Complex => Alphabet::Complex,
        }
    }
}

#[derive(Args)]
struct CodFamilyArgs {
    /// Family size exponent: 2^n circulants of order m.
    #[arg(long)]
    n: u32,
    /// Length of the real pair (catalog length or a doubling of one).
    #[arg(long)]
    golay_length: usize,
    /// Comma-separated lengths of the 2^(n-3) - 1 complex pairs.
    #[arg(long, value_delimiter = ',')]
    complex_lengths: Vec<usize>,
    /// `components` prints a manifest (pairs, Hadamards, circulant rows);
    /// `full` emits the design, streaming above order 4096.
    #[arg(long, value_enum, default_value_t = Emit::Components)]
    emit: Emit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Components,
    Full,
}

#[derive(Subcommand)]
enum NonexistCmd {
    /// Weight-w matrices with A A* = w I at order n.
    Sw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        group: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Designs of a given type at order n.
    Sod {
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_delimiter = ',')]
        claimed_type: Vec<u64>,
        #[arg(long)]
        group: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Zero-free one-variable designs of order n.
    FullSh {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        group: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum)]
    alphabet: Option<AlphabetArg>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            // a closed downstream pipe (e.g. `| head`) is not an error
            if err
                .chain()
                .filter_map(|c| c.downcast_ref::<std::io::Error>())
                .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            {
                std::process::exit(141);
            }
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let out = std::io::stdout().lock();
    let mut out = BufWriter::new(out);
    let code = match &cli.command {
        Command::Construct(what) => cmd_construct(&cli, what, &mut out)?,
        Command::Verify(args) => cmd_verify(&cli, args, &mut out)?,
        Command::Expand(args) => cmd_expand(&cli, args, &mut out)?,
        Command::Golay(what) => cmd_golay(&cli, what, &mut out)?,
        Command::CodFamily(args) => cmd_cod_family(&cli, args, &mut out)?,
        Command::Nonexist(what) => cmd_nonexist(&cli, what, &mut out)?,
        Command::Catalog(args) => cmd_catalog(&cli, args, &mut out)?,
    };
    out.flush().context("writing output")?;
    Ok(code)
}

fn load_design(path: &str) -> Result<DesignMatrix> {
    let data = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading design from stdin")?;
        buf
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading `{path}`"))?
    };
    let design = if data.trim_start().starts_with('{') {
        DesignMatrix::from_json_str(&data)
    } else {
        DesignMatrix::from_text(&data)
    };
    design.with_context(|| format!("parsing design `{path}`"))
}

fn emit_design(design: &DesignMatrix, format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Text => out.write_all(design.to_text().as_bytes())?,
        Format::Json => {
            out.write_all(design.to_json_string().as_bytes())?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Node budget precedence: explicit flag, then SODFORGE_BUDGET, then the
/// library default.
fn budget_from_env(flag: Option<u64>) -> Result<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("SODFORGE_BUDGET") {
        Ok(v) => {
            let parsed = v
                .trim()
                .parse::<u64>()
                .map_err(|_| anyhow!("SODFORGE_BUDGET must be an integer, got `{v}`"))?;
            Ok(Some(parsed))
        }
        Err(_) => Ok(None),
    }
}

fn cmd_construct(cli: &Cli, what: &Construct, out: &mut impl Write) -> Result<i32> {
    match what {
        Construct::Sod2n { n } => emit_design(&sod_power2(*n)?, cli.format, out)?,
        Construct::Amicable32 { equate } => {
            let design = if *equate { sod_amicable32_equated() } else { sod_amicable32() };
            emit_design(&design, cli.format, out)?;
        }
        Construct::HrFamily { t } => {
            let family = hurwitz_radon_family(*t)?;
            let order = 1usize << t;
            match cli.format {
                Format::Text => {
                    writeln!(out, "order {order}; members {}", family.len())?;
                    for (k, m) in family.iter().enumerate() {
                        writeln!(out, "member {}", k + 1)?;
                        for r in 0..order {
                            let row: Vec<String> =
                                (0..order).map(|c| m.entry(r, c).to_string()).collect();
                            writeln!(out, "{}", row.join(","))?;
                        }
                    }
                }
                Format::Json => {
                    let members: Vec<serde_json::Value> = family
                        .iter()
                        .map(|m| {
                            serde_json::json!({
                                "perm": m.perm,
                                "signs": m.signs,
                            })
                        })
                        .collect();
                    let doc = serde_json::json!({ "order": order, "members": members });
                    writeln!(out, "{doc}")?;
                }
            }
        }
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs, out: &mut impl Write) -> Result<i32> {
    let design = load_design(&args.input)?;
    let mode = match args.mode {
        Mode::Auto => {
            if design.order() <= EXACT_VERIFY_DEFAULT_LIMIT {
                Mode::Exact
            } else {
                Mode::Randomized
            }
        }
        m => m,
    };
    let header = serde_json::json!({
        "order": design.order(),
        "group": design.presentation().name,
        "type": design.claimed_type(),
    });
    match mode {
        Mode::Exact => {
            let report = design.verify();
            if report.ok {
                match cli.format {
                    Format::Text => writeln!(
                        out,
                        "ok: order {}; group {}; type {}; mode exact",
                        design.order(),
                        design.presentation().name,
                        type_string(design.claimed_type()),
                    )?,
                    Format::Json => {
                        let mut doc = header;
                        doc["ok"] = serde_json::json!(true);
                        doc["mode"] = serde_json::json!("exact");
                        writeln!(out, "{doc}")?;
                    }
                }
                Ok(0)
            } else {
                let cert = report.certificate.expect("failed verification carries a certificate");
                let side = match cert.side {
                    Side::Left => "X X*",
                    Side::Right => "X* X",
                };
                match cli.format {
                    Format::Text => writeln!(
                        out,
                        "invalid: ({side})[{}][{}] differs from the claimed scalar by {}",
                        cert.row, cert.col, cert.residual,
                    )?,
                    Format::Json => {
                        let mut doc = header;
                        doc["ok"] = serde_json::json!(false);
                        doc["mode"] = serde_json::json!("exact");
                        doc["certificate"] = serde_json::json!({
                            "side": side,
                            "row": cert.row,
                            "col": cert.col,
                            "residual": cert.residual.to_string(),
                        });
                        writeln!(out, "{doc}")?;
                    }
                }
                Ok(1)
            }
        }
        Mode::Randomized => {
            let prime = args.prime.unwrap_or(
                if design.presentation().generator_count() == 0 {
                    DEFAULT_PRIME_REAL
                } else {
                    DEFAULT_PRIME_COMPLEX
                },
            );
            let report = verify_scalar_randomized(&design, args.trials, prime, cli.seed)?;
            if report.ok {
                match cli.format {
                    Format::Text => writeln!(
                        out,
                        "ok: order {}; group {}; type {}; mode randomized; trials {}; prime {}; seed {}",
                        design.order(),
                        design.presentation().name,
                        type_string(design.claimed_type()),
                        report.trials,
                        report.prime,
                        cli.seed,
                    )?,
                    Format::Json => {
                        let mut doc = header;
                        doc["ok"] = serde_json::json!(true);
                        doc["mode"] = serde_json::json!("randomized");
                        doc["trials"] = serde_json::json!(report.trials);
                        doc["prime"] = serde_json::json!(report.prime);
                        doc["seed"] = serde_json::json!(cli.seed);
                        writeln!(out, "{doc}")?;
                    }
                }
                Ok(0)
            } else {
                let (trial, row, col) = report.failure.expect("failed check carries a witness");
                match cli.format {
                    Format::Text => writeln!(
                        out,
                        "invalid: numeric mismatch at trial {trial}, row {row}, col {col} (prime {}, seed {})",
                        report.prime, cli.seed,
                    )?,
                    Format::Json => {
                        let mut doc = header;
                        doc["ok"] = serde_json::json!(false);
                        doc["mode"] = serde_json::json!("randomized");
                        doc["certificate"] = serde_json::json!({
                            "trial": trial,
                            "row": row,
                            "col": col,
                            "prime": report.prime,
                            "seed": cli.seed,
                        });
                        writeln!(out, "{doc}")?;
                    }
                }
                Ok(1)
            }
        }
        Mode::Auto => unreachable!("resolved above"),
    }
}

fn type_string(claimed_type: &[u64]) -> String {
    claimed_type.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_expand(cli: &Cli, args: &ExpandArgs, out: &mut impl Write) -> Result<i32> {
    let design = load_design(&args.design)?;
    let expanded = match args.remrep {
        RemrepKind::Sc => cod_to_od(&design)?,
        RemrepKind::Sprime => {
            let rep = canonical_remrep_sprime4()?;
            let h = sodforge::constructions::sylvester_hadamard(7);
            expand_sod(&design, &rep, &h)?
        }
        RemrepKind::S => {
            let n = match args.n {
                Some(n) => n,
                None => infer_s_index(&design.presentation().name)?,
            };
            let rep = canonical_remrep_s(n)?;
            let t = rep.degree().trailing_zeros();
            let h = sodforge::constructions::sylvester_hadamard(t);
            expand_sod(&design, &rep, &h)?
        }
    };
    emit_design(&expanded, cli.format, out)?;
    Ok(0)
}

/// `S(3)` -> 3, for defaulting `expand --remrep s` without `--n`.
fn infer_s_index(name: &str) -> Result<u32> {
    name.strip_prefix("S(")
        .and_then(|rest| rest.strip_suffix(')'))
        .and_then(|digits| digits.parse().ok())
        .ok_or_else(|| anyhow!("cannot infer --n from group `{name}`; pass --n explicitly"))
}

fn parse_pair(a: &str, b: &str, alphabet: AlphabetArg) -> Result<GolayPair> {
    let a: Sequence = a.parse().map_err(|e| anyhow!("sequence a: {e}"))?;
    let b: Sequence = b.parse().map_err(|e| anyhow!("sequence b: {e}"))?;
    GolayPair::new(a, b, alphabet.into()).map_err(|e| anyhow!("{e}"))
}

fn cmd_golay(cli: &Cli, what: &GolayCmd, out: &mut impl Write) -> Result<i32> {
    match what {
        GolayCmd::Verify { a, b, alphabet } => match parse_pair(a, b, *alphabet) {
            Ok(pair) => {
                match cli.format {
                    Format::Text => writeln!(
                        out,
                        "ok: complementary pair of length {} ({})",
                        pair.len(),
                        alphabet_name(pair.alphabet),
                    )?,
                    Format::Json => writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "ok": true,
                            "length": pair.len(),
                            "alphabet": alphabet_name(pair.alphabet),
                        })
                    )?,
                }
                Ok(0)
            }
            Err(err) => {
                match cli.format {
                    Format::Text => writeln!(out, "invalid: {err}")?,
                    Format::Json => writeln!(
                        out,
                        "{}",
                        serde_json::json!({ "ok": false, "reason": err.to_string() })
                    )?,
                }
                Ok(1)
            }
        },
        GolayCmd::Search { length, alphabet, budget, max_pairs } => {
            let budget = budget_from_env(*budget)?;
            let outcome = search_golay(*length, (*alphabet).into(), budget, *max_pairs)?;
            match cli.format {
                Format::Text => {
                    writeln!(
                        out,
                        "length {length}; alphabet {}; pairs {}; nodes {}; complete {}",
                        alphabet_name((*alphabet).into()),
                        outcome.pairs.len(),
                        outcome.nodes,
                        outcome.complete,
                    )?;
                    for pair in &outcome.pairs {
                        writeln!(out, "{} / {}", pair.a, pair.b)?;
                    }
                }
                Format::Json => {
                    let pairs: Vec<serde_json::Value> = outcome
                        .pairs
                        .iter()
                        .map(|p| {
                            serde_json::json!({ "a": p.a.to_string(), "b": p.b.to_string() })
                        })
                        .collect();
                    writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "length": length,
                            "alphabet": alphabet_name((*alphabet).into()),
                            "pairs": pairs,
                            "nodes": outcome.nodes,
                            "complete": outcome.complete,
                            "budget": budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
                        })
                    )?;
                }
            }
            Ok(0)
        }
        GolayCmd::Double { a, b, alphabet } => {
            let doubled = golay_double(&parse_pair(a, b, *alphabet)?);
            match cli.format {
                Format::Text => {
                    writeln!(out, "{}", doubled.a)?;
                    writeln!(out, "{}", doubled.b)?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({
                        "a": doubled.a.to_string(),
                        "b": doubled.b.to_string(),
                        "length": doubled.len(),
                        "alphabet": alphabet_name(doubled.alphabet),
                    })
                )?,
            }
            Ok(0)
        }
    }
}

fn alphabet_name(a: Alphabet) -> &'static str {
    match a {
        Alphabet::Real => "real",
        Alphabet::Complex => "complex",
    }
}

fn cmd_cod_family(cli: &Cli, args: &CodFamilyArgs, out: &mut impl Write) -> Result<i32> {
    let real = derived_pair(args.golay_length, Alphabet::Real)
        .with_context(|| format!("real pair of length {}", args.golay_length))?;
    let complex: Vec<GolayPair> = args
        .complex_lengths
        .iter()
        .map(|&k| {
            derived_pair(k, Alphabet::Complex)
                .map_err(|e| anyhow!("complex pair of length {k}: {e}"))
        })
        .collect::<Result<_>>()?;
    let build = cod_pipeline(args.n, &real, &complex)?;
    match args.emit {
        Emit::Components => emit_manifest(cli, args, &real, &complex, &build, out)?,
        Emit::Full => {
            if build.order <= STREAM_THRESHOLD {
                emit_design(&build.materialize()?, cli.format, out)?;
            } else {
                if cli.format == Format::Json {
                    bail!(
                        "order {} exceeds {STREAM_THRESHOLD}: streamed output is text only",
                        build.order
                    );
                }
                stream_build(&build, out)?;
            }
        }
    }
    Ok(0)
}

fn emit_manifest(
    cli: &Cli,
    args: &CodFamilyArgs,
    real: &GolayPair,
    complex: &[GolayPair],
    build: &CodBuild,
    out: &mut impl Write,
) -> Result<()> {
    let m = build.circulant_order();
    let segment_h = 1usize << (args.n - 2);
    let expansion_h = 1usize << ((1usize << (args.n - 1)) - 1);
    match cli.format {
        Format::Text => {
            writeln!(
                out,
                "n {}; circulant order {m}; order {}; type {}",
                args.n,
                build.order,
                type_string(&build.claimed_type),
            )?;
            writeln!(
                out,
                "plug-in: order {}; group {}; type {}",
                build.od.order(),
                build.od.presentation().name,
                type_string(build.od.claimed_type()),
            )?;
            writeln!(out, "segment hadamard: sylvester order {segment_h}")?;
            writeln!(out, "expansion hadamard: sylvester order {expansion_h}")?;
            writeln!(out, "real pair ({}): {} / {}", real.len(), real.a, real.b)?;
            for (j, pair) in complex.iter().enumerate() {
                writeln!(
                    out,
                    "complex pair {} ({}): {} / {}",
                    j + 1,
                    pair.len(),
                    pair.a,
                    pair.b,
                )?;
            }
            for (k, row) in build.omega.iter().enumerate() {
                writeln!(out, "omega {}: {row}", k + 1)?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "n": args.n,
                "circulant_order": m,
                "order": build.order,
                "type": build.claimed_type,
                "plug_in": {
                    "order": build.od.order(),
                    "group": build.od.presentation().name,
                    "type": build.od.claimed_type(),
                },
                "segment_hadamard_order": segment_h,
                "expansion_hadamard_order": expansion_h,
                "real_pair": { "a": real.a.to_string(), "b": real.b.to_string() },
                "complex_pairs": complex
                    .iter()
                    .map(|p| serde_json::json!({ "a": p.a.to_string(), "b": p.b.to_string() }))
                    .collect::<Vec<_>>(),
                "omega": build.omega.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(())
}

/// Row-by-row text emission for designs too large to materialize.
fn stream_build(build: &CodBuild, out: &mut impl Write) -> Result<()> {
    writeln!(
        out,
        "order {}; vars {}; group SC; type {}",
        build.order,
        build.claimed_type.len(),
        type_string(&build.claimed_type),
    )?;
    let mut row = String::new();
    for r in 0..build.order {
        row.clear();
        for c in 0..build.order {
            if c > 0 {
                row.push(',');
            }
            row.push_str(&render_entry(build.entry(r, c)));
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn cmd_nonexist(cli: &Cli, what: &NonexistCmd, out: &mut impl Write) -> Result<i32> {
    let (report, group) = match what {
        NonexistCmd::Sw { n, w, group, budget } => {
            let pres = GroupPresentation::by_name(group)?;
            (search_sw(*n, *w, &pres, budget_from_env(*budget)?)?, group.clone())
        }
        NonexistCmd::Sod { n, claimed_type, group, budget } => {
            let pres = GroupPresentation::by_name(group)?;
            (search_sod(*n, claimed_type, &pres, budget_from_env(*budget)?)?, group.clone())
        }
        NonexistCmd::FullSh { n, group, budget } => {
            let pres = GroupPresentation::by_name(group)?;
            (search_full_sh(*n, &pres, budget_from_env(*budget)?)?, group.clone())
        }
    };
    let _ = cli;
    write_search_report(&report, &group, out)
}

/// Search reports are always JSON: a machine-checkable exhaustion claim.
fn write_search_report(report: &SearchReport, group: &str, out: &mut impl Write) -> Result<i32> {
    let doc = serde_json::json!({
        "result": if report.witness.is_some() { "witness" } else { "none" },
        "group": group,
        "nodes": report.nodes,
        "elapsed_ms": as_millis(report.elapsed),
        "normalization": report.normalization,
        "witness": report.witness.as_ref().map(|w| w.to_text()),
    });
    writeln!(out, "{doc}")?;
    Ok(0)
}

fn as_millis(d: Duration) -> u64 {
    u64::try_from(d.as_millis()).unwrap_or(u64::MAX)
}

fn cmd_catalog(cli: &Cli, args: &CatalogArgs, out: &mut impl Write) -> Result<i32> {
    let pairs: Vec<GolayPair> = catalog()
        .into_iter()
        .filter(|p| args.alphabet.map_or(true, |a| p.alphabet == Alphabet::from(a)))
        .collect();
    match cli.format {
        Format::Text => {
            for pair in &pairs {
                writeln!(
                    out,
                    "{} {}: {} / {}",
                    alphabet_name(pair.alphabet),
                    pair.len(),
                    pair.a,
                    pair.b,
                )?;
            }
        }
        Format::Json => {
            let doc: Vec<serde_json::Value> = pairs
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "alphabet": alphabet_name(p.alphabet),
                        "length": p.len(),
                        "a": p.a.to_string(),
                        "b": p.b.to_string(),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(doc))?;
        }
    }
    Ok(0)
}
