use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypertrees::homology::{
    homology_dimensions, lefschetz_table, proper_part_complex, whitney_dimensions, CharacterTable, SignConvention,
};
use hypertrees::hypertree::{enumerate_hypertrees, enumerate_pointed, PointingVariant};
use hypertrees::poset::Poset;
use hypertrees::series::{named_series, SeriesName};
use hypertrees::verify::{formula_table, run_ledger, ChainData, Identity, VerifyParams};
use hypertrees::Error;

/// Desk-scale ceilings, lifted by `--unsafe`.
const MAX_HOMOLOGY_N: u32 = 5;
const MAX_VERIFY_N: u32 = 5;
const MAX_ENUMERATE_N: u32 = 6;
const MAX_SERIES_DEGREE: u32 = 9;

const THREADS_ENV: &str = "HYPERTREES_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "hypertrees",
    version,
    about = "Hypertree posets, their homology and cycle indices"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,

    /// Write output to this path instead of stdout (a directory for `poset`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; defaults to $HYPERTREES_THREADS, then to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Lift the desk-scale size ceilings.
    #[arg(long = "unsafe", global = true)]
    unsafe_: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Lefschetz,
    Formula,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Sign {
    Alternating,
    Reversed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List hypertrees (or pointed hypertrees) on n vertices.
    Enumerate {
        n: u32,
        /// plain, rooted, edge-pointed, edge-pointed-rooted or hollow.
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    /// Hasse diagram of the hypertree poset and its element index.
    Poset { n: u32 },
    /// Reduced homology of the proper part of the poset.
    Homology {
        n: u32,
        #[arg(long, value_enum, default_value_t = Sign::Alternating)]
        sign: Sign,
    },
    /// Whitney homology dimensions by rank.
    Whitney { n: u32 },
    /// Print a named cycle index.
    Series {
        name: String,
        #[arg(long, default_value_t = 7)]
        degree: u32,
    },
    /// Character of the symmetric group on the homology, one row per class.
    CharacterTable {
        n: u32,
        #[arg(long, value_enum, default_value_t = Source::Lefschetz)]
        source: Source,
    },
    /// Run the verification ledger; exits 1 if any identity fails.
    Verify {
        /// Identity name or number.
        #[arg(long)]
        only: Option<String>,
        /// Largest number of labels in counted series.
        #[arg(long, default_value_t = 5)]
        nmax: u32,
        /// Truncation degree of the algebraic identities.
        #[arg(long, default_value_t = 7)]
        degree: u32,
        /// Largest counted chain length.
        #[arg(long, default_value_t = 3)]
        kmax: i64,
    },
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Verification(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(n)) => {
            eprintln!("{n} identity check(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit(_) => 3,
                Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}

fn configure_threads(flag: Option<usize>) -> std::result::Result<(), String> {
    let threads = match flag {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(
                v.parse::<usize>()
                    .map_err(|_| format!("{THREADS_ENV} must be a number, got {v:?}"))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(t) = threads {
        if t == 0 {
            return Err("thread count must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn ceiling(cli: &Cli, what: &str, value: u32, max: u32) -> Outcome {
    if value > max && !cli.unsafe_ {
        return Err(Error::ResourceLimit(format!(
            "{what} = {value} exceeds the ceiling {max}; pass --unsafe to lift it"
        ))
        .into());
    }
    Ok(())
}

fn emit(cli: &Cli, text: &str) -> Outcome {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Enumerate { n, variant } => enumerate(cli, *n, variant),
        Command::Poset { n } => poset(cli, *n),
        Command::Homology { n, sign } => {
            ceiling(cli, "n", *n, MAX_HOMOLOGY_N)?;
            let convention = match sign {
                Sign::Alternating => SignConvention::Alternating,
                Sign::Reversed => SignConvention::Reversed,
            };
            let poset = Poset::new(*n, false)?;
            let profile = homology_dimensions(&proper_part_complex(&poset, convention));
            let text = match cli.format {
                Format::Csv => {
                    let mut s = String::from("degree,dimension\n");
                    for (d, dim) in &profile.0 {
                        writeln!(s, "{d},{dim}").unwrap();
                    }
                    s
                }
                _ => profile.to_json() + "\n",
            };
            emit(cli, &text)
        }
        Command::Whitney { n } => {
            ceiling(cli, "n", *n, MAX_HOMOLOGY_N)?;
            let dims = whitney_dimensions(*n)?;
            let text = match cli.format {
                Format::Csv => {
                    let mut s = String::from("rank,dimension\n");
                    for (r, dim) in &dims {
                        writeln!(s, "{r},{dim}").unwrap();
                    }
                    s
                }
                _ => {
                    let map: serde_json::Map<String, serde_json::Value> =
                        dims.iter().map(|(r, d)| (r.to_string(), (*d).into())).collect();
                    serde_json::Value::Object(map).to_string() + "\n"
                }
            };
            emit(cli, &text)
        }
        Command::Series { name, degree } => {
            ceiling(cli, "degree", *degree, MAX_SERIES_DEGREE)?;
            let tag: SeriesName = name.parse()?;
            let series = named_series(tag, *degree)?;
            let text = match cli.format {
                Format::Plain => series.to_string() + "\n",
                Format::Json => series.to_json() + "\n",
                Format::Csv => {
                    let mut s = String::from("partition,tpow,coefficient\n");
                    for (m, c) in series.terms() {
                        writeln!(s, "{},{},{c}", m.partition, m.tpow).unwrap();
                    }
                    s
                }
            };
            emit(cli, &text)
        }
        Command::CharacterTable { n, source } => {
            ceiling(cli, "n", *n, MAX_HOMOLOGY_N)?;
            let table = match source {
                Source::Lefschetz => lefschetz_table(*n)?,
                Source::Formula => formula_table(*n)?,
            };
            emit(cli, &render_table(cli.format, &table, *source))
        }
        Command::Verify {
            only,
            nmax,
            degree,
            kmax,
        } => {
            ceiling(cli, "nmax", *nmax, MAX_VERIFY_N)?;
            ceiling(cli, "degree", *degree, MAX_SERIES_DEGREE)?;
            if *nmax < 2 || *degree < 2 || *kmax < 1 {
                return Err(Error::Validation("need nmax >= 2, degree >= 2 and kmax >= 1".into()).into());
            }
            let only = only.as_deref().map(str::parse::<Identity>).transpose()?;
            let params = VerifyParams {
                chain_degree: *nmax,
                series_degree: *degree,
                ks: (1..=*kmax).collect(),
            };
            let reports = run_ledger(&ChainData::new(), &params, only)?;
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.to_json_line());
                text.push('\n');
            }
            emit(cli, &text)?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            eprintln!("{} checks, {} passed", reports.len(), reports.len() - failed);
            match failed {
                0 => Ok(()),
                f => Err(Failure::Verification(f)),
            }
        }
    }
}

fn enumerate(cli: &Cli, n: u32, variant: &str) -> Outcome {
    ceiling(cli, "n", n, MAX_ENUMERATE_N)?;
    let variant: PointingVariant = variant.parse()?;
    let lines: Vec<String> = match variant {
        PointingVariant::Plain => enumerate_hypertrees(n)?.iter().map(|t| t.to_string()).collect(),
        v => enumerate_pointed(n, v)?.iter().map(|t| t.to_string()).collect(),
    };
    let text = match cli.format {
        Format::Plain => {
            let mut s = String::new();
            for l in &lines {
                writeln!(s, "{l}").unwrap();
            }
            writeln!(s, "count {}", lines.len()).unwrap();
            s
        }
        Format::Csv => {
            let mut s = String::from("structure\n");
            for l in &lines {
                writeln!(s, "\"{l}\"").unwrap();
            }
            s
        }
        Format::Json => {
            serde_json::json!({
                "n": n,
                "variant": variant.name(),
                "count": lines.len(),
                "structures": lines,
            })
            .to_string()
                + "\n"
        }
    };
    emit(cli, &text)
}

fn poset(cli: &Cli, n: u32) -> Outcome {
    ceiling(cli, "n", n, MAX_ENUMERATE_N)?;
    let poset = Poset::new(n, false)?;
    if cli.format == Format::Json {
        let covers: Vec<[usize; 2]> = poset.cover_relations().into_iter().map(|(c, p)| [c, p]).collect();
        let elements: Vec<String> = poset.elements().iter().map(|t| t.to_string()).collect();
        let text = serde_json::json!({ "n": n, "elements": elements, "covers": covers }).to_string() + "\n";
        return emit(cli, &text);
    }
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            write_file(&dir.join("hasse.csv"), &poset.hasse_csv())?;
            write_file(&dir.join("index.csv"), &poset.index_csv())
        }
        None => {
            let text = format!("{}\n{}", poset.index_csv(), poset.hasse_csv());
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text)?;
    Ok(())
}

fn render_table(format: Format, table: &CharacterTable, source: Source) -> String {
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|(p, v)| serde_json::json!({ "class": p.to_string(), "value": *v as i64 }))
                .collect();
            let source = match source {
                Source::Lefschetz => "lefschetz",
                Source::Formula => "formula",
            };
            serde_json::json!({ "n": table.n, "source": source, "rows": rows }).to_string() + "\n"
        }
        _ => table.to_csv(),
    }
}
