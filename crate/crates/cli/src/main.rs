//! `lzend`: generate period-doubling strings, factorize text, and run the lab
//! verifiers from the shell.
//!
//! Exit status: 0 on success, 1 when a check fails or the search finds a
//! counterexample, 2 on usage and guard errors.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lzend_core::factor::{factorize, render_pipes};
use lzend_core::lab::{
    max_ratio_search_with_workers, measured_ratio_table, theory_ratio_table, verify_lemmas,
    verify_structure, RatioRow, RatioSearchResult,
};
use lzend_core::seqgen::{pd_doubling, pd_doubling_capped, DEFAULT_MAX_K};
use lzend_core::{Engine, Factorization, Scheme, VerificationReport};
use num_rational::Ratio;
use serde_json::json;

#[derive(Parser)]
#[command(name = "lzend", version, about = "LZ77 / LZ-End factorizations of period-doubling strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pipes,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Lz77,
    Lzend,
    Cfact,
}

impl From<Algo> for Scheme {
    fn from(a: Algo) -> Scheme {
        match a {
            Algo::Lz77 => Scheme::Lz77,
            Algo::Lzend => Scheme::LzEnd,
            Algo::Cfact => Scheme::CFact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Naive,
    Indexed,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Naive => Engine::Naive,
            EngineArg::Indexed => Engine::Indexed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lemmas,
    Structure,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Theory,
    Measured,
}

/// Inclusive `A..B`, or a single `K`.
#[derive(Clone, Copy, Debug)]
struct KRange(u32, u32);

fn parse_range(s: &str) -> Result<KRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad bound {t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(KRange(lo, hi))
}

#[derive(Subcommand)]
enum Command {
    /// Write S_k as raw bytes.
    Gen {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Raise the generation guard.
        #[arg(long, default_value_t = DEFAULT_MAX_K)]
        max_k: u32,
    },
    /// Factorize a file, a literal, or S_k.
    Factorize {
        #[arg(long, group = "source")]
        input: Option<PathBuf>,
        #[arg(long, group = "source")]
        literal: Option<String>,
        #[arg(long, group = "source")]
        pd: Option<u32>,
        #[arg(long, value_enum, default_value_t = Algo::Lzend)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = EngineArg::Indexed)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Drop one trailing newline from --input.
        #[arg(long)]
        strip_newline: bool,
    },
    /// Run the lemma or structure verifiers over a range of k.
    Verify {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_parser = parse_range)]
        k: KRange,
        #[arg(long, value_enum, default_value_t = EngineArg::Indexed)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate z, z' and z'/z for S_k.
    Ratio {
        #[arg(long, value_parser = parse_range)]
        k: KRange,
        #[arg(long, value_enum, default_value_t = Source::Theory)]
        source: Source,
        #[arg(long, value_enum, default_value_t = EngineArg::Indexed)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive max z'/z over binary strings up to a length.
    Search {
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Indexed)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// 0 uses the available parallelism.
        #[arg(long, env = "LZEND_WORKERS", default_value_t = 0)]
        workers: usize,
    },
}

/// Why a command stopped without success.
enum Fail {
    Usage(String),
    Check,
}

impl From<lzend_core::Error> for Fail {
    fn from(e: lzend_core::Error) -> Fail {
        Fail::Usage(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Fail {
        Fail::Usage(e.to_string())
    }
}

fn no_pipes(format: Format) -> Result<(), Fail> {
    if format == Format::Pipes {
        return Err(Fail::Usage("--format pipes is only available for factorize".into()));
    }
    Ok(())
}

fn emit(out: &str) -> Result<(), Fail> {
    let mut stdout = io::stdout().lock();
    let written = stdout.write_all(out.as_bytes()).and_then(|()| {
        if out.ends_with('\n') {
            Ok(())
        } else {
            stdout.write_all(b"\n")
        }
    });
    match written {
        // `lzend ... | head` is fine
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

/// Always `num/den`, including integer ratios.
fn frac(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn show(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn factorization_tsv(f: &Factorization, w: &[u8]) -> String {
    let mut out = String::from("index\tstart\tlen\tsrc_kind\tsrc_value\thas_sentinel\ttext\n");
    for (i, p) in f.phrases.iter().enumerate() {
        let src = p.src.value().map_or(String::new(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{i}\t{}\t{}\t{}\t{src}\t{}\t{}",
            p.start,
            p.len,
            p.src.kind(),
            p.has_sentinel,
            show(&w[p.start..p.end()])
        );
    }
    out
}

/// Paper-facing listing: positions and phrase/source numbers are 1-based.
fn factorization_text(f: &Factorization, w: &[u8]) -> String {
    let mut out = format!("{} n={} z={}\n", f.scheme.name(), f.input_len, f.count());
    for (i, p) in f.phrases.iter().enumerate() {
        let src = match p.src.value() {
            Some(v) => format!("{} {}", p.src.kind(), v + 1),
            None => "none".to_string(),
        };
        let _ = writeln!(
            out,
            "{:>4}  pos {:>6}  len {:>6}  src {src:<16}  {}",
            i + 1,
            p.start + 1,
            p.len,
            show(&w[p.start..p.end()])
        );
    }
    out
}

fn cmd_gen(k: u32, out: Option<PathBuf>, max_k: u32) -> Result<(), Fail> {
    let s = pd_doubling_capped(k, max_k)?;
    match out {
        Some(path) => std::fs::write(path, s.as_bytes())?,
        None => io::stdout().lock().write_all(s.as_bytes())?,
    }
    Ok(())
}

fn cmd_factorize(
    input: Option<PathBuf>,
    literal: Option<String>,
    pd: Option<u32>,
    algo: Algo,
    engine: EngineArg,
    format: Format,
    strip_newline: bool,
) -> Result<(), Fail> {
    let w = match (input, literal, pd) {
        (Some(path), None, None) => {
            let mut bytes = std::fs::read(&path)
                .map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
            if strip_newline && bytes.last() == Some(&b'\n') {
                bytes.pop();
            }
            bytes
        }
        (None, Some(text), None) => text.into_bytes(),
        (None, None, Some(k)) => pd_doubling(k)?.seq.into_bytes(),
        _ => return Err(Fail::Usage("give exactly one of --input, --literal, --pd".into())),
    };
    let f = factorize(&w, algo.into(), engine.into())?;
    let out = match format {
        Format::Json => f.to_json(),
        Format::Tsv => factorization_tsv(&f, &w),
        // always terminated, so a literal trailing newline in w stays visible
        Format::Pipes => render_pipes(&f, &w)? + "\n",
        Format::Text => factorization_text(&f, &w),
    };
    emit(&out)
}

fn report_out(r: &VerificationReport, format: Format) -> Result<(), Fail> {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes"),
        Format::Tsv => r.to_tsv(),
        _ => r.to_text(),
    };
    emit(&out)?;
    if r.all_passed() {
        Ok(())
    } else {
        Err(Fail::Check)
    }
}

fn cmd_verify(kind: Kind, k: KRange, engine: EngineArg, format: Format) -> Result<(), Fail> {
    no_pipes(format)?;
    let r = match kind {
        Kind::Lemmas => verify_lemmas(k.0, k.1)?,
        Kind::Structure => verify_structure(k.0, k.1, engine.into())?,
    };
    report_out(&r, format)
}

fn ratio_out(rows: &[RatioRow], source: &str, format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "z": r.z,
                        "z_prime": r.z_prime,
                        "ratio": frac(&r.ratio),
                        "decimal": r.decimal(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "source": source, "rows": rows })).unwrap()
        }
        Format::Tsv => {
            let mut out = String::from("k\tz\tz_prime\tratio\tdecimal\n");
            for r in rows {
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{:.6}", r.k, r.z, r.z_prime, frac(&r.ratio), r.decimal());
            }
            out
        }
        _ => {
            let mut out = format!("# {source}\n{:>6} {:>8} {:>8} {:>10} {:>10}\n", "k", "z", "z'", "z'/z", "decimal");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:>6} {:>8} {:>8} {:>10} {:>10.6}",
                    r.k,
                    r.z,
                    r.z_prime,
                    frac(&r.ratio),
                    r.decimal()
                );
            }
            out
        }
    }
}

fn cmd_ratio(k: KRange, source: Source, engine: EngineArg, format: Format) -> Result<(), Fail> {
    no_pipes(format)?;
    let (rows, name) = match source {
        Source::Theory => (theory_ratio_table(k.0, k.1)?, "theory"),
        Source::Measured => (measured_ratio_table(k.0, k.1, engine.into())?, "measured"),
    };
    emit(&ratio_out(&rows, name, format))
}

fn search_text(r: &RatioSearchResult) -> String {
    let mut out = format!(
        "max_len {}  engine {}  strings {}\nbest z'/z = {}\n",
        r.max_len,
        r.engine,
        r.strings_examined,
        frac(&r.best_ratio)
    );
    let _ = writeln!(out, "witnesses ({}):", r.witnesses.len());
    for w in &r.witnesses {
        let _ = writeln!(out, "  {}  z={} z'={}", w.string, w.z, w.z_prime);
    }
    out.push_str("histogram:\n       z      z'    count\n");
    for h in &r.histogram {
        let _ = writeln!(out, "  {:>6}  {:>6}  {:>7}", h.z, h.z_prime, h.count);
    }
    if !r.dominance_violations.is_empty() {
        let _ = writeln!(out, "z' < z on {} strings", r.dominance_violations.len());
    }
    out
}

fn cmd_search(max_len: usize, engine: EngineArg, format: Format, workers: usize) -> Result<(), Fail> {
    no_pipes(format)?;
    let r = max_ratio_search_with_workers(max_len, engine.into(), workers)?;
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&r).expect("result serializes"),
        Format::Tsv => {
            let mut out = String::from("z\tz_prime\tcount\n");
            for h in &r.histogram {
                let _ = writeln!(out, "{}\t{}\t{}", h.z, h.z_prime, h.count);
            }
            out
        }
        _ => search_text(&r),
    };
    emit(&out)?;
    if r.conjecture_holds() {
        Ok(())
    } else {
        eprintln!("!!! COUNTEREXAMPLE: z'/z = {} > 2", frac(&r.best_ratio));
        for w in &r.witnesses {
            eprintln!("!!!   {}  z={} z'={}", w.string, w.z, w.z_prime);
        }
        Err(Fail::Check)
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Gen { k, out, max_k } => cmd_gen(k, out, max_k),
        Command::Factorize {
            input,
            literal,
            pd,
            algo,
            engine,
            format,
            strip_newline,
        } => cmd_factorize(input, literal, pd, algo, engine, format, strip_newline),
        Command::Verify { kind, k, engine, format } => cmd_verify(kind, k, engine, format),
        Command::Ratio { k, source, engine, format } => cmd_ratio(k, source, engine, format),
        Command::Search {
            max_len,
            engine,
            format,
            workers,
        } => cmd_search(max_len, engine, format, workers),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("lzend: {msg}");
            ExitCode::from(2)
        }
    }
}
