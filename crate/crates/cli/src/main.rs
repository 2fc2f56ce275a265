use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use threegap::exact::DEFAULT_MAX_PRECISION;
use threegap::threegap::max_witness_index;
use threegap::{
    build_table, constant_type_bound, convergent_scan, gap_structure, ratio, ratio_scan, verify,
    AlphaSpec, ConvergentTable, Error, PartialQuotientSource, RatioScan, Real, TableSettings,
    VerifyOptions,
};

#[derive(Parser, Debug)]
#[command(
    name = "threegap",
    version,
    about = "Three-gap structure of {kα} and the max/min gap ratio"
)]
struct Cli {
    /// Starting precision of interval arithmetic, in bits.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(16..=65536))]
    precision_bits: u32,

    /// Significant digits in decimal output.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=200))]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partial quotients, convergents and errors η_n = |q_n α - p_n|.
    Expand {
        #[arg(value_parser = parse_alpha)]
        alpha: AlphaSpec,
        /// Print rows n = 0..=N.
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Decomposition and gap lengths of the partition by {α}, …, {mα}.
    Gaps {
        #[arg(value_parser = parse_alpha)]
        alpha: AlphaSpec,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Max/min gap ratio for every m (or at m = q_{k+1}) written as CSV.
    Scan {
        #[arg(value_parser = parse_alpha)]
        alpha: AlphaSpec,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_m: u64,
        #[arg(long)]
        csv: PathBuf,
        /// Only sample m = q_{k+1}, where the ratio is largest for its k.
        #[arg(long)]
        convergents_only: bool,
        /// With --convergents-only, stop at this k.
        #[arg(long, requires = "convergents_only")]
        max_k: Option<usize>,
    },
    /// Compare the closed forms with a brute-force partition for m = 1..=M.
    Verify {
        #[arg(value_parser = parse_alpha)]
        alpha: AlphaSpec,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_m: u64,
    },
}

fn parse_alpha(s: &str) -> Result<AlphaSpec, String> {
    AlphaSpec::parse(s).map_err(|e| e.to_string())
}

const EXIT_ERROR: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::PrecisionExhausted { .. } => EXIT_PRECISION,
                _ => EXIT_ERROR,
            })
        }
    }
}

struct Ctx {
    settings: TableSettings,
    digits: usize,
}

impl Ctx {
    fn new(cli: &Cli) -> Self {
        let settings = TableSettings {
            start_precision: cli.precision_bits,
            max_precision: DEFAULT_MAX_PRECISION.max(cli.precision_bits),
            ..TableSettings::default()
        };
        Ctx {
            settings,
            digits: cli.digits as usize,
        }
    }

    fn table(
        &self,
        src: &PartialQuotientSource,
        depth: usize,
    ) -> threegap::Result<ConvergentTable> {
        build_table(src.clone(), depth, self.settings)
    }

    fn fmt(&self, x: &Real) -> (String, String) {
        x.to_decimal(self.digits)
    }
}

fn run(cli: &Cli) -> threegap::Result<u8> {
    let ctx = Ctx::new(cli);
    match &cli.command {
        Command::Expand { alpha, terms } => cmd_expand(&ctx, alpha, *terms),
        Command::Gaps { alpha, m } => cmd_gaps(&ctx, alpha, *m),
        Command::Scan {
            alpha,
            max_m,
            csv,
            convergents_only,
            max_k,
        } => cmd_scan(&ctx, alpha, *max_m, csv, *convergents_only, *max_k),
        Command::Verify { alpha, max_m } => cmd_verify(&ctx, alpha, *max_m),
    }
}

fn cmd_expand(ctx: &Ctx, alpha: &AlphaSpec, terms: usize) -> threegap::Result<u8> {
    let src = alpha.to_source()?;
    let table = ctx.table(&src, terms.max(1))?;
    println!("n,a,p,q,eta,eta_err");
    for n in 0..=terms {
        let i = n as isize;
        let (eta, err) = ctx.fmt(table.eta(i));
        println!(
            "{n},{},{},{},{eta},{err}",
            table.a(n),
            table.p(i),
            table.q(i)
        );
    }
    Ok(0)
}

fn cmd_gaps(ctx: &Ctx, alpha: &AlphaSpec, m: u64) -> threegap::Result<u8> {
    let src = alpha.to_source()?;
    let table = ctx.table(&src, 2)?.grown_for(m)?;
    let gs = gap_structure(m, &table)?;
    let rp = ratio(m, &table)?;
    let dec = gs.decomposition;

    println!("alpha {alpha}");
    println!("m={m} k={} r={} s={}", dec.k, dec.r, dec.s);
    for e in &gs.entries {
        let (len, err) = ctx.fmt(&e.length);
        let mut line = format!("{:<5} {len} x {}", e.kind.to_string(), e.count);
        if !table.is_exact() {
            let _ = write!(line, "  (err {err})");
        }
        if e.count == 0 {
            line.push_str("  degenerate (q_k = s+1)");
        }
        println!("{line}");
    }
    let (d_max, _) = ctx.fmt(&rp.d_max);
    let (d_min, _) = ctx.fmt(&rp.d_min);
    let (r, r_err) = ctx.fmt(&rp.ratio);
    println!("d_max {d_max}");
    println!("d_min {d_min}");
    println!("ratio {r} (err {r_err})");
    println!("epsilon {}", rp.epsilon);
    println!("branch {}", rp.branch.label());
    Ok(0)
}

fn cmd_scan(
    ctx: &Ctx,
    alpha: &AlphaSpec,
    max_m: u64,
    csv: &PathBuf,
    convergents_only: bool,
    max_k: Option<usize>,
) -> threegap::Result<u8> {
    let src = alpha.to_source()?;
    let table = ctx.table(&src, 2)?.grown_for(max_m)?;
    let scan: RatioScan = if convergents_only {
        let fits = max_witness_index(&table, max_m).ok_or_else(|| {
            Error::InvalidInput(format!("no convergent denominator q_(k+1) <= {max_m}"))
        })?;
        let k = max_k.map_or(fits, |mk| mk.min(fits));
        convergent_scan(&table, k)?
    } else {
        ratio_scan(&table, max_m)?
    };

    let mut out = String::from("m,k,r,s,epsilon,branch,d_max,d_min,ratio,ratio_err\n");
    for pt in &scan.points {
        let d = pt.decomposition;
        let (ratio, err) = ctx.fmt(&pt.ratio);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{ratio},{err}",
            d.m,
            d.k,
            d.r,
            d.s,
            pt.epsilon,
            pt.branch.label(),
            ctx.fmt(&pt.d_max).0,
            ctx.fmt(&pt.d_min).0,
        );
    }
    std::fs::write(csv, out)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", csv.display())))?;

    let horizon = src
        .periodic()
        .map_or(table.depth(), |p| p.span().max(table.depth()));
    let b = constant_type_bound(&src, horizon);
    let (sup, sup_err) = ctx.fmt(scan.sup());
    let bound = if b.certified {
        format!("B={} (certified), B+2={}", b.bound, &b.bound + 2)
    } else {
        format!("B>={} (uncertified, horizon {horizon})", b.bound)
    };
    println!(
        "rows={} sup={sup} (err {sup_err}) argmax_m={} {bound}",
        scan.points.len(),
        scan.argmax_m()
    );
    Ok(0)
}

fn cmd_verify(ctx: &Ctx, alpha: &AlphaSpec, max_m: u64) -> threegap::Result<u8> {
    let src = alpha.to_source()?;
    let opts = VerifyOptions {
        start_precision: ctx.settings.start_precision,
        max_precision: ctx.settings.max_precision,
        table: ctx.settings,
        ..VerifyOptions::new(max_m)
    };
    let rep = verify(&src, &opts)?;
    println!("alpha {alpha}");
    match rep.oracle_precision {
        None => println!("checked m=1..={} against the exact oracle", rep.checked),
        Some(bits) => println!(
            "checked m=1..={} against the interval oracle ({bits} bits)",
            rep.checked
        ),
    }
    for note in &rep.notes {
        println!("note: {note}");
    }
    println!("disagreements {}", rep.disagreements);
    match &rep.first_disagreement {
        None => {
            println!("result agree");
            Ok(0)
        }
        Some(d) => {
            println!("first disagreement {d}");
            println!("result disagree");
            Ok(EXIT_DISAGREE)
        }
    }
}
