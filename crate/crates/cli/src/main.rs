use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use grhgen_core::family::{self, FamilyRow, MemberSpec, Sign};
use grhgen_core::numberfield::{FieldOptions, NumberField};
use grhgen_core::splitting::{load_cache, save_cache};
use grhgen_core::{bound, BoundConfig, BoundReport, Error, FieldContext, IntPolynomial, SplitRecord};

#[derive(Parser)]
#[command(name = "grhgen", version, about = "GRH-conditional bounds for class group generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute T(K) and the improved bound T1(K) for one field.
    Bound(BoundArgs),
    /// Count (and optionally list) prime ideals up to a norm.
    Primes(PrimesArgs),
    /// Run a pure or biquadratic family and emit one CSV row per field.
    Batch(BatchArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Comma-separated coefficients, constant term first, or a file holding them.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Use this value of log |disc K| instead of log |disc P|.
    #[arg(long)]
    log_disc: Option<f64>,
    /// Directory for prime-splitting caches.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Splitting of an index-suspect prime, as "p ramified f:count,...".
    #[arg(long = "split-record")]
    split_records: Vec<String>,
}

#[derive(Args)]
struct SearchArgs {
    /// Step of the initial δ scan.
    #[arg(long, default_value_t = 0.0625)]
    delta_grid: f64,
    /// Initial number of steps N.
    #[arg(long, default_value_t = 8)]
    n0: usize,
    /// Largest N the doubling loop may reach.
    #[arg(long, default_value_t = 1 << 14)]
    n_max: usize,
}

impl SearchArgs {
    fn config(&self, basic_only: bool, record_timings: bool) -> BoundConfig {
        BoundConfig {
            delta_step: self.delta_grid,
            n0: self.n0,
            n_cap: self.n_max,
            basic_only,
            record_timings,
        }
    }
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    search: SearchArgs,
    /// Only compute T(K).
    #[arg(long)]
    basic_only: bool,
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct PrimesArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    up_to: u64,
    /// Print every prime ideal as "norm p f".
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Pure,
    Biquadratic,
}

#[derive(Args)]
struct BatchArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    degree: Option<usize>,
    /// "+" or "-".
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long)]
    a_min: Option<u32>,
    #[arg(long)]
    a_max: Option<u32>,
    /// Inclusive range "a..b" for the first prime of a biquadratic field.
    #[arg(long)]
    a1_range: Option<String>,
    #[arg(long)]
    a2_range: Option<String>,
    /// Write rows here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write "log_disc scaled" columns here.
    #[arg(long)]
    plot_data: Option<PathBuf>,
    /// Run fields whose estimated T0 exceeds the desk-scale guard.
    #[arg(long)]
    force: bool,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_) | Error::PredicateFalseAtUpper(_) | Error::TableTooSmall { .. } => 3,
        _ => 2,
    }
}

fn read_poly(source: &str) -> Result<IntPolynomial, Error> {
    let path = Path::new(source);
    if path.is_file() {
        IntPolynomial::parse(fs::read_to_string(path)?.trim())
    } else {
        IntPolynomial::parse(source)
    }
}

fn open_context(args: &FieldArgs) -> Result<FieldContext, Error> {
    let poly = read_poly(&args.poly)?;
    let opts = FieldOptions {
        user_log_disc: args.log_disc,
        ..FieldOptions::default()
    };
    let field = NumberField::new(poly, &opts)?;
    let mut ctx = match &args.cache_dir {
        Some(dir) => {
            let table = load_cache(dir, &field)?;
            FieldContext::with_table(field, table)?
        }
        None => FieldContext::new(field),
    };
    for line in &args.split_records {
        let rec = SplitRecord::parse_line(line)?;
        if !ctx.field().is_index_suspect(rec.p) {
            return Err(Error::InvalidArgument(format!(
                "{} is not an index suspect; its splitting is read off the polynomial",
                rec.p
            )));
        }
        let field = ctx.field().clone();
        ctx.table_mut().set_override(&field, rec)?;
    }
    Ok(ctx)
}

fn persist(ctx: &FieldContext, dir: Option<&Path>) -> Result<(), Error> {
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        save_cache(ctx.table(), dir)?;
    }
    Ok(())
}

fn render_text(r: &BoundReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k}={v}\n"));
    line("polynomial", r.polynomial.clone());
    line("field_id", r.field_id.clone());
    line("signature", format!("({}, {})", r.r1, r.r2));
    line("log_abs_disc", format!("{}", r.log_abs_disc));
    line("t0_cap", format!("{}", r.t0_cap));
    line("t_basic", r.t_basic.to_string());
    line("ideal_count_basic", r.ideal_count_basic.to_string());
    if let (Some(t1), Some(c1)) = (r.t_improved, r.ideal_count_improved) {
        line("t_improved", t1.to_string());
        line("ideal_count_improved", c1.to_string());
    }
    if let Some(w) = r.witness {
        line("witness", format!("N={} delta={}", w.n, w.delta));
    }
    if !r.flags.is_empty() {
        let flags: Vec<String> = r
            .flags
            .iter()
            .map(|f| serde_json::to_value(f).map(|v| v.as_str().unwrap_or_default().to_string()))
            .collect::<Result<_, _>>()
            .unwrap_or_default();
        line("flags", flags.join(","));
    }
    if let Some(t) = r.timings {
        line("timings_ms", format!("basic={:.1} improved={:.1}", t.basic_ms, t.improved_ms));
    }
    out
}

fn cmd_bound(args: &BoundArgs) -> Result<(), Error> {
    let mut ctx = open_context(&args.field)?;
    let report = bound(&mut ctx, &args.search.config(args.basic_only, args.timings))?;
    persist(&ctx, args.field.cache_dir.as_deref())?;
    let text = if args.json {
        let mut s = serde_json::to_string_pretty(&report).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        s
    } else {
        render_text(&report)
    };
    io::stdout().write_all(text.as_bytes())?;
    Ok(())
}

fn cmd_primes(args: &PrimesArgs) -> Result<(), Error> {
    if args.up_to < 2 {
        return Err(Error::InvalidArgument("--up-to must be at least 2".into()));
    }
    let mut ctx = open_context(&args.field)?;
    let count = ctx.count_up_to(args.up_to)?;
    persist(&ctx, args.field.cache_dir.as_deref())?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "count={count}")?;
    if args.list {
        for e in ctx.table().entries().iter().take_while(|e| e.norm <= args.up_to) {
            for _ in 0..e.count {
                writeln!(out, "{} {} {}", e.norm, e.p, e.f)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn parse_range(text: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::Parse(format!("range must look like a..b, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn family_specs(args: &BatchArgs) -> Result<Vec<MemberSpec>, Error> {
    let missing = |what: &str| Error::InvalidArgument(format!("--{what} is required for this family"));
    match args.family {
        FamilyKind::Pure => {
            if args.a1_range.is_some() || args.a2_range.is_some() {
                return Err(Error::InvalidArgument("--a1-range/--a2-range apply to biquadratic families".into()));
            }
            let n = args.degree.ok_or_else(|| missing("degree"))?;
            if n < 2 {
                return Err(Error::DegreeTooSmall(n));
            }
            let sign: Sign = args.sign.as_deref().ok_or_else(|| missing("sign"))?.parse()?;
            let a_min = args.a_min.ok_or_else(|| missing("a-min"))?;
            let a_max = args.a_max.ok_or_else(|| missing("a-max"))?;
            Ok(family::pure_family(n, sign, a_min, a_max))
        }
        FamilyKind::Biquadratic => {
            if args.degree.is_some() || args.sign.is_some() || args.a_min.is_some() || args.a_max.is_some() {
                return Err(Error::InvalidArgument("--degree/--sign/--a-min/--a-max apply to pure families".into()));
            }
            let a1 = parse_range(args.a1_range.as_deref().ok_or_else(|| missing("a1-range"))?)?;
            let a2 = parse_range(args.a2_range.as_deref().ok_or_else(|| missing("a2-range"))?)?;
            Ok(family::biquadratic_family(a1, a2))
        }
    }
}

fn run_member(spec: &MemberSpec, config: &BoundConfig, force: bool, cache_dir: Option<&Path>) -> Result<FamilyRow, Error> {
    spec.check_guard(force)?;
    let member = spec.build()?;
    let field = NumberField::new(member.poly, &FieldOptions::default())?;
    let mut ctx = match cache_dir {
        Some(dir) => {
            let table = load_cache(dir, &field)?;
            FieldContext::with_table(field, table)?
        }
        None => FieldContext::new(field),
    };
    let report = bound(&mut ctx, config)?;
    persist(&ctx, cache_dir)?;
    FamilyRow::from_report(&member.label, &report)
}

fn cmd_batch(args: &BatchArgs) -> Result<(), Error> {
    let specs = family_specs(args)?;
    let config = args.search.config(false, false);
    let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;

    let to_stdout = args.csv.is_none();
    let mut out: Box<dyn Write> = match &args.csv {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(out, "{}", family::CSV_HEADER)?;
    out.flush()?;

    let mut rows = Vec::new();
    for chunk in specs.chunks(jobs * 2) {
        let results: Vec<Result<FamilyRow, Error>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|s| run_member(s, &config, args.force, args.cache_dir.as_deref()))
                .collect()
        });
        for (spec, res) in chunk.iter().zip(results) {
            match res {
                Ok(row) => {
                    writeln!(out, "{}", row.to_csv())?;
                    rows.push(row);
                }
                Err(e) => eprintln!("skipped {}: {e}", spec.label()),
            }
        }
        out.flush()?;
    }
    drop(out);

    let summary = match family::mean_scaled(&rows) {
        Some(m) => format!("rows={} mean_scaled={m}", rows.len()),
        None => "rows=0".to_string(),
    };
    if to_stdout {
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    if let Some(path) = &args.plot_data {
        if rows.is_empty() {
            eprintln!("no rows; plot data not written");
        } else {
            fs::write(path, family::render_plot_data(&rows))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Bound(a) => cmd_bound(a),
        Command::Primes(a) => cmd_primes(a),
        Command::Batch(a) => cmd_batch(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("grhgen: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
