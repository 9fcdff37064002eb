use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use landau::champions::{build_delta3, build_eta, build_theta_d, build_theta_min, EtaFamily};
use landau::gseq::{algorithm1, p_plus_bound_coefficients};
use landau::primes::PrimeTable;
use landau::store;
use landau::superchampions::enumerate_superchampions;
use landau::table::{sqrt_n_log_n, LandauTable};
use landau::verify;

/// Landau's function g(n), its largest prime factor, and the champion
/// tables behind the effective bounds.
#[derive(Parser)]
#[command(name = "landau", version, about)]
struct Cli {
    /// Largest n kept in the g(n) table.
    #[arg(long, default_value_t = 1_400_000, global = true)]
    n_max: usize,

    /// Sieve bound; defaults to what the subcommand needs (at least 10^6).
    #[arg(long, global = true)]
    sieve_limit: Option<u64>,

    /// Directory for binary table caches.
    #[arg(long, env = "LANDAU_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Worker threads for the sieve.
    #[arg(long, default_value_t = default_threads(), global = true)]
    threads: usize,

    /// Memory budget in bytes for table construction.
    #[arg(long, default_value_t = 8 << 30, global = true)]
    memory_budget: u64,

    /// Override the printed decimal width (rounding direction is fixed
    /// per table kind).
    #[arg(long, global = true)]
    digits: Option<u32>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sieve primes up to LIMIT and cache the table.
    Sieve {
        limit: u64,
        /// Emit (i, p_i, theta(p_i)) rows to stdout.
        #[arg(long)]
        csv: bool,
    },
    /// Print rows of the g(n) table: N or A..B (inclusive).
    Gtable {
        range: String,
        /// Reconstruct and print the factorization of g(n).
        #[arg(long)]
        factor: bool,
    },
    /// Print a champion table.
    Champions {
        #[command(subcommand)]
        kind: ChampKind,
    },
    /// Run the greedy y-admissible g-sequence construction.
    Gseq { y: String, len: u32 },
    /// Enumerate ℓ-superchampions N_P for primes 5 ≤ P ≤ PMAX.
    Superchampions { p_max: u64 },
    /// Run verification reports ("all" or a list of claim ids).
    Verify { ids: Vec<String> },
    /// N(x): how many 2 ≤ n ≤ x have P⁺(g(n)) > log g(n).
    Counts { x: usize },
}

#[derive(Subcommand)]
enum ChampKind {
    /// θ_min champions (values rounded down, 4 decimals).
    Thmin,
    /// θ_d champions (values rounded up, 6 decimals).
    Thd,
    /// η_k champions (exact fractions).
    Eta { k: u32 },
    /// δ_3 champions (values rounded up, 4 decimals).
    Delta3,
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            let is_pipe = |io: &std::io::Error| io.kind() == std::io::ErrorKind::BrokenPipe;
            let broken_pipe = e.chain().any(|c| {
                c.downcast_ref::<std::io::Error>().is_some_and(is_pipe)
                    || matches!(
                        c.downcast_ref::<landau::Error>(),
                        Some(landau::Error::Io(io)) if is_pipe(io)
                    )
            });
            if broken_pipe {
                std::process::exit(0);
            }
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn primes_cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("primes_{limit}.ldau"))
}

fn landau_cache_path(dir: &Path, n_max: usize) -> PathBuf {
    dir.join(format!("landau_{n_max}.ldau"))
}

fn ensure_primes(cli: &Cli, limit: u64) -> Result<PrimeTable> {
    if let Some(dir) = &cli.cache_dir {
        let path = primes_cache_path(dir, limit);
        if path.exists() {
            return Ok(store::load_primes(&path)?);
        }
        let t = PrimeTable::sieve_with(limit, cli.memory_budget, cli.threads)?;
        std::fs::create_dir_all(dir)?;
        store::save_primes(&path, &t)?;
        return Ok(t);
    }
    Ok(PrimeTable::sieve_with(
        limit,
        cli.memory_budget,
        cli.threads,
    )?)
}

fn ensure_landau(cli: &Cli) -> Result<LandauTable> {
    if let Some(dir) = &cli.cache_dir {
        let path = landau_cache_path(dir, cli.n_max);
        if path.exists() {
            return Ok(store::load_landau(&path)?);
        }
        let t = LandauTable::build_with(cli.n_max, cli.memory_budget)?;
        std::fs::create_dir_all(dir)?;
        store::save_landau(&path, &t)?;
        return Ok(t);
    }
    Ok(LandauTable::build_with(cli.n_max, cli.memory_budget)?)
}

fn sieve_limit_for(cli: &Cli, needed: u64) -> u64 {
    cli.sieve_limit.unwrap_or(needed.max(1_000_000))
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    if let Some((a, b)) = s.split_once("..") {
        let lo = a.trim().parse().context("bad range start")?;
        let hi = b.trim().parse().context("bad range end")?;
        if lo > hi {
            bail!("empty range {s}");
        }
        Ok((lo, hi))
    } else {
        let n = s.trim().parse().context("bad n")?;
        Ok((n, n))
    }
}

/// Parse a decimal literal as an exact rational (the g-sequence contract).
fn parse_decimal_rational(s: &str) -> Result<num_rational::BigRational> {
    use num_rational::BigRational;
    let s = s.trim();
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        bail!("empty number");
    }
    let digits = format!("{int}{frac}");
    let num: num_bigint::BigInt = digits.parse().context("bad decimal literal")?;
    let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(num, den))
}

fn run(cli: Cli) -> Result<i32> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match &cli.cmd {
        Cmd::Sieve { limit, csv } => {
            let t = ensure_primes(&cli, *limit)?;
            if *csv {
                store::primes_csv(&mut out, &t)?;
            } else {
                writeln!(out, "limit {}", t.limit())?;
                writeln!(out, "pi(limit) {}", t.prime_count())?;
                writeln!(out, "theta(limit) {:.6}", t.theta(*limit as f64)?)?;
            }
            Ok(0)
        }

        Cmd::Gtable { range, factor } => {
            let (lo, hi) = parse_range(range)?;
            if hi > cli.n_max {
                bail!("range end {hi} beyond n_max {}", cli.n_max);
            }
            let t = ensure_landau(&cli)?;
            let facts = if *factor {
                let targets: Vec<usize> = (lo..=hi).collect();
                Some(t.factorizations_of(&targets)?)
            } else {
                None
            };
            match cli.format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = (lo..=hi)
                        .map(|n| {
                            let mut v = serde_json::json!({
                                "n": n,
                                "log_g": t.log_g(n),
                                "p_plus": t.p_plus(n),
                                "ratio": ratio_or_zero(&t, n),
                            });
                            if let Some(f) = &facts {
                                v["factorization"] =
                                    serde_json::Value::String(f[n - lo].to_string());
                            }
                            v
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
                }
                _ => {
                    let sep = if cli.format == Format::Csv { "," } else { "  " };
                    writeln!(
                        out,
                        "n{sep}log_g{sep}p_plus{sep}log_g/sqrt(n log n){}",
                        if *factor {
                            format!("{sep}factorization")
                        } else {
                            String::new()
                        }
                    )?;
                    for n in lo..=hi {
                        write!(
                            out,
                            "{n}{sep}{:.9}{sep}{}{sep}{:.10}",
                            t.log_g(n),
                            t.p_plus(n),
                            ratio_or_zero(&t, n),
                        )?;
                        if let Some(f) = &facts {
                            write!(out, "{sep}{}", f[n - lo])?;
                        }
                        writeln!(out)?;
                    }
                }
            }
            Ok(0)
        }

        Cmd::Champions { kind } => {
            match kind {
                ChampKind::Thmin => {
                    let primes = ensure_primes(&cli, sieve_limit_for(&cli, 1_000_000))?;
                    let t = build_theta_min(&primes, 1_000_000.min(primes.limit()))?;
                    store::champions_csv_real(&mut out, &t, cli.digits.unwrap_or(4), false)?;
                }
                ChampKind::Thd => {
                    let primes = ensure_primes(&cli, sieve_limit_for(&cli, 3_700_000))?;
                    let t = build_theta_d(&primes, 3_594_641)?;
                    store::champions_csv_real(&mut out, &t, cli.digits.unwrap_or(6), true)?;
                }
                ChampKind::Eta { k } => {
                    let primes = ensure_primes(&cli, sieve_limit_for(&cli, 1_000_000))?;
                    let t = build_eta(&primes, *k, 1_000_000)?;
                    store::champions_csv_ratio(&mut out, &t)?;
                }
                ChampKind::Delta3 => {
                    let primes = ensure_primes(&cli, sieve_limit_for(&cli, 1_000_000))?;
                    let e3 = build_eta(&primes, 3, 1_000_000)?;
                    let t = build_delta3(&primes, &e3)?;
                    store::champions_csv_real(&mut out, &t, cli.digits.unwrap_or(4), true)?;
                }
            }
            Ok(0)
        }

        Cmd::Gseq { y, len } => {
            let y_rat = parse_decimal_rational(y)?;
            let primes = ensure_primes(&cli, sieve_limit_for(&cli, 1_000_000))?;
            let mut etas = EtaFamily::new(1_000_000.min(primes.limit()));
            let run = algorithm1(&primes, &mut etas, &y_rat, *len)?;
            let theta_min = build_theta_min(&primes, 1_000_000.min(primes.limit()))?;
            let y_f = num_traits::ToPrimitive::to_f64(&y_rat).unwrap();
            let rows = store::gseq_rows(&run.seq, y_f, &theta_min)?;
            match cli.format {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
                }
                _ => store::gseq_csv(&mut out, &rows)?,
            }
            if let Some(k) = run.failure_at {
                writeln!(out, "FAILURE at k = {k}: alpha_{k} <= alpha_{}", k - 1)?;
            }
            if !rows.is_empty() {
                // Headline bound from the best row.
                let best = rows.iter().max_by(|a, b| a.d_k.total_cmp(&b.d_k)).unwrap();
                let k = best.k;
                let n0 = 1_000_000u64;
                if y_f <= 1.2654 * sqrt_n_log_n(n0 as usize) {
                    let b = p_plus_bound_coefficients(n0, 1.2654, y_f, &run.seq, k, &theta_min)?;
                    writeln!(
                        out,
                        "# D_{k} = {:.6}, b = 1.05314/D_{k} = {:.6}",
                        b.d_k, b.b
                    )?;
                }
            }
            Ok(0)
        }

        Cmd::Superchampions { p_max } => {
            let primes = ensure_primes(&cli, sieve_limit_for(&cli, (*p_max).max(100)))?;
            let scs = enumerate_superchampions(&primes, *p_max)?;
            if cli.format == Format::Json {
                let rows: Vec<serde_json::Value> = scs
                    .iter()
                    .map(|s| {
                        serde_json::json!({
                            "P": s.p,
                            "n_P": s.n_p,
                            "log_N": s.log_n,
                            "N": s.exponents.to_string(),
                        })
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                store::superchampions_csv(&mut out, &scs, &primes)?;
            }
            Ok(0)
        }

        Cmd::Verify { ids } => {
            let table = ensure_landau(&cli)?;
            let primes = ensure_primes(&cli, sieve_limit_for(&cli, 1_000_000))?;
            let all = ids.is_empty() || ids.iter().any(|s| s == "all");
            let mut reports = Vec::new();
            let want = |name: &str| all || ids.iter().any(|s| s == name);
            if want("t1") {
                reports.push(verify::verify_theorem_t1(&table, 1_000_000)?);
            }
            if want("t3") {
                reports.push(verify::verify_theorem_t3(&table)?);
            }
            if want("t4") {
                reports.push(verify::verify_theorem_t4(&table)?);
            }
            if want("counts") {
                reports.push(verify::verify_counts(&table)?);
            }
            if want("log_g_bounds") {
                reports.push(verify::verify_log_g_bounds(&table)?);
            }
            if want("p_plus_floor") {
                reports.push(verify::verify_p_plus_floor(&table)?);
            }
            if want("prime_power_caps") {
                reports.push(verify::verify_prime_power_caps(&table, &primes, 10_000)?);
            }
            if want("s_of_q") {
                reports.push(verify::verify_s_of_q(&primes, 100_000)?);
            }
            if want("superchampions") {
                reports.push(verify::verify_superchampions(&table, &primes)?);
            }
            if want("theta_bounds") {
                reports.push(verify::verify_theta_bounds(&primes, 10_000)?);
            }
            if reports.is_empty() {
                bail!("no known claim id in {ids:?}");
            }
            if cli.format == Format::Json {
                writeln!(out, "{}", store::reports_json(&reports)?)?;
            } else {
                for r in &reports {
                    writeln!(
                        out,
                        "{}: {} (range [{}, {}]{}{})",
                        r.claim_id,
                        if r.pass { "PASS" } else { "FAIL" },
                        r.range.0,
                        r.range.1,
                        r.witness
                            .map_or(String::new(), |w| format!(", witness {w}")),
                        r.value.map_or(String::new(), |v| format!(", value {v}")),
                    )?;
                }
            }
            Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
        }

        Cmd::Counts { x } => {
            if *x > cli.n_max {
                bail!("x beyond n_max");
            }
            let t = ensure_landau(&cli)?;
            writeln!(out, "N({x}) = {}", verify::count_n(&t, *x)?)?;
            Ok(0)
        }
    }
}

fn ratio_or_zero(t: &LandauTable, n: usize) -> f64 {
    if n >= 2 {
        t.log_g(n) / sqrt_n_log_n(n)
    } else {
        0.0
    }
}
