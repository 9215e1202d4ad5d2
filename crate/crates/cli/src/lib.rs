//! The `qsum` command line: verification suites, single objects, digit searches
//! and gcd windows.

pub mod grid;
pub mod report;
pub mod suites;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use qsum_core::conjectures::{first_with, first_with_brute, gcd_family_window, GcdFamily, Stat};
use qsum_core::numeric::calkin_sum;
use qsum_core::qcore::{qbinom, QBinomTable};
use qsum_core::schmidt::{c_triangular, t_direct, TCParams};
use qsum_core::sums::{alt_sum, normalized_sum, SumSpec};
use qsum_core::LaurentPoly;

use grid::{parse_list, Span};
use report::{ConfigEcho, Record, Report};
use suites::{Bounds, SUITES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qsum", version, about = "Exact checks of q-binomial sum identities and divisibility claims")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (0 picks one per core).
    #[arg(long, global = true, env = "QSUM_WORKERS")]
    pub workers: Option<usize>,
    /// q-binomial cache file, read at startup and rewritten afterwards.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite over a parameter grid.
    Verify(VerifyArgs),
    /// Print a single object.
    Compute(ComputeArgs),
    /// Least n with a given digit statistic.
    Search(SearchArgs),
    /// Window gcds of central alternating power sums.
    ExploreGcd(GcdArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = PossibleValuesParser::new(SUITES))]
    pub suite: String,
    /// Range of the n_i (or of n, by suite), `a..b` inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<Span>,
    /// Range of the number of terms m (or the start exponent for conj53).
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<Span>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<Span>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<Span>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<Span>,
    /// Range of the truncation N in the Andrews suites.
    #[arg(long = "big-n", allow_hyphen_values = true)]
    pub big_n: Option<Span>,
    /// Exponent range for a, b_i, c_i in the Andrews grid.
    #[arg(long, allow_hyphen_values = true)]
    pub exp: Option<Span>,
    /// Largest exponent sum in the divisibility suites.
    #[arg(long = "exp-sum")]
    pub exp_sum: Option<u32>,
    /// Run at most this many grid points.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Offset into the prime sequence for Andrews sample points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exponents per gcd window.
    #[arg(long = "r-window", default_value_t = 6)]
    pub r_window: usize,
    /// Positivity beyond the claimed j range; findings are reported, never counted.
    #[arg(long)]
    pub explore: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(value_parser = PossibleValuesParser::new(["S", "alt-sum", "qbinom", "t", "c", "alpha", "beta", "gamma", "calkin"]))]
    pub object: String,
    /// Integer argument for alpha, beta and gamma.
    pub value: Option<String>,
    /// `n` or a list `n_1,...,n_m`.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(value_parser = PossibleValuesParser::new(["alpha", "beta", "gamma"]))]
    pub stat: String,
    pub target: u32,
    #[arg(long, default_value = "1000000000000")]
    pub limit: String,
    /// Scan every n instead of building the answer digit by digit.
    #[arg(long)]
    pub brute: bool,
}

#[derive(Debug, Args)]
pub struct GcdArgs {
    #[arg(long, default_value = "1..20")]
    pub n: Span,
    #[arg(long = "r-window", default_value_t = 6)]
    pub r_window: usize,
    /// `classes` (all three residue classes), `class0`, `class1`, `class2` or `from`.
    #[arg(long, default_value = "classes")]
    pub family: String,
    /// First exponent for `--family from`.
    #[arg(long, default_value_t = 1)]
    pub m: u32,
}

/// Runs the tool and returns its exit code: 0 success, 1 counterexample, 2 usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 2 { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(path) = &cli.cache {
        load_cache(path, err);
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start workers: {e}");
            return 2;
        }
    };
    let result = pool.install(|| match &cli.command {
        Command::Verify(a) => verify(a, &cli),
        Command::Compute(a) => compute(a, cli.format),
        Command::Search(a) => search(a, cli.format),
        Command::ExploreGcd(a) => explore_gcd(a, cli.format),
    });
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            if let Some(path) = &cli.cache {
                if let Err(e) = save_cache(path) {
                    let _ = writeln!(err, "warning: could not write cache {}: {e}", path.display());
                }
            }
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn load_cache(path: &Path, err: &mut dyn Write) {
    if !path.exists() {
        return;
    }
    if let Err(e) = QBinomTable::global().load_cache_file(path) {
        let _ = writeln!(err, "warning: ignoring cache {}: {e}", path.display());
    }
}

fn save_cache(path: &Path) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    QBinomTable::global().save_cache_file(&tmp)?;
    std::fs::rename(&tmp, path)
}

type Outcome = Result<(String, i32), String>;

fn verify(a: &VerifyArgs, cli: &Cli) -> Outcome {
    let bounds = Bounds {
        n: a.n,
        m: a.m,
        j: a.j,
        r: a.r,
        k: a.k,
        big_n: a.big_n,
        exp: a.exp,
        exp_sum: a.exp_sum,
        seed: a.seed,
        r_window: a.r_window,
        explore: a.explore,
    };
    if a.explore && a.suite != "thm2-positivity" {
        return Err("--explore only applies to thm2-positivity".into());
    }
    let mut tasks = suites::build(&a.suite, &bounds)?;
    if let Some(limit) = a.limit {
        tasks.truncate(limit);
    }
    let records: Vec<Record> = tasks
        .par_iter()
        .map(|t| {
            let start = Instant::now();
            let (result, detail) = t();
            Record::new(result, start.elapsed().as_secs_f64() * 1e3, detail)
        })
        .collect();

    let mut options = BTreeMap::new();
    let spans = [("n", a.n), ("m", a.m), ("j", a.j), ("r", a.r), ("k", a.k), ("big-n", a.big_n), ("exp", a.exp)];
    for (name, span) in spans {
        if let Some(s) = span {
            options.insert(name.to_string(), s.to_string());
        }
    }
    if let Some(e) = a.exp_sum {
        options.insert("exp-sum".into(), e.to_string());
    }
    if let Some(l) = a.limit {
        options.insert("limit".into(), l.to_string());
    }
    options.insert("seed".into(), a.seed.to_string());
    options.insert("r-window".into(), a.r_window.to_string());
    options.insert("explore".into(), a.explore.to_string());
    options.insert("workers".into(), rayon::current_num_threads().to_string());
    if let Some(c) = &cli.cache {
        options.insert("cache".into(), c.display().to_string());
    }
    let config = ConfigEcho { command: "verify".into(), target: a.suite.clone(), options };
    let report = Report::new(config, records);
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    Ok((text, report.exit_code()))
}

fn need<T>(v: Option<T>, flag: &str, object: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("compute {object} needs --{flag}"))
}

fn single(list: &[i64], object: &str) -> Result<i64, String> {
    match list {
        [v] => Ok(*v),
        _ => Err(format!("compute {object} takes a single --n")),
    }
}

fn render_poly(object: &str, params: Value, p: &LaurentPoly, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Json => json!({"object": object, "params": params, "value": p}).to_string() + "\n",
    }
}

fn render_int(object: &str, params: Value, v: &BigInt, format: Format) -> String {
    match format {
        Format::Text => format!("{v}\n"),
        Format::Json => json!({"object": object, "params": params, "value": v.to_string()}).to_string() + "\n",
    }
}

fn compute(a: &ComputeArgs, format: Format) -> Outcome {
    let obj = a.object.as_str();
    if let Some(stat) = Stat::parse(obj) {
        let raw = need(a.value.as_ref().or(a.n.as_ref()), "n (or a positional value)", obj)?;
        let v: BigInt = raw.trim().parse().map_err(|_| format!("'{raw}' is not an integer"))?;
        if v.sign() == num_bigint::Sign::Minus {
            return Err(format!("{obj} needs a nonnegative integer"));
        }
        let value = BigInt::from(stat.of(&v));
        return Ok((render_int(obj, json!({"n": v.to_string()}), &value, format), 0));
    }
    let n = parse_list(need(a.n.as_deref(), "n", obj)?)?;
    let text = match obj {
        "S" | "alt-sum" => {
            let j = need(a.j, "j", obj)?;
            let spec = SumSpec::new(n.clone(), j).map_err(|e| e.to_string())?;
            let params = json!({"n": n, "j": j});
            if obj == "alt-sum" {
                render_poly(obj, params, &alt_sum(&spec), format)
            } else {
                match normalized_sum(&spec) {
                    Ok(p) => render_poly(obj, params, &p, format),
                    Err(_) => return Err(format!("S{n:?} with j = {j} is not a Laurent polynomial")),
                }
            }
        }
        "qbinom" => {
            let top = single(&n, obj)?;
            let k = need(a.k, "k", obj)?;
            render_poly(obj, json!({"n": top, "k": k}), &qbinom(top, k), format)
        }
        "t" => {
            let n = single(&n, obj)?;
            let (j, r) = (need(a.j, "j", obj)?, need(a.r, "r", obj)?);
            let p = TCParams::new(n, j, r).map_err(|e| e.to_string())?;
            render_poly(obj, json!({"n": n, "j": j, "r": r}), &t_direct(p), format)
        }
        "c" => {
            let n = single(&n, obj)?;
            let r = need(a.r, "r", obj)?;
            if n < 0 || r < 1 {
                return Err("compute c needs n >= 0 and r >= 1".into());
            }
            let c = c_triangular(n as usize, r).map_err(|_| "triangular solve left a remainder".to_string())?;
            render_poly(obj, json!({"n": n, "r": r}), &c[n as usize], format)
        }
        "calkin" => {
            let n = single(&n, obj)?;
            let m = need(a.m, "m", obj)?;
            if n < 1 || m < 1 {
                return Err("compute calkin needs n >= 1 and m >= 1".into());
            }
            match calkin_sum(n, m) {
                Ok(v) => render_int(obj, json!({"n": n, "m": m}), &v, format),
                Err(c) => return Ok((format!("{c}\n"), 1)),
            }
        }
        _ => unreachable!("clap restricts the object names"),
    };
    Ok((text, 0))
}

fn search(a: &SearchArgs, format: Format) -> Outcome {
    let stat = Stat::parse(&a.stat).expect("clap restricts the statistic");
    let limit: BigInt = a.limit.trim().parse().map_err(|_| format!("bad --limit '{}'", a.limit))?;
    if limit.sign() == num_bigint::Sign::Minus {
        return Err("--limit must be nonnegative".into());
    }
    let found = if a.brute {
        let lim = u64::try_from(&limit).map_err(|_| "--brute needs a limit below 2^64".to_string())?;
        first_with_brute(stat, a.target, lim).map(BigInt::from)
    } else {
        first_with(stat, a.target, &limit)
    };
    let text = match (format, &found) {
        (Format::Text, Some(n)) => format!("{n}\n"),
        (Format::Text, None) => "none\n".to_string(),
        (Format::Json, _) => json!({
            "stat": a.stat,
            "target": a.target,
            "limit": limit.to_string(),
            "n": found.as_ref().map(BigInt::to_string),
        })
        .to_string()
            + "\n",
    };
    Ok((text, 0))
}

fn explore_gcd(a: &GcdArgs, format: Format) -> Outcome {
    if a.n.lo < 1 || a.r_window == 0 {
        return Err("explore-gcd needs n >= 1 and a positive --r-window".into());
    }
    let families = match a.family.as_str() {
        "classes" => (0..3).map(GcdFamily::Class).collect(),
        "class0" => vec![GcdFamily::Class(0)],
        "class1" => vec![GcdFamily::Class(1)],
        "class2" => vec![GcdFamily::Class(2)],
        "from" if a.m >= 1 => vec![GcdFamily::AllFrom(a.m)],
        other => return Err(format!("unknown --family '{other}'")),
    };
    let jobs: Vec<(i64, GcdFamily)> = a.n.iter().flat_map(|n| families.iter().map(move |&f| (n, f))).collect();
    let rows: Vec<(i64, Value, bool)> = jobs
        .par_iter()
        .map(|&(n, f)| {
            let rep = gcd_family_window(n, f, a.r_window);
            let mut d = suites::gcd_detail(&rep, f);
            d["n"] = json!(n);
            (n, d, rep.conjecture_divides())
        })
        .collect();
    let code = if rows.iter().all(|r| r.2) { 0 } else { 1 };
    let text = match format {
        Format::Json => {
            let list: Vec<&Value> = rows.iter().map(|r| &r.1).collect();
            serde_json::to_string_pretty(&list).expect("serializes") + "\n"
        }
        Format::Text => rows
            .iter()
            .map(|(n, d, _)| {
                format!(
                    "n={n} {}: gcd={} conjectured={} divides={} equal={} stabilized={}\n",
                    d["family"].as_str().unwrap_or(""),
                    d["gcd"].as_str().unwrap_or(""),
                    d["conjectured"].as_str().unwrap_or(""),
                    d["divides"],
                    d["equal"],
                    d["stabilized"]
                )
            })
            .collect(),
    };
    Ok((text, code))
}
