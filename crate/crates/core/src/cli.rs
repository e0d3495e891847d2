//! Command-line front end: `mul`, `table`, `verify`, `flex`, `zero-divisor`
//! and `bench`.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid input.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::table::{self, Format, MultiplicationTable, DEFAULT_TABLE_CAP};
use crate::algebra::verify::{self, Mode, MAX_EXHAUSTIVE_LEVEL};
use crate::algebra::zero_divisor::{find_zero_divisor, Family};
use crate::algebra::{CdAlgebra, Element, Gammas};
use crate::error::{Error, Result};
use crate::nonassoc::{self, NonAssocQuaternion};
use crate::scalar::{parse_rational, parse_rational_list, QuadExt, QuadField, Rational};
use crate::twist;

/// Environment variable overriding the table dimension cap.
pub const TABLE_CAP_ENV: &str = "CDTWIST_TABLE_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cdtwist", version, about = "Cayley-Dickson doubling towers and their sign map")]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Shared {
    /// Number of doublings.
    #[arg(long, global = true)]
    t: Option<u32>,
    /// "symbolic" or a comma-separated list of t nonzero rationals.
    #[arg(long, global = true, default_value = "symbolic", allow_hyphen_values = true)]
    gammas: String,
    /// text, csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of two basis vectors via the sign map.
    Mul {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Print the sign recursion.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Multiplication table of E_t.
    Table {
        /// Stream rows from the fast path instead of building the table.
        #[arg(long)]
        stream: bool,
    },
    /// Compare the sign map with the doubling product.
    Verify {
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Number of random pairs.
        #[arg(long, default_value_t = 100_000)]
        n: u64,
    },
    /// Basis flexibility law and third powers in a nonassociative quaternion algebra.
    Flex {
        /// Radicand of E = Q(sqrt(d)).
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        d: i64,
        /// Element of E: "sqrt", "-sqrt", "3*sqrt", "a,b" for a + b sqrt(d), or a rational.
        #[arg(long, default_value = "sqrt", allow_hyphen_values = true)]
        gamma: String,
        /// Double once more (8-dimensional).
        #[arg(long)]
        doubled: bool,
        /// Parameter of the extra doubling; defaults to gamma.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
    },
    /// Search for a pair of nonzero elements with zero product.
    ZeroDivisor {
        #[arg(long, default_value = "structured")]
        family: String,
        /// Maximum candidates (structured: products, random: samples).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Time random basis products through the sign map.
    Bench {
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
    },
}

/// Failure of a command: a message and an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_INVALID, message: format!("i/o error: {e}") }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

/// Runs the command line `args` (including the program name), writing
/// results to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.shared.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let r = dispatch(&cli, &mut w, stderr);
                r.and_then(|code| w.flush().map(|_| code).map_err(Failure::from))
            }
            Err(e) => Err(invalid(format!("cannot create {}: {e}", path.display()))),
        },
        None => dispatch(&cli, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let s = &cli.shared;
    match &cli.command {
        Command::Mul { p, q, verbose } => cmd_mul(s, *p, *q, *verbose, out),
        Command::Table { stream } => cmd_table(s, *stream, out),
        Command::Verify { mode, n } => cmd_verify(s, mode, *n, out, err),
        Command::Flex { d, gamma, doubled, delta } => cmd_flex(s, *d, gamma, *doubled, delta.as_deref(), out),
        Command::ZeroDivisor { family, budget } => cmd_zero_divisor(s, family, *budget, out),
        Command::Bench { n } => cmd_bench(s, *n, out),
    }
}

fn level(s: &Shared) -> std::result::Result<u32, Failure> {
    s.t.ok_or_else(|| invalid("--t is required"))
}

fn format(s: &Shared, default: Format) -> std::result::Result<Format, Failure> {
    Ok(match &s.format {
        Some(f) => f.parse()?,
        None => default,
    })
}

fn gammas(s: &Shared, t: u32) -> Result<Gammas> {
    if s.gammas == "symbolic" {
        return Ok(Gammas::Symbolic);
    }
    let g = parse_rational_list(&s.gammas)?;
    if g.len() != t as usize {
        return Err(Error::InvalidParameter(format!("expected {t} parameter values, got {}", g.len())));
    }
    if let Some(m) = g.iter().position(num_traits::Zero::is_zero) {
        return Err(Error::InvalidParameter(format!("g{} must be nonzero", m + 1)));
    }
    Ok(Gammas::Concrete(g))
}

/// Dimension cap for materialized tables.
pub fn table_cap() -> Result<u64> {
    match std::env::var(TABLE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{TABLE_CAP_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_TABLE_CAP),
    }
}

fn cmd_mul(s: &Shared, p: u64, q: u64, verbose: bool, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let t = level(s)?;
    let g = gammas(s, t)?;
    let term = twist::basis_product(t, p, q)?;
    let value = match &g {
        Gammas::Symbolic => None,
        Gammas::Concrete(g) => Some(term.evaluate(g)?),
    };
    match format(s, Format::Text)? {
        Format::Json => {
            let mut v = json!({
                "t": t, "p": p, "q": q,
                "sign": term.sign.to_i8(),
                "gamma_mask": term.gamma_mask,
                "monomial": term.monomial().to_string(),
                "index": term.index,
            });
            if let Some(c) = &value {
                v["value"] = json!(c.to_string());
            }
            if verbose {
                v["theta"] = json!(twist::theta_chain(t, p, q)?.to_string());
            }
            writeln!(out, "{v}")?;
        }
        Format::Csv => {
            writeln!(out, "p,q,sign,monomial,index")?;
            writeln!(out, "{p},{q},{},{},{}", term.sign.to_i8(), term.monomial(), term.index)?;
        }
        Format::Text => {
            if verbose {
                writeln!(out, "{}", twist::theta_chain(t, p, q)?)?;
                let mask = twist::gamma_mask(twist::BasisIndex::new(p, t)?, twist::BasisIndex::new(q, t)?)?;
                writeln!(out, "f{p} AND f{q} = {mask:0w$b} -> {}", term.monomial(), w = t.max(1) as usize)?;
                writeln!(out, "f{p} XOR f{q} = {:0w$b} -> f{}", term.index, term.index, w = t.max(1) as usize)?;
            }
            match value {
                Some(c) => writeln!(out, "{term} = {c} * f{}", term.index)?,
                None => writeln!(out, "{term}")?,
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_table(s: &Shared, stream: bool, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let t = level(s)?;
    let g = gammas(s, t)?;
    let f = format(s, Format::Text)?;
    if stream {
        table::stream_table(t, &g, f, out)?;
        return Ok(EXIT_OK);
    }
    let cap = table_cap()?;
    let table = if t <= MAX_EXHAUSTIVE_LEVEL {
        MultiplicationTable::from_oracle(t, g, cap)?
    } else {
        MultiplicationTable::from_twist(t, g, cap)?
    };
    out.write_all(table.render(f).as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    s: &Shared,
    mode: &str,
    n: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let t = level(s)?;
    let g = gammas(s, t)?;
    let mode = match mode {
        "exhaustive" => Mode::Exhaustive,
        "random" => Mode::Random { n, seed: s.seed },
        other => return Err(invalid(format!("unknown mode {other:?} (exhaustive, random)"))),
    };
    let report = verify::verify_twist_vs_oracle(t, &g, mode)?;
    match format(s, Format::Json)? {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Text => {
            writeln!(out, "{}", report.summary())?;
            for d in &report.disagreements {
                writeln!(out, "f{} f{}: sign map {} but doubling gives {}", d.p, d.q, d.twist, d.oracle)?;
            }
            for (p, q) in &report.multi_term {
                writeln!(out, "f{p} f{q}: doubling product is not a single term")?;
            }
        }
        Format::Csv => {
            writeln!(out, "p,q,twist,oracle")?;
            for d in &report.disagreements {
                writeln!(out, "{},{},{},{}", d.p, d.q, d.twist, d.oracle)?;
            }
        }
    }
    writeln!(err, "{}", report.summary())?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

/// Parses an element of `Q(sqrt(d))`: `sqrt`, `-sqrt`, `3/2*sqrt`, `a,b` for
/// `a + b sqrt(d)`, or a rational.
pub fn parse_quad(field: QuadField, s: &str) -> Result<QuadExt> {
    let s = s.trim();
    let zero = || Rational::from_integer(0.into());
    if let Some(coeff) = s.strip_suffix("sqrt") {
        let b = match coeff.trim_end_matches('*') {
            "" | "+" => Rational::from_integer(1.into()),
            "-" => Rational::from_integer((-1).into()),
            c => parse_rational(c)?,
        };
        return Ok(field.element(zero(), b));
    }
    if let Some((a, b)) = s.split_once(',') {
        return Ok(field.element(parse_rational(a)?, parse_rational(b)?));
    }
    Ok(field.element(parse_rational(s)?, zero()))
}

fn cmd_flex(
    s: &Shared,
    d: i64,
    gamma: &str,
    doubled: bool,
    delta: Option<&str>,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let field = QuadField::new(d)?;
    let gamma = parse_quad(field, gamma)?;
    let h = NonAssocQuaternion::new(d, gamma.clone())?;
    let (alg, names, delta) = if doubled {
        let delta = match delta {
            Some(v) => parse_quad(field, v)?,
            None => gamma.clone(),
        };
        (h.doubled(delta.clone())?, vec!["1", "f2", "f4", "f6"], Some(delta))
    } else {
        (h.algebra().clone(), vec!["1", "j"], None)
    };
    let show = |x: &Element<QuadExt>| nonassoc::display_e_view(x, &names);
    let report = nonassoc::check_flexible_basis_law(&alg)?;
    let basis_name = |i: usize| match (doubled, i) {
        (_, 0) => "1".to_string(),
        (false, 1) => "i".into(),
        (false, 2) => "j".into(),
        (false, 3) => "k".into(),
        (_, i) => format!("f{i}"),
    };
    let witnesses: Vec<(usize, nonassoc::ThirdPower<QuadExt>)> = (1..alg.rational_dim().unwrap_or(0))
        .map(|i| Ok((i, nonassoc::check_third_power_assoc(&alg, &alg.rational_basis(i)?)?)))
        .collect::<Result<_>>()?;
    match format(s, Format::Text)? {
        Format::Json => {
            let v = json!({
                "d": d,
                "gamma": gamma.to_string(),
                "delta": delta.as_ref().map(|x| x.to_string()),
                "pairs_checked": report.pairs_checked.len(),
                "pairs_passed": report.passed(),
                "failures": report.failures.iter().map(|f| json!({
                    "i": f.i, "k": f.k, "left": show(&f.left), "right": show(&f.right),
                })).collect::<Vec<_>>(),
                "third_power": witnesses.iter().map(|(i, w)| json!({
                    "x": basis_name(*i), "x_x2": show(&w.x_x2), "x2_x": show(&w.x2_x), "equal": w.equal,
                })).collect::<Vec<_>>(),
            });
            writeln!(out, "{v}")?;
        }
        Format::Text | Format::Csv => {
            match &delta {
                Some(delta) => writeln!(out, "H = E + E j over E = Q(sqrt({d})), gamma = {gamma}, doubled with delta = {delta}")?,
                None => writeln!(out, "H = E + E j over E = Q(sqrt({d})), gamma = {gamma}")?,
            }
            writeln!(out, "flexibility law on basis pairs: {}/{} pairs pass", report.passed(), report.pairs_checked.len())?;
            for f in &report.failures {
                let (a, b) = (basis_name(f.i), basis_name(f.k));
                writeln!(out, "  {a}({b}{a}) = {} but ({a}{b}){a} = {}", show(&f.left), show(&f.right))?;
            }
            writeln!(out, "third powers:")?;
            for (i, w) in &witnesses {
                let x = basis_name(*i);
                let rel = if w.equal { "=" } else { "≠" };
                writeln!(out, "  {x}*{x}^2 = {} {rel} {x}^2*{x} = {}", show(&w.x_x2), show(&w.x2_x))?;
            }
        }
    }
    Ok(if report.holds() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_zero_divisor(
    s: &Shared,
    family: &str,
    budget: Option<u64>,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let t = level(s)?;
    let family: Family = family.parse()?;
    let Gammas::Concrete(g) = gammas(s, t)? else {
        return Err(invalid("zero-divisor search needs concrete --gammas"));
    };
    let alg = CdAlgebra::rational_tower(&g)?;
    let search = find_zero_divisor(&alg, family, budget, s.seed)?;
    match format(s, Format::Text)? {
        Format::Json => {
            let pair = search
                .pair
                .as_ref()
                .map(|(x, y)| json!({"x": x.to_string(), "y": y.to_string()}));
            writeln!(out, "{}", json!({"t": t, "found": pair, "tried": search.tried, "exhausted": search.exhausted}))?;
        }
        Format::Text | Format::Csv => match &search.pair {
            Some((x, y)) => {
                writeln!(out, "zero divisors found after {} candidates", search.tried)?;
                writeln!(out, "x = {x}")?;
                writeln!(out, "y = {y}")?;
                writeln!(out, "x*y = 0")?;
            }
            None if search.exhausted => {
                writeln!(out, "none found: structured family exhausted ({} products)", search.tried)?
            }
            None => writeln!(out, "none found within budget ({} candidates)", search.tried)?,
        },
    }
    Ok(EXIT_OK)
}

/// Timing of `n` random basis products at level `t`.
#[derive(Clone, Copy, Debug)]
pub struct BenchResult {
    pub t: u32,
    pub n: u64,
    pub seconds: f64,
    /// Xor of all result indices and signs, so the work cannot be skipped.
    pub checksum: u64,
}

impl BenchResult {
    pub fn rate(&self) -> f64 {
        self.n as f64 / self.seconds.max(1e-9)
    }
}

/// Times `n` seeded random products `f_p f_q` at level `t` through the sign map.
pub fn bench(t: u32, n: u64, seed: u64) -> Result<BenchResult> {
    if t == 0 || t > 62 {
        return Err(Error::InvalidParameter(format!("bench needs 1 <= t <= 62, got {t}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1u64 << t;
    let pairs: Vec<(u64, u64)> = (0..n).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim))).collect();
    let start = Instant::now();
    let mut checksum = 0u64;
    for &(p, q) in &pairs {
        let term = twist::basis_product_unchecked(t, p, q);
        checksum ^= term.index.rotate_left(term.sign.to_i8() as u32 & 7) ^ term.gamma_mask;
    }
    let seconds = start.elapsed().as_secs_f64();
    Ok(BenchResult { t, n, seconds, checksum: std::hint::black_box(checksum) })
}

fn cmd_bench(s: &Shared, n: u64, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let t = level(s)?;
    let r = bench(t, n, s.seed)?;
    match format(s, Format::Text)? {
        Format::Json => writeln!(
            out,
            "{}",
            json!({"t": t, "n": n, "seed": s.seed, "seconds": r.seconds, "rate": r.rate(), "checksum": r.checksum})
        )?,
        Format::Text | Format::Csv => writeln!(
            out,
            "t={t} n={n} seed={} elapsed={:.3}s rate={:.3e} products/s checksum={:016x}",
            s.seed,
            r.seconds,
            r.rate(),
            r.checksum
        )?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cdtwist").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn mul_examples() {
        assert_eq!(run_str(&["mul", "--t", "3", "--p", "3", "--q", "5"]).1, "+g1 * f6\n");
        assert_eq!(run_str(&["mul", "--t", "4", "--p", "9", "--q", "14"]).1, "-g4 * f7\n");
        assert_eq!(run_str(&["mul", "--t", "3", "--p", "0", "--q", "5"]).1, "+1 * f5\n");
        let (code, out, _) = run_str(&["mul", "--t", "2", "--p", "3", "--q", "3", "--gammas", "-1,2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "-g1*g2 * f0 = 2 * f0\n");
    }

    #[test]
    fn mul_verbose_prints_chain() {
        let (_, out, _) = run_str(&["mul", "--t", "3", "--p", "3", "--q", "5", "--verbose"]);
        assert!(out.starts_with("theta3(3,5) = -theta2(3,1) = +theta1(1,1) = +1\n"), "{out}");
        assert!(out.ends_with("+g1 * f6\n"));
    }

    #[test]
    fn invalid_input_exits_2() {
        assert_eq!(run_str(&["mul", "--t", "3", "--p", "8", "--q", "1"]).0, 2);
        assert_eq!(run_str(&["mul", "--p", "1", "--q", "1"]).0, 2);
        assert_eq!(run_str(&["mul", "--t", "2", "--p", "1", "--q", "1", "--gammas", "1,0"]).0, 2);
        assert_eq!(run_str(&["nonsense"]).0, 2);
        assert_eq!(run_str(&["table", "--t", "2", "--format", "xml"]).0, 2);
        assert_eq!(run_str(&["flex", "--d", "2", "--gamma", "3"]).0, 2);
        assert_eq!(run_str(&["flex", "--d", "4"]).0, 2);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, err) = run_str(&["verify", "--t", "4", "--mode", "exhaustive"]);
        assert_eq!(code, 0);
        assert!(err.contains("256 pairs, 0 disagreements"));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(run_str(&["verify", "--t", "7", "--mode", "exhaustive"]).0, 2);
    }

    #[test]
    fn parse_quad_forms() {
        let k = QuadField::new(2).unwrap();
        assert_eq!(parse_quad(k, "sqrt").unwrap(), k.sqrt());
        assert_eq!(parse_quad(k, "-sqrt").unwrap(), k.from_ints(0, -1));
        assert_eq!(parse_quad(k, "3*sqrt").unwrap(), k.from_ints(0, 3));
        assert_eq!(parse_quad(k, "1,-2").unwrap(), k.from_ints(1, -2));
        assert_eq!(parse_quad(k, "5").unwrap(), k.from_ints(5, 0));
        assert!(parse_quad(k, "x").is_err());
    }
}
