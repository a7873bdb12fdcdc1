//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 resource limit,
//! 4 a checked identity failed.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::braid::{corollary_delta_closed_form, delta_interval, face_weight, faces_below_chamber, Permutation};
use crate::error::Error;
use crate::gram::{self, block_determinant, gram_block, posdef_check, zagier_check, DetMode, HermitianPoint};
use crate::quon::{braket, QuonWord};
use crate::sample;
use crate::verify::{self, Section, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_BREACH: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "quon", version, about = "Exact Gram blocks of the multiparametric quon algebra")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Evaluated,
}

#[derive(Debug, Args)]
pub struct Randomized {
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vacuum expectation ⟨0| a_{left(s)}…a_{left(1)} a†_{right(1)}…a†_{right(t)} |0⟩.
    Braket {
        #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
        left: Word,
        #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
        right: Word,
    },
    /// The Gram block M_I.
    Gram {
        #[arg(long, value_parser = parse_word)]
        multiset: Word,
    },
    /// det M_I against the closed form (sets) or for nonvanishing (multisets).
    Det {
        #[arg(long, alias = "multiset", value_parser = parse_word)]
        set: Word,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[command(flatten)]
        random: Randomized,
    },
    /// Denominators of M_[n]⁻¹ at q[i][j] = q against the product bound.
    Zagier {
        #[arg(long)]
        n: usize,
        /// Allow n = 5 (minutes).
        #[arg(long)]
        extended: bool,
    },
    /// Leading principal minors of M_I at random Hermitian points.
    Posdef {
        #[arg(long, value_parser = parse_word)]
        multiset: Word,
        #[command(flatten)]
        random: Randomized,
    },
    /// Literal interval product Δ against the closed product.
    Delta {
        #[arg(long)]
        n: usize,
    },
    /// Runs the self-check suite.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Allow max-n = 5.
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        random: Randomized,
    },
}

/// A comma-separated word of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(pub Vec<u32>);

fn parse_word(s: &str) -> Result<Word, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Word(Vec::new()));
    }
    s.split(',')
        .map(|t| match t.trim().parse::<u32>() {
            Ok(0) | Err(_) => Err(format!("`{t}` is not a positive integer")),
            Ok(v) => Ok(v),
        })
        .collect::<Result<_, _>>()
        .map(Word)
}

fn csv(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// A finished command: text, structured document and whether every
/// checked identity held.
pub struct Report {
    pub text: String,
    pub command: &'static str,
    pub config: Value,
    pub results: Vec<Value>,
    pub verdict: bool,
}

impl Report {
    pub fn structured(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "verdict": if self.verdict { "PASS" } else { "FAIL" },
        })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::Parse(_)
        | Error::Invalid(_)
        | Error::LengthMismatch(..)
        | Error::SizeMismatch(..)
        | Error::SampleCountTooSmall { .. }
        | Error::NotHermitian(_)
        | Error::DiscViolation(_)
        | Error::MissingAssignment(_) => EXIT_USAGE,
        _ => EXIT_BREACH,
    }
}

/// Runs `command`; `progress` receives per-check timing lines.
pub fn execute(command: &Command, mut progress: impl FnMut(&str)) -> crate::Result<Report> {
    match command {
        Command::Braket { left, right } => {
            let w = QuonWord::new(left.0.clone(), right.0.clone())?;
            let v = braket(&w).to_string();
            Ok(Report {
                text: format!("{v}\n"),
                command: "braket",
                config: json!({"left": left.0, "right": right.0}),
                results: vec![json!({"value": v})],
                verdict: true,
            })
        }
        Command::Gram { multiset } => {
            let b = gram_block(&multiset.0)?;
            let rows: Vec<Vec<String>> =
                (0..b.dim()).map(|r| b.matrix.row(r).iter().map(ToString::to_string).collect()).collect();
            let basis: Vec<String> = b.basis.iter().map(|w| csv(w)).collect();
            Ok(Report {
                text: format!("{b}\n"),
                command: "gram",
                config: json!({"multiset": multiset.0}),
                results: vec![json!({"multiset": b.multiset, "basis": basis, "matrix": rows})],
                verdict: true,
            })
        }
        Command::Det { set, mode, random } => det(&set.0, *mode, random),
        Command::Zagier { n, extended } => {
            if *n > verify::MAX_N && !extended {
                return Err(Error::ResourceLimit { what: "n for zagier without --extended", got: *n, limit: verify::MAX_N });
            }
            let r = zagier_check(*n)?;
            let dens: Vec<Value> =
                r.denominators.iter().map(|(d, c)| json!({"denominator": d.to_string(), "count": c})).collect();
            Ok(Report {
                text: format!("{r}\n"),
                command: "zagier",
                config: json!({"n": n, "extended": extended}),
                results: vec![json!({
                    "determinant": gram::one_minus_q_product_string(&r.determinant_factors),
                    "bound": r.bound.to_string(),
                    "denominators": dens,
                    "failures": r.failures,
                    "verdict": if r.verdict { "ALL-DIVIDE" } else { "NOT-ALL-DIVIDE" },
                })],
                verdict: r.verdict,
            })
        }
        Command::Posdef { multiset, random } => posdef(&multiset.0, random),
        Command::Delta { n } => delta(*n),
        Command::Verify { max_n, extended, random } => {
            let config = VerifyConfig { max_n: *max_n, extended: *extended, seed: random.seed, samples: random.samples };
            let mut text = String::new();
            let mut results = Vec::new();
            let mut section = None;
            let all = verify::run(&config, |r| {
                progress(&format!("{:>8.2}s  {}", r.elapsed.as_secs_f64(), r.name));
                if section != Some(r.section) {
                    section = Some(r.section);
                    match r.section {
                        Section::Deterministic => text.push_str("deterministic section\n"),
                        Section::Randomized => {
                            let _ = writeln!(text, "randomized section (seed {}, samples {})", config.seed, config.samples);
                        }
                    }
                }
                let status = if r.pass { "PASS" } else { "FAIL" };
                let detail = if r.detail.is_empty() { String::new() } else { format!("  [{}]", r.detail) };
                let _ = writeln!(text, "{status}  {}{detail}", r.name);
                results.push(serde_json::to_value(r).expect("serializable"));
            })?;
            let failed = all.iter().filter(|r| !r.pass).count();
            let verdict = failed == 0;
            let _ = writeln!(text, "summary: {} checks, {failed} failed", all.len());
            Ok(Report { text, command: "verify", config: serde_json::to_value(config).expect("serializable"), results, verdict })
        }
    }
}

fn det(multiset: &[u32], mode: Mode, random: &Randomized) -> crate::Result<Report> {
    let mode = match mode {
        Mode::Symbolic => DetMode::Symbolic,
        Mode::Evaluated => DetMode::Evaluated,
    };
    let r = block_determinant(multiset, mode, random.samples, random.seed)?;
    let mut t = String::new();
    let _ = writeln!(t, "multiset: {}", csv(&r.multiset));
    let _ = writeln!(t, "mode: {}", if mode == DetMode::Symbolic { "symbolic" } else { "evaluated" });
    if let Some(cf) = &r.closed_form {
        let _ = writeln!(t, "closed form: {cf}");
    }
    if let Some(e) = &r.expanded {
        let _ = writeln!(t, "closed form expanded: {e}");
    }
    if let Some(d) = &r.symbolic {
        let _ = writeln!(t, "determinant: {d}");
    }
    if !r.samples.is_empty() {
        let _ = writeln!(t, "seed: {}", r.seed);
        let _ = writeln!(t, "samples: {}", r.samples.len());
        for (k, s) in r.samples.iter().enumerate() {
            let expected = s.expected.as_ref().map_or(String::new(), |e| format!("  expected {e}"));
            let _ = writeln!(t, "  {:>3}  {}  det {}{expected}", k + 1, if s.ok { "ok " } else { "BAD" }, s.value);
        }
    }
    let _ = writeln!(t, "verdict: {}", if r.verdict { "MATCH" } else { "MISMATCH" });
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|s| json!({"value": s.value.to_string(), "expected": s.expected.as_ref().map(ToString::to_string), "ok": s.ok}))
        .collect();
    Ok(Report {
        text: t,
        command: "det",
        config: json!({"set": multiset, "mode": if mode == DetMode::Symbolic { "symbolic" } else { "evaluated" },
                       "samples": random.samples, "seed": random.seed}),
        results: vec![json!({
            "closed_form": r.closed_form.as_ref().map(ToString::to_string),
            "expanded": r.expanded.as_ref().map(ToString::to_string),
            "determinant": r.symbolic.as_ref().map(ToString::to_string),
            "points": samples,
            "verdict": if r.verdict { "MATCH" } else { "MISMATCH" },
        })],
        verdict: r.verdict,
    })
}

fn posdef(multiset: &[u32], random: &Randomized) -> crate::Result<Report> {
    if random.samples < gram::MIN_SAMPLES {
        return Err(Error::SampleCountTooSmall { got: random.samples, min: gram::MIN_SAMPLES });
    }
    let mut rng = sample::rng(random.seed);
    let mut t = String::new();
    let _ = writeln!(t, "multiset: {}", csv(multiset));
    let _ = writeln!(t, "seed: {}", random.seed);
    let _ = writeln!(t, "samples: {}", random.samples);
    let mut results = Vec::new();
    let mut all = true;
    for k in 0..random.samples {
        let p = HermitianPoint::sample(multiset, &mut rng);
        let r = posdef_check(multiset, &p)?;
        all &= r.verdict;
        let minors: Vec<String> = r.minors.iter().map(ToString::to_string).collect();
        let _ = writeln!(t, "point {}: {}", k + 1, if r.verdict { "positive" } else { "NOT POSITIVE" });
        for (v, z) in p.point() {
            if v.i <= v.j {
                let _ = writeln!(t, "  {v} = {z}");
            }
        }
        for (j, m) in minors.iter().enumerate() {
            let _ = writeln!(t, "  minor {:>3}: {m}", j + 1);
        }
        let point: serde_json::Map<String, Value> =
            p.point().iter().map(|(v, z)| (v.to_string(), Value::String(z.to_string()))).collect();
        results.push(json!({"point": point, "minors": minors, "positive": r.verdict}));
    }
    let _ = writeln!(t, "verdict: {}", if all { "POSITIVE-DEFINITE" } else { "NOT-POSITIVE-DEFINITE" });
    Ok(Report {
        text: t,
        command: "posdef",
        config: json!({"multiset": multiset, "samples": random.samples, "seed": random.seed}),
        results,
        verdict: all,
    })
}

fn delta(n: usize) -> crate::Result<Report> {
    if n < 2 {
        return Err(Error::Invalid("delta needs n ≥ 2".into()));
    }
    let sigma = Permutation::identity(n);
    let faces = faces_below_chamber(&sigma)?;
    let literal = delta_interval(&sigma)?;
    let literal_q = literal.specialize_uniform()?;
    let closed = corollary_delta_closed_form(n);
    let (lf, _) = gram::factor_one_minus_q_powers(&literal_q);
    let (cf, _) = gram::factor_one_minus_q_powers(&closed);
    let mut t = String::new();
    let _ = writeln!(t, "n: {n}");
    let _ = writeln!(t, "faces between O and C_{sigma}: {}", faces.len());
    for f in &faces {
        let _ = writeln!(t, "  {f}  weight {}", face_weight(f));
    }
    let _ = writeln!(t, "literal: {}", gram::one_minus_q_product_string(&lf));
    let _ = writeln!(t, "closed form: {}", gram::one_minus_q_product_string(&cf));
    let same = literal_q == closed;
    let extra = if same {
        None
    } else {
        let (quot, rem) = literal_q.div_rem(&closed)?;
        Some(if rem.is_zero() {
            gram::one_minus_q_product_string(&gram::factor_one_minus_q_powers(&quot).0)
        } else {
            format!("({literal_q}) / ({closed})")
        })
    };
    match &extra {
        None => t.push_str("AGREE\n"),
        Some(e) => {
            let _ = writeln!(t, "DISCREPANCY: literal = closed form * {e}");
        }
    }
    let face_rows: Vec<Value> =
        faces.iter().map(|f| json!({"face": f.to_string(), "weight": face_weight(f).to_string()})).collect();
    Ok(Report {
        text: t,
        command: "delta",
        config: json!({"n": n}),
        results: vec![json!({
            "faces": face_rows,
            "literal": literal.to_string(),
            "literal_uniform": gram::one_minus_q_product_string(&lf),
            "closed_form": gram::one_minus_q_product_string(&cf),
            "discrepancy": extra,
        })],
        verdict: true,
    })
}

fn configure_workers() {
    if let Some(n) = std::env::var("QUON_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Entry point of the `quon` binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    configure_workers();
    let report = match execute(&cli.command, |line| eprintln!("{line}")) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&report.structured()).expect("serializable");
            s.push('\n');
            s
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if report.verdict { EXIT_OK } else { EXIT_BREACH }
}
