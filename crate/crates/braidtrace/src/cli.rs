//! Command-line interface.
//!
//! Subcommands cover the trace machinery (`trace`, `trace0`, `markov`,
//! `homfly`, `hecke-expand`), representation data (`char`, `degrees`,
//! `molien`, `fourier`), braid/slope utilities (`normal-form`,
//! `slope-classify`), Cherednik-algebra characters (`periodic`, `verma`,
//! `omega`, `lchar`, `gors-check`), finite-field counts (`ffcount`,
//! `springer-decompose`), and a `selftest` battery over the golden corpus.
//!
//! Output is deterministic: text renders characters in table order, JSON
//! uses sorted keys. Exit codes: 0 success, 2 validation error (also used
//! by the argument parser), 3 internal assertion failure.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::coxeter::{BraidWord, CoxeterSystem, CoxeterType};
use crate::exactmath::{ATRat, HalfLaurent, RFunc, Rat, Ring};
use crate::ffcount::{
    count_chains, count_x0, springer_decompose, verify_kalman, verify_virtual, ChainCounts, Fiber,
    Group,
};
use crate::hecke::braid_image;
use crate::reptheory::chartable::{CharLabel, CharTable};
use crate::reptheory::molien::molien_char;
use crate::traces::TraceEngine;
use crate::{daha, validation, Error, Result};

/// Print a line to stdout, exiting quietly if the pipe has closed.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "braidtrace",
    version,
    about = "Exact braid invariants for finite Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SysOpts {
    /// Coxeter type: A1..A8, I2(m) with 3 <= m <= 12, BC2, G2
    #[arg(long = "type", value_name = "TYPE")]
    ty: String,
    /// Directory with extra data tables (overrides BRAIDTRACE_DATA_DIR)
    #[arg(long, value_name = "DIR")]
    data_dir: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BraidOpt {
    /// Braid word as whitespace-separated signed generator indices, e.g. "1 -2 1"
    #[arg(long, value_name = "WORD")]
    braid: String,
}

#[derive(Args)]
struct SlopeOpt {
    /// Rational slope p/q (or an integer)
    #[arg(long, value_name = "P/Q")]
    slope: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Virtual-character-valued Hecke trace of a braid
    Trace {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        braid: BraidOpt,
    },
    /// Normalized trace, with rational-function coefficients
    Trace0 {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        braid: BraidOpt,
    },
    /// Markov trace of a braid, as a rational function of a and q
    Markov {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        braid: BraidOpt,
    },
    /// HOMFLY series of the braid closure (type A only)
    Homfly {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        braid: BraidOpt,
    },
    /// Expansion of a braid in the sigma-basis of the Hecke algebra
    HeckeExpand {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        braid: BraidOpt,
    },
    /// Ordinary character table of the reflection group
    Char {
        #[command(flatten)]
        sys: SysOpts,
    },
    /// Fake degrees, generic degrees, Schur elements, and invariants
    Degrees {
        #[command(flatten)]
        sys: SysOpts,
    },
    /// Graded multiplicity of each character in the symmetric algebra
    Molien {
        #[command(flatten)]
        sys: SysOpts,
    },
    /// Fourier pairing matrix
    Fourier {
        #[command(flatten)]
        sys: SysOpts,
    },
    /// Left-greedy normal form of a positive braid
    NormalForm {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        braid: BraidOpt,
    },
    /// Classify a slope as singular / cuspidal / regular
    SlopeClassify {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        slope: SlopeOpt,
    },
    /// Trace of any periodic braid of the given regular slope
    Periodic {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        slope: SlopeOpt,
    },
    /// Graded character of the Verma module over a lowest weight
    Verma {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        slope: SlopeOpt,
        /// Lowest-weight character label, e.g. "[2,1]" or "phi_1"
        #[arg(long = "char", value_name = "LABEL")]
        character: String,
        /// Truncate coefficients to a power series up to q^K
        #[arg(long, value_name = "K")]
        order: Option<i64>,
    },
    /// Graded character of the virtual module Omega at a slope
    Omega {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        slope: SlopeOpt,
        /// Truncate coefficients to a power series up to q^K
        #[arg(long, value_name = "K")]
        order: Option<i64>,
    },
    /// Graded character of the finite-dimensional simple at a cuspidal slope
    Lchar {
        #[command(flatten)]
        sys: SysOpts,
        #[command(flatten)]
        slope: SlopeOpt,
        /// Truncate coefficients to a power series up to q^K
        #[arg(long, value_name = "K")]
        order: Option<i64>,
    },
    /// Compare the (strands, power) torus-knot HOMFLY with the graded character
    GorsCheck {
        /// Number of strands n (braid group of A_{n-1})
        #[arg(long, value_name = "N")]
        strands: usize,
        /// Power m of the torus braid, coprime to n
        #[arg(long, value_name = "M")]
        power: usize,
    },
    /// Decompose a normalized trace into total Springer representations
    SpringerDecompose {
        #[command(flatten)]
        sys: SysOpts,
        /// Braid whose normalized trace is decomposed
        #[arg(long, value_name = "WORD", conflicts_with = "input")]
        braid: Option<String>,
        /// JSON file {label: coefficient} as produced by `trace0 --format json`
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Brute-force point counts of chain varieties over F_q
    Ffcount {
        /// Matrix group: SL2, GL2, SL3, GL3
        #[arg(long, value_name = "G")]
        group: String,
        /// Prime field size
        #[arg(long, value_name = "Q")]
        q: u64,
        #[command(flatten)]
        braid: BraidOpt,
        /// Which fiber to count
        #[arg(long, value_enum, default_value = "unipotent")]
        fiber: FiberArg,
        /// Output format
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the built-in golden-value checks
    Selftest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FiberArg {
    /// Pairs (chain, compatible group element): all of G(beta)
    All,
    /// Closed chains: the fiber over the identity
    Over1,
    /// Fibers over every unipotent class
    Unipotent,
    /// The affine chart X0 (Br2 only)
    X0,
    /// Check the trace identity against per-class counts (SL2/SL3)
    Virtual,
    /// Check |X(beta.pi)| = |U(beta)|
    Kalman,
}

/// Parse CLI arguments, dispatch, and map errors to exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(Error::Validation(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Error::Internal(m)) => {
            eprintln!("internal error: {m}");
            3
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Trace { sys, braid } => with_engine(&sys, |eng| {
            let beta = parse_braid(&braid.braid, eng.sys)?;
            let tr = eng.rw_trace(&beta)?;
            let pairs = label_pairs(&eng.table, tr.iter().map(|c| c.to_string_q()));
            emit_labeled(&pairs, sys.format);
            Ok(())
        }),
        Cmd::Trace0 { sys, braid } => with_engine(&sys, |eng| {
            let beta = parse_braid(&braid.braid, eng.sys)?;
            let tr = eng.rw_trace0(&beta)?;
            let pairs = label_pairs(&eng.table, tr.iter().map(|c| c.to_string_q()));
            emit_labeled(&pairs, sys.format);
            Ok(())
        }),
        Cmd::Markov { sys, braid } => with_engine(&sys, |eng| {
            let beta = parse_braid(&braid.braid, eng.sys)?;
            emit_at(&eng.markov_trace(&beta)?, sys.format)
        }),
        Cmd::Homfly { sys, braid } => with_engine(&sys, |eng| {
            let beta = parse_braid(&braid.braid, eng.sys)?;
            emit_at(&eng.homfly(&beta)?, sys.format)
        }),
        Cmd::HeckeExpand { sys, braid } => {
            let cox = system(&sys)?;
            let beta = parse_braid(&braid.braid, &cox)?;
            let img = braid_image(&cox, &beta);
            let mut pairs: Vec<(String, String)> = img
                .terms()
                .map(|(w, c)| (c.to_string_q(), cox.describe(w)))
                .collect();
            pairs.sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));
            emit_labeled(&pairs, sys.format);
            Ok(())
        }
        Cmd::Char { sys } => {
            let cox = system(&sys)?;
            let table = CharTable::new(&cox);
            let class_names: Vec<String> = table
                .classes()
                .iter()
                .map(|c| cox.describe(c.rep))
                .collect();
            match sys.format {
                Format::Text => {
                    let sizes: Vec<String> = table
                        .classes()
                        .iter()
                        .map(|c| c.size.to_string())
                        .collect();
                    outln!("classes: {}", class_names.join("  "));
                    outln!("sizes:   {}", sizes.join("  "));
                    for (i, lab) in table.labels().iter().enumerate() {
                        let vals: Vec<String> = (0..table.classes().len())
                            .map(|c| format!("{:?}", table.value(i, c)))
                            .collect();
                        outln!("{}: {}", lab, vals.join("  "));
                    }
                }
                Format::Json => {
                    let mut chars = Map::new();
                    for (i, lab) in table.labels().iter().enumerate() {
                        let vals: Vec<Value> = (0..table.classes().len())
                            .map(|c| Value::String(format!("{:?}", table.value(i, c))))
                            .collect();
                        chars.insert(lab.to_string(), Value::Array(vals));
                    }
                    let out = json!({
                        "classes": class_names,
                        "sizes": table.classes().iter().map(|c| c.size).collect::<Vec<_>>(),
                        "chars": chars,
                    });
                    outln!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(())
        }
        Cmd::Degrees { sys } => with_engine(&sys, |eng| {
            match sys.format {
                Format::Text => {
                    for d in &eng.bundle {
                        outln!(
                            "{}: dim={} feg={} deg={:?} a={} A={} c={}",
                            d.label,
                            d.dim,
                            d.feg.to_string_q(),
                            d.deg,
                            d.a_inv,
                            d.cap_a,
                            d.content
                        );
                    }
                }
                Format::Json => {
                    let mut out = Map::new();
                    for d in &eng.bundle {
                        out.insert(
                            d.label.to_string(),
                            json!({
                                "dim": d.dim,
                                "fake_degree": d.feg.to_string_q(),
                                "generic_degree": format!("{:?}", d.deg),
                                "schur": format!("{:?}", d.schur),
                                "a": d.a_inv,
                                "A": d.cap_a,
                                "content": d.content.to_string(),
                            }),
                        );
                    }
                    outln!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(())
        }),
        Cmd::Molien { sys } => with_engine(&sys, |eng| {
            let rows: Result<Vec<RFunc>> = (0..eng.table.num_chars())
                .map(|i| molien_char(eng.sys, &eng.table, i))
                .collect();
            let pairs = label_pairs(&eng.table, rows?.iter().map(|f| f.to_string_q()));
            emit_labeled(&pairs, sys.format);
            Ok(())
        }),
        Cmd::Fourier { sys } => with_engine(&sys, |eng| {
            let four = eng.fourier()?;
            let labels: Vec<String> = eng.table.labels().iter().map(|l| l.to_string()).collect();
            match sys.format {
                Format::Text => {
                    for (i, li) in labels.iter().enumerate() {
                        let row: Vec<String> =
                            (0..four.size()).map(|j| four.entry(i, j).to_string()).collect();
                        outln!("{}: {}", li, row.join("  "));
                    }
                }
                Format::Json => {
                    let matrix: Vec<Vec<String>> = (0..four.size())
                        .map(|i| (0..four.size()).map(|j| four.entry(i, j).to_string()).collect())
                        .collect();
                    let out = json!({ "labels": labels, "matrix": matrix });
                    outln!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(())
        }),
        Cmd::NormalForm { sys, braid } => {
            let cox = system(&sys)?;
            let beta = parse_braid(&braid.braid, &cox)?;
            let factors = cox.positive_normal_form(&beta)?;
            let words: Vec<String> = factors.iter().map(|&w| cox.describe(w)).collect();
            match sys.format {
                Format::Text => outln!("{}", words.join(" | ")),
                Format::Json => outln!("{}", serde_json::to_string(&words).unwrap()),
            }
            Ok(())
        }
        Cmd::SlopeClassify { sys, slope } => {
            let cox = system(&sys)?;
            let nu = parse_slope(&slope.slope)?;
            let cls = cox.slope_class(&nu);
            let hit: Vec<usize> = cls.i_nu.iter().map(|&i| cox.degrees()[i]).collect();
            match sys.format {
                Format::Text => {
                    outln!("slope {nu}: degrees hit {hit:?}");
                    outln!(
                        "singular={} cuspidal={} regular={} regular_elliptic={}",
                        cls.singular, cls.cuspidal, cls.regular, cls.regular_elliptic
                    );
                }
                Format::Json => {
                    let out = json!({
                        "slope": nu.to_string(),
                        "degrees_hit": hit,
                        "singular": cls.singular,
                        "cuspidal": cls.cuspidal,
                        "regular": cls.regular,
                        "regular_elliptic": cls.regular_elliptic,
                    });
                    outln!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(())
        }
        Cmd::Periodic { sys, slope } => with_engine(&sys, |eng| {
            let nu = parse_slope(&slope.slope)?;
            let tr = daha::periodic_trace(eng, &nu)?;
            let pairs = label_pairs(&eng.table, tr.iter().map(|c| c.to_string_q()));
            emit_labeled(&pairs, sys.format);
            Ok(())
        }),
        Cmd::Verma {
            sys,
            slope,
            character,
            order,
        } => with_engine(&sys, |eng| {
            let nu = parse_slope(&slope.slope)?;
            let lab = CharLabel::parse(&character, eng.sys.coxeter_type())?;
            let idx = eng
                .table
                .char_index(&lab)
                .ok_or_else(|| Error::Validation(format!("unknown character {character}")))?;
            let gc = daha::verma_char(eng, &nu, idx)?;
            emit_graded(eng, &gc, sys.format, order)
        }),
        Cmd::Omega { sys, slope, order } => with_engine(&sys, |eng| {
            let nu = parse_slope(&slope.slope)?;
            let gc = daha::omega_char(eng, &nu)?;
            emit_graded(eng, &gc, sys.format, order)
        }),
        Cmd::Lchar { sys, slope, order } => with_engine(&sys, |eng| {
            let nu = parse_slope(&slope.slope)?;
            let gc = daha::cuspidal_l_char(eng, &nu)?;
            emit_graded(eng, &gc, sys.format, order)
        }),
        Cmd::GorsCheck { strands, power } => {
            if daha::gors_check(strands, power)? {
                outln!("ok: torus ({strands},{power}) matches the graded character");
                Ok(())
            } else {
                crate::internal(format!("torus ({strands},{power}) mismatch"))
            }
        }
        Cmd::SpringerDecompose { sys, braid, input } => with_engine(&sys, |eng| {
            let tr0: Vec<RFunc> = match (&braid, &input) {
                (Some(word), None) => {
                    let beta = parse_braid(word, eng.sys)?;
                    eng.rw_trace0(&beta)?
                }
                (None, Some(path)) => read_trace_json(path, &eng.table)?,
                _ => return validation("provide exactly one of --braid or --input"),
            };
            let dec = springer_decompose(eng.sys, &eng.table, &tr0)?;
            let pairs: Vec<(String, String)> = dec
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(mu, c)| {
                    let lab = CharLabel::Partition(mu.clone()).to_string();
                    (c.to_string_q(), format!("Q_{lab}"))
                })
                .collect();
            emit_labeled(&pairs, sys.format);
            Ok(())
        }),
        Cmd::Ffcount {
            group,
            q,
            braid,
            fiber,
            format,
        } => {
            let g = Group::parse(&group)?;
            let cox = CoxeterSystem::new(g.weyl())?;
            let beta = parse_braid(&braid.braid, &cox)?;
            run_ffcount(g, q, &beta, fiber, format)
        }
        Cmd::Selftest => selftest(),
    }
}

fn system(opts: &SysOpts) -> Result<CoxeterSystem> {
    CoxeterSystem::new(CoxeterType::parse(&opts.ty)?)
}

fn data_dir(opts: &SysOpts) -> Option<PathBuf> {
    opts.data_dir
        .clone()
        .or_else(|| std::env::var_os("BRAIDTRACE_DATA_DIR").map(PathBuf::from))
}

fn with_engine(opts: &SysOpts, f: impl FnOnce(&TraceEngine) -> Result<()>) -> Result<()> {
    let cox = system(opts)?;
    let dir = data_dir(opts);
    let eng = TraceEngine::new(&cox, dir.as_deref())?;
    f(&eng)
}

fn parse_braid(s: &str, sys: &CoxeterSystem) -> Result<BraidWord> {
    BraidWord::parse(s, sys.rank())
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_slope(s: &str) -> Result<Rat> {
    let bad = || Error::Validation(format!("bad slope {s:?} (expected p/q)"));
    match s.split_once('/') {
        None => s
            .trim()
            .parse::<i64>()
            .map(crate::exactmath::rat)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p.into(), q.into()))
        }
    }
}

// ---------------------------------------------------------------------------
// rendering

/// Pair each nonzero coefficient string with its character label, in table
/// order.
fn label_pairs(
    table: &CharTable,
    coeffs: impl Iterator<Item = String>,
) -> Vec<(String, String)> {
    table
        .labels()
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| c != "0")
        .map(|(l, c)| (c, l.to_string()))
        .collect()
}

/// Text rendering of a labeled combination: "q^(3/2)*[2] - q^(-3/2)*[1,1]".
fn fold_terms(pairs: &[(String, String)]) -> String {
    if pairs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (coeff, label)) in pairs.iter().enumerate() {
        let single = !coeff.contains(" + ") && !coeff.contains(" - ") && !coeff.contains(" / ");
        let (neg, body) = if single && coeff.starts_with('-') {
            (true, coeff[1..].to_string())
        } else {
            (false, coeff.clone())
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body == "1" {
            out.push_str(label);
        } else if single {
            out.push_str(&format!("{body}*{label}"));
        } else {
            out.push_str(&format!("({body})*{label}"));
        }
    }
    out
}

fn emit_labeled(pairs: &[(String, String)], format: Format) {
    match format {
        Format::Text => outln!("{}", fold_terms(pairs)),
        Format::Json => {
            let mut map = Map::new();
            for (c, l) in pairs {
                map.insert(l.clone(), Value::String(c.clone()));
            }
            outln!("{}", serde_json::to_string_pretty(&Value::Object(map)).unwrap());
        }
    }
}

/// JSON key for a monomial a^i q^{t/2}: "a2 q-1", "a0 q3/2", ...
fn at_key(a: i64, t: i64) -> String {
    if t % 2 == 0 {
        format!("a{a} q{}", t / 2)
    } else {
        format!("a{a} q{t}/2")
    }
}

fn rat_value(c: &Rat) -> Value {
    if c.denom().is_one() {
        match i64::try_from(c.numer().clone()) {
            Ok(n) => Value::from(n),
            Err(_) => Value::String(c.to_string()),
        }
    } else {
        Value::String(c.to_string())
    }
}

fn emit_at(f: &ATRat, format: Format) -> Result<()> {
    match format {
        Format::Text => {
            if let Some(p) = f.to_polynomial() {
                outln!("{}", p.to_string_at());
            } else {
                outln!(
                    "({}) / ({})",
                    f.numerator().to_string_at(),
                    f.denominator().to_string_at()
                );
            }
        }
        Format::Json => {
            let poly_map = |p: &crate::exactmath::ATLaurent| -> Value {
                let mut map = Map::new();
                for ((a, t), c) in p.terms() {
                    map.insert(at_key(a, t), rat_value(c));
                }
                Value::Object(map)
            };
            let out = if let Some(p) = f.to_polynomial() {
                poly_map(&p)
            } else {
                json!({ "num": poly_map(f.numerator()), "den": poly_map(f.denominator()) })
            };
            outln!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(())
}

/// Render a Laurent polynomial in the grading variable u (u^scale = q^{1/2}).
fn laurent_u_string(terms: &[(i64, Rat)], scale: i64) -> String {
    if scale == 1 {
        return HalfLaurent::from_terms(terms.iter().cloned()).to_string_q();
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let var = match e {
            0 => None,
            1 => Some("u".to_string()),
            e => Some(format!("u^{e}")),
        };
        match (var, mag.is_one()) {
            (None, _) => out.push_str(&mag.to_string()),
            (Some(v), true) => out.push_str(&v),
            (Some(v), false) => out.push_str(&format!("{mag}*{v}")),
        }
    }
    out
}

fn rfunc_u_string(f: &RFunc, scale: i64, order: Option<i64>) -> String {
    let collect = |p: &HalfLaurent| -> Vec<(i64, Rat)> {
        p.terms().map(|(e, c)| (e, c.clone())).collect()
    };
    if let Some(k) = order {
        // truncate at q^k, i.e. u-exponent 2*scale*k
        let cut = 2 * scale * k;
        let series = f.to_series(cut + 1);
        let terms: Vec<(i64, Rat)> = series
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, c.clone()))
            .collect();
        let tail = if scale == 1 {
            format!(" + O(q^{})", k + 1)
        } else {
            format!(" + O(u^{})", cut + 1)
        };
        return format!("{}{}", laurent_u_string(&terms, scale), tail);
    }
    if f.is_polynomial() {
        laurent_u_string(&collect(&f.as_laurent().unwrap()), scale)
    } else {
        format!(
            "({}) / ({})",
            laurent_u_string(&collect(f.numerator()), scale),
            laurent_u_string(&collect(f.denominator()), scale)
        )
    }
}

fn emit_graded(
    eng: &TraceEngine,
    gc: &daha::GradedChar,
    format: Format,
    order: Option<i64>,
) -> Result<()> {
    let pairs = label_pairs(
        &eng.table,
        gc.coeffs.iter().map(|f| rfunc_u_string(f, gc.scale, order)),
    );
    match format {
        Format::Text => {
            if gc.scale != 1 {
                outln!("# grading variable: u^{} = q", 2 * gc.scale);
            }
            outln!("{}", fold_terms(&pairs));
        }
        Format::Json => {
            let mut map = Map::new();
            for (c, l) in &pairs {
                map.insert(l.clone(), Value::String(c.clone()));
            }
            let out = json!({
                "slope": gc.nu.to_string(),
                "scale": gc.scale,
                "coeffs": Value::Object(map),
            });
            outln!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// parsing rendered coefficients back (JSON round-trip, springer input)

/// Parse the `to_string_q` rendering of a Laurent polynomial in q^{1/2}.
pub fn parse_half_laurent(s: &str) -> Result<HalfLaurent> {
    let s = s.trim();
    let bad = |what: &str| Error::Validation(format!("bad polynomial {s:?}: {what}"));
    if s == "0" {
        return Ok(HalfLaurent::new());
    }
    let mut out = HalfLaurent::new();
    let (mut rest, mut sign) = match s.strip_prefix('-') {
        Some(r) => (r, -1i64),
        None => (s, 1),
    };
    loop {
        let split = rest.find(" + ").map(|i| (i, 1)).into_iter()
            .chain(rest.find(" - ").map(|i| (i, -1)))
            .min();
        let (term, next) = match split {
            Some((i, nsign)) => (&rest[..i], Some((&rest[i + 3..], nsign))),
            None => (rest, None),
        };
        let mut coeff = Rat::one();
        let mut exp = 0i64;
        for part in term.split('*') {
            let part = part.trim();
            if let Some(e) = part.strip_prefix('q') {
                exp += if e.is_empty() {
                    2
                } else if let Some(frac) = e.strip_prefix("^(").and_then(|x| x.strip_suffix("/2)"))
                {
                    frac.parse::<i64>().map_err(|_| bad("exponent"))?
                } else if let Some(k) = e.strip_prefix('^') {
                    2 * k.parse::<i64>().map_err(|_| bad("exponent"))?
                } else {
                    return Err(bad("exponent"));
                };
            } else {
                let c: Rat = part.parse().map_err(|_| bad("coefficient"))?;
                coeff *= c;
            }
        }
        out.add_term(exp, coeff * crate::exactmath::rat(sign));
        match next {
            Some((r, nsign)) => {
                rest = r;
                sign = nsign as i64;
            }
            None => break,
        }
    }
    Ok(out)
}

/// Parse the `to_string_q` rendering of a rational function of q^{1/2}.
pub fn parse_rfunc(s: &str) -> Result<RFunc> {
    let s = s.trim();
    if let Some(i) = s.find(") / (") {
        if s.starts_with('(') && s.ends_with(')') {
            let num = parse_half_laurent(&s[1..i])?;
            let den = parse_half_laurent(&s[i + 5..s.len() - 1])?;
            if den.is_zero() {
                return validation("zero denominator");
            }
            return Ok(RFunc::from_laurent(num).div(&RFunc::from_laurent(den)));
        }
    }
    Ok(RFunc::from_laurent(parse_half_laurent(s)?))
}

fn read_trace_json(path: &PathBuf, table: &CharTable) -> Result<Vec<RFunc>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    let map: Map<String, Value> = serde_json::from_str(&text)
        .map_err(|e| Error::Validation(format!("bad trace JSON: {e}")))?;
    let mut out = Vec::new();
    for lab in table.labels() {
        let coeff = match map.get(&lab.to_string()) {
            Some(Value::String(s)) => parse_rfunc(s)?,
            Some(_) => return validation(format!("coefficient of {lab} is not a string")),
            None => RFunc::zero(),
        };
        out.push(coeff);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// finite-field subcommand

fn run_ffcount(g: Group, q: u64, beta: &BraidWord, fiber: FiberArg, format: Format) -> Result<()> {
    let mut map = Map::new();
    match fiber {
        FiberArg::All | FiberArg::Over1 => {
            let f = if fiber == FiberArg::All { Fiber::All } else { Fiber::Over1 };
            let n = match count_chains(g, q, beta, &f)? {
                ChainCounts::Total(t) => t,
                ChainCounts::PerClass(_) => unreachable!(),
            };
            let key = if fiber == FiberArg::All { "total" } else { "over_1" };
            map.insert(key.to_string(), Value::from(n as u64));
        }
        FiberArg::Unipotent => {
            let per = match count_chains(g, q, beta, &Fiber::Unipotents)? {
                ChainCounts::PerClass(p) => p,
                ChainCounts::Total(_) => unreachable!(),
            };
            for (mu, n) in per {
                map.insert(
                    CharLabel::Partition(mu).to_string(),
                    Value::from(n as u64),
                );
            }
        }
        FiberArg::X0 => {
            map.insert("x0".to_string(), Value::from(count_x0(q, beta)? as u64));
        }
        FiberArg::Virtual => {
            let report = verify_virtual(g, q, beta)?;
            if !report.ok {
                return crate::internal(format!(
                    "trace identity failed: {}",
                    report.discrepancies.join("; ")
                ));
            }
            map.insert("virtual_identity".to_string(), Value::from("ok"));
        }
        FiberArg::Kalman => {
            if !verify_kalman(g, q, beta)? {
                return crate::internal("closed-chain / unipotent-fiber counts differ");
            }
            map.insert("kalman_identity".to_string(), Value::from("ok"));
        }
    }
    match format {
        Format::Json => {
            outln!("{}", serde_json::to_string_pretty(&Value::Object(map)).unwrap())
        }
        Format::Text => {
            for (k, v) in &map {
                outln!("{k}: {v}");
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// selftest

fn check(name: &str, ok: bool) -> Result<()> {
    if ok {
        println!("ok - {name}");
        Ok(())
    } else {
        println!("FAIL - {name}");
        crate::internal(format!("selftest failed: {name}"))
    }
}

/// Golden-value battery over frozen small cases; exits nonzero on any
/// mismatch.
fn selftest() -> Result<()> {
    use crate::exactmath::{ATLaurent, rat};

    // rank-one powers: Tr<sigma^m> = q^{m/2}*[2] + (-1)^m q^{-m/2}*[1,1]
    let a1 = CoxeterSystem::new(CoxeterType::A(1))?;
    let eng1 = TraceEngine::new(&a1, None)?;
    for m in 1..=8i64 {
        let beta = BraidWord::new(vec![1]).repeat(m as usize);
        let tr = eng1.rw_trace(&beta)?;
        let i2 = eng1.table.char_index(&CharLabel::Partition(vec![2])).unwrap();
        let i11 = eng1.table.char_index(&CharLabel::Partition(vec![1, 1])).unwrap();
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let ok = tr[i2] == HalfLaurent::t_pow(m)
            && tr[i11] == HalfLaurent::t_pow(-m).scale(&rat(sign));
        check(&format!("rank-one trace of sigma^{m}"), ok)?;
    }

    // trefoil HOMFLY: a^2 q^{-1} + a^2 q - a^4
    let mut tref = ATLaurent::term(2, -2, rat(1));
    tref.add_term(2, 2, rat(1));
    tref.add_term(4, 0, rat(-1));
    let got = eng1.homfly(&BraidWord::new(vec![1, 1, 1]))?;
    check("trefoil HOMFLY", got == ATRat::from_poly(tref))?;

    // unknots
    let one = ATRat::from_poly(ATLaurent::term(0, 0, rat(1)));
    check(
        "unknot on two strands",
        eng1.homfly(&BraidWord::new(vec![1]))? == one,
    )?;
    let a2 = CoxeterSystem::new(CoxeterType::A(2))?;
    let eng2 = TraceEngine::new(&a2, None)?;
    check(
        "unknot on three strands",
        eng2.homfly(&BraidWord::new(vec![1, 2]))? == one,
    )?;

    // Markov trace of a single generator: (t - t^{-1}) / (1 - a^2)
    let mut num = ATLaurent::term(0, 1, rat(1));
    num.add_term(0, -1, rat(-1));
    let mut den = ATLaurent::term(0, 0, rat(1));
    den.add_term(2, 0, rat(-1));
    check(
        "Markov trace of one crossing",
        eng2.markov_trace(&BraidWord::new(vec![1]))? == ATRat::new(num, den),
    )?;

    // two normalizations of tau agree
    let beta = BraidWord::new(vec![1, 2, 1, 2]);
    check(
        "tau consistency",
        eng2.tau(&beta) == eng2.tau_from_trace0(&beta)?,
    )?;

    // affine chart counts
    check(
        "chart count of sigma^2",
        count_x0(5, &BraidWord::new(vec![1, 1]))? == 5,
    )?;
    check(
        "chart count of sigma^3",
        count_x0(5, &BraidWord::new(vec![1, 1, 1]))? == 20,
    )?;

    // closed chains vs unipotent fibers
    check(
        "closed-chain identity over F_3",
        verify_kalman(Group::Sl2, 3, &BraidWord::new(vec![]))?,
    )?;

    // graded-character bridge for a periodic braid
    check(
        "periodic bridge for sigma^3",
        daha::omega_bridge_check(&eng1, &BraidWord::new(vec![1, 1, 1]), 2, 3)?,
    )?;

    // Springer decomposition of a rank-one trace
    let tr0 = eng1.rw_trace0(&BraidWord::new(vec![1, 1, 1]))?;
    let dec = springer_decompose(&a1, &eng1.table, &tr0)?;
    let ok = dec.len() == 2
        && dec
            .iter()
            .any(|(mu, c)| mu == &vec![2] && *c == RFunc::from_laurent(HalfLaurent::t_pow(4)))
        && dec
            .iter()
            .any(|(mu, c)| mu == &vec![1, 1] && *c == RFunc::from_laurent(HalfLaurent::t_pow(0)));
    check("Springer decomposition of sigma^3", ok)?;

    // torus-knot comparison
    check("torus (2,3) graded character", daha::gors_check(2, 3)?)?;

    outln!("all checks passed");
    Ok(())
}
