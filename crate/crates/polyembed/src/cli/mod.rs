//! Command-line front end.

pub mod verify;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::capacities::{CapacitySequence, Cutoff};
use crate::embedding::{compute_d, conjecture_graph, conjecture_lower_bound_witness, prop_6_1_bound, theorem_13_2_graph, AlphaStarVariant};
use crate::error::{Error, Result};
use crate::numeric::{q, QuadExt, Rational};
use crate::obstruction::{verify_interval, IntervalPreset, SearchOptions};
use crate::reduction::certify_embedding;

#[derive(Parser, Debug)]
#[command(name = "polyembed", version, about = "Exact ECH capacity computations for ellipsoids into polydiscs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Worker threads for the searches (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Resumable checkpoint file for interval searches.
    #[arg(long, global = true)]
    pub journal: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = AlphaStarVariant::Exact)]
    pub alpha_star_variant: AlphaStarVariant,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print N(a, b) or M(c, d) as "k,value".
    Capacities {
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "polydisc", required_unless_present = "polydisc")]
        ellipsoid: Option<Vec<Rational>>,
        #[arg(long, num_args = 2, value_names = ["C", "D"])]
        polydisc: Option<Vec<Rational>>,
        /// Last index to print.
        #[arg(long, conflicts_with = "value_cutoff")]
        upto: Option<usize>,
        /// Print every term up to this value.
        #[arg(long)]
        value_cutoff: Option<Rational>,
    },
    /// Decide whether E(1, a) embeds into P(lam, lam*b).
    Check {
        a: Rational,
        /// Scale, e.g. "10/9" or "0 + 1*sqrt(25/26)".
        lam: QuadExt,
        b: Rational,
    },
    /// Bracket d(a, b) at one or more values of a.
    Dfunc {
        #[arg(long)]
        b: Rational,
        #[arg(long = "a", required = true)]
        a: Vec<Rational>,
        /// Capacity indices scanned for the lower bound.
        #[arg(long, default_value_t = 200)]
        upto: usize,
    },
    /// Piecewise graph of d(., b), or its value at one point.
    Graph {
        #[arg(long)]
        b: Rational,
        #[arg(long)]
        at: Option<Rational>,
        /// Tag every row as exact or conjectured.
        #[arg(long)]
        label: bool,
    },
    /// Reproduce one of the main results: 1.2, table3.1, 5.1 .. 5.5.
    VerifyTheorem { which: String },
    /// Search an interval for obstructive classes.
    Search {
        #[arg(long)]
        lo: Rational,
        #[arg(long)]
        hi: Rational,
        #[arg(long, default_value = "13/2")]
        c: Rational,
    },
    /// Conjectured graph data for b >= 6: the V(b) bound and the lower-bound witnesses.
    Conjecture {
        #[arg(long)]
        b: Rational,
    },
}

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn open(path: Option<&PathBuf>) -> Result<Self> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Output { sink })
    }

    fn csv(&mut self, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
        let mut w = csv::WriterBuilder::new().from_writer(&mut self.sink);
        let io_err = |e: csv::Error| Error::Io(e.to_string());
        if !header.is_empty() {
            w.write_record(header).map_err(io_err)?;
        }
        for r in rows {
            w.write_record(&r).map_err(io_err)?;
        }
        w.flush()?;
        Ok(())
    }

    fn json<T: Serialize>(&mut self, v: &T) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.sink, v).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(self.sink)?;
        Ok(())
    }

    fn line(&mut self, s: &str) -> Result<()> {
        writeln!(self.sink, "{s}")?;
        Ok(())
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Undecidable(_) | Error::Hypotheses(_) => 2,
                _ => 1,
            }
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    let c = &cli.common;
    let mut out = Output::open(c.out.as_ref())?;
    let opts = SearchOptions { threads: c.threads, journal: c.journal.as_deref() };
    match &cli.command {
        Command::Capacities { ellipsoid, polydisc, upto, value_cutoff } => {
            let mut seq = match (ellipsoid, polydisc) {
                (Some(e), _) => CapacitySequence::ellipsoid(&e[0], &e[1])?,
                (_, Some(p)) => CapacitySequence::polydisc(&p[0], &p[1])?,
                _ => unreachable!("clap requires one of the two"),
            };
            let cutoff = match value_cutoff {
                Some(v) => Cutoff::Value(v.clone()),
                None => Cutoff::Index(upto.unwrap_or(20)),
            };
            let terms = seq.take(&cutoff).to_vec();
            match c.format {
                Format::Csv => {
                    let rows = terms.iter().enumerate().map(|(k, v)| vec![k.to_string(), v.to_string()]);
                    out.csv(&[], rows)?;
                }
                Format::Json => {
                    let v: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                    out.json(&v)?;
                }
            }
            Ok(0)
        }
        Command::Check { a, lam, b } => match certify_embedding(a, lam, b) {
            Ok(res) => {
                out.json(&res)?;
                Ok(if res.embeds() { 0 } else { 1 })
            }
            Err(Error::Undecidable(msg)) => {
                out.json(&serde_json::json!({ "result": "undecidable", "detail": msg }))?;
                Ok(2)
            }
            Err(e) => Err(e),
        },
        Command::Dfunc { b, a, upto } => {
            let mut rows = Vec::new();
            let mut all = true;
            for x in a {
                let d = compute_d(x, b, *upto)?;
                all &= d.matched;
                rows.push(d);
            }
            match c.format {
                Format::Csv => out.csv(
                    &["a", "d_lower", "d_upper", "matched"],
                    rows.iter().map(|d| {
                        vec![
                            d.a.to_string(),
                            d.lower.to_string(),
                            d.upper.as_ref().map_or_else(String::new, |u| u.to_string()),
                            d.matched.to_string(),
                        ]
                    }),
                )?,
                Format::Json => out.json(&rows)?,
            }
            Ok(if all { 0 } else { 2 })
        }
        Command::Graph { b, at, label } => {
            let g = if *b == q(13, 2) {
                theorem_13_2_graph()
            } else if *b >= Rational::from(6) {
                conjecture_graph(b, c.alpha_star_variant)?
            } else {
                return Err(Error::Unsupported(format!(
                    "no closed-form graph for b = {b}; use `dfunc` for bounds"
                )));
            };
            if let Some(a) = at {
                let v = g.eval(a)?;
                out.line(&v.to_string())?;
                return Ok(0);
            }
            let tag = if g.conjectural { "conjectured" } else { "exact" };
            match c.format {
                Format::Csv => {
                    let mut header = vec!["a_lo", "a_hi", "form", "param1", "param2", "witness_index"];
                    if *label {
                        header.push("label");
                    }
                    let rows = g.csv_rows().into_iter().map(|r| {
                        let mut v = r.to_vec();
                        if *label {
                            v.push(tag.to_string());
                        }
                        v
                    });
                    out.csv(&header, rows)?;
                }
                Format::Json => out.json(&g)?,
            }
            Ok(0)
        }
        Command::VerifyTheorem { which } => {
            let rep = verify::verify_theorem(which, &opts)?;
            match c.format {
                Format::Csv => out.csv(
                    &["check", "pass", "detail"],
                    rep.checks.iter().map(|k| vec![k.name.clone(), k.pass.to_string(), k.detail.clone()]),
                )?,
                Format::Json => out.json(&rep)?,
            }
            Ok(rep.exit_code())
        }
        Command::Search { lo, hi, c: cc } => {
            let p = IntervalPreset::from_left_endpoint("custom", lo.clone(), hi.clone(), cc.clone())?;
            let rep = match verify_interval(&p, &opts) {
                Ok(r) => r,
                Err(Error::Hypotheses(msg)) => {
                    eprintln!("key-lemma hypotheses fail on this interval: {msg}");
                    return Ok(2);
                }
                Err(e) => return Err(e),
            };
            out.json(&rep)?;
            Ok(if rep.no_survivors() { 0 } else { 1 })
        }
        Command::Conjecture { b } => {
            let g = conjecture_graph(b, c.alpha_star_variant)?;
            let mut witnesses = Vec::new();
            for s in &g.segments {
                if s.witness.is_none() {
                    continue;
                }
                // a rational sample strictly inside the piece
                let lo = s.lo.ceil();
                let a = match &s.hi {
                    Some(h) => {
                        let x = Rational::from_int(lo.clone());
                        if QuadExt::from(&x) < *h && QuadExt::from(&x) > s.lo {
                            x
                        } else {
                            midpoint(&s.lo, h)
                        }
                    }
                    None => continue,
                };
                witnesses.push(conjecture_lower_bound_witness(&a, b).map(|w| (a, w))?);
            }
            let all = witnesses.iter().all(|(_, w)| w.matches);
            out.json(&serde_json::json!({
                "b": b,
                "volume_threshold_lower_bound": prop_6_1_bound(b)?,
                "graph": g,
                "witnesses": witnesses.iter().map(|(a, w)| serde_json::json!({"a": a, "witness": w})).collect::<Vec<_>>(),
            }))?;
            Ok(if all { 0 } else { 1 })
        }
    }
}

/// A rational strictly between two field elements, with the smallest denominator found.
pub fn midpoint(lo: &QuadExt, hi: &QuadExt) -> Rational {
    for den in 1..=1i64 << 16 {
        let d = Rational::from(den);
        let n = lo.scale(&d).floor() + 1;
        let x = Rational::new(n, den);
        if QuadExt::from(&x) < *hi {
            return x;
        }
    }
    // bracket the endpoints to within 2^-60 and average
    let bound = |x: &QuadExt, upper: bool| -> Rational {
        match x.as_rational() {
            Some(r) => r.clone(),
            None => {
                let y = x.coeff().square() * Rational::from_int(x.disc().clone());
                let (l, h) = y.sqrt_bounds(60);
                let s = match (x.coeff().is_positive(), upper) {
                    (true, true) => h,
                    (true, false) => l,
                    (false, true) => -l,
                    (false, false) => -h,
                };
                x.rat() + &s
            }
        }
    };
    (&bound(lo, true) + &bound(hi, false)) / Rational::from(2)
}
