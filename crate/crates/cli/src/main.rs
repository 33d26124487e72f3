use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncx_core::acyclicity::{brutal_truncate, brutal_truncate_from, correspondence_check, TestBattery, DEFAULT_PERIODS};
use ncx_core::campaign::{replay, run_campaign, CampaignConfig, Property};
use ncx_core::functor::{f_mor, f_obj};
use ncx_core::homotopy::{hom_space_dim, null_homotopy};
use ncx_core::io as doc;
use ncx_core::ncomplex::homology;
use ncx_core::quiver::rep_hom_space_dim;
use ncx_core::random::{random_exact, random_h1_free, random_ncomplex, trial_rng, RandomConfig};
use ncx_core::{ChainMapN, CoeffRing, Error, NComplex};

#[derive(Parser)]
#[command(name = "ncx", version, about = "Exact computations with N-complexes")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex document is well formed and satisfies d^N = 0.
    Validate { input: Option<PathBuf> },
    /// Amplitude homology of a complex.
    Homology { input: Option<PathBuf> },
    /// Mapping cone of a chain map document.
    Cone { input: Option<PathBuf> },
    /// Suspension, or its inverse.
    Sigma {
        input: Option<PathBuf>,
        #[arg(long)]
        inverse: bool,
    },
    /// Degree shift by k.
    Theta {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        input: Option<PathBuf>,
    },
    /// The disk with i copies of R^rank ending in degree j.
    Disk {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "GF(2)")]
        ring: CoeffRing,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Image of a complex or chain map under F.
    ApplyF { input: Option<PathBuf> },
    /// Dimensions of Hom and Hom_K between two complexes.
    HomDim {
        source: PathBuf,
        target: PathBuf,
        /// Also compute the dimensions between the images under F.
        #[arg(long)]
        image: bool,
    },
    /// A null-homotopy of a chain map; exit 1 if there is none.
    Nullhomotopy { input: Option<PathBuf> },
    /// Brutal truncation keeping degrees at most `at`.
    Truncate {
        #[arg(long, allow_negative_numbers = true)]
        at: i64,
        /// Lowest degree kept when unrolling a periodic complex.
        #[arg(long, allow_negative_numbers = true)]
        from: Option<i64>,
        input: Option<PathBuf>,
    },
    /// Total acyclicity against a battery, on both sides of F; exit 1 if
    /// the complex is not totally acyclic or the sides disagree.
    TacCheck {
        /// `default`, or a JSON file holding a list of complex documents.
        #[arg(long, default_value = "default")]
        battery: String,
        /// Random members added to the default battery.
        #[arg(long, default_value_t = ncx_core::acyclicity::DEFAULT_RANDOM_MEMBERS)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        input: Option<PathBuf>,
    },
    /// A seeded random complex.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "GF(2)")]
        ring: CoeffRing,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        #[arg(long)]
        max_width: Option<usize>,
        #[arg(long, value_enum, default_value_t = Kind::Plain)]
        kind: Kind,
    },
    /// Run a seeded property campaign; exit 1 with a counterexample if the
    /// property fails.
    Check {
        property: Option<Property>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated orders N.
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 5])]
        orders: Vec<usize>,
        /// Comma-separated rings.
        #[arg(long, value_delimiter = ',', default_values = ["GF(2)", "GF(3)", "Q"])]
        rings: Vec<CoeffRing>,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        #[arg(long)]
        max_width: Option<usize>,
        /// Where to write the counterexample; standard error otherwise.
        #[arg(long)]
        counterexample: Option<PathBuf>,
        /// Re-run the check recorded in a counterexample document.
        #[arg(long, conflicts_with = "property")]
        replay: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Plain,
    Exact,
    H1Free,
}

/// Result of a command: what to print and whether the checked claim held.
struct Outcome {
    body: String,
    holds: bool,
}

impl Outcome {
    fn ok(v: &Value) -> Self {
        Outcome { body: doc::to_canonical_string(v), holds: true }
    }
    fn verdict(v: &Value, holds: bool) -> Self {
        Outcome { body: doc::to_canonical_string(v), holds }
    }
}

fn read_text(path: Option<&PathBuf>) -> Result<String, Error> {
    let fail = |p: &str, e: io::Error| Error::Document { path: p.to_string(), reason: e.to_string() };
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| fail(&p.display().to_string(), e)),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| fail("<stdin>", e))?;
            Ok(s)
        }
    }
}

fn read_value(path: Option<&PathBuf>) -> Result<Value, Error> {
    doc::parse_json(&read_text(path)?, "$")
}

fn read_complex(path: Option<&PathBuf>) -> Result<NComplex, Error> {
    doc::complex_from_value(&read_value(path)?)
}

fn read_map(path: Option<&PathBuf>) -> Result<ChainMapN, Error> {
    doc::chain_map_from_value(&read_value(path)?)
}

fn homology_table(x: &NComplex) -> Result<String, Error> {
    let h = homology(x)?;
    let n = x.order();
    let mut out = String::from("degree");
    for r in 1..n {
        out.push_str(&format!("\tH_{r}"));
    }
    out.push('\n');
    for i in x.support().degrees() {
        out.push_str(&i.to_string());
        for r in 1..n {
            out.push_str(&format!("\t{}", h.get(i, r).dim));
        }
        out.push('\n');
    }
    Ok(out)
}

fn load_battery(source: &str, x: &NComplex, random: usize, seed: u64) -> Result<TestBattery, Error> {
    if source == "default" {
        return TestBattery::around(x, DEFAULT_PERIODS, random, seed);
    }
    let v = read_value(Some(&PathBuf::from(source)))?;
    let items = v.as_array().ok_or_else(|| Error::Document { path: "$".into(), reason: "a battery is a list of complexes".into() })?;
    let mut b = TestBattery::default();
    for (k, item) in items.iter().enumerate() {
        let p = doc::complex_from_value(item)
            .map_err(|e| Error::Document { path: format!("$[{k}]"), reason: e.to_string() })?;
        b.push(p)?;
    }
    Ok(b)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    Ok(match &cli.command {
        Command::Validate { input } => {
            let x = read_complex(input.as_ref())?;
            Outcome::ok(&json!({
                "valid": true,
                "n": x.order(),
                "ring": x.ring().to_string(),
                "support": doc::support_to_value(x.support()),
                "total_rank": x.total_rank(),
            }))
        }
        Command::Homology { input } => {
            let x = read_complex(input.as_ref())?;
            if cli.format == Format::Text {
                Outcome { body: homology_table(&x)?, holds: true }
            } else {
                Outcome::ok(&doc::homology_to_value(&homology(&x)?))
            }
        }
        Command::Cone { input } => Outcome::ok(&doc::complex_to_value(&NComplex::cone(&read_map(input.as_ref())?))),
        Command::Sigma { input, inverse } => {
            let x = read_complex(input.as_ref())?;
            Outcome::ok(&doc::complex_to_value(&if *inverse { x.sigma_inv() } else { x.sigma() }))
        }
        Command::Theta { k, input } => Outcome::ok(&doc::complex_to_value(&read_complex(input.as_ref())?.theta(*k))),
        Command::Disk { n, ring, j, i, rank } => Outcome::ok(&doc::complex_to_value(&NComplex::disk(*n, *ring, *j, *i, *rank)?)),
        Command::ApplyF { input } => {
            let v = read_value(input.as_ref())?;
            if v.get("kind").and_then(Value::as_str) == Some("chain_map") {
                Outcome::ok(&doc::rep_chain_map_to_value(&f_mor(&doc::chain_map_from_value(&v)?)?))
            } else {
                Outcome::ok(&doc::rep_complex_to_value(&f_obj(&doc::complex_from_value(&v)?)?))
            }
        }
        Command::HomDim { source, target, image } => {
            let (q, p) = (read_complex(Some(source))?, read_complex(Some(target))?);
            let d = hom_space_dim(&q, &p)?;
            let mut v = json!({"chain_maps": d.chain_maps, "null_homotopic": d.null_homotopic, "hom_k": d.hom_k});
            if *image {
                let e = rep_hom_space_dim(&f_obj(&q)?, &f_obj(&p)?)?;
                v["image"] = json!({"chain_maps": e.chain_maps, "null_homotopic": e.null_homotopic, "hom_k": e.hom_k});
            }
            Outcome::ok(&v)
        }
        Command::Nullhomotopy { input } => {
            let f = read_map(input.as_ref())?;
            match null_homotopy(&f)? {
                Some(w) => Outcome::ok(&doc::witness_to_value(&w)),
                None => Outcome::verdict(
                    &json!({"schema_version": doc::SCHEMA_VERSION, "kind": "counterexample", "reason": "not null-homotopic", "map": doc::chain_map_to_value(&f)}),
                    false,
                ),
            }
        }
        Command::Truncate { at, from, input } => {
            let x = read_complex(input.as_ref())?;
            let t = match from {
                Some(lo) => brutal_truncate_from(&x, *lo, *at),
                None => brutal_truncate(&x, *at),
            };
            Outcome::ok(&doc::complex_to_value(&t))
        }
        Command::TacCheck { battery, random, seed, input } => {
            let x = read_complex(input.as_ref())?;
            let b = load_battery(battery, &x, *random, *seed)?;
            let r = correspondence_check(&x, &b)?;
            let v = json!({
                "battery_size": b.len(),
                "n_exact": r.n_exact,
                "image_acyclic": r.image_acyclic,
                "n_totally_acyclic": r.n_totally_acyclic,
                "image_totally_acyclic": r.image_totally_acyclic,
                "consistent": r.consistent(),
                "mismatch": r.mismatch,
            });
            Outcome::verdict(&v, r.consistent() && r.n_totally_acyclic)
        }
        Command::Random { seed, trial, n, ring, max_rank, max_width, kind } => {
            let cfg = RandomConfig::new(*n, *ring).with_bounds(*max_rank, max_width.unwrap_or(2 * n));
            let mut rng = trial_rng(*seed, *trial);
            let x = match kind {
                Kind::Plain => random_ncomplex(&cfg, &mut rng),
                Kind::Exact => random_exact(&cfg, &mut rng),
                Kind::H1Free => random_h1_free(&cfg, &mut rng),
            };
            Outcome::ok(&doc::complex_to_value(&x))
        }
        Command::Check { property, trials, seed, orders, rings, max_rank, max_width, counterexample, replay: rp } => {
            if let Some(path) = rp {
                let (p, v) = replay(&read_value(Some(path))?)?;
                return Ok(Outcome::verdict(&json!({"property": p.name(), "holds": v.holds, "fallback": v.fallback, "detail": v.detail}), v.holds));
            }
            let property = property.ok_or_else(|| Error::Config("a property or --replay is required".into()))?;
            let cfg = CampaignConfig {
                seed: *seed,
                trials: *trials,
                orders: orders.clone(),
                rings: rings.clone(),
                max_rank: *max_rank,
                max_width: *max_width,
                properties: vec![property],
            };
            let report = run_campaign(&cfg)?.remove(0);
            if let Some(cx) = report.minimal_counterexample() {
                let text = doc::to_canonical_string(cx);
                match counterexample {
                    Some(p) => fs::write(p, text).map_err(|e| Error::Document { path: p.display().to_string(), reason: e.to_string() })?,
                    None => eprint!("{text}"),
                }
            }
            Outcome::verdict(&report.to_value(), report.holds())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(p) => fs::write(p, &out.body),
                None => io::stdout().write_all(out.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("ncx: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("ncx: {e}");
            ExitCode::from(2)
        }
    }
}
