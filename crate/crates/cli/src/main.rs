//! `grcob`: JSON front end for the graph cobordism library.
//!
//! Every subcommand prints one JSON document on standard output. Exit status is 0 on
//! success, 1 on a domain error and 2 on malformed input or arguments; errors are
//! printed as `{"error": code, "detail": text}`.

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grcob::catalog::{canonical_form, default_budget, enumerate_gafs, nerve_export, zigzag_connected};
use grcob::cospan::{compose_nf, realize_nf};
use grcob::generators::*;
use grcob::grading::{ce, grade, grade_s, is_leaf_like, spine, ve, ve_elements};
use grcob::monoidal::{compose_h, compose_h_m, tensor, tensor_m};
use grcob::morphism::compose_v;
use grcob::normalize::{collapse_bridges, collapse_unmarked_leaves, reduce};
use grcob::{automorphisms, isomorphisms, BoundaryMode, Gaf};
use input::{Failure, Kind, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "grcob", version, about = "Graph cobordisms between finite sets, as JSON")]
struct Cli {
    /// Output format; JSON is the only one.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a gaf, morphism, coloring or colored morphism.
    Validate { input: String },
    /// Find an isomorphism between two gafs, or list the automorphisms of one.
    Iso {
        left: String,
        right: Option<String>,
        /// Allow arbitrary bijections on the boundary sets.
        #[arg(long)]
        free: bool,
    },
    /// Compose two gafs or two morphisms. Vertical composition applies FIRST, then
    /// SECOND; horizontal composition glues SECOND onto the markings of FIRST.
    Compose {
        #[command(flatten)]
        how: ComposeMode,
        first: String,
        second: String,
    },
    /// Emit a named generator, or all of them.
    Generators {
        #[arg(long, value_enum)]
        name: Option<Generator>,
    },
    /// Check the graph-like Frobenius axioms.
    Axioms,
    /// VE grading of a gaf, CE grading of a (colored) morphism.
    Grade { input: String },
    /// Whether a colored morphism is leaf-like, with its leaf.
    Leaflike { input: String },
    /// Spine factorization of a leaf-like colored collapse of a tree.
    Spine { input: String },
    /// Collapse unmarked leaves, bridges, or every collapsible edge.
    Normalize {
        #[command(flatten)]
        how: NormalizeMode,
        input: String,
    },
    /// Cospan normal form of a gaf.
    Nf { input: String },
    /// Check that realization commutes with gluing, for one pair or a random sweep.
    FunctorialCheck {
        outer: Option<String>,
        inner: Option<String>,
        /// Number of random composable pairs to check.
        #[arg(long, conflicts_with_all = ["outer", "inner"])]
        sweep: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_boundary: usize,
        #[arg(long, default_value_t = 2)]
        max_v: usize,
        #[arg(long, default_value_t = 3)]
        max_e: usize,
    },
    /// Canonical representatives of all gafs within the bounds.
    Enumerate {
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Nerve data of the hom-category within the bounds.
    Nerve {
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 100_000)]
        max_morphisms: usize,
    },
    /// Search for a zig-zag of single-edge collapses and expansions.
    Zigzag {
        left: String,
        right: String,
        /// Maximum number of edges of intermediate gafs.
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ComposeMode {
    #[arg(long)]
    horizontal: bool,
    #[arg(long)]
    vertical: bool,
    #[arg(long)]
    tensor: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NormalizeMode {
    #[arg(long)]
    leaves: bool,
    #[arg(long)]
    bridges: bool,
    #[arg(long)]
    reduce: bool,
}

#[derive(Args)]
struct Bounds {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    max_v: usize,
    #[arg(long)]
    max_e: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Ft,
    Fe,
    Cap,
    Imu,
    GBeta1,
    GBeta2,
    GTbeta1,
    GTbeta2,
    Beta,
    Tbeta,
    Tbeta1Swap,
    Tbeta2Swap,
}

impl Generator {
    fn emit(self) -> Outcome<Value> {
        Ok(match self {
            Generator::Ft => to_json(&gen_ft()),
            Generator::Fe => to_json(&gen_fe()),
            Generator::Cap => to_json(&gen_cap()),
            Generator::Imu => to_json(&gen_imu()),
            Generator::GBeta1 => to_json(&gen_g_beta1()),
            Generator::GBeta2 => to_json(&gen_g_beta2()),
            Generator::GTbeta1 => to_json(&gen_g_tbeta1()),
            Generator::GTbeta2 => to_json(&gen_g_tbeta2()),
            Generator::Beta => to_json(&gen_beta()),
            Generator::Tbeta => to_json(&gen_tbeta()),
            Generator::Tbeta1Swap => to_json(&tbeta1_swap()?),
            Generator::Tbeta2Swap => to_json(&tbeta2_swap()?),
        })
    }

    fn key(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().replace('-', "_")
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("domain types serialize")
}

fn read_gaf(path: &str) -> Outcome<Gaf> {
    input::gaf(&input::read_value(path)?)
}

fn run(command: Command) -> Outcome<Value> {
    match command {
        Command::Validate { input } => {
            let value = input::read_value(&input)?;
            let kind = input::kind(&value)?;
            match kind {
                Kind::Gaf => drop(input::gaf(&value)?),
                Kind::Morphism => drop(input::morphism(&value)?),
                Kind::ColoredMorphism => drop(input::colored(&value)?),
                Kind::Coloring => drop(input::coloring(&value)?),
            }
            Ok(json!({"valid": true, "kind": kind.name()}))
        }
        Command::Iso { left, right, free } => {
            let mode = if free { BoundaryMode::Free } else { BoundaryMode::Fixed };
            let g = read_gaf(&left)?;
            match right {
                Some(right) => {
                    let h = read_gaf(&right)?;
                    let found = isomorphisms(&g, &h, mode, Some(1)).pop();
                    Ok(json!({"isomorphic": found.is_some(), "isomorphism": found}))
                }
                None => {
                    let autos = automorphisms(&g, mode);
                    Ok(json!({"count": autos.len(), "automorphisms": autos}))
                }
            }
        }
        Command::Compose { how, first, second } => {
            let (x, y) = (input::read_value(&first)?, input::read_value(&second)?);
            let kinds = (input::kind(&x)?, input::kind(&y)?);
            match kinds {
                (Kind::Gaf, Kind::Gaf) if !how.vertical => {
                    let (g, h) = (input::gaf(&x)?, input::gaf(&y)?);
                    Ok(to_json(&if how.tensor { tensor(&g, &h) } else { compose_h(&g, &h)? }))
                }
                (Kind::Morphism, Kind::Morphism) => {
                    let (f, g) = (input::morphism(&x)?, input::morphism(&y)?);
                    Ok(to_json(&if how.vertical {
                        compose_v(&g, &f)?
                    } else if how.tensor {
                        tensor_m(&f, &g)?
                    } else {
                        compose_h_m(&f, &g)?
                    }))
                }
                _ => Err(Failure::Malformed(
                    "expected two gafs or two morphisms; vertical composition takes morphisms".into(),
                )),
            }
        }
        Command::Generators { name: Some(name) } => name.emit(),
        Command::Generators { name: None } => {
            let mut all = serde_json::Map::new();
            for g in Generator::value_variants() {
                all.insert(g.key(), g.emit()?);
            }
            Ok(Value::Object(all))
        }
        Command::Axioms => Ok(to_json(&verify_graphlike_axioms())),
        Command::Grade { input } => {
            let value = input::read_value(&input)?;
            match input::kind(&value)? {
                Kind::Gaf => {
                    let g = input::gaf(&value)?;
                    Ok(json!({"ve": ve(&g), "elements": ve_elements(&g)}))
                }
                Kind::Morphism => {
                    let f = input::morphism(&value)?;
                    Ok(json!({"grade": grade(&f), "collapsed_edges": ce(&f)}))
                }
                Kind::ColoredMorphism => {
                    let fm = input::colored(&value)?;
                    let f = fm.underlying();
                    Ok(json!({"grade": grade(f), "collapsed_edges": ce(f), "grade_by_color": grade_s(&fm)}))
                }
                Kind::Coloring => Err(Failure::Malformed("grade takes a gaf or a morphism".into())),
            }
        }
        Command::Leaflike { input } => {
            let leaf = is_leaf_like(&input::colored(&input::read_value(&input)?)?)?;
            Ok(json!({"leaf_like": leaf.is_some(), "leaf": leaf}))
        }
        Command::Spine { input } => Ok(to_json(&spine(&input::colored(&input::read_value(&input)?)?)?)),
        Command::Normalize { how, input } => {
            let g = read_gaf(&input)?;
            let (result, morphism) = if how.leaves {
                collapse_unmarked_leaves(&g)
            } else if how.bridges {
                collapse_bridges(&g)
            } else {
                reduce(&g)
            };
            Ok(json!({"result": result, "morphism": morphism}))
        }
        Command::Nf { input } => Ok(to_json(&realize_nf(&read_gaf(&input)?))),
        Command::FunctorialCheck {
            outer,
            inner,
            sweep,
            seed,
            max_boundary,
            max_v,
            max_e,
        } => match (outer, inner, sweep) {
            (Some(outer), Some(inner), None) => {
                let (g, h) = (read_gaf(&outer)?, read_gaf(&inner)?);
                let lhs = realize_nf(&compose_h(&g, &h)?);
                let rhs = compose_nf(&realize_nf(&g), &realize_nf(&h))?;
                Ok(json!({"functorial": lhs == rhs, "glued": lhs, "composed": rhs}))
            }
            (None, None, Some(n)) => Ok(functorial_sweep(n, seed, max_boundary, max_v, max_e)),
            _ => Err(Failure::Malformed("give OUTER and INNER, or --sweep N".into())),
        },
        Command::Enumerate { bounds } => Ok(to_json(&enumerate_gafs(bounds.a, bounds.b, bounds.max_v, bounds.max_e))),
        Command::Nerve { bounds, max_morphisms } => Ok(to_json(&nerve_export(
            bounds.a,
            bounds.b,
            bounds.max_v,
            bounds.max_e,
            max_morphisms,
        )?)),
        Command::Zigzag { left, right, budget } => {
            let (g, h) = (read_gaf(&left)?, read_gaf(&right)?);
            if (g.a_size(), g.b_size()) != (h.a_size(), h.b_size()) {
                return Err(Failure::Domain(grcob::Error::BoundaryMismatch {
                    expected: g.a_size(),
                    found: h.a_size(),
                }));
            }
            let budget = budget.unwrap_or_else(|| default_budget(&g, &h));
            let path = zigzag_connected(&g, &h, budget);
            Ok(json!({
                "connected": path.is_some(),
                "budget": budget,
                "start": canonical_form(&g),
                "steps": path,
            }))
        }
    }
}

/// Random composable pairs from the enumerations within the bounds.
fn functorial_sweep(n: usize, seed: u64, max_boundary: usize, max_v: usize, max_e: usize) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = max_boundary + 1;
    let tables: Vec<Vec<Gaf>> = (0..k * k).map(|i| enumerate_gafs(i / k, i % k, max_v, max_e)).collect();
    let mut failures = Vec::new();
    for _ in 0..n {
        let (a, b, c) = (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k));
        let (outer, inner) = (&tables[a * k + b], &tables[b * k + c]);
        let g = &outer[rng.gen_range(0..outer.len())];
        let h = &inner[rng.gen_range(0..inner.len())];
        let glued = compose_h(g, h).map(|x| realize_nf(&x));
        if glued.ok() != compose_nf(&realize_nf(g), &realize_nf(h)).ok() {
            failures.push(json!({"outer": g, "inner": h}));
        }
    }
    json!({"checked": n, "seed": seed, "functorial": failures.is_empty(), "failures": failures})
}

/// Writes one document; a closed pipe on the reading side is not an error.
fn emit(value: &Value) {
    let _ = writeln!(std::io::stdout().lock(), "{value}");
}

fn emit_error(code: &str, detail: String) {
    emit(&json!({"error": code, "detail": detail}));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                ErrorKind::InvalidSubcommand => {
                    emit_error("UnknownSubcommand", e.to_string());
                    ExitCode::from(2)
                }
                _ => {
                    emit_error("InvalidArguments", e.to_string());
                    ExitCode::from(2)
                }
            };
        }
    };
    let Format::Json = cli.format;
    match run(cli.command) {
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            emit_error(e.code(), e.to_string());
            ExitCode::from(1)
        }
        Err(Failure::Malformed(detail)) => {
            emit_error("MalformedJson", detail);
            ExitCode::from(2)
        }
    }
}
