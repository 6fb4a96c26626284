//! Command-line front end.
//!
//! Exit status: 0 affirmative, 1 negative, 2 operational error.

use std::error::Error as StdError;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use ultramodal::constructions::harness::{self, HarnessConfig};
use ultramodal::constructions::{
    bilipschitz_bounds, check_bounded_morphism, check_frame_morphism, disjoint_union, epsilon_subspace,
};
use ultramodal::dendrogram::Dendrogram;
use ultramodal::io::{load_model, load_valuation, ModelFile, PointMapFile};
use ultramodal::semantics::{holds, plausibility_degree, stability_degree, truthset};
use ultramodal::space::cantor_worlds;
use ultramodal::validity::{
    check_proof, instantiate_axiom, match_axiom, parse_binding, valid_in_model, Bindings, Proof, Schema, DEFAULT_CAP,
};
use ultramodal::{parse, Error, Formula, Grade, Model, Valuation};

type Result<T> = std::result::Result<T, Box<dyn StdError>>;

#[derive(Parser)]
#[command(name = "ultramodal", version, about = "Graded similarity modalities over finite ultra-metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ModelFormula {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    formula: String,
}

#[derive(clap::Args)]
struct AtWorld {
    #[command(flatten)]
    mf: ModelFormula,
    #[arg(long)]
    world: String,
}

#[derive(Subcommand)]
enum Command {
    /// Does the formula hold at a world?
    Check(AtWorld),
    /// Worlds where the formula holds.
    Truthset(ModelFormula),
    /// Radii `e` for which `[e]formula` holds at a world.
    Stability(AtWorld),
    /// Radii `e` for which `<e>formula` holds at a world.
    Plausibility(AtWorld),
    /// Emit the depth-n Cantor-tree model.
    Cantor {
        #[arg(long)]
        depth: u32,
        /// JSON map from atom to point names.
        #[arg(long)]
        valuation: Option<PathBuf>,
    },
    /// Is the formula valid on the model's space (all valuations)?
    Valid {
        #[command(flatten)]
        mf: ModelFormula,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Recognize axiom instances, or instantiate a schema with --schema.
    Axiom {
        #[arg(long, conflicts_with = "schema")]
        formula: Option<String>,
        #[arg(long, requires = "bind")]
        schema: Option<String>,
        /// Metavariable binding such as `phi=p&q` or `eps=1/8`.
        #[arg(long)]
        bind: Vec<String>,
    },
    /// Check a Hilbert proof file.
    Prove {
        #[arg(long)]
        proof: PathBuf,
    },
    /// Disjoint union of models.
    Union {
        #[arg(long = "model", required = true)]
        models: Vec<PathBuf>,
    },
    /// The closed ball around a world as a model file.
    Ball(Around),
    /// The ball-generated subspace around a world; same output as `ball`.
    Subspace(Around),
    /// Check a point map between models.
    Morphism {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Ignore valuations.
        #[arg(long)]
        frame: bool,
        /// Check two-sided distance bounds instead (bijective maps only).
        #[arg(long)]
        bilipschitz: bool,
    },
    /// Run the seeded preservation checks.
    Harness {
        #[arg(long)]
        seed: Option<u64>,
        /// JSON harness configuration.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// The tree of balls in Graphviz DOT.
    Dot {
        #[arg(long)]
        model: PathBuf,
    },
    /// Report every violated metric axiom.
    ValidateModel {
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(clap::Args)]
struct Around {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    world: String,
    #[arg(long)]
    grade: String,
    /// Print only the sorted point list.
    #[arg(long)]
    points_only: bool,
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn json<T: Serialize>(v: &T, affirmative: bool) -> Outcome {
        Outcome { text: to_json(v, false), code: if affirmative { 0 } else { 1 } }
    }
}

/// Keys sorted (serde_json's default map), exact rationals as strings.
fn to_json<T: Serialize>(v: &T, pretty: bool) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    if pretty {
        serde_json::to_string_pretty(&value).expect("serializable")
    } else {
        serde_json::to_string(&value).expect("serializable")
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn model(path: &Path) -> Result<Model> {
    load_model(&read(path)?).map_err(|e| match e {
        Error::InvalidSpace(r) => {
            format!("{}: not an ultra-metric space\n{}", path.display(), to_json(&r, false)).into()
        }
        e => format!("{}: {e}", path.display()).into(),
    })
}

fn formula(text: &str) -> Result<Formula> {
    Ok(parse(text)?)
}

fn model_out(m: &Model) -> Outcome {
    Outcome { text: ModelFile::from_model(m).to_json(), code: 0 }
}

fn run(cmd: Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Check(a) => {
            let m = model(&a.mf.model)?;
            let h = holds(&m, &a.world, &formula(&a.mf.formula)?)?;
            Outcome::json(&json!({ "holds": h }), h)
        }
        Command::Truthset(mf) => {
            let m = model(&mf.model)?;
            let t = truthset(&m, &formula(&mf.formula)?);
            let names: Vec<&str> = m.space.names_of(&t.points).collect();
            Outcome::json(&names, true)
        }
        Command::Stability(a) => {
            let m = model(&a.mf.model)?;
            Outcome::json(&stability_degree(&m, &a.world, &formula(&a.mf.formula)?)?, true)
        }
        Command::Plausibility(a) => {
            let m = model(&a.mf.model)?;
            Outcome::json(&plausibility_degree(&m, &a.world, &formula(&a.mf.formula)?)?, true)
        }
        Command::Cantor { depth, valuation } => {
            let (space, seqs) = cantor_worlds(depth)?;
            let v = match valuation {
                Some(p) => Valuation::from_names(&space, load_valuation(&read(&p)?)?)?,
                None => Valuation::new(),
            };
            let file = ModelFile {
                distance: ultramodal::io::DistanceSpec::Sequences(
                    space.points().iter().cloned().zip(seqs).collect(),
                ),
                points: space.points().to_vec(),
                valuation: v.to_names(&space),
            };
            Outcome { text: file.to_json(), code: 0 }
        }
        Command::Valid { mf, cap } => {
            let m = model(&mf.model)?;
            let v = valid_in_model(&m.space, &formula(&mf.formula)?, cap)?;
            Outcome::json(&v, v.valid)
        }
        Command::Axiom { formula: Some(text), .. } => {
            let matches = match_axiom(&formula(&text)?);
            let found = !matches.is_empty();
            Outcome::json(&json!({ "matches": matches }), found)
        }
        Command::Axiom { schema: Some(name), bind, .. } => {
            let schema: Schema = name.parse()?;
            let mut b = Bindings::new();
            for item in &bind {
                let (var, value) =
                    item.split_once('=').ok_or_else(|| format!("binding `{item}` is not of the form var=value"))?;
                let (k, v) = parse_binding(var.trim(), value.trim())?;
                b.insert(k, v);
            }
            let f = instantiate_axiom(schema, &b)?;
            Outcome::json(&json!({ "formula": f.to_string() }), true)
        }
        Command::Axiom { .. } => return Err("axiom needs --formula or --schema with --bind".into()),
        Command::Prove { proof } => {
            let p = Proof::from_json(&read(&proof)?)?;
            let v = check_proof(&p);
            Outcome::json(&v, v.accepted)
        }
        Command::Union { models } => {
            let ms = models.iter().map(|p| model(p)).collect::<Result<Vec<_>>>()?;
            model_out(&disjoint_union(&ms)?)
        }
        Command::Ball(a) | Command::Subspace(a) => {
            let m = model(&a.model)?;
            let eps = Grade::parse_unit(&a.grade)?;
            let sub = epsilon_subspace(&m, &a.world, &eps)?;
            if a.points_only {
                Outcome::json(&sub.space.points(), true)
            } else {
                model_out(&sub)
            }
        }
        Command::Morphism { model: src, target, map, frame, bilipschitz } => {
            let (src, tgt) = (model(&src)?, model(&target)?);
            let pm = PointMapFile::from_json(&read(&map)?)?.resolve(&src.space, &tgt.space)?;
            if bilipschitz {
                match bilipschitz_bounds(&src.space, &tgt.space, &pm) {
                    Ok(r) => Outcome::json(&r, r.holds),
                    Err(Error::NotBijective(why)) => {
                        Outcome::json(&json!({ "bijective": false, "holds": false, "reason": why }), false)
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                let v = if frame {
                    check_frame_morphism(&src.space, &tgt.space, &pm)?
                } else {
                    check_bounded_morphism(&src, &tgt, &pm)?
                };
                Outcome::json(&v, v.accepted)
            }
        }
        Command::Harness { seed, config } => {
            let mut cfg: HarnessConfig = match config {
                Some(p) => serde_json::from_str(&read(&p)?)?,
                None => HarnessConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = harness::run(&cfg)?;
            Outcome { text: to_json(&report, true), code: if report.discrepancies() == 0 { 0 } else { 1 } }
        }
        Command::Dot { model: p } => {
            let m = model(&p)?;
            Outcome { text: Dendrogram::new(&m.space).to_dot(&m.space), code: 0 }
        }
        Command::ValidateModel { model: p } => {
            let file = ModelFile::from_json(&read(&p)?)?;
            let report = file.space_unchecked()?.validate();
            Outcome::json(&json!({ "valid": report.is_valid(), "violations": report.violations }), report.is_valid())
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(p) => fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(out.code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
