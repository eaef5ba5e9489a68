use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use normmax_core::ball::{
    beta_approx_normmax, build_ball_approx, verify_inner_containment, verify_outer_containment, OuterMode,
};
use normmax_core::config::Limits;
use normmax_core::gadget::{build_gadget, solve_gadget, verify_gadget_bounds, Graph};
use normmax_core::geometry::{parse_polytope, pnorm_pow, serialize_hpolytope, Polytope};
use normmax_core::normmax::{exact_normmax, normmax1, parmax, ParmaxMode};
use normmax_core::radii::{radius_h, radius_v, RadiusKind};
use normmax_core::rational::{parse_rational_arg, to_fraction_string};
use normmax_core::{HPolytope, PNormExponent, Rational, RationalVector};

#[derive(Parser)]
#[command(name = "normmax", version, about = "Exact norm maximization over rational polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximize ||x||_p^p over an H-polytope, optionally deciding `>= gamma`.
    Normmax {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
    },
    /// Beta-approximation through a polytopal ball.
    Approx {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        beta: u64,
    },
    /// Build the Clique gadget for a DIMACS graph.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        decide: bool,
    },
    /// Radii of a 0-symmetric polytope, as p-th powers.
    Radii {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Maximize ||x||_p^p over a parallelotope given by its generators.
    Parmax {
        #[arg(long)]
        vectors: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        p: u32,
    },
    /// Check the rounded gadget bounds or a ball approximation.
    Verify {
        #[arg(long, value_enum)]
        what: WhatArg,
        /// Sphere point count for gadget-bounds, dimension for ball.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        beta: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    L1,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Circumradius,
    Diameter,
    Inradius,
    Width,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(name = "01")]
    ZeroOne,
    Sym,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    GadgetBounds,
    Ball,
}

fn frac(x: &Rational) -> Value {
    Value::String(to_fraction_string(x))
}

fn int_frac(v: u64) -> Value {
    Value::String(format!("{v}/1"))
}

fn vector(x: &RationalVector) -> Value {
    Value::Array(x.iter().map(frac).collect())
}

fn exponent(p: u32) -> anyhow::Result<PNormExponent> {
    Ok(PNormExponent::new(p)?)
}

fn read(path: &Path, digest: &mut Sha256) -> anyhow::Result<String> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    digest.update(text.as_bytes());
    Ok(text)
}

fn read_h(path: &Path, digest: &mut Sha256) -> anyhow::Result<HPolytope> {
    match parse_polytope(&read(path, digest)?)? {
        Polytope::H(h) => Ok(h),
        Polytope::V(_) => bail!("{} holds a V-presentation; this command needs H", path.display()),
    }
}

/// Result fields plus the decision, if one was asked for.
struct Outcome {
    fields: Map<String, Value>,
    decision: Option<bool>,
}

fn run(cmd: &Command, digest: &mut Sha256) -> anyhow::Result<Outcome> {
    let mut fields = Map::new();
    let mut decision = None;
    match cmd {
        Command::Normmax { poly, p, gamma, method } => {
            let poly = read_h(poly, digest)?;
            let p = exponent(*p)?;
            let r = match method {
                MethodArg::Exact => exact_normmax(&poly, p)?,
                MethodArg::L1 => {
                    if p.get() != 1 {
                        bail!("--method l1 requires --p 1");
                    }
                    normmax1(&poly)?
                }
            };
            fields.insert("value".into(), frac(&r.value));
            fields.insert("witness".into(), vector(&r.witness));
            fields.insert("method".into(), json!(format!("{:?}", r.method)));
            if let Some(g) = gamma {
                let g = parse_rational_arg(g)?;
                fields.insert("gamma".into(), frac(&g));
                decision = Some(r.value >= g);
            }
        }
        Command::Approx { poly, p, beta } => {
            let poly = read_h(poly, digest)?;
            let p = exponent(*p)?;
            let r = beta_approx_normmax(&poly, p, *beta)?;
            fields.insert("value".into(), frac(&pnorm_pow(&r.witness, p)));
            fields.insert("witness".into(), vector(&r.witness));
            fields.insert("gauge".into(), frac(&r.gauge));
            fields.insert("lower".into(), frac(&r.lower));
            fields.insert("upper".into(), frac(&r.upper));
            fields.insert("beta".into(), int_frac(*beta));
        }
        Command::Reduce { graph, k, p, out, decide } => {
            let graph = Graph::parse_dimacs(&read(graph, digest)?)?;
            let p = exponent(*p)?;
            let inst = build_gadget(&graph, *k, p)?;
            std::fs::write(out, serialize_hpolytope(&inst.polytope))
                .with_context(|| format!("writing {}", out.display()))?;
            let sidecar = serde_json::to_value(inst.sidecar())?;
            let mut sidecar_path = out.clone().into_os_string();
            sidecar_path.push(".json");
            std::fs::write(&sidecar_path, serde_json::to_string_pretty(&sidecar)? + "\n")
                .with_context(|| format!("writing {}", PathBuf::from(&sidecar_path).display()))?;
            fields.insert("out".into(), json!(out.display().to_string()));
            fields.insert("dimension".into(), int_frac(inst.dim() as u64));
            fields.insert("rows".into(), int_frac(inst.polytope.len() as u64));
            fields.insert("gadget".into(), sidecar);
            if *decide {
                let sol = solve_gadget(&inst, &Limits::from_env())?;
                fields.insert("value".into(), frac(&sol.value));
                fields.insert("witness".into(), vector(&sol.witness));
                decision = Some(sol.decision);
            }
        }
        Command::Radii { poly, p, which, gamma } => {
            let parsed = parse_polytope(&read(poly, digest)?)?;
            let p = exponent(*p)?;
            let kind = match which {
                WhichArg::Circumradius => RadiusKind::Circumradius,
                WhichArg::Diameter => RadiusKind::HalfDiameter,
                WhichArg::Inradius => RadiusKind::Inradius,
                WhichArg::Width => RadiusKind::Width,
            };
            let gamma = gamma.as_deref().map(parse_rational_arg).transpose()?;
            match (parsed, kind.needs_h()) {
                (Polytope::H(h), true) => {
                    let r = radius_h(&h, p, kind)?;
                    fields.insert("value".into(), frac(&r.value));
                    fields.insert("witness".into(), vector(&r.witness));
                    decision = gamma.as_ref().map(|g| r.decide(g));
                }
                (Polytope::V(v), false) => {
                    let r = radius_v(&v, p, kind)?;
                    fields.insert("value".into(), frac(&r.value()));
                    fields.insert("polar_value".into(), frac(&r.polar_value));
                    fields.insert("polar_witness".into(), vector(&r.witness));
                    decision = gamma.as_ref().map(|g| r.decide(g));
                }
                (_, true) => bail!("circumradius and diameter need an H-presentation"),
                (_, false) => bail!("inradius and width need a V-presentation"),
            }
            if let Some(g) = &gamma {
                fields.insert("gamma".into(), frac(g));
            }
        }
        Command::Parmax { vectors, mode, p } => {
            let gens = match parse_polytope(&read(vectors, digest)?)? {
                Polytope::V(v) => v.points().to_vec(),
                Polytope::H(_) => bail!("generators must be given in the V format"),
            };
            let mode = match mode {
                ModeArg::ZeroOne => ParmaxMode::ZeroOne,
                ModeArg::Sym => ParmaxMode::Sym,
            };
            let r = parmax(&gens, mode, exponent(*p)?)?;
            fields.insert("value".into(), frac(&r.result.value));
            fields.insert("witness".into(), vector(&r.result.witness));
            fields.insert(
                "coefficients".into(),
                Value::Array(r.coefficients.iter().map(|c| json!(format!("{c}/1"))).collect()),
            );
        }
        Command::Verify { what, n, p, beta } => {
            let p = exponent(*p)?;
            match what {
                WhatArg::GadgetBounds => {
                    let r = verify_gadget_bounds(*n, p)?;
                    fields.insert("U".into(), frac(&r.u));
                    fields.insert("eps_bar".into(), frac(&r.eps_bar));
                    fields.insert("checks".into(), serde_json::to_value(&r.checks)?);
                    decision = Some(r.all_passed());
                }
                WhatArg::Ball => {
                    let beta = beta.ok_or_else(|| anyhow!("--what ball requires --beta"))?;
                    let ball = build_ball_approx(p, beta, *n)?;
                    let inner = verify_inner_containment(&ball);
                    let mode = if *n <= Limits::from_env().exact_outer_dim_cap {
                        OuterMode::Exact
                    } else {
                        OuterMode::Sampled
                    };
                    let outer = verify_outer_containment(&ball, mode)?;
                    fields.insert("facets".into(), int_frac(ball.facet_count() as u64));
                    fields.insert("grid_radius".into(), int_frac(ball.m));
                    fields.insert("inner".into(), json!(inner));
                    fields.insert("outer".into(), json!(format!("{outer:?}")));
                    decision = Some(inner && outer.passed());
                }
            }
        }
    }
    Ok(Outcome { fields, decision })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let mut digest = Sha256::new();
    digest.update(argv[1..].join("\0").as_bytes());
    match run(&cli.command, &mut digest) {
        Ok(outcome) => {
            let mut report = Map::new();
            report.insert("command".into(), json!(argv[1..].join(" ")));
            report.insert("inputs_digest".into(), json!(hex::encode(digest.finalize())));
            report.extend(outcome.fields);
            if let Some(d) = outcome.decision {
                report.insert("decision".into(), json!(d));
            }
            report.insert("elapsed_ms".into(), int_frac(start.elapsed().as_millis() as u64));
            println!("{}", serde_json::to_string_pretty(&Value::Object(report)).unwrap());
            if outcome.decision == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
